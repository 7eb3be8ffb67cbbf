//! Monomial modules `C ⊆ F ⊆ Õ` as Γ-stable sets of `t`-orders.
//!
//! A module is stored by its part below the conductor; the tail `[v0, ∞)`
//! is always present.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CreateMode {
    /// Accept the set only if it is already Γ-stable.
    Validate,
    /// Close the set under addition of Γ.
    Generate,
}

#[derive(Clone)]
pub struct GammaSemimodule {
    parent: Arc<NumericalSemigroup>,
    below: BitSet,
}

/// A module together with the `t`-power it was divided by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shifted {
    pub module: GammaSemimodule,
    pub shift: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ranks {
    /// `rk(Õ / F)`, the `d` with `F ∈ E(C, d)`.
    pub codim: usize,
    /// `rk(F / C)`.
    pub rk_mod_c: usize,
    /// `rk(F / F·C)`.
    pub rk_mod_fc: usize,
    /// Stratum index, `rk(F / F·C) − 1`.
    pub r: usize,
}

#[derive(Debug, Clone)]
pub struct EndData {
    /// `{ z ≥ 0 : z + Δ ⊆ Δ }`.
    pub semigroup: NumericalSemigroup,
    /// `v0 − 1 ∈ End`, i.e. the endomorphism ring contains `t⁻¹C`.
    pub descends: bool,
}

/// Canonical filtration `F = F_0 ⊃ F_1 ⊃ … ⊃ C` with one-dimensional steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationData {
    /// Orders of the steps; the last entry is `v0` (the step `C`).
    pub orders: Vec<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumFilter {
    pub codim: Option<usize>,
    pub normalized: bool,
}

impl EnumFilter {
    pub fn all() -> Self {
        Self::default()
    }

    pub fn codim(d: usize) -> Self {
        EnumFilter {
            codim: Some(d),
            normalized: false,
        }
    }

    pub fn normalized() -> Self {
        EnumFilter {
            codim: None,
            normalized: true,
        }
    }
}

impl GammaSemimodule {
    pub fn create(
        parent: &NumericalSemigroup,
        elements: &[usize],
        mode: CreateMode,
    ) -> Result<Self> {
        Self::create_shared(Arc::new(parent.clone()), elements, mode)
    }

    pub fn create_shared(
        parent: Arc<NumericalSemigroup>,
        elements: &[usize],
        mode: CreateMode,
    ) -> Result<Self> {
        let v0 = parent.conductor();
        if let Some(&e) = elements.iter().find(|&&e| e >= v0) {
            return Err(Error::OutOfRange {
                element: e,
                bound: v0,
            });
        }
        let mut below = BitSet::from_iter_bounded(v0, elements.iter().copied());
        match mode {
            CreateMode::Validate => {
                for e in below.iter() {
                    for &g in parent.generators() {
                        if e + g < v0 && !below.contains(e + g) {
                            return Err(Error::NotStable {
                                element: e,
                                generator: g,
                            });
                        }
                    }
                }
            }
            CreateMode::Generate => {
                let seeds = below.to_vec();
                for e in seeds {
                    for s in parent.elements_below_conductor() {
                        if e + s < v0 {
                            below.insert(e + s);
                        }
                    }
                }
            }
        }
        Ok(GammaSemimodule { parent, below })
    }

    /// Caller guarantees stability.
    pub(crate) fn from_below(parent: Arc<NumericalSemigroup>, below: BitSet) -> Self {
        debug_assert_eq!(below.len(), parent.conductor());
        GammaSemimodule { parent, below }
    }

    /// The free module `O` (Δ = Γ).
    pub fn free(parent: &NumericalSemigroup) -> Self {
        let v0 = parent.conductor();
        let below =
            BitSet::from_iter_bounded(v0, parent.elements_below_conductor().iter().copied());
        Self::from_below(Arc::new(parent.clone()), below)
    }

    /// The normalization `Õ` (Δ = ℕ).
    pub fn normalization(parent: &NumericalSemigroup) -> Self {
        let v0 = parent.conductor();
        Self::from_below(Arc::new(parent.clone()), BitSet::full(v0))
    }

    /// An overring `T ⊇ Γ` (for example a partial normalization) read as a
    /// Γ-semimodule.
    pub fn from_overring(parent: &NumericalSemigroup, over: &NumericalSemigroup) -> Result<Self> {
        if let Some(&s) = parent
            .elements_below_conductor()
            .iter()
            .find(|&&s| !over.contains(s))
        {
            return Err(Error::Precondition(format!(
                "{s} ∈ Γ is missing from the overring"
            )));
        }
        let v0 = parent.conductor();
        let below = BitSet::from_iter_bounded(v0, (0..v0).filter(|&n| over.contains(n)));
        Ok(Self::from_below(Arc::new(parent.clone()), below))
    }

    /// `I_j = { d ∈ Γ : d ≥ s_j }` where `s_j` is the `j`-th element of Γ.
    pub fn filtration_ideal(parent: &NumericalSemigroup, j: usize) -> Self {
        let v0 = parent.conductor();
        let sj = parent.element(j);
        let below = BitSet::from_iter_bounded(
            v0,
            parent
                .elements_below_conductor()
                .iter()
                .copied()
                .filter(|&s| s >= sj),
        );
        Self::from_below(Arc::new(parent.clone()), below)
    }

    /// The dualizing module `{ z ≥ 0 : v0 − 1 − z ∉ Γ }`.
    pub fn dualizing(parent: &NumericalSemigroup) -> Self {
        let v0 = parent.conductor();
        let below =
            BitSet::from_iter_bounded(v0, (0..v0).filter(|&z| !parent.contains(v0 - 1 - z)));
        Self::from_below(Arc::new(parent.clone()), below)
    }

    pub fn parent(&self) -> &NumericalSemigroup {
        &self.parent
    }

    pub fn below(&self) -> &BitSet {
        &self.below
    }

    pub fn below_vec(&self) -> Vec<usize> {
        self.below.to_vec()
    }

    pub fn contains(&self, n: usize) -> bool {
        n >= self.parent.conductor() || self.below.contains(n)
    }

    /// `ord_t F = min Δ`.
    pub fn order(&self) -> usize {
        self.below.first().unwrap_or(self.parent.conductor())
    }

    pub fn is_normalized(&self) -> bool {
        self.below.contains(0)
    }

    /// Divides by `t^{ord F}` so that `0 ∈ Δ`.
    pub fn normalize(&self) -> Shifted {
        let m = self.order();
        let v0 = self.parent.conductor();
        let below = BitSet::from_iter_bounded(v0, (0..v0).filter(|&n| self.contains(n + m)));
        Shifted {
            module: Self::from_below(self.parent.clone(), below),
            shift: m,
        }
    }

    /// `t^a F`, when it still contains the conductor (needs `[v0 − a, v0) ⊆ Δ`).
    pub fn multiply_by_t(&self, a: usize) -> Option<Self> {
        let v0 = self.parent.conductor();
        if a > v0 || !(v0 - a..v0).all(|n| self.below.contains(n)) {
            return None;
        }
        Some(Self::from_below(
            self.parent.clone(),
            self.below.shifted_up(a),
        ))
    }

    pub fn ranks(&self) -> Ranks {
        let v0 = self.parent.conductor();
        let rk_mod_c = self.below.count();
        let rk_mod_fc = rk_mod_c + self.order();
        Ranks {
            codim: v0 - rk_mod_c,
            rk_mod_c,
            rk_mod_fc,
            r: rk_mod_fc.saturating_sub(1),
        }
    }

    fn stabilizes(&self, z: usize) -> bool {
        self.below.iter().all(|d| self.contains(d + z))
    }

    pub fn end_semigroup(&self) -> EndData {
        let v0 = self.parent.conductor();
        let gaps: Vec<usize> = (1..v0).filter(|&z| !self.stabilizes(z)).collect();
        let semigroup = NumericalSemigroup::from_gaps(&gaps).expect("End(F) is a semigroup");
        let descends = v0 > 0 && semigroup.contains(v0 - 1);
        EndData {
            semigroup,
            descends,
        }
    }

    /// `Hom(F, O) = { z : z + Δ ⊆ Γ }` for normalized Δ. It lies inside Γ
    /// (take `d = 0`) and contains the conductor.
    pub fn hom_to_o(&self) -> Result<Self> {
        if !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let v0 = self.parent.conductor();
        let raw = BitSet::from_iter_bounded(
            v0,
            (0..v0).filter(|&z| self.below.iter().all(|d| self.parent.contains(d + z))),
        );
        Ok(Self::from_below(self.parent.clone(), raw))
    }

    /// The dual of the isomorphism class: `Hom(F, O)` of the normalized
    /// representative, renormalized. `shift` is the order of that Hom.
    pub fn dual(&self) -> Shifted {
        self.normalize()
            .module
            .hom_to_o()
            .expect("normalized")
            .normalize()
    }

    pub fn filtration(&self) -> FiltrationData {
        let mut orders = self.below_vec();
        orders.push(self.parent.conductor());
        FiltrationData { orders }
    }

    /// `F_j ⊆ I_j Õ` for all `j`, in monomial form: the `j`-th order of Δ is
    /// at least the `j`-th element of Γ.
    pub fn in_filt_locus(&self) -> Result<bool> {
        let delta = self.parent.delta();
        let codim = self.ranks().codim;
        if codim != delta {
            return Err(Error::WrongCodim {
                expected: delta,
                found: codim,
            });
        }
        Ok(self
            .below
            .iter()
            .enumerate()
            .all(|(j, o)| o >= self.parent.element(j)))
    }

    /// All Γ-semimodules `C ⊆ Δ ⊆ ℕ` matching `filter`, sorted by the below
    /// bitset read as an integer.
    pub fn enumerate(parent: &NumericalSemigroup, filter: EnumFilter) -> Vec<Self> {
        let shared = Arc::new(parent.clone());
        let v0 = parent.conductor();
        let target = match filter.codim {
            Some(d) if d > v0 => return Vec::new(),
            Some(d) => Some(v0 - d),
            None => None,
        };
        let mut found = Vec::new();
        let mut current = BitSet::new(v0);
        enumerate_rec(
            parent,
            filter.normalized,
            target,
            v0,
            0,
            &mut current,
            &mut found,
        );
        found.sort();
        found
            .into_iter()
            .map(|below| Self::from_below(shared.clone(), below))
            .collect()
    }
}

/// Decides positions `v0 − 1` down to `0`; when position `x` is decided all
/// of `x + k_i` already are, so the stability test is exact.
fn enumerate_rec(
    parent: &NumericalSemigroup,
    normalized: bool,
    target: Option<usize>,
    x: usize,
    chosen: usize,
    current: &mut BitSet,
    out: &mut Vec<BitSet>,
) {
    if x == 0 {
        if target.is_none_or(|t| t == chosen) {
            out.push(current.clone());
        }
        return;
    }
    let pos = x - 1;
    let v0 = parent.conductor();
    let forced = normalized && parent.contains(pos);
    let allowed = parent
        .generators()
        .iter()
        .all(|&g| pos + g >= v0 || current.contains(pos + g));
    if let Some(t) = target {
        if chosen > t || chosen + x < t {
            return;
        }
    }
    if !forced {
        enumerate_rec(parent, normalized, target, pos, chosen, current, out);
    }
    if allowed {
        current.insert(pos);
        enumerate_rec(parent, normalized, target, pos, chosen + 1, current, out);
        current.remove(pos);
    }
}

impl PartialEq for GammaSemimodule {
    fn eq(&self, other: &Self) -> bool {
        self.below == other.below
            && (Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent)
    }
}

impl Eq for GammaSemimodule {}

impl PartialOrd for GammaSemimodule {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GammaSemimodule {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.parent
            .cmp(&other.parent)
            .then_with(|| self.below.cmp(&other.below))
    }
}

impl std::hash::Hash for GammaSemimodule {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.parent.hash(state);
        self.below.hash(state);
    }
}

impl fmt::Debug for GammaSemimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}∪[{},∞) over {}",
            self.below,
            self.parent.conductor(),
            self.parent
        )
    }
}

impl Serialize for GammaSemimodule {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let shift = self.order();
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("below_v0", &self.below_vec())?;
        if shift > 0 {
            map.serialize_entry("shift", &shift)?;
        }
        map.end()
    }
}
