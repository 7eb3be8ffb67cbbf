//! Numerical semigroups of monomial unibranch singularities.
//!
//! Integers stand for `t`-orders: `n ∈ Γ` means the local ring contains a
//! function of order `n`. The conductor `v0` is the least integer with
//! `[v0, ∞) ⊆ Γ`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A numerical semigroup `Γ ⊆ ℕ` with finite complement.
///
/// Immutable after construction. Equality and ordering are by gap set.
#[derive(Clone)]
pub struct NumericalSemigroup {
    generators: Vec<usize>,
    membership: BitSet,
    conductor: usize,
    gaps: Vec<usize>,
    below: Vec<usize>,
}

impl NumericalSemigroup {
    /// Builds `Γ = (k1, …, kr)ℕ`. The minimal generating set is recomputed,
    /// so redundant generators are accepted.
    ///
    /// A generator equal to 1 makes `Γ = ℕ` and is rejected with
    /// [`Error::Smooth`]; use [`NumericalSemigroup::naturals`] for that case.
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if gens.contains(&0) {
            return Err(Error::ZeroGenerator);
        }
        let g = gens.iter().fold(0u64, |a, &b| num_integer::gcd(a, b));
        if g > 1 {
            return Err(Error::NonCoprime { gcd: g });
        }
        if gens.contains(&1) {
            return Err(Error::Smooth);
        }
        let mut gens: Vec<usize> = gens.iter().map(|&g| g as usize).collect();
        gens.sort_unstable();
        gens.dedup();
        let mult = gens[0];

        // Sieve until `mult` consecutive members appear; everything after is in Γ.
        let mut member = vec![true];
        let mut run = 0usize;
        let mut n = 0usize;
        while run < mult {
            n += 1;
            let m = gens.iter().any(|&g| g <= n && member[n - g]);
            member.push(m);
            run = if m { run + 1 } else { 0 };
        }
        let conductor = n + 1 - mult;
        let gaps: Vec<usize> = (0..conductor).filter(|&i| !member[i]).collect();
        Self::from_gaps(&gaps)
    }

    /// `Γ = ℕ`, the semigroup of a smooth point. Used as the end of the
    /// partial normalization chain.
    pub fn naturals() -> Self {
        Self::from_gaps(&[]).expect("empty gap set is a semigroup")
    }

    /// Builds the semigroup whose complement in ℕ is `gaps`.
    ///
    /// Fails with [`Error::NotStable`] if the complement is not additively
    /// closed (or if 0 is listed as a gap).
    pub fn from_gaps(gaps: &[usize]) -> Result<Self> {
        let mut gaps = gaps.to_vec();
        gaps.sort_unstable();
        gaps.dedup();
        if gaps.first() == Some(&0) {
            return Err(Error::NotStable {
                element: 0,
                generator: 0,
            });
        }
        let conductor = gaps.last().map_or(0, |&g| g + 1);
        let mut below_set = BitSet::full(conductor);
        for &g in &gaps {
            below_set.remove(g);
        }
        let below: Vec<usize> = below_set.to_vec();
        for &a in below.iter().skip(1) {
            for &b in below.iter().skip(1) {
                if a + b < conductor && !below_set.contains(a + b) {
                    return Err(Error::NotStable {
                        element: a,
                        generator: b,
                    });
                }
            }
        }
        let contains = |n: usize| n >= conductor || below_set.contains(n);

        let mult = if conductor == 0 {
            1
        } else {
            below.get(1).copied().unwrap_or(conductor)
        };
        // Minimal generators are below v0 + multiplicity.
        let generators: Vec<usize> = (1..(conductor + mult).max(2))
            .filter(|&n| contains(n))
            .filter(|&n| !(1..n).any(|a| contains(a) && contains(n - a)))
            .collect();
        let max_gen = generators.last().copied().unwrap_or(1);
        let bound = conductor + max_gen + 1;
        let membership = BitSet::from_iter_bounded(bound, (0..bound).filter(|&n| contains(n)));

        Ok(NumericalSemigroup {
            generators,
            membership,
            conductor,
            gaps,
            below,
        })
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// The conductor `v0`.
    pub fn conductor(&self) -> usize {
        self.conductor
    }

    /// `δ`, the number of gaps.
    pub fn delta(&self) -> usize {
        self.gaps.len()
    }

    /// `γ = v0 − δ`, the number of elements below the conductor.
    pub fn gamma(&self) -> usize {
        self.below.len()
    }

    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    /// `Γ ∩ [0, v0)` in increasing order; the first entry is 0 unless `Γ = ℕ`.
    pub fn elements_below_conductor(&self) -> &[usize] {
        &self.below
    }

    /// Membership table over `[0, v0 + max generator + 1)`.
    pub fn membership(&self) -> &BitSet {
        &self.membership
    }

    /// Smallest nonzero element `k1`.
    pub fn multiplicity(&self) -> usize {
        self.generators[0]
    }

    pub fn is_smooth(&self) -> bool {
        self.conductor == 0
    }

    pub fn contains(&self, n: usize) -> bool {
        n >= self.conductor || self.membership.contains(n)
    }

    /// Membership for arbitrary integers (negative values are never members).
    pub fn contains_signed(&self, n: i64) -> bool {
        n >= 0 && self.contains(n as usize)
    }

    /// The `i`-th element of Γ in increasing order, `s_0 = 0`.
    pub fn element(&self, i: usize) -> usize {
        if i < self.below.len() {
            self.below[i]
        } else {
            self.conductor + (i - self.below.len())
        }
    }

    /// Remark checks: gap counting, forward symmetry, conductor bounds and
    /// the symmetric-pair count. Every flag holds for a valid semigroup.
    pub fn check_remarks(&self) -> RemarkReport {
        let v0 = self.conductor as i64;
        let delta = self.delta() as i64;
        let gap_count = self.gaps.len();
        let below_count = self.below.len();
        let counts_ok = gap_count as i64 == delta && below_count as i64 == v0 - delta;
        let forward_symmetry = self
            .below
            .iter()
            .all(|&j| !self.contains_signed(v0 - 1 - j as i64));
        let conductor_bounds = delta - 1 <= v0 && v0 <= 2 * delta;
        let pair_count = (0..self.conductor)
            .filter(|&j| !self.contains(j) && !self.contains_signed(v0 - 1 - j as i64))
            .count();
        let pair_expected = 2 * delta - v0;
        RemarkReport {
            gap_count,
            below_conductor_count: below_count,
            counts_ok,
            forward_symmetry,
            conductor_bounds,
            double_gap_pairs: pair_count,
            double_gap_expected: pair_expected,
            double_gap_ok: pair_count as i64 == pair_expected,
        }
    }

    /// `j ∈ Γ ⟺ v0 − 1 − j ∉ Γ` for all `j ∈ [0, v0)`.
    pub fn is_symmetric(&self) -> bool {
        let v0 = self.conductor;
        (0..v0).all(|j| self.contains(j) != self.contains(v0 - 1 - j))
    }

    /// The three conditions of the `v0 = k_{γ−1} + k1` equivalence, each
    /// evaluated on its own.
    ///
    /// Here `k_i` is the `i`-th smallest element of Γ (`k_0 = 0`), so for
    /// `γ = 1` the element `k_1` is the conductor itself.
    pub fn condition_0_6(&self) -> Condition06 {
        if self.is_smooth() {
            return Condition06 {
                conductor_sum: false,
                arithmetic: false,
                embedding_rank: 0,
                rank_one: false,
            };
        }
        let v0 = self.conductor;
        let gamma = self.gamma();
        let k1 = self.element(1);
        let conductor_sum = v0 == self.element(gamma - 1) + k1;
        // k_i = i·k1 for i ≤ γ; the i = γ case pins v0 = γ·k1.
        let arithmetic = (0..=gamma).all(|i| self.element(i) == i * k1);
        // rk(M / (M² + tC)): elements of M in [1, v0] that are not sums of
        // two elements of M.
        let embedding_rank = (1..=v0)
            .filter(|&n| self.contains(n))
            .filter(|&n| !(1..n).any(|a| self.contains(a) && self.contains(n - a)))
            .count();
        Condition06 {
            conductor_sum,
            arithmetic,
            embedding_rank,
            rank_one: embedding_rank == 1,
        }
    }

    /// First partial normalization `Γ' = Γ ∪ [v0 − 1, ∞)`. Identity on ℕ.
    pub fn partial_normalization(&self) -> NumericalSemigroup {
        if self.is_smooth() {
            return self.clone();
        }
        let gaps: Vec<usize> = self.gaps[..self.gaps.len() - 1].to_vec();
        Self::from_gaps(&gaps).expect("removing the largest gap keeps closure")
    }

    /// `Γ = Γ⁰ ⊂ Γ¹ ⊂ … ⊂ ℕ`, one gap removed per step.
    pub fn normalization_chain(&self) -> NormalizationChain {
        let mut steps = vec![self.clone()];
        while !steps.last().unwrap().is_smooth() {
            let next = steps.last().unwrap().partial_normalization();
            steps.push(next);
        }
        let deltas = steps.iter().map(|s| s.delta()).collect();
        NormalizationChain { steps, deltas }
    }

    pub fn classify(&self) -> TypeTags {
        let locally_planar = self.generators.len() <= 2;
        let m_equals_c = !self.is_smooth() && self.gamma() == 1;
        let first_is_m_equals_c = self.partial_normalization().gamma() == 1;
        // The two M' = C' families are only meaningful off the planar locus
        // (⟨3,4⟩ and ⟨2,5⟩ would otherwise qualify).
        let gorenstein_m1c1 = !locally_planar && self.is_symmetric() && first_is_m_equals_c;
        let rk_mc1_m1c1 = !locally_planar && self.gamma() == 2 && first_is_m_equals_c;
        TypeTags {
            locally_planar,
            m_equals_c,
            gorenstein_m1c1,
            rk_mc1_m1c1,
        }
    }

    /// `2δ − v0 + 1`, the lower bound on the number of components.
    pub fn min_components(&self) -> i64 {
        2 * self.delta() as i64 - self.conductor as i64 + 1
    }
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.gaps == other.gaps
    }
}

impl Eq for NumericalSemigroup {}

impl Ord for NumericalSemigroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gaps.cmp(&other.gaps)
    }
}

impl PartialOrd for NumericalSemigroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::hash::Hash for NumericalSemigroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.gaps.hash(state)
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemarkReport {
    pub gap_count: usize,
    pub below_conductor_count: usize,
    /// `#gaps = δ` and `#(Γ ∩ [0, v0)) = γ`.
    pub counts_ok: bool,
    /// `j ∈ Γ ⟹ v0 − 1 − j ∉ Γ`.
    pub forward_symmetry: bool,
    /// `δ − 1 ≤ v0 ≤ 2δ`.
    pub conductor_bounds: bool,
    /// `#{ j : j ∉ Γ, v0 − 1 − j ∉ Γ }`.
    pub double_gap_pairs: usize,
    pub double_gap_expected: i64,
    pub double_gap_ok: bool,
}

impl RemarkReport {
    pub fn all_hold(&self) -> bool {
        self.counts_ok && self.forward_symmetry && self.conductor_bounds && self.double_gap_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition06 {
    /// `v0 = k_{γ−1} + k_1`.
    pub conductor_sum: bool,
    /// `k_i = i·k_1` for all `i ≤ γ`.
    pub arithmetic: bool,
    pub embedding_rank: usize,
    /// `rk(M / M² + tC) = 1`.
    pub rank_one: bool,
}

impl Condition06 {
    pub fn triple(&self) -> (bool, bool, bool) {
        (self.conductor_sum, self.arithmetic, self.rank_one)
    }

    pub fn consistent(&self) -> bool {
        self.conductor_sum == self.arithmetic && self.arithmetic == self.rank_one
    }
}

#[derive(Debug, Clone)]
pub struct NormalizationChain {
    pub steps: Vec<NumericalSemigroup>,
    pub deltas: Vec<usize>,
}

impl NormalizationChain {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Curve-type tags. `m_equals_c`, `gorenstein_m1c1` and `rk_mc1_m1c1` are
/// mutually exclusive; `locally_planar` can only co-occur with `m_equals_c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TypeTags {
    pub locally_planar: bool,
    pub m_equals_c: bool,
    pub gorenstein_m1c1: bool,
    pub rk_mc1_m1c1: bool,
}

impl TypeTags {
    pub fn general(&self) -> bool {
        !(self.locally_planar || self.m_equals_c || self.gorenstein_m1c1 || self.rk_mc1_m1c1)
    }

    /// The most specific tag name.
    pub fn name(&self) -> &'static str {
        if self.m_equals_c {
            "M_equals_C"
        } else if self.gorenstein_m1c1 {
            "gorenstein_M1C1"
        } else if self.rk_mc1_m1c1 {
            "rkMC1_M1C1"
        } else if self.locally_planar {
            "locally_planar"
        } else {
            "general"
        }
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.locally_planar {
            v.push("locally_planar");
        }
        if self.m_equals_c {
            v.push("M_equals_C");
        }
        if self.gorenstein_m1c1 {
            v.push("gorenstein_M1C1");
        }
        if self.rk_mc1_m1c1 {
            v.push("rkMC1_M1C1");
        }
        if self.general() {
            v.push("general");
        }
        v
    }
}

/// Every numerical semigroup other than ℕ with multiplicity at most
/// `max_multiplicity` and conductor at most `max_conductor`, in canonical order.
///
/// Walks the tree rooted at ℕ in which a child removes one minimal generator
/// larger than the Frobenius number; each semigroup is reached exactly once.
pub fn enumerate_semigroups(
    max_multiplicity: usize,
    max_conductor: usize,
) -> Vec<NumericalSemigroup> {
    let width = max_conductor + 1;
    let mut out = Vec::new();
    // (gap set, conductor)
    let mut stack: Vec<(BitSet, usize)> = vec![(BitSet::new(width), 0)];
    while let Some((gaps, conductor)) = stack.pop() {
        let contains = |n: usize| n >= conductor || !gaps.contains(n);
        let mult = (1..).find(|&n| contains(n)).unwrap();
        if conductor > 0 {
            let list = gaps.to_vec();
            out.push(NumericalSemigroup::from_gaps(&list).expect("tree nodes are semigroups"));
        }
        // Children remove a minimal generator g ≥ conductor; new conductor g + 1.
        for g in conductor.max(1)..conductor.max(1) + mult {
            if g + 1 > max_conductor {
                break;
            }
            let is_min_gen = !(1..g).any(|a| contains(a) && contains(g - a));
            if !is_min_gen {
                continue;
            }
            let child_mult = if g == mult {
                (g + 1..).find(|&n| contains(n)).unwrap()
            } else {
                mult
            };
            if child_mult > max_multiplicity {
                continue;
            }
            let mut child = gaps.clone();
            child.insert(g);
            stack.push((child, g + 1));
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    #[test]
    fn invariants_of_456() {
        let s = sg(&[4, 5, 6]);
        assert_eq!(s.conductor(), 8);
        assert_eq!(s.delta(), 4);
        assert_eq!(s.gamma(), 4);
        assert_eq!(s.gaps(), &[1, 2, 3, 7]);
        assert_eq!(s.elements_below_conductor(), &[0, 4, 5, 6]);
        assert_eq!(s.membership().len(), 8 + 6 + 1);
    }

    #[test]
    fn cusp() {
        let s = sg(&[2, 3]);
        assert_eq!((s.conductor(), s.delta(), s.gaps()), (2, 1, &[1][..]));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            NumericalSemigroup::from_generators(&[4, 6]),
            Err(Error::NonCoprime { gcd: 2 })
        );
        assert_eq!(
            NumericalSemigroup::from_generators(&[]),
            Err(Error::EmptyGenerators)
        );
        assert_eq!(
            NumericalSemigroup::from_generators(&[1, 3]),
            Err(Error::Smooth)
        );
        assert_eq!(
            NumericalSemigroup::from_generators(&[0, 3]),
            Err(Error::ZeroGenerator)
        );
        // 1 + 1 = 2 is listed as a gap.
        assert!(NumericalSemigroup::from_gaps(&[2]).is_err());
        assert!(NumericalSemigroup::from_gaps(&[0, 1]).is_err());
    }

    #[test]
    fn minimal_generators_recomputed() {
        let s = sg(&[8, 4, 5, 6, 10]);
        assert_eq!(s.generators(), &[4, 5, 6]);
        assert_eq!(sg(&[4, 6, 7, 9]).generators(), &[4, 6, 7, 9]);
        assert_eq!(sg(&[4, 6, 7, 9]).gaps(), &[1, 2, 3, 5]);
    }

    #[test]
    fn remark_counts() {
        let r = sg(&[4, 5, 6]).check_remarks();
        assert!(r.all_hold());
        assert_eq!(r.double_gap_pairs, 0);
        let r = sg(&[4, 6, 7, 9]).check_remarks();
        assert_eq!((r.double_gap_pairs, r.double_gap_expected), (2, 2));
        assert!(sg(&[2, 3]).check_remarks().conductor_bounds);
    }

    #[test]
    fn symmetry() {
        assert!(sg(&[4, 5, 6]).is_symmetric());
        assert!(!sg(&[4, 6, 7, 9]).is_symmetric());
        assert!(sg(&[2, 3]).is_symmetric());
    }

    #[test]
    fn condition_0_6_examples() {
        let c = sg(&[3, 4, 5]).condition_0_6();
        assert_eq!(c.triple(), (true, true, true));
        assert_eq!(c.embedding_rank, 1);
        assert_eq!(sg(&[3, 7, 8]).condition_0_6().triple(), (true, true, true));
        let c = sg(&[4, 5, 6]).condition_0_6();
        assert_eq!(c.triple(), (false, false, false));
        assert_eq!(c.embedding_rank, 3);
        // k_i = i·k1 must include i = γ, otherwise ⟨3,5,7⟩ breaks the equivalence.
        assert_eq!(
            sg(&[3, 5, 7]).condition_0_6().triple(),
            (false, false, false)
        );
    }

    #[test]
    fn chains() {
        let c = sg(&[4, 5, 6]).normalization_chain();
        assert_eq!(c.steps[1].elements_below_conductor(), &[0]);
        assert_eq!(c.steps[1].conductor(), 4);
        assert_eq!(c.deltas, vec![4, 3, 2, 1, 0]);
        let c = sg(&[3, 4, 5]).normalization_chain();
        assert_eq!(c.len(), 3);
        assert_eq!(c.steps[1].gaps(), &[1]);
        assert!(c.steps[2].is_smooth());
        assert_eq!(
            NumericalSemigroup::naturals().normalization_chain().len(),
            1
        );
    }

    #[test]
    fn types() {
        let t = sg(&[3, 4, 5]).classify();
        assert!(t.m_equals_c && !t.locally_planar);
        assert_eq!(sg(&[4, 5, 6]).classify().name(), "gorenstein_M1C1");
        assert_eq!(sg(&[4, 6, 7, 9]).classify().name(), "rkMC1_M1C1");
        let t = sg(&[2, 3]).classify();
        assert!(t.locally_planar && t.m_equals_c);
        assert_eq!(sg(&[3, 4]).classify().names(), vec!["locally_planar"]);
        assert_eq!(sg(&[4, 5, 7]).classify().name(), "general");
    }

    #[test]
    fn family_counts_by_genus() {
        // Numbers of numerical semigroups of genus 1..=7 (OEIS A007323).
        let fam = enumerate_semigroups(8, 20);
        let expected = [1, 2, 4, 7, 12, 23, 39];
        for (g, &n) in (1..=7).zip(expected.iter()) {
            assert_eq!(
                fam.iter().filter(|s| s.delta() == g).count(),
                n,
                "genus {g}"
            );
        }
        assert!(fam
            .iter()
            .all(|s| s.multiplicity() <= 8 && s.conductor() <= 20));
        let mut dedup = fam.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), fam.len());
    }
}
