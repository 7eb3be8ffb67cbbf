//! Stratification of the monomial fixed points by `r = rk(F / F·C) − 1`,
//! component witnesses and the boundary predicates of the special curve
//! families.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;
use crate::semimodule::{EnumFilter, GammaSemimodule, Ranks};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PSplit {
    /// Second order equals 1.
    P1,
    /// Second order at least 2.
    P2,
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
pub struct StratumEntry {
    pub module: GammaSemimodule,
    pub ranks: Ranks,
    pub descends: bool,
    pub end_generators: Vec<usize>,
    pub end_is_gamma: bool,
    /// Filt membership of the codim-δ representative `t^a F`, when one exists.
    pub in_filt: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<PSplit>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Stratum {
    pub r: usize,
    pub entries: Vec<StratumEntry>,
    /// Every member has `t⁻¹C` in its endomorphism ring.
    pub descending: bool,
    /// Lexicographically least member with `End = Γ`.
    pub witness: Option<GammaSemimodule>,
    /// Lexicographically least member whose endomorphisms do not contain `t⁻¹C`.
    pub nondescending_witness: Option<GammaSemimodule>,
    /// `r` lies outside `[γ − 1, δ − 1]`.
    pub outside_component_range: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StratumReport {
    pub generators: Vec<usize>,
    pub strata: Vec<Stratum>,
    pub min_components: i64,
    /// `[γ − 1, δ − 1]`.
    pub component_range: (i64, i64),
    /// Number of `r` in the component range with an `End = Γ` witness.
    pub witnessed: usize,
    /// Number of `r` in the component range with a non-descending witness.
    pub nondescending_witnessed: usize,
    pub module_count: usize,
}

impl StratumReport {
    pub fn stratum(&self, r: usize) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.r == r)
    }

    fn range_len(&self) -> i64 {
        let (lo, hi) = self.component_range;
        (hi - lo + 1).max(0)
    }

    /// Every `r` in `[γ − 1, δ − 1]` has a monomial member with `End = Γ`.
    pub fn all_component_strata_witnessed(&self) -> bool {
        self.witnessed as i64 == self.range_len()
    }

    /// Every `r` in `[γ − 1, δ − 1]` has a monomial member not descending to `C'`.
    pub fn all_component_strata_nondescending(&self) -> bool {
        self.nondescending_witnessed as i64 == self.range_len()
    }
}

fn entry(module: GammaSemimodule, gamma: &NumericalSemigroup, split: bool) -> StratumEntry {
    let ranks = module.ranks();
    let end = module.end_semigroup();
    let delta = gamma.delta();
    let lift = (ranks.rk_mod_c + delta)
        .checked_sub(gamma.conductor())
        .and_then(|a| module.multiply_by_t(a));
    let in_filt = lift.and_then(|m| m.in_filt_locus().ok());
    let split = if split { p_split(&module).ok() } else { None };
    StratumEntry {
        ranks,
        descends: end.descends,
        end_is_gamma: &end.semigroup == gamma,
        end_generators: end.semigroup.generators().to_vec(),
        in_filt,
        split,
        module,
    }
}

/// Groups every normalized semimodule by its stratum.
pub fn stratify(s: &NumericalSemigroup) -> StratumReport {
    let modules = GammaSemimodule::enumerate(s, EnumFilter::normalized());
    let split = s.classify().rk_mc1_m1c1;
    let entries: Vec<StratumEntry> = modules
        .into_par_iter()
        .map(|m| entry(m, s, split))
        .collect();
    let module_count = entries.len();
    let lo = s.gamma() as i64 - 1;
    let hi = s.delta() as i64 - 1;

    let max_r = entries.iter().map(|e| e.ranks.r).max().unwrap_or(0);
    let mut buckets: Vec<Vec<StratumEntry>> = vec![Vec::new(); max_r + 1];
    for e in entries {
        buckets[e.ranks.r].push(e);
    }
    let strata: Vec<Stratum> = buckets
        .into_iter()
        .enumerate()
        .filter(|(_, b)| !b.is_empty())
        .map(|(r, entries)| Stratum {
            r,
            descending: entries.iter().all(|e| e.descends),
            witness: entries
                .iter()
                .find(|e| e.end_is_gamma)
                .map(|e| e.module.clone()),
            nondescending_witness: entries
                .iter()
                .find(|e| !e.descends)
                .map(|e| e.module.clone()),
            outside_component_range: (r as i64) < lo || (r as i64) > hi,
            entries,
        })
        .collect();
    let witnessed = strata
        .iter()
        .filter(|st| !st.outside_component_range && st.witness.is_some())
        .count();
    let nondescending_witnessed = strata
        .iter()
        .filter(|st| !st.outside_component_range && st.nondescending_witness.is_some())
        .count();
    StratumReport {
        generators: s.generators().to_vec(),
        strata,
        min_components: s.min_components(),
        component_range: (lo, hi),
        witnessed,
        nondescending_witnessed,
        module_count,
    }
}

fn require_rk_mc1(s: &NumericalSemigroup) -> Result<()> {
    let t = s.classify();
    if t.rk_mc1_m1c1 {
        Ok(())
    } else {
        Err(Error::WrongCurveType {
            expected: "rkMC1_M1C1",
            found: t.name(),
        })
    }
}

/// Second entry of the canonical filtration orders (the order of `F_1`).
fn second_order(m: &GammaSemimodule) -> usize {
    m.filtration()
        .orders
        .get(1)
        .copied()
        .unwrap_or(m.parent().conductor())
}

/// `P_{r,1}` / `P_{r,2}` membership of a normalized module.
pub fn p_split(m: &GammaSemimodule) -> Result<PSplit> {
    require_rk_mc1(m.parent())?;
    if !m.is_normalized() {
        return Err(Error::NotNormalized);
    }
    if m.below().count() < 2 {
        return Ok(PSplit::NotApplicable);
    }
    Ok(if second_order(m) == 1 {
        PSplit::P1
    } else {
        PSplit::P2
    })
}

/// Boundary condition for the closure of `P_{r,2}`, with `r + 1 = rk(F/C)`:
/// either `ord F = 1` and `F ⊇ t^{k1+1}Õ`, or `ord F ≥ 2` and the `r`-th
/// filtration step lies in `t^{k1}Õ`.
pub fn thm41_predicate(m: &GammaSemimodule) -> Result<bool> {
    let s = m.parent();
    require_rk_mc1(s)?;
    let k1 = s.multiplicity();
    let ord = m.order();
    if ord == 0 {
        return Err(Error::Precondition(
            "ord_t F must be positive (use the non-normalized representative)".into(),
        ));
    }
    let r = m.ranks().rk_mod_c.saturating_sub(1);
    Ok(if ord == 1 {
        (k1 + 1..s.conductor()).all(|n| m.contains(n))
    } else {
        m.filtration().orders[r] >= k1
    })
}

/// Intersection of the closures of `P_{r,2}` and `P_{r+1,2}`: `ord F ≥ 1`,
/// `rk(F/C) = r + 1` and `F_1 ⊆ t³Õ`.
pub fn cor412_intersection(m: &GammaSemimodule, r: usize) -> Result<bool> {
    require_rk_mc1(m.parent())?;
    Ok(m.order() >= 1 && m.ranks().rk_mod_c == r + 1 && second_order(m) >= 3)
}

/// Every normalized `P_{i,1}` point (`i < k1`) multiplied by `t` satisfies
/// [`thm41_predicate`] with `rk(tF/C) = i`.
pub fn cor411_holds(s: &NumericalSemigroup) -> Result<bool> {
    require_rk_mc1(s)?;
    let k1 = s.multiplicity();
    for m in GammaSemimodule::enumerate(s, EnumFilter::normalized()) {
        let i = m.ranks().r;
        if i >= k1 || p_split(&m)? != PSplit::P1 {
            continue;
        }
        let Some(lifted) = m.multiply_by_t(1) else {
            return Ok(false);
        };
        if lifted.ranks().rk_mod_c != i || !thm41_predicate(&lifted)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The module generated by `{0, 2, 3, …, i}`, a point of `P_{i,2}`.
pub fn thm42_witness(s: &NumericalSemigroup, i: usize) -> Result<GammaSemimodule> {
    require_rk_mc1(s)?;
    let k1 = s.multiplicity();
    if i < 1 || i + 1 > k1 {
        return Err(Error::IndexOutOfRange {
            index: i,
            min: 1,
            max: k1 - 1,
        });
    }
    let gens: Vec<usize> = std::iter::once(0).chain(2..=i).collect();
    GammaSemimodule::create(s, &gens, crate::semimodule::CreateMode::Generate)
}

/// For Gorenstein `Γ = (k1, …, 2k1 − 2)ℕ` and `F ∈ E(C, δ)` with
/// `ord F = r ≥ 1`: `F_1 ⊆ t^{k1}Õ` and `rk(F_1 / t^{k1+r}Õ) = r − 1`.
pub fn thm31_order_predicate(m: &GammaSemimodule) -> Result<bool> {
    let s = m.parent();
    let t = s.classify();
    if !t.gorenstein_m1c1 {
        return Err(Error::WrongCurveType {
            expected: "gorenstein_M1C1",
            found: t.name(),
        });
    }
    let codim = m.ranks().codim;
    if codim != s.delta() {
        return Err(Error::WrongCodim {
            expected: s.delta(),
            found: codim,
        });
    }
    let r = m.order();
    if r == 0 {
        return Err(Error::Precondition("ord_t F must be at least 1".into()));
    }
    let k1 = s.multiplicity();
    let o1 = second_order(m);
    // Orders of F_1 = { n ∈ F : n ≥ o1 } below k1 + r.
    let count = (o1..k1 + r).filter(|&n| m.contains(n)).count();
    Ok(o1 >= k1 && count == r - 1)
}

/// A module over `Γ^i` re-read over Γ, with its degree shift.
#[derive(Debug, Clone, Serialize)]
pub struct Pushforward {
    pub module: GammaSemimodule,
    pub degree_offset: i64,
}

/// `π^i_*`: the same set of orders viewed as a Γ-semimodule. Requires the
/// module's semigroup to be step `i` of Γ's normalization chain.
pub fn pushforward(s: &NumericalSemigroup, i: usize, m: &GammaSemimodule) -> Result<Pushforward> {
    let chain = s.normalization_chain();
    let Some(step) = chain.steps.get(i) else {
        return Err(Error::IndexOutOfRange {
            index: i,
            min: 0,
            max: chain.len() - 1,
        });
    };
    if step != m.parent() {
        return Err(Error::Precondition(format!(
            "module lives over {}, not over step {i} ({step})",
            m.parent()
        )));
    }
    let v0 = s.conductor();
    let elems: Vec<usize> = (0..v0).filter(|&n| m.contains(n)).collect();
    let module = GammaSemimodule::create(s, &elems, crate::semimodule::CreateMode::Validate)?;
    Ok(Pushforward {
        module,
        degree_offset: -(i as i64),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    /// Containment of an open stratum in the boundary of another.
    Open,
    /// Containment between closures.
    Closure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DagNode {
    pub id: String,
    pub level: usize,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DagEdge {
    pub from: String,
    pub to: String,
    pub kind: EdgeKind,
    /// The fixed-point check for this arrow passed.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrataDag {
    pub nodes: Vec<DagNode>,
    pub edges: Vec<DagEdge>,
}

fn node_id(level: usize, r: usize) -> String {
    format!("L{level}_r{r}")
}

/// Checks the arrow `(i+1, r) → (i, target_r)` on fixed points: every
/// normalized stratum-`r` module over `Γ^{i+1}`, pushed to `Γ^i`, either
/// lands in stratum `target_r` (`lands = true`) or has a representative
/// `tF` with `rk(tF/C) = r + 1` (the closure condition).
fn check_arrow(chain: &[NumericalSemigroup], i: usize, r: usize, lands: bool) -> bool {
    let upper = &chain[i + 1];
    let lower = &chain[i];
    let modules = GammaSemimodule::enumerate(upper, EnumFilter::normalized());
    modules.iter().filter(|m| m.ranks().r == r).all(|m| {
        let Ok(p) = pushforward(lower, 1, m) else {
            return false;
        };
        if lands {
            p.module.ranks().r == r + 1
        } else {
            p.module
                .multiply_by_t(1)
                .is_some_and(|t| t.ranks().rk_mod_c == r + 1)
        }
    })
}

/// Containment graph of the strata along the normalization chain of an
/// `M = C` singularity.
pub fn strata_dag(s: &NumericalSemigroup) -> Result<StrataDag> {
    let t = s.classify();
    if !t.m_equals_c {
        return Err(Error::WrongCurveType {
            expected: "M_equals_C",
            found: t.name(),
        });
    }
    let chain = s.normalization_chain().steps;
    let delta = s.delta();
    let max_r = |level: usize| chain[level].conductor() - 2;
    let mut nodes = Vec::new();
    for level in 0..delta {
        for r in 0..=max_r(level) {
            nodes.push(DagNode {
                id: node_id(level, r),
                level,
                r,
            });
        }
    }
    let mut edges = Vec::new();
    for level in 0..delta.saturating_sub(1) {
        for r in 0..=max_r(level + 1) {
            let from = node_id(level + 1, r);
            let into_closure = check_arrow(&chain, level, r, false);
            edges.push(DagEdge {
                from: from.clone(),
                to: node_id(level, r),
                kind: EdgeKind::Open,
                verified: into_closure,
            });
            edges.push(DagEdge {
                from: from.clone(),
                to: node_id(level, r),
                kind: EdgeKind::Closure,
                verified: into_closure,
            });
            if r < max_r(level) {
                edges.push(DagEdge {
                    from,
                    to: node_id(level, r + 1),
                    kind: EdgeKind::Closure,
                    verified: check_arrow(&chain, level, r, true),
                });
            }
        }
    }
    Ok(StrataDag { nodes, edges })
}

impl StrataDag {
    pub fn is_acyclic(&self) -> bool {
        // Every edge goes from level i + 1 to level i.
        let level = |id: &str| self.nodes.iter().find(|n| n.id == id).map(|n| n.level);
        self.edges
            .iter()
            .all(|e| matches!((level(&e.from), level(&e.to)), (Some(a), Some(b)) if a == b + 1))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph strata {\n  rankdir=RL;\n  node [shape=box];\n");
        for n in &self.nodes {
            let deg = if n.level == 0 {
                "0".to_string()
            } else {
                format!("-{}", n.level)
            };
            writeln!(
                out,
                "  \"{}\" [label=\"Pic^{}_{} C^{}\"];",
                n.id, deg, n.r, n.level
            )
            .unwrap();
        }
        for e in &self.edges {
            let (label, style) = match e.kind {
                EdgeKind::Open => ("open", "solid"),
                EdgeKind::Closure => ("closure", "dashed"),
            };
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{label}\", style={style}];",
                e.from, e.to
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}
