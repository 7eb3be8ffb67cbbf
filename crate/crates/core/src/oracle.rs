//! Brute-force points of `E(C, d)` over `F_2` and `F_3`: subspaces of
//! `Õ/C = F_q^{v0}` of dimension `v0 − d` closed under multiplication by
//! every generator.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;
use crate::semimodule::{EnumFilter, GammaSemimodule};

pub const MAX_CONDUCTOR: usize = 8;
/// Cap on the number of subspaces of the ambient space that could be invariant
/// (the Gaussian binomial); above it the enumeration is refused.
pub const MAX_CANDIDATES: u64 = 5_000_000;

/// A subspace in reduced echelon form, keyed by lowest nonzero coordinate:
/// each basis vector has a 1 at its pivot and 0 at every other pivot.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct InvariantSubspace {
    pub q: u8,
    /// Pivots, increasing; these are the `t`-orders occurring in the subspace.
    pub orders: Vec<usize>,
    /// Basis rows, one per order, coordinates `t^0 … t^{v0−1}`.
    pub basis: Vec<Vec<u8>>,
}

impl InvariantSubspace {
    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    /// Spanned by coordinate vectors.
    pub fn is_monomial(&self) -> bool {
        self.basis
            .iter()
            .zip(&self.orders)
            .all(|(v, &p)| v.iter().enumerate().all(|(j, &c)| c == 0 || j == p))
    }

    /// Distinct `t`-orders over all nonzero vectors in the span. Computed by
    /// brute force when the span has at most 4096 vectors.
    pub fn observed_orders(&self) -> Option<Vec<usize>> {
        let q = self.q as u32;
        let n = (q as u64).checked_pow(self.dim() as u32)?;
        if n > 4096 {
            return None;
        }
        let len = self.basis.first().map_or(0, Vec::len);
        let mut seen = vec![false; len];
        for idx in 1..n {
            let mut v = vec![0u32; len];
            let mut k = idx;
            for row in &self.basis {
                let c = (k % q as u64) as u32;
                k /= q as u64;
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = (*a + c * b as u32) % q;
                }
            }
            if let Some(p) = v.iter().position(|&c| c != 0) {
                seen[p] = true;
            }
        }
        Some((0..len).filter(|&j| seen[j]).collect())
    }

    /// The order sequence dominates Γ's elementwise.
    pub fn in_filt(&self, s: &NumericalSemigroup) -> bool {
        self.orders
            .iter()
            .enumerate()
            .all(|(j, &o)| o >= s.element(j))
    }

    /// `rk(F/F·C) − 1 = dim + ord F − 1`, since `F·C = t^{v0 + ord F}Õ`.
    pub fn stratum(&self) -> usize {
        (self.dim() + self.orders.first().copied().unwrap_or(0)).saturating_sub(1)
    }

    pub fn to_module(&self, s: &NumericalSemigroup) -> Option<GammaSemimodule> {
        if !self.is_monomial() {
            return None;
        }
        GammaSemimodule::create(s, &self.orders, crate::semimodule::CreateMode::Validate).ok()
    }
}

fn gaussian_binomial(n: usize, k: usize, q: u64) -> u64 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    u64::try_from(num / den).unwrap_or(u64::MAX)
}

struct Search<'a> {
    q: u8,
    v0: usize,
    shifts: &'a [usize],
}

impl Search<'_> {
    /// Whether `w` lies in the span of `chosen` (reduced echelon rows).
    fn in_span(&self, mut w: Vec<u8>, chosen: &[(usize, Vec<u8>)]) -> bool {
        let q = self.q;
        for (p, row) in chosen {
            let c = w[*p];
            if c == 0 {
                continue;
            }
            for (a, &b) in w.iter_mut().zip(row) {
                *a = (*a + (q - c) * b) % q;
            }
        }
        w.iter().all(|&c| c == 0)
    }

    /// `t^k·v` for every generator must have order above `v`'s pivot, so it can
    /// only involve rows already chosen.
    fn closed(&self, v: &[u8], chosen: &[(usize, Vec<u8>)]) -> bool {
        self.shifts.iter().all(|&k| {
            let mut w = vec![0u8; self.v0];
            w[k..].copy_from_slice(&v[..self.v0 - k]);
            self.in_span(w, chosen)
        })
    }

    /// Candidate rows with pivot `p` whose free entries avoid the chosen pivots.
    fn rows(&self, p: usize, chosen: &[(usize, Vec<u8>)]) -> Vec<Vec<u8>> {
        let free: Vec<usize> = (p + 1..self.v0)
            .filter(|j| !chosen.iter().any(|(c, _)| c == j))
            .collect();
        let total = (self.q as u64).pow(free.len() as u32);
        (0..total)
            .map(|mut idx| {
                let mut v = vec![0u8; self.v0];
                v[p] = 1;
                for &j in free.iter().rev() {
                    v[j] = (idx % self.q as u64) as u8;
                    idx /= self.q as u64;
                }
                v
            })
            .collect()
    }

    /// Chooses rows from the highest pivot down. `chosen` rows have pivots
    /// above `limit`; `left` more rows are needed.
    fn rec(
        &self,
        limit: usize,
        left: usize,
        chosen: &mut Vec<(usize, Vec<u8>)>,
        out: &mut Vec<InvariantSubspace>,
    ) {
        if left == 0 {
            let mut rows = chosen.clone();
            rows.reverse();
            out.push(InvariantSubspace {
                q: self.q,
                orders: rows.iter().map(|(p, _)| *p).collect(),
                basis: rows.into_iter().map(|(_, v)| v).collect(),
            });
            return;
        }
        for p in (left - 1..limit).rev() {
            for v in self.rows(p, chosen) {
                if self.closed(&v, chosen) {
                    chosen.push((p, v));
                    self.rec(p, left - 1, chosen, out);
                    chosen.pop();
                }
            }
        }
    }
}

fn check_feasible(s: &NumericalSemigroup, q: u32) -> Result<u8> {
    if q != 2 && q != 3 {
        return Err(Error::UnsupportedField { q });
    }
    let v0 = s.conductor();
    if v0 > MAX_CONDUCTOR {
        return Err(Error::TooLarge {
            quantity: "conductor",
            value: v0 as u64,
            bound: MAX_CONDUCTOR as u64,
        });
    }
    Ok(q as u8)
}

/// Every point of `E(C, d)` over `F_q`, sorted by `(orders, basis)`.
pub fn enumerate_invariant_subspaces(
    s: &NumericalSemigroup,
    q: u32,
    d: usize,
) -> Result<Vec<InvariantSubspace>> {
    let q = check_feasible(s, q)?;
    let v0 = s.conductor();
    if d > v0 {
        return Ok(Vec::new());
    }
    let k = v0 - d;
    let bound = gaussian_binomial(v0, k, q as u64);
    if bound > MAX_CANDIDATES {
        return Err(Error::TooLarge {
            quantity: "subspace count",
            value: bound,
            bound: MAX_CANDIDATES,
        });
    }
    if k == 0 {
        return Ok(vec![InvariantSubspace {
            q,
            orders: Vec::new(),
            basis: Vec::new(),
        }]);
    }
    let shifts: Vec<usize> = s.generators().iter().copied().filter(|&g| g < v0).collect();
    let search = Search {
        q,
        v0,
        shifts: &shifts,
    };
    // Split on the top row; each branch is independent.
    let tops: Vec<(usize, Vec<u8>)> = (k - 1..v0)
        .rev()
        .flat_map(|p| search.rows(p, &[]).into_iter().map(move |v| (p, v)))
        .filter(|(_, v)| search.closed(v, &[]))
        .collect();
    let mut out: Vec<InvariantSubspace> = tops
        .into_par_iter()
        .flat_map_iter(|(p, v)| {
            let mut chosen = vec![(p, v)];
            let mut out = Vec::new();
            search.rec(p, k - 1, &mut chosen, &mut out);
            out
        })
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub q: u32,
    pub codim: usize,
    pub total: usize,
    pub monomial: usize,
    pub filt: usize,
    pub monomial_filt: usize,
    /// Every subspace has `dim` distinct orders, increasing.
    pub orders_strictly_increasing: bool,
    /// Brute-force order sets agree with the pivots wherever computed.
    pub orders_confirmed: bool,
    /// Coordinate subspaces are exactly the enumerated semimodules.
    pub monomial_matches_enumeration: bool,
    /// Filt flags of monomial points agree with the semimodule predicate.
    pub monomial_filt_agrees: bool,
    /// Subspace count per stratum `r`.
    pub strata: BTreeMap<usize, usize>,
    pub filt_strata: BTreeMap<usize, usize>,
}

impl OracleReport {
    pub fn consistent(&self) -> bool {
        self.orders_strictly_increasing
            && self.orders_confirmed
            && self.monomial_matches_enumeration
            && self.monomial_filt_agrees
            && self.filt <= self.total
            && self.monomial_filt <= self.filt
    }
}

/// Coordinate subspaces among `points` compared with the semimodule enumeration.
pub fn monomial_matches(s: &NumericalSemigroup, d: usize, points: &[InvariantSubspace]) -> bool {
    let mut from_oracle: Vec<Vec<usize>> = points
        .iter()
        .filter(|p| p.is_monomial())
        .map(|p| p.orders.clone())
        .collect();
    from_oracle.sort();
    let mut from_enum: Vec<Vec<usize>> = GammaSemimodule::enumerate(s, EnumFilter::codim(d))
        .iter()
        .map(GammaSemimodule::below_vec)
        .collect();
    from_enum.sort();
    from_oracle == from_enum
}

/// Structure checks on all points of `E(C, codim)` over `F_q`.
pub fn oracle_report(s: &NumericalSemigroup, q: u32, codim: usize) -> Result<OracleReport> {
    let points = enumerate_invariant_subspaces(s, q, codim)?;
    let dim = s.conductor().saturating_sub(codim);
    let mut strata = BTreeMap::new();
    let mut filt_strata = BTreeMap::new();
    let (mut monomial, mut filt, mut monomial_filt) = (0, 0, 0);
    let mut increasing = true;
    let mut confirmed = true;
    let mut filt_agrees = true;
    for p in &points {
        increasing &= p.dim() == dim && p.orders.windows(2).all(|w| w[0] < w[1]);
        if let Some(obs) = p.observed_orders() {
            confirmed &= obs == p.orders;
        }
        let f = p.in_filt(s);
        *strata.entry(p.stratum()).or_insert(0) += 1;
        if f {
            filt += 1;
            *filt_strata.entry(p.stratum()).or_insert(0) += 1;
        }
        if let Some(m) = p.to_module(s) {
            monomial += 1;
            if f {
                monomial_filt += 1;
            }
            if codim == s.delta() {
                filt_agrees &= m.in_filt_locus() == Ok(f);
            }
        }
    }
    Ok(OracleReport {
        q,
        codim,
        total: points.len(),
        monomial,
        filt,
        monomial_filt,
        orders_strictly_increasing: increasing,
        orders_confirmed: confirmed,
        monomial_matches_enumeration: monomial_matches(s, codim, &points),
        monomial_filt_agrees: filt_agrees,
        strata,
        filt_strata,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    #[test]
    fn gaussian() {
        assert_eq!(gaussian_binomial(3, 1, 2), 7);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(gaussian_binomial(5, 0, 2), 1);
    }

    #[test]
    fn all_subspaces_when_operators_vanish() {
        let s = sg(&[3, 4, 5]);
        let pts = enumerate_invariant_subspaces(&s, 2, 1).unwrap();
        assert_eq!(pts.len(), 7);
        assert_eq!(pts.iter().filter(|p| p.is_monomial()).count(), 3);
        let pts = enumerate_invariant_subspaces(&s, 3, 1).unwrap();
        assert_eq!(pts.len(), 13);
    }

    #[test]
    fn trivial_codims() {
        let s = sg(&[4, 5, 6]);
        let full = enumerate_invariant_subspaces(&s, 2, 0).unwrap();
        assert_eq!(full.len(), 1);
        assert_eq!(full[0].orders, (0..8).collect::<Vec<_>>());
        assert_eq!(enumerate_invariant_subspaces(&s, 2, 8).unwrap().len(), 1);
        assert!(enumerate_invariant_subspaces(&s, 2, 9).unwrap().is_empty());
    }

    #[test]
    fn monomial_cross_check_456() {
        let s = sg(&[4, 5, 6]);
        for d in 0..=8 {
            let pts = enumerate_invariant_subspaces(&s, 2, d).unwrap();
            assert!(monomial_matches(&s, d, &pts), "codim {d}");
        }
    }

    #[test]
    fn cusp_lines() {
        // v0 = 2 and t² acts by zero: all three lines of F_2^2.
        let s = sg(&[2, 3]);
        let pts = enumerate_invariant_subspaces(&s, 2, 1).unwrap();
        assert_eq!(pts.len(), 3);
        let rep = oracle_report(&s, 2, 1).unwrap();
        assert_eq!(rep.filt, 3);
        assert!(rep.consistent());
    }

    #[test]
    fn reports() {
        let rep = oracle_report(&sg(&[3, 4, 5]), 2, 2).unwrap();
        assert_eq!(rep.total, 7);
        assert!(rep.consistent());
        let rep = oracle_report(&sg(&[4, 5, 6]), 2, 4).unwrap();
        assert!(rep.consistent());
        assert!(rep.filt >= rep.monomial_filt);
        assert_eq!(rep.monomial_filt, 8);
    }

    #[test]
    fn feasibility() {
        let s = sg(&[4, 5, 6]);
        assert_eq!(
            enumerate_invariant_subspaces(&s, 5, 1).unwrap_err(),
            Error::UnsupportedField { q: 5 }
        );
        assert!(matches!(
            enumerate_invariant_subspaces(&sg(&[5, 6, 7, 8]), 2, 5),
            Err(Error::TooLarge {
                quantity: "conductor",
                ..
            })
        ));
        assert!(matches!(
            enumerate_invariant_subspaces(&sg(&[8, 9, 10, 11, 12, 13, 14, 15]), 3, 4),
            Err(Error::TooLarge {
                quantity: "subspace count",
                ..
            })
        ));
    }
}
