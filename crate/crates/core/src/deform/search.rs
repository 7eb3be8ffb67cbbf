//! Bounded search for families `∂_b = Σ c_j b^{w_j} t^j` whose flat limit is
//! a given fixed point.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::family::DeformationFamily;
use super::flat_limit;
use super::poly::{Poly, Rational};
use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;
use crate::semimodule::{EnumFilter, GammaSemimodule};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Largest power of `b` in a coefficient.
    pub max_b_degree: usize,
    /// Largest number of `t`-exponents with a nonzero coefficient.
    pub max_support: usize,
    pub coefficients: Vec<i64>,
}

impl Budget {
    pub fn new(max_b_degree: usize, max_support: usize, coefficients: &[i64]) -> Self {
        Budget {
            max_b_degree,
            max_support,
            coefficients: coefficients.to_vec(),
        }
    }

    /// The budget used by [`filt_equals_kbar_report`] unless overridden.
    /// Support 4 is needed on ⟨4,5,6⟩ for `{3,4,5,7}` (`t³+bt²+b²t+b³`).
    pub fn report_default() -> Self {
        Self::new(3, 4, &[1, -1])
    }

    /// Nonzero coefficients deduplicated and sorted by `(|c|, sign)`, positive first.
    fn ordered_coefficients(&self) -> Vec<i64> {
        let mut c: Vec<i64> = self
            .coefficients
            .iter()
            .copied()
            .filter(|&c| c != 0)
            .collect();
        c.sort_by_key(|&c| (c.unsigned_abs(), c < 0));
        c.dedup();
        c
    }
}

/// All `size`-subsets of `1..n` in lexicographic order.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < left {
                break;
            }
            cur.push(x);
            rec(x + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, size, &mut Vec::new(), &mut out);
    out
}

/// Searches supports by size, then lexicographically (always containing
/// `t^0`), then per-term choices `(w_j, c_j)` with the lowest exponent most
/// significant. Families with every `w_j > 0` are skipped: they differ from
/// a searched family by a power of `b`, which does not change the limit.
/// Returns the first hit in this order, independent of the thread count.
pub fn certificate_search(
    s: &NumericalSemigroup,
    target: &GammaSemimodule,
    budget: &Budget,
) -> Result<Option<DeformationFamily>> {
    if target.parent() != s {
        return Err(Error::Precondition(format!(
            "target lives over {}, not {s}",
            target.parent()
        )));
    }
    let delta = s.delta();
    let codim = target.ranks().codim;
    if codim != delta {
        return Err(Error::WrongCodim {
            expected: delta,
            found: codim,
        });
    }
    let v0 = s.conductor();
    let coeffs = budget.ordered_coefficients();
    let choices: Vec<(usize, i64)> = (0..=budget.max_b_degree)
        .flat_map(|w| coeffs.iter().map(move |&c| (w, c)))
        .collect();
    if choices.is_empty() {
        return Ok(None);
    }
    let want = target.below_vec();
    for size in 1..=budget.max_support.min(v0) {
        for tail in subsets(v0, size - 1) {
            let support: Vec<usize> = std::iter::once(0).chain(tail).collect();
            let total = (choices.len() as u64).pow(size as u32);
            let hit = (0..total).into_par_iter().find_map_first(|idx| {
                let picks = decode(idx, choices.len(), size);
                if picks.iter().all(|&p| choices[p].0 > 0) {
                    return None;
                }
                let mut map = BTreeMap::new();
                for (&j, &p) in support.iter().zip(&picks) {
                    let (w, c) = choices[p];
                    map.insert(j, Poly::monomial(Rational::from_integer(c.into()), w));
                }
                let fam = DeformationFamily::from_coeffs(v0, map).ok()?;
                let lim = flat_limit(s, &fam).ok()?;
                (lim.monomial && lim.orders == want).then_some(fam)
            });
            if hit.is_some() {
                return Ok(hit);
            }
        }
    }
    Ok(None)
}

/// Mixed-radix digits of `idx`, most significant first.
fn decode(mut idx: u64, radix: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for d in out.iter_mut().rev() {
        *d = (idx % radix as u64) as usize;
        idx /= radix as u64;
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct KbarEntry {
    pub module: GammaSemimodule,
    /// `None` means no certificate within the budget.
    pub certificate: Option<DeformationFamily>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KbarReport {
    pub budget: Budget,
    pub entries: Vec<KbarEntry>,
    pub certified: usize,
    pub total: usize,
    pub all_certified: bool,
}

impl KbarReport {
    pub fn uncertified(&self) -> impl Iterator<Item = &GammaSemimodule> {
        self.entries
            .iter()
            .filter(|e| e.certificate.is_none())
            .map(|e| &e.module)
    }
}

/// Runs [`certificate_search`] on every monomial point of `Filt(C, δ)`.
pub fn filt_equals_kbar_report(s: &NumericalSemigroup, budget: &Budget) -> KbarReport {
    let points: Vec<GammaSemimodule> = GammaSemimodule::enumerate(s, EnumFilter::codim(s.delta()))
        .into_iter()
        .filter(|m| m.in_filt_locus() == Ok(true))
        .collect();
    let entries: Vec<KbarEntry> = points
        .into_iter()
        .map(|module| KbarEntry {
            certificate: certificate_search(s, &module, budget).expect("codim δ target"),
            module,
        })
        .collect();
    let certified = entries.iter().filter(|e| e.certificate.is_some()).count();
    KbarReport {
        budget: budget.clone(),
        total: entries.len(),
        all_certified: certified == entries.len(),
        certified,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semimodule::CreateMode;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(subsets(4, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(4, 0), vec![Vec::<usize>::new()]);
        assert_eq!(decode(5, 3, 2), vec![1, 2]);
        assert_eq!(
            Budget::new(0, 1, &[-1, 2, 1, 0, -2, 1]).ordered_coefficients(),
            vec![1, -1, 2, -2]
        );
    }

    #[test]
    fn even_case_certificate() {
        let s = sg(&[4, 5, 6]);
        let target = GammaSemimodule::create(&s, &[2, 4, 6, 7], CreateMode::Validate).unwrap();
        let fam = certificate_search(&s, &target, &Budget::new(1, 2, &[1]))
            .unwrap()
            .unwrap();
        assert_eq!(fam.to_string(), "t^2+b");
    }

    #[test]
    fn trivial_certificate() {
        let s = sg(&[3, 5, 7]);
        let fam = certificate_search(&s, &GammaSemimodule::free(&s), &Budget::new(0, 1, &[1]))
            .unwrap()
            .unwrap();
        assert_eq!(fam.to_string(), "1");
        let small = GammaSemimodule::create(&s, &[3], CreateMode::Generate).unwrap();
        assert!(matches!(
            certificate_search(&s, &small, &Budget::new(0, 1, &[1])),
            Err(Error::WrongCodim { .. })
        ));
    }
}
