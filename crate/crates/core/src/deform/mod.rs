//! One-parameter deformations `∂_b·O` of the free module and their flat
//! limits at `b = 0`, computed exactly in the truncation `Õ/C`.

mod family;
mod lattice;
mod poly;
mod search;

use serde::{Serialize, Serializer};

pub use family::DeformationFamily;
pub use lattice::{build_lattice, rank, Echelon, PolyLattice, Vector};
pub use poly::{Poly, Rational};
pub use search::{certificate_search, filt_equals_kbar_report, Budget, KbarEntry, KbarReport};

use crate::error::Result;
use crate::semigroup::NumericalSemigroup;
use crate::semimodule::{CreateMode, GammaSemimodule};

#[derive(Debug, Clone, Serialize)]
pub struct LimitResult {
    /// Orders of the limit below the conductor (pivots of the echelon basis).
    #[serde(rename = "limit_below_v0")]
    pub orders: Vec<usize>,
    /// The limit is spanned by monomials.
    pub monomial: bool,
    pub codim: usize,
    /// Closed under multiplication by every generator.
    pub invariant: bool,
    /// The orders dominate those of Γ elementwise.
    pub in_filt: bool,
    /// Reduced basis vectors, one per order.
    #[serde(serialize_with = "ser_basis")]
    pub basis: Vec<Vector>,
    pub divisions: usize,
    #[serde(skip)]
    pub module: Option<GammaSemimodule>,
}

fn ser_basis<S: Serializer>(basis: &[Vector], ser: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = basis
        .iter()
        .map(|v| v.iter().map(poly::fmt_rational).collect())
        .collect();
    strings.serialize(ser)
}

/// The special fiber of `∂_b·O + C`: saturate the lattice of
/// `∂·t^s mod t^{v0}` and take the span of its `b = 0` evaluations.
pub fn flat_limit(s: &NumericalSemigroup, fam: &DeformationFamily) -> Result<LimitResult> {
    let lattice = build_lattice(s, fam)?.saturate();
    let v0 = s.conductor();
    let mut ech = Echelon::new();
    for v in lattice.at_zero() {
        ech.insert(&v);
    }
    let orders = ech.pivots();
    let basis: Vec<Vector> = ech.rows().map(|(_, v)| v.clone()).collect();
    let monomial = ech.rows().all(|(p, v)| {
        v.iter()
            .enumerate()
            .all(|(j, c)| j == p || num_traits::Zero::is_zero(c))
    });
    let invariant = s.generators().iter().filter(|&&k| k < v0).all(|&k| {
        basis.iter().all(|v| {
            let mut w = vec![<Rational as num_traits::Zero>::zero(); v0];
            w[k..].clone_from_slice(&v[..v0 - k]);
            ech.contains(&w)
        })
    });
    let in_filt = orders.iter().enumerate().all(|(j, &o)| o >= s.element(j));
    let module = if monomial && invariant {
        GammaSemimodule::create(s, &orders, CreateMode::Validate).ok()
    } else {
        None
    };
    Ok(LimitResult {
        codim: v0 - orders.len(),
        orders,
        monomial,
        invariant,
        in_filt,
        basis,
        divisions: lattice.divisions(),
        module,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    fn limit(g: &[u64], expr: &str) -> LimitResult {
        let s = sg(g);
        flat_limit(&s, &DeformationFamily::parse(expr, &s).unwrap()).unwrap()
    }

    #[test]
    fn even_case() {
        let l = limit(&[4, 5, 6], "t^2+b");
        assert_eq!(l.orders, vec![2, 4, 6, 7]);
        assert!(l.monomial && l.invariant && l.in_filt);
        assert_eq!(l.codim, 4);
        assert_eq!(l.module.unwrap().below_vec(), vec![2, 4, 6, 7]);
    }

    #[test]
    fn divisible_by_three() {
        let l = limit(&[6, 7, 8, 9, 10], "t^2+b*t+b^2");
        assert_eq!(l.orders, vec![2, 6, 8, 9, 10, 11]);
        assert!(l.monomial && l.invariant);
        assert_eq!(l.codim, 6);
    }

    #[test]
    fn constant_family() {
        let s = sg(&[3, 7, 8]);
        let l = flat_limit(&s, &DeformationFamily::one(&s)).unwrap();
        assert_eq!(l.module.unwrap(), GammaSemimodule::free(&s));
        assert_eq!(l.divisions, 0);
    }

    #[test]
    fn non_monomial_limit() {
        let l = limit(&[3, 4, 5], "1 + b*t");
        assert_eq!(l.orders, vec![0]);
        assert!(l.invariant);
        let l = limit(&[4, 5, 6], "b+t+t^2");
        assert!(l.invariant);
        assert_eq!(l.codim, 4);
    }
}
