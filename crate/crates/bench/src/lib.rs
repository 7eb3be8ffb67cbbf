//! Fixtures shared by the benchmarks.

use jacstrata::{DeformationFamily, NumericalSemigroup};

pub fn semigroup(gens: &[u64]) -> NumericalSemigroup {
    NumericalSemigroup::from_generators(gens).expect("valid generators")
}

/// Semigroups of increasing size used across the benchmark groups.
pub fn ladder() -> Vec<NumericalSemigroup> {
    [
        &[3u64, 4, 5][..],
        &[4, 5, 6],
        &[4, 6, 7, 9],
        &[5, 6, 7, 8],
        &[6, 7, 8, 9, 10],
    ]
    .into_iter()
    .map(semigroup)
    .collect()
}

pub fn family(s: &NumericalSemigroup, expr: &str) -> DeformationFamily {
    DeformationFamily::parse(expr, s).expect("valid family")
}
