//! Lattices over `ℚ[b]` in the truncation `Õ/C = ℚ^{v0}` and their
//! saturation at `b = 0`.

use num_traits::{One, Zero};

use super::family::DeformationFamily;
use super::poly::{Poly, Rational};
use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

pub type Vector = Vec<Rational>;

/// Echelon basis keyed by the lowest nonzero coordinate of each vector.
/// Every stored vector has a pivot entry 1 and zeros in the other pivots.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vector)>,
}

fn lowest(v: &[Rational]) -> Option<usize> {
    v.iter().position(|c| !c.is_zero())
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis. Returns the multipliers used, indexed
    /// like the basis rows, and leaves the remainder in `v`.
    fn reduce(&self, v: &mut Vector) -> Vec<Rational> {
        let mut mults = vec![Rational::zero(); self.rows.len()];
        for (k, (p, row)) in self.rows.iter().enumerate() {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
            mults[k] = f;
        }
        mults
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(Zero::is_zero)
    }

    /// Adds `v` if independent; returns whether it was.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(p) = lowest(&v) else {
            return false;
        };
        let inv = Rational::one() / &v[p];
        for c in v.iter_mut() {
            *c *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (a, b) in row.iter_mut().zip(&v) {
                    if !b.is_zero() {
                        *a -= &f * b;
                    }
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }

    /// Basis sorted by pivot.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &Vector)> {
        self.rows.iter().map(|(p, v)| (*p, v))
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }
}

pub fn rank(vectors: &[Vector]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyLattice {
    dim: usize,
    rows: Vec<Vec<Poly>>,
    generic_rank: usize,
    divisions: usize,
}

impl PolyLattice {
    /// Rows are checked for rank over `ℚ(b)`.
    pub fn new(dim: usize, rows: Vec<Vec<Poly>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == dim));
        let generic_rank = generic_rank(&rows);
        PolyLattice {
            dim,
            rows,
            generic_rank,
            divisions: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn generic_rank(&self) -> usize {
        self.generic_rank
    }

    /// Number of divisions by `b` performed by [`PolyLattice::saturate`].
    pub fn divisions(&self) -> usize {
        self.divisions
    }

    pub fn at_zero(&self) -> Vec<Vector> {
        self.rows
            .iter()
            .map(|r| r.iter().map(Poly::constant_term).collect())
            .collect()
    }

    pub fn eval(&self, x: &Rational) -> Vec<Vector> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|p| p.eval(x)).collect())
            .collect()
    }

    fn strip_content(&mut self, i: usize) {
        let row = &mut self.rows[i];
        while row.iter().any(|p| !p.is_zero()) && row.iter().all(|p| p.constant_term().is_zero()) {
            for p in row.iter_mut() {
                p.div_b();
            }
            self.divisions += 1;
        }
    }

    /// Saturates the lattice at `b = 0`: while the constant terms of the rows
    /// are dependent, the first row whose constant term lies in the span of
    /// the earlier ones is replaced by `(row − Σ λ_k row_k) / b`. The span
    /// over `ℚ(b)` is unchanged. Requires full generic rank.
    pub fn saturate(mut self) -> PolyLattice {
        assert_eq!(
            self.generic_rank,
            self.rows.len(),
            "saturation needs independent rows"
        );
        for i in 0..self.rows.len() {
            self.strip_content(i);
        }
        'outer: loop {
            let zero = self.at_zero();
            // Echelon over the constant terms, tracking combinations of rows.
            let mut basis = Echelon::new();
            let mut combos: Vec<Vec<Rational>> = Vec::new();
            for (i, v) in zero.iter().enumerate() {
                let mut rem = v.clone();
                let mults = basis.reduce(&mut rem);
                if rem.iter().all(Zero::is_zero) {
                    // v = Σ mults_k basis_k and basis_k = Σ combos_k[j] row_j(0).
                    let mut lambda = vec![Rational::zero(); i];
                    for (k, m) in mults.iter().enumerate() {
                        if m.is_zero() {
                            continue;
                        }
                        for (j, c) in combos[k].iter().enumerate() {
                            lambda[j] += m * c;
                        }
                    }
                    let mut row = self.rows[i].clone();
                    for (j, l) in lambda.iter().enumerate() {
                        if l.is_zero() {
                            continue;
                        }
                        let neg = -l.clone();
                        for (a, b) in row.iter_mut().zip(&self.rows[j]) {
                            a.axpy(&neg, b);
                        }
                    }
                    self.rows[i] = row;
                    self.strip_content(i);
                    continue 'outer;
                }
                // Record the new basis vector as a combination of rows.
                let mut combo = vec![Rational::zero(); i + 1];
                combo[i] = Rational::one();
                for (k, m) in mults.iter().enumerate() {
                    if m.is_zero() {
                        continue;
                    }
                    for (j, c) in combos[k].iter().enumerate() {
                        combo[j] -= m * c;
                    }
                }
                insert_tracked(&mut basis, &mut combos, rem, combo);
            }
            return self;
        }
    }
}

/// Inserts an already reduced vector into `basis`, keeping `combos` in step
/// with the normalization and back-substitution that `Echelon::insert` does.
fn insert_tracked(
    basis: &mut Echelon,
    combos: &mut Vec<Vec<Rational>>,
    mut v: Vector,
    mut combo: Vec<Rational>,
) {
    let p = lowest(&v).expect("nonzero remainder");
    let inv = Rational::one() / &v[p];
    for c in v.iter_mut() {
        *c *= &inv;
    }
    for c in combo.iter_mut() {
        *c *= &inv;
    }
    for (k, (_, row)) in basis.rows.iter_mut().enumerate() {
        if row[p].is_zero() {
            continue;
        }
        let f = row[p].clone();
        for (a, b) in row.iter_mut().zip(&v) {
            if !b.is_zero() {
                *a -= &f * b;
            }
        }
        let ck = &mut combos[k];
        if ck.len() < combo.len() {
            ck.resize(combo.len(), Rational::zero());
        }
        for (a, b) in ck.iter_mut().zip(&combo) {
            *a -= &f * b;
        }
    }
    let at = basis.rows.partition_point(|(q, _)| *q < p);
    basis.rows.insert(at, (p, v));
    combos.insert(at, combo);
}

/// Rank over `ℚ(b)`, as the maximum rank over `b = 0, 1, …, D`, where `D`
/// bounds the degree of every maximal minor. A nonzero minor has at most `D`
/// roots, so one of these points realizes the generic rank.
fn generic_rank(rows: &[Vec<Poly>]) -> usize {
    let d: usize = rows
        .iter()
        .map(|r| r.iter().filter_map(Poly::degree).max().unwrap_or(0))
        .sum();
    let mut best = 0;
    for x in 0..=d {
        let x = Rational::from_integer(x.into());
        let vals: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|p| p.eval(&x)).collect())
            .collect();
        best = best.max(rank(&vals));
        if best == rows.len() {
            break;
        }
    }
    best
}

/// Rows `∂·t^s mod t^{v0}` for every `s ∈ Γ` below the conductor.
pub fn build_lattice(s: &NumericalSemigroup, fam: &DeformationFamily) -> Result<PolyLattice> {
    let v0 = s.conductor();
    if fam.conductor() != v0 {
        return Err(Error::Precondition(format!(
            "family was parsed for conductor {}, semigroup has {v0}",
            fam.conductor()
        )));
    }
    let rows: Vec<Vec<Poly>> = s
        .elements_below_conductor()
        .iter()
        .map(|&e| {
            let mut row = vec![Poly::zero(); v0];
            for (&j, c) in fam.coeffs() {
                if e + j < v0 {
                    row[e + j] = c.clone();
                }
            }
            row
        })
        .collect();
    let lattice = PolyLattice::new(v0, rows);
    let gamma = s.gamma();
    if lattice.generic_rank() < gamma {
        return Err(Error::RankDrop {
            expected: gamma,
            found: lattice.generic_rank(),
        });
    }
    Ok(lattice)
}
