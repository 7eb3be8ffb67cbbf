//! Univariate polynomials in the deformation parameter `b` over ℚ.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Coefficients stored lowest degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·b^deg`.
    pub fn monomial(c: Rational, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power of `b` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add_assign(&mut self, other: &Poly) {
        self.axpy(&Rational::one(), other);
    }

    /// `self += f·other`.
    pub fn axpy(&mut self, f: &Rational, other: &Poly) {
        if f.is_zero() {
            return;
        }
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += f * b;
        }
        self.trim();
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    /// Exact division by `b`. The constant term must vanish.
    pub fn div_b(&mut self) {
        debug_assert!(self.constant_term().is_zero());
        if !self.coeffs.is_empty() {
            self.coeffs.remove(0);
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Nonzero terms `(degree, coefficient)`, highest degree first.
    pub fn terms_desc(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Writes `±c·b^i·t^j`-style monomials joined with `+`/`-`. `parts` holds
/// the non-coefficient factors of each monomial.
pub(crate) fn write_signed_sum<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Rational, Vec<String>)>,
{
    let mut first = true;
    for (c, parts) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if neg {
            f.write_str("-")?;
        } else if !first {
            f.write_str("+")?;
        }
        first = false;
        let mut factors = Vec::with_capacity(parts.len() + 1);
        if !abs.is_one() || parts.is_empty() {
            factors.push(fmt_rational(&abs));
        }
        factors.extend(parts);
        f.write_str(&factors.join("*"))?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

pub(crate) fn power(var: &str, e: usize) -> Option<String> {
    match e {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{e}")),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_sum(
            f,
            self.terms_desc()
                .map(|(d, c)| (c, power("b", d).into_iter().collect())),
        )
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn arithmetic() {
        let p = Poly::from_coeffs(vec![q(1), q(1)]); // 1 + b
        let sq = p.mul(&p);
        assert_eq!(sq.coeffs(), &[q(1), q(2), q(1)]);
        assert_eq!(sq.eval(&q(2)), q(9));
        let mut r = sq.clone();
        r.axpy(&q(-1), &Poly::constant(q(1)));
        assert_eq!(r.valuation(), Some(1));
        r.div_b();
        assert_eq!(r.to_string(), "b+2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::monomial(q(-3), 2).to_string(), "-3*b^2");
    }
}
