//! Unit families `∂_b = Σ c_j(b) t^j` and their expression syntax.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::poly::{power, write_signed_sum, Poly, Rational};
use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

/// Coefficients `c_j(b)` for `t`-exponents `j < v0`; higher powers of `t`
/// lie in the conductor and are dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct DeformationFamily {
    conductor: usize,
    coeffs: BTreeMap<usize, Poly>,
    warnings: Vec<String>,
}

impl DeformationFamily {
    /// Builds a family from explicit coefficients, enforcing the unit check.
    pub fn from_coeffs(conductor: usize, coeffs: BTreeMap<usize, Poly>) -> Result<Self> {
        let mut warnings = Vec::new();
        let mut kept = BTreeMap::new();
        for (j, c) in coeffs {
            if c.is_zero() {
                continue;
            }
            if j >= conductor {
                warnings.push(format!("t^{j} lies in the conductor and was dropped"));
            } else {
                kept.insert(j, c);
            }
        }
        Self::checked(conductor, kept, warnings)
    }

    fn checked(
        conductor: usize,
        coeffs: BTreeMap<usize, Poly>,
        warnings: Vec<String>,
    ) -> Result<Self> {
        match coeffs.keys().next() {
            Some(0) => Ok(DeformationFamily {
                conductor,
                coeffs,
                warnings,
            }),
            Some(&j) => Err(Error::NotAUnit { order: j }),
            None => Err(Error::NotAUnit { order: conductor }),
        }
    }

    /// The constant family `1`.
    pub fn one(s: &NumericalSemigroup) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(0, Poly::constant(Rational::from_integer(1.into())));
        DeformationFamily {
            conductor: s.conductor(),
            coeffs,
            warnings: Vec::new(),
        }
    }

    pub fn parse(expr: &str, s: &NumericalSemigroup) -> Result<Self> {
        let terms = Parser::new(expr).terms()?;
        let v0 = s.conductor();
        let mut coeffs: BTreeMap<usize, Poly> = BTreeMap::new();
        let mut warnings = Vec::new();
        for (c, ti, bj) in terms {
            if ti >= v0 {
                warnings.push(format!("t^{ti} lies in the conductor and was dropped"));
                continue;
            }
            coeffs
                .entry(ti)
                .or_default()
                .axpy(&c, &Poly::monomial(Rational::from_integer(1.into()), bj));
        }
        coeffs.retain(|_, p| !p.is_zero());
        Self::checked(v0, coeffs, warnings)
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, Poly> {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Option<&Poly> {
        self.coeffs.get(&j)
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Maximal `b`-degree over all coefficients.
    pub fn b_degree(&self) -> usize {
        self.coeffs
            .values()
            .filter_map(Poly::degree)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for DeformationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().rev().flat_map(|(&j, p)| {
            p.terms_desc().map(move |(d, c)| {
                let parts: Vec<String> = power("b", d).into_iter().chain(power("t", j)).collect();
                (c, parts)
            })
        });
        write_signed_sum(f, terms)
    }
}

impl fmt::Debug for DeformationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DeformationFamily({self})")
    }
}

impl Serialize for DeformationFamily {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

type Term = (Rational, usize, usize);

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn exponent(&mut self) -> Result<usize> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let e = self.integer()?;
        match usize::try_from(e) {
            Ok(e) => Ok(e),
            Err(_) => self.err("exponent too large"),
        }
    }

    fn terms(&mut self) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        if self.peek().is_none() {
            return self.err("empty expression");
        }
        let mut first = true;
        while self.peek().is_some() {
            let neg = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return self.err("expected '+' or '-'"),
            };
            first = false;
            let mut t = self.term()?;
            if neg {
                t.0 = -t.0;
            }
            out.push(t);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Term> {
        let mut c = Rational::from_integer(1.into());
        let (mut ti, mut bj) = (0usize, 0usize);
        loop {
            match self.peek() {
                Some(d) if d.is_ascii_digit() => {
                    let n = self.integer()?;
                    let mut q = Rational::from_integer(n);
                    if self.eat(b'/') {
                        let d = self.integer()?;
                        if d.is_zero() {
                            return self.err("zero denominator");
                        }
                        q /= Rational::from_integer(d);
                    }
                    c *= q;
                }
                Some(b't') => {
                    self.pos += 1;
                    ti += self.exponent()?;
                }
                Some(b'b') => {
                    self.pos += 1;
                    bj += self.exponent()?;
                }
                Some(ch) => return self.err(format!("unexpected character '{}'", ch as char)),
                None => return self.err("expected a factor"),
            }
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(b't' | b'b') => {}
                _ => break,
            }
        }
        Ok((c, ti, bj))
    }
}
