use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::canon::{Atom, Canon};
use super::Expr;
use crate::{Error, Result};

/// Sparse multivariate polynomial: exponent vector to rational coefficient.
/// Zero coefficients are never stored, so equal polynomials compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial { dim, terms: BTreeMap::new() }
    }

    pub(super) fn from_canon(c: &Canon, dim: usize) -> Result<Self> {
        let mut out = Polynomial::zero(dim);
        for (m, coef) in c.terms() {
            let mut exps = vec![0u32; dim];
            for (atom, e) in m.factors() {
                match atom {
                    Atom::Var(i) if *i < dim && *e > 0 => exps[*i] = *e as u32,
                    _ => return Err(Error::NotPolynomial),
                }
            }
            out.terms.insert(exps, coef.clone());
        }
        Ok(out)
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut out = Polynomial::zero(dim);
        for (e, c) in terms {
            assert_eq!(e.len(), dim, "exponent vector length");
            let slot = out.terms.entry(e).or_insert_with(BigRational::zero);
            *slot += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn evaluate(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (x, k) in point.iter().zip(e) {
                    t *= num_traits::Float::powi(*x, *k as i32);
                }
                t
            })
            .sum()
    }

    pub fn to_expr(&self) -> Expr {
        let mut c = Canon::zero();
        for (e, coef) in &self.terms {
            let mut t = Canon::constant(coef.clone());
            for (i, k) in e.iter().enumerate() {
                if *k > 0 {
                    t = t.mul(&Canon::var(i).pow(*k as i32));
                }
            }
            c = c.add(&t);
        }
        c.to_expr()
    }

    /// Exact restriction to the segment `a + s (b - a)`, `s` in `[0, 1]`.
    pub fn restrict_to_segment(&self, a: &[BigRational], b: &[BigRational]) -> UniPoly {
        let lines: Vec<UniPoly> = a
            .iter()
            .zip(b)
            .map(|(ai, bi)| UniPoly::new(vec![ai.clone(), bi - ai]))
            .collect();
        let mut out = UniPoly::zero();
        for (e, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for (line, k) in lines.iter().zip(e) {
                for _ in 0..*k {
                    t = t.mul(line);
                }
            }
            out = out.add(&t);
        }
        out
    }
}

/// Dense univariate polynomial, coefficients from degree 0 upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|c| BigRational::from_integer(BigInt::from(*c))).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficient(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coefficient(k) + other.coefficient(k)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coefficient(k) - other.coefficient(k)).collect())
    }

    pub fn scale(&self, k: &BigRational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        UniPoly::new(out)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = &rem[rem.len() - 1] / &lead;
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &f * c;
            }
            quot[k] = f;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn monic(&self) -> UniPoly {
        match self.coeffs.last() {
            Some(lead) => self.scale(&lead.recip()),
            None => UniPoly::zero(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn square_free_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn evaluate_exact(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn leading_is_positive(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_positive())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}
