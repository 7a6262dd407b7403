//! Scalar expressions over the coordinates of a chart.

mod canon;
mod parse;
mod poly;
mod print;

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, One, ToPrimitive, Zero};

pub(crate) use self::canon::Canon;
pub use self::poly::{Polynomial, UniPoly};
pub use self::print::Displayed;
use crate::{Chart, Error, Result};

/// Expression tree. Constants are exact rationals; `Var` holds a coordinate
/// index into the ambient chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(BigRational),
    Var(usize),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
    Div(Box<Expr>, Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Exp(Box<Expr>),
}

impl Expr {
    pub fn parse(text: &str, chart: &Chart) -> Result<Expr> {
        parse::parse(text, chart)
    }

    pub fn zero() -> Expr {
        Expr::Const(BigRational::zero())
    }

    pub fn one() -> Expr {
        Expr::Const(BigRational::one())
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Expr {
        Expr::Const(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn var(index: usize) -> Expr {
        Expr::Var(index)
    }

    pub fn sin(self) -> Expr {
        Expr::Sin(Box::new(self))
    }

    pub fn cos(self) -> Expr {
        Expr::Cos(Box::new(self))
    }

    pub fn exp(self) -> Expr {
        Expr::Exp(Box::new(self))
    }

    pub fn pow(self, k: i32) -> Expr {
        Expr::Pow(Box::new(self), k)
    }

    /// True only for the literal constant zero (no simplification).
    pub fn is_literal_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_zero())
    }

    /// True if the canonical form is empty. A `false` answer says nothing.
    pub fn is_canonically_zero(&self) -> bool {
        Canon::from_expr(self).is_zero()
    }

    /// Canonical constant value, if the expression reduces to one.
    pub fn as_rational(&self) -> Option<BigRational> {
        Canon::from_expr(self).as_constant()
    }

    /// Evaluates in tree order. Fails when a denominator has absolute value
    /// below `1e-300`.
    pub fn evaluate(&self, point: &[f64]) -> Result<f64> {
        self.eval_inner(point)
            .ok_or_else(|| Error::DivisionNearZero { point: point.to_vec() })
    }

    fn eval_inner(&self, point: &[f64]) -> Option<f64> {
        Some(match self {
            Expr::Const(c) => c.to_f64().unwrap_or(f64::NAN),
            Expr::Var(i) => point[*i],
            Expr::Sum(items) => {
                let mut acc = 0.0;
                for item in items {
                    acc += item.eval_inner(point)?;
                }
                acc
            }
            Expr::Prod(items) => {
                let mut acc = 1.0;
                for item in items {
                    acc *= item.eval_inner(point)?;
                }
                acc
            }
            Expr::Neg(a) => -a.eval_inner(point)?,
            Expr::Pow(b, k) => {
                let b = b.eval_inner(point)?;
                if *k < 0 && b.abs() < canon::DENOMINATOR_FLOOR {
                    return None;
                }
                Float::powi(b, *k)
            }
            Expr::Div(a, b) => {
                let num = a.eval_inner(point)?;
                let den = b.eval_inner(point)?;
                if den.abs() < canon::DENOMINATOR_FLOOR {
                    return None;
                }
                num / den
            }
            Expr::Sin(a) => Float::sin(a.eval_inner(point)?),
            Expr::Cos(a) => Float::cos(a.eval_inner(point)?),
            Expr::Exp(a) => Float::exp(a.eval_inner(point)?),
        })
    }

    /// Exact partial derivative with respect to coordinate `v`, returned in
    /// canonical form.
    pub fn derivative(&self, v: usize) -> Expr {
        Canon::from_expr(self).derivative(v).to_expr()
    }

    /// Canonical form: expanded sum of monomials, constant term first.
    pub fn simplify(&self) -> Expr {
        Canon::from_expr(self).to_expr()
    }

    /// Replaces every `Var(i)` by `values[i]`.
    pub fn substitute(&self, values: &[Expr]) -> Expr {
        match self {
            Expr::Const(_) => self.clone(),
            Expr::Var(i) => values[*i].clone(),
            Expr::Sum(items) => Expr::Sum(items.iter().map(|x| x.substitute(values)).collect()),
            Expr::Prod(items) => Expr::Prod(items.iter().map(|x| x.substitute(values)).collect()),
            Expr::Neg(a) => Expr::Neg(Box::new(a.substitute(values))),
            Expr::Pow(b, k) => Expr::Pow(Box::new(b.substitute(values)), *k),
            Expr::Div(a, b) => Expr::Div(Box::new(a.substitute(values)), Box::new(b.substitute(values))),
            Expr::Sin(a) => Expr::Sin(Box::new(a.substitute(values))),
            Expr::Cos(a) => Expr::Cos(Box::new(a.substitute(values))),
            Expr::Exp(a) => Expr::Exp(Box::new(a.substitute(values))),
        }
    }

    /// Same expression with every coordinate index shifted by `offset`.
    pub fn shift_vars(&self, offset: usize) -> Expr {
        self.map_vars(&|i| i + offset)
    }

    pub fn map_vars(&self, f: &dyn Fn(usize) -> usize) -> Expr {
        match self {
            Expr::Const(_) => self.clone(),
            Expr::Var(i) => Expr::Var(f(*i)),
            Expr::Sum(items) => Expr::Sum(items.iter().map(|x| x.map_vars(f)).collect()),
            Expr::Prod(items) => Expr::Prod(items.iter().map(|x| x.map_vars(f)).collect()),
            Expr::Neg(a) => Expr::Neg(Box::new(a.map_vars(f))),
            Expr::Pow(b, k) => Expr::Pow(Box::new(b.map_vars(f)), *k),
            Expr::Div(a, b) => Expr::Div(Box::new(a.map_vars(f)), Box::new(b.map_vars(f))),
            Expr::Sin(a) => Expr::Sin(Box::new(a.map_vars(f))),
            Expr::Cos(a) => Expr::Cos(Box::new(a.map_vars(f))),
            Expr::Exp(a) => Expr::Exp(Box::new(a.map_vars(f))),
        }
    }

    /// Largest coordinate index occurring in the tree.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Const(_) => None,
            Expr::Var(i) => Some(*i),
            Expr::Sum(items) | Expr::Prod(items) => items.iter().filter_map(Expr::max_var).max(),
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Sin(a) | Expr::Cos(a) | Expr::Exp(a) => a.max_var(),
            Expr::Div(a, b) => a.max_var().max(b.max_var()),
        }
    }

    /// Expanded polynomial, or `NotPolynomial` when the canonical form still
    /// contains `sin`, `cos`, `exp` or a nonconstant denominator.
    pub fn to_polynomial(&self, dim: usize) -> Result<Polynomial> {
        let c = Canon::from_expr(self);
        if !c.is_polynomial() {
            return Err(Error::NotPolynomial);
        }
        Polynomial::from_canon(&c, dim)
    }

    pub fn display<'a>(&'a self, chart: &'a Chart) -> Displayed<'a> {
        Displayed::new(self, chart)
    }
}

impl From<BigRational> for Expr {
    fn from(c: BigRational) -> Self {
        Expr::Const(c)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

fn is_one(e: &Expr) -> bool {
    matches!(e, Expr::Const(c) if c.is_one())
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        if self.is_literal_zero() {
            return rhs;
        }
        if rhs.is_literal_zero() {
            return self;
        }
        let mut items = match self {
            Expr::Sum(v) => v,
            other => alloc::vec![other],
        };
        match rhs {
            Expr::Sum(v) => items.extend(v),
            other => items.push(other),
        }
        Expr::Sum(items)
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        if self.is_literal_zero() || rhs.is_literal_zero() {
            return Expr::zero();
        }
        if is_one(&self) {
            return rhs;
        }
        if is_one(&rhs) {
            return self;
        }
        let mut items = match self {
            Expr::Prod(v) => v,
            other => alloc::vec![other],
        };
        match rhs {
            Expr::Prod(v) => items.extend(v),
            other => items.push(other),
        }
        Expr::Prod(items)
    }
}

impl Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        if is_one(&rhs) {
            return self;
        }
        Expr::Div(Box::new(self), Box::new(rhs))
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(-c),
            Expr::Neg(a) => *a,
            other => Expr::Neg(Box::new(other)),
        }
    }
}

macro_rules! ref_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                $tr::$m(self.clone(), rhs.clone())
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                $tr::$m(self, rhs.clone())
            }
        }
    )*};
}

ref_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -self.clone()
    }
}
