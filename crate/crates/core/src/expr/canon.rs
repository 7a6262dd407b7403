//! Canonical form: a finite sum of rational multiples of monomials over atoms.
//!
//! Atoms are coordinates, `exp`, `sin`, `cos` of canonical arguments, and
//! reciprocals of multi-term sums. Two expressions with the same canonical
//! form are equal as functions; the converse does not hold (no trigonometric
//! identities are applied), which is why zero testing falls back to sampling.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use super::Expr;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Atom {
    Var(usize),
    Exp(Box<Canon>),
    Sin(Box<Canon>),
    Cos(Box<Canon>),
    Recip(Box<Canon>),
}

/// Sorted atom powers. Exponents are nonzero; `Recip` exponents are positive;
/// at most one `Exp` atom occurs, with exponent 1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Mono(Vec<(Atom, i32)>);

impl Mono {
    fn degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| i64::from(*e)).sum()
    }

    pub(crate) fn factors(&self) -> &[(Atom, i32)] {
        &self.0
    }

    fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| lex(&self.0, &other.0).reverse())
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Lexicographic comparison of sparse exponent vectors, missing entries are 0.
fn lex(a: &[(Atom, i32)], b: &[(Atom, i32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some((_, e)), None) => return 0.cmp(e).reverse(),
            (None, Some((_, e))) => return 0.cmp(e),
            (Some((x, ex)), Some((y, ey))) => match x.cmp(y) {
                Ordering::Less => return 0.cmp(ex).reverse(),
                Ordering::Greater => return 0.cmp(ey),
                Ordering::Equal => {
                    if ex != ey {
                        return ex.cmp(ey);
                    }
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub(crate) struct Canon {
    terms: BTreeMap<Mono, BigRational>,
}

/// Result of evaluating a canonical form at a point.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Evaluation {
    pub value: f64,
    /// Sum of absolute values of the individual terms.
    pub magnitude: f64,
    /// Smallest absolute value of any denominator met on the way.
    pub min_denominator: f64,
}

pub(crate) const DENOMINATOR_FLOOR: f64 = 1e-300;

impl Canon {
    pub(crate) fn zero() -> Canon {
        Canon::default()
    }

    pub(crate) fn constant(c: BigRational) -> Canon {
        let mut out = Canon::zero();
        out.add_term(Mono::default(), c);
        out
    }

    pub(crate) fn one() -> Canon {
        Canon::constant(BigRational::one())
    }

    fn atom(atom: Atom, exp: i32) -> Canon {
        Canon::monomial(normalize(alloc::vec![(atom, exp)]), BigRational::one())
    }

    fn monomial(parts: (Mono, Canon), c: BigRational) -> Canon {
        let (mono, extra) = parts;
        let mut out = Canon::zero();
        out.add_term(mono, c);
        if extra.is_one() {
            out
        } else {
            out.mul(&extra)
        }
    }

    pub(crate) fn var(index: usize) -> Canon {
        Canon::atom(Atom::Var(index), 1)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub(crate) fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub(crate) fn len(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, mono: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &Canon, k: &BigRational) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * k);
        }
    }

    pub(crate) fn add(&self, other: &Canon) -> Canon {
        let mut out = self.clone();
        out.add_scaled(other, &BigRational::one());
        out
    }

    pub(crate) fn sub(&self, other: &Canon) -> Canon {
        let mut out = self.clone();
        out.add_scaled(other, &-BigRational::one());
        out
    }

    pub(crate) fn neg(&self) -> Canon {
        self.scale(&-BigRational::one())
    }

    pub(crate) fn scale(&self, k: &BigRational) -> Canon {
        if k.is_zero() {
            return Canon::zero();
        }
        Canon {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub(crate) fn mul(&self, other: &Canon) -> Canon {
        let mut out = Canon::zero();
        let mut extras: Vec<(Canon, Canon)> = Vec::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut parts = ma.0.clone();
                parts.extend(mb.0.iter().cloned());
                let (mono, extra) = normalize(parts);
                let c = ca * cb;
                if extra.is_one() {
                    out.add_term(mono, c);
                } else {
                    extras.push((Canon::monomial((mono, Canon::one()), c), extra));
                }
            }
        }
        for (a, b) in extras {
            out = out.add(&a.mul(&b));
        }
        out
    }

    pub(crate) fn pow(&self, k: i32) -> Canon {
        if k < 0 {
            return self.recip().pow(-k);
        }
        let mut base = self.clone();
        let mut out = Canon::one();
        let mut k = k as u32;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Multiplicative inverse. Single terms invert exactly; sums become a
    /// reciprocal atom of their monic primitive part.
    pub(crate) fn recip(&self) -> Canon {
        match self.terms.len() {
            0 => Canon::atom(Atom::Recip(Box::new(Canon::zero())), 1),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                invert_mono(m).scale(&c.recip())
            }
            _ => {
                let common = common_factor(self);
                let inv_common = invert_mono(&common);
                let primitive = self.mul(&inv_common);
                let (_, lc) = primitive.leading().expect("nonzero");
                let lc = lc.clone();
                let monic = primitive.scale(&lc.recip());
                inv_common
                    .mul(&Canon::atom(Atom::Recip(Box::new(monic)), 1))
                    .scale(&lc.recip())
            }
        }
    }

    pub(crate) fn div(&self, other: &Canon) -> Canon {
        if let Some(c) = other.as_constant() {
            if !c.is_zero() {
                return self.scale(&c.recip());
            }
        }
        if other.len() > 1 {
            if let Some(q) = div_exact(self, other) {
                return q;
            }
        }
        self.mul(&other.recip()).reduce()
    }

    pub(crate) fn sin(arg: Canon) -> Canon {
        let arg = arg.reduce();
        if arg.is_zero() {
            return Canon::zero();
        }
        if arg.leading().is_some_and(|(_, c)| c.is_negative()) {
            Canon::atom(Atom::Sin(Box::new(arg.neg())), 1).neg()
        } else {
            Canon::atom(Atom::Sin(Box::new(arg)), 1)
        }
    }

    pub(crate) fn cos(arg: Canon) -> Canon {
        let arg = arg.reduce();
        if arg.is_zero() {
            return Canon::one();
        }
        if arg.leading().is_some_and(|(_, c)| c.is_negative()) {
            Canon::atom(Atom::Cos(Box::new(arg.neg())), 1)
        } else {
            Canon::atom(Atom::Cos(Box::new(arg)), 1)
        }
    }

    pub(crate) fn exp(arg: Canon) -> Canon {
        let arg = arg.reduce();
        if arg.is_zero() {
            return Canon::one();
        }
        Canon::atom(Atom::Exp(Box::new(arg)), 1)
    }

    pub(crate) fn from_expr(e: &Expr) -> Canon {
        build(e).reduce()
    }

    /// Cancels reciprocal atoms against exact factors of their coefficients.
    pub(crate) fn reduce(self) -> Canon {
        let mut recips = BTreeSet::new();
        for m in self.terms.keys() {
            for (a, _) in &m.0 {
                if let Atom::Recip(d) = a {
                    if !d.is_zero() {
                        recips.insert((**d).clone());
                    }
                }
            }
        }
        let mut cur = self;
        for d in recips {
            cur = cancel(cur, &d);
        }
        cur
    }

    pub(crate) fn derivative(&self, v: usize) -> Canon {
        let mut out = Canon::zero();
        for (m, c) in &self.terms {
            for (idx, (atom, e)) in m.0.iter().enumerate() {
                let da = atom_derivative(atom, v);
                if da.is_zero() {
                    continue;
                }
                let mut parts = m.0.clone();
                if *e == 1 {
                    parts.remove(idx);
                } else {
                    parts[idx].1 = e - 1;
                }
                // Exp atoms carry exponent 1 and their derivative keeps the atom.
                let rest = Canon::monomial(normalize(parts), c * BigRational::from_integer(BigInt::from(*e)));
                out = out.add(&rest.mul(&da));
            }
        }
        out.reduce()
    }

    pub(crate) fn is_polynomial(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.0.iter().all(|(a, e)| matches!(a, Atom::Var(_)) && *e > 0))
    }

    pub(crate) fn max_var(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for m in self.terms.keys() {
            for (a, _) in &m.0 {
                let inner = match a {
                    Atom::Var(i) => Some(*i),
                    Atom::Exp(c) | Atom::Sin(c) | Atom::Cos(c) | Atom::Recip(c) => c.max_var(),
                };
                best = best.max(inner);
            }
        }
        best
    }

    pub(crate) fn evaluate(&self, point: &[f64]) -> Result<Evaluation, f64> {
        let mut ev = Evaluation {
            value: 0.0,
            magnitude: 0.0,
            min_denominator: f64::INFINITY,
        };
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (atom, e) in &m.0 {
                let base = match atom {
                    Atom::Var(i) => point[*i],
                    Atom::Exp(a) => Float::exp(a.evaluate_into(point, &mut ev)?),
                    Atom::Sin(a) => Float::sin(a.evaluate_into(point, &mut ev)?),
                    Atom::Cos(a) => Float::cos(a.evaluate_into(point, &mut ev)?),
                    Atom::Recip(d) => {
                        let v = d.evaluate_into(point, &mut ev)?;
                        ev.min_denominator = ev.min_denominator.min(v.abs());
                        if v.abs() < DENOMINATOR_FLOOR {
                            return Err(v);
                        }
                        1.0 / v
                    }
                };
                if *e < 0 {
                    ev.min_denominator = ev.min_denominator.min(base.abs());
                    if base.abs() < DENOMINATOR_FLOOR {
                        return Err(base);
                    }
                }
                t *= Float::powi(base, *e);
            }
            ev.value += t;
            ev.magnitude += t.abs();
        }
        Ok(ev)
    }

    fn evaluate_into(&self, point: &[f64], outer: &mut Evaluation) -> Result<f64, f64> {
        let inner = self.evaluate(point)?;
        outer.min_denominator = outer.min_denominator.min(inner.min_denominator);
        Ok(inner.value)
    }

    pub(crate) fn to_expr(&self) -> Expr {
        let mut parts: Vec<Expr> = self.terms.iter().map(|(m, c)| term_expr(m, c)).collect();
        match parts.len() {
            0 => Expr::Const(BigRational::zero()),
            1 => parts.pop().expect("one part"),
            _ => Expr::Sum(parts),
        }
    }
}

fn build(e: &Expr) -> Canon {
    match e {
        Expr::Const(c) => Canon::constant(c.clone()),
        Expr::Var(i) => Canon::var(*i),
        Expr::Sum(items) => items.iter().fold(Canon::zero(), |acc, x| acc.add(&build(x))),
        Expr::Prod(items) => items.iter().fold(Canon::one(), |acc, x| acc.mul(&build(x))),
        Expr::Neg(x) => build(x).neg(),
        Expr::Pow(b, k) if *k < 0 => build_recip(b).pow(-k),
        Expr::Pow(b, k) => build(b).pow(*k),
        Expr::Div(a, b) => match **b {
            Expr::Pow(..) | Expr::Prod(..) => build(a).mul(&build_recip(b)).reduce(),
            _ => build(a).div(&build(b).reduce()),
        },
        Expr::Sin(a) => Canon::sin(build(a)),
        Expr::Cos(a) => Canon::cos(build(a)),
        Expr::Exp(a) => Canon::exp(build(a)),
    }
}

// Reciprocal of a denominator, factor by factor, so that `1/(s^2)` and
// `(1/s)^2` share the atom of `s`.
fn build_recip(e: &Expr) -> Canon {
    match e {
        Expr::Pow(b, k) if *k > 0 => build_recip(b).pow(*k),
        Expr::Prod(items) => items.iter().fold(Canon::one(), |acc, x| acc.mul(&build_recip(x))),
        _ => build(e).reduce().recip(),
    }
}

/// Sorts and merges atom powers. Returns the monomial plus a cofactor that
/// arises when reciprocal atoms end up with negative exponents.
fn normalize(mut parts: Vec<(Atom, i32)>) -> (Mono, Canon) {
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(Atom, i32)> = Vec::with_capacity(parts.len());
    for (a, e) in parts {
        match merged.last_mut() {
            Some((last, le)) if *last == a => *le += e,
            _ => merged.push((a, e)),
        }
    }
    let mut exp_arg = Canon::zero();
    let mut has_exp = false;
    let mut extra = Canon::one();
    let mut out = Vec::with_capacity(merged.len());
    for (a, e) in merged {
        if e == 0 {
            continue;
        }
        match a {
            Atom::Exp(arg) => {
                has_exp = true;
                exp_arg.add_scaled(&arg, &BigRational::from_integer(BigInt::from(e)));
            }
            Atom::Recip(d) if e < 0 => extra = extra.mul(&d.pow(-e)),
            other => out.push((other, e)),
        }
    }
    if has_exp {
        let arg = exp_arg.reduce();
        if !arg.is_zero() {
            out.push((Atom::Exp(Box::new(arg)), 1));
            out.sort_by(|a, b| a.0.cmp(&b.0));
        }
    }
    (Mono(out), extra)
}

fn invert_mono(m: &Mono) -> Canon {
    let parts = m.0.iter().map(|(a, e)| (a.clone(), -e)).collect();
    Canon::monomial(normalize(parts), BigRational::one())
}

// Atom powers shared by every term, with the smallest exponent seen.
fn common_factor(c: &Canon) -> Mono {
    let mut iter = c.terms.keys();
    let Some(first) = iter.next() else {
        return Mono::default();
    };
    let mut common: Vec<(Atom, i32)> = first
        .0
        .iter()
        .filter(|(a, _)| !matches!(a, Atom::Exp(_)))
        .cloned()
        .collect();
    for m in iter {
        common.retain_mut(|(a, e)| match m.0.iter().find(|(b, _)| b == a) {
            Some((_, f)) => {
                *e = (*e).min(*f);
                true
            }
            None => false,
        });
    }
    common.retain(|(a, e)| *e != 0 && !(matches!(a, Atom::Recip(_)) && *e < 0));
    // Shared exp atoms cannot be factored by exponent, compare directly.
    if let Some((exp_atom, _)) = first.0.iter().find(|(a, _)| matches!(a, Atom::Exp(_))) {
        if c.terms.keys().all(|m| m.0.iter().any(|(a, _)| a == exp_atom)) {
            common.push((exp_atom.clone(), 1));
            common.sort_by(|a, b| a.0.cmp(&b.0));
        }
    }
    Mono(common)
}

fn atom_derivative(atom: &Atom, v: usize) -> Canon {
    match atom {
        Atom::Var(i) => {
            if *i == v {
                Canon::one()
            } else {
                Canon::zero()
            }
        }
        Atom::Exp(a) => {
            let da = a.derivative(v);
            if da.is_zero() {
                return da;
            }
            Canon::atom(Atom::Exp(a.clone()), 1).mul(&da)
        }
        Atom::Sin(a) => {
            let da = a.derivative(v);
            if da.is_zero() {
                return da;
            }
            Canon::atom(Atom::Cos(a.clone()), 1).mul(&da)
        }
        Atom::Cos(a) => {
            let da = a.derivative(v);
            if da.is_zero() {
                return da;
            }
            Canon::atom(Atom::Sin(a.clone()), 1).mul(&da).neg()
        }
        Atom::Recip(d) => {
            let dd = d.derivative(v);
            if dd.is_zero() {
                return dd;
            }
            Canon::atom(Atom::Recip(d.clone()), 2).mul(&dd).neg()
        }
    }
}

fn mono_div(a: &Mono, b: &Mono) -> Option<Mono> {
    let mut parts = a.0.clone();
    for (atom, e) in &b.0 {
        if let Atom::Recip(_) = atom {
            let pos = parts.iter().position(|(x, _)| x == atom)?;
            if parts[pos].1 < *e {
                return None;
            }
        }
        parts.push((atom.clone(), -e));
    }
    let (mono, extra) = normalize(parts);
    extra.is_one().then_some(mono)
}

/// Exact quotient `a / d` if the leading-term division leaves no remainder.
fn div_exact(a: &Canon, d: &Canon) -> Option<Canon> {
    let (lm_d, lc_d) = d.leading()?;
    let mut rem = a.clone();
    let mut q = Canon::zero();
    let limit = 4 * (a.len() + 1) * (d.len() + 1) + 64;
    for _ in 0..limit {
        let Some((lm, lc)) = rem.leading() else {
            return (q.mul(d) == *a).then_some(q);
        };
        let m = mono_div(lm, lm_d)?;
        let t = Canon::monomial((m, Canon::one()), lc / lc_d);
        rem = rem.sub(&t.mul(d));
        q = q.add(&t);
    }
    None
}

fn cancel(p: Canon, d: &Canon) -> Canon {
    let target = Atom::Recip(Box::new(d.clone()));
    let mut parts: BTreeMap<i32, Canon> = BTreeMap::new();
    for (m, c) in p.terms {
        let mut k = 0;
        let rest: Vec<(Atom, i32)> = m
            .0
            .into_iter()
            .filter(|(a, e)| {
                if *a == target {
                    k = *e;
                    false
                } else {
                    true
                }
            })
            .collect();
        parts.entry(k).or_default().add_term(Mono(rest), c);
    }
    let max_k = parts.keys().next_back().copied().unwrap_or(0);
    for k in (1..=max_k).rev() {
        let Some(pk) = parts.get(&k).filter(|c| !c.is_zero()) else {
            continue;
        };
        if let Some(q) = div_exact(pk, d) {
            parts.remove(&k);
            let lower = parts.entry(k - 1).or_default();
            *lower = lower.add(&q);
        }
    }
    let mut out = Canon::zero();
    for (k, c) in parts {
        if k == 0 {
            out = out.add(&c);
        } else {
            out = out.add(&c.mul(&Canon::atom(target.clone(), k)));
        }
    }
    out
}

fn atom_expr(a: &Atom) -> Expr {
    match a {
        Atom::Var(i) => Expr::Var(*i),
        Atom::Exp(c) => Expr::Exp(Box::new(c.to_expr())),
        Atom::Sin(c) => Expr::Sin(Box::new(c.to_expr())),
        Atom::Cos(c) => Expr::Cos(Box::new(c.to_expr())),
        Atom::Recip(c) => c.to_expr(),
    }
}

fn power(base: Expr, e: i32) -> Expr {
    if e == 1 {
        base
    } else {
        Expr::Pow(Box::new(base), e)
    }
}

fn term_expr(m: &Mono, c: &BigRational) -> Expr {
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (a, e) in &m.0 {
        match a {
            Atom::Recip(_) => den.push(power(atom_expr(a), *e)),
            _ if *e < 0 => den.push(power(atom_expr(a), -e)),
            _ => num.push(power(atom_expr(a), *e)),
        }
    }
    if m.0.is_empty() {
        return Expr::Const(c.clone());
    }
    let mag = c.abs();
    let mut factors = Vec::with_capacity(num.len() + 1);
    if !mag.is_one() {
        factors.push(Expr::Const(mag));
    }
    factors.extend(num);
    let numerator = match factors.len() {
        0 => Expr::Const(BigRational::one()),
        1 => factors.pop().expect("one factor"),
        _ => Expr::Prod(factors),
    };
    let body = match den.len() {
        0 => numerator,
        1 => Expr::Div(Box::new(numerator), Box::new(den.pop().expect("one factor"))),
        _ => Expr::Div(Box::new(numerator), Box::new(Expr::Prod(den))),
    };
    if c.is_negative() {
        Expr::Neg(Box::new(body))
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn cancellation_and_identity() {
        let x = Canon::var(0);
        let y = Canon::var(1);
        let s = x.add(&y);
        assert!(s.mul(&s.recip()).reduce().sub(&Canon::one()).is_zero());
        assert!(x.mul(&x.recip()).sub(&Canon::one()).is_zero());
        let sq = s.mul(&s);
        assert_eq!(sq.div(&s), s);
    }

    #[test]
    fn exp_atoms_merge() {
        let t = Canon::var(0);
        let a = Canon::exp(t.clone()).mul(&Canon::exp(t.neg()));
        assert_eq!(a, Canon::one());
        let b = Canon::exp(t.clone()).pow(2);
        assert_eq!(b, Canon::exp(t.scale(&q(2))));
    }

    #[test]
    fn trig_sign_normalization() {
        let x = Canon::var(0);
        assert!(Canon::sin(x.neg()).add(&Canon::sin(x.clone())).is_zero());
        assert_eq!(Canon::cos(x.neg()), Canon::cos(x));
    }

    #[test]
    fn monomial_order_is_multiplicative() {
        let a = Mono(alloc::vec![(Atom::Var(0), 2)]);
        let b = Mono(alloc::vec![(Atom::Var(0), 1), (Atom::Var(1), 1)]);
        let c = Mono(alloc::vec![(Atom::Var(1), 3)]);
        let ab = a.cmp(&b);
        let (ac, _) = normalize([a.0.clone(), c.0.clone()].concat());
        let (bc, _) = normalize([b.0.clone(), c.0.clone()].concat());
        assert_eq!(ac.cmp(&bc), ab);
    }
}
