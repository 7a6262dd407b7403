//! Skew multivector fields and differential forms on a chart.
//!
//! A degree-`k` field is a sparse map from strictly increasing `k`-tuples of
//! coordinate indices to coefficients. Sign conventions:
//!
//! * `wedge` uses the shuffle sign of the merged index tuples.
//! * `schouten` is the odd-coordinate bracket
//!   `[P,Q] = sum_i dP/dθ_i ∧ ∂_i Q - (-1)^{(p-1)(q-1)} dQ/dθ_i ∧ ∂_i P`
//!   with right derivatives in the odd symbols. On vector fields it is the
//!   Lie bracket, `[X, f] = X[f]`, and `[X∧Y, X∧Y] = 2 [X,Y]∧X∧Y`.
//! * `contract(∂_I, dx_J)` moves `dx_I` to the front of `dx_J` and drops it,
//!   so `contract(∂x∧∂y, dx∧dy∧dz) = dz`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::marker::PhantomData;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::expr::Canon;
use crate::zero::{canon_is_zero, SampleConfig, ZeroVerdict};
use crate::{Chart, Error, Expr, Result};

/// Marker for contravariant (multivector) fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Contra;
/// Marker for covariant fields (differential forms).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Co;

#[derive(Clone, Debug, PartialEq)]
pub struct Skew<V> {
    chart: Chart,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Expr>,
    variance: PhantomData<V>,
}

pub type MultiVectorField = Skew<Contra>;
pub type DiffForm = Skew<Co>;

type CanonMap = BTreeMap<Vec<usize>, Canon>;

/// Sorts `indices`, returning the permutation sign, or `None` on a repeat.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

// Sign of the shuffle that merges sorted disjoint I and J.
fn shuffle_sign(i: &[usize], j: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut inversions = 0usize;
    for a in i {
        for b in j {
            if a == b {
                return None;
            }
            if a > b {
                inversions += 1;
            }
        }
    }
    let mut merged: Vec<usize> = i.iter().chain(j).copied().collect();
    merged.sort_unstable();
    Some((merged, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

fn signed(c: &Canon, sign: i32) -> Canon {
    if sign < 0 {
        c.neg()
    } else {
        c.clone()
    }
}

fn accumulate(map: &mut CanonMap, key: Vec<usize>, c: Canon) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(key).or_default();
    *slot = slot.add(&c);
}

impl<V> Skew<V> {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        Skew { chart: chart.clone(), degree, coeffs: BTreeMap::new(), variance: PhantomData }
    }

    pub fn scalar(chart: &Chart, f: Expr) -> Self {
        let mut out = Skew::zero(chart, 0);
        if !f.is_canonically_zero() {
            out.coeffs.insert(Vec::new(), f);
        }
        out
    }

    /// Builds a field from `(indices, coefficient)` pairs. Indices may come in
    /// any order (the permutation sign is applied); repeated pairs add up.
    pub fn from_components<I>(chart: &Chart, degree: usize, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Expr)>,
    {
        let mut acc: BTreeMap<Vec<usize>, Expr> = BTreeMap::new();
        for (idx, e) in components {
            let bad = || Error::InvalidComponent { indices: idx.clone(), degree, dim: chart.dim() };
            if idx.len() != degree || idx.iter().any(|i| *i >= chart.dim()) {
                return Err(bad());
            }
            let (key, sign) = sort_with_sign(&idx).ok_or_else(bad)?;
            let e = if sign < 0 { -e } else { e };
            let merged = match acc.remove(&key) {
                Some(prev) => prev + e,
                None => e,
            };
            acc.insert(key, merged);
        }
        acc.retain(|_, e| !e.is_canonically_zero());
        Ok(Skew { chart: chart.clone(), degree, coeffs: acc, variance: PhantomData })
    }

    /// The coordinate element on `indices` (sorted with sign).
    pub fn basis(chart: &Chart, indices: &[usize]) -> Result<Self> {
        Skew::from_components(chart, indices.len(), [(indices.to_vec(), Expr::one())])
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, indices: &[usize]) -> Expr {
        match sort_with_sign(indices) {
            Some((key, sign)) => match self.coeffs.get(&key) {
                Some(e) if sign < 0 => -e,
                Some(e) => e.clone(),
                None => Expr::zero(),
            },
            None => Expr::zero(),
        }
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Expr)> {
        self.coeffs.iter()
    }

    /// No stored coefficients. Numeric zeros are not detected here.
    pub fn is_exactly_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn canon_map(&self) -> CanonMap {
        self.coeffs.iter().map(|(k, e)| (k.clone(), Canon::from_expr(e))).collect()
    }

    fn from_canon_map(chart: &Chart, degree: usize, map: CanonMap) -> Self {
        let coeffs = map
            .into_iter()
            .filter_map(|(k, c)| {
                let c = c.reduce();
                (!c.is_zero()).then(|| (k, c.to_expr()))
            })
            .collect();
        Skew { chart: chart.clone(), degree, coeffs, variance: PhantomData }
    }

    fn same_chart(&self, other: &Chart) -> Result<()> {
        if &self.chart == other {
            Ok(())
        } else {
            Err(Error::ChartMismatch)
        }
    }

    /// Canonical coefficients with exact zeros removed.
    pub fn simplify(&self) -> Self {
        Skew::from_canon_map(&self.chart, self.degree, self.canon_map())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_chart(&other.chart)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!("{} + {}", self.degree, other.degree)));
        }
        let mut map = self.canon_map();
        for (k, c) in other.canon_map() {
            accumulate(&mut map, k, c);
        }
        Ok(Skew::from_canon_map(&self.chart, self.degree, map))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|e| -e)
    }

    /// Multiplies every coefficient by `f`.
    pub fn scale(&self, f: &Expr) -> Self {
        let f = Canon::from_expr(f);
        let map = self.canon_map().into_iter().map(|(k, c)| (k, c.mul(&f))).collect();
        Skew::from_canon_map(&self.chart, self.degree, map)
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        let map = self.canon_map().into_iter().map(|(k, c)| (k, c.scale(q))).collect();
        Skew::from_canon_map(&self.chart, self.degree, map)
    }

    /// Applies `f` to each coefficient without simplifying the result.
    pub fn map_coefficients(&self, f: impl Fn(&Expr) -> Expr) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, e)| (k.clone(), f(e)))
            .filter(|(_, e)| !e.is_canonically_zero())
            .collect();
        Skew { chart: self.chart.clone(), degree: self.degree, coeffs, variance: PhantomData }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.same_chart(&other.chart)?;
        let a = self.canon_map();
        let b = other.canon_map();
        let mut map = CanonMap::new();
        for (i, ca) in &a {
            for (j, cb) in &b {
                if let Some((key, sign)) = shuffle_sign(i, j) {
                    accumulate(&mut map, key, signed(&ca.mul(cb), sign));
                }
            }
        }
        Ok(Skew::from_canon_map(&self.chart, self.degree + other.degree, map))
    }

    /// Position-wise zero verdict over all coefficients.
    pub fn zero_verdict(&self, cfg: &SampleConfig) -> ZeroVerdict {
        self.coeffs.values().fold(ZeroVerdict::ProvedZero, |acc, e| {
            if !acc.is_zero() {
                return acc;
            }
            acc.join(canon_is_zero(&Canon::from_expr(e), self.dim(), cfg))
        })
    }

    /// Moves the field to `chart`, sending coordinate `i` to `index_map[i]`.
    /// Coefficients are re-expressed through the same index map.
    pub fn embed(&self, chart: &Chart, index_map: &[usize]) -> Result<Self> {
        let comps = self.coeffs.iter().map(|(k, e)| {
            let key: Vec<usize> = k.iter().map(|i| index_map[*i]).collect();
            (key, e.map_vars(&|i| index_map[i]))
        });
        Skew::from_components(chart, self.degree, comps)
    }

    /// Substitutes `values` (expressions on `chart`) for the coordinates in
    /// every coefficient, keeping the index tuples. Used for restrictions.
    pub fn substitute_coefficients(&self, chart: &Chart, values: &[Expr]) -> Self {
        let map = self
            .coeffs
            .iter()
            .map(|(k, e)| (k.clone(), Canon::from_expr(&e.substitute(values))))
            .collect();
        Skew::from_canon_map(chart, self.degree, map)
    }

    /// Top-degree coefficient, the `P` in `field = P · e_1 ∧ … ∧ e_dim`.
    pub fn top_coefficient(&self) -> Expr {
        let key: Vec<usize> = (0..self.dim()).collect();
        self.coefficient(&key)
    }
}

impl<V> fmt::Display for Skew<V> {
    /// One `(coords) = coefficient` line per stored component.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in &self.coeffs {
            f.write_str("(")?;
            for (n, i) in k.iter().enumerate() {
                if n > 0 {
                    f.write_str(" ")?;
                }
                f.write_str(self.chart.name(*i))?;
            }
            writeln!(f, ") = {}", e.display(&self.chart))?;
        }
        Ok(())
    }
}

// Right derivative in the odd symbol θ_i of θ_key.
fn odd_derivative(key: &[usize], i: usize) -> Option<(Vec<usize>, i32)> {
    let pos = key.iter().position(|k| *k == i)?;
    let mut rest = key.to_vec();
    rest.remove(pos);
    let sign = if (key.len() - 1 - pos).is_multiple_of(2) { 1 } else { -1 };
    Some((rest, sign))
}

fn odd_half(a: &CanonMap, b: &CanonMap, dim: usize, out: &mut CanonMap, factor: i32) {
    for i in 0..dim {
        let mut db = CanonMap::new();
        for (k, c) in b {
            let d = c.derivative(i);
            if !d.is_zero() {
                db.insert(k.clone(), d);
            }
        }
        if db.is_empty() {
            continue;
        }
        for (ka, ca) in a {
            let Some((ra, sa)) = odd_derivative(ka, i) else { continue };
            for (kb, cb) in &db {
                if let Some((key, sw)) = shuffle_sign(&ra, kb) {
                    accumulate(out, key, signed(&ca.mul(cb), sa * sw * factor));
                }
            }
        }
    }
}

impl MultiVectorField {
    pub fn vector(chart: &Chart, components: Vec<Expr>) -> Result<Self> {
        if components.len() != chart.dim() {
            return Err(Error::DegreeMismatch(format!(
                "{} components for a {}-dimensional chart",
                components.len(),
                chart.dim()
            )));
        }
        Skew::from_components(chart, 1, components.into_iter().enumerate().map(|(i, e)| (alloc::vec![i], e)))
    }

    /// Coordinate vector field `∂/∂x_i`.
    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        Skew::basis(chart, &[i]).expect("valid coordinate")
    }

    /// Componentwise `X[f]` for a vector field.
    pub fn apply(&self, f: &Expr) -> Result<Expr> {
        if self.degree != 1 {
            return Err(Error::DegreeMismatch(format!("apply needs a vector field, got degree {}", self.degree)));
        }
        let f = Canon::from_expr(f);
        let mut acc = Canon::zero();
        for (k, c) in self.canon_map() {
            acc = acc.add(&c.mul(&f.derivative(k[0])));
        }
        Ok(acc.reduce().to_expr())
    }

    pub fn schouten(&self, other: &Self) -> Result<Self> {
        self.same_chart(&other.chart)?;
        let (p, q) = (self.degree, other.degree);
        if p + q == 0 {
            return Ok(Skew::zero(&self.chart, 0));
        }
        let a = self.canon_map();
        let b = other.canon_map();
        let mut map = CanonMap::new();
        odd_half(&a, &b, self.dim(), &mut map, 1);
        let parity = ((p as i64 - 1) * (q as i64 - 1)).rem_euclid(2);
        let eps = if parity == 0 { 1 } else { -1 };
        odd_half(&b, &a, self.dim(), &mut map, -eps);
        Ok(Skew::from_canon_map(&self.chart, p + q - 1, map))
    }

    /// `L_X P = [X, P]`.
    pub fn lie_derivative(x: &Self, p: &Self) -> Result<Self> {
        if x.degree != 1 {
            return Err(Error::DegreeMismatch(format!("Lie derivative along a degree-{} field", x.degree)));
        }
        x.schouten(p)
    }

    /// Interior product `i_P ω`.
    pub fn contract(&self, form: &DiffForm) -> Result<DiffForm> {
        self.same_chart(&form.chart)?;
        if form.degree < self.degree {
            return Err(Error::DegreeMismatch(format!(
                "cannot contract a degree-{} field into a {}-form",
                self.degree, form.degree
            )));
        }
        let a = self.canon_map();
        let b = form.canon_map();
        let mut map = CanonMap::new();
        for (i, ca) in &a {
            for (j, cb) in &b {
                if let Some((rest, sign)) = extract_front(i, j) {
                    accumulate(&mut map, rest, signed(&ca.mul(cb), sign));
                }
            }
        }
        Ok(Skew::from_canon_map(&self.chart, form.degree - self.degree, map))
    }

    /// Coordinate divergence `(dv P)^J = (1/ρ) Σ_i ∂_i(ρ P^{iJ})` for
    /// `vol = ρ dx_1∧…∧dx_n`. In terms of contraction this is
    /// `i_{dv P} vol = (-1)^(k+1) d(i_P vol)` for `P` of degree `k`.
    pub fn divergence(&self, vol: &VolumeForm) -> Result<Self> {
        self.same_chart(&vol.form.chart)?;
        if self.degree == 0 {
            return Err(Error::DegreeMismatch("divergence of a function".into()));
        }
        let n = self.dim();
        let degree_sign = if self.degree % 2 == 1 { 1 } else { -1 };
        let rho = self.contract(&vol.form)?.exterior_derivative()?;
        let rho = rho.canon_map();
        let v = Canon::from_expr(&vol.density());
        let inv_v = v.recip();
        let mut map = CanonMap::new();
        for (complement, c) in rho {
            let l: Vec<usize> = (0..n).filter(|i| !complement.contains(i)).collect();
            let full: Vec<usize> = (0..n).collect();
            let (_, sign) = extract_front(&l, &full).expect("subset");
            accumulate(&mut map, l, signed(&c.mul(&inv_v), sign * degree_sign));
        }
        Ok(Skew::from_canon_map(&self.chart, self.degree - 1, map))
    }

    /// `n`-fold wedge power; the zeroth power is the constant function 1.
    pub fn power(&self, n: usize) -> Result<Self> {
        let mut acc = Skew::scalar(&self.chart, Expr::one());
        for _ in 0..n {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }
}

/// Multivector power `π^n`.
pub fn mv_power(pi: &MultiVectorField, n: usize) -> Result<MultiVectorField> {
    pi.power(n)
}

// Removes sorted `i` from sorted `j` after moving it to the front.
fn extract_front(i: &[usize], j: &[usize]) -> Option<(Vec<usize>, i32)> {
    if !i.iter().all(|a| j.contains(a)) {
        return None;
    }
    let rest: Vec<usize> = j.iter().copied().filter(|b| !i.contains(b)).collect();
    let inversions: usize = i.iter().map(|a| rest.iter().filter(|b| *b < a).count()).sum();
    Some((rest, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

impl DiffForm {
    pub fn one_form(chart: &Chart, components: Vec<Expr>) -> Result<Self> {
        if components.len() != chart.dim() {
            return Err(Error::DegreeMismatch(format!(
                "{} components for a {}-dimensional chart",
                components.len(),
                chart.dim()
            )));
        }
        Skew::from_components(chart, 1, components.into_iter().enumerate().map(|(i, e)| (alloc::vec![i], e)))
    }

    pub fn exterior_derivative(&self) -> Result<Self> {
        let mut map = CanonMap::new();
        for (k, c) in self.canon_map() {
            for i in 0..self.dim() {
                if k.contains(&i) {
                    continue;
                }
                let d = c.derivative(i);
                if d.is_zero() {
                    continue;
                }
                let below = k.iter().filter(|j| **j < i).count();
                let mut key = k.clone();
                key.push(i);
                key.sort_unstable();
                accumulate(&mut map, key, signed(&d, if below % 2 == 0 { 1 } else { -1 }));
            }
        }
        Ok(Skew::from_canon_map(&self.chart, self.degree + 1, map))
    }

    /// Cartan formula `L_X ω = d i_X ω + i_X dω`.
    pub fn lie_derivative(x: &MultiVectorField, form: &Self) -> Result<Self> {
        if x.degree() != 1 {
            return Err(Error::DegreeMismatch(format!("Lie derivative along a degree-{} field", x.degree())));
        }
        if form.degree == 0 {
            let f = form.coefficient(&[]);
            return Ok(Skew::scalar(&form.chart, x.apply(&f)?));
        }
        let a = x.contract(form)?.exterior_derivative()?;
        let b = x.contract(&form.exterior_derivative()?)?;
        a.add(&b)
    }
}

/// Top-degree form with a coefficient that is not identically zero.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeForm {
    form: DiffForm,
}

impl VolumeForm {
    pub fn new(form: DiffForm, cfg: &SampleConfig) -> Result<Self> {
        if form.degree() != form.dim() {
            return Err(Error::DegreeMismatch(format!(
                "volume forms have degree {}, got {}",
                form.dim(),
                form.degree()
            )));
        }
        if form.zero_verdict(cfg).is_zero() {
            return Err(Error::DegenerateVolume);
        }
        Ok(VolumeForm { form })
    }

    /// `dx_1 ∧ … ∧ dx_n`.
    pub fn standard(chart: &Chart) -> Self {
        let key: Vec<usize> = (0..chart.dim()).collect();
        VolumeForm { form: Skew::basis(chart, &key).expect("full index set") }
    }

    pub fn form(&self) -> &DiffForm {
        &self.form
    }

    pub fn density(&self) -> Expr {
        self.form.top_coefficient()
    }
}

/// Exact rational constant `q` as a scalar field.
pub fn constant_field(chart: &Chart, q: BigRational) -> MultiVectorField {
    if q.is_zero() {
        Skew::zero(chart, 0)
    } else if q.is_one() {
        Skew::scalar(chart, Expr::one())
    } else {
        Skew::scalar(chart, Expr::Const(q))
    }
}
