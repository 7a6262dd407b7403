//! Jacobi, contact and homogeneous Poisson structures and the constructions
//! relating them.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::expr::Canon;
use crate::linalg;
use crate::multivector::{DiffForm, MultiVectorField};
use crate::report::{LocusFinding, StructureReport, CITE_EULER, CITE_PROPER, CITE_SEMI_CONNECTED};
use crate::zero::{admissible_points, canon_is_zero, is_zero, SampleConfig, Sampler, ZeroVerdict};
use crate::{Chart, Error, Expr, Polynomial, Result};

/// Candidate Jacobi pair `(π, E)`. Construction checks shapes only.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiStructure {
    pub pi: MultiVectorField,
    pub e: MultiVectorField,
}

impl JacobiStructure {
    pub fn new(pi: MultiVectorField, e: MultiVectorField) -> Result<Self> {
        if pi.chart() != e.chart() {
            return Err(Error::ChartMismatch);
        }
        if pi.degree() != 2 || e.degree() != 1 {
            return Err(Error::DegreeMismatch(format!(
                "expected a bivector and a vector field, got degrees {} and {}",
                pi.degree(),
                e.degree()
            )));
        }
        Ok(JacobiStructure { pi, e })
    }

    pub fn chart(&self) -> &Chart {
        self.pi.chart()
    }

    pub fn simplify(&self) -> Self {
        JacobiStructure { pi: self.pi.simplify(), e: self.e.simplify() }
    }
}

/// Poisson bivector with a homothety field and its measured constant.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousPoisson {
    pub pi: MultiVectorField,
    pub z: MultiVectorField,
    /// The `c` in `L_Z π = c π`.
    pub homogeneity_constant: BigRational,
    /// Completeness of `Z` is recorded, never checked.
    pub complete_asserted: bool,
}

impl HomogeneousPoisson {
    pub fn chart(&self) -> &Chart {
        self.pi.chart()
    }
}

/// A 1-form on an odd-dimensional chart with `α ∧ (dα)^n` nonvanishing at
/// every sample point.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactForm {
    alpha: DiffForm,
}

impl ContactForm {
    pub fn new(alpha: DiffForm, cfg: &SampleConfig) -> Result<Self> {
        let dim = alpha.dim();
        if dim.is_multiple_of(2) {
            return Err(Error::EvenDimension(dim));
        }
        if alpha.degree() != 1 {
            return Err(Error::DegreeMismatch(format!("contact forms have degree 1, got {}", alpha.degree())));
        }
        let volume = contact_volume(&alpha)?;
        let c = Canon::from_expr(&volume);
        if c.is_zero() {
            let point = Sampler::new(dim, cfg).next_point();
            return Err(Error::NotContact { point });
        }
        for pt in admissible_points(&c, dim, cfg) {
            let v = c.evaluate(&pt).map(|ev| ev.value).unwrap_or(0.0);
            if v.abs() <= cfg.tol {
                return Err(Error::NotContact { point: pt });
            }
        }
        Ok(ContactForm { alpha })
    }

    pub fn alpha(&self) -> &DiffForm {
        &self.alpha
    }

    pub fn chart(&self) -> &Chart {
        self.alpha.chart()
    }
}

/// Top coefficient of `α ∧ (dα)^n`.
pub fn contact_volume(alpha: &DiffForm) -> Result<Expr> {
    let n = alpha.dim() / 2;
    let d = alpha.exterior_derivative()?;
    let mut acc = alpha.clone();
    for _ in 0..n {
        acc = acc.wedge(&d)?;
    }
    Ok(acc.top_coefficient())
}

/// Verdicts for `[π,π] - 2 E∧π` and `[E,π]`.
pub fn check_jacobi(j: &JacobiStructure, cfg: &SampleConfig) -> Result<StructureReport> {
    let mut report = StructureReport::new();
    let pipi = j.pi.schouten(&j.pi)?;
    let two_e_pi = j.e.wedge(&j.pi)?.scale_rational(&BigRational::from_integer(BigInt::from(2)));
    report.check("jacobi.pi_pi", pipi.sub(&two_e_pi)?.zero_verdict(cfg));
    report.check("jacobi.e_pi", j.e.schouten(&j.pi)?.zero_verdict(cfg));
    Ok(report)
}

/// Components `(π^{xy}, π^{xz}, π^{yz})` of
/// `π = f_z ∂x∧∂y + f_y ∂z∧∂x + f_x ∂y∧∂z`.
fn dim3_components(f: &[Expr; 3]) -> [Expr; 3] {
    [f[2].clone(), -&f[1], f[0].clone()]
}

/// Structure on a three-dimensional chart from `f = (f_x, f_y, f_z)` and
/// `g = (g_x, g_y, g_z)`.
pub fn dim3_structure(chart: &Chart, f: &[Expr; 3], g: &[Expr; 3]) -> Result<JacobiStructure> {
    if chart.dim() != 3 {
        return Err(Error::UnsupportedDimension(chart.dim()));
    }
    let [pxy, pxz, pyz] = dim3_components(f);
    let pi = MultiVectorField::from_components(chart, 2, [(vec![0, 1], pxy), (vec![0, 2], pxz), (vec![1, 2], pyz)])?;
    let e = MultiVectorField::vector(chart, g.to_vec())?;
    JacobiStructure::new(pi, e)
}

fn d(e: &Expr, v: usize) -> Expr {
    e.derivative(v)
}

/// The scalar condition equivalent to `[π,π] = 2E∧π` on a three-dimensional
/// chart, in the coefficients of [`dim3_structure`].
pub fn dim3_condition(f: &[Expr; 3], g: &[Expr; 3]) -> Expr {
    let [fx, fy, fz] = f;
    let [gx, gy, gz] = g;
    fx * &(d(fy, 2) - d(fz, 1) - gx) + fy * &(d(fz, 0) - d(fx, 2) - gy) + fz * &(d(fx, 1) - d(fy, 0) - gz)
}

/// The three components of `[E,π] = L_E π`, ordered `xy`, `xz`, `yz`.
pub fn dim3_lie_relations(f: &[Expr; 3], g: &[Expr; 3]) -> [Expr; 3] {
    let p = dim3_components(f);
    let comp = |i: usize, j: usize| -> Expr {
        match (i, j) {
            _ if i == j => Expr::zero(),
            (0, 1) => p[0].clone(),
            (0, 2) => p[1].clone(),
            (1, 2) => p[2].clone(),
            _ => -comp_sorted(&p, j, i),
        }
    };
    let pairs = [(0, 1), (0, 2), (1, 2)];
    pairs.map(|(i, j)| {
        let pij = comp(i, j);
        let mut acc = (0..3).fold(Expr::zero(), |acc, k| acc + &g[k] * &d(&pij, k));
        for k in 0..3 {
            acc = acc - comp(k, j) * d(&g[i], k) - comp(i, k) * d(&g[j], k);
        }
        acc
    })
}

fn comp_sorted(p: &[Expr; 3], i: usize, j: usize) -> Expr {
    match (i, j) {
        (0, 1) => p[0].clone(),
        (0, 2) => p[1].clone(),
        (1, 2) => p[2].clone(),
        _ => Expr::zero(),
    }
}

/// The second group of scalar relations exactly as they are usually
/// printed. Kept for comparison; see [`dim3_lie_relations`] for the form
/// that matches `[E,π] = 0`.
pub fn dim3_printed_relations(f: &[Expr; 3], g: &[Expr; 3]) -> [Expr; 3] {
    let [fx, fy, fz] = f;
    let [gx, gy, gz] = g;
    let transport = |h: &Expr| g[0].clone() * d(h, 0) + g[1].clone() * d(h, 1) + g[2].clone() * d(h, 2);
    [
        fz * &(d(gx, 0) + d(gy, 1)) - fy * &d(gy, 2) - fx * &d(gx, 2) + transport(fz),
        fx * &(d(gz, 2) + d(gy, 1)) - fz * &d(gz, 0) - fy * &d(gy, 0) + transport(fx),
        fy * &(d(gx, 0) + d(gz, 2)) - fz * &d(gz, 1) - fx * &d(gx, 1) + transport(fy),
    ]
}

/// Scalar form of the Jacobi conditions on a three-dimensional chart.
pub fn check_jacobi_dim3(chart: &Chart, f: &[Expr; 3], g: &[Expr; 3], cfg: &SampleConfig) -> Result<StructureReport> {
    if chart.dim() != 3 {
        return Err(Error::UnsupportedDimension(chart.dim()));
    }
    let mut report = StructureReport::new();
    report.check("dim3.condition", is_zero(&dim3_condition(f, g), chart, cfg));
    let labels = ["dim3.lie.xy", "dim3.lie.xz", "dim3.lie.yz"];
    for (label, rel) in labels.iter().zip(dim3_lie_relations(f, g)) {
        report.check(*label, is_zero(&rel, chart, cfg));
    }
    Ok(report)
}

/// `P` with `E ∧ π^n = P ∂_1 ∧ … ∧ ∂_{2n+1}`.
pub fn contact_defect(j: &JacobiStructure) -> Result<Expr> {
    let dim = j.chart().dim();
    if dim.is_multiple_of(2) {
        return Err(Error::EvenDimension(dim));
    }
    let top = j.e.wedge(&j.pi.power(dim / 2)?)?;
    Ok(top.top_coefficient())
}

/// Smallest `|P|` over the admissible sample points, with the point.
pub fn defect_minimum(p: &Expr, dim: usize, cfg: &SampleConfig) -> (f64, Vec<f64>, usize) {
    let c = Canon::from_expr(p);
    let pts = admissible_points(&c, dim, cfg);
    let mut best = (f64::INFINITY, Vec::new());
    for pt in &pts {
        let v = c.evaluate(pt).map(|ev| ev.value.abs()).unwrap_or(0.0);
        if v < best.0 {
            best = (v, pt.clone());
        }
    }
    (best.0, best.1, pts.len())
}

const WITNESS_DEFECT: f64 = 1e-10;
const WITNESS_GRADIENT: f64 = 1e-6;
const GRID: usize = 64;
const FD_STEP: f64 = 1e-5;

fn grid_rational(rng: &mut impl Rng, half_width: f64) -> BigRational {
    let bound = (half_width * 1024.0).floor() as i64;
    let k = rng.gen_range(-bound..=bound);
    BigRational::new(BigInt::from(k), BigInt::from(1024))
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn fd_gradient(f: &dyn Fn(&[f64]) -> f64, x: &[f64]) -> f64 {
    let mut sq = 0.0;
    let mut y = x.to_vec();
    for i in 0..x.len() {
        y[i] = x[i] + FD_STEP;
        let up = f(&y);
        y[i] = x[i] - FD_STEP;
        let down = f(&y);
        y[i] = x[i];
        let g = (up - down) / (2.0 * FD_STEP);
        sq += g * g;
    }
    Float::sqrt(sq)
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Searches for a codimension-1 zero set of the contact defect along random
/// segments in the sampling box.
///
/// For polynomial defects the probe restricts `P` exactly to the segment and
/// works with the square-free part of that univariate polynomial, so zeros of
/// even multiplicity (as in `P = -f^2`) are still found as sign changes.
/// Other defects are sampled directly.
pub fn singular_locus_report(j: &JacobiStructure, cfg: &SampleConfig) -> Result<StructureReport> {
    let p = contact_defect(j)?;
    let dim = j.chart().dim();
    let mut report = StructureReport::new();
    report.value("contact_defect", p.simplify().display(j.chart()));
    let canon = Canon::from_expr(&p);
    if canon.is_zero() {
        report.locus.push(LocusFinding::IdenticallyZero);
        return Ok(report);
    }
    let poly = p.to_polynomial(dim).ok();
    let mut sampler = Sampler::new(dim, cfg);
    let mut min_abs = (f64::INFINITY, Vec::new());
    let eval = |x: &[f64]| canon.evaluate(x).map(|ev| ev.value).unwrap_or(f64::NAN);
    for _ in 0..cfg.samples {
        let a: Vec<BigRational> = (0..dim).map(|_| grid_rational(sampler.rng(), cfg.half_width)).collect();
        let b: Vec<BigRational> = (0..dim).map(|_| grid_rational(sampler.rng(), cfg.half_width)).collect();
        let af: Vec<f64> = a.iter().map(to_f64).collect();
        let bf: Vec<f64> = b.iter().map(to_f64).collect();
        let length = Float::sqrt(af.iter().zip(&bf).map(|(x, y)| (y - x) * (y - x)).sum::<f64>());
        if length == 0.0 {
            continue;
        }
        let at = |s: f64| -> Vec<f64> { af.iter().zip(&bf).map(|(x, y)| x + s * (y - x)).collect() };
        for k in 0..=GRID {
            let x = at(k as f64 / GRID as f64);
            let v = eval(&x).abs();
            if v < min_abs.0 {
                min_abs = (v, x);
            }
        }
        let found = match &poly {
            Some(poly) => probe_polynomial(poly, &a, &b, length),
            None => probe_sampled(&eval, length, &at),
        };
        if let Some((s, reduced)) = found {
            let x = at(s);
            let defect = eval(&x).abs();
            if defect <= WITNESS_DEFECT && reduced > WITNESS_GRADIENT {
                let gradient = fd_gradient(&eval, &x);
                report.locus.push(LocusFinding::Codim1Witness { point: x, defect, gradient, reduced_gradient: reduced });
                report.cite(CITE_PROPER);
                report.cite(CITE_SEMI_CONNECTED);
                return Ok(report);
            }
        }
    }
    report.locus.push(LocusFinding::NoSignChange { probes: cfg.samples, min_abs: min_abs.0, at: min_abs.1 });
    Ok(report)
}

// Root parameter and decision gradient on one segment, polynomial case.
fn probe_polynomial(
    poly: &Polynomial,
    a: &[BigRational],
    b: &[BigRational],
    length: f64,
) -> Option<(f64, f64)> {
    let q = poly.restrict_to_segment(a, b);
    if q.is_zero() || q.degree() == Some(0) {
        return None;
    }
    let r = q.square_free_part();
    let grid: Vec<BigRational> =
        (0..=GRID).map(|k| BigRational::new(BigInt::from(k), BigInt::from(GRID))).collect();
    let signs: Vec<BigRational> = grid.iter().map(|s| r.evaluate_exact(s)).collect();
    let rf = |s: f64| r.evaluate(s);
    for k in 0..GRID {
        let s = if signs[k].is_zero() {
            to_f64(&grid[k])
        } else if signs[k].is_positive() != signs[k + 1].is_positive() && !signs[k + 1].is_zero() {
            bisect(&rf, to_f64(&grid[k]), to_f64(&grid[k + 1]))
        } else {
            continue;
        };
        let slope = (rf(s + FD_STEP) - rf(s - FD_STEP)) / (2.0 * FD_STEP);
        return Some((s, slope.abs() / length));
    }
    None
}

fn probe_sampled(eval: &dyn Fn(&[f64]) -> f64, length: f64, at: &dyn Fn(f64) -> Vec<f64>) -> Option<(f64, f64)> {
    let values: Vec<f64> = (0..=GRID).map(|k| eval(&at(k as f64 / GRID as f64))).collect();
    let f = |s: f64| eval(&at(s));
    for k in 0..GRID {
        let (v0, v1) = (values[k], values[k + 1]);
        if !v0.is_finite() || !v1.is_finite() {
            continue;
        }
        let s = if v0 == 0.0 {
            k as f64 / GRID as f64
        } else if (v0 < 0.0) != (v1 < 0.0) && v1 != 0.0 {
            bisect(&f, k as f64 / GRID as f64, (k + 1) as f64 / GRID as f64)
        } else {
            continue;
        };
        let slope = (f(s + FD_STEP) - f(s - FD_STEP)) / (2.0 * FD_STEP);
        let grad = fd_gradient(eval, &at(s));
        return Some((s, grad.max(slope.abs() / length)));
    }
    None
}

/// `π_P = exp(-t) (π + E ∧ ∂t)` on the chart `(t, …)`, with `Z = ∂t`.
///
/// With the bracket sign used throughout, `[π,π] = 2E∧π` and `[E,π] = 0`
/// make this bivector Poisson; the ordering `∂t ∧ E` does not. Equivalently
/// this is `exp(-t)(π + Z'∧E)` for `Z' = -∂t`, for which `L_{Z'} π_P = π_P`.
pub fn poissonify(j: &JacobiStructure, cfg: &SampleConfig) -> Result<HomogeneousPoisson> {
    let chart = j.chart().prepend_fresh("t");
    let shift: Vec<usize> = (1..=j.chart().dim()).collect();
    let pi = j.pi.embed(&chart, &shift)?;
    let e = j.e.embed(&chart, &shift)?;
    let z = MultiVectorField::coordinate(&chart, 0);
    let sum = pi.add(&e.wedge(&z)?)?;
    let weight = Expr::Exp(alloc::boxed::Box::new(-Expr::Var(0)));
    let pi_p = sum.map_coefficients(|c| weight.clone() * c.clone());
    let c = measure_homogeneity(&z, &pi_p, cfg)?.unwrap_or_else(BigRational::zero);
    Ok(HomogeneousPoisson { pi: pi_p, z, homogeneity_constant: c, complete_asserted: true })
}

/// Rational `c` with `L_Z π = c π`, if one exists and is confirmed.
pub fn measure_homogeneity(z: &MultiVectorField, pi: &MultiVectorField, cfg: &SampleConfig) -> Result<Option<BigRational>> {
    let lie = MultiVectorField::lie_derivative(z, pi)?;
    let Some((key, coeff)) = pi.components().next() else {
        return Ok(Some(BigRational::zero()));
    };
    let num = Canon::from_expr(&lie.coefficient(key));
    let den = Canon::from_expr(coeff);
    let mut ratio = None;
    for pt in admissible_points(&num.mul(&den.recip()).reduce(), pi.dim(), cfg) {
        let (Ok(n), Ok(dv)) = (num.evaluate(&pt), den.evaluate(&pt)) else { continue };
        if dv.value.abs() > 1e-6 {
            ratio = Some(n.value / dv.value);
            break;
        }
    }
    let Some(r) = ratio.and_then(rationalize) else {
        return Ok(None);
    };
    let residual = lie.sub(&pi.scale_rational(&r))?;
    Ok(residual.zero_verdict(cfg).is_zero().then_some(r))
}

/// Closest rational with denominator at most 1000, if within `1e-9`.
pub fn rationalize(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut y = x;
    for _ in 0..40 {
        let a = Float::floor(y);
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > 1000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - x).abs() <= 1e-9 * (1.0 + x.abs()) {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = y - a;
        if frac.abs() < 1e-15 {
            break;
        }
        y = 1.0 / frac;
    }
    (k1 != 0 && ((h1 as f64) / (k1 as f64) - x).abs() <= 1e-9 * (1.0 + x.abs()))
        .then(|| BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// Verdict of `[π,π] = 0`.
pub fn check_poisson(pi: &MultiVectorField, cfg: &SampleConfig) -> Result<StructureReport> {
    let mut report = StructureReport::new();
    report.check("poisson.pi_pi", pi.schouten(pi)?.zero_verdict(cfg));
    Ok(report)
}

/// Verdict of `L_Z π = c π` for the recorded constant `c`.
pub fn check_homogeneous(hp: &HomogeneousPoisson, cfg: &SampleConfig) -> Result<StructureReport> {
    let mut report = StructureReport::new();
    let lie = MultiVectorField::lie_derivative(&hp.z, &hp.pi)?;
    let residual = lie.sub(&hp.pi.scale_rational(&hp.homogeneity_constant))?;
    report.check("homogeneous.lie", residual.zero_verdict(cfg));
    let c = &hp.homogeneity_constant;
    report.value("homogeneity_constant", c);
    if !c.is_one() {
        report.note(format!(
            "measured L_Z pi = ({c}) pi; the definition of a homogeneous Poisson manifold asks for L_Z pi = pi"
        ));
    }
    if hp.complete_asserted {
        report.note("completeness of Z is asserted, not verified");
    }
    Ok(report)
}

/// Top coefficient of `π^m` on a `2m`-dimensional chart.
pub fn poisson_defect(pi: &MultiVectorField) -> Result<Expr> {
    let dim = pi.dim();
    if dim % 2 == 1 {
        return Err(Error::OddDimension(dim));
    }
    Ok(pi.power(dim / 2)?.top_coefficient())
}

/// Jacobi structure induced on the slice `{coord = value}` when `Z` is the
/// coordinate field `∂/∂coord`: `E^i = π^{i,coord}`, `π_N^{ij} = π^{ij}`,
/// inverting [`poissonify`] at `t = 0`.
pub fn slice_induce(hp: &HomogeneousPoisson, coord: usize, value: &BigRational) -> Result<JacobiStructure> {
    let chart = hp.chart();
    let unit = MultiVectorField::coordinate(chart, coord);
    if !hp.z.sub(&unit)?.is_exactly_zero() {
        return Err(Error::NonCoordinateHomothety(chart.name(coord).to_string()));
    }
    let slice = chart.without(coord)?;
    let new_index = |i: usize| if i < coord { i } else { i - 1 };
    let values: Vec<Expr> = (0..chart.dim())
        .map(|i| if i == coord { Expr::Const(value.clone()) } else { Expr::Var(new_index(i)) })
        .collect();
    let mut e_comps = Vec::new();
    let mut pi_comps = Vec::new();
    for (key, c) in hp.pi.components() {
        let c = c.substitute(&values);
        if key.contains(&coord) {
            let other = if key[0] == coord { key[1] } else { key[0] };
            let c = if key[0] == coord { -c } else { c };
            e_comps.push((vec![new_index(other)], c));
        } else {
            pi_comps.push((key.iter().map(|i| new_index(*i)).collect(), c));
        }
    }
    let pi = MultiVectorField::from_components(&slice, 2, pi_comps)?.simplify();
    let e = MultiVectorField::from_components(&slice, 1, e_comps)?.simplify();
    JacobiStructure::new(pi, e)
}

/// Reeb field and Jacobi bivector of a contact form on a three-dimensional
/// chart: `i_R α = 1`, `i_R dα = 0`, and `Λ = -(1/v)(α_3 ∂1∧∂2 - α_2 ∂1∧∂3 +
/// α_1 ∂2∧∂3)` where `α ∧ dα = v dx1∧dx2∧dx3`.
pub fn contact_form_to_jacobi(cf: &ContactForm) -> Result<JacobiStructure> {
    let chart = cf.chart();
    if chart.dim() != 3 {
        return Err(Error::UnsupportedDimension(chart.dim()));
    }
    let alpha = cf.alpha();
    let omega = alpha.exterior_derivative()?;
    let v = Canon::from_expr(&contact_volume(alpha)?);
    let inv_v = v.recip();
    let w = |i: usize, j: usize| Canon::from_expr(&omega.coefficient(&[i, j]));
    let k = [w(1, 2), w(0, 2).neg(), w(0, 1)];
    let reeb: Vec<Expr> = k.iter().map(|c| c.mul(&inv_v).reduce().to_expr()).collect();
    let a = |i: usize| Canon::from_expr(&alpha.coefficient(&[i]));
    let lam = inv_v.neg();
    let comps = [
        (vec![0, 1], a(2).mul(&lam)),
        (vec![0, 2], a(1).neg().mul(&lam)),
        (vec![1, 2], a(0).mul(&lam)),
    ];
    let pi = MultiVectorField::from_components(chart, 2, comps.into_iter().map(|(k, c)| (k, c.reduce().to_expr())))?;
    let e = MultiVectorField::vector(chart, reeb)?;
    JacobiStructure::new(pi, e)
}

/// Pointwise Reeb vector and Jacobi bivector matrix of a contact form in any
/// odd dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactPointwise {
    pub reeb: Vec<f64>,
    pub bivector: linalg::Matrix,
}

/// With `W` the matrix of `dα` and `A = W + α αᵀ`, the Reeb vector is
/// `A⁻¹ α` and the bivector is `(I - R αᵀ) A⁻¹`, up to the orientation fixed
/// so that the three-dimensional symbolic path agrees.
pub fn contact_form_pointwise(cf: &ContactForm, point: &[f64]) -> Result<ContactPointwise> {
    let alpha = cf.alpha();
    let n = alpha.dim();
    let omega = alpha.exterior_derivative()?;
    let at = |e: &Expr| e.evaluate(point);
    let mut a = vec![0.0; n];
    for (i, slot) in a.iter_mut().enumerate() {
        *slot = at(&alpha.coefficient(&[i]))?;
    }
    let mut w = vec![vec![0.0; n]; n];
    for (key, c) in omega.components() {
        let x = at(c)?;
        w[key[0]][key[1]] = x;
        w[key[1]][key[0]] = -x;
    }
    let m: linalg::Matrix = (0..n).map(|i| (0..n).map(|j| w[i][j] + a[i] * a[j]).collect()).collect();
    let inv = linalg::inverse(&m).ok_or_else(|| Error::NotContact { point: point.to_vec() })?;
    let reeb: Vec<f64> = (0..n).map(|i| (0..n).map(|j| inv[i][j] * a[j]).sum()).collect();
    let proj: linalg::Matrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 } - reeb[i] * a[j]).collect())
        .collect();
    let bivector = linalg::mat_mul(&proj, &inv);
    Ok(ContactPointwise { reeb, bivector })
}

/// Degree check for `E = Σ ω_i x_i ∂_i`: verifies `E[P] = (Σ ω_i) P` for the
/// contact defect `P`, and reports the parity of the weight sum.
pub fn euler_degree_check(j: &JacobiStructure, weights: &[u32], cfg: &SampleConfig) -> Result<StructureReport> {
    let chart = j.chart();
    if weights.len() != chart.dim() {
        return Err(Error::NotEulerField);
    }
    let euler = MultiVectorField::vector(
        chart,
        weights.iter().enumerate().map(|(i, w)| Expr::int(i64::from(*w)) * Expr::Var(i)).collect(),
    )?;
    if !j.e.sub(&euler)?.is_exactly_zero() {
        return Err(Error::NotEulerField);
    }
    let p = contact_defect(j)?;
    let degree: u32 = weights.iter().sum();
    let residual = j.e.apply(&p)? - Expr::int(i64::from(degree)) * p.clone();
    let mut report = StructureReport::new();
    report.check("euler.degree", is_zero(&residual, chart, cfg));
    report.value("contact_defect", p.simplify().display(chart));
    report.value("weight_sum", degree);
    report.value("parity", if degree.is_multiple_of(2) { "even" } else { "odd" });
    if degree % 2 == 1 {
        let locus = singular_locus_report(j, cfg)?;
        if locus.witness().is_some() {
            report.cite(CITE_EULER);
        }
        report.locus.extend(locus.locus);
        for c in locus.citations {
            report.cite(&c);
        }
    }
    Ok(report)
}

/// Weights `ω` when `E = Σ ω_i x_i ∂_i` with positive integer `ω_i`.
pub fn euler_weights(e: &MultiVectorField) -> Option<Vec<u32>> {
    let mut weights = Vec::with_capacity(e.dim());
    for i in 0..e.dim() {
        let c = Canon::from_expr(&e.coefficient(&[i]));
        let w = Canon::from_expr(&Expr::Var(i));
        let ratio = c.div(&w);
        let q = ratio.as_constant()?;
        if !q.is_integer() || !q.is_positive() {
            return None;
        }
        weights.push(q.to_integer().to_u32()?);
    }
    Some(weights)
}

/// The Jacobi bracket `{f, g} = i_π(df∧dg) + f E[g] - g E[f]`.
pub fn jacobi_bracket(j: &JacobiStructure, f: &Expr, g: &Expr) -> Result<Expr> {
    let chart = j.chart();
    let df = DiffForm::scalar(chart, f.clone()).exterior_derivative()?;
    let dg = DiffForm::scalar(chart, g.clone()).exterior_derivative()?;
    let pairing = j.pi.contract(&df.wedge(&dg)?)?.coefficient(&[]);
    Ok((pairing + f * &j.e.apply(g)? - g * &j.e.apply(f)?).simplify())
}

/// Minimum of `|P|` at samples and whether it stays above the tolerance.
pub fn contact_at_samples(p: &Expr, dim: usize, cfg: &SampleConfig) -> (bool, f64, Vec<f64>, usize) {
    let (min, at, count) = defect_minimum(p, dim, cfg);
    let ok = if Canon::from_expr(p).is_zero() { false } else { min > cfg.tol };
    (ok, min, at, count)
}

#[doc(hidden)]
pub fn verdict(e: &Expr, dim: usize, cfg: &SampleConfig) -> ZeroVerdict {
    canon_is_zero(&Canon::from_expr(e), dim, cfg)
}
