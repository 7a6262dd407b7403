//! The polynomial family of Jacobi structures `π = Σ f(y_i) ∂y_i∧∂z -
//! Σ y_i^n f(y_i) ∂y_i∧∂x`, its solver, and a registry of named structures
//! with expected verdicts.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::jacobi::{
    check_jacobi, contact_at_samples, contact_defect, contact_form_to_jacobi, euler_degree_check, euler_weights,
    singular_locus_report, ContactForm, JacobiStructure,
};
use crate::morphism::{check_contact_resolution, ResolutionClaim, ResolutionFlags, SmoothMap};
use crate::multivector::{DiffForm, MultiVectorField};
use crate::report::{StructureReport, CITE_FAMILY};
use crate::zero::SampleConfig;
use crate::{Chart, Error, Expr, Result, UniPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub f: UniPoly,
    pub n: u32,
    /// Ambient dimension is `2m + 1`.
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilySolution {
    pub g: UniPoly,
    pub h: UniPoly,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn monomial(c: BigRational, k: usize) -> UniPoly {
    UniPoly::constant(c).shift(k)
}

/// Closed-form polynomial `g, h` solving `g + t^n h = -n t^(n-1) f` and
/// `g' + t^n h' = 0`, built monomial by monomial.
pub fn solve_family(spec: &FamilySpec) -> Result<FamilySolution> {
    if spec.n == 0 || spec.m == 0 {
        return Err(Error::InvalidFamily(format!("n and m must be positive, got n = {}, m = {}", spec.n, spec.m)));
    }
    let n = spec.n as usize;
    let mut g = UniPoly::zero();
    let mut h = UniPoly::zero();
    for (k, c) in spec.f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let ki = k as i64;
        if n == 1 {
            g = g.add(&monomial(c * q(ki - 1), k));
            if k > 0 {
                h = h.add(&monomial(c * q(-ki), k - 1));
            }
        } else {
            if k == 0 {
                return Err(Error::NoPolynomialSolution { n: spec.n });
            }
            g = g.add(&monomial(c * q(ki - 1), k + n - 1));
            h = h.add(&monomial(c * q(-(ki + n as i64 - 1)), k - 1));
        }
    }
    let sol = FamilySolution { g, h };
    debug_assert!(solution_residuals(spec, &sol).iter().all(UniPoly::is_zero));
    Ok(sol)
}

/// Both sides of the linear system moved to the left, as exact polynomials.
pub fn solution_residuals(spec: &FamilySpec, sol: &FamilySolution) -> [UniPoly; 2] {
    let n = spec.n as usize;
    let first = sol
        .g
        .add(&sol.h.shift(n))
        .add(&spec.f.shift(n.saturating_sub(1)).scale(&q(i64::from(spec.n))));
    let second = sol.g.derivative().add(&sol.h.derivative().shift(n));
    [first, second]
}

pub fn verify_solution(spec: &FamilySpec, sol: &FamilySolution) -> bool {
    solution_residuals(spec, sol).iter().all(UniPoly::is_zero)
}

/// `Σ c_k v^k`.
pub fn uni_to_expr(p: &UniPoly, var: usize) -> Expr {
    let mut acc = Expr::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = match k {
            0 => Expr::Const(c.clone()),
            _ => Expr::Const(c.clone()) * Expr::Var(var).pow(k as i32),
        };
        acc = acc + term;
    }
    acc.simplify()
}

/// Chart `(x, z, y1, …, y_{2m-1})`, or `(x, z, y)` when `m = 1`.
pub fn family_chart(m: u32) -> Chart {
    let count = 2 * m as usize - 1;
    let mut names = vec![String::from("x"), String::from("z")];
    if count == 1 {
        names.push("y".into());
    } else {
        names.extend((1..=count).map(|i| format!("y{i}")));
    }
    Chart::new(names).expect("family chart names are valid")
}

pub fn build_family_structure(spec: &FamilySpec, sol: &FamilySolution) -> Result<JacobiStructure> {
    if spec.m == 0 {
        return Err(Error::InvalidFamily("m must be positive".into()));
    }
    let chart = family_chart(spec.m);
    let n = spec.n as i32;
    let mut pi = Vec::new();
    let (mut gx, mut hz) = (Expr::zero(), Expr::zero());
    for y in 2..chart.dim() {
        let f = uni_to_expr(&spec.f, y);
        pi.push((vec![y, 1], f.clone()));
        pi.push((vec![y, 0], -(Expr::Var(y).pow(n) * f)));
        gx = gx + uni_to_expr(&sol.g, y);
        hz = hz + uni_to_expr(&sol.h, y);
    }
    let mut e = vec![Expr::zero(); chart.dim()];
    e[0] = gx.simplify();
    e[1] = hz.simplify();
    let pi = MultiVectorField::from_components(&chart, 2, pi.into_iter().map(|(k, c)| (k, c.simplify())))?;
    JacobiStructure::new(pi, MultiVectorField::vector(&chart, e)?)
}

/// Jacobi identities, singular-locus search and, for Euler-shaped `E`, the
/// degree check, in one report.
pub fn obstruction_report(j: &JacobiStructure, cfg: &SampleConfig) -> Result<StructureReport> {
    let mut report = check_jacobi(j, cfg)?;
    let dim = j.chart().dim();
    if dim.is_multiple_of(2) {
        report.note("even dimension: no contact defect");
        return Ok(report);
    }
    report.merge(singular_locus_report(j, cfg)?);
    if let Some(weights) = euler_weights(&j.e) {
        let mut euler = euler_degree_check(j, &weights, cfg)?;
        euler.locus.clear();
        euler.values.retain(|(k, _)| k != "contact_defect");
        report.merge(euler);
    }
    if report.witness().is_some() {
        report.note("codimension-1 singular locus found: no proper or semi-connected contact resolution");
    } else {
        let (contact, min, _, count) = contact_at_samples(&contact_defect(j)?, dim, cfg);
        if contact {
            report.note(format!("contact everywhere at {count}/{count} samples (min |defect| = {min:e})"));
        } else {
            report.note("no codimension-1 witness; no obstruction claimed");
        }
    }
    Ok(report)
}

/// Family structure plus obstruction report, citing the family obstruction
/// when a witness is found.
pub fn family_report(spec: &FamilySpec, cfg: &SampleConfig) -> Result<(FamilySolution, JacobiStructure, StructureReport)> {
    let sol = solve_family(spec)?;
    let j = build_family_structure(spec, &sol)?;
    let mut report = obstruction_report(&j, cfg)?;
    if report.witness().is_some() {
        report.cite(CITE_FAMILY);
    }
    Ok((sol, j, report))
}

/// What a registry entry holds.
#[derive(Clone, Debug, PartialEq)]
pub enum ExampleKind {
    Structure(JacobiStructure),
    Contact(ContactForm),
    Claim(ResolutionClaim),
}

/// One expected outcome of a registry entry.
#[derive(Clone, Debug, PartialEq)]
pub enum Expectation {
    /// Named identity check is a zero verdict (or not).
    Check(&'static str, bool),
    /// A codimension-1 witness is found (or not).
    Witness(bool),
    /// Contact defect nonvanishing at every sample.
    Contact(bool),
    /// All morphism relations pass.
    Relations(bool),
    /// The whole morphism report passes.
    Resolution(bool),
    /// Contact defect normalizes to the given expression.
    Defect(&'static str),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PaperExample {
    pub name: &'static str,
    pub summary: &'static str,
    pub kind: ExampleKind,
    pub expectations: Vec<Expectation>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpectationOutcome {
    pub label: String,
    pub expected: String,
    pub actual: String,
}

impl ExpectationOutcome {
    pub fn matched(&self) -> bool {
        self.expected == self.actual
    }
}

fn chart(names: &[&str]) -> Chart {
    Chart::new(names.iter().copied()).expect("static chart")
}

fn ex(s: &str, c: &Chart) -> Expr {
    Expr::parse(s, c).expect("static expression")
}

fn bivector(c: &Chart, comps: &[([usize; 2], &str)]) -> MultiVectorField {
    MultiVectorField::from_components(c, 2, comps.iter().map(|(k, s)| (k.to_vec(), ex(s, c)))).expect("static bivector")
}

fn vector(c: &Chart, comps: &[&str]) -> MultiVectorField {
    MultiVectorField::vector(c, comps.iter().map(|s| ex(s, c)).collect()).expect("static vector")
}

fn structure(pi: MultiVectorField, e: MultiVectorField) -> JacobiStructure {
    JacobiStructure::new(pi, e).expect("static structure")
}

/// The three-dimensional structure with `π = (x^4+y^4) ∂x∧∂y + x ∂z∧∂x -
/// y ∂y∧∂z` and `E = k ∂z`.
pub fn lehbel(k: i64) -> JacobiStructure {
    let c = chart(&["x", "y", "z"]);
    let e = format!("{k}");
    structure(bivector(&c, &[([0, 1], "x^4 + y^4"), ([2, 0], "x"), ([1, 2], "-y")]), vector(&c, &["0", "0", &e]))
}

const SIGMA_DENOMINATOR: &str = "(cos(p1^3*p2)^4 + sin(p1^3*p2)^4)";

pub fn sigma_chart() -> Chart {
    chart(&["p1", "p2", "p3"])
}

/// `α = dp3 + p1/D dp2 + 3 p2/D dp1` with `D = cos^4(p1^3 p2) + sin^4(p1^3 p2)`.
pub fn sigma_form() -> DiffForm {
    let c = sigma_chart();
    let comps = [format!("3*p2/{SIGMA_DENOMINATOR}"), format!("p1/{SIGMA_DENOMINATOR}"), "1".to_string()];
    DiffForm::one_form(&c, comps.iter().map(|s| ex(s, &c)).collect()).expect("static form")
}

/// `D ∂p1∧∂p2 + 3p2 ∂p2∧∂p3 + p1 ∂p3∧∂p1` with `E = k ∂p3`.
pub fn sigma_printed(k: i64) -> JacobiStructure {
    let c = sigma_chart();
    let e = format!("{k}");
    structure(
        bivector(&c, &[([0, 1], SIGMA_DENOMINATOR), ([1, 2], "3*p2"), ([2, 0], "p1")]),
        vector(&c, &["0", "0", &e]),
    )
}

/// `(p1, p2, p3) ↦ (p1 sin(p1^3 p2), p1 cos(p1^3 p2), p3)`.
pub fn sigma_map() -> SmoothMap {
    let s = sigma_chart();
    let t = chart(&["x", "y", "z"]);
    SmoothMap::new(&s, &t, vec![ex("p1*sin(p1^3*p2)", &s), ex("p1*cos(p1^3*p2)", &s), ex("p3", &s)])
        .expect("static map")
}

/// [`sigma_map`] with the first two components exchanged, which makes the
/// Jacobian minor of those components `+p1^4`.
pub fn sigma_map_swapped() -> SmoothMap {
    let s = sigma_chart();
    let t = chart(&["x", "y", "z"]);
    SmoothMap::new(&s, &t, vec![ex("p1*cos(p1^3*p2)", &s), ex("p1*sin(p1^3*p2)", &s), ex("p3", &s)])
        .expect("static map")
}

/// Family member on `(x, y, z)` for `f` given by integer coefficients.
pub fn family_example(f: &[i64]) -> JacobiStructure {
    let spec = FamilySpec { f: UniPoly::from_integers(f), n: 1, m: 1 };
    let sol = solve_family(&spec).expect("n = 1 always solves");
    let j = build_family_structure(&spec, &sol).expect("family structure");
    to_xyz(&j)
}

/// Reorders a structure on `(x, z, y)` to `(x, y, z)`.
pub fn to_xyz(j: &JacobiStructure) -> JacobiStructure {
    let c = chart(&["x", "y", "z"]);
    let map = [0, 2, 1];
    structure(j.pi.embed(&c, &map).expect("embed"), j.e.embed(&c, &map).expect("embed"))
}

/// `E = x∂x + y∂y + z∂z` with `π = -xy ∂x∧∂y - xz ∂x∧∂z + xy ∂y∧∂z`.
pub fn euler_cubic() -> JacobiStructure {
    let c = chart(&["x", "y", "z"]);
    structure(bivector(&c, &[([0, 1], "-x*y"), ([0, 2], "-x*z"), ([1, 2], "x*y")]), vector(&c, &["x", "y", "z"]))
}

/// `E = 2x∂x + y∂y + z∂z` with `π = -xy ∂x∧∂y - xz ∂x∧∂z + x ∂y∧∂z`.
pub fn euler_weighted() -> JacobiStructure {
    let c = chart(&["x", "y", "z"]);
    structure(bivector(&c, &[([0, 1], "-x*y"), ([0, 2], "-x*z"), ([1, 2], "x")]), vector(&c, &["2*x", "y", "z"]))
}

fn asserted_flags() -> ResolutionFlags {
    ResolutionFlags { surjective: true, proper: false, semi_connected: true }
}

/// Every named structure and claim, with the verdicts this toolkit finds.
pub fn paper_examples() -> Vec<PaperExample> {
    use Expectation::*;
    let cfg = SampleConfig::default();
    let sigma = ContactForm::new(sigma_form(), &cfg).expect("sigma form is contact");
    vec![
        PaperExample {
            name: "lehbel",
            summary: "polynomial structure singular on {x = y = 0}, with E = dz as printed; [pi,pi] = 2 (2E) ^ pi, so \
                      the first identity fails by a factor of 2",
            kind: ExampleKind::Structure(lehbel(1)),
            expectations: vec![
                Check("jacobi.pi_pi", false),
                Check("jacobi.e_pi", true),
                Defect("x^4 + y^4"),
                Witness(false),
            ],
        },
        PaperExample {
            name: "lehbel_intro",
            summary: "same bivector with E = 2 dz: a Jacobi structure",
            kind: ExampleKind::Structure(lehbel(2)),
            expectations: vec![Check("jacobi.pi_pi", true), Check("jacobi.e_pi", true), Defect("2*x^4 + 2*y^4"), Witness(false)],
        },
        PaperExample {
            name: "sigma_contact",
            summary: "structure computed from the contact form alpha; the bivector is half the printed one",
            kind: ExampleKind::Contact(sigma),
            expectations: vec![Check("jacobi.pi_pi", true), Check("jacobi.e_pi", true), Contact(true), Witness(false)],
        },
        PaperExample {
            name: "sigma_printed",
            summary: "printed bivector with E = dp3; Jacobi only after doubling E",
            kind: ExampleKind::Structure(sigma_printed(1)),
            expectations: vec![Check("jacobi.pi_pi", false), Check("jacobi.e_pi", true), Contact(true)],
        },
        PaperExample {
            name: "sigma_resolution_printed",
            summary: "printed data for the resolution of lehbel: the (x,y) relation fails by a sign since the \
                      Jacobian minor of the first two components is -p1^4, and the source fails the first Jacobi \
                      identity",
            kind: ExampleKind::Claim(ResolutionClaim {
                map: sigma_map(),
                source: sigma_printed(1),
                target: lehbel(1),
                flags: asserted_flags(),
            }),
            expectations: vec![Relations(false), Resolution(false)],
        },
        PaperExample {
            name: "sigma_resolution",
            summary: "printed bivectors with both Reeb fields doubled and the first two map components exchanged: a \
                      contact resolution, connected but not proper",
            kind: ExampleKind::Claim(ResolutionClaim {
                map: sigma_map_swapped(),
                source: sigma_printed(2),
                target: lehbel(2),
                flags: asserted_flags(),
            }),
            expectations: vec![Relations(true), Resolution(true)],
        },
        PaperExample {
            name: "example1",
            summary: "family member f = 2 + 3y, n = 1",
            kind: ExampleKind::Structure(family_example(&[2, 3])),
            expectations: vec![Check("jacobi.pi_pi", true), Check("jacobi.e_pi", true), Defect("-4 - 12*y - 9*y^2"), Witness(true)],
        },
        PaperExample {
            name: "example2",
            summary: "family member f = y^3 + y^2 + y, n = 1",
            kind: ExampleKind::Structure(family_example(&[0, 1, 1, 1])),
            expectations: vec![Check("jacobi.pi_pi", true), Check("jacobi.e_pi", true), Witness(true)],
        },
        PaperExample {
            name: "example3",
            summary: "family member f = y^2 + y + 1, n = 1; f has no real zero",
            kind: ExampleKind::Structure(family_example(&[1, 1, 1])),
            expectations: vec![Check("jacobi.pi_pi", true), Check("jacobi.e_pi", true), Witness(false)],
        },
        PaperExample {
            name: "family_contact",
            summary: "family member f = 1, n = 1: contact",
            kind: ExampleKind::Structure(family_example(&[1])),
            expectations: vec![Check("jacobi.pi_pi", true), Check("jacobi.e_pi", true), Contact(true), Witness(false)],
        },
        PaperExample {
            name: "euler_cubic",
            summary: "Euler vector field with weight sum 3 and defect x^2 y",
            kind: ExampleKind::Structure(euler_cubic()),
            expectations: vec![
                Check("jacobi.pi_pi", true),
                Check("jacobi.e_pi", true),
                Check("euler.degree", true),
                Defect("x^2*y"),
                Witness(true),
            ],
        },
        PaperExample {
            name: "euler_weighted",
            summary: "weights (2, 1, 1): even weight sum, defect 2x^2 vanishing on the hypersurface x = 0",
            kind: ExampleKind::Structure(euler_weighted()),
            expectations: vec![
                Check("jacobi.pi_pi", true),
                Check("jacobi.e_pi", true),
                Check("euler.degree", true),
                Defect("2*x^2"),
                Witness(true),
            ],
        },
    ]
}

pub fn find_example(name: &str) -> Option<PaperExample> {
    paper_examples().into_iter().find(|e| e.name == name)
}

/// Structure carried by an entry, for structure and contact entries.
pub fn entry_structure(entry: &PaperExample) -> Result<JacobiStructure> {
    match &entry.kind {
        ExampleKind::Structure(j) => Ok(j.clone()),
        ExampleKind::Contact(cf) => contact_form_to_jacobi(cf),
        ExampleKind::Claim(claim) => Ok(claim.source.clone()),
    }
}

fn yes(b: bool) -> String {
    String::from(if b { "yes" } else { "no" })
}

/// Evaluates every expectation of an entry.
pub fn run_entry(entry: &PaperExample, cfg: &SampleConfig) -> Result<Vec<ExpectationOutcome>> {
    let mut out = Vec::new();
    let (report, morphism, j) = match &entry.kind {
        ExampleKind::Claim(claim) => (None, Some(check_contact_resolution(claim, cfg)?), None),
        _ => {
            let j = entry_structure(entry)?;
            (Some(obstruction_report(&j, cfg)?), None, Some(j))
        }
    };
    for exp in &entry.expectations {
        let (label, expected, actual) = match exp {
            Expectation::Check(id, want) => {
                let got = report.as_ref().and_then(|r| r.get_check(id)).map(|c| yes(c.verdict.is_zero()));
                (format!("check {id}"), yes(*want), got.unwrap_or_else(|| "missing".into()))
            }
            Expectation::Witness(want) => {
                let got = report.as_ref().map(|r| yes(r.witness().is_some()));
                ("codim-1 witness".into(), yes(*want), got.unwrap_or_else(|| "missing".into()))
            }
            Expectation::Contact(want) => {
                let got = match &j {
                    Some(j) => {
                        let p = contact_defect(j)?;
                        yes(contact_at_samples(&p, j.chart().dim(), cfg).0)
                    }
                    None => "missing".into(),
                };
                ("contact at samples".into(), yes(*want), got)
            }
            Expectation::Relations(want) => {
                let got = morphism.as_ref().map(|m| yes(m.relations_passed()));
                ("pushforward relations".into(), yes(*want), got.unwrap_or_else(|| "missing".into()))
            }
            Expectation::Resolution(want) => {
                let got = morphism.as_ref().map(|m| yes(m.passed()));
                ("resolution".into(), yes(*want), got.unwrap_or_else(|| "missing".into()))
            }
            Expectation::Defect(want) => {
                let got = match &j {
                    Some(j) => {
                        let p = contact_defect(j)?;
                        let target = Expr::parse(want, j.chart())?;
                        if (p - target.clone()).is_canonically_zero() {
                            want.to_string()
                        } else {
                            contact_defect(j)?.simplify().display(j.chart()).to_string()
                        }
                    }
                    None => "missing".into(),
                };
                ("contact defect".into(), want.to_string(), got)
            }
        };
        out.push(ExpectationOutcome { label, expected, actual });
    }
    Ok(out)
}
