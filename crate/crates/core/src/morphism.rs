//! Maps between charts and the pushforward relations defining Jacobi and
//! Poisson morphisms and contact resolutions.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::jacobi::{check_jacobi, check_poisson, contact_at_samples, contact_defect, poisson_defect, singular_locus_report};
use crate::jacobi::{HomogeneousPoisson, JacobiStructure};
use crate::multivector::MultiVectorField;
use crate::report::{CheckRecord, StructureReport, CITE_PROPER, CITE_SEMI_CONNECTED};
use crate::zero::{is_zero, SampleConfig};
use crate::{Chart, Error, Expr, Result};

/// A map given by one expression in source coordinates per target coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothMap {
    source: Chart,
    target: Chart,
    components: Vec<Expr>,
}

impl SmoothMap {
    pub fn new(source: &Chart, target: &Chart, components: Vec<Expr>) -> Result<Self> {
        if components.len() != target.dim() {
            return Err(Error::InvalidMap(format!(
                "{} components for a target of dimension {}",
                components.len(),
                target.dim()
            )));
        }
        if let Some(k) = components.iter().position(|c| c.max_var().is_some_and(|v| v >= source.dim())) {
            return Err(Error::InvalidMap(format!("component {k} uses a variable outside the source chart")));
        }
        Ok(SmoothMap { source: source.clone(), target: target.clone(), components })
    }

    pub fn identity(chart: &Chart) -> Self {
        SmoothMap { source: chart.clone(), target: chart.clone(), components: (0..chart.dim()).map(Expr::Var).collect() }
    }

    pub fn source(&self) -> &Chart {
        &self.source
    }

    pub fn target(&self) -> &Chart {
        &self.target
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    /// `next ∘ self`.
    pub fn compose(&self, next: &SmoothMap) -> Result<SmoothMap> {
        if self.target != next.source {
            return Err(Error::ChartMismatch);
        }
        let components = next.components.iter().map(|c| c.substitute(&self.components)).collect();
        SmoothMap::new(&self.source, &next.target, components)
    }

    /// `f ∘ φ` for `f` in target coordinates.
    pub fn pull_back(&self, f: &Expr) -> Expr {
        f.substitute(&self.components)
    }
}

/// User-supplied topological properties of a claimed resolution. Recorded
/// and echoed, never verified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ResolutionFlags {
    pub surjective: bool,
    pub proper: bool,
    pub semi_connected: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResolutionClaim {
    pub map: SmoothMap,
    pub source: JacobiStructure,
    pub target: JacobiStructure,
    pub flags: ResolutionFlags,
}

/// A named boolean condition that is not an identity, such as
/// nondegeneracy at the sample points.
#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub id: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MorphismReport {
    /// One verdict per target coordinate pair and per target coordinate.
    pub relations: Vec<CheckRecord>,
    /// Identities required of the source.
    pub preconditions: StructureReport,
    pub conditions: Vec<Condition>,
    pub flags: Option<ResolutionFlags>,
    pub notes: Vec<String>,
    pub citations: Vec<String>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.verdict.is_zero())
            && self.preconditions.passed()
            && self.conditions.iter().all(|c| c.holds)
    }

    pub fn relations_passed(&self) -> bool {
        self.relations.iter().all(|r| r.verdict.is_zero())
    }

    pub fn relation(&self, id: &str) -> Option<&CheckRecord> {
        self.relations.iter().find(|r| r.id == id)
    }

    fn cite(&mut self, c: &str) {
        if !self.citations.iter().any(|x| x == c) {
            self.citations.push(c.into());
        }
    }
}

fn check_charts(map: &SmoothMap, source: &Chart, target: &Chart) -> Result<()> {
    if map.source() != source || map.target() != target {
        return Err(Error::ChartMismatch);
    }
    Ok(())
}

/// `X[φ^k] = Y^k ∘ φ` for every target coordinate `k`, labelled
/// `<prefix>(<name>)`.
pub fn pushforward_check_vector(
    x: &MultiVectorField,
    map: &SmoothMap,
    y: &MultiVectorField,
    cfg: &SampleConfig,
) -> Result<Vec<CheckRecord>> {
    pushforward_vector_labelled("e", x, map, y, cfg)
}

fn pushforward_vector_labelled(
    prefix: &str,
    x: &MultiVectorField,
    map: &SmoothMap,
    y: &MultiVectorField,
    cfg: &SampleConfig,
) -> Result<Vec<CheckRecord>> {
    check_charts(map, x.chart(), y.chart())?;
    if x.degree() != 1 || y.degree() != 1 {
        return Err(Error::DegreeMismatch("vector pushforward needs degree 1 on both sides".into()));
    }
    let mut out = Vec::with_capacity(map.target.dim());
    for (k, phi) in map.components.iter().enumerate() {
        let lhs = x.apply(phi)?;
        let rhs = map.pull_back(&y.coefficient(&[k]));
        out.push(CheckRecord {
            id: format!("{prefix}({})", map.target.name(k)),
            verdict: is_zero(&(lhs - rhs), &map.source, cfg),
        });
    }
    Ok(out)
}

/// `Σ_{a<b} P^{ab}(∂_aφ^i ∂_bφ^j - ∂_bφ^i ∂_aφ^j) = Q^{ij} ∘ φ` for every
/// target pair `i < j`, labelled `pi(<name>,<name>)`.
pub fn pushforward_check_bivector(
    p: &MultiVectorField,
    map: &SmoothMap,
    q: &MultiVectorField,
    cfg: &SampleConfig,
) -> Result<Vec<CheckRecord>> {
    check_charts(map, p.chart(), q.chart())?;
    if p.degree() != 2 || q.degree() != 2 {
        return Err(Error::DegreeMismatch("bivector pushforward needs degree 2 on both sides".into()));
    }
    let n = map.target.dim();
    let grads: Vec<Vec<Expr>> =
        map.components.iter().map(|c| (0..map.source.dim()).map(|a| c.derivative(a)).collect()).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut lhs = Expr::zero();
            for (key, c) in p.components() {
                let (a, b) = (key[0], key[1]);
                let minor = &grads[i][a] * &grads[j][b] - &grads[i][b] * &grads[j][a];
                lhs = lhs + c * &minor;
            }
            let rhs = map.pull_back(&q.coefficient(&[i, j]));
            out.push(CheckRecord {
                id: format!("pi({},{})", map.target.name(i), map.target.name(j)),
                verdict: is_zero(&(lhs - rhs), &map.source, cfg),
            });
        }
    }
    Ok(out)
}

/// Both pushforward conditions for `π` and `E`.
pub fn check_jacobi_morphism(
    map: &SmoothMap,
    source: &JacobiStructure,
    target: &JacobiStructure,
    cfg: &SampleConfig,
) -> Result<MorphismReport> {
    let mut report = MorphismReport::default();
    report.relations.extend(pushforward_check_bivector(&source.pi, map, &target.pi, cfg)?);
    report.relations.extend(pushforward_check_vector(&source.e, map, &target.e, cfg)?);
    Ok(report)
}

/// Verifies that the source is contact at the samples and Jacobi, that the
/// map is a Jacobi morphism, and echoes the asserted flags. A codimension-1
/// singular locus in the target produces an advisory notice when the claim
/// asserts properness or semi-connectedness.
pub fn check_contact_resolution(claim: &ResolutionClaim, cfg: &SampleConfig) -> Result<MorphismReport> {
    let (sd, td) = (claim.source.chart().dim(), claim.target.chart().dim());
    if sd != td {
        return Err(Error::DimensionMismatch { source_dim: sd, target_dim: td });
    }
    if sd % 2 == 0 {
        return Err(Error::EvenDimension(sd));
    }
    let mut report = check_jacobi_morphism(&claim.map, &claim.source, &claim.target, cfg)?;
    report.preconditions = prefixed("source.", check_jacobi(&claim.source, cfg)?);
    let defect = contact_defect(&claim.source)?;
    let (holds, min, at, count) = contact_at_samples(&defect, sd, cfg);
    report.conditions.push(Condition {
        id: "source.contact".into(),
        holds,
        detail: format!("min |defect| = {min:e} over {count} samples at {at:?}"),
    });
    report.flags = Some(claim.flags);
    let locus = singular_locus_report(&claim.target, cfg)?;
    if locus.witness().is_some() {
        if claim.flags.proper {
            report.notes.push("target has a codimension-1 singular locus, contradicting the asserted properness".into());
            report.cite(CITE_PROPER);
        }
        if claim.flags.semi_connected {
            report
                .notes
                .push("target has a codimension-1 singular locus, contradicting the asserted semi-connectedness".into());
            report.cite(CITE_SEMI_CONNECTED);
        }
    }
    Ok(report)
}

fn prefixed(prefix: &str, mut r: StructureReport) -> StructureReport {
    for c in &mut r.checks {
        c.id = format!("{prefix}{}", c.id);
    }
    r
}

/// `(σ, t) ↦ (φ(σ), t)`, with `t` placed first on both charts.
pub fn lift_resolution(map: &SmoothMap) -> SmoothMap {
    let source = map.source.prepend_fresh("t");
    let target = map.target.prepend_fresh("t");
    let mut components = Vec::with_capacity(target.dim());
    components.push(Expr::Var(0));
    components.extend(map.components.iter().map(|c| c.shift_vars(1)));
    SmoothMap { source, target, components }
}

/// Source is Poisson and nondegenerate at every sample, and both `π` and
/// `Z` push forward to the target.
pub fn check_homogeneous_symplectic_resolution(
    map: &SmoothMap,
    source: &HomogeneousPoisson,
    target: &HomogeneousPoisson,
    cfg: &SampleConfig,
) -> Result<MorphismReport> {
    let (sd, td) = (source.chart().dim(), target.chart().dim());
    if sd != td {
        return Err(Error::DimensionMismatch { source_dim: sd, target_dim: td });
    }
    if sd % 2 == 1 {
        return Err(Error::OddDimension(sd));
    }
    let mut report = MorphismReport {
        preconditions: prefixed("source.", check_poisson(&source.pi, cfg)?),
        ..MorphismReport::default()
    };
    let top = poisson_defect(&source.pi)?;
    let (holds, min, at, count) = contact_at_samples(&top, sd, cfg);
    report.conditions.push(Condition {
        id: "source.nondegenerate".into(),
        holds,
        detail: format!("min |top coefficient| = {min:e} over {count} samples at {at:?}"),
    });
    report.relations.extend(pushforward_check_bivector(&source.pi, map, &target.pi, cfg)?);
    report.relations.extend(pushforward_vector_labelled("z", &source.z, map, &target.z, cfg)?);
    Ok(report)
}
