//! One function per subcommand. Each returns the full [`Output`]; errors are
//! folded into it by [`finish`].

use std::fs;
use std::path::{Path, PathBuf};

use jacobi_core::expr::Polynomial;
use jacobi_core::families::{entry_structure, family_report, find_example, paper_examples, run_entry, uni_to_expr, FamilySpec, PaperExample};
use jacobi_core::jacobi::{
    check_homogeneous, check_poisson, contact_at_samples, poisson_defect, poissonify, slice_induce, JacobiStructure,
};
use jacobi_core::morphism::{check_contact_resolution, ResolutionClaim};
use jacobi_core::{BigRational, Chart, Expr, UniPoly};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::map_file::parse_map;
use crate::render::{Output, Record};
use crate::structure_file::StructureFile;

/// Where a structure comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    File(PathBuf),
    Example(String),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn load_structure_file(path: &Path) -> Result<StructureFile, CliError> {
    StructureFile::parse(&read(path)?).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn load_jacobi(input: &Input, cfg: &RunConfig) -> Result<(JacobiStructure, StructureFile), CliError> {
    match input {
        Input::File(path) => {
            let file = load_structure_file(path)?;
            Ok((file.jacobi(&cfg.sample_config())?, file))
        }
        Input::Example(name) => {
            let entry = find_example(name).ok_or_else(|| CliError::Precondition(format!("unknown example `{name}`")))?;
            let j = entry_structure(&entry)?;
            let file = StructureFile::from_jacobi(&j);
            Ok((j, file))
        }
    }
}

/// Folds an error into an output carrying its exit code.
pub fn finish(command: &str, result: Result<Output, CliError>) -> Output {
    match result {
        Ok(out) => out,
        Err(e) => {
            let mut out = Output::new(command);
            out.exit_code = e.exit_code();
            out.summary.push(format!("error: {e}"));
            out
        }
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn check_jacobi(input: &Input, cfg: &RunConfig) -> Result<Output, CliError> {
    let (j, _) = load_jacobi(input, cfg)?;
    let report = jacobi_core::families::obstruction_report(&j, &cfg.sample_config())?;
    let mut out = Output::new("check-jacobi");
    out.absorb(&report);
    let identities = report.checks.iter().filter(|c| c.id.starts_with("jacobi.")).all(|c| c.verdict.is_zero());
    let witness = match report.witness() {
        Some(jacobi_core::LocusFinding::Codim1Witness { point, .. }) => crate::render::point(point),
        _ => "none".into(),
    };
    let defect = report.get_value("contact_defect").unwrap_or("n/a").to_string();
    out.summary.push(format!("jacobi: {}, contact defect: {defect}, codim-1 witness: {witness}", pass(identities)));
    out.exit_code = if out.passed() { 0 } else { 1 };
    Ok(out)
}

pub fn check_resolution(source: &Path, target: &Path, map: &Path, cfg: &RunConfig) -> Result<Output, CliError> {
    let s = load_structure_file(source)?;
    let t = load_structure_file(target)?;
    let m = parse_map(&read(map)?).map_err(|e| CliError::Parse { path: map.display().to_string(), source: e })?;
    let sc = cfg.sample_config();
    let (js, jt) = (s.jacobi(&sc)?, t.jacobi(&sc)?);
    if js.chart().dim() != jt.chart().dim() {
        return Err(CliError::Precondition(format!(
            "source has dimension {}, target has dimension {}",
            js.chart().dim(),
            jt.chart().dim()
        )));
    }
    if m.source() != js.chart() || m.target() != jt.chart() {
        return Err(CliError::Precondition(format!(
            "map charts ({}) -> ({}) do not match the structure charts ({}) -> ({})",
            m.source().names().join(" "),
            m.target().names().join(" "),
            js.chart().names().join(" "),
            jt.chart().names().join(" ")
        )));
    }
    let claim = ResolutionClaim { map: m, source: js, target: jt, flags: s.flags() };
    let report = check_contact_resolution(&claim, &sc)?;
    let mut out = Output::new("check-resolution");
    out.absorb_morphism(&report);
    let f = claim.flags;
    out.value("asserted", format!("surjective={} proper={} semi_connected={}", f.surjective, f.proper, f.semi_connected));
    let ok = report.relations.iter().filter(|r| r.verdict.is_zero()).count();
    out.summary.push(format!("relations: {ok}/{} passed", report.relations.len()));
    for r in report.relations.iter().filter(|r| !r.verdict.is_zero()) {
        let at = r.verdict.witness().map(crate::render::point).unwrap_or_default();
        out.summary.push(format!("failing relation {} at {at}", r.id));
    }
    out.summary.push(format!("resolution: {}", pass(report.passed())));
    out.exit_code = if out.passed() { 0 } else { 1 };
    Ok(out)
}

pub fn poissonify_cmd(input: &Input, slice_roundtrip: bool, cfg: &RunConfig) -> Result<Output, CliError> {
    let (j, _) = load_jacobi(input, cfg)?;
    let sc = cfg.sample_config();
    let hp = poissonify(&j, &sc)?;
    let mut out = Output::new("poissonify");
    out.absorb(&check_poisson(&hp.pi, &sc)?);
    out.absorb(&check_homogeneous(&hp, &sc)?);
    if hp.chart().dim() % 2 == 0 {
        let top = poisson_defect(&hp.pi)?;
        let (ok, min, at, count) = contact_at_samples(&top, hp.chart().dim(), &sc);
        if ok {
            out.value("nondegenerate", format!("symplectic at {count}/{count} samples"));
        } else {
            out.value("nondegenerate", format!("degenerate: min |top coefficient| = {min:e} at {}", crate::render::point(&at)));
        }
    }
    let emitted = StructureFile::from_poisson(&hp);
    let text = emitted.to_string();
    let reparsed = StructureFile::parse(&text).map_err(|e| CliError::Math(format!("emitted file does not re-parse: {e}")))?;
    let same = reparsed.multivector("pi")?.map(|p| p.simplify()) == Some(hp.pi.simplify())
        && reparsed.multivector("Z")?.map(|z| z.simplify()) == Some(hp.z.simplify());
    out.records.push(Record::custom("emitted.reparse", same, "printed structure file parses back coefficient-wise"));
    if slice_roundtrip {
        let back = slice_induce(&hp, 0, &BigRational::from_integer(0.into()))?;
        out.records.push(Record::from_verdict("roundtrip.pi", &back.pi.sub(&j.pi)?.zero_verdict(&sc)));
        out.records.push(Record::from_verdict("roundtrip.e", &back.e.sub(&j.e)?.zero_verdict(&sc)));
        let ok = out.record("roundtrip.pi").is_some_and(|r| r.passed) && out.record("roundtrip.e").is_some_and(|r| r.passed);
        out.summary.push(format!("round-trip: {}", pass(ok)));
    }
    out.summary.push(format!("homogeneity constant: {}", hp.homogeneity_constant));
    out.summary.push(format!("poisson: {}", pass(out.record("poisson.pi_pi").is_some_and(|r| r.passed))));
    out.emitted = Some(text);
    out.exit_code = if out.passed() { 0 } else { 1 };
    Ok(out)
}

/// Parses a polynomial in `y` into its coefficient list.
pub fn parse_univariate(text: &str) -> Result<UniPoly, CliError> {
    let chart = Chart::new(["y"]).expect("static chart");
    let e = Expr::parse(text, &chart).map_err(|e| CliError::Input(format!("--f: {e}")))?;
    let p: Polynomial = e.to_polynomial(1).map_err(|_| CliError::Input(format!("--f: `{text}` is not a polynomial in y")))?;
    let degree = p.total_degree().unwrap_or(0) as usize;
    Ok(UniPoly::new((0..=degree).map(|k| p.coefficient(&[k as u32])).collect()))
}

pub fn family(f: &str, n: u32, m: u32, cfg: &RunConfig) -> Result<Output, CliError> {
    let spec = FamilySpec { f: parse_univariate(f)?, n, m };
    let (sol, j, report) = family_report(&spec, &cfg.sample_config())?;
    let mut out = Output::new("family");
    let y = Chart::new(["y"]).expect("static chart");
    out.value("g", uni_to_expr(&sol.g, 0).display(&y).to_string());
    out.value("h", uni_to_expr(&sol.h, 0).display(&y).to_string());
    out.absorb(&report);
    let ok = report.checks.iter().filter(|c| c.id.starts_with("jacobi.")).all(|c| c.verdict.is_zero());
    out.summary.push(format!("jacobi: {}", pass(ok)));
    out.emitted = Some(StructureFile::from_jacobi(&j).to_string());
    out.exit_code = if out.passed() { 0 } else { 1 };
    Ok(out)
}

pub fn examples(run_all: bool, name: Option<&str>, cfg: &RunConfig) -> Result<Output, CliError> {
    let entries = match name {
        Some(n) => vec![find_example(n).ok_or_else(|| CliError::Precondition(format!("unknown example `{n}`")))?],
        None => paper_examples(),
    };
    if name.is_none() && !run_all {
        let mut out = Output::new("examples");
        for e in &entries {
            out.value(e.name, e.summary);
        }
        return Ok(out);
    }
    let mut out = run_entries(&entries, cfg)?;
    if let [entry] = &entries[..] {
        out.value("summary", entry.summary);
        out.emitted = Some(StructureFile::from_jacobi(&entry_structure(entry)?).to_string());
    }
    Ok(out)
}

/// Runs every expectation of the given entries; exit 0 iff all match.
pub fn run_entries(entries: &[PaperExample], cfg: &RunConfig) -> Result<Output, CliError> {
    let sc = cfg.sample_config();
    let mut out = Output::new("examples");
    let mut mismatches = 0;
    for entry in entries {
        for o in run_entry(entry, &sc)? {
            if !o.matched() {
                mismatches += 1;
            }
            out.records.push(Record::custom(
                format!("{}: {}", entry.name, o.label),
                o.matched(),
                format!("expected {}, got {}", o.expected, o.actual),
            ));
        }
    }
    out.summary.push(format!("{} entries, {mismatches} mismatches", entries.len()));
    out.exit_code = if mismatches == 0 { 0 } else { 1 };
    Ok(out)
}
