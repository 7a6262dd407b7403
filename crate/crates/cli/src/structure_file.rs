//! Line-oriented structure files.
//!
//! ```text
//! # comment
//! chart x y z
//! pi deg 2
//!   (x y) = x^4 + y^4
//!   (z x) = x
//! E deg 1
//!   (z) = 2
//! assert proper false
//! note free text
//! ```
//!
//! `<name> form <k>` opens a block of a differential form instead of a
//! multivector. Index tuples may come in any order; the permutation sign is
//! applied.

use std::fmt;

use jacobi_core::jacobi::{contact_form_to_jacobi, ContactForm, HomogeneousPoisson, JacobiStructure};
use jacobi_core::morphism::ResolutionFlags;
use jacobi_core::{Chart, DiffForm, Error as CoreError, Expr, MultiVectorField, SampleConfig};

use crate::error::{CliError, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Multivector,
    Form,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub name: String,
    pub kind: BlockKind,
    pub degree: usize,
    pub entries: Vec<(Vec<usize>, Expr)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureFile {
    pub chart: Chart,
    pub blocks: Vec<Block>,
    pub assertions: Vec<(String, bool)>,
    pub notes: Vec<String>,
}

const FLAGS: [&str; 3] = ["surjective", "proper", "semi_connected"];

/// Splits off a `#` comment and reports the column of the first
/// non-blank character.
fn content(line: &str) -> (&str, usize) {
    let line = line.split('#').next().unwrap_or("");
    let trimmed = line.trim_start();
    let col = line.len() - trimmed.len() + 1;
    (trimmed.trim_end(), col)
}

pub(crate) fn parse_expr(text: &str, chart: &Chart, line: usize, column: usize) -> Result<Expr, ParseError> {
    Expr::parse(text, chart).map_err(|e| match e {
        CoreError::Syntax { position, message } => ParseError::new(line, column + position, message),
        CoreError::UnknownIdentifier { name, position } => {
            ParseError::new(line, column + position, format!("unknown identifier `{name}`"))
        }
        other => ParseError::new(line, column, other.to_string()),
    })
}

pub(crate) fn parse_chart(names: &str, line: usize, column: usize) -> Result<Chart, ParseError> {
    Chart::new(names.split_whitespace()).map_err(|e| ParseError::new(line, column, e.to_string()))
}

impl StructureFile {
    pub fn new(chart: Chart) -> Self {
        StructureFile { chart, blocks: Vec::new(), assertions: Vec::new(), notes: Vec::new() }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut file: Option<StructureFile> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let (body, col) = content(raw);
            if body.is_empty() {
                continue;
            }
            let (head, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            let rest_col = col + body.len() - rest.trim_start().len();
            let rest = rest.trim_start();
            if head == "chart" {
                if file.is_some() {
                    return Err(ParseError::new(line, col, "second chart declaration"));
                }
                file = Some(StructureFile::new(parse_chart(rest, line, rest_col)?));
                continue;
            }
            let Some(f) = file.as_mut() else {
                return Err(ParseError::new(line, col, "expected `chart <names>` first"));
            };
            if body.starts_with('(') {
                f.parse_entry(body, line, col)?;
            } else if head == "assert" {
                let words: Vec<&str> = rest.split_whitespace().collect();
                let [flag, value] = words[..] else {
                    return Err(ParseError::new(line, rest_col, "expected `assert <flag> <true|false>`"));
                };
                if !FLAGS.contains(&flag) {
                    return Err(ParseError::new(line, rest_col, format!("unknown flag `{flag}`")));
                }
                let value = match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(ParseError::new(line, rest_col, format!("expected true or false, got `{value}`"))),
                };
                f.assertions.retain(|(k, _)| k != flag);
                f.assertions.push((flag.to_string(), value));
            } else if head == "note" {
                f.notes.push(rest.to_string());
            } else {
                f.parse_header(head, rest, line, col)?;
            }
        }
        file.ok_or_else(|| ParseError::new(text.lines().count().max(1), 1, "missing chart declaration"))
    }

    fn parse_header(&mut self, name: &str, rest: &str, line: usize, col: usize) -> Result<(), ParseError> {
        let words: Vec<&str> = rest.split_whitespace().collect();
        let (kind, degree) = match words[..] {
            ["deg", k] => (BlockKind::Multivector, k),
            ["form", k] => (BlockKind::Form, k),
            _ => return Err(ParseError::new(line, col, format!("expected `{name} deg <k>` or `{name} form <k>`"))),
        };
        let degree: usize =
            degree.parse().map_err(|_| ParseError::new(line, col, format!("invalid degree `{degree}`")))?;
        if degree > self.chart.dim() {
            return Err(ParseError::new(line, col, format!("degree {degree} exceeds the chart dimension")));
        }
        if self.blocks.iter().any(|b| b.name == name) {
            return Err(ParseError::new(line, col, format!("duplicate block `{name}`")));
        }
        self.blocks.push(Block { name: name.to_string(), kind, degree, entries: Vec::new() });
        Ok(())
    }

    fn parse_entry(&mut self, body: &str, line: usize, col: usize) -> Result<(), ParseError> {
        let Some(block) = self.blocks.last_mut() else {
            return Err(ParseError::new(line, col, "component outside a block"));
        };
        let Some(close) = body.find(')') else {
            return Err(ParseError::new(line, col, "unclosed index tuple"));
        };
        let mut indices = Vec::new();
        for name in body[1..close].split_whitespace() {
            let i = self
                .chart
                .index_of(name)
                .ok_or_else(|| ParseError::new(line, col, format!("unknown coordinate `{name}`")))?;
            if indices.contains(&i) {
                return Err(ParseError::new(line, col, format!("repeated coordinate `{name}`")));
            }
            indices.push(i);
        }
        if indices.len() != block.degree {
            return Err(ParseError::new(
                line,
                col,
                format!("block `{}` has degree {}, got {} indices", block.name, block.degree, indices.len()),
            ));
        }
        let after = &body[close + 1..];
        let Some(eq) = after.find('=') else {
            return Err(ParseError::new(line, col + close + 1, "expected `=`"));
        };
        if !after[..eq].trim().is_empty() {
            return Err(ParseError::new(line, col + close + 1, "expected `=`"));
        }
        let expr_text = &after[eq + 1..];
        let expr_col = col + close + 1 + eq + 1 + (expr_text.len() - expr_text.trim_start().len());
        let expr = parse_expr(expr_text.trim(), &self.chart, line, expr_col)?;
        block.entries.push((indices, expr));
        Ok(())
    }

    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }

    pub fn multivector(&self, name: &str) -> Result<Option<MultiVectorField>, CliError> {
        match self.block(name) {
            Some(b) if b.kind == BlockKind::Multivector => {
                Ok(Some(MultiVectorField::from_components(&self.chart, b.degree, b.entries.iter().cloned())?))
            }
            Some(_) => Err(CliError::Precondition(format!("block `{name}` is a form, expected a multivector"))),
            None => Ok(None),
        }
    }

    pub fn form(&self, name: &str) -> Result<Option<DiffForm>, CliError> {
        match self.block(name) {
            Some(b) if b.kind == BlockKind::Form => {
                Ok(Some(DiffForm::from_components(&self.chart, b.degree, b.entries.iter().cloned())?))
            }
            Some(_) => Err(CliError::Precondition(format!("block `{name}` is a multivector, expected a form"))),
            None => Ok(None),
        }
    }

    /// `pi` (degree 2) and `E` (degree 1), or a contact form `alpha`
    /// (degree 1 form) converted to its Jacobi structure.
    pub fn jacobi(&self, cfg: &SampleConfig) -> Result<JacobiStructure, CliError> {
        let pi = self.multivector("pi")?;
        let e = self.multivector("E")?;
        match (pi, e) {
            (Some(pi), Some(e)) => {
                if pi.degree() != 2 || e.degree() != 1 {
                    return Err(CliError::Precondition("`pi` must have degree 2 and `E` degree 1".into()));
                }
                Ok(JacobiStructure::new(pi, e)?)
            }
            (None, None) => match self.form("alpha")? {
                Some(alpha) if alpha.degree() == 1 => Ok(contact_form_to_jacobi(&ContactForm::new(alpha, cfg)?)?),
                Some(_) => Err(CliError::Precondition("`alpha` must be a 1-form".into())),
                None => Err(CliError::Precondition("expected blocks `pi` and `E`, or a form `alpha`".into())),
            },
            _ => Err(CliError::Precondition("blocks `pi` and `E` must both be present".into())),
        }
    }

    pub fn flags(&self) -> ResolutionFlags {
        let get = |k: &str| self.assertions.iter().any(|(f, v)| f == k && *v);
        ResolutionFlags { surjective: get("surjective"), proper: get("proper"), semi_connected: get("semi_connected") }
    }

    pub fn push_multivector(&mut self, name: &str, field: &MultiVectorField) {
        let chart = field.chart();
        let entries = field
            .components()
            .map(|(k, c)| {
                // Whichever of the stored and canonical forms prints shorter.
                let s = c.simplify();
                let pick = if s.display(chart).to_string().len() <= c.display(chart).to_string().len() { s } else { c.clone() };
                (k.clone(), pick)
            })
            .collect();
        self.blocks.push(Block { name: name.into(), kind: BlockKind::Multivector, degree: field.degree(), entries });
    }

    pub fn from_jacobi(j: &JacobiStructure) -> Self {
        let mut f = StructureFile::new(j.chart().clone());
        f.push_multivector("pi", &j.pi);
        f.push_multivector("E", &j.e);
        f
    }

    pub fn from_poisson(hp: &HomogeneousPoisson) -> Self {
        let mut f = StructureFile::new(hp.chart().clone());
        f.push_multivector("pi", &hp.pi);
        f.push_multivector("Z", &hp.z);
        f.notes.push(format!("L_Z pi = ({}) pi", hp.homogeneity_constant));
        f
    }
}

impl fmt::Display for StructureFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "chart {}", self.chart.names().join(" "))?;
        for b in &self.blocks {
            let word = match b.kind {
                BlockKind::Multivector => "deg",
                BlockKind::Form => "form",
            };
            writeln!(f, "{} {word} {}", b.name, b.degree)?;
            for (idx, c) in &b.entries {
                let names: Vec<&str> = idx.iter().map(|i| self.chart.name(*i)).collect();
                writeln!(f, "  ({}) = {}", names.join(" "), c.display(&self.chart))?;
            }
        }
        for (k, v) in &self.assertions {
            writeln!(f, "assert {k} {v}")?;
        }
        for n in &self.notes {
            writeln!(f, "note {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LEHBEL: &str = "\
# polynomial structure
chart x y z
pi deg 2
  (x y) = x^4 + y^4
  (z x) = x   # sign from the order
  (y z) = -y
E deg 1
  (z) = 2
assert proper false
";

    #[test]
    fn parses_blocks_and_signs() {
        let f = StructureFile::parse(LEHBEL).unwrap();
        let j = f.jacobi(&SampleConfig::default()).unwrap();
        let c = j.chart().clone();
        assert_eq!(j.pi.coefficient(&[0, 2]).display(&c).to_string(), "-x");
        assert_eq!(j.e.coefficient(&[2]).display(&c).to_string(), "2");
        assert_eq!(f.assertions, vec![("proper".to_string(), false)]);
    }

    #[test]
    fn printing_round_trips() {
        let f = StructureFile::parse(LEHBEL).unwrap();
        let j = f.jacobi(&SampleConfig::default()).unwrap().simplify();
        let text = StructureFile::from_jacobi(&j).to_string();
        let back = StructureFile::parse(&text).unwrap().jacobi(&SampleConfig::default()).unwrap().simplify();
        assert_eq!(back, j);
    }

    #[test]
    fn errors_carry_positions() {
        let err = StructureFile::parse("chart x y\npi deg 2\n  (x y) = x + * y\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.column >= 11, "{err}");
        let err = StructureFile::parse("pi deg 2\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
        let err = StructureFile::parse("chart x y\npi deg 2\n  (x) = 1\n").unwrap_err();
        assert!(err.message.contains("degree 2"));
        let err = StructureFile::parse("chart x y\npi deg 2\n  (x w) = 1\n").unwrap_err();
        assert!(err.message.contains("`w`"));
        let err = StructureFile::parse("chart x y\nassert lovely true\n").unwrap_err();
        assert!(err.message.contains("lovely"));
    }

    #[test]
    fn unknown_identifier_column() {
        let err = StructureFile::parse("chart x y\npi deg 2\n(x y) = x*q\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 11));
    }

    #[test]
    fn missing_blocks_are_preconditions() {
        let f = StructureFile::parse("chart x y z\npi deg 2\n  (x y) = 1\n").unwrap();
        assert!(matches!(f.jacobi(&SampleConfig::default()), Err(CliError::Precondition(_))));
    }
}
