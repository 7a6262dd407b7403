use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

const RESERVED: [&str; 3] = ["sin", "cos", "exp"];

/// Ordered, distinct coordinate names. Coordinates are addressed by index
/// everywhere else; the names only matter for parsing and printing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidChart("a chart needs at least one coordinate".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidChart(format!("`{name}` is not an identifier")));
            }
            if RESERVED.contains(&name.as_str()) {
                return Err(Error::InvalidChart(format!("`{name}` is a reserved function name")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidChart(format!("duplicate coordinate `{name}`")));
            }
        }
        Ok(Chart { names })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// New chart with a coordinate named after `base` in front. If `base` is
    /// taken, `base_1`, `base_2`, ... are tried in order.
    pub fn prepend_fresh(&self, base: &str) -> Chart {
        let mut candidate = base.to_string();
        let mut k = 1;
        while self.index_of(&candidate).is_some() {
            candidate = format!("{base}_{k}");
            k += 1;
        }
        let mut names = Vec::with_capacity(self.dim() + 1);
        names.push(candidate);
        names.extend(self.names.iter().cloned());
        Chart { names }
    }

    /// Chart with coordinate `index` removed. Fails for one-dimensional charts.
    pub fn without(&self, index: usize) -> Result<Chart> {
        if self.dim() <= 1 {
            return Err(Error::InvalidChart("cannot remove the only coordinate".into()));
        }
        let mut names = self.names.clone();
        names.remove(index);
        Ok(Chart { names })
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
