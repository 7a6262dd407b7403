//! Machine-renderable check results.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::zero::ZeroVerdict;

/// Obstruction to proper resolutions from a codimension-1 singular locus.
pub const CITE_PROPER: &str =
    "Thm: Jacobi manifolds contact on a dense open set whose singular locus contains a codimension-1 submanifold admit no proper contact resolution";
/// Real-analytic counterpart for semi-connected resolutions.
pub const CITE_SEMI_CONNECTED: &str =
    "Thm: real analytic Jacobi manifolds contact on a dense open set whose singular locus contains a codimension-1 submanifold admit no semi-connected contact resolution";
/// Euler-type Reeb field with odd weight sum forces a sign-changing defect.
pub const CITE_EULER: &str =
    "Prop: a Jacobi manifold contact on a dense open set with an Euler-type vector field of odd weight sum admits no proper or semi-connected contact resolution";
/// The polynomial family has no proper or semi-connected resolution unless it is contact.
pub const CITE_FAMILY: &str =
    "Cor: the polynomial family admits no proper or semi-connected contact resolution unless n = 1 and f is constant";

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub id: String,
    pub verdict: ZeroVerdict,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LocusFinding {
    /// The contact defect is the zero expression.
    IdenticallyZero,
    /// A simple zero of the defect along a probe segment.
    Codim1Witness {
        point: Vec<f64>,
        /// `|P|` at the point.
        defect: f64,
        /// Finite-difference gradient norm of `P` itself.
        gradient: f64,
        /// Gradient used for the decision: for polynomial defects the
        /// directional derivative of the square-free part along the probe.
        reduced_gradient: f64,
    },
    NoSignChange {
        probes: usize,
        min_abs: f64,
        at: Vec<f64>,
    },
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct StructureReport {
    pub checks: Vec<CheckRecord>,
    pub locus: Vec<LocusFinding>,
    pub values: Vec<(String, String)>,
    pub notes: Vec<String>,
    pub citations: Vec<String>,
}

impl StructureReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, id: impl Into<String>, verdict: ZeroVerdict) {
        self.checks.push(CheckRecord { id: id.into(), verdict });
    }

    pub fn value(&mut self, key: impl Into<String>, value: impl ToString) {
        self.values.push((key.into(), value.to_string()));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn cite(&mut self, citation: &str) {
        if !self.citations.iter().any(|c| c == citation) {
            self.citations.push(citation.into());
        }
    }

    /// Every identity verdict is a zero verdict.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict.is_zero())
    }

    pub fn get_check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn get_value(&self, key: &str) -> Option<&str> {
        self.values.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn witness(&self) -> Option<&LocusFinding> {
        self.locus.iter().find(|l| matches!(l, LocusFinding::Codim1Witness { .. }))
    }

    pub fn merge(&mut self, other: StructureReport) {
        self.checks.extend(other.checks);
        self.locus.extend(other.locus);
        self.values.extend(other.values);
        self.notes.extend(other.notes);
        for c in other.citations {
            self.cite(&c);
        }
    }
}
