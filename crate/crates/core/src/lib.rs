//! Symbolic and numeric toolkit for Jacobi, Poisson and contact structures
//! on coordinate charts.
//!
//! Everything here is pure computation over [`alloc`]: scalar expressions
//! with exact rational constants, skew multivector fields and differential
//! forms, the Schouten bracket, and the structure, morphism and family
//! checks built on top of them. File formats and the command line live in
//! the `jacobi-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod chart;
mod error;
pub mod expr;
pub mod families;
pub mod jacobi;
pub mod linalg;
pub mod morphism;
pub mod multivector;
pub mod report;
pub mod zero;

pub use crate::chart::Chart;
pub use crate::error::Error;
pub use crate::expr::{Expr, Polynomial, UniPoly};
pub use crate::multivector::{DiffForm, MultiVectorField, VolumeForm};
pub use crate::report::{CheckRecord, LocusFinding, StructureReport};
pub use crate::zero::{is_zero, SampleConfig, ZeroVerdict};

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub use num_rational::BigRational;
