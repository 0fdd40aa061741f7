//! Deterministic, cycle-accounted simulator and library for
//! software-hardware co-designed decimal floating-point multiplication.
//!
//! The crate models a small decimal accelerator behind a custom-
//! instruction interface, three end-to-end multiplication modes built on
//! it (software-only, co-design, and dummy-stub estimation), and a
//! category-driven test-vector generator with a benchmark harness. All
//! cycle counts come from a configurable cost table, so identical inputs
//! always produce identical reports.

pub mod accel;
pub mod bcd;
pub mod decnum;
pub mod error;
pub mod harness;
pub mod oracle;
pub mod pipelines;
pub mod rocc;

pub use error::{Error, Result};
