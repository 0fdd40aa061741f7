//! Test-vector generator, benchmark runner, correctness verifier, and
//! report emitter.

mod generate;
mod report;
mod run;
mod verify;

pub use generate::{
    classify, generate_vectors, read_vectors, write_vectors, Category, GeneratorConfig,
    OutputPattern, TestVector, ALL_CATEGORIES,
};
pub use report::{emit_report, render_csv, render_json, ReportFormat, ReportRow};
pub use run::{run_benchmark, BenchmarkResult, VectorRecord};
pub use verify::{verify, verify_file, Mismatch};
