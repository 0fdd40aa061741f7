//! Correctness verification of the authoritative pipelines against the
//! exact oracle, plus ingest of external conformance vectors.

use super::generate::{read_vectors, TestVector};
use crate::accel::{AcceleratorState, CostTable};
use crate::decnum::{bits_to_hex, hex_to_bits, Flags, FormatName, RoundingMode};
use crate::error::Result;
use crate::oracle::exact_multiply_bits;
use crate::pipelines::{multiply_codesign_method1, multiply_software};

/// One disagreement found by the verifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub id: u64,
    pub detail: String,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "vector {}: {}", self.id, self.detail)
    }
}

/// Compares software and co-design results (bits and flags) against the
/// exact oracle for every vector, and against the vector's own expected
/// values when it carries any. An empty list is a pass.
pub fn verify(vectors: &[TestVector], rounding: RoundingMode) -> Result<Vec<Mismatch>> {
    let costs = CostTable::default();
    let mut accel = AcceleratorState::new();
    let mut mismatches = Vec::new();

    for vector in vectors {
        let (a, b, fmt) = match vector.operand_bits() {
            Ok(parts) => parts,
            Err(e) => {
                mismatches.push(Mismatch { id: vector.id, detail: e.to_string() });
                continue;
            }
        };
        let reference = exact_multiply_bits(a, b, fmt, rounding);

        match multiply_software(a, b, fmt, rounding, &costs) {
            Ok((outcome, _)) => {
                compare(
                    &mut mismatches,
                    vector.id,
                    "software vs oracle",
                    outcome.result_bits,
                    outcome.flags,
                    reference.bits,
                    reference.flags,
                    fmt,
                );
            }
            Err(e) => {
                mismatches.push(Mismatch { id: vector.id, detail: format!("software: {e}") })
            }
        }

        // The co-design datapath only carries decimal64.
        if fmt.name == FormatName::Decimal64 {
            match multiply_codesign_method1(a, b, fmt, rounding, &mut accel, &costs) {
                Ok((outcome, _, _)) => {
                    compare(
                        &mut mismatches,
                        vector.id,
                        "method1 vs oracle",
                        outcome.result_bits,
                        outcome.flags,
                        reference.bits,
                        reference.flags,
                        fmt,
                    );
                }
                Err(e) => {
                    mismatches.push(Mismatch { id: vector.id, detail: format!("method1: {e}") })
                }
            }
        }

        if let Some(expected_hex) = &vector.expected {
            match hex_to_bits(expected_hex, fmt) {
                Ok(expected_bits) => {
                    if expected_bits != reference.bits {
                        mismatches.push(Mismatch {
                            id: vector.id,
                            detail: format!(
                                "expected bits {} but the oracle computes {}",
                                expected_hex,
                                bits_to_hex(reference.bits, fmt)
                            ),
                        });
                    }
                }
                Err(e) => mismatches.push(Mismatch { id: vector.id, detail: e.to_string() }),
            }
        }
        if let Some(expected_flags) = &vector.expected_flags {
            match Flags::from_names(expected_flags) {
                Ok(expected) => {
                    if expected != reference.flags {
                        mismatches.push(Mismatch {
                            id: vector.id,
                            detail: format!(
                                "expected flags [{}] but the oracle raises [{}]",
                                expected.set_names().join(","),
                                reference.flags.set_names().join(",")
                            ),
                        });
                    }
                }
                Err(e) => mismatches.push(Mismatch { id: vector.id, detail: e.to_string() }),
            }
        }
    }
    Ok(mismatches)
}

/// Verifies a vector file from disk.
pub fn verify_file(path: &std::path::Path, rounding: RoundingMode) -> Result<Vec<Mismatch>> {
    verify(&read_vectors(path)?, rounding)
}

#[allow(clippy::too_many_arguments)]
fn compare(
    mismatches: &mut Vec<Mismatch>,
    id: u64,
    label: &str,
    got_bits: u128,
    got_flags: Flags,
    want_bits: u128,
    want_flags: Flags,
    fmt: &crate::decnum::FormatParams,
) {
    if got_bits != want_bits {
        mismatches.push(Mismatch {
            id,
            detail: format!(
                "{label}: bits {} != {}",
                bits_to_hex(got_bits, fmt),
                bits_to_hex(want_bits, fmt)
            ),
        });
    }
    if got_flags != want_flags {
        mismatches.push(Mismatch {
            id,
            detail: format!("{label}: flags {got_flags} != {want_flags}"),
        });
    }
}
