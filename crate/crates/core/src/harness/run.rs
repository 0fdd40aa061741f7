//! The benchmark runner: every vector under every requested mode, with
//! exact aggregate bookkeeping.

use super::generate::TestVector;
use super::report::ReportRow;
use crate::accel::{AcceleratorState, CostTable};
use crate::decnum::RoundingMode;
use crate::error::{Error, Result};
use crate::harness::Category;
use crate::pipelines::{
    multiply_codesign_method1, multiply_dummy, multiply_software, CycleBreakdown, Mode, ALL_MODES,
};
use serde::Serialize;

/// Cycle figures of one vector under one mode, or the error that kept it
/// out of the averages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VectorRecord {
    pub id: u64,
    pub category: Category,
    pub mode: Mode,
    pub sw_cycles: u64,
    pub hw_cycles: u64,
    pub total: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Aggregate rows plus the per-vector records behind them.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkResult {
    pub rows: Vec<ReportRow>,
    pub records: Vec<VectorRecord>,
}

/// Runs every vector under every mode. Cycle figures scale linearly with
/// the repetition count; the model is deterministic, so repeating a
/// vector r times multiplies its figures by exactly r. Pipeline errors
/// are recorded per vector and excluded from the averages.
pub fn run_benchmark(
    vectors: &[TestVector],
    modes: &[Mode],
    costs: &CostTable,
    repetitions: u64,
    rounding: RoundingMode,
) -> Result<BenchmarkResult> {
    if repetitions == 0 {
        return Err(Error::Input("repetitions must be positive".into()));
    }
    // Canonical row order regardless of how the modes were asked for.
    let modes: Vec<Mode> = ALL_MODES.iter().copied().filter(|m| modes.contains(m)).collect();
    if modes.is_empty() {
        return Err(Error::Input("no modes requested".into()));
    }

    let mut records = Vec::with_capacity(vectors.len() * modes.len());
    let mut accel = AcceleratorState::new();
    for mode in &modes {
        for vector in vectors {
            let outcome = run_one(vector, *mode, costs, rounding, &mut accel);
            let record = match outcome {
                Ok(cycles) => VectorRecord {
                    id: vector.id,
                    category: vector.category,
                    mode: *mode,
                    sw_cycles: cycles.sw_cycles * repetitions,
                    hw_cycles: cycles.hw_cycles * repetitions,
                    total: cycles.total * repetitions,
                    error: None,
                },
                Err(e) => VectorRecord {
                    id: vector.id,
                    category: vector.category,
                    mode: *mode,
                    sw_cycles: 0,
                    hw_cycles: 0,
                    total: 0,
                    error: Some(e.to_string()),
                },
            };
            records.push(record);
        }
    }

    let mut rows = Vec::with_capacity(modes.len());
    let software_totals = mode_totals(&records, Mode::Software);
    for mode in &modes {
        let (count, sw_sum, hw_sum, total_sum) = sum_mode(&records, *mode);
        let speedup = software_totals.and_then(|(sw_count, sw_total)| {
            (total_sum > 0).then_some((sw_total * count as u128, total_sum * sw_count as u128))
        });
        rows.push(ReportRow { mode: *mode, count, sw_sum, hw_sum, total_sum, speedup });
    }
    Ok(BenchmarkResult { rows, records })
}

fn run_one(
    vector: &TestVector,
    mode: Mode,
    costs: &CostTable,
    rounding: RoundingMode,
    accel: &mut AcceleratorState,
) -> crate::Result<CycleBreakdown> {
    let (a, b, fmt) = vector.operand_bits()?;
    match mode {
        Mode::Software => multiply_software(a, b, fmt, rounding, costs).map(|(_, c)| c),
        Mode::Method1 => {
            multiply_codesign_method1(a, b, fmt, rounding, accel, costs).map(|(_, c, _)| c)
        }
        Mode::Dummy => multiply_dummy(a, b, fmt, rounding, costs).map(|(_, c)| c),
    }
}

fn sum_mode(records: &[VectorRecord], mode: Mode) -> (u64, u128, u128, u128) {
    let mut count = 0u64;
    let (mut sw, mut hw, mut total) = (0u128, 0u128, 0u128);
    for r in records.iter().filter(|r| r.mode == mode && r.error.is_none()) {
        count += 1;
        sw += r.sw_cycles as u128;
        hw += r.hw_cycles as u128;
        total += r.total as u128;
    }
    (count, sw, hw, total)
}

fn mode_totals(records: &[VectorRecord], mode: Mode) -> Option<(u64, u128)> {
    let (count, _, _, total) = sum_mode(records, mode);
    (count > 0).then_some((count, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decnum::FormatName;
    use crate::harness::{generate_vectors, GeneratorConfig};

    fn vectors(count: u64) -> Vec<TestVector> {
        generate_vectors(&GeneratorConfig::new(FormatName::Decimal64, count, 7)).unwrap()
    }

    #[test]
    fn single_software_row_has_unit_speedup() {
        let result = run_benchmark(
            &vectors(24),
            &[Mode::Software],
            &CostTable::default(),
            1,
            RoundingMode::TiesEven,
        )
        .unwrap();
        assert_eq!(result.rows.len(), 1);
        let row = &result.rows[0];
        assert_eq!(row.mode, Mode::Software);
        assert_eq!(row.count, 24);
        assert_eq!(row.speedup_f64(), Some(1.0));
    }

    #[test]
    fn rows_follow_canonical_mode_order() {
        let result = run_benchmark(
            &vectors(12),
            &[Mode::Dummy, Mode::Software, Mode::Method1],
            &CostTable::default(),
            1,
            RoundingMode::TiesEven,
        )
        .unwrap();
        let order: Vec<Mode> = result.rows.iter().map(|r| r.mode).collect();
        assert_eq!(order, vec![Mode::Software, Mode::Method1, Mode::Dummy]);
    }

    #[test]
    fn repetitions_scale_linearly() {
        let vectors = vectors(12);
        let costs = CostTable::default();
        let once =
            run_benchmark(&vectors, &[Mode::Software], &costs, 1, RoundingMode::TiesEven).unwrap();
        let thrice =
            run_benchmark(&vectors, &[Mode::Software], &costs, 3, RoundingMode::TiesEven).unwrap();
        assert_eq!(once.rows[0].total_sum * 3, thrice.rows[0].total_sum);
        for (a, b) in once.records.iter().zip(&thrice.records) {
            assert_eq!(a.total * 3, b.total);
        }
    }

    #[test]
    fn speedup_identity_is_exact() {
        let result = run_benchmark(
            &vectors(30),
            &ALL_MODES,
            &CostTable::default(),
            1,
            RoundingMode::TiesEven,
        )
        .unwrap();
        let software = &result.rows[0];
        for row in &result.rows {
            // speedup * avg_total == software avg_total, in exact rationals:
            // (sw_total * n_mode) / (mode_total * n_sw) * (mode_total / n_mode)
            // == sw_total / n_sw.
            let (num, den) = row.speedup.unwrap();
            assert_eq!(
                num * row.total_sum * software.count as u128,
                den * software.total_sum * row.count as u128
            );
        }
    }

    #[test]
    fn decimal128_method1_errors_are_recorded_not_fatal() {
        let cfg = GeneratorConfig::new(FormatName::Decimal128, 6, 3);
        let vectors = generate_vectors(&cfg).unwrap();
        let result = run_benchmark(
            &vectors,
            &[Mode::Software, Mode::Method1],
            &CostTable::default(),
            1,
            RoundingMode::TiesEven,
        )
        .unwrap();
        let method1_row = &result.rows[1];
        assert_eq!(method1_row.count, 0);
        let errors: Vec<_> = result
            .records
            .iter()
            .filter(|r| r.mode == Mode::Method1 && r.error.is_some())
            .collect();
        assert_eq!(errors.len(), 6);
    }
}
