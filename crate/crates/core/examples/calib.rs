use decmul_core::accel::CostTable;
use decmul_core::decnum::{FormatName, RoundingMode};
use decmul_core::harness::{generate_vectors, run_benchmark, GeneratorConfig};
use decmul_core::pipelines::ALL_MODES;

fn main() {
    let cfg = GeneratorConfig::new(FormatName::Decimal64, 8000, 2024);
    let vectors = generate_vectors(&cfg).unwrap();
    let costs = CostTable::default();
    let result = run_benchmark(&vectors, &ALL_MODES, &costs, 1, RoundingMode::TiesEven).unwrap();
    for row in &result.rows {
        println!(
            "{:<9} count={} avg_sw={:>10.1} avg_hw={:>7.1} avg_total={:>10.1} speedup={:?}",
            row.mode.name(), row.count, row.avg_sw(), row.avg_hw(), row.avg_total(),
            row.speedup_f64()
        );
    }
    // per-category breakdown for software/method1
    use std::collections::BTreeMap;
    let mut per: BTreeMap<(String, String), (u64, u64)> = BTreeMap::new();
    for r in &result.records {
        if r.error.is_none() {
            let e = per.entry((r.category.to_string(), r.mode.to_string())).or_default();
            e.0 += 1;
            e.1 += r.total;
        }
    }
    for ((cat, mode), (n, tot)) in &per {
        println!("{cat:<10} {mode:<9} n={n:<5} avg={:.1}", *tot as f64 / *n as f64);
    }
}
