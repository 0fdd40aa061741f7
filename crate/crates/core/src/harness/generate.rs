//! Category-driven, seed-deterministic test-vector generation.
//!
//! Categories are operational: a vector belongs to a category iff the
//! exact oracle says the multiplication behaves that way. Every emitted
//! vector is checked against its category's predicate before it leaves
//! the generator.

use crate::decnum::{
    bits_to_hex, decimal_encode, hex_to_bits, DecimalValue, FormatName, FormatParams,
    RoundingMode,
};
use crate::error::{Error, Result};
use crate::oracle::exact_multiply_bits;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

/// Input behavior class of a generated operand pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    /// Exact in-range product within precision.
    #[serde(rename = "normal")]
    Normal,
    /// Inexact in-range product.
    #[serde(rename = "rounding")]
    Rounding,
    /// Post-round exponent above the format maximum.
    #[serde(rename = "overflow")]
    Overflow,
    /// Tiny and inexact result.
    #[serde(rename = "underflow")]
    Underflow,
    /// Exponent pulled in by coefficient padding.
    #[serde(rename = "clamping")]
    Clamping,
    /// NaN, infinity, or zero operand.
    #[serde(rename = "special")]
    Special,
}

pub const ALL_CATEGORIES: [Category; 6] = [
    Category::Normal,
    Category::Rounding,
    Category::Overflow,
    Category::Underflow,
    Category::Clamping,
    Category::Special,
];

impl Category {
    pub fn name(self) -> &'static str {
        match self {
            Category::Normal => "normal",
            Category::Rounding => "rounding",
            Category::Overflow => "overflow",
            Category::Underflow => "underflow",
            Category::Clamping => "clamping",
            Category::Special => "special",
        }
    }
}

impl std::fmt::Display for Category {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_CATEGORIES
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown category {s:?}")))
    }
}

/// What the benchmark report should express.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum OutputPattern {
    #[default]
    #[serde(rename = "cycles")]
    Cycles,
    /// Cycles divided by a clock frequency, reported as seconds.
    #[serde(rename = "time-proxy")]
    TimeProxy,
}

/// Generator parameters. The same config always yields the same stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub format: FormatName,
    pub count: u64,
    pub seed: u64,
    pub categories: Vec<Category>,
    pub repetitions: u64,
    pub output_pattern: OutputPattern,
}

impl GeneratorConfig {
    pub fn new(format: FormatName, count: u64, seed: u64) -> Self {
        GeneratorConfig {
            format,
            count,
            seed,
            categories: ALL_CATEGORIES.to_vec(),
            repetitions: 1,
            output_pattern: OutputPattern::Cycles,
        }
    }
}

/// One operand pair, externally rendered as fixed-width hex. External
/// conformance suites may attach expected bits and flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestVector {
    pub id: u64,
    pub category: Category,
    pub a: String,
    pub b: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_flags: Option<Vec<String>>,
}

impl TestVector {
    /// The operands' format, inferred from the hex width.
    pub fn format(&self) -> Result<&'static FormatParams> {
        let fmt = FormatParams::from_hex_len(self.a.len())?;
        if self.b.len() != self.a.len() {
            return Err(Error::Input(format!(
                "vector {}: operand widths disagree ({} vs {} chars)",
                self.id,
                self.a.len(),
                self.b.len()
            )));
        }
        Ok(fmt)
    }

    pub fn operand_bits(&self) -> Result<(u128, u128, &'static FormatParams)> {
        let fmt = self.format()?;
        Ok((hex_to_bits(&self.a, fmt)?, hex_to_bits(&self.b, fmt)?, fmt))
    }
}

/// Classifies an operand pair by what the exact oracle says the
/// multiplication does under the default rounding mode.
pub fn classify(a_bits: u128, b_bits: u128, fmt: &FormatParams) -> Category {
    let a = crate::decnum::decimal_decode(a_bits, fmt);
    let b = crate::decnum::decimal_decode(b_bits, fmt);
    if !a.is_finite() || !b.is_finite() || a.is_zero() || b.is_zero() {
        return Category::Special;
    }
    let result = exact_multiply_bits(a_bits, b_bits, fmt, RoundingMode::TiesEven);
    if result.flags.overflow {
        Category::Overflow
    } else if result.flags.underflow {
        Category::Underflow
    } else if result.flags.clamped {
        Category::Clamping
    } else if result.flags.inexact {
        Category::Rounding
    } else {
        Category::Normal
    }
}

/// Produces the deterministic vector stream, categories assigned
/// round-robin across the requested set and each vector verified against
/// its category predicate.
pub fn generate_vectors(cfg: &GeneratorConfig) -> Result<Vec<TestVector>> {
    if cfg.count == 0 {
        return Err(Error::Generation("count must be positive".into()));
    }
    if cfg.categories.is_empty() {
        return Err(Error::Generation("at least one category is required".into()));
    }
    let fmt = FormatParams::for_name(cfg.format);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut vectors = Vec::with_capacity(cfg.count as usize);
    for id in 0..cfg.count {
        let category = cfg.categories[(id % cfg.categories.len() as u64) as usize];
        let (a_bits, b_bits) = propose_checked(&mut rng, category, fmt)?;
        vectors.push(TestVector {
            id,
            category,
            a: bits_to_hex(a_bits, fmt),
            b: bits_to_hex(b_bits, fmt),
            expected: None,
            expected_flags: None,
        });
    }
    Ok(vectors)
}

const RETRY_BUDGET: u32 = 64;

fn propose_checked(
    rng: &mut ChaCha8Rng,
    category: Category,
    fmt: &FormatParams,
) -> Result<(u128, u128)> {
    for _ in 0..RETRY_BUDGET {
        let (a, b) = propose(rng, category, fmt);
        let a_bits = decimal_encode(&a, fmt).map_err(|e| Error::Generation(e.to_string()))?;
        let b_bits = decimal_encode(&b, fmt).map_err(|e| Error::Generation(e.to_string()))?;
        if classify(a_bits, b_bits, fmt) == category {
            // Operand order should not correlate with the recipe.
            return if rng.random() { Ok((a_bits, b_bits)) } else { Ok((b_bits, a_bits)) };
        }
    }
    Err(Error::Generation(format!(
        "could not satisfy category {category} for {} within {RETRY_BUDGET} attempts",
        fmt.name
    )))
}

fn rand_digits(rng: &mut ChaCha8Rng, len: usize) -> String {
    let mut s = String::with_capacity(len);
    s.push((b'1' + rng.random_range(0..9)) as char);
    for _ in 1..len {
        s.push((b'0' + rng.random_range(0..10)) as char);
    }
    s
}

/// Splits a target exponent sum into two in-range operand exponents.
fn split_exponent(rng: &mut ChaCha8Rng, sum: i32, fmt: &FormatParams) -> (i32, i32) {
    let lo = (sum - fmt.q_max).max(fmt.q_min);
    let hi = (sum - fmt.q_min).min(fmt.q_max);
    debug_assert!(lo <= hi);
    let qa = rng.random_range(lo..=hi);
    (qa, sum - qa)
}

fn propose(
    rng: &mut ChaCha8Rng,
    category: Category,
    fmt: &FormatParams,
) -> (DecimalValue, DecimalValue) {
    let p = fmt.p as usize;
    match category {
        Category::Normal => {
            let len_a = rng.random_range(1..=p - 1);
            let len_b = rng.random_range(1..=p - len_a);
            let sum = rng.random_range(fmt.q_min + fmt.p as i32..=fmt.q_max - fmt.p as i32);
            let (qa, qb) = split_exponent(rng, sum, fmt);
            (
                DecimalValue::finite(rng.random(), rand_digits(rng, len_a), qa),
                DecimalValue::finite(rng.random(), rand_digits(rng, len_b), qb),
            )
        }
        Category::Rounding => {
            let len_b = rng.random_range(2..=p);
            let sum = rng.random_range(fmt.q_min..=fmt.q_max - 2 * fmt.p as i32);
            let (qa, qb) = split_exponent(rng, sum, fmt);
            (
                DecimalValue::finite(rng.random(), rand_digits(rng, p), qa),
                DecimalValue::finite(rng.random(), rand_digits(rng, len_b), qb),
            )
        }
        Category::Overflow => {
            if rng.random() {
                // Full-width product whose rounded exponent lands too high.
                let sum = rng.random_range(fmt.q_max - fmt.p as i32 + 2..=2 * fmt.q_max);
                let (qa, qb) = split_exponent(rng, sum, fmt);
                (
                    DecimalValue::finite(rng.random(), rand_digits(rng, p), qa),
                    DecimalValue::finite(rng.random(), rand_digits(rng, p), qb),
                )
            } else {
                // Exact product too high for padding to absorb.
                let len_a = rng.random_range(1..=p / 2);
                let len_b = rng.random_range(1..=p / 2);
                let sum =
                    rng.random_range(fmt.q_max + fmt.p as i32 + 1..=fmt.q_max + 2 * fmt.p as i32);
                let (qa, qb) = split_exponent(rng, sum, fmt);
                (
                    DecimalValue::finite(rng.random(), rand_digits(rng, len_a), qa),
                    DecimalValue::finite(rng.random(), rand_digits(rng, len_b), qb),
                )
            }
        }
        Category::Underflow => {
            let len_a = rng.random_range(1..=6);
            let len_b = rng.random_range(1..=6);
            let cut = if rng.random() {
                // Loses some trailing digits at the subnormal boundary.
                rng.random_range(1..=(len_a + len_b - 1).max(1)) as i32
            } else {
                // Rounds all the way to zero.
                (len_a + len_b) as i32 + rng.random_range(1..=4)
            };
            let sum = fmt.q_min - cut;
            let (qa, qb) = split_exponent(rng, sum, fmt);
            (
                DecimalValue::finite(rng.random(), rand_digits(rng, len_a), qa),
                DecimalValue::finite(rng.random(), rand_digits(rng, len_b), qb),
            )
        }
        Category::Clamping => {
            let len_a = rng.random_range(1..=3);
            let len_b = rng.random_range(1..=3);
            let shift = rng.random_range(1..=(p - len_a - len_b - 1) as i32);
            let (qa, qb) = split_exponent(rng, fmt.q_max + shift, fmt);
            (
                DecimalValue::finite(rng.random(), rand_digits(rng, len_a), qa),
                DecimalValue::finite(rng.random(), rand_digits(rng, len_b), qb),
            )
        }
        Category::Special => {
            let finite = |rng: &mut ChaCha8Rng| {
                let len = rng.random_range(1..=p);
                let q = rng.random_range(fmt.q_min..=fmt.q_max);
                DecimalValue::finite(rng.random(), rand_digits(rng, len), q)
            };
            let special = |rng: &mut ChaCha8Rng| match rng.random_range(0..4) {
                0 => {
                    let len = rng.random_range(1..=6);
                    let payload = rand_digits(rng, len);
                    DecimalValue::qnan(rng.random(), payload)
                }
                1 => {
                    let len = rng.random_range(1..=6);
                    let payload = rand_digits(rng, len);
                    DecimalValue::snan(rng.random(), payload)
                }
                2 => DecimalValue::infinity(rng.random()),
                _ => DecimalValue::zero(rng.random(), rng.random_range(fmt.q_min..=fmt.q_max)),
            };
            let a = special(rng);
            let b = if rng.random() { special(rng) } else { finite(rng) };
            (a, b)
        }
    }
}

/// Writes vectors as one JSON document per line.
pub fn write_vectors(path: &std::path::Path, vectors: &[TestVector]) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    for vector in vectors {
        serde_json::to_writer(&mut out, vector)
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Reads a JSONL vector file.
pub fn read_vectors(path: &std::path::Path) -> Result<Vec<TestVector>> {
    let file = std::fs::File::open(path)
        .map_err(|e| Error::Input(format!("cannot open {}: {e}", path.display())))?;
    let mut vectors = Vec::new();
    for (lineno, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let vector: TestVector = serde_json::from_str(&line).map_err(|e| {
            Error::Input(format!("{} line {}: {e}", path.display(), lineno + 1))
        })?;
        vectors.push(vector);
    }
    Ok(vectors)
}
