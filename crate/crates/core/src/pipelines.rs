//! The three end-to-end decimal multiplication executions the harness
//! compares: a software-only baseline (base-billion limb arithmetic), the
//! co-design flow driving the accelerator's BCD adder, and the co-design
//! flow with the hardware calls replaced by fixed-return dummy stubs.
//!
//! All three share the IEEE front end (unpack, special handling, sign and
//! exponent) and back end (single rounding pass, exponent limits, pack),
//! so the two authoritative modes produce bit-identical results. Software
//! work is charged per named primitive through the cost table; hardware
//! work is charged through the accelerator's command trace.

use crate::accel::{AcceleratorState, CommandTrace, CostTable, SwPrimitive, TraceEntry};
use crate::bcd::{BcdWord, WideBcd, WORD_DIGITS};
use crate::decnum::{
    apply_exponent_limits, coefficient_to_bcd, decimal_decode, decimal_encode, round_at,
    strip_leading_zeros, DecimalValue, Flags, FormatName, FormatParams, NumberClass, RoundingMode,
};
use crate::error::{Error, Result};
use crate::rocc::{Command, Funct};
use serde::{Deserialize, Serialize};

/// Execution mode of one multiplication run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "software")]
    Software,
    #[serde(rename = "method1")]
    Method1,
    #[serde(rename = "dummy")]
    Dummy,
}

pub const ALL_MODES: [Mode; 3] = [Mode::Software, Mode::Method1, Mode::Dummy];

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Software => "software",
            Mode::Method1 => "method1",
            Mode::Dummy => "dummy",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "software" => Ok(Mode::Software),
            "method1" => Ok(Mode::Method1),
            "dummy" => Ok(Mode::Dummy),
            other => Err(Error::Input(format!("unknown mode {other:?}"))),
        }
    }
}

/// Result bits and status flags of one multiplication.
///
/// Dummy-mode outcomes are never numerically valid; that mode exists only
/// for cycle comparison and its callers must not treat the bits as a
/// result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplyOutcome {
    pub result_bits: u128,
    pub flags: Flags,
}

/// Per-mode cycle split of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleBreakdown {
    pub sw_cycles: u64,
    pub hw_cycles: u64,
    pub total: u64,
    pub mode: Mode,
}

impl CycleBreakdown {
    fn new(sw_cycles: u64, hw_cycles: u64, mode: Mode) -> Self {
        debug_assert!(mode == Mode::Method1 || hw_cycles == 0);
        CycleBreakdown { sw_cycles, hw_cycles, total: sw_cycles + hw_cycles, mode }
    }
}

/// Accumulates software cycles, one named primitive at a time.
struct SwMeter<'a> {
    costs: &'a CostTable,
    cycles: u64,
}

impl<'a> SwMeter<'a> {
    fn new(costs: &'a CostTable) -> Self {
        SwMeter { costs, cycles: 0 }
    }

    fn charge(&mut self, prim: SwPrimitive, count: u64) {
        self.cycles += count * self.costs.sw_cycles(prim);
    }
}

/// Applies the special-value rules. Returns the finished result when
/// either operand is non-finite, None when both are finite and the
/// numeric path must continue.
pub fn handle_specials(a: &DecimalValue, b: &DecimalValue) -> Option<(DecimalValue, Flags)> {
    let mut flags = Flags::none();
    if a.is_nan() || b.is_nan() {
        flags.invalid = a.class == NumberClass::SNan || b.class == NumberClass::SNan;
        let source = if a.is_nan() { a } else { b };
        return Some((DecimalValue::qnan(source.sign, source.payload.clone()), flags));
    }
    if a.is_infinite() || b.is_infinite() {
        if (a.is_infinite() && b.is_zero()) || (b.is_infinite() && a.is_zero()) {
            flags.invalid = true;
            return Some((DecimalValue::qnan(false, ""), flags));
        }
        return Some((DecimalValue::infinity(a.sign ^ b.sign), flags));
    }
    None
}

/// Sign by XOR, initial exponent by addition.
pub fn compute_sign_exponent(a: &DecimalValue, b: &DecimalValue) -> (bool, i32) {
    debug_assert!(a.is_finite() && b.is_finite());
    (a.sign ^ b.sign, a.exponent + b.exponent)
}

/// Unpacks both operands, enforcing the format width.
fn front_end(
    a_bits: u128,
    b_bits: u128,
    fmt: &FormatParams,
    meter: &mut SwMeter<'_>,
) -> Result<(DecimalValue, DecimalValue)> {
    for bits in [a_bits, b_bits] {
        if fmt.total_bits < 128 && bits >> fmt.total_bits != 0 {
            return Err(Error::Format(format!(
                "operand {bits:#x} is wider than the {}-bit format",
                fmt.total_bits
            )));
        }
    }
    meter.charge(SwPrimitive::DecodeDpd, 2);
    Ok((decimal_decode(a_bits, fmt), decimal_decode(b_bits, fmt)))
}

/// Shared IEEE back end: one rounding pass at the precision or subnormal
/// boundary (whichever cuts deeper), then exponent limits. A single pass
/// keeps ties honest where rounding twice would lose the sticky digits.
fn finish_finite(
    sign: bool,
    product_digits: &str,
    ideal_exponent: i32,
    fmt: &FormatParams,
    mode: RoundingMode,
    meter: &mut SwMeter<'_>,
) -> (DecimalValue, Flags) {
    let sig = strip_leading_zeros(product_digits);
    if sig == "0" {
        return apply_exponent_limits(&DecimalValue::zero(sign, ideal_exponent), fmt, mode);
    }

    let p = fmt.p as i64;
    let k_precision = sig.len() as i64 - p;
    let k_subnormal = fmt.q_min as i64 - ideal_exponent as i64;
    let k = k_precision.max(k_subnormal).max(0) as usize;

    let mut flags = Flags::none();
    let mut kept = sig.to_string();
    let mut exponent = ideal_exponent as i64;
    if k > 0 {
        // One comparison handles positions past the end of the string.
        meter.charge(SwPrimitive::RoundDigit, k.min(sig.len() + 1) as u64);
        let (rounded, inexact) = round_at(sig, k, mode, sign);
        flags.inexact = inexact;
        kept = rounded;
        exponent += k as i64;
        if kept.len() as i64 > p {
            debug_assert!(kept.ends_with('0'));
            kept.pop();
            exponent += 1;
        }
    }

    // Tininess after rounding; a carry up to full precision lands on the
    // smallest normal and is not tiny.
    let tiny = kept == "0" || exponent + kept.len() as i64 - 1 < fmt.emin() as i64;
    flags.underflow = tiny && flags.inexact;

    let value = DecimalValue::finite(sign, kept, exponent as i32);
    let (value, limit_flags) = apply_exponent_limits(&value, fmt, mode);
    (value, flags.merge(limit_flags))
}

/// Packs the finished value, charging the encode primitive.
fn pack_outcome(
    value: &DecimalValue,
    flags: Flags,
    fmt: &FormatParams,
    meter: &mut SwMeter<'_>,
) -> Result<MultiplyOutcome> {
    meter.charge(SwPrimitive::EncodeDpd, 1);
    let result_bits = decimal_encode(value, fmt)?;
    Ok(MultiplyOutcome { result_bits, flags })
}

const BILLION: u64 = 1_000_000_000;

/// Digit string to base-10^9 limbs, least significant first.
fn digits_to_limbs(digits: &str, meter: &mut SwMeter<'_>) -> Vec<u64> {
    let bytes = digits.as_bytes();
    let mut limbs = Vec::with_capacity(bytes.len() / 9 + 1);
    let mut end = bytes.len();
    while end > 0 {
        let start = end.saturating_sub(9);
        let chunk = std::str::from_utf8(&bytes[start..end]).unwrap();
        limbs.push(chunk.parse::<u64>().unwrap());
        meter.charge(SwPrimitive::LoopOverhead, 1);
        end = start;
    }
    if limbs.is_empty() {
        limbs.push(0);
    }
    limbs
}

/// Schoolbook coefficient multiplication over base-billion limbs, the
/// software baseline's numeric core.
fn limb_multiply(a_digits: &str, b_digits: &str, meter: &mut SwMeter<'_>) -> String {
    let a = digits_to_limbs(a_digits, meter);
    let b = digits_to_limbs(b_digits, meter);

    let mut raw = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            meter.charge(SwPrimitive::LimbMul, 1);
            meter.charge(SwPrimitive::LoopOverhead, 1);
            raw[i + j] += x * y;
        }
    }

    let mut carry = 0u64;
    for slot in raw.iter_mut() {
        meter.charge(SwPrimitive::CarryPass, 1);
        let total = *slot + carry;
        *slot = total % BILLION;
        carry = total / BILLION;
    }
    debug_assert_eq!(carry, 0);

    let mut out = String::with_capacity(raw.len() * 9);
    for (i, &limb) in raw.iter().enumerate().rev() {
        meter.charge(SwPrimitive::LoopOverhead, 1);
        if out.is_empty() {
            if limb == 0 && i > 0 {
                continue;
            }
            out.push_str(&limb.to_string());
        } else {
            out.push_str(&format!("{limb:09}"));
        }
    }
    out
}

/// Full IEEE multiply computed in software, cycle-charged per primitive.
///
/// The baseline behaves like a general-purpose decimal library: operands
/// are unpacked into (and results packed from) a working form of the
/// format's full precision, so the unpack/pack digit loops run p
/// iterations whatever the value's width. The co-design flow skips those
/// loops; its DPD-to-BCD conversion is a flat bit rearrangement.
pub fn multiply_software(
    a_bits: u128,
    b_bits: u128,
    fmt: &FormatParams,
    mode: RoundingMode,
    costs: &CostTable,
) -> Result<(MultiplyOutcome, CycleBreakdown)> {
    let mut meter = SwMeter::new(costs);
    let (a, b) = front_end(a_bits, b_bits, fmt, &mut meter)?;
    meter.charge(SwPrimitive::LoopOverhead, 2 * fmt.p as u64);

    if let Some((value, flags)) = handle_specials(&a, &b) {
        meter.charge(SwPrimitive::LoopOverhead, fmt.p as u64);
        let outcome = pack_outcome(&value, flags, fmt, &mut meter)?;
        return Ok((outcome, CycleBreakdown::new(meter.cycles, 0, Mode::Software)));
    }

    let (sign, ideal) = compute_sign_exponent(&a, &b);
    let product = limb_multiply(a.significant_digits(), b.significant_digits(), &mut meter);
    let (value, flags) = finish_finite(sign, &product, ideal, fmt, mode, &mut meter);
    meter.charge(SwPrimitive::LoopOverhead, fmt.p as u64);
    let outcome = pack_outcome(&value, flags, fmt, &mut meter)?;
    Ok((outcome, CycleBreakdown::new(meter.cycles, 0, Mode::Software)))
}

/// Register map of the co-design driver: MM[k] lives in register k
/// (register 0 stays zero after CLR_ALL, so it doubles as MM[0]), the
/// running product accumulates in register 12.
const MULTIPLICAND_REG: u8 = 1;
const PRODUCT_REG: u8 = 12;

fn expected_format(fmt: &FormatParams) -> Result<()> {
    if fmt.name != FormatName::Decimal64 {
        return Err(Error::Unsupported(format!(
            "the co-design datapath carries 16-digit coefficients; {} is not supported",
            fmt.name
        )));
    }
    Ok(())
}

/// Issues the method-1 command sequence: CLR_ALL, WR of the multiplicand,
/// eight DEC_ADDs building MM[2..=9], then per multiplier digit a
/// software-side product shift and one DEC_ADD, and finally one RD per
/// product limb. Returns the read-back product and the command trace.
fn drive_method1(
    x: BcdWord,
    y: BcdWord,
    accel: &mut AcceleratorState,
    costs: &CostTable,
    meter: &mut SwMeter<'_>,
) -> Result<(WideBcd, CommandTrace)> {
    if accel.busy() {
        return Err(Error::AcceleratorBusy);
    }
    let mut trace = CommandTrace::default();
    let mut issue = |accel: &mut AcceleratorState, cmd: Command| -> Result<u64> {
        let (response, cycles) = accel.execute(cmd, costs)?;
        let data = response.map(|r| r.data).unwrap_or(0);
        trace.entries.push(TraceEntry { command: cmd, cycles, response });
        Ok(data)
    };

    issue(accel, Command::new(Funct::ClrAll))?;
    issue(accel, Command::new(Funct::Wr).rd(MULTIPLICAND_REG).value1(x.0))?;
    for k in 2..=9u8 {
        issue(accel, Command::new(Funct::DecAdd).rd(k).reg1(k - 1).reg2(MULTIPLICAND_REG))?;
    }

    for i in (0..WORD_DIGITS).rev() {
        // The product shift stays on the software side of the split.
        accel.shift_reg_digits(PRODUCT_REG, 1);
        meter.charge(SwPrimitive::BcdShift, 1);
        meter.charge(SwPrimitive::LoopOverhead, 1);
        let digit = y.digit(i);
        issue(
            accel,
            Command::new(Funct::DecAdd).rd(PRODUCT_REG).reg1(PRODUCT_REG).reg2(digit),
        )?;
    }

    let low = issue(accel, Command::new(Funct::Rd).reg1(PRODUCT_REG).reg2(0).respond())?;
    let high = issue(accel, Command::new(Funct::Rd).reg1(PRODUCT_REG).reg2(1).respond())?;
    Ok((WideBcd::from_limbs([low, high, 0]), trace))
}

/// The co-design execution: software front/back ends around the
/// accelerator-driven coefficient multiplication.
pub fn multiply_codesign_method1(
    a_bits: u128,
    b_bits: u128,
    fmt: &FormatParams,
    mode: RoundingMode,
    accel: &mut AcceleratorState,
    costs: &CostTable,
) -> Result<(MultiplyOutcome, CycleBreakdown, CommandTrace)> {
    expected_format(fmt)?;
    let mut meter = SwMeter::new(costs);
    let (a, b) = front_end(a_bits, b_bits, fmt, &mut meter)?;

    if let Some((value, flags)) = handle_specials(&a, &b) {
        // The special path never touches the accelerator.
        let outcome = pack_outcome(&value, flags, fmt, &mut meter)?;
        let breakdown = CycleBreakdown::new(meter.cycles, 0, Mode::Method1);
        return Ok((outcome, breakdown, CommandTrace::default()));
    }

    let (sign, ideal) = compute_sign_exponent(&a, &b);
    let x = BcdWord(coefficient_to_bcd(&a).limb(0));
    let y = BcdWord(coefficient_to_bcd(&b).limb(0));
    let (product, trace) = drive_method1(x, y, accel, costs, &mut meter)?;

    let digits = product.to_digits();
    let (value, flags) = finish_finite(sign, &digits, ideal, fmt, mode, &mut meter);
    let outcome = pack_outcome(&value, flags, fmt, &mut meter)?;
    let breakdown = CycleBreakdown::new(meter.cycles, trace.total_cycles(), Mode::Method1);
    Ok((outcome, breakdown, trace))
}

/// The co-design control flow with every hardware call replaced by a
/// fixed-return stub (all-zero BCD) outside the hardware cost model; the
/// stub calls themselves are charged as software. The outcome is not
/// numerically valid and exists only for cycle comparison: with constant
/// stub data the execution does not follow the data-dependent flow a
/// real run takes.
pub fn multiply_dummy(
    a_bits: u128,
    b_bits: u128,
    fmt: &FormatParams,
    mode: RoundingMode,
    costs: &CostTable,
) -> Result<(MultiplyOutcome, CycleBreakdown)> {
    expected_format(fmt)?;
    let mut meter = SwMeter::new(costs);
    let (a, b) = front_end(a_bits, b_bits, fmt, &mut meter)?;

    if let Some((value, flags)) = handle_specials(&a, &b) {
        let outcome = pack_outcome(&value, flags, fmt, &mut meter)?;
        return Ok((outcome, CycleBreakdown::new(meter.cycles, 0, Mode::Dummy)));
    }

    let (sign, ideal) = compute_sign_exponent(&a, &b);
    let _x = BcdWord(coefficient_to_bcd(&a).limb(0));
    let y = BcdWord(coefficient_to_bcd(&b).limb(0));

    // One stub call per command the driver would issue: CLR_ALL, WR,
    // eight multiple-building adds, one add per digit, two read-backs.
    meter.charge(SwPrimitive::DummyCall, 2 + 8);
    for i in (0..WORD_DIGITS).rev() {
        meter.charge(SwPrimitive::BcdShift, 1);
        meter.charge(SwPrimitive::LoopOverhead, 1);
        let _digit = y.digit(i);
        meter.charge(SwPrimitive::DummyCall, 1);
    }
    meter.charge(SwPrimitive::DummyCall, 2);
    let product = WideBcd::zero();

    let digits = product.to_digits();
    let (value, flags) = finish_finite(sign, &digits, ideal, fmt, mode, &mut meter);
    let outcome = pack_outcome(&value, flags, fmt, &mut meter)?;
    Ok((outcome, CycleBreakdown::new(meter.cycles, 0, Mode::Dummy)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decnum::{DECIMAL128, DECIMAL64};
    use crate::oracle::exact_multiply_bits;

    fn enc(sign: bool, coeff: &str, exp: i32) -> u128 {
        decimal_encode(&DecimalValue::finite(sign, coeff, exp), &DECIMAL64).unwrap()
    }

    fn costs() -> CostTable {
        CostTable::default()
    }

    #[test]
    fn specials_cover_the_rules() {
        let two = DecimalValue::finite(false, "2", 0);
        let zero = DecimalValue::zero(false, 0);
        let inf = DecimalValue::infinity(false);
        let qnan = DecimalValue::qnan(false, "9");

        let (v, flags) = handle_specials(&qnan, &two).unwrap();
        assert_eq!(v.class, NumberClass::QNan);
        assert_eq!(v.payload, "9");
        assert!(!flags.invalid);

        let (v, flags) = handle_specials(&DecimalValue::snan(true, "3"), &two).unwrap();
        assert_eq!(v.class, NumberClass::QNan);
        assert!(flags.invalid);

        let (v, _) = handle_specials(&inf, &DecimalValue::finite(true, "3", 0)).unwrap();
        assert_eq!(v, DecimalValue::infinity(true));

        let (v, flags) = handle_specials(&inf, &zero).unwrap();
        assert_eq!(v.class, NumberClass::QNan);
        assert!(flags.invalid);

        assert!(handle_specials(&two, &zero).is_none());
    }

    #[test]
    fn sign_and_exponent_rules() {
        let a = DecimalValue::finite(true, "1", 5);
        let b = DecimalValue::finite(true, "1", -3);
        assert_eq!(compute_sign_exponent(&a, &b), (false, 2));
        let c = DecimalValue::finite(false, "1", 0);
        assert_eq!(compute_sign_exponent(&c, &a), (true, 5));
    }

    #[test]
    fn software_exact_product() {
        let (outcome, cycles) =
            multiply_software(enc(false, "15", -1), enc(false, "2", 0), &DECIMAL64, RoundingMode::TiesEven, &costs())
                .unwrap();
        assert_eq!(outcome.result_bits, enc(false, "30", -1));
        assert!(outcome.flags.is_empty());
        assert_eq!(cycles.hw_cycles, 0);
        assert_eq!(cycles.total, cycles.sw_cycles);
    }

    #[test]
    fn software_nan_passthrough() {
        let nan_bits = decimal_encode(&DecimalValue::qnan(false, "5"), &DECIMAL64).unwrap();
        let (outcome, _) =
            multiply_software(enc(false, "7", 3), nan_bits, &DECIMAL64, RoundingMode::TiesEven, &costs()).unwrap();
        let v = decimal_decode(outcome.result_bits, &DECIMAL64);
        assert_eq!(v.class, NumberClass::QNan);
    }

    #[test]
    fn software_full_width_rounds_inexact() {
        let max = "9".repeat(16);
        let (outcome, _) =
            multiply_software(enc(false, &max, 0), enc(false, &max, 0), &DECIMAL64, RoundingMode::TiesEven, &costs())
                .unwrap();
        assert!(outcome.flags.inexact);
        let v = decimal_decode(outcome.result_bits, &DECIMAL64);
        assert_eq!(v.coefficient, "9999999999999998");
        assert_eq!(v.exponent, 16);
    }

    #[test]
    fn software_supports_decimal128() {
        let a = decimal_encode(&DecimalValue::finite(false, "15", -1), &DECIMAL128).unwrap();
        let b = decimal_encode(&DecimalValue::finite(true, "2", 0), &DECIMAL128).unwrap();
        let (outcome, _) =
            multiply_software(a, b, &DECIMAL128, RoundingMode::TiesEven, &costs()).unwrap();
        let v = decimal_decode(outcome.result_bits, &DECIMAL128);
        assert!(v.sign);
        assert_eq!(v.exponent, -1);
        assert_eq!(v.significant_digits(), "30");
    }

    #[test]
    fn method1_small_product_via_trace() {
        let mut accel = AcceleratorState::new();
        let (outcome, cycles, trace) = multiply_codesign_method1(
            enc(false, "25", 0),
            enc(false, "13", 0),
            &DECIMAL64,
            RoundingMode::TiesEven,
            &mut accel,
            &costs(),
        )
        .unwrap();
        let v = decimal_decode(outcome.result_bits, &DECIMAL64);
        assert_eq!(v.significant_digits(), "325");
        assert_eq!(v.exponent, 0);

        // CLR_ALL, WR, 8 + 16 DEC_ADD, two read-backs, ending in RD.
        assert_eq!(trace.entries.len(), 28);
        assert_eq!(trace.count_funct(Funct::DecAdd), 24);
        assert_eq!(trace.entries.last().unwrap().command.funct, Funct::Rd);
        assert_eq!(cycles.hw_cycles, trace.total_cycles());
        assert!(cycles.sw_cycles > 0);
    }

    #[test]
    fn method1_specials_issue_no_commands() {
        let mut accel = AcceleratorState::new();
        let nan_bits = decimal_encode(&DecimalValue::qnan(false, ""), &DECIMAL64).unwrap();
        let (outcome, cycles, trace) = multiply_codesign_method1(
            nan_bits,
            enc(false, "2", 0),
            &DECIMAL64,
            RoundingMode::TiesEven,
            &mut accel,
            &costs(),
        )
        .unwrap();
        assert!(trace.entries.is_empty());
        assert_eq!(cycles.hw_cycles, 0);
        let v = decimal_decode(outcome.result_bits, &DECIMAL64);
        assert_eq!(v.class, NumberClass::QNan);
    }

    #[test]
    fn method1_matches_software_and_oracle() {
        let vectors = [
            (enc(false, "15", -1), enc(false, "2", 0)),
            (enc(true, &"9".repeat(16), 100), enc(false, &"9".repeat(16), 100)),
            (enc(false, "1234567890123456", -200), enc(true, "9876543210987654", -199)),
            (enc(true, "0", 5), enc(false, "42", 369)),
            (enc(false, "5", 369), enc(false, "5", 369)),
            (enc(false, "451", -200), enc(false, "1", -200)),
        ];
        for (a, b) in vectors {
            let (sw, _) =
                multiply_software(a, b, &DECIMAL64, RoundingMode::TiesEven, &costs()).unwrap();
            let mut accel = AcceleratorState::new();
            let (m1, _, _) = multiply_codesign_method1(
                a,
                b,
                &DECIMAL64,
                RoundingMode::TiesEven,
                &mut accel,
                &costs(),
            )
            .unwrap();
            assert_eq!(sw.result_bits, m1.result_bits, "bits differ on {a:#x} x {b:#x}");
            assert_eq!(sw.flags, m1.flags, "flags differ on {a:#x} x {b:#x}");

            let reference = exact_multiply_bits(a, b, &DECIMAL64, RoundingMode::TiesEven);
            assert_eq!(sw.result_bits, reference.bits, "oracle bits on {a:#x} x {b:#x}");
            assert_eq!(sw.flags, reference.flags, "oracle flags on {a:#x} x {b:#x}");
        }
    }

    #[test]
    fn commutative_and_sign_rule_for_zeros() {
        let a = enc(true, "0", 3);
        let b = enc(false, "7", -2);
        let (ab, _) = multiply_software(a, b, &DECIMAL64, RoundingMode::TiesEven, &costs()).unwrap();
        let (ba, _) = multiply_software(b, a, &DECIMAL64, RoundingMode::TiesEven, &costs()).unwrap();
        assert_eq!(ab.result_bits, ba.result_bits);
        let v = decimal_decode(ab.result_bits, &DECIMAL64);
        assert!(v.is_zero() && v.sign);
        assert_eq!(v.exponent, 1);
    }

    #[test]
    fn dummy_mode_is_cycle_only() {
        let a = enc(false, "1234567890123456", 10);
        let b = enc(false, "6543210987654321", -10);
        let (outcome, cycles) =
            multiply_dummy(a, b, &DECIMAL64, RoundingMode::TiesEven, &costs()).unwrap();
        assert_eq!(cycles.hw_cycles, 0);
        assert_eq!(cycles.mode, Mode::Dummy);
        // The stub product is zero, so the "result" is a zero pattern:
        // numerically wrong by design.
        let v = decimal_decode(outcome.result_bits, &DECIMAL64);
        assert!(v.is_zero());

        // Specials never reach the stubs and stay correct.
        let nan_bits = decimal_encode(&DecimalValue::qnan(true, "3"), &DECIMAL64).unwrap();
        let (outcome, _) =
            multiply_dummy(nan_bits, b, &DECIMAL64, RoundingMode::TiesEven, &costs()).unwrap();
        let mut accel = AcceleratorState::new();
        let (m1, _, _) = multiply_codesign_method1(
            nan_bits,
            b,
            &DECIMAL64,
            RoundingMode::TiesEven,
            &mut accel,
            &costs(),
        )
        .unwrap();
        assert_eq!(outcome.result_bits, m1.result_bits);
    }

    #[test]
    fn codesign_rejects_decimal128() {
        let a = decimal_encode(&DecimalValue::finite(false, "2", 0), &DECIMAL128).unwrap();
        let mut accel = AcceleratorState::new();
        assert!(matches!(
            multiply_codesign_method1(a, a, &DECIMAL128, RoundingMode::TiesEven, &mut accel, &costs()),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            multiply_dummy(a, a, &DECIMAL128, RoundingMode::TiesEven, &costs()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn wide_operand_rejected_as_format_error() {
        let too_wide = 1u128 << 64;
        assert!(matches!(
            multiply_software(too_wide, 0, &DECIMAL64, RoundingMode::TiesEven, &costs()),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn back_end_single_rounding_matches_oracle_on_the_tie_trap() {
        let product = format!("100000000000000{}{}1", "5", "0".repeat(15));
        let costs = CostTable::default();
        let mut meter = SwMeter::new(&costs);
        let (value, flags) =
            finish_finite(false, &product, -415, &DECIMAL64, RoundingMode::TiesEven, &mut meter);
        assert_eq!(value.coefficient, "100000000000001");
        assert_eq!(value.exponent, -398);
        assert!(flags.inexact && flags.underflow);
    }

    #[test]
    fn preferred_exponent_on_exact_results() {
        // 5 * 5 = 25 with exponents 369 + 369 pulled back by clamping is
        // impossible, so pick in-range: exponent sum survives exactly.
        let (outcome, _) = multiply_software(
            enc(false, "5", 100),
            enc(false, "5", -40),
            &DECIMAL64,
            RoundingMode::TiesEven,
            &costs(),
        )
        .unwrap();
        let v = decimal_decode(outcome.result_bits, &DECIMAL64);
        assert_eq!(v.exponent, 60);
        assert_eq!(v.significant_digits(), "25");
    }
}
