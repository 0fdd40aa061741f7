//! Exact reference for IEEE decimal multiplication, used by the
//! verifier and the test suites.
//!
//! The coefficient product, rounding decisions, and range handling are
//! all carried out in big-integer arithmetic, independent of the digit
//! string kernels and the BCD datapath the pipelines use. Only the
//! final packing goes through the interchange codec, which is validated
//! exhaustively on its own.

use crate::decnum::{
    decimal_decode, decimal_encode, DecimalValue, Flags, FormatParams, NumberClass, RoundingMode,
};
use num_bigint::BigUint;

/// The reference result: packed bits plus status flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleResult {
    pub bits: u128,
    pub flags: Flags,
}

/// Multiplies two packed operands exactly and rounds once.
pub fn exact_multiply_bits(
    a_bits: u128,
    b_bits: u128,
    fmt: &FormatParams,
    mode: RoundingMode,
) -> OracleResult {
    let a = decimal_decode(a_bits, fmt);
    let b = decimal_decode(b_bits, fmt);
    let (value, flags) = exact_multiply(&a, &b, fmt, mode);
    let bits = decimal_encode(&value, fmt).expect("oracle result is always packable");
    OracleResult { bits, flags }
}

/// Multiplies two unpacked operands exactly and rounds once.
pub fn exact_multiply(
    a: &DecimalValue,
    b: &DecimalValue,
    fmt: &FormatParams,
    mode: RoundingMode,
) -> (DecimalValue, Flags) {
    if let Some(special) = special_result(a, b) {
        return special;
    }

    let sign = a.sign ^ b.sign;
    let ca: BigUint = a.coefficient.parse().expect("decoded coefficient");
    let cb: BigUint = b.coefficient.parse().expect("decoded coefficient");
    let ideal = a.exponent + b.exponent;
    let exact = ca * cb;

    if exact == BigUint::ZERO {
        let exponent = ideal.clamp(fmt.q_min, fmt.q_max);
        let mut flags = Flags::none();
        flags.clamped = exponent != ideal;
        return (DecimalValue::zero(sign, exponent), flags);
    }

    let p = fmt.p as i64;
    let digits = exact.to_string().len() as i64;
    let k_precision = (digits - p).max(0);
    let k_subnormal = (fmt.q_min as i64 - ideal as i64).max(0);
    let k = k_precision.max(k_subnormal);

    let mut flags = Flags::none();
    let (mut coeff, mut exponent) = if k == 0 {
        (exact, ideal as i64)
    } else {
        let scale = BigUint::from(10u32).pow(k as u32);
        let floor = &exact / &scale;
        let rem = &exact % &scale;
        flags.inexact = rem != BigUint::ZERO;
        let rounded = if round_up(&floor, &rem, &scale, mode, sign) { floor + 1u32 } else { floor };
        (rounded, ideal as i64 + k)
    };

    // A carry past the precision sheds an exact trailing zero.
    if decimal_len(&coeff) > p {
        coeff /= 10u32;
        exponent += 1;
    }

    // Tininess after rounding.
    let result_digits = decimal_len(&coeff);
    let tiny = coeff == BigUint::ZERO || exponent + result_digits - 1 < fmt.emin() as i64;
    flags.underflow = tiny && flags.inexact;

    if exponent > fmt.q_max as i64 {
        let shift = exponent - fmt.q_max as i64;
        if result_digits + shift <= p && coeff != BigUint::ZERO {
            coeff *= BigUint::from(10u32).pow(shift as u32);
            exponent = fmt.q_max as i64;
            flags.clamped = true;
        } else {
            flags.overflow = true;
            flags.inexact = true;
            let to_infinity = match mode {
                RoundingMode::TiesEven | RoundingMode::TiesAway => true,
                RoundingMode::TowardZero => false,
                RoundingMode::TowardPositive => !sign,
                RoundingMode::TowardNegative => sign,
            };
            let value = if to_infinity {
                DecimalValue::infinity(sign)
            } else {
                DecimalValue::finite(sign, "9".repeat(fmt.p as usize), fmt.q_max)
            };
            return (value, flags);
        }
    }

    debug_assert!((fmt.q_min as i64..=fmt.q_max as i64).contains(&exponent));
    let value = if coeff == BigUint::ZERO {
        DecimalValue::zero(sign, exponent as i32)
    } else {
        DecimalValue::finite(sign, coeff.to_string(), exponent as i32)
    };
    (value, flags)
}

fn decimal_len(n: &BigUint) -> i64 {
    if *n == BigUint::ZERO {
        0
    } else {
        n.to_string().len() as i64
    }
}

fn round_up(
    floor: &BigUint,
    rem: &BigUint,
    scale: &BigUint,
    mode: RoundingMode,
    negative: bool,
) -> bool {
    if *rem == BigUint::ZERO {
        return false;
    }
    match mode {
        RoundingMode::TowardZero => false,
        RoundingMode::TowardPositive => !negative,
        RoundingMode::TowardNegative => negative,
        RoundingMode::TiesAway => &(rem * 2u32) >= scale,
        RoundingMode::TiesEven => {
            let doubled = rem * 2u32;
            match doubled.cmp(scale) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => (floor % 2u32) == BigUint::from(1u32),
            }
        }
    }
}

/// IEEE special-value rules for multiplication.
fn special_result(a: &DecimalValue, b: &DecimalValue) -> Option<(DecimalValue, Flags)> {
    let mut flags = Flags::none();
    if a.is_nan() || b.is_nan() {
        flags.invalid = a.class == NumberClass::SNan || b.class == NumberClass::SNan;
        let source = if a.is_nan() { a } else { b };
        return Some((DecimalValue::qnan(source.sign, source.payload.clone()), flags));
    }
    if a.is_infinite() || b.is_infinite() {
        let other_is_zero =
            (a.is_infinite() && b.is_zero()) || (b.is_infinite() && a.is_zero());
        if other_is_zero {
            flags.invalid = true;
            return Some((DecimalValue::qnan(false, ""), flags));
        }
        return Some((DecimalValue::infinity(a.sign ^ b.sign), flags));
    }
    None
}
