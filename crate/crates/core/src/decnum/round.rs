//! Coefficient rounding and exponent-range handling.

use super::{strip_leading_zeros, DecimalValue, Flags, FormatParams, RoundingMode};

/// Removes the `k` rightmost digits of a significand, rounding the kept
/// part per `mode`. `k` may exceed the string length; the missing high
/// positions count as zeros (the whole value is then below one unit in
/// the kept position).
///
/// Returns the kept digits (possibly grown by a carry, "0" when nothing
/// survives) and whether any removed digit was nonzero.
pub fn round_at(digits: &str, k: usize, mode: RoundingMode, negative: bool) -> (String, bool) {
    debug_assert!(digits.bytes().all(|b| b.is_ascii_digit()));
    if k == 0 {
        return (digits.to_string(), false);
    }
    let bytes = digits.as_bytes();
    let split = bytes.len().saturating_sub(k);
    let (kept, removed) = bytes.split_at(split);
    let inexact = removed.iter().any(|&b| b != b'0');
    let mut kept = if kept.is_empty() {
        "0".to_string()
    } else {
        String::from_utf8(kept.to_vec()).unwrap()
    };
    if !inexact {
        return (kept, false);
    }

    // When k exceeds the string, the removed field starts with implicit
    // zeros, so it is always below the halfway point.
    let position = if k > bytes.len() || removed[0] < b'5' {
        HalfPosition::Below
    } else if removed[0] > b'5' || removed[1..].iter().any(|&b| b != b'0') {
        HalfPosition::Above
    } else {
        HalfPosition::Tie
    };

    let round_up = match mode {
        RoundingMode::TowardZero => false,
        RoundingMode::TowardPositive => !negative,
        RoundingMode::TowardNegative => negative,
        RoundingMode::TiesAway => position != HalfPosition::Below,
        RoundingMode::TiesEven => match position {
            HalfPosition::Above => true,
            HalfPosition::Below => false,
            HalfPosition::Tie => {
                let last = kept.as_bytes()[kept.len() - 1];
                (last - b'0') % 2 == 1
            }
        },
    };
    if round_up {
        kept = increment_digits(&kept);
    }
    (kept, true)
}

#[derive(PartialEq, Eq)]
enum HalfPosition {
    Below,
    Tie,
    Above,
}

/// Adds one to a digit string, growing it on carry out ("999" -> "1000").
fn increment_digits(digits: &str) -> String {
    let mut bytes = digits.as_bytes().to_vec();
    for b in bytes.iter_mut().rev() {
        if *b == b'9' {
            *b = b'0';
        } else {
            *b += 1;
            return String::from_utf8(bytes).unwrap();
        }
    }
    bytes.insert(0, b'1');
    String::from_utf8(bytes).unwrap()
}

/// Rounds a coefficient to at most `target_p` significant digits.
///
/// Returns the rounded digits, the number of digits removed (the caller
/// adds this to the exponent), and whether the removal was inexact. A
/// carry that widens the result past `target_p` sheds its trailing zero,
/// counting as one more removed digit.
pub fn round_coefficient(
    digits: &str,
    target_p: usize,
    mode: RoundingMode,
    negative: bool,
) -> (String, usize, bool) {
    debug_assert!(!digits.is_empty());
    let sig = strip_leading_zeros(digits);
    if sig == "0" {
        return ("0".to_string(), 0, false);
    }
    if sig.len() <= target_p {
        return (sig.to_string(), 0, false);
    }
    let k = sig.len() - target_p;
    let (mut kept, inexact) = round_at(sig, k, mode, negative);
    let mut removed = k;
    if kept.len() > target_p {
        // Carry out of the top digit; the extra digit is always a zero.
        debug_assert!(kept.ends_with('0'));
        kept.pop();
        removed += 1;
    }
    (kept, removed, inexact)
}

/// Pulls a finite value's exponent into the format's range.
///
/// High exponents are absorbed by padding the coefficient with zeros
/// (clamping) when it fits, otherwise the result overflows to infinity or
/// the maximum finite value per the rounding mode. Low exponents are
/// absorbed by rounding digits away at the subnormal boundary, raising
/// underflow when the result is tiny and inexact.
pub fn apply_exponent_limits(
    v: &DecimalValue,
    fmt: &FormatParams,
    mode: RoundingMode,
) -> (DecimalValue, Flags) {
    debug_assert!(v.is_finite());
    let mut flags = Flags::none();
    let sig = v.significant_digits();
    let p = fmt.p as usize;
    debug_assert!(sig.len() <= p);

    if v.is_zero() {
        let clamped_exp = v.exponent.clamp(fmt.q_min, fmt.q_max);
        flags.clamped = clamped_exp != v.exponent;
        return (DecimalValue::zero(v.sign, clamped_exp), flags);
    }

    if v.exponent > fmt.q_max {
        let shift = (v.exponent - fmt.q_max) as usize;
        if sig.len() + shift <= p {
            let mut coefficient = sig.to_string();
            coefficient.extend(std::iter::repeat('0').take(shift));
            flags.clamped = true;
            return (DecimalValue::finite(v.sign, coefficient, fmt.q_max), flags);
        }
        flags.overflow = true;
        flags.inexact = true;
        return (overflow_result(v.sign, fmt, mode), flags);
    }

    if v.exponent < fmt.q_min {
        let k = (fmt.q_min - v.exponent) as usize;
        let (kept, inexact) = round_at(sig, k, mode, v.sign);
        flags.inexact = inexact;
        let result_zero = kept == "0";
        // Tininess is judged after rounding: a carry that fills the full
        // precision lands exactly on the smallest normal.
        let tiny = result_zero || kept.len() < p;
        flags.underflow = tiny && inexact;
        let value = if result_zero {
            DecimalValue::zero(v.sign, fmt.q_min)
        } else {
            DecimalValue::finite(v.sign, kept, fmt.q_min)
        };
        return (value, flags);
    }

    (v.clone(), flags)
}

/// The overflow result mandated by each rounding mode.
fn overflow_result(sign: bool, fmt: &FormatParams, mode: RoundingMode) -> DecimalValue {
    let to_infinity = match mode {
        RoundingMode::TiesEven | RoundingMode::TiesAway => true,
        RoundingMode::TowardZero => false,
        RoundingMode::TowardPositive => !sign,
        RoundingMode::TowardNegative => sign,
    };
    if to_infinity {
        DecimalValue::infinity(sign)
    } else {
        DecimalValue::finite(sign, "9".repeat(fmt.p as usize), fmt.q_max)
    }
}
