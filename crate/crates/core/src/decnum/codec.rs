//! Packing and unpacking of IEEE 754-2008 decimal interchange patterns.
//!
//! Layout, most significant bit first: sign (1), combination (5),
//! exponent continuation, coefficient continuation as declets. The
//! combination field holds the coefficient MSD and the top two biased
//! exponent bits, or the infinity/NaN markers.

use super::dpd::{dpd_decode_declet, dpd_encode_declet};
use super::{DecimalValue, FormatParams, NumberClass};
use crate::error::{Error, Result};

const COMB_INFINITY: u32 = 0b11110;
const COMB_NAN: u32 = 0b11111;

/// Encodes an unpacked value into the format's interchange bit pattern.
///
/// The pattern occupies the low `total_bits` of the returned word.
/// Finite values must already satisfy the format's coefficient and
/// exponent limits; see `apply_exponent_limits`.
pub fn decimal_encode(v: &DecimalValue, fmt: &FormatParams) -> Result<u128> {
    let econt_bits = fmt.exponent_continuation_bits;
    let declet_bits = 10 * fmt.declets;

    let sign_bit = (v.sign as u128) << (fmt.total_bits - 1);

    match v.class {
        NumberClass::Finite => {
            if v.exponent < fmt.q_min || v.exponent > fmt.q_max {
                return Err(Error::Range(format!(
                    "exponent {} outside [{}, {}] for {}",
                    v.exponent, fmt.q_min, fmt.q_max, fmt.name
                )));
            }
            let digits = pad_digits(&v.coefficient, fmt.p as usize).ok_or_else(|| {
                Error::Range(format!(
                    "coefficient {:?} wider than {} digits",
                    v.coefficient, fmt.p
                ))
            })?;
            let biased = (v.exponent + fmt.bias) as u32;
            let exp_top = biased >> econt_bits;
            let exp_cont = (biased & ((1 << econt_bits) - 1)) as u128;
            let msd = (digits[0] - b'0') as u32;

            let comb = if msd < 8 {
                (exp_top << 3) | msd
            } else {
                0b11000 | (exp_top << 1) | (msd & 1)
            };

            let mut bits = sign_bit;
            bits |= (comb as u128) << (fmt.total_bits - 6);
            bits |= exp_cont << declet_bits;
            bits |= encode_declets(&digits[1..])?;
            Ok(bits)
        }
        NumberClass::Infinity => Ok(sign_bit | (COMB_INFINITY as u128) << (fmt.total_bits - 6)),
        NumberClass::QNan | NumberClass::SNan => {
            let digits = pad_digits(&v.payload, fmt.p as usize - 1).ok_or_else(|| {
                Error::Range(format!(
                    "NaN payload {:?} wider than {} digits",
                    v.payload,
                    fmt.p - 1
                ))
            })?;
            let mut bits = sign_bit | (COMB_NAN as u128) << (fmt.total_bits - 6);
            if v.class == NumberClass::SNan {
                bits |= 1 << (declet_bits + econt_bits - 1);
            }
            bits |= encode_declets(&digits)?;
            Ok(bits)
        }
    }
}

/// Decodes an interchange pattern. Every pattern decodes: the class comes
/// from the combination field and non-canonical declets alias.
pub fn decimal_decode(bits: u128, fmt: &FormatParams) -> DecimalValue {
    let econt_bits = fmt.exponent_continuation_bits;
    let declet_bits = 10 * fmt.declets;

    let sign = (bits >> (fmt.total_bits - 1)) & 1 == 1;
    let comb = ((bits >> (fmt.total_bits - 6)) & 0x1f) as u32;

    if comb == COMB_INFINITY {
        return DecimalValue::infinity(sign);
    }
    if comb == COMB_NAN {
        let signaling = (bits >> (declet_bits + econt_bits - 1)) & 1 == 1;
        let payload = decode_declets(bits, fmt.declets);
        return if signaling {
            DecimalValue::snan(sign, payload)
        } else {
            DecimalValue::qnan(sign, payload)
        };
    }

    let (exp_top, msd) = if comb & 0b11000 == 0b11000 {
        ((comb >> 1) & 0b11, 8 + (comb & 1))
    } else {
        (comb >> 3, comb & 0b111)
    };
    let exp_cont = ((bits >> declet_bits) & ((1 << econt_bits) - 1)) as u32;
    let biased = (exp_top << econt_bits) | exp_cont;
    let exponent = biased as i32 - fmt.bias;

    let mut coefficient = String::with_capacity(fmt.p as usize);
    coefficient.push((b'0' + msd as u8) as char);
    coefficient.push_str(&decode_declets(bits, fmt.declets));
    DecimalValue::finite(sign, coefficient, exponent)
}

/// Renders the low `total_bits` of a pattern as fixed-width uppercase-free
/// hex, most significant nibble first.
pub fn bits_to_hex(bits: u128, fmt: &FormatParams) -> String {
    format!("{:0width$x}", bits, width = fmt.hex_chars())
}

/// Parses a fixed-width hex pattern; an optional `0x` prefix is accepted.
pub fn hex_to_bits(s: &str, fmt: &FormatParams) -> Result<u128> {
    let body = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    if body.len() != fmt.hex_chars() {
        return Err(Error::Format(format!(
            "pattern {s:?} must be {} hex chars for {}",
            fmt.hex_chars(),
            fmt.name
        )));
    }
    u128::from_str_radix(body, 16)
        .map_err(|e| Error::Format(format!("bad hex pattern {s:?}: {e}")))
}

/// Left-pads a digit string with zeros to `width`, or returns None if its
/// significant part does not fit.
fn pad_digits(digits: &str, width: usize) -> Option<Vec<u8>> {
    let bytes = digits.as_bytes();
    let first_sig = bytes.iter().position(|&b| b != b'0').unwrap_or(bytes.len());
    let sig = &bytes[first_sig..];
    if sig.len() > width {
        return None;
    }
    let mut out = vec![b'0'; width];
    out[width - sig.len()..].copy_from_slice(sig);
    Some(out)
}

fn encode_declets(digits: &[u8]) -> Result<u128> {
    debug_assert_eq!(digits.len() % 3, 0);
    let mut bits = 0u128;
    for group in digits.chunks(3) {
        let declet = dpd_encode_declet(group[0] - b'0', group[1] - b'0', group[2] - b'0')?;
        bits = (bits << 10) | declet as u128;
    }
    Ok(bits)
}

fn decode_declets(bits: u128, declets: u32) -> String {
    let mut digits = vec![b'0'; 3 * declets as usize];
    for i in 0..declets {
        let declet = ((bits >> (10 * i)) & 0x3ff) as u16;
        let (d2, d1, d0) = dpd_decode_declet(declet);
        let base = 3 * (declets - 1 - i) as usize;
        digits[base] = b'0' + d2;
        digits[base + 1] = b'0' + d1;
        digits[base + 2] = b'0' + d0;
    }
    String::from_utf8(digits).unwrap()
}
