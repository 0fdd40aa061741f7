//! IEEE 754-2008 decimal interchange formats: DPD declet codec,
//! decimal64/decimal128 encode/decode, rounding, and exponent-range
//! handling.
//!
//! Numbers are kept unpacked as [`DecimalValue`] (sign, coefficient digit
//! string, exponent, class) and packed to/from DPD bit patterns. The
//! coefficient is an integer scaled by `10^exponent`; leading zeros are
//! permitted so a cohort member can be chosen explicitly.

mod codec;
mod dpd;
mod round;

pub use codec::{bits_to_hex, decimal_decode, decimal_encode, hex_to_bits};
pub use dpd::{dpd_decode_declet, dpd_encode_declet};
pub use round::{apply_exponent_limits, round_at, round_coefficient};

use crate::bcd::WideBcd;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Interchange format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormatName {
    #[serde(rename = "decimal64")]
    Decimal64,
    #[serde(rename = "decimal128")]
    Decimal128,
}

impl std::str::FromStr for FormatName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d64" | "decimal64" => Ok(FormatName::Decimal64),
            "d128" | "decimal128" => Ok(FormatName::Decimal128),
            other => Err(Error::Format(format!("unknown format {other:?}"))),
        }
    }
}

impl std::fmt::Display for FormatName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormatName::Decimal64 => write!(f, "decimal64"),
            FormatName::Decimal128 => write!(f, "decimal128"),
        }
    }
}

/// Constants of one decimal interchange format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormatParams {
    pub name: FormatName,
    /// Precision in digits.
    pub p: u32,
    /// Exponent bias.
    pub bias: i32,
    pub q_min: i32,
    pub q_max: i32,
    pub total_bits: u32,
    /// Number of 10-bit coefficient-continuation groups.
    pub declets: u32,
    pub combination_bits: u32,
    pub exponent_continuation_bits: u32,
}

pub const DECIMAL64: FormatParams = FormatParams {
    name: FormatName::Decimal64,
    p: 16,
    bias: 398,
    q_min: -398,
    q_max: 369,
    total_bits: 64,
    declets: 5,
    combination_bits: 5,
    exponent_continuation_bits: 8,
};

pub const DECIMAL128: FormatParams = FormatParams {
    name: FormatName::Decimal128,
    p: 34,
    bias: 6176,
    q_min: -6176,
    q_max: 6111,
    total_bits: 128,
    declets: 11,
    combination_bits: 5,
    exponent_continuation_bits: 12,
};

impl FormatParams {
    pub fn for_name(name: FormatName) -> &'static FormatParams {
        match name {
            FormatName::Decimal64 => &DECIMAL64,
            FormatName::Decimal128 => &DECIMAL128,
        }
    }

    /// Smallest exponent of a normal number; values with a smaller
    /// adjusted exponent are subnormal.
    pub fn emin(&self) -> i32 {
        self.q_min + self.p as i32 - 1
    }

    /// Width of the external hex rendering.
    pub fn hex_chars(&self) -> usize {
        self.total_bits as usize / 4
    }

    /// Picks the format matching a hex string's width.
    pub fn from_hex_len(len: usize) -> Result<&'static FormatParams> {
        match len {
            16 => Ok(&DECIMAL64),
            32 => Ok(&DECIMAL128),
            other => Err(Error::Format(format!(
                "hex pattern has {other} chars, expected 16 (decimal64) or 32 (decimal128)"
            ))),
        }
    }
}

/// Number class of a decimal value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumberClass {
    Finite,
    Infinity,
    QNan,
    SNan,
}

/// An unpacked decimal number.
///
/// `value = (-1)^sign * coefficient * 10^exponent` for finite numbers.
/// Non-finite values carry an empty coefficient and exponent 0; NaNs may
/// carry a payload digit string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalValue {
    /// true = negative.
    pub sign: bool,
    /// Decimal digits, most significant first. May have leading zeros.
    pub coefficient: String,
    pub exponent: i32,
    pub class: NumberClass,
    /// NaN payload digits; empty otherwise.
    pub payload: String,
}

impl DecimalValue {
    pub fn finite(sign: bool, coefficient: impl Into<String>, exponent: i32) -> Self {
        let coefficient = coefficient.into();
        debug_assert!(coefficient.bytes().all(|b| b.is_ascii_digit()));
        DecimalValue {
            sign,
            coefficient,
            exponent,
            class: NumberClass::Finite,
            payload: String::new(),
        }
    }

    pub fn zero(sign: bool, exponent: i32) -> Self {
        DecimalValue::finite(sign, "0", exponent)
    }

    pub fn infinity(sign: bool) -> Self {
        DecimalValue {
            sign,
            coefficient: String::new(),
            exponent: 0,
            class: NumberClass::Infinity,
            payload: String::new(),
        }
    }

    pub fn qnan(sign: bool, payload: impl Into<String>) -> Self {
        DecimalValue {
            sign,
            coefficient: String::new(),
            exponent: 0,
            class: NumberClass::QNan,
            payload: payload.into(),
        }
    }

    pub fn snan(sign: bool, payload: impl Into<String>) -> Self {
        DecimalValue {
            sign,
            coefficient: String::new(),
            exponent: 0,
            class: NumberClass::SNan,
            payload: payload.into(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.class == NumberClass::Finite
    }

    pub fn is_nan(&self) -> bool {
        matches!(self.class, NumberClass::QNan | NumberClass::SNan)
    }

    pub fn is_infinite(&self) -> bool {
        self.class == NumberClass::Infinity
    }

    /// True for a finite value whose coefficient is all zeros.
    pub fn is_zero(&self) -> bool {
        self.is_finite() && self.coefficient.bytes().all(|b| b == b'0')
    }

    /// Coefficient with leading zeros stripped ("0" stays "0").
    pub fn significant_digits(&self) -> &str {
        strip_leading_zeros(&self.coefficient)
    }
}

/// Strips leading zeros, keeping at least one digit.
pub fn strip_leading_zeros(digits: &str) -> &str {
    let stripped = digits.trim_start_matches('0');
    if stripped.is_empty() {
        "0"
    } else {
        stripped
    }
}

/// Active rounding mode for one operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum RoundingMode {
    #[default]
    #[serde(rename = "ties_even")]
    TiesEven,
    #[serde(rename = "ties_away")]
    TiesAway,
    #[serde(rename = "toward_zero")]
    TowardZero,
    #[serde(rename = "toward_positive")]
    TowardPositive,
    #[serde(rename = "toward_negative")]
    TowardNegative,
}

impl std::str::FromStr for RoundingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "ties_even" => Ok(RoundingMode::TiesEven),
            "ties_away" => Ok(RoundingMode::TiesAway),
            "toward_zero" => Ok(RoundingMode::TowardZero),
            "toward_positive" => Ok(RoundingMode::TowardPositive),
            "toward_negative" => Ok(RoundingMode::TowardNegative),
            other => Err(Error::Format(format!("unknown rounding mode {other:?}"))),
        }
    }
}

/// IEEE status flags raised by an operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub invalid: bool,
    pub overflow: bool,
    pub underflow: bool,
    pub inexact: bool,
    pub clamped: bool,
}

impl Flags {
    pub fn none() -> Self {
        Flags::default()
    }

    pub fn merge(self, other: Flags) -> Flags {
        Flags {
            invalid: self.invalid || other.invalid,
            overflow: self.overflow || other.overflow,
            underflow: self.underflow || other.underflow,
            inexact: self.inexact || other.inexact,
            clamped: self.clamped || other.clamped,
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == Flags::default()
    }

    /// Names of the raised flags, in a fixed order.
    pub fn set_names(&self) -> Vec<&'static str> {
        let mut names = Vec::new();
        if self.invalid {
            names.push("invalid");
        }
        if self.overflow {
            names.push("overflow");
        }
        if self.underflow {
            names.push("underflow");
        }
        if self.inexact {
            names.push("inexact");
        }
        if self.clamped {
            names.push("clamped");
        }
        names
    }

    pub fn from_names(names: &[String]) -> Result<Flags> {
        let mut flags = Flags::default();
        for name in names {
            match name.as_str() {
                "invalid" => flags.invalid = true,
                "overflow" => flags.overflow = true,
                "underflow" => flags.underflow = true,
                "inexact" => flags.inexact = true,
                "clamped" => flags.clamped = true,
                other => return Err(Error::Input(format!("unknown flag {other:?}"))),
            }
        }
        Ok(flags)
    }
}

impl std::fmt::Display for Flags {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            write!(f, "-")
        } else {
            write!(f, "{}", self.set_names().join("+"))
        }
    }
}

/// Packs a finite value's coefficient into BCD-8421 nibbles, least
/// significant digit in the lowest nibble.
pub fn coefficient_to_bcd(v: &DecimalValue) -> WideBcd {
    debug_assert!(v.is_finite());
    let mut word = WideBcd::zero();
    for (i, b) in v.coefficient.bytes().rev().enumerate() {
        word.set_digit(i, b - b'0');
    }
    word
}
