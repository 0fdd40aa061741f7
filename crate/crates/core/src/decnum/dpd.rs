//! Densely packed decimal: three digits in ten bits.
//!
//! 1024 declets map onto 1000 digit triples; the 24 redundant patterns
//! decode to the same triple as their canonical alias. Encoding always
//! emits the canonical declet.

use crate::error::{Error, Result};

/// Encodes a digit triple into its canonical 10-bit declet.
///
/// `d2` is the most significant digit.
pub fn dpd_encode_declet(d2: u8, d1: u8, d0: u8) -> Result<u16> {
    for d in [d2, d1, d0] {
        if d > 9 {
            return Err(Error::InvalidDigit(d));
        }
    }
    // Split each digit into its "large" flag (value >= 8) and low bits.
    let (a, b, c, d) = (d2 >> 3, (d2 >> 2) & 1, (d2 >> 1) & 1, d2 & 1);
    let (e, f, g, h) = (d1 >> 3, (d1 >> 2) & 1, (d1 >> 1) & 1, d1 & 1);
    let (i, j, k, m) = (d0 >> 3, (d0 >> 2) & 1, (d0 >> 1) & 1, d0 & 1);

    let bits: [u8; 10] = match (a, e, i) {
        (0, 0, 0) => [b, c, d, f, g, h, 0, j, k, m],
        (0, 0, 1) => [b, c, d, f, g, h, 1, 0, 0, m],
        (0, 1, 0) => [b, c, d, j, k, h, 1, 0, 1, m],
        (1, 0, 0) => [j, k, d, f, g, h, 1, 1, 0, m],
        (0, 1, 1) => [b, c, d, 1, 0, h, 1, 1, 1, m],
        (1, 0, 1) => [f, g, d, 0, 1, h, 1, 1, 1, m],
        (1, 1, 0) => [j, k, d, 0, 0, h, 1, 1, 1, m],
        _ => [0, 0, d, 1, 1, h, 1, 1, 1, m],
    };
    Ok(bits.iter().fold(0u16, |acc, &bit| (acc << 1) | bit as u16))
}

/// Decodes a 10-bit declet into its digit triple.
///
/// All 1024 patterns decode; non-canonical declets follow the alias rule.
pub fn dpd_decode_declet(declet: u16) -> (u8, u8, u8) {
    let bit = |n: u16| ((declet >> n) & 1) as u8;
    let (b9, b8, b7) = (bit(9), bit(8), bit(7));
    let (b6, b5, b4) = (bit(6), bit(5), bit(4));
    let (b3, b2, b1, b0) = (bit(3), bit(2), bit(1), bit(0));

    let low3 = |x: u8, y: u8, z: u8| (x << 2) | (y << 1) | z;

    if b3 == 0 {
        return (low3(b9, b8, b7), low3(b6, b5, b4), low3(b2, b1, b0));
    }
    match (b2, b1) {
        (0, 0) => (low3(b9, b8, b7), low3(b6, b5, b4), 8 + b0),
        (0, 1) => (low3(b9, b8, b7), 8 + b4, low3(b6, b5, b0)),
        (1, 0) => (8 + b7, low3(b6, b5, b4), low3(b9, b8, b0)),
        _ => match (b6, b5) {
            (0, 0) => (8 + b7, 8 + b4, low3(b9, b8, b0)),
            (0, 1) => (8 + b7, low3(b9, b8, b4), 8 + b0),
            (1, 0) => (low3(b9, b8, b7), 8 + b4, 8 + b0),
            _ => (8 + b7, 8 + b4, 8 + b0),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_triple_is_zero_declet() {
        assert_eq!(dpd_encode_declet(0, 0, 0).unwrap(), 0);
        assert_eq!(dpd_decode_declet(0), (0, 0, 0));
    }

    #[test]
    fn small_digit_example() {
        assert_eq!(dpd_encode_declet(1, 2, 3).unwrap(), 0x0A3);
        assert_eq!(dpd_decode_declet(0x0A3), (1, 2, 3));
    }

    #[test]
    fn digit_out_of_range_rejected() {
        assert!(dpd_encode_declet(10, 0, 0).is_err());
        assert!(dpd_encode_declet(0, 0, 15).is_err());
    }

    #[test]
    fn exhaustive_triple_round_trip() {
        for d2 in 0..10u8 {
            for d1 in 0..10u8 {
                for d0 in 0..10u8 {
                    let declet = dpd_encode_declet(d2, d1, d0).unwrap();
                    assert!(declet < 1024);
                    assert_eq!(dpd_decode_declet(declet), (d2, d1, d0));
                }
            }
        }
    }

    #[test]
    fn exhaustive_alias_rule() {
        // Every declet decodes, and re-encoding yields a canonical declet
        // that decodes to the same triple.
        let mut canonical = 0usize;
        for declet in 0u16..1024 {
            let (d2, d1, d0) = dpd_decode_declet(declet);
            assert!(d2 <= 9 && d1 <= 9 && d0 <= 9);
            let again = dpd_encode_declet(d2, d1, d0).unwrap();
            assert_eq!(dpd_decode_declet(again), (d2, d1, d0));
            if again == declet {
                canonical += 1;
            }
        }
        // 1000 canonical patterns, 24 aliases.
        assert_eq!(canonical, 1000);
    }
}
