//! Functional model of the hardware kernels: BCD-8421 carry-lookahead
//! addition, binary-to-BCD conversion, digit shifting, multiplicand
//! multiples, and partial-product accumulation.
//!
//! The adder is realized functionally (digit add with +6-style decimal
//! correction and lookahead-equivalent carries); cycle costs come from
//! the accelerator's cost table, not gate delay.

use crate::error::{Error, Result};

/// Digits held by one 64-bit register word.
pub const WORD_DIGITS: usize = 16;

/// Total digit width of the wide datapath: 3 limbs of 16 digits,
/// covering the 32-digit product plus alignment headroom.
pub const WIDE_DIGITS: usize = 48;

/// 16 BCD digits packed one nibble each, least significant digit in the
/// lowest nibble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct BcdWord(pub u64);

impl BcdWord {
    pub fn digit(&self, i: usize) -> u8 {
        debug_assert!(i < WORD_DIGITS);
        ((self.0 >> (4 * i)) & 0xf) as u8
    }

    /// True iff every nibble is a decimal digit.
    pub fn is_valid(&self) -> bool {
        valid_nibbles(self.0)
    }
}

/// Three 64-bit words of packed BCD digits, least significant limb first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct WideBcd {
    limbs: [u64; 3],
}

impl WideBcd {
    pub fn zero() -> Self {
        WideBcd::default()
    }

    pub fn from_limbs(limbs: [u64; 3]) -> Self {
        WideBcd { limbs }
    }

    /// Widens a single BCD word into the low limb.
    pub fn from_word(word: u64) -> Self {
        WideBcd { limbs: [word, 0, 0] }
    }

    pub fn limbs(&self) -> [u64; 3] {
        self.limbs
    }

    pub fn limb(&self, i: usize) -> u64 {
        self.limbs[i]
    }

    pub fn set_limb(&mut self, i: usize, value: u64) {
        self.limbs[i] = value;
    }

    pub fn digit(&self, i: usize) -> u8 {
        debug_assert!(i < WIDE_DIGITS);
        ((self.limbs[i / WORD_DIGITS] >> (4 * (i % WORD_DIGITS))) & 0xf) as u8
    }

    pub fn set_digit(&mut self, i: usize, d: u8) {
        debug_assert!(i < WIDE_DIGITS);
        debug_assert!(d <= 15);
        let limb = &mut self.limbs[i / WORD_DIGITS];
        let shift = 4 * (i % WORD_DIGITS);
        *limb = (*limb & !(0xfu64 << shift)) | ((d as u64) << shift);
    }

    /// True iff every nibble is a decimal digit.
    pub fn is_valid(&self) -> bool {
        self.limbs.iter().all(|&l| valid_nibbles(l))
    }

    pub fn is_zero(&self) -> bool {
        self.limbs == [0, 0, 0]
    }

    /// Number of digits above the most significant nonzero digit's
    /// position, i.e. the significant length (0 for zero).
    pub fn significant_len(&self) -> usize {
        (0..WIDE_DIGITS).rev().find(|&i| self.digit(i) != 0).map_or(0, |i| i + 1)
    }

    /// The full 48-digit decimal rendering, most significant first.
    pub fn to_digits(&self) -> String {
        (0..WIDE_DIGITS).rev().map(|i| (b'0' + self.digit(i)) as char).collect()
    }

    /// Packs a digit string (most significant first, up to 48 digits).
    pub fn from_digits(digits: &str) -> Result<WideBcd> {
        if digits.len() > WIDE_DIGITS {
            return Err(Error::Range(format!(
                "{} digits exceed the {WIDE_DIGITS}-digit datapath",
                digits.len()
            )));
        }
        let mut out = WideBcd::zero();
        for (i, b) in digits.bytes().rev().enumerate() {
            if !b.is_ascii_digit() {
                return Err(Error::InvalidDigit(b));
            }
            out.set_digit(i, b - b'0');
        }
        Ok(out)
    }
}

fn valid_nibbles(word: u64) -> bool {
    (0..16).all(|i| (word >> (4 * i)) & 0xf <= 9)
}

/// Kernel operation counters, observable by tests and the cost model.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KernelStats {
    pub adds: u64,
    pub shifts: u64,
}

fn first_invalid(w: &WideBcd) -> Option<(usize, u8)> {
    (0..WIDE_DIGITS).find_map(|i| {
        let d = w.digit(i);
        (d > 9).then_some((i, d))
    })
}

fn require_valid(w: &WideBcd) -> Result<()> {
    match first_invalid(w) {
        None => Ok(()),
        Some((position, nibble)) => Err(Error::InvalidOperand { nibble, position }),
    }
}

/// Decimal addition of two wide BCD words plus a carry-in, modulo
/// 10^48, with a decimal carry-out.
pub fn bcd_cla_add(a: &WideBcd, b: &WideBcd, carry_in: bool) -> Result<(WideBcd, bool)> {
    require_valid(a)?;
    require_valid(b)?;
    let mut sum = WideBcd::zero();
    let mut carry = carry_in as u8;
    for i in 0..WIDE_DIGITS {
        let mut s = a.digit(i) + b.digit(i) + carry;
        carry = (s > 9) as u8;
        if carry == 1 {
            s = (s + 6) & 0xf;
        }
        sum.set_digit(i, s);
    }
    Ok((sum, carry == 1))
}

/// Converts an unsigned binary number into BCD, checking it fits in
/// `width` digits.
pub fn bin_to_bcd(n: u64, width: usize) -> Result<WideBcd> {
    if width < 20 && n >= 10u64.pow(width as u32) {
        return Err(Error::Range(format!("{n} does not fit in {width} decimal digits")));
    }
    let mut out = WideBcd::zero();
    let mut rest = n;
    let mut i = 0;
    while rest > 0 {
        out.set_digit(i, (rest % 10) as u8);
        rest /= 10;
        i += 1;
    }
    Ok(out)
}

/// Multiplies by 10^k: shifts every digit up k positions. Digits shifted
/// past position 47 are dropped.
pub fn bcd_shift_digits(w: &WideBcd, k: usize) -> WideBcd {
    if k == 0 {
        return *w;
    }
    let mut out = WideBcd::zero();
    for i in (0..WIDE_DIGITS.saturating_sub(k)).rev() {
        out.set_digit(i + k, w.digit(i));
    }
    out
}

/// The multiplicand-multiple table MM[0..=9], MM[k] = k times the
/// multiplicand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MultiplesTable {
    entries: [WideBcd; 10],
}

impl MultiplesTable {
    pub fn entry(&self, k: usize) -> &WideBcd {
        &self.entries[k]
    }

    pub fn entries(&self) -> &[WideBcd; 10] {
        &self.entries
    }
}

impl std::ops::Index<usize> for MultiplesTable {
    type Output = WideBcd;

    fn index(&self, k: usize) -> &WideBcd {
        &self.entries[k]
    }
}

/// Builds MM[0..=9] from the multiplicand by repeated addition:
/// MM[0]=0, MM[1]=x, MM[k]=MM[k-1]+x. Exactly 8 adder passes.
pub fn gen_multiples(x: &WideBcd) -> Result<MultiplesTable> {
    gen_multiples_with_stats(x, &mut KernelStats::default())
}

pub fn gen_multiples_with_stats(x: &WideBcd, stats: &mut KernelStats) -> Result<MultiplesTable> {
    require_valid(x)?;
    if x.significant_len() > WORD_DIGITS {
        return Err(Error::Range(format!(
            "multiplicand has {} digits, the multiple generator takes at most {WORD_DIGITS}",
            x.significant_len()
        )));
    }
    let mut table = MultiplesTable::default();
    table.entries[1] = *x;
    for k in 2..=9 {
        let (sum, carry) = bcd_cla_add(&table.entries[k - 1], x, false)?;
        debug_assert!(!carry);
        stats.adds += 1;
        table.entries[k] = sum;
    }
    Ok(table)
}

/// Multiplies the table's multiplicand by a 16-digit multiplier:
/// scans the multiplier from its most significant digit, shifting the
/// running product one digit up and adding the selected multiple.
pub fn accumulate_partials(y: BcdWord, mm: &MultiplesTable) -> Result<WideBcd> {
    accumulate_partials_with_stats(y, mm, &mut KernelStats::default())
}

pub fn accumulate_partials_with_stats(
    y: BcdWord,
    mm: &MultiplesTable,
    stats: &mut KernelStats,
) -> Result<WideBcd> {
    require_valid(&WideBcd::from_word(y.0))?;
    let mut product = WideBcd::zero();
    for i in (0..WORD_DIGITS).rev() {
        product = bcd_shift_digits(&product, 1);
        stats.shifts += 1;
        let (sum, carry) = bcd_cla_add(&product, mm.entry(y.digit(i) as usize), false)?;
        debug_assert!(!carry);
        stats.adds += 1;
        product = sum;
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn wide(n: u128) -> WideBcd {
        WideBcd::from_digits(&n.to_string()).unwrap()
    }

    fn as_biguint(w: &WideBcd) -> BigUint {
        w.to_digits().parse().unwrap()
    }

    #[test]
    fn validity_checks() {
        assert!(BcdWord(0).is_valid());
        assert!(BcdWord(0x1234567890123456).is_valid());
        assert!(!BcdWord(0x000000000000000A).is_valid());
        assert!(WideBcd::from_word(0x9999999999999999).is_valid());
        assert!(!WideBcd::from_limbs([0, 0xB0, 0]).is_valid());
    }

    #[test]
    fn add_identity_and_carry_free() {
        let a = wide(123456);
        let (sum, carry) = bcd_cla_add(&a, &WideBcd::zero(), false).unwrap();
        assert_eq!(sum, a);
        assert!(!carry);
    }

    #[test]
    fn add_with_decimal_carries() {
        let (sum, carry) = bcd_cla_add(&wide(1234), &wide(8766), false).unwrap();
        assert_eq!(sum, wide(10000));
        assert!(!carry);
        assert_eq!(sum.limb(0), 0x10000);
    }

    #[test]
    fn add_wraps_at_width() {
        let nines = WideBcd::from_digits(&"9".repeat(48)).unwrap();
        let one = wide(1);
        let (sum, carry) = bcd_cla_add(&nines, &one, false).unwrap();
        assert!(sum.is_zero());
        assert!(carry);
        // Carry-in alone does the same.
        let (sum, carry) = bcd_cla_add(&nines, &WideBcd::zero(), true).unwrap();
        assert!(sum.is_zero());
        assert!(carry);
    }

    #[test]
    fn add_rejects_invalid_operands() {
        let bad = WideBcd::from_limbs([0xA, 0, 0]);
        assert!(bcd_cla_add(&bad, &WideBcd::zero(), false).is_err());
        assert!(bcd_cla_add(&WideBcd::zero(), &bad, false).is_err());
    }

    #[test]
    fn add_exhaustive_two_digit_pairs() {
        for a in 0..100u32 {
            for b in 0..100u32 {
                for carry_in in [false, true] {
                    let (sum, carry) =
                        bcd_cla_add(&wide(a as u128), &wide(b as u128), carry_in).unwrap();
                    let expect = a + b + carry_in as u32;
                    assert_eq!(sum, wide(expect as u128));
                    assert!(!carry);
                    assert!(sum.is_valid());
                }
            }
        }
    }

    #[test]
    fn add_random_pairs_match_integer_addition() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let modulus = BigUint::from(10u32).pow(48);
        for _ in 0..10_000 {
            let len_a = rng.random_range(1..=48);
            let len_b = rng.random_range(1..=48);
            let a: String = (0..len_a).map(|_| (b'0' + rng.random_range(0..10)) as char).collect();
            let b: String = (0..len_b).map(|_| (b'0' + rng.random_range(0..10)) as char).collect();
            let carry_in = rng.random();
            let wa = WideBcd::from_digits(&a).unwrap();
            let wb = WideBcd::from_digits(&b).unwrap();
            let (sum, carry) = bcd_cla_add(&wa, &wb, carry_in).unwrap();
            assert!(sum.is_valid());

            let exact = a.parse::<BigUint>().unwrap()
                + b.parse::<BigUint>().unwrap()
                + BigUint::from(carry_in as u32);
            assert_eq!(as_biguint(&sum), &exact % &modulus);
            assert_eq!(carry, exact >= modulus);
        }
    }

    /// Independent conversion oracle: textbook double-dabble (shift and
    /// add-3) over the binary representation.
    fn double_dabble(n: u64) -> String {
        let mut digits = [0u8; 20];
        for bit in (0..64).rev() {
            for d in digits.iter_mut() {
                if *d >= 5 {
                    *d += 3;
                }
            }
            let mut carry = ((n >> bit) & 1) as u8;
            for d in digits.iter_mut() {
                let shifted = (*d << 1) | carry;
                carry = shifted >> 4;
                *d = shifted & 0xf;
            }
        }
        let s: String = digits.iter().rev().map(|&d| (b'0' + d) as char).collect();
        crate::decnum::strip_leading_zeros(&s).to_string()
    }

    #[test]
    fn bin_to_bcd_examples() {
        assert!(bin_to_bcd(0, 1).unwrap().is_zero());
        assert_eq!(bin_to_bcd(255, 3).unwrap().limb(0), 0x255);
        assert_eq!(bin_to_bcd(999_999, 6).unwrap().limb(0), 0x999999);
        assert!(bin_to_bcd(1000, 3).is_err());
    }

    #[test]
    fn bin_to_bcd_matches_double_dabble() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let n: u64 = rng.random();
            let got = bin_to_bcd(n, 20).unwrap();
            let expect = double_dabble(n);
            assert_eq!(crate::decnum::strip_leading_zeros(&got.to_digits()), expect);
        }
    }

    #[test]
    fn shift_moves_digits_up() {
        let w = WideBcd::from_word(0x25);
        assert_eq!(bcd_shift_digits(&w, 0), w);
        assert_eq!(bcd_shift_digits(&w, 1).limb(0), 0x250);
        assert_eq!(bcd_shift_digits(&w, 3).limb(0), 0x25000);
    }

    #[test]
    fn shift_truncates_at_the_top() {
        let mut w = WideBcd::zero();
        w.set_digit(47, 9);
        w.set_digit(0, 1);
        let shifted = bcd_shift_digits(&w, 1);
        assert_eq!(shifted.digit(47), 0);
        assert_eq!(shifted.digit(1), 1);
    }

    #[test]
    fn multiples_of_zero_and_small() {
        let table = gen_multiples(&WideBcd::zero()).unwrap();
        assert!(table.entries().iter().all(|e| e.is_zero()));

        let table = gen_multiples(&WideBcd::from_word(0x25)).unwrap();
        assert_eq!(table[4].limb(0), 0x100);
        assert_eq!(table[9].limb(0), 0x225);
    }

    #[test]
    fn multiples_carry_into_digit_17() {
        let nines = WideBcd::from_digits(&"9".repeat(16)).unwrap();
        let table = gen_multiples(&nines).unwrap();
        assert_eq!(
            crate::decnum::strip_leading_zeros(&table[9].to_digits()),
            "89999999999999991"
        );
    }

    #[test]
    fn multiples_use_exactly_eight_adds() {
        let mut stats = KernelStats::default();
        gen_multiples_with_stats(&WideBcd::from_word(0x1234), &mut stats).unwrap();
        assert_eq!(stats.adds, 8);
    }

    #[test]
    fn multiples_reject_wide_input() {
        let wide17 = WideBcd::from_digits(&"1".repeat(17)).unwrap();
        assert!(gen_multiples(&wide17).is_err());
    }

    #[test]
    fn accumulate_small_cases() {
        let mm = gen_multiples(&WideBcd::from_word(0x25)).unwrap();
        assert!(accumulate_partials(BcdWord(0), &mm).unwrap().is_zero());
        assert_eq!(accumulate_partials(BcdWord(1), &mm).unwrap(), mm[1]);
        assert_eq!(accumulate_partials(BcdWord(0x13), &mm).unwrap().limb(0), 0x325);
    }

    #[test]
    fn accumulate_matches_integer_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..1000 {
            let x: u64 = loop {
                let candidate: u64 = rng.random();
                if BcdWord(candidate).is_valid() {
                    break candidate;
                }
            };
            let y: u64 = loop {
                let candidate: u64 = rng.random();
                if BcdWord(candidate).is_valid() {
                    break candidate;
                }
            };
            let mm = gen_multiples(&WideBcd::from_word(x)).unwrap();
            let product = accumulate_partials(BcdWord(y), &mm).unwrap();
            assert!(product.is_valid());

            let exact = as_biguint(&WideBcd::from_word(x)) * as_biguint(&WideBcd::from_word(y));
            assert_eq!(as_biguint(&product), exact);
            assert!(product.significant_len() <= 32);
        }
    }

    #[test]
    fn accumulate_maximum_product() {
        let nines = WideBcd::from_digits(&"9".repeat(16)).unwrap();
        let mm = gen_multiples(&nines).unwrap();
        let product = accumulate_partials(BcdWord(0x9999999999999999), &mm).unwrap();
        let expect = BigUint::parse_bytes("9999999999999999".as_bytes(), 10).unwrap().pow(2);
        assert_eq!(as_biguint(&product), expect);
        assert_eq!(product.significant_len(), 32);
    }
}
