//! Binary words and the elementary combinatorics on them: runs, weights,
//! VT syndromes, inversion numbers, the differential map `psi`, common
//! affixes and ≤2-periodic windows.
//!
//! Positions are 1-indexed in every public function, matching the usual
//! `x_1 x_2 ... x_n` notation. A word is stored big-endian in a `u64`
//! (position 1 is the most significant of the `len` low bits), so the numeric
//! order of [`Word::bits`] is the lexicographic order of the strings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Longest supported word.
pub const MAX_LEN: usize = 64;

#[inline]
pub(crate) fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A binary word of length at most [`MAX_LEN`].
///
/// Ordering compares length first, then the canonical encoding, so sets of
/// equal-length words sort lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    len: u8,
    bits: u64,
}

impl Word {
    /// Builds a word from its canonical encoding. Fails if `bits` does not
    /// fit in `len` symbols.
    pub fn new(bits: u64, len: usize) -> Result<Self> {
        if len > MAX_LEN {
            return Err(Error::TooLong(len));
        }
        if bits & !mask(len) != 0 {
            return Err(Error::InvalidParams(format!(
                "encoding {bits} does not fit in {len} bits"
            )));
        }
        Ok(Word {
            len: len as u8,
            bits,
        })
    }

    /// Like [`Word::new`] but silently drops bits above `len`.
    #[inline]
    pub fn from_bits(bits: u64, len: usize) -> Self {
        debug_assert!(len <= MAX_LEN);
        Word {
            len: len as u8,
            bits: bits & mask(len),
        }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn zeros(len: usize) -> Self {
        Word::from_bits(0, len)
    }

    /// `symbol` repeated `count` times.
    pub fn repeat(symbol: u8, count: usize) -> Self {
        if symbol == 0 {
            Word::zeros(count)
        } else {
            Word::from_bits(u64::MAX, count)
        }
    }

    pub fn from_symbols(symbols: &[u8]) -> Result<Self> {
        if symbols.len() > MAX_LEN {
            return Err(Error::TooLong(symbols.len()));
        }
        let mut bits = 0u64;
        for (idx, &s) in symbols.iter().enumerate() {
            if s > 1 {
                return Err(Error::InvalidSymbol {
                    symbol: char::from(b'0'.wrapping_add(s)),
                    position: idx + 1,
                });
            }
            bits = (bits << 1) | u64::from(s);
        }
        Ok(Word::from_bits(bits, symbols.len()))
    }

    /// Every word of length `len`, in ascending order.
    pub fn all(len: usize) -> impl DoubleEndedIterator<Item = Word> {
        assert!(len < 64, "cannot enumerate words of length {len}");
        (0..(1u64 << len)).map(move |bits| Word::from_bits(bits, len))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Canonical integer encoding `sum x_i 2^(n-i)`.
    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Symbol at 1-indexed position `i`.
    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        debug_assert!(i >= 1 && i <= self.len());
        ((self.bits >> (self.len() - i)) & 1) as u8
    }

    pub fn symbols(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=self.len()).map(move |i| self.get(i))
    }

    /// Flips the symbol at 1-indexed position `i`.
    #[inline]
    pub fn flip(&self, i: usize) -> Word {
        debug_assert!(i >= 1 && i <= self.len());
        Word {
            len: self.len,
            bits: self.bits ^ (1u64 << (self.len() - i)),
        }
    }

    /// Removes the symbol at 1-indexed position `i`.
    #[inline]
    pub fn delete(&self, i: usize) -> Word {
        let n = self.len();
        debug_assert!(i >= 1 && i <= n);
        let high = self.bits.checked_shr((n - i + 1) as u32).unwrap_or(0);
        let low = self.bits & mask(n - i);
        Word {
            len: self.len - 1,
            bits: (high << (n - i)) | low,
        }
    }

    /// Inserts `symbol` so that it lands at 1-indexed position `pos`
    /// (`1..=n+1`).
    #[inline]
    pub fn insert(&self, pos: usize, symbol: u8) -> Word {
        let n = self.len();
        debug_assert!(pos >= 1 && pos <= n + 1 && n < MAX_LEN);
        let tail = n + 1 - pos;
        let high = self.bits.checked_shr(tail as u32).unwrap_or(0);
        let low = self.bits & mask(tail);
        Word {
            len: self.len + 1,
            bits: high.checked_shl(tail as u32 + 1).unwrap_or(0) | (u64::from(symbol & 1) << tail) | low,
        }
    }

    /// Symbols at 0-based positions `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        debug_assert!(start <= end && end <= self.len());
        let bits = self.bits.checked_shr((self.len() - end) as u32).unwrap_or(0) & mask(end - start);
        Word::from_bits(bits, end - start)
    }

    /// First `k` symbols.
    pub fn prefix(&self, k: usize) -> Word {
        self.slice(0, k)
    }

    /// Symbols from 0-based position `k` to the end.
    pub fn suffix_from(&self, k: usize) -> Word {
        self.slice(k, self.len())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let len = self.len() + other.len();
        assert!(len <= MAX_LEN, "concatenation exceeds {MAX_LEN} symbols");
        let high = self.bits.checked_shl(other.len() as u32).unwrap_or(0);
        Word::from_bits(high | other.bits, len)
    }

    pub fn push(&self, symbol: u8) -> Word {
        self.concat(&Word::from_bits(u64::from(symbol), 1))
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn complement(&self) -> Word {
        Word::from_bits(!self.bits, self.len())
    }

    #[inline]
    pub fn reverse(&self) -> Word {
        if self.len == 0 {
            return *self;
        }
        Word {
            len: self.len,
            bits: self.bits.reverse_bits() >> (64 - self.len()),
        }
    }

    /// Number of positions where the words differ. Both must have the same length.
    #[inline]
    pub fn hamming(&self, other: &Word) -> usize {
        debug_assert_eq!(self.len, other.len);
        (self.bits ^ other.bits).count_ones() as usize
    }

    /// Number of runs `r(x)`.
    #[inline]
    pub fn run_count(&self) -> usize {
        let n = self.len();
        if n == 0 {
            return 0;
        }
        1 + ((self.bits ^ (self.bits >> 1)) & mask(n - 1)).count_ones() as usize
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.symbols() {
            f.write_str(if s == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let len = s.chars().count();
        if len > MAX_LEN {
            return Err(Error::TooLong(len));
        }
        let mut bits = 0u64;
        for (idx, ch) in s.chars().enumerate() {
            let bit = match ch {
                '0' => 0,
                '1' => 1,
                other => {
                    return Err(Error::InvalidSymbol {
                        symbol: other,
                        position: idx + 1,
                    })
                }
            };
            bits = (bits << 1) | bit;
        }
        Ok(Word::from_bits(bits, len))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One maximal constant block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Run {
    /// 1-indexed position of the first symbol.
    pub start: usize,
    pub symbol: u8,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunProfile {
    pub run_count: usize,
    pub boundaries: Vec<Run>,
}

pub fn runs(x: &Word) -> RunProfile {
    let mut boundaries: Vec<Run> = Vec::new();
    for (idx, s) in x.symbols().enumerate() {
        match boundaries.last_mut() {
            Some(run) if run.symbol == s => run.length += 1,
            _ => boundaries.push(Run {
                start: idx + 1,
                symbol: s,
                length: 1,
            }),
        }
    }
    RunProfile {
        run_count: boundaries.len(),
        boundaries,
    }
}

pub fn weight(x: &Word) -> usize {
    x.weight()
}

pub fn complement(x: &Word) -> Word {
    x.complement()
}

pub fn reverse(x: &Word) -> Word {
    x.reverse()
}

/// Weighted VT syndrome of order `k` without any modulus:
/// `sum_i w_k(i) x_i` with `w_1(i) = i` and `w_2(i) = i(i+1)/2`.
pub fn vt_syndrome(x: &Word, k: u32) -> Result<u64> {
    let weight: fn(u64) -> u64 = match k {
        1 => |i| i,
        2 => |i| i * (i + 1) / 2,
        other => return Err(Error::UnsupportedOrder(other)),
    };
    Ok((1..=x.len())
        .filter(|&i| x.get(i) == 1)
        .map(|i| weight(i as u64))
        .sum())
}

/// Number of pairs `i < j` with `x_i = 1` and `x_j = 0`.
pub fn inversion_number(x: &Word) -> u64 {
    let mut zeros_after = 0u64;
    let mut inversions = 0u64;
    for i in (1..=x.len()).rev() {
        if x.get(i) == 0 {
            zeros_after += 1;
        } else {
            inversions += zeros_after;
        }
    }
    inversions
}

/// `psi(x)_i = x_i xor x_(i-1)` with `x_0 = 0`.
pub fn psi(x: &Word) -> Word {
    Word::from_bits(x.bits() ^ (x.bits() >> 1), x.len())
}

/// Prefix-xor accumulation; the inverse of [`psi`].
pub fn psi_inverse(y: &Word) -> Word {
    let mut v = y.bits();
    let mut shift = 1;
    while shift < 64 {
        v ^= v >> shift;
        shift <<= 1;
    }
    Word::from_bits(v, y.len())
}

/// Longest common prefix `a` and suffix `b` of two distinct equal-length words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AffixDecomposition {
    pub prefix: Word,
    pub suffix: Word,
    pub hamming: usize,
    /// 1-indexed first position where the words differ.
    pub first_diff: usize,
    /// 1-indexed last position where the words differ.
    pub last_diff: usize,
}

impl AffixDecomposition {
    /// The differing middle section of `w`, i.e. `w[first_diff..=last_diff]`.
    pub fn middle(&self, w: &Word) -> Word {
        w.slice(self.first_diff - 1, self.last_diff)
    }
}

pub fn common_affixes(x: &Word, y: &Word) -> Result<AffixDecomposition> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    if x == y {
        return Err(Error::EqualInputs);
    }
    let n = x.len();
    let diff = x.bits() ^ y.bits();
    let first_diff = (diff.leading_zeros() as usize) - (64 - n) + 1;
    let last_diff = n - diff.trailing_zeros() as usize;
    Ok(AffixDecomposition {
        prefix: x.prefix(first_diff - 1),
        suffix: x.suffix_from(last_diff),
        hamming: diff.count_ones() as usize,
        first_diff,
        last_diff,
    })
}

/// Length of the longest window in which every symbol equals the one two
/// places later. Windows of length at most two qualify vacuously.
pub fn max_le2_periodic_length(x: &Word) -> usize {
    let n = x.len();
    if n <= 2 {
        return n;
    }
    let mut best = 2;
    let mut current = 2;
    for k in 3..=n {
        if x.get(k) == x.get(k - 2) {
            current += 1;
            best = best.max(current);
        } else {
            current = 2;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn run_examples() {
        assert_eq!(runs(&w("0000")).run_count, 1);
        let p = runs(&w("0110"));
        assert_eq!(p.run_count, 3);
        let b: Vec<_> = p
            .boundaries
            .iter()
            .map(|r| (r.start, r.symbol, r.length))
            .collect();
        assert_eq!(b, vec![(1, 0, 1), (2, 1, 2), (4, 0, 1)]);
        assert_eq!(runs(&w("0101")).run_count, 4);
        assert_eq!(runs(&Word::empty()).run_count, 0);
        assert_eq!(w("0101").run_count(), 4);
    }

    #[test]
    fn weight_complement_reverse() {
        assert_eq!(weight(&w("0110")), 2);
        assert_eq!(complement(&w("010")), w("101"));
        assert_eq!(reverse(&w("001")), w("100"));
    }

    #[test]
    fn vt_examples() {
        assert_eq!(vt_syndrome(&w("0000"), 1).unwrap(), 0);
        assert_eq!(vt_syndrome(&w("0101"), 1).unwrap(), 6);
        assert_eq!(vt_syndrome(&w("0101"), 2).unwrap(), 13);
        assert_eq!(vt_syndrome(&w("0101"), 3), Err(Error::UnsupportedOrder(3)));
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(inversion_number(&w("000")), 0);
        assert_eq!(inversion_number(&w("10")), 1);
        assert_eq!(inversion_number(&w("1100")), 4);
        assert_eq!(inversion_number(&Word::empty()), 0);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&w("0000")), w("0000"));
        assert_eq!(psi(&w("0110")), w("0101"));
        assert_eq!(psi_inverse(&w("1000")), w("1111"));
    }

    #[test]
    fn affix_examples() {
        let d = common_affixes(&w("0110"), &w("1010")).unwrap();
        assert_eq!(d.prefix, Word::empty());
        assert_eq!(d.suffix, w("10"));
        assert_eq!((d.hamming, d.first_diff, d.last_diff), (2, 1, 2));

        let d = common_affixes(&w("000"), &w("010")).unwrap();
        assert_eq!((d.prefix, d.suffix, d.hamming), (w("0"), w("0"), 1));

        let d = common_affixes(&w("0"), &w("1")).unwrap();
        assert_eq!((d.prefix, d.suffix, d.hamming), (Word::empty(), Word::empty(), 1));

        assert_eq!(common_affixes(&w("01"), &w("01")), Err(Error::EqualInputs));
        assert!(matches!(
            common_affixes(&w("01"), &w("011")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn periodic_window_examples() {
        assert_eq!(max_le2_periodic_length(&w("000000")), 6);
        assert_eq!(max_le2_periodic_length(&w("001011")), 4);
        assert_eq!(max_le2_periodic_length(&w("001100")), 2);
        assert_eq!(max_le2_periodic_length(&w("1")), 1);
        assert_eq!(max_le2_periodic_length(&Word::empty()), 0);
    }

    #[test]
    fn parse_rejects_bad_symbols() {
        assert_eq!(
            "0120".parse::<Word>(),
            Err(Error::InvalidSymbol {
                symbol: '2',
                position: 3
            })
        );
        assert!(matches!("0".repeat(65).parse::<Word>(), Err(Error::TooLong(65))));
        assert_eq!("".parse::<Word>().unwrap(), Word::empty());
    }

    #[test]
    fn edit_primitives() {
        let x = w("0110");
        assert_eq!(x.delete(1), w("110"));
        assert_eq!(x.delete(4), w("011"));
        assert_eq!(x.insert(1, 1), w("10110"));
        assert_eq!(x.insert(5, 1), w("01101"));
        assert_eq!(x.insert(3, 0), w("01010"));
        assert_eq!(x.slice(1, 3), w("11"));
        assert_eq!(w("01").concat(&w("10")), x);
        let long = Word::repeat(1, 64);
        assert_eq!(long.delete(1), Word::repeat(1, 63));
        assert_eq!(long.reverse(), long);
    }

    #[test]
    fn long_words_are_supported() {
        let s = "1011001110001111000011111000001111110000000";
        let x = w(s);
        assert_eq!(x.len(), s.len());
        assert_eq!(x.to_string(), s);
        assert_eq!(runs(&x).run_count, x.run_count());
        assert_eq!(psi_inverse(&psi(&x)), x);
    }
}
