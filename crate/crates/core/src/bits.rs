//! Packed bit storage backing the membership matrices.
//!
//! Bit `i` lives in word `i / 64` at position `i % 64`. Trailing bits of the
//! last word are kept zero so that equality and ordering can work word-wise.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct Bits {
    len: usize,
    words: Vec<u64>,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits { len, words: vec![0; word_count(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Bits { len, words: vec![!0u64; word_count(len)] };
        b.mask_tail();
        b
    }

    /// Clears the unused bits of the last word.
    fn mask_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn zip_with(&self, other: &Bits, f: impl Fn(u64, u64) -> u64) -> Bits {
        debug_assert_eq!(self.len, other.len);
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Bits { len: self.len, words }
    }

    pub fn union(&self, other: &Bits) -> Bits {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Bits) -> Bits {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Bits) -> Bits {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Bits {
        let mut b = Bits {
            len: self.len,
            words: self.words.iter().map(|&w| !w).collect(),
        };
        b.mask_tail();
        b
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(&a, &b)| a & b == 0)
    }

    /// Indices of the set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + bit)
                }
            })
        })
    }

    /// Lexicographic order of the bitstrings: the first differing bit decides,
    /// with `0 < 1`.
    pub fn cmp_lex(&self, other: &Bits) -> Ordering {
        debug_assert_eq!(self.len, other.len);
        for (&a, &b) in self.words.iter().zip(other.words.iter()) {
            if a != b {
                let bit = (a ^ b).trailing_zeros();
                return if a >> bit & 1 == 0 { Ordering::Less } else { Ordering::Greater };
            }
        }
        Ordering::Equal
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl core::fmt::Debug for Bits {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Bits({})", self.to_bitstring())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_bits_stay_masked() {
        let ones = Bits::ones(5);
        assert_eq!(ones.to_bitstring(), "11111");
        assert_eq!(ones.count_ones(), 5);
        let compl = ones.complement();
        assert!(compl.is_zero());
        assert_eq!(compl.complement(), ones);
    }

    #[test]
    fn lex_order_is_bitstring_order() {
        let mut a = Bits::zeros(70);
        let mut b = Bits::zeros(70);
        a.set(3, true);
        b.set(3, true);
        b.set(65, true);
        // "0001..." == prefix, b has an extra 1 later -> a < b
        assert_eq!(a.cmp_lex(&b), Ordering::Less);
        a.set(0, true);
        // now a starts with 1 -> a > b
        assert_eq!(a.cmp_lex(&b), Ordering::Greater);
        assert_eq!(a.cmp_lex(&a.clone()), Ordering::Equal);
    }

    #[test]
    fn iter_ones_ascending() {
        let mut b = Bits::zeros(130);
        for i in [0usize, 63, 64, 97, 129] {
            b.set(i, true);
        }
        let got: Vec<usize> = b.iter_ones().collect();
        assert_eq!(got, vec![0, 63, 64, 97, 129]);
    }

    #[test]
    fn empty_width_is_consistent() {
        let z = Bits::zeros(0);
        assert!(z.is_zero());
        assert_eq!(z, Bits::ones(0));
        assert_eq!(z.to_bitstring(), "");
    }
}
