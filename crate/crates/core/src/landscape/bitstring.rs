use std::fmt;
use std::str::FromStr;

use rand::RngCore;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Fixed-length bit string packed into 64-bit words.
///
/// Bit `i` lives at `words[i / 64] >> (i % 64)`. Padding bits above `len` in
/// the last word are always zero so word-level popcounts stay exact.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

fn tail_mask(len: usize) -> u64 {
    match len % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

impl BitString {
    pub fn zeros(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::invalid("bit string length must be at least 1"));
        }
        Ok(BitString {
            words: vec![0; words_for(len)],
            len,
        })
    }

    pub fn ones(len: usize) -> Result<Self> {
        let mut s = Self::zeros(len)?;
        s.words.iter_mut().for_each(|w| *w = u64::MAX);
        s.clear_padding();
        Ok(s)
    }

    /// Builds a string from a slice of 0/1 bytes.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut s = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => s.words[i / WORD] |= 1 << (i % WORD),
                other => {
                    return Err(Error::invalid(format!(
                        "bit {i} has value {other}, expected 0 or 1"
                    )))
                }
            }
        }
        Ok(s)
    }

    /// Uniform random string. Consumes exactly `ceil(len / 64)` calls to
    /// `next_u64`, one per word in order; padding bits are discarded.
    pub fn random<R: RngCore + ?Sized>(len: usize, rng: &mut R) -> Result<Self> {
        let mut s = Self::zeros(len)?;
        for w in s.words.iter_mut() {
            *w = rng.next_u64();
        }
        s.clear_padding();
        Ok(s)
    }

    fn clear_padding(&mut self) {
        let mask = tail_mask(self.len);
        if let Some(last) = self.words.last_mut() {
            *last &= mask;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn complement(&self) -> Self {
        let mut s = BitString {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        s.clear_padding();
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// Hamming distance; both strings must have the same length.
    pub fn hamming(&self, other: &BitString) -> Result<usize> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(word_distance(&self.words, &other.words))
    }
}

#[inline]
pub(crate) fn word_distance(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x ^ y).count_ones() as usize)
        .sum()
}

/// Number of positions where `a` and `b` differ.
pub fn hamming(a: &BitString, b: &BitString) -> Result<usize> {
    a.hamming(b)
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::invalid(format!("unexpected character {other:?} in bit string"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::from_bits(&bits)
    }
}
