//! Finite bit sequences packed into `u64` chunks.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::{Error, Result};

const CHUNK_BITS: usize = 64;

/// A finite sequence of cell states.
///
/// Bit `i` lives in chunk `i / 64` at position `i % 64`. Bits past `len` in the
/// last chunk are always zero, so derived equality is bit-exact.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    chunks: Vec<u64>,
    len: usize,
}

#[inline]
fn chunk_count(len: usize) -> usize {
    len.div_ceil(CHUNK_BITS)
}

#[inline]
fn low_mask(bits: usize) -> u64 {
    if bits >= CHUNK_BITS {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

impl Word {
    pub fn zeros(len: usize) -> Self {
        Word { chunks: vec![0; chunk_count(len)], len }
    }

    pub fn filled(len: usize, bit: bool) -> Self {
        let mut w = Word { chunks: vec![if bit { u64::MAX } else { 0 }; chunk_count(len)], len };
        w.clear_tail();
        w
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut w = Word::default();
        for b in bits {
            w.push(b);
        }
        w
    }

    /// The low `len` bits of `value`, bit 0 first. `len` must be at most 64.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= CHUNK_BITS, "from_u64 takes at most 64 bits");
        let mut w = Word { chunks: vec![value; chunk_count(len)], len };
        w.clear_tail();
        w
    }

    /// Builds a word from raw chunks, discarding bits past `len`.
    pub fn from_chunks(mut chunks: Vec<u64>, len: usize) -> Self {
        chunks.resize(chunk_count(len), 0);
        let mut w = Word { chunks, len };
        w.clear_tail();
        w
    }

    /// Packed value of a word of at most 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        match self.len {
            0 => Some(0),
            1..=CHUNK_BITS => Some(self.chunks[0]),
            _ => None,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn chunks(&self) -> &[u64] {
        &self.chunks
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for word of length {}", self.len);
        (self.chunks[i / CHUNK_BITS] >> (i % CHUNK_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} out of range for word of length {}", self.len);
        let m = 1u64 << (i % CHUNK_BITS);
        if bit {
            self.chunks[i / CHUNK_BITS] |= m;
        } else {
            self.chunks[i / CHUNK_BITS] &= !m;
        }
    }

    pub fn push(&mut self, bit: bool) {
        if self.len % CHUNK_BITS == 0 {
            self.chunks.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, bit);
    }

    /// Appends the low `len` bits of `value` (bit 0 first).
    pub fn push_bits(&mut self, value: u64, len: usize) {
        debug_assert!(len <= CHUNK_BITS);
        if len == 0 {
            return;
        }
        let value = value & low_mask(len);
        let offset = self.len % CHUNK_BITS;
        if offset == 0 {
            self.chunks.push(value);
        } else {
            let last = self.chunks.len() - 1;
            self.chunks[last] |= value << offset;
            if offset + len > CHUNK_BITS {
                self.chunks.push(value >> (CHUNK_BITS - offset));
            }
        }
        self.len += len;
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// The 64 bits starting at `offset`, zero-filled past the end.
    #[inline]
    pub fn bits_at(&self, offset: usize) -> u64 {
        let q = offset / CHUNK_BITS;
        let r = offset % CHUNK_BITS;
        let lo = self.chunks.get(q).copied().unwrap_or(0) >> r;
        if r == 0 {
            lo
        } else {
            lo | self.chunks.get(q + 1).copied().unwrap_or(0) << (CHUNK_BITS - r)
        }
    }

    /// Bits `start..start + len` as a new word.
    pub fn slice(&self, start: usize, len: usize) -> Word {
        assert!(start + len <= self.len, "slice out of range");
        let chunks = (0..chunk_count(len)).map(|j| self.bits_at(start + j * CHUNK_BITS)).collect();
        Word::from_chunks(chunks, len)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for j in 0..chunk_count(other.len) {
            let n = (other.len - j * CHUNK_BITS).min(CHUNK_BITS);
            out.push_bits(other.chunks[j], n);
        }
        out
    }

    /// Cellwise XOR of two equal-length words.
    pub fn xor(&self, other: &Word) -> Result<Word> {
        if self.len != other.len {
            return Err(Error::SizeMismatch { expected: self.len, got: other.len });
        }
        let chunks = self.chunks.iter().zip(&other.chunks).map(|(a, b)| a ^ b).collect();
        Ok(Word { chunks, len: self.len })
    }

    pub fn count_ones(&self) -> usize {
        self.chunks.iter().map(|c| c.count_ones() as usize).sum()
    }

    #[inline]
    fn clear_tail(&mut self) {
        let r = self.len % CHUNK_BITS;
        if r != 0 {
            if let Some(last) = self.chunks.last_mut() {
                *last &= low_mask(r);
            }
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses a string of `0`/`1` characters, position 0 first.
    fn from_str(s: &str) -> Result<Self> {
        let mut w = Word::default();
        for c in s.chars() {
            match c {
                '0' => w.push(false),
                '1' => w.push(true),
                other => return Err(Error::InvalidBit(other)),
            }
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Reproducible pseudo-random words.
///
/// ChaCha8 seeded through `SeedableRng::seed_from_u64`. A word of `len` bits
/// consumes `ceil(len / 64)` consecutive `next_u64` outputs, low bit first,
/// with surplus high bits of the last output discarded.
pub struct WordSampler {
    rng: ChaCha8Rng,
}

impl WordSampler {
    pub fn new(seed: u64) -> Self {
        WordSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn next_word(&mut self, len: usize) -> Word {
        let chunks = (0..chunk_count(len)).map(|_| self.rng.next_u64()).collect();
        Word::from_chunks(chunks, len)
    }
}
