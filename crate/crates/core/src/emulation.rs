//! Deciding and certifying `f <=_k g`.
//!
//! `f <=_k g` holds when some injective `enc: {0,1} -> {0,1}^k` satisfies
//! `enc(f(a, b, c)) == g~^k(enc(a) enc(b) enc(c))` for all eight
//! neighborhoods. Two searches are provided: [`check_emulation_naive`] tries
//! every encoding for one pair of rules, and [`emulated_rules`] enumerates the
//! two-element subalgebras of `({0,1}^k, g~^k)` to find every emulated rule at
//! once.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::supercell::{check_k, SupercellAlgebra, MAX_SUPERCELL};
use crate::word::WordSampler;
use crate::{unravel_iter, EcaRule, Error, Result, Supercell, Word};

/// An injective map from the two states to `k`-bit supercells.
///
/// Ordering is by `(k, enc0, enc1)` with supercells compared as little-endian
/// integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Encoding {
    k: u8,
    enc0: u32,
    enc1: u32,
}

impl Encoding {
    pub fn new(k: usize, enc0: u32, enc1: u32) -> Result<Self> {
        Supercell::new(k, enc0)?;
        Supercell::new(k, enc1)?;
        if enc0 == enc1 {
            return Err(Error::NotInjective);
        }
        Ok(Encoding { k: k as u8, enc0, enc1 })
    }

    pub fn from_words(enc0: &Word, enc1: &Word) -> Result<Self> {
        if enc0.len() != enc1.len() {
            return Err(Error::SizeMismatch { expected: enc0.len(), got: enc1.len() });
        }
        let a = Supercell::from_word(enc0)?;
        let b = Supercell::from_word(enc1)?;
        Encoding::new(enc0.len(), a.bits(), b.bits())
    }

    /// `0 -> 0`, `1 -> 1` at supercell size 1.
    pub fn identity() -> Self {
        Encoding { k: 1, enc0: 0, enc1: 1 }
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k as usize
    }

    #[inline]
    pub fn enc0(&self) -> u32 {
        self.enc0
    }

    #[inline]
    pub fn enc1(&self) -> u32 {
        self.enc1
    }

    pub fn enc0_word(&self) -> Word {
        Word::from_u64(self.enc0 as u64, self.k())
    }

    pub fn enc1_word(&self) -> Word {
        Word::from_u64(self.enc1 as u64, self.k())
    }

    #[inline]
    pub fn encode(&self, bit: bool) -> u32 {
        if bit {
            self.enc1
        } else {
            self.enc0
        }
    }

    pub fn decode(&self, block: u32) -> Option<bool> {
        if block == self.enc0 {
            Some(false)
        } else if block == self.enc1 {
            Some(true)
        } else {
            None
        }
    }

    /// Exchanges the images of the two states.
    pub fn swapped(&self) -> Self {
        Encoding { k: self.k, enc0: self.enc1, enc1: self.enc0 }
    }

    /// Complements every bit of both images.
    pub fn complemented(&self) -> Self {
        let mask = (1u32 << self.k) - 1;
        Encoding { k: self.k, enc0: !self.enc0 & mask, enc1: !self.enc1 & mask }
    }

    /// Block substitution: block `i` of the output is `enc(w[i])`.
    pub fn encode_config(&self, w: &Word) -> Word {
        let mut out = Word::default();
        for b in w.iter() {
            out.push_bits(self.encode(b) as u64, self.k());
        }
        out
    }

    /// Inverse of [`Encoding::encode_config`]; `None` if some block is neither image.
    pub fn decode_config(&self, w: &Word) -> Option<Word> {
        let k = self.k();
        if w.len() % k != 0 {
            return None;
        }
        let mut out = Word::default();
        for i in 0..w.len() / k {
            let block = (w.bits_at(i * k) & ((1u64 << k) - 1)) as u32;
            out.push(self.decode(block)?);
        }
        Some(out)
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0 -> {}, 1 -> {}", self.enc0_word(), self.enc1_word())
    }
}

/// A certificate for `emulated <=_k emulator`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct EmulationWitness {
    pub emulated: EcaRule,
    pub emulator: EcaRule,
    pub encoding: Encoding,
}

impl EmulationWitness {
    pub fn new(emulated: EcaRule, emulator: EcaRule, encoding: Encoding) -> Self {
        EmulationWitness { emulated, emulator, encoding }
    }

    /// `f <=_1 f` through the identity encoding.
    pub fn reflexive(rule: EcaRule) -> Self {
        EmulationWitness::new(rule, rule, Encoding::identity())
    }

    /// `dual(f) <=_1 f` through `b -> 1 - b`.
    pub fn duality(rule: EcaRule) -> Self {
        EmulationWitness::new(rule.dual(), rule, Encoding::identity().swapped())
    }

    pub fn k(&self) -> usize {
        self.encoding.k()
    }

    /// Checks the eight defining equations.
    pub fn holds(&self) -> bool {
        let alg = SupercellAlgebra::new(self.emulator, self.k()).expect("encoding has a valid k");
        satisfies(self.emulated, &alg, self.encoding.enc0, self.encoding.enc1)
    }
}

impl fmt::Display for EmulationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {} <=_{} rule {} via {}", self.emulated, self.k(), self.emulator, self.encoding)
    }
}

#[inline]
fn satisfies(f: EcaRule, alg: &SupercellAlgebra, enc0: u32, enc1: u32) -> bool {
    let enc = |b: bool| if b { enc1 } else { enc0 };
    (0..8usize).all(|idx| {
        let (a, b, c) = (idx & 4 != 0, idx & 2 != 0, idx & 1 != 0);
        enc(f.output(idx)) == alg.apply(enc(a), enc(b), enc(c))
    })
}

/// Tries every ordered pair `(enc0, enc1)` of distinct supercells.
///
/// Scan order is `enc0` ascending, then `enc1` ascending (little-endian
/// integers); the first encoding satisfying all eight equations is returned.
/// `None` means `f` cannot be emulated by `g` at this supercell size.
pub fn check_emulation_naive(f: EcaRule, g: EcaRule, k: usize) -> Result<Option<Encoding>> {
    let alg = SupercellAlgebra::new(g, k)?;
    let n = alg.order();
    for enc0 in 0..n {
        for enc1 in 0..n {
            if enc0 != enc1 && satisfies(f, &alg, enc0, enc1) {
                return Ok(Some(Encoding { k: k as u8, enc0, enc1 }));
            }
        }
    }
    Ok(None)
}

/// Every rule emulated by `g` at supercell size `k`, with its encoding.
///
/// Each closed pair `{u, v}` of `({0,1}^k, g~^k)` yields two entries, one per
/// orientation of the encoding. Output is sorted by `(rule, encoding)`.
pub fn emulated_rules(g: EcaRule, k: usize) -> Result<Vec<(EcaRule, Encoding)>> {
    check_k(k)?;
    let mut out = emulated_rules_in(g, k, 0..1 << k)?;
    normalize(&mut out);
    Ok(out)
}

/// Sorts and deduplicates the concatenated output of [`emulated_rules_in`] calls.
pub fn normalize(found: &mut Vec<(EcaRule, Encoding)>) {
    found.sort_unstable();
    found.dedup();
}

/// Keeps the smallest encoding of each emulated rule, sorted by rule.
pub fn smallest_per_rule(mut found: Vec<(EcaRule, Encoding)>) -> Vec<(EcaRule, Encoding)> {
    found.sort_unstable();
    found.dedup_by_key(|(f, _)| *f);
    found.shrink_to_fit();
    found
}

/// The part of [`emulated_rules`] whose smaller pair element lies in `lower`.
///
/// Partitions of `0..2^k` may be processed independently; concatenating the
/// pieces and calling [`normalize`] gives the same result as one call.
///
/// Every closed pair must contain `g~^k(u, u, u)` and `g~^k(v, v, v)`. Those
/// diagonal values are tabulated once, so a `u` that is not idempotent has
/// exactly one candidate partner and the remaining six triples are only
/// evaluated for surviving pairs.
pub fn emulated_rules_in(g: EcaRule, k: usize, lower: Range<u32>) -> Result<Vec<(EcaRule, Encoding)>> {
    let alg = SupercellAlgebra::new(g, k)?;
    let n = alg.order();
    let diag: Vec<u32> = (0..n).map(|u| alg.apply(u, u, u)).collect();
    let mut out = Vec::new();
    let mut visit = |u: u32, v: u32| {
        let du = diag[u as usize];
        let dv = diag[v as usize];
        if (du != u && du != v) || (dv != u && dv != v) {
            return;
        }
        if let Some(f) = induced_rule(&alg, u, v) {
            let k = k as u8;
            out.push((f, Encoding { k, enc0: u, enc1: v }));
            out.push((f.dual(), Encoding { k, enc0: v, enc1: u }));
        }
    };
    for u in lower.start..lower.end.min(n) {
        let du = diag[u as usize];
        if du == u {
            for v in u + 1..n {
                visit(u, v);
            }
        } else if du > u {
            visit(u, du);
        }
    }
    Ok(out)
}

/// `enc^-1 . g~^k . enc` for `enc = (u, v)`, if `{u, v}` is closed.
pub fn induced_rule(alg: &SupercellAlgebra, u: u32, v: u32) -> Option<EcaRule> {
    let enc = |b: bool| if b { v } else { u };
    let mut wolfram = 0u8;
    for idx in 0..8u8 {
        let r = alg.apply(enc(idx & 4 != 0), enc(idx & 2 != 0), enc(idx & 1 != 0));
        if r == v {
            wolfram |= 1 << idx;
        } else if r != u {
            return None;
        }
    }
    Some(EcaRule::new(wolfram))
}

/// Samples the `t`-step commuting identity `enc(f~^t(c)) == g~^(kt)(enc(c))`.
///
/// Draws `samples` words of `length` bits from [`WordSampler::new`]`(seed)`
/// and checks `t = 1..=horizon`. The eight base equations are checked first, so a witness that violates
/// them is rejected regardless of the sample.
pub fn verify_witness(w: &EmulationWitness, length: usize, horizon: usize, samples: usize, seed: u64) -> Result<bool> {
    if length < 2 * horizon + 1 || length < 3 {
        return Err(Error::InvalidArgument("length must be at least max(3, 2 * horizon + 1)"));
    }
    if !w.holds() {
        return Ok(false);
    }
    let k = w.k();
    let mut sampler = WordSampler::new(seed);
    for _ in 0..samples {
        let mut direct = sampler.next_word(length);
        let mut emulated = w.encoding.encode_config(&direct);
        for _ in 0..horizon {
            direct = unravel_iter(w.emulated, &direct, 1)?;
            emulated = unravel_iter(w.emulator, &emulated, k)?;
            if w.encoding.encode_config(&direct) != emulated {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// From `f <=_k g` (encoding `phi`) and `g <=_l h` (encoding `psi`), builds
/// `f <=_(kl) h` with encoding `psi-bar . phi`: each bit of `phi(b)` is
/// replaced by its `psi` block.
pub fn compose_witnesses(first: &EmulationWitness, second: &EmulationWitness) -> Result<EmulationWitness> {
    if first.emulator != second.emulated {
        return Err(Error::RuleMismatch { first: first.emulator.wolfram(), second: second.emulated.wolfram() });
    }
    let kl = first.k() * second.k();
    if kl > MAX_SUPERCELL {
        return Err(Error::SupercellSize(kl));
    }
    let outer = |block: u32| {
        let cfg = Word::from_u64(block as u64, first.k());
        second.encoding.encode_config(&cfg).to_u64().expect("k*l <= 21") as u32
    };
    let encoding = Encoding::new(kl, outer(first.encoding.enc0), outer(first.encoding.enc1))?;
    let composed = EmulationWitness::new(first.emulated, second.emulator, encoding);
    if !composed.holds() {
        return Err(Error::InvalidWitness {
            emulated: composed.emulated.wolfram(),
            emulator: composed.emulator.wolfram(),
        });
    }
    Ok(composed)
}

/// Smallest `k` in `2..=kmax` with `f <=_k f`.
pub fn is_self_similar(f: EcaRule, kmax: usize) -> Result<Option<usize>> {
    if kmax < 2 {
        return Err(Error::InvalidArgument("kmax must be at least 2"));
    }
    check_k(kmax)?;
    for k in 2..=kmax {
        if emulated_rules(f, k)?.iter().any(|(r, _)| *r == f) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
