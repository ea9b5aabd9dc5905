//! Unravelling a local rule over open words, and the supercell algebras
//! `({0,1}^k, g~^k)`.
//!
//! `g~` applies `g` to every length-3 window of a word, so a word of `3k` bits
//! shrinks to exactly `k` bits after `k` iterations. Read as a ternary
//! operation on `k`-bit blocks, that is the supercell algebra.

use core::fmt;

use crate::rule::PackedRule;
use crate::{EcaRule, Error, Result, Word};

/// Largest supported supercell size; three supercells must fit in a `u64`.
pub const MAX_SUPERCELL: usize = 21;

/// Accepts supercell sizes `1..=MAX_SUPERCELL`.
pub fn check_k(k: usize) -> Result<()> {
    if (1..=MAX_SUPERCELL).contains(&k) {
        Ok(())
    } else {
        Err(Error::SupercellSize(k))
    }
}

/// A block of `k` cells, packed little-endian (cell 0 is bit 0).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Supercell {
    k: u8,
    bits: u32,
}

impl Supercell {
    pub fn new(k: usize, bits: u32) -> Result<Self> {
        check_k(k)?;
        if (bits as u64) >> k != 0 {
            return Err(Error::SupercellValue { k, value: bits as u64 });
        }
        Ok(Supercell { k: k as u8, bits })
    }

    pub fn from_word(w: &Word) -> Result<Self> {
        check_k(w.len())?;
        Ok(Supercell { k: w.len() as u8, bits: w.to_u64().expect("k <= 21") as u32 })
    }

    pub fn to_word(self) -> Word {
        Word::from_u64(self.bits as u64, self.k as usize)
    }

    #[inline]
    pub fn k(self) -> usize {
        self.k as usize
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }
}

impl fmt::Display for Supercell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_word(), f)
    }
}

/// `f~(w)`: the rule applied to every window `w[i], w[i+1], w[i+2]`.
pub fn unravel(rule: EcaRule, w: &Word) -> Result<Word> {
    if w.len() < 3 {
        return Err(Error::TooShort { len: w.len(), needed: 3 });
    }
    Ok(PackedRule::new(rule).windows(w))
}

/// `f~^t(w)`; the output is `2t` bits shorter than `w`.
pub fn unravel_iter(rule: EcaRule, w: &Word, t: usize) -> Result<Word> {
    let needed = 2 * t + 1;
    if t > 0 && w.len() < needed {
        return Err(Error::TooShort { len: w.len(), needed });
    }
    let packed = PackedRule::new(rule);
    let mut cur = w.clone();
    for _ in 0..t {
        cur = packed.windows(&cur);
    }
    Ok(cur)
}

/// The algebra operation `g~^k(u, v, x)` on three supercells.
pub fn supercell_step(rule: EcaRule, k: usize, u: Supercell, v: Supercell, x: Supercell) -> Result<Supercell> {
    let alg = SupercellAlgebra::new(rule, k)?;
    for s in [u, v, x] {
        if s.k() != k {
            return Err(Error::SizeMismatch { expected: k, got: s.k() });
        }
    }
    Ok(Supercell { k: k as u8, bits: alg.apply(u.bits, v.bits, x.bits) })
}

/// `({0,1}^k, g~^k)` evaluated on packed integers.
///
/// Elements are the integers `0..2^k`. The ternary operation is computed
/// directly on the concatenated `3k`-bit word rather than from a
/// materialized table, which would need `2^(3k)` entries.
#[derive(Clone, Copy, Debug)]
pub struct SupercellAlgebra {
    rule: EcaRule,
    k: usize,
    packed: PackedRule,
}

impl SupercellAlgebra {
    pub fn new(rule: EcaRule, k: usize) -> Result<Self> {
        check_k(k)?;
        Ok(SupercellAlgebra { rule, k, packed: PackedRule::new(rule) })
    }

    pub fn rule(&self) -> EcaRule {
        self.rule
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of elements, `2^k`.
    pub fn order(&self) -> u32 {
        1 << self.k
    }

    /// `g~^k` on a `3k`-bit word held in the low bits of `word`.
    #[inline]
    pub fn apply_concat(&self, word: u64) -> u32 {
        let mut w = word;
        let mut len = 3 * self.k;
        for _ in 0..self.k {
            len -= 2;
            w = self.packed.eval(w, w >> 1, w >> 2) & ((1u64 << len) - 1);
        }
        w as u32
    }

    #[inline]
    pub fn apply(&self, u: u32, v: u32, x: u32) -> u32 {
        let k = self.k;
        self.apply_concat(u as u64 | (v as u64) << k | (x as u64) << (2 * k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn sc(s: &str) -> Supercell {
        Supercell::from_word(&w(s)).unwrap()
    }

    // Windowed evaluation over plain bools.
    fn unravel_oracle(rule: EcaRule, bits: &[bool]) -> Vec<bool> {
        bits.windows(3).map(|x| rule.apply(x[0], x[1], x[2])).collect()
    }

    #[test]
    fn unravel_examples() {
        assert_eq!(unravel(EcaRule::new(150), &w("01101")).unwrap(), w("000"));
        assert_eq!(unravel(EcaRule::new(204), &w("1011001")).unwrap(), w("01100"));
        assert_eq!(unravel(EcaRule::new(0), &w("111111")).unwrap(), w("0000"));
        assert_eq!(unravel(EcaRule::new(0), &w("11")), Err(Error::TooShort { len: 2, needed: 3 }));
    }

    #[test]
    fn unravel_iter_examples() {
        let x = w("0110");
        assert_eq!(unravel_iter(EcaRule::new(30), &x, 0).unwrap(), x);
        assert_eq!(unravel_iter(EcaRule::new(150), &w("011011"), 2).unwrap(), w("00"));
        assert_eq!(unravel_iter(EcaRule::new(110), &w("0110101"), 3).unwrap().len(), 1);
        assert!(unravel_iter(EcaRule::new(110), &w("011010"), 3).is_err());
    }

    #[test]
    fn supercell_step_examples() {
        let r204 = EcaRule::new(204);
        assert_eq!(supercell_step(r204, 2, sc("10"), sc("01"), sc("11")).unwrap(), sc("01"));
        // The six-bit row 100110 reduces to 01 after two XOR passes.
        assert_eq!(supercell_step(EcaRule::new(150), 2, sc("10"), sc("01"), sc("10")).unwrap(), sc("01"));
        for k in 1..=5 {
            let zero = Supercell::new(k, 0).unwrap();
            let any = Supercell::new(k, (1 << k) - 1).unwrap();
            assert_eq!(supercell_step(EcaRule::new(0), k, any, any, zero).unwrap(), zero);
        }
        assert_eq!(
            supercell_step(r204, 2, sc("10"), sc("011"), sc("11")),
            Err(Error::SizeMismatch { expected: 2, got: 3 })
        );
        assert_eq!(SupercellAlgebra::new(r204, 0).unwrap_err(), Error::SupercellSize(0));
        assert_eq!(SupercellAlgebra::new(r204, 22).unwrap_err(), Error::SupercellSize(22));
    }

    #[test]
    fn size_one_is_the_local_rule() {
        for r in EcaRule::all() {
            let alg = SupercellAlgebra::new(r, 1).unwrap();
            for idx in 0..8u32 {
                let (a, b, c) = ((idx >> 2) & 1, (idx >> 1) & 1, idx & 1);
                assert_eq!(alg.apply(a, b, c) == 1, r.output(idx as usize));
            }
        }
    }

    proptest! {
        #[test]
        fn unravel_matches_windows(rule in any::<u8>(), bits in proptest::collection::vec(any::<bool>(), 3..300)) {
            let rule = EcaRule::new(rule);
            let got = unravel(rule, &Word::from_bits(bits.iter().copied())).unwrap();
            prop_assert_eq!(got, Word::from_bits(unravel_oracle(rule, &bits)));
        }

        #[test]
        fn composition_law(rule in any::<u8>(), bits in proptest::collection::vec(any::<bool>(), 21..160), s in 0usize..5, t in 0usize..5) {
            let rule = EcaRule::new(rule);
            let x = Word::from_bits(bits);
            let direct = unravel_iter(rule, &x, s + t).unwrap();
            let staged = unravel_iter(rule, &unravel_iter(rule, &x, s).unwrap(), t).unwrap();
            prop_assert_eq!(direct, staged);
        }

        #[test]
        fn algebra_matches_unravel(rule in any::<u8>(), k in 1usize..=MAX_SUPERCELL, seed in any::<u64>()) {
            let rule = EcaRule::new(rule);
            let mask = (1u64 << k) - 1;
            let (u, v, x) = (seed & mask, (seed >> 21) & mask, (seed >> 42) & mask);
            let alg = SupercellAlgebra::new(rule, k).unwrap();
            let word = Word::from_u64(u, k).concat(&Word::from_u64(v, k)).concat(&Word::from_u64(x, k));
            let expected = unravel_iter(rule, &word, k).unwrap();
            prop_assert_eq!(Word::from_u64(alg.apply(u as u32, v as u32, x as u32) as u64, k), expected);
        }

        // Unrolling a cyclic configuration t cells on each side makes the open
        // unravelling reproduce t cyclic steps on every cell.
        #[test]
        fn open_unravel_agrees_with_cyclic(rule in any::<u8>(), bits in proptest::collection::vec(any::<bool>(), 3..40), t in 0usize..6) {
            use crate::rule::{trajectory, Grid};
            let rule = EcaRule::new(rule);
            let n = bits.len();
            let unrolled: Vec<bool> = (0..n + 2 * t).map(|i| bits[(i + n * t - t) % n]).collect();
            let open = unravel_iter(rule, &Word::from_bits(unrolled), t).unwrap();
            let cyclic = trajectory(rule, &Grid::cyclic(Word::from_bits(bits)), t).unwrap();
            prop_assert_eq!(&open, &cyclic[t].cells);
        }
    }
}
