//! Local rules, their symmetries, and the global rule on finite grids.

use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result, Word};

/// An elementary cellular automaton, stored as its Wolfram number.
///
/// Bit `4*b1 + 2*b2 + b3` of the number is the next state of a cell whose
/// left neighbor, own state and right neighbor are `b1`, `b2`, `b3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct EcaRule(u8);

impl EcaRule {
    pub const ZERO: EcaRule = EcaRule(0);
    pub const IDENTITY: EcaRule = EcaRule(204);

    pub const fn new(wolfram: u8) -> Self {
        EcaRule(wolfram)
    }

    pub fn from_wolfram(n: u32) -> Result<Self> {
        u8::try_from(n).map(EcaRule).map_err(|_| Error::RuleOutOfRange(n))
    }

    /// Builds the rule whose output on `(b1, b2, b3)` is `f(b1, b2, b3)`.
    pub fn from_fn(f: impl Fn(bool, bool, bool) -> bool) -> Self {
        let mut n = 0u8;
        for idx in 0..8u8 {
            if f(idx & 4 != 0, idx & 2 != 0, idx & 1 != 0) {
                n |= 1 << idx;
            }
        }
        EcaRule(n)
    }

    /// All 256 rules in ascending Wolfram order.
    pub fn all() -> impl DoubleEndedIterator<Item = EcaRule> + ExactSizeIterator {
        (0..=255u8).map(EcaRule)
    }

    #[inline]
    pub const fn wolfram(self) -> u8 {
        self.0
    }

    /// The eight outputs indexed by neighborhood.
    pub fn table(self) -> [bool; 8] {
        core::array::from_fn(|i| (self.0 >> i) & 1 == 1)
    }

    #[inline]
    pub fn output(self, neighborhood: usize) -> bool {
        (self.0 >> neighborhood) & 1 == 1
    }

    #[inline]
    pub fn apply(self, b1: bool, b2: bool, b3: bool) -> bool {
        self.output(((b1 as usize) << 2) | ((b2 as usize) << 1) | b3 as usize)
    }

    /// Swaps the roles of the two states on inputs and output.
    pub fn dual(self) -> Self {
        EcaRule::from_fn(|a, b, c| !self.apply(!a, !b, !c))
    }

    /// Swaps the left and right neighbors.
    pub fn mirror(self) -> Self {
        EcaRule::from_fn(|a, b, c| self.apply(c, b, a))
    }

    /// Negates the output.
    pub fn complement(self) -> Self {
        EcaRule(!self.0)
    }

    /// True iff `f(x ^ y) == f(x) ^ f(y)` for all neighborhoods `x`, `y`.
    pub fn is_linear(self) -> bool {
        (0..8).all(|x| (0..8).all(|y| self.output(x ^ y) == self.output(x) ^ self.output(y)))
    }

    /// Linear, or linear after negating the output.
    pub fn is_affine(self) -> bool {
        self.is_linear() || self.complement().is_linear()
    }

    /// Evaluates the rule on 64 neighborhoods at once: bit `i` of the result is
    /// `f(left_i, center_i, right_i)`.
    #[inline]
    pub fn eval_packed(self, left: u64, center: u64, right: u64) -> u64 {
        PackedRule::new(self).eval(left, center, right)
    }
}

impl fmt::Debug for EcaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EcaRule({})", self.0)
    }
}

impl fmt::Display for EcaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u8> for EcaRule {
    fn from(n: u8) -> Self {
        EcaRule(n)
    }
}

/// The truth table broadcast to full-width masks, for bit-parallel evaluation.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PackedRule {
    masks: [u64; 8],
}

impl PackedRule {
    pub(crate) fn new(rule: EcaRule) -> Self {
        PackedRule { masks: core::array::from_fn(|i| if rule.output(i) { u64::MAX } else { 0 }) }
    }

    /// Multiplexer tree over the table: right bit, then center, then left.
    #[inline(always)]
    pub(crate) fn eval(&self, left: u64, center: u64, right: u64) -> u64 {
        #[inline(always)]
        fn mux(lo: u64, hi: u64, sel: u64) -> u64 {
            (lo & !sel) | (hi & sel)
        }
        let t = &self.masks;
        let c0 = mux(mux(t[0], t[1], right), mux(t[2], t[3], right), center);
        let c1 = mux(mux(t[4], t[5], right), mux(t[6], t[7], right), center);
        mux(c0, c1, left)
    }

    /// Applies the rule to every length-3 window of `w`.
    pub(crate) fn windows(&self, w: &Word) -> Word {
        let out_len = w.len().saturating_sub(2);
        let chunks = (0..out_len.div_ceil(64))
            .map(|j| {
                let off = j * 64;
                self.eval(w.bits_at(off), w.bits_at(off + 1), w.bits_at(off + 2))
            })
            .collect();
        Word::from_chunks(chunks, out_len)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Periodic: neighbors are taken modulo the grid length.
    Cyclic,
    /// Open ends: each step drops the two boundary cells.
    Open,
}

/// A finite configuration together with its boundary convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    pub cells: Word,
    pub boundary: Boundary,
}

impl Grid {
    pub fn cyclic(cells: Word) -> Self {
        Grid { cells, boundary: Boundary::Cyclic }
    }

    pub fn open(cells: Word) -> Self {
        Grid { cells, boundary: Boundary::Open }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// One application of the global rule.
///
/// A cyclic grid keeps its length; an open grid is unravelled and loses its
/// two boundary cells. Either needs at least three cells.
pub fn global_step(rule: EcaRule, grid: &Grid) -> Result<Grid> {
    let n = grid.len();
    if n < 3 {
        return Err(Error::TooShort { len: n, needed: 3 });
    }
    let packed = PackedRule::new(rule);
    let cells = match grid.boundary {
        Boundary::Open => packed.windows(&grid.cells),
        Boundary::Cyclic => {
            let mut padded = Word::from_bits([grid.cells.get(n - 1)]);
            padded = padded.concat(&grid.cells);
            padded.push(grid.cells.get(0));
            packed.windows(&padded)
        }
    };
    Ok(Grid { cells, boundary: grid.boundary })
}

/// `(u, F(u), ..., F^steps(u))`.
pub fn trajectory(rule: EcaRule, grid: &Grid, steps: usize) -> Result<Vec<Grid>> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(grid.clone());
    for _ in 0..steps {
        let next = global_step(rule, out.last().expect("non-empty"))?;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    // Cell-by-cell evaluation of the global rule, independent of the packed path.
    fn cyclic_oracle(rule: EcaRule, cells: &[bool]) -> Vec<bool> {
        let n = cells.len();
        (0..n).map(|i| rule.apply(cells[(i + n - 1) % n], cells[i], cells[(i + 1) % n])).collect()
    }

    #[test]
    fn wolfram_index_convention() {
        let r110 = EcaRule::from_wolfram(110).unwrap();
        let ones = [(0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)];
        for idx in 0..8usize {
            let nb = ((idx >> 2) & 1, (idx >> 1) & 1, idx & 1);
            assert_eq!(r110.apply(nb.0 == 1, nb.1 == 1, nb.2 == 1), ones.contains(&nb));
        }
        assert_eq!(EcaRule::from_wolfram(0).unwrap().table(), [false; 8]);
        let r204 = EcaRule::from_wolfram(204).unwrap();
        for idx in 0..8 {
            assert_eq!(r204.output(idx), idx & 2 != 0);
        }
        assert_eq!(EcaRule::from_wolfram(256), Err(Error::RuleOutOfRange(256)));
    }

    #[test]
    fn apply_local_examples() {
        assert!(!EcaRule::new(110).apply(true, true, true));
        assert!(EcaRule::new(204).apply(false, true, false));
        assert!(EcaRule::new(184).apply(true, false, false));
    }

    #[test]
    fn symmetries() {
        assert_eq!(EcaRule::new(110).dual(), EcaRule::new(137));
        assert_eq!(EcaRule::new(51).dual(), EcaRule::new(51));
        assert_eq!(EcaRule::new(30).dual(), EcaRule::new(135));
        assert_eq!(EcaRule::new(30).mirror(), EcaRule::new(86));
        assert_eq!(EcaRule::new(45).dual().mirror(), EcaRule::new(89));
        assert_eq!(EcaRule::new(204).mirror(), EcaRule::new(204));
    }

    #[test]
    fn linear_and_affine() {
        let linear: Vec<u8> = EcaRule::all().filter(|r| r.is_linear()).map(|r| r.wolfram()).collect();
        assert_eq!(linear, [0, 60, 90, 102, 150, 170, 204, 240]);
        assert!(EcaRule::new(150).is_linear());
        assert!(!EcaRule::new(105).is_linear());
        assert!(EcaRule::new(105).is_affine());
        assert!(!EcaRule::new(110).is_affine());
    }

    #[test]
    fn global_step_examples() {
        let u = w("10110");
        assert_eq!(global_step(EcaRule::new(204), &Grid::cyclic(u.clone())).unwrap().cells, u);
        assert_eq!(global_step(EcaRule::new(0), &Grid::cyclic(u)).unwrap().cells, w("00000"));
        assert_eq!(global_step(EcaRule::new(184), &Grid::cyclic(w("1100"))).unwrap().cells, w("1010"));
        assert_eq!(global_step(EcaRule::new(30), &Grid::cyclic(w("10"))), Err(Error::TooShort { len: 2, needed: 3 }));
        let open = global_step(EcaRule::new(204), &Grid::open(w("10110"))).unwrap();
        assert_eq!(open, Grid::open(w("011")));
    }

    #[test]
    fn trajectory_examples() {
        let u = Grid::cyclic(w("1100"));
        assert_eq!(trajectory(EcaRule::new(30), &u, 0).unwrap(), core::slice::from_ref(&u));
        let t = trajectory(EcaRule::new(184), &u, 2).unwrap();
        let rows: Vec<Word> = t.into_iter().map(|g| g.cells).collect();
        assert_eq!(rows, [w("1100"), w("1010"), w("0101")]);
        let z = trajectory(EcaRule::new(0), &Grid::cyclic(w("0111")), 2).unwrap();
        assert_eq!(z[1].cells, w("0000"));
        assert_eq!(z[2].cells, w("0000"));
    }

    #[test]
    fn all_rules_roundtrip_and_involutions() {
        for r in EcaRule::all() {
            let table = r.table();
            let rebuilt: u32 = (0..8).map(|i| (table[i] as u32) << i).sum();
            assert_eq!(EcaRule::from_wolfram(rebuilt).unwrap(), r);
            assert_eq!(r.dual().dual(), r);
            assert_eq!(r.mirror().mirror(), r);
            assert_eq!(r.dual().mirror(), r.mirror().dual());
        }
    }

    #[test]
    fn homogeneous_configurations() {
        for r in EcaRule::all() {
            for n in [3, 7, 64, 65, 130] {
                let zero = global_step(r, &Grid::cyclic(Word::zeros(n))).unwrap().cells;
                assert_eq!(zero, Word::filled(n, r.output(0)));
                let one = global_step(r, &Grid::cyclic(Word::filled(n, true))).unwrap().cells;
                assert_eq!(one, Word::filled(n, r.output(7)));
            }
        }
    }

    proptest! {
        #[test]
        fn packed_step_matches_cellwise(rule in any::<u8>(), cells in proptest::collection::vec(any::<bool>(), 3..300)) {
            let rule = EcaRule::new(rule);
            let got = global_step(rule, &Grid::cyclic(Word::from_bits(cells.iter().copied()))).unwrap();
            prop_assert_eq!(got.cells, Word::from_bits(cyclic_oracle(rule, &cells)));
        }

        #[test]
        fn linear_rules_superpose(
            rule in proptest::sample::select(alloc::vec![0u8, 60, 90, 102, 150, 170, 204, 240]),
            pair in (3usize..200).prop_flat_map(|n| (
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(any::<bool>(), n),
            )),
        ) {
            let rule = EcaRule::new(rule);
            let x = Word::from_bits(pair.0);
            let y = Word::from_bits(pair.1);
            let step = |w: Word| global_step(rule, &Grid::cyclic(w)).unwrap().cells;
            prop_assert_eq!(step(x.xor(&y).unwrap()), step(x).xor(&step(y)).unwrap());
        }
    }
}
