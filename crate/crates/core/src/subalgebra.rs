//! Subalgebras of `({0,1}^k, g~^k)` beyond the two-element ones.
//!
//! Used to test whether a rule emulates any multi-state automaton
//! non-trivially: a proper subalgebra with at least two elements is exactly
//! such an emulation.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::supercell::SupercellAlgebra;
use crate::{EcaRule, Error, Result, Supercell};

/// A set of supercells closed under `g~^k`, with the induced operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subalgebra {
    rule: EcaRule,
    k: usize,
    elements: Vec<u32>,
}

impl Subalgebra {
    pub fn rule(&self) -> EcaRule {
        self.rule
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Elements in ascending order.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn supercells(&self) -> impl Iterator<Item = Supercell> + '_ {
        self.elements.iter().map(|&e| Supercell::new(self.k, e).expect("element fits in k bits"))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Whether this is all of `{0,1}^k`.
    pub fn is_full(&self) -> bool {
        self.elements.len() == 1usize << self.k
    }

    pub fn contains(&self, block: u32) -> bool {
        self.elements.binary_search(&block).is_ok()
    }

    /// The induced operation on element indices.
    pub fn apply(&self, i: usize, j: usize, l: usize) -> usize {
        let alg = self.algebra();
        let r = alg.apply(self.elements[i], self.elements[j], self.elements[l]);
        self.elements.binary_search(&r).expect("subalgebra is closed")
    }

    /// The induced operation as a table indexed by `(i * n + j) * n + l`.
    pub fn induced_table(&self) -> Vec<usize> {
        let alg = self.algebra();
        let n = self.len();
        let mut table = Vec::with_capacity(n * n * n);
        for &a in &self.elements {
            for &b in &self.elements {
                for &c in &self.elements {
                    let r = alg.apply(a, b, c);
                    table.push(self.elements.binary_search(&r).expect("subalgebra is closed"));
                }
            }
        }
        table
    }

    /// Re-checks closure over every triple.
    pub fn is_closed(&self) -> bool {
        let alg = self.algebra();
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| self.elements.iter().all(|&c| self.contains(alg.apply(a, b, c)))))
    }

    fn algebra(&self) -> SupercellAlgebra {
        SupercellAlgebra::new(self.rule, self.k).expect("k validated at construction")
    }
}

/// Result of a capped closure computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureOutcome {
    Closed(Subalgebra),
    /// The closure grew past the cap and was abandoned.
    ExceedsCap,
}

impl ClosureOutcome {
    pub fn closed(self) -> Option<Subalgebra> {
        match self {
            ClosureOutcome::Closed(s) => Some(s),
            ClosureOutcome::ExceedsCap => None,
        }
    }
}

/// Semi-naive closure of `seeds`: when element `i` is taken from the queue,
/// only triples whose largest index is `i` are evaluated, so every triple is
/// computed once. Stops as soon as the set has more than `cap` elements, or
/// produces an element rejected by `admit`.
fn close(alg: &SupercellAlgebra, seeds: &[u32], cap: usize, admit: impl Fn(u32) -> bool) -> Option<Vec<u32>> {
    let mut member = vec![0u64; (alg.order() as usize).div_ceil(64)];
    let mut elements: Vec<u32> = Vec::new();
    let mut insert = |x: u32, elements: &mut Vec<u32>| -> bool {
        let (q, r) = (x as usize / 64, x % 64);
        if member[q] >> r & 1 == 0 {
            if !admit(x) {
                return false;
            }
            member[q] |= 1 << r;
            elements.push(x);
        }
        true
    };
    for &s in seeds {
        if !insert(s, &mut elements) {
            return None;
        }
    }
    if elements.len() > cap {
        return None;
    }
    let mut i = 0;
    while i < elements.len() {
        let x = elements[i];
        // (x, <=i, <=i), (<i, x, <=i), (<i, <i, x)
        for a in 0..=i {
            for b in 0..=i {
                let (ea, eb) = (elements[a], elements[b]);
                let mut results = [0u32; 3];
                let mut count = 0;
                results[count] = alg.apply(x, ea, eb);
                count += 1;
                if a < i {
                    results[count] = alg.apply(ea, x, eb);
                    count += 1;
                    if b < i {
                        results[count] = alg.apply(ea, eb, x);
                        count += 1;
                    }
                }
                for &r in &results[..count] {
                    if !insert(r, &mut elements) {
                        return None;
                    }
                }
                if elements.len() > cap {
                    return None;
                }
            }
        }
        i += 1;
    }
    elements.sort_unstable();
    Some(elements)
}

#[inline]
fn has(set: &[u64], x: u32) -> bool {
    set[x as usize / 64] >> (x % 64) & 1 == 1
}

fn check_block(alg: &SupercellAlgebra, u: Supercell) -> Result<()> {
    if u.k() != alg.k() {
        return Err(Error::SizeMismatch { expected: alg.k(), got: u.k() });
    }
    Ok(())
}

/// The smallest subalgebra containing `u`.
pub fn singleton_closure(g: EcaRule, k: usize, u: Supercell) -> Result<Subalgebra> {
    let alg = SupercellAlgebra::new(g, k)?;
    check_block(&alg, u)?;
    let elements = close(&alg, &[u.bits()], usize::MAX, |_| true).expect("uncapped");
    Ok(Subalgebra { rule: g, k, elements })
}

/// The smallest subalgebra containing `u` and `v`, abandoned once it exceeds
/// `cap` elements. `None` for `cap` means `2^k - 1`, i.e. proper subalgebras only.
pub fn pair_closure(g: EcaRule, k: usize, u: Supercell, v: Supercell, cap: Option<usize>) -> Result<ClosureOutcome> {
    let alg = SupercellAlgebra::new(g, k)?;
    check_block(&alg, u)?;
    check_block(&alg, v)?;
    if u == v {
        return Err(Error::InvalidArgument("pair closure needs two distinct supercells"));
    }
    let cap = cap.unwrap_or((1usize << k) - 1);
    Ok(match close(&alg, &[u.bits(), v.bits()], cap, |_| true) {
        Some(elements) => ClosureOutcome::Closed(Subalgebra { rule: g, k, elements }),
        None => ClosureOutcome::ExceedsCap,
    })
}

/// Outcome of scanning singleton closures over a range of seeds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SingletonScan {
    /// Seeds whose closure is a proper subset, ascending.
    pub proper: Vec<u32>,
    /// The first seed in the range whose closure is proper with at least two
    /// elements. The scan stops there, so `proper` is then incomplete.
    pub hit: Option<Subalgebra>,
}

/// Singleton closures for seeds in `seeds`, capped at `2^k - 1`.
///
/// A closure reaching an earlier seed whose closure was full is full as well,
/// and is abandoned there.
pub fn singleton_scan(g: EcaRule, k: usize, seeds: Range<u32>) -> Result<SingletonScan> {
    let alg = SupercellAlgebra::new(g, k)?;
    let cap = alg.order() as usize - 1;
    let full = core::cell::RefCell::new(vec![0u64; (alg.order() as usize).div_ceil(64)]);
    let mut scan = SingletonScan::default();
    for u in seeds.start..seeds.end.min(alg.order()) {
        match close(&alg, &[u], cap, |x| !has(&full.borrow(), x)) {
            Some(elements) => {
                scan.proper.push(u);
                if elements.len() >= 2 {
                    scan.hit = Some(Subalgebra { rule: g, k, elements });
                    break;
                }
            }
            None => full.borrow_mut()[u as usize / 64] |= 1 << (u % 64),
        }
    }
    Ok(scan)
}

/// Pair closures over `{proper[i], proper[j]}` with `i` in `first` and `j > i`,
/// in lexicographic `(i, j)` order. Returns the first proper closure found.
///
/// `proper` must list every seed whose singleton closure is proper. A closure
/// reaching any other element would contain that element's full closure, so
/// it is abandoned at that point.
pub fn pair_scan(g: EcaRule, k: usize, proper: &[u32], first: Range<usize>) -> Result<Option<Subalgebra>> {
    let alg = SupercellAlgebra::new(g, k)?;
    let cap = alg.order() as usize - 1;
    let mut allowed = vec![0u64; (alg.order() as usize).div_ceil(64)];
    for &u in proper {
        if u < alg.order() {
            allowed[u as usize / 64] |= 1 << (u % 64);
        }
    }
    for i in first.start..first.end.min(proper.len()) {
        for &v in &proper[i + 1..] {
            if let Some(elements) = close(&alg, &[proper[i], v], cap, |x| has(&allowed, x)) {
                return Ok(Some(Subalgebra { rule: g, k, elements }));
            }
        }
    }
    Ok(None)
}

/// Some proper subalgebra with at least two elements, if one exists.
///
/// Any such subalgebra contains only seeds whose singleton closure is proper,
/// so pairs with a full singleton closure are never tried. Returns the
/// smallest seed's closure if it already has two elements, otherwise the
/// first closed pair in ascending order.
pub fn proper_subalgebra_search(g: EcaRule, k: usize) -> Result<Option<Subalgebra>> {
    let scan = singleton_scan(g, k, 0..1 << k)?;
    if scan.hit.is_some() {
        return Ok(scan.hit);
    }
    pair_scan(g, k, &scan.proper, 0..scan.proper.len())
}
