//! The ECA emulation hierarchy over duality classes.
//!
//! A rule and its dual emulate each other with supercell size 1, so they can
//! emulate, and be emulated by, exactly the same rules. Graph nodes are
//! therefore class representatives (the smaller Wolfram number of the pair).
//! Raw per-rule search results are kept in an [`EmulationTable`] and only
//! aggregated to classes when the graph is built.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::emulation::{compose_witnesses, emulated_rules, smallest_per_rule};
use crate::subalgebra::{proper_subalgebra_search, Subalgebra};
use crate::supercell::check_k;
use crate::{EcaRule, EmulationWitness, Encoding, Result};

/// Rules whose emulation counts as perfect memory: identity, negation and
/// the two shifts.
pub const MEMORY_RULES: [EcaRule; 4] = [EcaRule::new(51), EcaRule::new(170), EcaRule::new(204), EcaRule::new(240)];

/// The smaller of a rule and its dual.
pub fn representative(rule: EcaRule) -> EcaRule {
    rule.min(rule.dual())
}

/// `{n, dual(n)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualityClass {
    representative: EcaRule,
    members: Vec<EcaRule>,
}

impl DualityClass {
    pub fn of(rule: EcaRule) -> Self {
        let mut members = alloc::vec![rule, rule.dual()];
        members.sort();
        members.dedup();
        DualityClass { representative: members[0], members }
    }

    pub fn representative(&self) -> EcaRule {
        self.representative
    }

    /// One or two members, ascending.
    pub fn members(&self) -> &[EcaRule] {
        &self.members
    }

    pub fn is_self_dual(&self) -> bool {
        self.members.len() == 1
    }
}

/// The 136 duality classes, sorted by representative.
pub fn dual_classes() -> Vec<DualityClass> {
    EcaRule::all().filter(|&r| representative(r) == r).map(DualityClass::of).collect()
}

/// Output of [`emulated_rules`] keyed by `(emulator, k)`, reduced to the
/// smallest encoding of each emulated rule.
///
/// The reduction loses nothing the graph needs: edges only record which
/// sizes occur and a witness built from the smallest raw encoding.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmulationTable {
    entries: BTreeMap<(EcaRule, usize), Vec<(EcaRule, Encoding)>>,
}

impl EmulationTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs the subalgebra search for every emulator and every `k` in `1..=kmax`.
    pub fn compute(emulators: &[EcaRule], kmax: usize) -> Result<Self> {
        check_k(kmax)?;
        let mut table = EmulationTable::new();
        for &g in emulators {
            for k in 1..=kmax {
                table.insert(g, k, emulated_rules(g, k)?);
            }
        }
        Ok(table)
    }

    /// Stores `found` after keeping only the smallest encoding per rule.
    pub fn insert(&mut self, emulator: EcaRule, k: usize, found: Vec<(EcaRule, Encoding)>) {
        self.entries.insert((emulator, k), smallest_per_rule(found));
    }

    pub fn get(&self, emulator: EcaRule, k: usize) -> Option<&[(EcaRule, Encoding)]> {
        self.entries.get(&(emulator, k)).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (EcaRule, usize, &[(EcaRule, Encoding)])> {
        self.entries.iter().map(|(&(g, k), v)| (g, k, v.as_slice()))
    }

    pub fn emulators(&self) -> BTreeSet<EcaRule> {
        self.entries.keys().map(|&(g, _)| g).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Emulation of one class by another, over all supercell sizes found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    /// Bit `k` is set when the emulation holds at supercell size `k`.
    pub ks: u32,
    /// Witness at the smallest such `k`, between the two representatives.
    pub witness: EmulationWitness,
}

impl Edge {
    pub fn kmin(&self) -> usize {
        self.ks.trailing_zeros() as usize
    }

    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        (1..32).filter(move |k| self.ks >> k & 1 == 1)
    }

    /// Smallest witnessing supercell size above 1.
    pub fn nontrivial_kmin(&self) -> Option<usize> {
        let rest = self.ks & !0b11;
        (rest != 0).then(|| rest.trailing_zeros() as usize)
    }

    pub fn holds_at(&self, k: usize) -> bool {
        k < 32 && self.ks >> k & 1 == 1
    }
}

/// Directed emulation graph on class representatives.
///
/// An edge keyed `(a, b)` means `a` emulates `b`, i.e. `b <=_k a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HierarchyGraph {
    kmax: usize,
    nodes: Vec<EcaRule>,
    edges: BTreeMap<(EcaRule, EcaRule), Edge>,
}

/// Rewrites `f <=_k g` into a witness between the two class representatives.
fn between_representatives(raw: EmulationWitness) -> Result<EmulationWitness> {
    let mut w = raw;
    let to = representative(w.emulator);
    if w.emulator != to {
        w = compose_witnesses(&w, &EmulationWitness::duality(to))?;
    }
    let from = representative(w.emulated);
    if w.emulated != from {
        w = compose_witnesses(&EmulationWitness::duality(w.emulated), &w)?;
    }
    Ok(w)
}

impl HierarchyGraph {
    /// Aggregates results with `k <= kmax` onto representatives.
    ///
    /// The witness of an edge is rewritten from the smallest raw
    /// `(k, emulator, emulated, encoding)` mapping onto it.
    pub fn from_table(table: &EmulationTable, kmax: usize) -> Result<Self> {
        let nodes: BTreeSet<EcaRule> = table.emulators().into_iter().map(representative).collect();
        let mut best: BTreeMap<(EcaRule, EcaRule), (usize, EcaRule, EcaRule, Encoding)> = BTreeMap::new();
        let mut ks: BTreeMap<(EcaRule, EcaRule), u32> = BTreeMap::new();
        for (g, k, found) in table.iter() {
            if k > kmax {
                continue;
            }
            for &(f, enc) in found {
                let key = (representative(g), representative(f));
                *ks.entry(key).or_default() |= 1 << k;
                let raw = (k, g, f, enc);
                best.entry(key).and_modify(|b| *b = (*b).min(raw)).or_insert(raw);
            }
        }
        let mut edges = BTreeMap::new();
        for (key, (_, g, f, enc)) in best {
            let witness = between_representatives(EmulationWitness::new(f, g, enc))?;
            debug_assert_eq!((witness.emulator, witness.emulated), key);
            edges.insert(key, Edge { ks: ks[&key], witness });
        }
        Ok(HierarchyGraph { kmax, nodes: nodes.into_iter().collect(), edges })
    }

    /// Reassembles a graph, e.g. from an exported file.
    pub fn from_parts(kmax: usize, nodes: Vec<EcaRule>, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut nodes = nodes;
        nodes.sort();
        nodes.dedup();
        let edges = edges.into_iter().map(|e| ((e.witness.emulator, e.witness.emulated), e)).collect();
        HierarchyGraph { kmax, nodes, edges }
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn nodes(&self) -> &[EcaRule] {
        &self.nodes
    }

    /// Edges as `((emulator, emulated), edge)`, sorted by key.
    pub fn edges(&self) -> impl Iterator<Item = (&(EcaRule, EcaRule), &Edge)> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, emulator: EcaRule, emulated: EcaRule) -> Option<&Edge> {
        self.edges.get(&(representative(emulator), representative(emulated)))
    }

    /// `emulated <=_k emulator` for some `k` in `sizes`.
    pub fn emulates_within(
        &self,
        emulator: EcaRule,
        emulated: EcaRule,
        sizes: core::ops::RangeInclusive<usize>,
    ) -> bool {
        self.edge(emulator, emulated).is_some_and(|e| sizes.clone().any(|k| e.holds_at(k)))
    }

    /// Representatives emulated by `emulator` at some `k` in `sizes`.
    pub fn emulated_by(&self, emulator: EcaRule, sizes: core::ops::RangeInclusive<usize>) -> BTreeSet<EcaRule> {
        let from = representative(emulator);
        self.edges
            .iter()
            .filter(|(&(a, _), e)| a == from && sizes.clone().any(|k| e.holds_at(k)))
            .map(|(&(_, b), _)| b)
            .collect()
    }

    /// Representatives emulating `emulated` at some `k` in `sizes`.
    pub fn emulators_of(&self, emulated: EcaRule, sizes: core::ops::RangeInclusive<usize>) -> BTreeSet<EcaRule> {
        let to = representative(emulated);
        self.edges
            .iter()
            .filter(|(&(_, b), e)| b == to && sizes.clone().any(|k| e.holds_at(k)))
            .map(|(&(a, _), _)| a)
            .collect()
    }

    /// Smallest `k >= 2` with `rule <=_k rule`.
    pub fn self_similarity(&self, rule: EcaRule) -> Option<usize> {
        self.edge(rule, rule).and_then(Edge::nontrivial_kmin)
    }

    /// Whether `to` can be reached from `from` along non-loop edges.
    pub fn reaches(&self, from: EcaRule, to: EcaRule) -> bool {
        Reach::new(self.edges.keys().copied()).reaches(from, to, None)
    }

    /// Drops every non-loop edge whose target stays reachable without it.
    ///
    /// Edges are considered in key order and removed one at a time, so
    /// reachability is preserved exactly; on acyclic parts this is the
    /// unique transitive reduction. Loops are kept.
    pub fn transitive_reduction(&self) -> HierarchyGraph {
        let mut reach = Reach::new(self.edges.keys().copied());
        let mut edges = self.edges.clone();
        for &(a, b) in self.edges.keys() {
            if a == b {
                continue;
            }
            if reach.reaches(a, b, Some((a, b))) {
                reach.remove(a, b);
                edges.remove(&(a, b));
            }
        }
        HierarchyGraph { kmax: self.kmax, nodes: self.nodes.clone(), edges }
    }
}

/// Adjacency bitsets over the 256 rules, loops excluded.
struct Reach {
    adj: Vec<[u64; 4]>,
}

impl Reach {
    fn new(edges: impl Iterator<Item = (EcaRule, EcaRule)>) -> Self {
        let mut adj = alloc::vec![[0u64; 4]; 256];
        for (a, b) in edges {
            if a != b {
                let b = b.wolfram() as usize;
                adj[a.wolfram() as usize][b / 64] |= 1 << (b % 64);
            }
        }
        Reach { adj }
    }

    fn remove(&mut self, a: EcaRule, b: EcaRule) {
        let b = b.wolfram() as usize;
        self.adj[a.wolfram() as usize][b / 64] &= !(1 << (b % 64));
    }

    fn reaches(&self, from: EcaRule, to: EcaRule, skip: Option<(EcaRule, EcaRule)>) -> bool {
        let bit = |set: &[u64; 4], n: usize| set[n / 64] >> (n % 64) & 1 == 1;
        let mut seen = [0u64; 4];
        let mut stack = alloc::vec![from.wolfram() as usize];
        let target = to.wolfram() as usize;
        while let Some(n) = stack.pop() {
            let mut next = self.adj[n];
            if let Some((a, b)) = skip {
                if a.wolfram() as usize == n {
                    let b = b.wolfram() as usize;
                    next[b / 64] &= !(1 << (b % 64));
                }
            }
            for m in 0..256 {
                if bit(&next, m) && !bit(&seen, m) {
                    if m == target {
                        return true;
                    }
                    seen[m / 64] |= 1 << (m % 64);
                    stack.push(m);
                }
            }
        }
        false
    }
}

/// Builds the hierarchy for `k` in `1..=kmax` over `emulators`, or over all
/// 136 representatives when `None`.
pub fn compute_hierarchy(kmax: usize, emulators: Option<&[EcaRule]>) -> Result<HierarchyGraph> {
    let reps: Vec<EcaRule>;
    let emulators = match emulators {
        Some(e) => e,
        None => {
            reps = dual_classes().iter().map(DualityClass::representative).collect();
            &reps
        }
    };
    HierarchyGraph::from_table(&EmulationTable::compute(emulators, kmax)?, kmax)
}

/// Classifications derived from a hierarchy graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassificationReport {
    pub kmax: usize,
    /// Emulate themselves with some supercell size `2..=kmax`.
    pub self_similar: BTreeSet<EcaRule>,
    /// Emulate one of 51, 170, 204, 240 with some `k <= kmax`.
    pub memory_capable: BTreeSet<EcaRule>,
    /// Emulate rule 0 with some supercell size `2..=kmax`.
    pub zero_emulators: BTreeSet<EcaRule>,
    /// No proper subalgebra with two or more elements for any `k` in `2..=kmax`.
    pub chaos_candidates: BTreeSet<EcaRule>,
    /// Distinct representatives emulated with some `k >= 2`. Self counts only
    /// for self-similar rules.
    pub emulation_counts: BTreeMap<EcaRule, usize>,
}

/// [`classify_with`] using the sequential [`proper_subalgebra_search`].
pub fn classify(graph: &HierarchyGraph) -> Result<ClassificationReport> {
    classify_with(graph, proper_subalgebra_search)
}

/// Fills a report from the graph's edges. Nodes without any non-trivial edge
/// are passed to `search` for every `k` in `2..=kmax`; they are chaos
/// candidates when no search returns a subalgebra.
pub fn classify_with<F>(graph: &HierarchyGraph, mut search: F) -> Result<ClassificationReport>
where
    F: FnMut(EcaRule, usize) -> Result<Option<Subalgebra>>,
{
    let kmax = graph.kmax();
    let mut report = ClassificationReport { kmax, ..Default::default() };
    for &node in graph.nodes() {
        let nontrivial: BTreeSet<EcaRule> = graph.emulated_by(node, 2..=kmax);
        if graph.self_similarity(node).is_some() {
            report.self_similar.insert(node);
        }
        if MEMORY_RULES.iter().any(|&m| graph.emulates_within(node, m, 1..=kmax)) {
            report.memory_capable.insert(node);
        }
        if nontrivial.contains(&EcaRule::ZERO) {
            report.zero_emulators.insert(node);
        }
        report.emulation_counts.insert(node, nontrivial.len());
        if nontrivial.is_empty() {
            let mut chaotic = true;
            for k in 2..=kmax {
                if search(node, k)?.is_some() {
                    chaotic = false;
                    break;
                }
            }
            if chaotic {
                report.chaos_candidates.insert(node);
            }
        }
    }
    Ok(report)
}
