//! Elementary cellular automaton (ECA) emulation through supercell subalgebras.
//!
//! An ECA `f` is emulated by `g` with supercell size `k` when an injective
//! encoding of the two states into `k`-bit blocks turns `k` steps of `g` on
//! encoded configurations into exactly one step of `f`. Equivalently, the
//! algebra `({0,1}^k, g~^k)` has a two-element subalgebra isomorphic to
//! `({0,1}, f)`.
//!
//! The crate is `no_std` (it needs `alloc`) and purely computational. File
//! formats, caching, the worker pool and the command line live in the `ecaemu`
//! companion crate.
//!
//! Conventions used throughout:
//!
//! * A neighborhood `(b1, b2, b3)` (left, center, right) has index
//!   `4*b1 + 2*b2 + b3`; bit `i` of the Wolfram number is the output for
//!   neighborhood `i`.
//! * Words are little-endian: position `0` of a word is bit `0` of its packed
//!   representation, and a supercell read as an integer uses the same order.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod emulation;
mod error;
pub mod hierarchy;
pub mod render;
pub mod rule;
pub mod subalgebra;
pub mod supercell;
pub mod word;

pub use emulation::{
    check_emulation_naive, compose_witnesses, emulated_rules, is_self_similar, verify_witness, EmulationWitness,
    Encoding,
};
pub use error::{Error, Result};
pub use hierarchy::{
    classify, compute_hierarchy, dual_classes, ClassificationReport, DualityClass, Edge, EmulationTable, HierarchyGraph,
};
pub use render::{render_diagram, render_emulated, Diagram};
pub use rule::{global_step, trajectory, Boundary, EcaRule, Grid};
pub use subalgebra::{pair_closure, proper_subalgebra_search, singleton_closure, ClosureOutcome, Subalgebra};
pub use supercell::{supercell_step, unravel, unravel_iter, Supercell, SupercellAlgebra};
pub use word::{Word, WordSampler};
