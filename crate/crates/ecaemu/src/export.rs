//! Hierarchy graph exports: Graphviz DOT, CSV and JSON.
//!
//! All three are pure functions of the graph, so equal graphs give equal
//! bytes. JSON can be read back with [`import_json`].

use std::fmt::Write as _;
use std::str::FromStr;

use ecaemu_core::{EcaRule, Edge, EmulationWitness, HierarchyGraph};
use serde::{Deserialize, Serialize};

use crate::{encoding_from_strings, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::format("export format", format!("unsupported format {other:?}"))),
        }
    }
}

pub fn export(graph: &HierarchyGraph, format: ExportFormat) -> Result<String> {
    match format {
        ExportFormat::Dot => Ok(to_dot(graph)),
        ExportFormat::Csv => Ok(to_csv(graph)),
        ExportFormat::Json => to_json(graph),
    }
}

/// One row `emulator,emulated,kmin` per edge, ordered by `(emulator, emulated)`.
pub fn to_csv(graph: &HierarchyGraph) -> String {
    let mut out = String::from("emulator,emulated,kmin\n");
    for ((a, b), e) in graph.edges() {
        writeln!(out, "{a},{b},{}", e.kmin()).unwrap();
    }
    out
}

/// Edges point from emulator to emulated rule and are labelled with the
/// smallest supercell size. Self-similar nodes get a double border and a
/// loop labelled with their smallest non-trivial size; `k = 1` loops are
/// left out.
pub fn to_dot(graph: &HierarchyGraph) -> String {
    let mut out = String::from("digraph emulation {\n    node [shape=box];\n");
    for &n in graph.nodes() {
        match graph.self_similarity(n) {
            Some(_) => writeln!(out, "    \"{n}\" [peripheries=2];").unwrap(),
            None => writeln!(out, "    \"{n}\";").unwrap(),
        }
    }
    for ((a, b), e) in graph.edges() {
        let k = if a == b { e.nontrivial_kmin() } else { Some(e.kmin()) };
        if let Some(k) = k {
            writeln!(out, "    \"{a}\" -> \"{b}\" [label=\"{k}\"];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    kmax: usize,
    nodes: Vec<EcaRule>,
    edges: Vec<EdgeRecord>,
}

#[derive(Serialize, Deserialize)]
struct EdgeRecord {
    from: EcaRule,
    to: EcaRule,
    kmin: usize,
    ks: Vec<usize>,
    enc0: String,
    enc1: String,
}

/// `{kmax, nodes, edges: [{from, to, kmin, ks, enc0, enc1}]}`, where
/// `from` emulates `to` and `enc0`/`enc1` are the witnessing supercells at
/// `kmin` written as bit strings, cell 0 first.
pub fn to_json(graph: &HierarchyGraph) -> Result<String> {
    let file = GraphFile {
        kmax: graph.kmax(),
        nodes: graph.nodes().to_vec(),
        edges: graph
            .edges()
            .map(|(&(from, to), e)| EdgeRecord {
                from,
                to,
                kmin: e.kmin(),
                ks: e.sizes().collect(),
                enc0: e.witness.encoding.enc0_word().to_string(),
                enc1: e.witness.encoding.enc1_word().to_string(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file)?;
    out.push('\n');
    Ok(out)
}

/// Reads [`to_json`] output back. Every witness is re-checked.
pub fn import_json(text: &str) -> Result<HierarchyGraph> {
    let file: GraphFile = serde_json::from_str(text)?;
    let bad = |reason: String| Error::format("hierarchy JSON", reason);
    let mut edges = Vec::with_capacity(file.edges.len());
    for r in file.edges {
        let ks = r.ks.iter().try_fold(0u32, |acc, &k| (1..32).contains(&k).then_some(acc | 1 << k));
        let ks = ks.filter(|&m| m != 0).ok_or_else(|| bad(format!("edge {}->{}: bad ks", r.from, r.to)))?;
        let encoding = encoding_from_strings(&r.enc0, &r.enc1)?;
        let edge = Edge { ks, witness: EmulationWitness::new(r.to, r.from, encoding) };
        if edge.kmin() != r.kmin || encoding.k() != r.kmin {
            return Err(bad(format!("edge {}->{}: kmin does not match ks or encoding", r.from, r.to)));
        }
        if !edge.witness.holds() {
            return Err(
                ecaemu_core::Error::InvalidWitness { emulated: r.to.wolfram(), emulator: r.from.wolfram() }.into()
            );
        }
        edges.push(edge);
    }
    Ok(HierarchyGraph::from_parts(file.kmax, file.nodes, edges))
}
