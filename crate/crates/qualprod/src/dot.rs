//! DOT rendering of the bipartite pattern graph and the block-circulant
//! product digraph.
//!
//! Output is deterministic: vertices and edges appear in canonical index
//! order, so equal graphs produce byte-identical files. Weight-1 edges
//! (negative pattern entries) are drawn dashed and labeled "1"; weight-0
//! edges are solid and unlabeled.

use std::fmt::Write as _;

use crate::bipartite::{BVertex, WeightedBipartiteGraph};
use crate::blockcirc::{BlockCirculantDigraph, DVertex};

/// Attribute snippet for an edge of the given weight.
fn weight_style(w: u8) -> &'static str {
    if w == 1 {
        " [style=dashed, label=\"1\"]"
    } else {
        ""
    }
}

/// Render the weighted bipartite graph: X vertices (rows, boxes) on one
/// rank, Y vertices (columns, circles) on another, one undirected edge per
/// nonzero entry.
pub fn bipartite_dot(g: &WeightedBipartiteGraph) -> String {
    let mut out = String::new();
    out.push_str("graph pattern {\n");
    out.push_str("  layout=dot;\n  rankdir=TB;\n");
    out.push_str("  { rank=same;");
    for i in 0..g.n_left() {
        write!(out, " X{i};").unwrap();
    }
    out.push_str(" }\n  { rank=same;");
    for j in 0..g.n_right() {
        write!(out, " Y{j};").unwrap();
    }
    out.push_str(" }\n");
    for v in g.vertices() {
        match v {
            BVertex::X(i) => writeln!(out, "  X{i} [shape=box];").unwrap(),
            BVertex::Y(j) => writeln!(out, "  Y{j} [shape=circle];").unwrap(),
        }
    }
    for i in 0..g.n_left() {
        for j in 0..g.n_right() {
            if let Some(w) = g.edge_weight(i, j) {
                writeln!(out, "  X{i} -- Y{j}{};", weight_style(w)).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Render the block-circulant digraph: one rank per block, arcs from each
/// block to its cyclic successor, weight-1 arcs dashed and labeled.
pub fn digraph_dot(g: &BlockCirculantDigraph) -> String {
    let mut out = String::new();
    out.push_str("digraph product {\n");
    out.push_str("  layout=dot;\n  rankdir=LR;\n");
    for b in 0..g.blocks() {
        write!(out, "  {{ rank=same;").unwrap();
        for i in 0..g.block_len(b) {
            write!(out, " B{b}_{i};").unwrap();
        }
        out.push_str(" }\n");
    }
    for b in 0..g.blocks() {
        for i in 0..g.block_len(b) {
            let from = DVertex { block: b, index: i };
            for to in g.successors(from) {
                let w = g.step_weight(from, to.index).expect("successor arcs exist");
                writeln!(out, "  B{b}_{i} -> B{}_{}{};", to.block, to.index, weight_style(w))
                    .unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
