//! Block-circulant digraph attached to an alternating product.
//!
//! For a length-2k alternating product the digraph has 2k vertex blocks
//! arranged in a ring: even blocks carry row indices, odd blocks carry
//! column indices, and the edges from block b to block b+1 are the nonzero
//! entries of factor b (transposed for odd b). Every cycle winds around the
//! ring, so its length is a multiple of 2k and it meets block 0. The product
//! class lands in the positive-semidefinite-minors cone exactly when every
//! cycle C satisfies |C|/2k + w(C) odd; this module decides that directly by
//! exhaustive cycle enumeration, and provides the projection/lift pair that
//! ties digraph cycles to non-repeating closed walks on the bipartite graph.

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::bipartite::{build_graph, BVertex, WeightedBipartiteGraph};
use crate::error::{Error, Result};
use crate::limits::{SearchLimits, StateCounter};
use crate::signpat::{Sign, SignPattern};
use crate::walks::{is_2k_repeating_walk, ClosedWalk};

// ---- Vertices ----

/// A digraph vertex: position `index` inside vertex block `block`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct DVertex {
    pub block: usize,
    pub index: usize,
}

impl fmt::Display for DVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}_{}", self.block, self.index)
    }
}

// ---- The digraph ----

/// Block-circulant digraph of an alternating product. Factors are stored
/// untransposed; odd blocks read their factor backwards (column to row).
#[derive(Clone, Debug)]
pub struct BlockCirculantDigraph {
    factors: Vec<SignPattern>,
    rows: usize,
    cols: usize,
}

impl BlockCirculantDigraph {
    /// Build from explicit factor patterns (an even number, all one shape).
    pub fn from_patterns(factors: Vec<SignPattern>) -> Result<Self> {
        if factors.len() < 2 || factors.len() % 2 != 0 {
            return Err(Error::Dimension(format!(
                "need a positive even number of factors, got {}",
                factors.len()
            )));
        }
        let (rows, cols) = (factors[0].rows(), factors[0].cols());
        for (t, f) in factors.iter().enumerate() {
            if f.rows() != rows || f.cols() != cols {
                return Err(Error::Dimension(format!(
                    "factor {t} is {}x{}, expected {rows}x{cols}",
                    f.rows(),
                    f.cols()
                )));
            }
        }
        Ok(BlockCirculantDigraph { factors, rows, cols })
    }

    /// The digraph for the full qualitative class: all 2k factors share the
    /// base pattern.
    pub fn from_alternating(base: &SignPattern, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Dimension("alternating digraph needs k >= 1".into()));
        }
        Self::from_patterns(vec![base.clone(); 2 * k])
    }

    pub fn blocks(&self) -> usize {
        self.factors.len()
    }

    pub fn k(&self) -> usize {
        self.factors.len() / 2
    }

    pub fn block_len(&self, block: usize) -> usize {
        if block % 2 == 0 {
            self.rows
        } else {
            self.cols
        }
    }

    pub fn factor(&self, block: usize) -> &SignPattern {
        &self.factors[block]
    }

    fn entry_for_step(&self, from: DVertex, to_index: usize) -> Sign {
        if from.block % 2 == 0 {
            self.factors[from.block].get(from.index, to_index)
        } else {
            self.factors[from.block].get(to_index, from.index)
        }
    }

    /// Weight of the edge from `from` into index `to_index` of the next
    /// block, if present (0 for positive entries, 1 for negative).
    pub fn step_weight(&self, from: DVertex, to_index: usize) -> Option<u8> {
        match self.entry_for_step(from, to_index) {
            Sign::Zero => None,
            Sign::Plus => Some(0),
            Sign::Minus => Some(1),
        }
    }

    /// Successors of `from`, all in block `from.block + 1` (mod 2k).
    pub fn successors(&self, from: DVertex) -> Vec<DVertex> {
        let next_block = (from.block + 1) % self.blocks();
        (0..self.block_len(next_block))
            .filter(|&i| self.step_weight(from, i).is_some())
            .map(|index| DVertex { block: next_block, index })
            .collect()
    }
}

// ---- Cycles ----

/// A directed cycle, stored from its least block-0 vertex; the closing edge
/// back to the start is implicit. Weight is the mod-2 count of negative
/// entries traversed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct DigraphCycle {
    pub vertices: Vec<DVertex>,
    pub weight: u8,
}

impl DigraphCycle {
    /// Validate edges, recompute the weight, rotate to the least block-0
    /// vertex.
    pub fn new(g: &BlockCirculantDigraph, mut vertices: Vec<DVertex>) -> Result<Self> {
        if vertices.is_empty() || vertices.len() % g.blocks() != 0 {
            return Err(Error::Domain(format!(
                "cycle length {} is not a positive multiple of {} blocks",
                vertices.len(),
                g.blocks()
            )));
        }
        let len = vertices.len();
        let mut weight = 0u16;
        for t in 0..len {
            let a = vertices[t];
            let b = vertices[(t + 1) % len];
            if (a.block + 1) % g.blocks() != b.block {
                return Err(Error::Domain(format!(
                    "step {t} jumps from block {} to block {}",
                    a.block, b.block
                )));
            }
            match g.step_weight(a, b.index) {
                Some(w) => weight += w as u16,
                None => return Err(Error::Domain(format!("step {t} uses a non-edge {a}->{b}"))),
            }
        }
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(*v) {
                return Err(Error::Domain(format!("vertex {v} repeats; not a cycle")));
            }
        }
        let anchor = (0..len)
            .filter(|&t| vertices[t].block == 0)
            .min_by_key(|&t| vertices[t].index)
            .expect("every cycle meets block 0");
        vertices.rotate_left(anchor);
        Ok(DigraphCycle { vertices, weight: (weight % 2) as u8 })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Winding number |C| / 2k.
    pub fn winds(&self, g: &BlockCirculantDigraph) -> usize {
        self.len() / g.blocks()
    }

    /// Parity |C|/2k + w(C) mod 2; cycles with value 0 are the violations.
    pub fn k_parity(&self, g: &BlockCirculantDigraph) -> u8 {
        ((self.winds(g) + self.weight as usize) % 2) as u8
    }
}

/// Depth-first cycle search feeding each cycle (in discovery order, not
/// sorted) to `visit`; the visitor can stop the whole search early by
/// returning `ControlFlow::Break`.
fn visit_digraph_cycles(
    g: &BlockCirculantDigraph,
    cap: usize,
    limits: &SearchLimits,
    visit: &mut dyn FnMut(DigraphCycle) -> Result<ControlFlow<()>>,
) -> Result<()> {
    let mut counter = StateCounter::new(limits, "digraph cycle enumeration");

    struct Dfs<'a> {
        g: &'a BlockCirculantDigraph,
        anchor: usize,
        cap: usize,
        path: Vec<DVertex>,
        used: Vec<Vec<bool>>, // used[block][index]
    }

    impl Dfs<'_> {
        fn extend(
            &mut self,
            counter: &mut StateCounter,
            visit: &mut dyn FnMut(DigraphCycle) -> Result<ControlFlow<()>>,
        ) -> Result<ControlFlow<()>> {
            counter.tick()?;
            let last = *self.path.last().unwrap();
            for next in self.g.successors(last) {
                if next.block == 0 && next.index == self.anchor {
                    if visit(DigraphCycle::new(self.g, self.path.clone())?)?.is_break() {
                        return Ok(ControlFlow::Break(()));
                    }
                    continue;
                }
                if self.used[next.block][next.index] {
                    continue;
                }
                // Keep the anchor the least block-0 vertex of the cycle.
                if next.block == 0 && next.index < self.anchor {
                    continue;
                }
                if self.path.len() + 1 > self.cap {
                    continue;
                }
                self.used[next.block][next.index] = true;
                self.path.push(next);
                let flow = self.extend(counter, visit)?;
                self.path.pop();
                self.used[next.block][next.index] = false;
                if flow.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
            Ok(ControlFlow::Continue(()))
        }
    }

    for anchor in 0..g.block_len(0) {
        let mut dfs = Dfs {
            g,
            anchor,
            cap,
            path: vec![DVertex { block: 0, index: anchor }],
            used: (0..g.blocks()).map(|b| vec![false; g.block_len(b)]).collect(),
        };
        dfs.used[0][anchor] = true;
        if dfs.extend(&mut counter, visit)?.is_break() {
            return Ok(());
        }
    }
    Ok(())
}

/// All cycles of length at most `max_len` (default: the natural bound
/// 2k * min(rows, cols), beyond which vertex-simple cycles cannot exist),
/// sorted by (length, vertices). Deterministic.
pub fn enumerate_digraph_cycles(
    g: &BlockCirculantDigraph,
    max_len: Option<usize>,
    limits: &SearchLimits,
) -> Result<Vec<DigraphCycle>> {
    let natural = g.blocks() * usize::min(g.rows, g.cols);
    let cap = max_len.map_or(natural, |m| m.min(natural));
    let mut out = Vec::new();
    visit_digraph_cycles(g, cap, limits, &mut |c| {
        out.push(c);
        Ok(ControlFlow::Continue(()))
    })?;
    out.sort_by(|a, b| (a.len(), &a.vertices).cmp(&(b.len(), &b.vertices)));
    Ok(out)
}

/// A violating cycle of minimal length, found without a full enumeration.
///
/// Caps the search at each cycle length in turn (2k, 4k, ...), so dense
/// digraphs whose shortest violation is short never pay for the long
/// cycles; when no cycle violates, the final pass is a complete (and for
/// violation-free graphs, cheap) enumeration. The returned cycle has
/// minimal length among violations, though not necessarily the least
/// vertex sequence at that length.
pub fn first_parity_violation(
    g: &BlockCirculantDigraph,
    limits: &SearchLimits,
) -> Result<Option<DigraphCycle>> {
    let natural = g.blocks() * usize::min(g.rows, g.cols);
    let mut found = None;
    let mut cap = g.blocks();
    while cap <= natural {
        visit_digraph_cycles(g, cap, limits, &mut |c| {
            // Cycles shorter than the cap were cleared by earlier passes.
            if c.k_parity(g) == 0 {
                found = Some(c);
                return Ok(ControlFlow::Break(()));
            }
            Ok(ControlFlow::Continue(()))
        })?;
        if found.is_some() {
            return Ok(found);
        }
        cap += g.blocks();
    }
    Ok(None)
}

// ---- Parity criterion ----

/// Outcome of the cycle-parity test on the digraph.
#[derive(Clone, Debug)]
pub struct KOddVerdict {
    /// Every cycle has |C|/2k + w(C) odd.
    pub k_odd: bool,
    /// A shortest violating cycle, when one exists.
    pub violation: Option<DigraphCycle>,
    /// True when every cycle winds exactly once (no cycle longer than 2k).
    pub long_cycle_free: bool,
}

/// Check all cycles for the parity condition.
pub fn is_k_odd(g: &BlockCirculantDigraph, limits: &SearchLimits) -> Result<KOddVerdict> {
    let cycles = enumerate_digraph_cycles(g, None, limits)?;
    let long_cycle_free = cycles.iter().all(|c| c.len() == g.blocks());
    let violation = cycles.into_iter().find(|c| c.k_parity(g) == 0);
    Ok(KOddVerdict { k_odd: violation.is_none(), violation, long_cycle_free })
}

/// Decision for one alternating power of a base pattern: does every product
/// of 2k factors from the class keep all principal minors nonnegative?
#[derive(Clone, Debug)]
pub struct P0Criterion {
    pub k: usize,
    pub holds: bool,
    pub violation: Option<DigraphCycle>,
}

/// Decide the length-2k product containment directly on the digraph.
pub fn p0_criterion(base: &SignPattern, k: usize, limits: &SearchLimits) -> Result<P0Criterion> {
    let g = BlockCirculantDigraph::from_alternating(base, k)?;
    let violation = first_parity_violation(&g, limits)?;
    Ok(P0Criterion { k, holds: violation.is_none(), violation })
}

// ---- Projection and lift ----

/// Bipartite host graph of a uniform-factor digraph. Errors when the
/// factors differ, since only then do all blocks share one sign pattern.
pub fn projection_host(g: &BlockCirculantDigraph) -> Result<WeightedBipartiteGraph> {
    let base = &g.factors[0];
    if g.factors.iter().any(|f| f != base) {
        return Err(Error::Domain(
            "projection needs all factors to share one pattern".into(),
        ));
    }
    Ok(build_graph(base))
}

/// Project a digraph cycle to a closed walk on the bipartite graph: even
/// blocks become row vertices, odd blocks column vertices. Length and
/// weight are preserved, and the walk is never 2k-repeating.
pub fn project_cycle(g: &BlockCirculantDigraph, c: &DigraphCycle) -> Result<ClosedWalk> {
    let host = projection_host(g)?;
    let vertices: Vec<BVertex> = c
        .vertices
        .iter()
        .map(|v| {
            if v.block % 2 == 0 {
                BVertex::X(v.index)
            } else {
                BVertex::Y(v.index)
            }
        })
        .collect();
    let walk = ClosedWalk::new(&host, vertices)?;
    if walk.weight() != c.weight {
        return Err(Error::Internal("projection changed the walk weight".into()));
    }
    if is_2k_repeating_walk(&walk, g.k())? {
        return Err(Error::Internal("projected cycle is somehow repeating".into()));
    }
    Ok(walk)
}

/// Lift a closed walk that is not 2k-repeating to a digraph cycle: position
/// t lands in block t mod 2k. Fails when the walk length is not a multiple
/// of 2k or the walk repeats within a residue class.
pub fn lift_walk(g: &BlockCirculantDigraph, w: &ClosedWalk) -> Result<DigraphCycle> {
    let period = g.blocks();
    if w.len() % period != 0 {
        return Err(Error::Domain(format!(
            "walk length {} is not a multiple of {period}",
            w.len()
        )));
    }
    if is_2k_repeating_walk(w, g.k())? {
        return Err(Error::Domain(format!(
            "walk repeats with period {period}; it does not lift to a cycle",
            period = period
        )));
    }
    let vertices: Vec<DVertex> = w
        .vertices()
        .iter()
        .enumerate()
        .map(|(t, v)| {
            let index = match v {
                BVertex::X(i) => *i,
                BVertex::Y(j) => *j,
            };
            let block = t % period;
            match (v, block % 2) {
                (BVertex::X(_), 0) | (BVertex::Y(_), 1) => Ok(DVertex { block, index }),
                _ => Err(Error::Internal(
                    "walk part does not alternate with block parity".into(),
                )),
            }
        })
        .collect::<Result<_>>()?;
    let cycle = DigraphCycle::new(g, vertices)?;
    if cycle.weight != w.weight() {
        return Err(Error::Internal("lift changed the walk weight".into()));
    }
    Ok(cycle)
}
