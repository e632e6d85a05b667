//! Closed walks on the bipartite graph and their periodic structure.
//!
//! A closed walk of length divisible by 2k is *2k-repeating* when some
//! vertex occurs twice at positions congruent mod 2k — equivalently, when
//! the walk contains a proper closed subwalk whose length is a positive
//! multiple of 2k. Walks that fail this are exactly the ones that survive as
//! cycles in the block-circulant digraph, so they are what product
//! counterexamples are built from. This module provides the predicates, the
//! graph-level bounded search, and the two walk surgeries: weight
//! normalization for the 4-step criterion and the length-inheritance step
//! that moves a failure from period 2s to period 2(s+1).

use serde::{Deserialize, Serialize};

use crate::bipartite::{is_caterpillar_forest, BVertex, GraphCycle, WeightedBipartiteGraph};
use crate::error::{Error, Result};
use crate::exact::rational::{rat, rat_int, Rational};
use crate::limits::{SearchLimits, StateCounter};

// ---- Closed walks ----

/// A closed walk, stored as the cyclic vertex sequence `v0..v_{L-1}` (the
/// closing edge back to `v0` is implicit), canonicalized to the
/// lexicographically least rotation. Its weight is the mod-2 sum of
/// traversed edge weights, counted with multiplicity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClosedWalk {
    vertices: Vec<BVertex>,
    weight: u8,
}

impl ClosedWalk {
    /// Validate adjacency of consecutive vertices (and the closing edge),
    /// compute the weight, and canonicalize the rotation. Accepts the
    /// sequence with or without the explicit closing repetition of `v0`.
    pub fn new(g: &WeightedBipartiteGraph, mut vertices: Vec<BVertex>) -> Result<Self> {
        if vertices.len() >= 2 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        let len = vertices.len();
        if len < 2 {
            return Err(Error::Domain(
                "a closed walk needs at least two vertices".into(),
            ));
        }
        let mut weight = 0u16;
        for t in 0..len {
            let a = vertices[t];
            let b = vertices[(t + 1) % len];
            match g.weight_between(a, b) {
                Some(w) => weight += w as u16,
                None => {
                    return Err(Error::Domain(format!(
                        "walk step {t} uses a non-edge {a}-{b}"
                    )))
                }
            }
        }
        // Least rotation; bipartite walks always contain an X vertex and
        // X sorts before Y, so canonical walks start in the row part.
        let least = (0..len)
            .min_by_key(|&s| {
                let mut key = Vec::with_capacity(len);
                for t in 0..len {
                    key.push(vertices[(s + t) % len]);
                }
                key
            })
            .unwrap();
        vertices.rotate_left(least);
        Ok(ClosedWalk { vertices, weight: (weight % 2) as u8 })
    }

    pub fn from_cycle(g: &WeightedBipartiteGraph, c: &GraphCycle) -> Result<Self> {
        Self::new(g, c.vertices.clone())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn weight(&self) -> u8 {
        self.weight
    }

    pub fn vertices(&self) -> &[BVertex] {
        &self.vertices
    }

    pub fn vertex(&self, t: usize) -> BVertex {
        self.vertices[t % self.vertices.len()]
    }
}

/// `len/k + weight` reduced mod 2, kept exact (it is a half-integer for
/// k = 2 and odd-length walks in general graphs; on bipartite hosts the
/// lengths are even). The walk or edge set is "k-odd" when this equals 1.
pub fn k_weight(w: &ClosedWalk, k: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::Domain("k-weight needs k >= 1".into()));
    }
    let raw = rat(w.len() as i64, k as i64) + rat_int(w.weight as i64);
    let two = rat_int(2);
    let floored = (&raw / &two).floor();
    Ok(raw - floored * two)
}

/// Does the walk contain a vertex repeated at positions congruent mod 2k?
/// Requires `2k` to divide the length.
pub fn is_2k_repeating_walk(w: &ClosedWalk, k: usize) -> Result<bool> {
    let period = 2 * k;
    if k == 0 || w.len() % period != 0 {
        return Err(Error::Domain(format!(
            "walk length {} is not a positive multiple of 2k = {period}",
            w.len()
        )));
    }
    let n = w.len();
    for t1 in 0..n {
        for t2 in (t1 + period..n).step_by(period) {
            if w.vertices[t1] == w.vertices[t2] {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

// ---- Graph-level bounded search ----

/// Outcome of the bounded graph-level search.
#[derive(Clone, Debug)]
pub struct RepeatingVerdict {
    /// No non-repeating closed walk of length 2jk exists for 2 <= j <= j_max.
    pub repeating: bool,
    /// A non-repeating walk, when one was found.
    pub witness: Option<ClosedWalk>,
    /// The bound the positive verdict was verified to.
    pub j_max: usize,
}

/// Is every closed walk of length 2jk (2 <= j <= `j_max`) 2k-repeating?
///
/// Searches for a counterexample walk directly: the DFS only ever extends
/// partial walks with no repeated vertex inside a mod-2k residue class, so
/// the state space stays small even though raw walk counts grow
/// exponentially. A `witness` is returned for negative verdicts; positive
/// verdicts are exhaustive up to `j_max`.
pub fn is_2k_repeating_graph(
    g: &WeightedBipartiteGraph,
    k: usize,
    j_max: usize,
    limits: &SearchLimits,
) -> Result<RepeatingVerdict> {
    if k == 0 || j_max < 2 {
        return Err(Error::Domain("repeating-graph search needs k >= 1, j_max >= 2".into()));
    }
    let mut counter = StateCounter::new(limits, "closed-walk search");
    for j in 2..=j_max {
        let length = 2 * j * k;
        if let Some(w) = find_non_repeating_walk(g, 2 * k, length, &mut counter, None)? {
            return Ok(RepeatingVerdict { repeating: false, witness: Some(w), j_max });
        }
    }
    Ok(RepeatingVerdict { repeating: true, witness: None, j_max })
}

/// DFS for a closed walk of exactly `length` steps with no vertex repeated
/// within a residue class mod `period`. Optionally require a given mod-2
/// weight (used by counterexample construction).
pub(crate) fn find_non_repeating_walk(
    g: &WeightedBipartiteGraph,
    period: usize,
    length: usize,
    counter: &mut StateCounter,
    want_weight: Option<u8>,
) -> Result<Option<ClosedWalk>> {
    debug_assert_eq!(length % period, 0);

    struct Dfs<'a> {
        g: &'a WeightedBipartiteGraph,
        period: usize,
        length: usize,
        want_weight: Option<u8>,
        path: Vec<BVertex>,
        // used[class] lists vertices seen at positions == class (mod period).
        used: Vec<Vec<BVertex>>,
    }

    impl Dfs<'_> {
        fn extend(&mut self, weight: u8, counter: &mut StateCounter) -> Result<Option<ClosedWalk>> {
            counter.tick()?;
            let t = self.path.len();
            let last = *self.path.last().unwrap();
            if t == self.length {
                let start = self.path[0];
                if let Some(w) = self.g.weight_between(last, start) {
                    let total = (weight + w) % 2;
                    if self.want_weight.is_none_or(|want| want == total) {
                        return Ok(Some(ClosedWalk::new(self.g, self.path.clone())?));
                    }
                }
                return Ok(None);
            }
            let class = t % self.period;
            for next in self.g.neighbors(last) {
                if self.used[class].contains(&next) {
                    continue;
                }
                self.used[class].push(next);
                self.path.push(next);
                let w = self.g.weight_between(last, next).unwrap();
                if let Some(found) = self.extend((weight + w) % 2, counter)? {
                    return Ok(Some(found));
                }
                self.path.pop();
                self.used[class].pop();
            }
            Ok(None)
        }
    }

    let mut dfs = Dfs {
        g,
        period,
        length,
        want_weight,
        path: Vec::with_capacity(length),
        used: vec![Vec::new(); period],
    };
    for start in g.vertices() {
        dfs.path.clear();
        dfs.used.iter_mut().for_each(Vec::clear);
        dfs.path.push(start);
        dfs.used[0].push(start);
        if let Some(found) = dfs.extend(0, counter)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

// ---- Subwalk structure of caterpillar walks ----

/// For a closed walk whose traversed subgraph is a caterpillar, verify it
/// has a closed subwalk of every even length 2s, 1 <= s <= len/2 (indices
/// cyclic). Errors if the traversed subgraph is not a caterpillar tree.
pub fn caterpillar_ivt_check(g: &WeightedBipartiteGraph, w: &ClosedWalk) -> Result<bool> {
    // Rebuild the traversed subgraph.
    let mut sub = WeightedBipartiteGraph::empty(g.n_left(), g.n_right());
    for t in 0..w.len() {
        let (a, b) = (w.vertex(t), w.vertex(t + 1));
        let (i, j) = match (a, b) {
            (BVertex::X(i), BVertex::Y(j)) | (BVertex::Y(j), BVertex::X(i)) => (i, j),
            _ => unreachable!("walks alternate parts"),
        };
        if sub.edge_weight(i, j).is_none() {
            sub.add_edge(i, j, g.edge_weight(i, j).unwrap())?;
        }
    }
    let touched: std::collections::HashSet<BVertex> = w.vertices().iter().copied().collect();
    let connected = sub
        .components()
        .iter()
        .filter(|c| c.iter().any(|v| touched.contains(v)))
        .count()
        == 1;
    if !connected || !is_caterpillar_forest(&sub).is_caterpillar_forest {
        return Err(Error::Domain(
            "walk does not traverse a caterpillar subtree".into(),
        ));
    }
    Ok(has_all_even_subwalk_lengths(w))
}

/// Closed subwalk of length 2s exists iff some `v_t == v_{t+2s}` cyclically.
pub(crate) fn has_subwalk_of_length(w: &ClosedWalk, len: usize) -> bool {
    if len == w.len() {
        return true;
    }
    (0..w.len()).any(|t| w.vertex(t) == w.vertex(t + len))
}

fn has_all_even_subwalk_lengths(w: &ClosedWalk) -> bool {
    (1..=w.len() / 2).all(|s| has_subwalk_of_length(w, 2 * s))
}

// ---- Walk surgeries ----

/// Push a walk that fails 2s-repeating to one that fails 2(s+1)-repeating.
///
/// Requires `len = 2js`. After each block of 2s steps the last two vertices
/// are traversed again (stepping back and forth over the edge between
/// them), adding 2j steps and even weight, so the mod-2 weight is preserved
/// and the new length is 2j(s+1). With j = 1 the result is a single period
/// and the non-repeating condition is vacuous but still correct.
pub fn inherit_walk(g: &WeightedBipartiteGraph, w: &ClosedWalk, s: usize) -> Result<ClosedWalk> {
    if s == 0 || w.len() % (2 * s) != 0 {
        return Err(Error::Domain(format!(
            "inherit step needs length divisible by 2s; len {} s {s}",
            w.len()
        )));
    }
    let j = w.len() / (2 * s);
    if is_2k_repeating_walk(w, s)? {
        return Err(Error::Domain(format!(
            "walk is {}-repeating; inheritance needs a failing walk",
            2 * s
        )));
    }
    let mut out = Vec::with_capacity(2 * j * (s + 1));
    for r in 1..=j {
        let block_start = 2 * (r - 1) * s;
        for t in block_start..block_start + 2 * s {
            out.push(w.vertex(t));
        }
        // Second copy of the block's last two vertices.
        out.push(w.vertex(2 * r * s - 2));
        out.push(w.vertex(2 * r * s - 1));
    }
    let inherited = ClosedWalk::new(g, out)?;
    if inherited.weight() != w.weight() {
        return Err(Error::Internal("inheritance changed the walk weight".into()));
    }
    if is_2k_repeating_walk(&inherited, s + 1)? {
        return Err(Error::Internal(
            "inherited walk unexpectedly became repeating".into(),
        ));
    }
    Ok(inherited)
}

/// Turn any cycle into a closed walk that fails 4-repeating and has 4-weight
/// zero, by re-walking the first one, two, or three edges-pairs of the cycle
/// depending on `(len mod 8, weight)`. The insertion count table:
///
/// | weight | len mod 8 | doubled pairs | result len mod 8 |
/// |--------|-----------|---------------|------------------|
/// |   0    |     0     |       0       |        0         |
/// |   0    |     2     |       3       |        0         |
/// |   0    |     4     |       2       |        0         |
/// |   0    |     6     |       1       |        0         |
/// |   1    |     0     |       2       |        4         |
/// |   1    |     2     |       1       |        4         |
/// |   1    |     4     |       0       |        4         |
/// |   1    |     6     |       3       |        4         |
pub fn normalize_walk_weight_4(
    g: &WeightedBipartiteGraph,
    c: &GraphCycle,
) -> Result<ClosedWalk> {
    let len = c.len();
    if len < 4 || len % 2 != 0 {
        return Err(Error::Internal(format!("cycle of impossible length {len}")));
    }
    let doubled_pairs = match (c.weight, len % 8) {
        (0, 0) => 0,
        (0, 2) => 3,
        (0, 4) => 2,
        (0, 6) => 1,
        (1, 0) => 2,
        (1, 2) => 1,
        (1, 4) => 0,
        (1, 6) => 3,
        (w, r) => {
            return Err(Error::Internal(format!(
                "impossible cycle weight/length combination ({w}, {r})"
            )))
        }
    };
    if 2 * doubled_pairs > len {
        // len == 2 mod 8 forces len >= 10, len == 6 mod 8 forces len >= 6;
        // both leave room for three pairs. Anything else is a defect.
        return Err(Error::Internal(format!(
            "cycle of length {len} too short for {doubled_pairs} doubled pairs"
        )));
    }
    let mut out = Vec::with_capacity(len + 2 * doubled_pairs);
    for (idx, &v) in c.vertices.iter().enumerate() {
        out.push(v);
        if idx % 2 == 1 && idx < 2 * doubled_pairs {
            out.push(c.vertices[idx - 1]);
            out.push(v);
        }
    }
    let walk = ClosedWalk::new(g, out)?;
    if k_weight(&walk, 4)? != Rational::from_integer(0.into()) {
        return Err(Error::Internal("normalized walk is not 4-even".into()));
    }
    if is_2k_repeating_walk(&walk, 2)? {
        return Err(Error::Internal("normalized walk is 4-repeating".into()));
    }
    Ok(walk)
}
