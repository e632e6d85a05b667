//! Seeded random generation of patterns, graphs, walks, and class members.
//!
//! Every generator is a pure function of its explicit seed, so property
//! suites and the verification harness can replay any run bit-for-bit.
//! Caterpillar and forest generators build the graph constructively (spine
//! plus legs, fresh-vertex attachment) and therefore land in their target
//! class by construction; soundness is still asserted on the way out.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bipartite::{
    build_graph, is_caterpillar_forest, is_forest, BVertex, WeightedBipartiteGraph,
};
use crate::error::{Error, Result};
use crate::exact::rational::rat_int;
use crate::signpat::{MagnitudeRange, QualitativeSample, Sign, SignPattern};
use crate::walks::ClosedWalk;

// ---- Configuration ----

/// Knobs shared by all generators. Construct with [`GeneratorConfig::new`]
/// and adjust fields; generators validate before use.
#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    pub seed: u64,
    /// Upper bounds on rows and columns (inclusive, both >= 1).
    pub max_rows: usize,
    pub max_cols: usize,
    /// Probability that a pattern entry is zero, in [0, 1].
    pub zero_density: f64,
    /// Magnitude range for sampled member entries.
    pub magnitude: MagnitudeRange,
    /// Probability that a sampled member entry degenerates to zero
    /// (yielding closure members), in [0, 1].
    pub closure_probability: f64,
}

impl GeneratorConfig {
    pub fn new(seed: u64) -> Self {
        GeneratorConfig {
            seed,
            max_rows: 6,
            max_cols: 6,
            zero_density: 0.3,
            magnitude: MagnitudeRange::new(rat_int(1), rat_int(10)).expect("static range"),
            closure_probability: 0.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_rows == 0 || self.max_cols == 0 {
            return Err(Error::Domain("size bounds must be positive".into()));
        }
        for (name, p) in [
            ("zero_density", self.zero_density),
            ("closure_probability", self.closure_probability),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Domain(format!("{name} must lie in [0, 1], got {p}")));
            }
        }
        Ok(())
    }
}

/// The stream cipher generator backing all sampling: small state, fast,
/// and identical output on every platform for a given seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mix a base seed with a stream index into an independent child seed
/// (splitmix-style finalizer). Used to give each sample or worker its own
/// reproducible stream.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

// ---- Graph-backed pattern generators ----

/// Random sign for a present edge: the pattern entry is never zero where
/// an edge exists, and weight 1 marks the negative sign.
fn random_edge_sign(rng: &mut impl Rng) -> (Sign, u8) {
    if rng.gen_bool(0.5) {
        (Sign::Minus, 1)
    } else {
        (Sign::Plus, 0)
    }
}

/// Assemble a pattern from explicit edge signs, padding to n x m.
fn pattern_from_edges(n: usize, m: usize, edges: &[(usize, usize, Sign)]) -> SignPattern {
    let mut entries = vec![Sign::Zero; n * m];
    for &(i, j, s) in edges {
        entries[i * m + j] = s;
    }
    SignPattern::new(n, m, entries).expect("generator shapes are positive")
}

/// A random caterpillar forest pattern: one spine path alternating the two
/// parts, plus random leaf legs hanging off spine vertices. Removal of all
/// leaves leaves the (possibly shortened) spine path, so the result passes
/// the caterpillar test by construction.
pub fn random_caterpillar(config: &GeneratorConfig) -> Result<(WeightedBipartiteGraph, SignPattern)> {
    config.validate()?;
    let mut rng = rng_from_seed(config.seed);
    let (max_r, max_c) = (config.max_rows, config.max_cols);

    // Longest spine the bounds allow, alternating X0 Y0 X1 Y1 ...
    let spine_cap = (1..=max_r + max_c)
        .take_while(|&s| s.div_ceil(2) <= max_r && s / 2 <= max_c)
        .last()
        .expect("bounds are positive");
    let spine_len = rng.gen_range(1..=spine_cap);
    let mut n = spine_len.div_ceil(2);
    let mut m = spine_len / 2;

    let mut edges: Vec<(usize, usize, Sign)> = Vec::new();
    let push_edge = |rng: &mut ChaCha8Rng, edges: &mut Vec<_>, i: usize, j: usize| {
        let (sign, _w) = random_edge_sign(rng);
        edges.push((i, j, sign));
    };
    for t in 0..spine_len.saturating_sub(1) {
        // Spine step t joins vertex t and t+1; X indices t/2, Y indices t/2.
        let (i, j) = if t % 2 == 0 { (t / 2, t / 2) } else { ((t + 2) / 2, t / 2) };
        push_edge(&mut rng, &mut edges, i, j);
    }
    // Legs: leaves attached to spine vertices in the opposite part.
    for t in 0..spine_len {
        while rng.gen_bool(0.5) {
            if t % 2 == 0 {
                // Spine vertex X(t/2): a leg needs a fresh Y vertex.
                if m >= max_c {
                    break;
                }
                push_edge(&mut rng, &mut edges, t / 2, m);
                m += 1;
            } else {
                if n >= max_r {
                    break;
                }
                push_edge(&mut rng, &mut edges, n, t / 2);
                n += 1;
            }
        }
    }
    let pattern = pattern_from_edges(n.max(1), m.max(1), &edges);
    let g = build_graph(&pattern);
    let verdict = is_caterpillar_forest(&g);
    assert!(
        verdict.is_caterpillar_forest,
        "spine-and-legs construction must be a caterpillar"
    );
    Ok((g, pattern))
}

/// A random forest pattern: vertices are introduced one by one and either
/// attach to a uniformly random earlier vertex of the opposite part or
/// start a new component — no edge ever joins two settled vertices, so no
/// cycle can form.
pub fn random_forest(config: &GeneratorConfig) -> Result<(WeightedBipartiteGraph, SignPattern)> {
    config.validate()?;
    let mut rng = rng_from_seed(config.seed);
    let n = rng.gen_range(1..=config.max_rows);
    let m = rng.gen_range(1..=config.max_cols);
    let mut edges: Vec<(usize, usize, Sign)> = Vec::new();
    // Introduce X0, Y0, X1, Y1, ... (tail of the longer part last).
    let mut settled_x = 0usize;
    let mut settled_y = 0usize;
    for step in 0..n + m {
        let introduce_x = if settled_x < n && settled_y < m { step % 2 == 0 } else { settled_x < n };
        if introduce_x {
            if settled_y > 0 && !rng.gen_bool(config.zero_density) {
                let j = rng.gen_range(0..settled_y);
                let (sign, _) = random_edge_sign(&mut rng);
                edges.push((settled_x, j, sign));
            }
            settled_x += 1;
        } else {
            if settled_x > 0 && !rng.gen_bool(config.zero_density) {
                let i = rng.gen_range(0..settled_x);
                let (sign, _) = random_edge_sign(&mut rng);
                edges.push((i, settled_y, sign));
            }
            settled_y += 1;
        }
    }
    let pattern = pattern_from_edges(n, m, &edges);
    let g = build_graph(&pattern);
    assert!(is_forest(&g), "fresh-vertex attachment cannot close a cycle");
    Ok((g, pattern))
}

/// A random unrestricted pattern: independent entries, zero with
/// probability `zero_density`, otherwise an even coin between the signs.
pub fn random_pattern(config: &GeneratorConfig) -> Result<SignPattern> {
    config.validate()?;
    let mut rng = rng_from_seed(config.seed);
    let n = rng.gen_range(1..=config.max_rows);
    let m = rng.gen_range(1..=config.max_cols);
    let entries = (0..n * m)
        .map(|_| {
            if rng.gen_bool(config.zero_density) {
                Sign::Zero
            } else {
                random_edge_sign(&mut rng).0
            }
        })
        .collect();
    SignPattern::new(n, m, entries)
}

/// A random member of the class (or its closure when
/// `closure_probability > 0`), drawn with the config's magnitude range.
pub fn random_member(
    config: &GeneratorConfig,
    pattern: &SignPattern,
    rng: &mut impl Rng,
) -> Result<QualitativeSample> {
    config.validate()?;
    Ok(crate::signpat::sample_closure(
        pattern,
        rng,
        &config.magnitude,
        config.closure_probability,
    ))
}

// ---- Walks ----

/// A random closed walk of the requested length on `g`, started at the
/// least X vertex with an edge. Each step picks a uniformly random
/// neighbor among those that can still reach the start in the remaining
/// steps, so the walk always closes. Bipartite hosts force even lengths;
/// odd or zero requests and edgeless graphs are domain errors.
pub fn random_closed_walk(g: &WeightedBipartiteGraph, length: usize, seed: u64) -> Result<ClosedWalk> {
    if length == 0 || length % 2 != 0 {
        return Err(Error::Domain(format!(
            "closed walks on a bipartite graph have positive even length, requested {length}"
        )));
    }
    let start = g
        .vertices()
        .into_iter()
        .find(|&v| v.is_row() && g.degree(v) > 0)
        .ok_or_else(|| Error::Domain("graph has no edges to walk on".into()))?;

    // Breadth-first distances to the start; reachable vertices only.
    let mut dist: std::collections::HashMap<BVertex, usize> = std::collections::HashMap::new();
    dist.insert(start, 0);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for u in g.neighbors(v) {
            if !dist.contains_key(&u) {
                dist.insert(u, dist[&v] + 1);
                queue.push_back(u);
            }
        }
    }

    let mut rng = rng_from_seed(seed);
    let mut vertices = Vec::with_capacity(length);
    let mut current = start;
    for step in 0..length {
        vertices.push(current);
        let remaining = length - step; // steps left including the closing one
        let viable: Vec<BVertex> = g
            .neighbors(current)
            .into_iter()
            .filter(|u| dist.get(u).is_some_and(|&d| d + 1 <= remaining))
            .collect();
        assert!(!viable.is_empty(), "distance filter keeps the walk closable");
        current = viable[rng.gen_range(0..viable.len())];
    }
    assert_eq!(current, start, "walk must close after the final step");
    ClosedWalk::new(g, vertices)
}
