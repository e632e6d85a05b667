//! Pattern classification: which alternating-product containments hold.
//!
//! For a sign pattern A and even product length 2k, all products of 2k
//! matrices drawn from the closure class either always have nonnegative
//! principal minors (written `P0_2k`), always have real nonnegative spectrum
//! (`PS_2k`), or admit counterexamples. These containments are monotone in a
//! four-step ladder of bipartite-graph properties, so classifying a pattern
//! reduces to placing its graph on that ladder:
//!
//! - every cycle has len/2 + weight odd  =>  `P0_2`;
//! - forest                              =>  `P0_4` and `PS_2`;
//! - caterpillar forest                  =>  everything (`P0_2k`, `PS_2k`
//!   for all k).
//!
//! Each step is strict, and each failure is witnessed by a finite
//! certificate (an even cycle, any cycle, or a three-legged subtree) that
//! seeds the counterexample constructions in the witness module.

use serde::{Deserialize, Serialize};

use crate::bipartite::{
    build_graph, enumerate_cycles, is_caterpillar_forest, is_forest, is_two_odd, GraphCycle,
    TStarEmbedding,
};
use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::io::SchemaVersion;
use crate::par;
use crate::signpat::SignPattern;

// ---- The ladder ----

/// Position of a pattern's graph on the containment ladder, ordered by
/// strength. Each level grants the conclusions of all levels below it.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize,
)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Level {
    /// Some cycle has len/2 + weight even: nothing holds.
    None,
    /// All cycles are 2-odd but a cycle exists: exactly `P0_2`.
    TwoOdd,
    /// A forest with a three-legged subtree: adds `P0_4` and `PS_2`.
    Forest,
    /// A caterpillar forest: every containment holds.
    Caterpillar,
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Level::None => "NONE",
            Level::TwoOdd => "TWO_ODD",
            Level::Forest => "FOREST",
            Level::Caterpillar => "CATERPILLAR",
        })
    }
}

// ---- Statements ----

/// A single containment claim about alternating products over one pattern.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Statement {
    /// Length-2 products have nonnegative principal minors.
    P0Two,
    /// Length-4 products have nonnegative principal minors.
    P0Four,
    /// Length-6 products have nonnegative principal minors.
    P0Six,
    /// Products of every even length have nonnegative principal minors.
    P0All,
    /// Length-2 products have real nonnegative spectrum.
    PsTwo,
    /// Length-4 products have real nonnegative spectrum.
    PsFour,
    /// Products of every even length have real nonnegative spectrum.
    PsAll,
}

impl Statement {
    pub const ALL: [Statement; 7] = [
        Statement::P0Two,
        Statement::P0Four,
        Statement::P0Six,
        Statement::P0All,
        Statement::PsTwo,
        Statement::PsFour,
        Statement::PsAll,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Statement::P0Two => "P0_2",
            Statement::P0Four => "P0_4",
            Statement::P0Six => "P0_6",
            Statement::P0All => "P0_ALL",
            Statement::PsTwo => "PS_2",
            Statement::PsFour => "PS_4",
            Statement::PsAll => "PS_ALL",
        }
    }

    /// The weakest ladder level at which the statement holds.
    pub fn required_level(self) -> Level {
        match self {
            Statement::P0Two => Level::TwoOdd,
            Statement::P0Four | Statement::PsTwo => Level::Forest,
            Statement::P0Six | Statement::P0All | Statement::PsFour | Statement::PsAll => {
                Level::Caterpillar
            }
        }
    }

    pub fn holds_at(self, level: Level) -> bool {
        level >= self.required_level()
    }

    /// Product length 2k the statement talks about, when it names one.
    pub fn product_half_length(self) -> Option<usize> {
        match self {
            Statement::P0Two | Statement::PsTwo => Some(1),
            Statement::P0Four | Statement::PsFour => Some(2),
            Statement::P0Six => Some(3),
            Statement::P0All | Statement::PsAll => None,
        }
    }
}

impl std::fmt::Display for Statement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Statement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Statement::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown statement {s:?}; expected one of P0_2, P0_4, P0_6, P0_ALL, PS_2, PS_4, PS_ALL"
                ))
            })
    }
}

impl Serialize for Statement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Statement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// The seven claims, resolved. Serializes as a map keyed by statement name.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Conclusions {
    #[serde(rename = "P0_2")]
    pub p0_2: bool,
    #[serde(rename = "P0_4")]
    pub p0_4: bool,
    #[serde(rename = "P0_6")]
    pub p0_6: bool,
    #[serde(rename = "P0_ALL")]
    pub p0_all: bool,
    #[serde(rename = "PS_2")]
    pub ps_2: bool,
    #[serde(rename = "PS_4")]
    pub ps_4: bool,
    #[serde(rename = "PS_ALL")]
    pub ps_all: bool,
}

impl Conclusions {
    pub fn from_level(level: Level) -> Self {
        Conclusions {
            p0_2: Statement::P0Two.holds_at(level),
            p0_4: Statement::P0Four.holds_at(level),
            p0_6: Statement::P0Six.holds_at(level),
            p0_all: Statement::P0All.holds_at(level),
            ps_2: Statement::PsTwo.holds_at(level),
            ps_4: Statement::PsFour.holds_at(level),
            ps_all: Statement::PsAll.holds_at(level),
        }
    }

    pub fn get(&self, statement: Statement) -> bool {
        match statement {
            Statement::P0Two => self.p0_2,
            Statement::P0Four => self.p0_4,
            Statement::P0Six => self.p0_6,
            Statement::P0All => self.p0_all,
            Statement::PsTwo => self.ps_2,
            Statement::PsFour => self.ps_4,
            Statement::PsAll => self.ps_all,
        }
    }
}

// ---- Classification ----

/// Finite graph certificates for whichever ladder steps fail.
#[derive(Clone, PartialEq, Eq, Default, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificates {
    /// A cycle with len/2 + weight even; present iff the level is NONE.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_even_cycle: Option<GraphCycle>,
    /// A shortest cycle; present iff the graph is not a forest.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<GraphCycle>,
    /// A three-legged subtree; present iff the graph is a forest but not a
    /// caterpillar forest.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tstar: Option<TStarEmbedding>,
}

/// Full classification of one pattern.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationReport {
    pub version: SchemaVersion,
    pub pattern: SignPattern,
    pub level: Level,
    pub conclusions: Conclusions,
    pub certificates: Certificates,
}

/// Place the pattern's graph on the ladder and collect certificates.
pub fn classify(pattern: &SignPattern) -> ClassificationReport {
    let g = build_graph(pattern);
    let mut certificates = Certificates::default();

    let level = if !is_forest(&g) {
        certificates.cycle = enumerate_cycles(&g, None).into_iter().next();
        let two_odd = is_two_odd(&g);
        if two_odd.is_two_odd {
            Level::TwoOdd
        } else {
            certificates.two_even_cycle = two_odd.violating;
            Level::None
        }
    } else {
        let cat = is_caterpillar_forest(&g);
        if cat.is_caterpillar_forest {
            Level::Caterpillar
        } else {
            certificates.tstar = cat.tstar;
            Level::Forest
        }
    };

    ClassificationReport {
        version: SchemaVersion,
        pattern: pattern.clone(),
        level,
        conclusions: Conclusions::from_level(level),
        certificates,
    }
}

/// Classify many patterns, in input order, fanning out across threads when
/// the `parallel` feature is enabled.
pub fn classify_batch(patterns: &[SignPattern]) -> Vec<ClassificationReport> {
    par::map_vec(patterns, classify)
}

// ---- Spectral exclusion region ----

/// Numerical comparison margin for the angular boundary test.
pub const ANGULAR_MARGIN: f64 = 1e-9;
/// Eigenvalues within this magnitude of zero are treated as zero. Point
/// queries apply it directly; the matrix-level check scales it by the
/// matrix norm, since eigensolver error is relative to that scale.
pub const ZERO_MAGNITUDE_TOL: f64 = 1e-12;

/// The open wedge of half-angle pi/n around the negative real axis:
/// matrices of order n with all principal minors nonnegative have no
/// eigenvalue in it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct KelloggRegion {
    pub n: usize,
}

fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

impl KelloggRegion {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("exclusion region needs n >= 1".into()));
        }
        Ok(KelloggRegion { n })
    }

    /// Half-angle of the wedge.
    pub fn half_angle(&self) -> f64 {
        std::f64::consts::PI / self.n as f64
    }

    /// Signed depth into the wedge: positive inside, negative outside,
    /// measured as half_angle - (angular distance of arg z from pi).
    /// Zero-magnitude points are treated as outside.
    pub fn depth(&self, re: f64, im: f64) -> f64 {
        if (re * re + im * im).sqrt() <= ZERO_MAGNITUDE_TOL {
            return f64::NEG_INFINITY;
        }
        self.half_angle() - angular_distance(im.atan2(re), std::f64::consts::PI)
    }

    /// Open-wedge membership, no margin.
    pub fn contains(&self, re: f64, im: f64) -> bool {
        self.depth(re, im) > 0.0
    }

    /// Membership in the k-th root region: z is in it iff z^k lies in the
    /// wedge, so the angular test applies to k * arg z.
    pub fn contains_power(&self, re: f64, im: f64, k: usize) -> bool {
        if (re * re + im * im).sqrt() <= ZERO_MAGNITUDE_TOL {
            return false;
        }
        let theta = (k as f64) * im.atan2(re);
        angular_distance(theta, std::f64::consts::PI) < self.half_angle()
    }
}

/// Floating-point spectrum check against the exclusion wedge.
#[derive(Clone, Debug)]
pub struct SpectralExclusion {
    /// No eigenvalue is inside the wedge by more than the margin.
    pub excluded: bool,
    /// Eigenvalues clearly inside (re, im).
    pub violations: Vec<(f64, f64)>,
    /// Eigenvalues within the margin of the wedge boundary; reported but
    /// not counted as failures.
    pub boundary_hits: usize,
    /// Eigenvalues treated as zero.
    pub zeros: usize,
    /// False when the eigenvalue iteration gave up; the check is then
    /// inconclusive (and reports no violations).
    pub converged: bool,
}

/// Compute the floating spectrum of a square matrix and test every
/// eigenvalue against the order-n wedge. This is a numerical cross-check,
/// not a proof: margins absorb eigenvalue solver error.
pub fn spectral_exclusion_check(m: &ExactMatrix, region: KelloggRegion) -> Result<SpectralExclusion> {
    if m.rows() != m.cols() {
        return Err(Error::Dimension(format!(
            "spectrum needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let mut out = SpectralExclusion {
        excluded: true,
        violations: Vec::new(),
        boundary_hits: 0,
        zeros: 0,
        converged: true,
    };
    let rows = m.to_f64_rows();
    if rows.iter().flatten().all(|&x| x == 0.0) {
        // The zero matrix defeats the iteration's convergence test; its
        // spectrum needs no iteration anyway.
        out.zeros = m.rows();
        return Ok(out);
    }
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    // The eigensolver's absolute error grows with the matrix scale: a
    // singular product with entries around 1e8 reports its null
    // eigenvalues only to within about 1e-8, so the zero cutoff must be
    // relative to the norm.
    let zero_cut = ZERO_MAGNITUDE_TOL * flat.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    let dm = nalgebra::DMatrix::from_row_slice(m.rows(), m.cols(), &flat);
    let Some(schur) = nalgebra::linalg::Schur::try_new(dm, 1e-14, 100_000) else {
        out.converged = false;
        return Ok(out);
    };
    let eigen = schur.complex_eigenvalues();
    for ev in eigen.iter() {
        if ev.norm() <= zero_cut {
            out.zeros += 1;
            continue;
        }
        let depth = region.depth(ev.re, ev.im);
        if depth > ANGULAR_MARGIN {
            out.excluded = false;
            out.violations.push((ev.re, ev.im));
        } else if depth.abs() <= ANGULAR_MARGIN {
            out.boundary_hits += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat_int;

    fn pat(rows: &[&[i8]]) -> SignPattern {
        SignPattern::from_i8_rows(rows).unwrap()
    }

    #[test]
    fn statement_strings_round_trip() {
        for s in Statement::ALL {
            let text = s.to_string();
            assert_eq!(text.parse::<Statement>().unwrap(), s);
            let json = serde_json::to_string(&s).unwrap();
            assert_eq!(serde_json::from_str::<Statement>(&json).unwrap(), s);
        }
        assert!("P0_8".parse::<Statement>().is_err());
        assert!("ps_2".parse::<Statement>().is_err());
    }

    #[test]
    fn levels_order_and_gate_the_statements() {
        assert!(Level::None < Level::TwoOdd);
        assert!(Level::TwoOdd < Level::Forest);
        assert!(Level::Forest < Level::Caterpillar);
        assert!(!Statement::P0Two.holds_at(Level::None));
        assert!(Statement::P0Two.holds_at(Level::TwoOdd));
        assert!(!Statement::PsTwo.holds_at(Level::TwoOdd));
        assert!(Statement::PsTwo.holds_at(Level::Forest));
        assert!(!Statement::PsFour.holds_at(Level::Forest));
        assert!(Statement::P0All.holds_at(Level::Caterpillar));
        // Monotone: once true, true at every higher level.
        let ladder = [Level::None, Level::TwoOdd, Level::Forest, Level::Caterpillar];
        for s in Statement::ALL {
            let values: Vec<bool> = ladder.iter().map(|&l| s.holds_at(l)).collect();
            let mut sorted = values.clone();
            sorted.sort();
            assert_eq!(values, sorted, "{s} is monotone along the ladder");
        }
    }

    #[test]
    fn classify_places_the_four_reference_patterns() {
        // Even 4-cycle: bottom level.
        let r = classify(&pat(&[&[1, 1], &[1, 1]]));
        assert_eq!(r.level, Level::None);
        assert!(r.certificates.two_even_cycle.is_some());
        assert!(r.certificates.cycle.is_some());
        assert!(r.certificates.tstar.is_none());
        assert!(!r.conclusions.p0_2);

        // Odd 4-cycle: exactly P0_2.
        let r = classify(&pat(&[&[-1, 1], &[1, 1]]));
        assert_eq!(r.level, Level::TwoOdd);
        assert!(r.certificates.two_even_cycle.is_none());
        assert_eq!(r.certificates.cycle.as_ref().unwrap().len(), 4);
        assert!(r.conclusions.p0_2);
        assert!(!r.conclusions.p0_4 && !r.conclusions.ps_2);

        // Three-legged tree: forest, not caterpillar.
        let r = classify(&pat(&[&[1, 0, 0], &[1, 1, 1], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(r.level, Level::Forest);
        let t = r.certificates.tstar.unwrap();
        assert_eq!(t.vertices().len(), 7);
        assert!(r.conclusions.p0_4 && r.conclusions.ps_2);
        assert!(!r.conclusions.p0_6 && !r.conclusions.ps_4 && !r.conclusions.p0_all);

        // Path: caterpillar, everything holds.
        let r = classify(&pat(&[&[1, 1, 0], &[0, -1, 1]]));
        assert_eq!(r.level, Level::Caterpillar);
        assert_eq!(r.certificates, Certificates::default());
        for s in Statement::ALL {
            assert!(r.conclusions.get(s), "{s}");
        }
    }

    #[test]
    fn conclusions_match_levels_for_all_tiny_patterns() {
        for p in SignPattern::enumerate_all(2, 3) {
            let r = classify(&p);
            assert_eq!(r.conclusions, Conclusions::from_level(r.level));
            for s in Statement::ALL {
                assert_eq!(r.conclusions.get(s), s.holds_at(r.level));
            }
        }
    }

    #[test]
    fn batch_matches_sequential_order() {
        let patterns: Vec<SignPattern> = SignPattern::enumerate_all(2, 2).collect();
        let batch = classify_batch(&patterns);
        assert_eq!(batch.len(), patterns.len());
        for (p, r) in patterns.iter().zip(&batch) {
            assert_eq!(&r.pattern, p);
            assert_eq!(r, &classify(p));
        }
    }

    #[test]
    fn report_json_round_trip_and_strictness() {
        let r = classify(&pat(&[&[1, 1], &[1, 1]]));
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"version\":1"));
        assert!(json.contains("\"P0_2\":false"));
        let back: ClassificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        // Unknown fields and versions rejected.
        let tweaked = json.replacen("\"version\":1", "\"version\":9", 1);
        assert!(serde_json::from_str::<ClassificationReport>(&tweaked).is_err());
        let extra = json.replacen("{", "{\"surprise\":0,", 1);
        assert!(serde_json::from_str::<ClassificationReport>(&extra).is_err());
    }

    #[test]
    fn wedge_membership_basics() {
        let r3 = KelloggRegion::new(3).unwrap();
        // Negative reals are the deepest interior points.
        assert!(r3.contains(-1.0, 0.0));
        // Positive reals are far outside.
        assert!(!r3.contains(1.0, 0.0));
        // Wedge half-angle is pi/3: polar angle 2pi/3 + eps is inside.
        let inside = 0.71 * std::f64::consts::PI;
        assert!(r3.contains(inside.cos(), inside.sin()));
        let outside = 0.60 * std::f64::consts::PI;
        assert!(!r3.contains(outside.cos(), outside.sin()));
        // Angle below the axis, same distance.
        assert!(r3.contains(inside.cos(), -inside.sin()));
        // Zero excluded.
        assert!(!r3.contains(0.0, 0.0));
        assert!(KelloggRegion::new(0).is_err());
    }

    #[test]
    fn power_region_takes_roots_of_the_wedge() {
        let r2 = KelloggRegion::new(2).unwrap();
        // z^2 negative real <=> z on the imaginary axis.
        assert!(r2.contains_power(0.0, 1.0, 2));
        assert!(r2.contains_power(0.0, -3.0, 2));
        assert!(!r2.contains_power(1.0, 0.0, 2));
        // k = 1 reduces to plain membership.
        assert_eq!(r2.contains_power(-1.0, 0.1, 1), r2.contains(-1.0, 0.1));
    }

    #[test]
    fn spectral_check_flags_a_negative_eigenvalue() {
        // diag(1, -1): eigenvalue -1 sits inside every wedge.
        let m = ExactMatrix::from_i64_rows(&[&[1, 0], &[0, -1]]);
        let out = spectral_exclusion_check(&m, KelloggRegion::new(2).unwrap()).unwrap();
        assert!(!out.excluded);
        assert_eq!(out.violations.len(), 1);
        let (re, im) = out.violations[0];
        assert!((re + 1.0).abs() < 1e-9 && im.abs() < 1e-9);
    }

    #[test]
    fn spectral_check_passes_gram_products() {
        // B Bᵗ is symmetric positive semidefinite: spectrum real >= 0.
        let b = ExactMatrix::from_i64_rows(&[&[1, -2, 0], &[3, 1, -1]]);
        let m = b.mul(&b.transpose()).unwrap();
        let out = spectral_exclusion_check(&m, KelloggRegion::new(2).unwrap()).unwrap();
        assert!(out.excluded, "violations: {:?}", out.violations);
    }

    #[test]
    fn spectral_check_counts_zeros_and_needs_square() {
        let z = ExactMatrix::zeros(3, 3);
        let out = spectral_exclusion_check(&z, KelloggRegion::new(3).unwrap()).unwrap();
        assert!(out.excluded);
        assert_eq!(out.zeros, 3);
        let rect = ExactMatrix::zeros(2, 3);
        assert!(spectral_exclusion_check(&rect, KelloggRegion::new(3).unwrap()).is_err());
    }

    #[test]
    fn rotation_eigenvalues_sit_on_the_boundary() {
        // Rotation by pi/2 has eigenvalues +-i, exactly on the wedge
        // boundary for n = 2: logged as boundary hits, not violations.
        let m = ExactMatrix::new(
            2,
            2,
            vec![rat_int(0), rat_int(-1), rat_int(1), rat_int(0)],
        )
        .unwrap();
        let out = spectral_exclusion_check(&m, KelloggRegion::new(2).unwrap()).unwrap();
        assert!(out.excluded);
        assert_eq!(out.boundary_hits, 2);
    }
}
