//! Diagonal factorization within a qualitative class.
//!
//! Two strict members a, b of one sign class are related by b = D a E with
//! positive diagonal D, E exactly when the entrywise ratios b/a admit a
//! consistent vertex potential on the bipartite graph. Over a forest the
//! potential always exists, so the whole class is one scaling orbit; a
//! cycle imposes one multiplicative relation per cycle, and any failing
//! relation is returned as a finite obstruction certificate.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bipartite::{build_graph, enumerate_cycles, is_forest, BVertex, GraphCycle};
use crate::error::{Error, Result};
use crate::exact::rational::{rational_to_f64, Rational};
use crate::exact::ExactMatrix;
use crate::signpat::{sign_of, SignPattern};

// ---- Outcomes ----

/// Positive diagonal scales: `d` for rows, `e` for columns.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DiagonalPair {
    #[serde(with = "crate::exact::rational::serde_rational_seq")]
    pub d: Vec<Rational>,
    #[serde(with = "crate::exact::rational::serde_rational_seq")]
    pub e: Vec<Rational>,
}

impl DiagonalPair {
    /// Entry-wise d_i * a_ij * e_j.
    pub fn apply(&self, a: &ExactMatrix) -> Result<ExactMatrix> {
        if a.rows() != self.d.len() || a.cols() != self.e.len() {
            return Err(Error::Dimension(format!(
                "scales sized {}/{} against a {}x{} matrix",
                self.d.len(),
                self.e.len(),
                a.rows(),
                a.cols()
            )));
        }
        let mut out = ExactMatrix::zeros(a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                out.set(i, j, &self.d[i] * a.get(i, j) * &self.e[j]);
            }
        }
        Ok(out)
    }
}

/// A cycle whose two alternating ratio products disagree, certifying that
/// no diagonal pair exists.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CycleObstruction {
    pub cycle: GraphCycle,
    #[serde(with = "crate::exact::rational::serde_rational")]
    pub lhs: Rational,
    #[serde(with = "crate::exact::rational::serde_rational")]
    pub rhs: Rational,
}

/// Result of a factorization attempt.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorOutcome {
    Scaling(DiagonalPair),
    Obstruction(CycleObstruction),
}

// ---- Factorization ----

/// The two alternating ratio products around a cycle: pairing edges
/// (x_t, y_t) on the left, crossing edges (x_{t+1}, y_t) on the right.
fn cycle_products(ratios: &ExactMatrix, cycle: &GraphCycle) -> (Rational, Rational) {
    let len = cycle.len();
    let mut lhs = Rational::one();
    let mut rhs = Rational::one();
    for t in (0..len).step_by(2) {
        let BVertex::X(i) = cycle.vertices[t] else { unreachable!("even slots are rows") };
        let BVertex::Y(j) = cycle.vertices[t + 1] else { unreachable!("odd slots are columns") };
        let BVertex::X(i_next) = cycle.vertices[(t + 2) % len] else {
            unreachable!("even slots are rows")
        };
        lhs *= ratios.get(i, j);
        rhs *= ratios.get(i_next, j);
    }
    (lhs, rhs)
}

/// Try to write `b = D a E` with positive diagonal D, E.
///
/// Requires `a` and `b` to share the exact sign pattern. Scales propagate
/// outward from the least vertex of each graph component (fixed to scale
/// 1); untouched vertices keep scale 1. When some entry resists every
/// gauge, the smallest cycle with unequal alternating ratio products is
/// returned instead. Consistent instances over cyclic patterns still
/// factor — only the existence of a bad member needs a cycle.
pub fn factor(a: &ExactMatrix, b: &ExactMatrix) -> Result<FactorOutcome> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Dimension(format!(
            "reference is {}x{}, target is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let pattern = sign_of(a);
    if sign_of(b) != pattern {
        return Err(Error::Domain(
            "reference and target have different sign patterns".into(),
        ));
    }
    let (n, m) = (a.rows(), a.cols());

    // Entrywise target/reference ratios on the support; positive by the
    // sign check. Off-support entries stay zero and are never read.
    let mut ratios = ExactMatrix::zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            if !pattern.get(i, j).is_zero() {
                ratios.set(i, j, b.get(i, j) / a.get(i, j));
            }
        }
    }

    let g = build_graph(&pattern);
    let mut d: Vec<Option<Rational>> = vec![None; n];
    let mut e: Vec<Option<Rational>> = vec![None; m];
    let scale_of = |d: &[Option<Rational>], e: &[Option<Rational>], v: BVertex| match v {
        BVertex::X(i) => d[i].clone(),
        BVertex::Y(j) => e[j].clone(),
    };
    for start in g.vertices() {
        if scale_of(&d, &e, start).is_some() || g.degree(start) == 0 {
            continue;
        }
        // Fresh component: the iteration order makes `start` its least
        // vertex. Root gauge 1, then breadth-first ratio propagation.
        match start {
            BVertex::X(i) => d[i] = Some(Rational::one()),
            BVertex::Y(j) => e[j] = Some(Rational::one()),
        }
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for u in g.neighbors(v) {
                if scale_of(&d, &e, u).is_some() {
                    continue;
                }
                let (i, j) = match (v, u) {
                    (BVertex::X(i), BVertex::Y(j)) | (BVertex::Y(j), BVertex::X(i)) => (i, j),
                    _ => unreachable!("edges join the two parts"),
                };
                let ratio = ratios.get(i, j);
                match u {
                    BVertex::Y(jj) => {
                        e[jj] = Some(ratio / d[i].as_ref().expect("v is settled"))
                    }
                    BVertex::X(ii) => {
                        d[ii] = Some(ratio / e[j].as_ref().expect("v is settled"))
                    }
                }
                queue.push_back(u);
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(|x| x.unwrap_or_else(Rational::one)).collect();
    let e: Vec<Rational> = e.into_iter().map(|x| x.unwrap_or_else(Rational::one)).collect();

    // Every support entry must agree with the propagated scales; tree
    // edges do by construction.
    let consistent = (0..n).all(|i| {
        (0..m).all(|j| pattern.get(i, j).is_zero() || &d[i] * &e[j] == *ratios.get(i, j))
    });
    if consistent {
        let pair = DiagonalPair { d, e };
        debug_assert_eq!(pair.apply(a)?, *b);
        return Ok(FactorOutcome::Scaling(pair));
    }

    // Some cycle relation must fail; report the smallest such cycle.
    for cycle in enumerate_cycles(&g, None) {
        let (lhs, rhs) = cycle_products(&ratios, &cycle);
        if lhs != rhs {
            return Ok(FactorOutcome::Obstruction(CycleObstruction { cycle, lhs, rhs }));
        }
    }
    Err(Error::Internal(
        "propagation failed but every cycle relation holds".into(),
    ))
}

/// Is the whole class one scaling orbit — equivalently, is the pattern's
/// graph a forest?
pub fn is_q_prime_equal_q(p: &SignPattern) -> bool {
    is_forest(&build_graph(p))
}

// ---- Symmetrizing similarity ----

/// Relative tolerance for the floating reconstruction check.
pub const SIMILARITY_REL_TOL: f64 = 1e-12;

/// Floating decomposition D1 a D2 aᵗ D3 = P (M Mᵗ) P⁻¹.
#[derive(Clone, Debug)]
pub struct PsSimilarity {
    /// M = D3^(1/2) D1^(1/2) a D2^(1/2), row-major.
    pub m: Vec<Vec<f64>>,
    /// Diagonal of P = D1^(1/2) D3^(-1/2).
    pub p: Vec<f64>,
    /// Frobenius-relative reconstruction error actually achieved.
    pub rel_error: f64,
}

/// Exhibit the similarity between a doubly-scaled Gram-like product and a
/// true Gram matrix: D1 a D2 aᵗ D3 is similar, via a positive diagonal, to
/// M Mᵗ — hence its spectrum is real nonnegative. Square roots force
/// floating arithmetic; the reconstruction is verified to relative
/// tolerance 1e-12. Requires a forest pattern and positive scales.
pub fn ps_similarity_factor(
    a: &ExactMatrix,
    d1: &[Rational],
    d2: &[Rational],
    d3: &[Rational],
) -> Result<PsSimilarity> {
    let (n, m) = (a.rows(), a.cols());
    if d1.len() != n || d3.len() != n || d2.len() != m {
        return Err(Error::Dimension(format!(
            "scales sized {}/{}/{} against a {n}x{m} matrix",
            d1.len(),
            d2.len(),
            d3.len()
        )));
    }
    for (name, diag) in [("d1", d1), ("d2", d2), ("d3", d3)] {
        if diag.iter().any(|x| *x <= Rational::from_integer(0.into())) {
            return Err(Error::Domain(format!("{name} must be strictly positive")));
        }
    }
    if !is_q_prime_equal_q(&sign_of(a)) {
        return Err(Error::Domain(
            "symmetrizing similarity needs a forest pattern".into(),
        ));
    }

    let af = a.to_f64_rows();
    let s = |xs: &[Rational]| -> Vec<f64> {
        xs.iter().map(|x| rational_to_f64(x).sqrt()).collect()
    };
    let (s1, s2, s3) = (s(d1), s(d2), s(d3));
    let mf: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..m).map(|j| s3[i] * s1[i] * af[i][j] * s2[j]).collect())
        .collect();
    let p: Vec<f64> = (0..n).map(|i| s1[i] / s3[i]).collect();

    // Reconstruction P M Mᵗ P⁻¹ against the exact-form target D1 a D2 aᵗ D3.
    let f = |xs: &[Rational]| -> Vec<f64> { xs.iter().map(rational_to_f64).collect() };
    let (f1, f2, f3) = (f(d1), f(d2), f(d3));
    let mut err2 = 0.0f64;
    let mut norm2 = 0.0f64;
    for i in 0..n {
        for l in 0..n {
            let target: f64 =
                f1[i] * (0..m).map(|j| af[i][j] * f2[j] * af[l][j]).sum::<f64>() * f3[l];
            let rebuilt: f64 =
                p[i] * (0..m).map(|j| mf[i][j] * mf[l][j]).sum::<f64>() / p[l];
            err2 += (rebuilt - target).powi(2);
            norm2 += target.powi(2);
        }
    }
    let rel_error = err2.sqrt() / norm2.sqrt().max(1.0);
    if !(rel_error <= SIMILARITY_REL_TOL) {
        return Err(Error::Internal(format!(
            "similarity reconstruction error {rel_error:.3e} exceeds tolerance"
        )));
    }
    Ok(PsSimilarity { m: mf, p, rel_error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pat(rows: &[&[i8]]) -> SignPattern {
        SignPattern::from_i8_rows(rows).unwrap()
    }

    /// A strict member of the pattern with pseudorandom small rationals.
    fn member(p: &SignPattern, rng: &mut ChaCha8Rng) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(p.rows(), p.cols());
        for i in 0..p.rows() {
            for j in 0..p.cols() {
                if p.get(i, j).is_zero() {
                    continue;
                }
                let s = p.get(i, j).to_rational();
                let num = rng.gen_range(1..=20i64);
                let den = rng.gen_range(1..=9i64);
                m.set(i, j, s * rat(num, den));
            }
        }
        m
    }

    fn positive_diag(len: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
        (0..len).map(|_| rat(rng.gen_range(1..=12i64), rng.gen_range(1..=7i64))).collect()
    }

    #[test]
    fn identity_target_gives_unit_scales() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = pat(&[&[1, -1, 0], &[0, 1, 1]]);
        let a = member(&p, &mut rng);
        match factor(&a, &a).unwrap() {
            FactorOutcome::Scaling(pair) => {
                assert!(pair.d.iter().all(|x| x == &rat_int(1)));
                assert!(pair.e.iter().all(|x| x == &rat_int(1)));
            }
            other => panic!("expected scales, got {other:?}"),
        }
    }

    #[test]
    fn forest_round_trip_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let patterns = [
            pat(&[&[1, 1, 0, 0], &[0, -1, 1, 1]]),
            pat(&[&[1, 0, 0], &[1, 1, 1], &[0, 1, 0], &[0, 0, 1]]),
            pat(&[&[1, 0], &[0, -1]]),
        ];
        for p in &patterns {
            for _ in 0..20 {
                let a = member(p, &mut rng);
                let d0 = positive_diag(p.rows(), &mut rng);
                let e0 = positive_diag(p.cols(), &mut rng);
                let b = DiagonalPair { d: d0, e: e0 }.apply(&a).unwrap();
                match factor(&a, &b).unwrap() {
                    FactorOutcome::Scaling(pair) => {
                        assert_eq!(pair.apply(&a).unwrap(), b, "exact reproduction");
                        assert!(pair.d.iter().all(|x| x > &rat_int(0)));
                        assert!(pair.e.iter().all(|x| x > &rat_int(0)));
                    }
                    other => panic!("forest must factor, got {other:?}"),
                }
            }
        }
    }

    #[test]
    fn hand_checked_obstruction_on_the_square() {
        let a = ExactMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        let b = ExactMatrix::from_i64_rows(&[&[1, 1], &[1, 2]]);
        match factor(&a, &b).unwrap() {
            FactorOutcome::Obstruction(obs) => {
                assert_eq!(obs.cycle.len(), 4);
                assert_eq!(obs.lhs, rat_int(2));
                assert_eq!(obs.rhs, rat_int(1));
                assert_ne!(obs.lhs, obs.rhs);
            }
            other => panic!("expected an obstruction, got {other:?}"),
        }
    }

    #[test]
    fn consistent_cyclic_instances_still_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = pat(&[&[1, 1], &[1, 1]]);
        let a = member(&p, &mut rng);
        let d0 = positive_diag(2, &mut rng);
        let e0 = positive_diag(2, &mut rng);
        let b = DiagonalPair { d: d0, e: e0 }.apply(&a).unwrap();
        match factor(&a, &b).unwrap() {
            FactorOutcome::Scaling(pair) => assert_eq!(pair.apply(&a).unwrap(), b),
            other => panic!("consistent instance must factor, got {other:?}"),
        }
    }

    #[test]
    fn obstructions_recompute_from_raw_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = pat(&[&[1, 1, 0], &[1, 1, 1], &[0, -1, 1]]);
        let a = member(&p, &mut rng);
        let mut b = member(&p, &mut rng);
        // Force inconsistency.
        b.set(0, 0, b.get(0, 0) * rat_int(3));
        if let FactorOutcome::Obstruction(obs) = factor(&a, &b).unwrap() {
            // Recompute the two products directly from a and b.
            let mut ratios = ExactMatrix::zeros(3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    if !p.get(i, j).is_zero() {
                        ratios.set(i, j, b.get(i, j) / a.get(i, j));
                    }
                }
            }
            let (lhs, rhs) = cycle_products(&ratios, &obs.cycle);
            assert_eq!(lhs, obs.lhs);
            assert_eq!(rhs, obs.rhs);
            assert_ne!(lhs, rhs);
        }
        // (A scaling outcome would also be fine if the perturbation kept
        // consistency, but tripling one entry of a cyclic support breaks
        // the square's relation.)
    }

    #[test]
    fn gauge_freedom_per_component() {
        // Two components; rescaling one leaves the product unchanged.
        let p = pat(&[&[1, 0], &[0, 1]]);
        let a = ExactMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let pair = DiagonalPair {
            d: vec![rat_int(5), rat_int(7)],
            e: vec![rat(1, 5), rat(1, 7)],
        };
        let b = pair.apply(&a).unwrap();
        assert_eq!(b, a, "inverse gauge per component is invisible");
        // And factoring a vs a gives trivial scales even though other
        // gauges exist.
        match factor(&a, &b).unwrap() {
            FactorOutcome::Scaling(got) => {
                assert_eq!(got.apply(&a).unwrap(), b);
            }
            other => panic!("expected scales, got {other:?}"),
        }
        let _ = p;
    }

    #[test]
    fn sign_pattern_mismatch_is_a_domain_error() {
        let a = ExactMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        let b = ExactMatrix::from_i64_rows(&[&[1, -1], &[1, 1]]);
        assert!(matches!(factor(&a, &b), Err(Error::Domain(_))));
        let c = ExactMatrix::from_i64_rows(&[&[1, 1, 1], &[1, 1, 1]]);
        assert!(matches!(factor(&a, &c), Err(Error::Dimension(_))));
    }

    #[test]
    fn orbit_test_matches_forest_recognition() {
        assert!(is_q_prime_equal_q(&pat(&[&[1, 0], &[0, 1]])));
        assert!(!is_q_prime_equal_q(&pat(&[&[1, 1], &[1, 1]])));
        assert!(is_q_prime_equal_q(&pat(&[
            &[1, 0, 0],
            &[1, 1, 1],
            &[0, 1, 0],
            &[0, 0, 1]
        ])));
    }

    #[test]
    fn similarity_with_unit_scales_returns_the_matrix() {
        let a = ExactMatrix::from_i64_rows(&[&[1, -2, 0], &[0, 3, 1]]);
        let ones_n = vec![rat_int(1); 2];
        let ones_m = vec![rat_int(1); 3];
        let out = ps_similarity_factor(&a, &ones_n, &ones_m, &ones_n).unwrap();
        let af = a.to_f64_rows();
        for i in 0..2 {
            for j in 0..3 {
                assert!((out.m[i][j] - af[i][j]).abs() < 1e-15);
            }
        }
        assert!(out.p.iter().all(|&x| (x - 1.0).abs() < 1e-15));
        assert!(out.rel_error <= SIMILARITY_REL_TOL);
    }

    #[test]
    fn similarity_reconstructs_random_forest_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let p = pat(&[&[1, 1, 0, 0], &[0, -1, 1, 1]]);
        for _ in 0..25 {
            let a = member(&p, &mut rng);
            let d1 = positive_diag(2, &mut rng);
            let d2 = positive_diag(4, &mut rng);
            let d3 = positive_diag(2, &mut rng);
            let out = ps_similarity_factor(&a, &d1, &d2, &d3).unwrap();
            assert!(out.rel_error < 1e-9, "error {}", out.rel_error);
        }
    }

    #[test]
    fn similarity_rejects_bad_inputs() {
        let cyclic = ExactMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        let ones = vec![rat_int(1); 2];
        assert!(matches!(
            ps_similarity_factor(&cyclic, &ones, &ones, &ones),
            Err(Error::Domain(_))
        ));
        let a = ExactMatrix::from_i64_rows(&[&[1, 0], &[0, 1]]);
        let bad = vec![rat_int(1), rat_int(-1)];
        assert!(matches!(
            ps_similarity_factor(&a, &bad, &ones, &ones),
            Err(Error::Domain(_))
        ));
        let short = vec![rat_int(1)];
        assert!(matches!(
            ps_similarity_factor(&a, &short, &ones, &ones),
            Err(Error::Dimension(_))
        ));
    }
}
