//! Counterexample certificates: explicit factor tuples whose alternating
//! product violates a claimed containment, packaged so an independent
//! checker can re-derive the violation from scratch.
//!
//! Every construction starts from a graph certificate (a cycle of the right
//! parity, or the three-legged subtree) and produces factors supported on
//! that subgraph with entries of magnitude one:
//!
//! - a digraph cycle with winds + weight even yields a product acting as a
//!   signed cyclic permutation whose principal minor on the visited rows is
//!   exactly -1, with -1 also an eigenvalue;
//! - any graph cycle yields a two-factor product whose spectrum contains a
//!   nonreal pair or -1;
//! - the three-legged subtree embeds a fixed reference four-factor product
//!   with characteristic polynomial x^(n-3) (x^3 - 4x^2 + 3x - 1), whose
//!   cubic has one real and two nonreal roots.
//!
//! Factors initially sit in the closure class (zeros allowed at nonzero
//! pattern positions); `strictify` fills the remaining support with a small
//! epsilon so the violation survives with every sign strictly matched.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bipartite::{build_graph, BVertex, GraphCycle, TStarEmbedding};
use crate::blockcirc::{lift_walk, BlockCirculantDigraph, DigraphCycle};
use crate::classify::{classify, Statement};
use crate::error::{Error, Result};
use crate::exact::rational::{rat_int, Rational};
use crate::exact::{char_poly, is_ps, minor, ExactMatrix, MinorIndex, PsDiagnostic};
use crate::io::SchemaVersion;
use crate::signpat::{Sign, SignPattern};
use crate::walks::{inherit_walk, normalize_walk_weight_4, ClosedWalk};

// ---- Certificates ----

/// How the product breaks the claimed containment.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// A principal minor of the product is negative.
    NegativeMinor {
        index: MinorIndex,
        #[serde(with = "crate::exact::rational::serde_rational")]
        value: Rational,
    },
    /// The spectrum is not real nonnegative.
    NonPsSpectrum { diagnostic: PsDiagnostic },
}

/// A machine-checkable counterexample: 2k factors over `pattern` whose
/// alternating product realizes `violation`, refuting `statement`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessCertificate {
    pub version: SchemaVersion,
    pub pattern: SignPattern,
    pub statement: Statement,
    /// Half the factor count.
    pub k: usize,
    /// Factors stored untransposed; even factors (1-based) enter the
    /// product transposed.
    pub factors: Vec<ExactMatrix>,
    /// The alternating product of the factors, for convenience; `recheck`
    /// recomputes and compares it.
    pub product: ExactMatrix,
    pub violation: Violation,
}

impl WitnessCertificate {
    /// Are all factors strict members (no zero at a nonzero pattern entry)?
    pub fn is_strict(&self) -> bool {
        self.factors
            .iter()
            .all(|f| crate::signpat::sign_of(f) == self.pattern)
    }
}

/// Multiply factors alternately: `f0 f1ᵗ f2 f3ᵗ ...`.
pub fn alternating_matrix_product(factors: &[ExactMatrix]) -> Result<ExactMatrix> {
    if factors.is_empty() || factors.len() % 2 != 0 {
        return Err(Error::Dimension(format!(
            "alternating product needs a positive even factor count, got {}",
            factors.len()
        )));
    }
    let mut acc = factors[0].clone();
    for (t, f) in factors.iter().enumerate().skip(1) {
        acc = if t % 2 == 1 { acc.mul(&f.transpose())? } else { acc.mul(f)? };
    }
    Ok(acc)
}

// ---- Shared construction core ----

/// Unit-magnitude factors supported on the steps of a digraph cycle, with
/// signs copied from the base pattern. Factor b holds the steps out of
/// block b.
fn factors_from_digraph_cycle(
    base: &SignPattern,
    g: &BlockCirculantDigraph,
    cycle: &DigraphCycle,
) -> Result<Vec<ExactMatrix>> {
    let (n, m) = (base.rows(), base.cols());
    let mut factors = vec![ExactMatrix::zeros(n, m); g.blocks()];
    let len = cycle.len();
    for t in 0..len {
        let from = cycle.vertices[t];
        let to = cycle.vertices[(t + 1) % len];
        let (i, j) = if from.block % 2 == 0 {
            (from.index, to.index)
        } else {
            (to.index, from.index)
        };
        let sign = base.get(i, j);
        if sign == Sign::Zero {
            return Err(Error::Domain(format!(
                "cycle step {t} crosses a zero pattern entry ({i},{j})"
            )));
        }
        factors[from.block].set(i, j, sign.to_rational());
    }
    Ok(factors)
}

/// Block-0 row indices visited by the cycle, strictly increasing.
fn cycle_row_support(cycle: &DigraphCycle) -> Vec<usize> {
    let mut rows: Vec<usize> = cycle
        .vertices
        .iter()
        .filter(|v| v.block == 0)
        .map(|v| v.index)
        .collect();
    rows.sort_unstable();
    rows
}

fn assemble(
    base: &SignPattern,
    statement: Statement,
    k: usize,
    factors: Vec<ExactMatrix>,
    violation_from: impl FnOnce(&ExactMatrix) -> Result<Violation>,
) -> Result<WitnessCertificate> {
    let product = alternating_matrix_product(&factors)?;
    let violation = violation_from(&product)?;
    Ok(WitnessCertificate {
        version: SchemaVersion,
        pattern: base.clone(),
        statement,
        k,
        factors,
        product,
        violation,
    })
}

/// Negative-minor violation on the cycle's visited rows; the construction
/// guarantees the value is exactly -1, which is asserted.
fn negative_minor_violation(product: &ExactMatrix, rows: Vec<usize>) -> Result<Violation> {
    let index = MinorIndex::principal(rows)?;
    let value = minor(product, &index)?;
    if value != -Rational::one() {
        return Err(Error::Internal(format!(
            "cycle product minor should be -1, computed {value}"
        )));
    }
    Ok(Violation::NegativeMinor { index, value })
}

/// Spectrum violation; the product must fail the real-nonnegative test.
fn spectrum_violation(product: &ExactMatrix) -> Result<Violation> {
    let outcome = is_ps(product)?;
    if outcome.is_ps {
        return Err(Error::Internal(
            "constructed product unexpectedly has real nonnegative spectrum".into(),
        ));
    }
    Ok(Violation::NonPsSpectrum { diagnostic: outcome.diagnostic })
}

// ---- Constructions ----

/// Certificate from a digraph cycle with winds + weight even. For minor
/// targets the violation is the -1 principal minor on the visited rows;
/// for spectrum targets it is the -1 eigenvalue the same structure forces.
pub fn cycle_witness(
    base: &SignPattern,
    g: &BlockCirculantDigraph,
    cycle: &DigraphCycle,
    statement: Statement,
) -> Result<WitnessCertificate> {
    let k = g.k();
    if let Some(want) = statement.product_half_length() {
        if want != k {
            return Err(Error::Domain(format!(
                "statement {statement} concerns 2k = {}, digraph has 2k = {}",
                2 * want,
                2 * k
            )));
        }
    }
    if cycle.k_parity(g) != 0 {
        return Err(Error::Domain(
            "cycle winds + weight must be even to produce a violation".into(),
        ));
    }
    let factors = factors_from_digraph_cycle(base, g, cycle)?;
    let rows = cycle_row_support(cycle);
    match statement {
        Statement::P0Two | Statement::P0Four | Statement::P0Six | Statement::P0All => {
            assemble(base, statement, k, factors, |p| negative_minor_violation(p, rows))
        }
        Statement::PsTwo | Statement::PsFour | Statement::PsAll => {
            assemble(base, statement, k, factors, spectrum_violation)
        }
    }
}

/// Two factors supported on any cycle: the product is a signed cyclic
/// permutation of the cycle's row vertices, whose spectrum contains either
/// a nonreal pair or -1 — never real nonnegative.
pub fn not_ps_witness_2(base: &SignPattern, cycle: &GraphCycle) -> Result<WitnessCertificate> {
    let host = build_graph(base);
    let walk = ClosedWalk::from_cycle(&host, cycle)?;
    let g = BlockCirculantDigraph::from_alternating(base, 1)?;
    let lifted = lift_walk(&g, &walk)?;
    let factors = factors_from_digraph_cycle(base, &g, &lifted)?;
    assemble(base, Statement::PsTwo, 1, factors, spectrum_violation)
}

/// Four factors refuting the length-4 minor containment, built by
/// normalizing any cycle to a walk with zero 4-weight and lifting it.
pub fn not_p0_4_witness(base: &SignPattern, cycle: &GraphCycle) -> Result<WitnessCertificate> {
    let host = build_graph(base);
    let walk = normalize_walk_weight_4(&host, cycle)?;
    let g = BlockCirculantDigraph::from_alternating(base, 2)?;
    let lifted = lift_walk(&g, &walk)?;
    cycle_witness(base, &g, &lifted, Statement::P0Four)
}

/// Six factors refuting a length-6 minor containment from a cycle: the
/// normalized walk is stretched by one period step before lifting.
pub fn not_p0_6_cycle_witness(
    base: &SignPattern,
    cycle: &GraphCycle,
    statement: Statement,
) -> Result<WitnessCertificate> {
    let host = build_graph(base);
    let walk = normalize_walk_weight_4(&host, cycle)?;
    let stretched = inherit_walk(&host, &walk, 2)?;
    let g = BlockCirculantDigraph::from_alternating(base, 3)?;
    let lifted = lift_walk(&g, &stretched)?;
    cycle_witness(base, &g, &lifted, statement)
}

/// The length-12 closed walk around the three-legged subtree: down the
/// first leg, out and back along the second and third, and home.
fn tstar_walk_vertices(tstar: &TStarEmbedding) -> Vec<BVertex> {
    let c = tstar.center;
    let [(m1, t1), (m2, t2), (m3, t3)] = tstar.legs;
    vec![t1, m1, c, m2, t2, m2, c, m3, t3, m3, c, m1]
}

/// Six factors refuting a length-6 minor containment on a forest via the
/// three-legged subtree: its walk has weight 0, winds twice, and never
/// repeats with period 6.
pub fn not_p0_6_witness(
    base: &SignPattern,
    tstar: &TStarEmbedding,
    statement: Statement,
) -> Result<WitnessCertificate> {
    let host = build_graph(base);
    let walk = ClosedWalk::new(&host, tstar_walk_vertices(tstar))?;
    let g = BlockCirculantDigraph::from_alternating(base, 3)?;
    let lifted = lift_walk(&g, &walk)?;
    cycle_witness(base, &g, &lifted, statement)
}

// The reference four-factor product on the three-legged subtree, all signs
// positive: rows are (tip1, center, tip2, tip3), columns (mid1, mid2,
// mid3). Its product has characteristic polynomial
//   x^4 - 4x^3 + 3x^2 - x = x (x^3 - 4x^2 + 3x - 1),
// and the cubic has exactly one real root.
const TSTAR_FACTORS: [[[i64; 3]; 4]; 4] = [
    [[1, 0, 0], [1, 0, 1], [0, 1, 0], [0, 0, 0]],
    [[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[0, 0, 0], [1, 1, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [0, 1, 1], [0, 1, 0], [0, 0, 0]],
];

/// The cubic x^3 - 4x^2 + 3x - 1 shared by every subtree spectrum witness.
pub fn tstar_cubic() -> crate::exact::poly::ExactPolynomial {
    crate::exact::poly::ExactPolynomial::from_i64(&[-1, 3, -4, 1])
}

/// Four factors refuting a length-4 spectrum containment on a forest with
/// a three-legged subtree.
///
/// The reference factors are transplanted onto the embedding: a row map
/// sends reference rows to the pattern's rows, a column map sends reference
/// columns to the pattern's columns, and signature diagonals fix the signs
/// so every placed entry matches the pattern. When the subtree's center is
/// a column vertex the reference factors are transposed and cycled one
/// step, which preserves the nonzero spectrum.
pub fn tstar_ps_witness(
    base: &SignPattern,
    tstar: &TStarEmbedding,
    statement: Statement,
) -> Result<WitnessCertificate> {
    if statement != Statement::PsFour && statement != Statement::PsAll {
        return Err(Error::Domain(format!(
            "subtree spectrum witness refutes PS_4 or PS_ALL, not {statement}"
        )));
    }
    let (n, m) = (base.rows(), base.cols());
    let center = tstar.center;
    let [(m1, t1), (m2, t2), (m3, t3)] = tstar.legs;
    let idx = |v: BVertex| match v {
        BVertex::X(i) => i,
        BVertex::Y(j) => j,
    };
    let sign_at = |a: BVertex, b: BVertex| -> Result<Rational> {
        let (i, j) = match (a, b) {
            (BVertex::X(i), BVertex::Y(j)) | (BVertex::Y(j), BVertex::X(i)) => (i, j),
            _ => return Err(Error::Internal("subtree edge inside one part".into())),
        };
        let s = base.get(i, j);
        if s == Sign::Zero {
            return Err(Error::Domain(format!(
                "subtree edge ({i},{j}) is zero in the pattern"
            )));
        }
        Ok(s.to_rational())
    };

    // Gauge: center scale 1; each mid takes the center-edge sign, each tip
    // the product of its leg-edge sign and its mid's scale. Then
    // scale(u) * scale(v) equals the pattern sign on every subtree edge.
    let s_cm1 = sign_at(center, m1)?;
    let s_cm2 = sign_at(center, m2)?;
    let s_cm3 = sign_at(center, m3)?;
    let scale_center = Rational::one();
    let scale_mid = [s_cm1.clone(), s_cm2.clone(), s_cm3.clone()];
    let scale_tip = [
        sign_at(t1, m1)? * &scale_mid[0],
        sign_at(t2, m2)? * &scale_mid[1],
        sign_at(t3, m3)? * &scale_mid[2],
    ];

    // Reference axes: rows (tip1, center, tip2, tip3), columns (mid1,
    // mid2, mid3).
    let four = [idx(t1), idx(center), idx(t2), idx(t3)];
    let three = [idx(m1), idx(m2), idx(m3)];
    let four_scale = [
        scale_tip[0].clone(),
        scale_center.clone(),
        scale_tip[1].clone(),
        scale_tip[2].clone(),
    ];
    let three_scale = scale_mid;

    let center_is_row = matches!(center, BVertex::X(_));
    let mut factors = Vec::with_capacity(4);
    for f in 0..4 {
        // Center on the column side: transpose the references and shift
        // the factor order by one, turning f0 f1ᵗ f2 f3ᵗ into
        // f1ᵗ f2 f3ᵗ f0 — the same product cycled, so the nonzero spectrum
        // is unchanged while rows and columns swap roles.
        let reference = if center_is_row { TSTAR_FACTORS[f] } else { TSTAR_FACTORS[(f + 1) % 4] };
        let mut out = ExactMatrix::zeros(n, m);
        for r in 0..4 {
            for c in 0..3 {
                if reference[r][c] == 0 {
                    continue;
                }
                let value = rat_int(reference[r][c]);
                if center_is_row {
                    out.set(four[r], three[c], value * &four_scale[r] * &three_scale[c]);
                } else {
                    out.set(three[c], four[r], value * &three_scale[c] * &four_scale[r]);
                }
            }
        }
        factors.push(out);
    }

    let k = 2;
    let cert = assemble(base, statement, k, factors, spectrum_violation)?;

    // The construction pins the whole characteristic polynomial; check it.
    let p = char_poly(&cert.product)?;
    let expected = tstar_cubic().mul(&crate::exact::poly::ExactPolynomial::monomial(
        Rational::one(),
        n.saturating_sub(3),
    ));
    if p != expected {
        return Err(Error::Internal(format!(
            "subtree witness characteristic polynomial is {p}, expected {expected}"
        )));
    }
    Ok(cert)
}

// ---- Dispatch ----

/// Build a counterexample for `statement` over `pattern`, or report that
/// the statement holds (no counterexample exists).
pub fn witness_for(pattern: &SignPattern, statement: Statement) -> Result<WitnessCertificate> {
    let report = classify(pattern);
    if statement.holds_at(report.level) {
        return Err(Error::StatementHolds(statement));
    }
    let certs = &report.certificates;
    let need_cycle = || {
        certs.cycle.clone().ok_or_else(|| {
            Error::Internal("classification lost the cycle certificate".into())
        })
    };
    match statement {
        Statement::P0Two => {
            let cycle = certs.two_even_cycle.clone().ok_or_else(|| {
                Error::Internal("classification lost the parity certificate".into())
            })?;
            let host = build_graph(pattern);
            let walk = ClosedWalk::from_cycle(&host, &cycle)?;
            let g = BlockCirculantDigraph::from_alternating(pattern, 1)?;
            let lifted = lift_walk(&g, &walk)?;
            cycle_witness(pattern, &g, &lifted, statement)
        }
        Statement::PsTwo => not_ps_witness_2(pattern, &need_cycle()?),
        Statement::P0Four => not_p0_4_witness(pattern, &need_cycle()?),
        Statement::P0Six | Statement::P0All => match (&certs.cycle, &certs.tstar) {
            (Some(cycle), _) => not_p0_6_cycle_witness(pattern, cycle, statement),
            (None, Some(tstar)) => not_p0_6_witness(pattern, tstar, statement),
            (None, None) => Err(Error::Internal("no certificate for a failing level".into())),
        },
        Statement::PsFour | Statement::PsAll => match (&certs.cycle, &certs.tstar) {
            (Some(cycle), _) => {
                let host = build_graph(pattern);
                let walk = normalize_walk_weight_4(&host, cycle)?;
                let g = BlockCirculantDigraph::from_alternating(pattern, 2)?;
                let lifted = lift_walk(&g, &walk)?;
                cycle_witness(pattern, &g, &lifted, statement)
            }
            (None, Some(tstar)) => tstar_ps_witness(pattern, tstar, statement),
            (None, None) => Err(Error::Internal("no certificate for a failing level".into())),
        },
    }
}

// ---- Strictification ----

const STRICTIFY_MAX_HALVINGS: u32 = 64;

/// Replace closure-class factors by strict ones: every zero at a nonzero
/// pattern position becomes a signed epsilon, halved until the violation
/// persists (the same minor still negative, or the spectrum still bad).
pub fn strictify(cert: &WitnessCertificate) -> Result<WitnessCertificate> {
    let pattern = &cert.pattern;
    let mut eps = Rational::one();
    for _ in 0..=STRICTIFY_MAX_HALVINGS {
        let factors: Vec<ExactMatrix> = cert
            .factors
            .iter()
            .map(|f| {
                let mut out = f.clone();
                for i in 0..pattern.rows() {
                    for j in 0..pattern.cols() {
                        let want = pattern.get(i, j);
                        if want != Sign::Zero && out.get(i, j).is_zero() {
                            out.set(i, j, want.to_rational() * &eps);
                        }
                    }
                }
                out
            })
            .collect();
        let product = alternating_matrix_product(&factors)?;
        let violation = match &cert.violation {
            Violation::NegativeMinor { index, .. } => {
                let value = minor(&product, index)?;
                if !value.is_negative() {
                    None
                } else {
                    Some(Violation::NegativeMinor { index: index.clone(), value })
                }
            }
            Violation::NonPsSpectrum { .. } => {
                let outcome = is_ps(&product)?;
                if outcome.is_ps {
                    None
                } else {
                    Some(Violation::NonPsSpectrum { diagnostic: outcome.diagnostic })
                }
            }
        };
        if let Some(violation) = violation {
            let strict = WitnessCertificate {
                version: SchemaVersion,
                pattern: pattern.clone(),
                statement: cert.statement,
                k: cert.k,
                factors,
                product,
                violation,
            };
            debug_assert!(strict.is_strict());
            return Ok(strict);
        }
        eps = eps / rat_int(2);
    }
    Err(Error::Internal(format!(
        "violation did not survive strict perturbation down to 2^-{STRICTIFY_MAX_HALVINGS}"
    )))
}

// ---- Independent re-verification ----

/// Re-derive everything the certificate claims: factor membership, the
/// product, and the violation. Errors describe the first discrepancy.
pub fn recheck(cert: &WitnessCertificate) -> Result<()> {
    if cert.k == 0 || cert.factors.len() != 2 * cert.k {
        return Err(Error::Domain(format!(
            "certificate claims k = {} but carries {} factors",
            cert.k,
            cert.factors.len()
        )));
    }
    if let Some(want) = cert.statement.product_half_length() {
        if want != cert.k {
            return Err(Error::Domain(format!(
                "statement {} concerns 2k = {}, certificate has 2k = {}",
                cert.statement,
                2 * want,
                2 * cert.k
            )));
        }
    }
    for (t, f) in cert.factors.iter().enumerate() {
        crate::signpat::QualitativeSample::new(cert.pattern.clone(), f.clone(), true)
            .map_err(|e| Error::Domain(format!("factor {t}: {e}")))?;
    }
    let product = alternating_matrix_product(&cert.factors)?;
    if product != cert.product {
        return Err(Error::Domain(
            "stored product does not match the factor product".into(),
        ));
    }
    match &cert.violation {
        Violation::NegativeMinor { index, value } => {
            if index.rows() != index.cols() {
                return Err(Error::Domain("violation minor is not principal".into()));
            }
            if !value.is_negative() {
                return Err(Error::Domain(format!(
                    "claimed minor {value} is not negative"
                )));
            }
            let recomputed = minor(&product, index)?;
            if &recomputed != value {
                return Err(Error::Domain(format!(
                    "claimed minor {value}, recomputed {recomputed}"
                )));
            }
        }
        Violation::NonPsSpectrum { diagnostic } => {
            if matches!(diagnostic, PsDiagnostic::RealNonnegative { .. }) {
                return Err(Error::Domain(
                    "claimed spectrum diagnostic does not describe a failure".into(),
                ));
            }
            let outcome = is_ps(&product)?;
            if outcome.is_ps {
                return Err(Error::Domain(
                    "product spectrum is real nonnegative; certificate is wrong".into(),
                ));
            }
        }
    }
    Ok(())
}
