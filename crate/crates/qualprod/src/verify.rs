//! Randomized corroboration harness: sample exact class members, form
//! alternating products for each requested half-length k, and test the
//! containment statements, the rank stability of two-odd patterns, and the
//! spectral exclusion wedge.
//!
//! Every sample runs under its own seed derived from the report seed and
//! the sample's position, and results merge in position order, so a report
//! is a pure function of (pattern, config) no matter how the samples are
//! scheduled across threads. Any failing sample is attached as a full
//! witness certificate that `witness::recheck` accepts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bipartite::{build_graph, is_two_odd};
use crate::classify::{spectral_exclusion_check, KelloggRegion, Statement};
use crate::error::{Error, Result};
use crate::exact::rational::rat_int;
use crate::exact::{
    exact_rank, is_p0_with_cap, ps_from_char_poly, char_poly, ExactMatrix, DEFAULT_MINOR_CAP,
};
use crate::io::SchemaVersion;
use crate::par;
use crate::sampling::{derive_seed, rng_from_seed};
use crate::signpat::{sample_closure, MagnitudeRange, SignPattern};
use crate::witness::{alternating_matrix_product, Violation, WitnessCertificate};

// ---- Configuration ----

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Independent products drawn for each k.
    pub samples_per_k: usize,
    /// Half-lengths to test: k samples a 2k-factor product.
    pub ks: Vec<usize>,
    pub magnitude: MagnitudeRange,
    /// Per-entry probability of degenerating to zero (closure members).
    pub zero_probability: f64,
    /// Exact principal-minor tests run only up to this product order;
    /// larger products are skipped (counted, not failed).
    pub minor_cap: usize,
}

impl VerifyConfig {
    pub fn new(seed: u64) -> Self {
        VerifyConfig {
            seed,
            samples_per_k: 100,
            ks: vec![1, 2],
            magnitude: MagnitudeRange::new(rat_int(1), rat_int(10)).expect("static range"),
            zero_probability: 0.0,
            minor_cap: DEFAULT_MINOR_CAP,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.samples_per_k == 0 {
            return Err(Error::Domain("samples_per_k must be positive".into()));
        }
        if self.ks.is_empty() || self.ks.contains(&0) {
            return Err(Error::Domain("k list must be nonempty with k >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.zero_probability) {
            return Err(Error::Domain(format!(
                "zero probability must lie in [0, 1], got {}",
                self.zero_probability
            )));
        }
        Ok(())
    }
}

// ---- Report ----

/// Pass/fail counts for one containment statement, with the first failing
/// sample preserved as a reproducible certificate.
#[derive(Clone, PartialEq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct StatementTally {
    pub passes: u64,
    pub fails: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_counterexample: Option<WitnessCertificate>,
}

/// Rank comparison between each product and its leading factor, run on
/// strict samples of two-odd patterns.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RankTally {
    pub checked: u64,
    pub mismatches: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_mismatch_seed: Option<u64>,
}

/// Floating spectrum results against the exclusion wedge, run on products
/// that passed the exact principal-minor test.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct KelloggFlags {
    pub checked: u64,
    /// Eigenvalues strictly inside the wedge — should never happen.
    pub interior_hits: u64,
    /// Eigenvalues within the angular margin of the wedge boundary;
    /// logged, not failed.
    pub boundary_hits: u64,
    /// Samples whose floating eigenvalue iteration did not converge.
    pub unconverged: u64,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct VerifyReport {
    pub version: SchemaVersion,
    pub pattern: SignPattern,
    pub seed: u64,
    pub samples_per_k: u64,
    pub k_range: Vec<usize>,
    /// Keyed by statement name; each sampled k accrues to its exact-length
    /// statement (when one exists) and to the all-lengths statement.
    pub outcomes: BTreeMap<String, StatementTally>,
    pub rank_check: RankTally,
    pub kellogg_flags: KelloggFlags,
    /// Products too large for the exact minor cap; skipped, not judged.
    pub skipped_exact: u64,
}

// ---- Sampling ----

fn p0_statement(k: usize) -> Statement {
    match k {
        1 => Statement::P0Two,
        2 => Statement::P0Four,
        3 => Statement::P0Six,
        _ => Statement::P0All,
    }
}

fn ps_statement(k: usize) -> Statement {
    match k {
        1 => Statement::PsTwo,
        2 => Statement::PsFour,
        _ => Statement::PsAll,
    }
}

/// Everything observed about one sampled product, in a form that merges
/// deterministically.
struct SampleOutcome {
    seed: u64,
    k: usize,
    factors: Vec<ExactMatrix>,
    product: ExactMatrix,
    /// None when the product order exceeded the exact cap.
    p0: Option<crate::exact::P0Outcome>,
    ps: Option<crate::exact::PsOutcome>,
    /// Some(matches) when the rank lemma applied (two-odd, strict sample).
    rank_matches: Option<bool>,
    /// (interior, boundary, converged) when the wedge check ran.
    kellogg: Option<(usize, usize, bool)>,
}

fn run_sample(
    pattern: &SignPattern,
    k: usize,
    seed: u64,
    config: &VerifyConfig,
    two_odd: bool,
) -> Result<SampleOutcome> {
    let mut rng = rng_from_seed(seed);
    let samples: Vec<_> = (0..2 * k)
        .map(|_| sample_closure(pattern, &mut rng, &config.magnitude, config.zero_probability))
        .collect();
    let strict = samples.iter().all(|s| s.is_strict());
    let factors: Vec<ExactMatrix> = samples.into_iter().map(|s| s.matrix).collect();
    let product = alternating_matrix_product(&factors)?;
    let n = product.rows();

    let (p0, ps) = if n <= config.minor_cap {
        let p0 = is_p0_with_cap(&product, config.minor_cap)?;
        let ps = ps_from_char_poly(&char_poly(&product)?)?;
        (Some(p0), Some(ps))
    } else {
        (None, None)
    };

    let rank_matches = (two_odd && strict)
        .then(|| exact_rank(&product) == exact_rank(&factors[0]));

    let kellogg = match &p0 {
        Some(outcome) if outcome.is_p0 => {
            let check = spectral_exclusion_check(&product, KelloggRegion::new(n)?)?;
            Some((check.violations.len(), check.boundary_hits, check.converged))
        }
        _ => None,
    };

    Ok(SampleOutcome { seed, k, factors, product, p0, ps, rank_matches, kellogg })
}

fn accrue(
    outcomes: &mut BTreeMap<String, StatementTally>,
    pattern: &SignPattern,
    statement: Statement,
    passed: bool,
    sample: &SampleOutcome,
    violation: impl Fn() -> Violation,
) {
    let tally = outcomes.entry(statement.as_str().to_owned()).or_default();
    if passed {
        tally.passes += 1;
        return;
    }
    tally.fails += 1;
    if tally.first_counterexample.is_none() {
        tally.counterexample_seed = Some(sample.seed);
        tally.first_counterexample = Some(WitnessCertificate {
            version: SchemaVersion,
            pattern: pattern.clone(),
            statement,
            k: sample.k,
            factors: sample.factors.clone(),
            product: sample.product.clone(),
            violation: violation(),
        });
    }
}

/// Sample `config.samples_per_k` alternating products for every requested
/// k and tabulate the statement, rank, and wedge checks. Deterministic for
/// fixed (pattern, config); parallel execution cannot reorder the merge.
pub fn verify(pattern: &SignPattern, config: &VerifyConfig) -> Result<VerifyReport> {
    config.validate()?;
    let two_odd = is_two_odd(&build_graph(pattern)).is_two_odd;

    // One job per (k, sample index); the derived seed folds both in, so
    // streams never collide across k values.
    let jobs: Vec<(usize, u64)> = config
        .ks
        .iter()
        .flat_map(|&k| {
            (0..config.samples_per_k as u64)
                .map(move |i| (k, derive_seed(config.seed, ((k as u64) << 32) | i)))
        })
        .collect();
    let results: Vec<SampleOutcome> = par::try_map_vec(&jobs, |&(k, seed)| {
        run_sample(pattern, k, seed, config, two_odd)
    })?;

    let mut outcomes: BTreeMap<String, StatementTally> = BTreeMap::new();
    let mut rank_check = RankTally::default();
    let mut kellogg_flags = KelloggFlags::default();
    let mut skipped_exact = 0u64;
    for sample in &results {
        match &sample.p0 {
            Some(outcome) => {
                let mut targets = vec![p0_statement(sample.k)];
                if targets[0] != Statement::P0All {
                    targets.push(Statement::P0All);
                }
                for statement in targets {
                    accrue(&mut outcomes, pattern, statement, outcome.is_p0, sample, || {
                        let (index, value) =
                            outcome.violation.clone().expect("failing P0 carries a minor");
                        Violation::NegativeMinor { index, value }
                    });
                }
            }
            None => skipped_exact += 1,
        }
        if let Some(outcome) = &sample.ps {
            let mut targets = vec![ps_statement(sample.k)];
            if targets[0] != Statement::PsAll {
                targets.push(Statement::PsAll);
            }
            for statement in targets {
                accrue(&mut outcomes, pattern, statement, outcome.is_ps, sample, || {
                    Violation::NonPsSpectrum { diagnostic: outcome.diagnostic.clone() }
                });
            }
        }
        if let Some(matches) = sample.rank_matches {
            rank_check.checked += 1;
            if !matches {
                rank_check.mismatches += 1;
                rank_check.first_mismatch_seed.get_or_insert(sample.seed);
            }
        }
        if let Some((interior, boundary, converged)) = sample.kellogg {
            kellogg_flags.checked += 1;
            kellogg_flags.interior_hits += interior as u64;
            kellogg_flags.boundary_hits += boundary as u64;
            if !converged {
                kellogg_flags.unconverged += 1;
            }
        }
    }

    // A recorded failure must always be reproducible from the report.
    for tally in outcomes.values() {
        assert_eq!(
            tally.fails > 0,
            tally.first_counterexample.is_some() && tally.counterexample_seed.is_some(),
            "failures and counterexamples must appear together"
        );
    }
    Ok(VerifyReport {
        version: SchemaVersion,
        pattern: pattern.clone(),
        seed: config.seed,
        samples_per_k: config.samples_per_k as u64,
        k_range: config.ks.clone(),
        outcomes,
        rank_check,
        kellogg_flags,
        skipped_exact,
    })
}
