//! Exact real-root counting via Sturm chains.
//!
//! Roots are always counted on the square-free part of the input, so the
//! result is the number of *distinct* real roots in the requested interval.
//! Interval endpoints use `std::ops::Bound`; endpoints that are themselves
//! roots are handled exactly by evaluating the polynomial there and by the
//! zero-skipping sign-variation convention, which makes `V(a) - V(b)` count
//! roots in the half-open interval `(a, b]` for arbitrary rational `a < b`.

use std::ops::Bound;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::poly::ExactPolynomial;
use crate::exact::rational::Rational;

/// Sturm chain of `p`: `p, p', -rem(p, p'), ...`, each entry scaled to
/// primitive integer coefficients (positive scaling preserves signs).
pub fn sturm_chain(p: &ExactPolynomial) -> Vec<ExactPolynomial> {
    let mut chain = vec![p.primitive_int_scaled()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d.primitive_int_scaled());
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2]
            .div_rem(&chain[n - 1])
            .expect("chain entries are nonzero");
        if r.is_zero() {
            break;
        }
        chain.push(r.neg().primitive_int_scaled());
    }
    chain
}

fn sign_of(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign variations in the chain at a point, zeros skipped.
fn variations_at(chain: &[ExactPolynomial], x: &Rational) -> usize {
    count_variations(chain.iter().map(|p| sign_of(&p.eval(x))))
}

/// Sign variations at +inf / -inf: the sign of each entry is the sign of its
/// leading coefficient, flipped for odd degree at -inf.
fn variations_at_inf(chain: &[ExactPolynomial], positive: bool) -> usize {
    count_variations(chain.iter().map(|p| match p.degree() {
        None => 0,
        Some(d) => {
            let lead = sign_of(p.leading().unwrap());
            if positive || d % 2 == 0 {
                lead
            } else {
                -lead
            }
        }
    }))
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut prev = 0i8;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

/// Number of distinct real roots of `p` in the interval described by the
/// bounds. Errors on the zero polynomial or an empty/invalid interval
/// (lower bound above upper bound).
pub fn sturm_real_roots(
    p: &ExactPolynomial,
    lo: Bound<&Rational>,
    hi: Bound<&Rational>,
) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Domain(
            "root counting on the zero polynomial".into(),
        ));
    }
    if let (Bound::Included(a) | Bound::Excluded(a), Bound::Included(b) | Bound::Excluded(b)) =
        (lo, hi)
    {
        if a > b {
            return Err(Error::Domain(format!(
                "empty root-count interval: lower bound {a} above upper bound {b}"
            )));
        }
    }
    let sf = p.squarefree_part()?;
    if sf.degree() == Some(0) {
        return Ok(0);
    }
    let chain = sturm_chain(&sf);
    let at = |b: Bound<&Rational>, low_side: bool| match b {
        Bound::Unbounded => variations_at_inf(&chain, !low_side),
        Bound::Included(x) | Bound::Excluded(x) => variations_at(&chain, x),
    };
    // V(lo) - V(hi) counts roots in (lo, hi]; correct the endpoints by exact
    // evaluation.
    let base = at(lo, true) as isize - at(hi, false) as isize;
    let mut count = base;
    if let Bound::Included(a) = lo {
        if sf.eval(a).is_zero() {
            count += 1;
        }
    }
    match hi {
        Bound::Excluded(b) if sf.eval(b).is_zero() => count -= 1,
        _ => {}
    }
    debug_assert!(count >= 0, "variation bookkeeping went negative");
    Ok(count.max(0) as usize)
}

/// Distinct real roots over the whole line.
pub fn count_all_real_roots(p: &ExactPolynomial) -> Result<usize> {
    sturm_real_roots(p, Bound::Unbounded, Bound::Unbounded)
}

/// Shrink a closed interval known to contain at least one root of `p` until
/// it contains exactly one; bisection with exact midpoint evaluation. The
/// returned interval may be degenerate (a rational root hit exactly).
pub fn isolate_one_root(
    p: &ExactPolynomial,
    mut lo: Rational,
    mut hi: Rational,
) -> Result<(Rational, Rational)> {
    let sf = p.squarefree_part()?;
    let count = |a: &Rational, b: &Rational| {
        sturm_real_roots(&sf, Bound::Included(a), Bound::Included(b))
    };
    if count(&lo, &hi)? == 0 {
        return Err(Error::Domain(format!(
            "interval [{lo}, {hi}] contains no root to isolate"
        )));
    }
    loop {
        if count(&lo, &hi)? == 1 {
            return Ok((lo, hi));
        }
        let mid = (&lo + &hi) / crate::exact::rational::rat_int(2);
        if sf.eval(&mid).is_zero() {
            return Ok((mid.clone(), mid));
        }
        if count(&lo, &mid)? >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_int};

    fn roots_on_line(coeffs: &[i64]) -> usize {
        count_all_real_roots(&ExactPolynomial::from_i64(coeffs)).unwrap()
    }

    #[test]
    fn counts_match_known_polynomials() {
        // x^2 + 1: no real roots.
        assert_eq!(roots_on_line(&[1, 0, 1]), 0);
        // x^2 - 1: two.
        assert_eq!(roots_on_line(&[-1, 0, 1]), 2);
        // x^3 - 4x^2 + 3x - 1: exactly one real root (a conjugate pair hides).
        assert_eq!(roots_on_line(&[-1, 3, -4, 1]), 1);
        // (x-1)^2: one distinct root despite multiplicity.
        assert_eq!(roots_on_line(&[1, -2, 1]), 1);
        // Constant: none.
        assert_eq!(roots_on_line(&[5]), 0);
    }

    #[test]
    fn interval_endpoint_conventions_are_exact() {
        // Roots at 1, 2, 3.
        let p = ExactPolynomial::from_i64(&[-6, 11, -6, 1]);
        let one = rat_int(1);
        let three = rat_int(3);
        let count = |lo, hi| sturm_real_roots(&p, lo, hi).unwrap();
        assert_eq!(count(Bound::Included(&one), Bound::Included(&three)), 3);
        assert_eq!(count(Bound::Excluded(&one), Bound::Included(&three)), 2);
        assert_eq!(count(Bound::Excluded(&one), Bound::Excluded(&three)), 1);
        assert_eq!(count(Bound::Included(&one), Bound::Excluded(&three)), 2);
        assert_eq!(count(Bound::Unbounded, Bound::Excluded(&one)), 0);
        assert_eq!(count(Bound::Unbounded, Bound::Included(&one)), 1);
        let half = rat(5, 2);
        assert_eq!(count(Bound::Excluded(&rat_int(0)), Bound::Excluded(&half)), 2);
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = ExactPolynomial::from_i64(&[-1, 1]);
        assert!(sturm_real_roots(&ExactPolynomial::zero(), Bound::Unbounded, Bound::Unbounded)
            .is_err());
        let two = rat_int(2);
        let one = rat_int(1);
        assert!(sturm_real_roots(&p, Bound::Included(&two), Bound::Included(&one)).is_err());
    }

    #[test]
    fn isolates_a_negative_root() {
        // x^2 - 2: roots +-sqrt(2).
        let p = ExactPolynomial::from_i64(&[-2, 0, 1]);
        let (lo, hi) = isolate_one_root(&p, rat_int(-2), rat_int(0)).unwrap();
        assert!(lo >= rat_int(-2) && hi <= rat_int(0) && lo <= hi);
        assert_eq!(
            sturm_real_roots(&p, Bound::Included(&lo), Bound::Included(&hi)).unwrap(),
            1
        );
    }

    #[test]
    fn isolation_can_land_exactly_on_rational_roots() {
        // Roots -2, -1, 0: three in [-2, 0], and the first bisection
        // midpoint -1 is itself a root.
        let p = ExactPolynomial::from_i64(&[0, 2, 3, 1]);
        let (lo, hi) = isolate_one_root(&p, rat_int(-2), rat_int(0)).unwrap();
        assert_eq!(lo, hi);
        assert_eq!(lo, rat_int(-1));
    }
}
