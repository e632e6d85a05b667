//! Arbitrary-precision rational scalars.
//!
//! The scalar type is `num_rational::BigRational`, which already maintains
//! the invariants we need (reduced form, positive denominator). This module
//! adds the construction, parsing, and formatting helpers used across the
//! crate, plus a bounded continued-fraction rationalizer for turning sampled
//! floating magnitudes back into exact values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `p/q` as a rational. Panics on `q == 0` (test/internal convenience).
pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"p"`, `"-p"`, or `"p/q"` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            if den.is_negative() {
                return Err(Error::Parse(format!(
                    "denominator must be positive in {s:?}"
                )));
            }
            Ok(BigRational::new(parse_int(num)?, den))
        }
    }
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Best rational approximation of `x` with numerator and denominator bounded
/// by `max_part`, via the continued-fraction convergents of `|x|`.
///
/// Returns 0 when `|x|` is smaller than every representable positive value.
pub fn approx_rational(x: f64, max_part: u64) -> Rational {
    assert!(max_part >= 1);
    if !x.is_finite() {
        return Rational::zero();
    }
    let negative = x < 0.0;
    let mut target = x.abs();
    let bound = BigInt::from(max_part);

    // Convergents p_k/q_k of the continued-fraction expansion.
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p_cur, mut q_cur) = (BigInt::from(target.floor() as i128), BigInt::one());
    let mut frac = target - target.floor();
    for _ in 0..64 {
        if p_cur.magnitude() > bound.magnitude() || q_cur.magnitude() > bound.magnitude() {
            // Last convergent within bounds.
            std::mem::swap(&mut p_prev, &mut p_cur);
            std::mem::swap(&mut q_prev, &mut q_cur);
            break;
        }
        if frac.abs() < 1e-12 {
            break;
        }
        target = 1.0 / frac;
        frac = target - target.floor();
        let a = BigInt::from(target.floor() as i128);
        let p_next = &a * &p_cur + &p_prev;
        let q_next = &a * &q_cur + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
    }
    if q_cur.is_zero() {
        return Rational::zero();
    }
    let out = BigRational::new(p_cur, q_cur);
    if negative {
        -out
    } else {
        out
    }
}

/// Serde adapters rendering rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapters rendering rational vectors as arrays of `"p/q"` strings.
pub mod serde_rational_seq {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        xs: &[Rational],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| format_rational(x)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "2/3", "-7/4", "1000/999"] {
            let x = parse_rational(s).unwrap();
            assert_eq!(format_rational(&x), s, "round trip for {s}");
        }
        // Reduction happens on parse.
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
    }

    #[test]
    fn parse_rejects_bad_denominators() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn approx_recovers_small_fractions() {
        assert_eq!(approx_rational(0.5, 1000), rat(1, 2));
        assert_eq!(approx_rational(-0.25, 1000), rat(-1, 4));
        assert_eq!(approx_rational(3.0, 1000), rat_int(3));
        let x = approx_rational(std::f64::consts::PI, 1000);
        // 355/113 is the best small approximation of pi.
        assert_eq!(x, rat(355, 113));
    }

    #[test]
    fn approx_respects_bounds() {
        for v in [0.001, 0.7231, 13.88, 999.5] {
            let r = approx_rational(v, 1000);
            assert!(r.numer().abs() <= BigInt::from(1000u32), "numer bound for {v}");
            assert!(r.denom() <= &BigInt::from(1000u32), "denom bound for {v}");
        }
    }
}
