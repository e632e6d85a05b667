//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros;
//! the zero polynomial is the empty vector. This is the canonical form every
//! constructor and operation maintains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, rat_int, Rational};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExactPolynomial {
    #[serde(with = "coeff_serde")]
    coeffs: Vec<Rational>,
}

impl ExactPolynomial {
    // ---- Constructors ----

    pub fn zero() -> Self {
        ExactPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        ExactPolynomial { coeffs: vec![rat_int(1)] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x^d` with coefficient `c`.
    pub fn monomial(c: Rational, d: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); d + 1];
        coeffs[d] = c;
        ExactPolynomial { coeffs }
    }

    /// From ascending coefficients; trailing zeros are stripped.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPolynomial { coeffs }
    }

    /// Test helper: ascending integer coefficients.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    // ---- Accessors ----

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^d` (zero beyond the stored length).
    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    // ---- Arithmetic ----

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn neg(&self) -> Self {
        ExactPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for d in 0..n {
            out.push(self.coeff(d) + other.coeff(d));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c * rat_int(d as i64))
                .collect(),
        )
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::Domain("polynomial division by zero".into()));
        }
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![
            Rational::zero();
            self.coeffs.len().saturating_sub(divisor.coeffs.len()) + 1
        ];
        while rem.len() >= divisor.coeffs.len() && !rem.is_empty() {
            let shift = rem.len() - divisor.coeffs.len();
            let factor = rem.last().unwrap() / &lead;
            quot[shift] = factor.clone();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let idx = shift + i;
                let v = &rem[idx] - c * &factor;
                rem[idx] = v;
            }
            // The leading term cancels exactly; strip it and any new zeros.
            debug_assert!(rem.last().unwrap().is_zero());
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            let _ = dd;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact division: errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "expected exact polynomial division, got remainder {r}"
            )));
        }
        Ok(q)
    }

    /// Monic greatest common divisor (gcd of anything with zero is the
    /// other argument made monic).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor checked nonzero");
            a = b;
            b = r.primitive_int_scaled();
        }
        a.into_monic()
    }

    /// `self / gcd(self, self')`: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("square-free part of the zero polynomial".into()));
        }
        let g = self.gcd(&self.derivative());
        Ok(self.div_exact(&g)?.into_monic())
    }

    /// Scale by a positive rational so coefficients are coprime integers.
    /// Sign-preserving, so Sturm-chain variation counts are unaffected.
    pub fn primitive_int_scaled(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &scaled {
            content = content.gcd(v);
        }
        if content.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(
            scaled
                .into_iter()
                .map(|v| Rational::from_integer(v / &content))
                .collect(),
        )
    }

    pub fn into_monic(self) -> Self {
        match self.leading() {
            None => self,
            Some(l) if l.is_one() => self,
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Split off the root at zero: returns `(z, q)` with `self = x^z * q`
    /// and `q(0) != 0`. Errors on the zero polynomial.
    pub fn factor_zero_roots(&self) -> Result<(usize, Self)> {
        if self.is_zero() {
            return Err(Error::Domain("cannot factor the zero polynomial".into()));
        }
        let z = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        Ok((z, Self::from_coeffs(self.coeffs[z..].to_vec())))
    }

    /// `1 + max_i |c_i| / |c_lead|`: every root has absolute value below this.
    pub fn cauchy_root_bound(&self) -> Result<Rational> {
        let lead = self
            .leading()
            .ok_or_else(|| Error::Domain("root bound of the zero polynomial".into()))?;
        let mut biggest = Rational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let m = c.abs();
            if m > biggest {
                biggest = m;
            }
        }
        Ok(rat_int(1) + biggest / lead.abs())
    }
}

impl std::fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = d == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            match d {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{}", if show_coeff { "*" } else { "" }, d)?,
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for ExactPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ExactPolynomial({self})")
    }
}

mod coeff_serde {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        coeffs: &[Rational],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(coeffs.len()))?;
        for c in coeffs {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| crate::exact::rational::parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
