//! Sign patterns and their qualitative classes.
//!
//! A sign pattern fixes only the signs of a real matrix's entries. The
//! qualitative class of a pattern is every real matrix sharing those signs;
//! the closure class also admits zeros at nonzero positions. Alternating
//! products multiply class members with every second factor transposed,
//! which is the object all the graph criteria in this crate speak about.

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{approx_rational, rational_to_f64};
use crate::exact::{rat, rat_int, ExactMatrix, Rational};

// ---- Signs ----

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[repr(i8)]
pub enum Sign {
    Minus = -1,
    Zero = 0,
    Plus = 1,
}

impl Sign {
    pub fn from_i8(v: i8) -> Result<Sign> {
        match v {
            -1 => Ok(Sign::Minus),
            0 => Ok(Sign::Zero),
            1 => Ok(Sign::Plus),
            other => Err(Error::Domain(format!("sign entries must be -1, 0, or 1; got {other}"))),
        }
    }

    pub fn of(x: &Rational) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i8(self) -> i8 {
        self as i8
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    /// As a rational in {-1, 0, 1}.
    pub fn to_rational(self) -> Rational {
        rat_int(self.as_i8() as i64)
    }
}

// ---- Patterns ----

/// A rows x cols grid of signs. Dimensions are positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignPattern {
    rows: usize,
    cols: usize,
    entries: Vec<Sign>,
}

impl SignPattern {
    pub fn new(rows: usize, cols: usize, entries: Vec<Sign>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("pattern dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} sign entries for {rows}x{cols}, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(SignPattern { rows, cols, entries })
    }

    pub fn from_i8_rows(rows: &[&[i8]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged sign rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter())
            .map(|&v| Sign::from_i8(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(r, c, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SignPattern { rows, cols, entries: vec![Sign::Zero; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Sign {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Sign) {
        self.entries[i * self.cols + j] = s;
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Positions and signs of the nonzero entries, row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, Sign)> + '_ {
        (0..self.rows).flat_map(move |i| {
            (0..self.cols).filter_map(move |j| {
                let s = self.get(i, j);
                (!s.is_zero()).then_some((i, j, s))
            })
        })
    }

    pub fn count_nonzero(&self) -> usize {
        self.entries.iter().filter(|s| !s.is_zero()).count()
    }

    /// The pattern as a matrix with entries in {-1, 0, 1}. Taking the sign
    /// pattern of the result gives back `self`.
    pub fn to_exact_matrix(&self) -> ExactMatrix {
        ExactMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|s| s.to_rational()).collect(),
        )
        .expect("pattern dimensions are valid")
    }

    /// All 3^(rows*cols) patterns of a shape, in a fixed enumeration order.
    pub fn enumerate_all(rows: usize, cols: usize) -> impl Iterator<Item = SignPattern> {
        let cells = rows * cols;
        let total = 3usize.pow(cells as u32);
        (0..total).map(move |mut code| {
            let entries = (0..cells)
                .map(|_| {
                    let s = match code % 3 {
                        0 => Sign::Zero,
                        1 => Sign::Plus,
                        _ => Sign::Minus,
                    };
                    code /= 3;
                    s
                })
                .collect();
            SignPattern { rows, cols, entries }
        })
    }
}

impl std::fmt::Debug for SignPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SignPattern[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                write!(
                    f,
                    "{}",
                    match self.get(i, j) {
                        Sign::Minus => "-",
                        Sign::Zero => "0",
                        Sign::Plus => "+",
                    }
                )?;
            }
        }
        write!(f, "]")
    }
}

impl Serialize for SignPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SignPattern", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        let grid: Vec<Vec<i8>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).as_i8()).collect())
            .collect();
        st.serialize_field("entries", &grid)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SignPattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<i8>>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.entries.len() != raw.rows || raw.entries.iter().any(|r| r.len() != raw.cols) {
            return Err(serde::de::Error::custom("entry grid does not match rows x cols"));
        }
        let entries = raw
            .entries
            .iter()
            .flatten()
            .map(|&v| Sign::from_i8(v).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        SignPattern::new(raw.rows, raw.cols, entries).map_err(serde::de::Error::custom)
    }
}

/// The sign pattern of an exact matrix.
pub fn sign_of(m: &ExactMatrix) -> SignPattern {
    let entries = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| Sign::of(m.get(i, j))))
        .collect();
    SignPattern { rows: m.rows(), cols: m.cols(), entries }
}

// ---- Class members ----

/// An exact matrix tagged with the pattern it instantiates. `closure = false`
/// means every sign matches exactly; `closure = true` additionally allows
/// zeros where the pattern is nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QualitativeSample {
    pub base: SignPattern,
    pub matrix: ExactMatrix,
    pub closure: bool,
}

impl QualitativeSample {
    pub fn new(base: SignPattern, matrix: ExactMatrix, closure: bool) -> Result<Self> {
        if matrix.rows() != base.rows() || matrix.cols() != base.cols() {
            return Err(Error::Dimension(format!(
                "member shape {}x{} does not match pattern {}x{}",
                matrix.rows(),
                matrix.cols(),
                base.rows(),
                base.cols()
            )));
        }
        for i in 0..base.rows() {
            for j in 0..base.cols() {
                let want = base.get(i, j);
                let got = Sign::of(matrix.get(i, j));
                let ok = if closure {
                    got == want || got == Sign::Zero
                } else {
                    got == want
                };
                if !ok {
                    return Err(Error::Domain(format!(
                        "entry ({i},{j}) has sign {got:?}, pattern requires {want:?}{}",
                        if closure { " or zero" } else { "" }
                    )));
                }
            }
        }
        Ok(QualitativeSample { base, matrix, closure })
    }

    /// Is the member strict (no zeros at nonzero pattern positions)?
    pub fn is_strict(&self) -> bool {
        sign_of(&self.matrix) == self.base
    }
}

/// Bounds for sampled entry magnitudes: a positive rational interval.
#[derive(Clone, Debug)]
pub struct MagnitudeRange {
    pub lo: Rational,
    pub hi: Rational,
}

impl MagnitudeRange {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if !lo.is_positive() || hi < lo {
            return Err(Error::Domain(format!(
                "magnitude range must satisfy 0 < lo <= hi, got [{lo}, {hi}]"
            )));
        }
        Ok(MagnitudeRange { lo, hi })
    }
}

impl Default for MagnitudeRange {
    fn default() -> Self {
        MagnitudeRange { lo: rat(1, 10), hi: rat_int(10) }
    }
}

/// Sampled entries are rationalized with numerator and denominator below
/// this, so certificates stay small.
pub const SAMPLE_DENOMINATOR_BOUND: u64 = 1000;

fn sample_magnitude(rng: &mut impl Rng, range: &MagnitudeRange) -> Rational {
    let lo = rational_to_f64(&range.lo);
    let hi = rational_to_f64(&range.hi);
    let x = if lo >= hi {
        lo
    } else {
        // Log-uniform over the interval, then snapped back to a bounded
        // rational.
        let u = rng.gen_range(lo.ln()..=hi.ln());
        u.exp()
    };
    let r = approx_rational(x, SAMPLE_DENOMINATOR_BOUND);
    if r < range.lo {
        range.lo.clone()
    } else if r > range.hi {
        range.hi.clone()
    } else {
        r
    }
}

/// Random strict member of the class: each nonzero entry gets the pattern's
/// sign and a log-uniform magnitude from `range`.
pub fn sample(
    base: &SignPattern,
    rng: &mut impl Rng,
    range: &MagnitudeRange,
) -> QualitativeSample {
    sample_with_zero_prob(base, rng, range, 0.0)
}

/// Random closure member: like [`sample`] but each nonzero entry is zeroed
/// independently with probability `zero_prob`.
pub fn sample_closure(
    base: &SignPattern,
    rng: &mut impl Rng,
    range: &MagnitudeRange,
    zero_prob: f64,
) -> QualitativeSample {
    sample_with_zero_prob(base, rng, range, zero_prob)
}

fn sample_with_zero_prob(
    base: &SignPattern,
    rng: &mut impl Rng,
    range: &MagnitudeRange,
    zero_prob: f64,
) -> QualitativeSample {
    let mut m = ExactMatrix::zeros(base.rows(), base.cols());
    let mut any_zeroed = false;
    for (i, j, s) in base.nonzeros() {
        if zero_prob > 0.0 && rng.gen_bool(zero_prob.clamp(0.0, 1.0)) {
            any_zeroed = true;
            continue;
        }
        let mag = sample_magnitude(rng, range);
        let signed = if s == Sign::Minus { -mag } else { mag };
        m.set(i, j, signed);
    }
    QualitativeSample { base: base.clone(), matrix: m, closure: any_zeroed || zero_prob > 0.0 }
}

/// Zero out the given positions of a member, producing a closure member.
/// Positions must lie in range; zeroing an already-zero position is fine.
pub fn degenerate(s: &QualitativeSample, positions: &[(usize, usize)]) -> Result<QualitativeSample> {
    let mut m = s.matrix.clone();
    for &(i, j) in positions {
        if i >= m.rows() || j >= m.cols() {
            return Err(Error::Index(format!(
                "position ({i},{j}) outside a {}x{} member",
                m.rows(),
                m.cols()
            )));
        }
        m.set(i, j, Rational::zero());
    }
    QualitativeSample::new(s.base.clone(), m, true)
}

// ---- Alternating products ----

/// The product `A1 * A2^T * A3 * A4^T * ...` of class members, all stored
/// untransposed; even-indexed factors (1-based) are transposed during the
/// multiplication. Square when the factor count is even.
#[derive(Clone, Debug)]
pub struct AlternatingProduct {
    pub base: SignPattern,
    pub k: usize,
    pub factors: Vec<QualitativeSample>,
    pub product: ExactMatrix,
}

/// Multiply members of one class in alternating-transpose order. Every
/// factor must instantiate `base` (strictly or in closure).
pub fn alternating_product(
    base: &SignPattern,
    factors: Vec<QualitativeSample>,
) -> Result<AlternatingProduct> {
    if factors.is_empty() {
        return Err(Error::Domain("alternating product needs at least one factor".into()));
    }
    for (idx, f) in factors.iter().enumerate() {
        if f.base != *base {
            return Err(Error::Domain(format!(
                "factor {} instantiates a different pattern",
                idx + 1
            )));
        }
    }
    let mut product = factors[0].matrix.clone();
    for (idx, f) in factors.iter().enumerate().skip(1) {
        let rhs = if (idx + 1) % 2 == 0 { f.matrix.transpose() } else { f.matrix.clone() };
        product = product.mul(&rhs)?;
    }
    Ok(AlternatingProduct { base: base.clone(), k: factors.len(), factors, product })
}
