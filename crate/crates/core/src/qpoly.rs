//! Polynomials in one variable `q` with exact integer or rational
//! coefficients.
//!
//! [`QPoly`] (integer coefficients) is the value type for Poincaré
//! polynomials, Eulerian polynomials, and permutation-statistic generating
//! functions.  [`QRatPoly`] (rational coefficients) appears as the cell type
//! of truncated exponential generating functions, where division by
//! factorials is unavoidable.  Both are dense coefficient vectors with
//! trailing zeros trimmed, so structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A polynomial in `q` with arbitrary-precision integer coefficients.
///
/// `coeffs[k]` is the coefficient of `q^k`; the vector never ends in a zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::monomial(0)
    }

    /// The monomial `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        QPoly { coeffs }
    }

    /// `q^lo + q^(lo+1) + ... + q^hi`, or zero when the range is empty.
    pub fn geometric_range(lo: usize, hi: usize) -> Self {
        if lo > hi {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); hi + 1];
        for c in coeffs.iter_mut().take(hi + 1).skip(lo) {
            *c = BigInt::one();
        }
        QPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// Convenience constructor for literals in tests and docs.
    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficients `0..=degree`, without trailing zeros.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Exact division by `q`; errors when the constant term is non-zero.
    pub fn div_q(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(QPoly::zero());
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series(format!(
                "cannot divide by q: constant term {} is non-zero",
                self.coeffs[0]
            )));
        }
        Ok(QPoly {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Value at `q = 1`, i.e. the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Whether the coefficient vector `0..=degree` equals its own reverse.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// JSON form `{"q_coeffs": [c0, c1, ...]}` with exact integers.
    pub fn to_json_value(&self) -> Value {
        let coeffs: Vec<Value> = self.coeffs.iter().map(bigint_to_json).collect();
        json!({ "q_coeffs": coeffs })
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let arr = v
            .get("q_coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("expected {\"q_coeffs\": [...]}".into()))?;
        let coeffs = arr.iter().map(bigint_from_json).collect::<Result<_>>()?;
        Ok(QPoly::from_coeffs(coeffs))
    }
}

/// Parse a JSON number (of any size) as an exact integer.
pub(crate) fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not an integer: {n}"))),
        other => Err(Error::Parse(format!("expected an integer, got {other}"))),
    }
}

/// Render an exact integer as a JSON number (never a string, never rounded).
pub(crate) fn bigint_to_json(n: &BigInt) -> Value {
    // serde_json's arbitrary_precision feature keeps all the digits.
    serde_json::from_str(&n.to_string()).expect("integer literal is valid JSON")
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        *self = &*self + rhs;
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for QPoly {
    /// Ascending powers, e.g. `1 + 5q + q^2`; the zero polynomial prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
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
            let abs = c.abs();
            if k == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                }
                if k == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// A polynomial in `q` with arbitrary-precision rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QRatPoly {
    coeffs: Vec<BigRational>,
}

impl QRatPoly {
    pub fn zero() -> Self {
        QRatPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QRatPoly { coeffs }
    }

    pub fn from_int(p: &QPoly) -> Self {
        QRatPoly {
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QRatPoly::zero();
        }
        QRatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Back to integer coefficients; errors if any denominator is not 1.
    pub fn to_int(&self) -> Result<QPoly> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return Err(Error::Series(format!(
                    "coefficient {c} is not an integer"
                )));
            }
            coeffs.push(c.to_integer());
        }
        Ok(QPoly::from_coeffs(coeffs))
    }
}

impl Add for &QRatPoly {
    type Output = QRatPoly;
    fn add(self, rhs: &QRatPoly) -> QRatPoly {
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        QRatPoly::from_coeffs(coeffs)
    }
}

impl AddAssign<&QRatPoly> for QRatPoly {
    fn add_assign(&mut self, rhs: &QRatPoly) {
        *self = &*self + rhs;
    }
}

impl Mul for &QRatPoly {
    type Output = QRatPoly;
    fn mul(self, rhs: &QRatPoly) -> QRatPoly {
        if self.is_zero() || rhs.is_zero() {
            return QRatPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QRatPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for QRatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
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
            let abs = c.abs();
            if k == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs} ")?;
                }
                if k == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{k}")?;
                }
            }
        }
        Ok(())
    }
}
