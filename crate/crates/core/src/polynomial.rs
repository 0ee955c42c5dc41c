//! Integer polynomials in one variable `t`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Dense integer polynomial; `coeffs[k]` is the coefficient of `t^k`.
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `1 + b t`.
    pub fn linear_factor(b: i64) -> Self {
        Self::from_i64(&[1, b])
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPolynomial { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_i64(&self, t: i64) -> BigInt {
        self.eval(&BigInt::from(t))
    }

    /// Substitutes `-t` for `t`.
    pub fn negate_variable(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// Exact division by `1 + b t`, or `None` if it leaves a remainder.
    pub fn div_linear(&self, b: &BigInt) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // p = (1 + b t) q. Solve for q from the constant term upward.
        let n = self.coeffs.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut prev = BigInt::zero();
        for (k, slot) in q.iter_mut().enumerate() {
            let c = &self.coeffs[k] - b * &prev;
            *slot = c.clone();
            prev = c;
        }
        let last = if n >= 2 { b * &q[n - 2] } else { BigInt::zero() };
        if self.coeffs[n - 1] != last {
            return None;
        }
        if n == 1 {
            return None;
        }
        Some(Self::new(q))
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a IntPolynomial>) -> Self {
        factors.into_iter().fold(Self::one(), |acc, f| &acc * f)
    }

    /// True if every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    /// Ascending form, e.g. `1 + 6t + 5t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let p = IntPolynomial::product(&[
            IntPolynomial::linear_factor(1),
            IntPolynomial::linear_factor(11),
            IntPolynomial::linear_factor(13),
        ]);
        assert_eq!(p, IntPolynomial::from_i64(&[1, 25, 167, 143]));
        assert_eq!(p.to_string(), "1 + 25t + 167t^2 + 143t^3");
        assert_eq!(p.eval_i64(1), BigInt::from(336));
        assert_eq!(IntPolynomial::from_i64(&[2, -3, 1]).to_string(), "2 - 3t + t^2");
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(IntPolynomial::from_i64(&[1, 0, 0]).degree(), Some(0));
    }

    #[test]
    fn linear_division() {
        let p = IntPolynomial::from_i64(&[1, 25, 167, 143]);
        let q = p.div_linear(&BigInt::from(11)).unwrap();
        assert_eq!(q, IntPolynomial::from_i64(&[1, 14, 13]));
        assert!(p.div_linear(&BigInt::from(2)).is_none());
        assert!(IntPolynomial::one().div_linear(&BigInt::from(1)).is_none());
    }
}
