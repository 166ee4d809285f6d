//! Integer polynomials in one variable `t`.
//!
//! Coefficients are exact `i64` values stored in ascending degree with no
//! trailing zeros; the zero polynomial has an empty coefficient list.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        IntPoly::constant(1)
    }

    /// `c * t^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        IntPoly::from_coeffs(coeffs)
    }

    /// Ascending-degree coefficients; trailing zeros are stripped.
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * t + c as f64)
    }

    /// Strips the largest power of `t` dividing the polynomial and fixes the
    /// sign so the lowest-degree coefficient is positive. This is the unit
    /// normalization for Laurent-polynomial invariants.
    pub fn normalize_units(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let shift = self.coeffs.iter().position(|&c| c != 0).unwrap_or(0);
        let mut coeffs: Vec<i64> = self.coeffs[shift..].to_vec();
        if coeffs[0] < 0 {
            for c in &mut coeffs {
                *c = -*c;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let magnitude = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if magnitude != 1 {
                        write!(f, "{magnitude}")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let p = IntPoly::from_coeffs(vec![1, -1, 1]);
        let q = IntPoly::from_coeffs(vec![2, 3]);
        assert_eq!((&p + &q).coeffs(), &[3, 2, 1]);
        assert_eq!((&p - &q).coeffs(), &[-1, -4, 1]);
        assert_eq!((&q * &q).coeffs(), &[4, 12, 9]);
        assert_eq!((&p * &IntPoly::zero()), IntPoly::zero());
        assert_eq!(IntPoly::from_coeffs(vec![0, 0]).degree(), None);
        assert_eq!(IntPoly::monomial(5, 3).coeffs(), &[0, 0, 0, 5]);
    }

    #[test]
    fn normalization_strips_units() {
        let p = IntPoly::from_coeffs(vec![0, 0, -2, 3, -2]);
        assert_eq!(p.normalize_units().coeffs(), &[2, -3, 2]);
        assert_eq!(IntPoly::zero().normalize_units(), IntPoly::zero());
        let q = IntPoly::from_coeffs(vec![1, -1, 1]);
        assert_eq!(q.normalize_units(), q);
    }

    #[test]
    fn display_matches_handwriting() {
        assert_eq!(
            IntPoly::from_coeffs(vec![1, -1, 1]).to_string(),
            "t^2 - t + 1"
        );
        assert_eq!(
            IntPoly::from_coeffs(vec![2, -3, 2]).to_string(),
            "2t^2 - 3t + 2"
        );
        assert_eq!(
            IntPoly::from_coeffs(vec![2, -5, 2]).to_string(),
            "2t^2 - 5t + 2"
        );
        assert_eq!(IntPoly::one().to_string(), "1");
        assert_eq!(IntPoly::from_coeffs(vec![0, 1]).to_string(), "t");
        assert_eq!(
            IntPoly::from_coeffs(vec![-1, 0, -1]).to_string(),
            "-t^2 - 1"
        );
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn eval_in_doubles() {
        let p = IntPoly::from_coeffs(vec![1, -3, 1]);
        assert_eq!(p.eval_f64(0.0), 1.0);
        assert_eq!(p.eval_f64(1.0), -1.0);
        assert_eq!(p.eval_f64(-1.0), 5.0);
    }
}
