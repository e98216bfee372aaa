//! Polynomials in the formal prime power `q` with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rat::Rat;

/// A polynomial in `q` over the rationals.
///
/// Coefficients are indexed by degree; trailing zeros are never stored, so
/// the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        QPoly::new(vec![c])
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        QPoly::new(vec![Rat::zero(), Rat::one()])
    }

    /// `c * q^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        QPoly::new(coeffs)
    }

    /// Builds from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| Rat::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The value if this polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Substitutes a concrete value for `q` (Horner).
    pub fn evaluate(&self, q0: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * q0 + c)
    }

    pub fn scale(&self, r: &Rat) -> QPoly {
        if r.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }
}

/// Substitutes a concrete prime power into a symbolic value.
pub fn evaluate_q(p: &QPoly, q0: &Rat) -> Rat {
    p.evaluate(q0)
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            if !s.is_zero() {
                *c = &*c + s;
            }
        }
        QPoly::new(coeffs)
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        QPoly::new(coeffs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, rhs: QPoly) -> QPoly {
        &self + &rhs
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(self, rhs: QPoly) -> QPoly {
        &self - &rhs
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

impl From<Rat> for QPoly {
    fn from(c: Rat) -> Self {
        QPoly::constant(c)
    }
}

/// Canonical form, highest degree first: `(1/2)q^2 + 5q + 5/2`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
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
            if k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            if k == 1 {
                write!(f, "q")?;
            } else {
                write!(f, "q^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_string() {
        let p = QPoly::new(vec![Rat::new(5, 2), Rat::from(5i64), Rat::new(1, 2)]);
        assert_eq!(p.to_string(), "(1/2)q^2 + 5q + 5/2");
        assert_eq!(QPoly::from_ints(&[1, -1]).to_string(), "-q + 1");
        assert_eq!(QPoly::from_ints(&[-1, 0, -3]).to_string(), "-3q^2 - 1");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn trailing_zeros_are_dropped() {
        let p = QPoly::from_ints(&[1, 2]) - QPoly::from_ints(&[0, 2]);
        assert_eq!(p, QPoly::one());
        assert_eq!(p.degree(), Some(0));
        assert_eq!((QPoly::q() - QPoly::q()).degree(), None);
    }

    #[test]
    fn evaluate_examples() {
        // (q^2 + 10q + 5)/2 at q = 3
        let p = QPoly::from_ints(&[5, 10, 1]).scale(&Rat::new(1, 2));
        assert_eq!(evaluate_q(&p, &Rat::from(3i64)), Rat::from(22i64));
        // 2q + 4 at q = 3
        assert_eq!(
            evaluate_q(&QPoly::from_ints(&[4, 2]), &Rat::from(3i64)),
            Rat::from(10i64)
        );
    }

    #[test]
    fn product() {
        let a = QPoly::from_ints(&[1, 1]);
        let b = QPoly::from_ints(&[-1, 1]);
        assert_eq!(&a * &b, QPoly::from_ints(&[-1, 0, 1]));
    }
}
