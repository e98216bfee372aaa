//! Exact truncated formal power series in one variable `u`.
//!
//! Coefficients live in a [`Ring`]: either concrete rationals ([`Rat`], "value
//! mode") or polynomials in a formal prime power `q` ([`QPoly`], "symbolic
//! mode"). Every generating function in this crate is a product of factors of
//! the shape `(1 + c u^j)^e`, described by [`FactorFamily`].

mod qpoly;
mod rat;

use std::fmt;
use std::sync::Arc;

pub use qpoly::{evaluate_q, QPoly};
pub use rat::Rat;

use crate::error::{Error, Result};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    Rational,
    QPolynomial,
}

/// An exact commutative coefficient ring.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const KIND: RingKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scale(&self, r: &Rat) -> Self;
    /// Multiplicative inverse when the element is a nonzero constant.
    fn unit_inverse(&self) -> Option<Self>;
    /// The element as a rational number when it is constant.
    fn as_rat(&self) -> Option<Rat>;

    fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from(n))
    }

    fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.times(self))
    }
}

impl Ring for Rat {
    const KIND: RingKind = RingKind::Rational;

    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rat) -> Self {
        self * r
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.recip()
    }
    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
}

impl Ring for QPoly {
    const KIND: RingKind = RingKind::QPolynomial;

    fn zero() -> Self {
        QPoly::zero()
    }
    fn one() -> Self {
        QPoly::one()
    }
    fn from_rat(r: Rat) -> Self {
        QPoly::constant(r)
    }
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rat) -> Self {
        QPoly::scale(self, r)
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.as_constant()
            .and_then(|c| c.recip())
            .map(QPoly::constant)
    }
    fn as_rat(&self) -> Option<Rat> {
        self.as_constant()
    }
}

type CoeffFn<R> = Arc<dyn Fn(u64) -> R + Send + Sync>;
type ExponentFn = Arc<dyn Fn(u64) -> u64 + Send + Sync>;
type FilterFn = Arc<dyn Fn(u64) -> bool + Send + Sync>;

/// The infinite product `prod_{i >= 1, filter(i)} (1 + c(i) u^{j(i)})^e`.
///
/// `j` must be strictly increasing so the product truncates after finitely
/// many factors at any order.
#[derive(Clone)]
pub struct FactorFamily<R> {
    coefficient: CoeffFn<R>,
    exponent: ExponentFn,
    power: i32,
    filter: Option<FilterFn>,
    max_index: Option<u64>,
}

impl<R: Ring> FactorFamily<R> {
    pub fn new(
        coefficient: impl Fn(u64) -> R + Send + Sync + 'static,
        exponent: impl Fn(u64) -> u64 + Send + Sync + 'static,
        power: i32,
    ) -> Self {
        FactorFamily {
            coefficient: Arc::new(coefficient),
            exponent: Arc::new(exponent),
            power,
            filter: None,
            max_index: None,
        }
    }

    /// `prod_i (1 + c u^{step*i + offset})^power` with a constant coefficient.
    pub fn linear(c: R, step: u64, offset: i64, power: i32) -> Self {
        assert!(step >= 1, "exponent step must be positive");
        assert!(
            step as i64 + offset >= 1,
            "first exponent must be at least 1"
        );
        FactorFamily::new(
            move |_| c.clone(),
            move |i| (step as i64 * i as i64 + offset) as u64,
            power,
        )
    }

    /// A single factor `(1 + c u^j)^power`.
    pub fn single(c: R, j: u64, power: i32) -> Self {
        assert!(j >= 1, "factor exponent must be at least 1");
        let mut f = FactorFamily::new(move |_| c.clone(), move |i| j * i, power);
        f.max_index = Some(1);
        f
    }

    /// Restricts the product to indices accepted by `pred`.
    pub fn with_filter(mut self, pred: impl Fn(u64) -> bool + Send + Sync + 'static) -> Self {
        self.filter = Some(Arc::new(pred));
        self
    }

    /// The same family with the power negated.
    pub fn inverse(&self) -> Self {
        FactorFamily {
            power: -self.power,
            ..self.clone()
        }
    }

    pub fn power(&self) -> i32 {
        self.power
    }

    /// The `(c(i), j(i))` pairs whose exponent does not exceed `order`.
    pub fn factors_up_to(&self, order: usize) -> Vec<(R, u64)> {
        let mut out = Vec::new();
        let mut prev = 0u64;
        let mut i = 1u64;
        loop {
            if self.max_index.is_some_and(|m| i > m) {
                break;
            }
            let j = (self.exponent)(i);
            assert!(j > prev, "factor exponents must be strictly increasing");
            prev = j;
            if j as usize > order {
                break;
            }
            if self.filter.as_ref().is_none_or(|f| f(i)) {
                out.push(((self.coefficient)(i), j));
            }
            i += 1;
        }
        out
    }
}

impl<R> fmt::Debug for FactorFamily<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FactorFamily")
            .field("power", &self.power)
            .field("filtered", &self.filter.is_some())
            .field("max_index", &self.max_index)
            .finish_non_exhaustive()
    }
}

/// A power series in `u` known up to and including `u^order`.
#[derive(Clone)]
pub struct TruncatedSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Builds from coefficients of `u^0..=u^order`; missing entries are zero.
    pub fn from_coeffs(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        coeffs.truncate(order + 1);
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries::from_coeffs(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        TruncatedSeries::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        TruncatedSeries::from_coeffs(vec![c], order)
    }

    /// `c u^k`, which is zero when `k > order`.
    pub fn monomial(c: R, k: usize, order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `1 / (1 - c u^k)` expanded geometrically.
    pub fn geometric(c: R, k: usize, order: usize) -> Self {
        assert!(k >= 1);
        let mut s = TruncatedSeries::zero(order);
        let mut term = R::one();
        let mut e = 0;
        while e <= order {
            s.coeffs[e] = term.clone();
            term = term.times(&c);
            e += k;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ring_kind(&self) -> RingKind {
        R::KIND
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// The exact coefficient of `u^n`.
    pub fn coeff(&self, n: usize) -> Result<&R> {
        self.coeffs.get(n).ok_or(Error::IndexOutOfRange {
            index: n,
            order: self.order(),
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncatedSeries::from_coeffs(
            self.coeffs[..=order.min(self.order())].to_vec(),
            order.min(self.order()),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k].plus(&other.coeffs[k]))
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k].minus(&other.coeffs[k]))
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(R::negated).collect(),
        }
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale(&self, c: &R) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.times(c)).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.scale(r)).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![R::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Multiplicative inverse up to truncation.
    pub fn invert(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0]
            .unit_inverse()
            .ok_or_else(|| Error::NonUnitConstant(self.coeffs[0].to_string()))?;
        let order = self.order();
        let mut inv: Vec<R> = Vec::with_capacity(order + 1);
        inv.push(c0_inv.clone());
        for n in 1..=order {
            let mut acc = R::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if a.is_zero() {
                    continue;
                }
                acc = acc.plus(&a.times(&inv[n - k]));
            }
            inv.push(acc.times(&c0_inv).negated());
        }
        Ok(TruncatedSeries { coeffs: inv })
    }

    /// `self / other`, requiring a unit constant term in `other`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.invert()?))
    }

    /// Multiplies in place by `(1 + c u^j)^power`.
    fn mul_factor(&mut self, c: &R, j: usize, power: i32) {
        let order = self.order();
        if j > order || c.is_zero() {
            return;
        }
        if power >= 0 {
            for _ in 0..power {
                for k in (j..=order).rev() {
                    let t = self.coeffs[k - j].times(c);
                    self.coeffs[k] = self.coeffs[k].plus(&t);
                }
            }
        } else {
            for _ in 0..(-power) {
                for k in j..=order {
                    let t = self.coeffs[k - j].times(c);
                    self.coeffs[k] = self.coeffs[k].minus(&t);
                }
            }
        }
    }

    /// `self * prod_families prod_i (1 + c(i) u^{j(i)})^e`, truncated.
    pub fn apply_product(&self, families: &[FactorFamily<R>]) -> Self {
        let mut out = self.clone();
        for fam in families {
            for (c, j) in fam.factors_up_to(out.order()) {
                out.mul_factor(&c, j as usize, fam.power);
            }
        }
        out
    }

    /// The product of `families` on its own.
    pub fn product(families: &[FactorFamily<R>], order: usize) -> Self {
        TruncatedSeries::one(order).apply_product(families)
    }

    /// `a(u^d)`, truncated at the original order.
    pub fn substitute_power(&self, d: usize) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidSubstitution(d));
        }
        let order = self.order();
        let mut out = TruncatedSeries::zero(order);
        for (k, c) in self.coeffs.iter().enumerate() {
            if k * d > order {
                break;
            }
            out.coeffs[k * d] = c.clone();
        }
        Ok(out)
    }

    /// `u^k * self`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = TruncatedSeries::zero(order);
        for n in k..=order {
            out.coeffs[n] = self.coeffs[n - k].clone();
        }
        out
    }

    /// Applies `f` to every coefficient, possibly changing the ring.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl TruncatedSeries<Rat> {
    /// Exact value of the truncated polynomial at `u = r`.
    pub fn eval_real_at(&self, r: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * r + c)
    }
}

impl TruncatedSeries<QPoly> {
    /// Specializes every coefficient at `q = q0`.
    pub fn evaluate_q(&self, q0: &Rat) -> TruncatedSeries<Rat> {
        self.map(|p| p.evaluate(q0))
    }
}

/// `(1 + c u^j)^e` for a ring-valued exponent, via the generalized binomial
/// series `sum_k binom(e, k) c^k u^{jk}`.
pub fn binomial_power<R: Ring>(c: &R, j: usize, e: &R, order: usize) -> TruncatedSeries<R> {
    assert!(j >= 1);
    let mut out = TruncatedSeries::zero(order);
    let mut binom = R::one();
    let mut c_pow = R::one();
    let mut k = 0usize;
    while k * j <= order {
        out.coeffs[k * j] = binom.times(&c_pow);
        // binom(e, k+1) = binom(e, k) * (e - k) / (k + 1)
        let e_minus_k = e.minus(&R::from_int(k as i64));
        binom = binom.times(&e_minus_k).scale(&Rat::new(1, (k + 1) as i64));
        c_pow = c_pow.times(c);
        k += 1;
    }
    out
}

/// Equality up to the smaller truncation order.
impl<R: Ring> PartialEq for TruncatedSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        let order = self.order().min(other.order());
        self.coeffs[..=order] == other.coeffs[..=order]
    }
}

impl<R: Ring> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Ring> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})u")?,
                _ => write!(f, "({c})u^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(u^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(c: &[i64]) -> TruncatedSeries<Rat> {
        TruncatedSeries::from_coeffs(c.iter().map(|&x| Rat::from(x)).collect(), c.len() - 1)
    }

    fn euler(order: usize) -> TruncatedSeries<Rat> {
        TruncatedSeries::product(&[FactorFamily::linear(Rat::from(-1i64), 1, 0, 1)], order)
    }

    #[test]
    fn add_examples() {
        assert_eq!(rs(&[1, 1]).add(&rs(&[1, -1])), rs(&[2, 0]));
        let a = rs(&[3, -2, 7]);
        assert_eq!(a.add(&TruncatedSeries::zero(2)), a);
        let q = QPoly::q();
        let a = TruncatedSeries::from_coeffs(vec![QPoly::one(), q.clone()], 1);
        let b = TruncatedSeries::from_coeffs(vec![QPoly::one(), QPoly::one()], 1);
        let s = a.add(&b);
        assert_eq!(s.coeff(0).unwrap(), &QPoly::from_ints(&[2]));
        assert_eq!(s.coeff(1).unwrap(), &QPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn add_takes_min_order() {
        assert_eq!(rs(&[1, 2, 3]).add(&rs(&[1, 1])).order(), 1);
    }

    #[test]
    fn mul_examples() {
        let p = rs(&[1, 1, 0]).mul(&rs(&[1, -1, 0]));
        assert_eq!(p.coeffs(), rs(&[1, 0, -1]).coeffs());
        let a = rs(&[2, 5, -1, 4]);
        assert_eq!(a.mul(&TruncatedSeries::one(3)), a);
        let geo = rs(&[1, -1, 0, 0, 0, 0]).invert().unwrap();
        assert_eq!(geo.mul(&rs(&[1, -1, 0, 0, 0, 0])), TruncatedSeries::one(5));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(
            rs(&[1, -1, 0, 0, 0]).invert().unwrap(),
            rs(&[1, 1, 1, 1, 1])
        );
        let q = QPoly::q();
        let one_minus_qu = TruncatedSeries::from_coeffs(vec![QPoly::one(), -&q], 4);
        let inv = one_minus_qu.invert().unwrap();
        for k in 0..=4 {
            assert_eq!(inv.coeff(k).unwrap(), &q.pow(k as u32));
        }
        let a = rs(&[3, 1, 4, 1, 5]);
        assert_eq!(a.invert().unwrap().invert().unwrap(), a);
    }

    #[test]
    fn invert_rejects_non_units() {
        assert!(matches!(
            rs(&[0, 1]).invert(),
            Err(Error::NonUnitConstant(_))
        ));
        let s = TruncatedSeries::from_coeffs(vec![QPoly::q(), QPoly::one()], 2);
        assert!(s.invert().is_err());
    }

    #[test]
    fn pentagonal_product_low_order() {
        assert_eq!(euler(7), rs(&[1, -1, -1, 0, 0, 1, 0, 1]));
        let back = euler(7).apply_product(&[FactorFamily::linear(Rat::from(-1i64), 1, 0, -1)]);
        assert_eq!(back, TruncatedSeries::one(7));
    }

    #[test]
    fn gl_one_coefficient() {
        let q = QPoly::q();
        let gl = TruncatedSeries::product(
            &[
                FactorFamily::linear(QPoly::from_ints(&[-1]), 1, 0, 1),
                FactorFamily::linear(-&q, 1, 0, -1),
            ],
            1,
        );
        assert_eq!(gl.coeff(1).unwrap(), &QPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn substitute_power_examples() {
        assert_eq!(rs(&[1, 1, 0]).substitute_power(2).unwrap(), rs(&[1, 0, 1]));
        let a = rs(&[1, 2, 3]);
        assert_eq!(a.substitute_power(1).unwrap(), a);
        let geo = TruncatedSeries::geometric(Rat::one(), 1, 7);
        assert_eq!(
            geo.substitute_power(3).unwrap(),
            rs(&[1, 0, 0, 1, 0, 0, 1, 0])
        );
        assert_eq!(a.substitute_power(0), Err(Error::InvalidSubstitution(0)));
    }

    #[test]
    fn coeff_range() {
        let a = rs(&[1, 0, 3]);
        assert_eq!(a.coeff(2).unwrap(), &Rat::from(3i64));
        assert_eq!(
            a.coeff(3),
            Err(Error::IndexOutOfRange { index: 3, order: 2 })
        );
    }

    #[test]
    fn eval_real_examples() {
        let half = Rat::new(1, 2);
        let p = TruncatedSeries::product(&[FactorFamily::linear(Rat::one(), 1, 0, 1)], 40);
        let v = p.eval_real_at(&half);
        assert!(v >= Rat::new(238, 100) && v <= Rat::new(24, 10));
        assert_eq!(rs(&[7, 3, 2]).eval_real_at(&Rat::zero()), Rat::from(7i64));
        let geo = TruncatedSeries::geometric(Rat::one(), 1, 40);
        let err = (Rat::from(2i64) - geo.eval_real_at(&half)).abs();
        assert!(err <= Rat::new(1, 1) / Rat::from(2i64).pow(39));
    }

    #[test]
    fn binomial_power_matches_integer_power() {
        let three = Rat::from(3i64);
        let via_binom = binomial_power(&Rat::from(-1i64), 2, &three, 10);
        let direct = TruncatedSeries::product(&[FactorFamily::single(Rat::from(-1i64), 2, 3)], 10);
        assert_eq!(via_binom, direct);
        let neg = binomial_power(&Rat::from(-1i64), 1, &Rat::from(-2i64), 6);
        assert_eq!(neg, rs(&[1, 2, 3, 4, 5, 6, 7]));
    }

    #[test]
    fn filtered_families() {
        // prod_{i odd} (1 + u^i) up to u^6: 1 + u + u^3 + u^4 + u^5 + u^6
        let f = FactorFamily::linear(Rat::one(), 1, 0, 1).with_filter(|i| i % 2 == 1);
        let p = TruncatedSeries::product(&[f], 6);
        assert_eq!(p, rs(&[1, 1, 0, 1, 1, 1, 1]));
    }
}
