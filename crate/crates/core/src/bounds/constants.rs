//! Rigorous enclosures of infinite products and series at a point.
//!
//! Every quantity is a nonnegative expression in a variable `x` built from
//! rationals, powers of `x`, single factors `(1 ± x^j)^p` and infinite products
//! `∏_{i≥1} (1 ± x^{a i + b})^p`. Evaluation returns an interval `[lo, hi]`
//! containing the true value. Infinite products are multiplied out to a
//! finite index `M` and the remaining tail is enclosed with
//!
//! * `∏ (1 + y_i)^p ≤ exp(p Σ y_i)` and `∏ (1 - y_i)^{-p} ≤ exp(p Σ y_i / (1 - y_{M+1}))`
//!   for increasing factors, with `exp(t) ≤ Σ_{k<4} t^k/k! + t^4/(24 (1 - t))`;
//! * `∏ (1 - y_i)^p ≥ 1 - p Σ y_i` and `∏ (1 + y_i)^{-p} ≥ 1 - p Σ y_i`
//!   for decreasing factors, whose upper tail is `1`;
//!
//! where `Σ_{i>M} x^{a i + b} = x^{a(M+1)+b} / (1 - x^a)`. Endpoints are rounded
//! outward to a fixed denominator to keep the rationals small.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{FactorFamily, Rat, TruncatedSeries};

/// Decimal digits kept by outward rounding.
const ROUNDING_DIGITS: u32 = 40;
/// Products are expanded until the next factor differs from 1 by less than `10^-TAIL_DIGITS`.
const TAIL_DIGITS: f64 = 30.0;
/// Series are truncated at this order before the tail bound takes over.
const SERIES_ORDER: usize = 160;

fn rounding_denominator() -> BigInt {
    BigInt::from(10u32).pow(ROUNDING_DIGITS)
}

/// A closed interval of nonnegative rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn point(x: Rat) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    fn rounded(lo: Rat, hi: Rat) -> Self {
        let d = rounding_denominator();
        Interval {
            lo: lo.floor_to(&d),
            hi: hi.ceil_to(&d),
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    /// Product of nonnegative intervals.
    pub fn mul(&self, other: &Interval) -> Interval {
        Interval::rounded(&self.lo * &other.lo, &self.hi * &other.hi)
    }

    pub fn scale(&self, c: &Rat) -> Interval {
        debug_assert!(!c.is_negative());
        Interval::rounded(&self.lo * c, &self.hi * c)
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }
}

/// A nonnegative expression in `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Rational(Rat),
    /// `x^k`.
    XPow(u32),
    /// `(1 + sign x^j)^power`.
    Factor {
        sign: i8,
        j: u32,
        power: i32,
    },
    /// `∏_{i≥1} (1 + sign x^{step i + offset})^power`.
    Product {
        sign: i8,
        step: u32,
        offset: i32,
        power: i32,
    },
    Sum(Vec<Expr>),
    Mul(Vec<Expr>),
}

impl Expr {
    pub fn rational(c: impl Into<Rat>) -> Expr {
        Expr::Rational(c.into())
    }

    pub fn factor(sign: i8, j: u32, power: i32) -> Expr {
        Expr::Factor { sign, j, power }
    }

    pub fn product(sign: i8, step: u32, offset: i32, power: i32) -> Expr {
        assert!(
            step as i32 + offset >= 1,
            "exponents must start at 1 or more"
        );
        Expr::Product {
            sign,
            step,
            offset,
            power,
        }
    }

    /// Whether the expansion in `x` has only nonnegative coefficients, read off
    /// the structure.
    pub fn has_nonnegative_coefficients(&self) -> bool {
        match self {
            Expr::Rational(c) => !c.is_negative(),
            Expr::XPow(_) => true,
            Expr::Factor { sign, power, .. } | Expr::Product { sign, power, .. } => {
                (*sign > 0 && *power > 0) || (*sign < 0 && *power < 0)
            }
            Expr::Sum(es) | Expr::Mul(es) => es.iter().all(Expr::has_nonnegative_coefficients),
        }
    }

    /// Power series expansion in `x` up to `order`.
    pub fn series(&self, order: usize) -> TruncatedSeries<Rat> {
        match self {
            Expr::Rational(c) => TruncatedSeries::constant(c.clone(), order),
            Expr::XPow(k) => TruncatedSeries::monomial(Rat::one(), *k as usize, order),
            Expr::Factor { sign, j, power } => TruncatedSeries::product(
                &[FactorFamily::single(
                    Rat::from(*sign as i64),
                    *j as u64,
                    *power,
                )],
                order,
            ),
            Expr::Product {
                sign,
                step,
                offset,
                power,
            } => TruncatedSeries::product(
                &[FactorFamily::linear(
                    Rat::from(*sign as i64),
                    *step as u64,
                    *offset as i64,
                    *power,
                )],
                order,
            ),
            Expr::Sum(es) => es.iter().fold(TruncatedSeries::zero(order), |acc, e| {
                acc.add(&e.series(order))
            }),
            Expr::Mul(es) => es.iter().fold(TruncatedSeries::one(order), |acc, e| {
                acc.mul(&e.series(order))
            }),
        }
    }

    /// Encloses the value at every `x` in `x` (with `0 <= x.lo`, `x.hi < 1`).
    pub fn enclose(&self, x: &Interval) -> Interval {
        match self {
            Expr::Rational(c) => Interval::point(c.clone()),
            Expr::XPow(k) => Interval::rounded(x.lo.pow(*k as i32), x.hi.pow(*k as i32)),
            Expr::Factor { sign, j, power } => {
                let at = |v: &Rat| factor_value(*sign, &v.pow(*j as i32), *power);
                if is_increasing(*sign, *power) {
                    Interval::rounded(at(&x.lo), at(&x.hi))
                } else {
                    Interval::rounded(at(&x.hi), at(&x.lo))
                }
            }
            Expr::Product {
                sign,
                step,
                offset,
                power,
            } => enclose_product(*sign, *step, *offset, *power, x),
            Expr::Sum(es) => es.iter().fold(Interval::point(Rat::zero()), |acc, e| {
                acc.add(&e.enclose(x))
            }),
            Expr::Mul(es) => es
                .iter()
                .fold(Interval::point(Rat::one()), |acc, e| acc.mul(&e.enclose(x))),
        }
    }
}

fn is_increasing(sign: i8, power: i32) -> bool {
    (sign > 0) == (power > 0)
}

fn factor_value(sign: i8, y: &Rat, power: i32) -> Rat {
    let base = if sign > 0 {
        Rat::one() + y
    } else {
        Rat::one() - y
    };
    base.pow(power)
}

/// `exp(t)` for `0 <= t < 1`, bounded above.
fn exp_upper(t: &Rat) -> Rat {
    let one = Rat::one();
    let t2 = t * t;
    let t3 = &t2 * t;
    let t4 = &t3 * t;
    &one + t + &t2 * &Rat::new(1, 2) + &t3 * &Rat::new(1, 6) + &t4 / &(Rat::from(24) * (&one - t))
}

fn enclose_product(sign: i8, step: u32, offset: i32, power: i32, x: &Interval) -> Interval {
    let exponent = |i: u64| (step as i64 * i as i64 + offset as i64) as i32;
    let x_hi = x.hi.to_f64();
    let terms = if x_hi <= 0.0 {
        1
    } else {
        let per_step = -(x_hi.ln()) * step as f64;
        ((TAIL_DIGITS * std::f64::consts::LN_10) / per_step)
            .ceil()
            .max(1.0) as u64
            + 1
    };
    let increasing = is_increasing(sign, power);
    let d = rounding_denominator();
    // y_i = x^{step i + offset}, enclosed by outward-rounded running powers
    let step_lo = x.lo.pow(step as i32).floor_to(&d);
    let step_hi = x.hi.pow(step as i32).ceil_to(&d);
    let mut y_lo = x.lo.pow(exponent(1)).floor_to(&d);
    let mut y_hi = x.hi.pow(exponent(1)).ceil_to(&d);
    let mut acc = Interval::point(Rat::one());
    for _ in 1..=terms {
        let (a, b) = if increasing {
            (&y_lo, &y_hi)
        } else {
            (&y_hi, &y_lo)
        };
        let f = Interval::rounded(factor_value(sign, a, power), factor_value(sign, b, power));
        acc = acc.mul(&f);
        y_lo = (&y_lo * &step_lo).floor_to(&d);
        y_hi = (&y_hi * &step_hi).ceil_to(&d);
    }
    // Σ_{i>M} x^{step i + offset}, evaluated at the upper end of x
    let first = y_hi;
    let tail_sum = &first / &(Rat::one() - &step_hi);
    let p = Rat::from(power.unsigned_abs() as u64);
    let tail = if increasing {
        let t = if sign > 0 {
            &p * &tail_sum
        } else {
            &(&p * &tail_sum) / &(Rat::one() - &first)
        };
        let one_minus = Rat::one() - &t;
        assert!(
            !one_minus.is_negative() && !one_minus.is_zero(),
            "tail too large for the exponential majorant"
        );
        Interval::rounded(Rat::one(), exp_upper(&t))
    } else {
        let lower = Rat::one() - &p * &tail_sum;
        Interval::rounded(
            if lower.is_negative() {
                Rat::zero()
            } else {
                lower
            },
            Rat::one(),
        )
    };
    acc.mul(&tail)
}

/// How a constant is obtained from an expression `F`.
#[derive(Debug, Clone, PartialEq)]
pub enum ConstantForm {
    /// `F(1/q)`.
    AtInverseQ(Expr),
    /// `Σ_m c_{2m} q^{-m}` where `F = Σ c_k x^k`.
    EvenPart(Expr),
    /// `Σ_m c_{2m+1} q^{-m}`.
    OddPart(Expr),
    /// `(A + B) / 2`.
    Average(Box<ConstantSpec>, Box<ConstantSpec>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantSpec {
    pub id: &'static str,
    pub description: &'static str,
    pub q: u64,
    pub claimed: Rat,
    pub form: ConstantForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstantReport {
    pub id: String,
    pub description: String,
    pub q: u64,
    pub claimed: Rat,
    pub enclosure: Interval,
    /// The upper end of the enclosure is at most the claimed constant.
    pub certified: bool,
    /// The lower end exceeds the claimed constant.
    pub refuted: bool,
}

impl ConstantReport {
    pub fn lower_f64(&self) -> f64 {
        self.enclosure.lo.to_f64()
    }

    pub fn upper_f64(&self) -> f64 {
        self.enclosure.hi.to_f64()
    }
}

/// Interval around `1/sqrt(q)`.
fn inverse_sqrt(q: u64) -> Interval {
    let d = rounding_denominator();
    let scaled = (&d * &d) / BigInt::from(q);
    let a = scaled.sqrt();
    Interval::new(Rat::new(a.clone(), d.clone()), Rat::new(a + 1, d))
}

/// Encloses `Σ_{k ≡ parity (2)} c_k x^k` over `x ∈ [x.lo, x.hi]`.
fn enclose_parity(f: &Expr, x: &Interval, parity: usize) -> Result<Interval> {
    if !f.has_nonnegative_coefficients() {
        return Err(Error::OutOfRange(
            "parity part needs nonnegative coefficients".into(),
        ));
    }
    let s = f.series(SERIES_ORDER);
    let mut lo = Rat::zero();
    let mut hi = Rat::zero();
    let mut full_hi = Rat::zero();
    let d = rounding_denominator();
    let mut plo = Rat::one();
    let mut phi = Rat::one();
    for (k, c) in s.coeffs().iter().enumerate() {
        if c.is_negative() {
            return Err(Error::Inconsistent(format!(
                "negative coefficient at x^{k}"
            )));
        }
        if k % 2 == parity {
            lo = lo + c * &plo;
            hi = hi + c * &phi;
        }
        full_hi = full_hi + c * &phi;
        plo = (&plo * &x.lo).floor_to(&d);
        phi = (&phi * &x.hi).ceil_to(&d);
    }
    // Σ_{k > order} c_k x^k <= F(x.hi) - Σ_{k <= order} c_k x.hi^k
    let total = f.enclose(&Interval::point(x.hi.clone()));
    let tail = &total.hi - &full_hi;
    let tail = if tail.is_negative() {
        Rat::zero()
    } else {
        tail
    };
    Ok(Interval::rounded(lo, hi + tail))
}

/// Encloses the constant and compares it with the claim.
pub fn certify_constant(spec: &ConstantSpec) -> Result<ConstantReport> {
    let enclosure = enclose_constant(spec)?;
    Ok(ConstantReport {
        id: spec.id.to_string(),
        description: spec.description.to_string(),
        q: spec.q,
        certified: enclosure.hi <= spec.claimed,
        refuted: enclosure.lo > spec.claimed,
        claimed: spec.claimed.clone(),
        enclosure,
    })
}

fn enclose_constant(spec: &ConstantSpec) -> Result<Interval> {
    let q = spec.q;
    match &spec.form {
        ConstantForm::AtInverseQ(f) => Ok(f.enclose(&Interval::point(Rat::new(1, q as i64)))),
        ConstantForm::EvenPart(f) => enclose_parity(f, &inverse_sqrt(q), 0),
        ConstantForm::OddPart(f) => {
            // q^{-m} = x^{2m+1} / x with x = q^{-1/2}
            let x = inverse_sqrt(q);
            let part = enclose_parity(f, &x, 1)?;
            Ok(Interval::rounded(&part.lo / &x.hi, &part.hi / &x.lo))
        }
        ConstantForm::Average(a, b) => {
            let s = enclose_constant(a)?.add(&enclose_constant(b)?);
            Ok(s.scale(&Rat::new(1, 2)))
        }
    }
}

fn dec(s: &str) -> Rat {
    s.parse().expect("decimal literal")
}

fn q_minus_one(q: u64) -> Expr {
    Expr::rational(Rat::from(q - 1))
}

/// `∏ (1 + x^{2i-1})^4 / (1 - x^{2i})`.
fn orthogonal_master() -> Vec<Expr> {
    vec![Expr::product(1, 2, -1, 4), Expr::product(-1, 2, 0, -1)]
}

fn diff_constant(id: &'static str, q: u64, claimed: &str) -> ConstantSpec {
    ConstantSpec {
        id,
        description: "1/(1-1/q) prod (1+q^-(2i-1))/(1-q^-(2i-1))",
        q,
        claimed: dec(claimed),
        form: ConstantForm::AtInverseQ(Expr::Mul(vec![
            Expr::factor(-1, 1, -1),
            Expr::product(1, 2, -1, 1),
            Expr::product(-1, 2, -1, -1),
        ])),
    }
}

fn orthogonal_sum_53() -> ConstantSpec {
    let q = 3;
    let mut f = orthogonal_master();
    // 1 + (x^2 + (q-1) x) / (1 - x^2)
    f.push(Expr::Sum(vec![
        Expr::rational(1),
        Expr::Mul(vec![
            Expr::Sum(vec![
                Expr::XPow(2),
                Expr::Mul(vec![q_minus_one(q), Expr::XPow(1)]),
            ]),
            Expr::factor(-1, 2, -1),
        ]),
    ]));
    ConstantSpec {
        id: "53",
        description: "sum_m q^-m [u^2m] prod (1+u^(2i-1))^4/(1-u^2i) (1 + (u^2+(q-1)u)/(1-u^2))",
        q,
        claimed: dec("53"),
        form: ConstantForm::EvenPart(Expr::Mul(f)),
    }
}

fn orthogonal_even_111() -> ConstantSpec {
    let q = 2;
    ConstantSpec {
        id: "111.6",
        description: "1/(1-1/q) [prod (1+q^-i)(1+q^-(2i-1))^2/(1-q^-i) + 4(q-1)/q prod (1-q^-4i)/((1-q^-(4i-2))(1-q^-i)^2)]",
        q,
        claimed: dec("111.6"),
        form: ConstantForm::AtInverseQ(Expr::Mul(vec![
            Expr::factor(-1, 1, -1),
            Expr::Sum(vec![
                Expr::Mul(vec![
                    Expr::product(1, 1, 0, 1),
                    Expr::product(1, 2, -1, 2),
                    Expr::product(-1, 1, 0, -1),
                ]),
                Expr::Mul(vec![
                    Expr::rational(Rat::from(4 * (q - 1))),
                    Expr::XPow(1),
                    Expr::product(-1, 4, 0, 1),
                    Expr::product(-1, 4, -2, -1),
                    Expr::product(-1, 1, 0, -2),
                ]),
            ]),
        ])),
    }
}

/// Every numeric constant used by the bounds, at the `q` where it is largest.
pub fn quoted_constants() -> Vec<ConstantSpec> {
    let gu_master = Expr::Mul(vec![
        Expr::product(1, 1, 0, 1),
        Expr::product(-1, 1, 0, -1),
        Expr::Sum(vec![Expr::rational(1), Expr::factor(-1, 2, -1)]),
    ]);
    let sp_odd = Expr::Mul(vec![
        Expr::product(1, 1, 0, 4),
        Expr::product(-1, 1, 0, -1),
        Expr::Sum(vec![Expr::rational(1), Expr::factor(-1, 1, -1)]),
    ]);
    let sp_even = Expr::Mul(vec![
        Expr::factor(-1, 1, -1),
        Expr::product(1, 1, 0, 1),
        Expr::product(-1, 1, 0, -1),
        Expr::Sum(vec![
            Expr::product(-1, 4, -2, -2),
            Expr::Mul(vec![Expr::factor(-1, 1, 1), Expr::product(1, 2, -1, 2)]),
        ]),
    ]);
    let sum53 = orthogonal_sum_53();
    let diff33 = diff_constant("3.3", 3, "3.3");
    let sum111 = orthogonal_even_111();
    let diff84 = diff_constant("8.4", 2, "8.4");
    vec![
        ConstantSpec {
            id: "2.4",
            description: "prod (1+2^-i)",
            q: 2,
            claimed: dec("2.4"),
            form: ConstantForm::AtInverseQ(Expr::product(1, 1, 0, 1)),
        },
        ConstantSpec {
            id: "20",
            description: "prod (1+q^-i)/(1-q^-i) (1 + 1/(1-q^-2))",
            q: 2,
            claimed: dec("20"),
            form: ConstantForm::AtInverseQ(gu_master),
        },
        ConstantSpec {
            id: "27",
            description: "prod (1+q^-i)^4/(1-q^-i) (1 + 1/(1-1/q))",
            q: 3,
            claimed: dec("27"),
            form: ConstantForm::AtInverseQ(sp_odd),
        },
        ConstantSpec {
            id: "56",
            description: "1/(1-1/q) prod (1+q^-i)/(1-q^-i) [prod 1/(1-q^-(4i-2))^2 + (1-1/q) prod (1+q^-(2i-1))^2]",
            q: 2,
            claimed: dec("56"),
            form: ConstantForm::AtInverseQ(sp_even),
        },
        sum53.clone(),
        diff33.clone(),
        ConstantSpec {
            id: "29",
            description: "(53-constant + 3.3-constant)/2",
            q: 3,
            claimed: dec("29"),
            form: ConstantForm::Average(Box::new(sum53), Box::new(diff33)),
        },
        sum111.clone(),
        diff84.clone(),
        ConstantSpec {
            id: "60",
            description: "(111.6-constant + 8.4-constant)/2",
            q: 2,
            claimed: dec("60"),
            form: ConstantForm::Average(Box::new(sum111), Box::new(diff84)),
        },
        ConstantSpec {
            id: "16.3",
            description: "sum_m q^-m [u^2m] prod (1+u^(2i-1))^4/(1-u^2i)",
            q: 3,
            claimed: dec("16.3"),
            form: ConstantForm::EvenPart(Expr::Mul(orthogonal_master())),
        },
        ConstantSpec {
            id: "14.2",
            description: "(1/2) sum_m q^-m [u^(2m+1)] prod (1+u^(2i-1))^4/(1-u^2i)",
            q: 3,
            claimed: dec("14.2"),
            form: ConstantForm::OddPart(Expr::Mul(
                std::iter::once(Expr::rational(Rat::new(1, 2)))
                    .chain(orthogonal_master())
                    .collect(),
            )),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(id: &str) -> ConstantReport {
        let spec = quoted_constants().into_iter().find(|s| s.id == id).unwrap();
        certify_constant(&spec).unwrap()
    }

    #[test]
    fn product_bound_2_4() {
        let r = report("2.4");
        assert!(r.certified);
        assert!((r.lower_f64() - 2.384231029).abs() < 1e-8);
        assert!(r.enclosure.width() < Rat::new(1, 1_000_000_000));
    }

    #[test]
    fn geometric_product_is_exact_in_the_limit() {
        // prod_{i>=1} 1/(1 - x^i) at x = 1/2 is 3.4627466194550636...
        let e = Expr::product(-1, 1, 0, -1).enclose(&Interval::point(Rat::new(1, 2)));
        assert!(e.lo.to_f64() <= 3.46274661945507 && e.hi.to_f64() >= 3.46274661945506);
        assert!(e.width() < Rat::new(1, 1_000_000_000));
    }

    #[test]
    fn parity_parts_split_the_value() {
        // even part at x plus x times the odd part equals F(x) for x = 1/sqrt(q)
        let f = Expr::Mul(orthogonal_master());
        let even = report("16.3");
        let odd = report("14.2");
        let x = 1.0 / 3f64.sqrt();
        let direct = f.enclose(&inverse_sqrt(3));
        let combined = even.lower_f64() + 2.0 * x * odd.lower_f64();
        assert!((combined - direct.lo.to_f64()).abs() < 1e-6);
    }

    #[test]
    fn inverse_sqrt_brackets() {
        let x = inverse_sqrt(3);
        assert!(&x.lo * &x.lo <= Rat::new(1, 3));
        assert!(&x.hi * &x.hi >= Rat::new(1, 3));
    }
}
