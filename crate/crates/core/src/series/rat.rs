//! Exact rational scalars.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rat(BigRational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_integer(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_integer().and_then(|n| n.to_u64())
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Option<Rat> {
        (!self.is_zero()).then(|| Rat(self.0.recip()))
    }

    pub fn pow(&self, exp: i32) -> Rat {
        Rat(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn is_odd_integer(&self) -> bool {
        self.to_integer().is_some_and(|n| n.is_odd())
    }

    pub fn is_even_integer(&self) -> bool {
        self.to_integer().is_some_and(|n| n.is_even())
    }

    /// Largest multiple of `1/denom` not above `self`.
    pub fn floor_to(&self, denom: &BigInt) -> Rat {
        let scaled = &self.0 * BigRational::from_integer(denom.clone());
        Rat(BigRational::new(scaled.floor().to_integer(), denom.clone()))
    }

    /// Smallest multiple of `1/denom` not below `self`.
    pub fn ceil_to(&self, denom: &BigInt) -> Rat {
        let scaled = &self.0 * BigRational::from_integer(denom.clone());
        Rat(BigRational::new(scaled.ceil().to_integer(), denom.clone()))
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<u64> for Rat {
    fn from(n: u64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Self {
        Rat::from(n as i64)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl PartialEq<i64> for Rat {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && self.0.numer() == &BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rat {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = String;

    /// Parses `a`, `-a`, `a/b` or a terminating decimal `a.b`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(format!("invalid decimal `{s}`"));
            }
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let digits: BigInt = format!("{int}{frac}")
                .parse()
                .map_err(|e| format!("invalid decimal `{s}`: {e}"))?;
            return Ok(Rat::new(digits, scale));
        }
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|e| format!("invalid rational `{s}`: {e}"))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse(d)?;
                if d.is_zero() {
                    return Err(format!("zero denominator in `{s}`"));
                }
                Ok(Rat::new(parse(n)?, d))
            }
            None => Ok(Rat::from_integer(parse(s)?)),
        }
    }
}

/// Serialized as its display string, e.g. `"5/2"`.
impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_sign_and_gcd() {
        let r = Rat::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn parses_and_prints() {
        for s in ["0", "17", "-5/2", "1/3"] {
            assert_eq!(s.parse::<Rat>().unwrap().to_string(), s);
        }
        assert_eq!("111.6".parse::<Rat>().unwrap(), Rat::new(558, 5));
        assert_eq!("-0.25".parse::<Rat>().unwrap(), Rat::new(-1, 4));
        assert!("1.".parse::<Rat>().is_err());
        assert!("1/0".parse::<Rat>().is_err());
    }

    #[test]
    fn integer_queries() {
        assert!(Rat::from(7i64).is_odd_integer());
        assert!(!Rat::new(7, 2).is_odd_integer());
        assert_eq!(Rat::new(10, 2).to_u64(), Some(5));
        assert_eq!(Rat::new(1, 2).pow(-3), Rat::from(8i64));
    }
}
