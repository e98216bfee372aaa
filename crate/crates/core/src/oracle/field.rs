//! Small finite fields `F_p` and `F_{p^2}` with precomputed tables.

use std::fmt;

use crate::classcount::prime_power;
use crate::error::{Error, Result};

/// A field of order `p` or `p^2` (at most 255 elements).
///
/// Elements are the integers `0..order`. In the degree-2 case `a + b*p`
/// stands for `a + b t`, where `t` is a root of the modulus.
#[derive(Clone)]
pub struct FiniteField {
    p: u8,
    degree: u8,
    order: u8,
    /// `(c1, c0)` of the monic modulus `t^2 + c1 t + c0`.
    modulus: Option<(u8, u8)>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
}

impl FiniteField {
    pub fn new(order: u64) -> Result<Self> {
        let (p, k) = prime_power(order).ok_or(Error::UnsupportedField(order))?;
        if k > 2 || order > 255 {
            return Err(Error::UnsupportedField(order));
        }
        let p8 = p as u8;
        let modulus = (k == 2).then(|| first_irreducible_quadratic(p8));
        let size = order as usize;
        let split = |x: usize| (x % p as usize, x / p as usize);
        let join = |a: usize, b: usize| (a % p as usize + (b % p as usize) * p as usize) as u8;
        let mut add = vec![0u8; size * size];
        let mut mul = vec![0u8; size * size];
        for x in 0..size {
            for y in 0..size {
                let (a, b) = split(x);
                let (c, d) = split(y);
                add[x * size + y] = join(a + c, b + d);
                let pp = p as usize;
                mul[x * size + y] = match modulus {
                    None => ((x * y) % pp) as u8,
                    Some((c1, c0)) => {
                        // (a + bt)(c + dt) with t^2 = -c1 t - c0
                        let bd = b * d % pp;
                        let konst = a * c + (pp - c0 as usize) * bd;
                        let lin = a * d + b * c + (pp - c1 as usize) * bd;
                        join(konst, lin)
                    }
                };
            }
        }
        let mut f = FiniteField {
            p: p8,
            degree: k as u8,
            order: order as u8,
            modulus,
            add,
            mul,
            neg: vec![0; size],
            inv: vec![0; size],
            frob: vec![0; size],
        };
        for x in 0..size as u8 {
            f.neg[x as usize] = (0..size as u8)
                .find(|&y| f.add(x, y) == 0)
                .expect("additive inverse");
            if x != 0 {
                f.inv[x as usize] = (1..size as u8)
                    .find(|&y| f.mul(x, y) == 1)
                    .expect("field inverse");
            }
            f.frob[x as usize] = f.pow(x, p as u32);
        }
        Ok(f)
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn size(&self) -> usize {
        self.order as usize
    }

    pub fn modulus(&self) -> Option<(u8, u8)> {
        self.modulus
    }

    #[inline]
    pub fn add(&self, x: u8, y: u8) -> u8 {
        self.add[x as usize * self.size() + y as usize]
    }

    #[inline]
    pub fn sub(&self, x: u8, y: u8) -> u8 {
        self.add(x, self.neg[y as usize])
    }

    #[inline]
    pub fn mul(&self, x: u8, y: u8) -> u8 {
        self.mul[x as usize * self.size() + y as usize]
    }

    #[inline]
    pub fn neg(&self, x: u8) -> u8 {
        self.neg[x as usize]
    }

    /// Multiplicative inverse; `x` must be nonzero.
    #[inline]
    pub fn inv(&self, x: u8) -> u8 {
        debug_assert!(x != 0);
        self.inv[x as usize]
    }

    /// The Frobenius `x -> x^p`, which is the conjugation of `F_{p^2}` over `F_p`.
    #[inline]
    pub fn frob(&self, x: u8) -> u8 {
        self.frob[x as usize]
    }

    pub fn pow(&self, x: u8, e: u32) -> u8 {
        (0..e).fold(1, |acc, _| self.mul(acc, x))
    }

    /// The element `t` generating the field over the prime field (1 if prime).
    pub fn generator(&self) -> u8 {
        if self.degree == 2 {
            self.p
        } else {
            1
        }
    }

    /// Elements fixed by Frobenius, i.e. the prime subfield.
    pub fn is_in_prime_field(&self, x: u8) -> bool {
        x < self.p
    }

    pub fn is_square(&self, x: u8) -> bool {
        x == 0 || (1..self.order).any(|y| self.mul(y, y) == x)
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.order
    }

    /// Checks the field axioms on every element pair (and triple for
    /// associativity and distributivity).
    pub fn verify_axioms(&self) -> bool {
        let els: Vec<u8> = self.elements().collect();
        for &x in &els {
            if self.add(x, 0) != x || self.mul(x, 1) != x || self.add(x, self.neg(x)) != 0 {
                return false;
            }
            if x != 0 && self.mul(x, self.inv(x)) != 1 {
                return false;
            }
            for &y in &els {
                if self.add(x, y) != self.add(y, x) || self.mul(x, y) != self.mul(y, x) {
                    return false;
                }
                for &z in &els {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z))
                        || self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z))
                        || self.mul(x, self.add(y, z)) != self.add(self.mul(x, y), self.mul(x, z))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Human-readable description including the modulus.
    pub fn describe(&self) -> String {
        match self.modulus {
            None => format!("F_{}", self.p),
            Some((c1, c0)) => format!("F_{} = F_{}[t]/(t^2 + {c1}t + {c0})", self.order, self.p),
        }
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// First `(c1, c0)`, scanning `c1` then `c0` upward, with `t^2 + c1 t + c0`
/// irreducible over `F_p`.
fn first_irreducible_quadratic(p: u8) -> (u8, u8) {
    let p16 = p as u16;
    for c1 in 0..p16 {
        for c0 in 0..p16 {
            let has_root = (0..p16).any(|x| (x * x + c1 * x + c0) % p16 == 0);
            if !has_root {
                return (c1 as u8, c0 as u8);
            }
        }
    }
    unreachable!("an irreducible quadratic exists over every prime field")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_hold_for_small_fields() {
        for q in [2, 3, 4, 5, 7, 9, 25] {
            let f = FiniteField::new(q).unwrap();
            assert!(f.verify_axioms(), "F_{q}");
        }
    }

    #[test]
    fn moduli_are_fixed() {
        assert_eq!(FiniteField::new(4).unwrap().modulus(), Some((1, 1)));
        assert_eq!(FiniteField::new(9).unwrap().modulus(), Some((0, 1)));
        assert_eq!(FiniteField::new(5).unwrap().modulus(), None);
    }

    #[test]
    fn frobenius_is_conjugation() {
        let f = FiniteField::new(9).unwrap();
        for x in f.elements() {
            assert_eq!(f.frob(f.frob(x)), x);
            assert_eq!(f.frob(x) == x, f.is_in_prime_field(x));
        }
    }

    #[test]
    fn unsupported_orders() {
        assert_eq!(FiniteField::new(8).unwrap_err(), Error::UnsupportedField(8));
        assert_eq!(FiniteField::new(6).unwrap_err(), Error::UnsupportedField(6));
    }
}
