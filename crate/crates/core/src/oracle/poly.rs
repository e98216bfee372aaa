//! Class sums for `GL(n,q)` from rational canonical form data.

use super::field::FiniteField;
use crate::error::{Error, Result};
use crate::partitions::{enum_partitions, Partition};

pub const DIRECT_MAX_N: usize = 4;
pub const DIRECT_MAX_Q: u64 = 5;

/// Coefficients from the constant term up; monic polynomials only.
type Poly = Vec<u8>;

fn all_monic(degree: usize, f: &FiniteField) -> Vec<Poly> {
    let q = f.size();
    (0..q.pow(degree as u32))
        .map(|mut code| {
            let mut p = Vec::with_capacity(degree + 1);
            for _ in 0..degree {
                p.push((code % q) as u8);
                code /= q;
            }
            p.push(1);
            p
        })
        .collect()
}

/// Remainder of `a` modulo the monic `b`.
fn rem(a: &[u8], b: &[u8], f: &FiniteField) -> Poly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().expect("nonempty");
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(lead, c));
            }
        }
        r.pop();
    }
    r
}

/// Monic irreducible polynomials of degree `1..=max_degree`, by trial division.
pub fn irreducible_polynomials(max_degree: usize, f: &FiniteField) -> Vec<Vec<u8>> {
    let mut irreducible: Vec<Poly> = Vec::new();
    for d in 1..=max_degree {
        for p in all_monic(d, f) {
            let reducible = irreducible
                .iter()
                .filter(|g| 2 * (g.len() - 1) <= d)
                .any(|g| rem(&p, g, f).iter().all(|&c| c == 0));
            if !reducible {
                irreducible.push(p);
            }
        }
    }
    irreducible
}

/// `Σ_C (d(λ_{z-1}(C)) + 1)` over the classes `C` of `GL(n,q)`.
///
/// Classes are enumerated as assignments of partitions `λ_φ` to monic
/// irreducible `φ ≠ z` with `Σ deg(φ) |λ_φ| = n`. The sum equals `k(AGL(n,q))`.
pub fn gl_direct_class_sum(n: usize, q: u64) -> Result<u64> {
    if n > DIRECT_MAX_N || q > DIRECT_MAX_Q {
        return Err(Error::OutOfRange(format!(
            "direct class sum needs n <= {DIRECT_MAX_N}, q <= {DIRECT_MAX_Q}"
        )));
    }
    let f = FiniteField::new(q)?;
    let z_minus_one: Poly = vec![f.neg(1), 1];
    let polys: Vec<(usize, bool)> = irreducible_polynomials(n.max(1), &f)
        .into_iter()
        .filter(|p| p != &vec![0, 1])
        .map(|p| (p.len() - 1, p == z_minus_one))
        .collect();
    let partitions: Vec<Vec<Partition>> = (0..=n as u32).map(enum_partitions).collect();

    fn rec(
        i: usize,
        remaining: usize,
        weight: u64,
        polys: &[(usize, bool)],
        parts: &[Vec<Partition>],
    ) -> u64 {
        if remaining == 0 {
            return weight;
        }
        if i == polys.len() {
            return 0;
        }
        let (deg, is_one) = polys[i];
        let mut total = rec(i + 1, remaining, weight, polys, parts);
        for size in 1..=remaining / deg {
            for lambda in &parts[size] {
                let w = if is_one {
                    lambda.d() as u64 + 1
                } else {
                    weight
                };
                total += rec(i + 1, remaining - size * deg, w, polys, parts);
            }
        }
        total
    }
    Ok(rec(0, n, 1, &polys, &partitions))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_counts() {
        let f = FiniteField::new(2).unwrap();
        let counts: Vec<usize> = (1..=4)
            .map(|d| {
                irreducible_polynomials(4, &f)
                    .iter()
                    .filter(|p| p.len() - 1 == d)
                    .count()
            })
            .collect();
        assert_eq!(counts, vec![2, 1, 2, 3]);
    }

    #[test]
    fn small_sums() {
        assert_eq!(gl_direct_class_sum(1, 2).unwrap(), 2);
        assert_eq!(gl_direct_class_sum(2, 2).unwrap(), 5);
        assert!(gl_direct_class_sum(5, 2).is_err());
    }
}
