//! Affine extensions `V ⋊ G` of enumerated matrix groups.

use std::fmt;

use super::group::{build_group, entry_field, expected_order, GroupSpec, MatrixGroup};
use super::matrix::{
    add_vectors, decode_vector, encode_vector, scale_vector, vector_count, Mat, Vector,
};
use crate::error::{Error, Result};

/// The affine group `{x -> Ax + v}` over the natural module of `base`.
///
/// Elements are never stored. The pair `(A, v)` has index
/// `a * |V| + v`, where `a` is the position of `A` in the base group and `v`
/// the encoding of the vector, so index order is the canonical order.
#[derive(Debug, Clone)]
pub struct AffineGroup {
    base: MatrixGroup,
    vectors: Vec<Vector>,
    add: Vec<u32>,
}

impl AffineGroup {
    pub fn base(&self) -> &MatrixGroup {
        &self.base
    }

    pub fn module_size(&self) -> usize {
        self.vectors.len()
    }

    pub fn order(&self) -> usize {
        self.base.order() * self.module_size()
    }

    pub fn vector(&self, v: usize) -> &Vector {
        &self.vectors[v]
    }

    pub fn vector_index(&self, v: &Vector) -> usize {
        encode_vector(v, self.base.n(), self.base.field())
    }

    #[inline]
    pub fn add_index(&self, a: usize, b: usize) -> usize {
        self.add[a * self.module_size() + b] as usize
    }

    pub fn index(&self, a: usize, v: usize) -> usize {
        a * self.module_size() + v
    }

    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx / self.module_size(), idx % self.module_size())
    }

    pub fn element(&self, idx: usize) -> (Mat, Vector) {
        let (a, v) = self.split(idx);
        (*self.base.element(a), self.vectors[v])
    }

    /// `(A1, v1)(A2, v2) = (A1 A2, v1 + A1 v2)`.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        let (a1, v1) = self.split(x);
        let (a2, v2) = self.split(y);
        let f = self.base.field();
        let moved = self.base.element(a1).apply(&self.vectors[v2], f);
        self.index(
            self.base.mul_index(a1, a2),
            self.add_index(v1, self.vector_index(&moved)),
        )
    }

    pub fn inverse(&self, x: usize) -> usize {
        let (a, v) = self.split(x);
        let f = self.base.field();
        let ainv = self.base.inverse_index(a);
        let w = self.base.element(ainv).apply(&self.vectors[v], f);
        let n = self.base.n();
        self.index(ainv, self.vector_index(&scale_vector(f.neg(1), &w, n, f)))
    }

    pub fn identity(&self) -> usize {
        self.index(self.base.identity_index(), 0)
    }

    /// Translations by an `F_p`-basis of `V`: `e_j` and, over a degree-2
    /// field, `t e_j`.
    pub fn translation_generators(&self) -> Vec<usize> {
        let f = self.base.field();
        let n = self.base.n();
        let scalars: Vec<u8> = if f.degree() == 2 {
            vec![1, f.generator()]
        } else {
            vec![1]
        };
        let mut out = Vec::new();
        for j in 0..n {
            for &s in &scalars {
                let mut v = [0; super::matrix::MAX_DIM];
                v[j] = s;
                out.push(self.vector_index(&v));
            }
        }
        out
    }

    /// Checks identity, inverses and associativity on sampled triples.
    pub fn verify_sampled(&self, samples: usize) -> Result<()> {
        let id = self.identity();
        let n = self.order();
        let step = (n / samples.max(1)).max(1);
        for x in (0..n).step_by(step) {
            if self.mul(x, id) != x || self.mul(id, x) != x || self.mul(x, self.inverse(x)) != id {
                return Err(Error::Inconsistent(format!(
                    "affine axioms fail at element {x}"
                )));
            }
            let y = (x * 7919 + 13) % n;
            let z = (x * 104_729 + 7) % n;
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                return Err(Error::Inconsistent(format!(
                    "affine product not associative at {x}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for AffineGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.base.spec())
    }
}

/// Size of the natural module of `spec`.
pub fn module_size(spec: GroupSpec) -> Result<u128> {
    let f = entry_field(spec)?;
    Ok((f.size() as u128).pow(spec.n as u32))
}

/// Builds `V ⋊ G`, refusing when `|G| |V|` exceeds `cap`.
pub fn build_affine(spec: GroupSpec, cap: u128) -> Result<AffineGroup> {
    let vsize = module_size(spec)?;
    if let Some(order) = expected_order(spec) {
        let total = order.saturating_mul(vsize);
        if total > cap {
            return Err(Error::CapExceeded {
                required: total,
                cap,
            });
        }
    }
    let base = build_group(spec, cap)?;
    let total = base.order() as u128 * vsize;
    if total > cap {
        return Err(Error::CapExceeded {
            required: total,
            cap,
        });
    }
    Ok(from_base(base))
}

/// Wraps an already enumerated group.
pub fn from_base(base: MatrixGroup) -> AffineGroup {
    let f = base.field();
    let n = base.n();
    let count = vector_count(n, f);
    let vectors: Vec<Vector> = (0..count).map(|c| decode_vector(c, n, f)).collect();
    let mut add = vec![0u32; count * count];
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate() {
            add[i * count + j] = encode_vector(&add_vectors(a, b, n, f), n, f) as u32;
        }
    }
    AffineGroup { base, vectors, add }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::group::{LinearFamily, DEFAULT_CAP};

    #[test]
    fn agl_2_3_order() {
        let a = build_affine(GroupSpec::new(LinearFamily::GL, 2, 3), DEFAULT_CAP).unwrap();
        assert_eq!(a.order(), 432);
        a.verify_sampled(500).unwrap();
    }

    #[test]
    fn unitary_module_is_over_the_quadratic_field() {
        let a = build_affine(GroupSpec::new(LinearFamily::GU, 1, 2), DEFAULT_CAP).unwrap();
        assert_eq!(a.module_size(), 4);
        assert_eq!(a.translation_generators().len(), 2);
    }

    #[test]
    fn cap_is_checked_before_enumeration() {
        let err = build_affine(GroupSpec::new(LinearFamily::GL, 3, 3), 1000).unwrap_err();
        assert!(matches!(
            err,
            Error::CapExceeded {
                required: 303_264,
                cap: 1000
            }
        ));
    }
}
