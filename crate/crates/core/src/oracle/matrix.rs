//! Fixed-capacity square matrices and vectors over a [`FiniteField`].

use super::field::FiniteField;

pub const MAX_DIM: usize = 4;

pub type Vector = [u8; MAX_DIM];

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat {
    n: u8,
    e: [[u8; MAX_DIM]; MAX_DIM],
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM);
        Mat {
            n: n as u8,
            e: [[0; MAX_DIM]; MAX_DIM],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.e[i][i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let mut m = Mat::zero(rows.len());
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), rows.len());
            m.e[i][..r.len()].copy_from_slice(r);
        }
        m
    }

    /// Builds from columns.
    pub fn from_columns(cols: &[Vector], n: usize) -> Self {
        let mut m = Mat::zero(n);
        for (j, c) in cols.iter().enumerate().take(n) {
            for i in 0..n {
                m.e[i][j] = c[i];
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.e[i][j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        self.e[i][j] = x;
    }

    pub fn column(&self, j: usize) -> Vector {
        let mut v = [0; MAX_DIM];
        for (i, x) in v.iter_mut().enumerate().take(self.n()) {
            *x = self.e[i][j];
        }
        v
    }

    pub fn mul(&self, other: &Mat, f: &FiniteField) -> Mat {
        let n = self.n();
        let mut out = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = f.add(acc, f.mul(self.e[i][k], other.e[k][j]));
                }
                out.e[i][j] = acc;
            }
        }
        out
    }

    pub fn apply(&self, v: &Vector, f: &FiniteField) -> Vector {
        let n = self.n();
        let mut out = [0; MAX_DIM];
        for (i, o) in out.iter_mut().enumerate().take(n) {
            let mut acc = 0;
            for (k, &x) in v.iter().enumerate().take(n) {
                acc = f.add(acc, f.mul(self.e[i][k], x));
            }
            *o = acc;
        }
        out
    }

    pub fn sub(&self, other: &Mat, f: &FiniteField) -> Mat {
        let mut out = *self;
        for i in 0..self.n() {
            for j in 0..self.n() {
                out.e[i][j] = f.sub(self.e[i][j], other.e[i][j]);
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = *self;
        for i in 0..self.n() {
            for j in 0..self.n() {
                out.e[i][j] = self.e[j][i];
            }
        }
        out
    }

    /// Entrywise Frobenius.
    pub fn conjugate(&self, f: &FiniteField) -> Mat {
        let mut out = *self;
        for i in 0..self.n() {
            for j in 0..self.n() {
                out.e[i][j] = f.frob(self.e[i][j]);
            }
        }
        out
    }

    pub fn det(&self, f: &FiniteField) -> u8 {
        let n = self.n();
        let mut a = self.e;
        let mut det = 1u8;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
                return 0;
            };
            if piv != col {
                a.swap(piv, col);
                det = f.neg(det);
            }
            det = f.mul(det, a[col][col]);
            let inv = f.inv(a[col][col]);
            for r in col + 1..n {
                let factor = f.mul(a[r][col], inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    a[r][c] = f.sub(a[r][c], f.mul(factor, a[col][c]));
                }
            }
        }
        det
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        let rows: Vec<Vector> = (0..self.n()).map(|i| self.e[i]).collect();
        Echelon::from_vectors(&rows, self.n(), f).rank()
    }

    pub fn inverse(&self, f: &FiniteField) -> Option<Mat> {
        let n = self.n();
        let mut a = self.e;
        let mut inv = Mat::identity(n).e;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r][col] != 0)?;
            a.swap(piv, col);
            inv.swap(piv, col);
            let s = f.inv(a[col][col]);
            for c in 0..n {
                a[col][c] = f.mul(a[col][c], s);
                inv[col][c] = f.mul(inv[col][c], s);
            }
            for r in 0..n {
                if r == col || a[r][col] == 0 {
                    continue;
                }
                let factor = a[r][col];
                for c in 0..n {
                    a[r][c] = f.sub(a[r][c], f.mul(factor, a[col][c]));
                    inv[r][c] = f.sub(inv[r][c], f.mul(factor, inv[col][c]));
                }
            }
        }
        Some(Mat { n: self.n, e: inv })
    }

    /// Row-major base-`|F|` digits, first entry most significant.
    pub fn encode(&self, f: &FiniteField) -> u64 {
        let base = f.size() as u64;
        let mut code = 0u64;
        for i in 0..self.n() {
            for j in 0..self.n() {
                code = code * base + self.e[i][j] as u64;
            }
        }
        code
    }

    pub fn decode(mut code: u64, n: usize, f: &FiniteField) -> Mat {
        let base = f.size() as u64;
        let mut m = Mat::zero(n);
        for i in (0..n).rev() {
            for j in (0..n).rev() {
                m.e[i][j] = (code % base) as u8;
                code /= base;
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n())
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<&[u8]> = (0..self.n()).map(|i| &self.e[i][..self.n()]).collect();
        write!(f, "{rows:?}")
    }
}

/// Encodes a vector with its first coordinate most significant.
pub fn encode_vector(v: &Vector, n: usize, f: &FiniteField) -> usize {
    v.iter()
        .take(n)
        .fold(0, |acc, &x| acc * f.size() + x as usize)
}

pub fn decode_vector(mut code: usize, n: usize, f: &FiniteField) -> Vector {
    let mut v = [0; MAX_DIM];
    for i in (0..n).rev() {
        v[i] = (code % f.size()) as u8;
        code /= f.size();
    }
    v
}

pub fn vector_count(n: usize, f: &FiniteField) -> usize {
    f.size().pow(n as u32)
}

pub fn add_vectors(a: &Vector, b: &Vector, n: usize, f: &FiniteField) -> Vector {
    let mut out = [0; MAX_DIM];
    for i in 0..n {
        out[i] = f.add(a[i], b[i]);
    }
    out
}

pub fn scale_vector(c: u8, v: &Vector, n: usize, f: &FiniteField) -> Vector {
    let mut out = [0; MAX_DIM];
    for i in 0..n {
        out[i] = f.mul(c, v[i]);
    }
    out
}

/// A subspace in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    n: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(vs: &[Vector], n: usize, f: &FiniteField) -> Self {
        let mut e = Echelon::new(n);
        for v in vs {
            e.insert(v, f);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is a canonical coset representative.
    pub fn reduce(&self, v: &Vector, f: &FiniteField) -> Vector {
        let mut v = *v;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for i in 0..self.n {
                    v[i] = f.sub(v[i], f.mul(c, row[i]));
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &Vector, f: &FiniteField) -> bool {
        let r = self.reduce(v, f);
        let Some(p) = (0..self.n).find(|&i| r[i] != 0) else {
            return false;
        };
        let s = f.inv(r[p]);
        let r = scale_vector(s, &r, self.n, f);
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                for i in 0..self.n {
                    row[i] = f.sub(row[i], f.mul(c, r[i]));
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(pos, r);
        self.pivots.insert(pos, p);
        true
    }

    pub fn contains(&self, v: &Vector, f: &FiniteField) -> bool {
        self.reduce(v, f).iter().take(self.n).all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let f = FiniteField::new(5).unwrap();
        let m = Mat::from_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.det(&f), f.sub(4, 6 % 5));
        let inv = m.inverse(&f).unwrap();
        assert!(m.mul(&inv, &f).is_identity());
        let singular = Mat::from_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.det(&f), 0);
        assert!(singular.inverse(&f).is_none());
        assert_eq!(singular.rank(&f), 1);
    }

    #[test]
    fn encoding_round_trip() {
        let f = FiniteField::new(9).unwrap();
        let m = Mat::from_rows(&[&[8, 0, 1], &[2, 7, 3], &[0, 0, 5]]);
        assert_eq!(Mat::decode(m.encode(&f), 3, &f), m);
        let v = [4, 0, 8, 0];
        assert_eq!(decode_vector(encode_vector(&v, 3, &f), 3, &f), v);
    }

    #[test]
    fn echelon_cosets() {
        let f = FiniteField::new(3).unwrap();
        let e = Echelon::from_vectors(&[[1, 1, 0, 0]], 3, &f);
        assert_eq!(e.reduce(&[2, 2, 1, 0], &f), [0, 0, 1, 0]);
        assert!(e.contains(&[2, 2, 0, 0], &f));
    }
}
