//! Conjugacy classes, centralizer orbit sums and unipotent partitions.

use serde::Serialize;

use super::affine::AffineGroup;
use super::group::{LinearFamily, MatrixGroup};
use super::matrix::{Echelon, Mat};
use crate::error::{Error, Result};
use crate::partitions::{o_gl, o_gu, Partition};
use crate::series::Rat;

/// Classes of a finite group, each keyed by its least element index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassDecomposition {
    pub group_order: u64,
    pub representatives: Vec<u64>,
    pub sizes: Vec<u64>,
    pub centralizer_orders: Vec<u64>,
}

impl ClassDecomposition {
    pub fn k(&self) -> usize {
        self.representatives.len()
    }

    /// The class equation and `|class| |C(g)| = |G|`.
    pub fn check_class_equation(&self) -> bool {
        self.sizes.iter().sum::<u64>() == self.group_order
            && self
                .sizes
                .iter()
                .zip(&self.centralizer_orders)
                .all(|(s, c)| s * c == self.group_order)
    }
}

/// Closes each unvisited index under the conjugation maps `conj[i]`.
///
/// Scanning indices upward makes the first element found in a class its
/// least member.
fn close_under(
    order: usize,
    conj: impl Fn(usize, usize) -> usize,
    n_gens: usize,
) -> ClassDecomposition {
    let mut seen = vec![false; order];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..order {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut size = 0u64;
        while let Some(x) = stack.pop() {
            size += 1;
            for g in 0..n_gens {
                let y = conj(g, x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        reps.push(start as u64);
        sizes.push(size);
    }
    let group_order = order as u64;
    let centralizer_orders = sizes.iter().map(|s| group_order / s).collect();
    ClassDecomposition {
        group_order,
        representatives: reps,
        sizes,
        centralizer_orders,
    }
}

/// Classes of an enumerated linear group.
pub fn count_classes(group: &MatrixGroup) -> ClassDecomposition {
    let tables = conjugation_tables(group);
    close_under(group.order(), |g, x| tables[g][x] as usize, tables.len())
}

/// `x -> s x s^{-1}` for each generator `s`, as index tables.
fn conjugation_tables(group: &MatrixGroup) -> Vec<Vec<u32>> {
    let f = group.field();
    group
        .generators()
        .iter()
        .map(|&s| {
            let sm = group.element(s);
            let sinv = group.element(group.inverse_index(s));
            group
                .elements()
                .iter()
                .map(|x| {
                    let y = sm.mul(x, f).mul(sinv, f);
                    group.index_of(&y).expect("closed under conjugation") as u32
                })
                .collect()
        })
        .collect()
}

/// Classes of `V ⋊ G`, using the base generators and the translations.
pub fn count_affine_classes(affine: &AffineGroup) -> ClassDecomposition {
    let base = affine.base();
    let f = base.field();
    let n = base.n();
    let tables = conjugation_tables(base);
    // (B,0)(A,v)(B,0)^{-1} = (B A B^{-1}, B v)
    let act: Vec<Vec<u32>> = base
        .generators()
        .iter()
        .map(|&s| {
            (0..affine.module_size())
                .map(|v| affine.vector_index(&base.element(s).apply(affine.vector(v), f)) as u32)
                .collect()
        })
        .collect();
    // (I,w)(A,v)(I,-w) = (A, v + w - A w)
    let translations = affine.translation_generators();
    let shift: Vec<Vec<u32>> = translations
        .iter()
        .map(|&w| {
            let wv = affine.vector(w);
            base.elements()
                .iter()
                .map(|a| {
                    let aw = a.apply(wv, f);
                    let mut d = [0; super::matrix::MAX_DIM];
                    for i in 0..n {
                        d[i] = f.sub(wv[i], aw[i]);
                    }
                    affine.vector_index(&d) as u32
                })
                .collect()
        })
        .collect();
    let n_lin = tables.len();
    close_under(
        affine.order(),
        |g, x| {
            let (a, v) = affine.split(x);
            if g < n_lin {
                affine.index(tables[g][a] as usize, act[g][v] as usize)
            } else {
                let d = shift[g - n_lin][a] as usize;
                affine.index(a, affine.add_index(v, d))
            }
        },
        n_lin + shift.len(),
    )
}

/// One class of `G` with its centralizer orbit count on `V/[g,V]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassOrbit {
    pub representative: u64,
    pub class_size: u64,
    pub centralizer_order: u64,
    pub commutator_dim: usize,
    pub o: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSumReport {
    pub classes: Vec<ClassOrbit>,
    pub total: u64,
}

fn union_find_root(parent: &mut [u32], mut x: usize) -> usize {
    while parent[x] as usize != x {
        let p = parent[x] as usize;
        parent[x] = parent[p];
        x = p;
    }
    x
}

/// For every class of `group`, counts orbits of `C_G(g)` on `V/[g,V]`,
/// where `[g,V]` is the image of `g - I`. The total is `k(V ⋊ G)`.
pub fn orbit_sum_check(group: &MatrixGroup) -> OrbitSumReport {
    let f = group.field();
    let n = group.n();
    let decomposition = count_classes(group);
    let identity = Mat::identity(n);
    let vcount = super::matrix::vector_count(n, f);
    let vectors: Vec<_> = (0..vcount)
        .map(|c| super::matrix::decode_vector(c, n, f))
        .collect();
    let mut classes = Vec::with_capacity(decomposition.k());
    for (i, &rep) in decomposition.representatives.iter().enumerate() {
        let g = group.element(rep as usize);
        let d = g.sub(&identity, f);
        let image = Echelon::from_vectors(&(0..n).map(|j| d.column(j)).collect::<Vec<_>>(), n, f);
        let coset =
            |v: &super::matrix::Vector| super::matrix::encode_vector(&image.reduce(v, f), n, f);
        let centralizer: Vec<&Mat> = group
            .elements()
            .iter()
            .filter(|h| h.mul(g, f) == g.mul(h, f))
            .collect();
        let mut parent: Vec<u32> = (0..vcount as u32).collect();
        let mut is_rep = vec![false; vcount];
        for v in &vectors {
            is_rep[coset(v)] = true;
        }
        for h in &centralizer {
            for (c, v) in vectors.iter().enumerate() {
                if !is_rep[c] {
                    continue;
                }
                let hc = coset(&h.apply(v, f));
                let (a, b) = (
                    union_find_root(&mut parent, c),
                    union_find_root(&mut parent, hc),
                );
                if a != b {
                    parent[a.max(b)] = a.min(b) as u32;
                }
            }
        }
        let o = (0..vcount)
            .filter(|&c| is_rep[c] && union_find_root(&mut parent, c) == c)
            .count() as u64;
        debug_assert_eq!(
            centralizer.len() as u64,
            decomposition.centralizer_orders[i]
        );
        classes.push(ClassOrbit {
            representative: rep,
            class_size: decomposition.sizes[i],
            centralizer_order: centralizer.len() as u64,
            commutator_dim: image.rank(),
            o,
        });
    }
    let total = classes.iter().map(|c| c.o).sum();
    OrbitSumReport { classes, total }
}

/// Jordan partition at eigenvalue 1, from the ranks of `(g - I)^k`.
pub fn unipotent_partition(g: &Mat, group: &MatrixGroup) -> Partition {
    let f = group.field();
    let n = g.n();
    let d = g.sub(&Mat::identity(n), f);
    let mut ranks = vec![n];
    let mut power = Mat::identity(n);
    for _ in 0..=n {
        power = power.mul(&d, f);
        ranks.push(power.rank(f));
    }
    let mut mult = Vec::new();
    for k in 1..=n {
        let m = ranks[k - 1] + ranks[k + 1] - 2 * ranks[k];
        if m > 0 {
            mult.push((k as u32, m as u32));
        }
    }
    Partition::from_multiplicities(mult)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaRow {
    pub representative: u64,
    pub partition: String,
    pub measured: u64,
    pub predicted: String,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaReport {
    pub rows: Vec<FormulaRow>,
    pub total: u64,
}

impl FormulaReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agrees)
    }
}

/// Compares measured orbit counts with `d(λ) + 1` (GL) or `1 + q d(λ) - b(λ)` (GU).
pub fn formula_check_o(group: &MatrixGroup) -> Result<FormulaReport> {
    let family = group.spec().family;
    if !matches!(family, LinearFamily::GL | LinearFamily::GU) {
        return Err(Error::UnsupportedFamily(family.to_string()));
    }
    let report = orbit_sum_check(group);
    let q = Rat::from(group.q() as i64);
    let rows = report
        .classes
        .iter()
        .map(|c| {
            let lambda = unipotent_partition(group.element(c.representative as usize), group);
            let predicted = match family {
                LinearFamily::GL => Rat::from(o_gl(&lambda) as i64),
                _ => o_gu(&lambda, &q),
            };
            FormulaRow {
                representative: c.representative,
                partition: lambda.to_string(),
                measured: c.o,
                agrees: predicted == c.o as i64,
                predicted: predicted.to_string(),
            }
        })
        .collect();
    Ok(FormulaReport {
        rows,
        total: report.total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::affine::build_affine;
    use crate::oracle::group::{build_group, GroupSpec, DEFAULT_CAP};

    fn group(f: LinearFamily, n: usize, q: u64) -> MatrixGroup {
        build_group(GroupSpec::new(f, n, q), DEFAULT_CAP).unwrap()
    }

    fn affine_k(f: LinearFamily, n: usize, q: u64) -> usize {
        let a = build_affine(GroupSpec::new(f, n, q), DEFAULT_CAP).unwrap();
        let c = count_affine_classes(&a);
        assert!(c.check_class_equation());
        c.k()
    }

    #[test]
    fn linear_class_counts() {
        let sp = count_classes(&group(LinearFamily::Sp, 2, 3));
        assert_eq!(sp.k(), 7);
        assert!(sp.check_class_equation());
        assert_eq!(count_classes(&group(LinearFamily::GL, 2, 2)).k(), 3);
    }

    #[test]
    fn affine_class_counts() {
        assert_eq!(affine_k(LinearFamily::GL, 2, 2), 5);
        assert_eq!(affine_k(LinearFamily::SL, 2, 3), 10);
        assert_eq!(affine_k(LinearFamily::GL, 1, 5), 5);
        assert_eq!(affine_k(LinearFamily::GU, 1, 2), 4);
    }

    #[test]
    fn orbit_sums() {
        assert_eq!(orbit_sum_check(&group(LinearFamily::GL, 1, 3)).total, 3);
        assert_eq!(orbit_sum_check(&group(LinearFamily::Sp, 2, 3)).total, 10);
        assert_eq!(orbit_sum_check(&group(LinearFamily::GU, 1, 2)).total, 4);
    }

    #[test]
    fn unipotent_partitions() {
        let g = group(LinearFamily::GL, 3, 2);
        let id = Mat::identity(3);
        assert_eq!(
            unipotent_partition(&id, &g),
            Partition::from_parts(&[1, 1, 1])
        );
        let t = Mat::from_rows(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(unipotent_partition(&t, &g), Partition::from_parts(&[2, 1]));
        let g2 = group(LinearFamily::GL, 2, 3);
        let t2 = Mat::from_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(unipotent_partition(&t2, &g2), Partition::from_parts(&[2]));
    }

    #[test]
    fn orbit_formulas_gl_gu() {
        let gl = formula_check_o(&group(LinearFamily::GL, 2, 2)).unwrap();
        assert!(gl.all_agree());
        assert_eq!(gl.rows.len(), 3);
        assert_eq!(gl.total, 5);
        let gu = formula_check_o(&group(LinearFamily::GU, 2, 2)).unwrap();
        assert!(gu.all_agree(), "{gu:?}");
        assert!(formula_check_o(&group(LinearFamily::Sp, 2, 3)).is_err());
    }
}
