//! Classical matrix groups as explicit, sorted element lists.
//!
//! Every group is the full set of matrices preserving a fixed form (plus a
//! determinant filter for `SL`/`SU`). The sets are enumerated column by
//! column: once the first `j` columns are chosen, column `j` must satisfy the
//! form conditions against them. Forms:
//!
//! * symplectic: antidiagonal Gram matrix with `+1` above the antidiagonal
//!   midpoint and `-1` below;
//! * unitary: identity hermitian Gram matrix over `F_{q^2}`, `x̄ = x^q`;
//! * orthogonal, odd `q`: diagonal Gram `I` or `diag(1, .., 1, ν)` with `ν` the
//!   first non-square; the type is read off by comparing the group order with
//!   the `O^+`/`O^-` order formulas;
//! * orthogonal, even `q`: `x1 x2 + x3 x4 + ..`, with the last pair replaced by
//!   `x² + xy + αy²` for `O^-` (`t² + t + α` irreducible).

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::FiniteField;
use super::matrix::{decode_vector, vector_count, Echelon, Mat, Vector, MAX_DIM};
use crate::classcount::prime_power;
use crate::error::{Error, Result};

/// Default bound on the number of group elements the oracle will enumerate.
pub const DEFAULT_CAP: u128 = 2_000_000;

const GENERATOR_SEED: u64 = 0x5eed_0f_c1a55e5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinearFamily {
    GL,
    SL,
    GU,
    SU,
    Sp,
    OPlus,
    OMinus,
    /// Odd-dimensional orthogonal group, odd `q`.
    OOdd,
}

impl LinearFamily {
    pub const ALL: [LinearFamily; 8] = [
        LinearFamily::GL,
        LinearFamily::SL,
        LinearFamily::GU,
        LinearFamily::SU,
        LinearFamily::Sp,
        LinearFamily::OPlus,
        LinearFamily::OMinus,
        LinearFamily::OOdd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LinearFamily::GL => "gl",
            LinearFamily::SL => "sl",
            LinearFamily::GU => "gu",
            LinearFamily::SU => "su",
            LinearFamily::Sp => "sp",
            LinearFamily::OPlus => "o-plus",
            LinearFamily::OMinus => "o-minus",
            LinearFamily::OOdd => "o-odd",
        }
    }

    pub fn is_unitary(self) -> bool {
        matches!(self, LinearFamily::GU | LinearFamily::SU)
    }
}

impl fmt::Display for LinearFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LinearFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LinearFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Family, dimension of the natural module and `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: LinearFamily,
    pub n: usize,
    pub q: u64,
}

impl GroupSpec {
    pub fn new(family: LinearFamily, n: usize, q: u64) -> Self {
        GroupSpec { family, n, q }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({},{})",
            self.family.name().to_uppercase(),
            self.n,
            self.q
        )
    }
}

/// The form a group preserves.
#[derive(Debug, Clone)]
pub enum Form {
    None,
    /// `A^T G A = G`.
    Bilinear(Mat),
    /// `A^* G A = G` with `A^*` the conjugate transpose.
    Hermitian(Mat),
    /// `Q(Ax) = Q(x)` with `Q(x) = x^T U x`, `U` upper triangular.
    Quadratic(Mat),
}

impl Form {
    pub fn describe(&self) -> String {
        match self {
            Form::None => "none".into(),
            Form::Bilinear(g) => format!("bilinear Gram {g:?}"),
            Form::Hermitian(g) => format!("hermitian Gram {g:?}"),
            Form::Quadratic(u) => format!("quadratic form x^T U x, U = {u:?}"),
        }
    }
}

pub fn expected_order(spec: GroupSpec) -> Option<u128> {
    let q = spec.q as u128;
    let n = spec.n as u32;
    let prod = |range: std::ops::RangeInclusive<u32>, f: &dyn Fn(u32) -> i128| -> i128 {
        range.map(f).product()
    };
    let qi = q as i128;
    let v: i128 = match spec.family {
        LinearFamily::GL | LinearFamily::SL => {
            let gl = prod(0..=n.saturating_sub(1), &|i| qi.pow(n) - qi.pow(i));
            if spec.family == LinearFamily::SL {
                gl / (qi - 1)
            } else {
                gl
            }
        }
        LinearFamily::GU | LinearFamily::SU => {
            let gu = qi.pow(n * n.saturating_sub(1) / 2)
                * prod(1..=n, &|i| qi.pow(i) - if i % 2 == 0 { 1 } else { -1 });
            if spec.family == LinearFamily::SU {
                gu / (qi + 1)
            } else {
                gu
            }
        }
        LinearFamily::Sp => {
            if n % 2 == 1 {
                return None;
            }
            let m = n / 2;
            qi.pow(m * m) * prod(1..=m, &|i| qi.pow(2 * i) - 1)
        }
        LinearFamily::OPlus | LinearFamily::OMinus => {
            if n % 2 == 1 || n == 0 {
                return None;
            }
            let m = n / 2;
            let sign = if spec.family == LinearFamily::OPlus {
                -1
            } else {
                1
            };
            2 * qi.pow(m * (m - 1)) * (qi.pow(m) + sign) * prod(1..=m - 1, &|i| qi.pow(2 * i) - 1)
        }
        LinearFamily::OOdd => {
            if n.is_multiple_of(2) || q.is_multiple_of(2) {
                return None;
            }
            let m = n / 2;
            2 * qi.pow(m * m) * prod(1..=m, &|i| qi.pow(2 * i) - 1)
        }
    };
    Some(v as u128)
}

/// Field the matrix entries live in: `F_{q^2}` for unitary groups.
pub fn entry_field(spec: GroupSpec) -> Result<FiniteField> {
    if spec.family.is_unitary() {
        let (_, k) = prime_power(spec.q).ok_or(Error::NotPrimePower(spec.q.to_string()))?;
        if k != 1 {
            return Err(Error::UnsupportedField(spec.q * spec.q));
        }
        FiniteField::new(spec.q * spec.q)
    } else {
        FiniteField::new(spec.q)
    }
}

/// An explicit matrix group, elements sorted by canonical encoding.
#[derive(Clone)]
pub struct MatrixGroup {
    spec: GroupSpec,
    field: FiniteField,
    form: Form,
    elements: Vec<Mat>,
    codes: Vec<u64>,
    generators: Vec<usize>,
}

impl MatrixGroup {
    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn q(&self) -> u64 {
        self.spec.q
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Mat {
        &self.elements[i]
    }

    pub fn code(&self, i: usize) -> u64 {
        self.codes[i]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        self.codes.binary_search(&m.encode(&self.field)).ok()
    }

    pub fn identity_index(&self) -> usize {
        self.index_of(&Mat::identity(self.n()))
            .expect("identity is an element")
    }

    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].mul(&self.elements[b], &self.field);
        self.index_of(&m).expect("group is closed")
    }

    pub fn inverse_index(&self, a: usize) -> usize {
        let m = self.elements[a].inverse(&self.field).expect("invertible");
        self.index_of(&m).expect("group has inverses")
    }

    pub fn preserves_form(&self, m: &Mat) -> bool {
        preserves(&self.form, m, &self.field)
    }

    /// Checks the group axioms and form preservation.
    ///
    /// Identity, inverses and the form are checked on every element. Closure
    /// is checked as `S * gens ⊆ S` together with `|<gens>| = |S|`.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Inconsistent(format!("{}: {what}", self.spec)));
        if self.index_of(&Mat::identity(self.n())).is_none() {
            return fail("identity missing");
        }
        for m in &self.elements {
            if !self.preserves_form(m) {
                return fail("element does not preserve the form");
            }
            match m.inverse(&self.field) {
                Some(inv) if self.index_of(&inv).is_some() => {}
                _ => return fail("inverse missing"),
            }
            for &g in &self.generators {
                if self
                    .index_of(&m.mul(&self.elements[g], &self.field))
                    .is_none()
                {
                    return fail("not closed under generators");
                }
            }
        }
        if generated_order(self, &self.generators) != self.order() {
            return fail("generators do not generate");
        }
        if let Some(expected) = expected_order(self.spec) {
            if expected != self.order() as u128 {
                return fail("order formula mismatch");
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixGroup")
            .field("spec", &self.spec)
            .field("field", &self.field)
            .field("order", &self.order())
            .field("generators", &self.generators.len())
            .finish()
    }
}

fn form_value(form: &Form, x: &Vector, y: &Vector, f: &FiniteField) -> u8 {
    match form {
        Form::None => 0,
        Form::Bilinear(g) => {
            let gy = g.apply(y, f);
            (0..g.n()).fold(0, |acc, i| f.add(acc, f.mul(x[i], gy[i])))
        }
        Form::Hermitian(g) => {
            let gy = g.apply(y, f);
            (0..g.n()).fold(0, |acc, i| f.add(acc, f.mul(f.frob(x[i]), gy[i])))
        }
        Form::Quadratic(u) => {
            // polar form x^T (U + U^T) y
            let n = u.n();
            let mut acc = 0;
            for i in 0..n {
                for j in 0..n {
                    let c = f.add(u.get(i, j), u.get(j, i));
                    if c != 0 {
                        acc = f.add(acc, f.mul(c, f.mul(x[i], y[j])));
                    }
                }
            }
            acc
        }
    }
}

fn quadratic_value(u: &Mat, x: &Vector, f: &FiniteField) -> u8 {
    let n = u.n();
    let mut acc = 0;
    for i in 0..n {
        for j in i..n {
            let c = u.get(i, j);
            if c != 0 {
                acc = f.add(acc, f.mul(c, f.mul(x[i], x[j])));
            }
        }
    }
    acc
}

fn unit(i: usize) -> Vector {
    let mut v = [0; MAX_DIM];
    v[i] = 1;
    v
}

/// Whether column `c` may follow the columns `prev` (as column `prev.len()`).
fn column_ok(form: &Form, prev: &[Vector], c: &Vector, f: &FiniteField) -> bool {
    let j = prev.len();
    let ej = unit(j);
    if let Form::Quadratic(u) = form {
        if quadratic_value(u, c, f) != quadratic_value(u, &ej, f) {
            return false;
        }
    } else if form_value(form, c, c, f) != form_value(form, &ej, &ej, f) {
        return false;
    }
    prev.iter().enumerate().all(|(i, p)| {
        let ei = unit(i);
        form_value(form, p, c, f) == form_value(form, &ei, &ej, f)
            && form_value(form, c, p, f) == form_value(form, &ej, &ei, f)
    })
}

fn preserves(form: &Form, m: &Mat, f: &FiniteField) -> bool {
    let cols: Vec<Vector> = (0..m.n()).map(|j| m.column(j)).collect();
    if matches!(form, Form::None) {
        return m.det(f) != 0;
    }
    (0..cols.len()).all(|j| column_ok(form, &cols[..j], &cols[j], f))
}

/// All invertible matrices preserving `form`, in canonical order.
fn enumerate(n: usize, form: &Form, f: &FiniteField, cap: u128) -> Result<Vec<Mat>> {
    let candidates: Vec<Vector> = (1..vector_count(n, f))
        .map(|c| decode_vector(c, n, f))
        .collect();
    let mut out = Vec::new();
    let mut cols: Vec<Vector> = Vec::with_capacity(n);
    let mut spans: Vec<Echelon> = vec![Echelon::new(n)];
    fn rec(
        n: usize,
        form: &Form,
        f: &FiniteField,
        cap: u128,
        candidates: &[Vector],
        cols: &mut Vec<Vector>,
        spans: &mut Vec<Echelon>,
        out: &mut Vec<Mat>,
    ) -> Result<()> {
        if cols.len() == n {
            if out.len() as u128 >= cap {
                return Err(Error::CapExceeded {
                    required: out.len() as u128 + 1,
                    cap,
                });
            }
            out.push(Mat::from_columns(cols, n));
            return Ok(());
        }
        for c in candidates {
            let span = spans.last().expect("span stack");
            if span.contains(c, f) || !column_ok(form, cols, c, f) {
                continue;
            }
            let mut next = span.clone();
            next.insert(c, f);
            spans.push(next);
            cols.push(*c);
            rec(n, form, f, cap, candidates, cols, spans, out)?;
            cols.pop();
            spans.pop();
        }
        Ok(())
    }
    rec(
        n,
        form,
        f,
        cap,
        &candidates,
        &mut cols,
        &mut spans,
        &mut out,
    )?;
    Ok(out)
}

fn symplectic_gram(n: usize, f: &FiniteField) -> Mat {
    let mut g = Mat::zero(n);
    for i in 0..n {
        let v = if i < n / 2 { 1 } else { f.neg(1) };
        g.set(i, n - 1 - i, v);
    }
    g
}

fn orthogonal_forms(spec: GroupSpec, f: &FiniteField) -> Result<Vec<Form>> {
    let n = spec.n;
    if spec.q % 2 == 1 {
        let identity = Form::Bilinear(Mat::identity(n));
        if spec.family == LinearFamily::OOdd {
            return Ok(vec![identity]);
        }
        let nu = f
            .elements()
            .find(|&x| !f.is_square(x))
            .expect("non-square exists");
        let mut twisted = Mat::identity(n);
        twisted.set(n - 1, n - 1, nu);
        return Ok(vec![identity, Form::Bilinear(twisted)]);
    }
    let mut u = Mat::zero(n);
    for k in 0..n / 2 {
        u.set(2 * k, 2 * k + 1, 1);
    }
    if spec.family == LinearFamily::OMinus {
        let alpha = f
            .elements()
            .find(|&a| f.elements().all(|x| f.add(f.add(f.mul(x, x), x), a) != 0))
            .expect("irreducible t^2 + t + a exists");
        u.set(n - 2, n - 2, 1);
        u.set(n - 1, n - 1, alpha);
    }
    Ok(vec![Form::Quadratic(u)])
}

/// Enumerates the group named by `spec`, refusing to list more than `cap` elements.
pub fn build_group(spec: GroupSpec, cap: u128) -> Result<MatrixGroup> {
    let n = spec.n;
    if n == 0 || n > MAX_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    let field = entry_field(spec)?;
    let fam = spec.family;
    match fam {
        LinearFamily::Sp if n % 2 == 1 => {
            return Err(Error::NoSuchForm(format!(
                "alternating form in odd dimension {n}"
            )))
        }
        LinearFamily::OPlus | LinearFamily::OMinus if n % 2 == 1 => {
            return Err(Error::NoSuchForm(format!("{fam} in odd dimension {n}")))
        }
        LinearFamily::OOdd if n.is_multiple_of(2) => {
            return Err(Error::NoSuchForm(format!("{fam} in even dimension {n}")))
        }
        LinearFamily::OOdd if spec.q.is_multiple_of(2) => {
            return Err(Error::NoSuchForm(
                "odd-dimensional orthogonal group in characteristic 2".into(),
            ))
        }
        _ => {}
    }
    if let Some(expected) = expected_order(spec) {
        if expected > cap {
            return Err(Error::CapExceeded {
                required: expected,
                cap,
            });
        }
    }
    let forms = match fam {
        LinearFamily::GL | LinearFamily::SL => vec![Form::None],
        LinearFamily::GU | LinearFamily::SU => vec![Form::Hermitian(Mat::identity(n))],
        LinearFamily::Sp => vec![Form::Bilinear(symplectic_gram(n, &field))],
        _ => orthogonal_forms(spec, &field)?,
    };
    let expected = expected_order(spec);
    let mut chosen = None;
    for form in forms {
        // GL-type enumeration ignores the determinant; SL/SU filter afterwards.
        let enum_cap = if matches!(fam, LinearFamily::SL | LinearFamily::SU) {
            cap.saturating_mul(spec.q as u128 + 1)
        } else {
            cap
        };
        let mut els = enumerate(n, &form, &field, enum_cap)?;
        if matches!(fam, LinearFamily::SL | LinearFamily::SU) {
            els.retain(|m| m.det(&field) == 1);
        }
        if expected.is_none_or(|e| e == els.len() as u128) {
            chosen = Some((form, els));
            break;
        }
    }
    let (form, elements) = chosen
        .ok_or_else(|| Error::Inconsistent(format!("{spec}: no form with the expected order")))?;
    let mut pairs: Vec<(u64, Mat)> = elements
        .into_iter()
        .map(|m| (m.encode(&field), m))
        .collect();
    pairs.sort_unstable_by_key(|p| p.0);
    let (codes, elements): (Vec<u64>, Vec<Mat>) = pairs.into_iter().unzip();
    let mut group = MatrixGroup {
        spec,
        field,
        form,
        elements,
        codes,
        generators: Vec::new(),
    };
    group.generators = find_generators(&group);
    Ok(group)
}

/// Order of the subgroup generated by `gens`.
fn generated_order(g: &MatrixGroup, gens: &[usize]) -> usize {
    let mut seen = vec![false; g.order()];
    let id = g.identity_index();
    seen[id] = true;
    let mut stack = vec![id];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.mul_index(x, s);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}

/// Adds seeded random elements until they generate the whole group.
fn find_generators(g: &MatrixGroup) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(GENERATOR_SEED);
    let all: Vec<usize> = (0..g.order()).collect();
    let mut gens: Vec<usize> = Vec::new();
    let mut size = 1;
    while size < g.order() {
        let cand = *all.choose(&mut rng).expect("nonempty group");
        if gens.contains(&cand) {
            continue;
        }
        gens.push(cand);
        let new_size = generated_order(g, &gens);
        if new_size == size {
            gens.pop();
        } else {
            size = new_size;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(f: LinearFamily, n: usize, q: u64) -> usize {
        let g = build_group(GroupSpec::new(f, n, q), DEFAULT_CAP).unwrap();
        g.verify().unwrap();
        g.order()
    }

    #[test]
    fn orders_match_formulas() {
        assert_eq!(order(LinearFamily::GL, 2, 2), 6);
        assert_eq!(order(LinearFamily::Sp, 2, 3), 24);
        assert_eq!(order(LinearFamily::SL, 2, 3), 24);
        assert_eq!(order(LinearFamily::GU, 1, 2), 3);
        assert_eq!(order(LinearFamily::GU, 2, 2), 18);
        assert_eq!(order(LinearFamily::SU, 2, 3), 24);
        assert_eq!(order(LinearFamily::OPlus, 2, 3), 4);
        assert_eq!(order(LinearFamily::OMinus, 2, 3), 8);
        assert_eq!(order(LinearFamily::OPlus, 2, 2), 2);
        assert_eq!(order(LinearFamily::OMinus, 2, 2), 6);
        assert_eq!(order(LinearFamily::OOdd, 3, 3), 48);
        assert_eq!(order(LinearFamily::OOdd, 1, 5), 2);
        assert_eq!(order(LinearFamily::OMinus, 4, 2), 120);
        assert_eq!(order(LinearFamily::Sp, 4, 2), 720);
        assert_eq!(order(LinearFamily::GL, 2, 4), 180);
    }

    #[test]
    fn invalid_specs() {
        let b = |f, n, q| build_group(GroupSpec::new(f, n, q), DEFAULT_CAP);
        assert!(matches!(
            b(LinearFamily::OMinus, 0, 3),
            Err(Error::UnsupportedDimension(0))
        ));
        assert!(matches!(
            b(LinearFamily::Sp, 3, 3),
            Err(Error::NoSuchForm(_))
        ));
        assert!(matches!(
            b(LinearFamily::GL, 4, 3),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            b(LinearFamily::GU, 2, 4),
            Err(Error::UnsupportedField(16))
        ));
    }
}
