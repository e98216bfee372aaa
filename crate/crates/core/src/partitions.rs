//! Partitions, signed partitions and the per-class orbit counts built on them.
//!
//! Partitions are stored as multiplicity maps `i -> a_i` because every count
//! below is phrased in terms of the multiplicities and of signs attached to
//! part sizes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::{FactorFamily, Rat, Ring, TruncatedSeries};

/// A partition as a map from part size to multiplicity (all stored `a_i >= 1`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    mult: BTreeMap<u32, u32>,
    size: u32,
}

impl Partition {
    pub fn empty() -> Self {
        Partition::default()
    }

    /// Builds from a list of parts in any order; zero parts are ignored.
    pub fn from_parts(parts: &[u32]) -> Self {
        let mut mult = BTreeMap::new();
        for &p in parts.iter().filter(|&&p| p > 0) {
            *mult.entry(p).or_insert(0) += 1;
        }
        Partition::from_multiplicities(mult)
    }

    /// Builds from `(i, a_i)` pairs; pairs with `a_i = 0` are dropped.
    pub fn from_multiplicities(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut mult = BTreeMap::new();
        for (i, a) in pairs {
            assert!(i >= 1, "part sizes start at 1");
            if a > 0 {
                *mult.entry(i).or_insert(0) += a;
            }
        }
        let size = mult.iter().map(|(i, a)| i * a).sum();
        Partition { mult, size }
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// `a_i`, zero when `i` is not a part.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.mult.get(&i).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &BTreeMap<u32, u32> {
        &self.mult
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> Vec<u32> {
        self.mult
            .iter()
            .rev()
            .flat_map(|(&i, &a)| std::iter::repeat_n(i, a as usize))
            .collect()
    }

    /// Number of distinct part sizes.
    pub fn d(&self) -> u32 {
        self.mult.len() as u32
    }

    /// Number of part sizes occurring exactly once.
    pub fn b(&self) -> u32 {
        self.mult.values().filter(|&&a| a == 1).count() as u32
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exponential notation, largest part first: `(4^5, 2^3, 1^4)`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, (i, a)) in self.mult.iter().rev().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            if *a == 1 {
                write!(f, "{i}")?;
            } else {
                write!(f, "{i}^{a}")?;
            }
        }
        write!(f, ")")
    }
}

pub fn d_stat(lambda: &Partition) -> u32 {
    lambda.d()
}

pub fn b_stat(lambda: &Partition) -> u32 {
    lambda.b()
}

/// All partitions of `n`, ordered lexicographically by their non-increasing
/// part lists (so `(1,1,1) < (2,1) < (3)`).
pub fn enum_partitions(n: u32) -> Vec<Partition> {
    enum_restricted(n, |_, _| true)
}

/// Partitions of `n` whose multiplicities satisfy `ok(i, a_i)` for every part.
fn enum_restricted(n: u32, ok: impl Fn(u32, u32) -> bool) -> Vec<Partition> {
    // Choose multiplicities from the largest part size down, recording them
    // in a descending list; then sort the final lists.
    fn rec(
        remaining: u32,
        max_part: u32,
        acc: &mut Vec<(u32, u32)>,
        ok: &dyn Fn(u32, u32) -> bool,
        out: &mut Vec<Vec<(u32, u32)>>,
    ) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        if max_part == 0 {
            return;
        }
        for a in (0..=remaining / max_part).rev() {
            if a > 0 && !ok(max_part, a) {
                continue;
            }
            if a > 0 {
                acc.push((max_part, a));
            }
            rec(remaining - a * max_part, max_part - 1, acc, ok, out);
            if a > 0 {
                acc.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(n, n, &mut Vec::new(), &ok, &mut raw);
    let mut parts: Vec<Partition> = raw
        .into_iter()
        .map(Partition::from_multiplicities)
        .collect();
    parts.sort_by_key(|p| p.parts());
    parts
}

/// A two-valued sign label attached to a part size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Every sign map on `keys`, in lexicographic order with `+` before `-`.
fn sign_assignments(keys: &[u32]) -> Vec<BTreeMap<u32, Sign>> {
    let mut out = vec![BTreeMap::new()];
    for &k in keys {
        out = out
            .into_iter()
            .flat_map(|m| {
                [Sign::Plus, Sign::Minus].map(|s| {
                    let mut m = m.clone();
                    m.insert(k, s);
                    m
                })
            })
            .collect();
    }
    out
}

fn fmt_signed(
    p: &Partition,
    signs: &BTreeMap<u32, Sign>,
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    write!(f, "(")?;
    for (k, (i, a)) in p.multiplicities().iter().rev().enumerate() {
        if k > 0 {
            write!(f, ", ")?;
        }
        let sign = signs.get(i).map(Sign::to_string).unwrap_or_default();
        if *a == 1 {
            write!(f, "{i}{sign}")?;
        } else {
            write!(f, "{i}^{a}{sign}")?;
        }
    }
    write!(f, ")")
}

/// Label of a unipotent class of `Sp(2n, q)`, `q` odd: odd part sizes have
/// even multiplicity and each even part size carries a sign.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpSignedPartition {
    partition: Partition,
    signs: BTreeMap<u32, Sign>,
}

impl SpSignedPartition {
    pub fn new(partition: Partition, signs: BTreeMap<u32, Sign>) -> Result<Self> {
        for (&i, &a) in partition.multiplicities() {
            if i % 2 == 1 && a % 2 == 1 {
                return Err(Error::OutOfRange(format!(
                    "odd part {i} has odd multiplicity {a}"
                )));
            }
        }
        let keys: Vec<u32> = partition
            .multiplicities()
            .keys()
            .copied()
            .filter(|i| i % 2 == 0)
            .collect();
        if !signs.keys().copied().eq(keys.iter().copied()) {
            return Err(Error::OutOfRange(
                "signs must be keyed exactly by the even part sizes".into(),
            ));
        }
        Ok(SpSignedPartition { partition, signs })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn signs(&self) -> &BTreeMap<u32, Sign> {
        &self.signs
    }

    pub fn size(&self) -> u32 {
        self.partition.size()
    }
}

impl fmt::Debug for SpSignedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_signed(&self.partition, &self.signs, f)
    }
}

/// Label of a unipotent class of `O(n, q)`, `q` odd: even part sizes have
/// even multiplicity and each odd part size carries a sign.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OSignedPartition {
    partition: Partition,
    signs: BTreeMap<u32, Sign>,
}

impl OSignedPartition {
    pub fn new(partition: Partition, signs: BTreeMap<u32, Sign>) -> Result<Self> {
        for (&i, &a) in partition.multiplicities() {
            if i % 2 == 0 && a % 2 == 1 {
                return Err(Error::OutOfRange(format!(
                    "even part {i} has odd multiplicity {a}"
                )));
            }
        }
        let keys: Vec<u32> = partition
            .multiplicities()
            .keys()
            .copied()
            .filter(|i| i % 2 == 1)
            .collect();
        if !signs.keys().copied().eq(keys.iter().copied()) {
            return Err(Error::OutOfRange(
                "signs must be keyed exactly by the odd part sizes".into(),
            ));
        }
        Ok(OSignedPartition { partition, signs })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn signs(&self) -> &BTreeMap<u32, Sign> {
        &self.signs
    }

    pub fn size(&self) -> u32 {
        self.partition.size()
    }
}

impl fmt::Debug for OSignedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_signed(&self.partition, &self.signs, f)
    }
}

/// Signed partitions labelling unipotent classes of `Sp(total, q)`.
/// Empty when `total` is odd.
pub fn enum_sp_signed(total: u32) -> Vec<SpSignedPartition> {
    if total % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for p in enum_restricted(total, |i, a| i % 2 == 0 || a % 2 == 0) {
        let keys: Vec<u32> = p
            .multiplicities()
            .keys()
            .copied()
            .filter(|i| i % 2 == 0)
            .collect();
        for signs in sign_assignments(&keys) {
            out.push(SpSignedPartition {
                partition: p.clone(),
                signs,
            });
        }
    }
    out
}

/// Signed partitions labelling unipotent classes of `O^+(n, q)` and `O^-(n, q)`.
pub fn enum_o_signed(n: u32) -> Vec<OSignedPartition> {
    let mut out = Vec::new();
    for p in enum_restricted(n, |i, a| i % 2 == 1 || a % 2 == 0) {
        let keys: Vec<u32> = p
            .multiplicities()
            .keys()
            .copied()
            .filter(|i| i % 2 == 1)
            .collect();
        for signs in sign_assignments(&keys) {
            out.push(OSignedPartition {
                partition: p.clone(),
                signs,
            });
        }
    }
    out
}

/// Orbit count for a class of `GL(n, q)` whose unipotent part is `lambda`.
pub fn o_gl(lambda: &Partition) -> u32 {
    lambda.d() + 1
}

/// Orbit count for a class of `GU(n, q)`: `1 + q d(lambda) - b(lambda)`.
pub fn o_gu<R: Ring>(lambda: &Partition, q: &R) -> R {
    R::one()
        .plus(&q.times(&R::from_int(lambda.d() as i64)))
        .minus(&R::from_int(lambda.b() as i64))
}

fn require_odd_q<R: Ring>(q: &R) -> Result<()> {
    match q.as_rat() {
        Some(v) if !v.is_odd_integer() => Err(Error::EvenQ(v.to_string())),
        _ => Ok(()),
    }
}

/// Orbit contribution of a signed part size with multiplicity `a`.
pub fn sp_f<R: Ring>(a: u32, sign: Sign, q: &R) -> R {
    match (a, sign) {
        (0, _) => R::zero(),
        (1, _) => q.minus(&R::one()).scale(&Rat::new(1, 2)),
        (2, Sign::Minus) => q.minus(&R::one()),
        _ => q.clone(),
    }
}

/// Orbit count for a class of `Sp(2n, q)`, `q` odd, with unipotent label `lambda`.
pub fn o_sp<R: Ring>(lambda: &SpSignedPartition, q: &R) -> Result<R> {
    require_odd_q(q)?;
    let mut total = R::one();
    for (&i, &a) in lambda.partition.multiplicities() {
        if i % 2 == 1 {
            total = total.plus(&R::one());
        } else {
            total = total.plus(&sp_f(a, lambda.signs[&i], q));
        }
    }
    Ok(total)
}

/// Orbit count for a class of `O^±(n, q)`, `q` odd, with unipotent label `lambda`.
pub fn o_orth<R: Ring>(lambda: &OSignedPartition, q: &R) -> Result<R> {
    require_odd_q(q)?;
    let mut total = R::one();
    for (&i, &a) in lambda.partition.multiplicities() {
        if i % 2 == 0 {
            total = total.plus(&R::one());
        } else {
            total = total.plus(&sp_f(a, lambda.signs[&i], q));
        }
    }
    Ok(total)
}

/// The partition identities checked by brute-force summation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// `sum (d(l)+1) u^|l| = 1/(1-u) prod 1/(1-u^i)`.
    Distinct,
    /// `sum u^|l| = prod 1/(1-u^i)`.
    UnitaryCount,
    /// `sum d(l) u^|l| = u/(1-u) prod 1/(1-u^i)`.
    UnitaryD,
    /// `sum b(l) u^|l| = u/(1-u^2) prod 1/(1-u^i)`.
    UnitaryB,
    /// Number of symplectic signed partitions, weighted by `u^{|l|/2}`.
    SpCount,
    /// Symplectic signed partitions weighted by the number of odd part sizes.
    SpOddSupport,
    /// Symplectic signed partitions weighted by the sum of `f_i` over even part sizes.
    SpF,
    /// Number of orthogonal signed partitions.
    OCount,
    /// Orthogonal signed partitions weighted by the number of even part sizes.
    OEvenSupport,
    /// Orthogonal signed partitions weighted by the sum of `f_i` over odd part sizes.
    OF,
}

impl Identity {
    pub const ALL: [Identity; 10] = [
        Identity::Distinct,
        Identity::UnitaryCount,
        Identity::UnitaryD,
        Identity::UnitaryB,
        Identity::SpCount,
        Identity::SpOddSupport,
        Identity::SpF,
        Identity::OCount,
        Identity::OEvenSupport,
        Identity::OF,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Identity::Distinct => "distinct",
            Identity::UnitaryCount => "unitary-count",
            Identity::UnitaryD => "unitary-d",
            Identity::UnitaryB => "unitary-b",
            Identity::SpCount => "sp-count",
            Identity::SpOddSupport => "sp-odd-support",
            Identity::SpF => "sp-f",
            Identity::OCount => "o-count",
            Identity::OEvenSupport => "o-even-support",
            Identity::OF => "o-f",
        }
    }

    /// Whether the left side sums over signed partitions.
    pub fn is_signed(self) -> bool {
        !matches!(
            self,
            Identity::Distinct | Identity::UnitaryCount | Identity::UnitaryD | Identity::UnitaryB
        )
    }

    /// Whether the weights involve `q`.
    pub fn uses_q(self) -> bool {
        matches!(self, Identity::SpF | Identity::OF)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.id() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

/// Left side of `id` by direct enumeration: the coefficients of `u^0..=u^n_max`.
///
/// `q` is only consulted by the `f_i`-weighted identities.
pub fn identity_sum<R: Ring>(id: Identity, q: &R, n_max: u32) -> Result<Vec<R>> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let c = match id {
            Identity::Distinct => count_int(enum_partitions(n).iter().map(|l| l.d() + 1)),
            Identity::UnitaryCount => count_int(enum_partitions(n).iter().map(|_| 1)),
            Identity::UnitaryD => count_int(enum_partitions(n).iter().map(Partition::d)),
            Identity::UnitaryB => count_int(enum_partitions(n).iter().map(Partition::b)),
            Identity::SpCount => count_int(enum_sp_signed(2 * n).iter().map(|_| 1)),
            Identity::SpOddSupport => count_int(enum_sp_signed(2 * n).iter().map(|l| {
                l.partition
                    .multiplicities()
                    .keys()
                    .filter(|i| *i % 2 == 1)
                    .count() as u32
            })),
            Identity::SpF => {
                require_odd_q(q)?;
                let mut acc = R::zero();
                for l in enum_sp_signed(2 * n) {
                    for (&i, &a) in l.partition.multiplicities() {
                        if i % 2 == 0 {
                            acc = acc.plus(&sp_f(a, l.signs[&i], q));
                        }
                    }
                }
                acc
            }
            Identity::OCount => count_int(enum_o_signed(n).iter().map(|_| 1)),
            Identity::OEvenSupport => count_int(enum_o_signed(n).iter().map(|l| {
                l.partition
                    .multiplicities()
                    .keys()
                    .filter(|i| *i % 2 == 0)
                    .count() as u32
            })),
            Identity::OF => {
                require_odd_q(q)?;
                let mut acc = R::zero();
                for l in enum_o_signed(n) {
                    for (&i, &a) in l.partition.multiplicities() {
                        if i % 2 == 1 {
                            acc = acc.plus(&sp_f(a, l.signs[&i], q));
                        }
                    }
                }
                acc
            }
        };
        out.push(c);
    }
    Ok(out)
}

fn count_int<R: Ring>(weights: impl Iterator<Item = u32>) -> R {
    R::from_int(weights.map(i64::from).sum())
}

/// Right side of `id` as a closed-form product, truncated at `order`.
pub fn identity_closed_form<R: Ring>(id: Identity, q: &R, order: usize) -> TruncatedSeries<R> {
    let one = || R::one();
    let neg = || R::from_int(-1);
    let euler_inv = FactorFamily::linear(neg(), 1, 0, -1);
    // prod_{i odd} 1/(1-u^i) prod_i (1+u^i)/(1-u^i)
    let sp_base = || {
        TruncatedSeries::product(
            &[
                FactorFamily::linear(neg(), 2, -1, -1),
                FactorFamily::linear(one(), 1, 0, 1),
                FactorFamily::linear(neg(), 1, 0, -1),
            ],
            order,
        )
    };
    // prod_i 1/(1-u^{4i}) prod_{i odd} (1+u^i)/(1-u^i)
    let o_base = || {
        TruncatedSeries::product(
            &[
                FactorFamily::linear(neg(), 4, 0, -1),
                FactorFamily::linear(one(), 2, -1, 1),
                FactorFamily::linear(neg(), 2, -1, -1),
            ],
            order,
        )
    };
    let partitions = || TruncatedSeries::product(std::slice::from_ref(&euler_inv), order);
    let geo = |k: usize| TruncatedSeries::geometric(one(), k, order);
    let q_minus_one = q.minus(&one());
    match id {
        Identity::Distinct => partitions().mul(&geo(1)),
        Identity::UnitaryCount => partitions(),
        Identity::UnitaryD => partitions().mul(&geo(1).shift(1)),
        Identity::UnitaryB => partitions().mul(&geo(2).shift(1)),
        Identity::SpCount => sp_base(),
        Identity::SpOddSupport => sp_base().mul(&geo(2).shift(1)),
        Identity::SpF => {
            let pre = geo(1).shift(1).scale(&q_minus_one).add(&geo(2).shift(2));
            sp_base().mul(&pre)
        }
        Identity::OCount => o_base(),
        Identity::OEvenSupport => o_base().mul(&geo(4).shift(4)),
        Identity::OF => {
            let pre = geo(2).shift(1).scale(&q_minus_one).add(&geo(4).shift(2));
            o_base().mul(&pre)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::QPoly;

    fn r(n: i64) -> Rat {
        Rat::from(n)
    }

    #[test]
    fn enumeration_basics() {
        assert_eq!(enum_partitions(0), vec![Partition::empty()]);
        let p3: Vec<Vec<u32>> = enum_partitions(3).iter().map(Partition::parts).collect();
        assert_eq!(p3, vec![vec![1, 1, 1], vec![2, 1], vec![3]]);
        assert_eq!(enum_partitions(10).len(), 42);
    }

    #[test]
    fn signed_counts_small() {
        // Sp(2): (1,1), (2+), (2-)
        let sp = enum_sp_signed(2);
        assert_eq!(sp.len(), 3);
        assert_eq!(format!("{:?}", sp[1]), "(2+)");
        assert!(enum_sp_signed(3).is_empty());
        assert_eq!(enum_o_signed(1).len(), 2);
        // O(2): (1^2)±, (1+,?) impossible, so (1^2)+, (1^2)-
        assert_eq!(enum_o_signed(2).len(), 2);
    }

    #[test]
    fn statistics() {
        let l = Partition::from_multiplicities([(4, 5), (2, 3), (1, 4)]);
        assert_eq!(d_stat(&l), 3);
        assert_eq!(o_gl(&l), 4);
        assert_eq!(l.to_string(), "(4^5, 2^3, 1^4)");
        assert_eq!(
            (d_stat(&Partition::empty()), b_stat(&Partition::empty())),
            (0, 0)
        );
        let l = Partition::from_parts(&[3, 2, 2, 1]);
        assert_eq!((l.d(), l.b()), (3, 2));
        assert_eq!(o_gl(&Partition::empty()), 1);
        assert_eq!(o_gl(&Partition::from_parts(&[1, 1, 1])), 2);
    }

    #[test]
    fn unitary_orbits() {
        let q = QPoly::q();
        assert_eq!(o_gu(&Partition::empty(), &q), QPoly::one());
        assert_eq!(o_gu(&Partition::from_parts(&[1]), &q), q);
        assert_eq!(
            o_gu(&Partition::from_parts(&[2, 2]), &q),
            QPoly::from_ints(&[1, 1])
        );
    }

    #[test]
    fn symplectic_orbits() {
        let ones = SpSignedPartition::new(Partition::from_parts(&[1, 1]), BTreeMap::new()).unwrap();
        assert_eq!(o_sp(&ones, &r(3)).unwrap(), r(2));
        let two = SpSignedPartition::new(
            Partition::from_parts(&[2]),
            BTreeMap::from([(2, Sign::Minus)]),
        )
        .unwrap();
        assert_eq!(o_sp(&two, &r(5)).unwrap(), r(3));
        let twotwo = SpSignedPartition::new(
            Partition::from_parts(&[2, 2]),
            BTreeMap::from([(2, Sign::Minus)]),
        )
        .unwrap();
        assert_eq!(o_sp(&twotwo, &r(3)).unwrap(), r(3));
        assert_eq!(o_sp(&ones, &r(4)), Err(Error::EvenQ("4".into())));
        assert!(SpSignedPartition::new(Partition::from_parts(&[1]), BTreeMap::new()).is_err());
        assert!(SpSignedPartition::new(Partition::from_parts(&[2]), BTreeMap::new()).is_err());
    }

    #[test]
    fn orthogonal_orbits() {
        let one = OSignedPartition::new(
            Partition::from_parts(&[1]),
            BTreeMap::from([(1, Sign::Plus)]),
        )
        .unwrap();
        assert_eq!(o_orth(&one, &r(3)).unwrap(), r(2));
        let twotwo =
            OSignedPartition::new(Partition::from_parts(&[2, 2]), BTreeMap::new()).unwrap();
        assert_eq!(o_orth(&twotwo, &r(3)).unwrap(), r(2));
        let ones = OSignedPartition::new(
            Partition::from_parts(&[1, 1]),
            BTreeMap::from([(1, Sign::Plus)]),
        )
        .unwrap();
        assert_eq!(o_orth(&ones, &r(3)).unwrap(), r(4));
        assert!(o_orth(&ones, &r(2)).is_err());
        // symbolic q keeps (q-1)/2 exact
        let half = o_orth(&one, &QPoly::q()).unwrap();
        assert_eq!(half.to_string(), "(1/2)q + 1/2");
    }

    #[test]
    fn identity_sum_examples() {
        let q = QPoly::q();
        let d = identity_sum(Identity::Distinct, &q, 2).unwrap();
        assert_eq!(d[2], QPoly::from_ints(&[4]));
        let b = identity_sum(Identity::UnitaryB, &q, 1).unwrap();
        assert_eq!(b[1], QPoly::one());
        let e = identity_sum(Identity::OEvenSupport, &q, 3).unwrap();
        assert!(e.iter().all(QPoly::is_zero));
        assert_eq!(
            "nope".parse::<Identity>(),
            Err(Error::UnknownIdentity("nope".into()))
        );
        assert_eq!("o-f".parse::<Identity>(), Ok(Identity::OF));
    }

    #[test]
    fn identities_low_order() {
        let q = QPoly::q();
        for id in Identity::ALL {
            let lhs = identity_sum(id, &q, 8).unwrap();
            let rhs = identity_closed_form(id, &q, 8);
            assert_eq!(lhs.as_slice(), rhs.coeffs(), "{id}");
        }
    }
}
