//! Generating functions and recursions for class numbers.
//!
//! Every function is generic over the coefficient [`Ring`]: pass `Rat` for a
//! concrete prime power `q`, or `QPoly::q()` to work with `q` as a formal
//! symbol. Sequences are indexed by `n`; the dimension attached to `n`
//! depends on the family (see [`FamilyKey::dimension`]).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{identity_closed_form, identity_sum, Identity};
use crate::series::{binomial_power, FactorFamily, QPoly, Rat, Ring, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    GL,
    GU,
    Sp,
    /// `k(O^+) + k(O^-)`.
    OSum,
    /// `k(O^+) - k(O^-)`.
    ODiff,
    OPlus,
    OMinus,
    AGL,
    AGU,
    ASp,
    AOSum,
    AODiff,
    AOPlus,
    AOMinus,
    BSp,
}

impl Family {
    pub const ALL: [Family; 15] = [
        Family::GL,
        Family::GU,
        Family::Sp,
        Family::OSum,
        Family::ODiff,
        Family::OPlus,
        Family::OMinus,
        Family::AGL,
        Family::AGU,
        Family::ASp,
        Family::AOSum,
        Family::AODiff,
        Family::AOPlus,
        Family::AOMinus,
        Family::BSp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::GL => "gl",
            Family::GU => "gu",
            Family::Sp => "sp",
            Family::OSum => "o-sum",
            Family::ODiff => "o-diff",
            Family::OPlus => "o-plus",
            Family::OMinus => "o-minus",
            Family::AGL => "agl",
            Family::AGU => "agu",
            Family::ASp => "asp",
            Family::AOSum => "ao-sum",
            Family::AODiff => "ao-diff",
            Family::AOPlus => "ao-plus",
            Family::AOMinus => "ao-minus",
            Family::BSp => "bsp",
        }
    }

    pub fn is_affine(self) -> bool {
        matches!(
            self,
            Family::AGL
                | Family::AGU
                | Family::ASp
                | Family::AOSum
                | Family::AODiff
                | Family::AOPlus
                | Family::AOMinus
                | Family::BSp
        )
    }

    pub fn is_orthogonal(self) -> bool {
        matches!(
            self,
            Family::OSum
                | Family::ODiff
                | Family::OPlus
                | Family::OMinus
                | Family::AOSum
                | Family::AODiff
                | Family::AOPlus
                | Family::AOMinus
        )
    }

    /// Whether the family only makes sense in one characteristic.
    pub fn needs_characteristic(self) -> bool {
        !matches!(self, Family::GL | Family::GU | Family::AGL | Family::AGU)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Characteristic {
    Odd,
    Even,
}

impl Characteristic {
    pub fn of(q: u64) -> Self {
        if q.is_multiple_of(2) {
            Characteristic::Even
        } else {
            Characteristic::Odd
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Characteristic::Odd => "odd",
            Characteristic::Even => "even",
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Characteristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(Characteristic::Odd),
            "even" => Ok(Characteristic::Even),
            _ => Err(Error::OutOfRange(format!("characteristic `{s}`"))),
        }
    }
}

/// How the series index `n` maps to the dimension of the natural module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexConvention {
    DimN,
    Dim2N,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyKey {
    pub family: Family,
    pub characteristic: Characteristic,
}

impl FamilyKey {
    pub fn new(family: Family, characteristic: Characteristic) -> Self {
        FamilyKey {
            family,
            characteristic,
        }
    }

    pub fn convention(&self) -> IndexConvention {
        match self.family {
            Family::Sp | Family::ASp | Family::BSp => IndexConvention::Dim2N,
            f if f.is_orthogonal() && self.characteristic == Characteristic::Even => {
                IndexConvention::Dim2N
            }
            _ => IndexConvention::DimN,
        }
    }

    pub fn dimension(&self, n: usize) -> usize {
        match self.convention() {
            IndexConvention::DimN => n,
            IndexConvention::Dim2N => 2 * n,
        }
    }

    fn is_supported(&self) -> bool {
        !(self.family == Family::BSp && self.characteristic == Characteristic::Odd)
    }
}

impl fmt::Display for FamilyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} char)", self.family, self.characteristic)
    }
}

/// A class-number sequence `values[n]` for one family and one `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountSequence<R> {
    pub key: FamilyKey,
    pub q: R,
    pub values: Vec<R>,
}

impl<R: Ring> CountSequence<R> {
    pub fn get(&self, n: usize) -> Result<&R> {
        self.values.get(n).ok_or(Error::IndexOutOfRange {
            index: n,
            order: self.values.len().saturating_sub(1),
        })
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }
}

/// `Some((p, k))` when `q = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// `q` as an exact rational, validated as a prime power.
pub fn q_value(q: u64) -> Result<Rat> {
    prime_power(q).ok_or_else(|| Error::NotPrimePower(q.to_string()))?;
    Ok(Rat::from(q))
}

/// The formal symbol `q`.
pub fn q_symbol() -> QPoly {
    QPoly::q()
}

fn check_q<R: Ring>(key: FamilyKey, q: &R) -> Result<()> {
    if !key.is_supported() {
        return Err(Error::UnsupportedFamily(key.to_string()));
    }
    let Some(v) = q.as_rat() else {
        return Ok(());
    };
    let qi = v
        .to_u64()
        .filter(|&x| prime_power(x).is_some())
        .ok_or_else(|| Error::NotPrimePower(v.to_string()))?;
    if key.family.needs_characteristic() && Characteristic::of(qi) != key.characteristic {
        return Err(Error::ParityMismatch {
            q: v.to_string(),
            expected: key.characteristic.name(),
            family: key.family.to_string(),
        });
    }
    Ok(())
}

/// The Moebius function.
pub fn moebius(e: u64) -> i64 {
    assert!(e >= 1);
    let mut n = e;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducible polynomials of degree `d` over `F_q`, other than `z`.
pub fn necklace<R: Ring>(q: &R, d: usize) -> Result<R> {
    if d < 1 {
        return Err(Error::InvalidDegree(d));
    }
    if d == 1 {
        return Ok(q.minus(&R::one()));
    }
    let mut acc = R::zero();
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        let mu = moebius(e as u64);
        if mu != 0 {
            acc = acc.plus(&q.pow((d / e) as u32).scale(&Rat::from(mu)));
        }
    }
    Ok(acc.scale(&Rat::new(1, d as i64)))
}

fn c<R: Ring>(n: i64) -> R {
    R::from_int(n)
}

/// `prod_i (1 - q u^{step*i + offset})^{-1}`.
fn q_denominator<R: Ring>(q: &R, step: u64, offset: i64) -> FactorFamily<R> {
    FactorFamily::linear(q.negated(), step, offset, -1)
}

/// Second product form of the even-characteristic symplectic series,
/// `prod (1-u^{4i}) / ((1-u^{4i-2})(1-u^i)(1-qu^i))`.
pub fn ksp_even_alternate<R: Ring>(q: &R, order: usize) -> TruncatedSeries<R> {
    TruncatedSeries::product(
        &[
            FactorFamily::linear(c(-1), 4, 0, 1),
            FactorFamily::linear(c(-1), 4, -2, -1),
            FactorFamily::linear(c(-1), 1, 0, -1),
            q_denominator(q, 1, 0),
        ],
        order,
    )
}

/// Generating function of a classical family: `1 + sum_n k_n u^n`.
pub fn classical_series<R: Ring>(
    key: FamilyKey,
    q: &R,
    order: usize,
) -> Result<TruncatedSeries<R>> {
    check_q(key, q)?;
    use Characteristic::{Even, Odd};
    let families = match (key.family, key.characteristic) {
        (Family::GL, _) => vec![FactorFamily::linear(c(-1), 1, 0, 1), q_denominator(q, 1, 0)],
        (Family::GU, _) => vec![FactorFamily::linear(c(1), 1, 0, 1), q_denominator(q, 1, 0)],
        (Family::Sp, Odd) => vec![FactorFamily::linear(c(1), 1, 0, 4), q_denominator(q, 1, 0)],
        (Family::Sp, Even) => vec![
            FactorFamily::linear(c(1), 1, 0, 1),
            q_denominator(q, 1, 0),
            FactorFamily::linear(c(-1), 4, -2, -2),
        ],
        (Family::OSum, Odd) => vec![FactorFamily::linear(c(1), 2, -1, 4), q_denominator(q, 2, 0)],
        (Family::ODiff, Odd) => vec![
            FactorFamily::linear(c(-1), 4, -2, 1),
            q_denominator(q, 4, 0),
        ],
        (Family::OSum, Even) => vec![
            FactorFamily::linear(c(1), 1, 0, 1),
            FactorFamily::linear(c(1), 2, -1, 2),
            q_denominator(q, 1, 0),
        ],
        (Family::ODiff, Even) => vec![
            FactorFamily::linear(c(-1), 2, -1, 1),
            q_denominator(q, 2, 0),
        ],
        _ => return Err(Error::UnsupportedFamily(key.to_string())),
    };
    Ok(TruncatedSeries::product(&families, order))
}

fn classical<R: Ring>(
    family: Family,
    ch: Characteristic,
    q: &R,
    order: usize,
) -> Result<TruncatedSeries<R>> {
    classical_series(FamilyKey::new(family, ch), q, order)
}

/// Generating function of an affine family: `1 + sum_n k_n u^n`.
pub fn affine_series<R: Ring>(key: FamilyKey, q: &R, order: usize) -> Result<TruncatedSeries<R>> {
    check_q(key, q)?;
    use Characteristic::{Even, Odd};
    let ch = key.characteristic;
    let one = || TruncatedSeries::<R>::one(order);
    let geo = |k: usize| TruncatedSeries::<R>::geometric(R::one(), k, order);
    let q1 = q.minus(&R::one());
    let series = match (key.family, ch) {
        (Family::AGL, _) => classical(Family::GL, ch, q, order)?.mul(&geo(1)),
        (Family::AGU, _) => {
            // 1 + (q u^2 + (q-1) u) / (1 - u^2)
            let num = TruncatedSeries::monomial(q.clone(), 2, order)
                .add(&TruncatedSeries::monomial(q1, 1, order));
            let pre = one().add(&num.mul(&geo(2)));
            classical(Family::GU, ch, q, order)?.mul(&pre)
        }
        (Family::ASp, Odd) => {
            let pre = one().add(&geo(1).shift(1).scale(q));
            classical(Family::Sp, ch, q, order)?.mul(&pre)
        }
        (Family::ASp, Even) => {
            let ko = classical(Family::OSum, Even, q, order)?;
            classical(Family::Sp, Even, q, order)?
                .add(&ko.shift(1).scale(&q1))
                .mul(&geo(1))
        }
        (Family::AOSum, Odd) => {
            let num = TruncatedSeries::monomial(R::one(), 2, order)
                .add(&TruncatedSeries::monomial(q1, 1, order));
            let pre = one().add(&num.mul(&geo(2)));
            classical(Family::OSum, Odd, q, order)?.mul(&pre)
        }
        (Family::AODiff, Odd) => classical(Family::ODiff, Odd, q, order)?.mul(&geo(2)),
        (Family::AOSum, Even) => {
            let ksp = ksp_even_alternate(q, order);
            classical(Family::OSum, Even, q, order)?
                .add(&ksp.shift(1).scale(&q1.scale(&Rat::from(4i64))))
                .mul(&geo(1))
        }
        (Family::AODiff, Even) => classical(Family::ODiff, Even, q, order)?.mul(&geo(1)),
        (Family::BSp, Even) => {
            let asp = affine_series(FamilyKey::new(Family::ASp, Even), q, order)?;
            asp.add(&classical(Family::OSum, Even, q, order)?.scale(&q1))
        }
        _ => return Err(Error::UnsupportedFamily(key.to_string())),
    };
    Ok(series)
}

fn require_integral<R: Ring>(v: &R, context: &str) -> Result<()> {
    if let Some(r) = v.as_rat() {
        if !r.is_integer() || r.is_negative() {
            return Err(Error::NonIntegral {
                value: r.to_string(),
                context: context.to_string(),
            });
        }
    }
    Ok(())
}

/// Splits sum and difference series into the `+` and `-` type sequences.
///
/// `sum_key` names either [`Family::OSum`] or [`Family::AOSum`]; the result
/// carries the matching `OPlus`/`OMinus` or `AOPlus`/`AOMinus` keys.
pub fn ao_split<R: Ring>(
    sum: &TruncatedSeries<R>,
    diff: &TruncatedSeries<R>,
    sum_key: FamilyKey,
    q: &R,
) -> Result<(CountSequence<R>, CountSequence<R>)> {
    let (pf, mf) = match sum_key.family {
        Family::OSum => (Family::OPlus, Family::OMinus),
        Family::AOSum => (Family::AOPlus, Family::AOMinus),
        _ => return Err(Error::UnsupportedFamily(sum_key.to_string())),
    };
    let half = Rat::new(1, 2);
    let plus = sum.add(diff).scale_rat(&half);
    let minus = sum.sub(diff).scale_rat(&half);
    for (n, (p, m)) in plus.coeffs().iter().zip(minus.coeffs()).enumerate() {
        let ctx = format!("{} n={n}", sum_key);
        require_integral(p, &ctx)?;
        require_integral(m, &ctx)?;
    }
    let ch = sum_key.characteristic;
    Ok((
        CountSequence {
            key: FamilyKey::new(pf, ch),
            q: q.clone(),
            values: plus.into_coeffs(),
        },
        CountSequence {
            key: FamilyKey::new(mf, ch),
            q: q.clone(),
            values: minus.into_coeffs(),
        },
    ))
}

/// Class numbers of `key` for `n = 0..=n_max` from the closed forms.
pub fn count_sequence<R: Ring>(key: FamilyKey, q: &R, n_max: usize) -> Result<CountSequence<R>> {
    let ch = key.characteristic;
    let values = match key.family {
        Family::OPlus | Family::OMinus => {
            let sum = classical(Family::OSum, ch, q, n_max)?;
            let diff = classical(Family::ODiff, ch, q, n_max)?;
            let (p, m) = ao_split(&sum, &diff, FamilyKey::new(Family::OSum, ch), q)?;
            return Ok(if key.family == Family::OPlus { p } else { m });
        }
        Family::AOPlus | Family::AOMinus => {
            let sum = affine_series(FamilyKey::new(Family::AOSum, ch), q, n_max)?;
            let diff = affine_series(FamilyKey::new(Family::AODiff, ch), q, n_max)?;
            let (p, m) = ao_split(&sum, &diff, FamilyKey::new(Family::AOSum, ch), q)?;
            return Ok(if key.family == Family::AOPlus { p } else { m });
        }
        f if f.is_affine() => affine_series(key, q, n_max)?.into_coeffs(),
        _ => classical_series(key, q, n_max)?.into_coeffs(),
    };
    if !matches!(key.family, Family::ODiff | Family::AODiff) {
        for (n, v) in values.iter().enumerate() {
            require_integral(v, &format!("{key} n={n}"))?;
        }
    }
    Ok(CountSequence {
        key,
        q: q.clone(),
        values,
    })
}

/// The families whose orbit-method assembly is implemented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitFamily {
    AGL,
    AGU,
    ASpOdd,
    AOSumOdd,
    AODiffOdd,
}

impl OrbitFamily {
    pub const ALL: [OrbitFamily; 5] = [
        OrbitFamily::AGL,
        OrbitFamily::AGU,
        OrbitFamily::ASpOdd,
        OrbitFamily::AOSumOdd,
        OrbitFamily::AODiffOdd,
    ];

    pub fn key(self) -> FamilyKey {
        let (f, ch) = match self {
            OrbitFamily::AGL => (Family::AGL, Characteristic::Odd),
            OrbitFamily::AGU => (Family::AGU, Characteristic::Odd),
            OrbitFamily::ASpOdd => (Family::ASp, Characteristic::Odd),
            OrbitFamily::AOSumOdd => (Family::AOSum, Characteristic::Odd),
            OrbitFamily::AODiffOdd => (Family::AODiff, Characteristic::Odd),
        };
        FamilyKey::new(f, ch)
    }
}

/// Contributions to `sum_C o(C)`: the class count `T1` and the two weighted sums.
#[derive(Debug, Clone)]
pub struct OrbitPieces<R: Ring> {
    pub t1: TruncatedSeries<R>,
    pub t2: TruncatedSeries<R>,
    pub t3: TruncatedSeries<R>,
    /// `true` when the total is `T1 + T2 - T3`.
    pub subtract_t3: bool,
}

impl<R: Ring> OrbitPieces<R> {
    pub fn total(&self) -> TruncatedSeries<R> {
        let t12 = self.t1.add(&self.t2);
        if self.subtract_t3 {
            t12.sub(&self.t3)
        } else {
            t12.add(&self.t3)
        }
    }
}

/// Builds `T1`, `T2`, `T3` by replacing the unipotent-class factor of the
/// classical series with the weighted unipotent sums.
pub fn orbit_built_series<R: Ring>(
    family: OrbitFamily,
    q: &R,
    order: usize,
) -> Result<OrbitPieces<R>> {
    let odd = Characteristic::Odd;
    // (classical series, unipotent count series, weight for T2, weight for T3)
    let reweight =
        |k: &TruncatedSeries<R>, count: Identity, w: Identity| -> Result<TruncatedSeries<R>> {
            let base = identity_closed_form(count, q, order);
            let weighted = identity_closed_form(w, q, order);
            Ok(k.div(&base)?.mul(&weighted))
        };
    let pieces = match family {
        OrbitFamily::AGL => {
            let k = classical(Family::GL, odd, q, order)?;
            let t2 = reweight(&k, Identity::UnitaryCount, Identity::UnitaryD)?;
            OrbitPieces {
                t3: TruncatedSeries::zero(order),
                t1: k,
                t2,
                subtract_t3: false,
            }
        }
        OrbitFamily::AGU => {
            let k = classical(Family::GU, odd, q, order)?;
            let t2 = reweight(&k, Identity::UnitaryCount, Identity::UnitaryD)?.scale(q);
            let t3 = reweight(&k, Identity::UnitaryCount, Identity::UnitaryB)?;
            OrbitPieces {
                t1: k,
                t2,
                t3,
                subtract_t3: true,
            }
        }
        OrbitFamily::ASpOdd => {
            let k = classical(Family::Sp, odd, q, order)?;
            let t2 = reweight(&k, Identity::SpCount, Identity::SpOddSupport)?;
            let t3 = reweight(&k, Identity::SpCount, Identity::SpF)?;
            OrbitPieces {
                t1: k,
                t2,
                t3,
                subtract_t3: false,
            }
        }
        OrbitFamily::AOSumOdd => {
            let k = classical(Family::OSum, odd, q, order)?;
            let t2 = reweight(&k, Identity::OCount, Identity::OEvenSupport)?;
            let t3 = reweight(&k, Identity::OCount, Identity::OF)?;
            OrbitPieces {
                t1: k,
                t2,
                t3,
                subtract_t3: false,
            }
        }
        OrbitFamily::AODiffOdd => {
            // Remove the unipotent factor prod 1/(1-u^{4i}) and reinsert the
            // weighted versions; the f_i terms cancel except for a_i = 2.
            let d = classical(Family::ODiff, odd, q, order)?;
            let strip = TruncatedSeries::product(&[FactorFamily::linear(c(-1), 4, 0, 1)], order);
            let unip = TruncatedSeries::product(&[FactorFamily::linear(c(-1), 4, 0, -1)], order);
            let geo4 = TruncatedSeries::geometric(R::one(), 4, order);
            let core = d.mul(&strip).mul(&unip);
            OrbitPieces {
                t2: core.mul(&geo4.shift(4)),
                t3: core.mul(&geo4.shift(2)),
                t1: d,
                subtract_t3: false,
            }
        }
    };
    Ok(pieces)
}

/// `1 + sum k(AGL(n,q)) u^n` from rational canonical forms: the enumerated
/// `sum (d(l)+1) u^|l|` for the eigenvalue 1, times one partition generating
/// function per other irreducible polynomial.
pub fn agl_rational_canonical_series<R: Ring>(q: &R, order: usize) -> Result<TruncatedSeries<R>> {
    let distinct = identity_sum(Identity::Distinct, q, order as u32)?;
    let mut s = TruncatedSeries::from_coeffs(distinct, order);
    for d in 1..=order {
        let mut n_d = necklace(q, d)?;
        if d == 1 {
            n_d = n_d.minus(&R::one());
        }
        if n_d.is_zero() {
            continue;
        }
        // prod_i (1 - u^{d i})^{-N}
        for i in 1..=order / d {
            let f = binomial_power(&c(-1), d * i, &n_d.negated(), order);
            s = s.mul(&f);
        }
    }
    Ok(s)
}

/// Class numbers of the affine family `key` from the character-side recursions.
///
/// Baselines `k(G)` come from [`classical_series`]; orthogonal baselines of a
/// single type come from [`ao_split`]. Supported keys: `AGL`, `AGU`, `ASp`,
/// `AOPlus`, `AOMinus`, `AOSum`, `AODiff`.
pub fn affine_recursive<R: Ring>(key: FamilyKey, q: &R, n_max: usize) -> Result<CountSequence<R>> {
    check_q(key, q)?;
    let ch = key.characteristic;
    let q1 = q.minus(&R::one());
    let at = |v: &[R], n: isize| -> R {
        if n < 0 {
            R::zero()
        } else {
            v[n as usize].clone()
        }
    };
    let values: Vec<R> = match (key.family, ch) {
        (Family::AGL, _) => {
            let k = classical(Family::GL, ch, q, n_max)?.into_coeffs();
            let mut a = vec![R::one()];
            for n in 1..=n_max {
                a.push(k[n].plus(&a[n - 1]));
            }
            a
        }
        (Family::AGU, _) => {
            let k = classical(Family::GU, ch, q, n_max)?.into_coeffs();
            let mut a = vec![R::one()];
            for n in 1..=n_max {
                let n = n as isize;
                let v = at(&k, n)
                    .plus(&q1.times(&at(&k, n - 1)))
                    .plus(&q1.times(&at(&k, n - 2)))
                    .plus(&at(&a, n - 2));
                a.push(v);
            }
            a
        }
        (Family::ASp, Characteristic::Odd) => {
            let k = classical(Family::Sp, ch, q, n_max)?.into_coeffs();
            let mut a = vec![R::one()];
            for n in 1..=n_max {
                a.push(k[n].plus(&a[n - 1]).plus(&q1.times(&k[n - 1])));
            }
            a
        }
        (Family::ASp, Characteristic::Even) => asp_even_recursive(q, n_max)?,
        (Family::AOPlus | Family::AOMinus, _) => {
            let (p, m) = ao_recursive(ch, q, n_max)?;
            if key.family == Family::AOPlus {
                p
            } else {
                m
            }
        }
        (Family::AOSum | Family::AODiff, _) => {
            let (p, m) = ao_recursive(ch, q, n_max)?;
            p.iter()
                .zip(&m)
                .map(|(a, b)| {
                    if key.family == Family::AOSum {
                        a.plus(b)
                    } else {
                        a.minus(b)
                    }
                })
                .collect()
        }
        _ => return Err(Error::UnsupportedFamily(key.to_string())),
    };
    Ok(CountSequence {
        key,
        q: q.clone(),
        values,
    })
}

fn asp_even_recursive<R: Ring>(q: &R, n_max: usize) -> Result<Vec<R>> {
    let ch = Characteristic::Even;
    let q1 = q.minus(&R::one());
    let ksp = classical(Family::Sp, ch, q, n_max)?.into_coeffs();
    let ko = classical(Family::OSum, ch, q, n_max)?.into_coeffs();
    let mut a = vec![R::one()];
    for n in 1..=n_max {
        a.push(ksp[n].plus(&a[n - 1]).plus(&q1.times(&ko[n - 1])));
    }
    Ok(a)
}

/// `(k(AO^+), k(AO^-))` by recursion, with `k(AO^+(0)) = 1`, `k(AO^-(0)) = 0`.
fn ao_recursive<R: Ring>(ch: Characteristic, q: &R, n_max: usize) -> Result<(Vec<R>, Vec<R>)> {
    let q1 = q.minus(&R::one());
    let sum = classical(Family::OSum, ch, q, n_max)?;
    let diff = classical(Family::ODiff, ch, q, n_max)?;
    let (kp, km) = ao_split(&sum, &diff, FamilyKey::new(Family::OSum, ch), q)?;
    let (kp, km) = (kp.values, km.values);
    let mut ap = vec![R::one()];
    let mut am = vec![R::zero()];
    match ch {
        Characteristic::Odd => {
            // dimension n; stabilizers AO^e(n-2) and (q-1)/2 copies of each O^±(n-1)
            let half_q1 = q1.scale(&Rat::new(1, 2));
            for n in 1..=n_max {
                let shared = half_q1.times(&kp[n - 1].plus(&km[n - 1]));
                let prev = |a: &Vec<R>| if n >= 2 { a[n - 2].clone() } else { R::zero() };
                let p = kp[n].plus(&prev(&ap)).plus(&shared);
                let m = km[n].plus(&prev(&am)).plus(&shared);
                ap.push(p);
                am.push(m);
            }
        }
        Characteristic::Even => {
            // dimension 2n; nonsingular vectors have stabilizer Sp(2n-2) x 2
            let ksp = classical(Family::Sp, ch, q, n_max)?.into_coeffs();
            let two_q1 = q1.scale(&Rat::from(2i64));
            for n in 1..=n_max {
                let shared = two_q1.times(&ksp[n - 1]);
                ap.push(kp[n].plus(&ap[n - 1]).plus(&shared));
                am.push(km[n].plus(&am[n - 1]).plus(&shared));
            }
        }
    }
    Ok((ap, am))
}

/// `k(BSp(2n,q)) = k(ASp(2n,q)) + (q-1)(k(O^+(2n,q)) + k(O^-(2n,q)))`, `q` even.
pub fn k_bsp<R: Ring>(q: &R, n_max: usize) -> Result<CountSequence<R>> {
    let key = FamilyKey::new(Family::BSp, Characteristic::Even);
    check_q(key, q)?;
    let q1 = q.minus(&R::one());
    let asp = asp_even_recursive(q, n_max)?;
    let ko = classical(Family::OSum, Characteristic::Even, q, n_max)?.into_coeffs();
    let values = asp
        .iter()
        .zip(&ko)
        .map(|(a, o)| a.plus(&q1.times(o)))
        .collect();
    Ok(CountSequence {
        key,
        q: q.clone(),
        values,
    })
}

/// Rebuilds `k(ASp(2n,q)) = k(Sp(2n,q)) + k(BSp(2n-2,q))` for `n >= 1`
/// (index 0 is the convention `k(ASp(0,q)) = 1`).
pub fn asp_from_bsp<R: Ring>(bsp: &CountSequence<R>) -> Result<Vec<R>> {
    let n_max = bsp.n_max();
    let ksp = classical(Family::Sp, Characteristic::Even, &bsp.q, n_max)?.into_coeffs();
    let mut out = vec![R::one()];
    for n in 1..=n_max {
        out.push(ksp[n].plus(&bsp.values[n - 1]));
    }
    Ok(out)
}

/// `k(AH(n,q))` for `SL(n,q) <= H(n,q) <= GL(n,q)` with `e = [H : SL]`:
/// `(q-1)/e + sum_{i=1..n} k(H(i,q))`.
///
/// `kh.values[i]` must hold `k(H(i,q))` when given. Without it the baseline
/// is `k(GL)` for `e = q-1`, the index-2 formula
/// `k(H(n)) = k(GL(n))/2 (+ 3/2 k(GL(n/2)) for n even)` when `(q-1)/e = 2`
/// and `q` is odd, and `k(H(1,q)) = e` alone when `n_max <= 1`.
/// Index 0 of the result is the trivial group.
pub fn k_ah(
    q: u64,
    e: u64,
    n_max: usize,
    kh: Option<&CountSequence<Rat>>,
) -> Result<CountSequence<Rat>> {
    prime_power(q).ok_or_else(|| Error::NotPrimePower(q.to_string()))?;
    if e == 0 || !(q - 1).is_multiple_of(e) {
        return Err(Error::IndexNotDividing {
            e,
            q_minus_one: q - 1,
        });
    }
    let index = (q - 1) / e;
    let qr = Rat::from(q);
    let gl_key = FamilyKey::new(Family::GL, Characteristic::of(q));
    let h: Vec<Rat> = match kh {
        Some(seq) => {
            if seq.values.len() <= n_max {
                return Err(Error::MissingBaseline { e, q, n: n_max });
            }
            seq.values.clone()
        }
        None if index == 1 => classical_series(gl_key, &qr, n_max)?.into_coeffs(),
        None if index == 2 && q % 2 == 1 => {
            let gl = classical_series(gl_key, &qr, n_max)?.into_coeffs();
            let half = Rat::new(1, 2);
            (0..=n_max)
                .map(|n| {
                    let mut v = &gl[n] * &half;
                    if n % 2 == 0 && n > 0 {
                        v = v + &gl[n / 2] * &Rat::new(3, 2);
                    }
                    v
                })
                .collect()
        }
        None if n_max <= 1 => vec![Rat::one(), Rat::from(e)],
        None => return Err(Error::MissingBaseline { e, q, n: n_max }),
    };
    let mut values = vec![Rat::one()];
    let mut acc = Rat::from(index);
    for n in 1..=n_max {
        acc = acc + &h[n];
        require_integral(&acc, &format!("k(AH({n},{q})), e={e}"))?;
        values.push(acc.clone());
    }
    Ok(CountSequence {
        key: FamilyKey::new(Family::AGL, Characteristic::of(q)),
        q: qr,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(f: Family, ch: Characteristic) -> FamilyKey {
        FamilyKey::new(f, ch)
    }

    fn r(n: i64) -> Rat {
        Rat::from(n)
    }

    use Characteristic::{Even, Odd};

    #[test]
    fn necklace_values() {
        let q = QPoly::q();
        assert_eq!(necklace(&q, 1).unwrap(), QPoly::from_ints(&[-1, 1]));
        assert_eq!(necklace(&r(2), 2).unwrap(), r(1));
        assert_eq!(necklace(&r(2), 4).unwrap(), r(3));
        assert_eq!(necklace(&r(3), 1).unwrap(), r(2));
        assert_eq!(necklace(&q, 0), Err(Error::InvalidDegree(0)));
        assert_eq!([1, 2, 3, 4, 5, 6].map(moebius), [1, -1, -1, 0, -1, 1]);
    }

    #[test]
    fn classical_examples() {
        let gl = classical_series(key(Family::GL, Even), &r(2), 2).unwrap();
        assert_eq!(gl.coeff(2).unwrap(), &r(3));
        let q = QPoly::q();
        let sp = classical_series(key(Family::Sp, Odd), &q, 1).unwrap();
        assert_eq!(sp.coeff(1).unwrap(), &QPoly::from_ints(&[4, 1]));
        let gu = classical_series(key(Family::GU, Odd), &q, 1).unwrap();
        assert_eq!(gu.coeff(1).unwrap(), &QPoly::from_ints(&[1, 1]));
        assert!(matches!(
            classical_series(key(Family::AGL, Odd), &q, 1),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn affine_examples() {
        let q = QPoly::q();
        let agl = affine_series(key(Family::AGL, Odd), &q, 1).unwrap();
        assert_eq!(agl.coeff(1).unwrap(), &q);
        let agu = affine_series(key(Family::AGU, Odd), &q, 1).unwrap();
        assert_eq!(agu.coeff(1).unwrap(), &QPoly::from_ints(&[0, 2]));
        let asp3 = affine_series(key(Family::ASp, Odd), &r(3), 2).unwrap();
        assert_eq!(asp3.coeff(2).unwrap(), &r(58));
        let asp5 = affine_series(key(Family::ASp, Odd), &r(5), 2).unwrap();
        assert_eq!(asp5.coeff(2).unwrap(), &r(110));
    }

    #[test]
    fn parity_is_checked() {
        assert!(matches!(
            affine_series(key(Family::ASp, Odd), &r(4), 2),
            Err(Error::ParityMismatch { .. })
        ));
        assert!(matches!(
            affine_series(key(Family::AGL, Odd), &r(6), 2),
            Err(Error::NotPrimePower(_))
        ));
        assert!(affine_series(key(Family::AGL, Odd), &r(4), 2).is_ok());
    }

    #[test]
    fn split_examples() {
        let ch = Even;
        let p = count_sequence(key(Family::AOPlus, ch), &r(2), 3).unwrap();
        let m = count_sequence(key(Family::AOMinus, ch), &r(2), 3).unwrap();
        assert_eq!(p.values[1..], [r(5), r(20), p.values[3].clone()]);
        assert_eq!(m.values[1..], [r(5), r(18), r(65)]);
        let q = QPoly::q();
        let p = count_sequence(key(Family::AOPlus, ch), &q, 1).unwrap();
        assert_eq!(p.values[1], QPoly::monomial(Rat::new(5, 2), 1));
        let p = count_sequence(key(Family::AOPlus, Odd), &r(3), 1).unwrap();
        let m = count_sequence(key(Family::AOMinus, Odd), &r(3), 1).unwrap();
        assert_eq!((p.values[1].clone(), m.values[1].clone()), (r(3), r(3)));
    }

    #[test]
    fn recursion_examples() {
        let agl = affine_recursive(key(Family::AGL, Even), &r(2), 2).unwrap();
        assert_eq!(agl.values[2], r(5));
        let asp = affine_recursive(key(Family::ASp, Even), &r(2), 3).unwrap();
        assert_eq!(asp.values[1..], [r(5), r(21), r(67)]);
        let aop = affine_recursive(key(Family::AOPlus, Even), &r(2), 1).unwrap();
        assert_eq!(aop.values[1], r(5));
    }

    #[test]
    fn bsp_examples() {
        let b = k_bsp(&r(2), 3).unwrap();
        assert_eq!(b.values[0], r(2));
        let rebuilt = asp_from_bsp(&b).unwrap();
        assert_eq!(rebuilt[1], r(5));
        assert_eq!(rebuilt[3], r(67));
        assert!(k_bsp(&r(3), 2).is_err());
    }

    #[test]
    fn intermediate_examples() {
        for q in [2u64, 3, 4, 5, 7] {
            let s = k_ah(q, 1, 1, None).unwrap();
            assert_eq!(s.values[1], r(q as i64));
        }
        let full = k_ah(5, 4, 6, None).unwrap();
        let agl = count_sequence(key(Family::AGL, Odd), &r(5), 6).unwrap();
        assert_eq!(full.values, agl.values);
        // (q-1)/e = 2 at q = 5: 2 + k(H(1)) + k(H(2))
        let gl = classical_series(key(Family::GL, Odd), &r(5), 2).unwrap();
        let kh2 = gl.coeff(2).unwrap() * &Rat::new(1, 2) + gl.coeff(1).unwrap() * &Rat::new(3, 2);
        let ah = k_ah(5, 2, 2, None).unwrap();
        assert_eq!(ah.values[2], r(2) + r(2) + kh2);
        assert_eq!(k_ah(3, 1, 2, None).unwrap().values[2], r(10));
        assert!(matches!(
            k_ah(7, 4, 2, None),
            Err(Error::IndexNotDividing { .. })
        ));
        assert!(matches!(
            k_ah(7, 2, 2, None),
            Err(Error::MissingBaseline { .. })
        ));
    }

    #[test]
    fn orbit_assembly_matches_low_order() {
        let q = QPoly::q();
        for f in OrbitFamily::ALL {
            let pieces = orbit_built_series(f, &q, 10).unwrap();
            let closed = affine_series(f.key(), &q, 10).unwrap();
            assert_eq!(pieces.total(), closed, "{f:?}");
        }
    }

    #[test]
    fn rational_canonical_route() {
        for q in [2i64, 3, 4] {
            let s = agl_rational_canonical_series(&r(q), 8).unwrap();
            let closed = affine_series(key(Family::AGL, Even), &r(q), 8).unwrap();
            assert_eq!(s, closed);
        }
        let q = QPoly::q();
        let s = agl_rational_canonical_series(&q, 6).unwrap();
        assert_eq!(s, affine_series(key(Family::AGL, Odd), &q, 6).unwrap());
    }
}
