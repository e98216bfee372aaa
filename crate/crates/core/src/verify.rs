//! Verification suites shared by the command line and the test harness.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bounds::{self, certify_constant, check_ah_bound, quoted_constants};
use crate::classcount::{
    affine_recursive, affine_series, agl_rational_canonical_series, asp_from_bsp, classical_series,
    count_sequence, k_ah, k_bsp, ksp_even_alternate, necklace, orbit_built_series, q_symbol,
    q_value, Characteristic, Family, FamilyKey, OrbitFamily,
};
use crate::error::{Error, Result};
use crate::oracle::{
    self, build_group, count_classes, formula_check_o, gl_direct_class_sum, GroupSpec,
    LinearFamily, OracleTarget,
};
use crate::partitions::{identity_closed_form, identity_sum, Identity};
use crate::series::{binomial_power, FactorFamily, QPoly, Rat, Ring, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    CrossMethod,
    Oracle,
    GoldenValues,
    Bounds,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Identities,
        Suite::CrossMethod,
        Suite::Oracle,
        Suite::GoldenValues,
        Suite::Bounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::CrossMethod => "cross-method",
            Suite::Oracle => "oracle",
            Suite::GoldenValues => "golden-values",
            Suite::Bounds => "bounds",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    /// Also accepts `paper-values` for the golden-value suite.
    fn from_str(s: &str) -> Result<Self> {
        if s == "paper-values" {
            return Ok(Suite::GoldenValues);
        }
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::OutOfRange(format!("suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grid {
    Small,
    Full,
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Grid::Small),
            "full" => Ok(Grid::Full),
            _ => Err(Error::OutOfRange(format!("grid `{s}`"))),
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Grid::Small => "small",
            Grid::Full => "full",
        })
    }
}

/// Grid sizes per suite.
#[derive(Debug, Clone)]
pub struct GridParams {
    pub q_set: Vec<u64>,
    pub n_max: usize,
    pub symbolic_order: usize,
    pub pentagonal_order: usize,
    pub partition_n: u32,
    pub signed_n: u32,
    pub ksp_order: usize,
}

impl GridParams {
    pub fn of(grid: Grid) -> Self {
        match grid {
            Grid::Small => GridParams {
                q_set: vec![2, 3, 4, 5],
                n_max: 10,
                symbolic_order: 10,
                pentagonal_order: 30,
                partition_n: 12,
                signed_n: 8,
                ksp_order: 16,
            },
            Grid::Full => GridParams {
                q_set: bounds::DEFAULT_Q_SET.to_vec(),
                n_max: 25,
                symbolic_order: 25,
                pentagonal_order: 60,
                partition_n: 30,
                signed_n: 14,
                ksp_order: 40,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CaseResult {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CaseResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub grid: Grid,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

/// Options for [`run_suite`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub grid: Grid,
    /// Element cap for oracle cells.
    pub cap: u128,
    /// Cap for the single oracle cell `ASp(4,3)`, whose affine group has
    /// 4,199,040 elements.
    pub large_cap: u128,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            grid: Grid::Small,
            cap: oracle::DEFAULT_CAP,
            large_cap: 5_000_000,
        }
    }
}

pub fn run_suite(suite: Suite, options: &VerifyOptions) -> Result<SuiteReport> {
    let params = GridParams::of(options.grid);
    let cases = match suite {
        Suite::Identities => identities(&params)?,
        Suite::CrossMethod => cross_method(&params)?,
        Suite::Oracle => oracle_grid(options)?,
        Suite::GoldenValues => golden_values(options)?,
        Suite::Bounds => {
            let mut cases = bound_grid_cases(&params)?;
            cases.extend(constant_cases()?);
            cases
        }
    };
    Ok(SuiteReport {
        suite,
        grid: options.grid,
        cases,
    })
}

/// First index where two coefficient lists differ.
fn first_difference<R: Ring>(a: &[R], b: &[R]) -> Option<(usize, String, String)> {
    a.iter()
        .zip(b)
        .enumerate()
        .find(|(_, (x, y))| x != y)
        .map(|(i, (x, y))| (i, x.to_string(), y.to_string()))
}

fn compare<R: Ring>(name: String, a: &[R], b: &[R]) -> CaseResult {
    let len = a.len().min(b.len());
    match first_difference(&a[..len], &b[..len]) {
        None => CaseResult::new(name, true, format!("{len} coefficients agree")),
        Some((i, x, y)) => CaseResult::new(name, false, format!("index {i}: {x} != {y}")),
    }
}

/// Euler's pentagonal theorem: `∏ (1 - u^i) = Σ_k (-1)^k u^{k(3k-1)/2}`.
pub fn pentagonal_check(order: usize) -> CaseResult {
    let product =
        TruncatedSeries::<Rat>::product(&[FactorFamily::linear(Rat::from(-1i64), 1, 0, 1)], order);
    let mut expected = vec![Rat::zero(); order + 1];
    for k in 0i64.. {
        let a = (k * (3 * k - 1) / 2) as usize;
        if a > order {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        expected[a] = Rat::from(sign);
        if k > 0 {
            let b = (k * (3 * k + 1) / 2) as usize;
            if b <= order {
                expected[b] = Rat::from(sign);
            }
        }
    }
    compare(
        format!("pentagonal theorem to order {order}"),
        product.coeffs(),
        &expected,
    )
}

/// `∏_d (1 - u^d)^{-N(q;d)} = (1 - u)/(1 - q u)` in `Q[q][[u]]`.
pub fn necklace_product_check(order: usize) -> Result<CaseResult> {
    let q = q_symbol();
    let mut lhs = TruncatedSeries::<QPoly>::one(order);
    for d in 1..=order {
        let n = necklace(&q, d)?;
        lhs = lhs.mul(&binomial_power(
            &QPoly::from_ints(&[-1]),
            d,
            &n.negated(),
            order,
        ));
    }
    let rhs =
        TruncatedSeries::from_coeffs(vec![QPoly::one(), QPoly::from_ints(&[-1])], order).div(
            &TruncatedSeries::from_coeffs(vec![QPoly::one(), q.negated()], order),
        )?;
    Ok(compare(
        format!("necklace product symbolic to order {order}"),
        lhs.coeffs(),
        rhs.coeffs(),
    ))
}

fn identities(p: &GridParams) -> Result<Vec<CaseResult>> {
    let mut out = vec![
        pentagonal_check(p.pentagonal_order),
        necklace_product_check(p.symbolic_order)?,
    ];
    let q = q_symbol();
    for id in Identity::ALL {
        let n = if id.is_signed() {
            p.signed_n
        } else {
            p.partition_n
        };
        let sums = identity_sum(id, &q, n)?;
        let closed = identity_closed_form(id, &q, n as usize);
        out.push(compare(
            format!("identity {id} by enumeration to n = {n}"),
            &sums,
            closed.coeffs(),
        ));
    }
    let ksp = classical_series(
        FamilyKey::new(Family::Sp, Characteristic::Even),
        &q,
        p.ksp_order,
    )?;
    let alt = ksp_even_alternate(&q, p.ksp_order);
    out.push(compare(
        format!(
            "even-characteristic symplectic product forms to order {}",
            p.ksp_order
        ),
        ksp.coeffs(),
        alt.coeffs(),
    ));
    Ok(out)
}

/// Affine families with a character-side recursion, per characteristic.
pub fn recursion_keys() -> Vec<FamilyKey> {
    let mut keys = Vec::new();
    for ch in [Characteristic::Odd, Characteristic::Even] {
        for f in [
            Family::AGL,
            Family::AGU,
            Family::ASp,
            Family::AOSum,
            Family::AODiff,
            Family::AOPlus,
            Family::AOMinus,
        ] {
            keys.push(FamilyKey::new(f, ch));
        }
    }
    keys
}

fn cross_method(p: &GridParams) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for key in recursion_keys() {
        for &q in p
            .q_set
            .iter()
            .filter(|&&q| Characteristic::of(q) == key.characteristic)
        {
            let qr = q_value(q)?;
            let name = format!("closed form = recursion: {key} q={q} n<={}", p.n_max);
            let case = match (
                count_sequence(key, &qr, p.n_max),
                affine_recursive(key, &qr, p.n_max),
            ) {
                (Ok(s), Ok(r)) => compare(name, &s.values, &r.values),
                (Err(e), _) | (_, Err(e)) => CaseResult::new(name, false, e.to_string()),
            };
            out.push(case);
            let name = format!("integral nonnegative values: {key} q={q}");
            let case = match count_sequence(key, &qr, p.n_max) {
                Ok(seq) => {
                    let bad = seq
                        .values
                        .iter()
                        .position(|v| !v.is_integer() || v.is_negative());
                    let signed = matches!(key.family, Family::AODiff);
                    match bad {
                        Some(i) if !(signed && seq.values[i].is_integer()) => {
                            CaseResult::new(name, false, format!("n={i}: {}", seq.values[i]))
                        }
                        _ => CaseResult::new(name, true, format!("{} values", seq.values.len())),
                    }
                }
                Err(e) => CaseResult::new(name, false, e.to_string()),
            };
            out.push(case);
        }
    }
    for &q in p.q_set.iter().filter(|&&q| q % 2 == 1) {
        let qr = q_value(q)?;
        let diff = affine_series(
            FamilyKey::new(Family::AODiff, Characteristic::Odd),
            &qr,
            2 * p.n_max,
        )?;
        let odd_zero = diff.coeffs().iter().skip(1).step_by(2).all(Rat::is_zero);
        out.push(CaseResult::new(
            format!("odd-characteristic ao-diff vanishes at odd indices, q={q}"),
            odd_zero,
            "",
        ));
    }
    for &q in p.q_set.iter().filter(|&&q| q % 2 == 0) {
        let qr = q_value(q)?;
        let name = format!("bsp reconstruction = asp: q={q} n<={}", p.n_max);
        let case = (|| -> Result<CaseResult> {
            let bsp = k_bsp(&qr, p.n_max)?;
            let rebuilt = asp_from_bsp(&bsp)?;
            let asp = affine_series(
                FamilyKey::new(Family::ASp, Characteristic::Even),
                &qr,
                p.n_max,
            )?;
            Ok(compare(name.clone(), &rebuilt, asp.coeffs()))
        })();
        out.push(case.unwrap_or_else(|e| CaseResult::new(name, false, e.to_string())));
    }
    let q = q_symbol();
    let order = p.symbolic_order;
    for family in OrbitFamily::ALL {
        let key = family.key();
        let name = format!(
            "orbit assembly = closed form: {} symbolic to order {order}",
            key.family
        );
        let case = (|| -> Result<CaseResult> {
            let built = orbit_built_series(family, &q, order)?.total();
            let closed = affine_series(key, &q, order)?;
            Ok(compare(name.clone(), built.coeffs(), closed.coeffs()))
        })();
        out.push(case.unwrap_or_else(|e| CaseResult::new(name, false, e.to_string())));
    }
    let name = format!("rational canonical forms = closed form: agl symbolic to order {order}");
    let case = (|| -> Result<CaseResult> {
        let rcf = agl_rational_canonical_series(&q, order)?;
        let closed = affine_series(FamilyKey::new(Family::AGL, Characteristic::Odd), &q, order)?;
        Ok(compare(name.clone(), rcf.coeffs(), closed.coeffs()))
    })();
    out.push(case.unwrap_or_else(|e| CaseResult::new(name, false, e.to_string())));
    Ok(out)
}

/// The closed-form value the oracle should reproduce for `target` in dimension `n`.
pub fn closed_form_value(target: OracleTarget, n: usize, q: u64) -> Result<Option<Rat>> {
    let ch = Characteristic::of(q);
    let qr = q_value(q)?;
    let half = Rat::new(1, 2);
    let even_dim = |fam_odd: Family| -> Result<Option<Rat>> {
        if n % 2 == 1 {
            return Ok(None);
        }
        let idx = if ch == Characteristic::Odd { n } else { n / 2 };
        let key = FamilyKey::new(fam_odd, ch);
        Ok(Some(count_sequence(key, &qr, idx)?.values[idx].clone()))
    };
    let odd_dim = |sum: Family| -> Result<Option<Rat>> {
        if n.is_multiple_of(2) || ch == Characteristic::Even {
            return Ok(None);
        }
        let key = FamilyKey::new(sum, ch);
        let s = if sum.is_affine() {
            affine_series(key, &qr, n)?
        } else {
            classical_series(key, &qr, n)?
        };
        Ok(Some(&s.coeffs()[n] * &half))
    };
    let simple = |f: Family, idx: usize| -> Result<Option<Rat>> {
        Ok(Some(
            count_sequence(FamilyKey::new(f, ch), &qr, idx)?.values[idx].clone(),
        ))
    };
    match (target.family, target.affine) {
        (LinearFamily::GL, false) => simple(Family::GL, n),
        (LinearFamily::GL, true) => simple(Family::AGL, n),
        (LinearFamily::GU, false) => simple(Family::GU, n),
        (LinearFamily::GU, true) => simple(Family::AGU, n),
        (LinearFamily::Sp, false) if n.is_multiple_of(2) => simple(Family::Sp, n / 2),
        (LinearFamily::Sp, true) if n.is_multiple_of(2) => simple(Family::ASp, n / 2),
        (LinearFamily::OPlus, false) => even_dim(Family::OPlus),
        (LinearFamily::OMinus, false) => even_dim(Family::OMinus),
        (LinearFamily::OPlus, true) => even_dim(Family::AOPlus),
        (LinearFamily::OMinus, true) => even_dim(Family::AOMinus),
        (LinearFamily::OOdd, false) => odd_dim(Family::OSum),
        (LinearFamily::OOdd, true) => odd_dim(Family::AOSum),
        // ASL(n,3) through the index-2 class number formula
        (LinearFamily::SL, true) if q == 3 => Ok(Some(k_ah(3, 1, n, None)?.values[n].clone())),
        (LinearFamily::SL, _) if q == 2 => simple(
            if target.affine {
                Family::AGL
            } else {
                Family::GL
            },
            n,
        ),
        _ => Ok(None),
    }
}

/// `(target, n, q)` cells of the oracle grid.
pub fn oracle_cells(grid: Grid) -> Vec<(OracleTarget, usize, u64)> {
    let t = |s: &str| s.parse::<OracleTarget>().expect("known target");
    let mut cells = Vec::new();
    let full = grid == Grid::Full;
    for q in [2, 3] {
        for n in 1..=if full || q == 2 { 3 } else { 2 } {
            cells.push((t("agl"), n, q));
        }
        for n in 1..=2 {
            cells.push((t("agu"), n, q));
        }
        for n in [2, 4] {
            if n == 4 && q == 3 && !full {
                continue;
            }
            cells.push((t("asp"), n, q));
            cells.push((t("ao-plus"), n, q));
            cells.push((t("ao-minus"), n, q));
        }
    }
    cells.push((t("asp"), 2, 5));
    cells.push((t("ao"), 1, 3));
    cells.push((t("ao"), 3, 3));
    cells.push((t("asl"), 2, 3));
    cells
}

fn oracle_grid(options: &VerifyOptions) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for (target, n, q) in oracle_cells(options.grid) {
        let name = format!("oracle {target}({n},{q})");
        let cap = if (target.family, n, q) == (LinearFamily::Sp, 4, 3) {
            options.large_cap.max(options.cap)
        } else {
            options.cap
        };
        let case = (|| -> Result<CaseResult> {
            let run = oracle::run(target, n, q, cap)?;
            let sums = run.orbit_sums.as_ref().expect("affine target");
            let expected = closed_form_value(target, n, q)?;
            let k = Rat::from(run.k as u64);
            let closed_ok = expected.as_ref().is_none_or(|e| *e == k);
            let sums_ok = sums.total == run.k as u64;
            let detail = format!(
                "k = {}, orbit sum = {}, closed form = {}",
                run.k,
                sums.total,
                expected.map_or("n/a".into(), |e| e.to_string())
            );
            Ok(CaseResult::new(name.clone(), closed_ok && sums_ok, detail))
        })();
        out.push(case.unwrap_or_else(|e| CaseResult::new(name, false, e.to_string())));
    }
    let mut formula_cells = vec![(LinearFamily::GL, 1, 2), (LinearFamily::GL, 1, 3)];
    for q in [2, 3] {
        formula_cells.extend([
            (LinearFamily::GL, 2, q),
            (LinearFamily::GU, 1, q),
            (LinearFamily::GU, 2, q),
        ]);
        if q == 2 || options.grid == Grid::Full {
            formula_cells.push((LinearFamily::GL, 3, q));
        }
    }
    for (family, n, q) in formula_cells {
        let name = format!("orbit counts match partition formula: {family}({n},{q})");
        let case = (|| -> Result<CaseResult> {
            let g = build_group(GroupSpec::new(family, n, q), options.cap)?;
            let report = formula_check_o(&g)?;
            let bad = report.rows.iter().find(|r| !r.agrees);
            Ok(match bad {
                None => CaseResult::new(
                    name.clone(),
                    true,
                    format!("{} classes, total {}", report.rows.len(), report.total),
                ),
                Some(r) => CaseResult::new(
                    name.clone(),
                    false,
                    format!(
                        "class {} {}: measured {} predicted {}",
                        r.representative, r.partition, r.measured, r.predicted
                    ),
                ),
            })
        })();
        out.push(case.unwrap_or_else(|e| CaseResult::new(name, false, e.to_string())));
    }
    let linear = [
        ("gl", 2, 3),
        ("gu", 2, 3),
        ("sp", 4, 2),
        ("o-plus", 4, 3),
        ("o-minus", 4, 2),
        ("o", 3, 5),
    ];
    for (t, n, q) in linear {
        let target: OracleTarget = t.parse()?;
        let name = format!("oracle {target}({n},{q}) class number");
        let case = (|| -> Result<CaseResult> {
            let g = build_group(GroupSpec::new(target.family, n, q), options.cap)?;
            let k = count_classes(&g).k();
            let expected = closed_form_value(target, n, q)?.expect("closed form exists");
            Ok(CaseResult::new(
                name.clone(),
                expected == Rat::from(k as u64),
                format!("k = {k}, closed form = {expected}"),
            ))
        })();
        out.push(case.unwrap_or_else(|e| CaseResult::new(name, false, e.to_string())));
    }
    let direct: &[(usize, u64)] = if options.grid == Grid::Full {
        &[
            (1, 2),
            (2, 2),
            (3, 2),
            (4, 2),
            (2, 3),
            (3, 3),
            (4, 3),
            (2, 4),
            (3, 4),
            (2, 5),
            (3, 5),
            (4, 5),
        ]
    } else {
        &[(1, 2), (2, 2), (2, 3), (3, 2)]
    };
    for &(n, q) in direct {
        let name = format!("rational canonical form class sum: GL({n},{q})");
        let case = (|| -> Result<CaseResult> {
            let sum = gl_direct_class_sum(n, q)?;
            let expected = closed_form_value("agl".parse()?, n, q)?.expect("agl closed form");
            Ok(CaseResult::new(
                name.clone(),
                expected == Rat::from(sum),
                format!("sum = {sum}, k(AGL) = {expected}"),
            ))
        })();
        out.push(case.unwrap_or_else(|e| CaseResult::new(name, false, e.to_string())));
    }
    Ok(out)
}

fn symbolic_coeff(key: FamilyKey, n: usize) -> Result<QPoly> {
    let q = q_symbol();
    let s = if key.family.is_affine() {
        affine_series(key, &q, n)?
    } else {
        classical_series(key, &q, n)?
    };
    Ok(s.coeffs()[n].clone())
}

fn value(key: FamilyKey, q: u64, n: usize) -> Result<Rat> {
    Ok(count_sequence(key, &q_value(q)?, n)?.values[n].clone())
}

fn value_case(name: &str, got: Result<Rat>, expected: i64) -> CaseResult {
    match got {
        Ok(v) => CaseResult::new(
            name,
            v == expected,
            format!("computed {v}, expected {expected}"),
        ),
        Err(e) => CaseResult::new(name, false, e.to_string()),
    }
}

fn poly_case(name: &str, got: Result<QPoly>, expected: QPoly) -> CaseResult {
    match got {
        Ok(v) => CaseResult::new(
            name,
            v == expected,
            format!("computed {v}, expected {expected}"),
        ),
        Err(e) => CaseResult::new(name, false, e.to_string()),
    }
}

/// Every quoted exact value.
fn golden_values(options: &VerifyOptions) -> Result<Vec<CaseResult>> {
    use Characteristic::{Even, Odd};
    let key = FamilyKey::new;
    let half = |coeffs: &[i64]| QPoly::from_ints(coeffs).scale(&Rat::new(1, 2));
    let mut out = vec![
        poly_case(
            "k(AGL(1,q)) = q",
            symbolic_coeff(key(Family::AGL, Odd), 1),
            QPoly::q(),
        ),
        poly_case(
            "k(ASp(2,q)) = 2q + 4",
            symbolic_coeff(key(Family::ASp, Odd), 1),
            QPoly::from_ints(&[4, 2]),
        ),
        poly_case(
            "k(AGU(1,q)) = 2q",
            symbolic_coeff(key(Family::AGU, Odd), 1),
            QPoly::from_ints(&[0, 2]),
        ),
        poly_case(
            "k(AO(1,q)) = (q+3)/2",
            symbolic_coeff(key(Family::AOSum, Odd), 1).map(|p| p.scale(&Rat::new(1, 2))),
            half(&[3, 1]),
        ),
        poly_case(
            "k(AO(3,q)) = (q^2+10q+5)/2",
            symbolic_coeff(key(Family::AOSum, Odd), 3).map(|p| p.scale(&Rat::new(1, 2))),
            half(&[5, 10, 1]),
        ),
        poly_case(
            "k(SL(2,q)) = q + 4",
            symbolic_coeff(key(Family::Sp, Odd), 1),
            QPoly::from_ints(&[4, 1]),
        ),
    ];
    for (f, label) in [
        (Family::AOPlus, "k(AO+(2,q)) = 5q/2"),
        (Family::AOMinus, "k(AO-(2,q)) = 5q/2"),
    ] {
        let got = count_sequence(key(f, Even), &q_symbol(), 1).map(|s| s.values[1].clone());
        out.push(poly_case(label, got, half(&[0, 5])));
    }
    let asp = |ch, q, n| value(key(Family::ASp, ch), q, n);
    out.push(value_case(
        "k(ASL(2,3)) = 10 (as ASp(2,3))",
        asp(Odd, 3, 1),
        10,
    ));
    out.push(value_case("k(ASp(4,3)) = 58", asp(Odd, 3, 2), 58));
    out.push(value_case("k(ASp(4,5)) = 110", asp(Odd, 5, 2), 110));
    out.push(value_case("k(ASp(2,2)) = 5", asp(Even, 2, 1), 5));
    out.push(value_case("k(ASp(4,2)) = 21", asp(Even, 2, 2), 21));
    out.push(value_case("k(ASp(6,2)) = 67", asp(Even, 2, 3), 67));
    let ao = |f, n| value(key(f, Even), 2, n);
    out.push(value_case("k(AO+(2,2)) = 5", ao(Family::AOPlus, 1), 5));
    out.push(value_case("k(AO-(2,2)) = 5", ao(Family::AOMinus, 1), 5));
    out.push(value_case("k(AO+(4,2)) = 20", ao(Family::AOPlus, 2), 20));
    out.push(value_case("k(AO-(4,2)) = 18", ao(Family::AOMinus, 2), 18));
    out.push(value_case("k(AO-(6,2)) = 65", ao(Family::AOMinus, 3), 65));
    let asl = k_ah(3, 1, 2, None).map(|s| s.values[2].clone());
    out.push(value_case(
        "k(ASL(2,3)) = 10 (intermediate-group formula)",
        asl,
        10,
    ));
    let oracle_k = |t: &str, n, q| -> Result<Rat> {
        Ok(Rat::from(
            oracle::run(t.parse()?, n, q, options.cap)?.k as u64,
        ))
    };
    out.push(value_case(
        "k(ASL(2,3)) = 10 (oracle)",
        oracle_k("asl", 2, 3),
        10,
    ));
    out.push(value_case(
        "k(ASU(3,2)) = 24 (oracle)",
        oracle_k("asu", 3, 2),
        24,
    ));
    out.push(value_case(
        "k(Sp(2,3)) = 7 (oracle)",
        oracle_k("sp", 2, 3),
        7,
    ));
    Ok(out)
}

/// Upper bounds, the intermediate-group bound and `k(AO(5,3)) < 243`.
pub fn bound_grid_cases(p: &GridParams) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for report in bounds::check_all(&p.q_set, p.n_max)? {
        let failures = report.failures();
        let exceptions: Vec<String> = report
            .exceptions()
            .iter()
            .map(|c| format!("(q={}, n={}, {})", c.q, c.n, c.value))
            .collect();
        let detail = match failures.first() {
            Some(c) => format!(
                "{} at q={} n={}: {} vs {}",
                c.verdict, c.q, c.n, c.value, c.bound
            ),
            None if exceptions.is_empty() => format!("{} cells, no exceptions", report.cells.len()),
            None => format!(
                "{} cells, exceptions {}",
                report.cells.len(),
                exceptions.join(" ")
            ),
        };
        out.push(CaseResult::new(
            format!("bound {}: {}", report.id, report.statement),
            failures.is_empty(),
            detail,
        ));
    }
    let ah = check_ah_bound(&p.q_set, p.n_max)?;
    let bad = ah.iter().find(|c| c.verdict.is_failure());
    out.push(CaseResult::new(
        "intermediate groups: k(AH) < q^n",
        bad.is_none(),
        match bad {
            Some(c) => format!("{} at q={} e={} n={}", c.verdict, c.q, c.e, c.n),
            None => format!("{} cells", ah.len()),
        },
    ));
    let ao53 = bounds::ao_5_3()?;
    out.push(CaseResult::new(
        "k(AO(5,3)) < 243",
        ao53 < 243i64,
        format!("k(AO(5,3)) = {ao53}"),
    ));
    Ok(out)
}

/// Certificates for the quoted numeric constants.
pub fn constant_cases() -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for spec in quoted_constants() {
        let r = certify_constant(&spec)?;
        out.push(CaseResult::new(
            format!("constant {} at q={}", r.id, r.q),
            r.certified,
            format!(
                "enclosure [{:.6}, {:.6}] vs claimed {}",
                r.lower_f64(),
                r.upper_f64(),
                r.claimed
            ),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_targets() {
        let v = |t: &str, n, q| closed_form_value(t.parse().unwrap(), n, q).unwrap();
        assert_eq!(v("agl", 2, 2), Some(Rat::from(5i64)));
        assert_eq!(v("asp", 4, 3), Some(Rat::from(58i64)));
        assert_eq!(v("ao-minus", 6, 2), Some(Rat::from(65i64)));
        assert_eq!(v("ao", 1, 3), Some(Rat::from(3i64)));
        assert_eq!(v("asl", 2, 3), Some(Rat::from(10i64)));
        assert_eq!(v("asu", 3, 2), None);
    }

    #[test]
    fn small_identities_pass() {
        let r = run_suite(Suite::Identities, &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn parse_names() {
        assert_eq!("cross-method".parse::<Suite>().unwrap(), Suite::CrossMethod);
        assert!("everything".parse::<Suite>().is_err());
        assert_eq!("full".parse::<Grid>().unwrap(), Grid::Full);
    }
}
