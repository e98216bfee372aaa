//! Tables and reports behind the `affcc` binary.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use affine_classes::classcount::{
    affine_recursive, count_sequence, orbit_built_series, q_symbol, q_value, Characteristic,
    Family, FamilyKey, OrbitFamily,
};
use affine_classes::oracle::{self, OracleTarget};
use affine_classes::series::Ring;
use affine_classes::Error;
use serde::{Deserialize, Serialize};

/// Exit codes of the binary.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const FAILURE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const CAP: u8 = 3;
}

/// Environment variable mirroring `--cap`.
pub const CAP_ENV: &str = "AFFCC_CAP";

/// Column order of CSV output.
pub const CSV_HEADER: [&str; 8] = [
    "family", "char", "n", "dim", "q", "method", "value", "status",
];

/// Maps a library error to an exit code.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. }) => exit::CAP,
        Some(
            Error::EvenQ(_)
            | Error::NotPrimePower(_)
            | Error::ParityMismatch { .. }
            | Error::UnsupportedFamily(_)
            | Error::UnknownFamily(_)
            | Error::UnsupportedField(_)
            | Error::UnsupportedDimension(_)
            | Error::NoSuchForm(_)
            | Error::OutOfRange(_)
            | Error::IndexNotDividing { .. },
        ) => exit::USAGE,
        _ if err.downcast_ref::<UsageError>().is_some() => exit::USAGE,
        _ => exit::FAILURE,
    }
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Recursion,
    OrbitAssembly,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::ClosedForm,
        Method::Recursion,
        Method::OrbitAssembly,
        Method::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Recursion => "recursion",
            Method::OrbitAssembly => "orbit-assembly",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| UsageError(format!("unknown method `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Md,
}

impl FromStr for Format {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "md" => Ok(Format::Md),
            _ => Err(UsageError(format!("unknown format `{s}`"))),
        }
    }
}

/// One row of a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub family: String,
    #[serde(rename = "char")]
    pub characteristic: String,
    pub n: usize,
    pub dim: usize,
    /// A number, or `symbolic`.
    pub q: String,
    pub method: Method,
    /// An integer in value mode, a polynomial in `q` otherwise; empty when skipped.
    pub value: String,
    /// `ok`, `agree`, `mismatch` or `skipped`.
    pub status: String,
}

#[derive(Debug, Clone)]
pub struct TableRequest {
    pub family: Family,
    /// `None` for symbolic `q`.
    pub q: Option<u64>,
    /// Needed with symbolic `q`; otherwise taken from `q`.
    pub characteristic: Option<Characteristic>,
    pub n_max: usize,
    pub methods: Vec<Method>,
    pub cap: u128,
}

impl TableRequest {
    fn key(&self) -> anyhow::Result<FamilyKey> {
        let ch = match (self.q, self.characteristic) {
            (Some(q), Some(c)) if Characteristic::of(q) != c => {
                return Err(UsageError(format!("q = {q} is not of {c} characteristic")).into())
            }
            (Some(q), _) => Characteristic::of(q),
            (None, Some(c)) => c,
            (None, None) => Characteristic::Odd,
        };
        Ok(FamilyKey::new(self.family, ch))
    }
}

/// AGL and AGU assemble the same way in both characteristics.
fn orbit_family(key: FamilyKey) -> Option<OrbitFamily> {
    match key.family {
        Family::AGL => Some(OrbitFamily::AGL),
        Family::AGU => Some(OrbitFamily::AGU),
        _ => OrbitFamily::ALL.into_iter().find(|f| f.key() == key),
    }
}

/// The oracle group whose class number is the value at index `n`, if small enough.
fn oracle_target(key: FamilyKey, n: usize) -> Option<(OracleTarget, usize)> {
    let dim = key.dimension(n);
    let name = match key.family {
        Family::GL | Family::GU | Family::Sp | Family::AGL | Family::AGU | Family::ASp => {
            key.family.name()
        }
        Family::OPlus | Family::OMinus | Family::AOPlus | Family::AOMinus
            if dim.is_multiple_of(2) =>
        {
            key.family.name()
        }
        _ => return None,
    };
    (1..=4)
        .contains(&dim)
        .then(|| (name.parse().expect("oracle name"), dim))
}

fn column<R: Ring>(
    req: &TableRequest,
    key: FamilyKey,
    q: &R,
    method: Method,
) -> anyhow::Result<Vec<Option<String>>> {
    let n = req.n_max;
    let strings = |v: &[R]| v.iter().map(|x| Some(x.to_string())).collect::<Vec<_>>();
    Ok(match method {
        Method::ClosedForm => strings(&count_sequence(key, q, n)?.values),
        Method::Recursion => {
            if !key.family.is_affine() || key.family == Family::BSp {
                vec![None; n + 1]
            } else {
                strings(&affine_recursive(key, q, n)?.values)
            }
        }
        Method::OrbitAssembly => match orbit_family(key) {
            Some(f) => strings(orbit_built_series(f, q, n)?.total().coeffs()),
            None => vec![None; n + 1],
        },
        Method::Oracle => {
            let Some(qv) = req.q else {
                return Ok(vec![None; n + 1]);
            };
            let mut out = Vec::with_capacity(n + 1);
            for i in 0..=n {
                out.push(match oracle_target(key, i) {
                    Some((target, dim)) => {
                        Some(oracle::run(target, dim, qv, req.cap)?.k.to_string())
                    }
                    None => None,
                });
            }
            out
        }
    })
}

/// Rows for `n = 1..=n_max`, grouped by `n` then by method.
pub fn table(req: &TableRequest) -> anyhow::Result<Vec<OutputRecord>> {
    if req.n_max == 0 {
        return Err(UsageError("--n-max must be at least 1".into()).into());
    }
    let key = req.key()?;
    let columns: Vec<Vec<Option<String>>> = match req.q {
        Some(q) => {
            let qr = q_value(q)?;
            req.methods
                .iter()
                .map(|&m| column(req, key, &qr, m))
                .collect::<anyhow::Result<_>>()?
        }
        None => {
            let qs = q_symbol();
            req.methods
                .iter()
                .map(|&m| column(req, key, &qs, m))
                .collect::<anyhow::Result<_>>()?
        }
    };
    let reference = req.methods.iter().position(|&m| m == Method::ClosedForm);
    let mut rows = Vec::new();
    for n in 1..=req.n_max {
        for (j, &method) in req.methods.iter().enumerate() {
            let value = columns[j][n].clone();
            let status = match (&value, reference) {
                (None, _) => "skipped",
                (Some(_), Some(r)) if r == j => "ok",
                (Some(v), Some(r)) => match &columns[r][n] {
                    Some(c) if c == v => "agree",
                    _ => "mismatch",
                },
                (Some(_), None) => "ok",
            };
            rows.push(OutputRecord {
                family: key.family.name().into(),
                characteristic: key.characteristic.name().into(),
                n,
                dim: key.dimension(n),
                q: req.q.map_or("symbolic".into(), |q| q.to_string()),
                method,
                value: value.unwrap_or_default(),
                status: status.into(),
            });
        }
    }
    Ok(rows)
}

pub fn write_records(
    records: &[OutputRecord],
    format: Format,
    out: &mut dyn Write,
) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, records)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in records {
                w.write_record(record_fields(r))?;
            }
            w.flush()?;
        }
        Format::Md => {
            writeln!(out, "| {} |", CSV_HEADER.join(" | "))?;
            writeln!(out, "|{}", "---|".repeat(CSV_HEADER.len()))?;
            for r in records {
                writeln!(out, "| {} |", record_fields(r).join(" | "))?;
            }
        }
    }
    Ok(())
}

fn record_fields(r: &OutputRecord) -> [String; 8] {
    [
        r.family.clone(),
        r.characteristic.clone(),
        r.n.to_string(),
        r.dim.to_string(),
        r.q.clone(),
        r.method.name().into(),
        r.value.clone(),
        r.status.clone(),
    ]
}

/// Parses CSV written by [`write_records`].
pub fn read_csv(text: &str) -> anyhow::Result<Vec<OutputRecord>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers()?.iter().map(String::from).collect();
    if header != CSV_HEADER {
        return Err(UsageError(format!("unexpected CSV header {header:?}")).into());
    }
    rdr.records()
        .map(|row| {
            let row = row?;
            Ok(OutputRecord {
                family: row[0].into(),
                characteristic: row[1].into(),
                n: row[2].parse()?,
                dim: row[3].parse()?,
                q: row[4].into(),
                method: row[5].parse()?,
                value: row[6].into(),
                status: row[7].into(),
            })
        })
        .collect()
}

/// Optional defaults read from a TOML file; flags override them.
///
/// ```toml
/// order = 25     # default --n-max for `table`
/// cap = 2000000  # element cap for the oracle
/// grid = "small" # default --grid for `verify`
/// ```
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub order: Option<usize>,
    pub cap: Option<u128>,
    pub grid: Option<String>,
}

impl Config {
    pub fn load(path: &Path) -> anyhow::Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| UsageError(format!("invalid config {}: {e}", path.display())).into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(family: &str, q: Option<u64>, n_max: usize, methods: &[Method]) -> TableRequest {
        TableRequest {
            family: family.parse().unwrap(),
            q,
            characteristic: None,
            n_max,
            methods: methods.to_vec(),
            cap: oracle::DEFAULT_CAP,
        }
    }

    #[test]
    fn asp_table_values() {
        let rows = table(&req("asp", Some(3), 2, &[Method::ClosedForm])).unwrap();
        let values: Vec<&str> = rows.iter().map(|r| r.value.as_str()).collect();
        assert_eq!(values, ["10", "58"]);
        assert_eq!(rows[1].dim, 4);
    }

    #[test]
    fn methods_agree_on_agl() {
        let rows = table(&req("agl", Some(2), 3, &Method::ALL)).unwrap();
        assert!(
            rows.iter().all(|r| r.status == "ok" || r.status == "agree"),
            "{rows:?}"
        );
        assert!(rows
            .iter()
            .any(|r| r.method == Method::Oracle && r.status == "agree"));
    }

    #[test]
    fn symbolic_table() {
        let rows = table(&req(
            "agu",
            None,
            1,
            &[Method::ClosedForm, Method::OrbitAssembly],
        ))
        .unwrap();
        assert_eq!(rows[0].value, "2q");
        assert_eq!(rows[1].status, "agree");
    }

    #[test]
    fn parity_mismatch_is_usage() {
        let mut r = req("asp", Some(3), 2, &[Method::ClosedForm]);
        r.characteristic = Some(Characteristic::Even);
        assert_eq!(exit_code(&table(&r).unwrap_err()), exit::USAGE);
    }

    #[test]
    fn config_parses() {
        let c: Config = toml::from_str("order = 12\ncap = 100\n").unwrap();
        assert_eq!(c.order, Some(12));
        assert!(toml::from_str::<Config>("colour = 1").is_err());
    }
}
