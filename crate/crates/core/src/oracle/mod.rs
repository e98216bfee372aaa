//! Brute-force ground truth on explicitly enumerated groups.
//!
//! Everything here works on complete element lists, so it only reaches small
//! cases; every enumeration is bounded by an element cap.

pub mod affine;
pub mod classes;
pub mod field;
pub mod group;
pub mod matrix;
pub mod poly;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use affine::{build_affine, AffineGroup};
pub use classes::{
    count_affine_classes, count_classes, formula_check_o, orbit_sum_check, unipotent_partition,
    ClassDecomposition, ClassOrbit, FormulaReport, FormulaRow, OrbitSumReport,
};
pub use field::FiniteField;
pub use group::{build_group, expected_order, GroupSpec, LinearFamily, MatrixGroup, DEFAULT_CAP};
pub use poly::gl_direct_class_sum;

use crate::error::{Error, Result};

/// A linear group or its affine extension, named as on the command line
/// (`gl`, `asu`, `ao-minus`, ...; `o`/`ao` are the odd-dimensional groups).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OracleTarget {
    pub family: LinearFamily,
    pub affine: bool,
}

impl OracleTarget {
    pub fn name(&self) -> String {
        let base = match self.family {
            LinearFamily::OOdd => "o",
            f => f.name(),
        };
        if self.affine {
            format!("a{base}")
        } else {
            base.to_string()
        }
    }
}

impl fmt::Display for OracleTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for OracleTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (affine, rest) = match s.strip_prefix('a') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let family = match rest {
            "o" => LinearFamily::OOdd,
            other => other
                .parse()
                .map_err(|_| Error::UnknownFamily(s.to_string()))?,
        };
        if family == LinearFamily::OOdd && rest != "o" {
            return Err(Error::UnknownFamily(s.to_string()));
        }
        Ok(OracleTarget { family, affine })
    }
}

/// Result of running the oracle on one group.
#[derive(Debug, Clone, Serialize)]
pub struct OracleRun {
    pub target: String,
    pub n: usize,
    pub q: u64,
    pub field: String,
    pub form: String,
    pub order: u64,
    pub k: usize,
    pub classes: ClassDecomposition,
    /// Centralizer orbit counts of the linear part (affine targets only).
    pub orbit_sums: Option<OrbitSumReport>,
}

/// Builds the group, counts its classes and, for affine targets, the orbit sums.
pub fn run(target: OracleTarget, n: usize, q: u64, cap: u128) -> Result<OracleRun> {
    let spec = GroupSpec::new(target.family, n, q);
    let (base, classes) = if target.affine {
        let a = build_affine(spec, cap)?;
        a.verify_sampled(4096)?;
        let c = count_affine_classes(&a);
        (a.base().clone(), c)
    } else {
        let g = build_group(spec, cap)?;
        let c = count_classes(&g);
        (g, c)
    };
    base.verify()?;
    if !classes.check_class_equation() {
        return Err(Error::Inconsistent(format!(
            "class equation fails for {target}({n},{q})"
        )));
    }
    let orbit_sums = target.affine.then(|| orbit_sum_check(&base));
    Ok(OracleRun {
        target: target.name(),
        n,
        q,
        field: base.field().describe(),
        form: base.form().describe(),
        order: classes.group_order,
        k: classes.k(),
        classes,
        orbit_sums,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_names_round_trip() {
        for s in [
            "gl", "sl", "gu", "su", "sp", "o-plus", "o-minus", "o", "agl", "asu", "ao", "ao-minus",
        ] {
            assert_eq!(s.parse::<OracleTarget>().unwrap().name(), s);
        }
        assert!("o-odd".parse::<OracleTarget>().is_err());
        assert!("bsp".parse::<OracleTarget>().is_err());
    }

    #[test]
    fn asu_3_2() {
        let r = run("asu".parse().unwrap(), 3, 2, DEFAULT_CAP).unwrap();
        assert_eq!(r.k, 24);
        assert_eq!(r.orbit_sums.unwrap().total, 24);
    }
}
