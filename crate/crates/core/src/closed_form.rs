//! Closed-form κ_g for strong products of paths and cycles.
//!
//! All ceilings of square roots are computed with integer arithmetic:
//! `⌈2√x⌉` is the least `k` with `k² ≥ 4x`, `⌈4√x⌉` the least `k` with
//! `k² ≥ 16x`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{make_cycle, make_path};
use crate::products::{strong_product, ProductGraph};

/// The three product families with a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `P_m ⊠ P_n`
    #[serde(rename = "pxp")]
    PathPath,
    /// `C_m ⊠ P_n`
    #[serde(rename = "cxp")]
    CyclePath,
    /// `C_m ⊠ C_n`
    #[serde(rename = "cxc")]
    CycleCycle,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::PathPath, Family::CyclePath, Family::CycleCycle];

    pub fn short_name(self) -> &'static str {
        match self {
            Family::PathPath => "pxp",
            Family::CyclePath => "cxp",
            Family::CycleCycle => "cxc",
        }
    }

    /// Builds `G1 ⊠ G2` for this family with the given factor orders.
    pub fn build(self, m: usize, n: usize) -> Result<ProductGraph> {
        let (g1, g2) = match self {
            Family::PathPath => (make_path(m)?, make_path(n)?),
            Family::CyclePath => (make_cycle(m)?, make_path(n)?),
            Family::CycleCycle => (make_cycle(m)?, make_cycle(n)?),
        };
        strong_product(&g1, &g2)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pxp" => Ok(Family::PathPath),
            "cxp" => Ok(Family::CyclePath),
            "cxc" => Ok(Family::CycleCycle),
            other => Err(Error::InvalidInput(format!(
                "unknown family `{other}` (expected pxp, cxp or cxc)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub g: usize,
}

impl FamilyParams {
    /// Checks the factor-order hypotheses: `m, n ≥ 3` for paths x paths,
    /// `m ≥ 4, n ≥ 3` for cycle x path, `m, n ≥ 4` for cycles x cycles.
    pub fn new(family: Family, m: usize, n: usize, g: usize) -> Result<Self> {
        let (min_m, min_n) = match family {
            Family::PathPath => (3, 3),
            Family::CyclePath => (4, 3),
            Family::CycleCycle => (4, 4),
        };
        if m < min_m || n < min_n {
            return Err(Error::OutOfDomain(format!(
                "{family} needs m >= {min_m} and n >= {min_n}, got m={m}, n={n}"
            )));
        }
        Ok(Self { family, m, n, g })
    }

    /// Largest `g` covered by the closed form, or `None` if no `g` is.
    pub fn guard_bound(&self) -> Option<usize> {
        let (m, n) = (self.m as i64, self.n as i64);
        let bound = match self.family {
            Family::PathPath => (n * ((m - 1) / 2) - 1).min(m * ((n - 1) / 2) - 1),
            Family::CyclePath => (n * ((m - 2) / 2) - 1).min(m * ((n - 1) / 2) - 1),
            Family::CycleCycle => (n * ((m - 2) / 2) - 1).min(m * ((n - 2) / 2) - 1),
        };
        usize::try_from(bound).ok()
    }

    /// The three min-terms, in witness order: row cut, column cut, corner.
    pub fn terms(&self) -> [usize; 3] {
        let (m, n, g) = (self.m, self.n, self.g as u64);
        match self.family {
            Family::PathPath => [m, n, ceil_2sqrt(g + 1) as usize + 1],
            Family::CyclePath => [m, 2 * n, ceil_2sqrt(2 * (g + 1)) as usize + 2],
            Family::CycleCycle => [2 * m, 2 * n, ceil_4sqrt(g + 1) as usize + 4],
        }
    }
}

pub fn guard(params: &FamilyParams) -> bool {
    params.guard_bound().is_some_and(|b| params.g <= b)
}

/// Which min-term a value comes from. `RowCut` is the term realised by
/// copies of the first factor (`S1`), `ColumnCut` by copies of the second
/// (`S2`), `Corner` by the corner construction (`S3`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    RowCut,
    ColumnCut,
    Corner,
}

impl Term {
    pub const ALL: [Term; 3] = [Term::RowCut, Term::ColumnCut, Term::Corner];

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaResult {
    pub value: usize,
    pub active_terms: Vec<Term>,
    pub in_domain: bool,
}

impl FormulaResult {
    pub fn term_value(params: &FamilyParams, term: Term) -> usize {
        params.terms()[term.index()]
    }
}

pub fn kappa_formula(params: &FamilyParams) -> Result<FormulaResult> {
    if !guard(params) {
        return Err(Error::OutOfDomain(format!(
            "g={} exceeds the bound {} for {} with m={}, n={}",
            params.g,
            params
                .guard_bound()
                .map_or_else(|| "(none)".to_string(), |b| b.to_string()),
            params.family,
            params.m,
            params.n
        )));
    }
    let terms = params.terms();
    let value = *terms.iter().min().expect("three terms");
    Ok(FormulaResult {
        value,
        active_terms: Term::ALL
            .into_iter()
            .filter(|t| terms[t.index()] == value)
            .collect(),
        in_domain: true,
    })
}

/// Products of a path or cycle with a very small factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SmallCase {
    /// `P_1 ⊠ P_n`
    P1Pn,
    /// `P_2 ⊠ P_n`
    P2Pn,
    /// `C_3 ⊠ P_n`
    C3Pn,
    /// `C_3 ⊠ C_n`
    C3Cn,
}

impl SmallCase {
    pub const ALL: [SmallCase; 4] = [
        SmallCase::P1Pn,
        SmallCase::P2Pn,
        SmallCase::C3Pn,
        SmallCase::C3Cn,
    ];

    pub fn value(self) -> usize {
        match self {
            SmallCase::P1Pn => 1,
            SmallCase::P2Pn => 2,
            SmallCase::C3Pn => 3,
            SmallCase::C3Cn => 6,
        }
    }

    /// Largest admissible `g`, or `None` if there is none.
    pub fn guard_bound(self, n: usize) -> Option<usize> {
        let n = n as i64;
        let bound = match self {
            SmallCase::P1Pn => (n - 1) / 2 - 1,
            SmallCase::P2Pn => 2 * ((n - 1) / 2) - 1,
            SmallCase::C3Pn => 3 * ((n - 1) / 2) - 1,
            SmallCase::C3Cn => 3 * ((n - 2) / 2) - 1,
        };
        usize::try_from(bound).ok()
    }

    pub fn build(self, n: usize) -> Result<ProductGraph> {
        let (g1, g2) = match self {
            SmallCase::P1Pn => (make_path(1)?, make_path(n)?),
            SmallCase::P2Pn => (make_path(2)?, make_path(n)?),
            SmallCase::C3Pn => (make_cycle(3)?, make_path(n)?),
            SmallCase::C3Cn => (make_cycle(3)?, make_cycle(n)?),
        };
        strong_product(&g1, &g2)
    }
}

pub fn kappa_small_case(which: SmallCase, n: usize, g: usize) -> Result<usize> {
    let min_n = if which == SmallCase::C3Cn { 3 } else { 1 };
    match which.guard_bound(n) {
        Some(bound) if n >= min_n && g <= bound => Ok(which.value()),
        bound => Err(Error::OutOfDomain(format!(
            "{which:?} with n={n}: g={g} outside bound {}",
            bound.map_or_else(|| "(none)".to_string(), |b| b.to_string())
        ))),
    }
}

/// Result of [`kappa_for_family`], naming which rule produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum FamilyValue {
    General {
        params: FamilyParams,
        result: FormulaResult,
    },
    SmallCase {
        case: SmallCase,
        n: usize,
        value: usize,
    },
}

impl FamilyValue {
    pub fn value(&self) -> usize {
        match self {
            FamilyValue::General { result, .. } => result.value,
            FamilyValue::SmallCase { value, .. } => *value,
        }
    }
}

/// Routes `(family, m, n, g)` to the general formula or to a small case.
/// Orders 1 and 2 for paths, and 3 for cycles, go to the small cases
/// (using symmetry of the strong product where the small factor is
/// second).
pub fn kappa_for_family(family: Family, m: usize, n: usize, g: usize) -> Result<FamilyValue> {
    let small = |case: SmallCase, other: usize| -> Result<FamilyValue> {
        Ok(FamilyValue::SmallCase {
            case,
            n: other,
            value: kappa_small_case(case, other, g)?,
        })
    };
    match family {
        Family::PathPath if m.min(n) == 1 => small(SmallCase::P1Pn, m.max(n)),
        Family::PathPath if m.min(n) == 2 => small(SmallCase::P2Pn, m.max(n)),
        Family::CyclePath if m == 3 => small(SmallCase::C3Pn, n),
        Family::CycleCycle if m.min(n) == 3 => small(SmallCase::C3Cn, m.max(n)),
        _ => {
            let params = FamilyParams::new(family, m, n, g)?;
            let result = kappa_formula(&params)?;
            Ok(FamilyValue::General { params, result })
        }
    }
}

/// Checks the corner-cut size identity used for each family:
///
/// * paths x paths: `c + ⌈N/c⌉ = ⌈2√N⌉` with `N = g+1`, `c = ⌈√N⌉`
/// * cycle x path: the same with `N = 2(g+1)`
/// * cycles x cycles: `2c + 2⌈N/c⌉ = ⌈4√N⌉` with `N = g+1`
///
/// The last one does not hold for every `g` (it fails first at `g = 2`).
pub fn ceiling_identity(family: Family, g: u64) -> bool {
    let n = match family {
        Family::CyclePath => 2 * (g + 1),
        _ => g + 1,
    };
    let c = ceil_sqrt(n);
    let side = c + n.div_ceil(c);
    match family {
        Family::PathPath | Family::CyclePath => side == ceil_2sqrt(n),
        Family::CycleCycle => 2 * side == ceil_4sqrt(n),
    }
}

/// Least `k` with `k² ≥ x`.
pub fn ceil_sqrt(x: u64) -> u64 {
    let r = x.isqrt();
    if r * r == x {
        r
    } else {
        r + 1
    }
}

/// `⌈2√x⌉`.
pub fn ceil_2sqrt(x: u64) -> u64 {
    ceil_sqrt(4 * x)
}

/// `⌈4√x⌉`.
pub fn ceil_4sqrt(x: u64) -> u64 {
    ceil_sqrt(16 * x)
}
