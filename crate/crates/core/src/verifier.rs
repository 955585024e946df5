//! Grid reconciliation: closed form vs. exact solver vs. witnesses, plus
//! the layer-bound and I/L-structure checks on enumerated minimum cuts.
//!
//! Reports are deterministic for a given configuration: cells are
//! evaluated in parallel but assembled in grid order, and timings are
//! only included on request.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::closed_form::{kappa_formula, Family, FamilyParams};
use crate::error::{Error, Result};
use crate::extra_conn::{
    check_layer_bounds, enumerate_min_cuts_with, kappa_extra_fragment, kappa_extra_fragment_with,
    FragmentConfig, Kappa,
};
use crate::graph::Graph;
use crate::products::{cartesian_product, ProductGraph};
use crate::witnesses::all_witnesses;

/// Default product-size ceiling for solving a cell.
pub const DEFAULT_FULL_CEILING: usize = 36;
/// Default product-size ceiling for enumerating every minimum cut.
pub const DEFAULT_ENUM_CEILING: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GPolicy {
    /// `g = 0 ..= guard bound` for every cell.
    AllInGuard,
    Explicit(Vec<usize>),
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub families: Vec<Family>,
    pub m_range: RangeInclusive<usize>,
    pub n_range: RangeInclusive<usize>,
    pub g_policy: GPolicy,
    pub threads: Option<usize>,
    pub full_ceiling: usize,
    pub enum_ceiling: usize,
    pub record_timings: bool,
}

impl SweepConfig {
    pub fn new(
        family: Family,
        m_range: RangeInclusive<usize>,
        n_range: RangeInclusive<usize>,
    ) -> Self {
        Self {
            families: vec![family],
            m_range,
            n_range,
            g_policy: GPolicy::AllInGuard,
            threads: None,
            full_ceiling: DEFAULT_FULL_CEILING,
            enum_ceiling: DEFAULT_ENUM_CEILING,
            record_timings: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleValue {
    Value(Kappa),
    Inconclusive,
}

impl Serialize for OracleValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            OracleValue::Value(k) => k.serialize(s),
            OracleValue::Inconclusive => s.serialize_str("inconclusive"),
        }
    }
}

impl std::fmt::Display for OracleValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleValue::Value(k) => write!(f, "{k}"),
            OracleValue::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub which: String,
    pub predicted_size: usize,
    pub size: Option<usize>,
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub g: usize,
    pub guard: bool,
    /// `None` outside the guard (domain error).
    pub formula: Option<usize>,
    pub oracle: OracleValue,
    /// `formula == oracle`, only for in-guard rows with a conclusive oracle.
    pub agree: Option<bool>,
    pub witnesses: Vec<WitnessSummary>,
    /// Every built witness is a valid cut of its predicted size and the
    /// formula value is attained by one of them. In-guard rows only.
    pub witnesses_ok: Option<bool>,
    /// Layer bounds on every minimum cut; rows within the enumeration
    /// ceiling with a finite oracle only.
    pub layer_bounds: Option<bool>,
    /// Every minimum vertex cut is an I-set or L-set; `g = 0` rows within
    /// the enumeration ceiling only.
    pub cut_structure: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl SweepRow {
    /// False when any asserted check failed.
    pub fn passes(&self) -> bool {
        [
            self.agree,
            self.witnesses_ok,
            self.layer_bounds,
            self.cut_structure,
        ]
        .iter()
        .all(|c| *c != Some(false))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
}

const CSV_HEADER: &str =
    "family,m,n,g,guard,formula,oracle,agree,witnesses,witnesses_ok,layer_bounds,cut_structure";

fn opt_bool(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "",
    }
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(SweepRow::passes)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| !r.passes())
    }

    /// Consecutive in-guard rows of one cell where `κ_g > κ_{g+1}`.
    pub fn monotonicity_violations(&self) -> Vec<(Family, usize, usize, usize)> {
        self.rows
            .windows(2)
            .filter_map(|w| {
                let (a, b) = (&w[0], &w[1]);
                let same_cell = (a.family, a.m, a.n) == (b.family, b.m, b.n) && b.g == a.g + 1;
                match (same_cell && a.guard && b.guard, a.oracle, b.oracle) {
                    (true, OracleValue::Value(x), OracleValue::Value(y)) if x > y => {
                        Some((a.family, a.m, a.n, a.g))
                    }
                    _ => None,
                }
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let timed = self.rows.iter().any(|r| r.runtime_ms.is_some());
        let mut out = String::from(CSV_HEADER);
        if timed {
            out.push_str(",runtime_ms");
        }
        out.push('\n');
        for r in &self.rows {
            let witnesses = r
                .witnesses
                .iter()
                .map(|w| {
                    format!(
                        "{}:{}:{}",
                        w.which,
                        w.size.map_or_else(|| "-".to_string(), |s| s.to_string()),
                        if w.valid { "ok" } else { "bad" }
                    )
                })
                .collect::<Vec<_>>()
                .join(";");
            let _ = write!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                r.family,
                r.m,
                r.n,
                r.g,
                r.guard,
                r.formula
                    .map_or_else(|| "domain".to_string(), |v| v.to_string()),
                r.oracle,
                opt_bool(r.agree),
                witnesses,
                opt_bool(r.witnesses_ok),
                opt_bool(r.layer_bounds),
                opt_bool(r.cut_structure),
            );
            if timed {
                let _ = write!(out, ",{}", r.runtime_ms.unwrap_or(0));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report is serializable")
    }
}

struct Cell {
    family: Family,
    m: usize,
    n: usize,
    g: usize,
    bound: Option<usize>,
}

fn cells(config: &SweepConfig) -> Vec<Cell> {
    let mut out = Vec::new();
    for &family in &config.families {
        for m in config.m_range.clone() {
            for n in config.n_range.clone() {
                let Ok(base) = FamilyParams::new(family, m, n, 0) else {
                    continue;
                };
                let bound = base.guard_bound();
                let gs: Vec<usize> = match &config.g_policy {
                    GPolicy::AllInGuard => bound.map_or_else(Vec::new, |b| (0..=b).collect()),
                    GPolicy::Explicit(list) => list.clone(),
                };
                out.extend(gs.into_iter().map(|g| Cell {
                    family,
                    m,
                    n,
                    g,
                    bound,
                }));
            }
        }
    }
    out
}

pub fn sweep(config: &SweepConfig) -> Result<SweepReport> {
    let cells = cells(config);
    let run = || -> Vec<Result<SweepRow>> {
        cells
            .par_iter()
            .map(|cell| evaluate_cell(cell, config))
            .collect()
    };
    let rows = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    Ok(SweepReport {
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}

fn evaluate_cell(cell: &Cell, config: &SweepConfig) -> Result<SweepRow> {
    let start = Instant::now();
    let params = FamilyParams::new(cell.family, cell.m, cell.n, cell.g)?;
    let guard = cell.bound.is_some_and(|b| cell.g <= b);
    let pg = cell.family.build(cell.m, cell.n)?;
    let size = pg.graph().vertex_count();

    let formula = kappa_formula(&params).ok().map(|r| r.value);
    let outcomes = if guard {
        all_witnesses(&pg, &params)
    } else {
        Vec::new()
    };
    let witnesses: Vec<WitnessSummary> = outcomes
        .iter()
        .map(|o| WitnessSummary {
            which: o.which.to_string(),
            predicted_size: o.predicted_size,
            size: o.size,
            valid: o.valid == Some(true) && o.size == Some(o.predicted_size),
        })
        .collect();
    let seed = outcomes
        .iter()
        .filter(|o| o.valid == Some(true))
        .filter_map(|o| o.cut.clone())
        .min_by_key(|c| c.len());
    let solver = FragmentConfig {
        threads: None,
        seed,
    };

    let (oracle, min_cuts) = if size > config.full_ceiling {
        (OracleValue::Inconclusive, None)
    } else if size <= config.enum_ceiling {
        let (result, cuts) = enumerate_min_cuts_with(pg.graph(), cell.g, &solver)?;
        (OracleValue::Value(result.value), Some(cuts))
    } else {
        let result = kappa_extra_fragment_with(pg.graph(), cell.g, &solver)?;
        (OracleValue::Value(result.value), None)
    };

    let agree = match (guard, formula, oracle) {
        (true, Some(f), OracleValue::Value(k)) => Some(k == Kappa::Finite(f)),
        _ => None,
    };
    let witnesses_ok = guard.then(|| {
        let attained =
            formula.is_some_and(|f| witnesses.iter().any(|w| w.valid && w.size == Some(f)));
        attained && witnesses.iter().all(|w| w.valid)
    });
    let (layer_bounds, cut_structure) = match (&min_cuts, oracle) {
        (Some(cuts), OracleValue::Value(Kappa::Finite(_))) => {
            let mut layers = true;
            for cut in cuts {
                layers &= check_layer_bounds(&pg, cut)?;
            }
            let structure = if cell.g == 0 {
                let mut ok = true;
                for cut in cuts {
                    ok &= pg.classify_cut(cut)?.is_structured();
                }
                Some(ok)
            } else {
                None
            };
            (Some(layers), structure)
        }
        _ => (None, None),
    };

    Ok(SweepRow {
        family: cell.family,
        m: cell.m,
        n: cell.n,
        g: cell.g,
        guard,
        formula,
        oracle,
        agree,
        witnesses,
        witnesses_ok,
        layer_bounds,
        cut_structure,
        runtime_ms: config
            .record_timings
            .then(|| start.elapsed().as_millis() as u64),
    })
}

/// True iff every minimum vertex cut of `pg` is an I-set or an L-set.
/// Vacuously true when the product is complete.
pub fn check_cut_structure(pg: &ProductGraph) -> Result<bool> {
    check_cut_structure_within(pg, DEFAULT_ENUM_CEILING)
}

pub fn check_cut_structure_within(pg: &ProductGraph, ceiling: usize) -> Result<bool> {
    if pg.graph().vertex_count() > ceiling {
        return Err(Error::TooLarge {
            vertex_count: pg.graph().vertex_count(),
            max: ceiling,
        });
    }
    let (_, cuts) = enumerate_min_cuts_with(pg.graph(), 0, &FragmentConfig::default())?;
    for cut in &cuts {
        if !pg.classify_cut(cut)?.is_structured() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(oracle κ(G1 □ G2), min{κ(G1)|V2|, κ(G2)|V1|, δ(G1 □ G2)})`.
pub fn cartesian_formula_values(g1: &Graph, g2: &Graph) -> Result<(usize, usize)> {
    let pg = cartesian_product(g1, g2)?;
    let oracle = if pg.graph().is_complete() {
        pg.graph().vertex_count() - 1
    } else {
        kappa_extra_fragment(pg.graph(), 0)?
            .value
            .finite()
            .expect("non-complete connected graph has a vertex cut")
    };
    let formula = (g1.connectivity() * g2.vertex_count())
        .min(g2.connectivity() * g1.vertex_count())
        .min(pg.graph().min_degree());
    Ok((oracle, formula))
}

pub fn check_cartesian_formula(g1: &Graph, g2: &Graph) -> Result<bool> {
    cartesian_formula_values(g1, g2).map(|(oracle, formula)| oracle == formula)
}
