//! Exact g-extra connectivity.
//!
//! Two independent solvers: [`kappa_extra_subset`] tries every vertex
//! subset by increasing size, [`kappa_extra_fragment`] enumerates the
//! connected sets that can be the smallest side of a cut. Both return the
//! lexicographically smallest minimum cut as the witness.

mod fragment;
pub(crate) mod mask;
mod subset;

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{CutSet, Graph, VertexSet};
use crate::products::{Axis, ProductGraph};

pub use mask::MAX_VERTICES;

/// Default cap on subset validity checks for [`kappa_extra_subset`].
pub const DEFAULT_SUBSET_BUDGET: u64 = 100_000_000;

/// A connectivity value: finite, or infinite when no cut exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kappa {
    Finite(usize),
    Infinite,
}

impl Kappa {
    pub fn finite(self) -> Option<usize> {
        match self {
            Kappa::Finite(k) => Some(k),
            Kappa::Infinite => None,
        }
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kappa::Finite(k) => write!(f, "{k}"),
            Kappa::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for Kappa {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Kappa::Finite(k) => s.serialize_u64(*k as u64),
            Kappa::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for Kappa {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|k| Kappa::Finite(k as usize))
                .ok_or_else(|| serde::de::Error::custom("expected a non-negative integer")),
            serde_json::Value::String(s) if s == "infinity" => Ok(Kappa::Infinite),
            other => Err(serde::de::Error::custom(format!(
                "expected integer or \"infinity\", got {other}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Subset,
    Fragment,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    /// Subsets checked, or search-tree nodes visited. With more than one
    /// thread the fragment count depends on scheduling.
    pub nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraConnResult {
    pub g: usize,
    pub value: Kappa,
    pub witness: Option<CutSet>,
    pub solver: Solver,
    pub stats: SolveStats,
}

/// Verdict on a candidate g-extra cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutVerdict {
    pub is_cut: bool,
    pub min_component_size: usize,
    pub is_g_extra: bool,
    /// Sizes of the components of `G - S`, by smallest member.
    pub component_sizes: Vec<usize>,
}

pub fn check_g_extra_cut(g: &Graph, s: &VertexSet, extra: usize) -> Result<CutVerdict> {
    s.validate(g.vertex_count())?;
    if s.len() == g.vertex_count() {
        return Err(Error::WholeVertexSet);
    }
    let component_sizes: Vec<usize> = g.components(s)?.iter().map(VertexSet::len).collect();
    let is_cut = component_sizes.len() >= 2;
    let min_component_size = component_sizes.iter().copied().min().unwrap_or(0);
    Ok(CutVerdict {
        is_cut,
        min_component_size,
        is_g_extra: is_cut && min_component_size > extra,
        component_sizes,
    })
}

fn check_input(g: &Graph) -> Result<Vec<mask::Mask>> {
    if g.vertex_count() > MAX_VERTICES {
        return Err(Error::TooLarge {
            vertex_count: g.vertex_count(),
            max: MAX_VERTICES,
        });
    }
    if g.vertex_count() < 2 || !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(mask::adjacency_masks(g))
}

/// Naive oracle: all subsets of size `k = 1, 2, ...` in lexicographic
/// order. Gives up with [`Error::Inconclusive`] after `budget` checks
/// (default [`DEFAULT_SUBSET_BUDGET`]).
pub fn kappa_extra_subset(g: &Graph, extra: usize, budget: Option<u64>) -> Result<ExtraConnResult> {
    let start = Instant::now();
    let adj = check_input(g)?;
    let budget = budget.unwrap_or(DEFAULT_SUBSET_BUDGET);
    let (found, checks) = subset::search(&adj, extra, budget)?;
    Ok(ExtraConnResult {
        g: extra,
        value: found.map_or(Kappa::Infinite, |m| Kappa::Finite(mask::count(m))),
        witness: found.map(mask::to_set),
        solver: Solver::Subset,
        stats: SolveStats {
            nodes: checks,
            elapsed: start.elapsed(),
        },
    })
}

/// Options for the fragment solver.
#[derive(Debug, Clone, Default)]
pub struct FragmentConfig {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// A known g-extra cut used as the initial upper bound. It is checked
    /// before use.
    pub seed: Option<CutSet>,
}

pub fn kappa_extra_fragment(g: &Graph, extra: usize) -> Result<ExtraConnResult> {
    kappa_extra_fragment_with(g, extra, &FragmentConfig::default())
}

pub fn kappa_extra_fragment_with(
    g: &Graph,
    extra: usize,
    config: &FragmentConfig,
) -> Result<ExtraConnResult> {
    run_fragment(g, extra, config, false).map(|(result, _)| result)
}

/// All minimum g-extra cuts, sorted. Empty when κ_g is infinite.
pub fn enumerate_min_cuts(g: &Graph, extra: usize) -> Result<Vec<CutSet>> {
    enumerate_min_cuts_with(g, extra, &FragmentConfig::default()).map(|(_, cuts)| cuts)
}

/// Like [`enumerate_min_cuts`], also returning the solver result.
pub fn enumerate_min_cuts_with(
    g: &Graph,
    extra: usize,
    config: &FragmentConfig,
) -> Result<(ExtraConnResult, Vec<CutSet>)> {
    run_fragment(g, extra, config, true)
}

fn run_fragment(
    g: &Graph,
    extra: usize,
    config: &FragmentConfig,
    collect: bool,
) -> Result<(ExtraConnResult, Vec<CutSet>)> {
    let start = Instant::now();
    let adj = check_input(g)?;
    let upper = match &config.seed {
        Some(seed) => {
            if !check_g_extra_cut(g, seed, extra)?.is_g_extra {
                return Err(Error::InvalidInput(format!(
                    "seed {seed} is not a {extra}-extra cut"
                )));
            }
            Some(mask::from_set(seed))
        }
        None => None,
    };
    let pool = match config.threads {
        Some(t) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?,
        ),
        None => None,
    };
    let outcome = fragment::search(&adj, extra, upper, collect, pool.as_ref());
    let result = ExtraConnResult {
        g: extra,
        value: outcome
            .best
            .map_or(Kappa::Infinite, |(size, _)| Kappa::Finite(size)),
        witness: outcome.best.map(|(_, cut)| mask::to_set(cut)),
        solver: Solver::Fragment,
        stats: SolveStats {
            nodes: outcome.nodes,
            elapsed: start.elapsed(),
        },
    };
    let cuts = outcome
        .all
        .into_iter()
        .map(mask::to_set)
        .collect::<Vec<_>>();
    let mut cuts = cuts;
    cuts.sort();
    Ok((result, cuts))
}

/// Layer lower bounds for a κ_g-cut of a product: every nonempty slice
/// `xS` has at least κ(G2) vertices and every nonempty `S_y` at least
/// κ(G1).
pub fn check_layer_bounds(pg: &ProductGraph, s: &CutSet) -> Result<bool> {
    s.validate(pg.graph().vertex_count())?;
    for (axis, slices, bound) in [
        (
            Axis::Factor2,
            pg.m(),
            pg.factor(Axis::Factor2).connectivity(),
        ),
        (
            Axis::Factor1,
            pg.n(),
            pg.factor(Axis::Factor1).connectivity(),
        ),
    ] {
        for index in 0..slices {
            let slice = pg.slice_of_set(s, axis, index)?;
            if !slice.is_empty() && slice.len() < bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_path};
    use crate::products::strong_product;

    fn set(ids: &[usize]) -> VertexSet {
        VertexSet::from_ids(ids.iter().copied())
    }

    fn pxp(m: usize, n: usize) -> ProductGraph {
        strong_product(&make_path(m).unwrap(), &make_path(n).unwrap()).unwrap()
    }

    #[test]
    fn verdict_examples() {
        let p5 = make_path(5).unwrap();
        let v = check_g_extra_cut(&p5, &set(&[2]), 1).unwrap();
        assert!(v.is_cut && v.is_g_extra);
        assert_eq!(v.min_component_size, 2);

        let v = check_g_extra_cut(&p5, &set(&[1]), 1).unwrap();
        assert!(v.is_cut && !v.is_g_extra);
        assert_eq!(v.min_component_size, 1);

        let king = pxp(3, 3);
        let middle = king.layer(Axis::Factor2, 1).unwrap();
        let v = check_g_extra_cut(king.graph(), &middle, 2).unwrap();
        assert!(v.is_g_extra);
        assert_eq!(v.component_sizes, vec![3, 3]);

        assert!(matches!(
            check_g_extra_cut(&p5, &set(&[0, 1, 2, 3, 4]), 0),
            Err(Error::WholeVertexSet)
        ));
        let v = check_g_extra_cut(&p5, &set(&[]), 0).unwrap();
        assert!(!v.is_cut && !v.is_g_extra);
    }

    #[test]
    fn subset_examples() {
        let k4 = pxp(2, 2);
        assert_eq!(
            kappa_extra_subset(k4.graph(), 0, None).unwrap().value,
            Kappa::Infinite
        );
        let p5 = pxp(1, 5);
        assert_eq!(
            kappa_extra_subset(p5.graph(), 1, None).unwrap().value,
            Kappa::Finite(1)
        );
        let r = kappa_extra_subset(pxp(3, 3).graph(), 0, None).unwrap();
        assert_eq!(r.value, Kappa::Finite(3));
        assert_eq!(r.witness.unwrap().len(), 3);
    }

    #[test]
    fn subset_budget_is_reported() {
        let pg = pxp(4, 4);
        assert!(matches!(
            kappa_extra_subset(pg.graph(), 0, Some(10)),
            Err(Error::Inconclusive { budget: 10 })
        ));
    }

    #[test]
    fn fragment_examples() {
        let p5 = make_path(5).unwrap();
        let r = kappa_extra_fragment(&p5, 1).unwrap();
        assert_eq!(r.value, Kappa::Finite(1));
        assert_eq!(r.witness, Some(set(&[2])));

        let cp = strong_product(&make_cycle(4).unwrap(), &make_path(3).unwrap()).unwrap();
        assert_eq!(
            kappa_extra_fragment(cp.graph(), 0).unwrap().value,
            Kappa::Finite(4)
        );
        let c4 = make_cycle(4).unwrap();
        let torus = strong_product(&c4, &c4).unwrap();
        assert_eq!(
            kappa_extra_fragment(torus.graph(), 0).unwrap().value,
            Kappa::Finite(8)
        );
    }

    #[test]
    fn infinite_cases() {
        let k5 = make_complete(5).unwrap();
        let p4 = make_path(4).unwrap();
        for (g, extra) in [(&k5, 0), (&p4, 2)] {
            assert_eq!(
                kappa_extra_subset(g, extra, None).unwrap().value,
                Kappa::Infinite
            );
            let r = kappa_extra_fragment(g, extra).unwrap();
            assert_eq!(r.value, Kappa::Infinite);
            assert!(r.witness.is_none());
        }
    }

    #[test]
    fn rejects_bad_input() {
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            kappa_extra_fragment(&two, 0),
            Err(Error::NotConnected)
        ));
        let single = make_path(1).unwrap();
        assert!(matches!(
            kappa_extra_subset(&single, 0, None),
            Err(Error::NotConnected)
        ));
    }

    /// Two K4 blocks joined through a hub that also carries a pendant
    /// vertex: the only 1-extra cut of size 2 is {hub, pendant}, which is
    /// not the neighbourhood of any component.
    #[test]
    fn interior_cut_vertex() {
        let mut edges = Vec::new();
        for block in [0usize, 4] {
            for a in 0..4 {
                for b in a + 1..4 {
                    edges.push((block + a, block + b));
                }
                edges.push((block + a, 8));
            }
        }
        edges.push((8, 9));
        let g = Graph::from_edges(10, &edges).unwrap();
        let subset = kappa_extra_subset(&g, 1, None).unwrap();
        let frag = kappa_extra_fragment(&g, 1).unwrap();
        assert_eq!(subset.value, Kappa::Finite(2));
        assert_eq!(frag.value, Kappa::Finite(2));
        assert_eq!(frag.witness, Some(set(&[8, 9])));
        let comps = g.components(&set(&[8, 9])).unwrap();
        assert!(comps
            .iter()
            .all(|h| g.neighborhood(h).unwrap() != set(&[8, 9])));
    }

    #[test]
    fn min_cut_enumeration() {
        assert_eq!(
            enumerate_min_cuts(&make_path(3).unwrap(), 0).unwrap(),
            vec![set(&[1])]
        );
        assert_eq!(
            enumerate_min_cuts(&make_cycle(4).unwrap(), 0).unwrap(),
            vec![set(&[0, 2]), set(&[1, 3])]
        );
        assert!(enumerate_min_cuts(&make_cycle(5).unwrap(), 1)
            .unwrap()
            .is_empty());
        assert_eq!(
            enumerate_min_cuts(&make_cycle(6).unwrap(), 1)
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn seeded_and_threaded_results_match() {
        let pg = pxp(4, 5);
        let plain = kappa_extra_fragment(pg.graph(), 2).unwrap();
        let config = FragmentConfig {
            threads: Some(3),
            seed: Some(pg.layer(Axis::Factor1, 2).unwrap()),
        };
        let seeded = kappa_extra_fragment_with(pg.graph(), 2, &config).unwrap();
        assert_eq!(plain.value, seeded.value);
        assert_eq!(plain.witness, seeded.witness);

        let bad = FragmentConfig {
            threads: None,
            seed: Some(set(&[0])),
        };
        assert!(kappa_extra_fragment_with(pg.graph(), 2, &bad).is_err());
    }

    #[test]
    fn layer_bound_examples() {
        let king = pxp(3, 3);
        let column = king.layer(Axis::Factor2, 1).unwrap();
        assert!(check_layer_bounds(&king, &column).unwrap());

        let c4 = make_cycle(4).unwrap();
        let torus = strong_product(&c4, &c4).unwrap();
        for cut in enumerate_min_cuts(torus.graph(), 0).unwrap() {
            assert!(check_layer_bounds(&torus, &cut).unwrap());
        }
        // A single vertex of a cycle layer violates κ(C4) = 2.
        assert!(!check_layer_bounds(&torus, &set(&[0])).unwrap());
    }

    #[test]
    fn kappa_json() {
        let r = kappa_extra_fragment(&make_path(5).unwrap(), 1).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["value"], 1);
        assert_eq!(json["witness"], serde_json::json!([2]));
        assert_eq!(json["solver"], "fragment");
        let inf = serde_json::to_value(Kappa::Infinite).unwrap();
        assert_eq!(inf, "infinity");
        assert_eq!(
            serde_json::from_value::<Kappa>(inf).unwrap(),
            Kappa::Infinite
        );
    }
}
