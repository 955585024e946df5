//! Strong and Cartesian products with factor-aware queries, plus the
//! I-set / L-set constructions and the cut classifier.
//!
//! Product vertex `(i, j)` (with `i` in the first factor, `j` in the
//! second) has id `i * n + j`, where `n` is the order of the second factor.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CutSet, Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Strong,
    Cartesian,
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductKind::Strong => write!(f, "strong"),
            ProductKind::Cartesian => write!(f, "cartesian"),
        }
    }
}

/// Selects one of the two factors.
///
/// `layer(Axis::Factor1, y)` is the copy of the first factor at second
/// coordinate `y`; `layer(Axis::Factor2, x)` is the copy of the second
/// factor at first coordinate `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Factor1,
    Factor2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGraph {
    graph: Graph,
    left: Graph,
    right: Graph,
    kind: ProductKind,
}

#[derive(Debug, Serialize, Deserialize)]
struct ProductMeta {
    kind: ProductKind,
    m: usize,
    n: usize,
}

pub fn strong_product(g1: &Graph, g2: &Graph) -> Result<ProductGraph> {
    ProductGraph::build(g1, g2, ProductKind::Strong)
}

pub fn cartesian_product(g1: &Graph, g2: &Graph) -> Result<ProductGraph> {
    ProductGraph::build(g1, g2, ProductKind::Cartesian)
}

impl ProductGraph {
    pub fn build(g1: &Graph, g2: &Graph, kind: ProductKind) -> Result<Self> {
        let (m, n) = (g1.vertex_count(), g2.vertex_count());
        if m == 0 || n == 0 {
            return Err(Error::InvalidGraph(
                "product factors must be nonempty".into(),
            ));
        }
        let id = |i: usize, j: usize| i * n + j;
        let mut edges = Vec::new();
        for i in 0..m {
            for (a, b) in g2.edges() {
                edges.push((id(i, a), id(i, b)));
            }
        }
        for j in 0..n {
            for (a, b) in g1.edges() {
                edges.push((id(a, j), id(b, j)));
            }
        }
        if kind == ProductKind::Strong {
            for (a, b) in g1.edges() {
                for (c, d) in g2.edges() {
                    edges.push((id(a, c), id(b, d)));
                    edges.push((id(a, d), id(b, c)));
                }
            }
        }
        let labels = (0..m)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| format!("(x{},y{})", g1.label(i), g2.label(j)))
            .collect();
        let graph = Graph::from_edges(m * n, &edges)?.with_labels(labels)?;
        Ok(Self {
            graph,
            left: g1.clone(),
            right: g2.clone(),
            kind,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn factors(&self) -> (&Graph, &Graph) {
        (&self.left, &self.right)
    }

    pub fn factor(&self, axis: Axis) -> &Graph {
        match axis {
            Axis::Factor1 => &self.left,
            Axis::Factor2 => &self.right,
        }
    }

    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    /// Order of the first factor.
    pub fn m(&self) -> usize {
        self.left.vertex_count()
    }

    /// Order of the second factor.
    pub fn n(&self) -> usize {
        self.right.vertex_count()
    }

    pub fn vertex_id(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.m() && j < self.n());
        i * self.n() + j
    }

    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.n(), v % self.n())
    }

    /// `p1(S)` or `p2(S)`.
    pub fn project(&self, s: &VertexSet, axis: Axis) -> VertexSet {
        s.iter()
            .map(|v| {
                let (i, j) = self.coords(v);
                match axis {
                    Axis::Factor1 => i,
                    Axis::Factor2 => j,
                }
            })
            .collect()
    }

    pub fn layer(&self, axis: Axis, index: usize) -> Result<VertexSet> {
        let other = match axis {
            Axis::Factor1 => self.n(),
            Axis::Factor2 => self.m(),
        };
        if index >= other {
            return Err(Error::VertexOutOfRange {
                vertex: index,
                vertex_count: other,
            });
        }
        Ok(match axis {
            Axis::Factor1 => (0..self.m()).map(|i| self.vertex_id(i, index)).collect(),
            Axis::Factor2 => (0..self.n()).map(|j| self.vertex_id(index, j)).collect(),
        })
    }

    /// `S ∩ V(layer)`: `S_y` for `Axis::Factor1`, `xS` for `Axis::Factor2`.
    pub fn slice_of_set(&self, s: &VertexSet, axis: Axis, index: usize) -> Result<VertexSet> {
        s.validate(self.graph.vertex_count())?;
        let layer = self.layer(axis, index)?;
        Ok(s.iter().filter(|&v| layer.contains(v)).collect())
    }

    /// Cartesian product of two factor vertex sets as product ids.
    pub fn cross(&self, a: &VertexSet, b: &VertexSet) -> VertexSet {
        a.iter()
            .flat_map(|i| b.iter().map(move |j| (i, j)))
            .map(|(i, j)| self.vertex_id(i, j))
            .collect()
    }

    pub fn make_i_set(&self, factor_cut: &VertexSet, axis: Axis) -> Result<CutSet> {
        let factor = self.factor(axis);
        check_factor_cut(factor, factor_cut, factor_no(axis))?;
        Ok(match axis {
            Axis::Factor1 => self.cross(factor_cut, &all_vertices(self.n())),
            Axis::Factor2 => self.cross(&all_vertices(self.m()), factor_cut),
        })
    }

    /// `(S1 × A2) ∪ (S1 × S2) ∪ (A1 × S2)`.
    pub fn make_l_set(
        &self,
        s1: &VertexSet,
        a1: &VertexSet,
        s2: &VertexSet,
        a2: &VertexSet,
    ) -> Result<CutSet> {
        check_factor_component(&self.left, s1, a1, 1)?;
        check_factor_component(&self.right, s2, a2, 2)?;
        Ok(self.l_set_unchecked(s1, a1, s2, a2))
    }

    fn l_set_unchecked(
        &self,
        s1: &VertexSet,
        a1: &VertexSet,
        s2: &VertexSet,
        a2: &VertexSet,
    ) -> VertexSet {
        let mut ids = self.cross(s1, a2).into_vec();
        ids.extend(self.cross(s1, s2).iter());
        ids.extend(self.cross(a1, s2).iter());
        VertexSet::from_ids(ids)
    }

    /// Classifies a vertex cut as an I-set, an L-set, or neither.
    ///
    /// Checked in a fixed order: I-set over the first factor, I-set over
    /// the second factor, then L-set. The L-set quadruple is recovered
    /// from the row slices: rows in `S1` carry all of `p2(S)`, rows in
    /// `A1` carry exactly `S2`.
    pub fn classify_cut(&self, s: &CutSet) -> Result<CutClassification> {
        s.validate(self.graph.vertex_count())?;
        if s.len() >= self.graph.vertex_count() || self.graph.components(s)?.len() < 2 {
            return Err(Error::NotACut);
        }
        let p1 = self.project(s, Axis::Factor1);
        let p2 = self.project(s, Axis::Factor2);

        if self.cross(&p1, &all_vertices(self.n())) == *s && is_vertex_cut(&self.left, &p1) {
            return Ok(CutClassification::ISet {
                axis: Axis::Factor1,
                factor_cut: p1,
            });
        }
        if self.cross(&all_vertices(self.m()), &p2) == *s && is_vertex_cut(&self.right, &p2) {
            return Ok(CutClassification::ISet {
                axis: Axis::Factor2,
                factor_cut: p2,
            });
        }

        let row = |x: usize| -> VertexSet {
            s.iter()
                .filter(|&v| self.coords(v).0 == x)
                .map(|v| self.coords(v).1)
                .collect()
        };
        let (s1, a1): (Vec<usize>, Vec<usize>) = p1.iter().partition(|&x| row(x) == p2);
        let (s1, a1) = (VertexSet::from_ids(s1), VertexSet::from_ids(a1));
        let Some(first) = a1.iter().next() else {
            return Ok(CutClassification::Neither);
        };
        let s2 = row(first);
        let a2: VertexSet = p2.iter().filter(|&y| !s2.contains(y)).collect();
        let structured = check_factor_component(&self.left, &s1, &a1, 1).is_ok()
            && check_factor_component(&self.right, &s2, &a2, 2).is_ok()
            && self.l_set_unchecked(&s1, &a1, &s2, &a2) == *s;
        Ok(if structured {
            CutClassification::LSet { s1, a1, s2, a2 }
        } else {
            CutClassification::Neither
        })
    }

    /// Coordinate rendering such as `(x1,y2)`.
    pub fn render(&self, v: usize) -> String {
        self.graph.label(v)
    }

    pub fn render_set(&self, s: &VertexSet) -> String {
        s.iter()
            .map(|v| self.render(v))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut value = self.graph.to_json();
        value["product"] = serde_json::to_value(ProductMeta {
            kind: self.kind,
            m: self.m(),
            n: self.n(),
        })
        .expect("metadata is serializable");
        value
    }

    /// Reads a product written by [`ProductGraph::to_json`]. Factors are
    /// recovered from the layers through vertex `(0, 0)` and the whole
    /// product is re-derived from them and compared edge for edge.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let graph = Graph::from_json(value)?;
        let meta: ProductMeta = serde_json::from_value(
            value
                .get("product")
                .cloned()
                .ok_or_else(|| Error::InvalidInput("missing \"product\" metadata".into()))?,
        )?;
        Self::from_graph(graph, meta.kind, meta.m, meta.n)
    }

    pub fn from_graph(graph: Graph, kind: ProductKind, m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 || m * n != graph.vertex_count() {
            return Err(Error::InvalidInput(format!(
                "product metadata {m}x{n} does not match {} vertices",
                graph.vertex_count()
            )));
        }
        let rows: VertexSet = (0..m).map(|i| i * n).collect();
        let cols: VertexSet = (0..n).collect();
        let (mut left, _) = graph.induced_subgraph(&rows)?;
        let (mut right, _) = graph.induced_subgraph(&cols)?;
        if let Some(labels) = graph.labels() {
            let parsed: Option<Vec<(String, String)>> =
                labels.iter().map(|l| parse_pair_label(l)).collect();
            if let Some(pairs) = parsed {
                left = left.with_labels((0..m).map(|i| pairs[i * n].0.clone()).collect())?;
                right = right.with_labels((0..n).map(|j| pairs[j].1.clone()).collect())?;
            }
        }
        let rebuilt = Self::build(&left, &right, kind)?;
        if rebuilt.graph.edges() != graph.edges() {
            return Err(Error::InvalidInput(format!(
                "graph is not the {kind} product of its layers"
            )));
        }
        Ok(rebuilt)
    }
}

fn parse_pair_label(label: &str) -> Option<(String, String)> {
    let inner = label.strip_prefix("(x")?.strip_suffix(')')?;
    let (a, b) = inner.split_once(",y")?;
    Some((a.to_string(), b.to_string()))
}

/// Outcome of [`ProductGraph::classify_cut`], with the factor data that
/// reconstructs the classified set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CutClassification {
    ISet {
        axis: Axis,
        factor_cut: VertexSet,
    },
    LSet {
        s1: VertexSet,
        a1: VertexSet,
        s2: VertexSet,
        a2: VertexSet,
    },
    Neither,
}

impl CutClassification {
    pub fn is_structured(&self) -> bool {
        !matches!(self, CutClassification::Neither)
    }

    pub fn reconstruct(&self, pg: &ProductGraph) -> Option<VertexSet> {
        match self {
            CutClassification::ISet { axis, factor_cut } => pg.make_i_set(factor_cut, *axis).ok(),
            CutClassification::LSet { s1, a1, s2, a2 } => pg.make_l_set(s1, a1, s2, a2).ok(),
            CutClassification::Neither => None,
        }
    }
}

fn all_vertices(n: usize) -> VertexSet {
    (0..n).collect()
}

fn factor_no(axis: Axis) -> u8 {
    match axis {
        Axis::Factor1 => 1,
        Axis::Factor2 => 2,
    }
}

fn is_vertex_cut(g: &Graph, s: &VertexSet) -> bool {
    s.validate(g.vertex_count()).is_ok() && g.components(s).map(|c| c.len() >= 2).unwrap_or(false)
}

fn check_factor_cut(g: &Graph, s: &VertexSet, factor: u8) -> Result<()> {
    if s.validate(g.vertex_count()).is_err() {
        return Err(Error::FactorPrecondition {
            factor,
            reason: format!("{s} has ids outside 0..{}", g.vertex_count()),
        });
    }
    if g.is_complete() {
        return Err(Error::FactorPrecondition {
            factor,
            reason: "factor is complete and has no vertex cut".into(),
        });
    }
    if !is_vertex_cut(g, s) {
        return Err(Error::FactorPrecondition {
            factor,
            reason: format!("{s} is not a vertex cut"),
        });
    }
    Ok(())
}

fn check_factor_component(g: &Graph, s: &VertexSet, a: &VertexSet, factor: u8) -> Result<()> {
    check_factor_cut(g, s, factor)?;
    if !g.components(s)?.contains(a) {
        return Err(Error::FactorPrecondition {
            factor,
            reason: format!("{a} is not a component after removing {s}"),
        });
    }
    Ok(())
}
