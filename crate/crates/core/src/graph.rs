//! Undirected simple graphs, the path/cycle generators and the basic
//! structural queries everything else is built on.
//!
//! Vertex ids are always `0..n`. Path and cycle generators attach labels
//! carrying the conventional indexing (paths `1..=n`, cycles `0..n`) so
//! cuts can be printed the way they are written by hand.

use std::collections::VecDeque;
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted, duplicate-free list of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

/// A vertex set proposed as a separator.
pub type CutSet = VertexSet;

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    /// Builds a set from arbitrary ids, sorting and removing duplicates.
    pub fn from_ids<I: IntoIterator<Item = usize>>(ids: I) -> Self {
        let mut v: Vec<usize> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Membership bitmap of length `n`.
    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            mask[v] = true;
        }
        mask
    }

    pub fn validate(&self, vertex_count: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= vertex_count => Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count,
            }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_ids(iter)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Immutable undirected simple graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are merged;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertex_count: n,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self {
            adjacency,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label of `v`, falling back to the id.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        seq.sort_unstable();
        seq
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adjacency.iter().all(|list| list.len() + 1 == n)
    }

    /// `N(A)`: vertices outside `a` adjacent to some member of `a`.
    pub fn neighborhood(&self, a: &VertexSet) -> Result<VertexSet> {
        a.validate(self.vertex_count())?;
        let inside = a.to_mask(self.vertex_count());
        let mut seen = vec![false; self.vertex_count()];
        for u in a.iter() {
            for &v in &self.adjacency[u] {
                if !inside[v] {
                    seen[v] = true;
                }
            }
        }
        Ok(seen
            .iter()
            .enumerate()
            .filter_map(|(v, &s)| s.then_some(v))
            .collect())
    }

    /// Connected components of `G - removed`, each sorted, listed by
    /// smallest member.
    pub fn components(&self, removed: &VertexSet) -> Result<Vec<VertexSet>> {
        removed.validate(self.vertex_count())?;
        let n = self.vertex_count();
        let mut blocked = removed.to_mask(n);
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if blocked[start] {
                continue;
            }
            blocked[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adjacency[u] {
                    if !blocked[v] {
                        blocked[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            out.push(VertexSet::from_ids(comp));
        }
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0
            && self
                .components(&VertexSet::new())
                .map(|c| c.len() == 1)
                .unwrap_or(false)
    }

    /// `G[A]` together with the map from new ids to original ids.
    pub fn induced_subgraph(&self, a: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        a.validate(self.vertex_count())?;
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, v) in a.iter().enumerate() {
            new_id[v] = i;
        }
        let adjacency = a
            .iter()
            .map(|u| {
                self.adjacency[u]
                    .iter()
                    .filter_map(|&v| (new_id[v] != usize::MAX).then_some(new_id[v]))
                    .collect()
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| a.iter().map(|v| l[v].clone()).collect());
        Ok((Graph { adjacency, labels }, a.as_slice().to_vec()))
    }

    /// Classical vertex connectivity κ(G): `n - 1` for complete graphs,
    /// otherwise the minimum local vertex connectivity over non-adjacent
    /// pairs, computed by unit-capacity max flow (Menger). Only pairs
    /// whose first vertex has index at most the running minimum are
    /// needed (Even's bound).
    pub fn connectivity(&self) -> usize {
        let n = self.vertex_count();
        if n == 0 {
            return 0;
        }
        if self.is_complete() {
            return n - 1;
        }
        if !self.is_connected() {
            return 0;
        }
        let mut best = n - 1;
        let mut s = 0;
        while s <= best && s < n {
            for t in s + 1..n {
                if !self.has_edge(s, t) {
                    best = best.min(self.local_vertex_connectivity(s, t, best));
                }
            }
            s += 1;
        }
        best
    }

    /// Number of internally disjoint s–t paths, capped at `cap`.
    fn local_vertex_connectivity(&self, s: usize, t: usize, cap: usize) -> usize {
        // Split v into v_in = 2v and v_out = 2v + 1; unit capacity inside
        // every vertex except s and t.
        let n = self.vertex_count();
        let mut net = FlowNetwork::new(2 * n);
        for v in 0..n {
            let cap_v = if v == s || v == t { n } else { 1 };
            net.add_arc(2 * v, 2 * v + 1, cap_v);
            for &w in &self.adjacency[v] {
                net.add_arc(2 * v + 1, 2 * w, n);
            }
        }
        net.max_flow(2 * s + 1, 2 * t, cap)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson {
            n: self.vertex_count(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: self.labels.clone(),
        })
        .expect("graph json is always serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: GraphJson = serde_json::from_value(value.clone())?;
        let edges: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        let graph = Graph::from_edges(raw.n, &edges)?;
        match raw.labels {
            Some(labels) => graph.with_labels(labels),
            None => Ok(graph),
        }
    }

    /// Undirected DOT rendering; vertices in `highlight` are filled.
    pub fn to_dot(&self, highlight: Option<&VertexSet>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.vertex_count() {
            let label = self.label(v).replace('"', "\\\"");
            let marked = highlight.is_some_and(|h| h.contains(v));
            if marked {
                let _ = writeln!(
                    out,
                    "  {v} [label=\"{label}\", style=filled, fillcolor=red];"
                );
            } else {
                let _ = writeln!(out, "  {v} [label=\"{label}\"];");
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// Path `P_n` with labels `1..=n`.
pub fn make_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidOrder {
            what: "path",
            order: n,
            min: 1,
        });
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)?.with_labels((1..=n).map(|i| i.to_string()).collect())
}

/// Cycle `C_n` with labels `0..n`.
pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidOrder {
            what: "cycle",
            order: n,
            min: 3,
        });
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)?.with_labels((0..n).map(|i| i.to_string()).collect())
}

/// Complete graph `K_n`.
pub fn make_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidOrder {
            what: "complete graph",
            order: n,
            min: 1,
        });
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges)
}

struct FlowNetwork {
    head: Vec<usize>,
    cap: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        Self {
            head: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: usize) {
        self.out[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.out[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// Edmonds–Karp, stopping once `limit` units are routed.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let nodes = self.out.len();
        while flow < limit {
            let mut via = vec![usize::MAX; nodes];
            let mut seen = vec![false; nodes];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &arc in &self.out[u] {
                    let v = self.head[arc];
                    if !seen[v] && self.cap[arc] > 0 {
                        seen[v] = true;
                        via[v] = arc;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut v = t;
            while v != s {
                let arc = via[v];
                self.cap[arc] -= 1;
                self.cap[arc ^ 1] += 1;
                v = self.head[arc ^ 1];
            }
            flow += 1;
        }
        flow
    }
}
