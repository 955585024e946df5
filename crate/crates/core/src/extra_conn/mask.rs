//! Fixed-width vertex bitmasks used by the exact solvers.

use crate::graph::{Graph, VertexSet};

pub(crate) type Mask = u128;

pub const MAX_VERTICES: usize = Mask::BITS as usize;

#[inline]
pub(crate) fn bit(v: usize) -> Mask {
    1 << v
}

#[inline]
pub(crate) fn count(m: Mask) -> usize {
    m.count_ones() as usize
}

pub(crate) fn adjacency_masks(g: &Graph) -> Vec<Mask> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().fold(0, |acc, &w| acc | bit(w)))
        .collect()
}

pub(crate) fn from_set(s: &VertexSet) -> Mask {
    s.iter().fold(0, |acc, v| acc | bit(v))
}

pub(crate) fn to_set(mut m: Mask) -> VertexSet {
    let mut ids = Vec::with_capacity(count(m));
    while m != 0 {
        ids.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    VertexSet::from_ids(ids)
}

/// Lexicographic order of the sorted id lists of two equal-size masks:
/// the smaller one holds the lowest differing vertex.
#[inline]
pub(crate) fn lex_less_same_size(a: Mask, b: Mask) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) != 0
}

/// Component of `within` containing the lowest set bit of `seed`.
#[inline]
pub(crate) fn flood(adj: &[Mask], seed: Mask, within: Mask) -> Mask {
    let mut comp = seed;
    let mut frontier = seed;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        next &= within & !comp;
        comp |= next;
        frontier = next;
    }
    comp
}

/// Splits `rest` into its components and returns `(small, has_large)`:
/// the union of components with fewer than `min_size` vertices, and
/// whether at least one component reaches `min_size`.
#[inline]
pub(crate) fn split_small(adj: &[Mask], rest: Mask, min_size: usize) -> (Mask, bool) {
    let mut remaining = rest;
    let mut small = 0;
    let mut has_large = false;
    while remaining != 0 {
        let seed = remaining & remaining.wrapping_neg();
        let comp = flood(adj, seed, remaining);
        remaining &= !comp;
        if count(comp) < min_size {
            small |= comp;
        } else {
            has_large = true;
        }
    }
    (small, has_large)
}
