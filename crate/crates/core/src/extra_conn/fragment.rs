//! Fragment enumeration.
//!
//! Every minimum g-extra cut `S` equals `N(H) ∪ small(H)` for each
//! component `H` of `G - S`, where `small(H)` is the union of the
//! components of `G - H - N(H)` with at most `g` vertices. (Any vertex of
//! `S` outside that set could be returned to the graph without breaking
//! the cut.) So it suffices to enumerate connected sets `H` with
//! `g + 1 <= |H| <= (|V| - |S|) / 2`, i.e. candidates for the smallest
//! component, and evaluate that candidate cut for each.
//!
//! Connected sets are enumerated once each: for each root `r`, sets whose
//! minimum vertex is `r`, by include/exclude branching over the frontier.
//! Vertices excluded so far that touch `H` can never join it and so lie in
//! the final neighbourhood; their count is a lower bound on the cut.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use super::mask::{bit, count, flood, lex_less_same_size, split_small, Mask};

pub(crate) struct Outcome {
    /// Size and lexicographically smallest mask of the best cut.
    pub best: Option<(usize, Mask)>,
    /// Every distinct cut of minimum size, when collection was requested.
    pub all: Vec<Mask>,
    pub nodes: u64,
}

struct Shared<'a> {
    adj: &'a [Mask],
    n: usize,
    all: Mask,
    min_size: usize,
    collect: bool,
    best: AtomicUsize,
    nodes: AtomicU64,
}

struct Local {
    best_size: usize,
    best_cut: Mask,
    all: Vec<Mask>,
    nodes: u64,
}

impl Local {
    fn offer(&mut self, shared: &Shared<'_>, cut: Mask) {
        let size = count(cut);
        if size < self.best_size {
            self.best_size = size;
            self.best_cut = cut;
            if shared.collect {
                self.all.clear();
                self.all.push(cut);
            }
            shared.best.fetch_min(size, Ordering::Relaxed);
        } else if size == self.best_size {
            if lex_less_same_size(cut, self.best_cut) {
                self.best_cut = cut;
            }
            if shared.collect {
                self.all.push(cut);
            }
        }
    }
}

/// Runs the enumeration. `upper` is an optional cut known to be valid;
/// it seeds the pruning bound and takes part in tie-breaking.
pub(crate) fn search(
    adj: &[Mask],
    extra: usize,
    upper: Option<Mask>,
    collect: bool,
    pool: Option<&rayon::ThreadPool>,
) -> Outcome {
    let n = adj.len();
    let all = if n == Mask::BITS as usize {
        Mask::MAX
    } else {
        bit(n) - 1
    };
    let shared = Shared {
        adj,
        n,
        all,
        min_size: extra + 1,
        collect,
        best: AtomicUsize::new(upper.map_or(usize::MAX, count)),
        nodes: AtomicU64::new(0),
    };

    let run = || -> Vec<Local> {
        if 2 * shared.min_size > n {
            return Vec::new();
        }
        (0..n)
            .into_par_iter()
            .map(|root| search_root(&shared, root))
            .collect()
    };
    let locals = match pool {
        Some(pool) => pool.install(run),
        None => run(),
    };

    let mut best: Option<(usize, Mask)> = upper.map(|u| (count(u), u));
    for local in &locals {
        if local.best_size == usize::MAX {
            continue;
        }
        best = Some(match best {
            None => (local.best_size, local.best_cut),
            Some((size, cut)) => {
                if local.best_size < size
                    || (local.best_size == size && lex_less_same_size(local.best_cut, cut))
                {
                    (local.best_size, local.best_cut)
                } else {
                    (size, cut)
                }
            }
        });
    }

    let mut all_cuts = Vec::new();
    if let (true, Some((size, _))) = (collect, best) {
        all_cuts.extend(upper.filter(|&u| count(u) == size));
        for local in locals {
            all_cuts.extend(local.all.into_iter().filter(|&c| count(c) == size));
        }
        all_cuts.sort_unstable();
        all_cuts.dedup();
    }

    Outcome {
        best,
        all: all_cuts,
        nodes: shared.nodes.load(Ordering::Relaxed),
    }
}

fn search_root(shared: &Shared<'_>, root: usize) -> Local {
    let mut local = Local {
        best_size: usize::MAX,
        best_cut: 0,
        all: Vec::new(),
        nodes: 0,
    };
    let below = bit(root) - 1;
    let h = bit(root);
    let ext = shared.adj[root] & !below;
    extend(shared, &mut local, h, 1, shared.adj[root], ext, below);
    shared.nodes.fetch_add(local.nodes, Ordering::Relaxed);
    local
}

/// `h`: current connected set; `reach`: union of neighbours of `h`;
/// `ext`: frontier still allowed to join (`N(h)` minus `excluded`).
fn extend(
    shared: &Shared<'_>,
    local: &mut Local,
    h: Mask,
    size: usize,
    reach: Mask,
    mut ext: Mask,
    mut excluded: Mask,
) {
    local.nodes += 1;
    let nbhd = reach & !h;
    let mut lower = count(nbhd & excluded);
    if lower > bound(shared, local) {
        return;
    }
    if size >= shared.min_size {
        evaluate(shared, local, h, nbhd);
    }
    // The smallest component has at most (|V| - |S|) / 2 vertices.
    while ext != 0 && 2 * (size + 1) + lower <= shared.n {
        let v = ext.trailing_zeros() as usize;
        let vb = bit(v);
        ext &= !vb;
        let child_ext = (ext | shared.adj[v]) & !h & !vb & !excluded;
        extend(
            shared,
            local,
            h | vb,
            size + 1,
            reach | shared.adj[v],
            child_ext,
            excluded,
        );
        excluded |= vb;
        if nbhd & vb != 0 {
            lower += 1;
            if lower > bound(shared, local) {
                return;
            }
        }
    }
}

#[inline]
fn bound(shared: &Shared<'_>, local: &Local) -> usize {
    shared.best.load(Ordering::Relaxed).min(local.best_size)
}

#[inline]
fn evaluate(shared: &Shared<'_>, local: &mut Local, h: Mask, nbhd: Mask) {
    let rest = shared.all & !h & !nbhd;
    if rest == 0 {
        return;
    }
    let (small, has_large) = if shared.min_size <= 1 {
        (0, true)
    } else {
        split_small(shared.adj, rest, shared.min_size)
    };
    if !has_large {
        return;
    }
    let cut = nbhd | small;
    if count(cut) > shared.best.load(Ordering::Relaxed) {
        return;
    }
    debug_assert_eq!(
        flood(shared.adj, h & h.wrapping_neg(), !cut & shared.all),
        h
    );
    local.offer(shared, cut);
}
