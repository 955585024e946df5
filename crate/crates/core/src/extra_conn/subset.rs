//! Subset enumeration by increasing cardinality.

use super::mask::{bit, count, flood, Mask};
use crate::error::{Error, Result};

/// Returns the lexicographically first minimum g-extra cut, or `None`
/// when none exists, plus the number of subsets checked.
pub(crate) fn search(adj: &[Mask], extra: usize, budget: u64) -> Result<(Option<Mask>, u64)> {
    let n = adj.len();
    let min_size = extra + 1;
    let mut checks = 0u64;
    // Two components of at least g + 1 vertices must survive.
    let Some(max_k) = n.checked_sub(2 * min_size) else {
        return Ok((None, 0));
    };
    let all = if n == Mask::BITS as usize {
        Mask::MAX
    } else {
        bit(n) - 1
    };
    for k in 1..=max_k {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            checks += 1;
            if checks > budget {
                return Err(Error::Inconclusive { budget });
            }
            let cut = idx.iter().fold(0, |acc, &v| acc | bit(v));
            if is_g_extra(adj, all & !cut, min_size) {
                return Ok((Some(cut), checks));
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok((None, checks))
}

fn is_g_extra(adj: &[Mask], rest: Mask, min_size: usize) -> bool {
    let mut remaining = rest;
    let mut components = 0;
    while remaining != 0 {
        let comp = flood(adj, remaining & remaining.wrapping_neg(), remaining);
        if count(comp) < min_size {
            return false;
        }
        remaining &= !comp;
        components += 1;
    }
    components >= 2
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_order() {
        let mut idx = vec![0, 1];
        let mut seen = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }
}
