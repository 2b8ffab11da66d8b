//! Canonical forms of small posets up to relabeling (and optionally duality).

use crate::error::{Error, Result};
use crate::poset::Poset;

pub const MAX_CANON_N: usize = 8;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Row-major bits of the relabeled relation, first cell in the top bit.
fn packed(edges: &[(usize, usize)], n: usize, perm: &[usize]) -> u64 {
    edges.iter().fold(0, |acc, &(x, y)| {
        acc | 1u64 << (63 - (perm[x] * n + perm[y]))
    })
}

/// Smallest encoding over all relabelings (and, with `modulo_dual`, over the
/// dual as well). Equal keys iff the posets are isomorphic (resp. isomorphic
/// or dually isomorphic).
pub fn canonical_key(p: &Poset, modulo_dual: bool) -> Result<Vec<u8>> {
    let n = p.n();
    if n > MAX_CANON_N {
        return Err(Error::Guard {
            what: "canonical_key",
            n,
            max: MAX_CANON_N,
        });
    }
    let edges: Vec<_> = p.relations().collect();
    let dual_edges: Vec<_> = edges.iter().map(|&(x, y)| (y, x)).collect();
    let mut best = u64::MAX;
    for perm in permutations(n) {
        best = best.min(packed(&edges, n, &perm));
        if modulo_dual {
            best = best.min(packed(&dual_edges, n, &perm));
        }
    }
    let mut key = vec![n as u8, modulo_dual as u8];
    key.extend_from_slice(&best.to_be_bytes());
    Ok(key)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use rand::seq::{IndexedRandom, SliceRandom};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::enumerate::all_posets;

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
    }

    #[test]
    fn two_element_chains_share_a_key() {
        let a = Poset::from_relations(2, &[(0, 1)]).unwrap();
        let b = Poset::from_relations(2, &[(1, 0)]).unwrap();
        assert_eq!(
            canonical_key(&a, false).unwrap(),
            canonical_key(&b, false).unwrap()
        );
    }

    #[test]
    fn five_unlabeled_three_element_posets() {
        let keys: HashSet<_> = all_posets(3)
            .unwrap()
            .iter()
            .map(|p| canonical_key(p, false).unwrap())
            .collect();
        assert_eq!(keys.len(), 5);
    }

    #[test]
    fn unlabeled_counts_at_four() {
        let posets = all_posets(4).unwrap();
        let plain: HashSet<_> = posets
            .iter()
            .map(|p| canonical_key(p, false).unwrap())
            .collect();
        let dual: HashSet<_> = posets
            .iter()
            .map(|p| canonical_key(p, true).unwrap())
            .collect();
        assert_eq!(plain.len(), 16);
        // 16 classes, 8 of them self-dual: (16 + 8) / 2
        assert_eq!(dual.len(), 12);
    }

    #[test]
    fn v_and_lambda_only_equal_modulo_dual() {
        let v = Poset::from_relations(3, &[(0, 2), (1, 2)]).unwrap();
        let lambda = Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        assert_ne!(
            canonical_key(&v, false).unwrap(),
            canonical_key(&lambda, false).unwrap()
        );
        assert_eq!(
            canonical_key(&v, true).unwrap(),
            canonical_key(&lambda, true).unwrap()
        );
    }

    #[test]
    fn invariant_under_random_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let posets = all_posets(5).unwrap();
        for _ in 0..100 {
            let p = posets.choose(&mut rng).unwrap();
            let mut perm: Vec<usize> = (0..5).collect();
            perm.shuffle(&mut rng);
            let q = p.relabel(&perm);
            assert_eq!(
                canonical_key(p, false).unwrap(),
                canonical_key(&q, false).unwrap()
            );
            assert_eq!(
                canonical_key(p, true).unwrap(),
                canonical_key(&q, true).unwrap()
            );
        }
    }

    #[test]
    fn guard() {
        assert!(canonical_key(&Poset::antichain(9), false).is_err());
    }
}
