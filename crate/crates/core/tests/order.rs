use std::collections::HashSet;

use posort_core::canon::canonical_key;
use posort_core::counts::{info_lower_bound, CountsTable};
use posort_core::enumerate::{all_posets, count_posets, enumerate_posets};
use posort_core::poset::is_strict_order;
use posort_core::{PairOutcome, Poset, PosetJson};
use proptest::prelude::*;

#[test]
fn enumeration_matches_known_counts() {
    let table = CountsTable::bundled();
    for n in 0..=5 {
        assert_eq!(
            count_posets(n).unwrap() as u128,
            table.get(n).unwrap(),
            "n={n}"
        );
    }
    assert_eq!(count_posets(4).unwrap(), 219);
    assert_eq!(count_posets(5).unwrap(), 4231);
}

#[test]
fn enumerated_posets_are_valid_and_distinct() {
    for n in 0..=5 {
        let mut seen = HashSet::new();
        for p in enumerate_posets(n).unwrap() {
            assert!(is_strict_order(p.matrix()));
            assert!(seen.insert(p.encode()));
        }
    }
}

#[test]
fn covering_is_transitive_reduction() {
    for n in 0..=5 {
        for p in all_posets(n).unwrap() {
            let cov = p.covering();
            assert_eq!(cov.transitive_closure().unwrap(), p.as_relation());
            assert!(cov.is_disjoint(&p.anti_covering()));
            assert_eq!(p.dual().dual(), p);
            assert_eq!(p.dual().q_set(), p.q_set());
        }
    }
}

fn flip(p: &Poset, a: usize, b: usize) -> Option<Poset> {
    let mut rels: Vec<(usize, usize)> = p.relations().collect();
    if p.covering().contains(a, b) {
        rels.retain(|&r| r != (a, b));
    } else if p.anti_covering().contains(a, b) {
        rels.push((a, b));
    } else {
        return None;
    }
    Poset::from_relations(p.n(), &rels).ok()
}

#[test]
fn every_q_pair_can_be_flipped() {
    for n in 2..=5 {
        for p in all_posets(n).unwrap() {
            for (x, y) in p.q_set().iter() {
                let flipped = flip(&p, x, y).or_else(|| flip(&p, y, x));
                let q =
                    flipped.unwrap_or_else(|| panic!("{x},{y} in Q but no valid flip of {p:?}"));
                assert_ne!(q, p);
                for a in 0..n {
                    for b in a + 1..n {
                        if (a, b) != (x, y) {
                            assert_eq!(q.compare(a, b), p.compare(a, b));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn mean_q_at_four() {
    let posets = all_posets(4).unwrap();
    let total: usize = posets.iter().map(|p| p.q_set().len()).sum();
    assert_eq!((total, posets.len()), (1062, 219));
    assert!(((total as f64 / 219.0) - 4.849).abs() < 0.001);
}

#[test]
fn information_bounds() {
    let t = CountsTable::bundled();
    assert!((info_lower_bound(4, &t).unwrap() - 4.905).abs() < 0.005);
    assert!((info_lower_bound(5, &t).unwrap() - 7.601).abs() < 0.005);
    assert!((info_lower_bound(8, &t).unwrap() - 18.10).abs() < 0.01);
    assert!(t.is_increasing());
    assert!(info_lower_bound(17, &t).is_err());
}

fn any_poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::ANY, n * n).prop_map(move |bits| {
            // keep only forward pairs so the closure is acyclic
            let rels: Vec<_> = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .filter(|&(x, y)| x < y && bits[x * n + y])
                .collect();
            Poset::generated_by(n, &rels).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn json_round_trip(p in any_poset(9)) {
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back: PosetJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(Poset::try_from(back).unwrap(), p);
    }

    #[test]
    fn canonical_key_ignores_labels((p, perm) in any_poset(6).prop_flat_map(|p| {
        let ids: Vec<usize> = (0..p.n()).collect();
        (Just(p), Just(ids).prop_shuffle())
    })) {
        let q = p.relabel(&perm);
        prop_assert_eq!(canonical_key(&p, false).unwrap(), canonical_key(&q, false).unwrap());
        prop_assert_eq!(p.q_set().len(), q.q_set().len());
    }

    #[test]
    fn compare_is_antisymmetric(p in any_poset(8)) {
        for a in 0..p.n() {
            for b in 0..p.n() {
                if a != b {
                    prop_assert_eq!(p.compare(a, b), p.compare(b, a).flip());
                }
            }
        }
        prop_assert!(p.relations().all(|(x, y)| p.compare(x, y) == PairOutcome::Less));
    }
}
