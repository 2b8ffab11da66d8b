//! Exact optimal learning strategies for small ground sets.
//!
//! A node of the search is an information state, identified by the facts
//! constant across it and taken up to relabeling and dualization. With
//! `W(S) = |S| * cost(S)` the recurrence
//!
//! ```text
//! W(S) = 0                                   if |S| = 1
//! W(S) = |S| + min_pair sum_outcome W(S_o)   otherwise
//! ```
//!
//! stays in integers, so expected costs come out as exact rationals
//! `W(full) / |P(n)|`.

mod export;
mod state;

use std::collections::{BTreeSet, HashMap};

use num_rational::Ratio;

pub use export::{export_dot, export_json, CostJson, StrategyJson, StrategyNodeJson};
pub use state::{
    fact_outcome, facts_string, Facts, InfoState, Symmetry, Universe, MAX_PAIRS, MAX_STRATEGY_N,
    UNKNOWN,
};

use crate::error::{Error, Result};
use crate::poset::{PairOutcome, Poset};

/// Outcome, canonical child facts, and whether the child maps onto its
/// canonical form only through dualization.
pub type Children = Vec<(PairOutcome, Facts, bool)>;

/// One canonical information state of the optimal strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyNode {
    pub size: u64,
    /// `size * expected residual cost`
    pub weight: u64,
    /// Pair to compare next, in the frame of the canonical facts; `None` on leaves.
    pub query: Option<(usize, usize)>,
    /// Number of inequivalent informative comparisons available here.
    pub query_types: usize,
    pub children: Children,
}

impl StrategyNode {
    pub fn cost(&self) -> Ratio<u64> {
        Ratio::new(self.weight, self.size)
    }

    pub fn is_leaf(&self) -> bool {
        self.size == 1
    }
}

/// Memoized optimal decision tree over canonical information states.
#[derive(Debug, Clone)]
pub struct StrategyTree {
    universe: Universe,
    root: Facts,
    nodes: HashMap<Facts, StrategyNode>,
}

struct Search<'u> {
    u: &'u Universe,
    memo: HashMap<Facts, StrategyNode>,
}

impl Search<'_> {
    /// `facts` must be canonical.
    fn solve(&mut self, facts: Facts) -> u64 {
        if let Some(node) = self.memo.get(&facts) {
            return node.weight;
        }
        let u = self.u;
        let state = u.state_of(&facts);
        let size = state.size() as u64;
        if size <= 1 {
            self.memo.insert(
                facts,
                StrategyNode {
                    size,
                    weight: 0,
                    query: None,
                    query_types: 0,
                    children: Vec::new(),
                },
            );
            return 0;
        }
        let mut best: Option<(u64, usize, Children)> = None;
        let mut seen_types: BTreeSet<Vec<Facts>> = BTreeSet::new();
        for p in 0..u.pairs().len() {
            if facts[p] != UNKNOWN {
                continue;
            }
            let mut children = Vec::with_capacity(3);
            for code in 1..=3u8 {
                let child = u.restrict_index(&state, p, code);
                if child.is_empty() {
                    continue;
                }
                let mut child_facts = u.facts_from(&child, &facts);
                child_facts[p] = code;
                let (canon, _) = u.canonical_facts(&child_facts);
                let via_dual = !u.canonical_without_dual(&child_facts, &canon);
                children.push((fact_outcome(code).unwrap(), canon, via_dual));
            }
            let mut signature: Vec<Facts> = children.iter().map(|c| c.1).collect();
            signature.sort_unstable();
            if !seen_types.insert(signature) {
                // an equivalent pair was already expanded
                continue;
            }
            let weight = size + children.iter().map(|c| self.solve(c.1)).sum::<u64>();
            if best.as_ref().is_none_or(|b| weight < b.0) {
                best = Some((weight, p, children));
            }
        }
        let (weight, p, children) = best.expect("a state with two posets has an informative pair");
        self.memo.insert(
            facts,
            StrategyNode {
                size,
                weight,
                query: Some(u.pairs()[p]),
                query_types: seen_types.len(),
                children,
            },
        );
        weight
    }
}

/// Optimal expected number of comparisons to learn a uniformly random poset
/// on `n` elements, with the strategy attaining it.
pub fn optimal_cost(n: usize) -> Result<(Ratio<u64>, StrategyTree)> {
    let tree = StrategyTree::build(Universe::new(n)?);
    Ok((tree.expected_cost(), tree))
}

impl StrategyTree {
    pub fn build(universe: Universe) -> Self {
        let (root, _) = universe.canonical_facts(&universe.facts(&universe.full_state()));
        let mut search = Search {
            u: &universe,
            memo: HashMap::new(),
        };
        search.solve(root);
        let nodes = search.memo;
        StrategyTree {
            universe,
            root,
            nodes,
        }
    }

    pub fn n(&self) -> usize {
        self.universe.n()
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn root(&self) -> &Facts {
        &self.root
    }

    pub fn node(&self, facts: &Facts) -> Option<&StrategyNode> {
        self.nodes.get(facts)
    }

    /// Every memoized state, including ones the optimal strategy never visits.
    pub fn nodes(&self) -> impl Iterator<Item = (&Facts, &StrategyNode)> {
        self.nodes.iter()
    }

    pub fn expected_cost(&self) -> Ratio<u64> {
        self.nodes[&self.root].cost()
    }

    /// Canonical states visited by the optimal strategy, root first, in
    /// breadth-first order.
    pub fn reachable(&self) -> Vec<Facts> {
        let mut order = vec![self.root];
        let mut seen: BTreeSet<Facts> = order.iter().copied().collect();
        let mut i = 0;
        while i < order.len() {
            for (_, child, _) in &self.nodes[&order[i]].children {
                if seen.insert(*child) {
                    order.push(*child);
                }
            }
            i += 1;
        }
        order
    }

    /// Pairs the strategy compares to learn `p`, in order.
    pub fn path(&self, p: &Poset) -> Result<Vec<(usize, usize)>> {
        let u = &self.universe;
        if p.n() != u.n() {
            return Err(Error::SizeMismatch {
                expected: u.n(),
                got: p.n(),
            });
        }
        let mut state = u.full_state();
        let mut path = Vec::new();
        while state.size() > 1 {
            let facts = u.facts(&state);
            let (canon, sym) = u.canonical_facts(&facts);
            let node = &self.nodes[&canon];
            let (a, b) = node.query.expect("non-singleton states have a query");
            let image = u.pair_index(a, b).unwrap();
            let (x, y) = u.pairs()[u.symmetries()[sym].preimage(image)];
            state = u.restrict(&state, x, y, p.compare(x, y))?;
            path.push((x, y));
        }
        debug_assert!(state.members().all(|i| &u.posets()[i] == p));
        Ok(path)
    }

    /// Number of comparisons the strategy spends on `p`.
    pub fn evaluate(&self, p: &Poset) -> Result<usize> {
        Ok(self.path(p)?.len())
    }

    /// Every stored weight equals `size` plus the children's weights, and the
    /// children partition the state.
    pub fn check_bellman(&self) -> bool {
        self.nodes.iter().all(|(facts, node)| {
            if node.is_leaf() {
                return node.weight == 0 && node.children.is_empty();
            }
            let child_sizes: u64 = node.children.iter().map(|c| self.nodes[&c.1].size).sum();
            let child_weights: u64 = node.children.iter().map(|c| self.nodes[&c.1].weight).sum();
            let u = &self.universe;
            let (a, b) = node.query.unwrap();
            let state = u.state_of(facts);
            let sizes_match = node.children.iter().all(|&(o, canon, _)| {
                let child = u.restrict(&state, a, b, o).unwrap();
                u.canonical_facts(&u.facts(&child)).0 == canon
            });
            child_sizes == node.size && node.weight == node.size + child_weights && sizes_match
        })
    }
}

/// Comparisons the strategy spends on `p`.
pub fn evaluate_strategy(tree: &StrategyTree, p: &Poset) -> Result<usize> {
    tree.evaluate(p)
}

/// Rounds half-to-even at three decimals.
pub fn round3(r: Ratio<u64>) -> f64 {
    let scaled = Ratio::new(*r.numer() as u128 * 1000, *r.denom() as u128);
    let floor = scaled.to_integer();
    let frac = scaled - Ratio::from_integer(floor);
    let half = Ratio::new(1u128, 2);
    let rounded = if frac > half || (frac == half && floor % 2 == 1) {
        floor + 1
    } else {
        floor
    };
    rounded as f64 / 1000.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_sizes() {
        assert_eq!(optimal_cost(0).unwrap().0, Ratio::from_integer(0));
        assert_eq!(optimal_cost(1).unwrap().0, Ratio::from_integer(0));
        let (c, tree) = optimal_cost(2).unwrap();
        assert_eq!(c, Ratio::from_integer(1));
        for p in tree.universe().posets() {
            assert_eq!(tree.evaluate(p).unwrap(), 1);
        }
    }

    #[test]
    fn three_elements_by_hand() {
        let (c, tree) = optimal_cost(3).unwrap();
        assert!(tree.check_bellman());
        let total: usize = tree
            .universe()
            .posets()
            .iter()
            .map(|p| tree.evaluate(p).unwrap())
            .sum();
        assert_eq!(c, Ratio::new(total as u64, 19));
        assert!(c > Ratio::from_integer(2) && c < Ratio::from_integer(3));
    }

    #[test]
    fn rounding() {
        assert_eq!(round3(Ratio::new(54615, 10000)), 5.462);
        assert_eq!(round3(Ratio::new(54625, 10000)), 5.462);
        assert_eq!(round3(Ratio::new(1, 3)), 0.333);
    }
}
