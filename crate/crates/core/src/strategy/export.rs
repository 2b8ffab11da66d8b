//! Strategy graph export: JSON for tools, DOT for drawing.
//!
//! Nodes are the canonical states the optimal strategy visits. All solved
//! states are merged into a single `solved` node. Each node lists the
//! relations and incomparabilities known there. Nodes offering only one kind
//! of informative comparison are drawn with a thin frame, and a child that is
//! reached through dualization gets a `dual` loop.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::state::{facts_string, Facts};
use super::StrategyTree;
use crate::poset::PairOutcome;

pub const SOLVED_KEY: &str = "solved";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostJson {
    pub num: u64,
    pub den: u64,
}

impl From<Ratio<u64>> for CostJson {
    fn from(r: Ratio<u64>) -> Self {
        CostJson {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyNodeJson {
    pub key: String,
    pub size: u64,
    pub query: Option<[usize; 2]>,
    pub children: BTreeMap<String, String>,
    pub cost: CostJson,
    /// known `x < y`
    pub relations: Vec<[usize; 2]>,
    pub incomparable: Vec<[usize; 2]>,
    /// only one kind of informative comparison is available
    pub thin: bool,
    /// outcomes whose child is reached through dualization
    pub dual: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyJson {
    pub n: usize,
    pub expected_cost: CostJson,
    pub nodes: Vec<StrategyNodeJson>,
}

struct NodeView {
    key: String,
    relations: Vec<[usize; 2]>,
    incomparable: Vec<[usize; 2]>,
}

fn view(tree: &StrategyTree, facts: &Facts) -> NodeView {
    let pairs = tree.universe().pairs();
    let mut relations = Vec::new();
    let mut incomparable = Vec::new();
    for (&(a, b), &code) in pairs.iter().zip(facts.iter()) {
        match super::fact_outcome(code) {
            Some(PairOutcome::Less) => relations.push([a, b]),
            Some(PairOutcome::Greater) => relations.push([b, a]),
            Some(PairOutcome::Incomparable) => incomparable.push([a, b]),
            None => {}
        }
    }
    relations.sort_unstable();
    NodeView {
        key: facts_string(facts, pairs.len()),
        relations,
        incomparable,
    }
}

fn child_key(tree: &StrategyTree, facts: &Facts) -> String {
    if tree.node(facts).is_some_and(|n| n.is_leaf()) {
        SOLVED_KEY.to_string()
    } else {
        view(tree, facts).key
    }
}

pub fn export_json(tree: &StrategyTree) -> StrategyJson {
    let mut nodes = Vec::new();
    let mut has_solved = false;
    for facts in tree.reachable() {
        let node = tree.node(&facts).expect("reachable nodes are memoized");
        if node.is_leaf() {
            has_solved = true;
            continue;
        }
        let v = view(tree, &facts);
        let mut children = BTreeMap::new();
        let mut dual = Vec::new();
        for (o, child, via_dual) in &node.children {
            children.insert(o.as_str().to_string(), child_key(tree, child));
            if *via_dual && !tree.node(child).unwrap().is_leaf() {
                dual.push(o.as_str().to_string());
            }
        }
        nodes.push(StrategyNodeJson {
            key: v.key,
            size: node.size,
            query: node.query.map(|(a, b)| [a, b]),
            children,
            cost: node.cost().into(),
            relations: v.relations,
            incomparable: v.incomparable,
            thin: node.query_types == 1,
            dual,
        });
    }
    if has_solved {
        nodes.push(StrategyNodeJson {
            key: SOLVED_KEY.to_string(),
            size: 1,
            query: None,
            children: BTreeMap::new(),
            cost: Ratio::from_integer(0).into(),
            relations: Vec::new(),
            incomparable: Vec::new(),
            thin: false,
            dual: Vec::new(),
        });
    }
    StrategyJson {
        n: tree.n(),
        expected_cost: tree.expected_cost().into(),
        nodes,
    }
}

fn hasse_edges(relations: &[[usize; 2]]) -> Vec<[usize; 2]> {
    let rel: BTreeSet<(usize, usize)> = relations.iter().map(|&[a, b]| (a, b)).collect();
    relations
        .iter()
        .copied()
        .filter(|&[a, b]| !rel.iter().any(|&(x, z)| x == a && rel.contains(&(z, b))))
        .collect()
}

pub fn export_dot(tree: &StrategyTree) -> String {
    let doc = export_json(tree);
    let mut out = String::new();
    writeln!(out, "digraph strategy {{").unwrap();
    writeln!(
        out,
        "  graph [rankdir=TB, label=\"n = {}, expected cost {}/{}\"];",
        doc.n, doc.expected_cost.num, doc.expected_cost.den
    )
    .unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for node in &doc.nodes {
        let mut label = format!("{}\\nsize {}", node.key, node.size);
        if node.key != SOLVED_KEY {
            write!(label, "  cost {}/{}", node.cost.num, node.cost.den).unwrap();
            let edges: Vec<String> = hasse_edges(&node.relations)
                .iter()
                .map(|[a, b]| format!("{a}<{b}"))
                .collect();
            let dotted: Vec<String> = node
                .incomparable
                .iter()
                .map(|[a, b]| format!("{a}..{b}"))
                .collect();
            if !edges.is_empty() {
                write!(label, "\\n{}", edges.join(" ")).unwrap();
            }
            if !dotted.is_empty() {
                write!(label, "\\n{}", dotted.join(" ")).unwrap();
            }
            if let Some([a, b]) = node.query {
                write!(label, "\\nask {{{a},{b}}}").unwrap();
            }
        }
        let pen = if node.thin { 1 } else { 2 };
        writeln!(
            out,
            "  \"{}\" [label=\"{}\", penwidth={}];",
            node.key, label, pen
        )
        .unwrap();
    }
    let mut looped = BTreeSet::new();
    for node in &doc.nodes {
        for (outcome, child) in &node.children {
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                node.key, child, outcome
            )
            .unwrap();
        }
        for outcome in &node.dual {
            let child = &node.children[outcome];
            if looped.insert(child.clone()) {
                writeln!(
                    out,
                    "  \"{child}\" -> \"{child}\" [label=\"dual\", style=dotted];"
                )
                .unwrap();
            }
        }
    }
    writeln!(out, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::optimal_cost;

    #[test]
    fn two_elements_have_two_states() {
        let (_, tree) = optimal_cost(2).unwrap();
        let doc = export_json(&tree);
        assert_eq!(doc.nodes.len(), 2);
        assert_eq!(doc.nodes[0].key, "?");
        assert_eq!(doc.nodes[0].query, Some([0, 1]));
        assert!(doc.nodes[0].children.values().all(|k| k == SOLVED_KEY));
        assert_eq!(doc.expected_cost, CostJson { num: 1, den: 1 });
    }

    #[test]
    fn json_field_names() {
        let (_, tree) = optimal_cost(2).unwrap();
        let v = serde_json::to_value(export_json(&tree)).unwrap();
        assert_eq!(v["expected_cost"]["num"], 1);
        assert!(v["nodes"][1]["query"].is_null());
        assert_eq!(v["nodes"][0]["cost"]["den"], 1);
    }

    #[test]
    fn hasse_drops_transitive_edges() {
        assert_eq!(hasse_edges(&[[0, 1], [0, 2], [1, 2]]), vec![[0, 1], [1, 2]]);
    }
}
