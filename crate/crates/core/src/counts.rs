//! Bundled numbers of labeled posets, `|P(n)|` for `n = 0..=16`.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

/// `n<TAB>count` per line.
pub const BUNDLED_COUNTS: &str = include_str!("../data/poset_counts.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountsTable {
    counts: BTreeMap<usize, u128>,
}

impl CountsTable {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_COUNTS).expect("bundled counts file is well formed")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |msg: &str| Error::CountsFormat {
                line: line_no,
                msg: msg.to_string(),
            };
            if line.trim().is_empty() {
                continue;
            }
            let (n, count) = line
                .split_once('\t')
                .ok_or_else(|| err("expected n<TAB>count"))?;
            let n: usize = n.trim().parse().map_err(|_| err("bad n"))?;
            let count: u128 = count.trim().parse().map_err(|_| err("bad count"))?;
            if counts.insert(n, count).is_some() {
                return Err(err("duplicate n"));
            }
        }
        Ok(CountsTable { counts })
    }

    pub fn get(&self, n: usize) -> Result<u128> {
        self.counts.get(&n).copied().ok_or(Error::MissingCount(n))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u128)> + '_ {
        self.counts.iter().map(|(&n, &c)| (n, c))
    }

    /// Strictly increasing from `n = 1` on.
    pub fn is_increasing(&self) -> bool {
        let v: Vec<_> = self.iter().filter(|&(n, _)| n >= 1).collect();
        v.windows(2)
            .all(|w| w[1].0 == w[0].0 + 1 && w[1].1 > w[0].1)
    }
}

/// `log_3 |P(n)|`: no ternary decision tree with `|P(n)|` leaves has a smaller
/// average depth.
pub fn info_lower_bound(n: usize, counts: &CountsTable) -> Result<f64> {
    Ok((counts.get(n)? as f64).log(3.0))
}
