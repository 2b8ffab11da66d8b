//! Strict partial orders on `{0, .., n-1}` and the relational operators on them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{is_subset, BitMatrix};
use crate::error::{Error, Result};

/// Result of comparing the ordered pair `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairOutcome {
    /// `a P b`
    Less,
    /// `b P a`
    Greater,
    Incomparable,
}

impl PairOutcome {
    pub const ALL: [PairOutcome; 3] = [
        PairOutcome::Less,
        PairOutcome::Greater,
        PairOutcome::Incomparable,
    ];

    /// The same fact seen from `(b, a)`.
    pub fn flip(self) -> Self {
        match self {
            PairOutcome::Less => PairOutcome::Greater,
            PairOutcome::Greater => PairOutcome::Less,
            PairOutcome::Incomparable => PairOutcome::Incomparable,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PairOutcome::Less => "less",
            PairOutcome::Greater => "greater",
            PairOutcome::Incomparable => "incomparable",
        }
    }
}

impl fmt::Display for PairOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for PairOutcome {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "less" => Ok(PairOutcome::Less),
            "greater" => Ok(PairOutcome::Greater),
            "incomparable" => Ok(PairOutcome::Incomparable),
            other => Err(format!("unknown outcome {other:?}")),
        }
    }
}

/// Normalized unordered pair, `lo < hi`.
pub fn unordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// True iff `rel` is irreflexive and transitive.
pub fn is_strict_order(rel: &BitMatrix) -> bool {
    let n = rel.len();
    if rel.has_diagonal() {
        return false;
    }
    // transitive iff every up-set is closed upward
    (0..n).all(|x| rel.row_iter(x).all(|y| is_subset(rel.row(y), rel.row(x))))
}

/// A binary relation without loops, e.g. a covering relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    m: BitMatrix,
}

impl Relation {
    pub fn new(n: usize) -> Self {
        Relation {
            m: BitMatrix::new(n),
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut r = Relation::new(n);
        for (x, y) in pairs {
            r.insert(x, y)?;
        }
        Ok(r)
    }

    fn from_matrix_unchecked(m: BitMatrix) -> Self {
        debug_assert!(!m.has_diagonal());
        Relation { m }
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn insert(&mut self, x: usize, y: usize) -> Result<()> {
        let n = self.n();
        for e in [x, y] {
            if e >= n {
                return Err(Error::OutOfRange { elem: e, n });
            }
        }
        if x == y {
            return Err(Error::BadPair(x, y));
        }
        self.m.set(x, y, true);
        Ok(())
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.m.get(x, y)
    }

    pub fn len(&self) -> usize {
        self.m.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.m.pairs()
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.m
    }

    pub fn is_disjoint(&self, other: &Relation) -> bool {
        self.m.is_disjoint(&other.m)
    }

    /// Smallest transitive superset. A cycle is reported, not repaired.
    pub fn transitive_closure(&self) -> Result<Relation> {
        let mut m = self.m.clone();
        m.close_transitively();
        match (0..m.len()).find(|&x| m.get(x, x)) {
            Some(x) => Err(Error::Cycle(x)),
            None => Ok(Relation { m }),
        }
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.m.fmt(f)
    }
}

/// A set of unordered pairs `{a, b}`, stored as `(lo, hi)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PairSet {
    n: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl PairSet {
    pub fn new(n: usize) -> Self {
        PairSet {
            n,
            pairs: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        assert!(a != b && a < self.n && b < self.n, "bad pair ({a}, {b})");
        self.pairs.insert(unordered(a, b))
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&unordered(a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }
}

impl FromIterator<(usize, usize)> for PairSet {
    /// Collects pairs; `n` is one more than the largest coordinate seen.
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        let pairs: BTreeSet<_> = iter.into_iter().map(|(a, b)| unordered(a, b)).collect();
        let n = pairs.iter().map(|&(_, b)| b + 1).max().unwrap_or(0);
        PairSet { n, pairs }
    }
}

/// A strict partial order on `{0, .., n-1}`. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poset {
    up: BitMatrix,
    down: BitMatrix,
}

impl Poset {
    pub fn antichain(n: usize) -> Self {
        Poset {
            up: BitMatrix::new(n),
            down: BitMatrix::new(n),
        }
    }

    /// `0 < 1 < .. < n-1`
    pub fn chain(n: usize) -> Self {
        let mut m = BitMatrix::new(n);
        for x in 0..n {
            for y in x + 1..n {
                m.set(x, y, true);
            }
        }
        Poset::from_matrix_unchecked(m)
    }

    /// Validates that `m` is a strict order.
    pub fn from_matrix(m: BitMatrix) -> Result<Self> {
        if !is_strict_order(&m) {
            return Err(Error::NotStrictOrder);
        }
        Ok(Poset::from_matrix_unchecked(m))
    }

    pub(crate) fn from_matrix_unchecked(up: BitMatrix) -> Self {
        let down = up.transpose();
        Poset { up, down }
    }

    /// The full (already closed) list of relations; rejects anything that is
    /// not a strict order.
    pub fn from_relations(n: usize, rels: &[(usize, usize)]) -> Result<Self> {
        let mut m = BitMatrix::new(n);
        for &(x, y) in rels {
            for e in [x, y] {
                if e >= n {
                    return Err(Error::OutOfRange { elem: e, n });
                }
            }
            m.set(x, y, true);
        }
        Poset::from_matrix(m)
    }

    /// Transitive closure of `rels`; fails on cycles.
    pub fn generated_by(n: usize, rels: &[(usize, usize)]) -> Result<Self> {
        let r = Relation::from_pairs(n, rels.iter().copied())?;
        Ok(Poset::from_matrix_unchecked(r.transitive_closure()?.m))
    }

    pub fn n(&self) -> usize {
        self.up.len()
    }

    /// `x P y`
    #[inline]
    pub fn less(&self, x: usize, y: usize) -> bool {
        self.up.get(x, y)
    }

    pub fn compare(&self, a: usize, b: usize) -> PairOutcome {
        if self.up.get(a, b) {
            PairOutcome::Less
        } else if self.up.get(b, a) {
            PairOutcome::Greater
        } else {
            PairOutcome::Incomparable
        }
    }

    /// `xP = {y : x P y}` as a bit row.
    pub fn up_set(&self, x: usize) -> &[u64] {
        self.up.row(x)
    }

    /// `Px = {y : y P x}` as a bit row.
    pub fn down_set(&self, x: usize) -> &[u64] {
        self.down.row(x)
    }

    pub fn down_count(&self, x: usize) -> usize {
        self.down.row_count(x)
    }

    pub fn up_count(&self, x: usize) -> usize {
        self.up.row_count(x)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.up
    }

    pub fn relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up.pairs()
    }

    pub fn relation_count(&self) -> usize {
        self.up.count()
    }

    pub fn as_relation(&self) -> Relation {
        Relation::from_matrix_unchecked(self.up.clone())
    }

    pub fn dual(&self) -> Poset {
        Poset {
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Image under the bijection `x -> perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let mut m = BitMatrix::new(n);
        for (x, y) in self.relations() {
            m.set(perm[x], perm[y], true);
        }
        Poset::from_matrix_unchecked(m)
    }

    /// Restriction to `{0, .., k-1}`.
    pub fn restrict_prefix(&self, k: usize) -> Poset {
        let mut m = BitMatrix::new(k);
        for (x, y) in self.relations().filter(|&(x, y)| x < k && y < k) {
            m.set(x, y, true);
        }
        Poset::from_matrix_unchecked(m)
    }

    /// `P \ P^2`: the Hasse edges.
    pub fn covering(&self) -> Relation {
        Relation::from_matrix_unchecked(self.up.and_not(&self.up.square()))
    }

    /// Pairs `(x, y)`, `x != y`, with `Px ⊆ Py`, `yP ⊆ xP` and not `x P y`:
    /// exactly the pairs that could be added to `P` keeping it an order.
    pub fn anti_covering(&self) -> Relation {
        let n = self.n();
        let mut m = BitMatrix::new(n);
        for x in 0..n {
            for y in 0..n {
                if x != y
                    && !self.less(x, y)
                    && is_subset(self.down_set(x), self.down_set(y))
                    && is_subset(self.up_set(y), self.up_set(x))
                {
                    m.set(x, y, true);
                }
            }
        }
        Relation::from_matrix_unchecked(m)
    }

    /// Unordered pairs that are covering or anti-covering. Every correct
    /// learner has to compare each of them.
    pub fn q_set(&self) -> PairSet {
        let mut q = PairSet::new(self.n());
        for (x, y) in self.covering().pairs().chain(self.anti_covering().pairs()) {
            q.insert(x, y);
        }
        q
    }

    /// Row-major bit encoding prefixed by `n`; the order used for canonical keys.
    pub fn encode(&self) -> Vec<u8> {
        let n = self.n();
        let mut out = vec![0u8; 1 + (n * n).div_ceil(8)];
        out[0] = n as u8;
        for (x, y) in self.relations() {
            let bit = x * n + y;
            out[1 + bit / 8] |= 0x80 >> (bit % 8);
        }
        out
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            n: self.n(),
            relations: self.relations().map(|(x, y)| [x, y]).collect(),
        }
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset(n={}, ", self.n())?;
        f.debug_set().entries(self.covering().pairs()).finish()?;
        write!(f, ")")
    }
}

/// Wire form: `{"n": int, "relations": [[x, y], ...]}` listing the closed order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub relations: Vec<[usize; 2]>,
}

impl TryFrom<PosetJson> for Poset {
    type Error = Error;

    fn try_from(j: PosetJson) -> Result<Poset> {
        let rels: Vec<_> = j.relations.iter().map(|&[x, y]| (x, y)).collect();
        Poset::from_relations(j.n, &rels)
    }
}

impl From<&Poset> for PosetJson {
    fn from(p: &Poset) -> Self {
        p.to_json()
    }
}
