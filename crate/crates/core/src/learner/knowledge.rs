//! What a learner knows about the hidden order after a sequence of comparisons.
//!
//! Oriented observations are kept transitively closed. A pair can still be
//! oriented `a < b` iff the closure of the current relation plus `(a, b)`
//! relates no pair that was observed incomparable. That closure is itself a
//! consistent order, so the per-pair test below is exact, not just sound.

use crate::bits::{intersects, BitMatrix, Ones};
use crate::error::{Error, Result};
use crate::poset::{unordered, PairOutcome, Poset, Relation};

/// Deduced status of an unordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Forced {
    Unknown,
    Less,
    Greater,
    Incomparable,
}

impl Forced {
    pub fn outcome(self) -> Option<PairOutcome> {
        match self {
            Forced::Unknown => None,
            Forced::Less => Some(PairOutcome::Less),
            Forced::Greater => Some(PairOutcome::Greater),
            Forced::Incomparable => Some(PairOutcome::Incomparable),
        }
    }
}

#[derive(Clone, Debug)]
pub struct KnowledgeState {
    n: usize,
    /// observed outcome for `(lo, hi)`, row-major over `lo * n + hi`
    observed: Vec<Option<PairOutcome>>,
    observed_count: usize,
    /// closure of oriented observations; `less[x]` is the known up-set of x
    less: BitMatrix,
    /// transpose of `less`
    greater: BitMatrix,
    /// observed incomparabilities, symmetric
    incomp: BitMatrix,
}

impl KnowledgeState {
    pub fn new(n: usize) -> Self {
        KnowledgeState {
            n,
            observed: vec![None; n * n],
            observed_count: 0,
            less: BitMatrix::new(n),
            greater: BitMatrix::new(n),
            incomp: BitMatrix::new(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        if a == b || a >= self.n || b >= self.n {
            return Err(Error::BadPair(a, b));
        }
        Ok(())
    }

    /// Outcome observed for `(a, b)`, if this pair was compared.
    pub fn observed(&self, a: usize, b: usize) -> Option<PairOutcome> {
        let (lo, hi) = unordered(a, b);
        let o = self.observed[lo * self.n + hi]?;
        Some(if a == lo { o } else { o.flip() })
    }

    pub fn observed_count(&self) -> usize {
        self.observed_count
    }

    /// `{x} ∪ rows[x]` as words.
    fn closed_row(rows: &BitMatrix, x: usize) -> Vec<u64> {
        let mut r = rows.row(x).to_vec();
        r[x / 64] |= 1 << (x % 64);
        r
    }

    /// Whether `a < b` can still hold.
    fn can_be_less(&self, a: usize, b: usize) -> bool {
        if self.less.get(a, b) {
            return true;
        }
        if self.less.get(b, a) {
            return false;
        }
        let above_b = Self::closed_row(&self.less, b);
        let below_a = Self::closed_row(&self.greater, a);
        !Ones::new(&below_a).any(|x| intersects(self.incomp.row(x), &above_b))
    }

    /// The outcome of `(a, b)` if every order consistent with the
    /// observations agrees on it.
    pub fn forced_value(&self, a: usize, b: usize) -> Forced {
        if self.less.get(a, b) {
            Forced::Less
        } else if self.less.get(b, a) {
            Forced::Greater
        } else if !self.can_be_less(a, b) && !self.can_be_less(b, a) {
            Forced::Incomparable
        } else {
            Forced::Unknown
        }
    }

    pub fn is_consistent(&self, a: usize, b: usize, outcome: PairOutcome) -> bool {
        match outcome {
            PairOutcome::Less => self.can_be_less(a, b),
            PairOutcome::Greater => self.can_be_less(b, a),
            PairOutcome::Incomparable => !self.less.get(a, b) && !self.less.get(b, a),
        }
    }

    /// Records `outcome` for `(a, b)` and re-closes the known relation.
    pub fn observe(&mut self, a: usize, b: usize, outcome: PairOutcome) -> Result<()> {
        self.check_pair(a, b)?;
        if !self.is_consistent(a, b, outcome) {
            return Err(Error::Inconsistent { a, b, outcome });
        }
        let (lo, hi) = unordered(a, b);
        let slot = &mut self.observed[lo * self.n + hi];
        if slot.is_none() {
            self.observed_count += 1;
        }
        *slot = Some(if a == lo { outcome } else { outcome.flip() });
        match outcome {
            PairOutcome::Less => self.orient(a, b),
            PairOutcome::Greater => self.orient(b, a),
            PairOutcome::Incomparable => {
                self.incomp.set(a, b, true);
                self.incomp.set(b, a, true);
            }
        }
        Ok(())
    }

    fn orient(&mut self, a: usize, b: usize) {
        if self.less.get(a, b) {
            return;
        }
        let above_b = Self::closed_row(&self.less, b);
        let below_a = Self::closed_row(&self.greater, a);
        for x in Ones::new(&below_a) {
            for (w, add) in self.less.row_mut(x).iter_mut().zip(&above_b) {
                *w |= add;
            }
        }
        for y in Ones::new(&above_b) {
            for (w, add) in self.greater.row_mut(y).iter_mut().zip(&below_a) {
                *w |= add;
            }
        }
    }

    pub fn all_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
    }

    pub fn is_determined(&self) -> bool {
        self.all_pairs()
            .all(|(a, b)| self.forced_value(a, b) != Forced::Unknown)
    }

    /// Deduced relation pairs `(x, y)` meaning `x < y`.
    pub fn known_relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.less.pairs()
    }

    /// Pairs `(lo, hi)` forced incomparable.
    pub fn known_incomparable(&self) -> Vec<(usize, usize)> {
        self.all_pairs()
            .filter(|&(a, b)| self.forced_value(a, b) == Forced::Incomparable)
            .collect()
    }

    /// Covering pairs of the deduced relation.
    pub fn hasse(&self) -> Relation {
        self.known_order().covering()
    }

    /// The deduced relation as an order (the least order consistent with
    /// the observations).
    pub fn known_order(&self) -> Poset {
        Poset::from_matrix_unchecked(self.less.clone())
    }

    /// The learned order once every pair is forced.
    pub fn determined_poset(&self) -> Option<Poset> {
        self.is_determined().then(|| self.known_order())
    }
}
