use crate::poset::{PairOutcome, Poset};

/// Answers pairwise comparisons about a fixed hidden order.
pub trait Oracle {
    fn n(&self) -> usize;

    /// Outcome for `(a, b)`; every call costs one unit.
    fn compare(&mut self, a: usize, b: usize) -> PairOutcome;

    fn calls(&self) -> usize;
}

/// Truthful oracle backed by a known poset.
#[derive(Debug, Clone)]
pub struct PosetOracle<'a> {
    truth: &'a Poset,
    calls: usize,
}

impl<'a> PosetOracle<'a> {
    pub fn new(truth: &'a Poset) -> Self {
        PosetOracle { truth, calls: 0 }
    }
}

impl Oracle for PosetOracle<'_> {
    fn n(&self) -> usize {
        self.truth.n()
    }

    fn compare(&mut self, a: usize, b: usize) -> PairOutcome {
        self.calls += 1;
        self.truth.compare(a, b)
    }

    fn calls(&self) -> usize {
        self.calls
    }
}
