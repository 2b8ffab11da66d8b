//! Learning a hidden order through a comparison oracle.

mod knowledge;
mod oracle;
mod phi3;
mod report;

use std::str::FromStr;

use num_rational::Ratio;

pub use knowledge::{Forced, KnowledgeState};
pub use oracle::{Oracle, PosetOracle};
pub use phi3::{Phi3, Phi3Options, Step};
pub use report::{LearnerReport, PhaseMarks, TraceEntry, TraceJson};

use crate::enumerate::enumerate_posets;
use crate::error::{Error, Result};

/// Drives a [`Phi3`] machine against an oracle until the order is known.
pub fn run_phi3<O: Oracle + ?Sized>(oracle: &mut O, options: Phi3Options) -> Result<LearnerReport> {
    let mut machine = Phi3::new(oracle.n(), options);
    while let Step::Query(a, b) = machine.advance() {
        let outcome = oracle.compare(a, b);
        machine.answer(outcome)?;
    }
    machine.into_report()
}

/// The three-level learner, charging for every pair the algorithm names.
pub fn phi3<O: Oracle + ?Sized>(oracle: &mut O) -> Result<LearnerReport> {
    run_phi3(oracle, Phi3Options::default())
}

/// Compares every pair.
pub fn naive_learner<O: Oracle + ?Sized>(oracle: &mut O) -> Result<LearnerReport> {
    let n = oracle.n();
    let mut state = KnowledgeState::new(n);
    let mut trace = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            let outcome = oracle.compare(a, b);
            state.observe(a, b, outcome)?;
            trace.push(TraceEntry { a, b, outcome });
        }
    }
    Ok(LearnerReport {
        poset: state.known_order(),
        trace,
        phases: PhaseMarks::default(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LearnerKind {
    Phi3,
    /// [`Phi3`] that never pays for deducible pairs.
    Phi3Skip,
    Naive,
}

impl LearnerKind {
    pub fn run<O: Oracle + ?Sized>(self, oracle: &mut O) -> Result<LearnerReport> {
        match self {
            LearnerKind::Phi3 => phi3(oracle),
            LearnerKind::Phi3Skip => run_phi3(oracle, Phi3Options { skip_forced: true }),
            LearnerKind::Naive => naive_learner(oracle),
        }
    }
}

impl FromStr for LearnerKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "phi3" => Ok(LearnerKind::Phi3),
            "phi3-skip" => Ok(LearnerKind::Phi3Skip),
            "naive" => Ok(LearnerKind::Naive),
            other => Err(format!(
                "unknown learner {other:?} (phi3, phi3-skip, naive)"
            )),
        }
    }
}

pub const MAX_EXHAUSTIVE_N: usize = 5;

/// Exact mean number of compared pairs over all posets on `n` elements.
pub fn expected_cost(kind: LearnerKind, n: usize) -> Result<Ratio<u64>> {
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::Guard {
            what: "expected_cost",
            n,
            max: MAX_EXHAUSTIVE_N,
        });
    }
    let (mut total, mut count) = (0u64, 0u64);
    for p in enumerate_posets(n)? {
        total += kind.run(&mut PosetOracle::new(&p))?.compared() as u64;
        count += 1;
    }
    Ok(Ratio::new(total, count))
}
