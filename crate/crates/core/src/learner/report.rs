use serde::{Deserialize, Serialize};

use crate::poset::{PairOutcome, Poset, PosetJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub a: usize,
    pub b: usize,
    pub outcome: PairOutcome,
}

/// Trace positions at which each phase of a run began.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseMarks {
    pub main: usize,
    /// bulk comparison of `Q_ABC` and the leftover elements
    pub bulk: Option<usize>,
    pub fallback: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LearnerReport {
    pub poset: Poset,
    pub trace: Vec<TraceEntry>,
    pub phases: PhaseMarks,
}

impl LearnerReport {
    /// Distinct pairs compared.
    pub fn compared(&self) -> usize {
        self.trace.len()
    }

    pub fn to_json(&self) -> TraceJson {
        TraceJson {
            n: self.poset.n(),
            trace: self.trace.clone(),
            compared: self.compared(),
            phase_marks: self.phases,
            result: self.poset.to_json(),
        }
    }
}

/// Wire form of a learner run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub n: usize,
    pub trace: Vec<TraceEntry>,
    pub compared: usize,
    pub phase_marks: PhaseMarks,
    pub result: PosetJson,
}
