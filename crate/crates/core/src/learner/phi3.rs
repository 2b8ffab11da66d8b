//! The three-level learner.
//!
//! Elements of the largest prefix `{0, .., n-1}` with `4 | n` are classified
//! one at a time into a lower level `A`, a middle antichain `B` and an upper
//! level `C`, usually after only a few comparisons. Then every pair of
//! `(A x B) ∪ (B x C)` and every pair between the prefix and the leftover
//! elements is compared. If that does not pin the order down, the remaining
//! undetermined pairs are compared one by one.
//!
//! The learner is a resumable state machine: [`Phi3::advance`] returns the
//! next comparison it needs and [`Phi3::answer`] feeds the result back, so the
//! same code runs against an in-process oracle or a human over HTTP.

use crate::error::{Error, Result};
use crate::learner::knowledge::{Forced, KnowledgeState};
use crate::learner::report::{LearnerReport, PhaseMarks, TraceEntry};
use crate::levels::{Level, LevelPartition};
use crate::poset::PairOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Query(usize, usize),
    Done,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Phi3Options {
    /// Never charge for a pair whose outcome is already deduced. Without it
    /// only repeated pairs are free, and the main loop and bulk phase pay for
    /// every pair the algorithm names.
    pub skip_forced: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Half {
    /// `C(k, x_i)`
    X,
    /// `C(k, y_i)`
    Y,
}

/// Facts about `x_1 .. x_{i-1}` needed by the `B` test.
#[derive(Debug, Clone, Copy, Default)]
struct Seen {
    /// some `k P x_j`
    above: bool,
    /// some `x_j P k`
    below: bool,
    /// some `x_j ∈ A` with not `x_j P k`
    a_not_below: bool,
    /// some `x_j ∈ C` with not `k P x_j`
    c_not_above: bool,
}

#[derive(Debug, Clone)]
struct MainLoop {
    k: usize,
    xs: Vec<usize>,
    ys: Vec<usize>,
    /// `|B|` when iteration `k` began
    m: usize,
    i: usize,
    half: Half,
    seen: Seen,
}

#[derive(Debug, Clone)]
enum Stage {
    Main(MainLoop),
    Bulk {
        pairs: Vec<(usize, usize)>,
        idx: usize,
    },
    Fallback {
        a: usize,
        b: usize,
    },
    Done,
}

#[derive(Debug, Clone)]
pub struct Phi3 {
    total: usize,
    n: usize,
    options: Phi3Options,
    knowledge: KnowledgeState,
    level: Vec<Option<Level>>,
    stage: Stage,
    trace: Vec<TraceEntry>,
    phases: PhaseMarks,
}

impl Phi3 {
    pub fn new(total: usize, options: Phi3Options) -> Self {
        let n = total - total % 4;
        let mut me = Phi3 {
            total,
            n,
            options,
            knowledge: KnowledgeState::new(total),
            level: vec![None; n],
            stage: Stage::Done,
            trace: Vec::new(),
            phases: PhaseMarks::default(),
        };
        me.stage = if n > 0 {
            Stage::Main(me.start_iteration(0))
        } else {
            me.bulk_stage()
        };
        me
    }

    /// Size of the prefix handled by the main loop.
    pub fn prefix_len(&self) -> usize {
        self.n
    }

    pub fn knowledge(&self) -> &KnowledgeState {
        &self.knowledge
    }

    pub fn trace(&self) -> &[TraceEntry] {
        &self.trace
    }

    /// Level assignment of the prefix so far.
    pub fn levels(&self) -> &[Option<Level>] {
        &self.level
    }

    /// The final partition of the prefix, once the main loop has finished.
    pub fn partition(&self) -> Option<LevelPartition> {
        if matches!(self.stage, Stage::Main(_)) {
            return None;
        }
        let level = self.level.iter().map(|l| l.expect("classified")).collect();
        Some(LevelPartition::from_levels(level))
    }

    fn members(&self, pred: impl Fn(Level) -> bool, k: usize) -> Vec<usize> {
        (0..k)
            .filter(|&x| self.level[x].is_some_and(&pred))
            .collect()
    }

    fn start_iteration(&self, k: usize) -> MainLoop {
        let outer = self.members(|l| l != Level::B, k);
        let middle = self.members(|l| l == Level::B, k);
        let tail = |head: &[usize]| -> Vec<usize> {
            let mut seq = head.to_vec();
            seq.extend((0..self.n).filter(|&x| x != k && !head.contains(&x)));
            seq
        };
        MainLoop {
            k,
            xs: tail(&outer),
            ys: tail(&middle),
            m: middle.len(),
            i: 0,
            half: Half::X,
            seen: Seen::default(),
        }
    }

    fn bulk_stage(&mut self) -> Stage {
        self.phases.bulk = Some(self.trace.len());
        let mut pairs = match self.partition() {
            Some(part) if self.n > 0 => part.ordered_q_pairs(),
            _ => Vec::new(),
        };
        pairs.extend((0..self.n).flat_map(|x| (self.n..self.total).map(move |y| (x, y))));
        if pairs.is_empty() {
            return self.fallback_stage();
        }
        Stage::Bulk { pairs, idx: 0 }
    }

    fn fallback_stage(&mut self) -> Stage {
        if self.knowledge.is_determined() {
            return Stage::Done;
        }
        self.phases.fallback = Some(self.trace.len());
        Stage::Fallback { a: 0, b: 1 }
    }

    /// The pair the current step needs, if any.
    fn needed(&self) -> Option<(usize, usize)> {
        match &self.stage {
            Stage::Main(ml) => Some(match ml.half {
                Half::X => (ml.k, ml.xs[ml.i]),
                Half::Y => (ml.k, ml.ys[ml.i]),
            }),
            Stage::Bulk { pairs, idx } => Some(pairs[*idx]),
            Stage::Fallback { a, b } => Some((*a, *b)),
            Stage::Done => None,
        }
    }

    /// What is already known about `(a, b)` without charging a comparison.
    fn known(&self, a: usize, b: usize) -> Option<PairOutcome> {
        if let Some(o) = self.knowledge.observed(a, b) {
            return Some(o);
        }
        if self.options.skip_forced || matches!(self.stage, Stage::Fallback { .. }) {
            return self.knowledge.forced_value(a, b).outcome();
        }
        None
    }

    /// Relation between `k` and `x` inside the main loop; always known there.
    fn relation(&self, a: usize, b: usize) -> PairOutcome {
        match self.knowledge.forced_value(a, b) {
            Forced::Unknown => unreachable!("pair ({a}, {b}) read before it was compared"),
            f => f.outcome().unwrap(),
        }
    }

    /// Runs every step that needs no new comparison and returns the next
    /// comparison to make, or `Done`.
    pub fn advance(&mut self) -> Step {
        loop {
            let Some((a, b)) = self.needed() else {
                return Step::Done;
            };
            match self.known(a, b) {
                Some(o) => self.consume(o),
                None => return Step::Query(a, b),
            }
        }
    }

    /// The comparison currently waiting for an answer.
    pub fn pending(&mut self) -> Option<(usize, usize)> {
        match self.advance() {
            Step::Query(a, b) => Some((a, b)),
            Step::Done => None,
        }
    }

    pub fn is_done(&mut self) -> bool {
        self.advance() == Step::Done
    }

    /// Records the oracle's answer for the pending pair `(a, b)`.
    pub fn answer(&mut self, outcome: PairOutcome) -> Result<()> {
        let Step::Query(a, b) = self.advance() else {
            return Err(Error::NoPendingQuery);
        };
        self.knowledge.observe(a, b, outcome)?;
        self.trace.push(TraceEntry { a, b, outcome });
        Ok(())
    }

    fn consume(&mut self, outcome: PairOutcome) {
        let stage = std::mem::replace(&mut self.stage, Stage::Done);
        self.stage = match stage {
            Stage::Main(ml) => self.main_step(ml, outcome),
            Stage::Bulk { pairs, idx } => {
                if idx + 1 < pairs.len() {
                    Stage::Bulk {
                        pairs,
                        idx: idx + 1,
                    }
                } else {
                    self.fallback_stage()
                }
            }
            Stage::Fallback { a, b } => {
                let (a, b) = if b + 1 < self.total {
                    (a, b + 1)
                } else {
                    (a + 1, a + 2)
                };
                if b < self.total {
                    Stage::Fallback { a, b }
                } else {
                    Stage::Done
                }
            }
            Stage::Done => Stage::Done,
        };
    }

    fn classify(&mut self, k: usize, lv: Level) -> Stage {
        self.level[k] = Some(lv);
        if k + 1 < self.n {
            Stage::Main(self.start_iteration(k + 1))
        } else {
            self.bulk_stage()
        }
    }

    /// `outcome` is the result of `(k, x_i)` or `(k, y_i)`.
    fn main_step(&mut self, mut ml: MainLoop, outcome: PairOutcome) -> Stage {
        let k = ml.k;
        let k_below = outcome == PairOutcome::Less;
        let k_above = outcome == PairOutcome::Greater;
        match ml.half {
            Half::X => {
                let x = ml.xs[ml.i];
                let s = ml.seen;
                let middle = (k_above && s.above)
                    || (k_below && s.below)
                    || (k_above && s.a_not_below)
                    || (k_below && s.c_not_above);
                if middle {
                    return self.classify(k, Level::B);
                }
                ml.seen.above |= k_below;
                ml.seen.below |= k_above;
                ml.seen.a_not_below |= self.level[x] == Some(Level::A) && !k_above;
                ml.seen.c_not_above |= self.level[x] == Some(Level::C) && !k_below;
                ml.half = Half::Y;
                Stage::Main(ml)
            }
            Half::Y => {
                if ml.i < ml.m && k_below {
                    return self.classify(k, Level::A);
                }
                if ml.i < ml.m && k_above {
                    return self.classify(k, Level::C);
                }
                ml.i += 1;
                ml.half = Half::X;
                if ml.i + 1 < self.n {
                    return Stage::Main(ml);
                }
                // k is now compared with the whole prefix
                let others = (0..self.n).filter(|&y| y != k);
                let maximal = others
                    .clone()
                    .all(|y| self.relation(k, y) != PairOutcome::Less);
                let minimal = others
                    .clone()
                    .all(|y| self.relation(k, y) != PairOutcome::Greater);
                // an isolated element ends up in A
                let lv = if minimal {
                    Level::A
                } else if maximal {
                    Level::C
                } else {
                    unreachable!("element {k} has elements above and below yet was not put in B")
                };
                self.classify(k, lv)
            }
        }
    }

    pub fn into_report(mut self) -> Result<LearnerReport> {
        if self.advance() != Step::Done {
            return Err(Error::Unfinished);
        }
        let poset = self
            .knowledge
            .determined_poset()
            .expect("a finished run determines the order");
        Ok(LearnerReport {
            poset,
            trace: self.trace,
            phases: self.phases,
        })
    }
}
