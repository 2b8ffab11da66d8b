//! Batch commands: enumeration, `|Q|` statistics, the lower-bound table,
//! exhaustive learner runs and optimal strategies.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use num_rational::Ratio;
use posort_core::counts::{info_lower_bound, CountsTable};
use posort_core::enumerate::{all_posets, enumerate_posets};
use posort_core::learner::{LearnerKind, PosetOracle, MAX_EXHAUSTIVE_N};
use posort_core::poset::unordered;
use posort_core::strategy::{optimal_cost, round3, StrategyTree};
use posort_core::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

pub const COUNTS_ENV: &str = "POSORT_COUNTS";
pub const MAX_QSTATS_N: usize = 6;
pub const TABLE1_ROWS: [usize; 7] = [4, 8, 12, 13, 14, 15, 16];

/// The bundled poset counts, or the file named by `POSORT_COUNTS`.
pub fn counts_table() -> Result<CountsTable> {
    match std::env::var_os(COUNTS_ENV) {
        Some(path) => CountsTable::load(&PathBuf::from(path)),
        None => Ok(CountsTable::bundled()),
    }
}

fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Counts posets on `n` elements, writing each as a JSON line to `dump`.
pub fn enumerate(n: usize, mut dump: Option<&mut dyn Write>) -> Result<u64> {
    let mut count = 0;
    for p in enumerate_posets(n)? {
        if let Some(out) = dump.as_deref_mut() {
            serde_json::to_writer(&mut *out, &p.to_json())?;
            out.write_all(b"\n")?;
        }
        count += 1;
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QStats {
    pub n: usize,
    pub posets: u64,
    /// exact mean as `[num, den]`
    pub mean: [u64; 2],
    pub histogram: BTreeMap<usize, u64>,
}

impl QStats {
    pub fn mean(&self) -> Ratio<u64> {
        Ratio::new(self.mean[0], self.mean[1])
    }
}

impl fmt::Display for QStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.mean();
        writeln!(f, "n = {}, {} posets", self.n, self.posets)?;
        writeln!(f, "mean |Q| = {m} = {:.6}", ratio_f64(m))?;
        writeln!(f, "|Q|  posets")?;
        for (q, c) in &self.histogram {
            writeln!(f, "{q:>3}  {c}")?;
        }
        Ok(())
    }
}

pub fn qstats(n: usize) -> Result<QStats> {
    if n > MAX_QSTATS_N {
        return Err(Error::Guard {
            what: "qstats",
            n,
            max: MAX_QSTATS_N,
        });
    }
    let mut histogram = BTreeMap::new();
    let (mut total, mut posets) = (0u64, 0u64);
    for p in enumerate_posets(n)? {
        let q = p.q_set().len();
        *histogram.entry(q).or_insert(0) += 1;
        total += q as u64;
        posets += 1;
    }
    let mean = Ratio::new(total, posets);
    Ok(QStats {
        n,
        posets,
        mean: [*mean.numer(), *mean.denom()],
        histogram,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Table1Row {
    pub n: usize,
    pub quarter_square: f64,
    pub log3_count: f64,
}

pub struct Table1(pub Vec<Table1Row>);

impl fmt::Display for Table1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>4} {:>8} {:>12}", "n", "n^2/4", "log3|P(n)|")?;
        for r in &self.0 {
            writeln!(
                f,
                "{:>4} {:>8.2} {:>12.2}",
                r.n, r.quarter_square, r.log3_count
            )?;
        }
        Ok(())
    }
}

pub fn table1(counts: &CountsTable) -> Result<Table1> {
    TABLE1_ROWS
        .iter()
        .map(|&n| {
            Ok(Table1Row {
                n,
                quarter_square: (n * n) as f64 / 4.0,
                log3_count: info_lower_bound(n, counts)?,
            })
        })
        .collect::<Result<_>>()
        .map(Table1)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExhaustiveReport {
    pub n: usize,
    pub learner: String,
    pub posets: u64,
    pub expected: [u64; 2],
    pub min: usize,
    pub max: usize,
    /// runs comparing fewer than `|Q(P)|` pairs or missing a pair of `Q(P)`
    pub lemma1_violations: u64,
    /// runs whose output differs from the truth
    pub failures: u64,
}

impl ExhaustiveReport {
    pub fn expected(&self) -> Ratio<u64> {
        Ratio::new(self.expected[0], self.expected[1])
    }

    pub fn ok(&self) -> bool {
        self.lemma1_violations == 0 && self.failures == 0
    }
}

impl fmt::Display for ExhaustiveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.expected();
        writeln!(
            f,
            "learner {} on all {} posets with n = {}",
            self.learner, self.posets, self.n
        )?;
        writeln!(f, "expected comparisons = {e} = {:.6}", ratio_f64(e))?;
        writeln!(f, "min {}  max {}", self.min, self.max)?;
        writeln!(f, "lemma 1 violations {}", self.lemma1_violations)?;
        writeln!(f, "wrong results {}", self.failures)
    }
}

pub fn exhaustive(n: usize, kind: LearnerKind) -> Result<ExhaustiveReport> {
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::Guard {
            what: "exhaustive",
            n,
            max: MAX_EXHAUSTIVE_N,
        });
    }
    let posets = all_posets(n)?;
    let runs = posets
        .par_iter()
        .map(|p| {
            let report = kind.run(&mut PosetOracle::new(p))?;
            let compared: Vec<_> = report.trace.iter().map(|e| unordered(e.a, e.b)).collect();
            let q = p.q_set();
            let covers_q = q.iter().all(|pair| compared.contains(&pair));
            let violation = report.compared() < q.len() || !covers_q;
            Ok((report.compared(), violation, report.poset != *p))
        })
        .collect::<Result<Vec<_>>>()?;
    let total: u64 = runs.iter().map(|r| r.0 as u64).sum();
    let expected = Ratio::new(total, runs.len() as u64);
    Ok(ExhaustiveReport {
        n,
        learner: learner_name(kind).to_string(),
        posets: runs.len() as u64,
        expected: [*expected.numer(), *expected.denom()],
        min: runs.iter().map(|r| r.0).min().unwrap_or(0),
        max: runs.iter().map(|r| r.0).max().unwrap_or(0),
        lemma1_violations: runs.iter().filter(|r| r.1).count() as u64,
        failures: runs.iter().filter(|r| r.2).count() as u64,
    })
}

pub fn learner_name(kind: LearnerKind) -> &'static str {
    match kind {
        LearnerKind::Phi3 => "phi3",
        LearnerKind::Phi3Skip => "phi3-skip",
        LearnerKind::Naive => "naive",
    }
}

pub struct OptimalReport {
    pub n: usize,
    pub cost: Ratio<u64>,
    pub tree: StrategyTree,
}

impl fmt::Display for OptimalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n = {}, optimal expected comparisons = {}",
            self.n, self.cost
        )?;
        writeln!(f, "  = {:.9}", ratio_f64(self.cost))?;
        writeln!(f, "  rounded to 3 decimals: {:.3}", round3(self.cost))?;
        writeln!(
            f,
            "  strategy states visited: {}",
            self.tree.reachable().len()
        )
    }
}

pub fn optimal(n: usize) -> Result<OptimalReport> {
    let (cost, tree) = optimal_cost(n)?;
    Ok(OptimalReport { n, cost, tree })
}
