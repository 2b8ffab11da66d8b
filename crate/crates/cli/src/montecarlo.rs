//! Monte Carlo runs of the three-level learner on random three-level posets.
//!
//! For a ground set of size `N` each sample draws a partition from `L(N)`, a
//! uniform member of `U_ABC` and a uniform relabeling, then counts the
//! comparisons the learner makes. All randomness comes from ChaCha8 seeded
//! with the 64-bit seed, on stream `N`, so runs are reproducible everywhere.

use std::fmt;

use posort_core::learner::{phi3, PosetOracle};
use posort_core::levels::{random_partition, sample_u_with};
use posort_core::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const MAX_MC_N: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub samples: usize,
    pub counts: Vec<usize>,
    pub mean: f64,
    /// `mean / (N^2 / 4)`
    pub ratio: f64,
    pub seed: u64,
    /// samples the learner got wrong
    pub failures: usize,
}

impl fmt::Display for McReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:>5} {:>8} {:>12.3} {:>8.4}",
            self.n, self.samples, self.mean, self.ratio
        )
    }
}

fn one_sample(n: usize, seed: u64) -> Result<(usize, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let part = random_partition(n, &mut rng)?;
    let base = sample_u_with(&part, &mut rng);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let truth = base.relabel(&perm);
    let report = phi3(&mut PosetOracle::new(&truth))?;
    Ok((report.compared(), report.poset == truth))
}

pub fn montecarlo(n: usize, samples: usize, seed: u64) -> Result<McReport> {
    if !n.is_multiple_of(4) || n == 0 {
        return Err(Error::NotMultipleOfFour(n));
    }
    if n > MAX_MC_N {
        return Err(Error::Guard {
            what: "montecarlo",
            n,
            max: MAX_MC_N,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    let seeds: Vec<u64> = (0..samples).map(|_| rng.random()).collect();
    let runs = seeds
        .par_iter()
        .map(|&s| one_sample(n, s))
        .collect::<Result<Vec<_>>>()?;
    let counts: Vec<usize> = runs.iter().map(|r| r.0).collect();
    let mean = counts.iter().sum::<usize>() as f64 / samples.max(1) as f64;
    Ok(McReport {
        n,
        samples,
        mean,
        ratio: mean / ((n * n) as f64 / 4.0),
        counts,
        seed,
        failures: runs.iter().filter(|r| !r.1).count(),
    })
}
