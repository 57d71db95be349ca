//! Simulation of the weighted zero forcing process.
//!
//! Trial `i` of an estimate draws from a ChaCha8 stream keyed by a hash of
//! the master seed and `i`, so serial and parallel runs agree bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BitIter, VertexSet, WeightedGraph};

pub const DEFAULT_ROUND_CAP: u64 = 1_000_000;
pub const DEFAULT_TRIALS: u64 = 100_000;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for trial `index` of a run with master seed `seed`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

/// Rounds until all vertices are blue, or `None` if the process is stuck or
/// exceeds `round_cap`.
fn run_trial(g: &WeightedGraph, b: &VertexSet, seed: u64, round_cap: u64) -> Option<u64> {
    let full = g.vertex_set().bits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blue = b.bits();
    let mut rounds = 0;
    let mut forcers = vec![0u64; g.n()];
    while blue != full {
        if rounds == round_cap {
            return None;
        }
        forcers.iter_mut().for_each(|f| *f = 0);
        let mut targets = 0u64;
        for u in BitIter(blue) {
            let white = g.neighbor_mask(u) & !blue;
            if white.count_ones() == 1 {
                forcers[white.trailing_zeros() as usize] |= 1 << u;
                targets |= white;
            }
        }
        if targets == 0 {
            return None;
        }
        let mut newly = 0u64;
        for v in BitIter(targets) {
            let mut hit = false;
            // one draw per forcer edge, even after a success
            for u in BitIter(forcers[v]) {
                let w = g.weight(u, v).expect("forcer is adjacent");
                hit |= rng.random::<f64>() < w;
            }
            if hit {
                newly |= 1 << v;
            }
        }
        blue |= newly;
        rounds += 1;
    }
    Some(rounds)
}

/// One trajectory from `b`; identical seeds give identical trajectories.
pub fn simulate_once(g: &WeightedGraph, b: &VertexSet, seed: u64, round_cap: u64) -> Result<u64> {
    run_trial(g, b, seed, round_cap).ok_or(Error::RoundCap { trial: 0, cap: round_cap })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    /// Standard error of the mean; 0 when only one trial was run.
    pub stderr: f64,
    pub trials: u64,
    /// `cdf[r]` is the fraction of trials finished within `r` rounds; it
    /// reaches 1 at the longest observed trial.
    pub cdf: Vec<f64>,
    pub cap_hits: u64,
    pub degenerate: bool,
}

impl McEstimate {
    pub fn cdf_at(&self, r: usize) -> f64 {
        self.cdf.get(r).copied().unwrap_or(1.0)
    }

    /// Least round by which at least an `alpha` fraction of trials finished.
    pub fn empirical_cptw(&self, alpha: f64) -> u64 {
        self.cdf.iter().position(|&c| c >= alpha).unwrap_or(self.cdf.len() - 1) as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McOptions {
    pub round_cap: u64,
    pub parallel: bool,
}

impl Default for McOptions {
    fn default() -> Self {
        McOptions { round_cap: DEFAULT_ROUND_CAP, parallel: true }
    }
}

pub fn estimate(g: &WeightedGraph, b: &VertexSet, trials: u64, seed: u64, opts: &McOptions) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::Config("at least one trial is required".into()));
    }
    let one = |i: u64| run_trial(g, b, trial_seed(seed, i), opts.round_cap);
    let rounds: Vec<Option<u64>> =
        if opts.parallel { (0..trials).into_par_iter().map(one).collect() } else { (0..trials).map(one).collect() };
    if let Some(trial) = rounds.iter().position(Option::is_none) {
        return Err(Error::RoundCap { trial: trial as u64, cap: opts.round_cap });
    }
    let rounds: Vec<u64> = rounds.into_iter().flatten().collect();

    let total: u64 = rounds.iter().sum();
    let mean = total as f64 / trials as f64;
    let stderr = if trials > 1 {
        let ss: f64 = rounds.iter().map(|&r| (r as f64 - mean).powi(2)).sum();
        (ss / (trials - 1) as f64 / trials as f64).sqrt()
    } else {
        0.0
    };
    let longest = *rounds.iter().max().expect("trials >= 1") as usize;
    let mut counts = vec![0u64; longest + 1];
    for &r in &rounds {
        counts[r as usize] += 1;
    }
    let mut done = 0u64;
    let cdf = counts
        .iter()
        .map(|&c| {
            done += c;
            done as f64 / trials as f64
        })
        .collect();
    Ok(McEstimate { mean, stderr, trials, cdf, cap_hits: 0, degenerate: trials == 1 })
}
