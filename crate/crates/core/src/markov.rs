//! Exact propagation times through the absorbing Markov chain on blue sets.
//!
//! States are the blue sets reachable from (or, in full mode, all supersets
//! of) an initial set `B`, listed in order of nondecreasing cardinality and,
//! within one cardinality, ascending characteristic mask. Blue sets only
//! grow, so the one-round transition matrix is upper triangular and the
//! all-blue state is absorbing.
//!
//! Within a round every permitted force `u -> v` is an independent Bernoulli
//! trial with the weight of `uv`; `v` turns blue if any of its forcers
//! succeeds, and distinct forceable vertices resolve independently.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{check_alpha, Error, Result};
use crate::graph::{BitIter, VertexSet, WeightedGraph};
use crate::report::{Method, PropagationReport, PropagationValue, Quantity};
use crate::zf::{forceable_mask, forcing_candidates, minimum_zero_forcing_sets, DEFAULT_SUBSET_BUDGET};

pub const DEFAULT_STATE_CAP: u64 = 1 << 20;
pub const DEFAULT_ROUND_CAP: u64 = 1_000_000;
/// Absolute tolerance used when collecting all sets tied for the best eptw.
pub const EPTW_TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StateMode {
    /// Every superset of the initial set.
    Full,
    /// Only the states reachable with positive probability, plus the final state.
    #[default]
    Reachable,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkovOptions {
    pub mode: StateMode,
    pub state_cap: u64,
    pub round_cap: u64,
    pub subset_budget: u64,
}

impl Default for MarkovOptions {
    fn default() -> Self {
        MarkovOptions {
            mode: StateMode::Reachable,
            state_cap: DEFAULT_STATE_CAP,
            round_cap: DEFAULT_ROUND_CAP,
            subset_budget: DEFAULT_SUBSET_BUDGET,
        }
    }
}

/// Probability that forceable `v` turns blue this round.
pub fn force_probability(g: &WeightedGraph, blue: &VertexSet, v: usize) -> Result<f64> {
    let candidates = forcing_candidates(g, blue);
    let forcers = candidates.forcers(v).ok_or(Error::NotForceable(v))?;
    Ok(1.0 - stay_white_probability(g, forcers.bits(), v))
}

fn stay_white_probability(g: &WeightedGraph, forcers: u64, v: usize) -> f64 {
    BitIter(forcers).map(|u| 1.0 - g.weight(u, v).expect("forcer is adjacent")).product()
}

/// One-round probability of moving from blue set `from` to blue set `to`.
pub fn transition_probability(g: &WeightedGraph, from: &VertexSet, to: &VertexSet) -> f64 {
    if !from.is_subset(to) {
        return 0.0;
    }
    let candidates = forcing_candidates(g, from);
    let newly = to.difference(from).bits();
    if newly & !candidates.targets_mask() != 0 {
        return 0.0;
    }
    candidates
        .iter()
        .map(|(v, forcers)| {
            let stay = stay_white_probability(g, forcers.bits(), *v);
            if newly >> v & 1 == 1 {
                1.0 - stay
            } else {
                stay
            }
        })
        .product()
}

/// Forceable vertices of `blue` with their stay-white probabilities.
fn forceable_with_stay(g: &WeightedGraph, blue: u64) -> Vec<(usize, f64)> {
    let mut forcers = [0u64; 64];
    let mut targets = 0u64;
    for u in BitIter(blue) {
        let white = g.neighbor_mask(u) & !blue;
        if white.count_ones() == 1 {
            let v = white.trailing_zeros() as usize;
            forcers[v] |= 1 << u;
            targets |= white;
        }
    }
    BitIter(targets).map(|v| (v, stay_white_probability(g, forcers[v], v))).collect()
}

/// Every outcome of one round from `blue`: `(newly blue mask, probability)`.
fn round_outcomes(g: &WeightedGraph, blue: u64) -> Vec<(u64, f64)> {
    let mut outcomes = vec![(0u64, 1.0)];
    for (v, stay) in forceable_with_stay(g, blue) {
        let go = 1.0 - stay;
        outcomes = outcomes.into_iter().flat_map(|(m, p)| [(m, p * stay), (m | 1 << v, p * go)]).collect();
    }
    outcomes
}

/// Iterates all submasks of `mask`, including 0 and `mask` itself.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// A properly ordered list of blue-set states for an initial set.
#[derive(Debug, Clone)]
pub struct StateList {
    states: Vec<VertexSet>,
    index: HashMap<u64, usize>,
    mode: StateMode,
}

impl StateList {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[VertexSet] {
        &self.states
    }

    pub fn initial(&self) -> &VertexSet {
        &self.states[0]
    }

    pub fn final_state(&self) -> &VertexSet {
        self.states.last().expect("state list is nonempty")
    }

    pub fn index_of(&self, s: &VertexSet) -> Option<usize> {
        self.index.get(&s.bits()).copied()
    }

    pub fn mode(&self) -> StateMode {
        self.mode
    }
}

pub fn build_state_list(g: &WeightedGraph, b: &VertexSet, mode: StateMode, cap: u64) -> Result<StateList> {
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = g.n();
    let full = g.vertex_set().bits();
    let mut masks: Vec<u64> = match mode {
        StateMode::Full => {
            let white = full & !b.bits();
            let needed = 1u64.checked_shl(white.count_ones()).unwrap_or(u64::MAX);
            if needed > cap {
                return Err(Error::StateLimit { needed, cap });
            }
            submasks(white).map(|s| b.bits() | s).collect()
        }
        StateMode::Reachable => {
            let mut seen = HashSet::from([b.bits()]);
            let mut stack = vec![b.bits()];
            while let Some(cur) = stack.pop() {
                for s in submasks(forceable_mask(g, cur)) {
                    let next = cur | s;
                    if seen.insert(next) {
                        if seen.len() as u64 > cap {
                            return Err(Error::StateLimit { needed: seen.len() as u64, cap });
                        }
                        stack.push(next);
                    }
                }
            }
            // the final state is listed even when unreachable
            if seen.insert(full) && seen.len() as u64 > cap {
                return Err(Error::StateLimit { needed: seen.len() as u64, cap });
            }
            seen.into_iter().collect()
        }
    };
    masks.sort_unstable_by_key(|&m| (m.count_ones(), m));
    let states: Vec<VertexSet> =
        masks.iter().map(|&m| VertexSet::from_bits(n, m).expect("state within vertex range")).collect();
    let index = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    Ok(StateList { states, index, mode })
}

/// Row-sparse one-round transition matrix over a [`StateList`].
///
/// Each row stores its nonzero entries sorted by column; every column index
/// is at least the row index.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    rows: Vec<Vec<(usize, f64)>>,
    states: StateList,
}

impl TransitionMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn state_list(&self) -> &StateList {
        &self.states
    }

    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let row = &self.rows[i];
        row.binary_search_by_key(&j, |e| e.0).map(|k| row[k].1).unwrap_or(0.0)
    }

    pub fn diagonal(&self, i: usize) -> f64 {
        self.entry(i, i)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let s = self.size();
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![0.0; s];
                for &(j, p) in row {
                    dense[j] = p;
                }
                dense
            })
            .collect()
    }

    /// One step of row-vector propagation: `dist * M`.
    fn step(&self, dist: &[f64]) -> Vec<f64> {
        let mut next = vec![0.0; dist.len()];
        for (i, &mass) in dist.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            for &(j, p) in &self.rows[i] {
                next[j] += mass * p;
            }
        }
        next
    }

    fn initial_distribution(&self) -> Vec<f64> {
        let mut dist = vec![0.0; self.size()];
        dist[0] = 1.0;
        dist
    }
}

pub fn build_transition_matrix(g: &WeightedGraph, sl: &StateList) -> TransitionMatrix {
    let rows = sl
        .states
        .iter()
        .map(|state| {
            let mut row: Vec<(usize, f64)> = round_outcomes(g, state.bits())
                .into_iter()
                .map(|(newly, p)| {
                    let col = sl.index[&(state.bits() | newly)];
                    (col, p)
                })
                .collect();
            row.sort_unstable_by_key(|e| e.0);
            row
        })
        .collect();
    TransitionMatrix { rows, states: sl.clone() }
}

/// Expected number of rounds to absorption from the initial state, from
/// `((M - 1 e_s^T - I)^{-1})_{1s} + 1`.
///
/// `A = M - 1 e_s^T - I` is upper triangular, so only the last column of
/// its inverse is needed: one back-substitution of `A x = e_s`.
pub fn eptw_solve(m: &TransitionMatrix) -> Result<f64> {
    let s = m.size();
    if s == 1 {
        return Ok(0.0);
    }
    let last = s - 1;
    let mut x = vec![0.0; s];
    // A[last][last] = 1 - 1 - 1
    x[last] = -1.0;
    for i in (0..last).rev() {
        let diag = m.diagonal(i);
        if diag >= 1.0 {
            return Err(Error::Singular { state: i });
        }
        let mut acc = 0.0;
        for &(j, p) in m.row(i) {
            if j > i {
                let a = if j == last { p - 1.0 } else { p };
                acc += a * x[j];
            }
        }
        if m.row(i).last().map(|e| e.0) != Some(last) {
            acc -= x[last];
        }
        x[i] = -acc / (diag - 1.0);
    }
    Ok(x[0] + 1.0)
}

/// Partial sums of `sum_r r ((M^r)_{1s} - (M^{r-1})_{1s})`, stopping once the
/// unabsorbed mass falls below `tol`.
pub fn eptw_series(m: &TransitionMatrix, tol: f64, max_rounds: u64) -> Result<f64> {
    let s = m.size();
    if s == 1 {
        return Ok(0.0);
    }
    let last = s - 1;
    let mut dist = m.initial_distribution();
    let mut total = 0.0;
    for r in 1..=max_rounds {
        let absorbed: f64 = dist[..last]
            .iter()
            .enumerate()
            .filter(|(_, &mass)| mass != 0.0)
            .map(|(i, &mass)| mass * m.entry(i, last))
            .sum();
        total += r as f64 * absorbed;
        dist = m.step(&dist);
        let unabsorbed: f64 = dist[..last].iter().sum();
        if unabsorbed < tol {
            return Ok(total);
        }
    }
    Err(Error::NoConverge { rounds: max_rounds })
}

/// `(M^r)_{1s}` for `r = 0..=r_max`.
pub fn completion_cdf(m: &TransitionMatrix, r_max: usize) -> Vec<f64> {
    let last = m.size() - 1;
    let mut dist = m.initial_distribution();
    let mut cdf = Vec::with_capacity(r_max + 1);
    cdf.push(dist[last]);
    for _ in 0..r_max {
        dist = m.step(&dist);
        cdf.push(dist[last]);
    }
    cdf
}

/// Least `r` with `(M^r)_{1s} >= alpha`.
pub fn cptw_from_matrix(m: &TransitionMatrix, alpha: f64, round_cap: u64) -> Result<u64> {
    check_alpha(alpha)?;
    let last = m.size() - 1;
    if last == 0 {
        return Ok(0);
    }
    let mut dist = m.initial_distribution();
    for r in 1..=round_cap {
        dist = m.step(&dist);
        if dist[last] >= alpha {
            return Ok(r);
        }
        // mass left only in stuck states can never be absorbed
        let live = (0..last).any(|i| dist[i] != 0.0 && m.diagonal(i) < 1.0);
        if !live {
            return Err(Error::NoConverge { rounds: r });
        }
    }
    Err(Error::NoConverge { rounds: round_cap })
}

pub fn transition_matrix_for(g: &WeightedGraph, b: &VertexSet, opts: &MarkovOptions) -> Result<TransitionMatrix> {
    let sl = build_state_list(g, b, opts.mode, opts.state_cap)?;
    Ok(build_transition_matrix(g, &sl))
}

/// Expected propagation time of one initial set.
pub fn eptw_set(g: &WeightedGraph, b: &VertexSet, opts: &MarkovOptions) -> Result<f64> {
    eptw_solve(&transition_matrix_for(g, b, opts)?)
}

/// Confidence propagation time of one initial set.
pub fn cptw_set(g: &WeightedGraph, b: &VertexSet, alpha: f64, opts: &MarkovOptions) -> Result<u64> {
    check_alpha(alpha)?;
    cptw_from_matrix(&transition_matrix_for(g, b, opts)?, alpha, opts.round_cap)
}

fn minimum_sets(g: &WeightedGraph, opts: &MarkovOptions) -> Result<Vec<VertexSet>> {
    Ok(minimum_zero_forcing_sets(g, opts.subset_budget)?.sets)
}

/// Minimum expected propagation time over all minimum zero forcing sets.
pub fn eptw_graph(g: &WeightedGraph, opts: &MarkovOptions) -> Result<PropagationReport> {
    let sets = minimum_sets(g, opts)?;
    let values = sets.par_iter().map(|b| eptw_set(g, b, opts)).collect::<Result<Vec<f64>>>()?;
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    let best_sets = sets.iter().zip(&values).filter(|(_, &v)| v - best <= EPTW_TIE_TOL).map(|(b, _)| *b).collect();
    Ok(PropagationReport {
        quantity: Quantity::Eptw,
        value: PropagationValue::Expected(best),
        best_sets,
        method: Method::MarkovSolve,
        alpha: None,
    })
}

/// Minimum confidence propagation time over all minimum zero forcing sets.
pub fn cptw_graph(g: &WeightedGraph, alpha: f64, opts: &MarkovOptions) -> Result<PropagationReport> {
    check_alpha(alpha)?;
    let sets = minimum_sets(g, opts)?;
    let values = sets.par_iter().map(|b| cptw_set(g, b, alpha, opts)).collect::<Result<Vec<u64>>>()?;
    let best = *values.iter().min().expect("at least one minimum zero forcing set");
    let best_sets = sets.iter().zip(&values).filter(|(_, &v)| v == best).map(|(b, _)| *b).collect();
    Ok(PropagationReport {
        quantity: Quantity::Cptw,
        value: PropagationValue::Rounds(best),
        best_sets,
        method: Method::MarkovSolve,
        alpha: Some(alpha),
    })
}
