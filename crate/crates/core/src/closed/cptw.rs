//! Closed-form confidence propagation times.
//!
//! Every "least m" search is a linear scan from the smallest feasible round
//! count up to [`CPTW_ROUND_CAP`].

use crate::error::{check_alpha, Error, Result};
use crate::graph::WeightedGraph;

use super::eptw::complete_stay_probabilities;
use super::family::is_complete;
use super::{check_weights, Best};

pub const CPTW_ROUND_CAP: u64 = 1_000_000;
/// Below this gap the star formula's denominator is treated as zero.
pub const STAR_DEGENERATE_GAP: f64 = 1e-9;
/// Path weights closer than this are not treated as distinct.
pub const DISTINCT_GAP: f64 = 1e-6;

fn scan(start: u64, mut reached: impl FnMut(u64) -> bool) -> Result<u64> {
    (start..=CPTW_ROUND_CAP).find(|&m| reached(m)).ok_or(Error::NoConverge { rounds: CPTW_ROUND_CAP })
}

/// `P(Binomial(trials, p) >= k)`.
///
/// Sums the `k` lower terms by the ratio recurrence and returns the
/// complement. Terms are carried as plain products while `(1-p)^trials` is
/// comfortably representable and in log space otherwise.
pub fn binomial_upper_tail(trials: u64, k: u64, p: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if k > trials {
        return 0.0;
    }
    let log_q_n = trials as f64 * (-p).ln_1p();
    let odds = p / (1.0 - p);
    let mut lower = 0.0;
    if log_q_n > -600.0 {
        let mut term = (1.0 - p).powi(trials as i32);
        for s in 0..k {
            lower += term;
            term = term * (trials - s) as f64 / (s + 1) as f64 * odds;
        }
    } else {
        let log_odds = odds.ln();
        let mut log_term = log_q_n;
        for s in 0..k {
            lower += log_term.exp();
            log_term += ((trials - s) as f64).ln() - ((s + 1) as f64).ln() + log_odds;
        }
    }
    (1.0 - lower).max(0.0)
}

/// Least `m >= 1` with `1 - stay^m >= alpha`, starting from
/// `ceil(log_stay(1 - alpha))` and correcting for rounding either way.
fn geometric_cptw(stay: f64, alpha: f64) -> Result<u64> {
    let meets = |m: u64| 1.0 - stay.powi(m as i32) >= alpha;
    let guess = ((1.0 - alpha).ln() / stay.ln()).ceil();
    let mut m = if guess.is_finite() { (guess as u64).clamp(1, CPTW_ROUND_CAP) } else { 1 };
    while m > 1 && meets(m - 1) {
        m -= 1;
    }
    while !meets(m) {
        m += 1;
        if m > CPTW_ROUND_CAP {
            return Err(Error::NoConverge { rounds: CPTW_ROUND_CAP });
        }
    }
    Ok(m)
}

/// `ceil(log_{P0}(1 - alpha))` for a complete graph, with `P0` the smallest
/// stay-white probability. Choices are the vertices left white by an
/// optimal set.
pub fn cptw_complete(g: &WeightedGraph, alpha: f64) -> Result<Best<u64>> {
    check_alpha(alpha)?;
    if !is_complete(g) {
        return Err(Error::NotFamily("complete graph"));
    }
    let stay = complete_stay_probabilities(g);
    let p0 = stay.iter().copied().fold(f64::INFINITY, f64::min);
    let m = geometric_cptw(p0, alpha)?;
    let choices = (0..stay.len()).filter(|&i| stay[i] == p0).collect();
    Ok(Best { value: m, choices })
}

/// Confidence time of a complete graph when vertex `white` starts white.
pub fn cptw_complete_for_vertex(g: &WeightedGraph, white: usize, alpha: f64) -> Result<u64> {
    check_alpha(alpha)?;
    if !is_complete(g) {
        return Err(Error::NotFamily("complete graph"));
    }
    let stay = complete_stay_probabilities(g);
    let p = *stay.get(white).ok_or(Error::VertexRange { vertex: white as i64, n: g.n() })?;
    geometric_cptw(p, alpha)
}

/// Completion probability by round `m` for a star whose white leaf has
/// weight `p_white`, where `p_stay` is the probability that the center
/// stays white for a round.
pub fn star_cdf(p_white: f64, p_stay: f64, m: u64) -> f64 {
    let q = 1.0 - p_white;
    let go = 1.0 - p_stay;
    if (p_stay - q).abs() < STAR_DEGENERATE_GAP {
        // sum_{s=2}^{m} sum_{j=0}^{s-2} P^j q^{s-2-j}
        let mut inner = 0.0;
        let mut p_pow = 1.0;
        let mut total = 0.0;
        for _ in 2..=m {
            inner = q * inner + p_pow;
            p_pow *= p_stay;
            total += inner;
        }
        p_white * go * total
    } else {
        let mi = m as i32;
        p_white * go * ((1.0 - p_stay.powi(mi)) / go - (1.0 - q.powi(mi)) / p_white) / (p_stay - q)
    }
}

fn check_star(weights: &[f64]) -> Result<()> {
    if weights.len() < 2 {
        return Err(Error::Arity(format!("a star needs at least 2 leaves, got {}", weights.len())));
    }
    check_weights(weights)
}

/// Star confidence time when leaf `white` starts white.
pub fn cptw_star_for_leaf(weights: &[f64], white: usize, alpha: f64) -> Result<u64> {
    check_alpha(alpha)?;
    check_star(weights)?;
    let p_white = *weights.get(white).ok_or(Error::VertexRange { vertex: white as i64 + 1, n: weights.len() + 1 })?;
    let p_stay: f64 = weights.iter().enumerate().filter(|&(j, _)| j != white).map(|(_, w)| 1.0 - w).product();
    scan(2, |m| star_cdf(p_white, p_stay, m) >= alpha)
}

/// Star confidence time with the maximum-weight leaf left white.
/// Leaf weights may be given in any order. Choices index every leaf of
/// maximum weight.
pub fn cptw_star(weights: &[f64], alpha: f64) -> Result<Best<u64>> {
    check_alpha(alpha)?;
    check_star(weights)?;
    let p_n = weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let choices: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] == p_n).collect();
    let m = cptw_star_for_leaf(weights, choices[0], alpha)?;
    Ok(Best { value: m, choices })
}

/// Equal-weight path on `n` vertices: least `m` with `P(Bin(m, p) >= n-1) >= alpha`.
pub fn cptw_path_equal(n: usize, p: f64, alpha: f64) -> Result<u64> {
    check_alpha(alpha)?;
    if n < 2 {
        return Err(Error::Arity(format!("path needs at least 2 vertices, got {n}")));
    }
    check_weights(&[p])?;
    let need = n as u64 - 1;
    scan(need, |m| binomial_upper_tail(m, need, p) >= alpha)
}

/// Equal-weight cycle on `n` vertices: least `m` with
/// `P(Bin(2m, p) >= n-2) >= alpha`. Two chain heads give two Bernoulli
/// trials per round, so the tail runs up to `2m`.
pub fn cptw_cycle_equal(n: usize, p: f64, alpha: f64) -> Result<u64> {
    check_alpha(alpha)?;
    if n < 3 {
        return Err(Error::Arity(format!("cycle needs at least 3 vertices, got {n}")));
    }
    check_weights(&[p])?;
    let need = n as u64 - 2;
    scan(need.div_ceil(2), |m| binomial_upper_tail(2 * m, need, p) >= alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    /// The endpoint incident to the first weight.
    Start,
    /// The endpoint incident to the last weight.
    End,
}

fn distinct_path_weights(weights: &[f64], endpoint: Endpoint) -> Result<Vec<f64>> {
    if weights.is_empty() {
        return Err(Error::Arity("path needs at least one edge".into()));
    }
    check_weights(weights)?;
    for (i, &a) in weights.iter().enumerate() {
        for &b in &weights[i + 1..] {
            if (a - b).abs() <= DISTINCT_GAP {
                return Err(Error::NotDistinct(a, b));
            }
        }
    }
    let mut w = weights.to_vec();
    if endpoint == Endpoint::End {
        w.reverse();
    }
    Ok(w)
}

/// Probability that a path with pairwise distinct weights `w_1..w_n` is all
/// blue after `t` rounds, starting from one endpoint:
///
/// `prod_k w_k * sum_i [(1-w_i)^{n-1} - (1-w_i)^t] / (w_i W_i)`, `W_i = prod_{j != i}(w_j - w_i)`.
pub fn path_distinct_cdf(weights: &[f64], endpoint: Endpoint, t: u64) -> Result<f64> {
    let w = distinct_path_weights(weights, endpoint)?;
    Ok(distinct_cdf(&w, t))
}

fn distinct_cdf(w: &[f64], t: u64) -> f64 {
    let n = w.len();
    if (t as usize) < n {
        return 0.0;
    }
    let scale: f64 = w.iter().product();
    let sum: f64 = (0..n)
        .map(|i| {
            let wi = w[i];
            let denom: f64 = (0..n).filter(|&j| j != i).map(|j| w[j] - wi).product();
            let q = 1.0 - wi;
            (q.powi(n as i32 - 1) - q.powi(t as i32)) / (wi * denom)
        })
        .sum();
    scale * sum
}

/// Least `t` at which the distinct-weight path CDF reaches `alpha`.
pub fn cptw_path_distinct(weights: &[f64], alpha: f64, endpoint: Endpoint) -> Result<u64> {
    check_alpha(alpha)?;
    let w = distinct_path_weights(weights, endpoint)?;
    scan(w.len() as u64, |t| distinct_cdf(&w, t) >= alpha)
}
