//! Independent oracles shared by the integration tests. Nothing here calls
//! into the Markov, zero forcing or closed-form modules of the crate.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wzf::WeightedGraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn weight(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(0.05..0.95)
}

pub fn weights(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    (0..k).map(|_| weight(rng)).collect()
}

/// `k` weights in `[0.05, 0.95]` with pairwise gaps of at least `gap`.
pub fn distinct_weights(rng: &mut ChaCha8Rng, k: usize, gap: f64) -> Vec<f64> {
    loop {
        let w = weights(rng, k);
        let ok = (0..k).all(|i| (i + 1..k).all(|j| (w[i] - w[j]).abs() >= gap));
        if ok {
            return w;
        }
    }
}

/// Erdos-Renyi style graph on `n` vertices with edge probability 1/2.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(0.5) {
                edges.push((u, v, weight(rng)));
            }
        }
    }
    WeightedGraph::new(n, edges).unwrap()
}

fn adjacency(g: &WeightedGraph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|u| (0..g.n()).filter(|&v| g.has_edge(u, v)).collect()).collect()
}

/// Closure under the unweighted color change rule, one force at a time.
pub fn closure(g: &WeightedGraph, blue: u64) -> u64 {
    let adj = adjacency(g);
    let mut blue = blue;
    loop {
        let mut changed = false;
        for (u, nbrs) in adj.iter().enumerate() {
            if blue >> u & 1 == 0 {
                continue;
            }
            let white: Vec<usize> = nbrs.iter().copied().filter(|&v| blue >> v & 1 == 0).collect();
            if white.len() == 1 {
                blue |= 1 << white[0];
                changed = true;
            }
        }
        if !changed {
            return blue;
        }
    }
}

pub fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn forces_everything(g: &WeightedGraph, blue: u64) -> bool {
    closure(g, blue) == full(g.n())
}

/// Minimum zero forcing sets by checking every subset.
pub fn min_zfs(g: &WeightedGraph) -> (usize, Vec<u64>) {
    let n = g.n();
    let mut best = usize::MAX;
    let mut sets = Vec::new();
    for mask in 0..=full(n) {
        let size = mask.count_ones() as usize;
        if size > best || !forces_everything(g, mask) {
            continue;
        }
        if size < best {
            best = size;
            sets.clear();
        }
        sets.push(mask);
    }
    sets.sort_by_key(|&m| {
        let mut v: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
        v.resize(n, usize::MAX);
        v
    });
    (best, sets)
}

/// `P(all blue by round r)` for `r = 0..=r_max`, by pushing the exact
/// distribution over blue sets forward one round at a time.
pub fn completion_probabilities(g: &WeightedGraph, blue: u64, r_max: usize) -> Vec<f64> {
    let n = g.n();
    let adj = adjacency(g);
    let all = full(n);
    let mut dist: HashMap<u64, f64> = HashMap::from([(blue, 1.0)]);
    let mut out = vec![dist.get(&all).copied().unwrap_or(0.0)];
    for _ in 0..r_max {
        let mut next: HashMap<u64, f64> = HashMap::new();
        for (&s, &mass) in &dist {
            // per white vertex, the probability that every forcer edge fails
            let mut fail: Vec<(usize, f64)> = Vec::new();
            for (u, nbrs) in adj.iter().enumerate() {
                if s >> u & 1 == 0 {
                    continue;
                }
                let white: Vec<usize> = nbrs.iter().copied().filter(|&v| s >> v & 1 == 0).collect();
                if let [v] = white[..] {
                    let q = 1.0 - g.weight(u, v).unwrap();
                    match fail.iter_mut().find(|e| e.0 == v) {
                        Some(e) => e.1 *= q,
                        None => fail.push((v, q)),
                    }
                }
            }
            let k = fail.len();
            for pick in 0..1u64 << k {
                let mut p = mass;
                let mut t = s;
                for (i, &(v, q)) in fail.iter().enumerate() {
                    if pick >> i & 1 == 1 {
                        p *= 1.0 - q;
                        t |= 1 << v;
                    } else {
                        p *= q;
                    }
                }
                *next.entry(t).or_insert(0.0) += p;
            }
        }
        dist = next;
        out.push(dist.get(&all).copied().unwrap_or(0.0));
    }
    out
}

/// CDF of a sum of independent geometric variables with success
/// probabilities `w`, evaluated at `0..=t_max`, by convolving truncated pmfs.
pub fn geometric_sum_cdf(w: &[f64], t_max: usize) -> Vec<f64> {
    let mut pmf = vec![0.0; t_max + 1];
    pmf[0] = 1.0;
    for &p in w {
        let mut next = vec![0.0; t_max + 1];
        for (s, &mass) in pmf.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            let mut g = p;
            for slot in &mut next[s + 1..] {
                *slot += mass * g;
                g *= 1.0 - p;
            }
        }
        pmf = next;
    }
    let mut acc = 0.0;
    pmf.iter()
        .map(|m| {
            acc += m;
            acc
        })
        .collect()
}

/// `sum over a_1 + .. + a_n = k of prod x_i^{a_i}`, by enumerating compositions.
pub fn composition_sum(x: &[f64], k: usize) -> f64 {
    fn go(x: &[f64], k: usize) -> f64 {
        match x {
            [] => 0.0,
            [last] => last.powi(k as i32),
            [first, rest @ ..] => (0..=k).map(|a| first.powi(a as i32) * go(rest, k - a)).sum(),
        }
    }
    go(x, k)
}
