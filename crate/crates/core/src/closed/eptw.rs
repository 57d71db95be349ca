//! Closed-form expected propagation times.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

use super::family::{bipartition, cycle_order, is_complete};
use super::{check_weights, Best};

/// `prod_{j != i} (1 - w_ij)`: probability that a lone white vertex `i` of a
/// complete graph stays white for one round.
pub fn complete_stay_probabilities(g: &WeightedGraph) -> Vec<f64> {
    (0..g.n()).map(|i| g.neighbors(i).map(|j| 1.0 - g.weight(i, j).unwrap()).product()).collect()
}

/// `1 / (1 - W)` with `W` the smallest stay-white probability over vertices.
/// Choices are the vertices left white by an optimal set.
pub fn eptw_complete(g: &WeightedGraph) -> Result<Best<f64>> {
    if !is_complete(g) {
        return Err(Error::NotFamily("complete graph"));
    }
    let values: Vec<f64> = complete_stay_probabilities(g).into_iter().map(|w| 1.0 / (1.0 - w)).collect();
    Ok(Best::minimum_f64(&values))
}

/// Expected time when leaf `i` starts white: `1/w_i + 1/(1 - prod_{j != i}(1 - w_j))`.
pub fn eptw_star_for_leaf(weights: &[f64], i: usize) -> f64 {
    let others: f64 = weights.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, w)| 1.0 - w).product();
    1.0 / weights[i] + 1.0 / (1.0 - others)
}

/// Star with leaf weights `w_1..w_n`; choices index the leaf left white.
pub fn eptw_star(weights: &[f64]) -> Result<Best<f64>> {
    if weights.len() < 2 {
        return Err(Error::Arity(format!("a star needs at least 2 leaves, got {}", weights.len())));
    }
    check_weights(weights)?;
    let values: Vec<f64> = (0..weights.len()).map(|i| eptw_star_for_leaf(weights, i)).collect();
    Ok(Best::minimum_f64(&values))
}

/// Complete bipartite formula with `p[x][y]` the weight of `A_x B_y`,
/// minimized over the pair `(x, y)` left white. The per-vertex failure
/// products run over every edge, including the one to the other white
/// vertex; on `K_{2,2}` with all weights 1/2 this gives 8/5 while the
/// Markov chain gives 20/9.
pub fn eptw_complete_bipartite_paper(p: &[Vec<f64>]) -> Result<Best<f64, (usize, usize)>> {
    let a = p.len();
    let b = p.first().map_or(0, Vec::len);
    if a < 2 || b < 2 {
        return Err(Error::NotFamily("complete bipartite graph with both parts of size at least 2"));
    }
    if p.iter().any(|row| row.len() != b) {
        return Err(Error::Arity("weight matrix rows have different lengths".into()));
    }
    for row in p {
        check_weights(row)?;
    }
    let mut values = Vec::with_capacity(a * b);
    let mut pairs = Vec::with_capacity(a * b);
    for x in 0..a {
        for y in 0..b {
            values.push(bipartite_paper_value(p, x, y));
            pairs.push((x, y));
        }
    }
    let best = Best::minimum_f64(&values);
    Ok(Best { value: best.value, choices: best.choices.into_iter().map(|i| pairs[i]).collect() })
}

/// The bipartite formula for one white pair `(A_x, B_y)`; `p` must be a
/// valid weight matrix.
pub fn bipartite_paper_value(p: &[Vec<f64>], x: usize, y: usize) -> f64 {
    let qx: f64 = p[x].iter().map(|w| 1.0 - w).product();
    let qy: f64 = p.iter().map(|row| 1.0 - row[y]).product();
    1.0 / (1.0 - qx) + 1.0 / (1.0 - qy) - 1.0 / (1.0 - qx * qy)
}

/// Left part, right part, and `p[x][y]` the weight of `left[x] right[y]`.
pub type BipartiteWeights = (Vec<usize>, Vec<usize>, Vec<Vec<f64>>);

/// Weight matrix of a complete bipartite graph, rows indexed by the part holding vertex 0.
pub fn bipartite_weights(g: &WeightedGraph) -> Result<BipartiteWeights> {
    let (left, right) = bipartition(g).ok_or(Error::NotFamily("complete bipartite graph"))?;
    let p = left.iter().map(|&u| right.iter().map(|&v| g.weight(u, v).unwrap()).collect()).collect();
    Ok((left, right, p))
}

/// `sum_k 1/w_k` over the path weights in order.
pub fn eptw_path(weights: &[f64]) -> f64 {
    weights.iter().map(|w| 1.0 / w).sum()
}

/// Edge weights of a cycle along the forcing path between the two initially
/// blue adjacent vertices, i.e. every edge except the one joining them.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleWeightPath(Vec<f64>);

impl CycleWeightPath {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::Arity(format!("a cycle forcing path needs at least 2 weights, got {}", weights.len())));
        }
        check_weights(&weights)?;
        Ok(CycleWeightPath(weights))
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }
}

/// Expected time for a cycle whose blue pair is joined by the forcing path
/// `w_1..w_{n-1}`. With `E(i..j)` the value on the contiguous subrange, the
/// two chain heads force across `w_i` and `w_j`:
///
/// `E = [w_i(1-w_j) E(i+1..j) + (1-w_i) w_j E(i..j-1) + w_i w_j E(i+1..j-1) + 1] / (w_i + w_j - w_i w_j)`
///
/// with `E = 0` on ranges of at most one weight (no white vertex left).
pub fn cycle_e(path: &CycleWeightPath) -> f64 {
    let w = path.weights();
    let len = w.len();
    // table[start][l] = E over w[start..start + l]
    let mut table = vec![vec![0.0; len + 1]; len + 1];
    for l in 2..=len {
        for start in 0..=len - l {
            let end = start + l - 1;
            let (first, last) = (w[start], w[end]);
            let inner = if l >= 3 { table[start + 1][l - 2] } else { 0.0 };
            let numer = first * (1.0 - last) * table[start + 1][l - 1]
                + (1.0 - first) * last * table[start][l - 1]
                + first * last * inner
                + 1.0;
            table[start][l] = numer / (first + last - first * last);
        }
    }
    table[0][len]
}

/// Minimum of [`cycle_e`] over the `n` adjacent initial pairs. Choices are
/// the optimal pairs as `(min, max)` vertex labels.
pub fn eptw_cycle(g: &WeightedGraph) -> Result<Best<f64, (usize, usize)>> {
    let order = cycle_order(g).ok_or(Error::NotFamily("cycle"))?;
    let n = order.len();
    let ring: Vec<f64> = (0..n).map(|k| g.weight(order[k], order[(k + 1) % n]).unwrap()).collect();
    let values: Vec<f64> = (0..n)
        .map(|i| {
            let path: Vec<f64> = (1..n).map(|k| ring[(i + k) % n]).collect();
            cycle_e(&CycleWeightPath::new(path).expect("cycle has at least 3 edges"))
        })
        .collect();
    let best = Best::minimum_f64(&values);
    let mut pairs: Vec<(usize, usize)> = best
        .choices
        .iter()
        .map(|&i| {
            let (a, b) = (order[i], order[(i + 1) % n]);
            (a.min(b), a.max(b))
        })
        .collect();
    pairs.sort_unstable();
    Ok(Best { value: best.value, choices: pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, Family};

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn complete_values() {
        let k3 = make_family(Family::Complete { n: 3 }, &[0.5; 3]).unwrap();
        let best = eptw_complete(&k3).unwrap();
        assert!(close(best.value, 4.0 / 3.0));
        assert_eq!(best.choices, vec![0, 1, 2]);
        let k2 = make_family(Family::Complete { n: 2 }, &[0.5]).unwrap();
        assert!(close(eptw_complete(&k2).unwrap().value, 2.0));
        let p3 = make_family(Family::Path { n: 3 }, &[0.5; 2]).unwrap();
        assert_eq!(eptw_complete(&p3).unwrap_err().code(), "E_NOT_FAMILY");
    }

    #[test]
    fn star_values() {
        assert!(close(eptw_star(&[0.5, 0.5, 0.5]).unwrap().value, 10.0 / 3.0));
        let best = eptw_star(&[0.9, 0.1]).unwrap();
        assert!(close(best.value, 1.0 / 0.9 + 10.0));
        assert_eq!(best.choices, vec![0, 1]);
        assert_eq!(eptw_star(&[0.5]).unwrap_err().code(), "E_ARITY");
    }

    #[test]
    fn bipartite_transcription() {
        let p = vec![vec![0.5, 0.5], vec![0.5, 0.5]];
        let best = eptw_complete_bipartite_paper(&p).unwrap();
        assert!(close(best.value, 8.0 / 5.0));
        assert_eq!(best.choices.len(), 4);

        let p = vec![vec![0.2, 0.7, 0.4], vec![0.6, 0.3, 0.9]];
        let t: Vec<Vec<f64>> = (0..3).map(|y| p.iter().map(|r| r[y]).collect()).collect();
        let (a, b) = (eptw_complete_bipartite_paper(&p).unwrap(), eptw_complete_bipartite_paper(&t).unwrap());
        assert!(close(a.value, b.value));
        assert_eq!(eptw_complete_bipartite_paper(&[vec![0.5, 0.5]]).unwrap_err().code(), "E_NOT_FAMILY");
    }

    #[test]
    fn path_values() {
        assert_eq!(eptw_path(&[0.5, 0.25, 0.2]), 11.0);
        assert_eq!(eptw_path(&[]), 0.0);
        assert_eq!(eptw_path(&[0.4]), 1.0 / 0.4);
    }

    #[test]
    fn cycle_recurrence() {
        let e = |w: &[f64]| cycle_e(&CycleWeightPath::new(w.to_vec()).unwrap());
        assert!(close(e(&[0.5, 0.5]), 4.0 / 3.0));
        // hand-unrolled: (4/3) * (0.25 * 4/3 + 0.25 * 4/3 + 0.25 * 0 + 1)
        assert!(close(e(&[0.5, 0.5, 0.5]), 20.0 / 9.0));
        assert_eq!(CycleWeightPath::new(vec![0.5]).unwrap_err().code(), "E_ARITY");

        let c4 = make_family(Family::Cycle { n: 4 }, &[0.5; 4]).unwrap();
        let best = eptw_cycle(&c4).unwrap();
        assert!(close(best.value, 20.0 / 9.0));
        assert_eq!(best.choices, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }
}
