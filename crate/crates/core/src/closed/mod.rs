//! Family-specific formulas for complete graphs, stars, complete bipartite
//! graphs, paths and cycles.

mod cptw;
mod eptw;
pub mod family;
mod identity;

pub use cptw::{
    binomial_upper_tail, cptw_complete, cptw_complete_for_vertex, cptw_cycle_equal, cptw_path_distinct,
    cptw_path_equal, cptw_star, cptw_star_for_leaf, path_distinct_cdf, star_cdf, Endpoint, CPTW_ROUND_CAP,
    DISTINCT_GAP, STAR_DEGENERATE_GAP,
};
pub use eptw::{
    bipartite_paper_value, bipartite_weights, complete_stay_probabilities, cycle_e, eptw_complete,
    eptw_complete_bipartite_paper, eptw_cycle, eptw_path, eptw_star, eptw_star_for_leaf, BipartiteWeights,
    CycleWeightPath,
};
pub use family::{recognize, FamilyView};
pub use identity::composition_power_sum;

use crate::error::{Error, Result};

/// Ties between candidate values are collected within this absolute tolerance.
pub const TIE_TOL: f64 = 1e-9;

/// An optimal value and every choice attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct Best<V, C = usize> {
    pub value: V,
    pub choices: Vec<C>,
}

impl Best<f64> {
    fn minimum_f64(values: &[f64]) -> Self {
        let value = values.iter().copied().fold(f64::INFINITY, f64::min);
        let choices = (0..values.len()).filter(|&i| values[i] - value <= TIE_TOL).collect();
        Best { value, choices }
    }
}

/// Positions are reported as the edge `(i, i+1)` of a path-like weight list.
fn check_weights(weights: &[f64]) -> Result<()> {
    match weights.iter().position(|&w| !(w > 0.0 && w < 1.0)) {
        Some(i) => Err(Error::WeightRange { u: i, v: i + 1, w: weights[i] }),
        None => Ok(()),
    }
}
