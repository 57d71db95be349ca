use serde::Serialize;

use crate::graph::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Eptw,
    Cptw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MarkovSolve,
    MarkovSeries,
    ClosedForm,
    MonteCarlo,
}

/// Expected rounds for eptw, a whole round count for cptw.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum PropagationValue {
    Expected(f64),
    Rounds(u64),
}

impl PropagationValue {
    pub fn as_f64(&self) -> f64 {
        match *self {
            PropagationValue::Expected(v) => v,
            PropagationValue::Rounds(r) => r as f64,
        }
    }
}

/// A propagation time together with every initial set attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropagationReport {
    pub quantity: Quantity,
    pub value: PropagationValue,
    pub best_sets: Vec<VertexSet>,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}
