//! Orchestration behind the `wzf` binary: load a graph, run the requested
//! methods and assemble a structured report.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

use crate::closed::{self, Endpoint, FamilyView, DISTINCT_GAP};
use crate::error::{check_alpha, Error, Result};
use crate::graph::{graph_value, make_family, parse_graph, Family, VertexSet, WeightedGraph};
use crate::markov::{self, MarkovOptions, StateMode};
use crate::montecarlo::{self, McEstimate, McOptions};
use crate::report::{Method, PropagationValue, Quantity};
use crate::zf::{is_zfs, minimum_zero_forcing_sets, DEFAULT_SUBSET_BUDGET};

pub const DEFAULT_TOL: f64 = 1e-9;
/// Standard errors allowed between a Monte Carlo mean and the exact value.
pub const MC_MEAN_SIGMAS: f64 = 4.0;
/// Failure probability in the empirical CDF bound `5 sqrt(ln(2/delta) / (2 trials))`.
pub const MC_CDF_DELTA: f64 = 1e-3;
/// The empirical CDF is compared on at least this many rounds.
pub const MC_CDF_ROUNDS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    File(PathBuf),
    Family { family: Family, weights: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Markov,
    Closed,
    Mc,
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: Source,
    pub eptw: bool,
    /// Confidence level; requests cptw when present.
    pub cptw: Option<f64>,
    pub method: MethodChoice,
    /// Evaluate this initial set only instead of minimizing over sets.
    pub fixed_set: Option<Vec<usize>>,
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
    pub state_cap: u64,
    pub round_cap: u64,
}

impl RunConfig {
    pub fn new(source: Source) -> Self {
        RunConfig {
            source,
            eptw: false,
            cptw: None,
            method: MethodChoice::Markov,
            fixed_set: None,
            trials: montecarlo::DEFAULT_TRIALS,
            seed: 0,
            tol: DEFAULT_TOL,
            state_cap: markov::DEFAULT_STATE_CAP,
            round_cap: markov::DEFAULT_ROUND_CAP,
        }
    }

    /// eptw is computed when nothing is requested explicitly.
    fn quantities(&self) -> Vec<(Quantity, Option<f64>)> {
        let mut out = Vec::new();
        if self.eptw || self.cptw.is_none() {
            out.push((Quantity::Eptw, None));
        }
        if let Some(alpha) = self.cptw {
            out.push((Quantity::Cptw, Some(alpha)));
        }
        out
    }

    fn wants(&self, m: MethodChoice) -> bool {
        self.method == m || self.method == MethodChoice::All
    }
}

/// Resolves the family flags `--family NAME --n N [--a A --b B]`.
pub fn family_from_flags(name: &str, n: Option<usize>, a: Option<usize>, b: Option<usize>) -> Result<Family> {
    let need_n = || n.ok_or_else(|| Error::Config(format!("--family {name} requires --n")));
    Ok(match name {
        "complete" => Family::Complete { n: need_n()? },
        "star" => Family::Star { leaves: need_n()? },
        "path" => Family::Path { n: need_n()? },
        "cycle" => Family::Cycle { n: need_n()? },
        "complete_bipartite" | "complete-bipartite" => match (a, b) {
            (Some(a), Some(b)) => Family::CompleteBipartite { a, b },
            _ => return Err(Error::Config("--family complete_bipartite requires --a and --b".into())),
        },
        other => return Err(Error::Config(format!("unknown family {other:?}"))),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultEntry {
    pub quantity: Quantity,
    pub method: Method,
    pub value: PropagationValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub best_sets: Vec<VertexSet>,
    pub ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
}

/// A disagreement between the Markov value and another method.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheck {
    pub quantity: Quantity,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub round: Option<u64>,
    pub markov: f64,
    pub value: f64,
    pub difference: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorRecord {
    pub code: &'static str,
    pub message: String,
}

impl From<&Error> for ErrorRecord {
    fn from(e: &Error) -> Self {
        ErrorRecord { code: e.code(), message: e.to_string() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub graph: Option<serde_json::Value>,
    pub zf_number: Option<usize>,
    pub results: Vec<ResultEntry>,
    pub cross_checks: Vec<CrossCheck>,
    pub errors: Vec<ErrorRecord>,
}

impl Report {
    pub fn from_error(e: &Error) -> Self {
        Report { errors: vec![e.into()], ..Default::default() }
    }

    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        if let Some(g) = &self.graph {
            let edges = g["edges"].as_array().map_or(0, Vec::len);
            let _ = writeln!(out, "graph            n={} edges={}", g["n"], edges);
        }
        if let Some(z) = self.zf_number {
            let _ = writeln!(out, "zero forcing no. {z}");
        }
        if !self.results.is_empty() {
            let _ = writeln!(out, "\n{:<10} {:<14} {:<19} {:>18}  best sets", "qty", "method", "family", "value");
        }
        for r in &self.results {
            let qty = match r.quantity {
                Quantity::Eptw => "eptw".to_string(),
                Quantity::Cptw => format!("cptw@{}", r.alpha.unwrap_or(f64::NAN)),
            };
            let value = match (r.value, r.stderr) {
                (PropagationValue::Expected(v), Some(se)) => format!("{v:.6} ± {se:.4}"),
                (PropagationValue::Expected(v), None) => format!("{v:.12}"),
                (PropagationValue::Rounds(m), _) => m.to_string(),
            };
            let sets: Vec<String> = r.best_sets.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                out,
                "{:<10} {:<14} {:<19} {:>18}  {}",
                qty,
                method_name(r.method),
                r.family.unwrap_or("-"),
                value,
                sets.join(" ")
            );
        }
        if !self.cross_checks.is_empty() {
            let _ = writeln!(out, "\ncross-check disagreements:");
            for c in &self.cross_checks {
                let _ = writeln!(
                    out,
                    "  {} {} {}: markov {} vs {} (|diff| {:.3e} > {:.1e}){}",
                    quantity_name(c.quantity),
                    method_name(c.method),
                    c.family.unwrap_or(""),
                    c.markov,
                    c.value,
                    c.difference,
                    c.tolerance,
                    c.note.map(|n| format!("  [{n}]")).unwrap_or_default()
                );
            }
        }
        for e in &self.errors {
            let _ = writeln!(out, "error {}: {}", e.code, e.message);
        }
        out
    }
}

fn quantity_name(q: Quantity) -> &'static str {
    match q {
        Quantity::Eptw => "eptw",
        Quantity::Cptw => "cptw",
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::MarkovSolve => "markov_solve",
        Method::MarkovSeries => "markov_series",
        Method::ClosedForm => "closed_form",
        Method::MonteCarlo => "monte_carlo",
    }
}

const BIPARTITE_NOTE: &str =
    "complete bipartite closed form multiplies in the edge to the other white vertex, which cannot force";

pub fn run(config: &RunConfig) -> Report {
    let mut report = Report::default();
    if let Err(e) = run_into(config, &mut report) {
        report.errors.push((&e).into());
    }
    report
}

fn load(source: &Source) -> Result<WeightedGraph> {
    match source {
        Source::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            parse_graph(&text)
        }
        Source::Family { family, weights } => make_family(*family, weights),
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn run_into(config: &RunConfig, report: &mut Report) -> Result<()> {
    if let Some(alpha) = config.cptw {
        check_alpha(alpha)?;
    }
    if config.trials == 0 {
        return Err(Error::Config("--trials must be at least 1".into()));
    }
    if config.tol.is_nan() || config.tol <= 0.0 {
        return Err(Error::Config("--tol must be positive".into()));
    }
    let g = load(&config.source)?;
    report.graph = Some(graph_value(&g));
    if g.n() == 0 {
        return Err(Error::EmptySet);
    }
    let minimum = minimum_zero_forcing_sets(&g, DEFAULT_SUBSET_BUDGET)?;
    report.zf_number = Some(minimum.size);

    let fixed = match &config.fixed_set {
        Some(vs) => {
            let set = VertexSet::from_vertices(g.n(), vs.iter().copied())?;
            if set.is_empty() {
                return Err(Error::EmptySet);
            }
            if !is_zfs(&g, &set) {
                return Err(Error::Config(format!("{set} is not a zero forcing set")));
            }
            Some(set)
        }
        None => None,
    };
    let candidates = fixed.map_or_else(|| minimum.sets.clone(), |s| vec![s]);
    let markov_opts = MarkovOptions {
        mode: StateMode::Reachable,
        state_cap: config.state_cap,
        round_cap: config.round_cap,
        subset_budget: DEFAULT_SUBSET_BUDGET,
    };
    let mc_opts = McOptions { round_cap: config.round_cap, parallel: true };

    for (quantity, alpha) in config.quantities() {
        let mut markov_value = None;
        if config.wants(MethodChoice::Markov) {
            let start = Instant::now();
            let (value, best_sets) = match (quantity, fixed) {
                (Quantity::Eptw, Some(b)) => {
                    (PropagationValue::Expected(markov::eptw_set(&g, &b, &markov_opts)?), vec![b])
                }
                (Quantity::Cptw, Some(b)) => {
                    (PropagationValue::Rounds(markov::cptw_set(&g, &b, alpha.unwrap(), &markov_opts)?), vec![b])
                }
                (Quantity::Eptw, None) => {
                    let r = markov::eptw_graph(&g, &markov_opts)?;
                    (r.value, r.best_sets)
                }
                (Quantity::Cptw, None) => {
                    let r = markov::cptw_graph(&g, alpha.unwrap(), &markov_opts)?;
                    (r.value, r.best_sets)
                }
            };
            markov_value = Some(value.as_f64());
            report.results.push(ResultEntry {
                quantity,
                method: Method::MarkovSolve,
                value,
                alpha,
                best_sets,
                ms: elapsed_ms(start),
                family: None,
                stderr: None,
                trials: None,
            });
        }

        if config.wants(MethodChoice::Closed) {
            let found = closed_forms(&g, quantity, alpha, fixed.as_ref())?;
            if found.is_empty() && config.method == MethodChoice::Closed {
                return Err(Error::MethodUnavailable(format!(
                    "no closed form for {} on this graph",
                    if quantity == Quantity::Eptw { "eptw" } else { "cptw" }
                )));
            }
            for c in found {
                if let Some(reference) = markov_value {
                    let v = c.value.as_f64();
                    let (difference, tolerance) = (
                        (v - reference).abs(),
                        match quantity {
                            Quantity::Eptw => config.tol,
                            Quantity::Cptw => 0.0,
                        },
                    );
                    if difference > tolerance {
                        report.cross_checks.push(CrossCheck {
                            quantity,
                            method: Method::ClosedForm,
                            family: Some(c.family),
                            set: fixed,
                            round: None,
                            markov: reference,
                            value: v,
                            difference,
                            tolerance,
                            note: (c.family == "complete_bipartite").then_some(BIPARTITE_NOTE),
                        });
                    }
                }
                report.results.push(ResultEntry {
                    quantity,
                    method: Method::ClosedForm,
                    value: c.value,
                    alpha,
                    best_sets: c.best_sets,
                    ms: c.ms,
                    family: Some(c.family),
                    stderr: None,
                    trials: None,
                });
            }
        }

        if config.wants(MethodChoice::Mc) {
            let start = Instant::now();
            let estimates = candidates
                .iter()
                .map(|b| montecarlo::estimate(&g, b, config.trials, config.seed, &mc_opts))
                .collect::<Result<Vec<McEstimate>>>()?;
            let ms = elapsed_ms(start);
            let (value, keys): (PropagationValue, Vec<f64>) = match quantity {
                Quantity::Eptw => {
                    let keys: Vec<f64> = estimates.iter().map(|e| e.mean).collect();
                    (PropagationValue::Expected(keys.iter().copied().fold(f64::INFINITY, f64::min)), keys)
                }
                Quantity::Cptw => {
                    let keys: Vec<f64> = estimates.iter().map(|e| e.empirical_cptw(alpha.unwrap()) as f64).collect();
                    let best = keys.iter().copied().fold(f64::INFINITY, f64::min);
                    (PropagationValue::Rounds(best as u64), keys)
                }
            };
            let best = value.as_f64();
            let best_idx: Vec<usize> = (0..keys.len()).filter(|&i| keys[i] == best).collect();
            report.results.push(ResultEntry {
                quantity,
                method: Method::MonteCarlo,
                value,
                alpha,
                best_sets: best_idx.iter().map(|&i| candidates[i]).collect(),
                ms,
                family: None,
                stderr: (quantity == Quantity::Eptw).then(|| estimates[best_idx[0]].stderr),
                trials: Some(config.trials),
            });
            if config.method == MethodChoice::All {
                for (b, est) in candidates.iter().zip(&estimates) {
                    if let Some(check) = check_mc(&g, b, est, quantity, alpha, &markov_opts)? {
                        report.cross_checks.push(check);
                    }
                }
            }
        }
    }
    Ok(())
}

/// Compares one Monte Carlo estimate with the exact chain for the same set.
fn check_mc(
    g: &WeightedGraph,
    b: &VertexSet,
    est: &McEstimate,
    quantity: Quantity,
    alpha: Option<f64>,
    opts: &MarkovOptions,
) -> Result<Option<CrossCheck>> {
    let m = markov::transition_matrix_for(g, b, opts)?;
    let check = match quantity {
        Quantity::Eptw => {
            let exact = markov::eptw_solve(&m)?;
            let tolerance = MC_MEAN_SIGMAS * est.stderr;
            let difference = (est.mean - exact).abs();
            (difference > tolerance).then_some(CrossCheck {
                quantity,
                method: Method::MonteCarlo,
                family: None,
                set: Some(*b),
                round: None,
                markov: exact,
                value: est.mean,
                difference,
                tolerance,
                note: None,
            })
        }
        Quantity::Cptw => {
            let target = markov::cptw_from_matrix(&m, alpha.unwrap(), opts.round_cap)? as usize;
            let rounds = MC_CDF_ROUNDS.max(target).max(est.cdf.len());
            let exact = markov::completion_cdf(&m, rounds);
            let tolerance = 5.0 * ((2.0 / MC_CDF_DELTA).ln() / (2.0 * est.trials as f64)).sqrt();
            let (r, difference) = exact
                .iter()
                .enumerate()
                .map(|(r, &c)| (r, (c - est.cdf_at(r)).abs()))
                .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            (difference > tolerance).then_some(CrossCheck {
                quantity,
                method: Method::MonteCarlo,
                family: None,
                set: Some(*b),
                round: Some(r as u64),
                markov: exact[r],
                value: est.cdf_at(r),
                difference,
                tolerance,
                note: None,
            })
        }
    };
    Ok(check)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedValue {
    pub family: &'static str,
    pub value: PropagationValue,
    pub best_sets: Vec<VertexSet>,
    pub ms: f64,
}

/// Every closed form that applies to `g` (and to `fixed`, when given).
pub fn closed_forms(
    g: &WeightedGraph,
    quantity: Quantity,
    alpha: Option<f64>,
    fixed: Option<&VertexSet>,
) -> Result<Vec<ClosedValue>> {
    let mut out = Vec::new();
    for view in closed::recognize(g) {
        let start = Instant::now();
        let found = match quantity {
            Quantity::Eptw => closed_eptw(g, &view, fixed)?.map(|(v, sets)| (PropagationValue::Expected(v), sets)),
            Quantity::Cptw => {
                let alpha = alpha.ok_or_else(|| Error::Config("cptw requires alpha".into()))?;
                closed_cptw(g, &view, alpha, fixed)?.map(|(v, sets)| (PropagationValue::Rounds(v), sets))
            }
        };
        if let Some((value, best_sets)) = found {
            out.push(ClosedValue { family: view.name(), value, best_sets, ms: elapsed_ms(start) });
        }
    }
    Ok(out)
}

/// All vertices except `white`.
fn without(n: usize, white: &[usize]) -> VertexSet {
    VertexSet::from_vertices(n, white.iter().copied()).expect("vertices in range").complement()
}

fn singleton(n: usize, v: usize) -> VertexSet {
    VertexSet::from_vertices(n, [v]).expect("vertex in range")
}

fn star_weights(g: &WeightedGraph, center: usize, leaves: &[usize]) -> Vec<f64> {
    leaves.iter().map(|&l| g.weight(center, l).unwrap()).collect()
}

fn order_weights(g: &WeightedGraph, order: &[usize]) -> Vec<f64> {
    order.windows(2).map(|e| g.weight(e[0], e[1]).unwrap()).collect()
}

fn cycle_ring(g: &WeightedGraph, order: &[usize]) -> Vec<f64> {
    let n = order.len();
    (0..n).map(|k| g.weight(order[k], order[(k + 1) % n]).unwrap()).collect()
}

/// Index `i` such that `fixed` is the adjacent cycle pair `order[i], order[i+1]`.
fn cycle_pair_index(order: &[usize], fixed: &VertexSet) -> Option<usize> {
    let n = order.len();
    if fixed.len() != 2 {
        return None;
    }
    (0..n).find(|&i| fixed.contains(order[i]) && fixed.contains(order[(i + 1) % n]))
}

fn cycle_pair_sets(n: usize, order: &[usize]) -> Vec<VertexSet> {
    let mut sets: Vec<(Vec<usize>, VertexSet)> = (0..n)
        .map(|i| {
            let s = VertexSet::from_vertices(n, [order[i], order[(i + 1) % n]]).unwrap();
            (s.to_vec(), s)
        })
        .collect();
    sets.sort_by(|a, b| a.0.cmp(&b.0));
    sets.into_iter().map(|(_, s)| s).collect()
}

fn sort_lex(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by_key(|s| s.to_vec());
    sets.dedup();
    sets
}

fn path_endpoint(order: &[usize], fixed: &VertexSet) -> Option<Endpoint> {
    if fixed.len() != 1 {
        None
    } else if fixed.contains(order[0]) {
        Some(Endpoint::Start)
    } else if fixed.contains(*order.last().unwrap()) {
        Some(Endpoint::End)
    } else {
        None
    }
}

fn closed_eptw(
    g: &WeightedGraph,
    view: &FamilyView,
    fixed: Option<&VertexSet>,
) -> Result<Option<(f64, Vec<VertexSet>)>> {
    let n = g.n();
    let white = fixed.map(|s| s.complement());
    Ok(match view {
        FamilyView::Complete => match white {
            Some(w) if w.len() == 1 => {
                let i = w.iter().next().unwrap();
                Some((1.0 / (1.0 - closed::complete_stay_probabilities(g)[i]), vec![*fixed.unwrap()]))
            }
            Some(_) => None,
            None => {
                let best = closed::eptw_complete(g)?;
                Some((best.value, sort_lex(best.choices.iter().map(|&i| without(n, &[i])).collect())))
            }
        },
        FamilyView::Star { center, leaves } => {
            let weights = star_weights(g, *center, leaves);
            match white {
                Some(w) => star_white_leaf(&w, *center, leaves)
                    .map(|i| (closed::eptw_star_for_leaf(&weights, i), vec![*fixed.unwrap()])),
                None => {
                    let best = closed::eptw_star(&weights)?;
                    let sets = best.choices.iter().map(|&i| without(n, &[*center, leaves[i]])).collect();
                    Some((best.value, sort_lex(sets)))
                }
            }
        }
        FamilyView::Path { order } => {
            let value = closed::eptw_path(&order_weights(g, order));
            match fixed {
                Some(f) => path_endpoint(order, f).map(|_| (value, vec![*f])),
                None => {
                    let ends = vec![singleton(n, order[0]), singleton(n, *order.last().unwrap())];
                    Some((value, sort_lex(ends)))
                }
            }
        }
        FamilyView::Cycle { order } => match fixed {
            Some(f) => cycle_pair_index(order, f).map(|i| {
                let ring = cycle_ring(g, order);
                let path: Vec<f64> = (1..n).map(|k| ring[(i + k) % n]).collect();
                let path = closed::CycleWeightPath::new(path).expect("cycle weights are valid");
                (closed::cycle_e(&path), vec![*f])
            }),
            None => {
                let best = closed::eptw_cycle(g)?;
                let sets = best.choices.iter().map(|&(a, b)| VertexSet::from_vertices(n, [a, b]).unwrap()).collect();
                Some((best.value, sort_lex(sets)))
            }
        },
        FamilyView::CompleteBipartite { left, right } => {
            let (_, _, p) = closed::bipartite_weights(g)?;
            match white {
                Some(w) => {
                    let x = left.iter().position(|&v| w.contains(v));
                    let y = right.iter().position(|&v| w.contains(v));
                    match (x, y) {
                        (Some(x), Some(y)) if w.len() == 2 => {
                            Some((closed::bipartite_paper_value(&p, x, y), vec![*fixed.unwrap()]))
                        }
                        _ => None,
                    }
                }
                None => {
                    let best = closed::eptw_complete_bipartite_paper(&p)?;
                    let sets = best.choices.iter().map(|&(x, y)| without(n, &[left[x], right[y]])).collect();
                    Some((best.value, sort_lex(sets)))
                }
            }
        }
    })
}

/// Leaf index when the white set is exactly the center plus one leaf.
fn star_white_leaf(white: &VertexSet, center: usize, leaves: &[usize]) -> Option<usize> {
    if white.len() != 2 || !white.contains(center) {
        return None;
    }
    leaves.iter().position(|&l| white.contains(l))
}

fn all_equal(w: &[f64]) -> bool {
    w.windows(2).all(|p| p[0] == p[1])
}

fn all_distinct(w: &[f64]) -> bool {
    w.iter().enumerate().all(|(i, a)| w[i + 1..].iter().all(|b| (a - b).abs() > DISTINCT_GAP))
}

fn closed_cptw(
    g: &WeightedGraph,
    view: &FamilyView,
    alpha: f64,
    fixed: Option<&VertexSet>,
) -> Result<Option<(u64, Vec<VertexSet>)>> {
    let n = g.n();
    let white = fixed.map(|s| s.complement());
    Ok(match view {
        FamilyView::Complete => match white {
            Some(w) if w.len() == 1 => {
                let i = w.iter().next().unwrap();
                Some((closed::cptw_complete_for_vertex(g, i, alpha)?, vec![*fixed.unwrap()]))
            }
            Some(_) => None,
            None => {
                let best = closed::cptw_complete(g, alpha)?;
                Some((best.value, sort_lex(best.choices.iter().map(|&i| without(n, &[i])).collect())))
            }
        },
        FamilyView::Star { center, leaves } => {
            let weights = star_weights(g, *center, leaves);
            match white {
                Some(w) => match star_white_leaf(&w, *center, leaves) {
                    Some(i) => Some((closed::cptw_star_for_leaf(&weights, i, alpha)?, vec![*fixed.unwrap()])),
                    None => None,
                },
                None => {
                    let best = closed::cptw_star(&weights, alpha)?;
                    let sets = best.choices.iter().map(|&i| without(n, &[*center, leaves[i]])).collect();
                    Some((best.value, sort_lex(sets)))
                }
            }
        }
        FamilyView::Path { order } => {
            if n == 1 {
                return Ok(Some((0, vec![singleton(1, 0)])));
            }
            let weights = order_weights(g, order);
            let ends = [(Endpoint::Start, order[0]), (Endpoint::End, *order.last().unwrap())];
            let per_end = |e: Endpoint| -> Result<Option<u64>> {
                if all_equal(&weights) {
                    Ok(Some(closed::cptw_path_equal(n, weights[0], alpha)?))
                } else if all_distinct(&weights) {
                    Ok(Some(closed::cptw_path_distinct(&weights, alpha, e)?))
                } else {
                    Ok(None)
                }
            };
            match fixed {
                Some(f) => match path_endpoint(order, f) {
                    Some(e) => per_end(e)?.map(|m| (m, vec![*f])),
                    None => None,
                },
                None => {
                    let mut values = Vec::new();
                    for (e, v) in ends {
                        match per_end(e)? {
                            Some(m) => values.push((m, singleton(n, v))),
                            None => return Ok(None),
                        }
                    }
                    let best = values.iter().map(|x| x.0).min().unwrap();
                    let sets = values.into_iter().filter(|x| x.0 == best).map(|x| x.1).collect();
                    Some((best, sort_lex(sets)))
                }
            }
        }
        FamilyView::Cycle { order } => {
            let ring = cycle_ring(g, order);
            if !all_equal(&ring) {
                return Ok(None);
            }
            match fixed {
                Some(f) => match cycle_pair_index(order, f) {
                    Some(_) => Some((closed::cptw_cycle_equal(n, ring[0], alpha)?, vec![*f])),
                    None => None,
                },
                None => Some((closed::cptw_cycle_equal(n, ring[0], alpha)?, cycle_pair_sets(n, order))),
            }
        }
        FamilyView::CompleteBipartite { .. } => None,
    })
}
