//! Structural recognition of the graph families that have closed forms,
//! independent of vertex labeling.

use crate::graph::WeightedGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyView {
    Complete,
    /// `leaves` ascending.
    Star {
        center: usize,
        leaves: Vec<usize>,
    },
    /// Vertices in path order, starting from the lower-labeled endpoint.
    Path {
        order: Vec<usize>,
    },
    /// Vertices in cycle order, starting at 0 towards its lower-labeled neighbor.
    Cycle {
        order: Vec<usize>,
    },
    /// Both parts have at least two vertices; `left` holds vertex 0.
    CompleteBipartite {
        left: Vec<usize>,
        right: Vec<usize>,
    },
}

impl FamilyView {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyView::Complete => "complete",
            FamilyView::Star { .. } => "star",
            FamilyView::Path { .. } => "path",
            FamilyView::Cycle { .. } => "cycle",
            FamilyView::CompleteBipartite { .. } => "complete_bipartite",
        }
    }
}

/// Every family `g` belongs to. Small graphs can match several
/// (`K_3` is also `C_3`, `P_3` is also `K_{1,2}`, `C_4` is also `K_{2,2}`).
pub fn recognize(g: &WeightedGraph) -> Vec<FamilyView> {
    [
        is_complete(g).then_some(FamilyView::Complete),
        star_view(g).map(|(center, leaves)| FamilyView::Star { center, leaves }),
        path_order(g).map(|order| FamilyView::Path { order }),
        cycle_order(g).map(|order| FamilyView::Cycle { order }),
        bipartition(g).map(|(left, right)| FamilyView::CompleteBipartite { left, right }),
    ]
    .into_iter()
    .flatten()
    .collect()
}

pub fn is_complete(g: &WeightedGraph) -> bool {
    let n = g.n();
    n >= 2 && (0..n).all(|v| g.degree(v) == n - 1)
}

pub fn star_view(g: &WeightedGraph) -> Option<(usize, Vec<usize>)> {
    let n = g.n();
    if n < 3 || g.edge_count() != n - 1 {
        return None;
    }
    let center = (0..n).find(|&v| g.degree(v) == n - 1)?;
    let leaves: Vec<usize> = (0..n).filter(|&v| v != center).collect();
    leaves.iter().all(|&l| g.degree(l) == 1).then_some((center, leaves))
}

fn walk(g: &WeightedGraph, start: usize, first: usize) -> Vec<usize> {
    let mut order = vec![start, first];
    while order.len() < g.n() {
        let cur = order[order.len() - 1];
        let prev = order[order.len() - 2];
        match g.neighbors(cur).find(|&x| x != prev) {
            Some(next) if next != start => order.push(next),
            _ => break,
        }
    }
    order
}

pub fn path_order(g: &WeightedGraph) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 || g.edge_count() != n - 1 || !g.is_connected() {
        return None;
    }
    if n == 1 {
        return Some(vec![0]);
    }
    if (0..n).any(|v| g.degree(v) > 2) {
        return None;
    }
    let start = (0..n).find(|&v| g.degree(v) == 1)?;
    let first = g.neighbors(start).next()?;
    let order = walk(g, start, first);
    (order.len() == n).then_some(order)
}

pub fn cycle_order(g: &WeightedGraph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 || !g.is_connected() || (0..n).any(|v| g.degree(v) != 2) {
        return None;
    }
    let first = g.neighbors(0).next()?;
    let order = walk(g, 0, first);
    (order.len() == n).then_some(order)
}

pub fn bipartition(g: &WeightedGraph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    if n < 4 || !g.is_connected() {
        return None;
    }
    let left: Vec<usize> = std::iter::once(0).chain((1..n).filter(|&v| !g.has_edge(0, v))).collect();
    let right: Vec<usize> = g.neighbors(0).collect();
    if left.len() < 2 || right.len() < 2 || left.len() * right.len() != g.edge_count() {
        return None;
    }
    let complete = left.iter().all(|&u| right.iter().all(|&v| g.has_edge(u, v)));
    complete.then_some((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, Family};

    fn names(g: &WeightedGraph) -> Vec<&'static str> {
        recognize(g).iter().map(FamilyView::name).collect()
    }

    #[test]
    fn recognizes_families() {
        let g = |f, w: &[f64]| make_family(f, w).unwrap();
        assert_eq!(names(&g(Family::Complete { n: 3 }, &[0.5; 3])), vec!["complete", "cycle"]);
        assert_eq!(names(&g(Family::Path { n: 3 }, &[0.5; 2])), vec!["star", "path"]);
        assert_eq!(names(&g(Family::Path { n: 2 }, &[0.5])), vec!["complete", "path"]);
        assert_eq!(names(&g(Family::Cycle { n: 4 }, &[0.5; 4])), vec!["cycle", "complete_bipartite"]);
        assert_eq!(names(&g(Family::Cycle { n: 5 }, &[0.5; 5])), vec!["cycle"]);
        assert_eq!(names(&g(Family::Star { leaves: 4 }, &[0.5; 4])), vec!["star"]);
        assert_eq!(names(&g(Family::CompleteBipartite { a: 2, b: 3 }, &[0.5; 6])), vec!["complete_bipartite"]);
        assert_eq!(names(&g(Family::Complete { n: 5 }, &[0.5; 10])), vec!["complete"]);

        // a triangle with a pendant vertex
        let odd = WeightedGraph::new(4, [(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.5), (2, 3, 0.5)]).unwrap();
        assert!(recognize(&odd).is_empty());
        let disconnected = WeightedGraph::new(4, [(0, 1, 0.5), (2, 3, 0.5)]).unwrap();
        assert!(recognize(&disconnected).is_empty());
    }

    #[test]
    fn orders_follow_the_structure() {
        let p = WeightedGraph::new(4, [(2, 0, 0.5), (0, 3, 0.5), (3, 1, 0.5)]).unwrap();
        assert_eq!(path_order(&p), Some(vec![1, 3, 0, 2]));
        let c = WeightedGraph::new(4, [(0, 2, 0.5), (2, 1, 0.5), (1, 3, 0.5), (3, 0, 0.5)]).unwrap();
        assert_eq!(cycle_order(&c), Some(vec![0, 2, 1, 3]));
        let k = make_family(Family::CompleteBipartite { a: 2, b: 3 }, &[0.5; 6]).unwrap();
        assert_eq!(bipartition(&k), Some((vec![0, 1], vec![2, 3, 4])));
    }
}
