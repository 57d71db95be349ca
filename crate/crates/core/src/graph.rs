//! Edge-weighted simple graphs, vertex subsets, the JSON graph document and
//! the standard family constructors.
//!
//! Vertices are labeled `0..n` and sets of vertices are stored as 64-bit
//! masks, so a graph holds at most [`MAX_VERTICES`] vertices.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A subset of `{0, .., n-1}` for a fixed ambient vertex count `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: u64,
    n: usize,
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds {MAX_VERTICES}");
        VertexSet { bits: 0, n }
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds {MAX_VERTICES}");
        VertexSet { bits: full_mask(n), n }
    }

    /// Builds a set from a characteristic mask; bits at or above `n` are an error.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge(format!("{n} vertices (max {MAX_VERTICES})")));
        }
        if bits & !full_mask(n) != 0 {
            let vertex = 63 - (bits & !full_mask(n)).leading_zeros() as i64;
            return Err(Error::VertexRange { vertex, n });
        }
        Ok(VertexSet { bits, n })
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Result<Self> {
        let mut set = VertexSet::empty(n);
        for v in vertices {
            if v >= n {
                return Err(Error::VertexRange { vertex: v as i64, n });
            }
            set.bits |= 1 << v;
        }
        Ok(set)
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.bits == full_mask(self.n)
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.bits >> v & 1 == 1
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet { bits: self.bits | other.bits, n: self.n }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet { bits: self.bits & !other.bits, n: self.n }
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet { bits: !self.bits & full_mask(self.n), n: self.n }
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range");
        self.bits |= 1 << v;
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        BitIter(self.bits)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Iterates the set bits of a mask from least to most significant.
pub(crate) struct BitIter(pub(crate) u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// A simple undirected graph whose edges carry weights in the open interval (0, 1).
#[derive(Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    adj: Vec<u64>,
    // dense n*n, 0.0 where there is no edge
    weights: Vec<f64>,
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedGraph").field("n", &self.n).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

impl WeightedGraph {
    /// Validates and builds a graph. Edges are checked in the order given.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        Self::from_signed(n, edges.into_iter().map(|(u, v, w)| (u as i64, v as i64, w)))
    }

    fn from_signed<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, i64, f64)>,
    {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge(format!("{n} vertices (max {MAX_VERTICES})")));
        }
        let mut g = WeightedGraph { n, adj: vec![0; n], weights: vec![0.0; n * n] };
        for (u, v, w) in edges {
            for x in [u, v] {
                if x < 0 || x as usize >= n {
                    return Err(Error::VertexRange { vertex: x, n });
                }
            }
            let (u, v) = (u as usize, v as usize);
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            // NaN fails both comparisons
            if !(w > 0.0 && w < 1.0) {
                return Err(Error::WeightRange { u, v, w });
            }
            if g.adj[u] >> v & 1 == 1 {
                return Err(Error::DupEdge { u: u.min(v), v: u.max(v) });
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
            g.weights[u * n + v] = w;
            g.weights[v * n + u] = w;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Neighbors of `v` as a bit mask.
    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        BitIter(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Weight of `{u, v}`, or `None` when the pair is not an edge.
    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        if u < self.n && v < self.n && self.has_edge(u, v) {
            Some(self.weights[u * self.n + v])
        } else {
            None
        }
    }

    /// Edges as `(u, v, w)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |u| {
            BitIter(self.adj[u] & !full_mask(u + 1)).map(move |v| (u, v, self.weights[u * self.n + v]))
        })
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for v in BitIter(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == full_mask(self.n)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<WeightedGraph> {
        if perm.len() != self.n {
            return Err(Error::Arity(format!("permutation of length {} for {} vertices", perm.len(), self.n)));
        }
        WeightedGraph::new(self.n, self.edges().map(|(u, v, w)| (perm[u], perm[v], w)))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    u: i64,
    v: i64,
    w: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    n: usize,
    edges: Vec<EdgeRecord>,
}

/// Parses a graph document such as
/// `{"n":3,"edges":[{"u":0,"v":1,"w":0.5},{"u":1,"v":2,"w":0.3}]}`.
pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    WeightedGraph::from_signed(doc.n, doc.edges.into_iter().map(|e| (e.u, e.v, e.w)))
}

fn document(g: &WeightedGraph) -> GraphDocument {
    GraphDocument { n: g.n, edges: g.edges().map(|(u, v, w)| EdgeRecord { u: u as i64, v: v as i64, w }).collect() }
}

/// Canonical document: edges sorted with `u < v`, fields in the order `n`, `edges`.
pub fn serialize_graph(g: &WeightedGraph) -> String {
    serde_json::to_string(&document(g)).expect("graph document serializes")
}

/// The graph document as a JSON value, for embedding in reports.
pub fn graph_value(g: &WeightedGraph) -> serde_json::Value {
    serde_json::to_value(document(g)).expect("graph document serializes")
}

/// Standard families with their labeling:
/// path `0-1-..-(n-1)`, cycle `0-1-..-(n-1)-0`, star with center `0` and
/// leaves `1..=leaves`, complete bipartite with parts `0..a` and `a..a+b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete { n: usize },
    Star { leaves: usize },
    Path { n: usize },
    Cycle { n: usize },
    CompleteBipartite { a: usize, b: usize },
}

impl Family {
    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::Complete { n } | Family::Path { n } | Family::Cycle { n } => n,
            Family::Star { leaves } => leaves + 1,
            Family::CompleteBipartite { a, b } => a + b,
        }
    }

    /// Edges in the order weights are assigned to them.
    pub fn edge_order(&self) -> Vec<(usize, usize)> {
        match *self {
            Family::Complete { n } => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
            Family::Star { leaves } => (1..=leaves).map(|l| (0, l)).collect(),
            Family::Path { n } => (1..n).map(|v| (v - 1, v)).collect(),
            Family::Cycle { n } => (0..n).map(|v| (v, (v + 1) % n)).collect(),
            Family::CompleteBipartite { a, b } => (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect(),
        }
    }
}

pub fn make_family(family: Family, weights: &[f64]) -> Result<WeightedGraph> {
    if let Family::Cycle { n } = family {
        if n < 3 {
            return Err(Error::Arity(format!("a cycle needs at least 3 vertices, got {n}")));
        }
    }
    let order = family.edge_order();
    if order.len() != weights.len() {
        return Err(Error::Arity(format!(
            "{family:?} has {} edges but {} weights were given",
            order.len(),
            weights.len()
        )));
    }
    WeightedGraph::new(family.vertex_count(), order.into_iter().zip(weights).map(|((u, v), &w)| (u, v, w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_document() {
        let g = parse_graph(r#"{"n":2,"edges":[{"u":0,"v":1,"w":0.5}]}"#).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(1, 0), Some(0.5));
    }

    #[test]
    fn rejects_bad_documents() {
        let code = |s: &str| parse_graph(s).unwrap_err().code();
        assert_eq!(code(r#"{"n":2,"edges":[{"u":0,"v":1,"w":1.0}]}"#), "E_WEIGHT_RANGE");
        assert_eq!(code(r#"{"n":2,"edges":[{"u":0,"v":1,"w":0}]}"#), "E_WEIGHT_RANGE");
        assert_eq!(code(r#"{"n":2,"edges":[{"u":0,"v":1,"w":0.5},{"u":1,"v":0,"w":0.3}]}"#), "E_DUP_EDGE");
        assert_eq!(code(r#"{"n":2,"edges":[{"u":1,"v":1,"w":0.5}]}"#), "E_SELF_LOOP");
        assert_eq!(code(r#"{"n":2,"edges":[{"u":0,"v":2,"w":0.5}]}"#), "E_VERTEX_RANGE");
        assert_eq!(code(r#"{"n":2,"edges":[{"u":-1,"v":0,"w":0.5}]}"#), "E_VERTEX_RANGE");
        assert_eq!(code(r#"{"n":2,"edges":[{"u":0,"v":1}]}"#), "E_PARSE");
        assert_eq!(code(r#"{"n":2}"#), "E_PARSE");
        assert_eq!(code("not json"), "E_PARSE");
        assert_eq!(code(r#"{"n":65,"edges":[]}"#), "E_TOO_LARGE");
    }

    #[test]
    fn serializes_canonically() {
        let g = WeightedGraph::new(3, [(2, 1, 0.3), (1, 0, 0.5)]).unwrap();
        assert_eq!(serialize_graph(&g), r#"{"n":3,"edges":[{"u":0,"v":1,"w":0.5},{"u":1,"v":2,"w":0.3}]}"#);
        let p2 = make_family(Family::Path { n: 2 }, &[0.5]).unwrap();
        assert_eq!(serialize_graph(&p2), r#"{"n":2,"edges":[{"u":0,"v":1,"w":0.5}]}"#);
        let empty = WeightedGraph::new(0, []).unwrap();
        assert_eq!(serialize_graph(&empty), r#"{"n":0,"edges":[]}"#);
        assert_eq!(parse_graph(&serialize_graph(&empty)).unwrap(), empty);
    }

    #[test]
    fn family_constructors() {
        let p3 = make_family(Family::Path { n: 3 }, &[0.5, 0.3]).unwrap();
        assert_eq!(p3.weight(0, 1), Some(0.5));
        assert_eq!(p3.weight(1, 2), Some(0.3));
        assert_eq!(p3.edge_count(), 2);

        let c3 = make_family(Family::Cycle { n: 3 }, &[0.5; 3]).unwrap();
        assert_eq!(c3.edge_count(), 3);

        let err = make_family(Family::Star { leaves: 3 }, &[0.5, 0.5]).unwrap_err();
        assert_eq!(err.code(), "E_ARITY");
        let err = make_family(Family::Path { n: 2 }, &[1.5]).unwrap_err();
        assert_eq!(err.code(), "E_WEIGHT_RANGE");

        let k = make_family(Family::CompleteBipartite { a: 2, b: 3 }, &[0.1, 0.2, 0.3, 0.4, 0.5, 0.6]).unwrap();
        assert_eq!(k.weight(0, 2), Some(0.1));
        assert_eq!(k.weight(1, 4), Some(0.6));
        assert!(!k.has_edge(0, 1));
    }

    #[test]
    fn family_edge_counts() {
        for n in 1..8 {
            assert_eq!(Family::Path { n }.edge_order().len(), n - 1);
            assert_eq!(Family::Complete { n }.edge_order().len(), n * (n - 1) / 2);
            assert_eq!(Family::Star { leaves: n }.edge_order().len(), n);
            if n >= 3 {
                assert_eq!(Family::Cycle { n }.edge_order().len(), n);
            }
            assert_eq!(Family::CompleteBipartite { a: n, b: 2 }.edge_order().len(), 2 * n);
        }
    }

    #[test]
    fn vertex_set_operations() {
        let a = VertexSet::from_vertices(5, [0, 2]).unwrap();
        let b = VertexSet::from_vertices(5, [0, 2, 4]).unwrap();
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert_eq!(a.union(&b), b);
        assert_eq!(a.complement().to_vec(), vec![1, 3, 4]);
        assert_eq!(b.len(), 3);
        assert_eq!(format!("{b}"), "{0,2,4}");
        assert!(VertexSet::from_vertices(5, [5]).is_err());
        assert!(VertexSet::from_bits(3, 0b1000).is_err());
        assert!(VertexSet::full(64).is_full());
    }
}
