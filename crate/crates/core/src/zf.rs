//! Standard (unweighted) zero forcing: permitted forces, closure, the zero
//! forcing number and enumeration of minimum zero forcing sets.

use crate::error::{Error, Result};
use crate::graph::{BitIter, VertexSet, WeightedGraph};

/// Default cap on the number of subsets tested by [`zf_number`] and
/// [`enumerate_min_zfs`].
pub const DEFAULT_SUBSET_BUDGET: u64 = 2_000_000;

/// The forces permitted at one instant: each forceable white vertex together
/// with the blue vertices for which it is the unique white neighbor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcerMap {
    // sorted by target vertex
    entries: Vec<(usize, VertexSet)>,
}

impl ForcerMap {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// `(target, forcers)` pairs in ascending target order.
    pub fn iter(&self) -> impl Iterator<Item = &(usize, VertexSet)> {
        self.entries.iter()
    }

    pub fn forcers(&self, v: usize) -> Option<&VertexSet> {
        self.entries.binary_search_by_key(&v, |e| e.0).ok().map(|i| &self.entries[i].1)
    }

    /// Mask of all forceable white vertices.
    pub fn targets_mask(&self) -> u64 {
        self.entries.iter().fold(0, |m, (v, _)| m | 1 << v)
    }
}

pub fn forcing_candidates(g: &WeightedGraph, blue: &VertexSet) -> ForcerMap {
    let n = g.n();
    let mut forcers = vec![0u64; n];
    let mut targets = 0u64;
    for u in blue.iter() {
        let white = g.neighbor_mask(u) & !blue.bits();
        if white.count_ones() == 1 {
            let v = white.trailing_zeros() as usize;
            forcers[v] |= 1 << u;
            targets |= 1 << v;
        }
    }
    let entries =
        BitIter(targets).map(|v| (v, VertexSet::from_bits(n, forcers[v]).expect("forcers are vertices"))).collect();
    ForcerMap { entries }
}

/// Mask of vertices forceable from `blue`, without building the forcer sets.
pub(crate) fn forceable_mask(g: &WeightedGraph, blue: u64) -> u64 {
    let mut targets = 0;
    for u in BitIter(blue) {
        let white = g.neighbor_mask(u) & !blue;
        if white.count_ones() == 1 {
            targets |= white;
        }
    }
    targets
}

/// Fixed point of the color change rule with every force succeeding.
pub fn zf_closure(g: &WeightedGraph, b: &VertexSet) -> VertexSet {
    let mut blue = b.bits();
    loop {
        let next = blue | forceable_mask(g, blue);
        if next == blue {
            return VertexSet::from_bits(g.n(), blue).expect("closure stays in range");
        }
        blue = next;
    }
}

pub fn is_zfs(g: &WeightedGraph, b: &VertexSet) -> bool {
    zf_closure(g, b).is_full()
}

/// Zero forcing number together with every minimum zero forcing set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimumZfs {
    pub size: usize,
    /// Ascending lexicographic order of sorted members.
    pub sets: Vec<VertexSet>,
    pub subsets_tested: u64,
}

/// Calls `visit` on every `k`-subset of `0..n` in lexicographic order of
/// sorted members, stopping early when `visit` returns `false`.
fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(u64) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        if !visit(mask) {
            return;
        }
        // advance the rightmost index that still has room
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exhaustive search over subsets of increasing size. Stops with
/// [`Error::TooLarge`] once more than `budget` subsets would be tested.
pub fn minimum_zero_forcing_sets(g: &WeightedGraph, budget: u64) -> Result<MinimumZfs> {
    let n = g.n();
    let mut tested = 0u64;
    for k in 0..=n {
        let mut sets = Vec::new();
        let mut over_budget = false;
        for_each_combination(n, k, |mask| {
            tested += 1;
            if tested > budget {
                over_budget = true;
                return false;
            }
            let set = VertexSet::from_bits(n, mask).expect("combination in range");
            if is_zfs(g, &set) {
                sets.push(set);
            }
            true
        });
        if over_budget {
            return Err(Error::TooLarge(format!("zero forcing search exceeded the budget of {budget} subset tests")));
        }
        if !sets.is_empty() {
            return Ok(MinimumZfs { size: k, sets, subsets_tested: tested });
        }
    }
    unreachable!("the full vertex set is always a zero forcing set")
}

pub fn zf_number(g: &WeightedGraph) -> Result<usize> {
    Ok(minimum_zero_forcing_sets(g, DEFAULT_SUBSET_BUDGET)?.size)
}

pub fn enumerate_min_zfs(g: &WeightedGraph) -> Result<Vec<VertexSet>> {
    Ok(minimum_zero_forcing_sets(g, DEFAULT_SUBSET_BUDGET)?.sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, Family};

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn candidates_on_small_families() {
        let p3 = make_family(Family::Path { n: 3 }, &[0.5, 0.3]).unwrap();
        let fm = forcing_candidates(&p3, &set(3, &[0]));
        assert_eq!(fm.iter().cloned().collect::<Vec<_>>(), vec![(1, set(3, &[0]))]);

        let k3 = make_family(Family::Complete { n: 3 }, &[0.5; 3]).unwrap();
        let fm = forcing_candidates(&k3, &set(3, &[0, 1]));
        assert_eq!(fm.iter().cloned().collect::<Vec<_>>(), vec![(2, set(3, &[0, 1]))]);

        let star = make_family(Family::Star { leaves: 3 }, &[0.5; 3]).unwrap();
        let fm = forcing_candidates(&star, &set(4, &[1, 2]));
        assert_eq!(fm.iter().cloned().collect::<Vec<_>>(), vec![(0, set(4, &[1, 2]))]);
        assert_eq!(fm.forcers(0), Some(&set(4, &[1, 2])));
        assert_eq!(fm.forcers(3), None);
    }

    #[test]
    fn closure_examples() {
        let p4 = make_family(Family::Path { n: 4 }, &[0.5; 3]).unwrap();
        assert!(zf_closure(&p4, &set(4, &[0])).is_full());

        let c4 = make_family(Family::Cycle { n: 4 }, &[0.5; 4]).unwrap();
        assert_eq!(zf_closure(&c4, &set(4, &[0])), set(4, &[0]));
        assert!(is_zfs(&c4, &set(4, &[0, 1])));

        // center plus one leaf: the center still sees two white leaves
        let star = make_family(Family::Star { leaves: 3 }, &[0.5; 3]).unwrap();
        assert_eq!(zf_closure(&star, &set(4, &[0, 1])), set(4, &[0, 1]));
        assert!(!is_zfs(&star, &set(4, &[0, 1])));
    }

    #[test]
    fn zero_forcing_numbers() {
        let k4 = make_family(Family::Complete { n: 4 }, &[0.5; 6]).unwrap();
        assert_eq!(zf_number(&k4).unwrap(), 3);
        let c5 = make_family(Family::Cycle { n: 5 }, &[0.5; 5]).unwrap();
        assert_eq!(zf_number(&c5).unwrap(), 2);
        let star = make_family(Family::Star { leaves: 3 }, &[0.5; 3]).unwrap();
        assert_eq!(zf_number(&star).unwrap(), 2);
        let edgeless = WeightedGraph::new(3, []).unwrap();
        assert_eq!(zf_number(&edgeless).unwrap(), 3);
    }

    #[test]
    fn minimum_sets_in_lex_order() {
        let p3 = make_family(Family::Path { n: 3 }, &[0.5, 0.5]).unwrap();
        assert_eq!(enumerate_min_zfs(&p3).unwrap(), vec![set(3, &[0]), set(3, &[2])]);

        let c3 = make_family(Family::Cycle { n: 3 }, &[0.5; 3]).unwrap();
        let expected = vec![set(3, &[0, 1]), set(3, &[0, 2]), set(3, &[1, 2])];
        assert_eq!(enumerate_min_zfs(&c3).unwrap(), expected);
        let k3 = make_family(Family::Complete { n: 3 }, &[0.5; 3]).unwrap();
        assert_eq!(enumerate_min_zfs(&k3).unwrap(), expected);

        let mut seen = Vec::new();
        for_each_combination(4, 2, |m| {
            seen.push(m);
            true
        });
        assert_eq!(seen, vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
    }

    #[test]
    fn budget_is_enforced() {
        let k8 = make_family(Family::Complete { n: 8 }, &[0.5; 28]).unwrap();
        let err = minimum_zero_forcing_sets(&k8, 10).unwrap_err();
        assert_eq!(err.code(), "E_TOO_LARGE");
    }
}
