//! Matchings, exact chromatic index, regular edge sets and exposed copies.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Multigraph, VertexId};
use crate::named;

/// Edge cap for the exact chromatic-index search.
pub const CHROMATIC_EDGE_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub edges: EdgeSet,
    pub is_perfect: bool,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

pub fn is_matching(g: &Multigraph, edges: &EdgeSet) -> bool {
    let mut covered = vec![false; g.vertex_count()];
    for e in edges.iter() {
        let (a, b) = g.endpoints(e);
        if covered[a] || covered[b] {
            return false;
        }
        covered[a] = true;
        covered[b] = true;
    }
    true
}

pub fn is_perfect_matching(g: &Multigraph, edges: &EdgeSet) -> bool {
    is_matching(g, edges) && 2 * edges.len() == g.vertex_count()
}

/// Lazily yields every matching with at least `min_size` edges, each exactly once.
///
/// Edges are decided in id order (include before exclude), so the stream is
/// deterministic.
pub fn enumerate_matchings(g: &Multigraph, min_size: usize) -> Matchings<'_> {
    let frame = Frame { next: 0, chosen: Vec::new(), covered: vec![false; g.vertex_count()], free: g.vertex_count() };
    Matchings { g, min_size, stack: vec![frame] }
}

pub struct Matchings<'a> {
    g: &'a Multigraph,
    min_size: usize,
    stack: Vec<Frame>,
}

struct Frame {
    next: EdgeId,
    chosen: Vec<EdgeId>,
    covered: Vec<bool>,
    free: usize,
}

impl Iterator for Matchings<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        let m = self.g.edge_count();
        while let Some(f) = self.stack.pop() {
            let reachable = f.chosen.len() + (f.free / 2).min(m - f.next);
            if reachable < self.min_size {
                continue;
            }
            if f.next == m {
                let edges = EdgeSet::from_edges(m, f.chosen.iter().copied());
                let is_perfect = f.free == 0;
                return Some(Matching { edges, is_perfect });
            }
            let e = f.next;
            let (a, b) = self.g.endpoints(e);
            let can_take = !f.covered[a] && !f.covered[b];
            let take = can_take.then(|| {
                let mut covered = f.covered.clone();
                covered[a] = true;
                covered[b] = true;
                let mut chosen = f.chosen.clone();
                chosen.push(e);
                Frame { next: e + 1, chosen, covered, free: f.free - 2 }
            });
            self.stack.push(Frame { next: e + 1, ..f });
            if let Some(t) = take {
                self.stack.push(t);
            }
        }
        None
    }
}

/// All perfect matchings, found by always matching the lowest uncovered vertex.
pub fn perfect_matchings(g: &Multigraph) -> Vec<EdgeSet> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n % 2 == 1 {
        return out;
    }
    let mut covered = vec![false; n];
    let mut chosen = Vec::with_capacity(n / 2);
    pm_rec(g, &mut covered, &mut chosen, 0, &mut out);
    out
}

fn pm_rec(g: &Multigraph, covered: &mut [bool], chosen: &mut Vec<EdgeId>, from: VertexId, out: &mut Vec<EdgeSet>) {
    let Some(v) = (from..g.vertex_count()).find(|&v| !covered[v]) else {
        out.push(EdgeSet::from_edges(g.edge_count(), chosen.iter().copied()));
        return;
    };
    covered[v] = true;
    for &e in g.incident(v) {
        let w = g.other_end(e, v);
        if covered[w] {
            continue;
        }
        covered[w] = true;
        chosen.push(e);
        pm_rec(g, covered, chosen, v + 1, out);
        chosen.pop();
        covered[w] = false;
    }
    covered[v] = false;
}

pub fn perfect_matching_count(g: &Multigraph) -> usize {
    perfect_matchings(g).len()
}

/// A pair of edge-disjoint perfect matchings, if one exists.
pub fn two_disjoint_perfect_matchings(g: &Multigraph) -> Option<(EdgeSet, EdgeSet)> {
    let pms = perfect_matchings(g);
    for (i, a) in pms.iter().enumerate() {
        if let Some(b) = pms[i + 1..].iter().find(|b| a.is_disjoint(b)) {
            return Some((a.clone(), b.clone()));
        }
    }
    None
}

pub fn has_two_disjoint_perfect_matchings(g: &Multigraph) -> bool {
    two_disjoint_perfect_matchings(g).is_some()
}

/// Whether the edges can be properly coloured with `k` colours.
pub fn is_edge_colourable(g: &Multigraph, k: usize) -> Result<bool> {
    if g.edge_count() > CHROMATIC_EDGE_LIMIT {
        return Err(Error::TooLarge { what: "edge count", actual: g.edge_count(), limit: CHROMATIC_EDGE_LIMIT });
    }
    if g.max_degree() > k {
        return Ok(false);
    }
    if g.edge_count() == 0 {
        return Ok(true);
    }
    let mut colour = vec![usize::MAX; g.edge_count()];
    // per-vertex bitmask of colours in use (k <= 64 since degree <= edges <= 64)
    let mut used = vec![0u64; g.vertex_count()];
    Ok(colour_rec(g, k, &mut colour, &mut used, 0, 0))
}

fn colour_rec(g: &Multigraph, k: usize, colour: &mut [usize], used: &mut [u64], done: usize, opened: usize) -> bool {
    if done == g.edge_count() {
        return true;
    }
    let full = if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
    // most saturated uncoloured edge first
    let mut best: Option<(u32, EdgeId)> = None;
    for (e, &c) in colour.iter().enumerate() {
        if c != usize::MAX {
            continue;
        }
        let (a, b) = g.endpoints(e);
        let avail = (full & !(used[a] | used[b])).count_ones();
        if best.is_none_or(|(bv, _)| avail < bv) {
            best = Some((avail, e));
        }
    }
    let (avail, e) = best.expect("an uncoloured edge remains");
    if avail == 0 {
        return false;
    }
    let (a, b) = g.endpoints(e);
    // colours beyond the first unopened one are interchangeable
    let limit = (opened + 1).min(k);
    for c in 0..limit {
        if (used[a] | used[b]) & (1 << c) != 0 {
            continue;
        }
        colour[e] = c;
        used[a] |= 1 << c;
        used[b] |= 1 << c;
        if colour_rec(g, k, colour, used, done + 1, opened.max(c + 1)) {
            return true;
        }
        used[a] &= !(1 << c);
        used[b] &= !(1 << c);
        colour[e] = usize::MAX;
    }
    false
}

/// Minimum number of colours in a proper edge-colouring.
pub fn chromatic_index(g: &Multigraph) -> Result<usize> {
    let mut k = g.max_degree();
    loop {
        if is_edge_colourable(g, k)? {
            return Ok(k);
        }
        k += 1;
    }
}

/// Whether every vertex touched by `edges` has exactly `k` incident edges in `edges`.
pub fn spanning_regular_check(g: &Multigraph, edges: &EdgeSet, k: usize) -> bool {
    let mut count = vec![0usize; g.vertex_count()];
    for e in edges.iter() {
        let (a, b) = g.endpoints(e);
        count[a] += 1;
        count[b] += 1;
    }
    count.iter().all(|&c| c == 0 || c == k)
}

/// Every 4-vertex set `X` with `G[X] ≅ S4+kM` whose three heavy vertices have
/// degree `k + 3` in `G` (no edges leaving `X` from them). Sets are sorted.
pub fn exposed_copies(g: &Multigraph, k: usize) -> Vec<[VertexId; 4]> {
    let pattern = named::s4_plus_km(k).expect("k is non-negative").graph.canonical_form();
    let heavy: Vec<bool> = g.degrees().iter().map(|&d| d == k + 3).collect();
    let n = g.vertex_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let x = [a, b, c, d];
                    if x.iter().filter(|&&v| heavy[v]).count() < 3 {
                        continue;
                    }
                    let sub = g.induced_subgraph(&x).expect("ids are valid");
                    if sub.edge_count() != 2 * k + 5 {
                        continue;
                    }
                    let inner = sub.degrees();
                    let full_heavy = (0..4).filter(|&i| inner[i] == k + 3).all(|i| heavy[x[i]]);
                    if full_heavy && sub.canonical_form() == pattern {
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn triangle() -> Multigraph {
        Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn matchings_of_triangle() {
        assert_eq!(enumerate_matchings(&triangle(), 2).count(), 0);
        // empty matching plus three single edges
        assert_eq!(enumerate_matchings(&triangle(), 0).count(), 4);
    }

    #[test]
    fn s4_has_two_perfect_matchings_with_one_pairing() {
        let s4 = named::s4().graph;
        let pms: Vec<_> = enumerate_matchings(&s4, 2).filter(|m| m.is_perfect).collect();
        assert_eq!(pms.len(), 2);
        let pairings: std::collections::BTreeSet<Vec<(usize, usize)>> = pms
            .iter()
            .map(|m| {
                let mut p: Vec<_> = m.edges.iter().map(|e| s4.endpoints(e)).map(|(a, b)| (a.min(b), a.max(b))).collect();
                p.sort();
                p
            })
            .collect();
        assert_eq!(pairings.len(), 1);
    }

    #[test]
    fn petersen_perfect_matchings() {
        let p = named::petersen().graph;
        assert_eq!(perfect_matching_count(&p), 6);
        for m in enumerate_matchings(&p, 5) {
            assert!(m.is_perfect);
        }
    }

    #[test]
    fn matching_stream_invariants() {
        let g = named::s12().graph;
        let mut seen = std::collections::HashSet::new();
        for m in enumerate_matchings(&g, 0) {
            assert!(is_matching(&g, &m.edges));
            assert_eq!(m.is_perfect, 2 * m.len() == g.vertex_count());
            assert!(seen.insert(m.edges.clone()));
        }
        assert_eq!(seen.iter().filter(|m| 2 * m.len() == 12).count(), perfect_matching_count(&g));
    }

    #[test]
    fn disjoint_perfect_matchings() {
        assert!(has_two_disjoint_perfect_matchings(&named::t_k2(4).unwrap().graph));
        assert!(!has_two_disjoint_perfect_matchings(&named::s10().graph));
        assert_eq!(perfect_matching_count(&named::s10().graph), 0);
        let (a, b) = two_disjoint_perfect_matchings(&named::s12_plus_km(1).unwrap().graph).unwrap();
        assert!(a.is_disjoint(&b));
    }

    #[test]
    fn chromatic_indices() {
        assert_eq!(chromatic_index(&named::petersen().graph).unwrap(), 4);
        assert_eq!(chromatic_index(&named::t_k2(5).unwrap().graph).unwrap(), 5);
        assert_eq!(chromatic_index(&named::complete(5).unwrap().graph).unwrap(), 5);
        assert_eq!(chromatic_index(&named::complete(4).unwrap().graph).unwrap(), 3);
        assert_eq!(chromatic_index(&Multigraph::new(3)).unwrap(), 0);
    }

    #[test]
    fn chromatic_index_guard() {
        let big = named::complete(12).unwrap().graph;
        assert!(matches!(chromatic_index(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn regular_edge_sets() {
        let p = named::petersen();
        let outer: Vec<_> = ["u1u2", "u2u3", "u3u4", "u4u5", "u1u5"].iter().map(|l| p.edge(l)).collect();
        assert!(spanning_regular_check(&p.graph, &EdgeSet::from_edges(15, outer), 2));
        for m in perfect_matchings(&p.graph) {
            assert!(spanning_regular_check(&p.graph, &m, 1));
        }
        let (a, b) = two_disjoint_perfect_matchings(&named::s12_plus_km(1).unwrap().graph).unwrap();
        assert!(spanning_regular_check(&named::s12_plus_km(1).unwrap().graph, &a.union(&b), 2));
    }

    #[test]
    fn exposed_copy_counts() {
        assert_eq!(exposed_copies(&named::s10().graph, 0).len(), 3);
        assert_eq!(exposed_copies(&named::s12().graph, 0).len(), 3);
        assert_eq!(exposed_copies(&named::s12_plus_km(1).unwrap().graph, 1).len(), 3);
        assert_eq!(exposed_copies(&named::petersen().graph, 0).len(), 0);
    }
}
