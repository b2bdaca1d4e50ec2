//! Exact search for H-colourings of a guest by a fixed host.
//!
//! Backtracking assigns host edges to guest edges. Every guest vertex keeps a
//! domain of host vertices it may map to: initially every host vertex of the
//! same degree, then the endpoints of the first host edge used at it,
//! intersected with each later one. Once all edges at a vertex are assigned,
//! a non-empty domain is exactly the vertex condition, since the images are
//! distinct edges incident to a vertex of equal degree.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::Result;
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::structure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Stop at the first colouring.
    First,
    /// Collect every colouring.
    All,
    /// Count colourings without storing them.
    Count,
}

#[derive(Clone, Debug, Default)]
pub struct Limits {
    /// Maximum number of search nodes (edge assignments tried).
    pub nodes: Option<u64>,
    pub time: Option<Duration>,
}

impl Limits {
    pub fn nodes(n: u64) -> Self {
        Limits { nodes: Some(n), time: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Sat,
    Unsat,
    /// A limit stopped the search before it could decide.
    Unknown,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub nodes: u64,
    pub prunes: u64,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub outcome: Outcome,
    /// Edge maps, guest edge id to host edge id. One entry in `First` mode, none in `Count` mode.
    pub colourings: Vec<Vec<EdgeId>>,
    /// Labelled colourings found; exact unless the outcome is `Unknown`.
    pub count: u128,
    pub stats: Stats,
}

/// Solves each guest component separately and combines the results.
pub fn solve(host: &Multigraph, guest: &Multigraph, mode: Mode, limits: &Limits) -> Result<Solution> {
    // The clock is read only under a time limit: wasm32 has no `Instant`.
    let start = limits.time.map(|_| Instant::now());
    let mut stats = Stats::default();
    let mut total: u128 = 1;
    let mut combined: Vec<Vec<EdgeId>> = vec![vec![usize::MAX; guest.edge_count()]];
    let mut unknown = false;
    let host_has_isolated = host.vertices().any(|v| host.incident(v).is_empty());

    for comp in guest.components() {
        let sub = guest.induced_subgraph_with_map(&comp)?;
        if sub.graph.edge_count() == 0 {
            if !host_has_isolated {
                return Ok(Solution { outcome: Outcome::Unsat, colourings: Vec::new(), count: 0, stats });
            }
            continue;
        }
        let remaining = Limits {
            nodes: limits.nodes.map(|n| n.saturating_sub(stats.nodes)),
            time: limits.time.zip(start).map(|(t, s)| t.saturating_sub(s.elapsed())),
        };
        let part = Search::new(host, &sub.graph, mode, &remaining).run();
        stats.nodes += part.stats.nodes;
        stats.prunes += part.stats.prunes;
        match part.outcome {
            Outcome::Unsat => {
                return Ok(Solution { outcome: Outcome::Unsat, colourings: Vec::new(), count: 0, stats });
            }
            Outcome::Unknown => unknown = true,
            Outcome::Sat => {}
        }
        total = total.saturating_mul(part.count);
        if mode != Mode::Count {
            let mut next = Vec::with_capacity(combined.len() * part.colourings.len());
            for base in &combined {
                for local in &part.colourings {
                    let mut map = base.clone();
                    for (i, &h) in local.iter().enumerate() {
                        map[sub.edge_origin[i]] = h;
                    }
                    next.push(map);
                }
            }
            combined = next;
        }
        if unknown {
            break;
        }
    }

    let outcome = if unknown { Outcome::Unknown } else { Outcome::Sat };
    if mode == Mode::Count || unknown {
        combined.clear();
    }
    if unknown && mode == Mode::First {
        total = 0;
    }
    Ok(Solution { outcome, colourings: combined, count: total, stats })
}

/// Whether `host` colours `guest`, or `None` if the limits were hit.
pub fn colours(host: &Multigraph, guest: &Multigraph, limits: &Limits) -> Result<Option<Vec<EdgeId>>> {
    let s = solve(host, guest, Mode::First, limits)?;
    Ok(match s.outcome {
        Outcome::Sat => Some(s.colourings.into_iter().next().unwrap_or_default()),
        _ => None,
    })
}

/// A `tK2`-colouring exists iff the guest is `t`-regular and `t`-edge-colourable.
pub fn tk2_colourable(guest: &Multigraph, t: usize) -> Result<bool> {
    if !guest.is_regular(t) {
        return Ok(false);
    }
    structure::is_edge_colourable(guest, t)
}

/// Host vertices a guest vertex may still map to.
#[derive(Clone, Copy, Debug)]
enum Domain {
    /// No edge assigned yet: any host vertex of equal degree.
    Any,
    /// One or two candidates (`b == a` for a single one).
    Pair(VertexId, VertexId),
    Empty,
}

impl Domain {
    fn contains(self, x: VertexId) -> bool {
        match self {
            Domain::Any => true,
            Domain::Pair(a, b) => x == a || x == b,
            Domain::Empty => false,
        }
    }
}

struct Search<'a> {
    host: &'a Multigraph,
    guest: &'a Multigraph,
    mode: Mode,
    node_limit: u64,
    deadline: Option<Instant>,
    guest_degree: Vec<usize>,
    host_degree: Vec<usize>,
    dom: Vec<Domain>,
    assign: Vec<Option<EdgeId>>,
    assigned_at: Vec<usize>,
    rank: Vec<usize>,
    stats: Stats,
    found: Vec<Vec<EdgeId>>,
    count: u128,
    stopped: bool,
}

impl<'a> Search<'a> {
    fn new(host: &'a Multigraph, guest: &'a Multigraph, mode: Mode, limits: &Limits) -> Self {
        Search {
            host,
            guest,
            mode,
            node_limit: limits.nodes.unwrap_or(u64::MAX),
            deadline: limits.time.map(|t| Instant::now() + t),
            guest_degree: guest.degrees(),
            host_degree: host.degrees(),
            dom: vec![Domain::Any; guest.vertex_count()],
            assign: vec![None; guest.edge_count()],
            assigned_at: vec![0; guest.vertex_count()],
            rank: bfs_edge_rank(guest),
            stats: Stats::default(),
            found: Vec::new(),
            count: 0,
            stopped: false,
        }
    }

    fn run(mut self) -> Solution {
        let degrees_fit = self
            .guest_degree
            .iter()
            .all(|&d| self.host_degree.contains(&d));
        if degrees_fit {
            self.rec();
        }
        let outcome = if self.stopped {
            if self.mode == Mode::First && !self.found.is_empty() {
                Outcome::Sat
            } else {
                Outcome::Unknown
            }
        } else if self.count > 0 {
            Outcome::Sat
        } else {
            Outcome::Unsat
        };
        Solution { outcome, colourings: self.found, count: self.count, stats: self.stats }
    }

    fn intersect(&self, u: VertexId, a: VertexId, b: VertexId) -> Domain {
        let fits = |x: VertexId| self.host_degree[x] == self.guest_degree[u];
        let keep = |x: VertexId| match self.dom[u] {
            Domain::Any => fits(x),
            d => d.contains(x),
        };
        match (keep(a), keep(b)) {
            (true, true) => Domain::Pair(a, b),
            (true, false) => Domain::Pair(a, a),
            (false, true) => Domain::Pair(b, b),
            (false, false) => Domain::Empty,
        }
    }

    fn used_at(&self, u: VertexId, h: EdgeId) -> bool {
        self.guest.incident(u).iter().any(|&e| self.assign[e] == Some(h))
    }

    fn usable(&self, e: EdgeId, h: EdgeId) -> bool {
        let (u, w) = self.guest.endpoints(e);
        let (a, b) = self.host.endpoints(h);
        !matches!(self.intersect(u, a, b), Domain::Empty)
            && !matches!(self.intersect(w, a, b), Domain::Empty)
            && !self.used_at(u, h)
            && !self.used_at(w, h)
    }

    /// Host edges worth trying for guest edge `e`, in increasing id order.
    fn candidates(&self, e: EdgeId) -> Vec<EdgeId> {
        let (u, w) = self.guest.endpoints(e);
        let pool: Vec<EdgeId> = match (self.dom[u], self.dom[w]) {
            (Domain::Pair(a, b), _) | (_, Domain::Pair(a, b)) => {
                let mut v: Vec<EdgeId> = self.host.incident(a).to_vec();
                if b != a {
                    v.extend_from_slice(self.host.incident(b));
                    v.sort_unstable();
                    v.dedup();
                }
                v
            }
            (Domain::Empty, _) | (_, Domain::Empty) => Vec::new(),
            (Domain::Any, Domain::Any) => (0..self.host.edge_count()).collect(),
        };
        pool.into_iter().filter(|&h| self.usable(e, h)).collect()
    }

    fn has_candidate(&self, e: EdgeId) -> bool {
        let (u, w) = self.guest.endpoints(e);
        match (self.dom[u], self.dom[w]) {
            (Domain::Pair(a, b), _) | (_, Domain::Pair(a, b)) => {
                self.host.incident(a).iter().chain(self.host.incident(b)).any(|&h| self.usable(e, h))
            }
            _ => true,
        }
    }

    fn next_edge(&self) -> Option<EdgeId> {
        let mut best: Option<(usize, std::cmp::Reverse<usize>, EdgeId)> = None;
        for e in 0..self.guest.edge_count() {
            if self.assign[e].is_some() {
                continue;
            }
            let (u, w) = self.guest.endpoints(e);
            let key = (self.assigned_at[u] + self.assigned_at[w], std::cmp::Reverse(self.rank[e]), e);
            if best.is_none_or(|b| (key.0, key.1) > (b.0, b.1)) {
                best = Some(key);
            }
        }
        best.map(|b| b.2)
    }

    fn out_of_budget(&mut self) -> bool {
        if self.stats.nodes >= self.node_limit {
            return true;
        }
        if let Some(d) = self.deadline {
            if self.stats.nodes.is_multiple_of(1024) && Instant::now() >= d {
                return true;
            }
        }
        false
    }

    fn rec(&mut self) {
        let Some(e) = self.next_edge() else {
            self.count += 1;
            if self.mode != Mode::Count {
                self.found.push(self.assign.iter().map(|h| h.expect("complete")).collect());
            }
            if self.mode == Mode::First {
                self.stopped = true;
            }
            return;
        };
        let (u, w) = self.guest.endpoints(e);
        for h in self.candidates(e) {
            if self.out_of_budget() {
                self.stopped = true;
            }
            if self.stopped {
                return;
            }
            self.stats.nodes += 1;
            let (a, b) = self.host.endpoints(h);
            let saved = (self.dom[u], self.dom[w]);
            let du = self.intersect(u, a, b);
            self.dom[u] = du;
            let dw = self.intersect(w, a, b);
            self.dom[w] = dw;
            self.assign[e] = Some(h);
            self.assigned_at[u] += 1;
            self.assigned_at[w] += 1;

            let consistent = !matches!(self.dom[u], Domain::Empty)
                && !matches!(self.dom[w], Domain::Empty)
                && self.neighbours_alive(u)
                && self.neighbours_alive(w);
            if consistent {
                self.rec();
            } else {
                self.stats.prunes += 1;
            }

            self.assigned_at[u] -= 1;
            self.assigned_at[w] -= 1;
            self.assign[e] = None;
            self.dom[u] = saved.0;
            self.dom[w] = saved.1;
        }
    }

    fn neighbours_alive(&self, u: VertexId) -> bool {
        self.guest.incident(u).iter().all(|&f| self.assign[f].is_some() || self.has_candidate(f))
    }
}

/// Edge positions in breadth-first discovery order from a maximum-degree root.
fn bfs_edge_rank(g: &Multigraph) -> Vec<usize> {
    let mut rank = vec![usize::MAX; g.edge_count()];
    let mut seen = vec![false; g.vertex_count()];
    let mut next = 0;
    let mut roots: Vec<VertexId> = g.vertices().collect();
    roots.sort_by_key(|&v| (std::cmp::Reverse(g.incident(v).len()), v));
    for root in roots {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &e in g.incident(x) {
                if rank[e] == usize::MAX {
                    rank[e] = next;
                    next += 1;
                }
                let y = g.other_end(e, x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    rank
}

/// Guest edges sorted by [`bfs_edge_rank`].
pub fn bfs_edge_order(g: &Multigraph) -> Vec<EdgeId> {
    let rank = bfs_edge_rank(g);
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    order.sort_by_key(|&e| rank[e]);
    order
}
