//! Finite undirected loopless multigraphs with stable vertex and edge ids.
//!
//! Parallel edges are distinct edges: every edge has its own id, assigned in
//! insertion order, and all queries report edge ids rather than endpoint
//! pairs.

mod canon;
mod edgeset;
pub mod io;

use std::collections::VecDeque;

pub use canon::CanonicalForm;
pub use edgeset::EdgeSet;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, Default)]
pub struct Multigraph {
    edges: Vec<(VertexId, VertexId)>,
    incidence: Vec<Vec<EdgeId>>,
    name: Option<String>,
}

/// A subgraph together with the ids its vertices and edges had in the parent.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Multigraph,
    pub vertex_origin: Vec<VertexId>,
    pub edge_origin: Vec<EdgeId>,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count() == other.vertex_count() && self.edges == other.edges
    }
}

impl Eq for Multigraph {}

impl Multigraph {
    pub fn new(vertex_count: usize) -> Self {
        Multigraph { edges: Vec::new(), incidence: vec![Vec::new(); vertex_count], name: None }
    }

    pub fn from_edges(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Self::new(vertex_count);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.incidence.push(Vec::new());
        self.incidence.len() - 1
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<EdgeId> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::Loop(a));
        }
        let id = self.edges.len();
        self.edges.push((a, b));
        self.incidence[a].push(id);
        self.incidence[b].push(id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count()
    }

    /// Endpoints of `e`. Panics on an invalid id; see [`Multigraph::check_edge`].
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Incident edge ids of `u` as a slice, in insertion order.
    pub fn incident(&self, u: VertexId) -> &[EdgeId] {
        &self.incidence[u]
    }

    pub fn check_vertex(&self, u: VertexId) -> Result<()> {
        if u < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: u, count: self.vertex_count() })
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e < self.edge_count() {
            Ok(())
        } else {
            Err(Error::InvalidEdge { edge: e, count: self.edge_count() })
        }
    }

    pub fn edge_set<I: IntoIterator<Item = EdgeId>>(&self, edges: I) -> Result<EdgeSet> {
        let mut s = EdgeSet::new(self.edge_count());
        for e in edges {
            self.check_edge(e)?;
            s.insert(e);
        }
        Ok(s)
    }

    /// The set of edges incident to `u`.
    pub fn incident_edges(&self, u: VertexId) -> Result<EdgeSet> {
        self.check_vertex(u)?;
        Ok(EdgeSet::from_edges(self.edge_count(), self.incidence[u].iter().copied()))
    }

    /// Edges with exactly one endpoint in `set`.
    pub fn boundary(&self, set: &[VertexId]) -> Result<EdgeSet> {
        let mut inside = vec![false; self.vertex_count()];
        for &u in set {
            self.check_vertex(u)?;
            inside[u] = true;
        }
        Ok(EdgeSet::from_edges(
            self.edge_count(),
            self.edges.iter().enumerate().filter(|(_, &(a, b))| inside[a] != inside[b]).map(|(e, _)| e),
        ))
    }

    pub fn degree(&self, u: VertexId) -> Result<usize> {
        self.check_vertex(u)?;
        Ok(self.incidence[u].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self, r: usize) -> bool {
        self.incidence.iter().all(|inc| inc.len() == r)
    }

    /// Number of edges joining `a` and `b`.
    pub fn multiplicity(&self, a: VertexId, b: VertexId) -> usize {
        self.incidence[a].iter().filter(|&&e| self.other_end(e, a) == b).count()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|&(a, b)| seen.insert((a.min(b), a.max(b))))
    }

    pub fn components(&self) -> Vec<Vec<VertexId>> {
        self.components_without(&EdgeSet::new(self.edge_count()))
    }

    fn components_without(&self, removed: &EdgeSet) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &e in &self.incidence[x] {
                    if removed.contains(e) {
                        continue;
                    }
                    let y = self.other_end(e, x);
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn induced_subgraph(&self, set: &[VertexId]) -> Result<Multigraph> {
        Ok(self.induced_subgraph_with_map(set)?.graph)
    }

    /// Vertex-induced subgraph; vertices are renumbered in the order given.
    pub fn induced_subgraph_with_map(&self, set: &[VertexId]) -> Result<Subgraph> {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &u) in set.iter().enumerate() {
            self.check_vertex(u)?;
            index[u] = i;
        }
        let mut graph = Multigraph::new(set.len());
        let mut edge_origin = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if index[a] != usize::MAX && index[b] != usize::MAX {
                graph.add_edge(index[a], index[b])?;
                edge_origin.push(e);
            }
        }
        Ok(Subgraph { graph, vertex_origin: set.to_vec(), edge_origin })
    }

    pub fn edge_induced_subgraph(&self, edges: &EdgeSet) -> Result<Multigraph> {
        Ok(self.edge_induced_subgraph_with_map(edges)?.graph)
    }

    /// Keeps exactly the given edges and the vertices they touch (in increasing id order).
    pub fn edge_induced_subgraph_with_map(&self, edges: &EdgeSet) -> Result<Subgraph> {
        let mut touched = vec![false; self.vertex_count()];
        let mut edge_origin = Vec::new();
        for e in edges.iter() {
            self.check_edge(e)?;
            let (a, b) = self.edges[e];
            touched[a] = true;
            touched[b] = true;
            edge_origin.push(e);
        }
        let vertex_origin: Vec<VertexId> = (0..self.vertex_count()).filter(|&v| touched[v]).collect();
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertex_origin.iter().enumerate() {
            index[v] = i;
        }
        let mut graph = Multigraph::new(vertex_origin.len());
        for &e in &edge_origin {
            let (a, b) = self.edges[e];
            graph.add_edge(index[a], index[b])?;
        }
        Ok(Subgraph { graph, vertex_origin, edge_origin })
    }

    /// The graph with edges in `removed` deleted; edge ids are renumbered.
    pub fn without_edges(&self, removed: &EdgeSet) -> Multigraph {
        let mut g = Multigraph::new(self.vertex_count());
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if !removed.contains(e) {
                g.edges.push((a, b));
                let id = g.edges.len() - 1;
                g.incidence[a].push(id);
                g.incidence[b].push(id);
            }
        }
        g
    }

    /// Whether deleting `cut` disconnects the graph. The graph itself must be connected.
    pub fn is_edge_cut(&self, cut: &EdgeSet) -> Result<bool> {
        for e in cut.iter() {
            self.check_edge(e)?;
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.components_without(cut).len() > 1)
    }

    /// All bridges, found with a low-link search that tells parallel edges apart by id.
    pub fn bridges(&self) -> EdgeSet {
        let n = self.vertex_count();
        let mut out = EdgeSet::new(self.edge_count());
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, edge used to enter, next incidence index)
            let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            while let Some(top) = stack.last_mut() {
                let (v, parent_edge) = (top.0, top.1);
                if top.2 < self.incidence[v].len() {
                    let e = self.incidence[v][top.2];
                    top.2 += 1;
                    if Some(e) == parent_edge {
                        continue;
                    }
                    let w = self.other_end(e, v);
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(e), Some(&(p, _, _))) = (parent_edge, stack.last()) {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.insert(e);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_bridgeless(&self) -> bool {
        self.bridges().is_empty()
    }

    /// Length of a shortest cycle; parallel edges form 2-cycles. `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        if !self.is_simple() {
            return Some(2);
        }
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut via = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &e in &self.incidence[x] {
                    if e == via[x] {
                        continue;
                    }
                    let y = self.other_end(e, x);
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        via[y] = e;
                        queue.push_back(y);
                    } else {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Relabels vertices by `perm` (old id -> new id) and reorders edges by `edge_perm`
    /// (new edge position -> old edge id). Used to build isomorphic copies.
    pub fn permuted(&self, perm: &[VertexId], edge_perm: &[EdgeId]) -> Result<Multigraph> {
        if perm.len() != self.vertex_count() || edge_perm.len() != self.edge_count() {
            return Err(Error::InvalidParameter("permutation length mismatch".into()));
        }
        let mut g = Multigraph::new(self.vertex_count());
        for &old in edge_perm {
            let (a, b) = self.edges[old];
            g.add_edge(perm[a], perm[b])?;
        }
        Ok(g)
    }

    /// Disjoint union; the vertices and edges of `other` are shifted after ours.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let shift = self.vertex_count();
        let mut g = self.clone();
        g.name = None;
        for _ in 0..other.vertex_count() {
            g.add_vertex();
        }
        for &(a, b) in &other.edges {
            g.add_edge(a + shift, b + shift).expect("shifted ids are valid");
        }
        g
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canon::canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &Multigraph) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.edge_count() == other.edge_count()
            && {
                let mut d1 = self.degrees();
                let mut d2 = other.degrees();
                d1.sort_unstable();
                d2.sort_unstable();
                d1 == d2
            }
            && self.canonical_form() == other.canonical_form()
    }
}
