//! Enumeration of every splitted image a guest can have, over all hosts.
//!
//! An H-colouring is encoded without fixing H as a partition of the guest
//! edges into colour classes. The type of a vertex is the set of classes on
//! its edges. The partition comes from a colouring iff it is proper and each
//! class lies in at most two distinct types. The realized graph has one
//! vertex per type, one edge per class joining the types that contain it, and
//! a fresh leaf where only one type does: that graph is the splitted image.
//!
//! The search assigns classes edge by edge. A new class is only ever the next
//! unused id, so each set partition is reached once. Besides properness it
//! prunes with the two-type condition: for a class `c`, two vertices holding
//! `c` must get different types when their degrees differ or their partial
//! class sets cannot fit in one type. This "must differ" graph has to be
//! bipartite, and each side of a connected piece must fit in one type.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::colouring::{Colouring, ImageGraph};
use crate::error::{Error, Result};
use crate::graph::{CanonicalForm, EdgeId, Multigraph, VertexId};
use crate::solver::bfs_edge_order;

/// Hard cap on guest size: class and vertex sets are 64-bit masks.
pub const MAX_GUEST_EDGES: usize = 64;
pub const MAX_GUEST_VERTICES: usize = 64;

/// Colour classes of the guest edges, in restricted-growth form along the
/// breadth-first edge order of the guest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypePartition {
    classes: Vec<usize>,
}

impl TypePartition {
    /// Validates `classes` against `guest` and normalizes the labels.
    pub fn new(guest: &Multigraph, classes: Vec<usize>) -> Result<Self> {
        if classes.len() != guest.edge_count() {
            return Err(Error::InvalidPartition(format!(
                "{} labels for {} edges",
                classes.len(),
                guest.edge_count()
            )));
        }
        let p = TypePartition { classes }.normalized(guest);
        for u in guest.vertices() {
            let mut seen: Vec<usize> = guest.incident(u).iter().map(|&e| p.classes[e]).collect();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidPartition(format!("two edges at vertex {u} share a class")));
            }
        }
        for (c, types) in p.class_types(guest).iter().enumerate() {
            if types.len() > 2 {
                return Err(Error::InvalidPartition(format!("class {c} lies in {} distinct types", types.len())));
            }
        }
        Ok(p)
    }

    /// Every edge in its own class.
    pub fn discrete(guest: &Multigraph) -> Self {
        TypePartition { classes: (0..guest.edge_count()).collect() }.normalized(guest)
    }

    fn normalized(mut self, guest: &Multigraph) -> Self {
        let mut relabel: BTreeMap<usize, usize> = BTreeMap::new();
        for e in bfs_edge_order(guest) {
            let next = relabel.len();
            relabel.entry(self.classes[e]).or_insert(next);
        }
        for c in &mut self.classes {
            *c = relabel[c];
        }
        self
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.iter().max().map_or(0, |&c| c + 1)
    }

    /// Type of each guest vertex as a sorted class list.
    pub fn types(&self, guest: &Multigraph) -> Vec<Vec<usize>> {
        guest
            .vertices()
            .map(|u| {
                let mut t: Vec<usize> = guest.incident(u).iter().map(|&e| self.classes[e]).collect();
                t.sort_unstable();
                t
            })
            .collect()
    }

    /// Distinct types (as indices into the distinct-type list) containing each class.
    fn class_types(&self, guest: &Multigraph) -> Vec<Vec<usize>> {
        let (_, of_vertex) = self.distinct_types(guest);
        let mut out = vec![Vec::new(); self.class_count()];
        for u in guest.vertices() {
            for &e in guest.incident(u) {
                let list: &mut Vec<usize> = &mut out[self.classes[e]];
                if !list.contains(&of_vertex[u]) {
                    list.push(of_vertex[u]);
                }
            }
        }
        out
    }

    /// Distinct types in order of first appearance by vertex id, and each vertex's index among them.
    fn distinct_types(&self, guest: &Multigraph) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut distinct: Vec<Vec<usize>> = Vec::new();
        let mut of_vertex = Vec::with_capacity(guest.vertex_count());
        for t in self.types(guest) {
            let idx = match distinct.iter().position(|d| *d == t) {
                Some(i) => i,
                None => {
                    distinct.push(t);
                    distinct.len() - 1
                }
            };
            of_vertex.push(idx);
        }
        (distinct, of_vertex)
    }
}

/// Builds the splitted image of `p`: one vertex per type, one edge per class
/// (edge id = class id), a fresh leaf for every class held by a single type.
/// The witness colours `guest` by the result.
pub fn realize_image(guest: &Arc<Multigraph>, p: &TypePartition) -> Result<ImageGraph> {
    if p.classes.len() != guest.edge_count() {
        return Err(Error::InvalidPartition("partition does not cover the guest".into()));
    }
    let (distinct, _) = p.distinct_types(guest);
    let class_types = p.class_types(guest);
    let mut g = Multigraph::new(distinct.len());
    for (c, types) in class_types.iter().enumerate() {
        let (a, b) = match types.as_slice() {
            [a] => (*a, g.add_vertex()),
            [a, b] => (*a, *b),
            _ => return Err(Error::InvalidPartition(format!("class {c} lies in {} distinct types", types.len()))),
        };
        g.add_edge(a, b)?;
    }
    let graph = Arc::new(g);
    let witness = Colouring::validated(graph.clone(), guest.clone(), p.classes.clone())?;
    let mut image = ImageGraph::from_parts(graph, (0..distinct.len()).collect());
    image.witness = Some(witness);
    Ok(image)
}

#[derive(Clone, Debug)]
pub struct AtlasEntry {
    pub form: CanonicalForm,
    pub image: ImageGraph,
    /// Number of labelled partitions realizing this image.
    pub multiplicity: u64,
    /// The first partition found for this image.
    pub witness: TypePartition,
}

#[derive(Clone, Debug)]
pub struct ImageAtlas {
    /// Sorted by order, size, then canonical form.
    pub entries: Vec<AtlasEntry>,
    /// False when the node limit stopped the search.
    pub complete: bool,
    pub nodes: u64,
    pub partitions: u64,
    /// The guest is `t`-regular and `t`-edge-colourable, so `tK2` colours it.
    pub tk2: bool,
}

impl ImageAtlas {
    pub fn contains_isomorph(&self, g: &Multigraph) -> bool {
        let form = g.canonical_form();
        self.entries.iter().any(|e| e.form == form)
    }
}

/// Enumerates all splitted images of `guest` up to isomorphism.
///
/// `node_limit` bounds the number of class assignments; when it is hit the
/// atlas is returned with `complete == false`.
pub fn enumerate_splitted_images(guest: &Multigraph, node_limit: Option<u64>) -> Result<ImageAtlas> {
    if !guest.is_connected() || guest.vertex_count() <= 2 {
        return Err(Error::InvalidParameter("image enumeration needs a connected guest with more than 2 vertices".into()));
    }
    if guest.edge_count() > MAX_GUEST_EDGES {
        return Err(Error::TooLarge { what: "guest edge count", actual: guest.edge_count(), limit: MAX_GUEST_EDGES });
    }
    if guest.vertex_count() > MAX_GUEST_VERTICES {
        return Err(Error::TooLarge {
            what: "guest vertex count",
            actual: guest.vertex_count(),
            limit: MAX_GUEST_VERTICES,
        });
    }
    let guest = Arc::new(guest.clone());
    let mut s = Enumerator::new(&guest, node_limit.unwrap_or(u64::MAX));
    s.rec()?;
    let mut entries: Vec<AtlasEntry> = s.found.into_values().collect();
    entries.sort_by(|a, b| {
        let key = |e: &AtlasEntry| (e.image.graph.vertex_count(), e.image.graph.edge_count());
        key(a).cmp(&key(b)).then_with(|| a.form.cmp(&b.form))
    });
    Ok(ImageAtlas { entries, complete: !s.stopped, nodes: s.nodes, partitions: s.partitions, tk2: s.tk2 })
}

const NONE: usize = usize::MAX;

struct Enumerator<'a> {
    guest: &'a Arc<Multigraph>,
    deg: Vec<u32>,
    ends: Vec<(VertexId, VertexId)>,
    rank: Vec<usize>,
    class: Vec<usize>,
    class_edges: Vec<Vec<EdgeId>>,
    /// Classes on the assigned edges at each vertex.
    partial: Vec<u64>,
    assigned: Vec<u32>,
    /// Distinct complete types holding each class, with how many vertices have them.
    complete_types: Vec<Vec<(u64, u32)>>,
    nodes: u64,
    limit: u64,
    stopped: bool,
    partitions: u64,
    tk2: bool,
    found: BTreeMap<CanonicalForm, AtlasEntry>,
}

impl<'a> Enumerator<'a> {
    fn new(guest: &'a Arc<Multigraph>, limit: u64) -> Self {
        let m = guest.edge_count();
        let mut rank = vec![0; m];
        for (i, e) in bfs_edge_order(guest).into_iter().enumerate() {
            rank[e] = i;
        }
        Enumerator {
            guest,
            deg: guest.degrees().into_iter().map(|d| d as u32).collect(),
            ends: guest.edges().to_vec(),
            rank,
            class: vec![NONE; m],
            class_edges: Vec::new(),
            partial: vec![0; guest.vertex_count()],
            assigned: vec![0; guest.vertex_count()],
            complete_types: Vec::new(),
            nodes: 0,
            limit,
            stopped: false,
            partitions: 0,
            tk2: false,
            found: BTreeMap::new(),
        }
    }

    /// Whether vertex `x` can take class `c` next without leaving the types already fixed for its classes.
    fn fits(&self, x: VertexId, c: usize) -> bool {
        let grown = self.partial[x] | (1 << c);
        let deg = self.deg[x];
        let mut held = self.partial[x] | if c < self.complete_types.len() { 1 << c } else { 0 };
        while held != 0 {
            let d = held.trailing_zeros() as usize;
            held &= held - 1;
            let types = &self.complete_types[d];
            if types.len() == 2 && !types.iter().any(|&(t, _)| t & grown == grown && t.count_ones() == deg) {
                return false;
            }
        }
        true
    }

    fn candidates(&self, e: EdgeId, out: &mut Vec<usize>) {
        out.clear();
        let (u, w) = self.ends[e];
        let taken = self.partial[u] | self.partial[w];
        for c in 0..=self.class_edges.len() {
            if c >= MAX_GUEST_EDGES {
                break;
            }
            if taken & (1 << c) == 0 && self.fits(u, c) && self.fits(w, c) {
                out.push(c);
            }
        }
    }

    fn set_complete(&mut self, x: VertexId, add: bool) {
        let t = self.partial[x];
        let mut bits = t;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let list = &mut self.complete_types[c];
            let pos = list.iter().position(|&(s, _)| s == t);
            match (add, pos) {
                (true, Some(i)) => list[i].1 += 1,
                (true, None) => list.push((t, 1)),
                (false, Some(i)) => {
                    list[i].1 -= 1;
                    if list[i].1 == 0 {
                        list.swap_remove(i);
                    }
                }
                (false, None) => unreachable!("removing a type that was never added"),
            }
        }
    }

    fn assign(&mut self, e: EdgeId, c: usize) {
        if c == self.class_edges.len() {
            self.class_edges.push(Vec::new());
            self.complete_types.push(Vec::new());
        }
        self.class[e] = c;
        self.class_edges[c].push(e);
        let (u, w) = self.ends[e];
        for x in [u, w] {
            self.partial[x] |= 1 << c;
            self.assigned[x] += 1;
            if self.assigned[x] == self.deg[x] {
                self.set_complete(x, true);
            }
        }
    }

    fn unassign(&mut self, e: EdgeId) {
        let c = self.class[e];
        let (u, w) = self.ends[e];
        for x in [w, u] {
            if self.assigned[x] == self.deg[x] {
                self.set_complete(x, false);
            }
            self.assigned[x] -= 1;
            self.partial[x] &= !(1 << c);
        }
        self.class_edges[c].pop();
        self.class[e] = NONE;
        if self.class_edges[c].is_empty() {
            self.class_edges.pop();
            self.complete_types.pop();
        }
    }

    /// Two-type check for class `c` (see the module docs).
    fn class_ok(&self, c: usize) -> bool {
        let mut verts: Vec<VertexId> = Vec::with_capacity(2 * self.class_edges[c].len());
        for &e in &self.class_edges[c] {
            let (u, w) = self.ends[e];
            verts.push(u);
            verts.push(w);
        }
        let k = verts.len();
        let differ = |i: usize, j: usize| {
            let (x, y) = (verts[i], verts[j]);
            self.deg[x] != self.deg[y] || (self.partial[x] | self.partial[y]).count_ones() > self.deg[x]
        };
        let mut side = vec![u8::MAX; k];
        for start in 0..k {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut stack = vec![start];
            let mut members = vec![start];
            let mut has_edge = false;
            while let Some(i) = stack.pop() {
                for j in 0..k {
                    if j == i || !differ(i, j) {
                        continue;
                    }
                    has_edge = true;
                    if side[j] == u8::MAX {
                        side[j] = 1 - side[i];
                        stack.push(j);
                        members.push(j);
                    } else if side[j] == side[i] {
                        return false;
                    }
                }
            }
            if has_edge {
                for s in 0..2 {
                    let mut union = 0u64;
                    let mut deg = None;
                    for &i in members.iter().filter(|&&i| side[i] == s) {
                        union |= self.partial[verts[i]];
                        deg = Some(self.deg[verts[i]]);
                    }
                    if deg.is_some_and(|d| union.count_ones() > d) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn consistent_after(&self, e: EdgeId) -> bool {
        let (u, w) = self.ends[e];
        let mut touched = self.partial[u] | self.partial[w];
        while touched != 0 {
            let c = touched.trailing_zeros() as usize;
            touched &= touched - 1;
            if !self.class_ok(c) {
                return false;
            }
        }
        true
    }

    fn rec(&mut self) -> Result<()> {
        if self.stopped {
            return Ok(());
        }
        let mut best: Option<(usize, usize, EdgeId, Vec<usize>)> = None;
        let mut buf = Vec::new();
        for e in 0..self.class.len() {
            if self.class[e] != NONE {
                continue;
            }
            self.candidates(e, &mut buf);
            let key = (buf.len(), self.rank[e]);
            if best.as_ref().is_none_or(|b| key < (b.0, b.1)) {
                best = Some((key.0, key.1, e, buf.clone()));
                if key.0 == 0 {
                    return Ok(());
                }
            }
        }
        let Some((_, _, e, cands)) = best else {
            return self.leaf();
        };
        for c in cands {
            if self.nodes >= self.limit {
                self.stopped = true;
                return Ok(());
            }
            self.nodes += 1;
            self.assign(e, c);
            if self.consistent_after(e) {
                self.rec()?;
            }
            self.unassign(e);
            if self.stopped {
                return Ok(());
            }
        }
        Ok(())
    }

    fn leaf(&mut self) -> Result<()> {
        self.partitions += 1;
        let p = TypePartition { classes: self.class.clone() }.normalized(self.guest);
        let image = realize_image(self.guest, &p)?;
        if image.used.len() == 1 {
            self.tk2 = true;
        }
        let form = image.graph.canonical_form();
        self.found
            .entry(form.clone())
            .and_modify(|entry| entry.multiplicity += 1)
            .or_insert(AtlasEntry { form, image, multiplicity: 1, witness: p });
        Ok(())
    }
}
