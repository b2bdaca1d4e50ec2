//! H-colourings: validation, the induced vertex map, images and preimages.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Multigraph, VertexId};
use crate::structure;

/// A host, a guest and a total map from guest edges to host edges.
///
/// Construction only checks that the map is total and in range; use
/// [`Colouring::check`] or [`Colouring::validated`] for the colouring conditions.
#[derive(Clone, Debug)]
pub struct Colouring {
    host: Arc<Multigraph>,
    guest: Arc<Multigraph>,
    edge_map: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Two guest edges at `vertex` share the host edge `host_edge`.
    Improper { vertex: VertexId, edges: (EdgeId, EdgeId), host_edge: EdgeId },
    /// No host vertex has exactly the image of `∂vertex` as its incident set.
    NoHostVertex { vertex: VertexId },
}

impl Colouring {
    pub fn new(host: Arc<Multigraph>, guest: Arc<Multigraph>, edge_map: Vec<EdgeId>) -> Result<Self> {
        if edge_map.len() != guest.edge_count() {
            return Err(Error::MapNotTotal(format!(
                "{} guest edges but {} images",
                guest.edge_count(),
                edge_map.len()
            )));
        }
        for &h in &edge_map {
            host.check_edge(h)?;
        }
        Ok(Colouring { host, guest, edge_map })
    }

    /// Accepts a partial map; any `None` entry is a [`Error::MapNotTotal`].
    pub fn from_partial(host: Arc<Multigraph>, guest: Arc<Multigraph>, map: &[Option<EdgeId>]) -> Result<Self> {
        if let Some(e) = map.iter().position(Option::is_none) {
            return Err(Error::MapNotTotal(format!("guest edge {e} has no image")));
        }
        Colouring::new(host, guest, map.iter().flatten().copied().collect())
    }

    pub fn identity(g: Arc<Multigraph>) -> Self {
        let map = (0..g.edge_count()).collect();
        Colouring { host: g.clone(), guest: g, edge_map: map }
    }

    /// Like [`Colouring::new`] but also requires both colouring conditions.
    pub fn validated(host: Arc<Multigraph>, guest: Arc<Multigraph>, edge_map: Vec<EdgeId>) -> Result<Self> {
        let c = Colouring::new(host, guest, edge_map)?;
        let violations = c.check();
        if violations.is_empty() {
            Ok(c)
        } else {
            Err(Error::InvalidColouring(violations.len()))
        }
    }

    pub fn host(&self) -> &Multigraph {
        &self.host
    }

    pub fn guest(&self) -> &Multigraph {
        &self.guest
    }

    pub fn host_arc(&self) -> &Arc<Multigraph> {
        &self.host
    }

    pub fn guest_arc(&self) -> &Arc<Multigraph> {
        &self.guest
    }

    pub fn edge_map(&self) -> &[EdgeId] {
        &self.edge_map
    }

    pub fn image_of(&self, e: EdgeId) -> EdgeId {
        self.edge_map[e]
    }

    /// `f(∂u)` as a set of host edges.
    fn image_of_star(&self, u: VertexId) -> EdgeSet {
        EdgeSet::from_edges(self.host.edge_count(), self.guest.incident(u).iter().map(|&e| self.edge_map[e]))
    }

    /// Host vertices `v` with `∂v = f(∂u)`.
    fn host_candidates(&self, u: VertexId) -> Vec<VertexId> {
        let star = self.image_of_star(u);
        let candidates: Vec<VertexId> = match self.guest.incident(u).first() {
            Some(&e) => {
                let (a, b) = self.host.endpoints(self.edge_map[e]);
                vec![a, b]
            }
            None => self.host.vertices().filter(|&v| self.host.incident(v).is_empty()).collect(),
        };
        candidates
            .into_iter()
            .filter(|&v| {
                let inc = self.host.incident(v);
                inc.len() == star.len() && inc.iter().all(|&h| star.contains(h))
            })
            .collect()
    }

    /// Every violation of properness and of the vertex condition; empty iff valid.
    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for u in self.guest.vertices() {
            let inc = self.guest.incident(u);
            let mut proper = true;
            for (i, &e1) in inc.iter().enumerate() {
                for &e2 in &inc[i + 1..] {
                    if self.edge_map[e1] == self.edge_map[e2] {
                        proper = false;
                        out.push(Violation::Improper { vertex: u, edges: (e1, e2), host_edge: self.edge_map[e1] });
                    }
                }
            }
            if !proper || self.host_candidates(u).is_empty() {
                out.push(Violation::NoHostVertex { vertex: u });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_empty()
    }

    fn require_valid(&self) -> Result<()> {
        match self.check().len() {
            0 => Ok(()),
            n => Err(Error::InvalidColouring(n)),
        }
    }

    /// `f_V`. Fails when two host vertices share `f(∂u)`, which only happens on `tK2` components.
    pub fn induced_vertex_map(&self) -> Result<Vec<VertexId>> {
        self.require_valid()?;
        self.guest
            .vertices()
            .map(|u| match self.host_candidates(u).as_slice() {
                [v] => Ok(*v),
                many => Err(Error::AmbiguousVertexMap { vertex: u, candidates: many.to_vec() }),
            })
            .collect()
    }

    /// `Im(f)` as a host edge set.
    pub fn image_edges(&self) -> EdgeSet {
        EdgeSet::from_edges(self.host.edge_count(), self.edge_map.iter().copied())
    }

    /// Host vertices whose incident set is `f(∂u)` for some guest `u`.
    ///
    /// Equals `Im(f_V)` whenever `f_V` is defined; on `tK2` components both
    /// ends count as used.
    pub fn used_vertices(&self) -> Result<Vec<VertexId>> {
        self.require_valid()?;
        let mut used = vec![false; self.host.vertex_count()];
        for u in self.guest.vertices() {
            for v in self.host_candidates(u) {
                used[v] = true;
            }
        }
        Ok(self.host.vertices().filter(|&v| used[v]).collect())
    }

    /// `H_f`, the subgraph of the host edge-induced by `Im(f)`.
    pub fn image_subgraph(&self) -> Result<Multigraph> {
        self.require_valid()?;
        self.host.edge_induced_subgraph(&self.image_edges())
    }

    /// Vertices of `H_f` outside `Im(f_V)`, as host vertex ids.
    pub fn unused_vertices(&self) -> Result<Vec<VertexId>> {
        let used = self.used_vertices()?;
        let image = self.image_edges();
        let mut touched = vec![false; self.host.vertex_count()];
        for h in image.iter() {
            let (a, b) = self.host.endpoints(h);
            touched[a] = true;
            touched[b] = true;
        }
        Ok(self.host.vertices().filter(|&v| touched[v] && used.binary_search(&v).is_err()).collect())
    }

    /// The splitted image `H̃_f`, with the guest re-coloured by it as witness.
    pub fn splitted_image(&self) -> Result<ImageGraph> {
        let used = self.used_vertices()?;
        let image = self.image_edges();
        let mut graph = Multigraph::new(0);
        let mut host_vertex = Vec::new();
        let mut new_id = vec![None; self.host.vertex_count()];
        for &v in &used {
            new_id[v] = Some(graph.add_vertex());
            host_vertex.push(Some(v));
        }
        let mut groups: Vec<(VertexId, Vec<VertexId>)> = Vec::new();
        let mut edge_origin = Vec::new();
        let mut new_edge = vec![usize::MAX; self.host.edge_count()];
        for h in image.iter() {
            let (a, b) = self.host.endpoints(h);
            let mut end = |x: VertexId, graph: &mut Multigraph| match new_id[x] {
                Some(id) => id,
                None => {
                    let leaf = graph.add_vertex();
                    host_vertex.push(None);
                    match groups.iter_mut().find(|(o, _)| *o == x) {
                        Some((_, g)) => g.push(leaf),
                        None => groups.push((x, vec![leaf])),
                    }
                    leaf
                }
            };
            let na = end(a, &mut graph);
            let nb = end(b, &mut graph);
            new_edge[h] = graph.add_edge(na, nb)?;
            edge_origin.push(h);
        }
        let map = self.edge_map.iter().map(|&h| new_edge[h]).collect();
        let graph = Arc::new(graph);
        let witness = Colouring::validated(graph.clone(), self.guest.clone(), map)?;
        let mut img = ImageGraph::from_parts(graph, (0..used.len()).collect());
        img.host_vertex = host_vertex;
        img.edge_origin = Some(edge_origin);
        img.unused_groups = groups.into_iter().map(|(_, g)| g).collect();
        img.witness = Some(witness);
        Ok(img)
    }

    /// `f^{-1}(F)` together with the checkable consequences of the image lemmas.
    pub fn preimage(&self, host_edges: &EdgeSet) -> Result<Preimage> {
        self.require_valid()?;
        if host_edges.universe() != self.host.edge_count() {
            return Err(Error::InvalidParameter("edge set is over a different host".into()));
        }
        let guest = &*self.guest;
        let host = &*self.host;
        let edges = EdgeSet::from_edges(
            guest.edge_count(),
            (0..guest.edge_count()).filter(|&e| host_edges.contains(self.edge_map[e])),
        );
        let used = self.used_vertices()?;

        let host_matching = structure::is_matching(host, host_edges);
        let covers_used = host_matching
            && used.iter().all(|&v| host.incident(v).iter().any(|&h| host_edges.contains(h)));
        let host_perfect = host_matching && structure::is_perfect_matching(host, host_edges);

        let image = self.image_edges();
        let cut_in_image = host_edges.intersection(&image);
        let image_cut = {
            let sub = host.edge_induced_subgraph_with_map(&image)?;
            let local = EdgeSet::from_edges(
                sub.graph.edge_count(),
                sub.edge_origin.iter().enumerate().filter(|(_, &h)| cut_in_image.contains(h)).map(|(i, _)| i),
            );
            let rest = sub.graph.without_edges(&local);
            let no_isolated = rest.degrees().iter().all(|&d| d > 0);
            no_isolated && sub.graph.is_connected() && !rest.is_connected()
        };

        let regular_degree = {
            let mut deg = vec![0usize; host.vertex_count()];
            for h in host_edges.iter() {
                let (a, b) = host.endpoints(h);
                deg[a] += 1;
                deg[b] += 1;
            }
            let touched: Vec<usize> = deg.iter().copied().filter(|&d| d > 0).collect();
            let meets = used.iter().any(|&v| deg[v] > 0);
            match touched.first() {
                Some(&k) if meets && touched.iter().all(|&d| d == k) => Some(k),
                _ => None,
            }
        };

        let guest_matching = structure::is_matching(guest, &edges);
        let guest_perfect = guest_matching && structure::is_perfect_matching(guest, &edges);
        let guest_cut = guest.is_connected() && !guest.without_edges(&edges).is_connected();
        let guest_regular = regular_degree.map(|k| structure::spanning_regular_check(guest, &edges, k));

        Ok(Preimage {
            edges,
            host_matching,
            host_perfect,
            covers_used,
            image_cut,
            regular_degree,
            guest_matching,
            guest_perfect,
            guest_cut,
            guest_regular,
        })
    }

    /// Certificate text: header with file names and canonical digests, then `g h` per guest edge.
    pub fn to_certificate(&self, host_file: &str, guest_file: &str) -> String {
        let mut out = String::from("hcolor-certificate 1\n");
        let _ = writeln!(out, "host {} {}", host_file, self.host.canonical_form().digest());
        let _ = writeln!(out, "guest {} {}", guest_file, self.guest.canonical_form().digest());
        let _ = writeln!(out, "edges {}", self.edge_map.len());
        for (g, h) in self.edge_map.iter().enumerate() {
            let _ = writeln!(out, "{g} {h}");
        }
        out
    }
}

/// Parsed certificate, not yet bound to graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub host_file: String,
    pub host_digest: String,
    pub guest_file: String,
    pub guest_digest: String,
    pub edge_map: Vec<EdgeId>,
}

impl Certificate {
    pub fn parse(text: &str) -> Result<Certificate> {
        let bad = |line: usize, message: String| Error::Certificate(format!("line {line}: {message}"));
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());
        let mut field = |key: &str| -> Result<(usize, Vec<String>)> {
            let (n, l) = lines.next().ok_or_else(|| bad(0, format!("missing `{key}` line")))?;
            let mut parts = l.split_whitespace();
            if parts.next() != Some(key) {
                return Err(bad(n, format!("expected `{key}`")));
            }
            Ok((n, parts.map(str::to_string).collect()))
        };
        let (n, version) = field("hcolor-certificate")?;
        if version != ["1"] {
            return Err(bad(n, "unsupported certificate version".into()));
        }
        let (n, host) = field("host")?;
        let [host_file, host_digest] = <[String; 2]>::try_from(host).map_err(|_| bad(n, "expected `host <file> <digest>`".into()))?;
        let (n, guest) = field("guest")?;
        let [guest_file, guest_digest] =
            <[String; 2]>::try_from(guest).map_err(|_| bad(n, "expected `guest <file> <digest>`".into()))?;
        let (n, count) = field("edges")?;
        let m: usize = count.first().and_then(|c| c.parse().ok()).ok_or_else(|| bad(n, "expected `edges <m>`".into()))?;
        let mut edge_map = Vec::with_capacity(m);
        for (n, l) in lines.by_ref() {
            let nums: Vec<usize> = l
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad(n, format!("not an integer: `{t}`"))))
                .collect::<Result<_>>()?;
            match nums.as_slice() {
                [g, h] if *g == edge_map.len() => edge_map.push(*h),
                [g, _] => return Err(bad(n, format!("expected guest edge {}, found {g}", edge_map.len()))),
                _ => return Err(bad(n, "expected `guest_edge host_edge`".into())),
            }
        }
        if edge_map.len() != m {
            return Err(Error::MapNotTotal(format!("certificate announces {m} edges, lists {}", edge_map.len())));
        }
        Ok(Certificate { host_file, host_digest, guest_file, guest_digest, edge_map })
    }

    /// Binds the certificate to graphs, checking digests, totality and both colouring conditions.
    pub fn bind(&self, host: Arc<Multigraph>, guest: Arc<Multigraph>) -> Result<Colouring> {
        if host.canonical_form().digest() != self.host_digest {
            return Err(Error::Certificate("host digest does not match".into()));
        }
        if guest.canonical_form().digest() != self.guest_digest {
            return Err(Error::Certificate("guest digest does not match".into()));
        }
        Colouring::validated(host, guest, self.edge_map.clone())
    }
}

/// Result of [`Colouring::preimage`]. Host-side flags record which hypotheses
/// hold; guest-side flags record the corresponding conclusions.
#[derive(Clone, Debug, Serialize)]
pub struct Preimage {
    #[serde(skip)]
    pub edges: EdgeSet,
    pub host_matching: bool,
    pub host_perfect: bool,
    /// `F` is a matching covering every used vertex.
    pub covers_used: bool,
    /// `F ∩ Im(f)` cuts `H_f` without isolating a vertex.
    pub image_cut: bool,
    /// `F` induces a `k`-regular host subgraph meeting the used vertices.
    pub regular_degree: Option<usize>,
    pub guest_matching: bool,
    pub guest_perfect: bool,
    pub guest_cut: bool,
    pub guest_regular: Option<bool>,
}

impl Preimage {
    /// Names of the implications that fail. Empty on every valid colouring.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.host_matching && !self.guest_matching {
            out.push("matching");
        }
        if self.host_perfect && !self.guest_perfect {
            out.push("perfect-matching");
        }
        if self.covers_used && !self.guest_perfect {
            out.push("covering-matching");
        }
        if self.image_cut && !self.guest_cut {
            out.push("edge-cut");
        }
        if self.guest_regular == Some(false) {
            out.push("regular-subgraph");
        }
        out
    }
}

/// A splitted image: used vertices plus degree-1 leaves standing in for unused vertices.
#[derive(Clone, Debug)]
pub struct ImageGraph {
    pub graph: Arc<Multigraph>,
    /// Vertices that are images of guest vertices.
    pub used: Vec<VertexId>,
    /// Leaves grouped by the unused vertex they arise from. Images built from
    /// a type partition have one group per leaf, as no host is fixed.
    pub unused_groups: Vec<Vec<VertexId>>,
    /// Host vertex of each image vertex, for images taken from a colouring.
    pub host_vertex: Vec<Option<VertexId>>,
    /// Host edge of each image edge, for images taken from a colouring.
    pub edge_origin: Option<Vec<EdgeId>>,
    /// The guest coloured by this image.
    pub witness: Option<Colouring>,
}

impl ImageGraph {
    pub(crate) fn from_parts(graph: Arc<Multigraph>, used: Vec<VertexId>) -> Self {
        let is_used = {
            let mut v = vec![false; graph.vertex_count()];
            used.iter().for_each(|&u| v[u] = true);
            v
        };
        let unused_groups = graph.vertices().filter(|&v| !is_used[v]).map(|v| vec![v]).collect();
        ImageGraph {
            host_vertex: vec![None; graph.vertex_count()],
            graph,
            used,
            unused_groups,
            edge_origin: None,
            witness: None,
        }
    }

    /// Degree-1 vertices not in the image of the vertex map.
    pub fn unused_leaf_count(&self) -> usize {
        self.unused_groups.iter().map(Vec::len).sum()
    }

    /// Leaves that genuinely come from splitting. A lone unused leaf is
    /// indistinguishable from an unsplit unused vertex of degree 1, so it
    /// does not count.
    pub fn split_vertex_count(&self) -> usize {
        match self.unused_leaf_count() {
            0 | 1 => 0,
            n => n,
        }
    }

    pub fn canonical_digest(&self) -> String {
        self.graph.canonical_form().digest()
    }
}

/// Whether other hosts realize the same image: some unused leaves could be
/// re-joined, so infinitely many hosts arise.
pub fn image_admits_extension(image: &ImageGraph) -> bool {
    image.split_vertex_count() > 0
}
