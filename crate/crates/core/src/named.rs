//! Constructors for the named graphs, labelled the way the proofs refer to them.
//!
//! The gadget shared by S4, S6, S10 and S12 is a triangle `u v w` whose edge
//! `vw` is doubled; `u` is the attachment vertex. S4 is one gadget plus a
//! pendant vertex `z` on `u`. The bold perfect matching `M` pairs `z`–`u`
//! (or the attachment edge) and `v`–`w` in every gadget; `+kM` adds `k`
//! parallel copies to each of its edges.
//!
//! Labels use ASCII: `z^i`, `u^i`, `v^i`, `w^i` for vertices of copy `i`,
//! `l^i_j` for the `v`–`w` edges, `r^i_j` for the `z`–`u` edges and
//! `m^i_1` = `u v`, `m^i_2` = `u w`. Single-copy graphs drop the superscript.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::structure;

#[derive(Clone, Debug)]
pub struct LabelledGraph {
    pub graph: Multigraph,
    pub vertex_labels: BTreeMap<String, VertexId>,
    pub edge_labels: BTreeMap<String, EdgeId>,
}

impl LabelledGraph {
    fn new(name: &str, n: usize) -> Self {
        LabelledGraph {
            graph: Multigraph::new(n).with_name(name),
            vertex_labels: BTreeMap::new(),
            edge_labels: BTreeMap::new(),
        }
    }

    fn vertex_named(&mut self, label: String) -> VertexId {
        let v = self.graph.add_vertex();
        self.vertex_labels.insert(label, v);
        v
    }

    fn edge_named(&mut self, label: String, a: VertexId, b: VertexId) -> EdgeId {
        let e = self.graph.add_edge(a, b).expect("constructor ids are valid");
        if !label.is_empty() {
            self.edge_labels.insert(label, e);
        }
        e
    }

    /// Vertex id for a label; panics on unknown labels.
    pub fn vertex(&self, label: &str) -> VertexId {
        *self.vertex_labels.get(label).unwrap_or_else(|| panic!("no vertex labelled {label}"))
    }

    /// Edge id for a label; panics on unknown labels.
    pub fn edge(&self, label: &str) -> EdgeId {
        *self.edge_labels.get(label).unwrap_or_else(|| panic!("no edge labelled {label}"))
    }

    /// Comment lines describing the role map, for the edge-list header.
    pub fn role_comments(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(name) = self.graph.name() {
            out.push(format!("name {name}"));
        }
        out.extend(self.vertex_labels.iter().map(|(l, v)| format!("vertex {l} {v}")));
        out.extend(self.edge_labels.iter().map(|(l, e)| format!("edge {l} {e}")));
        out
    }
}

/// Outer cycle `u1..u5`, spokes `u_i v_i`, inner pentagram `v_i v_{i+2}`.
pub fn petersen() -> LabelledGraph {
    let mut g = LabelledGraph::new("P", 0);
    let u: Vec<_> = (1..=5).map(|i| g.vertex_named(format!("u{i}"))).collect();
    let v: Vec<_> = (1..=5).map(|i| g.vertex_named(format!("v{i}"))).collect();
    let pair = |p: &str, i: usize, j: usize| {
        let (a, b) = (i.min(j) + 1, i.max(j) + 1);
        format!("{p}{a}{p}{b}")
    };
    for i in 0..5 {
        let j = (i + 1) % 5;
        g.edge_named(pair("u", i, j), u[i], u[j]);
        g.edge_named(format!("u{}v{}", i + 1, i + 1), u[i], v[i]);
        let k = (i + 2) % 5;
        g.edge_named(pair("v", i, k), v[i], v[k]);
    }
    g
}

/// Adds one gadget (`u`, `v`, `w`; `k + 2` parallel `v`–`w` edges) and returns `u`.
fn add_gadget(g: &mut LabelledGraph, sup: &str, k: usize) -> VertexId {
    let u = g.vertex_named(format!("u{sup}"));
    let v = g.vertex_named(format!("v{sup}"));
    let w = g.vertex_named(format!("w{sup}"));
    for j in 1..=k + 2 {
        g.edge_named(format!("l{sup}_{j}"), v, w);
    }
    g.edge_named(format!("m{sup}_1"), u, v);
    g.edge_named(format!("m{sup}_2"), u, w);
    u
}

pub fn s4() -> LabelledGraph {
    s4_plus_km(0).expect("k = 0 is valid")
}

pub fn s4_plus_km(k: usize) -> Result<LabelledGraph> {
    let name = if k == 0 { "S4".to_string() } else { format!("S4+{k}M") };
    let mut g = LabelledGraph::new(&name, 0);
    let z = g.vertex_named("z".into());
    let u = add_gadget(&mut g, "", k);
    for j in 1..=k + 1 {
        g.edge_named(format!("r_{j}"), z, u);
    }
    Ok(g)
}

pub fn s6() -> LabelledGraph {
    s6_plus_km(0).expect("k = 0 is valid")
}

/// Two gadgets whose attachment vertices are joined by `k + 1` parallel edges.
pub fn s6_plus_km(k: usize) -> Result<LabelledGraph> {
    let name = if k == 0 { "S6".to_string() } else { format!("S6+{k}M") };
    let mut g = LabelledGraph::new(&name, 0);
    let a = add_gadget(&mut g, "^1", k);
    let b = add_gadget(&mut g, "^2", k);
    for j in 1..=k + 1 {
        g.edge_named(format!("r_{j}"), a, b);
    }
    Ok(g)
}

/// Sylvester multigraph: a centre `z` joined to the attachment vertex of three gadgets.
pub fn s10() -> LabelledGraph {
    let mut g = LabelledGraph::new("S10", 0);
    let z = g.vertex_named("z".into());
    for i in 1..=3 {
        let u = add_gadget(&mut g, &format!("^{i}"), 0);
        g.edge_named(format!("r^{i}_1"), z, u);
    }
    g
}

pub fn s12() -> LabelledGraph {
    s12_plus_km(0).expect("k = 0 is valid")
}

/// Triangle `z^1 z^2 z^3`, each `z^i` joined by `k + 1` edges to the attachment vertex of gadget `i`.
pub fn s12_plus_km(k: usize) -> Result<LabelledGraph> {
    let name = if k == 0 { "S12".to_string() } else { format!("S12+{k}M") };
    let mut g = LabelledGraph::new(&name, 0);
    let z: Vec<_> = (1..=3).map(|i| g.vertex_named(format!("z^{i}"))).collect();
    g.edge_named("z^1z^2".into(), z[0], z[1]);
    g.edge_named("z^2z^3".into(), z[1], z[2]);
    g.edge_named("z^1z^3".into(), z[0], z[2]);
    for i in 1..=3 {
        let u = add_gadget(&mut g, &format!("^{i}"), k);
        for j in 1..=k + 1 {
            g.edge_named(format!("r^{i}_{j}"), z[i - 1], u);
        }
    }
    Ok(g)
}

pub fn complete(n: usize) -> Result<LabelledGraph> {
    if n < 1 {
        return Err(Error::InvalidParameter("complete graph needs n >= 1".into()));
    }
    let mut g = LabelledGraph::new(&format!("K{n}"), 0);
    let v: Vec<_> = (0..n).map(|i| g.vertex_named(format!("x{i}"))).collect();
    for i in 0..n {
        for j in i + 1..n {
            g.edge_named(String::new(), v[i], v[j]);
        }
    }
    Ok(g)
}

/// `K_n` minus the edge between `x0` and `x1`; these are labelled `a` and `b` as well.
pub fn complete_minus_edge(n: usize) -> Result<LabelledGraph> {
    if n < 2 {
        return Err(Error::InvalidParameter("complete graph minus an edge needs n >= 2".into()));
    }
    let mut g = LabelledGraph::new(&format!("K{n}'"), 0);
    let v: Vec<_> = (0..n).map(|i| g.vertex_named(format!("x{i}"))).collect();
    for i in 0..n {
        for j in i + 1..n {
            if (i, j) != (0, 1) {
                g.edge_named(String::new(), v[i], v[j]);
            }
        }
    }
    g.vertex_labels.insert("a".into(), v[0]);
    g.vertex_labels.insert("b".into(), v[1]);
    Ok(g)
}

/// `K_{1,t}` with centre `c` and leaves `x1..xt`.
pub fn star(t: usize) -> Result<LabelledGraph> {
    if t < 1 {
        return Err(Error::InvalidParameter("star needs t >= 1".into()));
    }
    let mut g = LabelledGraph::new(&format!("K1,{t}"), 0);
    let c = g.vertex_named("c".into());
    for i in 1..=t {
        let x = g.vertex_named(format!("x{i}"));
        g.edge_named(format!("e{i}"), c, x);
    }
    Ok(g)
}

/// Two vertices `a`, `b` joined by `t` parallel edges.
pub fn t_k2(t: usize) -> Result<LabelledGraph> {
    if t < 1 {
        return Err(Error::InvalidParameter("tK2 needs t >= 1".into()));
    }
    let mut g = LabelledGraph::new(&format!("{t}K2"), 0);
    let a = g.vertex_named("a".into());
    let b = g.vertex_named("b".into());
    for i in 1..=t {
        g.edge_named(format!("e{i}"), a, b);
    }
    Ok(g)
}

/// `r` copies `R1..Rr` of `K'_{2r+1}` whose degree-`(2r-1)` vertices are all joined to a centre `u`.
pub fn j_graph(r: usize) -> Result<LabelledGraph> {
    if r <= 1 {
        return Err(Error::InvalidParameter("J_2r needs r > 1".into()));
    }
    let mut g = LabelledGraph::new(&format!("J{}", 2 * r), 0);
    let centre = g.vertex_named("u".into());
    let size = 2 * r + 1;
    for c in 1..=r {
        let v: Vec<_> = (0..size).map(|i| g.vertex_named(format!("R{c}_{i}"))).collect();
        for i in 0..size {
            for j in i + 1..size {
                if (i, j) != (0, 1) {
                    g.edge_named(String::new(), v[i], v[j]);
                }
            }
        }
        g.edge_named(format!("uR{c}_0"), centre, v[0]);
        g.edge_named(format!("uR{c}_1"), centre, v[1]);
    }
    Ok(g)
}

/// Every `r`-regular multigraph on `t` pairwise adjacent vertices, up to isomorphism,
/// sorted by canonical form. Infeasible parameters give an empty list.
pub fn k_family_members(t: usize, r: usize) -> Vec<Multigraph> {
    if t < 2 || r < 1 || (t * r) % 2 == 1 || r < t - 1 {
        return Vec::new();
    }
    let pairs: Vec<(usize, usize)> = (0..t).flat_map(|i| (i + 1..t).map(move |j| (i, j))).collect();
    let mut deg = vec![0usize; t];
    let mut mult = vec![0usize; pairs.len()];
    let mut found = BTreeMap::new();
    family_rec(t, r, &pairs, 0, &mut deg, &mut mult, &mut found);
    found.into_values().collect()
}

fn family_rec(
    t: usize,
    r: usize,
    pairs: &[(usize, usize)],
    idx: usize,
    deg: &mut [usize],
    mult: &mut [usize],
    found: &mut BTreeMap<crate::graph::CanonicalForm, Multigraph>,
) {
    if idx == pairs.len() {
        if deg.iter().all(|&d| d == r) {
            let mut g = Multigraph::new(t);
            for (&(a, b), &m) in pairs.iter().zip(mult.iter()) {
                for _ in 0..m {
                    g.add_edge(a, b).expect("valid pair");
                }
            }
            g.set_name(format!("K_{t}^{r}"));
            found.entry(g.canonical_form()).or_insert(g);
        }
        return;
    }
    let (a, b) = pairs[idx];
    let last_for_a = b == t - 1;
    for m in 1..=r {
        if deg[a] + m > r || deg[b] + m > r {
            break;
        }
        if last_for_a && deg[a] + m != r {
            continue;
        }
        deg[a] += m;
        deg[b] += m;
        mult[idx] = m;
        family_rec(t, r, pairs, idx + 1, deg, mult, found);
        deg[a] -= m;
        deg[b] -= m;
    }
}

/// Outcome of the bounded poorly-matchable search.
#[derive(Clone, Debug)]
pub enum WitnessSearch {
    Found(Multigraph),
    NotFound { max_order: usize, examined: u64 },
}

/// Smallest-order `r`-regular loopless multigraph with a perfect matching but no two
/// edge-disjoint perfect matchings, searched exhaustively over orders up to `max_order`.
///
/// Labelled multiplicity matrices are generated row by row; vertex 0's row is
/// kept non-increasing, which every isomorphism class admits after relabelling.
/// The first hit in this deterministic order is returned.
pub fn poorly_matchable_witness(r: usize, max_order: usize) -> Result<WitnessSearch> {
    if r < 4 {
        return Err(Error::InvalidParameter("poorly matchable search needs r >= 4".into()));
    }
    let mut examined = 0u64;
    for n in (2..=max_order).step_by(2) {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut st = WitnessState { n, r, pairs, deg: vec![0; n], mult: vec![0; n * (n - 1) / 2], examined: 0 };
        let hit = st.rec(0);
        examined += st.examined;
        if let Some(mut g) = hit {
            g.set_name(format!("poorly-matchable-{r}-{n}"));
            return Ok(WitnessSearch::Found(g));
        }
    }
    Ok(WitnessSearch::NotFound { max_order, examined })
}

struct WitnessState {
    n: usize,
    r: usize,
    pairs: Vec<(usize, usize)>,
    deg: Vec<usize>,
    mult: Vec<usize>,
    examined: u64,
}

impl WitnessState {
    fn rec(&mut self, idx: usize) -> Option<Multigraph> {
        if idx == self.pairs.len() {
            if self.deg.iter().any(|&d| d != self.r) {
                return None;
            }
            self.examined += 1;
            let mut g = Multigraph::new(self.n);
            for (&(a, b), &m) in self.pairs.iter().zip(&self.mult) {
                for _ in 0..m {
                    g.add_edge(a, b).expect("valid pair");
                }
            }
            if !g.is_connected() {
                return None;
            }
            let pms = structure::perfect_matchings(&g);
            let poorly = !pms.is_empty() && pms.iter().enumerate().all(|(i, a)| pms[i + 1..].iter().all(|b| !a.is_disjoint(b)));
            return poorly.then_some(g);
        }
        let (a, b) = self.pairs[idx];
        let last_for_a = b == self.n - 1;
        let cap = if a == 0 && idx > 0 { self.mult[idx - 1] } else { self.r };
        for m in 0..=cap {
            if self.deg[a] + m > self.r || self.deg[b] + m > self.r {
                break;
            }
            if last_for_a && self.deg[a] + m != self.r {
                continue;
            }
            self.deg[a] += m;
            self.deg[b] += m;
            self.mult[idx] = m;
            let hit = self.rec(idx + 1);
            self.deg[a] -= m;
            self.deg[b] -= m;
            self.mult[idx] = 0;
            if hit.is_some() {
                return hit;
            }
        }
        None
    }
}

/// Looks up a generator by CLI name. `param` is `k` for `+kM` families,
/// `n`/`t` for complete graphs, stars and `tK2`, and `r` for `J`.
pub fn by_name(name: &str, param: Option<usize>) -> Result<LabelledGraph> {
    let need = |what: &str| param.ok_or_else(|| Error::InvalidParameter(format!("{name} needs a parameter {what}")));
    match name.to_ascii_lowercase().as_str() {
        "p" | "petersen" => Ok(petersen()),
        "s4" => s4_plus_km(param.unwrap_or(0)),
        "s6" => s6_plus_km(param.unwrap_or(0)),
        "s10" => Ok(s10()),
        "s12" => s12_plus_km(param.unwrap_or(0)),
        "k" | "complete" => complete(need("n")?),
        "k-minus-edge" | "complete-minus-edge" => complete_minus_edge(need("n")?),
        "star" => star(need("t")?),
        "tk2" => t_k2(need("t")?),
        "j" | "j-graph" => j_graph(need("r")?),
        _ => Err(Error::InvalidParameter(format!("unknown graph name `{name}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{exposed_copies, has_two_disjoint_perfect_matchings, perfect_matching_count};

    fn sorted_degrees(g: &Multigraph) -> Vec<usize> {
        let mut d = g.degrees();
        d.sort_unstable();
        d
    }

    #[test]
    fn petersen_shape() {
        let p = petersen();
        assert_eq!((p.graph.vertex_count(), p.graph.edge_count()), (10, 15));
        assert!(p.graph.is_regular(3));
        assert_eq!(p.graph.girth(), Some(5));
        assert!(p.graph.bridges().is_empty());
        let (a, b) = p.graph.endpoints(p.edge("v1v3"));
        assert_eq!((a.min(b), a.max(b)), (p.vertex("v1"), p.vertex("v3")));
        assert_eq!(p.edge_labels.len(), 15);
    }

    #[test]
    fn s4_family_shapes() {
        let s4 = s4();
        assert_eq!((s4.graph.vertex_count(), s4.graph.edge_count()), (4, 5));
        assert_eq!(sorted_degrees(&s4.graph), vec![1, 3, 3, 3]);
        assert_eq!(s4.graph.degree(s4.vertex("z")).unwrap(), 1);
        assert_eq!(sorted_degrees(&s4_plus_km(1).unwrap().graph), vec![2, 4, 4, 4]);
        let s6 = s6();
        assert_eq!((s6.graph.vertex_count(), s6.graph.edge_count()), (6, 9));
        assert!(s6.graph.is_regular(3));
    }

    #[test]
    fn s10_and_s12_shapes() {
        let s10 = s10().graph;
        assert_eq!((s10.vertex_count(), s10.edge_count()), (10, 15));
        assert!(s10.is_regular(3) && s10.is_connected());
        assert_eq!(perfect_matching_count(&s10), 0);
        let s12 = s12().graph;
        assert_eq!((s12.vertex_count(), s12.edge_count()), (12, 18));
        assert!(s12.is_regular(3) && s12.is_connected());
        assert!(perfect_matching_count(&s12) > 0);
    }

    #[test]
    fn s12_plus_km_shapes() {
        let g = s12_plus_km(1).unwrap();
        assert_eq!((g.graph.vertex_count(), g.graph.edge_count()), (12, 24));
        assert!(g.graph.is_regular(4));
        assert!(s12_plus_km(0).unwrap().graph.is_isomorphic(&s12().graph));
        for k in 0..3 {
            let g = s12_plus_km(k).unwrap();
            let copies = exposed_copies(&g.graph, k);
            assert_eq!(copies.len(), 3);
            let mut all: Vec<_> = copies.iter().flatten().copied().collect();
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len(), 12, "copies are pairwise disjoint");
            let pattern = s4_plus_km(k).unwrap().graph;
            for i in 1..=3 {
                let x = ["z", "u", "v", "w"].map(|p| g.vertex(&format!("{p}^{i}")));
                assert!(g.graph.induced_subgraph(&x).unwrap().is_isomorphic(&pattern));
            }
        }
    }

    #[test]
    fn s10_gadget_with_centre_is_s4() {
        let g = s10();
        let x = [g.vertex("z"), g.vertex("u^1"), g.vertex("v^1"), g.vertex("w^1")];
        assert!(g.graph.induced_subgraph(&x).unwrap().is_isomorphic(&s4().graph));
    }

    #[test]
    fn complete_family() {
        let k5 = complete(5).unwrap().graph;
        assert!(k5.is_regular(4));
        assert_eq!(k5.edge_count(), 10);
        let km = complete_minus_edge(5).unwrap();
        assert_eq!(sorted_degrees(&km.graph), vec![3, 3, 4, 4, 4]);
        assert_eq!(km.graph.degree(km.vertex("a")).unwrap(), 3);
        let t3 = t_k2(3).unwrap().graph;
        assert_eq!((t3.vertex_count(), t3.edge_count()), (2, 3));
        assert!(star(0).is_err());
    }

    #[test]
    fn j_graph_shape() {
        let j = j_graph(2).unwrap();
        assert_eq!(j.graph.vertex_count(), 11);
        assert!(j.graph.is_regular(4));
        assert!(j.graph.is_simple());
        assert_eq!(j.graph.degree(j.vertex("u")).unwrap(), 4);
        assert!(j_graph(1).is_err());
        let j6 = j_graph(3).unwrap();
        assert_eq!(j6.graph.vertex_count(), 3 * 7 + 1);
        assert!(j6.graph.is_regular(6));
        for r in 2..5 {
            let km = complete_minus_edge(2 * r + 1).unwrap().graph;
            assert_eq!(km.degrees().iter().filter(|&&d| d == 2 * r - 1).count(), 2);
        }
    }

    /// Every cycle through the centre re-enters the copy it left.
    #[test]
    fn j4_cycles_through_centre_stay_in_one_copy() {
        let j = j_graph(2).unwrap();
        let g = &j.graph;
        let u = j.vertex("u");
        let copy_of = |v: VertexId| -> Option<usize> {
            j.vertex_labels.iter().find(|(_, &x)| x == v).and_then(|(l, _)| l[1..2].parse().ok())
        };
        // brute force over simple paths from each neighbour of u back to u
        for &e1 in g.incident(u) {
            let start = g.other_end(e1, u);
            let mut stack = vec![(start, vec![u, start])];
            while let Some((x, path)) = stack.pop() {
                for &e in g.incident(x) {
                    let y = g.other_end(e, x);
                    if y == u && path.len() > 2 {
                        assert_eq!(copy_of(start), copy_of(x));
                    } else if !path.contains(&y) {
                        let mut p = path.clone();
                        p.push(y);
                        stack.push((y, p));
                    }
                }
            }
        }
    }

    #[test]
    fn k_family() {
        let k34 = k_family_members(3, 4);
        assert_eq!(k34.len(), 1);
        assert!(k34[0].edges().iter().all(|&(a, b)| k34[0].multiplicity(a, b) == 2));
        let k54 = k_family_members(5, 4);
        assert_eq!(k54.len(), 1);
        assert!(k54[0].is_isomorphic(&complete(5).unwrap().graph));
        for t in 1..6 {
            let k2 = k_family_members(2, t);
            assert_eq!(k2.len(), 1);
            assert!(k2[0].is_isomorphic(&t_k2(t).unwrap().graph));
        }
        assert!(k_family_members(3, 3).is_empty());
        assert!(k_family_members(5, 2).is_empty());
    }

    #[test]
    fn tk2_is_not_poorly_matchable() {
        assert!(has_two_disjoint_perfect_matchings(&t_k2(4).unwrap().graph));
    }
}
