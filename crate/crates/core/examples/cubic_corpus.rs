//! Generates every 2-connected simple cubic graph on up to `N` vertices, in graph6.
//!
//! Every 2-connected cubic multigraph arises from the theta graph (three
//! parallel edges) by repeatedly subdividing two edges, or one edge twice,
//! and joining the two new vertices. Each level is deduplicated by canonical
//! form; only the simple graphs are printed.
//!
//! `cargo run --release -p hcolor-core --example cubic_corpus -- 14 > corpus.g6`

use std::collections::BTreeMap;

use hcolor::graph::io::encode_graph6;
use hcolor::{CanonicalForm, Multigraph};

fn insert_edge(g: &Multigraph, e: usize, f: usize) -> Multigraph {
    let n = g.vertex_count();
    let (x, y) = (n, n + 1);
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(g.edge_count() + 3);
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        if i == e && i == f {
            edges.extend([(a, x), (x, y), (y, b)]);
        } else if i == e {
            edges.extend([(a, x), (x, b)]);
        } else if i == f {
            edges.extend([(a, y), (y, b)]);
        } else {
            edges.push((a, b));
        }
    }
    edges.push((x, y));
    Multigraph::from_edges(n + 2, &edges).expect("insertion keeps the graph loopless")
}

fn main() {
    let max: usize = std::env::args().nth(1).map_or(14, |a| a.parse().expect("vertex bound"));
    let theta = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
    let mut level: BTreeMap<CanonicalForm, Multigraph> = BTreeMap::from([(theta.canonical_form(), theta)]);
    let mut n = 2;
    while n + 2 <= max {
        let mut next = BTreeMap::new();
        for g in level.values() {
            for e in 0..g.edge_count() {
                for f in e..g.edge_count() {
                    let h = insert_edge(g, e, f);
                    next.entry(h.canonical_form()).or_insert(h);
                }
            }
        }
        n += 2;
        let simple: Vec<&Multigraph> = next.values().filter(|g| g.is_simple()).collect();
        eprintln!("n={n}: {} 2-connected cubic multigraphs, {} simple", next.len(), simple.len());
        for g in simple {
            println!("{}", encode_graph6(g).expect("simple"));
        }
        level = next;
    }
}
