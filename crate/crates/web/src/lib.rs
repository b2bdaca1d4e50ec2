//! wasm-bindgen bindings for the static demo page in `www/`.
//!
//! Graphs are passed as `name[:param]` (see `hcolor gen`) or as edge-list
//! text. Every export returns a JSON string; errors become JS exceptions.
//! The `*_value` functions hold the logic so native tests can call them.

use std::sync::Arc;

use hcolor::colouring::Colouring;
use hcolor::graph::io::parse_edge_list;
use hcolor::images::enumerate_splitted_images;
use hcolor::named;
use hcolor::solver::{self, Limits, Mode, Outcome};
use hcolor::Multigraph;
use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Search budget used when the page passes 0.
pub const DEFAULT_NODE_LIMIT: u64 = 2_000_000;

#[derive(Serialize)]
struct GraphView {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    /// Vertex labels by id, where the graph has them.
    labels: Vec<Option<String>>,
    digest: String,
}

fn view(g: &Multigraph, labels: Vec<Option<String>>) -> GraphView {
    GraphView { vertices: g.vertex_count(), edges: g.edges().to_vec(), labels, digest: g.canonical_form().digest() }
}

fn load(spec: &str) -> hcolor::Result<(Multigraph, Vec<Option<String>>)> {
    let spec = spec.trim();
    let looks_named = !spec.is_empty() && !spec.contains(char::is_whitespace);
    if looks_named {
        let (name, param) = match spec.split_once(':') {
            Some((n, p)) => {
                let p = p.parse().map_err(|_| hcolor::Error::InvalidParameter(format!("`{p}` is not a number")))?;
                (n, Some(p))
            }
            None => (spec, None),
        };
        let lg = named::by_name(name, param)?;
        let mut labels = vec![None; lg.graph.vertex_count()];
        for (label, &v) in &lg.vertex_labels {
            labels[v] = Some(label.clone());
        }
        return Ok((lg.graph, labels));
    }
    let g = parse_edge_list(spec)?;
    let n = g.vertex_count();
    Ok((g, vec![None; n]))
}

fn limit(node_limit: u64) -> Option<u64> {
    Some(if node_limit == 0 { DEFAULT_NODE_LIMIT } else { node_limit })
}

pub fn graph_value(spec: &str) -> hcolor::Result<Value> {
    let (g, labels) = load(spec)?;
    Ok(serde_json::to_value(view(&g, labels)).expect("plain data serializes"))
}

/// First colouring of `guest` by `host`, with the induced vertex map when it is unique.
pub fn solve_value(host: &str, guest: &str, node_limit: u64) -> hcolor::Result<Value> {
    let (h, h_labels) = load(host)?;
    let (g, g_labels) = load(guest)?;
    let (h, g) = (Arc::new(h), Arc::new(g));
    let s = solver::solve(&h, &g, Mode::First, &Limits { nodes: limit(node_limit), time: None })?;
    let outcome = match s.outcome {
        Outcome::Sat => "sat",
        Outcome::Unsat => "unsat",
        Outcome::Unknown => "unknown",
    };
    let mut out = json!({
        "outcome": outcome,
        "nodes": s.stats.nodes,
        "host": view(&h, h_labels),
        "guest": view(&g, g_labels),
    });
    if let Some(map) = s.colourings.into_iter().next() {
        let c = Colouring::validated(h, g, map)?;
        out["edge_map"] = json!(c.edge_map());
        out["vertex_map"] = c.induced_vertex_map().map(|m| json!(m)).unwrap_or(Value::Null);
        out["used_edges"] = json!(c.image_edges().iter().collect::<Vec<_>>());
    }
    Ok(out)
}

/// Every splitted image of `guest` up to isomorphism.
pub fn images_value(guest: &str, node_limit: u64) -> hcolor::Result<Value> {
    let (g, _) = load(guest)?;
    let atlas = enumerate_splitted_images(&g, limit(node_limit))?;
    let images: Vec<Value> = atlas
        .entries
        .iter()
        .map(|e| {
            json!({
                "graph": view(&e.image.graph, vec![None; e.image.graph.vertex_count()]),
                "split_vertices": e.image.split_vertex_count(),
                "unused_leaves": e.image.unused_leaf_count(),
                "multiplicity": e.multiplicity,
                "edge_map": e.image.witness.as_ref().map(|w| w.edge_map().to_vec()),
            })
        })
        .collect();
    Ok(json!({
        "complete": atlas.complete,
        "nodes": atlas.nodes,
        "partitions": atlas.partitions,
        "tk2": atlas.tk2,
        "guest": view(&g, vec![None; g.vertex_count()]),
        "images": images,
    }))
}

fn export(r: hcolor::Result<Value>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn graph(spec: &str) -> Result<String, JsError> {
    export(graph_value(spec))
}

#[wasm_bindgen]
pub fn solve(host: &str, guest: &str, node_limit: u64) -> Result<String, JsError> {
    export(solve_value(host, guest, node_limit))
}

#[wasm_bindgen]
pub fn images(guest: &str, node_limit: u64) -> Result<String, JsError> {
    export(images_value(guest, node_limit))
}
