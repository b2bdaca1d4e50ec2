//! Named verification recipes and the graph6 corpus runner.
//!
//! A recipe produces a [`VerificationReport`]: one [`CheckRecord`] per
//! constituent check, serialized as one JSON object per line. Records carry
//! no timings, so reports are byte-identical for identical inputs and limits.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{rngs::StdRng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::graph::io::parse_graph6_stream;
use crate::graph::{EdgeSet, Multigraph};
use crate::images::{enumerate_splitted_images, ImageAtlas};
use crate::named::{self, WitnessSearch};
use crate::solver::{self, Limits, Mode, Outcome};
use crate::structure;

/// Per-solve node budget used by corpus runs unless overridden.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// The bundled corpus: all 2-connected simple cubic graphs on 4 to 14 vertices.
pub const BUNDLED_CORPUS: &str = include_str!("../data/cubic_2conn_4_14.g6");

pub const RECIPES: &[&str] = &[
    "petersen-images",
    "s10-images",
    "s12-images",
    "p-matching-cuts",
    "k5-images",
    "j4-exclusion",
    "s12kM-rigidity",
    "poorly-matchable",
    "corpus-s4",
    "corpus-p",
    "preimage-props",
];

/// Older names still accepted by [`run_recipe`].
const RECIPE_ALIASES: &[(&str, &str)] = &[("thm44", "poorly-matchable"), ("lemma24-props", "preimage-props")];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// The check did not apply to this input (e.g. a corpus graph that is not bridgeless cubic).
    Skip,
    Fail,
    Unknown,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub recipe: String,
    pub check: String,
    pub status: Status,
    pub detail: Value,
    pub nodes: u64,
    pub version: String,
}

impl CheckRecord {
    /// One JSON object, no trailing newline.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub recipe: String,
    pub version: String,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    fn new(recipe: &str) -> Self {
        VerificationReport { recipe: recipe.to_string(), version: version_digest(), checks: Vec::new() }
    }

    fn push(&mut self, check: impl Into<String>, status: Status, detail: Value, nodes: u64) {
        self.checks.push(CheckRecord {
            recipe: self.recipe.clone(),
            check: check.into(),
            status,
            detail,
            nodes,
            version: self.version.clone(),
        });
    }

    fn expect(&mut self, check: impl Into<String>, ok: bool, detail: Value) {
        self.push(check, if ok { Status::Pass } else { Status::Fail }, detail, 0);
    }

    /// Fail beats error beats unknown beats pass; skips are neutral.
    pub fn status(&self) -> Status {
        let worst = |s: Status| self.checks.iter().any(|c| c.status == s);
        if worst(Status::Fail) {
            Status::Fail
        } else if worst(Status::Error) {
            Status::Error
        } else if worst(Status::Unknown) {
            Status::Unknown
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn to_json_lines(&self) -> String {
        self.checks
            .iter()
            .map(|c| c.to_json_line() + "\n")
            .collect()
    }

    pub fn find(&self, check: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.check == check)
    }
}

/// Short digest identifying this build of the library.
pub fn version_digest() -> String {
    let hash = Sha256::digest(format!("hcolor-core {}", env!("CARGO_PKG_VERSION")).as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug)]
pub struct RecipeParams {
    /// Node budget per solve or enumeration; `None` is unlimited.
    pub node_limit: Option<u64>,
    /// graph6/sparse6 text for the corpus recipes; the bundled corpus when `None`.
    pub corpus: Option<String>,
    /// Only corpus graphs with at most this many vertices are checked.
    pub max_vertices: Option<usize>,
    /// Maximum witness order for `poorly-matchable`.
    pub witness_order: usize,
    pub seed: u64,
    /// Colourings sampled per (host, guest) pair in `preimage-props`.
    pub samples: usize,
    pub threads: Option<usize>,
    pub resume_from: usize,
}

impl Default for RecipeParams {
    fn default() -> Self {
        RecipeParams {
            node_limit: None,
            corpus: None,
            max_vertices: None,
            witness_order: 8,
            seed: 1,
            samples: 12,
            threads: None,
            resume_from: 0,
        }
    }
}

pub fn run_recipe(name: &str, params: &RecipeParams) -> Result<VerificationReport> {
    let name = RECIPE_ALIASES.iter().find(|(alias, _)| *alias == name).map_or(name, |(_, n)| n);
    match name {
        "petersen-images" => Ok(atlas_recipe(name, &named::petersen().graph, &[named::petersen().graph, named::s4().graph], params)),
        "s10-images" => Ok(atlas_recipe(name, &named::s10().graph, &[named::s10().graph], params)),
        "s12-images" => Ok(atlas_recipe(name, &named::s12().graph, &[named::s10().graph, named::s12().graph], params)),
        "s12kM-rigidity" => {
            let g = named::s12_plus_km(1)?.graph;
            Ok(atlas_recipe(name, &g, std::slice::from_ref(&g), params))
        }
        "p-matching-cuts" => Ok(matching_cuts()),
        "k5-images" => k5_images(params),
        "j4-exclusion" => j4_exclusion(params),
        "poorly-matchable" => poorly_matchable(params),
        "corpus-s4" | "corpus-p" => {
            let host = if name == "corpus-s4" { named::s4().graph } else { named::petersen().graph };
            let text = params.corpus.as_deref().unwrap_or(BUNDLED_CORPUS);
            let opts = CorpusOptions {
                node_limit: Some(params.node_limit.unwrap_or(DEFAULT_NODE_BUDGET)),
                resume_from: params.resume_from,
                threads: params.threads,
                max_vertices: params.max_vertices,
            };
            let mut report = VerificationReport::new(name);
            run_corpus(name, text, &host, &opts, &mut |r| report.checks.push(r.clone()))?;
            Ok(report)
        }
        "preimage-props" => preimage_props(params),
        _ => Err(Error::InvalidParameter(format!("unknown recipe `{name}`; known: {}", RECIPES.join(", ")))),
    }
}

fn atlas_summary(atlas: &ImageAtlas) -> Value {
    Value::Array(
        atlas
            .entries
            .iter()
            .map(|e| {
                json!({
                    "digest": e.form.digest(),
                    "vertices": e.image.graph.vertex_count(),
                    "edges": e.image.graph.edge_count(),
                    "split_vertices": e.image.split_vertex_count(),
                    "unused_leaves": e.image.unused_leaf_count(),
                    "multiplicity": e.multiplicity,
                })
            })
            .collect(),
    )
}

/// Enumerates the atlas of `guest` and compares it with `expected` up to isomorphism.
fn atlas_recipe(name: &str, guest: &Multigraph, expected: &[Multigraph], params: &RecipeParams) -> VerificationReport {
    let mut report = VerificationReport::new(name);
    let atlas = match enumerate_splitted_images(guest, params.node_limit) {
        Ok(a) => a,
        Err(e) => {
            report.push("enumerate", Status::Error, json!(e.to_string()), 0);
            return report;
        }
    };
    let status = if atlas.complete { Status::Pass } else { Status::Unknown };
    report.push("enumeration-complete", status, json!({ "partitions": atlas.partitions }), atlas.nodes);

    let mut want: Vec<String> = expected.iter().map(|g| g.canonical_form().digest()).collect();
    let mut got: Vec<String> = atlas.entries.iter().map(|e| e.form.digest()).collect();
    want.sort();
    got.sort();
    report.expect("image-classes", want == got, json!({ "expected": want.len(), "images": atlas_summary(&atlas) }));
    report.expect(
        "no-split-vertices",
        atlas.entries.iter().all(|e| e.image.split_vertex_count() == 0),
        json!(atlas.entries.iter().map(|e| e.image.split_vertex_count()).collect::<Vec<_>>()),
    );
    let witnesses_ok = atlas.entries.iter().all(|e| {
        let w = e.image.witness.as_ref().expect("atlas entries carry witnesses");
        Colouring::new(w.host_arc().clone(), w.guest_arc().clone(), w.edge_map().to_vec()).is_ok_and(|c| c.is_valid())
    });
    report.expect("witnesses-revalidate", witnesses_ok, json!(atlas.entries.len()));
    report
}

fn matching_cuts() -> VerificationReport {
    let mut report = VerificationReport::new("p-matching-cuts");
    let p = named::petersen().graph;
    let mut total = 0;
    let mut cuts = 0;
    let mut perfect = 0;
    let mut mismatches = 0;
    for m in structure::enumerate_matchings(&p, 0) {
        total += 1;
        let is_cut = p.is_edge_cut(&m.edges).expect("P is connected");
        cuts += is_cut as usize;
        perfect += m.is_perfect as usize;
        if is_cut != m.is_perfect {
            mismatches += 1;
        }
    }
    report.expect(
        "cuts-are-perfect-matchings",
        mismatches == 0,
        json!({ "matchings": total, "cuts": cuts, "mismatches": mismatches }),
    );
    report.expect("perfect-matching-count", perfect == 6, json!(perfect));
    report
}

fn k5_images(params: &RecipeParams) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("k5-images");
    let atlas = enumerate_splitted_images(&named::complete(5)?.graph, params.node_limit)?;
    let status = if atlas.complete { Status::Pass } else { Status::Unknown };
    report.push("enumeration-complete", status, json!({ "partitions": atlas.partitions }), atlas.nodes);
    for e in &atlas.entries {
        let g = &e.image.graph;
        let t = g.vertex_count();
        let pairwise = (0..t).all(|a| (a + 1..t).all(|b| g.multiplicity(a, b) > 0));
        let member = g.is_regular(4) && pairwise;
        report.expect(
            format!("image-{}", &e.form.digest()[..12]),
            member && t % 2 == 1 && e.image.unused_leaf_count() == 0,
            json!({ "t": t, "in_family": member, "unused_leaves": e.image.unused_leaf_count() }),
        );
    }
    Ok(report)
}

fn j4_exclusion(params: &RecipeParams) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("j4-exclusion");
    let j4 = named::j_graph(2)?.graph;
    let hosts: Vec<Multigraph> = named::k_family_members(3, 4).into_iter().chain(named::k_family_members(5, 4)).collect();
    report.expect("host-count", hosts.len() == 2, json!(hosts.len()));
    let limits = Limits { nodes: params.node_limit, time: None };
    for h in &hosts {
        let s = solver::solve(h, &j4, Mode::First, &limits)?;
        let status = match s.outcome {
            Outcome::Unsat => Status::Pass,
            Outcome::Sat => Status::Fail,
            Outcome::Unknown => Status::Unknown,
        };
        let label = format!("unsat-{}", h.name().unwrap_or("host"));
        report.push(label, status, json!({ "outcome": s.outcome, "vertices": h.vertex_count() }), s.stats.nodes);
    }
    Ok(report)
}

fn poorly_matchable(params: &RecipeParams) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("poorly-matchable");
    let host = named::s12_plus_km(1)?.graph;
    let disjoint = structure::two_disjoint_perfect_matchings(&host);
    report.expect("host-two-disjoint-perfect-matchings", disjoint.is_some(), json!(host.name()));

    let witness = match named::poorly_matchable_witness(4, params.witness_order)? {
        WitnessSearch::Found(g) => {
            report.expect("witness-found", true, json!({ "order": g.vertex_count(), "edges": g.edges() }));
            g
        }
        WitnessSearch::NotFound { max_order, examined } => {
            report.expect("witness-found", false, json!({ "max_order": max_order, "examined": examined }));
            return Ok(report);
        }
    };
    let pms = structure::perfect_matchings(&witness);
    let pairwise_meet = pms.iter().enumerate().all(|(i, a)| pms[i + 1..].iter().all(|b| !a.is_disjoint(b)));
    report.expect("witness-regular", witness.is_regular(4), json!(witness.vertex_count()));
    report.expect("witness-has-perfect-matching", !pms.is_empty(), json!(pms.len()));
    report.expect("witness-no-two-disjoint", pairwise_meet, json!(pms.len()));
    let s = solver::solve(&host, &witness, Mode::First, &Limits { nodes: params.node_limit, time: None })?;
    let status = match s.outcome {
        Outcome::Unsat => Status::Pass,
        Outcome::Sat => Status::Fail,
        Outcome::Unknown => Status::Unknown,
    };
    report.push("host-does-not-colour-witness", status, json!({ "outcome": s.outcome }), s.stats.nodes);
    Ok(report)
}

#[derive(Clone, Debug, Default)]
pub struct CorpusOptions {
    pub node_limit: Option<u64>,
    /// Records with a smaller index (0-based, counting non-empty lines) are skipped.
    pub resume_from: usize,
    /// Worker count; `HCOLOR_THREADS`, then the available parallelism, when `None`.
    pub threads: Option<usize>,
    pub max_vertices: Option<usize>,
}

/// Worker pool size: `HCOLOR_THREADS` if set and positive, else the available parallelism.
pub fn pool_size(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var("HCOLOR_THREADS").ok().and_then(|v| v.trim().parse().ok()))
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub records: usize,
    pub checked: usize,
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
    pub skipped: usize,
    pub errors: usize,
}

/// Checks that `host` colours every bridgeless cubic graph of a graph6 corpus.
///
/// Records are solved on a worker pool in chunks and handed to `emit` in
/// input order, so output is order-stable and a stopped run can resume from
/// the last emitted index. Every SAT certificate is re-validated in a
/// separate pass before it is reported.
pub fn run_corpus(
    recipe: &str,
    text: &str,
    host: &Multigraph,
    opts: &CorpusOptions,
    emit: &mut dyn FnMut(&CheckRecord),
) -> Result<CorpusSummary> {
    const CHUNK: usize = 64;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(pool_size(opts.threads))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let version = version_digest();
    let host = Arc::new(host.clone());
    let records: Vec<(usize, usize, Result<Multigraph>)> = parse_graph6_stream(text)
        .enumerate()
        .skip(opts.resume_from)
        .map(|(index, (line, g))| (index, line, g))
        .collect();
    let limits = Limits { nodes: opts.node_limit, time: None };
    let mut summary = CorpusSummary::default();

    for chunk in records.chunks(CHUNK) {
        let results: Vec<CheckRecord> = pool.install(|| {
            chunk
                .par_iter()
                .map(|(index, line, parsed)| {
                    let (status, detail, nodes) = corpus_item(&host, parsed, &limits, opts.max_vertices);
                    let mut detail = detail;
                    detail["index"] = json!(index);
                    detail["line"] = json!(line);
                    CheckRecord {
                        recipe: recipe.to_string(),
                        check: format!("record-{index}"),
                        status,
                        detail,
                        nodes,
                        version: version.clone(),
                    }
                })
                .collect()
        });
        for r in &results {
            summary.records += 1;
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Unknown => summary.unknown += 1,
                Status::Skip => summary.skipped += 1,
                Status::Error => summary.errors += 1,
            }
            if matches!(r.status, Status::Pass | Status::Fail | Status::Unknown) {
                summary.checked += 1;
            }
            emit(r);
        }
    }
    Ok(summary)
}

fn corpus_item(
    host: &Arc<Multigraph>,
    parsed: &Result<Multigraph>,
    limits: &Limits,
    max_vertices: Option<usize>,
) -> (Status, Value, u64) {
    let g = match parsed {
        Ok(g) => g,
        Err(e) => return (Status::Error, json!({ "error": e.to_string() }), 0),
    };
    let n = g.vertex_count();
    if !g.is_regular(3) || !g.is_connected() || !g.is_bridgeless() || max_vertices.is_some_and(|m| n > m) {
        return (Status::Skip, json!({ "vertices": n, "reason": "not a bridgeless cubic graph in range" }), 0);
    }
    let s = match solver::solve(host, g, Mode::First, limits) {
        Ok(s) => s,
        Err(e) => return (Status::Error, json!({ "error": e.to_string() }), 0),
    };
    match s.outcome {
        Outcome::Sat => {
            let map = s.colourings.into_iter().next().unwrap_or_default();
            let guest = Arc::new(g.clone());
            let revalidated = Colouring::new(host.clone(), guest, map.clone()).is_ok_and(|c| c.check().is_empty());
            let status = if revalidated { Status::Pass } else { Status::Fail };
            (status, json!({ "vertices": n, "outcome": "sat", "certificate": map }), s.stats.nodes)
        }
        Outcome::Unsat => (Status::Fail, json!({ "vertices": n, "outcome": "unsat" }), s.stats.nodes),
        Outcome::Unknown => (Status::Unknown, json!({ "vertices": n, "outcome": "unknown" }), s.stats.nodes),
    }
}

/// Tallies for the preimage classifications over sampled colourings.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PreimageTally {
    pub pairs: usize,
    pub colourings: usize,
    pub matching: (usize, usize),
    pub perfect_matching: (usize, usize),
    pub covering_matching: (usize, usize),
    pub edge_cut: (usize, usize),
    pub regular_subgraph: (usize, usize),
    pub image_connected: (usize, usize),
    pub chromatic_index: (usize, usize),
}

fn preimage_pairs() -> Result<Vec<(Multigraph, Multigraph)>> {
    let p = named::petersen().graph;
    let k4 = named::complete(4)?.graph;
    let prism = Multigraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])?.with_name("prism");
    let k33 = Multigraph::from_edges(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])?.with_name("K3,3");
    let cube = Multigraph::from_edges(
        8,
        &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)],
    )?
    .with_name("cube");
    let s12 = named::s12().graph;
    let s12km = named::s12_plus_km(1)?.graph;
    Ok(vec![
        (named::s4().graph, p.clone()),
        (p.clone(), p),
        (named::star(3)?.graph, k4.clone()),
        (k4.clone(), k4.clone()),
        (named::star(3)?.graph, prism.clone()),
        (named::s4().graph, prism.clone()),
        (named::s4().graph, k33.clone()),
        (named::s4().graph, cube.clone()),
        (k4.clone(), prism),
        (named::s10().graph, s12.clone()),
        (s12.clone(), s12),
        (s12km.clone(), s12km),
        (named::complete(5)?.graph, named::complete(5)?.graph),
        (named::s4().graph, k4),
    ])
}

/// Host edge sets to test: matchings, perfect matchings, unions of two
/// disjoint perfect matchings, edge cuts `∂S` and random subsets.
fn probe_sets(host: &Multigraph, rng: &mut StdRng) -> Vec<EdgeSet> {
    let m = host.edge_count();
    let mut sets: Vec<EdgeSet> = structure::enumerate_matchings(host, 1).take(4000).map(|mm| mm.edges).collect();
    sets.shuffle(rng);
    sets.truncate(60);
    let pms = structure::perfect_matchings(host);
    for (i, a) in pms.iter().enumerate().take(30) {
        sets.push(a.clone());
        for b in pms[i + 1..].iter().take(10) {
            if a.is_disjoint(b) {
                sets.push(a.union(b));
            }
        }
    }
    let n = host.vertex_count();
    let mut verts: Vec<usize> = (0..n).collect();
    for _ in 0..40 {
        verts.shuffle(rng);
        let k = 1 + (rand::Rng::gen_range(rng, 0..n.max(2) - 1));
        if let Ok(cut) = host.boundary(&verts[..k.min(n)]) {
            sets.push(cut);
        }
    }
    for _ in 0..20 {
        let mut s = EdgeSet::new(m);
        for e in 0..m {
            if rand::Rng::gen_bool(rng, 0.3) {
                s.insert(e);
            }
        }
        sets.push(s);
    }
    sets
}

fn preimage_props(params: &RecipeParams) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("preimage-props");
    let mut rng = StdRng::seed_from_u64(params.seed);
    let mut tally = PreimageTally::default();
    let mut violations: Vec<Value> = Vec::new();
    for (host, guest) in preimage_pairs()? {
        let all = solver::solve(&host, &guest, Mode::All, &Limits { nodes: params.node_limit, time: None })?;
        if all.outcome != Outcome::Sat {
            report.push(
                format!("pair-{}-{}", host.name().unwrap_or("host"), guest.name().unwrap_or("guest")),
                if all.outcome == Outcome::Unknown { Status::Unknown } else { Status::Fail },
                json!({ "outcome": all.outcome }),
                all.stats.nodes,
            );
            continue;
        }
        tally.pairs += 1;
        let mut maps = all.colourings;
        maps.shuffle(&mut rng);
        maps.truncate(params.samples);
        let host_arc = Arc::new(host.clone());
        let guest_arc = Arc::new(guest.clone());
        let chi_host = structure::chromatic_index(&host).ok();
        let chi_guest = structure::chromatic_index(&guest).ok();
        for map in maps {
            let c = Colouring::validated(host_arc.clone(), guest_arc.clone(), map)?;
            tally.colourings += 1;
            let image = c.image_subgraph()?;
            tally.image_connected.0 += 1;
            if !guest.is_connected() || image.is_connected() {
                tally.image_connected.1 += 1;
            } else {
                violations.push(json!({ "kind": "image-connected", "host": host.name(), "guest": guest.name() }));
            }
            if let (Some(h), Some(g)) = (chi_host, chi_guest) {
                tally.chromatic_index.0 += 1;
                if g <= h {
                    tally.chromatic_index.1 += 1;
                } else {
                    violations.push(json!({ "kind": "chromatic-index", "host": host.name(), "guest": guest.name() }));
                }
            }
            for set in probe_sets(&host, &mut rng) {
                let pre = c.preimage(&set)?;
                let bad = pre.violations();
                let count = |slot: &mut (usize, usize), hyp: bool, kind: &str| {
                    if hyp {
                        slot.0 += 1;
                        if !bad.contains(&kind) {
                            slot.1 += 1;
                        }
                    }
                };
                count(&mut tally.matching, pre.host_matching, "matching");
                count(&mut tally.perfect_matching, pre.host_perfect, "perfect-matching");
                count(&mut tally.covering_matching, pre.covers_used, "covering-matching");
                count(&mut tally.edge_cut, pre.image_cut, "edge-cut");
                count(&mut tally.regular_subgraph, pre.regular_degree.is_some(), "regular-subgraph");
                if !bad.is_empty() {
                    violations.push(json!({
                        "kinds": bad, "host": host.name(), "guest": guest.name(), "set": set.to_vec()
                    }));
                }
            }
        }
    }
    let exercised = [
        tally.matching,
        tally.perfect_matching,
        tally.covering_matching,
        tally.edge_cut,
        tally.regular_subgraph,
    ]
    .iter()
    .all(|&(tested, _)| tested > 0);
    report.expect("coverage", tally.pairs >= 10 && tally.colourings >= 100 && exercised, json!(tally));
    report.expect("zero-violations", violations.is_empty(), json!(violations.iter().take(20).collect::<Vec<_>>()));
    Ok(report)
}
