//! `hcolor`: generate named graphs, solve and check H-colourings, enumerate
//! splitted images, and run verification recipes and corpus batches.
//!
//! Exit codes: 0 when everything passed, 1 when some check failed (or a
//! colouring does not exist / is invalid), 2 on unknown results and errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hcolor::colouring::{Certificate, Colouring};
use hcolor::graph::io::{decode_record, parse_edge_list, write_edge_list};
use hcolor::images::enumerate_splitted_images;
use hcolor::named;
use hcolor::solver::{self, Limits, Mode, Outcome};
use hcolor::verify::{self, CorpusOptions, RecipeParams, Status};
use hcolor::Multigraph;

#[derive(Parser)]
#[command(name = "hcolor", version, about = "Exact H-colourings of loopless multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named graph in edge-list format, with its role map as comments.
    Gen {
        /// petersen, s4, s6, s10, s12, complete, complete-minus-edge, star, tk2, j
        name: String,
        /// k for s4/s6/s12 (+kM), n for complete graphs, t for star/tk2, r for j.
        param: Option<usize>,
    },
    /// Decide whether HOST colours GUEST; print certificates, a count, UNSAT or UNKNOWN.
    Solve {
        #[arg(long)]
        host: String,
        #[arg(long)]
        guest: String,
        /// Print every colouring.
        #[arg(long, conflicts_with = "count")]
        all: bool,
        /// Print only the number of colourings.
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Enumerate every splitted image of GUEST up to isomorphism.
    Images {
        #[arg(long)]
        guest: String,
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Validate a colouring certificate.
    Check {
        certificate: PathBuf,
        /// Host graph; defaults to the file named in the certificate.
        #[arg(long)]
        host: Option<String>,
        /// Guest graph; defaults to the file named in the certificate.
        #[arg(long)]
        guest: Option<String>,
    },
    /// Run a named verification recipe; JSON lines on stdout.
    Recipe {
        /// Recipe name, or `list`.
        name: String,
        #[command(flatten)]
        params: RecipeArgs,
    },
    /// Check that HOST colours every bridgeless cubic graph in a graph6 file.
    Corpus {
        file: PathBuf,
        /// Named graph (`s4`, `p`, ...) or a graph file.
        #[arg(long)]
        host: String,
        /// Node budget per solve.
        #[arg(long, default_value_t = verify::DEFAULT_NODE_BUDGET)]
        node_limit: u64,
        /// Skip records before this 0-based index.
        #[arg(long, default_value_t = 0)]
        resume_from: usize,
        /// Worker threads (default: HCOLOR_THREADS, then all cores).
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        max_vertices: Option<usize>,
    },
}

#[derive(Args)]
struct LimitArgs {
    /// Node budget; unlimited by default.
    #[arg(long)]
    node_limit: Option<u64>,
    /// Time budget in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

#[derive(Args)]
struct RecipeArgs {
    /// Node budget per solve or enumeration (corpus recipes default to 10^8).
    #[arg(long)]
    node_limit: Option<u64>,
    /// graph6 corpus for corpus-s4 / corpus-p (default: bundled corpus).
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    max_vertices: Option<usize>,
    /// Largest witness order searched by poorly-matchable.
    #[arg(long, default_value_t = 8)]
    witness_order: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Colourings sampled per pair in preimage-props.
    #[arg(long, default_value_t = 12)]
    samples: usize,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 0)]
    resume_from: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn exit_for(status: Status) -> ExitCode {
    match status {
        Status::Pass | Status::Skip => ExitCode::SUCCESS,
        Status::Fail => ExitCode::from(1),
        Status::Unknown | Status::Error => ExitCode::from(2),
    }
}

/// Loads a graph from `@name[:param]` or a file (graph6/sparse6 for `.g6`/`.s6`, edge list otherwise).
fn load_graph(spec: &str) -> Result<Multigraph> {
    if let Some(rest) = spec.strip_prefix('@') {
        let (name, param) = match rest.split_once(':') {
            Some((n, p)) => (n, Some(p.parse().with_context(|| format!("bad parameter in `{spec}`"))?)),
            None => (rest, None),
        };
        return Ok(named::by_name(name, param)?.graph);
    }
    let path = Path::new(spec);
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let graph6 = matches!(path.extension().and_then(|e| e.to_str()), Some("g6" | "s6"));
    let g = if graph6 {
        let line = text.lines().find(|l| !l.trim().is_empty()).context("empty graph6 file")?;
        decode_record(line.trim())?
    } else {
        parse_edge_list(&text)?
    };
    Ok(g)
}

fn run(command: Command) -> Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match command {
        Command::Gen { name, param } => {
            let g = named::by_name(&name, param)?;
            write!(out, "{}", write_edge_list(&g.graph, &g.role_comments()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { host, guest, all, count, limits } => {
            let h = Arc::new(load_graph(&host)?);
            let g = Arc::new(load_graph(&guest)?);
            let mode = if count {
                Mode::Count
            } else if all {
                Mode::All
            } else {
                Mode::First
            };
            let limits = Limits { nodes: limits.node_limit, time: limits.time_limit.map(Duration::from_secs_f64) };
            let start = Instant::now();
            let s = solver::solve(&h, &g, mode, &limits)?;
            eprintln!(
                "outcome {:?}, nodes {}, prunes {}, {:.3?}",
                s.outcome,
                s.stats.nodes,
                s.stats.prunes,
                start.elapsed()
            );
            match s.outcome {
                Outcome::Unsat => {
                    writeln!(out, "UNSAT")?;
                    return Ok(ExitCode::from(1));
                }
                Outcome::Unknown => {
                    writeln!(out, "UNKNOWN")?;
                    return Ok(ExitCode::from(2));
                }
                Outcome::Sat => {}
            }
            if mode == Mode::Count {
                writeln!(out, "{}", s.count)?;
            }
            for (i, map) in s.colourings.into_iter().enumerate() {
                let c = Colouring::validated(h.clone(), g.clone(), map)?;
                if i > 0 {
                    writeln!(out)?;
                }
                write!(out, "{}", c.to_certificate(&host, &guest))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Images { guest, node_limit } => {
            let g = load_graph(&guest)?;
            let start = Instant::now();
            let atlas = enumerate_splitted_images(&g, node_limit)?;
            eprintln!(
                "{} images, {} partitions, {} nodes, complete {}, {:.3?}",
                atlas.entries.len(),
                atlas.partitions,
                atlas.nodes,
                atlas.complete,
                start.elapsed()
            );
            if atlas.tk2 {
                writeln!(out, "# guest is regular and class 1: tK2 colours it")?;
            }
            for (i, e) in atlas.entries.iter().enumerate() {
                let comments = vec![
                    format!("image {i}"),
                    format!("digest {}", e.form.digest()),
                    format!("split_vertices {}", e.image.split_vertex_count()),
                    format!("unused_leaves {}", e.image.unused_leaf_count()),
                    format!("multiplicity {}", e.multiplicity),
                ];
                write!(out, "{}", write_edge_list(&e.image.graph, &comments))?;
                let witness = e.image.witness.as_ref().expect("atlas entries carry witnesses");
                for line in witness.to_certificate(&format!("image-{i}"), &guest).lines() {
                    writeln!(out, "# {line}")?;
                }
                writeln!(out)?;
            }
            if !atlas.complete {
                writeln!(out, "# INCOMPLETE: node limit reached")?;
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { certificate, host, guest } => {
            let text = fs::read_to_string(&certificate).with_context(|| format!("reading {}", certificate.display()))?;
            let cert = Certificate::parse(&text)?;
            let base = certificate.parent().unwrap_or(Path::new("."));
            let resolve = |given: Option<String>, named: &str| -> String {
                given.unwrap_or_else(|| {
                    if named.starts_with('@') || Path::new(named).is_absolute() {
                        named.to_string()
                    } else {
                        base.join(named).to_string_lossy().into_owned()
                    }
                })
            };
            let h = Arc::new(load_graph(&resolve(host, &cert.host_file))?);
            let g = Arc::new(load_graph(&resolve(guest, &cert.guest_file))?);
            match cert.bind(h.clone(), g.clone()) {
                Ok(_) => {
                    writeln!(out, "VALID")?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(hcolor::Error::InvalidColouring(n)) => {
                    writeln!(out, "INVALID ({n} violations)")?;
                    let c = Colouring::new(h, g, cert.edge_map.clone())?;
                    for v in c.check() {
                        writeln!(out, "  {v:?}")?;
                    }
                    Ok(ExitCode::from(1))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Recipe { name, params } => {
            if name == "list" {
                for r in verify::RECIPES {
                    writeln!(out, "{r}")?;
                }
                return Ok(ExitCode::SUCCESS);
            }
            let corpus = match &params.corpus {
                Some(p) => Some(fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?),
                None => None,
            };
            let rp = RecipeParams {
                node_limit: params.node_limit,
                corpus,
                max_vertices: params.max_vertices,
                witness_order: params.witness_order,
                seed: params.seed,
                samples: params.samples,
                threads: params.threads,
                resume_from: params.resume_from,
            };
            let start = Instant::now();
            let report = verify::run_recipe(&name, &rp)?;
            write!(out, "{}", report.to_json_lines())?;
            eprintln!("{name}: {:?} ({} checks, {:.3?})", report.status(), report.checks.len(), start.elapsed());
            Ok(exit_for(report.status()))
        }
        Command::Corpus { file, host, node_limit, resume_from, threads, max_vertices } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let h = match named::by_name(&host, None) {
                Ok(g) => g.graph,
                Err(_) => load_graph(&host)?,
            };
            let opts = CorpusOptions { node_limit: Some(node_limit), resume_from, threads, max_vertices };
            let start = Instant::now();
            let mut write_err = None;
            let summary = verify::run_corpus(&format!("corpus-{host}"), &text, &h, &opts, &mut |r| {
                if let Err(e) = writeln!(out, "{}", r.to_json_line()).and_then(|_| out.flush()) {
                    write_err.get_or_insert(e);
                }
            })?;
            if let Some(e) = write_err {
                bail!("writing report: {e}");
            }
            eprintln!(
                "{} records: {} pass, {} fail, {} unknown, {} skipped, {} errors ({:.3?})",
                summary.records,
                summary.pass,
                summary.fail,
                summary.unknown,
                summary.skipped,
                summary.errors,
                start.elapsed()
            );
            let status = if summary.fail > 0 {
                Status::Fail
            } else if summary.errors > 0 || summary.unknown > 0 {
                Status::Unknown
            } else {
                Status::Pass
            };
            Ok(exit_for(status))
        }
    }
}
