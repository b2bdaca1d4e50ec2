//! Text formats: the plain edge list and graph6/sparse6 ingestion.
//!
//! Edge list: first non-comment line `n m`, then `m` lines `a b` with 0-based
//! vertex ids. Line order fixes edge ids, so repeated lines are parallel
//! edges. Lines starting with `#` are comments.

use std::fmt::Write as _;

use super::Multigraph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Multigraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse { line: 0, message: "missing `n m` header".into() })?;
    let [n, m] = parse_pair(hline, header)?;
    let mut g = Multigraph::new(n);
    for _ in 0..m {
        let (line, l) = lines.next().ok_or(Error::Parse {
            line: hline,
            message: format!("header announces {m} edges, found {}", g.edge_count()),
        })?;
        let [a, b] = parse_pair(line, l)?;
        g.add_edge(a, b).map_err(|e| Error::Parse { line, message: e.to_string() })?;
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse { line, message: format!("more than the announced {m} edges") });
    }
    Ok(g)
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let mut it = text.split_whitespace().map(|t| {
        t.parse::<usize>().map_err(|_| Error::Parse { line, message: format!("expected a non-negative integer, got `{t}`") })
    });
    let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
        return Err(Error::Parse { line, message: "expected exactly two integers".into() });
    };
    Ok([a?, b?])
}

/// Writes the edge-list format. Each `comments` entry becomes a `# ` line before the header.
pub fn write_edge_list(g: &Multigraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

/// Decodes one graph6 or sparse6 record (an optional `>>graph6<<` / `>>sparse6<<` header is skipped).
pub fn decode_record(line: &str) -> Result<Multigraph> {
    let line = line.trim_end_matches(['\r', '\n']);
    let line = line.strip_prefix(">>graph6<<").or_else(|| line.strip_prefix(">>sparse6<<")).unwrap_or(line);
    if let Some(rest) = line.strip_prefix(':') {
        decode_sparse6(rest)
    } else {
        decode_graph6(line)
    }
}

fn sixes(s: &str) -> std::result::Result<Vec<u8>, String> {
    s.bytes()
        .map(|b| if (63..=126).contains(&b) { Ok(b - 63) } else { Err(format!("invalid byte {b:#04x}")) })
        .collect()
}

fn read_size(data: &[u8]) -> std::result::Result<(usize, &[u8]), String> {
    let take = |k: usize, rest: &[u8]| -> std::result::Result<usize, String> {
        if rest.len() < k {
            return Err("truncated vertex count".into());
        }
        Ok(rest[..k].iter().fold(0usize, |acc, &x| (acc << 6) | x as usize))
    };
    match data {
        [] => Err("empty record".into()),
        [63, 63, rest @ ..] => Ok((take(6, rest)?, &rest[6.min(rest.len())..])),
        [63, rest @ ..] => Ok((take(3, rest)?, &rest[3.min(rest.len())..])),
        [x, rest @ ..] => Ok((*x as usize, rest)),
    }
}

pub fn decode_graph6(s: &str) -> Result<Multigraph> {
    let fail = |message: String| Error::Parse { line: 1, message };
    let data = sixes(s).map_err(fail)?;
    let (n, body) = read_size(&data).map_err(fail)?;
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() != needed {
        return Err(fail(format!("graph6 body has {} bytes, expected {needed} for n = {n}", body.len())));
    }
    let mut g = Multigraph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if body[k / 6] & (1 << (5 - k % 6)) != 0 {
                g.add_edge(i, j).map_err(|e| fail(e.to_string()))?;
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn encode_graph6(g: &Multigraph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::InvalidParameter("graph6 encodes simple graphs only".into()));
    }
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8);
    } else if n <= 258_047 {
        out.extend([63, (n >> 12) as u8 & 63, (n >> 6) as u8 & 63, n as u8 & 63]);
    } else {
        out.extend([63, 63]);
        out.extend((0..6).rev().map(|i| (n >> (6 * i)) as u8 & 63));
    }
    let mut adj = vec![false; n * n];
    for &(a, b) in g.edges() {
        adj[a * n + b] = true;
        adj[b * n + a] = true;
    }
    let bits: Vec<bool> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).map(|(i, j)| adj[i * n + j]).collect();
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (k, &bit) in chunk.iter().enumerate() {
            if bit {
                byte |= 1 << (5 - k);
            }
        }
        out.push(byte);
    }
    Ok(out.into_iter().map(|b| (b + 63) as char).collect())
}

/// sparse6 is accepted only when the record describes a simple graph.
pub fn decode_sparse6(s: &str) -> Result<Multigraph> {
    let fail = |message: String| Error::Parse { line: 1, message };
    let data = sixes(s).map_err(fail)?;
    let (n, body) = read_size(&data).map_err(fail)?;
    let k = if n <= 1 { 0 } else { (usize::BITS - (n - 1).leading_zeros()) as usize };
    let mut bits = body.iter().flat_map(|&b| (0..6).rev().map(move |i| (b >> i) & 1 == 1));
    let mut g = Multigraph::new(n);
    let mut v = 0usize;
    while let Some(b) = bits.next() {
        let mut x = 0usize;
        let mut complete = true;
        for _ in 0..k {
            match bits.next() {
                Some(bit) => x = (x << 1) | bit as usize,
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if !complete {
            break;
        }
        if b {
            v += 1;
        }
        if x >= n || v >= n {
            break;
        }
        if x > v {
            v = x;
        } else {
            if x == v {
                return Err(fail(format!("sparse6 record has a loop at vertex {v}")));
            }
            g.add_edge(x, v).map_err(|e| fail(e.to_string()))?;
        }
    }
    if !g.is_simple() {
        return Err(fail("sparse6 record has parallel edges; only simple graphs are accepted".into()));
    }
    Ok(g)
}

/// Decodes every non-empty line; errors are reported per record with their 1-based line number.
pub fn parse_graph6_stream(text: &str) -> impl Iterator<Item = (usize, Result<Multigraph>)> + '_ {
    text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).map(|(i, l)| {
        let line = i + 1;
        let parsed = decode_record(l.trim()).map_err(|e| match e {
            Error::Parse { message, .. } => Error::Parse { line, message },
            other => other,
        });
        (line, parsed)
    })
}
