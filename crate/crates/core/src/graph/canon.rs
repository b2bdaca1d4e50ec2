//! Canonical forms for multigraphs.
//!
//! Vertices are first split into an equitable ordered partition (cells split
//! by the number of edges, with multiplicity, into every other cell). The
//! search then individualizes vertices of the first non-singleton cell,
//! refines again, and at every discrete partition encodes the multiplicity
//! matrix in that vertex order. The least encoding wins. Vertices of the
//! target cell with identical rows ("twins") lead to identical subtrees, so
//! only one of them is expanded.

use std::fmt;

use sha2::{Digest, Sha256};

use super::Multigraph;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Hex SHA-256 of the encoding.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(&self.0);
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Rebuilds a representative graph from the encoding.
    pub fn to_graph(&self) -> Multigraph {
        let n = u32::from_be_bytes(self.0[0..4].try_into().unwrap()) as usize;
        let mut g = Multigraph::new(n);
        let mut pos = 4;
        for i in 0..n {
            for j in i + 1..n {
                let m = u16::from_be_bytes([self.0[pos], self.0[pos + 1]]);
                pos += 2;
                for _ in 0..m {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        g
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", &self.digest()[..16])
    }
}

struct Canonizer {
    n: usize,
    mult: Vec<u16>,
    best: Option<Vec<u8>>,
}

type Partition = Vec<Vec<usize>>;

pub(super) fn canonical_form(g: &Multigraph) -> CanonicalForm {
    let n = g.vertex_count();
    let mut mult = vec![0u16; n * n];
    for &(a, b) in g.edges() {
        mult[a * n + b] += 1;
        mult[b * n + a] += 1;
    }
    let mut c = Canonizer { n, mult, best: None };

    let mut by_degree: Vec<(usize, usize)> = g.degrees().into_iter().enumerate().map(|(v, d)| (d, v)).collect();
    by_degree.sort_unstable();
    let mut cells: Partition = Vec::new();
    for (d, v) in by_degree {
        match cells.last_mut() {
            Some(cell) if g.incident(cell[0]).len() == d => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    c.search(cells);
    let best = c.best.take();
    CanonicalForm(best.unwrap_or_else(|| c.encode(&[])))
}

impl Canonizer {
    fn row(&self, v: usize) -> &[u16] {
        &self.mult[v * self.n..(v + 1) * self.n]
    }

    fn refine(&self, cells: &mut Partition) {
        loop {
            let mut changed = false;
            for s in 0..cells.len() {
                let mut next: Partition = Vec::with_capacity(cells.len());
                for cell in cells.iter() {
                    if cell.len() == 1 {
                        next.push(cell.clone());
                        continue;
                    }
                    let mut keyed: Vec<(u32, usize)> = cell
                        .iter()
                        .map(|&v| {
                            let row = self.row(v);
                            (cells[s].iter().map(|&w| row[w] as u32).sum(), v)
                        })
                        .collect();
                    keyed.sort_unstable();
                    let mut start = 0;
                    for i in 1..=keyed.len() {
                        if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                            next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                            start = i;
                        }
                    }
                }
                if next.len() != cells.len() {
                    *cells = next;
                    changed = true;
                    break;
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn encode(&self, order: &[usize]) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + order.len() * order.len());
        out.extend_from_slice(&(self.n as u32).to_be_bytes());
        for i in 0..order.len() {
            let row = self.row(order[i]);
            for &vj in &order[i + 1..] {
                out.extend_from_slice(&row[vj].to_be_bytes());
            }
        }
        out
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.row(a), self.row(b));
        (0..self.n).all(|x| x == a || x == b || ra[x] == rb[x])
    }

    fn search(&mut self, mut cells: Partition) {
        self.refine(&mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let code = self.encode(&order);
            if self.best.as_ref().is_none_or(|b| code < *b) {
                self.best = Some(code);
            }
            return;
        };
        let cell = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&t| self.twins(t, v)) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cell.iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            self.search(next);
        }
    }
}
