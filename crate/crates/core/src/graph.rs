//! Weighted simple undirected graphs, the edge-list format, random instance
//! generation, cut evaluation and an exhaustive Max-Cut oracle.
//!
//! The edge-list format is the Gset-style text layout:
//!
//! ```text
//! n m
//! i j w      (m lines, 1-indexed vertices, decimal weight)
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, ParseError, ParseErrorKind, Result};
use crate::rng::{seeded, STREAM_GRAPH};
use crate::scalar::Scalar;

/// Largest vertex count accepted by [`brute_force_max_cut`].
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Undirected edge, stored with `i < j` (0-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<T> {
    pub i: usize,
    pub j: usize,
    pub w: T,
}

/// Weighted simple undirected graph. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph<T> {
    n: usize,
    edges: Vec<Edge<T>>,
    adjacency: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> Graph<T> {
    /// Builds a graph from 0-based `(i, j, w)` triples.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut b = Builder::new(n).map_err(Error::InvalidGraph)?;
        for (i, j, w) in edges {
            b.push(i, j, w).map_err(Error::InvalidGraph)?;
        }
        Ok(b.finish())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    /// Neighbours of `v` with the connecting edge weight.
    pub fn neighbors(&self, v: usize) -> &[(usize, T)] {
        &self.adjacency[v]
    }

    /// `w(i, j)`; zero for non-edges and for `i == j`.
    pub fn weight(&self, i: usize, j: usize) -> T {
        self.adjacency
            .get(i)
            .and_then(|adj| adj.iter().find(|&&(k, _)| k == j))
            .map_or(T::zero(), |&(_, w)| w)
    }

    pub fn total_weight(&self) -> T {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// Fraction of vertex pairs joined by an edge.
    pub fn density(&self) -> f64 {
        let pairs = self.n * (self.n - 1) / 2;
        self.edges.len() as f64 / pairs as f64
    }

    /// Parses the edge-list format. Vertices are 1-indexed in the text.
    pub fn parse_edge_list(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or(ParseError {
            line: 1,
            kind: ParseErrorKind::MalformedLine(String::new()),
        })?;
        let malformed = |line: usize, content: &str| ParseError {
            line,
            kind: ParseErrorKind::MalformedLine(content.to_string()),
        };
        let mut fields = header.split_whitespace();
        let (n, m) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => (
                a.parse::<usize>().map_err(|_| malformed(hline, header))?,
                b.parse::<usize>().map_err(|_| malformed(hline, header))?,
            ),
            _ => return Err(malformed(hline, header)),
        };
        let mut builder = Builder::new(n).map_err(|kind| ParseError { line: hline, kind })?;

        let mut found = 0usize;
        for (line, content) in lines {
            let mut f = content.split_whitespace();
            let (i, j, w) = match (f.next(), f.next(), f.next(), f.next()) {
                (Some(i), Some(j), Some(w), None) => (i, j, w),
                _ => return Err(malformed(line, content)),
            };
            let i = i.parse::<usize>().map_err(|_| malformed(line, content))?;
            let j = j.parse::<usize>().map_err(|_| malformed(line, content))?;
            let w = w
                .parse::<T>()
                .ok()
                .filter(|w| w.is_finite())
                .ok_or_else(|| malformed(line, content))?;
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::IndexOutOfRange { vertex: v, n },
                    });
                }
            }
            builder.push(i - 1, j - 1, w).map_err(|kind| ParseError {
                line,
                kind: one_based(kind),
            })?;
            found += 1;
        }
        if found != m {
            return Err(ParseError {
                line: hline,
                kind: ParseErrorKind::EdgeCountMismatch { expected: m, found },
            });
        }
        Ok(builder.finish())
    }

    /// Writes the edge-list format; weights use the shortest exact decimal.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 * (self.edges.len() + 1));
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.i + 1, e.j + 1, e.w);
        }
        out
    }

    /// Random simple graph with exactly `m_edges` edges.
    ///
    /// Edges are drawn by rejection sampling over unordered pairs, then sorted;
    /// weights are drawn afterwards in sorted edge order.
    pub fn generate(n: usize, m_edges: usize, mode: WeightMode, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGraph(ParseErrorKind::TooFewVertices(n)));
        }
        let max = n * (n - 1) / 2;
        if m_edges > max {
            return Err(Error::TooManyEdges {
                requested: m_edges,
                max,
            });
        }
        if let WeightMode::RandomRange { lo, hi } = mode {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidArgument(format!("weight range ({lo}, {hi})")));
            }
        }
        let mut rng = seeded(seed, STREAM_GRAPH);
        let mut seen = HashSet::with_capacity(m_edges);
        while seen.len() < m_edges {
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            if a != b {
                seen.insert((a.min(b), a.max(b)));
            }
        }
        let mut pairs: Vec<_> = seen.into_iter().collect();
        pairs.sort_unstable();
        let edges: Vec<_> = pairs
            .into_iter()
            .map(|(i, j)| {
                let w = match mode {
                    WeightMode::Uniform1 => 1.0,
                    WeightMode::RandomRange { lo, hi } => loop {
                        // open interval (lo, hi)
                        let w = rng.random_range(lo..hi);
                        if w > lo {
                            break w;
                        }
                    },
                };
                (i, j, T::lit(w))
            })
            .collect();
        Self::from_edges(n, edges)
    }
}

fn one_based(kind: ParseErrorKind) -> ParseErrorKind {
    match kind {
        ParseErrorKind::SelfLoop(v) => ParseErrorKind::SelfLoop(v + 1),
        ParseErrorKind::DuplicateEdge(i, j) => ParseErrorKind::DuplicateEdge(i + 1, j + 1),
        other => other,
    }
}

struct Builder<T> {
    n: usize,
    edges: Vec<Edge<T>>,
    seen: HashSet<(usize, usize)>,
}

impl<T: Scalar> Builder<T> {
    fn new(n: usize) -> Result<Self, ParseErrorKind> {
        if n < 2 {
            return Err(ParseErrorKind::TooFewVertices(n));
        }
        Ok(Self {
            n,
            edges: Vec::new(),
            seen: HashSet::new(),
        })
    }

    fn push(&mut self, i: usize, j: usize, w: T) -> Result<(), ParseErrorKind> {
        for v in [i, j] {
            if v >= self.n {
                return Err(ParseErrorKind::IndexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
        }
        if i == j {
            return Err(ParseErrorKind::SelfLoop(i));
        }
        let (i, j) = (i.min(j), i.max(j));
        if !self.seen.insert((i, j)) {
            return Err(ParseErrorKind::DuplicateEdge(i, j));
        }
        self.edges.push(Edge { i, j, w });
        Ok(())
    }

    fn finish(self) -> Graph<T> {
        let mut adjacency = vec![Vec::new(); self.n];
        for e in &self.edges {
            adjacency[e.i].push((e.j, e.w));
            adjacency[e.j].push((e.i, e.w));
        }
        Graph {
            n: self.n,
            edges: self.edges,
            adjacency,
        }
    }
}

/// How edge weights are assigned by [`Graph::generate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightMode {
    /// Every weight is 1.
    Uniform1,
    /// Weights i.i.d. uniform on the open interval `(lo, hi)`.
    RandomRange { lo: f64, hi: f64 },
}

/// Bipartition labels, one `+1`/`-1` entry per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CutAssignment(Vec<i8>);

impl CutAssignment {
    pub fn new(labels: Vec<i8>) -> Result<Self> {
        if let Some(bad) = labels.iter().find(|&&x| x != 1 && x != -1) {
            return Err(Error::InvalidArgument(format!("cut label {bad} is not ±1")));
        }
        Ok(Self(labels))
    }

    pub fn from_sides(sides: impl IntoIterator<Item = bool>) -> Self {
        Self(sides.into_iter().map(|s| if s { 1 } else { -1 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[i8] {
        &self.0
    }

    /// Global flip `x -> -x`.
    pub fn flipped(&self) -> Self {
        Self(self.0.iter().map(|&x| -x).collect())
    }
}

/// `½ Σ w_ij (1 - x_i x_j)`: total weight of edges crossing the bipartition.
pub fn cut_value<T: Scalar>(g: &Graph<T>, x: &CutAssignment) -> Result<T> {
    check_len(g.n(), x.len())?;
    let l = x.labels();
    Ok(g.edges()
        .iter()
        .filter(|e| l[e.i] != l[e.j])
        .map(|e| e.w)
        .sum())
}

/// Exhaustive Max-Cut over the `2^(n-1)` bipartitions with `x[0] = +1`.
///
/// Walks a Gray code so each step flips one vertex and updates the cut value
/// from that vertex's neighbourhood. The reported value is recomputed from
/// scratch for the winning assignment.
pub fn brute_force_max_cut<T: Scalar>(g: &Graph<T>) -> Result<(T, CutAssignment)> {
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut x = vec![1i8; n];
    let mut cut = T::zero();
    let mut best = T::zero();
    let mut best_x = x.clone();
    for k in 1u64..(1u64 << (n - 1)) {
        let v = k.trailing_zeros() as usize + 1;
        let delta: T = g
            .neighbors(v)
            .iter()
            .map(|&(u, w)| if x[u] == x[v] { w } else { -w })
            .sum();
        cut += delta;
        x[v] = -x[v];
        if cut > best {
            best = cut;
            best_x.copy_from_slice(&x);
        }
    }
    let best_x = CutAssignment(best_x);
    let value = cut_value(g, &best_x)?;
    Ok((value, best_x))
}

/// Unit-weight graph families used for certification suites.
pub mod families {
    use super::Graph;
    use crate::scalar::Scalar;

    fn unit<T: Scalar>(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Graph<T> {
        Graph::from_edges(n, pairs.into_iter().map(|(i, j)| (i, j, T::one())))
            .expect("family graphs are simple")
    }

    pub fn complete<T: Scalar>(n: usize) -> Graph<T> {
        unit(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn cycle<T: Scalar>(n: usize) -> Graph<T> {
        unit(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete_bipartite<T: Scalar>(a: usize, b: usize) -> Graph<T> {
        unit(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
    }

    /// `d`-dimensional hypercube `Q_d`.
    pub fn hypercube<T: Scalar>(d: u32) -> Graph<T> {
        let n = 1usize << d;
        unit(
            n,
            (0..n).flat_map(|v| {
                (0..d)
                    .map(move |b| (v, v ^ (1 << b)))
                    .filter(|&(v, u)| v < u)
            }),
        )
    }

    pub fn petersen<T: Scalar>() -> Graph<T> {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        unit(10, outer.chain(spokes).chain(inner))
    }
}
