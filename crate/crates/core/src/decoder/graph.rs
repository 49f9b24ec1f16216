//! Matching graphs of check matrices and unit-weight shortest paths on them.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;

/// Endpoint of a qubit edge: a check row or the shared boundary node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Endpoint {
    Check(usize),
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub a: Endpoint,
    pub b: Endpoint,
    pub qubit: usize,
}

/// One node per check row, one edge per qubit. Qubits seen by a single
/// check attach to the boundary node.
#[derive(Clone, Debug, Serialize)]
pub struct MatchingGraph {
    check_nodes: usize,
    has_boundary: bool,
    edges: Vec<GraphEdge>,
    /// `(neighbour node, qubit)` per node, ascending by qubit. The boundary,
    /// when present, is node `check_nodes`.
    #[serde(skip)]
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl MatchingGraph {
    pub fn check_nodes(&self) -> usize {
        self.check_nodes
    }

    pub fn has_boundary(&self) -> bool {
        self.has_boundary
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    /// Total node count including the boundary.
    pub fn node_count(&self) -> usize {
        self.check_nodes + usize::from(self.has_boundary)
    }

    pub fn boundary_node(&self) -> Option<usize> {
        self.has_boundary.then_some(self.check_nodes)
    }

    pub fn neighbours(&self, node: usize) -> &[(usize, usize)] {
        &self.adjacency[node]
    }

    /// Edge list, one `a b qubit` line per qubit, 1-based labels and `B` for the boundary.
    pub fn to_edge_list(&self) -> String {
        let label = |e: Endpoint| match e {
            Endpoint::Check(c) => (c + 1).to_string(),
            Endpoint::Boundary => "B".to_string(),
        };
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", label(e.a), label(e.b), e.qubit + 1);
        }
        out
    }
}

pub fn build_matching_graph(h: &BinaryMatrix) -> Result<MatchingGraph> {
    let check_nodes = h.rows();
    let t = h.transpose();
    let mut edges = Vec::with_capacity(h.cols());
    let mut has_boundary = false;
    for q in 0..h.cols() {
        let rows = t.row(q).support();
        let edge = match rows.as_slice() {
            [c] => {
                has_boundary = true;
                GraphEdge { a: Endpoint::Check(*c), b: Endpoint::Boundary, qubit: q }
            }
            [a, b] => GraphEdge { a: Endpoint::Check(*a), b: Endpoint::Check(*b), qubit: q },
            _ => return Err(Error::NotMatchable { column: q, weight: rows.len() }),
        };
        edges.push(edge);
    }
    let nodes = check_nodes + usize::from(has_boundary);
    let index = |e: Endpoint| match e {
        Endpoint::Check(c) => c,
        Endpoint::Boundary => check_nodes,
    };
    let mut adjacency = vec![Vec::new(); nodes];
    for e in &edges {
        adjacency[index(e.a)].push((index(e.b), e.qubit));
        adjacency[index(e.b)].push((index(e.a), e.qubit));
    }
    Ok(MatchingGraph { check_nodes, has_boundary, edges, adjacency })
}

pub const UNREACHABLE: u32 = u32::MAX;

/// All-pairs unit-weight distances where the boundary may be an endpoint
/// but never an intermediate node.
#[derive(Clone, Debug)]
pub struct ShortestPaths {
    nodes: usize,
    dist: Vec<u32>,
    boundary: Option<usize>,
}

impl ShortestPaths {
    pub fn new(graph: &MatchingGraph) -> Self {
        let nodes = graph.node_count();
        let boundary = graph.boundary_node();
        let mut dist = vec![UNREACHABLE; nodes * nodes];
        let mut queue = VecDeque::new();
        for src in 0..nodes {
            let row = &mut dist[src * nodes..(src + 1) * nodes];
            row[src] = 0;
            queue.clear();
            queue.push_back(src);
            while let Some(v) = queue.pop_front() {
                if Some(v) == boundary && v != src {
                    continue;
                }
                for &(u, _) in graph.neighbours(v) {
                    if row[u] == UNREACHABLE {
                        row[u] = row[v] + 1;
                        queue.push_back(u);
                    }
                }
            }
        }
        Self { nodes, dist, boundary }
    }

    /// Edge count of a shortest path, or `None` when disconnected.
    pub fn distance(&self, a: usize, b: usize) -> Option<u32> {
        let d = self.dist[a * self.nodes + b];
        (d != UNREACHABLE).then_some(d)
    }

    /// Qubits along the lexicographically least shortest path from `a` to
    /// `b`: at each step take the lowest-indexed qubit that moves closer.
    pub fn path(&self, graph: &MatchingGraph, a: usize, b: usize, out: &mut Vec<usize>) {
        let mut v = a;
        while v != b {
            let dv = self.dist[b * self.nodes + v];
            let step = graph
                .neighbours(v)
                .iter()
                .find(|&&(u, _)| {
                    (u == b || Some(u) != self.boundary) && self.dist[b * self.nodes + u] + 1 == dv
                })
                .copied()
                .expect("connected nodes have a descending neighbour");
            out.push(step.1);
            v = step.0;
        }
    }
}

/// Distances and witnesses among a set of defects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectDistances {
    pub defects: Vec<usize>,
    /// `pairwise[i][j]`, `None` when the pair is disconnected.
    pub pairwise: Vec<Vec<Option<u32>>>,
    /// `pair_paths[i][j]`: qubits of the witness from defect `i` to `j`.
    pub pair_paths: Vec<Vec<Vec<usize>>>,
    /// Distance and witness to the boundary, when one exists.
    pub boundary: Option<Vec<(Option<u32>, Vec<usize>)>>,
}

pub fn defect_distances(graph: &MatchingGraph, paths: &ShortestPaths, defects: &[usize]) -> Result<DefectDistances> {
    if let Some(&bad) = defects.iter().find(|&&d| d >= graph.check_nodes()) {
        return Err(Error::DimensionMismatch { expected: graph.check_nodes(), found: bad + 1 });
    }
    let m = defects.len();
    let mut pairwise = vec![vec![None; m]; m];
    let mut pair_paths = vec![vec![Vec::new(); m]; m];
    for i in 0..m {
        for j in 0..m {
            let d = paths.distance(defects[i], defects[j]);
            if d.is_none() && !graph.has_boundary() {
                return Err(Error::Disconnected { a: defects[i], b: defects[j] });
            }
            if d.is_some() {
                paths.path(graph, defects[i], defects[j], &mut pair_paths[i][j]);
            }
            pairwise[i][j] = d;
        }
    }
    let boundary = graph.boundary_node().map(|b| {
        defects
            .iter()
            .map(|&d| {
                let dist = paths.distance(d, b);
                let mut p = Vec::new();
                if dist.is_some() {
                    paths.path(graph, d, b, &mut p);
                }
                (dist, p)
            })
            .collect()
    });
    Ok(DefectDistances { defects: defects.to_vec(), pairwise, pair_paths, boundary })
}
