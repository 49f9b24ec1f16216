//! Minimum-weight perfect-matching decoding of CSS codes.
//!
//! X and Z components are decoded independently: flagged X checks are
//! matched on the X-check graph to produce a Z correction, flagged Z checks
//! on the Z-check graph to produce an X correction. With a boundary, every
//! defect gets a private boundary copy; copies pair among themselves at zero
//! cost.
//!
//! Ties are resolved in two layers. Paths use the lowest-qubit descending
//! step. Matchings minimise total weight first, then the sum of edge ranks,
//! where ranks number the defect-defect and defect-boundary edges in
//! ascending `(lower endpoint, higher endpoint)` order (reversed for
//! [`TieBreak::Reverse`]).

pub mod blossom;
pub mod graph;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::stabilizer::{classify_residual, syndrome, CssCode, PauliOperator, ResidualClass};
use blossom::{min_weight_perfect_matching, MatchEdge};
pub use graph::{build_matching_graph, defect_distances, DefectDistances, MatchingGraph, ShortestPaths};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    #[default]
    Lexicographic,
    Reverse,
}

impl std::str::FromStr for TieBreak {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lexicographic" | "lex" | "default" => Ok(Self::Lexicographic),
            "reverse" | "rev" => Ok(Self::Reverse),
            other => Err(Error::Parse(format!("unknown tie-break rule '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecodeOutcome {
    pub correction: PauliOperator,
    pub residual_class: ResidualClass,
    pub success: bool,
}

#[derive(Clone, Debug)]
struct Side {
    graph: MatchingGraph,
    paths: ShortestPaths,
}

impl Side {
    fn new(h: &crate::gf2::BinaryMatrix) -> Result<Self> {
        let graph = build_matching_graph(h)?;
        let paths = ShortestPaths::new(&graph);
        Ok(Self { graph, paths })
    }
}

/// Immutable, shareable decoder for one code. Create a [`DecoderSession`]
/// per worker to decode.
#[derive(Clone, Debug)]
pub struct MwpmDecoder {
    code: CssCode,
    x_checks: Side,
    z_checks: Side,
    tie_break: TieBreak,
}

impl MwpmDecoder {
    pub fn new(code: &CssCode) -> Result<Self> {
        Self::with_tie_break(code, TieBreak::default())
    }

    pub fn with_tie_break(code: &CssCode, tie_break: TieBreak) -> Result<Self> {
        Ok(Self {
            code: code.clone(),
            x_checks: Side::new(code.h_x())?,
            z_checks: Side::new(code.h_z())?,
            tie_break,
        })
    }

    pub fn code(&self) -> &CssCode {
        &self.code
    }

    pub fn tie_break(&self) -> TieBreak {
        self.tie_break
    }

    /// Graph whose nodes are the X checks (it locates Z errors).
    pub fn x_check_graph(&self) -> &MatchingGraph {
        &self.x_checks.graph
    }

    /// Graph whose nodes are the Z checks (it locates X errors).
    pub fn z_check_graph(&self) -> &MatchingGraph {
        &self.z_checks.graph
    }

    pub fn x_check_paths(&self) -> &ShortestPaths {
        &self.x_checks.paths
    }

    pub fn z_check_paths(&self) -> &ShortestPaths {
        &self.z_checks.paths
    }

    pub fn session(&self) -> DecoderSession<'_> {
        DecoderSession {
            decoder: self,
            defects: Vec::new(),
            edges: Vec::new(),
            path: Vec::new(),
        }
    }
}

/// Per-worker decoding state with reusable buffers.
pub struct DecoderSession<'a> {
    decoder: &'a MwpmDecoder,
    defects: Vec<usize>,
    edges: Vec<MatchEdge>,
    path: Vec<usize>,
}

impl DecoderSession<'_> {
    pub fn decoder(&self) -> &MwpmDecoder {
        self.decoder
    }

    /// Correction for a syndrome laid out as `[H_X·z | H_Z·x]`.
    pub fn decode(&mut self, s: &BitVec) -> Result<PauliOperator> {
        let code = &self.decoder.code;
        let (rx, rz) = (code.r_x(), code.r_z());
        if s.len() != rx + rz {
            return Err(Error::DimensionMismatch { expected: rx + rz, found: s.len() });
        }
        let n = code.n();
        let mut z = BitVec::zeros(n);
        let mut x = BitVec::zeros(n);
        self.defects.clear();
        self.defects.extend(s.iter_ones().take_while(|&i| i < rx));
        self.match_side(Checks::X, &mut z)?;
        self.defects.clear();
        self.defects.extend(s.iter_ones().filter(|&i| i >= rx).map(|i| i - rx));
        self.match_side(Checks::Z, &mut x)?;
        PauliOperator::from_parts(x, z)
    }

    pub fn decode_and_classify(&mut self, e: &PauliOperator) -> Result<DecodeOutcome> {
        let code = &self.decoder.code;
        let s = syndrome(code, e)?;
        let correction = self.decode(&s)?;
        let residual = e.mul(&correction);
        let residual_class = classify_residual(code, &residual)?;
        Ok(DecodeOutcome {
            correction,
            residual_class,
            success: residual_class.is_success(),
        })
    }

    fn match_side(&mut self, which: Checks, out: &mut BitVec) -> Result<()> {
        let side = match which {
            Checks::X => &self.decoder.x_checks,
            Checks::Z => &self.decoder.z_checks,
        };
        let (graph, paths) = (&side.graph, &side.paths);
        let m = self.defects.len();
        if m == 0 {
            return Ok(());
        }
        let boundary = graph.boundary_node();
        if boundary.is_none() && m % 2 == 1 {
            return Err(Error::OddDefects(m));
        }
        self.edges.clear();
        for i in 0..m {
            for j in i + 1..m {
                if let Some(d) = paths.distance(self.defects[i], self.defects[j]) {
                    self.edges.push(MatchEdge { a: i, b: j, weight: d as u64, tie: 0 });
                } else if boundary.is_none() {
                    return Err(Error::Disconnected { a: self.defects[i], b: self.defects[j] });
                }
            }
            if let Some(b) = boundary {
                if let Some(d) = paths.distance(self.defects[i], b) {
                    self.edges.push(MatchEdge { a: i, b: m + i, weight: d as u64, tie: 0 });
                }
            }
        }
        // Edges were generated in ascending (lo, hi) order.
        let ranked = self.edges.len() as u64;
        for (pos, e) in self.edges.iter_mut().enumerate() {
            e.tie = match self.decoder.tie_break {
                TieBreak::Lexicographic => pos as u64 + 1,
                TieBreak::Reverse => ranked - pos as u64,
            };
        }
        let nodes = if boundary.is_some() {
            for i in 0..m {
                for j in i + 1..m {
                    self.edges.push(MatchEdge { a: m + i, b: m + j, weight: 0, tie: 0 });
                }
            }
            2 * m
        } else {
            m
        };
        let pairs = min_weight_perfect_matching(nodes, &self.edges)?;
        for (a, b) in pairs {
            if a >= m {
                continue;
            }
            self.path.clear();
            let target = if b < m {
                self.defects[b]
            } else {
                boundary.expect("copies exist only with a boundary")
            };
            paths.path(graph, self.defects[a], target, &mut self.path);
            for &q in &self.path {
                out.flip(q);
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
enum Checks {
    X,
    Z,
}

/// One-shot decode with the default tie-break.
pub fn decode(code: &CssCode, s: &BitVec) -> Result<PauliOperator> {
    MwpmDecoder::new(code)?.session().decode(s)
}

/// One-shot decode and classification with the default tie-break.
pub fn decode_and_classify(code: &CssCode, e: &PauliOperator) -> Result<DecodeOutcome> {
    MwpmDecoder::new(code)?.session().decode_and_classify(e)
}
