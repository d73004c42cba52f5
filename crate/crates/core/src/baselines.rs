//! Single-graph text similarity baselines built from sentence vectors.
//!
//! Three ways to pick each sentence's counterpart vertices:
//!
//! * **PAV** links a sentence back to the preceding sentence that maximizes
//!   `α·uot + (1-α)·cos`, where `uot` is the Jaccard ratio of distinct tokens.
//! * **SSV** links each sentence to the single counterpart (either
//!   direction) maximizing `cos / |i-j|`.
//! * **MSV** links each sentence to every counterpart with `cos > θ`,
//!   weighted by `cos / |i-j|`.
//!
//! The text score averages, over all vertices, the mean weight of each
//! vertex's outgoing edges.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{cosine_similarity, jaccard_sim};
use crate::text::SentenceRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaselineMode {
    Pav,
    Ssv,
    Msv,
}

impl fmt::Display for BaselineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaselineMode::Pav => "pav",
            BaselineMode::Ssv => "ssv",
            BaselineMode::Msv => "msv",
        })
    }
}

impl FromStr for BaselineMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pav" => Ok(BaselineMode::Pav),
            "ssv" => Ok(BaselineMode::Ssv),
            "msv" => Ok(BaselineMode::Msv),
            other => Err(Error::invalid(format!("unknown baseline mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineParams {
    /// Balance between term overlap and cosine for PAV, in `[0, 1]`.
    pub alpha: f64,
    /// Cosine threshold for MSV.
    pub theta: f64,
    /// Restrict PAV to the immediately preceding sentence.
    pub adjacent_only: bool,
}

impl Default for BaselineParams {
    fn default() -> Self {
        BaselineParams {
            alpha: 0.5,
            theta: 0.5,
            adjacent_only: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineGraph {
    pub mode: BaselineMode,
    pub node_count: usize,
    /// Sorted by `from`, then `to`.
    pub edges: Vec<DirectedEdge>,
}

impl BaselineGraph {
    pub fn out_edges(&self, node: usize) -> impl Iterator<Item = &DirectedEdge> {
        self.edges.iter().filter(move |e| e.from == node)
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.out_edges(node).count()
    }

    /// Writes `mode<TAB>from<TAB>to<TAB>weight` lines.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for e in &self.edges {
            writeln!(out, "{}\t{}\t{}\t{}", self.mode, e.from, e.to, e.weight)?;
        }
        Ok(())
    }
}

/// `α·uot(s_i, s_j) + (1-α)·cos(v_i, v_j)`.
pub fn pav_similarity(
    s_i: &SentenceRecord,
    s_j: &SentenceRecord,
    v_i: &[f64],
    v_j: &[f64],
    alpha: f64,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::invalid(format!("alpha {alpha} outside [0, 1]")));
    }
    let uot = jaccard_sim(&s_i.tokens, &s_j.tokens)?.value;
    let cos = cosine_similarity(v_i, v_j)?.value;
    Ok(alpha * uot + (1.0 - alpha) * cos)
}

/// `cos / |i - j|`.
pub fn positional_edge_weight(i: usize, j: usize, cos: f64) -> Result<f64> {
    if i == j {
        return Err(Error::invalid(
            "positional weight needs two distinct positions",
        ));
    }
    Ok(cos / i.abs_diff(j) as f64)
}

pub fn build_baseline_graph(
    corpus: &[SentenceRecord],
    vectors: &[Vec<f64>],
    mode: BaselineMode,
    params: BaselineParams,
) -> Result<BaselineGraph> {
    let n = corpus.len();
    if vectors.len() != n {
        return Err(Error::InvalidConfiguration(format!(
            "{} sentence vectors for a corpus of {n}",
            vectors.len()
        )));
    }
    let cos = |i: usize, j: usize| -> Result<f64> {
        cosine_similarity(&vectors[i], &vectors[j])
            .map(|s| s.value)
            .map_err(|e| e.for_pair(i, j))
    };

    let mut edges = Vec::new();
    match mode {
        BaselineMode::Pav => {
            for i in 1..n {
                let first = if params.adjacent_only { i - 1 } else { 0 };
                // Ties go to the nearest preceding sentence.
                let mut best: Option<(usize, f64)> = None;
                for j in first..i {
                    let w = pav_similarity(
                        &corpus[i],
                        &corpus[j],
                        &vectors[i],
                        &vectors[j],
                        params.alpha,
                    )
                    .map_err(|e| e.for_pair(i, j))?;
                    if best.is_none_or(|(_, b)| w >= b) {
                        best = Some((j, w));
                    }
                }
                if let Some((to, weight)) = best {
                    edges.push(DirectedEdge {
                        from: i,
                        to,
                        weight,
                    });
                }
            }
        }
        BaselineMode::Ssv => {
            for i in 0..n {
                // Ties go to the nearest counterpart, then the lower index.
                let mut best: Option<(usize, f64)> = None;
                for j in (0..n).filter(|&j| j != i) {
                    let w = positional_edge_weight(i, j, cos(i, j)?)?;
                    let better = match best {
                        None => true,
                        Some((bj, bw)) => w > bw || (w == bw && i.abs_diff(j) < i.abs_diff(bj)),
                    };
                    if better {
                        best = Some((j, w));
                    }
                }
                if let Some((to, weight)) = best {
                    edges.push(DirectedEdge {
                        from: i,
                        to,
                        weight,
                    });
                }
            }
        }
        BaselineMode::Msv => {
            for i in 0..n {
                for j in (0..n).filter(|&j| j != i) {
                    let c = cos(i, j)?;
                    if c > params.theta {
                        edges.push(DirectedEdge {
                            from: i,
                            to: j,
                            weight: positional_edge_weight(i, j, c)?,
                        });
                    }
                }
            }
        }
    }
    Ok(BaselineGraph {
        mode,
        node_count: n,
        edges,
    })
}

/// Mean over vertices of the mean outgoing edge weight. Vertices without
/// outgoing edges contribute 0.
pub fn graph_similarity(graph: &BaselineGraph) -> Result<f64> {
    let n = graph.node_count;
    if n == 0 {
        return Err(Error::invalid("graph similarity of an empty graph"));
    }
    let mut sums = vec![0.0; n];
    let mut counts = vec![0usize; n];
    for e in &graph.edges {
        sums[e.from] += e.weight;
        counts[e.from] += 1;
    }
    let total: f64 = sums
        .iter()
        .zip(&counts)
        .map(|(s, &c)| if c == 0 { 0.0 } else { s / c as f64 })
        .sum();
    Ok(total / n as f64)
}
