//! Pairwise sentence measures used as layer edge weights.
//!
//! | kind        | code  | input          | range   |
//! |-------------|-------|----------------|---------|
//! | cosine      | `cs`  | sentence vecs  | [-1, 1] |
//! | overlap     | `po`  | tokens         | [0, 1]  |
//! | euclidean   | `ed`  | sentence vecs  | (0, 1]  |
//! | jaccard     | `ja`  | tokens         | [0, 1]  |
//! | word mover  | `wmd` | tokens + words | (0, 1]  |
//!
//! The two distances are mapped to similarities with `1 / (1 + d)`.

mod transport;
mod wmd;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::Token;

pub use transport::{solve_transport, TransportPlan};
pub use wmd::{nbow, wmd_sim, word_movers_distance, Nbow};

/// The five shipped similarity measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MetricKind {
    #[serde(rename = "cs")]
    Cosine,
    #[serde(rename = "po")]
    Overlap,
    #[serde(rename = "ed")]
    Euclidean,
    #[serde(rename = "ja")]
    Jaccard,
    #[serde(rename = "wmd")]
    Wmd,
}

impl MetricKind {
    pub const ALL: [MetricKind; 5] = [
        MetricKind::Cosine,
        MetricKind::Overlap,
        MetricKind::Euclidean,
        MetricKind::Jaccard,
        MetricKind::Wmd,
    ];

    pub fn code(self) -> &'static str {
        match self {
            MetricKind::Cosine => "cs",
            MetricKind::Overlap => "po",
            MetricKind::Euclidean => "ed",
            MetricKind::Jaccard => "ja",
            MetricKind::Wmd => "wmd",
        }
    }

    /// Whether the measure reads sentence vectors (as opposed to tokens).
    pub fn needs_sentence_vectors(self) -> bool {
        matches!(self, MetricKind::Cosine | MetricKind::Euclidean)
    }

    pub fn needs_word_vectors(self) -> bool {
        self == MetricKind::Wmd
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cs" | "cosine" => Ok(MetricKind::Cosine),
            "po" | "overlap" => Ok(MetricKind::Overlap),
            "ed" | "euclidean" => Ok(MetricKind::Euclidean),
            "ja" | "jaccard" => Ok(MetricKind::Jaccard),
            "wmd" => Ok(MetricKind::Wmd),
            other => Err(Error::invalid(format!("unknown layer kind {other:?}"))),
        }
    }
}

/// A similarity value tagged with the measure that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricScore {
    pub value: f64,
    pub kind: MetricKind,
}

impl MetricScore {
    fn new(kind: MetricKind, value: f64) -> Self {
        MetricScore { value, kind }
    }
}

fn check_dims(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(())
}

pub fn cosine_similarity(x: &[f64], y: &[f64]) -> Result<MetricScore> {
    check_dims(x, y)?;
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let nx = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    let ny = y.iter().map(|b| b * b).sum::<f64>().sqrt();
    if nx == 0.0 || ny == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(MetricScore::new(MetricKind::Cosine, dot / (nx * ny)))
}

pub fn euclidean_distance(x: &[f64], y: &[f64]) -> Result<f64> {
    check_dims(x, y)?;
    Ok(x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt())
}

/// `1 / (1 + d)` where `d` is the Euclidean distance.
pub fn euclidean_sim(x: &[f64], y: &[f64]) -> Result<MetricScore> {
    let d = euclidean_distance(x, y)?;
    Ok(MetricScore::new(
        MetricKind::Euclidean,
        distance_to_similarity(d),
    ))
}

pub(crate) fn distance_to_similarity(d: f64) -> f64 {
    1.0 / (1.0 + d)
}

/// Zipfian phrase-overlap score before normalization: every distinct
/// n-gram shared by both sentences contributes `n²`.
pub fn phrasal_overlap(s1: &[Token], s2: &[Token]) -> u64 {
    let longest = s1.len().min(s2.len());
    let mut raw = 0u64;
    for n in 1..=longest {
        let left: HashSet<&[Token]> = s1.windows(n).collect();
        let shared = s2
            .windows(n)
            .filter(|g| left.contains(g))
            .collect::<HashSet<_>>()
            .len() as u64;
        if shared == 0 {
            // No shared n-gram means no shared longer n-gram either.
            break;
        }
        raw += shared * (n as u64) * (n as u64);
    }
    raw
}

/// `tanh(overlap / (|s1| + |s2|))`.
pub fn phrasal_overlap_sim(s1: &[Token], s2: &[Token]) -> Result<MetricScore> {
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::invalid(
            "phrasal overlap needs two non-empty sentences",
        ));
    }
    let raw = phrasal_overlap(s1, s2) as f64;
    let len = (s1.len() + s2.len()) as f64;
    Ok(MetricScore::new(MetricKind::Overlap, (raw / len).tanh()))
}

/// Ratio of shared distinct tokens to all distinct tokens.
pub fn jaccard_sim(s1: &[Token], s2: &[Token]) -> Result<MetricScore> {
    if s1.is_empty() && s2.is_empty() {
        return Err(Error::invalid("jaccard similarity of two empty sentences"));
    }
    let a: HashSet<&Token> = s1.iter().collect();
    let b: HashSet<&Token> = s2.iter().collect();
    let shared = a.intersection(&b).count();
    let union = a.len() + b.len() - shared;
    Ok(MetricScore::new(
        MetricKind::Jaccard,
        shared as f64 / union as f64,
    ))
}
