//! One thresholded, weighted graph per metric over a sentence corpus.
//!
//! A layer keeps the full pairwise metric matrix alongside its edge set. An
//! edge `{i, j}` exists iff `metric(i, j) > threshold`. Neighborhoods come
//! from edges only, while the local similarity reads raw metric values for
//! every pair it touches (including below-threshold pairs).

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{
    cosine_similarity, euclidean_sim, jaccard_sim, nbow, phrasal_overlap_sim, word_movers_distance,
    MetricKind, Nbow,
};
use crate::text::SentenceRecord;
use crate::vectors::VectorStore;

pub const DEFAULT_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct LayerGraph {
    kind: MetricKind,
    threshold: f64,
    node_count: usize,
    /// Row-major `node_count x node_count`, symmetric, zero diagonal.
    matrix: Vec<f64>,
    /// Sorted neighbor lists.
    neighbors: Vec<Vec<usize>>,
}

/// Inputs a layer may draw on. Vector-based kinds need `sentence_vectors`
/// (indexed by record id); word mover's distance needs `words`.
#[derive(Debug, Clone, Copy)]
pub struct LayerInputs<'a> {
    pub corpus: &'a [SentenceRecord],
    pub sentence_vectors: Option<&'a [Vec<f64>]>,
    pub words: Option<&'a VectorStore>,
}

impl<'a> LayerInputs<'a> {
    pub fn new(corpus: &'a [SentenceRecord]) -> Self {
        LayerInputs {
            corpus,
            sentence_vectors: None,
            words: None,
        }
    }

    pub fn with_sentence_vectors(mut self, vectors: &'a [Vec<f64>]) -> Self {
        self.sentence_vectors = Some(vectors);
        self
    }

    pub fn with_words(mut self, words: &'a VectorStore) -> Self {
        self.words = Some(words);
        self
    }
}

/// `u` is a neighbor of A, `v` a neighbor of B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct AdjacentPair {
    pub u: usize,
    pub v: usize,
}

/// The terms that make up a local layer similarity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalTerms {
    /// Raw metric value between the two query nodes.
    pub direct: f64,
    /// Sum over adjacent pairs of `m(A,u) * m(B,v)`.
    pub adjacent_weight: f64,
    /// Sum over adjacent pairs of `m(u,v) * m(A,u) * m(B,v)`.
    pub adjacent_weighted: f64,
}

impl LocalTerms {
    pub fn value(&self) -> f64 {
        (self.direct + self.adjacent_weighted) / (1.0 + self.adjacent_weight)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

/// JSON form of a whole layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerDocument {
    pub kind: MetricKind,
    pub node_count: usize,
    pub threshold: f64,
    pub edges: Vec<EdgeRecord>,
}

impl LayerGraph {
    /// Builds a layer from a precomputed symmetric metric matrix. Diagonal
    /// entries are ignored.
    pub fn from_matrix(kind: MetricKind, threshold: f64, matrix: Vec<Vec<f64>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::invalid("a layer needs at least one node"));
        }
        let mut flat = vec![0.0; n * n];
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if !x.is_finite() {
                    return Err(Error::invalid(format!(
                        "metric value ({i}, {j}) is not finite"
                    )));
                }
                if x != matrix[j][i] {
                    return Err(Error::invalid(format!(
                        "metric matrix not symmetric at ({i}, {j})"
                    )));
                }
                flat[i * n + j] = x;
            }
        }
        Self::from_flat(kind, threshold, n, flat)
    }

    fn from_flat(kind: MetricKind, threshold: f64, n: usize, matrix: Vec<f64>) -> Result<Self> {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(Error::invalid(format!(
                "threshold {threshold} outside [0, 1]"
            )));
        }
        let neighbors = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && matrix[i * n + j] > threshold)
                    .collect()
            })
            .collect();
        Ok(LayerGraph {
            kind,
            threshold,
            node_count: n,
            matrix,
            neighbors,
        })
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Raw metric value between two distinct nodes.
    pub fn metric(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.node_count + j]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.metric(i, j) > self.threshold
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.neighbors[node]
    }

    /// Edges as `(i, j, weight)` with `i < j`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.neighbors.iter().enumerate().flat_map(move |(i, adj)| {
            adj.iter()
                .filter(move |&&j| j > i)
                .map(move |&j| (i, j, self.metric(i, j)))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn check_query(&self, a: usize, b: usize) -> Result<()> {
        let n = self.node_count;
        if a >= n || b >= n {
            return Err(Error::invalid(format!(
                "node {} not in layer of {n} nodes",
                a.max(b)
            )));
        }
        if a == b {
            return Err(Error::invalid("local similarity needs two distinct nodes"));
        }
        Ok(())
    }

    /// All `(u, v)` with `u` adjacent to `a` (not `b`), `v` adjacent to `b`
    /// (not `a`) and `u != v`, ascending by `u` then `v`.
    pub fn adjacent_pairs(&self, a: usize, b: usize) -> Result<Vec<AdjacentPair>> {
        self.check_query(a, b)?;
        let mut pairs = Vec::new();
        for &u in self.neighbors(a).iter().filter(|&&u| u != b) {
            for &v in self.neighbors(b).iter().filter(|&&v| v != a && v != u) {
                pairs.push(AdjacentPair { u, v });
            }
        }
        Ok(pairs)
    }

    pub fn local_terms(&self, a: usize, b: usize) -> Result<LocalTerms> {
        let mut terms = LocalTerms {
            direct: 0.0,
            adjacent_weight: 0.0,
            adjacent_weighted: 0.0,
        };
        for AdjacentPair { u, v } in self.adjacent_pairs(a, b)? {
            let weight = self.metric(a, u) * self.metric(b, v);
            terms.adjacent_weight += weight;
            terms.adjacent_weighted += self.metric(u, v) * weight;
        }
        terms.direct = self.metric(a, b);
        Ok(terms)
    }

    /// Neighborhood-aware similarity of `a` and `b` within this layer:
    ///
    /// ```text
    /// (m(a,b) + Σ m(u,v)·m(a,u)·m(b,v)) / (1 + Σ m(a,u)·m(b,v))
    /// ```
    ///
    /// summed over [`adjacent_pairs`](Self::adjacent_pairs).
    pub fn local_similarity(&self, a: usize, b: usize) -> Result<f64> {
        Ok(self.local_terms(a, b)?.value())
    }

    pub fn to_document(&self) -> LayerDocument {
        LayerDocument {
            kind: self.kind,
            node_count: self.node_count,
            threshold: self.threshold,
            edges: self
                .edges()
                .map(|(i, j, weight)| EdgeRecord { i, j, weight })
                .collect(),
        }
    }

    /// Writes `kind<TAB>i<TAB>j<TAB>weight` lines, one per edge.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for (i, j, w) in self.edges() {
            writeln!(out, "{}\t{i}\t{j}\t{w}", self.kind)?;
        }
        Ok(())
    }
}

/// Computes the metric matrix for `kind` over the corpus and thresholds it.
///
/// Pairs are evaluated in parallel; each entry is computed independently so
/// the result does not depend on scheduling.
pub fn build_layer(
    inputs: LayerInputs<'_>,
    kind: MetricKind,
    threshold: f64,
) -> Result<LayerGraph> {
    let corpus = inputs.corpus;
    let n = corpus.len();
    if n == 0 {
        return Err(Error::invalid("cannot build a layer over an empty corpus"));
    }
    for (pos, record) in corpus.iter().enumerate() {
        if record.id != pos {
            return Err(Error::invalid(format!(
                "corpus record at position {pos} has id {}",
                record.id
            )));
        }
    }

    let vectors = if kind.needs_sentence_vectors() {
        let v = inputs.sentence_vectors.ok_or_else(|| {
            Error::InvalidConfiguration(format!("layer {kind} needs sentence vectors"))
        })?;
        if v.len() != n {
            return Err(Error::InvalidConfiguration(format!(
                "{} sentence vectors for a corpus of {n}",
                v.len()
            )));
        }
        Some(v)
    } else {
        None
    };

    let bags: Option<(&VectorStore, Vec<Nbow<'_>>)> = if kind.needs_word_vectors() {
        let store = inputs.words.ok_or_else(|| {
            Error::InvalidConfiguration(format!("layer {kind} needs word vectors"))
        })?;
        let bags = corpus
            .iter()
            .map(|r| {
                nbow(store, &r.tokens).map_err(|_| Error::NoCoverage {
                    sentence: Some(r.id),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Some((store, bags))
    } else {
        None
    };

    let pair = |i: usize, j: usize| -> Result<f64> {
        let (a, b) = (&corpus[i], &corpus[j]);
        let value = match kind {
            MetricKind::Cosine => {
                let v = vectors.expect("checked above");
                cosine_similarity(&v[i], &v[j])?.value
            }
            MetricKind::Euclidean => {
                let v = vectors.expect("checked above");
                euclidean_sim(&v[i], &v[j])?.value
            }
            MetricKind::Overlap => phrasal_overlap_sim(&a.tokens, &b.tokens)?.value,
            MetricKind::Jaccard => jaccard_sim(&a.tokens, &b.tokens)?.value,
            MetricKind::Wmd => {
                let (store, bags) = bags.as_ref().expect("checked above");
                1.0 / (1.0 + word_movers_distance(store, &bags[i], &bags[j])?)
            }
        };
        Ok(value)
    };

    let rows: Vec<Result<Vec<f64>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            ((i + 1)..n)
                .map(|j| pair(i, j).map_err(|e| e.for_pair(i, j)))
                .collect()
        })
        .collect();

    let mut matrix = vec![0.0; n * n];
    for (i, row) in rows.into_iter().enumerate() {
        for (offset, value) in row?.into_iter().enumerate() {
            let j = i + 1 + offset;
            matrix[i * n + j] = value;
            matrix[j * n + i] = value;
        }
    }
    LayerGraph::from_flat(kind, threshold, n, matrix)
}
