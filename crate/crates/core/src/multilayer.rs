//! Aggregation of per-layer local similarities into one overall score.
//!
//! Each layer is summarized as a probability distribution over node pairs
//! (its normalized edge-weight mass). The inter-layer weight `v` is the mean
//! base-2 Jensen-Shannon divergence over all unordered layer pairs, and the
//! overall score of a pair is
//!
//! ```text
//! Π Sim_i / (v · Σ Sim_i)
//! ```
//!
//! A compatibility mode computes `Π Sim_i / √(Σ Sim_i)` instead.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layer::LayerGraph;
use crate::metrics::MetricKind;

/// Additive smoothing applied to every pair key before normalizing.
pub const DISTRIBUTION_EPSILON: f64 = 1e-12;
/// Lower bound applied to `v` in the denominator.
pub const MIN_INTER_LAYER_WEIGHT: f64 = 1e-6;

/// Unordered node pair `(i, j)` with `i < j`.
pub type PairKey = (usize, usize);

/// How per-layer similarities combine. Configs spell these `eq20` and
/// `eq21`; `weighted` and `root_sum` are accepted too.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Aggregation {
    /// `Π Sim_i / (v · Σ Sim_i)`.
    #[default]
    #[serde(rename = "eq20", alias = "weighted")]
    Weighted,
    /// `Π Sim_i / √(Σ Sim_i)`, ignoring `v`.
    #[serde(rename = "eq21", alias = "root_sum")]
    RootSum,
}

impl fmt::Display for Aggregation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aggregation::Weighted => "eq20",
            Aggregation::RootSum => "eq21",
        })
    }
}

impl FromStr for Aggregation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "eq20" | "weighted" => Ok(Aggregation::Weighted),
            "eq21" | "root_sum" | "root-sum" => Ok(Aggregation::RootSum),
            other => Err(Error::invalid(format!("unknown aggregation {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayerDistribution {
    support: Vec<PairKey>,
    probs: Vec<f64>,
}

impl LayerDistribution {
    /// Wraps an explicit distribution; `probs` must be non-negative and sum
    /// to one within `1e-9`.
    pub fn new(support: Vec<PairKey>, probs: Vec<f64>) -> Result<Self> {
        if support.len() != probs.len() {
            return Err(Error::DimensionMismatch {
                left: support.len(),
                right: probs.len(),
            });
        }
        if support.is_empty() {
            return Err(Error::DegenerateDistribution("empty support".into()));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::invalid(
                "probabilities must be finite and non-negative",
            ));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!("probabilities sum to {total}")));
        }
        Ok(LayerDistribution { support, probs })
    }

    pub fn support(&self) -> &[PairKey] {
        &self.support
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// Sorted union of the edge keys of every layer.
pub fn union_support(layers: &[LayerGraph]) -> Vec<PairKey> {
    layers
        .iter()
        .flat_map(|l| l.edges().map(|(i, j, _)| (i, j)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Edge-weight mass of `layer` over `support`, ε-smoothed and normalized.
pub fn layer_distribution(layer: &LayerGraph, support: &[PairKey]) -> Result<LayerDistribution> {
    if support.is_empty() {
        return Err(Error::DegenerateDistribution(format!(
            "layer {} has no support to distribute over",
            layer.kind()
        )));
    }
    let n = layer.node_count();
    let mut mass = Vec::with_capacity(support.len());
    for &(i, j) in support {
        if i >= n || j >= n || i == j {
            return Err(Error::invalid(format!(
                "pair ({i}, {j}) is not a node pair of the layer"
            )));
        }
        let w = if layer.has_edge(i, j) {
            layer.metric(i, j)
        } else {
            0.0
        };
        mass.push(w + DISTRIBUTION_EPSILON);
    }
    let total: f64 = mass.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::DegenerateDistribution(format!(
            "layer {} has non-positive total weight",
            layer.kind()
        )));
    }
    let probs = mass.into_iter().map(|w| w / total).collect();
    Ok(LayerDistribution {
        support: support.to_vec(),
        probs,
    })
}

fn kl_term(p: f64, m: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else {
        p * (p / m).log2()
    }
}

/// Base-2 Jensen-Shannon divergence, in `[0, 1]`.
pub fn js_divergence(p: &LayerDistribution, q: &LayerDistribution) -> Result<f64> {
    if p.support != q.support {
        return Err(Error::invalid("distributions have different supports"));
    }
    let mut kl_p = 0.0;
    let mut kl_q = 0.0;
    for (&a, &b) in p.probs.iter().zip(&q.probs) {
        let m = 0.5 * (a + b);
        kl_p += kl_term(a, m);
        kl_q += kl_term(b, m);
    }
    Ok((0.5 * kl_p + 0.5 * kl_q).clamp(0.0, 1.0))
}

/// Mean Jensen-Shannon divergence over all unordered layer pairs.
///
/// When no layer has any edge, all layers coincide and the weight is 0.
pub fn inter_layer_weight(layers: &[LayerGraph]) -> Result<f64> {
    if layers.len() < 2 {
        return Err(Error::InvalidConfiguration(
            "the inter-layer weight needs at least two layers".into(),
        ));
    }
    let support = union_support(layers);
    if support.is_empty() {
        return Ok(0.0);
    }
    let dists = layers
        .iter()
        .map(|l| layer_distribution(l, &support))
        .collect::<Result<Vec<_>>>()?;
    let mut total = 0.0;
    let mut count = 0usize;
    for i in 0..dists.len() {
        for j in (i + 1)..dists.len() {
            total += js_divergence(&dists[i], &dists[j])?;
            count += 1;
        }
    }
    Ok(total / count as f64)
}

/// Combines per-layer similarities.
///
/// Returns 0 when the per-layer sum is 0, and for `RootSum` also when it is
/// negative (possible with cosine layers). For `Weighted`, `v` is floored at
/// [`MIN_INTER_LAYER_WEIGHT`].
pub fn aggregate(sims: &[f64], v: f64, mode: Aggregation) -> f64 {
    let sum: f64 = sims.iter().sum();
    if sum == 0.0 {
        return 0.0;
    }
    let product: f64 = sims.iter().product();
    match mode {
        Aggregation::Weighted => product / (v.max(MIN_INTER_LAYER_WEIGHT) * sum),
        Aggregation::RootSum if sum < 0.0 => 0.0,
        Aggregation::RootSum => product / sum.sqrt(),
    }
}

/// The overall score of a pair plus the per-layer values that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverallScore {
    pub value: f64,
    pub per_layer: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct MultiLayerNetwork {
    layers: Vec<LayerGraph>,
    aggregation: Aggregation,
    inter_layer_weight: Option<f64>,
}

impl MultiLayerNetwork {
    /// Validates that all layers share a node set and caches `v`.
    pub fn new(layers: Vec<LayerGraph>, aggregation: Aggregation) -> Result<Self> {
        let first = layers.first().ok_or_else(|| {
            Error::InvalidConfiguration("a network needs at least one layer".into())
        })?;
        let n = first.node_count();
        if let Some(bad) = layers.iter().find(|l| l.node_count() != n) {
            return Err(Error::InvalidConfiguration(format!(
                "layer {} has {} nodes, expected {n}",
                bad.kind(),
                bad.node_count()
            )));
        }
        let inter_layer_weight = if layers.len() >= 2 {
            Some(inter_layer_weight(&layers)?)
        } else {
            None
        };
        Ok(MultiLayerNetwork {
            layers,
            aggregation,
            inter_layer_weight,
        })
    }

    pub fn layers(&self) -> &[LayerGraph] {
        &self.layers
    }

    pub fn kinds(&self) -> Vec<MetricKind> {
        self.layers.iter().map(LayerGraph::kind).collect()
    }

    pub fn node_count(&self) -> usize {
        self.layers[0].node_count()
    }

    pub fn aggregation(&self) -> Aggregation {
        self.aggregation
    }

    /// `None` for a single-layer network.
    pub fn inter_layer_weight(&self) -> Option<f64> {
        self.inter_layer_weight
    }

    /// Whether `v` fell below the floor and was clamped in the denominator.
    pub fn weight_clamped(&self) -> bool {
        self.aggregation == Aggregation::Weighted
            && self
                .inter_layer_weight
                .is_some_and(|v| v < MIN_INTER_LAYER_WEIGHT)
    }

    pub fn layer_similarities(&self, a: usize, b: usize) -> Result<Vec<f64>> {
        self.layers
            .iter()
            .map(|l| l.local_similarity(a, b))
            .collect()
    }

    pub fn overall_similarity(&self, a: usize, b: usize) -> Result<OverallScore> {
        let v = self.inter_layer_weight.ok_or_else(|| {
            Error::InvalidConfiguration("overall similarity needs at least two layers".into())
        })?;
        let per_layer = self.layer_similarities(a, b)?;
        Ok(OverallScore {
            value: aggregate(&per_layer, v, self.aggregation),
            per_layer,
        })
    }
}
