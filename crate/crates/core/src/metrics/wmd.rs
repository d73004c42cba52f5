use std::collections::BTreeMap;

use super::{distance_to_similarity, euclidean_distance, solve_transport, MetricKind, MetricScore};
use crate::error::{Error, Result};
use crate::text::Token;
use crate::vectors::VectorStore;

/// Normalized bag-of-words over the distinct in-vocabulary tokens of a
/// sentence, sorted by token.
#[derive(Debug, Clone, PartialEq)]
pub struct Nbow<'a> {
    pub tokens: Vec<&'a str>,
    pub weights: Vec<f64>,
}

pub fn nbow<'a>(store: &VectorStore, tokens: &'a [Token]) -> Result<Nbow<'a>> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    let mut total = 0usize;
    for t in tokens {
        if store.contains(t) {
            *counts.entry(t.as_str()).or_default() += 1;
            total += 1;
        }
    }
    if total == 0 {
        return Err(Error::NoCoverage { sentence: None });
    }
    let (tokens, weights) = counts
        .into_iter()
        .map(|(t, c)| (t, c as f64 / total as f64))
        .unzip();
    Ok(Nbow { tokens, weights })
}

/// Transport cost between two bags of words with Euclidean word distances.
pub fn word_movers_distance(store: &VectorStore, a: &Nbow<'_>, b: &Nbow<'_>) -> Result<f64> {
    let cost = a
        .tokens
        .iter()
        .map(|ta| {
            let va = store.get(ta).expect("nbow tokens are in vocabulary");
            b.tokens
                .iter()
                .map(|tb| {
                    if ta == tb {
                        Ok(0.0)
                    } else {
                        euclidean_distance(
                            va,
                            store.get(tb).expect("nbow tokens are in vocabulary"),
                        )
                    }
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(solve_transport(&a.weights, &b.weights, &cost)?.cost)
}

/// `1 / (1 + WMD)` between two token lists.
pub fn wmd_sim(store: &VectorStore, s1: &[Token], s2: &[Token]) -> Result<MetricScore> {
    let a = nbow(store, s1)?;
    let b = nbow(store, s2)?;
    let d = word_movers_distance(store, &a, &b)?;
    Ok(MetricScore {
        value: distance_to_similarity(d),
        kind: MetricKind::Wmd,
    })
}
