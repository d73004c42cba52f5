//! Dataset ingestion, scoring and evaluation against gold scores.
//!
//! A dataset is a TSV of `gold<TAB>sentence1<TAB>sentence2` rows with gold
//! scores in `[0, 5]`. All pairs share one corpus: the distinct sentences of
//! the dataset, keyed by their normalized token text and numbered from 0 in
//! order of first appearance (sentence 1 before sentence 2 on each row).

mod report;
mod stats;

use std::collections::HashMap;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{LayerSpec, ScoringConfig, VectorInputs};
use crate::error::{Error, Result};
use crate::layer::{build_layer, LayerGraph, LayerInputs};
use crate::metrics::MetricKind;
use crate::multilayer::{Aggregation, MultiLayerNetwork};
use crate::text::{join_tokens, tokenize, SentenceRecord, StopWords};
use crate::vectors::{sentence_vector, VectorStore};

pub use report::{render_table, ConfigEcho, EvaluationReport, PREDICTION_POLICY, TABLE_ROWS};
pub use stats::{
    average_ranks, correlations, pearson, regression_metrics, spearman, Correlations,
    RegressionMetrics,
};

pub const MAX_GOLD: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StsPair {
    pub gold: f64,
    pub s1: String,
    pub s2: String,
}

pub fn load_sts_dataset<R: BufRead>(reader: R) -> Result<Vec<StsPair>> {
    let mut pairs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [gold, s1, s2] = fields[..] else {
            return Err(Error::parse(
                lineno,
                format!("expected 3 tab-separated fields, found {}", fields.len()),
            ));
        };
        let gold: f64 = gold
            .trim()
            .parse()
            .map_err(|_| Error::parse(lineno, format!("invalid gold score {gold:?}")))?;
        if !(0.0..=MAX_GOLD).contains(&gold) {
            return Err(Error::parse(
                lineno,
                format!("gold score {gold} outside [0, 5]"),
            ));
        }
        if s1.trim().is_empty() || s2.trim().is_empty() {
            return Err(Error::parse(lineno, "empty sentence"));
        }
        pairs.push(StsPair {
            gold,
            s1: s1.to_string(),
            s2: s2.to_string(),
        });
    }
    Ok(pairs)
}

/// Maps a gold score in `[0, 5]` onto `[0, 1]`.
pub fn normalize_gold(gold: f64) -> Result<f64> {
    if !(0.0..=MAX_GOLD).contains(&gold) {
        return Err(Error::invalid(format!("gold score {gold} outside [0, 5]")));
    }
    Ok(gold / MAX_GOLD)
}

/// The shared corpus of a dataset and each pair's node ids.
#[derive(Debug, Clone, PartialEq)]
pub struct PairCorpus {
    pub records: Vec<SentenceRecord>,
    pub pairs: Vec<(usize, usize)>,
}

impl PairCorpus {
    pub fn build(dataset: &[StsPair], stopwords: Option<&StopWords>) -> Self {
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut records = Vec::new();
        let mut node = |raw: &str| -> usize {
            let tokens = tokenize(raw);
            let key = join_tokens(&tokens);
            *index.entry(key).or_insert_with(|| {
                let id = records.len();
                let tokens = match stopwords {
                    Some(stop) => stop.filter(tokens),
                    None => tokens,
                };
                records.push(SentenceRecord {
                    id,
                    raw: raw.to_string(),
                    tokens,
                });
                id
            })
        };
        let pairs = dataset
            .iter()
            .map(|p| {
                let a = node(&p.s1);
                let b = node(&p.s2);
                (a, b)
            })
            .collect();
        PairCorpus { records, pairs }
    }
}

/// A scored pair of corpus nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairScore {
    pub a: usize,
    pub b: usize,
    pub overall: f64,
    pub per_layer: Vec<f64>,
}

/// Writes `idA<TAB>idB<TAB>overall<TAB>sim_<kind>...` with a header row.
pub fn write_scores<W: Write>(
    mut out: W,
    kinds: &[MetricKind],
    scores: &[PairScore],
) -> Result<()> {
    write!(out, "idA\tidB\toverall")?;
    for k in kinds {
        write!(out, "\t{k}")?;
    }
    writeln!(out)?;
    for s in scores {
        write!(out, "{}\t{}\t{}", s.a, s.b, s.overall)?;
        for v in &s.per_layer {
            write!(out, "\t{v}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Builds layers over a dataset's corpus on demand and scores its pairs.
///
/// Layers are cached by kind and threshold, so evaluating many layer
/// combinations builds each layer once.
pub struct Evaluator<'a> {
    dataset: &'a [StsPair],
    corpus: PairCorpus,
    words: Option<&'a VectorStore>,
    sentence_vectors: Option<Vec<Vec<f64>>>,
    layers: HashMap<(MetricKind, u64), LayerGraph>,
}

impl<'a> Evaluator<'a> {
    pub fn new(
        dataset: &'a [StsPair],
        inputs: &'a VectorInputs,
        stopwords: Option<&StopWords>,
    ) -> Result<Self> {
        if dataset.is_empty() {
            return Err(Error::invalid("dataset has no pairs"));
        }
        let corpus = PairCorpus::build(dataset, stopwords);
        let sentence_vectors = match &inputs.sentence_embeddings {
            Some(e) if e.len() != corpus.records.len() => {
                return Err(Error::InvalidConfiguration(format!(
                    "{} sentence embeddings for {} distinct sentences",
                    e.len(),
                    corpus.records.len()
                )))
            }
            Some(e) => Some(e.as_slice().to_vec()),
            None => None,
        };
        Ok(Evaluator {
            dataset,
            corpus,
            words: inputs.words.as_ref(),
            sentence_vectors,
            layers: HashMap::new(),
        })
    }

    pub fn corpus(&self) -> &PairCorpus {
        &self.corpus
    }

    pub fn truth(&self) -> Vec<f64> {
        self.dataset.iter().map(|p| p.gold / MAX_GOLD).collect()
    }

    fn ensure_sentence_vectors(&mut self) -> Result<()> {
        if self.sentence_vectors.is_some() {
            return Ok(());
        }
        let store = self.words.ok_or_else(|| {
            Error::InvalidConfiguration(
                "vector layers need sentence embeddings or word vectors".into(),
            )
        })?;
        let vectors = self
            .corpus
            .records
            .iter()
            .map(|r| {
                sentence_vector(store, &r.tokens)
                    .map(|v| v.values)
                    .map_err(|_| Error::NoCoverage {
                        sentence: Some(r.id),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        self.sentence_vectors = Some(vectors);
        Ok(())
    }

    pub fn layer(&mut self, spec: LayerSpec) -> Result<&LayerGraph> {
        let key = (spec.kind, spec.threshold.to_bits());
        if !self.layers.contains_key(&key) {
            if spec.kind.needs_sentence_vectors() {
                self.ensure_sentence_vectors()?;
            }
            let mut inputs = LayerInputs::new(&self.corpus.records);
            if let Some(v) = &self.sentence_vectors {
                inputs = inputs.with_sentence_vectors(v);
            }
            if let Some(w) = self.words {
                inputs = inputs.with_words(w);
            }
            let layer = build_layer(inputs, spec.kind, spec.threshold)?;
            self.layers.insert(key, layer);
        }
        Ok(&self.layers[&key])
    }

    pub fn network(&mut self, config: &ScoringConfig) -> Result<MultiLayerNetwork> {
        config.validate()?;
        let layers = config
            .layers
            .iter()
            .map(|&spec| self.layer(spec).cloned())
            .collect::<Result<Vec<_>>>()?;
        MultiLayerNetwork::new(layers, config.aggregation)
    }

    /// Scores every dataset pair.
    ///
    /// With one layer the overall score is that layer's local similarity.
    /// A pair whose two sentences merged into one node scores 1 everywhere.
    pub fn score_pairs(
        &mut self,
        config: &ScoringConfig,
    ) -> Result<(MultiLayerNetwork, Vec<PairScore>)> {
        let net = self.network(config)?;
        let scores = score_with(&net, &self.corpus.pairs)?;
        Ok((net, scores))
    }

    pub fn evaluate(&mut self, config: &ScoringConfig) -> Result<EvaluationReport> {
        let (net, scores) = self.score_pairs(config)?;
        let raw: Vec<f64> = scores.iter().map(|s| s.overall).collect();
        let truth = self.truth();
        let clamped_preds: Vec<f64> = raw.iter().map(|p| p.clamp(0.0, 1.0)).collect();
        let clamped = raw.iter().zip(&clamped_preds).any(|(a, b)| a != b);

        let errors = regression_metrics(&clamped_preds, &truth)?;
        let (pearson, spearman) = if raw.len() >= 2 {
            let c = correlations(&raw, &truth)?;
            (c.pearson, c.spearman)
        } else {
            (None, None)
        };
        Ok(EvaluationReport {
            config: ConfigEcho {
                label: config.label(),
                layers: config.layers.clone(),
                aggregation: config.aggregation,
            },
            n_pairs: scores.len(),
            pearson,
            spearman,
            mse: errors.mse,
            rmse: errors.rmse,
            mae: errors.mae,
            medae: errors.medae,
            r2: errors.r2,
            ev: errors.ev,
            me: errors.me,
            clamped,
            prediction_policy: PREDICTION_POLICY.to_string(),
            inter_layer_weight: net.inter_layer_weight(),
            inter_layer_weight_clamped: net.weight_clamped(),
        })
    }

    /// Evaluates every combination, ranked by Pearson correlation (highest
    /// first, undefined correlations last).
    pub fn sweep(
        &mut self,
        combos: &[Vec<MetricKind>],
        thresholds: &HashMap<MetricKind, f64>,
        aggregation: Aggregation,
    ) -> Result<Vec<EvaluationReport>> {
        for combo in combos {
            validate_combo(combo)?;
        }
        let mut reports = combos
            .iter()
            .map(|combo| {
                let config = ScoringConfig {
                    layers: combo
                        .iter()
                        .map(|&k| {
                            LayerSpec::with_threshold(
                                k,
                                thresholds
                                    .get(&k)
                                    .copied()
                                    .unwrap_or(crate::layer::DEFAULT_THRESHOLD),
                            )
                        })
                        .collect(),
                    aggregation,
                };
                self.evaluate(&config)
            })
            .collect::<Result<Vec<_>>>()?;
        reports.sort_by(|a, b| match (a.pearson, b.pearson) {
            (Some(x), Some(y)) => y.total_cmp(&x),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => std::cmp::Ordering::Equal,
        });
        Ok(reports)
    }
}

/// Scores node pairs on a network, in parallel but in input order.
pub fn score_with(net: &MultiLayerNetwork, pairs: &[(usize, usize)]) -> Result<Vec<PairScore>> {
    let layer_count = net.layers().len();
    pairs
        .par_iter()
        .map(|&(a, b)| {
            if a == b {
                return Ok(PairScore {
                    a,
                    b,
                    overall: 1.0,
                    per_layer: vec![1.0; layer_count],
                });
            }
            let (overall, per_layer) = if layer_count == 1 {
                let per_layer = net.layer_similarities(a, b)?;
                (per_layer[0], per_layer)
            } else {
                let s = net.overall_similarity(a, b)?;
                (s.value, s.per_layer)
            };
            Ok(PairScore {
                a,
                b,
                overall,
                per_layer,
            })
        })
        .collect()
}

fn validate_combo(combo: &[MetricKind]) -> Result<()> {
    if !(2..=MetricKind::ALL.len()).contains(&combo.len()) {
        return Err(Error::InvalidConfiguration(format!(
            "a sweep combination needs 2 to 5 layers, got {}",
            combo.len()
        )));
    }
    for (i, k) in combo.iter().enumerate() {
        if combo[..i].contains(k) {
            return Err(Error::InvalidConfiguration(format!(
                "layer kind {k} appears more than once in a combination"
            )));
        }
    }
    Ok(())
}

/// All subsets of `kinds` with size in `min..=max`, by size and then in the
/// order of `kinds`.
pub fn layer_combinations(kinds: &[MetricKind], min: usize, max: usize) -> Vec<Vec<MetricKind>> {
    let mut out = Vec::new();
    for size in min..=max.min(kinds.len()) {
        let mut chosen = Vec::with_capacity(size);
        subsets(kinds, size, 0, &mut chosen, &mut out);
    }
    out
}

fn subsets(
    kinds: &[MetricKind],
    size: usize,
    start: usize,
    chosen: &mut Vec<MetricKind>,
    out: &mut Vec<Vec<MetricKind>>,
) {
    if chosen.len() == size {
        out.push(chosen.clone());
        return;
    }
    for i in start..kinds.len() {
        chosen.push(kinds[i]);
        subsets(kinds, size, i + 1, chosen, out);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn dataset_examples() {
        let one = load_sts_dataset("5.0\ta b\ta b\n".as_bytes()).unwrap();
        assert_eq!(
            one,
            vec![StsPair {
                gold: 5.0,
                s1: "a b".into(),
                s2: "a b".into()
            }]
        );

        let err = load_sts_dataset("1.0\tx\ty\n6.0\tx\ty\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");

        let three = load_sts_dataset("1\ta\tb\n2\tc\td\n3\te\tf\n".as_bytes()).unwrap();
        let golds: Vec<f64> = three.iter().map(|p| p.gold).collect();
        assert_eq!(golds, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn malformed_rows_name_the_line() {
        for bad in ["x\ta\tb\n", "1.0\ta\n", "1.0\ta\tb\tc\n", "1.0\t \tb\n"] {
            let err = load_sts_dataset(bad.as_bytes()).unwrap_err();
            assert!(
                matches!(err, Error::Parse { line: 1, .. }),
                "{bad:?}: {err}"
            );
        }
    }

    #[test]
    fn gold_normalization() {
        assert_eq!(normalize_gold(0.0).unwrap(), 0.0);
        assert_eq!(normalize_gold(5.0).unwrap(), 1.0);
        assert_eq!(normalize_gold(2.5).unwrap(), 0.5);
        assert!(normalize_gold(5.5).is_err());
        assert!(normalize_gold(-0.1).is_err());
        assert_abs_diff_eq!(
            normalize_gold(1.5 + 2.0).unwrap(),
            normalize_gold(1.5).unwrap() + normalize_gold(2.0).unwrap(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn corpus_merges_duplicates_in_first_appearance_order() {
        let data = load_sts_dataset(
            "1\tA cat.\tA dog\n2\ta dog\tThe bird\n3\tthe BIRD!\ta cat\n".as_bytes(),
        )
        .unwrap();
        let c = PairCorpus::build(&data, None);
        assert_eq!(c.records.len(), 3);
        assert_eq!(c.pairs, vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(c.records[2].raw, "The bird");
    }

    #[test]
    fn combinations_of_five_kinds() {
        let all = layer_combinations(&MetricKind::ALL, 2, 5);
        assert_eq!(all.len(), 26);
        let by_size = |n| all.iter().filter(|c| c.len() == n).count();
        assert_eq!(
            (by_size(2), by_size(3), by_size(4), by_size(5)),
            (10, 10, 5, 1)
        );
        assert_eq!(all[0], vec![MetricKind::Cosine, MetricKind::Overlap]);
        assert_eq!(
            layer_combinations(&[MetricKind::Overlap, MetricKind::Wmd], 2, 2).len(),
            1
        );
    }

    #[test]
    fn combo_validation() {
        assert!(validate_combo(&[MetricKind::Overlap, MetricKind::Overlap]).is_err());
        assert!(validate_combo(&[MetricKind::Overlap]).is_err());
        assert!(validate_combo(&[MetricKind::Overlap, MetricKind::Jaccard]).is_ok());
    }

    fn toy() -> Vec<StsPair> {
        load_sts_dataset(
            "5\tthe cat sat on the mat\tthe cat sat on the mat\n\
             4\tthe cat sat on the mat\ta cat sat on a mat\n\
             1\tthe cat sat on the mat\tstocks fell sharply today\n\
             3\tstocks fell sharply today\tstocks fell today\n\
             0\ta cat sat on a mat\tstocks fell today\n"
                .as_bytes(),
        )
        .unwrap()
    }

    #[test]
    fn evaluate_token_layers() {
        let data = toy();
        let inputs = VectorInputs::default();
        let mut ev = Evaluator::new(&data, &inputs, None).unwrap();
        let config = ScoringConfig::new(
            &[MetricKind::Overlap, MetricKind::Jaccard],
            Aggregation::Weighted,
        );
        let report = ev.evaluate(&config).unwrap();
        assert_eq!(report.n_pairs, 5);
        assert_abs_diff_eq!(report.rmse * report.rmse, report.mse, epsilon = 1e-12);
        assert!((-1.0..=1.0).contains(&report.pearson.unwrap()));
        assert!(report.spearman.unwrap() > 0.0);
        assert!(report.inter_layer_weight.is_some());
        let again = ev.evaluate(&config).unwrap();
        assert_eq!(report, again);
    }

    #[test]
    fn single_layer_diagnostic_mode() {
        let data = toy();
        let inputs = VectorInputs::default();
        let mut ev = Evaluator::new(&data, &inputs, None).unwrap();
        let config = ScoringConfig::new(&[MetricKind::Jaccard], Aggregation::Weighted);
        let (_, scores) = ev.score_pairs(&config).unwrap();
        assert_eq!(scores[0].overall, 1.0);
        assert_eq!(scores[1].overall, scores[1].per_layer[0]);
        let report = ev.evaluate(&config).unwrap();
        assert!(report.inter_layer_weight.is_none());
    }

    #[test]
    fn vector_layers_need_vectors() {
        let data = toy();
        let inputs = VectorInputs::default();
        let mut ev = Evaluator::new(&data, &inputs, None).unwrap();
        let config = ScoringConfig::new(
            &[MetricKind::Cosine, MetricKind::Jaccard],
            Aggregation::Weighted,
        );
        assert!(matches!(
            ev.evaluate(&config),
            Err(Error::InvalidConfiguration(_))
        ));
    }

    #[test]
    fn score_tsv_layout() {
        let scores = vec![PairScore {
            a: 0,
            b: 1,
            overall: 0.5,
            per_layer: vec![0.25, 0.75],
        }];
        let mut out = Vec::new();
        write_scores(&mut out, &[MetricKind::Overlap, MetricKind::Wmd], &scores).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "idA\tidB\toverall\tpo\twmd\n0\t1\t0.5\t0.25\t0.75\n"
        );
    }

    #[test]
    fn table_has_expected_rows() {
        let data = toy();
        let inputs = VectorInputs::default();
        let mut ev = Evaluator::new(&data, &inputs, None).unwrap();
        let report = ev
            .evaluate(&ScoringConfig::new(
                &[MetricKind::Overlap, MetricKind::Jaccard],
                Aggregation::Weighted,
            ))
            .unwrap();
        let table = render_table(&[report]);
        let labels: Vec<&str> = table
            .lines()
            .skip(1)
            .map(|l| l.split("  ").next().unwrap().trim())
            .collect();
        assert_eq!(labels, TABLE_ROWS);
        assert!(table.lines().next().unwrap().contains("2 Layers (po + ja)"));
    }
}
