use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use layersim::baselines::{build_baseline_graph, graph_similarity, BaselineMode, BaselineParams};
use layersim::config::{EngineConfig, LayerSpec, ScoringConfig, VectorInputs, VectorSource};
use layersim::eval::{
    layer_combinations, load_sts_dataset, render_table, score_with, write_scores, Evaluator,
};
use layersim::layer::DEFAULT_THRESHOLD;
use layersim::metrics::MetricKind;
use layersim::multilayer::Aggregation;
use layersim::text::{SentenceRecord, StopWords};
use layersim::vectors::sentence_vector;
use layersim::{Error, Result};

#[derive(Parser)]
#[command(
    name = "layersim",
    version,
    about = "Multi-layer network sentence similarity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score dataset pairs (or one pair of corpus ids) as TSV.
    Score {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        dataset: PathBuf,
        /// Two corpus ids, e.g. `3,17`.
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one configuration against the dataset's gold scores.
    Evaluate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate every layer combination and rank by Pearson correlation.
    Sweep {
        #[arg(long, value_delimiter = ',', default_value = "cs,po,ed,ja,wmd")]
        layers: Vec<String>,
        #[arg(long, default_value_t = 2)]
        min: usize,
        #[arg(long, default_value_t = 5)]
        max: usize,
        #[arg(long)]
        dataset: PathBuf,
        #[command(flatten)]
        vectors: VectorArgs,
        /// Threshold for layers not given one by `--config`.
        #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
        threshold: f64,
        #[arg(long)]
        aggregation: Option<Aggregation>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Write one layer's edges as TSV (and optionally as JSON).
    ExportGraph {
        #[arg(long)]
        layer: MetricKind,
        #[arg(long)]
        dataset: PathBuf,
        #[command(flatten)]
        vectors: VectorArgs,
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        out: PathBuf,
        /// Also write the JSON layer document here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Build a PAV/SSV/MSV graph over a document (one sentence per line).
    Baseline {
        #[arg(long)]
        mode: BaselineMode,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
        /// Only link PAV sentences to their immediate predecessor.
        #[arg(long)]
        adjacent_only: bool,
        #[arg(long)]
        corpus: PathBuf,
        #[command(flatten)]
        vectors: VectorArgs,
        /// Edge list output; the graph score always goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VectorArgs {
    /// JSON config supplying vector sources, stop words and thresholds.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    word_vectors: Option<PathBuf>,
    #[arg(long)]
    sentence_embeddings: Option<PathBuf>,
    #[arg(long)]
    stopwords: Option<PathBuf>,
}

impl VectorArgs {
    fn engine_config(&self) -> Result<EngineConfig> {
        let mut config = match &self.config {
            Some(path) => EngineConfig::load(path)?,
            None => EngineConfig {
                scoring: ScoringConfig {
                    layers: Vec::new(),
                    aggregation: Aggregation::default(),
                },
                vector_source: None,
                word_vectors: None,
                stopwords: None,
            },
        };
        if let Some(p) = &self.sentence_embeddings {
            config.vector_source = Some(VectorSource::SentenceEmbeddings(p.clone()));
            if let Some(w) = &self.word_vectors {
                config.word_vectors = Some(w.clone());
            }
        } else if let Some(w) = &self.word_vectors {
            config.vector_source = Some(VectorSource::WordVectors(w.clone()));
        }
        if let Some(s) = &self.stopwords {
            config.stopwords = Some(s.clone());
        }
        Ok(config)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_dataset(path: &Path) -> Result<Vec<layersim::eval::StsPair>> {
    load_sts_dataset(BufReader::new(File::open(path)?))
}

/// Distinct-sentence count of a dataset, needed to validate embeddings.
fn corpus_len(dataset: &[layersim::eval::StsPair], stopwords: Option<&StopWords>) -> usize {
    layersim::eval::PairCorpus::build(dataset, stopwords)
        .records
        .len()
}

fn parse_pair(text: &str) -> Result<(usize, usize)> {
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidArgument(format!("invalid corpus id {s:?}")))
    };
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| Error::InvalidArgument(format!("--pairs expects `a,b`, got {text:?}")))?;
    Ok((parse(a)?, parse(b)?))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Score {
            config,
            dataset,
            pairs,
            out,
        } => {
            let config = EngineConfig::load(&config)?;
            let data = load_dataset(&dataset)?;
            let stop = config.load_stopwords()?;
            let inputs = config.load_vectors(corpus_len(&data, stop.as_ref()))?;
            let mut evaluator = Evaluator::new(&data, &inputs, stop.as_ref())?;
            let scores = match pairs {
                Some(p) => {
                    let (a, b) = parse_pair(&p)?;
                    let n = evaluator.corpus().records.len();
                    if a >= n || b >= n {
                        return Err(Error::InvalidArgument(format!(
                            "corpus ids must be below {n}"
                        )));
                    }
                    let net = evaluator.network(&config.scoring)?;
                    score_with(&net, &[(a, b)])?
                }
                None => evaluator.score_pairs(&config.scoring)?.1,
            };
            let mut w = output(out.as_deref())?;
            write_scores(&mut w, &config.scoring.kinds(), &scores)?;
            w.flush()?;
        }
        Command::Evaluate {
            config,
            dataset,
            out,
            format,
        } => {
            let config = EngineConfig::load(&config)?;
            let data = load_dataset(&dataset)?;
            let stop = config.load_stopwords()?;
            let inputs = config.load_vectors(corpus_len(&data, stop.as_ref()))?;
            let mut evaluator = Evaluator::new(&data, &inputs, stop.as_ref())?;
            let report = evaluator.evaluate(&config.scoring)?;
            let mut w = output(out.as_deref())?;
            match format {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut w, &report)?;
                    writeln!(w)?;
                }
                Format::Table => write!(w, "{}", render_table(&[report]))?,
            }
            w.flush()?;
        }
        Command::Sweep {
            layers,
            min,
            max,
            dataset,
            vectors,
            threshold,
            aggregation,
            out,
            format,
        } => {
            let kinds = layers
                .iter()
                .map(|s| s.parse::<MetricKind>())
                .collect::<Result<Vec<_>>>()?;
            if min < 2 || max > MetricKind::ALL.len() || min > max {
                return Err(Error::InvalidConfiguration(format!(
                    "--min/--max must satisfy 2 <= min <= max <= 5, got {min}..{max}"
                )));
            }
            let config = vectors.engine_config()?;
            let data = load_dataset(&dataset)?;
            let stop = config.load_stopwords()?;
            let inputs = config.load_vectors(corpus_len(&data, stop.as_ref()))?;
            let mut thresholds: HashMap<MetricKind, f64> =
                kinds.iter().map(|&k| (k, threshold)).collect();
            for spec in &config.scoring.layers {
                thresholds.insert(spec.kind, spec.threshold);
            }
            let aggregation = aggregation.unwrap_or(config.scoring.aggregation);
            let combos = layer_combinations(&kinds, min, max);
            let mut evaluator = Evaluator::new(&data, &inputs, stop.as_ref())?;
            let reports = evaluator.sweep(&combos, &thresholds, aggregation)?;
            let mut w = output(out.as_deref())?;
            match format {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut w, &reports)?;
                    writeln!(w)?;
                }
                Format::Table => write!(w, "{}", render_table(&reports))?,
            }
            w.flush()?;
        }
        Command::ExportGraph {
            layer,
            dataset,
            vectors,
            threshold,
            out,
            json,
        } => {
            let config = vectors.engine_config()?;
            let data = load_dataset(&dataset)?;
            let stop = config.load_stopwords()?;
            let inputs = config.load_vectors(corpus_len(&data, stop.as_ref()))?;
            let threshold = threshold
                .or_else(|| {
                    config
                        .scoring
                        .layers
                        .iter()
                        .find(|l| l.kind == layer)
                        .map(|l| l.threshold)
                })
                .unwrap_or(DEFAULT_THRESHOLD);
            let mut evaluator = Evaluator::new(&data, &inputs, stop.as_ref())?;
            let graph = evaluator.layer(LayerSpec::with_threshold(layer, threshold))?;
            let mut w = BufWriter::new(File::create(&out)?);
            graph.write_edge_list(&mut w)?;
            w.flush()?;
            if let Some(path) = json {
                let mut w = BufWriter::new(File::create(path)?);
                serde_json::to_writer_pretty(&mut w, &graph.to_document())?;
                writeln!(w)?;
                w.flush()?;
            }
        }
        Command::Baseline {
            mode,
            alpha,
            theta,
            adjacent_only,
            corpus,
            vectors,
            out,
        } => {
            let config = vectors.engine_config()?;
            let stop = config.load_stopwords()?.unwrap_or_default();
            let mut records = Vec::new();
            for line in BufReader::new(File::open(&corpus)?).lines() {
                let line = line?;
                if !line.trim().is_empty() {
                    records.push(SentenceRecord::with_stopwords(records.len(), line, &stop));
                }
            }
            let inputs: VectorInputs = config.load_vectors(records.len())?;
            let sentence_vectors = match (&inputs.sentence_embeddings, &inputs.words) {
                (Some(e), _) => e.as_slice().to_vec(),
                (None, Some(store)) => records
                    .iter()
                    .map(|r| {
                        sentence_vector(store, &r.tokens)
                            .map(|v| v.values)
                            .map_err(|_| Error::NoCoverage {
                                sentence: Some(r.id),
                            })
                    })
                    .collect::<Result<Vec<_>>>()?,
                (None, None) => {
                    return Err(Error::InvalidConfiguration(
                        "baselines need sentence embeddings or word vectors".into(),
                    ))
                }
            };
            let params = BaselineParams {
                alpha,
                theta,
                adjacent_only,
            };
            let graph = build_baseline_graph(&records, &sentence_vectors, mode, params)?;
            if let Some(path) = out {
                let mut w = BufWriter::new(File::create(path)?);
                graph.write_edge_list(&mut w)?;
                w.flush()?;
            }
            println!(
                "{mode}\t{}\t{}",
                graph.edges.len(),
                graph_similarity(&graph)?
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
