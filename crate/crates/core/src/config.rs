//! JSON run configuration.
//!
//! ```json
//! {
//!   "layers": [{"kind": "po", "threshold": 0.5}, {"kind": "wmd"}],
//!   "aggregation": "eq20",
//!   "vector_source": {"word_vectors": "vectors.txt"},
//!   "stopwords": "stop.txt"
//! }
//! ```
//!
//! `vector_source` may also be written as a string, `"word_vectors <path>"`
//! or `"sentence_embeddings <path>"`. When sentence embeddings are the source
//! and a `wmd` layer is configured, word vectors come from the optional
//! top-level `word_vectors` path. Relative paths resolve against the
//! directory of the config file.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layer::DEFAULT_THRESHOLD;
use crate::metrics::MetricKind;
use crate::multilayer::Aggregation;
use crate::text::StopWords;
use crate::vectors::{
    load_sentence_embeddings, load_word_vectors, SentenceEmbeddings, VectorStore,
};

fn default_threshold() -> f64 {
    DEFAULT_THRESHOLD
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LayerSpec {
    pub kind: MetricKind,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
}

impl LayerSpec {
    pub fn new(kind: MetricKind) -> Self {
        LayerSpec {
            kind,
            threshold: DEFAULT_THRESHOLD,
        }
    }

    pub fn with_threshold(kind: MetricKind, threshold: f64) -> Self {
        LayerSpec { kind, threshold }
    }
}

/// The layers to build and how to combine them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoringConfig {
    pub layers: Vec<LayerSpec>,
    #[serde(default)]
    pub aggregation: Aggregation,
}

impl ScoringConfig {
    pub fn new(kinds: &[MetricKind], aggregation: Aggregation) -> Self {
        ScoringConfig {
            layers: kinds.iter().copied().map(LayerSpec::new).collect(),
            aggregation,
        }
    }

    pub fn kinds(&self) -> Vec<MetricKind> {
        self.layers.iter().map(|l| l.kind).collect()
    }

    /// Human-readable name, e.g. `2 Layers (po + wmd)`.
    pub fn label(&self) -> String {
        let n = self.layers.len();
        let kinds: Vec<&str> = self.layers.iter().map(|l| l.kind.code()).collect();
        let noun = if n == 1 { "Layer" } else { "Layers" };
        format!("{n} {noun} ({})", kinds.join(" + "))
    }

    pub fn validate(&self) -> Result<()> {
        if self.layers.is_empty() {
            return Err(Error::InvalidConfiguration("no layers configured".into()));
        }
        for (i, layer) in self.layers.iter().enumerate() {
            if self.layers[..i].iter().any(|l| l.kind == layer.kind) {
                return Err(Error::InvalidConfiguration(format!(
                    "layer kind {} appears more than once",
                    layer.kind
                )));
            }
            if !(0.0..=1.0).contains(&layer.threshold) {
                return Err(Error::InvalidConfiguration(format!(
                    "threshold {} for layer {} outside [0, 1]",
                    layer.threshold, layer.kind
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "VectorSourceRepr", rename_all = "snake_case")]
pub enum VectorSource {
    SentenceEmbeddings(PathBuf),
    WordVectors(PathBuf),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum VectorSourceRepr {
    Text(String),
    Tagged(TaggedSource),
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum TaggedSource {
    SentenceEmbeddings(PathBuf),
    WordVectors(PathBuf),
}

impl TryFrom<VectorSourceRepr> for VectorSource {
    type Error = String;

    fn try_from(repr: VectorSourceRepr) -> std::result::Result<Self, String> {
        match repr {
            VectorSourceRepr::Tagged(TaggedSource::SentenceEmbeddings(p)) => {
                Ok(VectorSource::SentenceEmbeddings(p))
            }
            VectorSourceRepr::Tagged(TaggedSource::WordVectors(p)) => {
                Ok(VectorSource::WordVectors(p))
            }
            VectorSourceRepr::Text(text) => {
                let (kind, path) = text
                    .trim()
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| format!("vector_source {text:?} needs a kind and a path"))?;
                let path = PathBuf::from(path.trim());
                match kind {
                    "sentence_embeddings" => Ok(VectorSource::SentenceEmbeddings(path)),
                    "word_vectors" => Ok(VectorSource::WordVectors(path)),
                    other => Err(format!("unknown vector_source kind {other:?}")),
                }
            }
        }
    }
}

/// Full run configuration as read from disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    #[serde(flatten)]
    pub scoring: ScoringConfig,
    #[serde(default)]
    pub vector_source: Option<VectorSource>,
    #[serde(default)]
    pub word_vectors: Option<PathBuf>,
    #[serde(default)]
    pub stopwords: Option<PathBuf>,
}

/// Vector data loaded for a run.
#[derive(Debug, Clone, Default)]
pub struct VectorInputs {
    pub sentence_embeddings: Option<SentenceEmbeddings>,
    pub words: Option<VectorStore>,
}

impl EngineConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: EngineConfig = serde_json::from_str(text)?;
        config.scoring.validate()?;
        Ok(config)
    }

    /// Reads a config and resolves its relative paths against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut config = Self::from_json(&text)?;
        if let Some(dir) = path.parent() {
            config.resolve_paths(dir);
        }
        Ok(config)
    }

    pub fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        match &mut self.vector_source {
            Some(VectorSource::SentenceEmbeddings(p)) | Some(VectorSource::WordVectors(p)) => {
                fix(p)
            }
            None => {}
        }
        if let Some(p) = &mut self.word_vectors {
            fix(p);
        }
        if let Some(p) = &mut self.stopwords {
            fix(p);
        }
    }

    pub fn load_stopwords(&self) -> Result<Option<StopWords>> {
        self.stopwords
            .as_ref()
            .map(|p| StopWords::from_reader(BufReader::new(File::open(p)?)))
            .transpose()
    }

    /// Loads the configured vectors. Sentence embeddings must cover exactly
    /// `corpus_len` ids.
    pub fn load_vectors(&self, corpus_len: usize) -> Result<VectorInputs> {
        let mut inputs = VectorInputs::default();
        match &self.vector_source {
            Some(VectorSource::WordVectors(p)) => {
                inputs.words = Some(load_word_vectors(BufReader::new(File::open(p)?))?);
            }
            Some(VectorSource::SentenceEmbeddings(p)) => {
                inputs.sentence_embeddings = Some(load_sentence_embeddings(
                    BufReader::new(File::open(p)?),
                    corpus_len,
                )?);
            }
            None => {}
        }
        if inputs.words.is_none() {
            if let Some(p) = &self.word_vectors {
                inputs.words = Some(load_word_vectors(BufReader::new(File::open(p)?))?);
            }
        }
        Ok(inputs)
    }
}
