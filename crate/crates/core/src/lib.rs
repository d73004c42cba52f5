//! Sentence similarity over a multi-layer network of sentences.
//!
//! Every similarity measure (cosine, phrasal overlap, Euclidean, Jaccard,
//! word mover's distance) becomes one weighted graph over the same sentence
//! nodes. A pair is scored per layer with a neighborhood-aware local
//! similarity and the layers are combined with a Jensen-Shannon based
//! inter-layer weight.
//!
//! ```
//! use layersim::prelude::*;
//!
//! let corpus = corpus_from_lines(["the cat sat", "a cat sat down", "stocks fell"]);
//! let inputs = LayerInputs::new(&corpus);
//! let po = build_layer(inputs, MetricKind::Overlap, 0.5).unwrap();
//! let ja = build_layer(inputs, MetricKind::Jaccard, 0.5).unwrap();
//! let net = MultiLayerNetwork::new(vec![po, ja], Aggregation::Weighted).unwrap();
//! let score = net.overall_similarity(0, 1).unwrap();
//! assert_eq!(score.per_layer.len(), 2);
//! ```

pub mod baselines;
pub mod config;
pub mod error;
pub mod eval;
pub mod layer;
pub mod metrics;
pub mod multilayer;
pub mod text;
pub mod vectors;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::baselines::{
        build_baseline_graph, graph_similarity, BaselineGraph, BaselineMode, BaselineParams,
    };
    pub use crate::config::{EngineConfig, LayerSpec, ScoringConfig, VectorInputs, VectorSource};
    pub use crate::error::{Error, Result};
    pub use crate::eval::{
        layer_combinations, load_sts_dataset, render_table, EvaluationReport, Evaluator, StsPair,
    };
    pub use crate::layer::{build_layer, LayerGraph, LayerInputs};
    pub use crate::metrics::MetricKind;
    pub use crate::multilayer::{Aggregation, MultiLayerNetwork, OverallScore};
    pub use crate::text::{corpus_from_lines, tokenize, SentenceRecord, StopWords, Token};
    pub use crate::vectors::{load_word_vectors, sentence_vector, VectorStore};
}
