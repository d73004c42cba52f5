// Building all five layers over a small corpus and scoring pairs.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use layersim::prelude::*;
use layersim::vectors::{load_word_vectors, sentence_vector};

pub fn run_example() -> layersim::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy_vectors.txt");
    let store = load_word_vectors(BufReader::new(File::open(path)?))?;
    let corpus = corpus_from_lines([
        "A cat is sleeping on the sofa.",
        "A kitten sleeps on the couch.",
        "A dog sleeps on the floor.",
        "A man is playing a guitar.",
        "Stock prices dropped sharply today.",
    ]);
    let vectors = corpus
        .iter()
        .map(|r| sentence_vector(&store, &r.tokens).map(|v| v.values))
        .collect::<layersim::Result<Vec<_>>>()?;
    let inputs = LayerInputs::new(&corpus)
        .with_sentence_vectors(&vectors)
        .with_words(&store);

    let layers = MetricKind::ALL
        .iter()
        .map(|&kind| build_layer(inputs, kind, 0.5))
        .collect::<layersim::Result<Vec<_>>>()?;
    for l in &layers {
        println!("{:>3}: {} edges", l.kind().code(), l.edge_count());
    }

    for aggregation in [Aggregation::Weighted, Aggregation::RootSum] {
        let net = MultiLayerNetwork::new(layers.clone(), aggregation)?;
        println!(
            "{aggregation}, inter-layer weight {:?}",
            net.inter_layer_weight()
        );
        for (a, b) in [(0, 1), (0, 2), (0, 3), (3, 4)] {
            let s = net.overall_similarity(a, b)?;
            println!(
                "  ({a},{b}) overall {:.4} per layer {:.3?}",
                s.value, s.per_layer
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> layersim::Result<()> {
    run_example()
}
