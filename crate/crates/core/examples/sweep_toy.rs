// Ranking every combination of two to five layers on the toy dataset.

use std::collections::HashMap;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use layersim::config::VectorInputs;
use layersim::eval::{layer_combinations, load_sts_dataset, render_table, Evaluator};
use layersim::metrics::MetricKind;
use layersim::multilayer::Aggregation;
use layersim::vectors::load_word_vectors;

pub fn run_example() -> layersim::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let dataset = load_sts_dataset(BufReader::new(File::open(dir.join("toy_sts.tsv"))?))?;
    let words = load_word_vectors(BufReader::new(File::open(dir.join("toy_vectors.txt"))?))?;
    let inputs = VectorInputs {
        sentence_embeddings: None,
        words: Some(words),
    };

    let combos = layer_combinations(&MetricKind::ALL, 2, 5);
    let thresholds: HashMap<MetricKind, f64> = MetricKind::ALL.iter().map(|&k| (k, 0.5)).collect();
    let mut evaluator = Evaluator::new(&dataset, &inputs, None)?;
    let reports = evaluator.sweep(&combos, &thresholds, Aggregation::Weighted)?;

    println!("{} configurations, best five:", reports.len());
    print!("{}", render_table(&reports[..5]));
    Ok(())
}

#[allow(dead_code)]
fn main() -> layersim::Result<()> {
    run_example()
}
