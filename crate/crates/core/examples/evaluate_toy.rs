// Evaluating the po + wmd configuration on the bundled toy dataset.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use layersim::config::EngineConfig;
use layersim::eval::{load_sts_dataset, render_table, Evaluator, PairCorpus};

pub fn run_example() -> layersim::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let config = EngineConfig::load(&dir.join("po_wmd.json"))?;
    let dataset = load_sts_dataset(BufReader::new(File::open(dir.join("toy_sts.tsv"))?))?;

    let corpus_len = PairCorpus::build(&dataset, None).records.len();
    let inputs = config.load_vectors(corpus_len)?;
    let mut evaluator = Evaluator::new(&dataset, &inputs, None)?;
    let report = evaluator.evaluate(&config.scoring)?;

    print!("{}", render_table(std::slice::from_ref(&report)));
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> layersim::Result<()> {
    run_example()
}
