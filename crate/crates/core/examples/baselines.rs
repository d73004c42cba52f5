// PAV, SSV and MSV document graphs and their graph similarity.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use layersim::baselines::{build_baseline_graph, graph_similarity, BaselineMode, BaselineParams};
use layersim::text::corpus_from_lines;
use layersim::vectors::{load_word_vectors, sentence_vector};

pub fn run_example() -> layersim::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let store = load_word_vectors(BufReader::new(File::open(dir.join("toy_vectors.txt"))?))?;
    let text = std::fs::read_to_string(dir.join("toy_document.txt"))?;
    let corpus = corpus_from_lines(text.lines());
    let vectors = corpus
        .iter()
        .map(|r| sentence_vector(&store, &r.tokens).map(|v| v.values))
        .collect::<layersim::Result<Vec<_>>>()?;

    let params = BaselineParams::default();
    for mode in [BaselineMode::Pav, BaselineMode::Ssv, BaselineMode::Msv] {
        let graph = build_baseline_graph(&corpus, &vectors, mode, params)?;
        println!("{mode}: {:.4}", graph_similarity(&graph)?);
        for e in &graph.edges {
            println!("  {} -> {}  {:.3}", e.from, e.to, e.weight);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> layersim::Result<()> {
    run_example()
}
