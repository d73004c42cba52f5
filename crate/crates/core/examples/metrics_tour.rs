// Every similarity metric on one sentence pair.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use layersim::metrics::{
    cosine_similarity, euclidean_sim, jaccard_sim, phrasal_overlap_sim, wmd_sim,
};
use layersim::text::tokenize;
use layersim::vectors::{load_word_vectors, sentence_vector};

pub fn run_example() -> layersim::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy_vectors.txt");
    let store = load_word_vectors(BufReader::new(File::open(path)?))?;

    let s1 = tokenize("A kitten sleeps on the couch.");
    let s2 = tokenize("A cat is sleeping on the sofa.");
    let v1 = sentence_vector(&store, &s1)?;
    let v2 = sentence_vector(&store, &s2)?;

    println!(
        "cosine    {:.4}",
        cosine_similarity(&v1.values, &v2.values)?.value
    );
    println!(
        "euclidean {:.4}",
        euclidean_sim(&v1.values, &v2.values)?.value
    );
    println!("overlap   {:.4}", phrasal_overlap_sim(&s1, &s2)?.value);
    println!("jaccard   {:.4}", jaccard_sim(&s1, &s2)?.value);
    println!("wmd       {:.4}", wmd_sim(&store, &s1, &s2)?.value);
    Ok(())
}

#[allow(dead_code)]
fn main() -> layersim::Result<()> {
    run_example()
}
