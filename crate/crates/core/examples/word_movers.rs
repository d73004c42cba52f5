// Solving a small transport problem and the word mover's distance built on it.

use layersim::metrics::{nbow, solve_transport, word_movers_distance};
use layersim::text::tokenize;
use layersim::vectors::VectorStore;

pub fn run_example() -> layersim::Result<()> {
    let plan = solve_transport(
        &[0.5, 0.3, 0.2],
        &[0.6, 0.4],
        &[vec![1.0, 4.0], vec![2.0, 1.0], vec![3.0, 2.0]],
    )?;
    println!("optimal cost {:.4}", plan.cost);
    for row in &plan.flow {
        println!("  {row:.3?}");
    }

    let store = VectorStore::from_entries([
        ("obama", vec![0.9, 0.1, 0.2]),
        ("president", vec![0.8, 0.2, 0.3]),
        ("speaks", vec![0.1, 0.9, 0.1]),
        ("greets", vec![0.2, 0.8, 0.2]),
        ("media", vec![0.3, 0.1, 0.9]),
        ("press", vec![0.3, 0.2, 0.8]),
    ])?;
    let a = tokenize("Obama speaks to the media");
    let b = tokenize("The president greets the press");
    let (na, nb) = (nbow(&store, &a)?, nbow(&store, &b)?);
    println!("nBOW a: {:?} {:?}", na.tokens, na.weights);
    println!("WMD = {:.4}", word_movers_distance(&store, &na, &nb)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> layersim::Result<()> {
    run_example()
}
