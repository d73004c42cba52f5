// Local layer similarity on a five-node layer.
//
// A is linked to B and C, B to D and E. The pair (A, B) picks up evidence
// from the adjacent pairs (C, D) and (C, E).

use layersim::layer::LayerGraph;
use layersim::metrics::MetricKind;

pub fn run_example() -> layersim::Result<()> {
    let names = ["A", "B", "C", "D", "E"];
    let mut m = vec![vec![0.0; 5]; 5];
    for (i, j, w) in [
        (0, 1, 0.8),
        (0, 2, 0.8),
        (1, 3, 0.8),
        (1, 4, 0.8),
        (2, 3, 0.6),
        (2, 4, 0.6),
    ] {
        m[i][j] = w;
        m[j][i] = w;
    }
    let layer = LayerGraph::from_matrix(MetricKind::Cosine, 0.7, m)?;

    for (i, j, w) in layer.edges() {
        println!("edge {}-{} {w}", names[i], names[j]);
    }
    for p in layer.adjacent_pairs(0, 1)? {
        println!("adjacent pair ({}, {})", names[p.u], names[p.v]);
    }
    let terms = layer.local_terms(0, 1)?;
    println!("{terms:?}");
    println!("local similarity (A, B) = {:.4}", terms.value());
    Ok(())
}

#[allow(dead_code)]
fn main() -> layersim::Result<()> {
    run_example()
}
