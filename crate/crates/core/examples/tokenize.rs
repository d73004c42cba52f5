// Tokenization, n-grams and stop-word filtering.

use layersim::text::{join_tokens, ngrams, tokenize, StopWords};

pub fn run_example() -> layersim::Result<()> {
    let tokens = tokenize("The quick-brown fox, the LAZY dog; Zürich 2024!");
    let words: Vec<&str> = tokens.iter().map(|t| t.as_str()).collect();
    println!("tokens:  {words:?}");

    for n in 1..=3 {
        let grams: Vec<String> = ngrams(&tokens, n)?.iter().map(|g| join_tokens(g)).collect();
        println!("{n}-grams: {grams:?}");
    }

    let stop = StopWords::from_words(["the", "a"]);
    let kept: Vec<String> = stop
        .filter(tokens)
        .into_iter()
        .map(|t| t.to_string())
        .collect();
    println!("without stop words: {kept:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> layersim::Result<()> {
    run_example()
}
