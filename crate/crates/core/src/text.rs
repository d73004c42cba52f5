//! Text normalization, tokenization and n-gram extraction.
//!
//! Every metric layer sees sentences through [`tokenize`]: the input is
//! lowercased and split on maximal runs of characters that are not Unicode
//! alphanumerics. Numbers stay as tokens. There is no stemming; stop words are
//! only removed when a [`StopWords`] list is supplied.

use std::collections::HashSet;
use std::fmt;
use std::io::BufRead;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lowercased word with no whitespace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Token(String);

impl Token {
    /// Builds a token from text that is already normalized.
    ///
    /// Returns `None` for empty text or text containing whitespace.
    pub fn new(text: impl Into<String>) -> Option<Self> {
        let text = text.into();
        if text.is_empty() || text.chars().any(char::is_whitespace) {
            return None;
        }
        Some(Token(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Deref for Token {
    type Target = str;

    fn deref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Lowercases `raw` and splits it on non-alphanumeric runs.
pub fn tokenize(raw: &str) -> Vec<Token> {
    raw.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|piece| !piece.is_empty())
        .map(|piece| Token(piece.to_string()))
        .collect()
}

/// Joins tokens with single spaces. This is also the key used to merge
/// duplicate sentences in a corpus.
pub fn join_tokens(tokens: &[Token]) -> String {
    let mut out = String::new();
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(t);
    }
    out
}

/// A contiguous window of `n` tokens.
pub type NGram<'a> = &'a [Token];

/// All contiguous windows of length `n`, in order.
pub fn ngrams(tokens: &[Token], n: usize) -> Result<Vec<NGram<'_>>> {
    if n == 0 {
        return Err(Error::invalid("n-gram length must be at least 1"));
    }
    Ok(tokens.windows(n).collect())
}

/// A stop-word list applied after tokenization.
#[derive(Debug, Clone, Default)]
pub struct StopWords {
    words: HashSet<String>,
}

impl StopWords {
    /// Reads one word per line. Each line is run through [`tokenize`], so
    /// casing in the file does not matter. Blank lines are ignored.
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut words = HashSet::new();
        for line in reader.lines() {
            for token in tokenize(&line?) {
                words.insert(token.0);
            }
        }
        Ok(StopWords { words })
    }

    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let words = words
            .into_iter()
            .flat_map(|w| tokenize(w.as_ref()))
            .map(|t| t.0)
            .collect();
        StopWords { words }
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn filter(&self, tokens: Vec<Token>) -> Vec<Token> {
        if self.words.is_empty() {
            return tokens;
        }
        tokens.into_iter().filter(|t| !self.contains(t)).collect()
    }
}

/// A corpus entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceRecord {
    pub id: usize,
    pub raw: String,
    pub tokens: Vec<Token>,
}

impl SentenceRecord {
    pub fn new(id: usize, raw: impl Into<String>) -> Self {
        let raw = raw.into();
        let tokens = tokenize(&raw);
        SentenceRecord { id, raw, tokens }
    }

    pub fn with_stopwords(id: usize, raw: impl Into<String>, stopwords: &StopWords) -> Self {
        let mut record = Self::new(id, raw);
        record.tokens = stopwords.filter(record.tokens);
        record
    }
}

/// Builds records with ids `0..n` in input order.
pub fn corpus_from_lines<I, S>(lines: I) -> Vec<SentenceRecord>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    lines
        .into_iter()
        .enumerate()
        .map(|(id, raw)| SentenceRecord::new(id, raw))
        .collect()
}
