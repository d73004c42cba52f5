//! Word vectors, per-sentence embeddings and mean-of-words sentence vectors.
//!
//! Word-vector files are the plain text layout used by word2vec and GloVe:
//! an optional `<count> <dim>` header, then one `token v1 .. vd` row per
//! word. Sentence-embedding files are TSV rows `id<TAB>v1<TAB>..<TAB>vd`
//! where `id` is the 0-based corpus index.

use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::text::Token;

/// Token to dense vector lookup with a fixed dimensionality.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorStore {
    dim: usize,
    entries: HashMap<String, Vec<f64>>,
    duplicates: usize,
}

impl VectorStore {
    /// Builds a store from `(token, vector)` pairs. Later duplicates replace
    /// earlier ones.
    pub fn from_entries<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: Into<String>,
    {
        let mut dim = None;
        let mut map = HashMap::new();
        let mut duplicates = 0;
        for (token, vector) in entries {
            let d = *dim.get_or_insert(vector.len());
            if d == 0 {
                return Err(Error::invalid(
                    "word vectors must have at least one component",
                ));
            }
            if vector.len() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: vector.len(),
                });
            }
            if map.insert(token.into(), vector).is_some() {
                duplicates += 1;
            }
        }
        let dim = dim.ok_or_else(|| Error::invalid("no word vectors given"))?;
        Ok(VectorStore {
            dim,
            entries: map,
            duplicates,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of rows that repeated an earlier token while loading.
    pub fn duplicate_rows(&self) -> usize {
        self.duplicates
    }

    pub fn get(&self, token: &str) -> Option<&[f64]> {
        self.entries.get(token).map(Vec::as_slice)
    }

    pub fn contains(&self, token: &str) -> bool {
        self.entries.contains_key(token)
    }
}

/// Parses a word-vector text file.
///
/// The dimensionality is taken from the first vector row. A first line with
/// exactly two integer fields is treated as a `<count> <dim>` header and both
/// numbers are checked against the rows that follow.
pub fn load_word_vectors<R: BufRead>(reader: R) -> Result<VectorStore> {
    let mut header: Option<(usize, usize)> = None;
    let mut dim: Option<usize> = None;
    let mut rows = 0usize;
    let mut entries = HashMap::new();
    let mut duplicates = 0usize;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let mut fields = line.split_ascii_whitespace();
        let Some(word) = fields.next() else {
            continue;
        };
        let rest: Vec<&str> = fields.collect();

        if lineno == 1 && rest.len() == 1 {
            if let (Ok(count), Ok(d)) = (word.parse::<usize>(), rest[0].parse::<usize>()) {
                header = Some((count, d));
                continue;
            }
        }

        let vector = rest
            .iter()
            .map(|v| {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::parse(lineno, format!("invalid vector component {v:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;

        let expected = *dim.get_or_insert(vector.len());
        if expected == 0 {
            return Err(Error::parse(
                lineno,
                format!("token {word:?} has no vector components"),
            ));
        }
        if vector.len() != expected {
            return Err(Error::parse(
                lineno,
                format!("expected {expected} components, found {}", vector.len()),
            ));
        }
        if entries.insert(word.to_string(), vector).is_some() {
            duplicates += 1;
        }
        rows += 1;
    }

    let Some(dim) = dim else {
        return Err(Error::parse(1, "no word vectors found"));
    };
    if let Some((count, header_dim)) = header {
        if header_dim != dim {
            return Err(Error::parse(
                1,
                format!("header declares dim {header_dim}, rows have {dim}"),
            ));
        }
        if count != rows {
            return Err(Error::parse(
                1,
                format!("header declares {count} rows, found {rows}"),
            ));
        }
    }
    Ok(VectorStore {
        dim,
        entries,
        duplicates,
    })
}

/// A sentence vector together with the number of tokens that contributed.
#[derive(Debug, Clone, PartialEq)]
pub struct SentenceVector {
    pub values: Vec<f64>,
    pub covered: usize,
}

/// Component-wise mean of the in-vocabulary word vectors of `tokens`.
///
/// Out-of-vocabulary tokens are skipped; repeated tokens count once per
/// occurrence.
pub fn sentence_vector(store: &VectorStore, tokens: &[Token]) -> Result<SentenceVector> {
    let mut sum = vec![0.0; store.dim()];
    let mut covered = 0usize;
    for token in tokens {
        if let Some(v) = store.get(token) {
            for (acc, x) in sum.iter_mut().zip(v) {
                *acc += x;
            }
            covered += 1;
        }
    }
    if covered == 0 {
        return Err(Error::NoCoverage { sentence: None });
    }
    let scale = covered as f64;
    for x in &mut sum {
        *x /= scale;
    }
    Ok(SentenceVector {
        values: sum,
        covered,
    })
}

/// Precomputed sentence vectors indexed by corpus id.
#[derive(Debug, Clone, PartialEq)]
pub struct SentenceEmbeddings {
    dim: usize,
    vectors: Vec<Vec<f64>>,
}

impl SentenceEmbeddings {
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self> {
        let dim = vectors.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::invalid("sentence embeddings must be non-empty"));
        }
        if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: bad.len(),
            });
        }
        Ok(SentenceEmbeddings { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, id: usize) -> Option<&[f64]> {
        self.vectors.get(id).map(Vec::as_slice)
    }

    pub fn as_slice(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<Vec<f64>> {
        self.vectors
    }
}

/// Parses an `id<TAB>v1<TAB>..` file that must hold exactly the ids
/// `0..expected_count`.
pub fn load_sentence_embeddings<R: BufRead>(
    reader: R,
    expected_count: usize,
) -> Result<SentenceEmbeddings> {
    let mut slots: Vec<Option<Vec<f64>>> = vec![None; expected_count];
    let mut dim: Option<usize> = None;
    let mut last_line = 0;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let id_field = fields.next().unwrap_or_default();
        let id: usize = id_field
            .trim()
            .parse()
            .map_err(|_| Error::parse(lineno, format!("invalid sentence id {id_field:?}")))?;
        let vector = fields
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::parse(lineno, format!("invalid vector component {v:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        let expected = *dim.get_or_insert(vector.len());
        if expected == 0 {
            return Err(Error::parse(
                lineno,
                format!("sentence {id} has no vector components"),
            ));
        }
        if vector.len() != expected {
            return Err(Error::parse(
                lineno,
                format!("expected {expected} components, found {}", vector.len()),
            ));
        }
        let slot = slots.get_mut(id).ok_or_else(|| {
            Error::parse(
                lineno,
                format!("sentence id {id} outside 0..{expected_count}"),
            )
        })?;
        if slot.is_some() {
            return Err(Error::parse(lineno, format!("duplicate sentence id {id}")));
        }
        *slot = Some(vector);
    }

    let present = slots.iter().filter(|s| s.is_some()).count();
    if present < expected_count {
        let first_missing = slots.iter().position(Option::is_none).unwrap_or(0);
        return Err(Error::parse(
            last_line.max(1),
            format!(
                "expected {expected_count} sentence embeddings, found {present} (first missing id {first_missing})"
            ),
        ));
    }
    if expected_count == 0 {
        return Err(Error::parse(1, "no sentence embeddings expected"));
    }
    SentenceEmbeddings::new(slots.into_iter().flatten().collect())
}
