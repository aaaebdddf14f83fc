//! Word-vector tables in the plain-text `word f1 ... fd` format, label
//! vectors and cosine similarity.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use log::warn;
use serde::Serialize;
use thiserror::Error;

use crate::nlp::tokenize;

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("embedding file is empty")]
    EmptyFile,
    #[error("line {line}: expected {expected} components, found {found}{hint}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
        hint: &'static str,
    },
    #[error("line {line}: component {column} is not a finite number: {value:?}")]
    ParseError {
        line: usize,
        column: usize,
        value: String,
    },
    #[error("vectors have different dimensions ({0} vs {1})")]
    VectorDimensionMismatch(usize, usize),
    #[error("cannot read embedding file: {0}")]
    Io(#[from] std::io::Error),
}

const HEADER_HINT: &str =
    " (the first line looks like a `count dimension` header; headers are not supported)";

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dimension: usize,
    vectors: HashMap<String, Vec<f64>>,
}

impl EmbeddingTable {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.vectors.get(&word.to_lowercase()).map(Vec::as_slice)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.get(word).is_some()
    }

    /// Parses table text. The dimension is taken from the first entry.
    pub fn parse(source: &str) -> Result<Self, EmbeddingError> {
        let mut dimension = None;
        let mut vectors = HashMap::new();
        let mut first_line_header_like = false;

        for (n, line) in source.lines().enumerate() {
            let line_no = n + 1;
            let mut fields = line.split_whitespace();
            let Some(word) = fields.next() else {
                continue;
            };
            let components: Vec<&str> = fields.collect();
            let expected = *dimension.get_or_insert_with(|| {
                first_line_header_like = components.len() == 1
                    && word.parse::<u64>().is_ok()
                    && components[0].parse::<u64>().is_ok();
                components.len()
            });
            if components.len() != expected || expected == 0 {
                return Err(EmbeddingError::DimensionMismatch {
                    line: line_no,
                    expected,
                    found: components.len(),
                    hint: if first_line_header_like {
                        HEADER_HINT
                    } else {
                        ""
                    },
                });
            }
            let mut vector = Vec::with_capacity(expected);
            for (column, raw) in components.iter().enumerate() {
                match raw.parse::<f64>() {
                    Ok(v) if v.is_finite() => vector.push(v),
                    _ => {
                        return Err(EmbeddingError::ParseError {
                            line: line_no,
                            column: column + 1,
                            value: raw.to_string(),
                        })
                    }
                }
            }
            let key = word.to_lowercase();
            if vectors.insert(key, vector).is_some() {
                warn!("line {line_no}: duplicate entry for {word:?}; keeping the later vector");
            }
        }

        match dimension {
            Some(dimension) => Ok(Self { dimension, vectors }),
            None => Err(EmbeddingError::EmptyFile),
        }
    }
}

/// Loads a whitespace-separated embedding file (no header line).
pub fn load_embeddings(path: impl AsRef<Path>) -> Result<EmbeddingTable, EmbeddingError> {
    EmbeddingTable::parse(&fs::read_to_string(path)?)
}

/// Mean vector of a task label over its in-vocabulary tokens.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelVector {
    pub label: String,
    pub vector: Vec<f64>,
    /// Fraction of label tokens found in the table.
    pub coverage: f64,
}

impl LabelVector {
    pub fn new(label: impl Into<String>, vector: Vec<f64>) -> Self {
        let coverage = if vector.iter().all(|&x| x == 0.0) {
            0.0
        } else {
            1.0
        };
        Self {
            label: label.into(),
            vector,
            coverage,
        }
    }
}

pub fn embed_label(label: &str, table: &EmbeddingTable) -> LabelVector {
    let lower = label.to_lowercase();
    let words: Vec<String> = tokenize(&lower)
        .into_iter()
        .filter(|t| t.text.chars().any(char::is_alphanumeric))
        .map(|t| t.text)
        .collect();

    let mut sum = vec![0.0; table.dimension()];
    let mut found = 0usize;
    for word in &words {
        if let Some(v) = table.vectors.get(word) {
            for (acc, x) in sum.iter_mut().zip(v) {
                *acc += x;
            }
            found += 1;
        }
    }
    if found > 0 {
        let n = found as f64;
        sum.iter_mut().for_each(|x| *x /= n);
    }
    // A mean of nonzero vectors can still cancel to zero; treat that as no
    // evidence so coverage and the zero vector stay in lockstep.
    let coverage = if found == 0 || sum.iter().all(|&x| x == 0.0) {
        sum.iter_mut().for_each(|x| *x = 0.0);
        0.0
    } else {
        found as f64 / words.len() as f64
    };
    LabelVector {
        label: label.to_string(),
        vector: sum,
        coverage,
    }
}

pub fn dot(v: &[f64], w: &[f64]) -> f64 {
    v.iter().zip(w).map(|(a, b)| a * b).sum()
}

/// Cosine of two raw vectors; 0 when either has zero norm.
pub fn cosine_slices(v: &[f64], w: &[f64]) -> Result<f64, EmbeddingError> {
    if v.len() != w.len() {
        return Err(EmbeddingError::VectorDimensionMismatch(v.len(), w.len()));
    }
    let vv = dot(v, v);
    let ww = dot(w, w);
    if vv == 0.0 || ww == 0.0 {
        return Ok(0.0);
    }
    // sqrt of the product (not product of sqrts) keeps cosine(v, v) exactly 1.
    Ok((dot(v, w) / (vv * ww).sqrt()).clamp(-1.0, 1.0))
}

pub fn cosine(v: &LabelVector, w: &LabelVector) -> Result<f64, EmbeddingError> {
    cosine_slices(&v.vector, &w.vector)
}
