//! Closed-class word lists and the shipped verb tables.

use std::collections::{HashMap, HashSet};
use std::sync::LazyLock;

use thiserror::Error;

const VERBS_TSV: &str = include_str!("../../resources/verbs.tsv");
const IRREGULAR_TSV: &str = include_str!("../../resources/irregular.tsv");

pub const AUXILIARIES: &[&str] = &[
    "be", "am", "is", "are", "was", "were", "been", "being", "have", "has", "had", "do", "does",
    "did", "will", "would", "can", "could", "shall", "should", "may", "might", "must",
];

pub const DETERMINERS: &[&str] = &["the", "a", "an", "this", "that", "these", "those"];

pub const ADPOSITIONS: &[&str] = &[
    "of", "in", "on", "at", "by", "for", "to", "with", "and", "or", "if", "then", "when",
];

/// Lemmas of the auxiliary list. No action may carry one of these labels.
pub const AUXILIARY_LEMMAS: &[&str] = &[
    "be", "have", "do", "will", "would", "can", "could", "shall", "should", "may", "might", "must",
];

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: expected `inflected_form<TAB>lemma`, got {content:?}")]
pub struct LexiconError {
    pub line: usize,
    pub content: String,
}

/// Verb lexicon plus irregular-form table.
///
/// Both tables map a lowercase inflected form to its lemma.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    verbs: HashMap<String, String>,
    bases: HashSet<String>,
    irregular: HashMap<String, String>,
}

static BUILTIN: LazyLock<Lexicon> = LazyLock::new(|| {
    Lexicon::from_tsv(VERBS_TSV, IRREGULAR_TSV).expect("shipped lexicon resources are well formed")
});

impl Lexicon {
    /// The lexicon compiled into the crate.
    pub fn builtin() -> &'static Lexicon {
        &BUILTIN
    }

    pub fn from_tsv(verbs: &str, irregular: &str) -> Result<Self, LexiconError> {
        let verbs = parse_tsv(verbs)?;
        let irregular = parse_tsv(irregular)?;
        let bases = verbs.values().cloned().collect();
        Ok(Self {
            verbs,
            bases,
            irregular,
        })
    }

    /// Lemma of an inflected form listed in the verb table.
    pub fn verb_lemma(&self, form: &str) -> Option<&str> {
        self.verbs.get(form).map(String::as_str)
    }

    pub fn is_verb_form(&self, form: &str) -> bool {
        self.verbs.contains_key(form)
    }

    /// True when `lemma` is the base form of some verb entry.
    pub fn is_verb_base(&self, lemma: &str) -> bool {
        self.bases.contains(lemma)
    }

    pub fn irregular_lemma(&self, form: &str) -> Option<&str> {
        self.irregular.get(form).map(String::as_str)
    }

    /// All inflected forms in the verb table, sorted.
    pub fn verb_forms(&self) -> Vec<&str> {
        let mut forms: Vec<&str> = self.verbs.keys().map(String::as_str).collect();
        forms.sort_unstable();
        forms
    }

    pub fn verb_bases(&self) -> Vec<&str> {
        let mut bases: Vec<&str> = self.bases.iter().map(String::as_str).collect();
        bases.sort_unstable();
        bases
    }
}

fn parse_tsv(source: &str) -> Result<HashMap<String, String>, LexiconError> {
    let mut table = HashMap::new();
    for (n, raw) in source.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        match (fields.next(), fields.next(), fields.next()) {
            (Some(form), Some(lemma), None) if !form.is_empty() && !lemma.is_empty() => {
                table.insert(form.to_lowercase(), lemma.to_lowercase());
            }
            _ => {
                return Err(LexiconError {
                    line: n + 1,
                    content: line.to_string(),
                })
            }
        }
    }
    Ok(table)
}

pub fn is_auxiliary(word: &str) -> bool {
    AUXILIARIES.contains(&word)
}

pub fn is_determiner(word: &str) -> bool {
    DETERMINERS.contains(&word)
}

pub fn is_adposition(word: &str) -> bool {
    ADPOSITIONS.contains(&word)
}
