//! Deterministic, rule-based extraction of sentences, actions and
//! conditional clauses from process descriptions.
//!
//! The tagger only needs to tell verbs apart from everything else, so it is
//! lexicon driven: closed-class words first, then the shipped business-verb
//! table, then suffix heuristics backed by that table.

mod extract;
pub mod lexicon;
mod tagger;

pub use extract::{
    actions_in, analyze, capitalize, conditional_keyword, extract_actions, extract_conditions,
    ActionPhrase, Analysis, ConditionClause, NlpError,
};
pub use lexicon::{Lexicon, LexiconError};
pub use tagger::{
    lemmatize, lemmatize_with, pos_tag, pos_tag_with, sentence_texts, split_sentences, tokenize,
    PosTag, Sentence, Token,
};
