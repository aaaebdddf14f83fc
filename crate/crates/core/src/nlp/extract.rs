//! Action and conditional-clause extraction over tagged sentences.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::tagger::{split_sentences, PosTag, Sentence, Token};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NlpError {
    #[error("no actions extracted: the text contains no verb")]
    EmptyActions,
    #[error("sentence {sentence_index}: conditional has an empty guard")]
    MalformedCondition { sentence_index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActionPhrase {
    /// Capitalized verb lemma, e.g. `Ship`.
    pub label: String,
    pub sentence_index: usize,
    pub token_index: usize,
}

impl ActionPhrase {
    fn from_token(sentence_index: usize, token: &Token) -> Self {
        Self {
            label: capitalize(&token.lemma),
            sentence_index,
            token_index: token.index,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionClause {
    pub sentence_index: usize,
    /// Token index of the `if` keyword.
    pub keyword_index: usize,
    pub guard: String,
    /// Verbs occurring inside the guard itself ("if the clerk approves ...").
    pub guard_actions: Vec<ActionPhrase>,
    pub consequent_actions: Vec<ActionPhrase>,
}

impl ConditionClause {
    /// Guard verbs followed by consequent verbs, in text order.
    pub fn branch_actions(&self) -> impl Iterator<Item = &ActionPhrase> {
        self.guard_actions.iter().chain(&self.consequent_actions)
    }
}

pub fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Sentences of a document plus the actions and conditions found in them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub sentences: Vec<Sentence>,
    pub actions: Vec<ActionPhrase>,
    pub conditions: Vec<ConditionClause>,
}

/// Runs the whole pipeline. Fails when no verb is found or a conditional
/// has an empty guard.
pub fn analyze(text: &str) -> Result<Analysis, NlpError> {
    let sentences = split_sentences(text);
    let actions = actions_in(&sentences);
    if actions.is_empty() {
        return Err(NlpError::EmptyActions);
    }
    let conditions = extract_conditions(&sentences)?;
    Ok(Analysis {
        sentences,
        actions,
        conditions,
    })
}

/// One action per VERB token, in document order. Duplicates are kept.
pub fn extract_actions(text: &str) -> Result<Vec<ActionPhrase>, NlpError> {
    let actions = actions_in(&split_sentences(text));
    if actions.is_empty() {
        Err(NlpError::EmptyActions)
    } else {
        Ok(actions)
    }
}

pub fn actions_in(sentences: &[Sentence]) -> Vec<ActionPhrase> {
    sentences
        .iter()
        .flat_map(|s| verbs(s.index, &s.tokens))
        .collect()
}

fn verbs(sentence_index: usize, tokens: &[Token]) -> Vec<ActionPhrase> {
    tokens
        .iter()
        .filter(|t| t.pos == PosTag::Verb)
        .map(|t| ActionPhrase::from_token(sentence_index, t))
        .collect()
}

/// Index of the first standalone `if` token.
pub fn conditional_keyword(sentence: &Sentence) -> Option<usize> {
    sentence
        .tokens
        .iter()
        .position(|t| t.text.eq_ignore_ascii_case("if"))
}

pub fn extract_conditions(sentences: &[Sentence]) -> Result<Vec<ConditionClause>, NlpError> {
    let mut out = Vec::new();
    for sentence in sentences {
        if let Some(keyword) = conditional_keyword(sentence) {
            out.push(condition_for(sentence, keyword)?);
        }
    }
    Ok(out)
}

fn condition_for(sentence: &Sentence, keyword: usize) -> Result<ConditionClause, NlpError> {
    let tokens = &sentence.tokens;
    let after = keyword + 1;
    let malformed = NlpError::MalformedCondition {
        sentence_index: sentence.index,
    };

    let guard_end = match tokens[after..].iter().position(|t| t.text == ",") {
        Some(offset) => after + offset,
        None => guard_end_without_comma(tokens, after),
    };
    let guard_tokens: Vec<&Token> = tokens[after..guard_end]
        .iter()
        .filter(|t| t.pos != PosTag::Punct)
        .collect();
    let (first, last) = match (guard_tokens.first(), guard_tokens.last()) {
        (Some(f), Some(l)) => (*f, *l),
        _ => return Err(malformed),
    };
    let guard = sentence.text[first.span.start..last.span.end].to_string();

    Ok(ConditionClause {
        sentence_index: sentence.index,
        keyword_index: keyword,
        guard,
        guard_actions: verbs(sentence.index, &tokens[after..guard_end]),
        consequent_actions: verbs(sentence.index, &tokens[guard_end..]),
    })
}

/// Without a comma the guard runs through its own verb group: auxiliaries,
/// at most one participle after them, and trailing modifiers ("is not
/// available"). The main clause starts at the next token.
fn guard_end_without_comma(tokens: &[Token], after: usize) -> usize {
    let Some(offset) = tokens[after..]
        .iter()
        .position(|t| matches!(t.pos, PosTag::Aux | PosTag::Verb))
    else {
        return tokens.len();
    };
    let head = after + offset;
    let mut seen_verb = tokens[head].pos == PosTag::Verb;
    let mut end = head + 1;
    while let Some(t) = tokens.get(end) {
        match t.pos {
            PosTag::Aux if !seen_verb => {}
            PosTag::Verb if !seen_verb => seen_verb = true,
            PosTag::Other => {}
            _ => break,
        }
        end += 1;
    }
    end
}
