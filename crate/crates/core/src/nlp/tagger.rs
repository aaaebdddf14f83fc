//! Tokenizer, sentence splitter, lexicon tagger and lemmatizer.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::lexicon::{self, Lexicon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Verb,
    Aux,
    Noun,
    Det,
    Adp,
    Punct,
    Other,
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PosTag::Verb => "VERB",
            PosTag::Aux => "AUX",
            PosTag::Noun => "NOUN",
            PosTag::Det => "DET",
            PosTag::Adp => "ADP",
            PosTag::Punct => "PUNCT",
            PosTag::Other => "OTHER",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub text: String,
    /// Lowercase base form. Untagged tokens carry the lowercased text.
    pub lemma: String,
    pub pos: PosTag,
    /// Position within the sentence (or within the tokenized input).
    pub index: usize,
    /// Byte range of `text` within the tokenized string.
    pub span: Range<usize>,
}

impl Token {
    pub fn lower(&self) -> String {
        self.text.to_lowercase()
    }

    pub fn is_word(&self) -> bool {
        self.pos != PosTag::Punct && self.text.chars().any(is_word_char)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    /// Whitespace-normalized sentence text.
    pub text: String,
    pub tokens: Vec<Token>,
    pub index: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '\'' || c == '\u{2019}'
}

/// Splits `text` into word tokens (runs of letters, digits and apostrophes)
/// and single-character punctuation tokens. Whitespace is dropped.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut word_start: Option<usize> = None;

    let push = |tokens: &mut Vec<Token>, range: Range<usize>| {
        let text = &text[range.clone()];
        tokens.push(Token {
            text: text.to_string(),
            lemma: text.to_lowercase(),
            pos: PosTag::Other,
            index: tokens.len(),
            span: range,
        });
    };

    for (i, c) in text.char_indices() {
        if is_word_char(c) {
            word_start.get_or_insert(i);
            continue;
        }
        if let Some(start) = word_start.take() {
            push(&mut tokens, start..i);
        }
        if !c.is_whitespace() {
            push(&mut tokens, i..i + c.len_utf8());
        }
    }
    if let Some(start) = word_start {
        push(&mut tokens, start..text.len());
    }
    tokens
}

fn normalize_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn is_boundary(rest: &str) -> bool {
    let trimmed = rest.trim_start();
    if trimmed.is_empty() {
        return true;
    }
    trimmed.len() < rest.len() && trimmed.chars().next().is_some_and(char::is_uppercase)
}

/// Sentence texts only, before tagging.
pub fn sentence_texts(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if matches!(c, '.' | '!' | '?') {
            let end = i + c.len_utf8();
            if is_boundary(&text[end..]) {
                let s = normalize_whitespace(&text[start..end]);
                if !s.is_empty() {
                    out.push(s);
                }
                start = end;
            }
        }
    }
    let tail = normalize_whitespace(&text[start..]);
    if !tail.is_empty() {
        out.push(tail);
    }
    out
}

/// Splits text into tagged sentences. A boundary is a `.`, `!` or `?`
/// followed by whitespace and an uppercase letter, or by the end of text.
pub fn split_sentences(text: &str) -> Vec<Sentence> {
    let lex = Lexicon::builtin();
    sentence_texts(text)
        .into_iter()
        .enumerate()
        .map(|(index, text)| {
            let tokens = pos_tag_with(lex, tokenize(&text));
            Sentence {
                text,
                tokens,
                index,
            }
        })
        .collect()
}

/// Assigns part-of-speech tags and lemmas using the shipped lexicon.
pub fn pos_tag(tokens: Vec<Token>) -> Vec<Token> {
    pos_tag_with(Lexicon::builtin(), tokens)
}

pub fn pos_tag_with(lex: &Lexicon, mut tokens: Vec<Token>) -> Vec<Token> {
    let mut prev: Option<PosTag> = None;
    let mut prev_participle = false;
    for token in tokens.iter_mut() {
        let lower = token.lower();
        let after_det = prev == Some(PosTag::Det);
        // "checks inventory", "sends invoices": a bare or -s form right
        // after a finite verb is its object. "If approved ship ..." keeps
        // both verbs.
        let object_of_verb = prev == Some(PosTag::Verb)
            && !prev_participle
            && !(lower.ends_with("ed") || lower.ends_with("ing"));
        token.pos = if lexicon::is_auxiliary(&lower) {
            PosTag::Aux
        } else if lexicon::is_determiner(&lower) {
            PosTag::Det
        } else if lexicon::is_adposition(&lower) {
            PosTag::Adp
        } else if !token.text.chars().any(is_word_char) {
            PosTag::Punct
        } else if !after_det
            && !object_of_verb
            && (lex.is_verb_form(&lower) || has_verb_stem(lex, &lower))
        {
            // A determiner directly before a verb homograph ("the order",
            // "a purchase") makes it nominal.
            PosTag::Verb
        } else if after_det || object_of_verb || prev == Some(PosTag::Noun) {
            PosTag::Noun
        } else {
            PosTag::Other
        };
        token.lemma = lemmatize_with(lex, token);
        prev = Some(token.pos);
        prev_participle = lower.ends_with("ed") || lower.ends_with("ing");
    }
    tokens
}

fn has_verb_stem(lex: &Lexicon, lower: &str) -> bool {
    (lower.ends_with('s') || lower.ends_with("ed") || lower.ends_with("ing"))
        && stem_candidates(lower).iter().any(|c| lex.is_verb_base(c))
}

/// Candidate stems for an inflected form, most specific first.
fn stem_candidates(word: &str) -> Vec<String> {
    let mut out = Vec::new();
    let with_restorations = |base: &str, out: &mut Vec<String>| {
        if base.is_empty() {
            return;
        }
        out.push(base.to_string());
        let bytes = base.as_bytes();
        if bytes.len() >= 2 {
            let (a, b) = (bytes[bytes.len() - 2], bytes[bytes.len() - 1]);
            if a == b && !b"aeiou".contains(&b) && b.is_ascii_alphabetic() {
                out.push(base[..base.len() - 1].to_string());
            }
        }
        out.push(format!("{base}e"));
    };

    if let Some(base) = word.strip_suffix("ies") {
        out.push(format!("{base}y"));
    }
    if let Some(base) = word.strip_suffix("ied") {
        out.push(format!("{base}y"));
    }
    if let Some(base) = word.strip_suffix("ing") {
        with_restorations(base, &mut out);
    }
    if let Some(base) = word.strip_suffix("ed") {
        with_restorations(base, &mut out);
    }
    if let Some(base) = word.strip_suffix("es") {
        if !base.is_empty() {
            out.push(base.to_string());
        }
    }
    if let Some(base) = word.strip_suffix('s') {
        if !base.is_empty() && !base.ends_with('s') {
            out.push(base.to_string());
        }
    }
    out
}

/// Lemma of a tagged token, using the shipped lexicon.
pub fn lemmatize(token: &Token) -> String {
    lemmatize_with(Lexicon::builtin(), token)
}

pub fn lemmatize_with(lex: &Lexicon, token: &Token) -> String {
    let lower = token.lower();
    if !matches!(token.pos, PosTag::Verb | PosTag::Aux) {
        return lower;
    }
    if let Some(lemma) = lex.irregular_lemma(&lower) {
        return lemma.to_string();
    }
    if let Some(lemma) = lex.verb_lemma(&lower) {
        return lemma.to_string();
    }
    let candidates = stem_candidates(&lower);
    if let Some(hit) = candidates.iter().find(|c| lex.is_verb_base(c)) {
        return hit.clone();
    }
    // Unknown verb: plain suffix stripping, no restoration.
    candidates
        .into_iter()
        .next()
        .filter(|c| !c.is_empty())
        .unwrap_or(lower)
}
