//! Compound nouns, pronoun substitution and negation fusing.
//!
//! The three passes run in order: compounds first so that coreference can
//! copy a compound antecedent, then negation on the final token stream.

use std::collections::BTreeSet;

use crate::token::{Document, Pos, Token};

pub const DEFAULT_NEGATIONS: &[&str] = &[
    "hardly", "scarcely", "barely", "no", "not", "none", "neither", "nor", "never",
];

pub const DEFAULT_NATIONALITIES: &[&str] = &[
    "thai", "chinese", "japanese", "korean", "vietnamese", "indian", "italian", "french",
    "spanish", "mexican", "american", "british", "english", "german", "greek", "turkish",
    "lebanese", "russian", "indonesian", "malaysian", "filipino", "cambodian", "burmese", "lao",
    "laotian", "asian", "european", "western", "african", "moroccan", "brazilian", "peruvian",
    "australian", "swedish", "dutch", "irish", "scottish", "portuguese", "thailand",
];

const SINGULAR_PRONOUNS: &[&str] = &["it", "this", "that"];
const PLURAL_PRONOUNS: &[&str] = &["they", "them", "these", "those"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompoundRules {
    pub negation_words: BTreeSet<String>,
    pub nationalities: BTreeSet<String>,
    pub noun_noun_enabled: bool,
    pub entity_heuristic_enabled: bool,
}

impl Default for CompoundRules {
    fn default() -> Self {
        CompoundRules {
            negation_words: DEFAULT_NEGATIONS.iter().map(|s| s.to_string()).collect(),
            nationalities: DEFAULT_NATIONALITIES.iter().map(|s| s.to_string()).collect(),
            noun_noun_enabled: true,
            entity_heuristic_enabled: true,
        }
    }
}

fn is_quote(tok: &Token) -> bool {
    !tok.surface.is_empty() && tok.surface.chars().all(|c| matches!(c, '"' | '“' | '”'))
}

fn fuse(parts: &[Token], lower: String, lemma: String) -> Token {
    let mut tok = parts[0].clone();
    tok.surface = parts.iter().map(|t| t.surface.as_str()).collect();
    tok.lower = lower;
    tok.lemma = lemma;
    tok.pos = Pos::Noun;
    tok.is_copular = false;
    tok.is_passive_aux = false;
    tok.negated = false;
    tok.label = None;
    tok
}

fn fuse_by_lower(parts: &[Token]) -> Token {
    let lower: String = parts.iter().map(|t| t.lower.as_str()).collect();
    fuse(parts, lower.clone(), lower)
}

/// Noun-run compounds keep a lowercase surface so a later entity pass does
/// not mistake them for capitalized words.
fn fuse_by_lemma(parts: &[Token]) -> Token {
    let lemma: String = parts.iter().map(|t| t.lemma.as_str()).collect();
    let mut tok = fuse(parts, lemma.clone(), lemma);
    tok.surface = parts.iter().map(|t| t.lower.as_str()).collect();
    tok
}

/// Hyphenated words, short quoted spans, capitalized entity runs and
/// noun-noun sequences each collapse into one NOUN token.
pub fn form_compound_nouns(doc: &Document, rules: &CompoundRules) -> Document {
    let mut out = doc.clone();
    for sent in &mut out.sentences {
        join_hyphenated(sent);
        *sent = join_quoted(std::mem::take(sent));
        if rules.entity_heuristic_enabled {
            *sent = join_entities(std::mem::take(sent));
        }
        if rules.noun_noun_enabled {
            *sent = join_noun_runs(std::mem::take(sent), rules);
        }
    }
    out.reindex();
    out
}

fn join_hyphenated(sent: &mut [Token]) {
    for tok in sent.iter_mut() {
        if tok.is_word() && tok.surface.contains('-') {
            tok.surface = tok.surface.replace('-', "");
            tok.lower = tok.lower.replace('-', "");
            tok.lemma = tok.lower.clone();
            tok.pos = Pos::Noun;
            tok.is_copular = false;
            tok.is_passive_aux = false;
        }
    }
}

fn join_quoted(sent: Vec<Token>) -> Vec<Token> {
    let mut out = Vec::with_capacity(sent.len());
    let mut i = 0;
    while i < sent.len() {
        if is_quote(&sent[i]) {
            let close = (i + 1..sent.len().min(i + 5)).find(|&j| is_quote(&sent[j]));
            if let Some(j) = close {
                let inner = &sent[i + 1..j];
                if !inner.is_empty() && inner.iter().all(Token::is_word) {
                    out.push(fuse_by_lower(inner));
                    i = j + 1;
                    continue;
                }
            }
        }
        out.push(sent[i].clone());
        i += 1;
    }
    out
}

fn join_entities(sent: Vec<Token>) -> Vec<Token> {
    let Some(first_word) = sent.iter().position(Token::is_word) else {
        return sent;
    };
    let is_entity_word = |idx: usize, t: &Token| {
        idx > first_word && t.is_word() && t.is_capitalized() && t.lower != "i" && t.pos != Pos::Pron
    };
    let mut out = Vec::with_capacity(sent.len());
    let mut i = 0;
    while i < sent.len() {
        let mut j = i;
        while j < sent.len() && is_entity_word(j, &sent[j]) {
            j += 1;
        }
        if j - i >= 2 {
            out.push(fuse_by_lower(&sent[i..j]));
            i = j;
        } else {
            out.push(sent[i].clone());
            i += 1;
        }
    }
    out
}

fn join_noun_runs(sent: Vec<Token>, rules: &CompoundRules) -> Vec<Token> {
    let mut out = Vec::with_capacity(sent.len());
    let mut i = 0;
    while i < sent.len() {
        let starts_with_demonym = sent[i].pos == Pos::Adj && rules.nationalities.contains(&sent[i].lower);
        if sent[i].pos == Pos::Noun || starts_with_demonym {
            let mut j = i + 1;
            while j < sent.len() && sent[j].pos == Pos::Noun {
                j += 1;
            }
            if j - i >= 2 {
                out.push(fuse_by_lemma(&sent[i..j]));
                i = j;
                continue;
            }
        }
        out.push(sent[i].clone());
        i += 1;
    }
    out
}

/// Third-person pronouns take the most recent noun from the same or the
/// previous sentence, preferring one of matching grammatical number.
pub fn resolve_coreference(doc: &Document) -> Document {
    let mut out = doc.clone();
    for s in 0..out.sentences.len() {
        for t in 0..out.sentences[s].len() {
            let tok = &out.sentences[s][t];
            if tok.pos != Pos::Pron {
                continue;
            }
            let plural = if PLURAL_PRONOUNS.contains(&tok.lower.as_str()) {
                true
            } else if SINGULAR_PRONOUNS.contains(&tok.lower.as_str()) {
                false
            } else {
                continue;
            };
            let recent = out.sentences[s][..t].iter().rev();
            let previous = s
                .checked_sub(1)
                .map(|p| out.sentences[p].iter().rev())
                .into_iter()
                .flatten();
            let nouns: Vec<&Token> = recent.chain(previous).filter(|c| c.pos == Pos::Noun).collect();
            let antecedent = nouns
                .iter()
                .find(|n| n.is_plural() == plural)
                .or_else(|| nouns.first())
                .map(|n| (*n).clone());
            if let Some(mut replacement) = antecedent {
                let pronoun = &out.sentences[s][t];
                replacement.sent_index = pronoun.sent_index;
                replacement.tok_index = pronoun.tok_index;
                replacement.label = None;
                out.sentences[s][t] = replacement;
            }
        }
    }
    out
}

/// `not expensive` → `notexpensive`. One adverb between the negation and
/// its adjective or verb is dropped (`not very good` → `notgood`).
pub fn compound_negation(doc: &Document, rules: &CompoundRules) -> Document {
    let mut out = doc.clone();
    for sent in &mut out.sentences {
        let old = std::mem::take(sent);
        let mut i = 0;
        while i < old.len() {
            let tok = &old[i];
            if rules.negation_words.contains(&tok.lower) && tok.pos != Pos::Noun {
                let target_at = |k: usize| {
                    old.get(k)
                        .filter(|t| matches!(t.pos, Pos::Adj | Pos::Verb) && !t.negated)
                        .is_some()
                };
                let target = if target_at(i + 1) {
                    Some(i + 1)
                } else if old.get(i + 1).is_some_and(Token::is_adverb) && target_at(i + 2) {
                    Some(i + 2)
                } else {
                    None
                };
                if let Some(k) = target {
                    let t = &old[k];
                    let mut fused = t.clone();
                    fused.surface = format!("{}{}", tok.surface, t.surface);
                    fused.lower = format!("{}{}", tok.lower, t.lower);
                    fused.lemma = format!("{}{}", tok.lower, t.lemma);
                    fused.negated = true;
                    fused.is_copular = false;
                    fused.is_passive_aux = false;
                    fused.label = None;
                    sent.push(fused);
                    i = k + 1;
                    continue;
                }
            }
            sent.push(tok.clone());
            i += 1;
        }
    }
    out.reindex();
    out
}
