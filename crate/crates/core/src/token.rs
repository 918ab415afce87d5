//! Word-level carrier types shared by every stage.

use serde::{Deserialize, Serialize};

/// Collapsed part-of-speech set. The matchers only distinguish these classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pos {
    Adj,
    Verb,
    Noun,
    Pron,
    Other,
    Unset,
}

impl Pos {
    /// Tags a tagger may emit, in model index order.
    pub const TAGGED: [Pos; 5] = [Pos::Adj, Pos::Verb, Pos::Noun, Pos::Pron, Pos::Other];

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Adj => "ADJ",
            Pos::Verb => "VERB",
            Pos::Noun => "NOUN",
            Pos::Pron => "PRON",
            Pos::Other => "OTHER",
            Pos::Unset => "UNSET",
        }
    }

    pub fn parse(s: &str) -> Option<Pos> {
        Some(match s {
            "ADJ" => Pos::Adj,
            "VERB" => Pos::Verb,
            "NOUN" => Pos::Noun,
            "PRON" => Pos::Pron,
            "OTHER" => Pos::Other,
            "UNSET" => Pos::Unset,
            _ => return None,
        })
    }

    /// Index into per-tag weight vectors; `None` for [`Pos::Unset`].
    pub fn index(self) -> Option<usize> {
        Pos::TAGGED.iter().position(|&p| p == self)
    }
}

/// Adverbs recognised inside match and negation spans. Anything else tagged
/// OTHER that ends in `-ly` is treated the same way.
const ADVERBS: &[&str] = &[
    "very", "really", "so", "too", "quite", "pretty", "rather", "always", "also", "just", "still",
    "even", "most", "more", "less", "super", "fairly", "somewhat", "absolutely", "totally",
    "truly", "incredibly", "especially", "definitely", "certainly", "simply", "particularly",
    "extremely", "highly", "much", "overall", "all",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub lower: String,
    pub sent_index: usize,
    pub tok_index: usize,
    pub pos: Pos,
    pub lemma: String,
    pub is_copular: bool,
    pub is_passive_aux: bool,
    pub negated: bool,
    /// Suffix-mapped graph label (`great2a`, `love2v`, `room2n`).
    pub label: Option<String>,
}

impl Token {
    pub fn new(surface: &str, sent_index: usize, tok_index: usize) -> Self {
        Token {
            surface: surface.to_string(),
            lower: surface.to_lowercase(),
            sent_index,
            tok_index,
            pos: Pos::Unset,
            lemma: String::new(),
            is_copular: false,
            is_passive_aux: false,
            negated: false,
            label: None,
        }
    }

    /// Convenience constructor for already-tagged tokens (tests, CoNLL-U).
    pub fn tagged(surface: &str, lemma: &str, pos: Pos) -> Self {
        let mut tok = Token::new(surface, 0, 0);
        tok.lemma = lemma.to_string();
        tok.pos = pos;
        tok
    }

    /// Letters, with optional internal hyphens or apostrophes.
    pub fn is_word(&self) -> bool {
        is_word(&self.surface)
    }

    pub fn is_punct(&self) -> bool {
        !self.surface.is_empty() && self.surface.chars().all(|c| !c.is_alphanumeric())
    }

    pub fn is_numeral(&self) -> bool {
        self.surface.chars().any(|c| c.is_ascii_digit())
    }

    pub fn is_capitalized(&self) -> bool {
        self.surface.chars().next().is_some_and(char::is_uppercase)
    }

    /// Plural nouns keep an `s` on the surface that the lemma lost.
    pub fn is_plural(&self) -> bool {
        let surface = self.surface.to_lowercase();
        self.pos == Pos::Noun && surface.ends_with('s') && surface != self.lemma && !self.lemma.is_empty()
    }

    pub fn is_adverb(&self) -> bool {
        if self.pos != Pos::Other || !self.is_word() {
            return false;
        }
        ADVERBS.contains(&self.lower.as_str()) || (self.lower.len() >= 4 && self.lower.ends_with("ly"))
    }
}

pub(crate) fn is_word(s: &str) -> bool {
    let chars: Vec<char> = s.chars().collect();
    if chars.is_empty() || !chars[0].is_alphabetic() || !chars[chars.len() - 1].is_alphabetic() {
        return false;
    }
    chars
        .iter()
        .all(|&c| c.is_alphabetic() || c == '-' || c == '\'' || c == '’')
}

/// An ordered list of sentences; the unit that carries a corpus-level id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub sentences: Vec<Vec<Token>>,
    /// Set when tokens arrived with their own POS and lemma (CoNLL-U input).
    pub pretagged: bool,
}

impl Document {
    pub fn new(id: impl Into<String>, sentences: Vec<Vec<Token>>) -> Self {
        let mut doc = Document {
            id: id.into(),
            sentences,
            pretagged: false,
        };
        doc.reindex();
        doc
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flatten()
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }

    /// Re-densify `(sent_index, tok_index)` after tokens were merged or dropped.
    pub fn reindex(&mut self) {
        for (s, sent) in self.sentences.iter_mut().enumerate() {
            for (t, tok) in sent.iter_mut().enumerate() {
                tok.sent_index = s;
                tok.tok_index = t;
            }
        }
    }
}
