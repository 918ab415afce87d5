//! Sentence segmentation, tokenization and frequency-weighted spelling
//! correction.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::token::{Pos, Token};

/// Word → corpus frequency. Keys are lowercase letters with optional hyphens.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: HashMap<String, u64>,
}

const ALPHABET: &str = "abcdefghijklmnopqrstuvwxyz-";

impl Lexicon {
    pub fn from_entries<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let mut lex = Lexicon::default();
        for (word, count) in entries {
            let word = word.into();
            validate_entry(&word, count).map_err(|message| Error::Data {
                name: "lexicon".into(),
                message,
            })?;
            *lex.entries.entry(word).or_insert(0) += count;
        }
        Ok(lex)
    }

    /// Parses `word<TAB>count` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lex = Lexicon::default();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad = |message: String| Error::Data {
                name: "lexicon".into(),
                message: format!("line {}: {message}", n + 1),
            };
            let (word, count) = line
                .split_once('\t')
                .ok_or_else(|| bad("expected word<TAB>count".into()))?;
            let count: u64 = count
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad count {count:?}")))?;
            validate_entry(word, count).map_err(bad)?;
            *lex.entries.entry(word.to_string()).or_insert(0) += count;
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    pub fn frequency(&self, word: &str) -> Option<u64> {
        self.entries.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = (&str, u64)> {
        self.entries.iter().map(|(w, &c)| (w.as_str(), c))
    }

    /// Best replacement for an out-of-lexicon word: the most frequent entry at
    /// Damerau-Levenshtein distance 1, else distance 2, ties by lexicographic
    /// order. `None` when the word is known or nothing is close enough.
    pub fn suggest(&self, word: &str) -> Option<String> {
        if word.is_empty() || self.contains(word) {
            return None;
        }
        let first = edits1(word);
        let mut best: Option<(&str, u64)> = None;
        for cand in &first {
            self.consider(cand, &mut best);
        }
        if best.is_none() {
            for e1 in &first {
                for cand in edits1(e1) {
                    self.consider(&cand, &mut best);
                }
            }
        }
        best.map(|(w, _)| w.to_string())
    }

    fn consider<'a>(&'a self, cand: &str, best: &mut Option<(&'a str, u64)>) {
        if let Some((word, &freq)) = self.entries.get_key_value(cand) {
            let better = match *best {
                None => true,
                Some((bw, bf)) => freq > bf || (freq == bf && word.as_str() < bw),
            };
            if better {
                *best = Some((word.as_str(), freq));
            }
        }
    }
}

fn validate_entry(word: &str, count: u64) -> std::result::Result<(), String> {
    if word.is_empty() || !word.chars().all(|c| c.is_lowercase() || c == '-') {
        return Err(format!("invalid lexicon word {word:?}"));
    }
    if !word.chars().any(char::is_alphabetic) {
        return Err(format!("invalid lexicon word {word:?}"));
    }
    if count == 0 {
        return Err(format!("frequency of {word:?} must be at least 1"));
    }
    Ok(())
}

/// All strings one deletion, adjacent transposition, substitution or insertion
/// away from `word`.
fn edits1(word: &str) -> Vec<String> {
    let chars: Vec<char> = word.chars().collect();
    let n = chars.len();
    let mut out = Vec::with_capacity(56 * (n + 1));
    let build = |parts: &[&[char]]| parts.iter().flat_map(|p| p.iter()).collect::<String>();
    for i in 0..n {
        out.push(build(&[&chars[..i], &chars[i + 1..]]));
    }
    for i in 0..n.saturating_sub(1) {
        let mut swapped = chars.clone();
        swapped.swap(i, i + 1);
        out.push(swapped.into_iter().collect());
    }
    for i in 0..n {
        for c in ALPHABET.chars() {
            if c != chars[i] {
                out.push(build(&[&chars[..i], &[c], &chars[i + 1..]]));
            }
        }
    }
    for i in 0..=n {
        for c in ALPHABET.chars() {
            out.push(build(&[&chars[..i], &[c], &chars[i..]]));
        }
    }
    out
}

/// Unrestricted Damerau-Levenshtein distance.
pub fn damerau_levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let (n, m) = (a.len(), b.len());
    let inf = n + m;
    let mut d = vec![vec![0usize; m + 2]; n + 2];
    d[0][0] = inf;
    for i in 0..=n {
        d[i + 1][0] = inf;
        d[i + 1][1] = i;
    }
    for j in 0..=m {
        d[0][j + 1] = inf;
        d[1][j + 1] = j;
    }
    let mut last_row: HashMap<char, usize> = HashMap::new();
    for i in 1..=n {
        let mut last_col = 0;
        for j in 1..=m {
            let i1 = *last_row.get(&b[j - 1]).unwrap_or(&0);
            let j1 = last_col;
            let cost = if a[i - 1] == b[j - 1] {
                last_col = j;
                0
            } else {
                1
            };
            d[i + 1][j + 1] = (d[i][j] + cost)
                .min(d[i + 1][j] + 1)
                .min(d[i][j + 1] + 1)
                .min(d[i1][j1] + (i - i1 - 1) + 1 + (j - j1 - 1));
        }
        last_row.insert(a[i - 1], i);
    }
    d[n + 1][m + 1]
}

/// Spell-corrects one untagged token. Known words, punctuation, numerals and
/// contractions pass through unchanged.
pub fn correct_spelling(tok: &Token, lex: &Lexicon) -> Token {
    match correction_for(tok, lex) {
        Some(word) => apply_correction(tok, &word),
        None => tok.clone(),
    }
}

pub(crate) fn correction_for(tok: &Token, lex: &Lexicon) -> Option<String> {
    if tok.pos != Pos::Unset || !is_correctable(&tok.lower) {
        return None;
    }
    lex.suggest(&tok.lower)
}

pub(crate) fn apply_correction(tok: &Token, word: &str) -> Token {
    let mut out = tok.clone();
    out.surface = if tok.is_capitalized() {
        let mut chars = word.chars();
        chars
            .next()
            .map(|c| c.to_uppercase().chain(chars).collect())
            .unwrap_or_default()
    } else {
        word.to_string()
    };
    out.lower = word.to_string();
    out
}

fn is_correctable(word: &str) -> bool {
    word.chars().all(|c| c.is_alphabetic() || c == '-') && word.chars().any(char::is_alphabetic)
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?' | '…')
}

/// Splits text into sentences at runs of `.`, `!`, `?` or `…` followed by
/// whitespace or end of text. Terminators inside double quotes do not split.
pub fn segment_sentences(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut in_quote = false;
    let mut i = 0;
    let push = |from: usize, to: usize, out: &mut Vec<String>| {
        let s: String = chars[from..to].iter().collect();
        let s = s.trim();
        if !s.is_empty() {
            out.push(s.to_string());
        }
    };
    while i < chars.len() {
        let c = chars[i];
        match c {
            '"' => in_quote = !in_quote,
            '“' => in_quote = true,
            '”' => in_quote = false,
            '\n' => in_quote = false,
            _ => {}
        }
        if is_terminator(c) && !in_quote {
            let mut end = i;
            while end < chars.len() && is_terminator(chars[end]) {
                end += 1;
            }
            if end == chars.len() || chars[end].is_whitespace() {
                push(start, end, &mut sentences);
                start = end;
            }
            i = end;
            continue;
        }
        i += 1;
    }
    push(start, chars.len(), &mut sentences);
    sentences
}

fn is_joiner(c: char) -> bool {
    matches!(c, '-' | '\'' | '’')
}

/// Whitespace tokenization with punctuation split off. Internal hyphens and
/// apostrophes stay attached; runs of one punctuation mark (`!!!`, `...`)
/// form a single token. Punctuation and numerals are tagged OTHER.
pub fn tokenize(sentence: &str) -> Vec<Token> {
    let mut pieces: Vec<String> = Vec::new();
    for chunk in sentence.split_whitespace() {
        split_chunk(chunk, &mut pieces);
    }
    pieces
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut tok = Token::new(p, 0, i);
            if tok.is_punct() || tok.is_numeral() {
                tok.pos = Pos::Other;
                tok.lemma = tok.lower.clone();
            }
            tok
        })
        .collect()
}

fn split_chunk(chunk: &str, out: &mut Vec<String>) {
    let chars: Vec<char> = chunk.chars().collect();
    let first = chars.iter().position(|c| c.is_alphanumeric());
    let Some(first) = first else {
        push_punct_runs(&chars, out);
        return;
    };
    let last = chars.iter().rposition(|c| c.is_alphanumeric()).unwrap_or(first);
    push_punct_runs(&chars[..first], out);

    let core = &chars[first..=last];
    let mut word = String::new();
    for (i, &c) in core.iter().enumerate() {
        let between_digits = i > 0
            && i + 1 < core.len()
            && core[i - 1].is_ascii_digit()
            && core[i + 1].is_ascii_digit();
        if c.is_alphanumeric() || is_joiner(c) || between_digits {
            word.push(c);
        } else {
            if !word.is_empty() {
                out.push(std::mem::take(&mut word));
            }
            out.push(c.to_string());
        }
    }
    if !word.is_empty() {
        out.push(word);
    }
    push_punct_runs(&chars[last + 1..], out);
}

fn push_punct_runs(chars: &[char], out: &mut Vec<String>) {
    let mut i = 0;
    while i < chars.len() {
        let mut j = i + 1;
        while j < chars.len() && chars[j] == chars[i] {
            j += 1;
        }
        out.push(chars[i..j].iter().collect());
        i = j;
    }
}
