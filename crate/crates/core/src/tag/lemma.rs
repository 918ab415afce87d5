//! Rule-based lemmatizer: irregular-form table first, then suffix stripping
//! validated against a list of known base forms.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::token::{Pos, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormKind {
    Present,
    Progressive,
    Past,
    Participle,
    Plural,
    Comparative,
    Superlative,
}

impl FormKind {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "present" => FormKind::Present,
            "progressive" => FormKind::Progressive,
            "past" => FormKind::Past,
            "participle" => FormKind::Participle,
            "plural" => FormKind::Plural,
            "comparative" => FormKind::Comparative,
            "superlative" => FormKind::Superlative,
            _ => return None,
        })
    }

    fn pos(self) -> Pos {
        match self {
            FormKind::Plural => Pos::Noun,
            FormKind::Comparative | FormKind::Superlative => Pos::Adj,
            _ => Pos::Verb,
        }
    }
}

/// `-er` / `-est` adjectives that are already base forms.
const ADJ_BASES_ENDING_ER: &[&str] = &[
    "other", "former", "latter", "upper", "inner", "outer", "proper", "clever", "bitter",
    "tender", "sober", "eager", "super", "mere", "severe", "sincere", "sheer", "slender",
    "sinister", "premier", "utter", "over", "under", "honest", "modest", "earnest", "west",
    "best", "less",
];

#[derive(Debug, Clone, Default)]
pub struct Lemmatizer {
    irregular: HashMap<String, Vec<(String, FormKind)>>,
    bases: HashMap<String, Vec<Pos>>,
}

impl Lemmatizer {
    /// `irregular`: `form<TAB>lemma<TAB>kind` lines. `bases`: `word<TAB>POS,POS`.
    pub fn parse(irregular: &str, bases: &str) -> Result<Self> {
        let mut lem = Lemmatizer::default();
        for (n, line) in irregular.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let kind = cols.get(2).and_then(|k| FormKind::parse(k));
            match (cols.len(), kind) {
                (3, Some(kind)) => lem
                    .irregular
                    .entry(cols[0].to_string())
                    .or_default()
                    .push((cols[1].to_string(), kind)),
                _ => {
                    return Err(Error::Data {
                        name: "irregular".into(),
                        message: format!("line {}: expected form<TAB>lemma<TAB>kind", n + 1),
                    })
                }
            }
        }
        for (n, line) in bases.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (word, tags) = line.split_once('\t').ok_or_else(|| Error::Data {
                name: "bases".into(),
                message: format!("line {}: expected word<TAB>tags", n + 1),
            })?;
            let tags = tags.split(',').filter_map(Pos::parse).collect();
            lem.bases.insert(word.to_string(), tags);
        }
        Ok(lem)
    }

    pub fn lemmatize(&self, tok: &Token) -> Token {
        let mut out = tok.clone();
        out.lemma = self.lemma_for(&tok.lower, tok.pos);
        out
    }

    pub fn lemma_for(&self, lower: &str, pos: Pos) -> String {
        if let Some(forms) = self.irregular.get(lower) {
            if let Some((lemma, _)) = forms.iter().find(|(_, k)| k.pos() == pos) {
                return lemma.clone();
            }
        }
        let candidates = match pos {
            Pos::Verb => verb_candidates(lower),
            Pos::Noun => noun_candidates(lower),
            Pos::Adj => adj_candidates(lower),
            _ => return lower.to_string(),
        };
        if candidates.is_empty() {
            return lower.to_string();
        }
        let known = |w: &String, same_pos: bool| {
            self.bases
                .get(w)
                .is_some_and(|tags| !same_pos || tags.contains(&pos))
        };
        if let Some(c) = candidates.iter().find(|c| known(c, true)) {
            return c.clone();
        }
        if let Some(c) = candidates.iter().find(|c| known(c, false)) {
            return c.clone();
        }
        if pos == Pos::Adj {
            // unverified comparative stripping does more harm than good
            return lower.to_string();
        }
        fallback(lower, &candidates)
    }

    /// Past participle by surface form: `-ed`, `-en`, or an irregular participle.
    pub fn is_participle(&self, lower: &str) -> bool {
        lower.ends_with("ed")
            || lower.ends_with("en")
            || self
                .irregular
                .get(lower)
                .is_some_and(|forms| forms.iter().any(|(_, k)| *k == FormKind::Participle))
    }

    pub fn irregular_len(&self) -> usize {
        self.irregular.len()
    }
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

/// Ends consonant-vowel-consonant with a single vowel (`hop`, `us`, `nic`).
fn short_cvc(stem: &[char]) -> bool {
    let n = stem.len();
    if n < 2 {
        return false;
    }
    let last = stem[n - 1];
    let mid = stem[n - 2];
    if is_vowel(last) || matches!(last, 'w' | 'x' | 'y') || !is_vowel(mid) {
        return false;
    }
    n == 2 || !is_vowel(stem[n - 3])
}

fn has_vowel(s: &[char]) -> bool {
    s.iter().any(|&c| is_vowel(c) || c == 'y')
}

/// Candidate bases for a stem left after removing `-ed`, `-ing`, `-er`, `-est`.
fn stem_candidates(stem: &[char], out: &mut Vec<String>) {
    if stem.len() < 2 || !has_vowel(stem) {
        return;
    }
    let plain: String = stem.iter().collect();
    let with_e = format!("{plain}e");
    let n = stem.len();
    let undoubled = (n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]))
        .then(|| stem[..n - 1].iter().collect::<String>());
    if short_cvc(stem) {
        out.push(with_e);
        out.push(plain);
    } else {
        out.push(plain);
        out.push(with_e);
    }
    out.extend(undoubled);
}

fn chars_without(word: &str, suffix_len: usize) -> Vec<char> {
    let chars: Vec<char> = word.chars().collect();
    chars[..chars.len() - suffix_len].to_vec()
}

fn verb_candidates(w: &str) -> Vec<String> {
    let mut out = Vec::new();
    let len = w.chars().count();
    if w.ends_with("ied") && len > 4 {
        out.push(format!("{}y", &w[..w.len() - 3]));
    } else if w.ends_with("ing") && len > 4 {
        stem_candidates(&chars_without(w, 3), &mut out);
    } else if w.ends_with("ed") && len > 3 {
        stem_candidates(&chars_without(w, 2), &mut out);
    } else if w.ends_with("ies") && len > 4 {
        out.push(format!("{}y", &w[..w.len() - 3]));
    } else if w.ends_with("es") && len > 3 {
        let sibilant = ["ches", "shes", "sses", "xes", "zes", "oes"]
            .iter()
            .any(|s| w.ends_with(s));
        let (a, b) = (w[..w.len() - 2].to_string(), w[..w.len() - 1].to_string());
        if sibilant {
            out.extend([a, b]);
        } else {
            out.extend([b, a]);
        }
    } else if w.ends_with('s') && !w.ends_with("ss") && len > 2 {
        out.push(w[..w.len() - 1].to_string());
    }
    out
}

fn noun_candidates(w: &str) -> Vec<String> {
    let mut out = Vec::new();
    let len = w.chars().count();
    if len <= 3 || ["ss", "us", "is"].iter().any(|s| w.ends_with(s)) || !w.ends_with('s') {
        return out;
    }
    if w.ends_with("ies") && len > 4 {
        out.push(format!("{}y", &w[..w.len() - 3]));
        out.push(w[..w.len() - 1].to_string());
    } else if ["ches", "shes", "xes", "zes"].iter().any(|s| w.ends_with(s)) {
        out.push(w[..w.len() - 2].to_string());
        out.push(w[..w.len() - 1].to_string());
    } else if w.ends_with("ses") {
        out.push(w[..w.len() - 1].to_string());
        out.push(w[..w.len() - 2].to_string());
    } else {
        out.push(w[..w.len() - 1].to_string());
    }
    out
}

fn adj_candidates(w: &str) -> Vec<String> {
    let mut out = Vec::new();
    if ADJ_BASES_ENDING_ER.contains(&w) {
        return out;
    }
    let len = w.chars().count();
    if (w.ends_with("iest") && len > 5) || (w.ends_with("ier") && len > 4) {
        let cut = if w.ends_with("iest") { 4 } else { 3 };
        out.push(format!("{}y", &w[..w.len() - cut]));
    } else if w.ends_with("est") && len > 4 {
        stem_candidates(&chars_without(w, 3), &mut out);
    } else if w.ends_with("er") && len > 3 {
        stem_candidates(&chars_without(w, 2), &mut out);
    }
    out
}

/// No candidate is a known base: restore a final `e` after stems that
/// cannot end an English word (`lov`, `danc`, `argu`) and undo doubling.
fn fallback(lower: &str, candidates: &[String]) -> String {
    let stem = ["ing", "ed"]
        .iter()
        .find_map(|s| lower.strip_suffix(s))
        .filter(|_| !lower.ends_with("ied"));
    let Some(stem) = stem else {
        return candidates[0].clone();
    };
    let chars: Vec<char> = stem.chars().collect();
    let n = chars.len();
    if n >= 2 && matches!(chars[n - 1], 'v' | 'c' | 'u' | 'z') && chars[n - 2] != chars[n - 1] {
        return format!("{stem}e");
    }
    if n >= 3
        && chars[n - 1] == chars[n - 2]
        && !is_vowel(chars[n - 1])
        && !matches!(chars[n - 1], 'l' | 's' | 'z' | 'f')
    {
        return chars[..n - 1].iter().collect();
    }
    stem.to_string()
}
