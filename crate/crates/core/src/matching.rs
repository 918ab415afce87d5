//! Adjective/verb → noun pattern matching and the `2a`/`2v`/`2n` labels.

use serde::{Deserialize, Serialize};

use crate::tag::lemma::Lemmatizer;
use crate::token::{Document, Pos, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pattern {
    /// noun + copula + adjective
    NCopA,
    /// adjective + noun
    AN,
    /// verb + noun
    VN,
    /// noun + passive auxiliary + participle
    NPassV,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatchPair {
    pub modifier: String,
    pub noun: String,
    pub pattern: Pattern,
    pub doc_id: String,
    pub sent_index: usize,
}

const DETERMINERS: &[&str] = &[
    "a", "an", "the", "this", "that", "these", "those", "my", "our", "your", "their", "his", "her",
    "its", "some", "many", "several", "few", "every", "each", "any", "another", "both",
];

const RUN_SEPARATORS: &[&str] = &[",", "and", "or", "but", "&", "yet"];

pub fn label_for(tok: &Token) -> Option<String> {
    let suffix = match tok.pos {
        Pos::Adj => "2a",
        Pos::Verb => "2v",
        Pos::Noun => "2n",
        _ => return None,
    };
    let base = if tok.lemma.is_empty() { &tok.lower } else { &tok.lemma };
    Some(format!("{base}{suffix}"))
}

pub fn map_suffixes(doc: &Document) -> Document {
    let mut out = doc.clone();
    for tok in out.sentences.iter_mut().flatten() {
        tok.label = label_for(tok);
    }
    out
}

fn label(tok: &Token) -> String {
    tok.label.clone().or_else(|| label_for(tok)).unwrap_or_default()
}

struct Scan<'a> {
    sent: &'a [Token],
    lemmatizer: &'a Lemmatizer,
}

enum Clause {
    Copular { adjs: Vec<usize>, end: usize },
    Passive { verb: usize },
}

impl<'a> Scan<'a> {
    fn is(&self, k: usize, pos: Pos) -> bool {
        self.sent.get(k).is_some_and(|t| t.pos == pos)
    }

    fn skip_adverbs(&self, mut k: usize) -> usize {
        while self.sent.get(k).is_some_and(Token::is_adverb) {
            k += 1;
        }
        k
    }

    fn run_end(&self, start: usize, pos: Pos) -> usize {
        let mut k = start;
        while self.is(k, pos) {
            k += 1;
        }
        k
    }

    /// Adjectives from `start`, allowing commas, conjunctions and adverbs
    /// between them. Returns their positions and the index after the last.
    fn adjective_run(&self, start: usize) -> (Vec<usize>, usize) {
        let mut adjs = Vec::new();
        let mut k = start;
        let mut end = start;
        while k < self.sent.len() {
            let t = &self.sent[k];
            if t.pos == Pos::Adj {
                adjs.push(k);
                end = k + 1;
            } else if !(RUN_SEPARATORS.contains(&t.lower.as_str()) || t.is_adverb()) {
                break;
            }
            k += 1;
        }
        (adjs, end)
    }

    /// A copular or passive clause following the noun run ending at `k`.
    fn clause_after(&self, k: usize) -> Option<Clause> {
        let mut k = self.skip_adverbs(k);
        let mut passive = false;
        let mut copulas = 0;
        while self.sent.get(k).is_some_and(|t| t.is_copular) {
            passive |= self.sent[k].is_passive_aux;
            copulas += 1;
            k = self.skip_adverbs(k + 1);
        }
        if copulas == 0 {
            return None;
        }
        let t = self.sent.get(k)?;
        match t.pos {
            Pos::Adj => {
                let (adjs, end) = self.adjective_run(k);
                Some(Clause::Copular { adjs, end })
            }
            Pos::Verb if passive && self.lemmatizer.is_participle(&t.lower) => Some(Clause::Passive { verb: k }),
            _ => None,
        }
    }

    fn starts_clause(&self, noun_start: usize) -> bool {
        let end = self.run_end(noun_start, Pos::Noun);
        end > noun_start && self.clause_after(end).is_some()
    }
}

/// Left-to-right scan of every sentence. Copular and passive clauses
/// anchored at a noun run take precedence over adjective+noun and verb+noun.
pub fn match_av2n(doc: &Document, lemmatizer: &Lemmatizer) -> Vec<MatchPair> {
    let mut pairs = Vec::new();
    for (s, sent) in doc.sentences.iter().enumerate() {
        let scan = Scan { sent, lemmatizer };
        let mut emit = |modifiers: &[usize], nouns: std::ops::Range<usize>, pattern: Pattern| {
            for &m in modifiers {
                for n in nouns.clone() {
                    pairs.push(MatchPair {
                        modifier: label(&sent[m]),
                        noun: label(&sent[n]),
                        pattern,
                        doc_id: doc.id.clone(),
                        sent_index: s,
                    });
                }
            }
        };
        let mut i = 0;
        while i < sent.len() {
            let tok = &sent[i];
            match tok.pos {
                Pos::Noun => {
                    let end = scan.run_end(i, Pos::Noun);
                    match scan.clause_after(end) {
                        Some(Clause::Copular { adjs, end: after }) => {
                            emit(&adjs, i..end, Pattern::NCopA);
                            i = after;
                        }
                        Some(Clause::Passive { verb }) => {
                            emit(&[verb], i..end, Pattern::NPassV);
                            i = verb + 1;
                        }
                        None => i = end,
                    }
                }
                Pos::Adj => {
                    let end = scan.run_end(i, Pos::Adj);
                    let nouns_end = scan.run_end(end, Pos::Noun);
                    if nouns_end > end && !scan.starts_clause(end) {
                        let adjs: Vec<usize> = (i..end).collect();
                        emit(&adjs, end..nouns_end, Pattern::AN);
                        i = nouns_end;
                    } else {
                        i = end;
                    }
                }
                Pos::Verb if !tok.is_copular => {
                    let mut k = i + 1;
                    if sent
                        .get(k)
                        .is_some_and(|t| t.is_numeral() || DETERMINERS.contains(&t.lower.as_str()))
                    {
                        k += 1;
                    }
                    let nouns_end = scan.run_end(k, Pos::Noun);
                    if nouns_end > k && !scan.starts_clause(k) {
                        emit(&[i], k..nouns_end, Pattern::VN);
                        i = nouns_end;
                    } else {
                        i += 1;
                    }
                }
                _ => i += 1,
            }
        }
    }
    pairs
}
