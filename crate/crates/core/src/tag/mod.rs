//! Part-of-speech tagging, lemmas and auxiliary flags.
//!
//! Closed-class words come from a fixed dictionary; everything else goes
//! through an averaged perceptron trained on the bundled mini-treebank.

pub mod lemma;
pub mod perceptron;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::token::{Document, Pos, Token};

pub use lemma::Lemmatizer;
use perceptron::{features, AveragedPerceptron, Scores};

/// One gold-tagged sentence.
pub type TaggedSentence = Vec<(String, Pos)>;

pub const DEFAULT_COPULAR: &[&str] = &[
    "be", "get", "taste", "smell", "seem", "look", "feel", "sound", "appear", "become", "stay",
    "remain",
];
pub const DEFAULT_PASSIVE_AUX: &[&str] = &["be", "get"];

const CLOSED_PRONOUNS: &[&str] = &[
    "i", "me", "you", "he", "him", "she", "it", "we", "us", "they", "them", "myself", "yourself",
    "himself", "herself", "itself", "ourselves", "yourselves", "themselves", "mine", "yours",
    "ours", "theirs", "someone", "everyone", "anyone", "something", "everything", "anything",
    "nothing", "nobody", "somebody", "everybody",
];

const CLOSED_OTHER: &[&str] = &[
    "the", "a", "an", "this", "that", "these", "those", "my", "your", "his", "her", "its", "our",
    "their", "some", "any", "every", "each", "no", "not", "none", "neither", "nor", "never",
    "hardly", "scarcely", "barely", "and", "or", "but", "of", "in", "on", "at", "to", "for",
    "with", "from", "by", "as", "if", "than", "because", "about", "into", "over", "after",
    "before", "during", "without", "within", "through", "between", "there", "here", "very",
    "so", "too", "also", "just", "which", "who", "whom", "whose", "what", "where", "when", "why",
    "how", "while", "although", "though", "yet", "then", "up", "down", "out", "off",
];

const CLOSED_VERBS: &[&str] = &["is", "am", "are", "was", "were", "be", "been", "being"];

const DEMONSTRATIVES: &[&str] = &["this", "that", "these", "those"];

#[derive(Debug, Clone, PartialEq)]
pub struct TagModel {
    pub(crate) perceptron: AveragedPerceptron,
    pub tagdict: HashMap<String, Pos>,
    pub copular: BTreeSet<String>,
    pub passive_aux: BTreeSet<String>,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    tags: Vec<Pos>,
    copular: BTreeSet<String>,
    passive_aux: BTreeSet<String>,
    tagdict: BTreeMap<String, Pos>,
    weights: BTreeMap<String, Scores>,
}

impl TagModel {
    fn with_weights(perceptron: AveragedPerceptron) -> Self {
        TagModel {
            perceptron,
            tagdict: closed_class_dict(),
            copular: DEFAULT_COPULAR.iter().map(|s| s.to_string()).collect(),
            passive_aux: DEFAULT_PASSIVE_AUX.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Weights as a sorted map, for comparisons and inspection.
    pub fn weights(&self) -> BTreeMap<String, Scores> {
        self.perceptron
            .weights
            .iter()
            .map(|(k, v)| (k.clone(), *v))
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        let file = ModelFile {
            tags: Pos::TAGGED.to_vec(),
            copular: self.copular.clone(),
            passive_aux: self.passive_aux.clone(),
            tagdict: self.tagdict.iter().map(|(k, v)| (k.clone(), *v)).collect(),
            weights: self.weights(),
        };
        Ok(serde_json::to_string(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text)?;
        if file.tags != Pos::TAGGED {
            return Err(Error::Data {
                name: "tagger model".into(),
                message: format!("unexpected tag order {:?}", file.tags),
            });
        }
        Ok(TagModel {
            perceptron: AveragedPerceptron::from_weights(file.weights.into_iter().collect()),
            tagdict: file.tagdict.into_iter().collect(),
            copular: file.copular,
            passive_aux: file.passive_aux,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    /// Replace the copular list; the passive auxiliaries stay `be`/`get`.
    pub fn set_copular<I: IntoIterator<Item = String>>(&mut self, lemmas: I) {
        self.copular = lemmas.into_iter().collect();
    }

    /// Closed-class words and punctuation bypass the perceptron.
    fn fixed_tag(&self, word: &str) -> Option<Pos> {
        if !word.chars().any(char::is_alphanumeric) {
            return Some(Pos::Other);
        }
        self.tagdict.get(&word.to_lowercase()).copied()
    }

    /// Tags for one sentence of surface words.
    pub fn predict(&self, words: &[&str]) -> Vec<Pos> {
        let mut tags = Vec::with_capacity(words.len());
        let mut prev = None;
        for i in 0..words.len() {
            let tag = match self.fixed_tag(words[i]) {
                Some(t) => t,
                None => Pos::TAGGED[self.perceptron.predict(&features(words, i, prev))],
            };
            tags.push(tag);
            prev = Some(tag);
        }
        tags
    }
}

fn closed_class_dict() -> HashMap<String, Pos> {
    let mut dict = HashMap::new();
    for (words, pos) in [
        (CLOSED_OTHER, Pos::Other),
        (CLOSED_PRONOUNS, Pos::Pron),
        (CLOSED_VERBS, Pos::Verb),
    ] {
        for w in words {
            dict.insert(w.to_string(), pos);
        }
    }
    dict
}

/// Parses `word/TAG word/TAG ...` lines with tags from the collapsed set.
pub fn parse_treebank(text: &str) -> Result<Vec<TaggedSentence>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut sent = Vec::new();
        for item in line.split_whitespace() {
            let (word, tag) = item
                .rsplit_once('/')
                .filter(|(w, _)| !w.is_empty())
                .ok_or_else(|| Error::Data {
                    name: "treebank".into(),
                    message: format!("line {}: bad token {item:?}", n + 1),
                })?;
            let pos = Pos::parse(tag).filter(|p| *p != Pos::Unset).ok_or_else(|| Error::Data {
                name: "treebank".into(),
                message: format!("line {}: unknown tag {tag:?}", n + 1),
            })?;
            sent.push((word.to_string(), pos));
        }
        out.push(sent);
    }
    Ok(out)
}

/// Trains an averaged perceptron. Sentence order is shuffled every epoch
/// from `seed`, so equal inputs and seeds give identical weights.
pub fn train_tagger(corpus: &[TaggedSentence], epochs: usize, seed: u64) -> Result<TagModel> {
    if corpus.is_empty() {
        return Err(Error::Argument("training corpus is empty".into()));
    }
    if epochs == 0 {
        return Err(Error::Argument("epochs must be at least 1".into()));
    }
    let mut model = TagModel::with_weights(AveragedPerceptron::default());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..corpus.len()).collect();
    for _ in 0..epochs {
        order.shuffle(&mut rng);
        for &s in &order {
            let sent = &corpus[s];
            let words: Vec<&str> = sent.iter().map(|(w, _)| w.as_str()).collect();
            let mut prev = None;
            for (i, (word, gold)) in sent.iter().enumerate() {
                let guess = match model.fixed_tag(word) {
                    Some(t) => t,
                    None => {
                        let feats = features(&words, i, prev);
                        let truth = gold.index().expect("gold tags are never UNSET");
                        Pos::TAGGED[model.perceptron.train_step(truth, &feats)]
                    }
                };
                prev = Some(guess);
            }
        }
    }
    model.perceptron.average();
    Ok(model)
}

/// Token accuracy of `model` against gold sentences.
pub fn accuracy(model: &TagModel, gold: &[TaggedSentence]) -> f64 {
    let (mut right, mut total) = (0usize, 0usize);
    for sent in gold {
        let words: Vec<&str> = sent.iter().map(|(w, _)| w.as_str()).collect();
        for (p, (_, g)) in model.predict(&words).iter().zip(sent) {
            right += usize::from(p == g);
            total += 1;
        }
    }
    if total == 0 {
        return 0.0;
    }
    right as f64 / total as f64
}

/// Assigns POS, lemma and auxiliary flags to every token.
pub fn tag_tokens(doc: &Document, model: &TagModel, lemmatizer: &Lemmatizer) -> Document {
    let mut out = doc.clone();
    for sent in &mut out.sentences {
        let words: Vec<&str> = sent.iter().map(|t| t.surface.as_str()).collect();
        let predicted = model.predict(&words);
        for (tok, tag) in sent.iter_mut().zip(predicted) {
            if tok.pos != Pos::Other || !(tok.is_punct() || tok.is_numeral()) {
                tok.pos = tag;
            }
        }
        promote_demonstratives(sent);
        for tok in sent.iter_mut() {
            *tok = lemmatizer.lemmatize(tok);
        }
    }
    mark_auxiliaries(&mut out, model);
    out
}

/// `this`/`that`/`these`/`those` standing alone (before a verb, punctuation
/// or the sentence end) act as pronouns.
fn promote_demonstratives(sent: &mut [Token]) {
    for i in 0..sent.len() {
        if !DEMONSTRATIVES.contains(&sent[i].lower.as_str()) || sent[i].pos != Pos::Other {
            continue;
        }
        let standalone = match sent.get(i + 1) {
            None => true,
            Some(next) => next.pos == Pos::Verb || next.is_punct(),
        };
        if standalone {
            sent[i].pos = Pos::Pron;
        }
    }
}

/// Sets `is_copular` and `is_passive_aux` from lemma and POS.
pub fn mark_auxiliaries(doc: &mut Document, model: &TagModel) {
    for tok in doc.sentences.iter_mut().flatten() {
        tok.is_copular = tok.pos == Pos::Verb && model.copular.contains(&tok.lemma);
        tok.is_passive_aux = model.passive_aux.contains(&tok.lemma);
    }
}
