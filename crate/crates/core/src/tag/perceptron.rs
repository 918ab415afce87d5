//! Averaged perceptron over the collapsed tag set.
//!
//! Weights are kept per feature as one score per tag. Averaging uses the
//! usual timestamp trick: each (feature, tag) cell remembers when it last
//! changed so the running total can be caught up lazily.

use std::collections::HashMap;

use crate::token::Pos;

pub const NUM_TAGS: usize = Pos::TAGGED.len();

pub type Scores = [f64; NUM_TAGS];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct AveragedPerceptron {
    pub(crate) weights: HashMap<String, Scores>,
    totals: HashMap<String, Scores>,
    stamps: HashMap<String, [u64; NUM_TAGS]>,
    instances: u64,
}

impl AveragedPerceptron {
    pub fn from_weights(weights: HashMap<String, Scores>) -> Self {
        AveragedPerceptron {
            weights,
            ..Default::default()
        }
    }

    pub fn predict(&self, features: &[String]) -> usize {
        argmax(&self.scores(features))
    }

    fn scores(&self, features: &[String]) -> Scores {
        let mut scores = [0.0; NUM_TAGS];
        for feat in features {
            if let Some(w) = self.weights.get(feat) {
                for (s, v) in scores.iter_mut().zip(w) {
                    *s += v;
                }
            }
        }
        scores
    }

    /// One training step. Updates unless the true tag strictly outscores
    /// every rival, so ties (including the untrained all-zero case) still
    /// teach the model. Returns the tag predicted before the update.
    pub fn train_step(&mut self, truth: usize, features: &[String]) -> usize {
        let scores = self.scores(features);
        let rival = (0..NUM_TAGS)
            .filter(|&t| t != truth)
            .fold(None, |best: Option<usize>, t| match best {
                Some(b) if scores[b] >= scores[t] => Some(b),
                _ => Some(t),
            })
            .expect("at least two tags");
        let guess = argmax(&scores);
        if scores[truth] > scores[rival] {
            self.update(truth, truth, features);
        } else {
            self.update(truth, rival, features);
        }
        guess
    }

    /// Weights set during step `t` count towards the average from `t` on.
    pub fn update(&mut self, truth: usize, guess: usize, features: &[String]) {
        if truth != guess {
            for feat in features {
                self.bump(feat, truth, 1.0);
                self.bump(feat, guess, -1.0);
            }
        }
        self.instances += 1;
    }

    fn bump(&mut self, feat: &str, tag: usize, delta: f64) {
        let now = self.instances;
        let weights = self.weights.entry(feat.to_string()).or_insert([0.0; NUM_TAGS]);
        let totals = self.totals.entry(feat.to_string()).or_insert([0.0; NUM_TAGS]);
        let stamps = self.stamps.entry(feat.to_string()).or_insert([0; NUM_TAGS]);
        totals[tag] += (now - stamps[tag]) as f64 * weights[tag];
        stamps[tag] = now;
        weights[tag] += delta;
    }

    /// Replaces every weight by its average over all updates seen so far.
    /// Values are rounded to 4 decimals and all-zero rows are dropped.
    pub fn average(&mut self) {
        let now = self.instances.max(1);
        let mut averaged = HashMap::with_capacity(self.weights.len());
        for (feat, weights) in &self.weights {
            let totals = self.totals.get(feat).copied().unwrap_or([0.0; NUM_TAGS]);
            let stamps = self.stamps.get(feat).copied().unwrap_or([0; NUM_TAGS]);
            let mut row = [0.0; NUM_TAGS];
            for t in 0..NUM_TAGS {
                let total = totals[t] + (now - stamps[t]) as f64 * weights[t];
                row[t] = (total / now as f64 * 1e4).round() / 1e4;
            }
            if row.iter().any(|&v| v != 0.0) {
                averaged.insert(feat.clone(), row);
            }
        }
        self.weights = averaged;
        self.totals.clear();
        self.stamps.clear();
        self.instances = 0;
    }
}

/// Highest score; ties resolve to the lower tag index.
fn argmax(scores: &Scores) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

/// Lowercased form with digits collapsed.
pub fn normalize_word(word: &str) -> String {
    if word.chars().any(|c| c.is_ascii_digit()) {
        if word.len() == 4 && word.chars().all(|c| c.is_ascii_digit()) {
            return "!YEAR".into();
        }
        return "!DIGITS".into();
    }
    word.to_lowercase()
}

/// `Fire-Vodka` → `Xx-Xx`, `3` → `d`.
pub fn word_shape(word: &str) -> String {
    let mut shape = String::new();
    for c in word.chars() {
        let s = if c.is_uppercase() {
            'X'
        } else if c.is_lowercase() {
            'x'
        } else if c.is_ascii_digit() {
            'd'
        } else {
            c
        };
        if !shape.ends_with(s) {
            shape.push(s);
        }
    }
    shape
}

/// Features for position `i`: bias, current word, suffixes up to three
/// characters, previous tag, previous word, next word and word shape.
pub fn features(words: &[&str], i: usize, prev_tag: Option<Pos>) -> Vec<String> {
    let word = normalize_word(words[i]);
    let chars: Vec<char> = word.chars().collect();
    let mut feats = Vec::with_capacity(9);
    feats.push("bias".to_string());
    feats.push(format!("w={word}"));
    for k in 1..=3.min(chars.len()) {
        let suffix: String = chars[chars.len() - k..].iter().collect();
        feats.push(format!("s{k}={suffix}"));
    }
    feats.push(format!(
        "pt={}",
        prev_tag.map_or("-START-", |p| p.as_str())
    ));
    let prev = if i == 0 { "-START-".to_string() } else { normalize_word(words[i - 1]) };
    feats.push(format!("pw={prev}"));
    let next = words.get(i + 1).map_or("-END-".to_string(), |w| normalize_word(w));
    feats.push(format!("nw={next}"));
    feats.push(format!("sh={}", word_shape(words[i])));
    feats
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(word_shape("Fire-Vodka"), "Xx-Xx");
        assert_eq!(word_shape("Thai"), "Xx");
        assert_eq!(word_shape("1999"), "d");
    }

    #[test]
    fn feature_template() {
        let f = features(&["we", "loved", "it"], 1, Some(Pos::Pron));
        assert_eq!(
            f,
            [
                "bias", "w=loved", "s1=d", "s2=ed", "s3=ved", "pt=PRON", "pw=we", "nw=it", "sh=x"
            ]
        );
    }

    #[test]
    fn learns_a_separable_pair() {
        let mut p = AveragedPerceptron::default();
        let a = vec!["w=a".to_string()];
        let b = vec!["w=b".to_string()];
        for _ in 0..5 {
            let g = p.predict(&a);
            p.update(0, g, &a);
            let g = p.predict(&b);
            p.update(2, g, &b);
        }
        p.average();
        assert_eq!(p.predict(&a), 0);
        assert_eq!(p.predict(&b), 2);
    }
}
