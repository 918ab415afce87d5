//! Bundled data files and their overrides.
//!
//! The lexicon, lemma tables and tagger model are compiled into the crate.
//! Setting `KEYPARTX_DATA_DIR` loads files of the same names from that
//! directory instead; missing files there fall back to the bundled copy.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::normalize::Lexicon;
use crate::tag::{Lemmatizer, TagModel};

pub const DATA_DIR_ENV: &str = "KEYPARTX_DATA_DIR";

pub const LEXICON_FILE: &str = "lexicon.tsv";
pub const IRREGULAR_FILE: &str = "irregular.tsv";
pub const BASES_FILE: &str = "bases.tsv";
pub const TAGGER_FILE: &str = "tagger.json";
pub const TREEBANK_FILE: &str = "treebank.txt";

const BUNDLED_LEXICON: &str = include_str!("../data/lexicon.tsv");
const BUNDLED_IRREGULAR: &str = include_str!("../data/irregular.tsv");
const BUNDLED_BASES: &str = include_str!("../data/bases.tsv");
const BUNDLED_TAGGER: &str = include_str!("../data/tagger.json");
const BUNDLED_TREEBANK: &str = include_str!("../data/treebank.txt");

#[derive(Debug, Clone)]
pub struct Resources {
    pub lexicon: Lexicon,
    pub lemmatizer: Lemmatizer,
    pub tagger: TagModel,
}

impl Resources {
    /// The compiled-in data, ignoring the environment.
    pub fn bundled() -> Result<Self> {
        Ok(Resources {
            lexicon: Lexicon::parse(BUNDLED_LEXICON)?,
            lemmatizer: Lemmatizer::parse(BUNDLED_IRREGULAR, BUNDLED_BASES)?,
            tagger: TagModel::from_json(BUNDLED_TAGGER)?,
        })
    }

    /// Bundled data with per-file overrides from `KEYPARTX_DATA_DIR`.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(DATA_DIR_ENV) {
            Some(dir) => Self::from_dir(Path::new(&dir)),
            None => Self::bundled(),
        }
    }

    pub fn from_dir(dir: &Path) -> Result<Self> {
        let lexicon = read_or(dir, LEXICON_FILE, BUNDLED_LEXICON)?;
        let irregular = read_or(dir, IRREGULAR_FILE, BUNDLED_IRREGULAR)?;
        let bases = read_or(dir, BASES_FILE, BUNDLED_BASES)?;
        let tagger = read_or(dir, TAGGER_FILE, BUNDLED_TAGGER)?;
        Ok(Resources {
            lexicon: Lexicon::parse(&lexicon)?,
            lemmatizer: Lemmatizer::parse(&irregular, &bases)?,
            tagger: TagModel::from_json(&tagger)?,
        })
    }
}

fn read_or(dir: &Path, name: &str, bundled: &str) -> Result<String> {
    let path = dir.join(name);
    if path.exists() {
        std::fs::read_to_string(&path).map_err(|e| Error::io(path, e))
    } else {
        Ok(bundled.to_string())
    }
}

/// Gold-tagged training sentences shipped with the crate.
pub fn bundled_treebank() -> &'static str {
    BUNDLED_TREEBANK
}

/// Path of a data file inside the override directory, if one is set.
pub fn override_path(name: &str) -> Option<PathBuf> {
    std::env::var_os(DATA_DIR_ENV).map(|d| Path::new(&d).join(name))
}

/// One lowercase word per line; blank lines and `#` comments are skipped.
pub fn parse_word_list(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

pub fn load_word_list(path: &Path) -> Result<BTreeSet<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let words = parse_word_list(&text);
    if words.is_empty() {
        return Err(Error::Data {
            name: path.display().to_string(),
            message: "word list is empty".into(),
        });
    }
    Ok(words)
}
