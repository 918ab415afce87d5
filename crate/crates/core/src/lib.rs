//! Perception graphs from unstructured text.
//!
//! Text is normalized, tagged and compounded, then adjectives and verbs are
//! matched onto the nouns they describe. The resulting typed, weighted graph
//! (adjective/verb → noun arcs plus optional noun ↔ noun co-occurrence) can be
//! downsized with a k-weight / k-core pass and partitioned with directed
//! modularity.
//!
//! The stages map onto modules:
//!
//! | stage | module |
//! |---|---|
//! | ingestion and export | [`corpus_io`] |
//! | segmentation, tokenization, spelling | [`normalize`] |
//! | POS tags, lemmas, auxiliaries | [`tag`] |
//! | compounds, coreference, negation | [`compound`] |
//! | adjective/verb → noun patterns | [`matching`] |
//! | graph building and reports | [`graph`] |
//! | k-weight, k-core, isolates | [`reduce`] |
//! | directed modularity, communities | [`community`] |
//! | end-to-end runs | [`pipeline`] |

pub mod community;
pub mod compound;
pub mod corpus_io;
pub mod error;
pub mod graph;
pub mod matching;
pub mod normalize;
pub mod pipeline;
pub mod reduce;
pub mod resources;
pub mod tag;
pub mod token;

pub use error::{Error, Result};
pub use graph::{EdgeKind, NodeKind, PerceptionGraph};

pub use token::{Document, Pos, Token};
