//! Randomized property checks, callable with an explicit case budget so the
//! acceptance harness and the regular test suite share them.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use keypartx::compound::{compound_negation, form_compound_nouns, resolve_coreference, CompoundRules};
use keypartx::corpus_io::{export_graph, import_json, ExportFormat};
use keypartx::graph::{build_graph, ConativeFilter, NnMode, Unit};
use keypartx::matching::{label_for, MatchPair, Pattern};
use keypartx::normalize::{correct_spelling, segment_sentences, tokenize};
use keypartx::reduce::{k_core, k_weight_filter};
use keypartx::resources::Resources;
use keypartx::{Document, PerceptionGraph, Pos, Token};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub fn resources() -> &'static Resources {
    static RES: OnceLock<Resources> = OnceLock::new();
    RES.get_or_init(|| Resources::bundled().expect("bundled data loads"))
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String> {
    runner(cases).run(&strategy, test).map(|()| cases).map_err(|e| e.to_string())
}

fn word() -> impl Strategy<Value = String> {
    prop_oneof![
        "[a-z]{1,10}",
        "[A-Z][a-z]{2,8}",
        prop::sample::select(vec!["delicousr", "recomended", "great", "Beach", "fire-vodka", "it's", "3", "!!!"])
            .prop_map(String::from),
    ]
}

/// Correcting a corrected token changes nothing; lexicon words are fixed points.
pub fn spelling_idempotent(cases: u32) -> Result<u32, String> {
    let lex = &resources().lexicon;
    let known: Vec<String> = {
        let mut w: Vec<String> = lex.words().map(|(w, _)| w.to_string()).collect();
        w.sort();
        w
    };
    check(cases, (word(), 0..known.len()), |(w, k)| {
        let once = correct_spelling(&Token::new(&w, 0, 0), lex);
        let twice = correct_spelling(&once, lex);
        prop_assert_eq!(&once, &twice);
        let fixed = Token::new(&known[k], 0, 0);
        prop_assert_eq!(correct_spelling(&fixed, lex), fixed);
        Ok(())
    })
}

/// Sentence splitting keeps every non-space character; tokens are never empty.
pub fn segmentation_preserves_text(cases: u32) -> Result<u32, String> {
    let text = prop::collection::vec(
        prop_oneof![word(), prop::sample::select(vec![".", "!", "?", "...", "…", "\"", ",", " ", "\n", "  "]).prop_map(String::from)],
        0..30,
    )
    .prop_map(|parts| parts.join(" "));
    check(cases, text, |t| {
        let sentences = segment_sentences(&t);
        let strip = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        prop_assert_eq!(strip(&sentences.concat()), strip(&t));
        for s in &sentences {
            prop_assert!(!s.trim().is_empty());
            prop_assert!(tokenize(s).iter().all(|tok| !tok.surface.is_empty()));
        }
        Ok(())
    })
}

const VOCAB: &[(&str, &str, Pos)] = &[
    ("Thai", "thai", Pos::Adj),
    ("food", "food", Pos::Noun),
    ("beach", "beach", Pos::Noun),
    ("resorts", "resort", Pos::Noun),
    ("Room", "room", Pos::Noun),
    ("was", "be", Pos::Verb),
    ("great", "great", Pos::Adj),
    ("not", "not", Pos::Other),
    ("never", "never", Pos::Other),
    ("very", "very", Pos::Other),
    ("highly", "highly", Pos::Other),
    ("expensive", "expensive", Pos::Adj),
    ("loved", "love", Pos::Verb),
    ("recommend", "recommend", Pos::Verb),
    ("it", "it", Pos::Pron),
    ("they", "they", Pos::Pron),
    ("those", "those", Pos::Pron),
    ("we", "we", Pos::Pron),
    ("\"", "\"", Pos::Other),
    ("Fire-Vodka", "fire-vodka", Pos::Adj),
    ("New", "new", Pos::Adj),
    ("York", "york", Pos::Noun),
    (",", ",", Pos::Other),
    (".", ".", Pos::Other),
    ("the", "the", Pos::Other),
    ("3", "3", Pos::Other),
];

pub fn tagged_document() -> impl Strategy<Value = Document> {
    let token = (0..VOCAB.len()).prop_map(|i| {
        let (s, l, p) = VOCAB[i];
        let mut t = Token::tagged(s, l, p);
        t.is_copular = l == "be";
        t.is_passive_aux = l == "be";
        t
    });
    prop::collection::vec(prop::collection::vec(token, 0..12), 1..4).prop_map(|s| Document::new("d", s))
}

/// Each compound stage is idempotent, never adds tokens, and leaves no
/// hyphen, quote or space inside a noun.
pub fn compound_stages_idempotent(cases: u32) -> Result<u32, String> {
    let rules = CompoundRules::default();
    check(cases, tagged_document(), |doc| {
        let c = form_compound_nouns(&doc, &rules);
        prop_assert_eq!(&form_compound_nouns(&c, &rules), &c);
        prop_assert!(c.token_count() <= doc.token_count());
        for t in c.tokens().filter(|t| t.pos == Pos::Noun) {
            prop_assert!(!t.lower.contains(['-', '"']) && !t.lower.contains(char::is_whitespace), "{}", t.lower);
        }
        let r = resolve_coreference(&c);
        prop_assert_eq!(&resolve_coreference(&r), &r);
        prop_assert_eq!(r.token_count(), c.token_count());
        let n = compound_negation(&r, &rules);
        prop_assert_eq!(&compound_negation(&n, &rules), &n);
        prop_assert!(n.token_count() <= r.token_count());
        for (s, sent) in n.sentences.iter().enumerate() {
            for (i, t) in sent.iter().enumerate() {
                prop_assert_eq!((t.sent_index, t.tok_index), (s, i));
            }
        }
        Ok(())
    })
}

/// Random documents of labelled nouns with pairs drawn from them.
fn documents_with_pairs() -> impl Strategy<Value = (Vec<Document>, Vec<MatchPair>)> {
    let nouns = ["room", "beach", "food", "pool", "staff", "bar"];
    let mods = ["great2a", "clean2a", "love2v", "visit2v", "neverrecommend2v"];
    let doc = prop::collection::vec(prop::collection::vec(0..nouns.len(), 0..5), 1..4);
    let pair = (0..3usize, 0..4usize, 0..5usize, 0..mods.len());
    (prop::collection::vec(doc, 1..4), prop::collection::vec(pair, 0..12)).prop_map(move |(docs, pairs)| {
        let docs: Vec<Document> = docs
            .into_iter()
            .enumerate()
            .map(|(d, sents)| {
                let sentences = sents
                    .into_iter()
                    .map(|ns| {
                        ns.into_iter()
                            .map(|n| {
                                let mut t = Token::tagged(nouns[n], nouns[n], Pos::Noun);
                                t.label = label_for(&t);
                                t
                            })
                            .collect()
                    })
                    .collect();
                Document::new(format!("d{d}"), sentences)
            })
            .collect();
        let mut out = Vec::new();
        for (d, s, t, m) in pairs {
            let doc = &docs[d % docs.len()];
            let sent = &doc.sentences[s % doc.sentences.len()];
            if sent.is_empty() {
                continue;
            }
            out.push(MatchPair {
                modifier: mods[m].to_string(),
                noun: sent[t % sent.len()].label.clone().unwrap(),
                pattern: Pattern::AN,
                doc_id: doc.id.clone(),
                sent_index: s % doc.sentences.len(),
            });
        }
        (docs, out)
    })
}

fn nn_edges(g: &PerceptionGraph) -> BTreeSet<(String, String)> {
    g.undirected_edges().map(|(a, b, _)| (a.to_string(), b.to_string())).collect()
}

/// greedy ⊇ restricted ⊇ off on NN edges; arcs identical across modes;
/// arc weight total equals the number of surviving pairs; document order
/// does not matter.
pub fn nn_modes_nest(cases: u32) -> Result<u32, String> {
    check(cases, (documents_with_pairs(), any::<bool>(), any::<bool>()), |((docs, pairs), by_sentence, filter_on)| {
        let unit = if by_sentence { Unit::Sentence } else { Unit::Document };
        let filter = if filter_on { ConativeFilter::default() } else { ConativeFilter::disabled() };
        let build = |mode| build_graph(&pairs, &docs, mode, unit, &filter).unwrap();
        let (off, restricted, greedy) = (build(NnMode::Off), build(NnMode::Restricted), build(NnMode::Greedy));
        prop_assert!(nn_edges(&off).is_empty());
        prop_assert!(nn_edges(&restricted).is_subset(&nn_edges(&greedy)));
        let arcs = |g: &PerceptionGraph| g.directed_edges().map(|(a, b, w)| (a.to_string(), b.to_string(), w)).collect::<Vec<_>>();
        prop_assert_eq!(arcs(&off), arcs(&greedy));
        let kept = pairs.iter().filter(|p| filter.keeps(&p.modifier)).count() as u64;
        prop_assert_eq!(off.directed_edges().map(|(_, _, w)| w).sum::<u64>(), kept);
        let mut reversed = docs.clone();
        reversed.reverse();
        prop_assert_eq!(build_graph(&pairs, &reversed, NnMode::Greedy, unit, &filter).unwrap(), greedy);
        Ok(())
    })
}

pub fn random_graph_strategy(max_nodes: usize) -> impl Strategy<Value = PerceptionGraph> {
    any::<u64>().prop_map(move |seed| super::random_graph(&mut super::rng(seed), max_nodes, 4))
}

/// Partial graphs merge associatively and commutatively.
pub fn merge_associative(cases: u32) -> Result<u32, String> {
    let g = || random_graph_strategy(8);
    check(cases, (g(), g(), g()), |(a, b, c)| {
        prop_assert_eq!(a.merge(&b).merge(&c), a.merge(&b.merge(&c)));
        prop_assert_eq!(a.merge(&b), b.merge(&a));
        prop_assert_eq!(a.merge(&PerceptionGraph::new()), a.clone());
        Ok(())
    })
}

/// JSON export then import is the identity, and exports are byte-stable.
pub fn export_round_trip(cases: u32) -> Result<u32, String> {
    check(cases, random_graph_strategy(10), |g| {
        let json = export_graph(&g, ExportFormat::Json);
        prop_assert_eq!(import_json(&json.payload).unwrap(), g.clone());
        for f in ExportFormat::ALL {
            prop_assert_eq!(export_graph(&g, f), export_graph(&g, f));
        }
        Ok(())
    })
}

/// k-weight and k-core are idempotent and monotone in k.
pub fn reductions_monotone(cases: u32) -> Result<u32, String> {
    check(cases, (random_graph_strategy(12), 1..4u64, 0..4usize), |(g, kw, kc)| {
        let w = k_weight_filter(&g, kw);
        prop_assert_eq!(k_weight_filter(&w, kw), w.clone());
        let w2 = k_weight_filter(&g, kw + 1);
        prop_assert!(w2.edges().all(|e| w.edges().any(|f| f == e)));
        let c = k_core(&g, kc);
        prop_assert_eq!(k_core(&c, kc), c.clone());
        let c2 = k_core(&g, kc + 1);
        prop_assert!(c2.nodes().all(|(l, _)| c.contains(l)));
        let deg = c.distinct_degrees();
        prop_assert!(deg.values().all(|&d| d >= kc));
        Ok(())
    })
}

/// Tagging is deterministic, assigns a real tag everywhere, and lemmas are
/// stable under re-lemmatization.
pub fn tagging_stable(cases: u32) -> Result<u32, String> {
    let res = resources();
    let sentence = prop::collection::vec(word(), 0..12).prop_map(|w| w.join(" "));
    check(cases, sentence, |s| {
        let doc = Document::new("d", vec![tokenize(&s)]);
        let a = keypartx::tag::tag_tokens(&doc, &res.tagger, &res.lemmatizer);
        let b = keypartx::tag::tag_tokens(&doc, &res.tagger, &res.lemmatizer);
        prop_assert_eq!(&a, &b);
        for t in a.tokens() {
            prop_assert!(t.pos != Pos::Unset);
            prop_assert!(!t.is_copular || t.pos == Pos::Verb);
            prop_assert_eq!(&res.lemmatizer.lemmatize(t), t);
        }
        Ok(())
    })
}
