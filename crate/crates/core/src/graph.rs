//! The perception graph: typed nodes, adjective/verb → noun arcs and
//! optional noun ↔ noun co-occurrence edges.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::compound::DEFAULT_NEGATIONS;
use crate::error::{Error, Result};
use crate::matching::{label_for, MatchPair};
use crate::token::{Document, Pos};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Adj,
    Verb,
    Noun,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Adj => "adj",
            NodeKind::Verb => "verb",
            NodeKind::Noun => "noun",
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            NodeKind::Adj => "2a",
            NodeKind::Verb => "2v",
            NodeKind::Noun => "2n",
        }
    }

    /// Kind implied by a label's suffix.
    pub fn of_label(label: &str) -> Option<NodeKind> {
        let kind = [NodeKind::Adj, NodeKind::Verb, NodeKind::Noun]
            .into_iter()
            .find(|k| label.ends_with(k.suffix()))?;
        (label.len() > 2).then_some(kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    #[serde(rename = "a2n")]
    A2N,
    #[serde(rename = "v2n")]
    V2N,
    #[serde(rename = "nn")]
    NN,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::A2N => "a2n",
            EdgeKind::V2N => "v2n",
            EdgeKind::NN => "nn",
        }
    }
}

/// One edge as seen from outside. NN edges have `src < dst`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge<'a> {
    pub src: &'a str,
    pub dst: &'a str,
    pub kind: EdgeKind,
    pub weight: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PerceptionGraph {
    nodes: BTreeMap<String, NodeKind>,
    directed: BTreeMap<(String, String), u64>,
    undirected: BTreeMap<(String, String), u64>,
}

impl PerceptionGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, label: &str) -> Result<NodeKind> {
        let kind = NodeKind::of_label(label)
            .ok_or_else(|| Error::Argument(format!("node label {label:?} lacks a 2a/2v/2n suffix")))?;
        self.nodes.entry(label.to_string()).or_insert(kind);
        Ok(kind)
    }

    /// Adds `weight` to the arc `src → dst`.
    pub fn add_directed(&mut self, src: &str, dst: &str, weight: u64) -> Result<()> {
        check_weight(weight)?;
        let (s, d) = (kind_of(src)?, kind_of(dst)?);
        if s == NodeKind::Noun || d != NodeKind::Noun {
            return Err(Error::Argument(format!(
                "directed edges run adjective/verb → noun, got {src} → {dst}"
            )));
        }
        self.add_node(src)?;
        self.add_node(dst)?;
        *self.directed.entry((src.into(), dst.into())).or_insert(0) += weight;
        Ok(())
    }

    /// Adds `weight` to the noun–noun edge `{u, v}`.
    pub fn add_undirected(&mut self, u: &str, v: &str, weight: u64) -> Result<()> {
        check_weight(weight)?;
        if u == v {
            return Err(Error::Argument(format!("self-loop on {u}")));
        }
        if kind_of(u)? != NodeKind::Noun || kind_of(v)? != NodeKind::Noun {
            return Err(Error::Argument(format!("undirected edges join nouns, got {u} -- {v}")));
        }
        self.add_node(u)?;
        self.add_node(v)?;
        *self.undirected.entry(ordered(u, v)).or_insert(0) += weight;
        Ok(())
    }

    pub fn nodes(&self) -> impl Iterator<Item = (&str, NodeKind)> {
        self.nodes.iter().map(|(l, k)| (l.as_str(), *k))
    }

    pub fn kind(&self, label: &str) -> Option<NodeKind> {
        self.nodes.get(label).copied()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.nodes.contains_key(label)
    }

    /// Directed edges first, then NN edges, each sorted by endpoints.
    pub fn edges(&self) -> impl Iterator<Item = Edge<'_>> {
        let directed = self.directed.iter().map(|((s, d), &w)| Edge {
            src: s,
            dst: d,
            kind: if self.nodes[s] == NodeKind::Adj { EdgeKind::A2N } else { EdgeKind::V2N },
            weight: w,
        });
        let undirected = self.undirected.iter().map(|((s, d), &w)| Edge {
            src: s,
            dst: d,
            kind: EdgeKind::NN,
            weight: w,
        });
        directed.chain(undirected)
    }

    pub fn directed_edges(&self) -> impl Iterator<Item = (&str, &str, u64)> {
        self.directed.iter().map(|((s, d), &w)| (s.as_str(), d.as_str(), w))
    }

    pub fn undirected_edges(&self) -> impl Iterator<Item = (&str, &str, u64)> {
        self.undirected.iter().map(|((s, d), &w)| (s.as_str(), d.as_str(), w))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.directed.len() + self.undirected.len()
    }

    pub fn directed_count(&self) -> usize {
        self.directed.len()
    }

    pub fn undirected_count(&self) -> usize {
        self.undirected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Sum of all edge weights, directed plus undirected.
    pub fn total_weight(&self) -> u64 {
        self.directed.values().chain(self.undirected.values()).sum()
    }

    pub fn count_kind(&self, kind: NodeKind) -> usize {
        self.nodes.values().filter(|&&k| k == kind).count()
    }

    /// Number of distinct incident edges per node, direction ignored.
    pub fn distinct_degrees(&self) -> HashMap<&str, usize> {
        let mut deg: HashMap<&str, usize> = self.nodes.keys().map(|l| (l.as_str(), 0)).collect();
        for e in self.edges() {
            *deg.get_mut(e.src).unwrap() += 1;
            *deg.get_mut(e.dst).unwrap() += 1;
        }
        deg
    }

    pub fn retain_edges(&mut self, mut keep: impl FnMut(&Edge<'_>) -> bool) {
        let nodes = &self.nodes;
        self.directed.retain(|(s, d), w| {
            let kind = if nodes[s] == NodeKind::Adj { EdgeKind::A2N } else { EdgeKind::V2N };
            keep(&Edge { src: s, dst: d, kind, weight: *w })
        });
        self.undirected
            .retain(|(s, d), w| keep(&Edge { src: s, dst: d, kind: EdgeKind::NN, weight: *w }));
    }

    /// Keeps only the listed nodes and the edges among them.
    pub fn retain_nodes(&mut self, keep: impl Fn(&str) -> bool) {
        self.nodes.retain(|l, _| keep(l));
        let nodes = &self.nodes;
        self.directed.retain(|(s, d), _| nodes.contains_key(s) && nodes.contains_key(d));
        self.undirected.retain(|(s, d), _| nodes.contains_key(s) && nodes.contains_key(d));
    }

    /// Weight-additive union. Associative and commutative.
    pub fn merge(&self, other: &PerceptionGraph) -> PerceptionGraph {
        let mut out = self.clone();
        out.merge_in(other);
        out
    }

    pub fn merge_in(&mut self, other: &PerceptionGraph) {
        for (l, k) in &other.nodes {
            self.nodes.entry(l.clone()).or_insert(*k);
        }
        for (key, w) in &other.directed {
            *self.directed.entry(key.clone()).or_insert(0) += w;
        }
        for (key, w) in &other.undirected {
            *self.undirected.entry(key.clone()).or_insert(0) += w;
        }
    }
}

fn check_weight(weight: u64) -> Result<()> {
    if weight == 0 {
        return Err(Error::Argument("edge weights are positive".into()));
    }
    Ok(())
}

fn kind_of(label: &str) -> Result<NodeKind> {
    NodeKind::of_label(label).ok_or_else(|| Error::Argument(format!("node label {label:?} lacks a 2a/2v/2n suffix")))
}

fn ordered(u: &str, v: &str) -> (String, String) {
    if u < v {
        (u.into(), v.into())
    } else {
        (v.into(), u.into())
    }
}

pub const DEFAULT_CONATIVE: &[&str] = &[
    "enjoy", "love", "like", "adore", "avoid", "revisit", "desire", "dislike", "hate", "wish",
    "hope", "appreciate", "value", "recommend", "unrecommend", "astonish", "impress", "please",
    "satisfy", "unsatisfy", "surprise", "mean", "mind",
];

/// Verb whitelist. Membership is tested on the lemma with any negation
/// prefix removed, so `neverrecommend` passes via `recommend`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConativeFilter {
    pub verbs: BTreeSet<String>,
    pub enabled: bool,
    pub negation_prefixes: Vec<String>,
}

impl Default for ConativeFilter {
    fn default() -> Self {
        ConativeFilter::new(DEFAULT_CONATIVE.iter().map(|s| s.to_string()), true)
    }
}

impl ConativeFilter {
    pub fn new(verbs: impl IntoIterator<Item = String>, enabled: bool) -> Self {
        let mut negation_prefixes: Vec<String> = DEFAULT_NEGATIONS.iter().map(|s| s.to_string()).collect();
        negation_prefixes.push("un".into());
        ConativeFilter {
            verbs: verbs.into_iter().collect(),
            enabled,
            negation_prefixes,
        }
    }

    pub fn disabled() -> Self {
        ConativeFilter {
            enabled: false,
            ..Default::default()
        }
    }

    pub fn with_negations(mut self, negations: impl IntoIterator<Item = String>) -> Self {
        self.negation_prefixes = negations.into_iter().collect();
        self.negation_prefixes.push("un".into());
        self
    }

    /// Whether a modifier label survives. Adjectives always do.
    pub fn keeps(&self, modifier: &str) -> bool {
        if !self.enabled {
            return true;
        }
        let Some(lemma) = modifier.strip_suffix("2v") else {
            return true;
        };
        self.verbs.contains(lemma)
            || self.negation_prefixes.iter().any(|p| {
                lemma
                    .strip_prefix(p.as_str())
                    .is_some_and(|rest| !rest.is_empty() && self.verbs.contains(rest))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NnMode {
    Off,
    Restricted,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    Sentence,
    Document,
}

macro_rules! str_enum {
    ($ty:ident { $($variant:ident => $name:literal),* }) => {
        impl $ty {
            pub fn as_str(self) -> &'static str {
                match self { $($ty::$variant => $name),* }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($ty::$variant),)*
                    _ => Err(Error::Argument(format!(
                        concat!("unknown ", stringify!($ty), " {:?}; expected one of: ", $($name, " "),*),
                        s
                    ))),
                }
            }
        }
    };
}

str_enum!(NnMode { Off => "off", Restricted => "restricted", Greedy => "greedy" });
str_enum!(Unit { Sentence => "sentence", Document => "document" });

/// Builds the graph of all documents. Equivalent to merging the per-document
/// graphs from [`build_document_graph`].
pub fn build_graph(
    pairs: &[MatchPair],
    docs: &[Document],
    nn_mode: NnMode,
    unit: Unit,
    filter: &ConativeFilter,
) -> Result<PerceptionGraph> {
    let ids: HashSet<&str> = docs.iter().map(|d| d.id.as_str()).collect();
    let mut by_doc: HashMap<&str, Vec<&MatchPair>> = HashMap::new();
    for p in pairs {
        if !ids.contains(p.doc_id.as_str()) {
            return Err(Error::Argument(format!("match pair refers to unknown document {:?}", p.doc_id)));
        }
        by_doc.entry(p.doc_id.as_str()).or_default().push(p);
    }
    let mut g = PerceptionGraph::new();
    for doc in docs {
        let own = by_doc.remove(doc.id.as_str()).unwrap_or_default();
        g.merge_in(&build_document_graph(&own, doc, nn_mode, unit, filter)?);
    }
    Ok(g)
}

/// Partial graph of one document. `pairs` must all belong to `doc`.
pub fn build_document_graph(
    pairs: &[&MatchPair],
    doc: &Document,
    nn_mode: NnMode,
    unit: Unit,
    filter: &ConativeFilter,
) -> Result<PerceptionGraph> {
    let mut g = PerceptionGraph::new();
    let kept: Vec<&MatchPair> = pairs.iter().copied().filter(|p| filter.keeps(&p.modifier)).collect();
    for p in &kept {
        if p.doc_id != doc.id {
            return Err(Error::Argument(format!(
                "match pair from {:?} passed with document {:?}",
                p.doc_id, doc.id
            )));
        }
        g.add_directed(&p.modifier, &p.noun, 1)?;
    }
    if nn_mode == NnMode::Off {
        return Ok(g);
    }
    let units: Vec<(Option<usize>, Vec<&crate::token::Token>)> = match unit {
        Unit::Document => vec![(None, doc.tokens().collect())],
        Unit::Sentence => doc
            .sentences
            .iter()
            .enumerate()
            .map(|(s, sent)| (Some(s), sent.iter().collect()))
            .collect(),
    };
    for (sent, tokens) in units {
        let mut nouns: BTreeSet<String> = tokens
            .iter()
            .filter(|t| t.pos == Pos::Noun)
            .filter_map(|t| t.label.clone().or_else(|| label_for(t)))
            .filter(|l| NodeKind::of_label(l) == Some(NodeKind::Noun))
            .collect();
        if nn_mode == NnMode::Restricted {
            let paired: HashSet<&str> = kept
                .iter()
                .filter(|p| sent.is_none_or(|s| p.sent_index == s))
                .map(|p| p.noun.as_str())
                .collect();
            nouns.retain(|n| paired.contains(n.as_str()));
        }
        let nouns: Vec<&String> = nouns.iter().collect();
        for (i, u) in nouns.iter().enumerate() {
            for v in &nouns[i + 1..] {
                g.add_undirected(u, v, 1)?;
            }
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeMode {
    #[default]
    Weighted,
    Distinct,
}

str_enum!(DegreeMode { Weighted => "weighted", Distinct => "distinct" });

/// One row of the semantic-relations table. Labels are shown without their
/// kind suffix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub noun: String,
    pub label: String,
    pub degree: u64,
    pub adjectives: Vec<(String, u64)>,
    pub verbs: Vec<(String, u64)>,
    pub nouns: Vec<(String, u64)>,
}

pub fn strip_suffix(label: &str) -> &str {
    match NodeKind::of_label(label) {
        Some(_) => &label[..label.len() - 2],
        None => label,
    }
}

/// Nouns ranked by degree (descending, then label), each with its
/// adjectives, verbs and noun neighbours sorted by weight then label.
pub fn semantic_relations_report(g: &PerceptionGraph, top_n: usize, mode: DegreeMode) -> Result<Vec<ReportRow>> {
    if top_n == 0 {
        return Err(Error::Argument("top_n must be at least 1".into()));
    }
    let mut rows = all_rows(g, mode);
    rows.truncate(top_n);
    Ok(rows)
}

/// The report row for a single noun label, if it is in the graph.
pub fn report_row(g: &PerceptionGraph, noun: &str, mode: DegreeMode) -> Option<ReportRow> {
    all_rows(g, mode).into_iter().find(|r| r.label == noun)
}

fn all_rows(g: &PerceptionGraph, mode: DegreeMode) -> Vec<ReportRow> {
    let mut rows: BTreeMap<&str, ReportRow> = g
        .nodes()
        .filter(|(_, k)| *k == NodeKind::Noun)
        .map(|(l, _)| {
            (
                l,
                ReportRow {
                    noun: strip_suffix(l).to_string(),
                    label: l.to_string(),
                    degree: 0,
                    adjectives: Vec::new(),
                    verbs: Vec::new(),
                    nouns: Vec::new(),
                },
            )
        })
        .collect();
    let step = |w: u64| if mode == DegreeMode::Weighted { w } else { 1 };
    for e in g.edges() {
        match e.kind {
            EdgeKind::A2N | EdgeKind::V2N => {
                let row = rows.get_mut(e.dst).unwrap();
                row.degree += step(e.weight);
                let list = if e.kind == EdgeKind::A2N { &mut row.adjectives } else { &mut row.verbs };
                list.push((strip_suffix(e.src).to_string(), e.weight));
            }
            EdgeKind::NN => {
                for (a, b) in [(e.src, e.dst), (e.dst, e.src)] {
                    let row = rows.get_mut(a).unwrap();
                    row.degree += step(e.weight);
                    row.nouns.push((strip_suffix(b).to_string(), e.weight));
                }
            }
        }
    }
    let mut rows: Vec<ReportRow> = rows.into_values().collect();
    for row in &mut rows {
        for list in [&mut row.adjectives, &mut row.verbs, &mut row.nouns] {
            list.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        }
    }
    rows.sort_by(|a, b| b.degree.cmp(&a.degree).then_with(|| a.label.cmp(&b.label)));
    rows
}

fn join_weighted(list: &[(String, u64)]) -> String {
    list.iter().map(|(l, w)| format!("{l}({w})")).collect::<Vec<_>>().join("; ")
}

/// CSV with columns noun, degree, adjectives, verbs, nouns.
pub fn report_csv(rows: &[ReportRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Argument(format!("writing report: {e}"));
    w.write_record(["noun", "degree", "adjectives", "verbs", "nouns"]).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.noun.clone(),
            r.degree.to_string(),
            join_weighted(&r.adjectives),
            join_weighted(&r.verbs),
            join_weighted(&r.nouns),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Argument(format!("writing report: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Aligned plain-text table.
pub fn report_text(rows: &[ReportRow]) -> String {
    let header = ["noun", "degree", "adjectives", "verbs", "nouns"].map(String::from);
    let body: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                r.noun.clone(),
                r.degree.to_string(),
                join_weighted(&r.adjectives),
                join_weighted(&r.verbs),
                join_weighted(&r.nouns),
            ]
        })
        .collect();
    let mut widths = header.clone().map(|h| h.chars().count());
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&body) {
        let cells: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}
