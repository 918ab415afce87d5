//! End-to-end runs: raw text in, graphs, partition and report out.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::community::{community_pos_census, detect_communities, CommunityCensus, Partition};
use crate::compound::{compound_negation, form_compound_nouns, resolve_coreference, CompoundRules};
use crate::corpus_io::{write_exports, ExportFormat, RawCorpus};
use crate::error::{Error, Result};
use crate::graph::{
    build_document_graph, report_csv, semantic_relations_report, ConativeFilter, DegreeMode, NnMode, NodeKind,
    PerceptionGraph, Unit,
};
use crate::matching::{map_suffixes, match_av2n, MatchPair};
use crate::normalize::{apply_correction, correction_for, segment_sentences, tokenize};
use crate::reduce::{k_core, k_weight_filter, remove_isolates, ReduceParams};
use crate::resources::Resources;
use crate::tag::{mark_auxiliaries, tag_tokens};
use crate::token::Document;

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub nn_mode: NnMode,
    pub unit: Unit,
    pub conative: ConativeFilter,
    pub compound: CompoundRules,
    pub reduce: ReduceParams,
    pub gamma: f64,
    pub seed: u64,
    /// Worker threads for the per-document stages; 0 uses all cores.
    pub workers: usize,
    pub degree_mode: DegreeMode,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            nn_mode: NnMode::Greedy,
            unit: Unit::Document,
            conative: ConativeFilter::default(),
            compound: CompoundRules::default(),
            reduce: ReduceParams::default(),
            gamma: 1.0,
            seed: 42,
            workers: 0,
            degree_mode: DegreeMode::Weighted,
        }
    }
}

impl PipelineOptions {
    pub fn validate(&self) -> Result<()> {
        if self.reduce.k_weight < 1 {
            return Err(Error::Argument("k-weight must be at least 1".into()));
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(Error::Argument(format!("gamma must be positive, got {}", self.gamma)));
        }
        Ok(())
    }
}

pub enum CorpusInput {
    Raw(RawCorpus),
    /// Already tagged and lemmatized (CoNLL-U).
    Pretagged(Vec<Document>),
}

/// Segments, tokenizes and spell-corrects every document. Corrections are
/// computed once per distinct unknown word.
pub fn normalize_corpus(corpus: &RawCorpus, res: &Resources) -> Vec<Document> {
    let docs: Vec<Document> = corpus
        .documents
        .par_iter()
        .map(|d| {
            let sentences = segment_sentences(&d.text).iter().map(|s| tokenize(s)).collect();
            Document::new(d.id.clone(), sentences)
        })
        .collect();
    let unknown: BTreeSet<&str> = docs
        .iter()
        .flat_map(Document::tokens)
        .filter(|t| !res.lexicon.contains(&t.lower))
        .map(|t| t.lower.as_str())
        .collect();
    let corrections: HashMap<String, String> = docs
        .iter()
        .flat_map(Document::tokens)
        .filter(|t| unknown.contains(t.lower.as_str()))
        .map(|t| (t.lower.clone(), t))
        .collect::<BTreeMap<_, _>>()
        .into_par_iter()
        .filter_map(|(lower, t)| correction_for(t, &res.lexicon).map(|c| (lower, c)))
        .collect();
    docs.into_iter()
        .map(|mut d| {
            for tok in d.sentences.iter_mut().flatten() {
                if let Some(word) = corrections.get(&tok.lower) {
                    *tok = apply_correction(tok, word);
                }
            }
            d
        })
        .collect()
}

/// Tagging (unless pre-tagged), compounding, coreference, negation and
/// suffix labels for one document.
pub fn prepare_document(doc: &Document, res: &Resources, rules: &CompoundRules) -> Document {
    let tagged = if doc.pretagged {
        let mut d = doc.clone();
        mark_auxiliaries(&mut d, &res.tagger);
        d
    } else {
        tag_tokens(doc, &res.tagger, &res.lemmatizer)
    };
    let compounded = form_compound_nouns(&tagged, rules);
    let resolved = resolve_coreference(&compounded);
    map_suffixes(&compound_negation(&resolved, rules))
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub documents: Vec<Document>,
    pub pairs: Vec<MatchPair>,
    pub graph: PerceptionGraph,
}

/// Runs the language stages and builds the full graph.
pub fn analyze(input: &CorpusInput, res: &Resources, opts: &PipelineOptions) -> Result<Analysis> {
    opts.validate()?;
    with_workers(opts.workers, || analyze_inner(input, res, opts))?
}

fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Argument(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(f))
}

fn analyze_inner(input: &CorpusInput, res: &Resources, opts: &PipelineOptions) -> Result<Analysis> {
    let docs = match input {
        CorpusInput::Raw(corpus) => normalize_corpus(corpus, res),
        CorpusInput::Pretagged(docs) => docs.clone(),
    };
    let mut seen = BTreeSet::new();
    for d in &docs {
        if !seen.insert(d.id.as_str()) {
            return Err(Error::Stage {
                stage: "ingest",
                doc_id: Some(d.id.clone()),
                message: "duplicate document id".into(),
            });
        }
    }
    let per_doc: Vec<Result<(Document, Vec<MatchPair>, PerceptionGraph)>> = docs
        .par_iter()
        .map(|d| {
            let doc = prepare_document(d, res, &opts.compound);
            let pairs = match_av2n(&doc, &res.lemmatizer);
            let refs: Vec<&MatchPair> = pairs.iter().collect();
            let g = build_document_graph(&refs, &doc, opts.nn_mode, opts.unit, &opts.conative).map_err(|e| {
                Error::Stage {
                    stage: "graph",
                    doc_id: Some(d.id.clone()),
                    message: e.to_string(),
                }
            })?;
            Ok((doc, pairs, g))
        })
        .collect();
    let mut analysis = Analysis {
        documents: Vec::with_capacity(docs.len()),
        pairs: Vec::new(),
        graph: PerceptionGraph::new(),
    };
    for item in per_doc {
        let (doc, pairs, g) = item?;
        analysis.documents.push(doc);
        analysis.pairs.extend(pairs);
        analysis.graph.merge_in(&g);
    }
    Ok(analysis)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphCounts {
    pub nodes: usize,
    pub adj: usize,
    pub verb: usize,
    pub noun: usize,
    pub edges: usize,
    pub directed: usize,
    pub undirected: usize,
}

impl GraphCounts {
    pub fn of(g: &PerceptionGraph) -> Self {
        GraphCounts {
            nodes: g.node_count(),
            adj: g.count_kind(NodeKind::Adj),
            verb: g.count_kind(NodeKind::Verb),
            noun: g.count_kind(NodeKind::Noun),
            edges: g.edge_count(),
            directed: g.directed_count(),
            undirected: g.undirected_count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageCounts {
    pub documents: usize,
    pub sentences: usize,
    pub tokens: usize,
    pub match_pairs: usize,
    pub full: GraphCounts,
    pub after_k_weight: GraphCounts,
    pub after_k_core: GraphCounts,
    pub reduced: GraphCounts,
    pub communities: Option<usize>,
    pub noun_only_communities: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub analysis: Analysis,
    pub reduced: PerceptionGraph,
    /// `None` when the reduced graph is empty.
    pub partition: Option<Partition>,
    pub census: Vec<CommunityCensus>,
    pub counts: StageCounts,
}

impl RunResult {
    pub fn full(&self) -> &PerceptionGraph {
        &self.analysis.graph
    }
}

/// Full pipeline: analysis, reduction and, when anything survives the
/// reduction, community detection.
pub fn run(input: &CorpusInput, res: &Resources, opts: &PipelineOptions) -> Result<RunResult> {
    let analysis = analyze(input, res, opts)?;
    let weighted = k_weight_filter(&analysis.graph, opts.reduce.k_weight);
    let cored = k_core(&weighted, opts.reduce.k_core);
    let reduced = remove_isolates(&cored);
    let (partition, census) = if reduced.is_empty() {
        (None, Vec::new())
    } else {
        let stage = |e: Error| Error::Stage {
            stage: "community",
            doc_id: None,
            message: e.to_string(),
        };
        let p = detect_communities(&reduced, opts.gamma, opts.seed).map_err(stage)?;
        let census = community_pos_census(&reduced, &p).map_err(stage)?;
        (Some(p), census)
    };
    let counts = StageCounts {
        documents: analysis.documents.len(),
        sentences: analysis.documents.iter().map(|d| d.sentences.len()).sum(),
        tokens: analysis.documents.iter().map(Document::token_count).sum(),
        match_pairs: analysis.pairs.len(),
        full: GraphCounts::of(&analysis.graph),
        after_k_weight: GraphCounts::of(&weighted),
        after_k_core: GraphCounts::of(&cored),
        reduced: GraphCounts::of(&reduced),
        communities: partition.as_ref().map(Partition::community_count),
        noun_only_communities: partition.as_ref().map(|_| census.iter().filter(|c| c.noun_only).count()),
    };
    Ok(RunResult {
        analysis,
        reduced,
        partition,
        census,
        counts,
    })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize)]
struct PartitionFile<'a> {
    gamma: f64,
    #[serde(rename = "Q_raw")]
    q_raw: f64,
    #[serde(rename = "Q_normalized")]
    q_normalized: f64,
    communities: Vec<CommunityEntry<'a>>,
}

#[derive(Serialize)]
struct CommunityEntry<'a> {
    id: usize,
    nodes: &'a [String],
    adj: usize,
    verb: usize,
    noun: usize,
}

pub fn partition_json(p: &Partition, census: &[CommunityCensus]) -> String {
    let file = PartitionFile {
        gamma: p.gamma,
        q_raw: p.quality,
        q_normalized: p.normalized,
        communities: census
            .iter()
            .map(|c| CommunityEntry {
                id: c.id,
                nodes: &c.nodes,
                adj: c.adj,
                verb: c.verb,
                noun: c.noun,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("partition JSON always serializes")
}

/// Files written by [`write_artifacts`], minus the manifest.
pub const PARTITION_FILE: &str = "partition.json";
pub const REPORT_FILE: &str = "report.csv";
pub const MANIFEST_FILE: &str = "run_manifest.json";

/// Writes graphs, partition (if any) and the semantic-relations report of
/// the full graph. Returns the paths written, in order.
pub fn write_artifacts(result: &RunResult, dir: &Path, formats: &[ExportFormat], mode: DegreeMode) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    for (stem, g) in [("graph_full", result.full()), ("graph_reduced", &result.reduced)] {
        write_exports(g, dir, stem, formats)?;
        written.extend(formats.iter().map(|f| format!("{stem}.{}", f.extension())));
    }
    if let Some(p) = &result.partition {
        let path = dir.join(PARTITION_FILE);
        std::fs::write(&path, partition_json(p, &result.census)).map_err(|e| Error::io(&path, e))?;
        written.push(PARTITION_FILE.into());
    }
    let nouns = result.full().count_kind(NodeKind::Noun).max(1);
    let rows = semantic_relations_report(result.full(), nouns, mode)?;
    let path = dir.join(REPORT_FILE);
    std::fs::write(&path, report_csv(&rows)?).map_err(|e| Error::io(&path, e))?;
    written.push(REPORT_FILE.into());
    Ok(written)
}
