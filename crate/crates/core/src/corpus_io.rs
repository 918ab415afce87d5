//! Corpus ingestion (CSV, CoNLL-U) and graph export (JSON, GraphML, DOT).

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, NodeKind, PerceptionGraph};
use crate::token::{Document, Pos, Token};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDocument {
    pub id: String,
    pub text: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCorpus {
    pub documents: Vec<RawDocument>,
}

impl RawCorpus {
    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }
}

/// Which CSV column holds the text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TextColumn {
    Name(String),
    Index(usize),
}

impl FromStr for TextColumn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Argument("text column is empty".into()));
        }
        Ok(match s.parse::<usize>() {
            Ok(i) => TextColumn::Index(i),
            Err(_) => TextColumn::Name(s.to_string()),
        })
    }
}

pub fn load_csv(path: &Path, text_column: &TextColumn) -> Result<RawCorpus> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&bytes, text_column)
}

/// One document per data row. The `id` column, when present, supplies
/// document ids; otherwise the 0-based row index does.
pub fn parse_csv(bytes: &[u8], text_column: &TextColumn) -> Result<RawCorpus> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(bytes);
    let headers = reader.headers().map_err(|e| csv_error(e, 0))?.clone();
    let available = || headers.iter().map(|h| format!("{h:?}")).collect::<Vec<_>>().join(", ");
    let text_idx = match text_column {
        TextColumn::Name(name) => headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Schema(format!("no column {name:?}; available columns: {}", available())))?,
        TextColumn::Index(i) if *i < headers.len() => *i,
        TextColumn::Index(i) => {
            return Err(Error::Schema(format!(
                "column index {i} out of range; available columns: {}",
                available()
            )))
        }
    };
    let id_idx = headers.iter().position(|h| h.trim().eq_ignore_ascii_case("id"));
    let mut documents = Vec::new();
    let mut seen = HashSet::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_error(e, row as u64 + 1))?;
        let id = match id_idx {
            Some(i) => record.get(i).unwrap_or_default().trim().to_string(),
            None => row.to_string(),
        };
        if id.is_empty() {
            return Err(Error::Schema(format!("row {}: empty document id", row + 1)));
        }
        if !seen.insert(id.clone()) {
            return Err(Error::Schema(format!("row {}: duplicate document id {id:?}", row + 1)));
        }
        let text = record.get(text_idx).unwrap_or_default().to_string();
        documents.push(RawDocument { id, text });
    }
    Ok(RawCorpus { documents })
}

fn csv_error(e: csv::Error, row: u64) -> Error {
    let row = match e.position() {
        Some(p) if p.record() > 0 => p.record(),
        _ => row,
    };
    Error::CsvParse {
        row,
        message: e.to_string(),
    }
}

/// Writes `id,text` rows that [`load_csv`] reads back unchanged.
pub fn save_csv(corpus: &RawCorpus, path: &Path) -> Result<()> {
    std::fs::write(path, corpus_to_csv(corpus)?).map_err(|e| Error::io(path, e))
}

pub fn corpus_to_csv(corpus: &RawCorpus) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::CsvParse {
        row: 0,
        message: e.to_string(),
    };
    w.write_record(["id", "text"]).map_err(err)?;
    for d in &corpus.documents {
        w.write_record([&d.id, &d.text]).map_err(err)?;
    }
    w.into_inner().map_err(|e| Error::CsvParse {
        row: 0,
        message: e.to_string(),
    })
}

/// UPOS → collapsed tag. Unknown tags become OTHER.
pub fn map_upos(upos: &str) -> Pos {
    match upos {
        "ADJ" => Pos::Adj,
        "VERB" | "AUX" => Pos::Verb,
        "NOUN" | "PROPN" => Pos::Noun,
        "PRON" => Pos::Pron,
        _ => Pos::Other,
    }
}

pub fn load_conllu(path: &Path) -> Result<Vec<Document>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_conllu(&text)
}

/// Documents start at `# newdoc id = ...`; text before any marker forms a
/// document with id `0`. Multiword ranges and empty nodes are skipped.
pub fn parse_conllu(text: &str) -> Result<Vec<Document>> {
    let mut docs: Vec<Document> = Vec::new();
    let mut sentence: Vec<Token> = Vec::new();
    fn flush(docs: &mut Vec<Document>, sentence: &mut Vec<Token>) {
        if sentence.is_empty() {
            return;
        }
        if docs.is_empty() {
            docs.push(pretagged("0"));
        }
        docs.last_mut().unwrap().sentences.push(std::mem::take(sentence));
    }
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            flush(&mut docs, &mut sentence);
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(id) = comment.trim().strip_prefix("newdoc") {
                flush(&mut docs, &mut sentence);
                let id = id.trim().strip_prefix("id").map(str::trim).and_then(|r| r.strip_prefix('='));
                let id = id.map(str::trim).filter(|s| !s.is_empty()).map(str::to_string);
                let id = id.unwrap_or_else(|| docs.len().to_string());
                docs.push(pretagged(&id));
            }
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() < 4 {
            return Err(Error::Conllu {
                line: line_no,
                message: format!("expected at least 4 tab-separated columns, found {}", cols.len()),
            });
        }
        let id = cols[0];
        if id.contains('-') || id.contains('.') {
            continue;
        }
        if id.parse::<usize>().is_err() {
            return Err(Error::Conllu {
                line: line_no,
                message: format!("token id {id:?} is not a number"),
            });
        }
        let form = cols[1];
        if form.is_empty() || form.chars().any(char::is_whitespace) {
            return Err(Error::Conllu {
                line: line_no,
                message: format!("bad FORM {form:?}"),
            });
        }
        let lemma = match cols[2] {
            "_" | "" => form.to_lowercase(),
            l => l.to_lowercase(),
        };
        sentence.push(Token::tagged(form, &lemma, map_upos(cols[3])));
    }
    flush(&mut docs, &mut sentence);
    let mut seen = HashSet::new();
    for d in &mut docs {
        if !seen.insert(d.id.clone()) {
            return Err(Error::Schema(format!("duplicate document id {:?}", d.id)));
        }
        d.reindex();
    }
    Ok(docs)
}

fn pretagged(id: &str) -> Document {
    let mut d = Document::new(id, Vec::new());
    d.pretagged = true;
    d
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Graphml,
    Dot,
    Json,
}

impl ExportFormat {
    pub const ALL: [ExportFormat; 3] = [ExportFormat::Json, ExportFormat::Graphml, ExportFormat::Dot];

    pub fn extension(self) -> &'static str {
        match self {
            ExportFormat::Graphml => "graphml",
            ExportFormat::Dot => "dot",
            ExportFormat::Json => "json",
        }
    }
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graphml" => Ok(ExportFormat::Graphml),
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::Argument(format!("unknown export format {s:?}; expected graphml, dot or json"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphExport {
    pub format: ExportFormat,
    pub payload: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    nodes: Vec<JsonNode>,
    edges: Vec<JsonEdge>,
}

#[derive(Serialize, Deserialize)]
struct JsonNode {
    id: String,
    kind: NodeKind,
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    src: String,
    dst: String,
    kind: EdgeKind,
    weight: u64,
}

pub fn export_graph(g: &PerceptionGraph, format: ExportFormat) -> GraphExport {
    let payload = match format {
        ExportFormat::Json => to_json(g),
        ExportFormat::Graphml => to_graphml(g),
        ExportFormat::Dot => to_dot(g),
    };
    GraphExport {
        format,
        payload: payload.into_bytes(),
    }
}

fn to_json(g: &PerceptionGraph) -> String {
    let doc = JsonGraph {
        nodes: g
            .nodes()
            .map(|(l, k)| JsonNode {
                id: l.to_string(),
                kind: k,
            })
            .collect(),
        edges: g
            .edges()
            .map(|e| JsonEdge {
                src: e.src.to_string(),
                dst: e.dst.to_string(),
                kind: e.kind,
                weight: e.weight,
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("graph JSON always serializes")
}

/// Inverse of the JSON export. Kinds must agree with the label suffixes.
pub fn import_json(bytes: &[u8]) -> Result<PerceptionGraph> {
    let doc: JsonGraph = serde_json::from_slice(bytes)?;
    let mut g = PerceptionGraph::new();
    for n in &doc.nodes {
        let kind = g.add_node(&n.id)?;
        if kind != n.kind {
            return Err(Error::Schema(format!("node {} declared {:?} but its suffix says {:?}", n.id, n.kind, kind)));
        }
    }
    for e in &doc.edges {
        match e.kind {
            EdgeKind::NN => g.add_undirected(&e.src, &e.dst, e.weight)?,
            EdgeKind::A2N | EdgeKind::V2N => {
                let expected = if e.kind == EdgeKind::A2N { NodeKind::Adj } else { NodeKind::Verb };
                if NodeKind::of_label(&e.src) != Some(expected) {
                    return Err(Error::Schema(format!("edge {} → {} is not {}", e.src, e.dst, e.kind.as_str())));
                }
                g.add_directed(&e.src, &e.dst, e.weight)?
            }
        }
    }
    Ok(g)
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn to_graphml(g: &PerceptionGraph) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    out.push_str("  <key id=\"nkind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n");
    out.push_str("  <key id=\"ekind\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n");
    out.push_str("  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n");
    out.push_str("  <graph id=\"G\" edgedefault=\"directed\">\n");
    for (l, k) in g.nodes() {
        let _ = writeln!(
            out,
            "    <node id=\"{}\"><data key=\"nkind\">{}</data></node>",
            xml_escape(l),
            k.as_str()
        );
    }
    for e in g.edges() {
        let directed = if e.kind == EdgeKind::NN { " directed=\"false\"" } else { "" };
        let _ = writeln!(
            out,
            "    <edge source=\"{}\" target=\"{}\"{directed}><data key=\"ekind\">{}</data><data key=\"weight\">{}</data></edge>",
            xml_escape(e.src),
            xml_escape(e.dst),
            e.kind.as_str(),
            e.weight
        );
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT forbids mixing `->` and `--` in one graph, so every edge is written
/// with `--` and adjective/verb → noun edges carry `dir=forward`.
fn to_dot(g: &PerceptionGraph) -> String {
    let mut out = String::from("graph perception {\n");
    for (l, k) in g.nodes() {
        let _ = writeln!(out, "  {} [kind={}];", dot_id(l), k.as_str());
    }
    for e in g.edges() {
        let dir = if e.kind == EdgeKind::NN { "" } else { ", dir=forward" };
        let _ = writeln!(
            out,
            "  {} -- {} [kind={}, weight={}{dir}];",
            dot_id(e.src),
            dot_id(e.dst),
            e.kind.as_str(),
            e.weight
        );
    }
    out.push_str("}\n");
    out
}

/// Writes `<dir>/<stem>.<ext>` for each format.
pub fn write_exports(g: &PerceptionGraph, dir: &Path, stem: &str, formats: &[ExportFormat]) -> Result<()> {
    for &f in formats {
        let path = dir.join(format!("{stem}.{}", f.extension()));
        std::fs::write(&path, export_graph(g, f).payload).map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}
