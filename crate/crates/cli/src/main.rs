use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use keypartx::compound::CompoundRules;
use keypartx::corpus_io::{import_json, load_conllu, parse_csv, ExportFormat, TextColumn};
use keypartx::graph::{report_row, report_text, semantic_relations_report, ConativeFilter, DegreeMode, NnMode, Unit};
use keypartx::normalize::{damerau_levenshtein, Lexicon};
use keypartx::pipeline::{run, sha256_hex, write_artifacts, CorpusInput, PipelineOptions, MANIFEST_FILE};
use keypartx::reduce::ReduceParams;
use keypartx::resources::{bundled_treebank, load_word_list, Resources};
use keypartx::tag::{accuracy, parse_treebank, train_tagger, TagModel};

/// Exit status when nothing survives the reduction.
const EXIT_EMPTY_REDUCED: u8 = 3;

#[derive(Parser)]
#[command(name = "keypartx", version, about = "Perception graphs from review text")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and write graphs, partition, report and manifest.
    Run(Box<RunArgs>),
    /// Print semantic-relation rows from an exported JSON graph.
    Inspect(InspectArgs),
    /// Train a tagger model on a `word/TAG` treebank.
    TrainTagger(TrainArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Csv,
    Conllu,
}

#[derive(Clone, Copy, ValueEnum)]
enum NnArg {
    Off,
    Restricted,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitArg {
    Sentence,
    Document,
}

#[derive(Clone, Copy, ValueEnum)]
enum DegreeArg {
    Weighted,
    Distinct,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportArg {
    Json,
    Graphml,
    Dot,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: InputFormat,
    /// Column name or 0-based index holding the text (CSV only).
    #[arg(long, default_value = "text")]
    text_col: String,
    #[arg(long, value_enum, default_value = "greedy")]
    nn_mode: NnArg,
    #[arg(long, value_enum, default_value = "document")]
    unit: UnitArg,
    /// Keep every verb instead of the conative whitelist.
    #[arg(long)]
    no_conative: bool,
    /// Replacement conative verb list, one lemma per line.
    #[arg(long)]
    conative_list: Option<PathBuf>,
    #[arg(long)]
    copular_list: Option<PathBuf>,
    #[arg(long)]
    negation_list: Option<PathBuf>,
    #[arg(long)]
    nationality_list: Option<PathBuf>,
    /// Do not fuse adjacent nouns into compounds.
    #[arg(long)]
    no_noun_compounds: bool,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    k_weight: u64,
    #[arg(long, default_value_t = 2)]
    k_core: usize,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "json,graphml,dot")]
    export: Vec<ExportArg>,
    #[arg(long, default_value = "keypartx-out")]
    out_dir: PathBuf,
    /// Worker threads for per-document stages; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long)]
    tagger_model: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "weighted")]
    degree: DegreeArg,
}

#[derive(Args)]
struct InspectArgs {
    /// A `graph_*.json` file written by `run`.
    graph: PathBuf,
    /// Noun label, e.g. `room2n`.
    #[arg(long, conflicts_with = "top")]
    noun: Option<String>,
    #[arg(long, default_value_t = 10)]
    top: usize,
    #[arg(long, value_enum, default_value = "weighted")]
    degree: DegreeArg,
}

#[derive(Args)]
struct TrainArgs {
    /// Treebank file; the bundled one when omitted.
    #[arg(long)]
    treebank: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    epochs: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Fraction of sentences, taken from the end, held out for the accuracy report.
    #[arg(long, default_value_t = 0.1)]
    holdout: f64,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(&args),
        Command::Inspect(args) => cmd_inspect(&args).map(|()| ExitCode::SUCCESS),
        Command::TrainTagger(args) => cmd_train(&args).map(|()| ExitCode::SUCCESS),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn degree_mode(d: DegreeArg) -> DegreeMode {
    match d {
        DegreeArg::Weighted => DegreeMode::Weighted,
        DegreeArg::Distinct => DegreeMode::Distinct,
    }
}

fn options(args: &RunArgs) -> Result<PipelineOptions> {
    let mut conative = match &args.conative_list {
        Some(p) => ConativeFilter::new(load_word_list(p)?, !args.no_conative),
        None if args.no_conative => ConativeFilter::disabled(),
        None => ConativeFilter::default(),
    };
    let mut compound = CompoundRules {
        noun_noun_enabled: !args.no_noun_compounds,
        ..Default::default()
    };
    if let Some(p) = &args.negation_list {
        compound.negation_words = load_word_list(p)?;
        conative = conative.with_negations(compound.negation_words.iter().cloned());
    }
    if let Some(p) = &args.nationality_list {
        compound.nationalities = load_word_list(p)?;
    }
    let opts = PipelineOptions {
        nn_mode: match args.nn_mode {
            NnArg::Off => NnMode::Off,
            NnArg::Restricted => NnMode::Restricted,
            NnArg::Greedy => NnMode::Greedy,
        },
        unit: match args.unit {
            UnitArg::Sentence => Unit::Sentence,
            UnitArg::Document => Unit::Document,
        },
        conative,
        compound,
        reduce: ReduceParams {
            k_weight: args.k_weight,
            k_core: args.k_core,
        },
        gamma: args.gamma,
        seed: args.seed,
        workers: args.workers,
        degree_mode: degree_mode(args.degree),
    };
    opts.validate()?;
    Ok(opts)
}

fn resources(args: &RunArgs) -> Result<Resources> {
    let mut res = Resources::from_env().context("loading bundled data")?;
    if let Some(p) = &args.lexicon {
        res.lexicon = Lexicon::load(p)?;
    }
    if let Some(p) = &args.tagger_model {
        res.tagger = TagModel::load(p)?;
    }
    if let Some(p) = &args.copular_list {
        res.tagger.set_copular(load_word_list(p)?);
    }
    Ok(res)
}

fn cmd_run(args: &RunArgs) -> Result<ExitCode> {
    let opts = options(args)?;
    let res = resources(args)?;
    let bytes = fs::read(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let input = match args.format {
        InputFormat::Csv => {
            let column: TextColumn = args.text_col.parse()?;
            CorpusInput::Raw(parse_csv(&bytes, &column).with_context(|| format!("loading {}", args.input.display()))?)
        }
        InputFormat::Conllu => CorpusInput::Pretagged(load_conllu(&args.input)?),
    };
    let result = run(&input, &res, &opts)?;
    let formats: Vec<ExportFormat> = args
        .export
        .iter()
        .map(|e| match e {
            ExportArg::Json => ExportFormat::Json,
            ExportArg::Graphml => ExportFormat::Graphml,
            ExportArg::Dot => ExportFormat::Dot,
        })
        .collect();
    let artifacts = write_artifacts(&result, &args.out_dir, &formats, opts.degree_mode)?;
    let empty = result.partition.is_none();
    let manifest = json!({
        "tool": "keypartx",
        "version": env!("CARGO_PKG_VERSION"),
        "timestamp_unix": SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        "corpus": {
            "path": args.input.display().to_string(),
            "format": match args.format { InputFormat::Csv => "csv", InputFormat::Conllu => "conllu" },
            "sha256": sha256_hex(&bytes),
        },
        "config": {
            "text_col": args.text_col,
            "nn_mode": opts.nn_mode.as_str(),
            "unit": opts.unit.as_str(),
            "conative": opts.conative.enabled,
            "conative_verbs": opts.conative.verbs,
            "copular": res.tagger.copular,
            "negation_words": opts.compound.negation_words,
            "noun_compounds": opts.compound.noun_noun_enabled,
            "k_weight": opts.reduce.k_weight,
            "k_core": opts.reduce.k_core,
            "gamma": opts.gamma,
            "seed": opts.seed,
            "degree": opts.degree_mode.as_str(),
            "lexicon": args.lexicon.as_ref().map(|p| p.display().to_string()),
            "tagger_model": args.tagger_model.as_ref().map(|p| p.display().to_string()),
            "lexicon_words": res.lexicon.len(),
        },
        "counts": result.counts,
        "partition": result.partition.as_ref().map(|p| json!({
            "communities": p.community_count(),
            "Q_raw": p.quality,
            "Q_normalized": p.normalized,
        })),
        "status": if empty { "empty_after_reduction" } else { "ok" },
        "artifacts": artifacts,
    });
    let manifest_path = args.out_dir.join(MANIFEST_FILE);
    fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)?)
        .with_context(|| format!("writing {}", manifest_path.display()))?;

    let c = &result.counts;
    println!("documents {}  sentences {}  tokens {}  match pairs {}", c.documents, c.sentences, c.tokens, c.match_pairs);
    for (name, g) in [("full", &c.full), ("k-weight", &c.after_k_weight), ("k-core", &c.after_k_core), ("reduced", &c.reduced)] {
        println!(
            "{name:<9} nodes {} (adj {}, verb {}, noun {})  edges {} ({} directed, {} nn)",
            g.nodes, g.adj, g.verb, g.noun, g.edges, g.directed, g.undirected
        );
    }
    if let Some(p) = &result.partition {
        println!(
            "communities {} ({} noun-only)  Q {:.4}  Q/m {:.4}",
            p.community_count(),
            c.noun_only_communities.unwrap_or(0),
            p.quality,
            p.normalized
        );
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("reduced graph is empty at k-weight {} / k-core {}; partitioning skipped", opts.reduce.k_weight, opts.reduce.k_core);
        Ok(ExitCode::from(EXIT_EMPTY_REDUCED))
    }
}

fn cmd_inspect(args: &InspectArgs) -> Result<()> {
    let bytes = fs::read(&args.graph).with_context(|| format!("reading {}", args.graph.display()))?;
    let g = import_json(&bytes).with_context(|| format!("parsing {}", args.graph.display()))?;
    let mode = degree_mode(args.degree);
    let rows = match &args.noun {
        Some(noun) => match report_row(&g, noun, mode) {
            Some(row) => vec![row],
            None => bail!("no noun {noun:?} in {}; closest: {}", args.graph.display(), near_matches(&g, noun).join(", ")),
        },
        None => semantic_relations_report(&g, args.top, mode)?,
    };
    print!("{}", report_text(&rows));
    Ok(())
}

fn near_matches(g: &keypartx::PerceptionGraph, label: &str) -> Vec<String> {
    let mut nouns: Vec<(usize, &str)> = g
        .nodes()
        .filter(|(_, k)| *k == keypartx::NodeKind::Noun)
        .map(|(l, _)| (damerau_levenshtein(l, label), l))
        .collect();
    nouns.sort();
    let picked: Vec<String> = nouns.iter().take(5).map(|(_, l)| l.to_string()).collect();
    if picked.is_empty() {
        vec!["(graph has no nouns)".into()]
    } else {
        picked
    }
}

fn cmd_train(args: &TrainArgs) -> Result<()> {
    if !(0.0..1.0).contains(&args.holdout) {
        bail!("--holdout must be in [0, 1)");
    }
    let text = match &args.treebank {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => bundled_treebank().to_string(),
    };
    let corpus = parse_treebank(&text)?;
    let held = (corpus.len() as f64 * args.holdout).floor() as usize;
    if held > 0 {
        let split = corpus.len() - held;
        let model = train_tagger(&corpus[..split], args.epochs, args.seed)?;
        println!("held-out accuracy {:.4} on {held} sentences", accuracy(&model, &corpus[split..]));
    }
    let model = train_tagger(&corpus, args.epochs, args.seed)?;
    write_model(&model, &args.out)?;
    println!("trained on {} sentences, {} epochs → {}", corpus.len(), args.epochs, args.out.display());
    Ok(())
}

fn write_model(model: &TagModel, path: &Path) -> Result<()> {
    fs::write(path, model.to_json()?).with_context(|| format!("writing {}", path.display()))
}
