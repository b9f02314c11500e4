//! `credlens` command-line interface.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
//! Data goes to `--output` or stdout; diagnostics go to stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use credlens::analysis::{analyze, AnalysisOptions};
use credlens::corpus::{corpus_stats, deduplicate, load_corpus, save_corpus, Corpus, InputFormat};
use credlens::ml::cv::{cross_validate_with_content, CvOptions, EvalReport};
use credlens::ml::features::{content_rows, featurize_corpus, FeatureConfig};
use credlens::ml::models::{ModelKind, ModelSpec};
use credlens::report::{parse_document, render, Document, Format};
use credlens::resources::Resources;
use credlens::sourcefeat::{neighbor_type_profile, write_profile_csv, DEFAULT_MIN_ARTICLES};
use credlens::synth::{synthetic_corpus, SynthConfig};
use credlens::{Dataset, Execution};

#[derive(Parser, Debug)]
#[command(
    name = "credlens",
    version,
    about = "Source and content credibility analysis of news corpora"
)]
struct Cli {
    /// Directory with resource overrides (lexicon, dictionary, word lists,
    /// abbreviations); missing files fall back to the bundled copies.
    #[arg(long, global = true, env = "CREDLENS_RESOURCES")]
    resources: Option<PathBuf>,

    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load raw data, drop duplicate bodies and write a corpus file.
    Ingest(IngestArgs),
    /// Story counts by dataset, label and URL scheme.
    Stats(StatsArgs),
    /// Fake-vs-true comparisons, author analysis and coauthorship exports.
    Analyze(AnalyzeArgs),
    /// Write the feature matrix as CSV.
    Featurize(FeaturizeArgs),
    /// Cross-validate classifiers over feature configurations.
    Evaluate(EvaluateArgs),
    /// Render a JSON analysis or evaluation document.
    Report(ReportArgs),
    /// Write a seeded synthetic corpus.
    Synth(SynthArgs),
}

#[derive(Args, Debug)]
struct CorpusArgs {
    /// Corpus file written by `ingest`.
    #[arg(long)]
    corpus: PathBuf,
    /// Keep only stories from this dataset.
    #[arg(long)]
    dataset: Option<String>,
}

#[derive(Args, Debug)]
struct IngestArgs {
    /// Input files or directories.
    #[arg(long = "input", required = true, num_args = 1..)]
    inputs: Vec<PathBuf>,
    /// json-dir, csv or corpus.
    #[arg(long = "input-format", default_value = "json-dir")]
    input_format: String,
    #[arg(long)]
    dataset: Option<String>,
    #[arg(long)]
    output: PathBuf,
    /// Keep duplicate bodies.
    #[arg(long)]
    no_dedup: bool,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Directory for coauthorship edge, node and neighbor-profile CSVs.
    #[arg(long)]
    graph_dir: Option<PathBuf>,
    /// Articles an author needs to be typed.
    #[arg(long, default_value_t = DEFAULT_MIN_ARTICLES)]
    min_articles: usize,
}

#[derive(Args, Debug)]
struct FeaturizeArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Preset (all26, source3, content23, selected13) or comma-separated names.
    #[arg(long, default_value = "all26")]
    features: String,
    /// CSV path; metadata goes to `<output>.meta.json`.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Comma-separated classifiers, or `all`.
    #[arg(long, default_value = "all")]
    models: String,
    /// Feature configurations separated by `;`, each a preset or a
    /// comma-separated name list.
    #[arg(long, default_value = "all26")]
    features: String,
    #[arg(long, default_value_t = credlens::ml::cv::DEFAULT_K)]
    k: usize,
    #[arg(long, default_value_t = credlens::ml::cv::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// JSON document from `analyze` or `evaluate`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "markdown")]
    format: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SynthArgs {
    #[arg(long, default_value_t = 60)]
    per_class: usize,
    #[arg(long, default_value_t = credlens::ml::cv::DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    output: PathBuf,
}

/// Failures before any work starts are usage errors (exit 2); the rest are
/// runtime failures (exit 1).
enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Runtime(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn usage<T>(r: anyhow::Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let resources = cli.resources.as_deref();
    match cli.command {
        Command::Ingest(a) => ingest(a),
        Command::Stats(a) => stats(a),
        Command::Analyze(a) => analyze_cmd(a, resources, exec),
        Command::Featurize(a) => featurize(a, resources, exec),
        Command::Evaluate(a) => evaluate(a, resources, exec),
        Command::Report(a) => report(a),
        Command::Synth(a) => synth(a),
    }
}

fn existing(path: &Path, what: &str) -> anyhow::Result<()> {
    if !path.exists() {
        return Err(anyhow!("{what} {} does not exist", path.display()));
    }
    Ok(())
}

/// An output path is writable when its parent directory exists.
fn writable(path: &Path) -> anyhow::Result<()> {
    let parent = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(dir) = parent {
        if !dir.is_dir() {
            return Err(anyhow!("output directory {} does not exist", dir.display()));
        }
    }
    if path.is_dir() {
        return Err(anyhow!("output {} is a directory", path.display()));
    }
    Ok(())
}

fn writable_opt(path: &Option<PathBuf>) -> anyhow::Result<()> {
    path.as_deref().map_or(Ok(()), writable)
}

fn parse_format(s: &str) -> anyhow::Result<Format> {
    s.parse::<Format>().map_err(Into::into)
}

fn parse_dataset(s: &Option<String>) -> anyhow::Result<Option<Dataset>> {
    s.as_deref()
        .map(|d| d.parse::<Dataset>().map_err(anyhow::Error::from))
        .transpose()
}

fn load_resources(dir: Option<&Path>) -> anyhow::Result<Resources> {
    match dir {
        Some(d) => Resources::from_dir(d)
            .with_context(|| format!("loading resources from {}", d.display())),
        None => Ok(Resources::builtin().clone()),
    }
}

fn read_corpus(args: &CorpusArgs, dataset: Option<Dataset>) -> anyhow::Result<Corpus> {
    let corpus = load_corpus(&[&args.corpus], InputFormat::Corpus)
        .with_context(|| format!("reading corpus {}", args.corpus.display()))?;
    Ok(match dataset {
        Some(d) => corpus.filter(|a| a.dataset == d),
        None => corpus,
    })
}

fn emit(output: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn ingest(a: IngestArgs) -> Outcome {
    let format: InputFormat = usage(a.input_format.parse().map_err(anyhow::Error::from))?;
    let dataset = usage(parse_dataset(&a.dataset))?;
    usage(a.inputs.iter().try_for_each(|p| existing(p, "input")))?;
    usage(writable(&a.output))?;

    let corpus = load_corpus(&a.inputs, format)?;
    let corpus = match dataset {
        Some(d) => corpus.filter(|x| x.dataset == d),
        None => corpus,
    };
    let corpus = if a.no_dedup {
        corpus
    } else {
        let (kept, removed) = deduplicate(&corpus);
        for r in &removed {
            eprintln!("duplicate body: dropped {} (kept {})", r.dropped, r.kept);
        }
        kept
    };
    save_corpus(&corpus, &a.output)?;
    eprintln!("wrote {} stories to {}", corpus.len(), a.output.display());
    Ok(())
}

fn stats(a: StatsArgs) -> Outcome {
    let format = usage(parse_format(&a.format))?;
    let dataset = usage(parse_dataset(&a.corpus.dataset))?;
    usage(existing(&a.corpus.corpus, "corpus"))?;
    usage(writable_opt(&a.output))?;

    let corpus = read_corpus(&a.corpus, dataset)?;
    let stats = corpus_stats(&corpus);
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&stats)? + "\n",
        _ => {
            let doc = Document::Analysis(Box::new(credlens::analysis::AnalysisReport {
                corpus: Some(stats),
                ..Default::default()
            }));
            render(&doc, format)?
        }
    };
    emit(&a.output, &text)?;
    Ok(())
}

fn analyze_cmd(a: AnalyzeArgs, resources: Option<&Path>, exec: Execution) -> Outcome {
    let format = usage(parse_format(&a.format))?;
    let dataset = usage(parse_dataset(&a.corpus.dataset))?;
    usage(existing(&a.corpus.corpus, "corpus"))?;
    usage(writable_opt(&a.output))?;
    if let Some(dir) = &a.graph_dir {
        usage(existing(dir, "graph directory"))?;
    }
    let res = usage(load_resources(resources))?;

    let corpus = read_corpus(&a.corpus, dataset)?;
    let opts = AnalysisOptions {
        min_articles: a.min_articles,
        exec,
    };
    let (report, graph) = analyze(&corpus, &res, opts)?;
    let text = render(&Document::Analysis(Box::new(report)), format)?;
    if let Some(dir) = &a.graph_dir {
        let create = |name: &str| {
            let p = dir.join(name);
            fs::File::create(&p).with_context(|| format!("creating {}", p.display()))
        };
        graph.write_edges_csv(create("coauthor_edges.csv")?)?;
        graph.write_nodes_csv(create("coauthor_nodes.csv")?)?;
        write_profile_csv(
            &graph,
            &neighbor_type_profile(&graph),
            create("neighbor_profile.csv")?,
        )?;
    }
    emit(&a.output, &text)?;
    Ok(())
}

fn featurize(a: FeaturizeArgs, resources: Option<&Path>, exec: Execution) -> Outcome {
    let config: FeatureConfig = usage(a.features.parse().map_err(anyhow::Error::from))?;
    let dataset = usage(parse_dataset(&a.corpus.dataset))?;
    usage(existing(&a.corpus.corpus, "corpus"))?;
    usage(writable(&a.output))?;
    let res = usage(load_resources(resources))?;

    let corpus = read_corpus(&a.corpus, dataset)?;
    let matrix = featurize_corpus(&corpus, &config, &res, exec)?;
    let mut buf = Vec::new();
    matrix.write_csv(&corpus.labels(), &mut buf)?;
    let meta = serde_json::json!({
        "feature_config": config.label(),
        "features": config.features,
        "n_articles": corpus.len(),
        "history_reference": "full corpus minus the article itself",
        "warning": "past_fake and past_true are counted over every other article in the corpus, so they encode labels of articles that a held-out evaluation would not see; use `evaluate` for leakage-free scores",
    });
    let meta_path = PathBuf::from(format!("{}.meta.json", a.output.display()));
    fs::write(&a.output, buf).with_context(|| format!("writing {}", a.output.display()))?;
    fs::write(&meta_path, serde_json::to_string_pretty(&meta)? + "\n")
        .with_context(|| format!("writing {}", meta_path.display()))?;
    eprintln!(
        "warning: history features use the full corpus and leak labels; see {}",
        meta_path.display()
    );
    Ok(())
}

fn parse_models(s: &str) -> anyhow::Result<Vec<ModelKind>> {
    if s.trim() == "all" {
        return Ok(ModelKind::ALL.to_vec());
    }
    s.split(',')
        .filter(|m| !m.trim().is_empty())
        .map(|m| m.parse::<ModelKind>().map_err(anyhow::Error::from))
        .collect()
}

fn parse_configs(s: &str) -> anyhow::Result<Vec<FeatureConfig>> {
    s.split(';')
        .filter(|c| !c.trim().is_empty())
        .map(|c| c.parse::<FeatureConfig>().map_err(anyhow::Error::from))
        .collect()
}

fn evaluate(a: EvaluateArgs, resources: Option<&Path>, exec: Execution) -> Outcome {
    let format = usage(parse_format(&a.format))?;
    let models = usage(parse_models(&a.models))?;
    let configs = usage(parse_configs(&a.features))?;
    if models.is_empty() || configs.is_empty() {
        return Err(Failure::Usage(anyhow!(
            "no classifiers or feature configurations given"
        )));
    }
    if a.k < 2 {
        return Err(Failure::Usage(anyhow!("--k must be at least 2")));
    }
    let dataset = usage(parse_dataset(&a.corpus.dataset))?;
    usage(existing(&a.corpus.corpus, "corpus"))?;
    usage(writable_opt(&a.output))?;
    let res = usage(load_resources(resources))?;

    let corpus = read_corpus(&a.corpus, dataset)?;
    let content = content_rows(&corpus, &res, exec)?;
    let opts = CvOptions {
        k: a.k,
        seed: a.seed,
        exec,
    };
    let mut reports: Vec<EvalReport> = Vec::new();
    for config in &configs {
        for &kind in &models {
            let spec = ModelSpec::new(kind).with_seed(a.seed);
            let r = cross_validate_with_content(&spec, &corpus, &content, config, &opts)?;
            eprintln!("{kind} / {config}: macro-F1 {:.3}", r.means.f1_macro);
            reports.push(r);
        }
    }
    let text = render(&Document::Evaluation(reports), format)?;
    emit(&a.output, &text)?;
    Ok(())
}

fn report(a: ReportArgs) -> Outcome {
    let format = usage(parse_format(&a.format))?;
    usage(existing(&a.input, "input"))?;
    usage(writable_opt(&a.output))?;
    let text =
        fs::read_to_string(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let doc = parse_document(&text).with_context(|| format!("parsing {}", a.input.display()))?;
    emit(&a.output, &render(&doc, format)?)?;
    Ok(())
}

fn synth(a: SynthArgs) -> Outcome {
    usage(writable(&a.output))?;
    let corpus = synthetic_corpus(SynthConfig {
        per_class: a.per_class,
        seed: a.seed,
    });
    save_corpus(&corpus, &a.output)?;
    Ok(())
}
