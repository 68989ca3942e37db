//! Command-line front end.
//!
//! Every subcommand computes all of its outputs in memory and writes them
//! into `--out` only once nothing can fail any more.

mod config;
pub mod svg;

pub use config::ConfigFile;

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::datasetgen::{
    attestation_filter, generate_candidates, import_review, ingest_corpus, read_dataset,
    review_text, word_list, write_dataset, CorpusConfig, DataPoint, DatasetError, Status,
};
use crate::hypotheses::{
    run_suite, SuiteConfig, SuiteError, DEFAULT_EXACT_CROSSOVER, SUMMARY_HEADER,
};
use crate::morphology::{Alphabet, MorphologyError, TemplateInventory};
use crate::reduction::{project2d_cosine_kernel, ReductionError};
use crate::synthgeom::{generate, SynthConfig};
use crate::vectors::{coverage_report, EmbeddingSpace, Format, VectorError};

#[derive(Debug, Parser)]
#[command(
    name = "rootspace",
    version,
    about = "Denominal verb geometry in word embeddings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Corpus + template inventory -> candidate data points and funnel counts
    Gen(Options),
    /// Candidate file -> review file with an editable status column
    ReviewExport(Options),
    /// Edited review file -> final dataset
    ReviewImport(Options),
    /// Dataset + vector files -> coverage, similarity records, test summary
    Test(Options),
    /// Dataset + one vector file -> 2D cosine-kernel projection per data point
    Plot(Options),
    /// Synthetic dataset and vector file with a planted or null geometry
    Synth(Options),
}

/// Every setting can also be given in the `--config` file under the same name.
#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// `key = value` settings file; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Template inventory TSV
    #[arg(long)]
    pub inventory: Option<String>,
    /// `hebrew`, `latin` or an alphabet file
    #[arg(long)]
    pub alphabet: Option<String>,
    /// Tagged corpus, one token per line
    #[arg(long)]
    pub corpus: Option<String>,
    /// Vector file as `label=path` (repeatable)
    #[arg(long)]
    pub vectors: Vec<String>,
    /// Dataset or review file
    #[arg(long)]
    pub dataset: Option<String>,
    /// Output directory
    #[arg(long)]
    pub out: Option<String>,
    /// Vector file format: auto, word2vec or glove
    #[arg(long)]
    pub format: Option<String>,
    /// Keep this many principal components instead of the Guttman-Kaiser number
    #[arg(long)]
    pub force_dim: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    /// Fewest covered data points a test may run on
    #[arg(long)]
    pub min_n: Option<String>,
    /// Largest sample tested exactly by the signed-rank test
    #[arg(long)]
    pub crossover: Option<String>,
    /// Vector file whose tokens count as attested root verbs
    #[arg(long)]
    pub vocabulary: Option<String>,
    #[arg(long)]
    pub surface_col: Option<String>,
    #[arg(long)]
    pub pos_col: Option<String>,
    #[arg(long)]
    pub lemma_col: Option<String>,
    /// Comma-separated noun tags
    #[arg(long)]
    pub noun_tags: Option<String>,
    /// Comma-separated verb tags
    #[arg(long)]
    pub verb_tags: Option<String>,
    #[arg(long)]
    pub n_roots: Option<String>,
    #[arg(long)]
    pub k_verbs: Option<String>,
    #[arg(long)]
    pub dim: Option<String>,
    /// Radians
    #[arg(long)]
    pub region_radius: Option<String>,
    /// Radians
    #[arg(long)]
    pub denominal_noise: Option<String>,
    /// Comma-separated data point ids to plot (default: all)
    #[arg(long)]
    pub points: Option<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Statistical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Statistical(_) => 3,
        }
    }
}

impl From<MorphologyError> for CliError {
    fn from(e: MorphologyError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<DatasetError> for CliError {
    fn from(e: DatasetError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<VectorError> for CliError {
    fn from(e: VectorError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::Reduction(ReductionError::NonFinite(_) | ReductionError::RaggedRows(_)) => {
                CliError::Data(e.to_string())
            }
            other => CliError::Statistical(other.to_string()),
        }
    }
}

const KEYS: [&str; 22] = [
    "inventory",
    "alphabet",
    "corpus",
    "dataset",
    "out",
    "format",
    "force_dim",
    "seed",
    "min_n",
    "crossover",
    "vocabulary",
    "surface_col",
    "pos_col",
    "lemma_col",
    "noun_tags",
    "verb_tags",
    "n_roots",
    "k_verbs",
    "dim",
    "region_radius",
    "denominal_noise",
    "points",
];

/// Flags over config-file values.
struct Settings {
    opts: Options,
    file: ConfigFile,
}

impl Settings {
    fn new(opts: Options) -> Result<Self, CliError> {
        let file = match &opts.config {
            Some(p) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
                ConfigFile::parse(&text).map_err(CliError::Usage)?
            }
            None => ConfigFile::default(),
        };
        let s = Self { opts, file };
        if let Some(k) = s.file.keys().find(|k| *k != "vectors" && !KEYS.contains(k)) {
            return Err(CliError::Usage(format!("unknown config key {k:?}")));
        }
        Ok(s)
    }

    fn flag(&self, key: &str) -> Option<&String> {
        let o = &self.opts;
        match key {
            "inventory" => o.inventory.as_ref(),
            "alphabet" => o.alphabet.as_ref(),
            "corpus" => o.corpus.as_ref(),
            "dataset" => o.dataset.as_ref(),
            "out" => o.out.as_ref(),
            "format" => o.format.as_ref(),
            "force_dim" => o.force_dim.as_ref(),
            "seed" => o.seed.as_ref(),
            "min_n" => o.min_n.as_ref(),
            "crossover" => o.crossover.as_ref(),
            "vocabulary" => o.vocabulary.as_ref(),
            "surface_col" => o.surface_col.as_ref(),
            "pos_col" => o.pos_col.as_ref(),
            "lemma_col" => o.lemma_col.as_ref(),
            "noun_tags" => o.noun_tags.as_ref(),
            "verb_tags" => o.verb_tags.as_ref(),
            "n_roots" => o.n_roots.as_ref(),
            "k_verbs" => o.k_verbs.as_ref(),
            "dim" => o.dim.as_ref(),
            "region_radius" => o.region_radius.as_ref(),
            "denominal_noise" => o.denominal_noise.as_ref(),
            "points" => o.points.as_ref(),
            _ => None,
        }
    }

    fn get(&self, key: &str) -> Option<String> {
        self.flag(key)
            .cloned()
            .or_else(|| self.file.get(key).map(String::from))
    }

    fn require(&self, key: &str) -> Result<String, CliError> {
        self.get(key)
            .ok_or_else(|| CliError::Usage(format!("missing --{}", key.replace('_', "-"))))
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.get(key)
            .map(|v| {
                v.parse::<T>().map_err(|_| {
                    CliError::Usage(format!("bad value {v:?} for --{}", key.replace('_', "-")))
                })
            })
            .transpose()
    }

    fn vectors(&self) -> Vec<String> {
        if self.opts.vectors.is_empty() {
            self.file.get_all("vectors").to_vec()
        } else {
            self.opts.vectors.clone()
        }
    }

    fn alphabet(&self) -> Result<Alphabet, CliError> {
        let spec = self.get("alphabet").unwrap_or_else(|| "hebrew".into());
        Alphabet::from_spec(&spec).map_err(|e| CliError::Usage(e.to_string()))
    }

    fn format(&self) -> Result<Format, CliError> {
        match self.get("format") {
            None => Ok(Format::Auto),
            Some(f) => f.parse().map_err(CliError::Usage),
        }
    }

    fn out_dir(&self) -> Result<PathBuf, CliError> {
        Ok(PathBuf::from(self.require("out")?))
    }
}

/// Files produced by one run, relative to the output directory.
#[derive(Debug, Default)]
struct Outputs(Vec<(String, String)>);

impl Outputs {
    fn add(&mut self, name: impl Into<String>, content: String) {
        self.0.push((name.into(), content));
    }

    fn write(self, dir: &Path) -> Result<Vec<String>, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::Data(format!("{}: {e}", dir.display())))?;
        let mut names = Vec::new();
        for (name, content) in self.0 {
            let path = dir.join(&name);
            fs::write(&path, content)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            names.push(name);
        }
        Ok(names)
    }
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Data(format!("{path}: {e}")))
}

/// `label=path`, or a bare path labelled by its file stem.
pub fn parse_vector_arg(arg: &str) -> Result<(String, String), CliError> {
    let (label, path) = match arg.split_once('=') {
        Some((l, p)) => (l.trim().to_string(), p.trim().to_string()),
        None => {
            let stem = Path::new(arg)
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("vectors");
            (stem.to_string(), arg.to_string())
        }
    };
    if label.is_empty() || path.is_empty() || label.contains([',', '/', '\\']) {
        return Err(CliError::Usage(format!(
            "bad --vectors value {arg:?}, expected label=path"
        )));
    }
    Ok((label, path))
}

fn load_dataset(s: &Settings) -> Result<Vec<DataPoint>, CliError> {
    let text = read(&s.require("dataset")?)?;
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(read_dataset(&text)?
        .into_iter()
        .filter(|p| p.status != Status::Discarded)
        .collect())
}

fn load_space(path: &str, label: &str, s: &Settings) -> Result<EmbeddingSpace, CliError> {
    Ok(EmbeddingSpace::load(path, s.format()?, label)?.with_alphabet(s.alphabet()?))
}

fn tag_set(v: &str) -> BTreeSet<String> {
    v.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(String::from)
        .collect()
}

fn corpus_config(s: &Settings) -> Result<CorpusConfig, CliError> {
    let mut c = CorpusConfig::default();
    if let Some(v) = s.parsed("surface_col")? {
        c.surface_col = v;
    }
    if let Some(v) = s.parsed("pos_col")? {
        c.pos_col = v;
    }
    c.lemma_col = s.parsed("lemma_col")?;
    if let Some(v) = s.get("noun_tags") {
        c.noun_tags = tag_set(&v);
    }
    if let Some(v) = s.get("verb_tags") {
        c.verb_tags = tag_set(&v);
    }
    Ok(c)
}

fn cmd_gen(s: &Settings) -> Result<(Outputs, String), CliError> {
    let alphabet = s.alphabet()?;
    let inventory = TemplateInventory::load(s.require("inventory")?, alphabet.clone())?;
    let corpus_path = s.require("corpus")?;
    let file =
        fs::File::open(&corpus_path).map_err(|e| CliError::Data(format!("{corpus_path}: {e}")))?;
    let corpus = ingest_corpus(std::io::BufReader::new(file), &corpus_config(s)?, &alphabet)?;
    let vocabulary: Option<HashSet<String>> = match s.get("vocabulary") {
        Some(p) => {
            let space = EmbeddingSpace::load(&p, s.format()?, "vocabulary")?;
            Some(
                space
                    .tokens()
                    .iter()
                    .map(|t| alphabet.normalize(t))
                    .collect(),
            )
        }
        None => None,
    };
    let candidates = generate_candidates(&corpus, &inventory, vocabulary.as_ref())?;
    let (kept, rejected, mut report) = attestation_filter(candidates.points, &corpus, &inventory)?;
    report.n_no_root_verbs = candidates.n_no_root_verbs;
    let mut out = Outputs::default();
    out.add("candidates.tsv", write_dataset(&kept));
    out.add("rejected.tsv", write_dataset(&rejected));
    out.add("funnel.txt", report.to_text());
    Ok((out, report.to_text()))
}

fn cmd_review_export(s: &Settings) -> Result<(Outputs, String), CliError> {
    let points = load_dataset(s)?;
    let mut out = Outputs::default();
    out.add("review.tsv", review_text(&points)?);
    Ok((
        out,
        format!("exported {} data points for review\n", points.len()),
    ))
}

fn cmd_review_import(s: &Settings) -> Result<(Outputs, String), CliError> {
    let reviewed = import_review(s.require("dataset")?)?;
    let total = reviewed.len();
    let kept: Vec<DataPoint> = reviewed
        .into_iter()
        .filter(|p| p.status == Status::Kept)
        .collect();
    let summary = format!(
        "reviewed\t{total}\nkept\t{}\ndiscarded\t{}\n",
        kept.len(),
        total - kept.len()
    );
    let mut out = Outputs::default();
    out.add("dataset.tsv", write_dataset(&kept));
    out.add("words.txt", word_list(&kept));
    out.add("review_summary.txt", summary.clone());
    Ok((out, summary))
}

fn cmd_test(s: &Settings) -> Result<(Outputs, String), CliError> {
    let vectors = s.vectors();
    if vectors.is_empty() {
        return Err(CliError::Usage("missing --vectors".into()));
    }
    let config = SuiteConfig {
        min_n: s.parsed("min_n")?.unwrap_or(5),
        exact_crossover: s.parsed("crossover")?.unwrap_or(DEFAULT_EXACT_CROSSOVER),
        force_dim: s.parsed("force_dim")?,
    };
    let points = load_dataset(s)?;
    let mut out = Outputs::default();
    let mut summary = format!("{SUMMARY_HEADER}\n");
    let mut reduction =
        String::from("model_label,n_tokens,reduced_dim,retained_variance,h2_implies_h1\n");
    let mut labels = HashSet::new();
    for arg in &vectors {
        let (label, path) = parse_vector_arg(arg)?;
        if !labels.insert(label.clone()) {
            return Err(CliError::Usage(format!(
                "vector label {label:?} used twice"
            )));
        }
        let space = load_space(&path, &label, s)?;
        let report = run_suite(&points, &space, &config)?;
        out.add(format!("{label}_records.csv"), report.records_csv());
        out.add(format!("{label}_coverage.csv"), report.coverage.to_csv());
        summary.push_str(&report.summary_rows());
        let _ = writeln!(
            reduction,
            "{label},{},{},{},{}",
            report.n_tokens,
            report.reduced_dim,
            report.retained_variance,
            report.h2_implies_h1(0.05)
        );
    }
    out.add("summary.csv", summary.clone());
    out.add("reduction.csv", reduction);
    Ok((out, summary))
}

fn cmd_plot(s: &Settings) -> Result<(Outputs, String), CliError> {
    let vectors = s.vectors();
    let [arg] = vectors.as_slice() else {
        return Err(CliError::Usage("plot takes exactly one --vectors".into()));
    };
    let (label, path) = parse_vector_arg(arg)?;
    let space = load_space(&path, &label, s)?;
    let points = load_dataset(s)?;
    let wanted: Option<BTreeSet<usize>> = match s.get("points") {
        Some(v) => Some(
            v.split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| CliError::Usage(format!("bad point id {x:?}")))
                })
                .collect::<Result<_, _>>()?,
        ),
        None => None,
    };
    let coverage = coverage_report(&points, &space);
    let mut out = Outputs::default();
    let mut n = 0;
    for (id, p) in &coverage.kept {
        if wanted.as_ref().is_some_and(|w| !w.contains(id)) {
            continue;
        }
        let mut items: Vec<(svg::Role, &str)> = vec![
            (svg::Role::Noun, p.noun_lookup_form.as_str()),
            (svg::Role::Denominal, p.denominal.as_str()),
        ];
        items.extend(
            p.root_verbs
                .iter()
                .map(|v| (svg::Role::RootVerb, v.as_str())),
        );
        let rows: Vec<Vec<f64>> = items
            .iter()
            .map(|(_, t)| space.lookup(t).expect("coverage checked").to_vec())
            .collect();
        let coords = project2d_cosine_kernel(&rows)
            .map_err(|e| CliError::Data(format!("point {id}: {e}")))?;
        let mut csv = String::from("role,token,x,y\n");
        let mut plot = Vec::with_capacity(items.len());
        for ((role, token), xy) in items.iter().zip(&coords) {
            let _ = writeln!(csv, "{},{},{},{}", role.as_str(), token, xy[0], xy[1]);
            plot.push(svg::PlotItem {
                role: *role,
                label: token,
                xy: *xy,
            });
        }
        out.add(format!("point_{id}.csv"), csv);
        out.add(
            format!("point_{id}.svg"),
            svg::render(&format!("{label}: {} / {}", p.noun, p.denominal), &plot),
        );
        n += 1;
    }
    if n == 0 {
        return Err(CliError::Data("no covered data point to plot".into()));
    }
    Ok((out, format!("plotted {n} data points\n")))
}

fn cmd_synth(s: &Settings) -> Result<(Outputs, String), CliError> {
    let d = SynthConfig::default();
    let config = SynthConfig {
        n_roots: s.parsed("n_roots")?.unwrap_or(d.n_roots),
        k_verbs: s.parsed("k_verbs")?.unwrap_or(d.k_verbs),
        dim: s.parsed("dim")?.unwrap_or(d.dim),
        region_radius: s.parsed("region_radius")?.unwrap_or(d.region_radius),
        denominal_noise: s.parsed("denominal_noise")?.unwrap_or(d.denominal_noise),
        seed: s.parsed("seed")?.unwrap_or(d.seed),
    };
    let (points, space) = generate(&config).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut out = Outputs::default();
    out.add("dataset.tsv", write_dataset(&points));
    out.add("vectors.vec", space.to_word2vec_text());
    out.add("synth_meta.txt", config.metadata());
    Ok((out, format!("generated {} data points\n", points.len())))
}

type Handler = fn(&Settings) -> Result<(Outputs, String), CliError>;

/// Runs one subcommand; returns the text to print on success.
pub fn run(cli: Cli) -> Result<String, CliError> {
    let (opts, f): (Options, Handler) = match cli.command {
        Command::Gen(o) => (o, cmd_gen),
        Command::ReviewExport(o) => (o, cmd_review_export),
        Command::ReviewImport(o) => (o, cmd_review_import),
        Command::Test(o) => (o, cmd_test),
        Command::Plot(o) => (o, cmd_plot),
        Command::Synth(o) => (o, cmd_synth),
    };
    let settings = Settings::new(opts)?;
    let dir = settings.out_dir()?;
    let (outputs, message) = f(&settings)?;
    outputs.write(&dir)?;
    Ok(message)
}
