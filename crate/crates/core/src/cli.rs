//! The `succession` command line.
//!
//! Every subcommand builds a [`Table`] and renders it as TSV, JSON lines or
//! plot data, so the formats always agree on values. Exit status is 0 on
//! success, 1 on data errors or failed checks, 2 on usage errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::codec::{emit_curves, evaluate_laws, synthesize_sunrise, SymbolStream, SUNRISE_DAYS};
use crate::corpus::{self, CorpusManifest, CORPUS_DIR_ENV};
use crate::freq::FrequencyVector;
use crate::laws::SuccessionLaw;
use crate::oracle;
use crate::plotdata::format_significant;
use crate::priors::{self, SubsetScenario};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "succession",
    version,
    about = "Laws of succession: evaluation and analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    Plotdata,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Codelengths of files under each law.
    Eval(EvalArgs),
    /// The sunrise experiment: a stream of identical bytes.
    Sunrise(SunriseArgs),
    /// Score every file of a corpus against its manifest.
    Corpus(CorpusArgs),
    /// Escape, ratio and possible-set curves.
    Analyze(AnalyzeArgs),
    /// Run the exhaustive oracle suites.
    Oracle(OracleArgs),
}

fn parse_law(s: &str) -> std::result::Result<SuccessionLaw, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

const TABLE1_SPELLING: &str = "natural,subsets,laplace,jp,a,b,c,d";

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Laws, comma separated (laplace, lidstone:λ, jp, subsets, natural,
    /// sharp-subsets, sharp-natural, a, b, c, d, abs:δ, lin:α).
    #[arg(long = "laws", visible_alias = "law", value_delimiter = ',', value_parser = parse_law, default_value = TABLE1_SPELLING)]
    pub laws: Vec<SuccessionLaw>,
    /// Alphabet size.
    #[arg(short, long, default_value_t = 256)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: Format,
    /// Sampling interval for plot data curves.
    #[arg(long, default_value_t = 1)]
    pub stride: u64,
    /// Input file (repeatable).
    #[arg(long = "file")]
    pub file_flags: Vec<PathBuf>,
    /// Input files.
    pub files: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SunriseArgs {
    #[arg(long, default_value_t = SUNRISE_DAYS)]
    pub days: u64,
    #[arg(long = "laws", visible_alias = "law", value_delimiter = ',', value_parser = parse_law, default_value = "laplace,jp")]
    pub laws: Vec<SuccessionLaw>,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: Format,
    /// Sampling interval for plot data; defaults to days/1000.
    #[arg(long)]
    pub stride: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Corpus directory.
    #[arg(long, env = CORPUS_DIR_ENV)]
    pub dir: PathBuf,
    /// Manifest file; defaults to the bundled Calgary manifest.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[arg(long = "laws", visible_alias = "law", value_delimiter = ',', value_parser = parse_law, default_value = TABLE1_SPELLING)]
    pub laws: Vec<SuccessionLaw>,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: Format,
    /// Download missing files from this base URL first.
    #[arg(long, value_name = "URL")]
    pub fetch: Option<String>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(subcommand)]
    pub what: Analysis,
    #[arg(long, value_enum, default_value = "tsv", global = true)]
    pub format: Format,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct Range {
    /// Smallest n.
    #[arg(long, default_value_t = 10)]
    pub from: u64,
    /// Largest n.
    #[arg(long, default_value_t = 1_000_000)]
    pub to: u64,
    /// Number of points.
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    /// Space points evenly rather than geometrically.
    #[arg(long)]
    pub linear: bool,
}

#[derive(Debug, Subcommand)]
pub enum Analysis {
    /// Escape mass against n, with q symbols attested.
    Escape {
        #[arg(long = "laws", visible_alias = "law", value_delimiter = ',', value_parser = parse_law, default_value = "laplace,jp,subsets,natural,a,b,c,d")]
        laws: Vec<SuccessionLaw>,
        #[arg(short, long, default_value_t = 256)]
        k: usize,
        #[arg(short, long, default_value_t = 1)]
        q: usize,
        #[command(flatten)]
        range: Range,
    },
    /// log2 p_a(x^n) - log2 p_b(x^n) against n, with q symbols attested.
    Ratio {
        #[arg(long, value_parser = parse_law, default_value = "natural")]
        a: SuccessionLaw,
        #[arg(long, value_parser = parse_law, default_value = "laplace")]
        b: SuccessionLaw,
        #[arg(short, long, default_value_t = 256)]
        k: usize,
        #[arg(short, long, default_value_t = 1)]
        q: usize,
        #[command(flatten)]
        range: Range,
    },
    /// Probability of the strings over a b-symbol subset, against n.
    PossibleSet {
        #[arg(long = "laws", visible_alias = "law", value_delimiter = ',', value_parser = parse_law, default_value = "laplace,jp,subsets,natural")]
        laws: Vec<SuccessionLaw>,
        #[arg(short, long, default_value_t = 256)]
        k: u64,
        #[arg(short, long, default_value_t = 2)]
        b: u64,
        #[command(flatten)]
        range: Range,
    },
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 6)]
    pub max_k: usize,
    #[arg(long, default_value_t = 10)]
    pub max_n: u64,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    /// Rendered with three decimals.
    Bits(f64),
    /// Rendered with twelve significant digits.
    Prob(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Bits(b) => format!("{b:.3}"),
            Cell::Prob(p) => format_significant(*p, 12),
            Cell::Text(t) => t.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Text(t) => Value::from(t.as_str()),
            // the JSON number is the rendered decimal, so formats agree
            Cell::Bits(_) | Cell::Prob(_) => {
                let s = self.render();
                s.parse::<serde_json::Number>()
                    .map(Value::Number)
                    .unwrap_or(Value::String(s))
            }
        }
    }

    fn number(&self) -> Option<String> {
        match self {
            Cell::Text(_) => None,
            other => Some(other.render()),
        }
    }
}

/// Column names and rows.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => {
                let mut s = self.columns.join("\t");
                s.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::render).collect();
                    s.push_str(&cells.join("\t"));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let mut s = String::new();
                for row in &self.rows {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .cloned()
                        .zip(row.iter().map(Cell::json))
                        .collect();
                    s.push_str(&Value::Object(obj).to_string());
                    s.push('\n');
                }
                s
            }
            Format::Plotdata => {
                let mut s = String::new();
                if !self.title.is_empty() {
                    s.push_str(&format!("# {}\n", self.title));
                }
                let numeric: Vec<usize> = match self.rows.first() {
                    Some(r) => (0..r.len()).filter(|&i| r[i].number().is_some()).collect(),
                    None => (0..self.columns.len()).collect(),
                };
                let names: Vec<&str> = numeric.iter().map(|&i| self.columns[i].as_str()).collect();
                s.push_str(&format!("# {}\n", names.join(" ")));
                for row in &self.rows {
                    let cells: Vec<String> =
                        numeric.iter().filter_map(|&i| row[i].number()).collect();
                    s.push_str(&cells.join(" "));
                    s.push('\n');
                }
                s
            }
        }
    }
}

/// Parses `args` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().ansi().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(status) => status,
        Err(CliError::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
        Err(CliError::Data(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

enum CliError {
    Usage(String),
    Data(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Data(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.into())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn execute(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Eval(a) => eval(a, out),
        Command::Sunrise(a) => sunrise(a, out),
        Command::Corpus(a) => corpus_cmd(a, out, err),
        Command::Analyze(a) => analyze(a, out, err),
        Command::Oracle(a) => oracle_cmd(a, out),
    }
}

fn check_codable(laws: &[SuccessionLaw]) -> CliResult<()> {
    match laws.iter().find(|l| !l.is_normalized()) {
        Some(l) => Err(CliError::Usage(format!("{l} cannot be used for coding"))),
        None => Ok(()),
    }
}

fn file_label(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn curve_table(
    title: String,
    laws: &[SuccessionLaw],
    stream: &SymbolStream,
    stride: u64,
) -> Result<Table> {
    let curves = emit_curves(stream, laws, stride)?;
    let mut columns = vec!["t".to_string()];
    columns.extend(laws.iter().map(|l| format!("bits:{l}")));
    columns.extend(laws.iter().map(|l| format!("excess:{l}")));
    let mut table = Table {
        title,
        columns,
        rows: Vec::new(),
    };
    let points = curves.first().map_or(0, Vec::len);
    for i in 0..points {
        let mut row = vec![Cell::Int(curves[0][i].t as i64)];
        row.extend(curves.iter().map(|c| Cell::Bits(c[i].bits)));
        row.extend(curves.iter().map(|c| Cell::Bits(c[i].excess_bits)));
        table.rows.push(row);
    }
    Ok(table)
}

fn eval(a: &EvalArgs, out: &mut dyn Write) -> CliResult<i32> {
    check_codable(&a.laws)?;
    let files: Vec<&PathBuf> = a.file_flags.iter().chain(&a.files).collect();
    if files.is_empty() {
        return Err(CliError::Usage("no input files".into()));
    }
    if a.stride == 0 {
        return Err(CliError::Usage("stride must be at least 1".into()));
    }
    if a.format == Format::Plotdata {
        for (i, path) in files.iter().enumerate() {
            let stream = SymbolStream::from_bytes(&std::fs::read(path)?, a.k)?;
            let t = curve_table(file_label(path), &a.laws, &stream, a.stride)?;
            if i > 0 {
                // gnuplot dataset separator
                writeln!(out, "\n")?;
            }
            write!(out, "{}", t.render(Format::Plotdata))?;
        }
        return Ok(0);
    }
    let mut table = Table::new(
        "codelengths",
        &[
            "file",
            "law",
            "n",
            "q",
            "bits",
            "bytes",
            "entropy_bits",
            "entropy_bytes",
            "score",
        ],
    );
    for path in files {
        let stream = SymbolStream::from_bytes(&std::fs::read(path)?, a.k)?;
        for r in evaluate_laws(&stream, &a.laws)? {
            table.rows.push(vec![
                Cell::Text(file_label(path)),
                Cell::Text(r.law.to_string()),
                Cell::Int(r.n as i64),
                Cell::Int(r.q as i64),
                Cell::Bits(r.bits),
                Cell::Int(r.bytes_ceil as i64),
                Cell::Bits(r.entropy_bits),
                Cell::Int(r.entropy_bytes_ceil as i64),
                Cell::Int(r.score_bytes),
            ]);
        }
    }
    write!(out, "{}", table.render(a.format))?;
    Ok(0)
}

fn sunrise(a: &SunriseArgs, out: &mut dyn Write) -> CliResult<i32> {
    check_codable(&a.laws)?;
    if a.days == 0 {
        return Err(CliError::Usage("days must be at least 1".into()));
    }
    let stream = synthesize_sunrise(a.days);
    if a.format == Format::Plotdata {
        let stride = a.stride.unwrap_or((a.days / 1000).max(1));
        if stride == 0 {
            return Err(CliError::Usage("stride must be at least 1".into()));
        }
        let title = format!("sunrise, {} days, k = 256", a.days);
        let t = curve_table(title, &a.laws, &stream, stride)?;
        write!(out, "{}", t.render(Format::Plotdata))?;
        return Ok(0);
    }
    let mut table = Table::new("sunrise", &["law", "days", "bits", "bits_ceil", "bytes"]);
    for r in evaluate_laws(&stream, &a.laws)? {
        table.rows.push(vec![
            Cell::Text(r.law.to_string()),
            Cell::Int(r.n as i64),
            Cell::Bits(r.bits),
            Cell::Int(r.bits.ceil() as i64),
            Cell::Int(r.bytes_ceil as i64),
        ]);
    }
    write!(out, "{}", table.render(a.format))?;
    Ok(0)
}

fn corpus_cmd(a: &CorpusArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    check_codable(&a.laws)?;
    if a.format == Format::Plotdata {
        return Err(CliError::Usage("corpus output is tsv or json".into()));
    }
    let manifest: CorpusManifest = match &a.manifest {
        Some(p) => corpus::load_manifest(p)?,
        None => corpus::calgary_manifest(),
    };
    if let Some(url) = &a.fetch {
        fetch(url, &a.dir, &manifest, err)?;
    }
    if !a.dir.is_dir() {
        return Err(CliError::Data(Error::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("corpus directory {} not found", a.dir.display()),
        ))));
    }
    let run = corpus::run_corpus(&manifest, &a.dir, &a.laws)?;
    let mut columns = vec!["file".to_string(), "q".to_string()];
    columns.extend(a.laws.iter().map(|l| l.to_string()));
    let mut table = Table {
        title: "scores in bytes above the empirical entropy".into(),
        columns,
        rows: Vec::new(),
    };
    for f in &run.files {
        let mut row = vec![Cell::Text(f.name.clone()), Cell::Int(f.q as i64)];
        row.extend(f.reports.iter().map(|r| Cell::Int(r.score_bytes)));
        table.rows.push(row);
    }
    let mut total = vec![Cell::Text("total".into()), Cell::Text("-".into())];
    total.extend(run.totals.iter().map(|&t| Cell::Int(t)));
    table.rows.push(total);
    write!(out, "{}", table.render(a.format))?;

    for (name, v) in &run.skipped {
        writeln!(err, "{name}: skipped ({v:?})")?;
    }
    for f in &run.files {
        for m in &f.mismatches {
            writeln!(err, "{}: {m}", f.name)?;
        }
    }
    for m in &run.total_mismatches {
        writeln!(err, "total: {m}")?;
    }
    Ok(if run.is_clean() { 0 } else { 1 })
}

#[cfg(feature = "fetch")]
fn fetch(url: &str, dir: &Path, manifest: &CorpusManifest, err: &mut dyn Write) -> CliResult<()> {
    let report = corpus::fetch_corpus(url, dir, manifest, &corpus::HttpFetcher::default())?;
    writeln!(
        err,
        "{} fetched, {} present",
        report.fetched.len(),
        report.present.len()
    )?;
    for (name, why) in &report.failed {
        writeln!(err, "{name}: fetch failed: {why}")?;
    }
    Ok(())
}

#[cfg(not(feature = "fetch"))]
fn fetch(_: &str, _: &Path, _: &CorpusManifest, _: &mut dyn Write) -> CliResult<()> {
    Err(CliError::Usage("built without the `fetch` feature".into()))
}

/// Points from `from` to `to`, evenly or geometrically spaced, deduplicated.
pub fn grid(r: &Range) -> Vec<u64> {
    if r.points <= 1 || r.from >= r.to {
        return vec![r.from];
    }
    let steps = (r.points - 1) as f64;
    let mut v: Vec<u64> = (0..r.points)
        .map(|i| {
            let f = i as f64 / steps;
            if r.linear {
                r.from as f64 + f * (r.to - r.from) as f64
            } else {
                (r.from as f64) * ((r.to as f64) / (r.from as f64)).powf(f)
            }
        })
        .map(|x| x.round() as u64)
        .collect();
    v.dedup();
    v
}

/// Counts with `q` attested symbols summing to `n`: `q - 1` singletons and
/// one symbol holding the rest.
pub fn skewed_counts(k: usize, q: usize, n: u64) -> Result<FrequencyVector> {
    if q == 0 || q > k || (n as usize) < q {
        return Err(Error::InvalidScenario(format!(
            "need 1 <= q <= min(k, n), got q={q}, k={k}, n={n}"
        )));
    }
    let mut counts = vec![1u64; q];
    counts[0] = n - (q as u64 - 1);
    FrequencyVector::from_counts(k, &counts)
}

fn analyze(a: &AnalyzeArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let table = match &a.what {
        Analysis::Escape { laws, k, q, range } => {
            let mut columns = vec!["n".to_string()];
            columns.extend(laws.iter().map(|l| format!("escape:{l}")));
            let mut t = Table {
                title: format!("escape mass, k = {k}, q = {q}"),
                columns,
                rows: Vec::new(),
            };
            for n in grid(range) {
                let fv = skewed_counts(*k, *q, n)?;
                let mut row = vec![Cell::Int(n as i64)];
                row.extend(laws.iter().map(|l| Cell::Prob(l.escape_mass(&fv).value())));
                t.rows.push(row);
            }
            t
        }
        Analysis::Ratio {
            a: la,
            b: lb,
            k,
            q,
            range,
        } => {
            let mut t = Table::new(
                format!("log2 p_{la} - log2 p_{lb}, k = {k}, q = {q}"),
                &["n", "log2_n", "ratio_bits"],
            );
            let (mut xs, mut ys) = (Vec::new(), Vec::new());
            for n in grid(range) {
                let fv = skewed_counts(*k, *q, n)?;
                let r = priors::log_ratio(&fv, la, lb)?;
                let x = (n as f64).log2();
                xs.push(x);
                ys.push(r);
                t.rows
                    .push(vec![Cell::Int(n as i64), Cell::Prob(x), Cell::Bits(r)]);
            }
            if xs.len() > 1 {
                writeln!(
                    err,
                    "fitted slope against log2 n: {:.3}",
                    priors::fitted_slope(&xs, &ys)
                )?;
            }
            t
        }
        Analysis::PossibleSet { laws, k, b, range } => {
            let mut columns = vec!["n".to_string()];
            columns.extend(laws.iter().map(|l| format!("log2p:{l}")));
            columns.push("laplace_bound".into());
            let mut t = Table {
                title: format!("log2 probability of B^n, k = {k}, b = {b}"),
                columns,
                rows: Vec::new(),
            };
            for n in grid(range) {
                let mut row = vec![Cell::Int(n as i64)];
                for law in laws {
                    let s = SubsetScenario::new(*k, *b, n, *law)?;
                    row.push(Cell::Prob(priors::possible_set_logprob(&s)?.total.log2()));
                }
                row.push(Cell::Prob(priors::laplace_possible_set_bound(*k, *b, n)));
                t.rows.push(row);
            }
            t
        }
    };
    write!(out, "{}", table.render(a.format))?;
    Ok(0)
}

fn oracle_cmd(a: &OracleArgs, out: &mut dyn Write) -> CliResult<i32> {
    if a.max_k == 0 {
        return Err(CliError::Usage("max-k must be at least 1".into()));
    }
    let suites = oracle::run_all(a.max_k, a.max_n)?;
    match a.format {
        Format::Json => {
            for s in &suites {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(s).map_err(std::io::Error::from)?
                )?;
            }
        }
        _ => {
            for s in &suites {
                writeln!(out, "{s}")?;
                for f in &s.failures {
                    writeln!(out, "  {f}")?;
                }
            }
        }
    }
    Ok(if suites.iter().all(oracle::SuiteResult::passed) {
        0
    } else {
        1
    })
}
