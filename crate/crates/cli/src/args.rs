use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ranges;

const AFTER_HELP: &str = "\
Input datasets hold one sample per row: a class label followed by the values,
separated by commas, tabs or spaces. The word length and alphabet size default
to the tuned values for the known benchmarks (ECG200, Lighting2, Coffee, Adiac,
Lighting7, Beef, OliveOil), recognised from the file name; other datasets need
both --w and --a.

Integer lists accept single values, inclusive ranges and mixes: 4, 2..7, 1..3,8.

Reports embed the resolved configuration: as a \"config\" object in JSON and as a
leading \"# config:\" comment line in CSV.

Environment:
  SAXLAB_THREADS  maximum number of worker threads

Exit status:
  0  success
  2  usage error: unknown command, bad flag value or combination
  3  input data could not be parsed or is inconsistent
  4  file I/O failure
  5  computation failed: series too short or constant, singular fit";

#[derive(Debug, Parser)]
#[command(name = "saxlab", version, about = "SAX symbolization and statistical evaluation of symbolic representations")]
#[command(after_help = AFTER_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// SAX word and PAA means for every sample.
    Symbolize(SymbolizeArgs),
    /// Information loss, KL divergence and IEC of the SAX and PAA reconstructions.
    Metrics(MetricsArgs),
    /// Permutation entropy over an order by delay grid.
    Pe(PeArgs),
    /// ACF, PACF and mean absolute ACF per sample.
    Acf(AcfArgs),
    /// Full statistical report for one or more datasets, with 1NN error rates
    /// when test splits are given.
    Evaluate(EvaluateArgs),
    /// Fits error_ratio = b1*x + b2*x^2 through the origin, x being the SAX IEC.
    Regress(RegressArgs),
    /// Grid sweep of bag-of-patterns 1NN error over w, a and subwindow length.
    Sweep(SweepArgs),
    /// Writes a seeded synthetic dataset.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file, replaced atomically; standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SaxArgs {
    /// Word length (number of PAA segments).
    #[arg(long)]
    pub w: Option<usize>,
    /// Alphabet size.
    #[arg(long)]
    pub a: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BinningArg {
    Quantile,
    Uniform,
}

impl From<BinningArg> for saxlab::series::Binning {
    fn from(b: BinningArg) -> Self {
        match b {
            BinningArg::Quantile => saxlab::series::Binning::Quantile,
            BinningArg::Uniform => saxlab::series::Binning::Uniform,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Repr {
    Raw,
    Sax,
    Paa,
}

impl Repr {
    pub fn name(self) -> &'static str {
        match self {
            Repr::Raw => "raw",
            Repr::Sax => "sax",
            Repr::Paa => "paa",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct List(pub Vec<usize>);

fn list(s: &str) -> Result<List, String> {
    ranges::parse_list(s).map(List)
}

#[derive(Debug, Args)]
pub struct SymbolizeArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[command(flatten)]
    pub sax: SaxArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[command(flatten)]
    pub sax: SaxArgs,
    /// Bin edges for the KL histograms.
    #[arg(long, value_enum, default_value_t = BinningArg::Quantile)]
    pub binning: BinningArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PeArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[command(flatten)]
    pub sax: SaxArgs,
    /// Embedding orders, each in 2..7.
    #[arg(long, value_parser = list, default_value = "2..7")]
    pub orders: List,
    /// Embedding delays.
    #[arg(long, value_parser = list, default_value = "1..10")]
    pub delays: List,
    /// Representations to profile: raw, sax (comma separated).
    #[arg(long, value_enum, value_delimiter = ',', default_value = "raw")]
    pub on: Vec<Repr>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AcfArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[command(flatten)]
    pub sax: SaxArgs,
    /// Largest lag; defaults to min(n - 2, 10 log10 n).
    #[arg(long)]
    pub max_lag: Option<usize>,
    /// Count lag 0 in the mean absolute ACF.
    #[arg(long)]
    pub include_lag0: bool,
    /// Representations: raw, sax, paa (comma separated).
    #[arg(long, value_enum, value_delimiter = ',', default_value = "raw")]
    pub on: Vec<Repr>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Training (or only) split; repeat for several datasets.
    #[arg(long, short, required = true)]
    pub input: Vec<PathBuf>,
    /// Test split, paired with --input by position.
    #[arg(long)]
    pub test: Vec<PathBuf>,
    #[command(flatten)]
    pub sax: SaxArgs,
    #[arg(long, value_enum, default_value_t = BinningArg::Quantile)]
    pub binning: BinningArg,
    #[arg(long)]
    pub max_lag: Option<usize>,
    #[arg(long)]
    pub include_lag0: bool,
    #[arg(long, value_parser = list, default_value = "2..7")]
    pub orders: List,
    #[arg(long, value_parser = list, default_value = "1..10")]
    pub delays: List,
    /// Bag-of-patterns subwindow; defaults to round(n / 4) clamped to [w, n].
    #[arg(long)]
    pub subwindow: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RegressArgs {
    /// CSV with columns dataset,sax_iec,paa_iec,err_sax,err_raw[,benchmark].
    #[arg(long)]
    pub pairs: PathBuf,
    /// Also use rows whose benchmark column is false.
    #[arg(long)]
    pub all_rows: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long)]
    pub test: PathBuf,
    /// Word lengths to try.
    #[arg(long, value_parser = list, default_value = "2..12")]
    pub w_grid: List,
    /// Alphabet sizes to try.
    #[arg(long, value_parser = list, default_value = "3..10")]
    pub a_grid: List,
    /// Subwindow lengths to try; the default subwindow for each w when omitted.
    #[arg(long, value_parser = list)]
    pub subwindow_grid: Option<List>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SynthKind {
    /// Standard Gaussian white noise.
    Noise,
    /// Gaussian AR(1) process with coefficient --phi.
    Ar1,
    /// Sine of period --period with random phase plus --noise.
    Sine,
    /// Two classes of rising and falling sawtooth of period --period.
    Motifs,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, value_enum)]
    pub kind: SynthKind,
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[arg(long, default_value_t = 128)]
    pub length: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.7, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long, default_value_t = 32)]
    pub period: usize,
    /// Standard deviation of Gaussian noise added to sine and motif samples.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    /// Output file, replaced atomically; standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
