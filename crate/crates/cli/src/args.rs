use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gtfa_core::signalio::Shading;

#[derive(Debug, Parser)]
#[command(name = "gtfa", version, about = "Time-frequency distributions and quantization on finite groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute D(u,u) or D(u,v) for a signal file and write it as a symbol CSV.
    Transform(TransformArgs),
    /// Run the kernel property checkers and print one report line per property.
    Verify(VerifyArgs),
    /// Map a symbol CSV to the integral kernel of its operator.
    Quantize(QuantizeArgs),
    /// Recover the symbol of an operator; fails on singular kernels.
    Dequantize(QuantizeArgs),
    /// Recover a signal, up to a global phase, from a Born–Jordan distribution on ℤ/N.
    Reconstruct(ReconstructArgs),
    /// Render the waveform, ℤ and ℤ/N Born–Jordan pictures and a Gaussian spectrogram.
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
pub struct GroupKernel {
    /// cyclic:N, dihedral:n, product:<a>x<b> or file:<path>
    #[arg(long)]
    pub group: String,
    /// kn, anti-kn, born-jordan, wigner-odd, margin-fix, spectrogram:<window.csv>,
    /// commutator:<f.csv>:<g.csv> or file:<kernel.csv>
    #[arg(long)]
    pub kernel: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PgmMode {
    Midgrey,
    White,
}

impl From<PgmMode> for Shading {
    fn from(m: PgmMode) -> Self {
        match m {
            PgmMode::Midgrey => Shading::MidgreyZero,
            PgmMode::White => Shading::WhiteZero,
        }
    }
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub gk: GroupKernel,
    /// Signal CSV (`index,re,im`).
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Second signal for the cross distribution D(u,v).
    #[arg(long)]
    pub second: Option<PathBuf>,
    /// Output symbol CSV (`x,eta_index,row,col,re,im`).
    #[arg(long)]
    pub out: PathBuf,
    /// Also render the real trace of each block as a PGM.
    #[arg(long, value_enum)]
    pub pgm: Option<PgmMode>,
    /// PGM path; defaults to the output path with a `.pgm` extension.
    #[arg(long)]
    pub pgm_out: Option<PathBuf>,
    /// Apply v ↦ sign(v)|v|^γ before shading.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub gk: GroupKernel,
    /// Comma-separated properties that must hold for exit status 0.
    #[arg(long, value_delimiter = ',')]
    pub require: Vec<String>,
    /// Also write the reports as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QuantizeArgs {
    #[command(flatten)]
    pub gk: GroupKernel,
    /// Symbol CSV for quantize, operator CSV (`x,y,re,im`) for dequantize.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// Must be cyclic:N.
    #[arg(long)]
    pub group: String,
    /// Distribution CSV (`x,eta_index,row,col,re,im`).
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Recovered signal CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Text report; printed to standard output when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Original signal, to report the distance between phase classes.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Margin magnitudes below this are treated as zero samples.
    #[arg(long, default_value_t = 1e-9)]
    pub tol_zero: f64,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    /// 16-bit mono PCM input.
    #[arg(long, conflicts_with = "signal", required_unless_present = "signal")]
    pub wav: Option<PathBuf>,
    /// Real signal CSV (`index,re,im`) of any length, instead of a WAV file.
    #[arg(long)]
    pub signal: Option<PathBuf>,
    /// Directory for waveform.csv, q_z.pgm, q_cyclic.pgm and spectrogram.pgm.
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Period N for the cyclic pictures; defaults to the signal length.
    #[arg(long)]
    pub period: Option<usize>,
    /// Frequency samples M for the ℤ picture; defaults to the signal length.
    #[arg(long)]
    pub freq_bins: Option<usize>,
    /// Gaussian window width; defaults to N/16.
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Add |u(x)|² on the zero-lag axis of the ℤ distribution.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub axis_fix: bool,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
}
