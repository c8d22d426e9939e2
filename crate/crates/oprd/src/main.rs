use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oprd::cli::{run, Command, Format, Input, Invocation, SeriesOp, VeroneseMode};

#[derive(Parser)]
#[command(name = "oprd", version, about = "Groebner bases, Veronese powers, duals and cobar homology for presented operads")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Built-in preset name, e.g. lie or tcom:3:1
    #[arg(long, global = true, conflicts_with = "file")]
    preset: Option<String>,
    /// Presentation file (.oprd)
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Monomial order: rpdl, pdl, or leaves=..,length=..,letters=..
    #[arg(long, global = true)]
    ordering: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Fmt::Json)]
    format: Fmt,
    /// Seed for the randomized witness search in cobar boundaries
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimensions by arity
    Dims {
        #[arg(long, default_value_t = 6)]
        max_arity: usize,
    },
    /// Truncated Groebner basis
    Gb {
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// Normal form of a combination of monomials
    NormalForm {
        #[arg(long)]
        expr: String,
    },
    /// Veronese powers
    Veronese {
        #[arg(value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 5)]
        max_arity: usize,
    },
    /// Quadratic Koszul dual
    Dual {
        #[arg(long, default_value_t = 5)]
        max_arity: usize,
    },
    /// Pure homotopy operad of the k-th Veronese power
    Pure {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 5)]
        max_arity: usize,
    },
    /// Truncated cobar homology, or the non-bounding cycle report
    Cobar {
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        #[arg(long)]
        pure_cycle: Option<usize>,
    },
    /// Power-series analysis
    Series {
        #[command(subcommand)]
        op: SeriesCmd,
    },
    /// Shipped presets
    Preset {
        #[command(subcommand)]
        op: PresetCmd,
    },
    /// Run the reproduction battery
    PaperSuite {
        /// Comma-separated criterion numbers; all when omitted
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Naive,
    Generated,
    Quadratic,
}

#[derive(Args)]
struct SeriesSource {
    /// Comma-separated coefficients of t^0, t^1, ...
    #[arg(long)]
    coeffs: Option<String>,
    #[arg(long, default_value_t = 21)]
    order: usize,
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Compositional inverse by Lagrange inversion
    Invert(SeriesSource),
    /// Series test for Koszulness of a presented operad
    Gk {
        #[arg(long, default_value_t = 9)]
        order: usize,
    },
    /// First negative coefficient of the inverse, or none
    Positivity(SeriesSource),
    /// Check the three-term recurrence of the inverse coefficients
    Recurrence {
        #[arg(long, default_value_t = 200)]
        upto: usize,
    },
    /// Ratio asymptotics of the recurrence solutions
    Ratios {
        #[arg(long, default_value_t = 200)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum PresetCmd {
    List,
    Dump { name: String },
}

fn command(c: Cmd) -> Command {
    match c {
        Cmd::Dims { max_arity } => Command::Dims { max_arity },
        Cmd::Gb { max_arity, max_weight } => Command::Gb { max_arity, max_weight },
        Cmd::NormalForm { expr } => Command::NormalForm { expr },
        Cmd::Veronese { mode, d, max_arity } => Command::Veronese {
            mode: match mode {
                Mode::Naive => VeroneseMode::Naive,
                Mode::Generated => VeroneseMode::Generated,
                Mode::Quadratic => VeroneseMode::Quadratic,
            },
            d,
            max_arity,
        },
        Cmd::Dual { max_arity } => Command::Dual { max_arity },
        Cmd::Pure { k, max_arity } => Command::Pure { k, max_arity },
        Cmd::Cobar { max_arity, pure_cycle } => Command::Cobar { max_arity, pure_cycle },
        Cmd::Series { op } => Command::Series(match op {
            SeriesCmd::Invert(s) => SeriesOp::Invert { coeffs: s.coeffs, order: s.order },
            SeriesCmd::Gk { order } => SeriesOp::Gk { order },
            SeriesCmd::Positivity(s) => SeriesOp::Positivity { coeffs: s.coeffs, order: s.order },
            SeriesCmd::Recurrence { upto } => SeriesOp::Recurrence { upto },
            SeriesCmd::Ratios { n } => SeriesOp::Ratios { n },
        }),
        Cmd::Preset { op: PresetCmd::List } => Command::PresetList,
        Cmd::Preset { op: PresetCmd::Dump { name } } => Command::PresetDump { name },
        Cmd::PaperSuite { criteria } => Command::PaperSuite { criteria },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = match (cli.preset, cli.file) {
        (Some(p), _) => Input::Preset(p),
        (None, Some(f)) => Input::File(f),
        (None, None) => Input::None,
    };
    let inv = Invocation {
        command: command(cli.command),
        input,
        order: cli.ordering,
        format: match cli.format {
            Fmt::Json => Format::Json,
            Fmt::Tsv => Format::Tsv,
        },
        seed: cli.seed,
    };
    let out = run(&inv);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
