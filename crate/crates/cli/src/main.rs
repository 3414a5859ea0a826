mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hodgekp_core::checks::{find_check, CheckOptions, CHECKS};
use hodgekp_core::curve::CurveParams;
use hodgekp_core::tau::{build_series, SeriesKind};

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;

#[derive(Parser)]
#[command(name = "hodgekp", version, about = "Exact verification of Givental and Heisenberg-Virasoro actions on KP tau-functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named check (or `all`) over one point or the configured catalog.
    Verify(VerifyArgs),
    /// Dump a tau-function or partition function as JSON.
    Tau(TauArgs),
    /// List the available checks.
    ListChecks {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Clone, Debug)]
struct PointArgs {
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
}

impl PointArgs {
    fn parse(&self) -> Result<Option<CurveParams>, String> {
        match (&self.q, &self.p, &self.s) {
            (None, None, None) => Ok(None),
            (Some(q), Some(p), Some(s)) => CurveParams::parse(q, p, s).map(Some).map_err(|e| e.to_string()),
            _ => Err("--q, --p and --s must be given together".into()),
        }
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Check name from `list-checks`, or `all`.
    check: String,
    #[command(flatten)]
    point: PointArgs,
    /// Weight budget (per-check default otherwise).
    #[arg(long)]
    weight: Option<u32>,
    /// Series order for the curve data.
    #[arg(long)]
    order: Option<u32>,
    /// Value of hbar for the Hirota checks; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    hbar: Vec<String>,
    /// Run the off-family negative control of `identification`.
    #[arg(long)]
    perturbed: bool,
    /// Largest parameter degree kept when dressing a base tau-function.
    #[arg(long)]
    coupling: Option<i32>,
    /// Weight of the auxiliary variables in the Hirota expansion.
    #[arg(long)]
    y_weight: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Key-value run configuration (defaults to the shipped catalog).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for the per-check reports and the summary.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TauArgs {
    /// One of kw, bgw, hodge-z, theta-z, tau-qp, tau-theta-qp.
    kind: String,
    #[command(flatten)]
    point: PointArgs,
    #[arg(long)]
    weight: u32,
    #[arg(long)]
    coupling: Option<i32>,
    #[arg(long)]
    out: PathBuf,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("HODGEKP_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| format!("HODGEKP_THREADS={v:?} is not a thread count"))?;
        if n == 0 {
            return Err("HODGEKP_THREADS must be positive".into());
        }
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| e.to_string())
}

fn verify(args: VerifyArgs) -> ExitCode {
    let cfg = match config::load(args.config.as_deref()) {
        Ok(c) => c,
        Err(e) => return usage(format!("config: {e}")),
    };
    let names: Vec<&'static str> = if args.check == "all" {
        CHECKS.iter().map(|c| c.name).collect()
    } else {
        match find_check(&args.check) {
            Some(c) => vec![c.name],
            None => return usage(format!("unknown check {:?}; see `hodgekp list-checks`", args.check)),
        }
    };
    let points = match args.point.parse() {
        Ok(Some(p)) => vec![p],
        Ok(None) => cfg.points.clone(),
        Err(e) => return usage(e),
    };
    let mut hbar = Vec::new();
    for h in &args.hbar {
        match hodgekp_core::algebra::rational::parse(h) {
            Ok(v) => hbar.push(v),
            Err(e) => return usage(e),
        }
    }
    let opts = CheckOptions {
        weight: args.weight,
        order: args.order,
        hbar,
        perturbed: args.perturbed,
        coupling: args.coupling.unwrap_or(cfg.coupling),
        y_weight: args.y_weight,
        mutants: cfg.mutants,
        samples: cfg.samples,
        seed: args.seed.unwrap_or(cfg.seed),
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let jobs = report::jobs(&names, &points, &opts);
    let results = pool.install(|| report::run_all(&jobs, &opts));
    let code = report::emit(&results, args.format, args.out.as_deref());
    ExitCode::from(code)
}

fn tau(args: TauArgs) -> ExitCode {
    let Some(kind) = SeriesKind::parse(&args.kind) else {
        let names: Vec<_> = SeriesKind::ALL.iter().map(|k| k.name()).collect();
        return usage(format!("unknown tau kind {:?}; expected one of {}", args.kind, names.join(", ")));
    };
    let point = match args.point.parse() {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    if kind.needs_point() && point.is_none() {
        return usage(format!("{} needs --q, --p and --s", kind.name()));
    }
    let coupling = args.coupling.unwrap_or(4);
    let series = match build_series(kind, point.as_ref(), args.weight, coupling) {
        Ok(s) => s,
        Err(e) if e.is_usage() => return usage(e),
        Err(e) => {
            eprintln!("internal error: {e}");
            return ExitCode::from(EXIT_INVARIANT);
        }
    };
    let text = serde_json::to_string_pretty(&series).expect("series serializes") + "\n";
    if let Err(e) = std::fs::write(&args.out, text) {
        return usage(format!("{}: {e}", args.out.display()));
    }
    println!("wrote {} terms to {}", series.body.len(), args.out.display());
    ExitCode::SUCCESS
}

fn list_checks(format: Format) -> ExitCode {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(CHECKS).expect("static table")),
        Format::Text => {
            for c in CHECKS {
                let scope = if c.per_point { "per point" } else { "once" };
                println!("{:<20} W={:<3} {:<10} {}", c.name, c.default_weight, scope, c.description);
            }
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(a) => verify(a),
        Command::Tau(a) => tau(a),
        Command::ListChecks { format } => list_checks(format),
    }
}
