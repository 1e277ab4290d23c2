use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use entropy_extremes::bounds::{self, BoundReport};
use entropy_extremes::channel::{self, Channel};
use entropy_extremes::region::{self, RegionCurve, DEFAULT_RESOLUTION};
use entropy_extremes::verify::{self, Exec, SuiteConfig};
use entropy_extremes::{Error, MeasureKind, MeasureSpec, Order, ProbVec, XAxis};
use serde_json::json;

const THREADS_VAR: &str = "ENTROPY_EXTREMES_THREADS";

/// Tight bounds between Shannon entropy and ℓα-norms, and the measures built
/// on them. All values are in nats unless `--bits` is given.
#[derive(Parser)]
#[command(name = "entropy-extremes", version)]
struct Cli {
    /// Print entropy-valued results in bits.
    #[arg(long, global = true)]
    bits: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bounds for one distribution at its Shannon entropy.
    Bound(BoundArgs),
    /// Write the boundary curves of a feasible region.
    Region(RegionArgs),
    /// Classify a channel or evaluate E0 and its bounds.
    Channel(ChannelArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct BoundArgs {
    /// Distribution as a JSON array, a CSV row, or a path to either.
    #[arg(long)]
    dist: String,
    /// Measure name (alpha-norm, renyi, tsallis, type-beta, gamma, r-norm,
    /// index-of-coincidence, renyi-divergence, gallager-e0).
    #[arg(long, default_value = "alpha-norm")]
    measure: String,
    /// Order α (or t); `inf` for the maximum entry.
    #[arg(long)]
    order: String,
    /// Bound the Shannon entropy at the distribution's ℓα-norm instead.
    #[arg(long)]
    at_norm: bool,
}

#[derive(Args)]
struct RegionArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "alpha-norm")]
    measure: String,
    #[arg(long)]
    order: String,
    /// Output path.
    #[arg(long)]
    out: PathBuf,
    /// entropy, divergence or mutual-information.
    #[arg(long, default_value = "entropy")]
    x_axis: String,
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    resolution: usize,
    /// Write JSON instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group = ArgGroup::new("action").required(true))]
struct ChannelArgs {
    /// Channel as JSON {"matrix": [[...]]} or CSV, one row per input.
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, group = "action")]
    classify: bool,
    /// Gallager's E0 at `--rho`.
    #[arg(long, group = "action", requires = "rho")]
    e0: bool,
    /// E0 with its bounds at `--rho`; the channel must be uniformly focusing.
    #[arg(long, group = "action", requires = "rho")]
    e0_bounds: bool,
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<f64>,
    /// Input distribution for `--e0`; uniform when omitted.
    #[arg(long)]
    input: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9, allow_hyphen_values = true)]
    tolerance: f64,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
    /// Print the full report as JSON.
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn nat_scale(bits: bool) -> f64 {
    if bits {
        std::f64::consts::LN_2.recip()
    } else {
        1.0
    }
}

fn in_nats(kind: MeasureKind) -> bool {
    matches!(
        kind,
        MeasureKind::Renyi | MeasureKind::RenyiDivergence | MeasureKind::GallagerE0
    )
}

fn scaled(mut r: BoundReport, k: f64) -> BoundReport {
    r.value *= k;
    r.lower *= k;
    r.upper *= k;
    r
}

fn parse_order(s: &str) -> Result<Order, Failure> {
    let order: Order = s.parse()?;
    if order == Order::Shannon {
        return Err(Failure::Usage(
            "order 1 is excluded: every distribution has norm 1 there, so there is nothing to \
             bound; choose an order other than 1"
                .into(),
        ));
    }
    Ok(order)
}

fn parse_spec(measure: &str, order: &str) -> Result<MeasureSpec, Failure> {
    let kind: MeasureKind = measure.parse()?;
    Ok(MeasureSpec::new(kind, parse_order(order)?)?)
}

/// The argument itself, or the contents of the file it names.
fn inline_or_file(arg: &str) -> Result<String, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn bound(a: &BoundArgs, bits: bool) -> Outcome {
    let p = ProbVec::parse(&inline_or_file(&a.dist)?)?;
    let report = if a.at_norm {
        let kind: MeasureKind = a.measure.parse()?;
        if kind != MeasureKind::AlphaNorm {
            return Err(Failure::Usage("--at-norm works with --measure alpha-norm only".into()));
        }
        scaled(bounds::entropy_bounds_at_norm(&p, parse_order(&a.order)?)?, nat_scale(bits))
    } else {
        let spec = parse_spec(&a.measure, &a.order)?;
        let r = bounds::measure_bounds_at_entropy(&p, &spec)?;
        if in_nats(spec.kind()) {
            scaled(r, nat_scale(bits))
        } else {
            r
        }
    };
    println!("{}", report.to_json());
    Ok(())
}

fn region_cmd(a: &RegionArgs, bits: bool) -> Outcome {
    let spec = parse_spec(&a.measure, &a.order)?;
    let x_axis: XAxis = a.x_axis.parse()?;
    let (v, w) = region::boundary_curves(a.n, &spec, x_axis, a.resolution)?;
    let k = nat_scale(bits);
    let ky = if in_nats(spec.kind()) { k } else { 1.0 };
    let rescale = |c: RegionCurve| RegionCurve {
        points: c.points.iter().map(|(x, y)| (x * k, y * ky)).collect(),
        ..c
    };
    let curves = [rescale(v), rescale(w)];
    let io = |e: Error| Failure::Usage(format!("{}: {e}", a.out.display()));
    if a.json {
        fs::write(&a.out, region::curves_to_json(&curves) + "\n")
            .map_err(|e| io(Error::Io(e)))?;
    } else {
        region::emit_csv(&curves, &a.out).map_err(io)?;
    }
    Ok(())
}

fn channel_cmd(a: &ChannelArgs, bits: bool) -> Outcome {
    let text = fs::read_to_string(&a.matrix)
        .map_err(|e| Failure::Usage(format!("{}: {e}", a.matrix.display())))?;
    let ch = Channel::parse(&text)?;
    let k = nat_scale(bits);
    let out = if a.classify {
        serde_json::to_string(&channel::classify(&ch, 1e-9)).expect("serializable")
    } else if a.e0 {
        let rho = a.rho.expect("required by clap");
        let input = match &a.input {
            Some(s) => ProbVec::parse(&inline_or_file(s)?)?,
            None => ProbVec::uniform(ch.input_size())?,
        };
        json!({ "rho": rho, "e0": channel::gallager_e0(&ch, &input, rho)? * k }).to_string()
    } else {
        let rho = a.rho.expect("required by clap");
        scaled(channel::e0_bounds(&ch, rho)?, k).to_json()
    };
    println!("{out}");
    Ok(())
}

fn verify_cmd(a: &VerifyArgs) -> Outcome {
    let cfg = SuiteConfig {
        n: a.n,
        samples: a.samples,
        seed: a.seed,
        tolerance: a.tolerance,
        exec: if a.sequential { Exec::Sequential } else { Exec::Parallel },
    };
    let report = verify::run_suite(&cfg)?;
    if a.json {
        println!("{}", report.to_json());
    } else {
        println!("verify n={} samples={} seed={}", report.n, report.samples, report.seed);
        for c in &report.checks {
            println!(
                "{} {:<22} checked={:<9} violations={:<6} max_excess={:.3e}",
                if c.tally.passed() { "PASS" } else { "FAIL" },
                c.name,
                c.tally.checked,
                c.tally.violations,
                c.tally.max_excess,
            );
        }
        let failed = report.checks.iter().filter(|c| !c.tally.passed()).count();
        println!(
            "{} passed, {failed} failed, {} violations",
            report.checks.len() - failed,
            report.total_violations()
        );
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn configure_threads() -> Outcome {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|t| *t > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_VAR} must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Bound(a) => bound(a, cli.bits),
        Command::Region(a) => region_cmd(a, cli.bits),
        Command::Channel(a) => channel_cmd(a, cli.bits),
        Command::Verify(a) => verify_cmd(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(2),
    }
}
