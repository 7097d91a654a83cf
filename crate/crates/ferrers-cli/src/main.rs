//! `ferrers`: evaluate Ferrers functions through their uniform asymptotic
//! expansions, sweep error tables against the reference implementation,
//! run the self-test suite and dump the coefficient tables.

mod selftest;

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use ferrers::coeffs::{dump, Table};
use ferrers::legendre::{error_rows, ErrorRow, Evaluator};
use ferrers::numerics::Ctx;
use ferrers::oracle::{ferrers_p_prime_ref, ferrers_p_ref, ferrers_q_ref};
use ferrers::tpgeom::Params;
use ferrers::Error;
use rug::Float;

const EXIT_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "ferrers", version, about = "Ferrers functions of large degree and order")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function value.
    Eval(EvalArgs),
    /// Write the error table `x,omega,asymptotic,reference,envelope` as CSV.
    ErrorPlot(PlotArgs),
    /// Run the invariant suite.
    Selftest(SelftestArgs),
    /// Print a coefficient table as exact rationals, one `s k j num/den` per line.
    Coeffs(CoeffsArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("order").required(true).args(["a", "mu"])))]
struct ParamArgs {
    /// Degree ν.
    #[arg(long)]
    nu: String,
    /// Turning-point parameter, with μ = (1 - a²)^{1/2}(ν + ½).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Order μ, as an alternative to --a.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Number of terms kept in each coefficient expansion.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=4))]
    terms: u8,
    /// Working precision in significant decimal digits.
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(10..=1000))]
    digits: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<Params, Failure> {
        let ctx = Ctx::new(self.digits);
        let nu = ctx.parse(&self.nu).map_err(Failure::usage)?;
        let p = match (&self.a, &self.mu) {
            (Some(a), _) => Params::new(ctx, &nu, &ctx.parse(a).map_err(Failure::usage)?),
            (None, Some(mu)) => Params::from_mu(ctx, &nu, &ctx.parse(mu).map_err(Failure::usage)?),
            (None, None) => unreachable!("clap requires one of --a and --mu"),
        };
        p.map_err(Failure::usage)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Function {
    #[value(name = "P")]
    P,
    #[value(name = "Q")]
    Q,
    #[value(name = "Pprime")]
    Pprime,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Evaluation point in (-1, 1).
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, value_enum, default_value = "P")]
    function: Function,
    /// Also evaluate the reference implementation and report the relative error.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct PlotArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, allow_hyphen_values = true)]
    grid_start: String,
    #[arg(long, allow_hyphen_values = true)]
    grid_stop: String,
    #[arg(long)]
    grid_step: String,
    #[arg(long)]
    out: PathBuf,
    /// Worker threads for the sweep.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

#[derive(Args)]
struct SelftestArgs {
    /// Run only checks whose module or name contains this string.
    #[arg(long)]
    filter: Option<String>,
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(5..=1000))]
    digits: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    /// Coefficients of the Legendre Liouville–Green expansion.
    E,
    /// Coefficients of the parabolic cylinder expansion.
    PcfE,
    /// Coefficients of the derivative expansion.
    PcfEtilde,
}

#[derive(Args)]
struct CoeffsArgs {
    #[arg(long, value_enum, default_value = "e")]
    table: TableArg,
    /// Highest index to generate.
    #[arg(long, default_value_t = 7)]
    max_s: usize,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(e: Error) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }

    fn usage_msg(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) }
    }
}

/// Invalid arguments are usage errors; anything else is a failed computation.
fn classify(e: Error) -> Failure {
    match e {
        Error::Domain(_) | Error::Range(_) | Error::Excluded(_) | Error::BranchAmbiguity(_) => Failure::usage(e),
        other => Failure { code: EXIT_CHECK, message: other.to_string() },
    }
}

/// Scientific notation with `digits` significant digits.
fn sci(ctx: &Ctx, v: &Float) -> String {
    let digits = ctx.digits() as usize;
    if v.is_zero() {
        // MPFR prints zero without a mantissa
        let sign = if v.is_sign_negative() { "-" } else { "" };
        return format!("{sign}0.{:0<width$}e0", "", width = digits - 1);
    }
    // rug reads the precision as a count of significant digits
    format!("{v:.digits$e}")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(args) => cmd_eval(&args),
        Command::ErrorPlot(args) => cmd_error_plot(&args),
        Command::Selftest(args) => cmd_selftest(&args),
        Command::Coeffs(args) => cmd_coeffs(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn cmd_eval(args: &EvalArgs) -> Result<u8, Failure> {
    let p = args.params.params()?;
    let ctx = p.ctx;
    let x = ctx.parse(&args.x).map_err(Failure::usage)?;
    let ev = Evaluator::new(&p, args.params.terms as usize).map_err(classify)?;

    let start = Instant::now();
    let value = match args.function {
        Function::P => ev.p(&x),
        Function::Q => ev.q(&x),
        Function::Pprime => ev.p_prime(&x),
    }
    .map_err(classify)?;
    let asym_time = start.elapsed();

    println!("nu         {}", sci(&ctx, &p.nu));
    println!("mu         {}", sci(&ctx, &p.mu));
    println!("a          {}", sci(&ctx, &p.a));
    println!("x          {}", sci(&ctx, &x));
    println!("asymptotic {}", sci(&ctx, &value));
    println!("time_asymptotic_s {:.6}", asym_time.as_secs_f64());
    if args.check {
        let start = Instant::now();
        let reference = match args.function {
            Function::P => ferrers_p_ref(&p, &x),
            Function::Q => ferrers_q_ref(&p, &x),
            Function::Pprime => ferrers_p_prime_ref(&p, &x),
        }
        .map_err(classify)?;
        let ref_time = start.elapsed();
        let err = Float::with_val(ctx.bits(), &value - &reference);
        let rel = if reference.is_zero() { err.abs() } else { (err / &reference).abs() };
        println!("reference  {}", sci(&ctx, &reference));
        println!("rel_error  {:.3e}", rel.to_f64());
        println!("time_reference_s {:.6}", ref_time.as_secs_f64());
    }
    Ok(0)
}

/// `start + k·step` for every `k` with the point not beyond `stop`.
fn grid(ctx: &Ctx, start: &str, stop: &str, step: &str) -> Result<Vec<Float>, Failure> {
    let start = ctx.parse(start).map_err(Failure::usage)?;
    let stop = ctx.parse(stop).map_err(Failure::usage)?;
    let step = ctx.parse(step).map_err(Failure::usage)?;
    if step.cmp0() != Some(std::cmp::Ordering::Greater) {
        return Err(Failure::usage_msg("--grid-step must be positive"));
    }
    if start > stop {
        return Ok(Vec::new());
    }
    let span: Float = Float::with_val(ctx.bits(), &stop - &start) / &step;
    // points that land on `stop` up to rounding are kept
    let count = Float::with_val(ctx.bits(), span + 1e-9).floor().to_f64() as usize + 1;
    Ok((0..count).map(|k| Float::with_val(ctx.bits(), &step * k as u32) + &start).collect())
}

/// Splits the grid into contiguous chunks, one per worker, and concatenates
/// the results in order so the output does not depend on the worker count.
fn sweep(p: &Params, xs: &[Float], terms: usize, jobs: usize) -> ferrers::Result<Vec<ErrorRow>> {
    if jobs <= 1 || xs.len() < 2 {
        return error_rows(p, xs, terms);
    }
    let chunk = xs.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = xs.chunks(chunk).map(|part| scope.spawn(move || error_rows(p, part, terms))).collect();
        let mut rows = Vec::with_capacity(xs.len());
        for h in handles {
            rows.extend(h.join().expect("sweep worker panicked")?);
        }
        Ok(rows)
    })
}

fn cmd_error_plot(args: &PlotArgs) -> Result<u8, Failure> {
    let p = args.params.params()?;
    let ctx = p.ctx;
    let mut xs = grid(&ctx, &args.grid_start, &args.grid_stop, &args.grid_step)?;
    let mut file = File::create(&args.out).map_err(|e| Failure::io(&args.out, e))?;

    xs.sort_by(|a, b| a.partial_cmp(b).expect("grid points are finite"));
    let rows = sweep(&p, &xs, args.params.terms as usize, args.jobs as usize).map_err(classify)?;

    let mut csv = format!(
        "# meta: nu={},a={},mu={},terms={},digits={}\nx,omega,asymptotic,reference,envelope\n",
        sci(&ctx, &p.nu),
        sci(&ctx, &p.a),
        sci(&ctx, &p.mu),
        args.params.terms,
        ctx.digits()
    );
    for r in &rows {
        let fields = [&r.x, &r.omega, &r.asymptotic, &r.reference, &r.envelope].map(|v| sci(&ctx, v));
        csv.push_str(&fields.join(","));
        csv.push('\n');
    }
    file.write_all(csv.as_bytes()).map_err(|e| Failure::io(&args.out, e))?;

    if let Some(worst) = rows.iter().map(|r| r.omega.to_f64()).reduce(f64::max) {
        let mut om: Vec<f64> = rows.iter().map(|r| r.omega.to_f64()).collect();
        om.sort_by(f64::total_cmp);
        println!("rows {}  max omega {:.3}  median omega {:.3}", rows.len(), worst, om[om.len() / 2]);
    } else {
        println!("rows 0");
    }
    Ok(0)
}

fn cmd_selftest(args: &SelftestArgs) -> Result<u8, Failure> {
    let ctx = Ctx::new(args.digits);
    let report = selftest::run(&ctx, args.filter.as_deref());
    if report.results.is_empty() {
        return Err(Failure::usage_msg(format!("no checks match {:?}", args.filter.as_deref().unwrap_or(""))));
    }
    print!("{}", report.table());
    let failed = report.failed();
    if failed.is_empty() {
        println!("all {} checks passed", report.results.len());
        Ok(0)
    } else {
        println!("failed: {}", failed.join(", "));
        Ok(EXIT_CHECK)
    }
}

fn cmd_coeffs(args: &CoeffsArgs) -> Result<u8, Failure> {
    let table = match args.table {
        TableArg::E => Table::E,
        TableArg::PcfE => Table::PcfE,
        TableArg::PcfEtilde => Table::PcfETilde,
    };
    let text = dump(table, args.max_s).map_err(Failure::usage)?;
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).map_err(|e| Failure { code: EXIT_IO, message: e.to_string() })?;
    Ok(0)
}
