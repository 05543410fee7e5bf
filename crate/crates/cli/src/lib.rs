//! `blocktoep` command-line verifier.
//!
//! Exit codes: 0 the property holds, 1 it fails, 2 usage/IO/parse error,
//! 3 the structured test and the dense oracle disagree.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use blocktoep::bench::bench;
use blocktoep::displacement::{interior_residual, toeplitz_factor};
use blocktoep::io::{generate_with, parse, serialize, Branch, GenKind, GenOptions, MatrixFile};
use blocktoep::linalg::complex;
use blocktoep::normality::{block_normal_classify, DiagonalBlockToeplitz};
use blocktoep::oracle::{
    dense_product_verdict, diagonal_scan_is_toeplitz, normal_oracle, CheckMode, DENSE_CAP,
};
use blocktoep::product::{difference_gap_check, product_gap_check, products_equal_check};
use blocktoep::{flatten, BlockToeplitz, Tolerance, C64};
use clap::{Args, Parser, Subcommand};

mod report;

pub use report::{OracleReport, Report, SliceReport, Timings};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "blocktoep", version, about = "Block Toeplitz structure, product and normality checks")]
struct Cli {
    /// Relative tolerance.
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_EPS)]
    tol: f64,
    /// Cross-check against the dense brute-force oracle.
    #[arg(long, global = true)]
    oracle: bool,
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for `gen` and `bench`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide a structural property of matrix files.
    #[command(subcommand)]
    Check(Check),
    /// Write generated instances.
    Gen(GenArgs),
    /// Time the structured difference test against dense verification.
    Bench(BenchArgs),
}

#[derive(Debug, Subcommand)]
enum Check {
    /// Is F block Toeplitz?
    Toeplitz { file: PathBuf },
    /// Is AB block Toeplitz?
    Product { a: PathBuf, b: PathBuf },
    /// Is AB - CD block Toeplitz?
    Difference { a: PathBuf, b: PathBuf, c: PathBuf, d: PathBuf },
    /// Is AB = CD?
    Equal { a: PathBuf, b: PathBuf, c: PathBuf, d: PathBuf },
    /// Is A (block Toeplitz with diagonal blocks) normal?
    Normal { a: PathBuf },
}

#[derive(Debug, Args)]
struct GenArgs {
    /// random-toeplitz, lower-triangular, circulant, gap-matched-quadruple,
    /// normal-slices, non-normal or random-grid
    kind: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    /// Branch for normal-slices: circulant, conjugate or mixed.
    #[arg(long, default_value = "mixed")]
    branch: String,
    /// Common lambda for normal-slices as `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Output path; quadruples append `.a.json` .. `.d.json`. Stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 5)]
    reps: usize,
}

/// Failure that maps to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<i32, UsageError>;

struct Ctx {
    tol: Tolerance,
    oracle: bool,
    json: bool,
    seed: u64,
    echo: Vec<String>,
}

impl Ctx {
    fn emit(&self, report: &Report) -> i32 {
        if self.json {
            print!("{}", report.to_json());
        } else {
            print!("{}", report.to_text());
        }
        if report.disagrees() {
            eprintln!("error: structured result and dense oracle disagree");
            EXIT_DISAGREE
        } else if report.verdict {
            EXIT_HOLDS
        } else {
            EXIT_FAILS
        }
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_HOLDS };
        }
    };
    let tol = match Tolerance::new(cli.tol) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let ctx = Ctx {
        tol,
        oracle: cli.oracle,
        json: cli.json,
        seed: cli.seed,
        echo: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
    };
    let result = match cli.command {
        Command::Check(check) => run_check(&ctx, check),
        Command::Gen(g) => run_gen(&ctx, g),
        Command::Bench(b) => run_bench(&ctx, b),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn load(path: &Path) -> Result<MatrixFile, UsageError> {
    let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

/// Block Toeplitz operand; dense files must pass the displacement test.
fn load_toeplitz(path: &Path, tol: Tolerance) -> Result<BlockToeplitz, UsageError> {
    match load(path)? {
        MatrixFile::BlockToeplitz(t) => Ok(t),
        MatrixFile::DiagonalBlockToeplitz(t) => Ok(t.to_block_toeplitz()),
        MatrixFile::Dense(g) => toeplitz_factor(&g, tol)
            .map(|f| f.to_toeplitz())
            .ok_or_else(|| UsageError(format!("{}: operand is not block Toeplitz", path.display()))),
    }
}

fn load_all(paths: &[&PathBuf], tol: Tolerance) -> Result<Vec<BlockToeplitz>, UsageError> {
    let ops = paths
        .iter()
        .map(|p| load_toeplitz(p, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let shape = (ops[0].n(), ops[0].d());
    if let Some(k) = ops.iter().position(|t| (t.n(), t.d()) != shape) {
        return Err(UsageError(format!(
            "{}: shape (n={}, d={}) differs from (n={}, d={})",
            paths[k].display(),
            ops[k].n(),
            ops[k].d(),
            shape.0,
            shape.1
        )));
    }
    Ok(ops)
}

fn ns(t: Instant) -> u64 {
    t.elapsed().as_nanos().try_into().unwrap_or(u64::MAX)
}

fn check_dense_cap(n: usize, d: usize) -> Result<(), UsageError> {
    if n * d > DENSE_CAP {
        return Err(UsageError(format!(
            "dense path needs nd <= {DENSE_CAP}, got {}",
            n * d
        )));
    }
    Ok(())
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn run_check(ctx: &Ctx, check: Check) -> CmdResult {
    let tol = ctx.tol;
    let report = match check {
        Check::Toeplitz { file } => {
            let f = load(&file)?;
            check_dense_cap(f.n(), f.d())?;
            let g = f.to_grid();
            let mut r = Report::new(ctx.echo.clone(), "block Toeplitz structure", tol.eps());
            let t0 = Instant::now();
            let factors = toeplitz_factor(&g, tol);
            r.timings.structured_ns = ns(t0);
            r.verdict = factors.is_some();
            r.residual = Some(interior_residual(&g));
            r.scale = Some(Tolerance::scale([g.max_abs()]));
            if ctx.oracle {
                let t0 = Instant::now();
                let v = diagonal_scan_is_toeplitz(&g, tol);
                r.timings.oracle_ns = Some(ns(t0));
                r.oracle = Some(OracleReport { verdict: v, agrees: v == r.verdict, residual: None });
            }
            r
        }
        Check::Product { a, b } => {
            let ops = load_all(&[&a, &b], tol)?;
            let mut r = Report::new(ctx.echo.clone(), "AB is block Toeplitz", tol.eps());
            let t0 = Instant::now();
            let gap = product_gap_check(&ops[0], &ops[1], tol)?;
            r.timings.structured_ns = ns(t0);
            r.verdict = gap.holds;
            r.residual = Some(gap.residual);
            r.scale = Some(gap.scale);
            if ctx.oracle {
                let zero = BlockToeplitz::zeros(ops[0].n(), ops[0].d());
                r.oracle = Some(dense_oracle(&mut r, [&ops[0], &ops[1], &zero, &zero], CheckMode::Toeplitz, tol)?);
            }
            r
        }
        Check::Difference { a, b, c, d } => {
            let ops = load_all(&[&a, &b, &c, &d], tol)?;
            let mut r = Report::new(ctx.echo.clone(), "AB - CD is block Toeplitz", tol.eps());
            let t0 = Instant::now();
            let gap = difference_gap_check(&ops[0], &ops[1], &ops[2], &ops[3], tol)?;
            r.timings.structured_ns = ns(t0);
            r.verdict = gap.holds;
            r.residual = Some(gap.residual);
            r.scale = Some(gap.scale);
            if ctx.oracle {
                r.oracle = Some(dense_oracle(&mut r, [&ops[0], &ops[1], &ops[2], &ops[3]], CheckMode::Toeplitz, tol)?);
            }
            r
        }
        Check::Equal { a, b, c, d } => {
            let ops = load_all(&[&a, &b, &c, &d], tol)?;
            let mut r = Report::new(ctx.echo.clone(), "AB = CD", tol.eps());
            let t0 = Instant::now();
            let eq = products_equal_check(&ops[0], &ops[1], &ops[2], &ops[3], tol)?;
            r.timings.structured_ns = ns(t0);
            r.verdict = eq.holds;
            // worst of the two tests, each relative to its own scale
            r.residual = Some((eq.gap.residual / eq.gap.scale).max(eq.border_residual / eq.border_scale));
            r.scale = Some(1.0);
            if ctx.oracle {
                r.oracle = Some(dense_oracle(&mut r, [&ops[0], &ops[1], &ops[2], &ops[3]], CheckMode::Equal, tol)?);
            }
            r
        }
        Check::Normal { a } => {
            let t = match load(&a)? {
                MatrixFile::DiagonalBlockToeplitz(t) => t,
                MatrixFile::BlockToeplitz(t) => DiagonalBlockToeplitz::from_block_toeplitz(&t)?,
                MatrixFile::Dense(_) => {
                    let t = load_toeplitz(&a, tol)?;
                    DiagonalBlockToeplitz::from_block_toeplitz(&t)?
                }
            };
            let mut r = Report::new(ctx.echo.clone(), "A is normal", tol.eps());
            let t0 = Instant::now();
            let v = block_normal_classify(&t, tol);
            r.timings.structured_ns = ns(t0);
            r.verdict = v.overall;
            r.scale = Some(Tolerance::scale(t.symbols().iter().flatten().map(|z| z.norm())));
            if v.overall {
                let worst = v
                    .slices
                    .iter()
                    .map(|s| {
                        [s.circulant, s.conjugate]
                            .iter()
                            .flatten()
                            .map(|f| f.residual)
                            .fold(f64::INFINITY, f64::min)
                    })
                    .fold(0.0, f64::max);
                r.residual = Some(worst);
            }
            r.slices = v
                .slices
                .iter()
                .map(|s| SliceReport {
                    slice: s.slice,
                    classification: s.classification.to_string(),
                    lambda: s.lambda.map(pair),
                })
                .collect();
            r.lambda = v.lambdas().into_iter().map(|l| l.map(pair)).collect();
            if ctx.oracle {
                check_dense_cap(t.n(), t.d())?;
                let t0 = Instant::now();
                let o = normal_oracle(&flatten(&t.to_block_toeplitz().expand()), tol)?;
                r.timings.oracle_ns = Some(ns(t0));
                r.oracle = Some(OracleReport { verdict: o, agrees: o == r.verdict, residual: None });
            }
            r
        }
    };
    Ok(ctx.emit(&report))
}

fn dense_oracle(
    r: &mut Report,
    ops: [&BlockToeplitz; 4],
    mode: CheckMode,
    tol: Tolerance,
) -> Result<OracleReport, UsageError> {
    check_dense_cap(ops[0].n(), ops[0].d())?;
    let t0 = Instant::now();
    let v = dense_product_verdict(ops[0], ops[1], ops[2], ops[3], mode, tol)?;
    r.timings.oracle_ns = Some(ns(t0));
    Ok(OracleReport {
        verdict: v.holds,
        agrees: v.holds == r.verdict,
        residual: Some(v.residual),
    })
}

fn parse_lambda(s: &str) -> Result<C64, UsageError> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| UsageError(format!("--lambda expects `re,im`, got `{s}`")))?;
    Ok(complex(re.trim().parse()?, im.trim().parse()?)?)
}

fn run_gen(ctx: &Ctx, g: GenArgs) -> CmdResult {
    let kind: GenKind = g.kind.parse()?;
    let opts = GenOptions {
        branch: g.branch.parse::<Branch>()?,
        lambda: g.lambda.as_deref().map(parse_lambda).transpose()?,
    };
    let files = generate_with(kind, g.n, g.d, ctx.seed, &opts)?;
    match (&g.out, files.len()) {
        (None, 1) => print!("{}", serialize(&files[0])),
        (None, _) => return Err(UsageError(format!("{} writes several files; pass --out", kind.as_str()))),
        (Some(path), 1) => fs::write(path, serialize(&files[0]))?,
        (Some(prefix), _) => {
            for (f, tag) in files.iter().zip(["a", "b", "c", "d"]) {
                let mut name = prefix.clone().into_os_string();
                name.push(format!(".{tag}.json"));
                fs::write(&name, serialize(f))?;
            }
        }
    }
    Ok(EXIT_HOLDS)
}

fn run_bench(ctx: &Ctx, b: BenchArgs) -> CmdResult {
    if b.reps == 0 {
        return Err(UsageError("--reps must be at least 1".into()));
    }
    let r = bench(b.n, b.d, b.reps, ctx.seed)?;
    if ctx.json {
        let value = serde_json::json!({
            "command": ctx.echo,
            "n": r.n,
            "d": r.d,
            "reps": r.reps,
            "seed": r.seed,
            "verdicts_agree": r.verdicts_agree,
            "speedup": if r.speedup.is_finite() { Some(r.speedup) } else { None },
            "timings": {
                "structured_median_ns": r.structured_median_ns as u64,
                "dense_median_ns": r.dense_median_ns as u64,
            },
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!("bench n={} d={} reps={} seed={}", r.n, r.d, r.reps, r.seed);
        println!("  structured median: {} ns", r.structured_median_ns);
        println!("  dense median:      {} ns", r.dense_median_ns);
        println!("  speedup:           {:.1}x", r.speedup);
    }
    if r.verdicts_agree {
        Ok(EXIT_HOLDS)
    } else {
        eprintln!("error: structured result and dense oracle disagree");
        Ok(EXIT_DISAGREE)
    }
}
