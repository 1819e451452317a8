//! Command-line front end: validate algebra tables, evaluate expressions,
//! print Gram tables, scan highest weights for unitarity, report singular
//! vectors and induced-module multiplicity bounds.
//!
//! Exit codes: 0 success, 1 domain failure (validation failures, missing
//! table entries), 2 usage or parse errors. All output is deterministic:
//! identical invocations produce identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use superverma_core::error::Error;
use superverma_core::expr::eval_expression;
use superverma_core::gram::HermitianVerdict;
use superverma_core::ktype::{induce_ktype_bound, KTypeTable, Mult, TableDefault};
use superverma_core::scalar::{PolyScalar, Scalar};
use superverma_core::structure::{self, SuperAlgebra, Weight};
use superverma_core::unitary::{
    closed_form_rank1, necessary_conditions, singular_vectors, unitary_scan, ScanVerdict,
    SymbolicPositivity,
};
use superverma_core::verma::{verma, LambdaSpec, VermaModule};

const CSV_VERSION: &str = "superverma-csv v1";

#[derive(Parser)]
#[command(name = "superverma", version, about = "Exact highest-weight module calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra table and report every failing axiom.
    Validate {
        /// `osp12`, `sl2`, or a path to a table file
        #[arg(long)]
        algebra: String,
    },
    /// Print the PBW normal form of an expression, or its highest-weight
    /// action when `--lambda` is given.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        algebra: String,
        /// Highest weight, e.g. `t=-1` (rationals only)
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Gram matrices of the weight levels up to a depth.
    Gram {
        #[arg(long)]
        algebra: String,
        #[arg(long, conflicts_with = "symbolic", allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Keep the highest weight symbolic; entries are polynomials
        #[arg(long)]
        symbolic: bool,
        #[arg(long)]
        depth: usize,
        /// `table` or `csv`
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Scan a rational grid of rank-one highest weights.
    UnitaryScan {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, allow_hyphen_values = true)]
        step: String,
        #[arg(long)]
        depth: usize,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report singular vectors (Gram radical slices) up to a depth.
    Singular {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        depth: usize,
    },
    /// Certified multiplicity bound for a character of an induced module.
    Ktype {
        #[arg(long)]
        algebra: String,
        /// Character multiplicity table of the inducing module
        #[arg(long)]
        module: PathBuf,
        /// The character whose multiplicity is bounded, e.g. `0` or `1/2`
        #[arg(long, allow_hyphen_values = true)]
        ptype: String,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("SUPERVERMA_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            superverma_core::par::configure_threads(n);
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Parse { .. } | Error::UnknownSymbol(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = |msg: &str| Error::Parse { line: 1, col: 1, msg: format!("{msg}: `{s}`") };
    if s.contains('.') {
        return Err(bad("decimal input is rejected, use a rational p/q"));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad("not a rational"))?;
    let d: BigInt = den.parse().map_err(|_| bad("not a rational"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// `t=-1`, `t1=0,t2=-1/2`, or a bare value for rank one.
fn parse_lambda(text: &str, rank: usize) -> Result<Weight, Error> {
    let names = PolyScalar::default_names(rank);
    let mut coords: Vec<Option<BigRational>> = vec![None; rank];
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        match part.split_once('=') {
            Some((name, value)) => {
                let name = name.trim();
                let slot = names.iter().position(|n| n == name).ok_or_else(|| Error::Parse {
                    line: 1,
                    col: 1,
                    msg: format!(
                        "unknown weight coordinate `{name}` (expected {})",
                        names.join(", ")
                    ),
                })?;
                coords[slot] = Some(parse_rational(value)?);
            }
            None => {
                if rank != 1 {
                    return Err(Error::Parse {
                        line: 1,
                        col: 1,
                        msg: "bare weight values are only accepted for rank one".into(),
                    });
                }
                coords[0] = Some(parse_rational(part)?);
            }
        }
    }
    let mut out = Vec::with_capacity(rank);
    for (slot, c) in coords.into_iter().enumerate() {
        match c {
            Some(r) => out.push(Scalar::from_rational(r)),
            None => {
                return Err(Error::Parse {
                    line: 1,
                    col: 1,
                    msg: format!("weight coordinate `{}` is not set", names[slot]),
                })
            }
        }
    }
    Ok(Weight::new(out))
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Validate { algebra } => cmd_validate(&algebra),
        Command::Eval { expr, algebra, lambda } => cmd_eval(&expr, &algebra, lambda.as_deref()),
        Command::Gram { algebra, lambda, symbolic, depth, format } => {
            cmd_gram(&algebra, lambda.as_deref(), symbolic, depth, &format)
        }
        Command::UnitaryScan { algebra, from, to, step, depth, out } => {
            cmd_scan(&algebra, &from, &to, &step, depth, out.as_deref())
        }
        Command::Singular { algebra, lambda, depth } => cmd_singular(&algebra, &lambda, depth),
        Command::Ktype { algebra, module, ptype } => cmd_ktype(&algebra, &module, &ptype),
    }
}

fn require_algebra(spec: &str) -> Result<Arc<SuperAlgebra>, Error> {
    if let Some(alg) = structure::builtin(spec) {
        return Ok(Arc::new(alg));
    }
    let text = std::fs::read_to_string(spec).map_err(|io| Error::Parse {
        line: 0,
        col: 0,
        msg: format!("cannot read `{spec}`: {io}"),
    })?;
    structure::load_algebra(&text).map(Arc::new)
}

fn cmd_validate(spec: &str) -> Result<ExitCode, Error> {
    let data = if let Some(alg) = structure::builtin(spec) {
        alg.data
    } else {
        let text = std::fs::read_to_string(spec).map_err(|io| Error::Parse {
            line: 0,
            col: 0,
            msg: format!("cannot read `{spec}`: {io}"),
        })?;
        structure::parse_algebra(&text)?
    };
    let report = structure::validate(&data);
    print!("{report}");
    Ok(if report.is_ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_eval(expr: &str, algebra: &str, lambda: Option<&str>) -> Result<ExitCode, Error> {
    let alg = require_algebra(algebra)?;
    let value = eval_expression(&alg, expr)?;
    match lambda {
        None => println!("{}", value.render()),
        Some(text) => {
            let weight = parse_lambda(text, alg.rank())?;
            println!("{}", value.act_on_hwv(&weight)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verdict_name(v: &HermitianVerdict) -> &'static str {
    match v {
        HermitianVerdict::PositiveDefinite => "positive-definite",
        HermitianVerdict::SemidefiniteWithKernel(_) => "semidefinite-with-kernel",
        HermitianVerdict::Indefinite { .. } => "indefinite",
    }
}

fn cmd_gram(
    algebra: &str,
    lambda: Option<&str>,
    symbolic: bool,
    depth: usize,
    format: &str,
) -> Result<ExitCode, Error> {
    let alg = require_algebra(algebra)?;
    let spec = if symbolic {
        LambdaSpec::Symbolic
    } else {
        let text = lambda.ok_or_else(|| Error::Parse {
            line: 0,
            col: 0,
            msg: "gram requires --lambda or --symbolic".into(),
        })?;
        LambdaSpec::Numeric(parse_lambda(text, alg.rank())?)
    };
    let module = verma(&alg, spec, depth)?;
    let levels = module.gram_levels(depth)?;
    let names = PolyScalar::default_names(alg.rank());

    match format {
        "csv" => {
            let mut out = String::new();
            if symbolic {
                writeln!(out, "# {CSV_VERSION} gram-symbolic").unwrap();
                writeln!(out, "depth,i,j,entry").unwrap();
                for level in &levels {
                    for i in 0..level.dim() {
                        for j in 0..level.dim() {
                            writeln!(
                                out,
                                "{},{},{},{}",
                                level.depth,
                                i,
                                j,
                                level.entries[i][j].render(&names)
                            )
                            .unwrap();
                        }
                    }
                }
            } else {
                writeln!(out, "# {CSV_VERSION} gram").unwrap();
                writeln!(out, "depth,i,j,re,im,verdict").unwrap();
                for level in &levels {
                    let verdict = verdict_name(level.verdict.as_ref().expect("numeric"));
                    for i in 0..level.dim() {
                        for j in 0..level.dim() {
                            let c = level.entries[i][j].as_constant().expect("numeric");
                            writeln!(
                                out,
                                "{},{},{},{},{},{}",
                                level.depth,
                                i,
                                j,
                                fmt_rat(&c.re),
                                fmt_rat(&c.im),
                                verdict
                            )
                            .unwrap();
                        }
                    }
                }
            }
            print!("{out}");
        }
        "table" => {
            for level in &levels {
                println!("level {} (dim {})", level.depth, level.dim());
                for i in 0..level.dim() {
                    let row: Vec<String> = (0..level.dim())
                        .map(|j| level.entries[i][j].render(&names))
                        .collect();
                    println!("  [ {} ]", row.join(", "));
                }
                match &level.verdict {
                    Some(v @ HermitianVerdict::Indefinite { witness, value }) => {
                        println!("  verdict: {}", verdict_name(v));
                        println!(
                            "  witness: {}  (norm {})",
                            render_level_vector(&module, level.depth, witness),
                            value
                        );
                    }
                    Some(v @ HermitianVerdict::SemidefiniteWithKernel(kernel)) => {
                        println!("  verdict: {}", verdict_name(v));
                        for k in kernel {
                            println!(
                                "  kernel: {}",
                                render_level_vector(&module, level.depth, k)
                            );
                        }
                    }
                    Some(v) => println!("  verdict: {}", verdict_name(v)),
                    None => {}
                }
            }
            // the aggregate certificate: the first indefinite level decides,
            // otherwise the first degenerate one
            if !symbolic {
                let first_indefinite = levels
                    .iter()
                    .find(|l| matches!(l.verdict, Some(HermitianVerdict::Indefinite { .. })));
                let first_kernel = levels.iter().find(|l| {
                    matches!(l.verdict, Some(HermitianVerdict::SemidefiniteWithKernel(_)))
                });
                match (first_indefinite, first_kernel) {
                    (Some(l), _) => println!("certificate: NotUnitary at level {}", l.depth),
                    (None, Some(l)) => println!("certificate: Reducible at level {}", l.depth),
                    (None, None) => println!("certificate: UnitaryToDepth({depth})"),
                }
            }
            if symbolic && alg.rank() == 1 {
                // rank-one closed form: factor the diagonal and report the
                // exact positivity window
                if let Ok(cf) = closed_form_rank1(&alg, depth) {
                    if let Some(positivity) = cf.positivity {
                        println!("closed form: {}", render_positivity(&positivity, depth));
                    }
                }
            }
        }
        other => {
            return Err(Error::Parse {
                line: 0,
                col: 0,
                msg: format!("unknown format `{other}` (expected table or csv)"),
            })
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn render_positivity(p: &SymbolicPositivity, depth: usize) -> String {
    match p {
        SymbolicPositivity::Empty => {
            format!("no weight makes all levels <= {depth} positive definite")
        }
        SymbolicPositivity::Interval { lower, upper } => {
            let cond = match (lower, upper) {
                (None, None) => "all real t".to_string(),
                (Some(l), None) => format!("t > {}", fmt_rat(l)),
                (None, Some(u)) => format!("t < {}", fmt_rat(u)),
                (Some(l), Some(u)) => format!("{} < t < {}", fmt_rat(l), fmt_rat(u)),
            };
            format!("levels 0..={depth} positive definite iff {cond}")
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    use num_traits::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn cmd_scan(
    algebra: &str,
    from: &str,
    to: &str,
    step: &str,
    depth: usize,
    out: Option<&std::path::Path>,
) -> Result<ExitCode, Error> {
    let alg = require_algebra(algebra)?;
    let step_value = parse_rational(step)?;
    if !num_traits::Signed::is_positive(&step_value) {
        return Err(Error::Parse {
            line: 0,
            col: 0,
            msg: format!("scan step must be positive, got {step}"),
        });
    }
    let rows = unitary_scan(&alg, &parse_rational(from)?, &parse_rational(to)?, &step_value, depth)?;
    let mut csv = String::new();
    writeln!(csv, "# {CSV_VERSION} unitary-scan").unwrap();
    writeln!(csv, "t,verdict,level").unwrap();
    for row in &rows {
        let (verdict, level) = match &row.verdict {
            ScanVerdict::UnitaryToDepth(d) => ("UnitaryToDepth", d.to_string()),
            ScanVerdict::NotUnitary { level } => ("NotUnitary", level.to_string()),
            ScanVerdict::Reducible => ("Reducible", String::new()),
        };
        writeln!(csv, "{},{},{}", fmt_rat(&row.t), verdict, level).unwrap();
    }
    match out {
        Some(path) => std::fs::write(path, csv).map_err(|io| Error::Parse {
            line: 0,
            col: 0,
            msg: format!("cannot write `{}`: {io}", path.display()),
        })?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn render_level_vector(module: &VermaModule, level: usize, coords: &[Scalar]) -> String {
    let mut v = superverma_core::verma::ModVector::zero();
    for (i, c) in coords.iter().enumerate() {
        v.add_term((level, i), PolyScalar::constant(module.algebra().rank(), c.clone()));
    }
    module.render_vector(&v)
}

fn cmd_singular(algebra: &str, lambda: &str, depth: usize) -> Result<ExitCode, Error> {
    let alg = require_algebra(algebra)?;
    let weight = parse_lambda(lambda, alg.rank())?;
    let module = verma(&alg, LambdaSpec::Numeric(weight.clone()), depth)?;
    let found = singular_vectors(&module, depth)?;
    let report = necessary_conditions(&alg, &weight)?;
    for row in &report.rows {
        let kind = if row.compact { "compact" } else { "noncompact" };
        let status = if row.ok { "ok" } else { "violated" };
        println!("root {} ({kind}): lambda(H_root) = {} [{status}]", row.root_name, row.value);
    }
    if found.is_empty() {
        println!("no singular vectors up to depth {depth}");
    } else {
        for sv in &found {
            println!(
                "level {}: {}",
                sv.level,
                render_level_vector(&module, sv.level, &sv.coords)
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_mult(text: &str) -> Result<Mult, Error> {
    let text = text.trim();
    if text == "finite" {
        return Ok(Mult::Finite);
    }
    text.parse::<u64>().map(Mult::Count).map_err(|_| Error::Parse {
        line: 1,
        col: 1,
        msg: format!("bad multiplicity `{text}` (expected a count or `finite`)"),
    })
}

fn parse_ktype_table(text: &str, rank: usize) -> Result<KTypeTable, Error> {
    let mut entries = BTreeMap::new();
    let mut default = TableDefault::Missing;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: ln + 1, col: 1, msg };
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match head {
            "default" => {
                let rest = rest.trim();
                default = match rest.split_once(char::is_whitespace) {
                    Some(("uniform", m)) => TableDefault::Uniform(parse_mult(m)?),
                    None if rest == "zero" => TableDefault::Zero,
                    None if rest == "missing" => TableDefault::Missing,
                    _ => return Err(err(format!("bad default `{rest}`"))),
                };
            }
            "entry" => {
                let Some((coords_text, mult_text)) = rest.split_once('=') else {
                    return Err(err("entry requires `coords = mult`".into()));
                };
                let coords: Result<Vec<Scalar>, Error> = coords_text
                    .split_whitespace()
                    .map(|c| parse_rational(c).map(Scalar::from_rational))
                    .collect();
                let coords = coords?;
                if coords.len() != rank {
                    return Err(err(format!("entry needs {rank} coordinates")));
                }
                entries.insert(coords, parse_mult(mult_text)?);
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    Ok(KTypeTable { entries, default })
}

fn cmd_ktype(algebra: &str, module: &std::path::Path, ptype: &str) -> Result<ExitCode, Error> {
    let alg = require_algebra(algebra)?;
    let text = std::fs::read_to_string(module).map_err(|io| Error::Parse {
        line: 0,
        col: 0,
        msg: format!("cannot read `{}`: {io}", module.display()),
    })?;
    let table = parse_ktype_table(&text, alg.rank())?;
    let p: Result<Vec<Scalar>, Error> = ptype
        .split([',', ' '])
        .filter(|s| !s.is_empty())
        .map(|c| parse_rational(c).map(Scalar::from_rational))
        .collect();
    let bound = induce_ktype_bound(&alg, &table, &p?)?;
    println!("odd span dimension: {}", bound.span_dim);
    let contributing: Vec<String> = bound
        .contributing
        .iter()
        .map(|q| {
            let coords: Vec<String> = q.iter().map(|c| c.to_string()).collect();
            format!("({})", coords.join(", "))
        })
        .collect();
    println!("contributing characters: {}", contributing.join(" "));
    println!("multiplicity bound: {}", bound.bound);
    Ok(ExitCode::SUCCESS)
}
