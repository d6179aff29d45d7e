use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use frobenius::coadjoint::{coadjoint_action, is_open_orbit, normal_form};
use frobenius::extension::ExtensionData;
use frobenius::fibration::{self, MultiIndex};
use frobenius::io;
use frobenius::liealg::{base_covector, canonical_basis, grp_inv, grp_mul, Algebra, Covector, GrpElem, Params};
use frobenius::reduction::{reduce_canonical, verify_canonical};
use frobenius::sampling;
use frobenius::suite::{self, Suite, SuiteOptions, SuiteReport, DEFAULT_PARAMS};
use frobenius::{Error, FieldKind, GaussianRational, Rational, Scalar};

#[derive(Parser)]
#[command(
    name = "frobenius",
    version,
    about = "Exact verification for the Frobenius Lie algebras M(n,p) ⋊ gl(n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites (all default parameter pairs unless --n/--p are given).
    Verify(VerifyArgs),
    /// Canonical reduction to the (n−p, p) algebra.
    Reduce(ReduceArgs),
    /// Double extension of a covector of the (n−p, p) algebra.
    Extend(ExtendArgs),
    /// Normal form of an open covector.
    NormalForm(NormalFormArgs),
    /// Sections and transition cocycles of the moment fibration, per chart.
    Cocycle(CocycleArgs),
}

#[derive(Args)]
struct Common {
    /// Field: q (rationals) or qi (Gaussian rationals).
    #[arg(long, value_parser = parse_field, default_value = "q")]
    field: FieldKind,
    /// Write JSON output to this path instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, requires = "p")]
    n: Option<usize>,
    #[arg(long, requires = "n")]
    p: Option<usize>,
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = sampling::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Omit elapsed times so reports are byte-for-byte reproducible.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: usize,
    /// Covector JSON; defaults to the base covector.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ExtendArgs {
    /// Parameters of the extended algebra.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: usize,
    /// Covector JSON of the (n−p, p) algebra; defaults to its base covector.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct NormalFormArgs {
    /// Covector JSON.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CocycleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value_t = sampling::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long)]
    json: Option<PathBuf>,
}

fn parse_field(s: &str) -> Result<FieldKind, String> {
    match s {
        "q" => Ok(FieldKind::Rational),
        "qi" => Ok(FieldKind::Gaussian),
        _ => Err(format!("unknown field '{s}' (expected q or qi)")),
    }
}

/// Usage and input problems exit with 2, mathematical failures with 1.
enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidParams(_) | Error::Shape(_) => Failure::Usage(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(value: &Value, path: Option<&Path>) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    match path {
        Some(p) => fs::write(p, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            say(&(text + "\n"));
            Ok(())
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn say(text: &str) {
    if let Err(e) = std::io::stdout().lock().write_all(text.as_bytes()) {
        if e.kind() != ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}

fn verify(args: &VerifyArgs) -> CliResult<bool> {
    let pairs: Vec<Params> = match (args.n, args.p) {
        (Some(n), Some(p)) => vec![Params::new(n, p)?],
        _ => DEFAULT_PARAMS
            .iter()
            .map(|&(n, p)| Params::new(n, p))
            .collect::<Result<_, _>>()?,
    };
    let opts = SuiteOptions {
        seed: args.seed,
        samples: args.samples,
        timing: !args.no_timing,
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for params in pairs {
        let rep = suite::run_suite_for(params, args.common.field, args.suite, opts);
        say(&suite::render_text(&rep));
        reports.push(rep);
    }
    let ok = reports.iter().all(SuiteReport::passed);
    if let Some(path) = &args.common.json {
        let value = if reports.len() == 1 {
            serde_json::to_value(&reports[0])
        } else {
            serde_json::to_value(&reports)
        }
        .expect("reports serialize");
        emit(&value, Some(path))?;
    }
    let failures: usize = reports.iter().map(SuiteReport::failures).sum();
    say(&if ok {
        "all checks passed\n".to_string()
    } else {
        format!("{failures} checks failed\n")
    });
    Ok(ok)
}

fn load_covector<F: Scalar>(input: Option<&Path>, params: Params) -> CliResult<Covector<F>> {
    let Some(path) = input else {
        return Ok(base_covector(params));
    };
    let xi = io::covector_from_json::<F>(&read_json(path)?)?;
    if xi.params()? != params {
        return Err(Failure::Usage(format!(
            "covector does not belong to the ({}, {}) algebra",
            params.n, params.p
        )));
    }
    Ok(xi)
}

fn reduce<F: Scalar>(args: &ReduceArgs) -> CliResult<bool> {
    let params = Params::new(args.n, args.p)?;
    let xi = load_covector::<F>(args.input.as_deref(), params)?;
    let red = reduce_canonical(&Algebra::<F>::new(params), &xi)?;
    let (brackets, form) = verify_canonical(&red)?;
    let mut out = io::canonical_reduction_to_json(&red);
    out["verification"] = json!({"brackets": brackets, "form": form});
    emit(&out, args.common.json.as_deref())?;
    Ok(brackets && form)
}

fn extend<F: Scalar>(args: &ExtendArgs) -> CliResult<bool> {
    let params = Params::new(args.n, args.p)?;
    let e = ExtensionData::<F>::standard(params)?;
    let small = e.small_params();
    let xi = load_covector::<F>(args.input.as_deref(), small)?;
    let big = e.double_extend(&xi)?;
    let mut defects = 0;
    for a in canonical_basis::<F>(small) {
        if !e.trace_defect(&xi, &a)?.is_zero() {
            defects += 1;
        }
    }
    let open = is_open_orbit(&big);
    let roundtrip = reduce_canonical(&Algebra::<F>::new(params), &big)?.reduced_covector == xi;
    let ok = defects == 0 && open && roundtrip;
    let out = json!({
        "params": io::params_to_json(params),
        "covector": io::covector_to_json(&big),
        "report": {"trace_defects": defects, "open_orbit": open, "roundtrip": roundtrip, "passed": ok},
    });
    emit(&out, args.common.json.as_deref())?;
    Ok(ok)
}

fn normal_form_cmd<F: Scalar>(args: &NormalFormArgs) -> CliResult<bool> {
    let xi = io::covector_from_json::<F>(&read_json(&args.input)?)?;
    let nf = normal_form(&xi)?;
    let ok = coadjoint_action(&nf.witness, &xi)? == nf.rep;
    emit(&io::normal_form_to_json(&nf), args.common.json.as_deref())?;
    Ok(ok)
}

fn cocycle(args: &CocycleArgs) -> CliResult<bool> {
    let params = Params::new(args.n, args.p)?;
    let charts = MultiIndex::all(params);
    let mut rng = sampling::rng(args.seed);
    let mut rows = Vec::new();
    let mut all_ok = true;
    for g in &charts {
        let (mut section_ok, mut fiber_ok, mut cech_ok) = (true, true, true);
        for _ in 0..args.samples {
            let alpha = fibration::sample_point_in_chart::<Rational, _>(&mut rng, params, g);
            let s = fibration::section(params, g, &alpha)?;
            section_ok &= fibration::moment(params, &s)? == alpha;
            let over: Vec<&MultiIndex> = charts
                .iter()
                .filter(|c| fibration::in_chart(params, &alpha, c))
                .collect();
            for h in &over {
                let gh = fibration::cocycle(params, g, h, &alpha)?;
                fiber_ok &= fibration::in_base_fiber(params, &gh)?;
                let back = fibration::cocycle(params, h, g, &alpha)?;
                cech_ok &= grp_mul(&gh, &back)? == GrpElem::identity(params);
                cech_ok &= back == grp_inv(&gh);
            }
        }
        let ok = section_ok && fiber_ok && cech_ok;
        all_ok &= ok;
        rows.push(json!({
            "chart": g.to_string(),
            "samples": args.samples,
            "section": section_ok,
            "fiber": fiber_ok,
            "inverse_pairs": cech_ok,
            "status": if ok { "pass" } else { "fail" },
        }));
    }
    let out = json!({"params": io::params_to_json(params), "charts": rows});
    emit(&out, args.json.as_deref())?;
    Ok(all_ok)
}

fn dispatch<R>(field: FieldKind, q: impl FnOnce() -> R, qi: impl FnOnce() -> R) -> R {
    match field {
        FieldKind::Rational => q(),
        FieldKind::Gaussian => qi(),
    }
}

fn run(cli: &Cli) -> CliResult<bool> {
    match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Reduce(a) => dispatch(
            a.common.field,
            || reduce::<Rational>(a),
            || reduce::<GaussianRational>(a),
        ),
        Command::Extend(a) => dispatch(
            a.common.field,
            || extend::<Rational>(a),
            || extend::<GaussianRational>(a),
        ),
        Command::NormalForm(a) => dispatch(
            a.common.field,
            || normal_form_cmd::<Rational>(a),
            || normal_form_cmd::<GaussianRational>(a),
        ),
        Command::Cocycle(a) => cocycle(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
