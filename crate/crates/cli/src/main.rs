use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use grm_jacobi::conjecture::{
    conjecture_scan, dual_weight_enumerator, ScanResult, Verdict, DEFAULT_BOUND,
};
use grm_jacobi::designs::{
    design_check_bruteforce, design_check_jacobi, generalized_design_params, DesignReport,
    GeneralizedDesign, JacobiMode, DEFAULT_BUDGET,
};
use grm_jacobi::grm::{binomial_u128, class_representatives, classify, parse_points};
use grm_jacobi::jacobi::{
    brute_force, closed_form, weight_enumerator_enumerated, weight_enumerator_formula,
};
use grm_jacobi::poly::{JacobiPolynomial, TermRecord, WeightEnumerator};
use grm_jacobi::verify::{
    run_claims, Claim, ClaimReport, Status, ACCEPTANCE_CODES, EXHAUSTIVE_LIMIT,
};
use grm_jacobi::{Error, FieldSpec, GrmCode, PointSet, Subcase, TClass};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "grm-jacobi",
    version,
    about = "Jacobi polynomials and designs of RM_q(1, m)"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "GRM_JACOBI_THREADS")]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Closed,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SubcaseArg {
    Collinear,
    Generic,
}

#[derive(Args)]
struct CodeArgs {
    /// Field characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree (q = p^k).
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Dimension of V = F_q^m.
    #[arg(long)]
    m: usize,
}

impl CodeArgs {
    fn code(&self) -> Result<GrmCode> {
        Ok(GrmCode::new(FieldSpec::new(self.p, self.k)?, self.m)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Jacobi polynomial of a position set, by enumeration and/or closed form.
    Jacobi {
        #[command(flatten)]
        code: CodeArgs,
        /// Explicit set, e.g. "(0,0);(0,1)" (coordinates are element indices).
        #[arg(long, conflicts_with_all = ["t_size", "rank", "subcase"])]
        points: Option<String>,
        #[arg(long)]
        t_size: Option<usize>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, value_enum)]
        subcase: Option<SubcaseArg>,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// λ per T-class for the shell of weight `l` and strength `t`.
    Design {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Work budget for block counting (subsets × blocks).
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Cross-check claims; runs the default code set unless a code is given.
    Verify {
        #[arg(long, requires = "m")]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, requires = "p")]
        m: Option<usize>,
        /// Comma-separated claim names.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Dual-shell scan over all (q, m) with q ≥ 3 and q^(2m) < bound.
    Scan {
        /// Accepts integers or forms like 1e7.
        #[arg(long, value_parser = parse_bound, default_value_t = DEFAULT_BOUND)]
        bound: u128,
        /// Include the per-shell coefficients in each record.
        #[arg(long)]
        shells: bool,
    },
    /// Weight enumerator of the code (or of its dual).
    Enum {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        dual: bool,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
}

fn parse_bound(s: &str) -> std::result::Result<u128, String> {
    let s = s.trim();
    if let Some((mant, exp)) = s.split_once(['e', 'E']) {
        let mant: u128 = mant.parse().map_err(|_| format!("bad bound `{s}`"))?;
        let exp: u32 = exp.parse().map_err(|_| format!("bad bound `{s}`"))?;
        return 10u128
            .checked_pow(exp)
            .and_then(|p| p.checked_mul(mant))
            .ok_or_else(|| format!("bound `{s}` overflows"));
    }
    s.parse().map_err(|_| format!("bad bound `{s}`"))
}

/// A failure of a mathematical cross-check (exit code 2).
#[derive(Debug)]
struct Mismatch(String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out).and_then(|()| out.flush().map_err(Into::into)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            if let Some(m) = e.downcast_ref::<Mismatch>() {
                eprintln!("mismatch: {m}");
                ExitCode::from(2)
            } else if let Some(Error::NonUniformClass { .. }) = e.downcast_ref::<Error>() {
                eprintln!("mismatch: {e}");
                ExitCode::from(2)
            } else {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<()> {
    match &cli.command {
        Command::Jacobi {
            code,
            points,
            t_size,
            rank,
            subcase,
            method,
        } => cmd_jacobi(
            cli.output,
            out,
            code,
            points.as_deref(),
            *t_size,
            *rank,
            *subcase,
            *method,
        ),
        Command::Design {
            code,
            l,
            t,
            method,
            budget,
        } => cmd_design(cli.output, out, code, *l, *t, *method, *budget),
        Command::Verify { p, k, m, only } => {
            cmd_verify(cli.output, out, p.zip(*m).map(|(p, m)| (p, *k, m)), only)
        }
        Command::Scan { bound, shells } => cmd_scan(cli.output, out, *bound, *shells),
        Command::Enum { code, dual, method } => cmd_enum(cli.output, out, code, *dual, *method),
    }
}

fn write_json(out: &mut impl Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct DiffRecord {
    e_w: u64,
    e_z: u64,
    e_x: u64,
    e_y: u64,
    brute: String,
    closed: String,
}

#[derive(Serialize)]
struct JacobiOutput {
    q: u32,
    m: usize,
    n: usize,
    t: usize,
    points: String,
    class: Option<TClass>,
    brute: Option<Vec<TermRecord>>,
    closed: Option<Vec<TermRecord>>,
    diff: Option<Vec<DiffRecord>>,
}

fn select_class(
    t: usize,
    rank: Option<usize>,
    subcase: Option<SubcaseArg>,
    code: &GrmCode,
) -> Result<TClass> {
    let present = class_representatives(code, t)?;
    let candidates: Vec<TClass> = present
        .keys()
        .copied()
        .filter(|c| rank.is_none_or(|r| c.rank == r))
        .filter(|c| match subcase {
            None => true,
            Some(SubcaseArg::Collinear) => c.subcase == Some(Subcase::CollinearTriple),
            Some(SubcaseArg::Generic) => c.subcase == Some(Subcase::Generic),
        })
        .collect();
    match candidates.as_slice() {
        [one] => Ok(*one),
        [] => bail!(
            "no {t}-point set with the requested rank/subcase exists at q = {}, m = {}",
            code.q(),
            code.m()
        ),
        many => {
            let names: Vec<String> = many.iter().map(|c| c.to_string()).collect();
            bail!(
                "several classes match ({}); give --rank and, for four points of rank 2, --subcase",
                names.join(", ")
            )
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_jacobi(
    output: Output,
    out: &mut impl Write,
    args: &CodeArgs,
    points: Option<&str>,
    t_size: Option<usize>,
    rank: Option<usize>,
    subcase: Option<SubcaseArg>,
    method: Method,
) -> Result<()> {
    let code = args.code()?;
    let (set, class) = match (points, t_size) {
        (Some(s), _) => {
            let set = PointSet::new(&code, parse_points(s)?)?;
            let class = (2..=4)
                .contains(&set.len())
                .then(|| classify(&code, &set))
                .transpose()?;
            (set, class)
        }
        (None, Some(t)) => {
            if !(2..=4).contains(&t) {
                bail!("--t-size must be 2, 3 or 4 (use --points for other sizes)");
            }
            let class = select_class(t, rank, subcase, &code)?;
            let rep = class_representatives(&code, t)?
                .remove(&class)
                .expect("selected from the census");
            (rep, Some(class))
        }
        (None, None) => bail!("give either --points or --t-size"),
    };
    let brute = matches!(method, Method::Brute | Method::Both).then(|| brute_force(&code, &set));
    let closed = match method {
        Method::Brute => None,
        _ => {
            let class = class.ok_or_else(|| anyhow!("closed forms need 2 to 4 points"))?;
            Some(closed_form(code.q() as u64, code.m(), class)?)
        }
    };
    let diff = match (&brute, &closed) {
        (Some(b), Some(c)) => Some(
            b.diff_terms(c)
                .into_iter()
                .map(|(m, x, y)| DiffRecord {
                    e_w: m.w,
                    e_z: m.z,
                    e_x: m.x,
                    e_y: m.y,
                    brute: x.to_string(),
                    closed: y.to_string(),
                })
                .collect::<Vec<_>>(),
        ),
        _ => None,
    };
    let report = JacobiOutput {
        q: code.q(),
        m: code.m(),
        n: code.n(),
        t: set.len(),
        points: set.to_string(),
        class,
        brute: brute.as_ref().map(JacobiPolynomial::records),
        closed: closed.as_ref().map(JacobiPolynomial::records),
        diff,
    };
    match output {
        Output::Json => write_json(out, &report)?,
        Output::Pretty => {
            writeln!(
                out,
                "q = {}, m = {}, T = {{{}}}",
                report.q, report.m, report.points
            )?;
            if let Some(c) = class {
                writeln!(out, "class: {c}")?;
            }
            if let Some(b) = &brute {
                writeln!(out, "brute:  {b}")?;
            }
            if let Some(c) = &closed {
                writeln!(out, "closed: {c}")?;
            }
            if let Some(d) = &report.diff {
                writeln!(out, "diff: {} term(s)", d.len())?;
            }
        }
        Output::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["source", "e_w", "e_z", "e_x", "e_y", "coeff"])?;
            for (name, poly) in [("brute", &brute), ("closed", &closed)] {
                for r in poly.iter().flat_map(JacobiPolynomial::records) {
                    w.write_record([
                        name,
                        &r.e_w.to_string(),
                        &r.e_z.to_string(),
                        &r.e_x.to_string(),
                        &r.e_y.to_string(),
                        &r.coeff,
                    ])?;
                }
            }
            w.flush()?;
        }
    }
    if report.diff.as_ref().is_some_and(|d| !d.is_empty()) {
        return Err(Mismatch("brute-force and closed-form polynomials differ".into()).into());
    }
    Ok(())
}

#[derive(Serialize)]
struct DesignOutput {
    reports: Vec<DesignReport>,
    generalized: Option<GeneralizedDesign>,
}

fn cmd_design(
    output: Output,
    out: &mut impl Write,
    args: &CodeArgs,
    l: usize,
    t: usize,
    method: Method,
    budget: u128,
) -> Result<()> {
    let code = args.code()?;
    let mut reports = Vec::new();
    if method != Method::Brute {
        let mode = if binomial_u128(code.n() as u64, t as u64) <= EXHAUSTIVE_LIMIT {
            JacobiMode::Exhaustive
        } else {
            JacobiMode::Representatives
        };
        reports.push(design_check_jacobi(&code, l, t, mode)?);
    }
    if method != Method::Closed {
        reports.push(design_check_bruteforce(&code, l, t, budget)?);
    }
    let generalized = (l == code.min_weight() && (3..=4).contains(&t))
        .then(|| generalized_design_params(&code, l, t))
        .transpose()?;
    let report = DesignOutput {
        reports,
        generalized,
    };
    match output {
        Output::Json => write_json(out, &report)?,
        Output::Pretty => {
            for r in &report.reports {
                writeln!(
                    out,
                    "q = {}, m = {}, ℓ = {}, t = {} [{}]: {}",
                    r.q,
                    r.m,
                    r.ell,
                    r.t,
                    r.method.as_str(),
                    r.verdict()
                )?;
                for (class, lambda) in &r.lambda_by_class {
                    writeln!(out, "  {class}: λ = {lambda}")?;
                }
            }
            if let Some(g) = &report.generalized {
                writeln!(
                    out,
                    "{}-({}, {}, ({})) parameters",
                    g.t,
                    g.v,
                    g.k,
                    g.lambdas.join(", ")
                )?;
            }
        }
        Output::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["q", "m", "l", "t", "class", "lambda", "verdict"])?;
            if let Some(r) = report.reports.first() {
                for (class, lambda) in &r.lambda_by_class {
                    w.write_record([
                        r.q.to_string(),
                        r.m.to_string(),
                        r.ell.to_string(),
                        r.t.to_string(),
                        class.to_string(),
                        lambda.clone(),
                        r.verdict().to_string(),
                    ])?;
                }
            }
            w.flush()?;
        }
    }
    if let [a, b] = report.reports.as_slice() {
        if a.lambda_by_class != b.lambda_by_class || a.is_t_design != b.is_t_design {
            return Err(Mismatch("Jacobi and block-count λ values differ".into()).into());
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyOutput {
    passed: bool,
    reports: Vec<ClaimReport>,
}

fn cmd_verify(
    output: Output,
    out: &mut impl Write,
    code: Option<(u64, u32, usize)>,
    only: &[String],
) -> Result<()> {
    let claims: Vec<Claim> = if only.is_empty() {
        Claim::ALL.to_vec()
    } else {
        only.iter()
            .map(|s| s.trim().parse())
            .collect::<std::result::Result<_, _>>()?
    };
    let codes: Vec<(u64, u32, usize)> = match code {
        Some(c) => vec![c],
        None => ACCEPTANCE_CODES.to_vec(),
    };
    let mut reports = Vec::new();
    for (p, k, m) in codes {
        let code = GrmCode::new(FieldSpec::new(p, k)?, m)
            .with_context(|| format!("code for p = {p}, k = {k}, m = {m}"))?;
        reports.extend(run_claims(&code, &claims));
    }
    let passed = reports.iter().all(|r| r.status != Status::Fail);
    let report = VerifyOutput { passed, reports };
    match output {
        Output::Json => write_json(out, &report)?,
        Output::Pretty => {
            for r in &report.reports {
                let status = match r.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::NotApplicable => "N/A ",
                };
                write!(
                    out,
                    "{status} {:<26} q = {:<2} m = {} cases = {}",
                    r.claim, r.q, r.m, r.cases
                )?;
                if let Some(c) = &r.counterexample {
                    write!(out, "  counterexample: {c}")?;
                } else if let Some(n) = &r.note {
                    write!(out, "  ({n})")?;
                }
                writeln!(out)?;
            }
        }
        Output::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["claim", "q", "m", "status", "cases", "counterexample"])?;
            for r in &report.reports {
                w.write_record([
                    r.claim.clone(),
                    r.q.to_string(),
                    r.m.to_string(),
                    r.status.as_str().to_string(),
                    r.cases.to_string(),
                    r.counterexample.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
    }
    if !passed {
        return Err(Mismatch("at least one claim failed".into()).into());
    }
    Ok(())
}

fn cmd_scan(output: Output, out: &mut impl Write, bound: u128, shells: bool) -> Result<()> {
    if bound < 81 {
        bail!("--bound must be at least 81");
    }
    let mut results: Vec<ScanResult> = conjecture_scan(bound);
    if !shells {
        for r in &mut results {
            r.checked_shells.clear();
        }
    }
    match output {
        Output::Json => {
            for r in &results {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        Output::Pretty => {
            for r in &results {
                write!(out, "q = {:<4} m = {:<2} {}", r.q, r.m, r.verdict.as_str())?;
                if let Some(c) = &r.counterexample {
                    write!(out, " at ℓ = {} (coefficient {})", c.ell, c.coeff)?;
                }
                if let Some(why) = &r.skip_reason {
                    write!(out, " ({why})")?;
                }
                writeln!(
                    out,
                    "; window {}",
                    if r.window_confirmed {
                        "confirmed"
                    } else {
                        "not confirmed"
                    }
                )?;
            }
        }
        Output::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["q", "m", "verdict", "l", "coeff", "window_confirmed"])?;
            for r in &results {
                let verdict = r.verdict.as_str().to_string();
                let (ell, coeff) = r
                    .counterexample
                    .as_ref()
                    .map_or((String::new(), String::new()), |c| {
                        (c.ell.to_string(), c.coeff.clone())
                    });
                w.write_record([
                    r.q.to_string(),
                    r.m.to_string(),
                    verdict,
                    ell,
                    coeff,
                    r.window_confirmed.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    if results.iter().any(|r| r.verdict != Verdict::Confirmed) {
        return Err(Mismatch("some dual shells are 3-designs or were skipped".into()).into());
    }
    Ok(())
}

#[derive(Serialize)]
struct CountRecord {
    weight: usize,
    count: String,
}

#[derive(Serialize)]
struct EnumOutput {
    q: u32,
    m: usize,
    n: usize,
    dual: bool,
    terms: Vec<CountRecord>,
}

fn cmd_enum(
    output: Output,
    out: &mut impl Write,
    args: &CodeArgs,
    dual: bool,
    method: Method,
) -> Result<()> {
    let code = args.code()?;
    let (q, m) = (code.q() as u64, code.m());
    let formula = || -> Result<WeightEnumerator> {
        Ok(if dual {
            dual_weight_enumerator(q, m)?
        } else {
            weight_enumerator_formula(q, m)?
        })
    };
    let counted = || -> Result<WeightEnumerator> {
        if dual {
            let words = code.dual_codewords(1 << 24)?;
            let mut tally = std::collections::BTreeMap::new();
            for w in &words {
                *tally
                    .entry(w.iter().filter(|x| !x.is_zero()).count())
                    .or_insert(0u64) += 1;
            }
            Ok(WeightEnumerator::new(
                code.n(),
                tally.into_iter().map(|(w, c)| (w, c.into())),
            )?)
        } else {
            Ok(weight_enumerator_enumerated(&code))
        }
    };
    let result = match method {
        Method::Closed => formula()?,
        Method::Brute => counted()?,
        Method::Both => {
            let (a, b) = (formula()?, counted()?);
            if a != b {
                return Err(Mismatch(format!(
                    "enumerated {} but formula gives {}",
                    b.to_jacobi(),
                    a.to_jacobi()
                ))
                .into());
            }
            a
        }
    };
    let report = EnumOutput {
        q: code.q(),
        m,
        n: code.n(),
        dual,
        terms: result
            .terms()
            .map(|(w, c)| CountRecord {
                weight: w,
                count: c.to_string(),
            })
            .collect(),
    };
    match output {
        Output::Json => write_json(out, &report)?,
        Output::Pretty => writeln!(out, "{}", result.to_jacobi())?,
        Output::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["weight", "count"])?;
            for r in &report.terms {
                w.write_record([r.weight.to_string(), r.count.clone()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
