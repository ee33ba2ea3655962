//! `opn` command-line front end. Every subcommand is a thin adapter over
//! `opn-core`; exit codes are 0 on success, 1 on a domain error and 2 on a
//! usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::Value;

use opn_core::dris::{
    check_theorem_main_with, gcd_product_diagnostic, inequality_trace_k1, special_decomposition, CheckConfig,
    CyclotomicScan, LemmaUScan, Section2Shape,
};
use opn_core::{
    abundancy, admissibility_report, reciprocal_prime_sum, sigma, to_eulerian, two_thirds_bound_check, valuation,
    verify_spoof, FactorBudget, Factorization, SpoofCandidate, SpoofSearch,
};

use crate::cache::{CacheError, CacheLookupError, FactorCache};
use crate::config::{OutputFormat, RunConfig, CACHE_ENV};
use crate::parallel::{run_cyclotomic, run_lemma_u, run_spoof_search};
use crate::parse::{factorization_from_text, parse_list, parse_positive, FactorizationTextError, ParseError};
use crate::records::*;

#[derive(Debug, Parser)]
#[command(name = "opn", version, about = "Exact checks on odd perfect number candidates and Descartes spoofs")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Records,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,
    /// Factor-cache file, read at start and appended on a miss.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache: Option<PathBuf>,
    /// Worker threads for scans and searches.
    #[arg(long, global = true, default_value_t = 1)]
    parallelism: usize,
    /// Largest trial divisor.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    trial_bound: u64,
    /// Pollard-Brent iterations per composite cofactor.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    rho_iterations: u64,
    /// Series terms allowed when refining the ln 2 bracket.
    #[arg(long, global = true, default_value_t = opn_core::ratio::DEFAULT_LN2_TERM_CAP)]
    ln2_cap: u32,
}

#[derive(Debug, Args)]
struct PretendArgs {
    /// Composite bases to treat as primes (Descartes semantics).
    #[arg(long, value_delimiter = ',')]
    pretend: Vec<String>,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long)]
    qmax: u64,
    /// Exponents k, each 1 mod 4 and above 1.
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<u32>,
    /// Visit every integer q >= 2 instead of primes 1 mod 4.
    #[arg(long)]
    probe: bool,
    /// Emit only cells with findings or incomplete factorizations.
    #[arg(long)]
    only_findings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// sigma(N).
    Sigma { n: String },
    /// Prime factorization of N.
    Factor { n: String },
    /// Whether sigma(N) = 2N.
    Perfect { n: String },
    /// sigma(N)/N in lowest terms.
    Abundancy { n: String },
    /// Exponent of the prime P in M.
    Valuation { p: String, m: String },
    /// Exact check of ((p-1)/p) sigma(p^2b) < p^2b and (2/3) sigma(p^2b) < p^2b.
    TwoThirds { p: String, b: u32 },
    /// Sum of 1/p over the primes of a factorization, against ln 2.
    ReciprocalSum {
        factorization: String,
        #[command(flatten)]
        pretend: PretendArgs,
    },
    /// Eulerian form q^k n^2 and admissibility checks.
    Eulerian {
        factorization: String,
        #[command(flatten)]
        pretend: PretendArgs,
        #[arg(long, default_value_t = opn_core::MIN_DISTINCT_PRIMES)]
        min_distinct: usize,
    },
    /// Verify BASE * d as a spoof with d pretended prime.
    SpoofVerify { base: String, d: String },
    /// Search spoofs m^2 d over products of the given primes.
    SpoofSearch {
        #[arg(long, value_delimiter = ',')]
        primes: Vec<String>,
        #[arg(long)]
        max_exp: u32,
        #[arg(long)]
        d_limit: String,
        /// Accept d in any residue class mod 4.
        #[arg(long)]
        any_residue: bool,
    },
    /// Special decomposition and the q^k < n conditions.
    DrisCheck {
        factorization: String,
        #[command(flatten)]
        pretend: PretendArgs,
    },
    /// Evaluate the k = 1 inequality chain.
    TraceK1 {
        factorization: String,
        #[command(flatten)]
        pretend: PretendArgs,
        /// The prime p; defaults to the unique p with q | sigma(p^2b).
        #[arg(long)]
        p: Option<String>,
    },
    /// Squared prime divisors of 1 + q^2 + ... + q^(k-1).
    ScanSquarefree(ScanArgs),
    /// Prime divisors r of 1 + q^2 + ... + q^(k-1) with r != 1 mod (k+1)/2.
    ScanResidue(ScanArgs),
    /// Triples (p, b, q) with q | sigma(p^2b) and p | q+1, checking u = sigma(p^2b)/q.
    ScanLemmaU {
        #[arg(long)]
        pmax: u64,
        #[arg(long)]
        bmax: u32,
    },
    /// gcd products over the special primes.
    GcdDiagnostic {
        factorization: String,
        #[command(flatten)]
        pretend: PretendArgs,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(opn_core::Error),
    Cache(CacheError),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<opn_core::Error> for CliError {
    fn from(e: opn_core::Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<FactorizationTextError> for CliError {
    fn from(e: FactorizationTextError) -> Self {
        match e {
            FactorizationTextError::Syntax(s) => s.into(),
            FactorizationTextError::Domain(d) => d.into(),
        }
    }
}

impl From<CacheError> for CliError {
    fn from(e: CacheError) -> Self {
        CliError::Cache(e)
    }
}

impl From<CacheLookupError> for CliError {
    fn from(e: CacheLookupError) -> Self {
        match e {
            CacheLookupError::Cache(c) => CliError::Cache(c),
            CacheLookupError::Domain(d) => CliError::Domain(d),
        }
    }
}

/// One output line: a record, plus an optional bare answer for text mode.
struct Emit {
    record: Value,
    text: Option<String>,
}

fn emit<T: Serialize>(record: T) -> Emit {
    Emit {
        record: serde_json::to_value(record).expect("records serialize"),
        text: None,
    }
}

fn emit_answer<T: Serialize>(record: T, answer: String) -> Emit {
    Emit {
        record: serde_json::to_value(record).expect("records serialize"),
        text: Some(answer),
    }
}

struct Context {
    config: RunConfig,
    cache: FactorCache,
}

impl Context {
    fn factor(&mut self, n: &BigUint) -> Result<Factorization, CliError> {
        Ok(self.cache.factor(n, &self.config.factor_budget)?)
    }
}

fn pretend_list(p: &PretendArgs) -> Result<Vec<BigUint>, CliError> {
    Ok(p.pretend.iter().map(|s| parse_positive(s)).collect::<Result<_, _>>()?)
}

fn bare_factorization(text: &str, pretend: &PretendArgs) -> Result<Factorization, CliError> {
    Ok(factorization_from_text(text, &pretend_list(pretend)?)?)
}

fn dispatch(cmd: &Command, ctx: &mut Context) -> Result<Vec<Emit>, CliError> {
    let par = ctx.config.parallelism;
    let budget = ctx.config.factor_budget;
    Ok(match cmd {
        Command::Sigma { n } => {
            let n = parse_positive(n)?;
            let f = ctx.factor(&n)?;
            let value = sigma(&f);
            vec![emit_answer(
                SigmaRecord { command: "sigma", n: n.to_string(), factorization: f.to_string(), sigma: value.to_string() },
                value.to_string(),
            )]
        }
        Command::Factor { n } => {
            let n = parse_positive(n)?;
            let f = ctx.factor(&n)?;
            vec![emit_answer(
                FactorRecord {
                    command: "factor",
                    n: n.to_string(),
                    factorization: f.to_string(),
                    distinct_primes: f.distinct_count(),
                },
                f.to_string(),
            )]
        }
        Command::Perfect { n } => {
            let n = parse_positive(n)?;
            let f = ctx.factor(&n)?;
            let value = sigma(&f);
            let two_n = &n << 1u32;
            let perfect = value == two_n;
            vec![emit_answer(
                PerfectRecord {
                    command: "perfect",
                    n: n.to_string(),
                    sigma: value.to_string(),
                    two_n: two_n.to_string(),
                    perfect,
                },
                perfect.to_string(),
            )]
        }
        Command::Abundancy { n } => {
            let n = parse_positive(n)?;
            let f = ctx.factor(&n)?;
            let a = abundancy(&f).to_string();
            vec![emit_answer(AbundancyRecord { command: "abundancy", n: n.to_string(), abundancy: a.clone() }, a)]
        }
        Command::Valuation { p, m } => {
            let (p, m) = (parse_positive(p)?, parse_positive(m)?);
            let v = valuation(&p, &m)?;
            vec![emit_answer(
                ValuationRecord { command: "valuation", p: p.to_string(), m: m.to_string(), valuation: v },
                v.to_string(),
            )]
        }
        Command::TwoThirds { p, b } => {
            let p = parse_positive(p)?;
            let (holds_general, holds_two_thirds) = two_thirds_bound_check(&p, *b)?;
            vec![emit(TwoThirdsRecord { command: "two-thirds", p: p.to_string(), b: *b, holds_general, holds_two_thirds })]
        }
        Command::ReciprocalSum { factorization, pretend } => {
            let f = bare_factorization(factorization, pretend)?;
            let (sum, verdict) = reciprocal_prime_sum(&f);
            vec![emit(ReciprocalRecord::new(f.to_string(), &sum, verdict))]
        }
        Command::Eulerian { factorization, pretend, min_distinct } => {
            let e = to_eulerian(&bare_factorization(factorization, pretend)?)?;
            let report = admissibility_report(&e, *min_distinct);
            vec![emit(EulerianRecord::new(&e, &report))]
        }
        Command::SpoofVerify { base, d } => {
            let base = factorization_from_text(base, &[])?;
            let c = SpoofCandidate::new(base, parse_positive(d)?)?;
            let v = verify_spoof(&c);
            vec![emit(SpoofRecord::new("spoof-verify", &c, &v))]
        }
        Command::SpoofSearch { primes, max_exp, d_limit, any_residue } => {
            let primes = primes
                .iter()
                .map(|p| parse_list(p))
                .collect::<Result<Vec<_>, _>>()?
                .concat();
            let search = SpoofSearch::new(&primes, *max_exp, parse_positive(d_limit)?, !any_residue)?;
            run_spoof_search(&search, par)
                .iter()
                .map(|h| emit(SpoofRecord::new("spoof-search", &h.candidate, &h.verdict)))
                .collect()
        }
        Command::DrisCheck { factorization, pretend } => {
            let e = to_eulerian(&bare_factorization(factorization, pretend)?)?;
            let sd = special_decomposition(&e);
            let cfg = CheckConfig { ln2_term_cap: ctx.config.ln2_precision_cap, budget };
            let report = check_theorem_main_with(&sd, &cfg);
            vec![emit(DrisRecord::new(&sd, &report))]
        }
        Command::TraceK1 { factorization, pretend, p } => {
            let e = to_eulerian(&bare_factorization(factorization, pretend)?)?;
            let p = p.as_deref().map(parse_positive).transpose()?;
            let shape = Section2Shape::from_eulerian(&e, p.as_ref())?;
            let trace = inequality_trace_k1(&shape)?;
            trace_records(&shape, &trace)
                .into_iter()
                .map(|record| Emit { record, text: None })
                .collect()
        }
        Command::ScanSquarefree(args) => {
            let scan = CyclotomicScan::new(args.qmax, &args.k, args.probe, budget)?;
            run_cyclotomic(&scan, par)
                .iter()
                .filter(|c| !args.only_findings || !c.squared_divisors.is_empty() || !c.is_complete())
                .map(|c| emit(SquarefreeRecord::new(c)))
                .collect()
        }
        Command::ScanResidue(args) => {
            let scan = CyclotomicScan::new(args.qmax, &args.k, args.probe, budget)?;
            run_cyclotomic(&scan, par)
                .iter()
                .filter(|c| !args.only_findings || c.residue_exceptions().next().is_some() || !c.is_complete())
                .map(|c| emit(ResidueRecord::new(c)))
                .collect()
        }
        Command::ScanLemmaU { pmax, bmax } => {
            let scan = LemmaUScan::new(*pmax, *bmax, budget);
            lemma_u_records(&run_lemma_u(&scan, par))
                .into_iter()
                .map(|record| Emit { record, text: None })
                .collect()
        }
        Command::GcdDiagnostic { factorization, pretend } => {
            let e = to_eulerian(&bare_factorization(factorization, pretend)?)?;
            let sd = special_decomposition(&e);
            let d = gcd_product_diagnostic(&sd)?;
            vec![emit(GcdRecord {
                command: "gcd-diagnostic",
                factorization: e.full_factorization().to_string(),
                s: sd.s(),
                lhs: d.lhs.to_string(),
                rhs: d.rhs.to_string(),
                ordering: ordering_name(d.ordering),
            })]
        }
    })
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    let g = &cli.global;
    let config = RunConfig {
        factor_budget: FactorBudget { trial_bound: g.trial_bound, rho_iterations: g.rho_iterations },
        ln2_precision_cap: g.ln2_cap,
        cache_path: g.cache.clone(),
        output_format: match g.format {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Records => OutputFormat::Records,
        },
        parallelism: g.parallelism,
    };
    if let Err(msg) = config.validate() {
        let _ = writeln!(err, "error: {msg}");
        return 2;
    }
    let result = match &config.cache_path {
        Some(path) => FactorCache::open(path).map_err(CliError::from),
        None => Ok(FactorCache::in_memory()),
    }
    .and_then(|cache| {
        let mut ctx = Context { config: config.clone(), cache };
        dispatch(&cli.command, &mut ctx)
    });
    match result {
        Ok(lines) => {
            for line in lines {
                let rendered = match config.output_format {
                    OutputFormat::Records => line.record.to_string(),
                    OutputFormat::Text => line.text.unwrap_or_else(|| render_text(&line.record)),
                };
                if writeln!(out, "{rendered}").is_err() {
                    return 1;
                }
            }
            0
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Domain(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            1
        }
        Err(CliError::Cache(e)) => {
            let _ = writeln!(err, "error: CacheError: {e}");
            1
        }
    }
}
