//! The `awproof` command-line driver.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for bad
//! flags or inadmissible parameters. JSON is written with records sorted by
//! `(name, k, n)`, so identical configurations give identical bytes.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::askey_wilson::{build_family, AWFamily, AWParams, FamilyJson};
use crate::error::Error;
use crate::proof_engine::{run_chain, CheckRecord, ContextSummary, ProofReport};
use crate::qoperators::{verify_identity, verify_k_fold_rule, Identity};
use crate::qpoly::PolyX;
use crate::scalars::{format_rational, parse_rational, parse_rational_list, rat, QContext, Rational};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "awproof", version, about = "Exact Askey-Wilson operator checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the operator identities on seeded random polynomials
    VerifyIdentities(IdentityArgs),
    /// Build a monic family and print it as JSON
    BuildFamily(FamilyArgs),
    /// Run the derived-family proof chain
    VerifyChain(ChainArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// v = q^{1/2}, a rational in (0, 1)
    #[arg(long, default_value = "1/2")]
    pub qsqrt: String,
    /// Four parameters a,b,c,d
    #[arg(long, conflicts_with = "sigmas", allow_hyphen_values = true)]
    pub params: Option<String>,
    /// Elementary symmetric functions s1,s2,s3,s4
    #[arg(long, allow_hyphen_values = true)]
    pub sigmas: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct IdentityArgs {
    #[arg(long, default_value = "1/2")]
    pub qsqrt: String,
    /// Degree bound for the random polynomials
    #[arg(long, default_value_t = 10)]
    pub nmax: usize,
    /// Orders for the k-fold rule
    #[arg(long, default_value = "1,2,3,4,5")]
    pub k: String,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 12)]
    pub nmax: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ChainArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Largest n checked; the base family is built to N = nmax + max(k) + 2
    #[arg(long, default_value_t = 8)]
    pub nmax: usize,
    /// Orders to check, comma separated
    #[arg(long, default_value = "1")]
    pub k: String,
    /// Load the base family from a JSON file instead of building it
    #[arg(long, conflicts_with_all = ["params", "sigmas"])]
    pub family: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parses `args` (program name first) and runs the selected command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::VerifyIdentities(a) => cmd_verify_identities(a),
        Command::BuildFamily(a) => cmd_build_family(a),
        Command::VerifyChain(a) => cmd_verify_chain(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("awproof: {e}");
            exit_code_for(&e)
        }
    }
}

/// Errors from inputs are usage errors; a family that fails its own
/// recurrence extraction is a verification failure.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::OrthogonalityBroken(_) | Error::ProportionalityFailure { .. } | Error::Internal(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn parse_k_list(s: &str) -> Result<Vec<usize>, Error> {
    let ks = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Usage(format!("bad order '{t}' in --k")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if ks.is_empty() {
        return Err(Error::Usage("--k needs at least one order".into()));
    }
    Ok(ks)
}

fn context(qsqrt: &str) -> Result<QContext, Error> {
    QContext::new(parse_rational(qsqrt)?)
}

fn params(p: &ParamArgs) -> Result<AWParams, Error> {
    let four = |s: &str, flag: &str| -> Result<[Rational; 4], Error> {
        parse_rational_list(s)?
            .try_into()
            .map_err(|_| Error::Usage(format!("{flag} needs exactly four rationals")))
    };
    match (&p.params, &p.sigmas) {
        (Some(r), None) => AWParams::from_roots(four(r, "--params")?),
        (None, Some(s)) => AWParams::from_sigmas(four(s, "--sigmas")?),
        (None, None) => AWParams::from_sigmas([rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)]),
        (Some(_), Some(_)) => Err(Error::Usage("give --params or --sigmas, not both".into())),
    }
}

fn emit(output: &OutputArgs, json: &str, text: &str) -> Result<(), Error> {
    let body = match output.format {
        Format::Json => json,
        Format::Text => text,
    };
    match &output.out {
        Some(path) => fs::write(path, body)
            .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::Usage(format!("cannot write to stdout: {e}")))
        }
    }
}

fn emit_report(output: &OutputArgs, report: &ProofReport) -> Result<i32, Error> {
    emit(output, &report.to_json(), &report.to_text())?;
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}

/// A polynomial of degree at most `max_deg` with coefficients in
/// `{-9..9} / {1..9}`.
pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> PolyX {
    let deg = rng.gen_range(0..=max_deg);
    PolyX::new(
        (0..=deg)
            .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=9)))
            .collect(),
    )
}

/// Checks every identity and every requested k-fold rule on `trials` random
/// pairs. Record `n` is the trial index.
pub fn identity_report(ctx: &QContext, max_deg: usize, ks: &[usize], trials: usize, seed: u64) -> ProofReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for t in 0..trials {
        let f = random_poly(&mut rng, max_deg);
        let g = random_poly(&mut rng, max_deg);
        for which in Identity::ALL {
            checks.push(match verify_identity(ctx, which, &f, &g) {
                Ok(r) => CheckRecord::new(which.name(), 0, t, r.passed, r.residual.to_string()),
                Err(e) => CheckRecord::new(which.name(), 0, t, false, e.to_string()),
            });
        }
        for &k in ks {
            checks.push(match verify_k_fold_rule(ctx, &f, k) {
                Ok(r) => CheckRecord::new("k_fold_rule", k, t, r.passed, r.residual.to_string()),
                Err(e) => CheckRecord::new("k_fold_rule", k, t, false, e.to_string()),
            });
        }
    }
    let mut warnings = Vec::new();
    if trials == 0 {
        warnings.push("trials = 0: nothing was checked".to_string());
    }
    let mut report = ProofReport {
        context: ContextSummary {
            v: format_rational(ctx.v()),
            q: format_rational(ctx.q()),
            sigmas: Vec::new(),
            n: max_deg,
            n_max: max_deg,
            k: ks.to_vec(),
            trials: Some(trials),
            seed: Some(seed),
        },
        checks,
        warnings,
    };
    report.canonicalize();
    report
}

pub fn cmd_verify_identities(a: &IdentityArgs) -> Result<i32, Error> {
    let ctx = context(&a.qsqrt)?;
    let ks = parse_k_list(&a.k)?;
    if ks.contains(&0) {
        return Err(Error::Usage("k-fold orders start at 1".into()));
    }
    let report = identity_report(&ctx, a.nmax, &ks, a.trials, a.seed);
    emit_report(&a.output, &report)
}

fn family_text(fam: &AWFamily) -> String {
    let mut out = format!(
        "v = {}, sigma = ({})\n",
        format_rational(fam.ctx.v()),
        fam.params.sigmas.iter().map(format_rational).collect::<Vec<_>>().join(", ")
    );
    for (n, p) in fam.polys.iter().enumerate() {
        out.push_str(&format!("p_{n} = {p}\n"));
    }
    for n in 0..fam.b.len() {
        out.push_str(&format!("B_{n} = {}", format_rational(&fam.b[n])));
        if n > 0 {
            out.push_str(&format!(", C_{n} = {}", format_rational(&fam.c[n])));
        }
        out.push('\n');
    }
    out
}

pub fn cmd_build_family(a: &FamilyArgs) -> Result<i32, Error> {
    let ctx = context(&a.params.qsqrt)?;
    let fam = build_family(&ctx, &params(&a.params)?, a.nmax)?;
    let mut json = serde_json::to_string_pretty(&fam.to_json())
        .map_err(|e| Error::Internal(e.to_string()))?;
    json.push('\n');
    emit(&a.output, &json, &family_text(&fam))?;
    Ok(EXIT_PASS)
}

/// Reads a family file as written by `build-family`.
pub fn load_family(path: &std::path::Path) -> Result<AWFamily, Error> {
    let raw = fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    let doc: FamilyJson =
        serde_json::from_str(&raw).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    AWFamily::from_json(&doc)
}

pub fn cmd_verify_chain(a: &ChainArgs) -> Result<i32, Error> {
    let ks = parse_k_list(&a.k)?;
    if ks.contains(&0) {
        return Err(Error::Usage("chain orders start at 1".into()));
    }
    if a.nmax < 2 {
        return Err(Error::Usage("--nmax must be at least 2".into()));
    }
    let base = match &a.family {
        Some(path) => load_family(path)?,
        None => {
            let ctx = context(&a.params.qsqrt)?;
            let top = ks.iter().max().copied().unwrap_or(1);
            build_family(&ctx, &params(&a.params)?, a.nmax + top + 2)?
        }
    };
    let report = run_chain(&base, &ks, a.nmax);
    emit_report(&a.output, &report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_list_parsing() {
        assert_eq!(parse_k_list("1, 2,3").unwrap(), vec![1, 2, 3]);
        assert!(parse_k_list("1,x").is_err());
        assert!(parse_k_list("").is_err());
    }

    #[test]
    fn random_polys_are_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let p = random_poly(&mut a, 10);
            assert_eq!(p, random_poly(&mut b, 10));
            assert!(p.degree().unwrap_or(0) <= 10);
            for c in p.coeffs() {
                assert!(c.numer().magnitude() <= &9u32.into());
            }
        }
    }

    #[test]
    fn empty_identity_run_warns() {
        let ctx = QContext::new(rat(1, 2)).unwrap();
        let r = identity_report(&ctx, 10, &[1], 0, 42);
        assert!(r.checks.is_empty());
        assert_eq!(r.warnings.len(), 1);
        assert!(r.passed());
    }

    #[test]
    fn bad_flags_exit_two() {
        assert_eq!(run(["awproof", "verify-chain", "--bogus"]), EXIT_USAGE);
        assert_eq!(run(["awproof", "build-family", "--qsqrt", "2"]), EXIT_USAGE);
        assert_eq!(run(["awproof", "build-family", "--sigmas", "0,0,0,1"]), EXIT_USAGE);
        assert_eq!(run(["awproof", "verify-chain", "--k", "0"]), EXIT_USAGE);
    }
}
