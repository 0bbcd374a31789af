//! Command-line front end.
//!
//! Exit codes: 0 success, 1 numerical tolerance not met, 2 bad input or
//! failed computation, 64 usage error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::formulas::{
    h_r_paper, inversion_check, inversion_integrand, mellin_pair_check, oracle_h,
    oracle_zero_term, paper_zero_term, residue_via_circle, verify, zero_pole_radius,
    FormulaParams, Identity, RhsMode, ORACLE_NODES,
};
use crate::report::{report_json, summary_table};
use crate::sieve::{ArithKind, ArithTable};
use crate::zeros::{scan_zeros, scan_zeros_with_tol, ZeroTable, DEFAULT_TOL, MAX_COUNT};
use crate::zetafun::PrecisionConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

const MELLIN_TOL_FAST: f64 = 1e-8;
const MELLIN_TOL_SLOW: f64 = 1e-7;
const INVERSION_TOL: f64 = 1e-3;
const RESIDUE_ZERO_TOL: f64 = 1e-9;
const RESIDUE_MATCH_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "zetalab", version, about = "Check fractional-part explicit formulas against zeta zeros")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Locate the first nontrivial zeros and write them as CSV.
    Zeros(ZerosArgs),
    /// Evaluate both sides of an identity and report the residuals.
    Verify(VerifyArgs),
    /// Run one of the auxiliary analytic checks.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Dump a sieved arithmetic table as CSV `n,value`.
    Table(TableArgs),
}

#[derive(Debug, Args)]
struct ZerosArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=MAX_COUNT as u64))]
    count: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum IdentityArg {
    Popov,
    Theorem1,
    Mobius,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RhsArg {
    Paper,
    Oracle,
    Both,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    identity: IdentityArg,
    #[arg(long, default_value_t = FormulaParams::DEFAULT_X)]
    x: f64,
    #[arg(long, default_value_t = 1)]
    r: u32,
    #[arg(long, default_value_t = FormulaParams::DEFAULT_TERMS)]
    terms: u64,
    /// Zero table produced by `zetalab zeros`.
    #[arg(long)]
    zeros: Option<PathBuf>,
    #[arg(long, default_value_t = FormulaParams::DEFAULT_ZEROS)]
    n_zeros: usize,
    #[arg(long, default_value_t = FormulaParams::DEFAULT_TRIVIAL)]
    trivial: usize,
    #[arg(long, value_enum, default_value_t = RhsArg::Both)]
    rhs: RhsArg,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    /// Quadrature of the Mellin pair for `{t} - 1/2`.
    Mellin {
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 0.0)]
        s_im: f64,
    },
    /// Vertical-line integral of the inversion formula.
    Inversion {
        #[arg(long)]
        u: f64,
        #[arg(long = "T", default_value_t = 2000.0)]
        t: f64,
        #[arg(long, default_value_t = 2.0)]
        a: f64,
    },
    /// Contour residues of the integrands.
    Residues {
        #[arg(long, value_enum, default_value_t = ResidueTarget::All)]
        at: ResidueTarget,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = FormulaParams::DEFAULT_X)]
        x: f64,
        #[arg(long, default_value_t = 2.25)]
        u: f64,
        /// Number of leading zeros compared by `--at zeros`.
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ResidueTarget {
    /// The inversion integrand at s = 0 and s = 1.
    S0,
    /// The pole producing the `x^{-r}` term.
    H,
    /// The first zero poles.
    Zeros,
    All,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    limit: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Lambda,
    Mu,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let cfg = PrecisionConfig::default();
    let outcome = match cli.command {
        Command::Zeros(a) => cmd_zeros(&a, &cfg),
        Command::Verify(a) => cmd_verify(&a, &cfg),
        Command::Check(c) => cmd_check(&c, &cfg),
        Command::Table(a) => cmd_table(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAILURE
        }
    }
}

fn usage(msg: &str) -> Result<i32> {
    eprintln!("usage error: {msg}");
    Ok(EXIT_USAGE)
}

fn cmd_zeros(a: &ZerosArgs, cfg: &PrecisionConfig) -> Result<i32> {
    if !(1e-12..=1e-9).contains(&a.tol) {
        return usage("--tol must lie in [1e-12, 1e-9]");
    }
    let table = scan_zeros_with_tol(a.count as usize, a.tol, cfg)?;
    let max_z = table.revalidate(cfg)?;
    table.save(&a.out)?;
    println!(
        "count {}  gamma_max {:.12}  max|Z(gamma)| {:.3e}  -> {}",
        table.len(),
        table.gamma_max().unwrap_or(0.0),
        max_z,
        a.out.display()
    );
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, cfg: &PrecisionConfig) -> Result<i32> {
    let x = a.x;
    let mut p = match a.identity {
        IdentityArg::Popov => FormulaParams::popov(x),
        IdentityArg::Theorem1 => FormulaParams::theorem1(a.r, x),
        IdentityArg::Mobius => FormulaParams::mobius(x),
    };
    if !matches!(a.identity, IdentityArg::Theorem1) && a.r != 1 {
        return usage("--r applies to theorem1 only");
    }
    p = p.terms(a.terms).zeros(a.n_zeros).trivial(a.trivial).mode(match a.rhs {
        RhsArg::Paper => RhsMode::PaperVerbatim,
        RhsArg::Oracle => RhsMode::ResidueOracle,
        RhsArg::Both => RhsMode::Both,
    });
    p.validate()?;
    if p.n_terms > p.weight.cap() {
        return Err(Error::Size {
            requested: p.n_terms,
            cap: p.weight.cap(),
        });
    }

    let zeros = load_zeros(a.zeros.as_deref(), &p, cfg)?;
    let table = ArithTable::build(p.weight, p.n_terms)?;
    let report = verify(&p, &table, &zeros, cfg)?;
    print!("{}", summary_table(&report));
    if let Some(path) = &a.json {
        let text = serde_json::to_string_pretty(&report_json(&report))
            .map_err(|e| Error::Numerical(format!("report serialisation: {e}")))?;
        std::fs::write(path, text + "\n")?;
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_TOLERANCE })
}

fn load_zeros(path: Option<&Path>, p: &FormulaParams, cfg: &PrecisionConfig) -> Result<ZeroTable> {
    let Some(path) = path else {
        if p.n_zeros == 0 {
            return ZeroTable::new(Vec::new(), crate::zeros::ZeroSource::Loaded, 0.0);
        }
        return Err(Error::Data("--zeros <file> is required when --n-zeros > 0".into()));
    };
    let table = ZeroTable::load(path)?;
    if table.len() < p.n_zeros {
        return Err(Error::Data(format!(
            "{} holds {} zeros, {} requested",
            path.display(),
            table.len(),
            p.n_zeros
        )));
    }
    table.revalidate(cfg)?;
    if p.identity == Identity::MobiusThm21 && !table.has_zeta_primes(p.n_zeros) {
        let table = table.with_zeta_primes(cfg)?;
        table.save(path)?;
        eprintln!("computed zeta'(rho) for {} zeros; updated {}", table.len(), path.display());
        return Ok(table);
    }
    Ok(table)
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn cmd_check(c: &CheckCommand, cfg: &PrecisionConfig) -> Result<i32> {
    let ok = match *c {
        CheckCommand::Mellin { s, s_im } => {
            let s = Complex64::new(s, s_im);
            let m = mellin_pair_check(s, cfg)?;
            let tol = if s.re >= 2.0 { MELLIN_TOL_FAST } else { MELLIN_TOL_SLOW };
            let ok = m.diff <= tol;
            println!("lhs   {:.15e} {:+.15e}i", m.lhs.re, m.lhs.im);
            println!("rhs   {:.15e} {:+.15e}i", m.rhs.re, m.rhs.im);
            println!("diff  {:.3e}  (tail bound {:.1e}, tol {tol:.0e})  {}", m.diff, m.tail_bound, status(ok));
            ok
        }
        CheckCommand::Inversion { u, t, a } => {
            let i = inversion_check(u, a, t, cfg)?;
            let ok = i.diff <= INVERSION_TOL;
            println!("line    {:.15e}", i.line_integral);
            println!("closed  {:.15e}", i.closed);
            println!("diff    {:.3e}  (tol {INVERSION_TOL:.0e})  {}", i.diff, status(ok));
            ok
        }
        CheckCommand::Residues { at, r, x, u, k } => check_residues(at, r, x, u, k, cfg)?,
    };
    Ok(if ok { EXIT_OK } else { EXIT_TOLERANCE })
}

fn check_residues(
    at: ResidueTarget,
    r: u32,
    x: f64,
    u: f64,
    k: usize,
    cfg: &PrecisionConfig,
) -> Result<bool> {
    let mut ok = true;
    if matches!(at, ResidueTarget::S0 | ResidueTarget::All) {
        if !(u > 1.0) {
            return Err(Error::Precondition(format!("u = {u} must exceed 1")));
        }
        for center in [0.0, 1.0] {
            let f = |s| inversion_integrand(s, u, cfg);
            let res = residue_via_circle(f, Complex64::new(center, 0.0), 0.25, ORACLE_NODES)?;
            let pass = res.norm() <= RESIDUE_ZERO_TOL;
            ok &= pass;
            println!("inversion integrand, s = {center}: residue {:.3e}  {}", res.norm(), status(pass));
        }
    }
    if matches!(at, ResidueTarget::H | ResidueTarget::All) {
        let p = FormulaParams::theorem1(r, x).mode(RhsMode::ResidueOracle);
        p.validate()?;
        let o = oracle_h(&p, cfg)?;
        match h_r_paper(r, x, cfg) {
            Ok(c) => {
                let pass = (o - c).abs() <= RESIDUE_MATCH_TOL;
                ok &= pass;
                println!("h pole (r = {r}, x = {x}): oracle {o:.15e}  printed {c:.15e}  {}", status(pass));
            }
            Err(Error::Degenerate(msg)) => {
                println!("h pole (r = {r}, x = {x}): oracle {o:.15e}  printed form unavailable: {msg}");
            }
            Err(e) => return Err(e),
        }
    }
    if matches!(at, ResidueTarget::Zeros | ResidueTarget::All) {
        let (identity, p) = if r == 1 {
            (Identity::PopovEq11, FormulaParams::popov(x))
        } else {
            (Identity::Theorem1, FormulaParams::theorem1(r, x))
        };
        p.mode(RhsMode::ResidueOracle).validate()?;
        let zeros = scan_zeros(k.max(1) + 1, cfg)?;
        for i in 0..k {
            let e = &zeros.entries()[i];
            let radius = zero_pole_radius(zeros.entries(), i);
            let o = oracle_zero_term(&p, e.rho(), radius, cfg)?;
            let c = paper_zero_term(identity, r, x, e.rho(), None, cfg)?;
            let pass = (o - c).norm() <= RESIDUE_MATCH_TOL;
            ok &= pass;
            println!(
                "zero {} (gamma {:.9}): oracle {:.12e} {:+.12e}i  printed {:.12e} {:+.12e}i  {}",
                i + 1,
                e.gamma,
                o.re,
                o.im,
                c.re,
                c.im,
                status(pass)
            );
        }
    }
    Ok(ok)
}

fn cmd_table(a: &TableArgs) -> Result<i32> {
    let kind = match a.kind {
        KindArg::Lambda => ArithKind::Lambda,
        KindArg::Mu => ArithKind::Mu,
    };
    let table = ArithTable::build(kind, a.limit)?;
    let mut w = BufWriter::new(File::create(&a.out)?);
    writeln!(w, "n,value")?;
    match kind {
        ArithKind::Lambda => {
            for (n, v) in table.lambda_values().unwrap_or_default().iter().enumerate().skip(1) {
                writeln!(w, "{n},{v:.14e}")?;
            }
        }
        ArithKind::Mu => {
            for (n, v) in table.mu_values().unwrap_or_default().iter().enumerate().skip(1) {
                writeln!(w, "{n},{v}")?;
            }
        }
    }
    w.flush()?;
    println!("{} values of {} -> {}", a.limit, kind.name(), a.out.display());
    Ok(EXIT_OK)
}
