//! Acceptance suite. Runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line each; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use zetalab::formulas::{
    h_r_paper, inversion_check, inversion_integrand, mellin_pair_check, oracle_h,
    oracle_zero_term, paper_zero_term, residue_via_circle, verify, zero_pole_radius,
    FormulaParams, Identity, VerificationReport, ORACLE_NODES,
};
use zetalab::sieve::{ArithKind, ArithTable};
use zetalab::zeros::{predicted_count, refine_zero_with, scan_zeros, RefineMethod, ZeroTable};
use zetalab::zetafun::{zeta, zeta_alt_oracle, zeta_prime, zeta_prime_trivial_closed, PrecisionConfig};
use zetalab::{Complex64, Result};

type Verdict = Result<(bool, String)>;
type Criterion = (&'static str, u64, fn() -> Verdict);

fn cfg() -> PrecisionConfig {
    PrecisionConfig::default()
}

fn zeros() -> &'static ZeroTable {
    static Z: OnceLock<ZeroTable> = OnceLock::new();
    Z.get_or_init(|| {
        scan_zeros(1000, &cfg())
            .and_then(|t| t.with_zeta_primes(&cfg()))
            .expect("zero table")
    })
}

fn lambda() -> &'static ArithTable {
    static T: OnceLock<ArithTable> = OnceLock::new();
    T.get_or_init(|| ArithTable::build(ArithKind::Lambda, 10_000_000).expect("lambda table"))
}

fn mu() -> &'static ArithTable {
    static T: OnceLock<ArithTable> = OnceLock::new();
    T.get_or_init(|| ArithTable::build(ArithKind::Mu, 10_000_000).expect("mu table"))
}

fn run(p: &FormulaParams) -> Result<VerificationReport> {
    let table = if p.weight == ArithKind::Mu { mu() } else { lambda() };
    verify(p, table, zeros(), &cfg())
}

fn c1_mellin() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for s in [1.5, 2.0, 2.5, 3.0] {
        let m = mellin_pair_check(Complex64::new(s, 0.0), &cfg())?;
        let tol = if s >= 2.0 { 1e-8 } else { 1e-7 };
        ok &= m.diff <= tol;
        parts.push(format!("s={s}: {:.1e}", m.diff));
    }
    Ok((ok, parts.join(", ")))
}

fn c2_residues() -> Verdict {
    let cfg = cfg();
    let mut ok = true;
    let mut worst_zero_res: f64 = 0.0;
    for u in [1.5, 2.25] {
        for center in [0.0, 1.0] {
            let f = |s| inversion_integrand(s, u, &cfg);
            let r = residue_via_circle(f, Complex64::new(center, 0.0), 0.25, ORACLE_NODES)?;
            worst_zero_res = worst_zero_res.max(r.norm());
        }
    }
    ok &= worst_zero_res <= 1e-9;

    let mut worst_h: f64 = 0.0;
    for x in [3.5, 10.5] {
        let o = oracle_h(&FormulaParams::theorem1(1, x), &cfg)?;
        worst_h = worst_h.max((o - h_r_paper(1, x, &cfg)?).abs());
    }
    ok &= worst_h <= 1e-8;

    let z = scan_zeros(6, &cfg)?;
    let mut worst_rho: f64 = 0.0;
    for x in [3.5, 10.5] {
        let p = FormulaParams::popov(x);
        for k in 0..5 {
            let rho = z.entries()[k].rho();
            let o = oracle_zero_term(&p, rho, zero_pole_radius(z.entries(), k), &cfg)?;
            let c = paper_zero_term(Identity::PopovEq11, 1, x, rho, None, &cfg)?;
            worst_rho = worst_rho.max((o - c).norm());
        }
    }
    ok &= worst_rho <= 1e-8;
    Ok((
        ok,
        format!("|res s=0,1| {worst_zero_res:.1e}, h_1 {worst_h:.1e}, rho_1..5 {worst_rho:.1e}"),
    ))
}

fn c3_popov() -> Verdict {
    let full = run(&FormulaParams::popov(10.5))?;
    let hundred = run(&FormulaParams::popov(10.5).zeros(100))?;
    let r1000 = full.residual_oracle.unwrap_or(f64::INFINITY);
    let r100 = hundred.residual_oracle.unwrap_or(f64::INFINITY);
    let ok = full.pass && r1000 <= r100 + 1e-6;
    Ok((
        ok,
        format!(
            "residual {r1000:.2e} <= bound {:.2e}; residual(100 zeros) {r100:.2e}",
            full.pass_bound
        ),
    ))
}

fn c4_theorem1_vs_popov() -> Verdict {
    let cfg = cfg();
    let x = 10.5;
    let mut ok = true;
    let mut worst_zeta: f64 = 0.0;
    let mut worst_rel: f64 = 0.0;
    for e in &zeros().entries()[..10] {
        let rho = e.rho();
        worst_zeta = worst_zeta.max(zeta(Complex64::new(1.0, 0.0) - rho, &cfg)?.norm());
        let t1 = paper_zero_term(Identity::Theorem1, 1, x, rho, None, &cfg)?;
        let eq11 = paper_zero_term(Identity::PopovEq11, 1, x, rho, None, &cfg)?;
        worst_rel = worst_rel.max((t1 - eq11 * 0.5).norm() / t1.norm());
    }
    ok &= worst_zeta <= 1e-6 && worst_rel <= 1e-6;
    let t1 = run(&FormulaParams::theorem1(1, x))?;
    let eq11 = run(&FormulaParams::popov(x))?;
    let gap = match (&t1.rhs_paper, &eq11.rhs_paper) {
        (Some(a), Some(b)) => (a.value - 0.5 * b.value).abs(),
        _ => f64::INFINITY,
    };
    ok &= gap <= 1e-5;
    Ok((
        ok,
        format!("max|zeta(1-rho)| {worst_zeta:.1e}, term rel diff {worst_rel:.1e}, |T1 - Eq11/2| {gap:.1e}"),
    ))
}

fn c5_theorem1_r3() -> Verdict {
    let rep = run(&FormulaParams::theorem1(3, 10.5).terms(1_000_000))?;
    let res = rep.residual_oracle.unwrap_or(f64::INFINITY);
    let h = |k: &str| rep.h_variants.get(k).copied().unwrap_or(f64::NAN);
    Ok((
        res <= 1e-6,
        format!(
            "residual_oracle {res:.2e}; h printed {:.6e}, printed with zeta(r-1) {:.6e}, oracle {:.6e}; residual_paper {:.2e}",
            h("printed"),
            h("printed_mirrored_zeta"),
            h("oracle"),
            rep.residual_paper.unwrap_or(f64::NAN)
        ),
    ))
}

fn c6_mobius() -> Verdict {
    let rep = run(&FormulaParams::mobius(10.5))?;
    let res = rep.residual_oracle.unwrap_or(f64::INFINITY);
    let allowed = rep.pass_bound.max(1e-3);
    Ok((
        res <= allowed,
        format!(
            "residual_oracle {res:.2e} <= {allowed:.1e}; residual_paper {:.2e}",
            rep.residual_paper.unwrap_or(f64::NAN)
        ),
    ))
}

fn c7_trivial_derivative() -> Verdict {
    let mut worst: f64 = 0.0;
    for n in 1..=5u32 {
        let d = zeta_prime(Complex64::new(-2.0 * f64::from(n), 0.0), &cfg())?;
        worst = worst.max((d.re - zeta_prime_trivial_closed(n, &cfg())?).abs());
    }
    Ok((worst <= 1e-9, format!("max diff {worst:.1e}")))
}

fn c8_zero_machinery() -> Verdict {
    let cfg = cfg();
    let t = scan_zeros(30, &cfg)?;
    let below = t.count_up_to(100.0);
    let predicted = predicted_count(100.0)?;
    let first_29_ok = t.entries()[..29].iter().all(|e| e.gamma <= 100.0);
    let bis = refine_zero_with((14.0, 14.3), 1e-10, RefineMethod::Bisection, &cfg)?.gamma;
    let sec = refine_zero_with((14.0, 14.3), 1e-10, RefineMethod::Secant, &cfg)?.gamma;
    let gamma_ok = (bis - 14.134_725).abs() <= 1e-6 && (sec - 14.134_725).abs() <= 1e-6;

    let dir = std::env::temp_dir().join(format!("zetalab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    t.save(&a)?;
    ZeroTable::load(&a)?.save(&b)?;
    let stable = std::fs::read(&a)? == std::fs::read(&b)?;
    let _ = std::fs::remove_dir_all(&dir);

    let ok = first_29_ok && below == 29 && predicted == 29 && gamma_ok && stable;
    Ok((
        ok,
        format!(
            "N(100) = {below}, predicted {predicted}; gamma_1 bisection {bis:.10}, secant {sec:.10}; round trip {}",
            if stable { "byte-stable" } else { "differs" }
        ),
    ))
}

fn c9_inversion() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for u in [1.5, 2.25] {
        let i = inversion_check(u, 2.0, 2000.0, &cfg())?;
        ok &= i.diff <= 1e-3;
        parts.push(format!("u={u}: {:.1e}", i.diff));
    }
    Ok((ok, parts.join(", ")))
}

fn c10_dual_path() -> Verdict {
    let mut worst: f64 = 0.0;
    for sigma in [0.0, 0.5, 1.5, 3.0] {
        for t in [0.0, 5.0, 25.0, 80.0] {
            let s = Complex64::new(sigma, t);
            worst = worst.max((zeta(s, &cfg())? - zeta_alt_oracle(s)?).norm());
        }
    }
    Ok((worst <= 1e-9, format!("max |diff| over 16 points {worst:.1e}")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Mellin pair quadrature", 30, c1_mellin),
        ("residues of the proof", 60, c2_residues),
        ("Popov identity end to end", 300, c3_popov),
        ("r = 1 consistent with Popov", 300, c4_theorem1_vs_popov),
        ("r = 3 end to end", 120, c5_theorem1_r3),
        ("Mobius analogue end to end", 600, c6_mobius),
        ("zeta'(-2n) closed form", 60, c7_trivial_derivative),
        ("zero machinery", 60, c8_zero_machinery),
        ("inversion line integral", 60, c9_inversion),
        ("zeta dual-path agreement", 60, c10_dual_path),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (ok, detail) = match verdict {
            Ok((ok, detail)) => (ok && in_time, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "criterion {:>2} {} {}: {} [{:.1} s, limit {} s]",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            detail,
            elapsed.as_secs_f64(),
            limit
        );
    }
    if failures == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
