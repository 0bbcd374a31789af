//! Nontrivial zeros ρ = 1/2 + iγ on the critical line: sign-change scanning
//! of Hardy's Z, bracketed refinement, ζ'(ρ), and the on-disk zero table.
//!
//! The scan walks t upward in 50-unit blocks on a 0.05 grid. After each block
//! the found count is compared with the Riemann–von Mangoldt main term
//! θ(t)/π + 1 averaged over the block; the average of S(t) over such a block
//! is tiny, so an average deficit above 1/2 means a pair of zeros slipped
//! between grid points, and the block is rescanned on a halved grid.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quad::GaussLegendre;
use crate::zetafun::{hardy_z, rs_theta, zeta_prime, PrecisionConfig};

pub const MAX_COUNT: usize = 5000;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const SCAN_STEP: f64 = 0.05;
pub const SCAN_BLOCK: f64 = 50.0;
const SCAN_START: f64 = 10.0;
const MAX_HALVINGS: u32 = 4;
const MAX_ABS_Z: f64 = 1e-8;
pub const MULTIPLICITY_WARNING_BELOW: f64 = 1e-6;

pub const FILE_MAGIC: &str = "# zetalab-zeros v1";
pub const FILE_HEADER: &str = "k,gamma,zeta_prime_re,zeta_prime_im,abs_err";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroEntry {
    /// 1-based position in increasing order of γ.
    pub index: usize,
    pub gamma: f64,
    pub zeta_prime: Option<Complex64>,
    /// Width of the final refinement bracket.
    pub abs_err: f64,
}

impl ZeroEntry {
    pub fn rho(&self) -> Complex64 {
        Complex64::new(0.5, self.gamma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSource {
    Computed,
    Loaded,
}

/// Ordinates of the first zeros with γ > 0, strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    entries: Vec<ZeroEntry>,
    source: ZeroSource,
    t_max: f64,
}

impl ZeroTable {
    pub fn new(entries: Vec<ZeroEntry>, source: ZeroSource, t_max: f64) -> Result<Self> {
        validate_entries(&entries)?;
        Ok(Self {
            entries,
            source,
            t_max,
        })
    }

    pub fn entries(&self) -> &[ZeroEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn source(&self) -> ZeroSource {
        self.source
    }

    /// Every zero with ordinate up to `t_max` is in the table.
    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn gamma_max(&self) -> Option<f64> {
        self.entries.last().map(|e| e.gamma)
    }

    pub fn count_up_to(&self, t: f64) -> usize {
        self.entries.partition_point(|e| e.gamma <= t)
    }

    pub fn has_zeta_primes(&self, n: usize) -> bool {
        n <= self.len() && self.entries[..n].iter().all(|e| e.zeta_prime.is_some())
    }

    /// The first `n` entries as a new table.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n > self.len() {
            return Err(Error::Data(format!(
                "table holds {} zeros, {n} requested",
                self.len()
            )));
        }
        let t_max = match n {
            0 => 0.0,
            n if n == self.len() => self.t_max,
            n => self.entries[n - 1].gamma,
        };
        Ok(Self {
            entries: self.entries[..n].to_vec(),
            source: self.source,
            t_max,
        })
    }

    /// Largest |Z(γ_k)| over the table; fails above 1e-8.
    pub fn revalidate(&self, cfg: &PrecisionConfig) -> Result<f64> {
        let values: Vec<Result<f64>> = self
            .entries
            .par_iter()
            .map(|e| hardy_z(e.gamma, cfg).map(f64::abs))
            .collect();
        let mut worst = 0.0f64;
        for (e, v) in self.entries.iter().zip(values) {
            let v = v?;
            if v > MAX_ABS_Z {
                return Err(Error::Validation(format!(
                    "|Z(gamma_{})| = {v:e} at gamma = {} exceeds {MAX_ABS_Z:e}",
                    e.index, e.gamma
                )));
            }
            worst = worst.max(v);
        }
        Ok(worst)
    }

    /// Fills in ζ'(ρ) for every entry that lacks it.
    pub fn with_zeta_primes(&self, cfg: &PrecisionConfig) -> Result<Self> {
        let filled: Vec<Result<ZeroEntry>> = self
            .entries
            .par_iter()
            .map(|e| {
                if e.zeta_prime.is_some() {
                    return Ok(*e);
                }
                let d = zeta_prime_at_zero(e.gamma, cfg)?;
                Ok(ZeroEntry {
                    zeta_prime: Some(d.value),
                    ..*e
                })
            })
            .collect();
        Ok(Self {
            entries: filled.into_iter().collect::<Result<_>>()?,
            source: self.source,
            t_max: self.t_max,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(FILE_MAGIC);
        out.push('\n');
        out.push_str(FILE_HEADER);
        out.push('\n');
        for e in &self.entries {
            let (re, im) = match e.zeta_prime {
                Some(z) => (format!("{:.14e}", z.re), format!("{:.14e}", z.im)),
                None => (String::new(), String::new()),
            };
            let _ = writeln!(out, "{},{:.12},{},{},{:.14e}", e.index, e.gamma, re, im, e.abs_err);
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let perr = |line: usize, msg: String| Error::Parse {
            path: PathBuf::from(path),
            line,
            msg,
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        match lines.next() {
            Some((_, l)) if l == FILE_MAGIC => {}
            Some((n, l)) => return Err(perr(n, format!("expected `{FILE_MAGIC}`, found `{l}`"))),
            None => return Err(perr(1, "empty file".into())),
        }
        match lines.next() {
            Some((_, l)) if l == FILE_HEADER => {}
            Some((n, l)) => return Err(perr(n, format!("expected header `{FILE_HEADER}`, found `{l}`"))),
            None => return Err(perr(2, "missing header".into())),
        }
        let mut entries = Vec::new();
        for (n, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(perr(n, format!("expected 5 fields, found {}", fields.len())));
            }
            let num = |s: &str, what: &str| -> Result<f64> {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| perr(n, format!("bad {what} `{s}`: {e}")))
            };
            let index: usize = fields[0]
                .trim()
                .parse()
                .map_err(|e| perr(n, format!("bad k `{}`: {e}", fields[0])))?;
            if index != entries.len() + 1 {
                return Err(perr(n, format!("expected k = {}, found {index}", entries.len() + 1)));
            }
            let gamma = num(fields[1], "gamma")?;
            let zeta_prime = match (fields[2].trim(), fields[3].trim()) {
                ("", "") => None,
                (re, im) if !re.is_empty() && !im.is_empty() => {
                    Some(Complex64::new(num(re, "zeta_prime_re")?, num(im, "zeta_prime_im")?))
                }
                _ => return Err(perr(n, "zeta_prime columns must be both present or both empty".into())),
            };
            let abs_err = num(fields[4], "abs_err")?;
            entries.push(ZeroEntry {
                index,
                gamma,
                zeta_prime,
                abs_err,
            });
        }
        let t_max = entries.last().map_or(0.0, |e| e.gamma);
        Self::new(entries, ZeroSource::Loaded, t_max)
    }
}

fn validate_entries(entries: &[ZeroEntry]) -> Result<()> {
    if let Some(first) = entries.first() {
        if !(first.gamma > 14.1 && first.gamma < 14.2) {
            return Err(Error::Validation(format!(
                "first ordinate {} is not in (14.1, 14.2)",
                first.gamma
            )));
        }
    }
    for (i, w) in entries.windows(2).enumerate() {
        if !(w[1].gamma > w[0].gamma) {
            return Err(Error::Validation(format!(
                "ordinates not strictly increasing at k = {}: {} then {}",
                i + 2,
                w[0].gamma,
                w[1].gamma
            )));
        }
    }
    for (i, e) in entries.iter().enumerate() {
        if e.index != i + 1 || !e.gamma.is_finite() || !(e.abs_err >= 0.0) {
            return Err(Error::Validation(format!("malformed entry at position {}", i + 1)));
        }
    }
    Ok(())
}

/// Main term θ(T)/π + 1 of the zero-counting function N(T).
pub fn counting_main_term(t: f64) -> Result<f64> {
    Ok(rs_theta(t)? / std::f64::consts::PI + 1.0)
}

/// `round(θ(T)/π + 1)`, the counting-formula prediction of N(T).
pub fn predicted_count(t: f64) -> Result<usize> {
    Ok(counting_main_term(t)?.round().max(0.0) as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefineMethod {
    Bisection,
    /// Illinois-modified regula falsi; falls back to bisection whenever a
    /// step fails to halve the bracket.
    Secant,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refined {
    pub gamma: f64,
    pub width: f64,
}

/// Refines a sign-change bracket of Z to width `tol` (secant with bisection
/// fallback).
pub fn refine_zero(bracket: (f64, f64), tol: f64, cfg: &PrecisionConfig) -> Result<f64> {
    refine_zero_with(bracket, tol, RefineMethod::Secant, cfg).map(|r| r.gamma)
}

pub fn refine_zero_with(
    bracket: (f64, f64),
    tol: f64,
    method: RefineMethod,
    cfg: &PrecisionConfig,
) -> Result<Refined> {
    let (mut a, mut b) = bracket;
    if !(a < b) {
        return Err(Error::Precondition(format!("empty bracket [{a}, {b}]")));
    }
    if !(tol >= 1e-12) {
        return Err(Error::Precondition(format!("tolerance {tol:e} below 1e-12")));
    }
    let mut fa = hardy_z(a, cfg)?;
    let mut fb = hardy_z(b, cfg)?;
    if fa == 0.0 {
        return Ok(Refined { gamma: a, width: 0.0 });
    }
    if fb == 0.0 {
        return Ok(Refined { gamma: b, width: 0.0 });
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Precondition(format!(
            "Z has no sign change on [{a}, {b}] (Z = {fa:e}, {fb:e})"
        )));
    }
    let convergence = |a: f64, b: f64, reason: &str| Error::Convergence {
        lo: a,
        hi: b,
        reason: reason.to_string(),
    };

    #[derive(PartialEq)]
    enum Side {
        None,
        Left,
        Right,
    }
    let mut last = Side::None;
    let mut force_bisect = false;
    for _ in 0..200 {
        let width = b - a;
        if width <= tol {
            let gamma = 0.5 * (a + b);
            let z = hardy_z(gamma, cfg)?;
            if z.abs() > MAX_ABS_Z {
                return Err(convergence(a, b, &format!("|Z| = {z:e} at the refined point")));
            }
            return Ok(Refined { gamma, width });
        }
        let mid = 0.5 * (a + b);
        let c = match method {
            RefineMethod::Bisection => mid,
            RefineMethod::Secant if force_bisect => mid,
            RefineMethod::Secant => {
                let c = (a * fb - b * fa) / (fb - fa);
                if c > a && c < b {
                    c
                } else {
                    mid
                }
            }
        };
        if c <= a || c >= b {
            // bracket below floating-point resolution
            return Err(convergence(a, b, "bracket cannot be split further"));
        }
        let fc = hardy_z(c, cfg)?;
        if fc == 0.0 {
            return Ok(Refined { gamma: c, width: 0.0 });
        }
        if fc.signum() == fa.signum() {
            a = c;
            fa = fc;
            if last == Side::Left {
                fb *= 0.5;
            }
            last = Side::Left;
        } else {
            b = c;
            fb = fc;
            if last == Side::Right {
                fa *= 0.5;
            }
            last = Side::Right;
        }
        force_bisect = (b - a) > 0.5 * width;
    }
    Err(convergence(a, b, "iteration limit reached"))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroDerivative {
    pub value: Complex64,
    /// |ζ'(ρ)| fell below 1e-6; the residue formulas assume a simple zero.
    pub multiplicity_warning: bool,
}

pub fn zeta_prime_at_zero(gamma: f64, cfg: &PrecisionConfig) -> Result<ZeroDerivative> {
    let value = zeta_prime(Complex64::new(0.5, gamma), cfg)?;
    Ok(ZeroDerivative {
        value,
        multiplicity_warning: value.norm() < MULTIPLICITY_WARNING_BELOW,
    })
}

/// The first `count` zeros, refined to `DEFAULT_TOL`.
pub fn scan_zeros(count: usize, cfg: &PrecisionConfig) -> Result<ZeroTable> {
    scan_zeros_with_tol(count, DEFAULT_TOL, cfg)
}

pub fn scan_zeros_with_tol(count: usize, tol: f64, cfg: &PrecisionConfig) -> Result<ZeroTable> {
    if count == 0 || count > MAX_COUNT {
        return Err(Error::Range(format!("zero count {count} outside 1..={MAX_COUNT}")));
    }
    if !(1e-12..=1e-9).contains(&tol) {
        return Err(Error::Precondition(format!("tolerance {tol:e} outside [1e-12, 1e-9]")));
    }
    let gl = GaussLegendre::new(32);
    let mut found: Vec<Refined> = Vec::new();
    let mut lo = SCAN_START;
    // one extra block past the last needed zero, to confirm nothing was missed
    let mut confirmed_past = false;
    loop {
        let hi = lo + SCAN_BLOCK;
        if hi > crate::zetafun::MAX_IMAG {
            return Err(Error::Range(format!("scan would exceed t = {}", crate::zetafun::MAX_IMAG)));
        }
        let before = found.len();
        let mut step = SCAN_STEP;
        let mut halvings = 0;
        loop {
            found.truncate(before);
            found.extend(scan_block(lo, hi, step, tol, cfg)?);
            let deficit = average_count_deficit(&found, lo, hi, &gl)?;
            if deficit.abs() <= 0.5 {
                break;
            }
            if halvings == MAX_HALVINGS {
                return Err(Error::Convergence {
                    lo,
                    hi,
                    reason: format!(
                        "zero count disagrees with the counting formula by {deficit:.3} on average"
                    ),
                });
            }
            halvings += 1;
            step *= 0.5;
        }
        if found.len() >= count {
            if confirmed_past {
                break;
            }
            confirmed_past = true;
        }
        lo = hi;
    }
    found.truncate(count);
    let entries = found
        .iter()
        .enumerate()
        .map(|(i, r)| ZeroEntry {
            index: i + 1,
            gamma: r.gamma,
            zeta_prime: None,
            abs_err: r.width,
        })
        .collect();
    let t_max = found.last().map_or(0.0, |r| r.gamma);
    ZeroTable::new(entries, ZeroSource::Computed, t_max)
}

fn scan_block(lo: f64, hi: f64, step: f64, tol: f64, cfg: &PrecisionConfig) -> Result<Vec<Refined>> {
    let n = ((hi - lo) / step).round() as usize;
    let grid: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&t| hardy_z(t, cfg))
        .collect::<Result<_>>()?;
    let mut brackets = Vec::new();
    let mut exact = Vec::new();
    for i in 0..n {
        // grid point i belongs to this block, point n to the next one
        if values[i] == 0.0 {
            exact.push((i, grid[i]));
        } else if values[i] * values[i + 1] < 0.0 {
            brackets.push((i, grid[i], grid[i + 1]));
        }
    }
    let refined: Vec<(usize, Refined)> = brackets
        .par_iter()
        .map(|&(i, a, b)| refine_zero_with((a, b), tol, RefineMethod::Secant, cfg).map(|r| (i, r)))
        .collect::<Result<_>>()?;
    let mut all: Vec<(usize, Refined)> = refined;
    all.extend(exact.into_iter().map(|(i, t)| (i, Refined { gamma: t, width: 0.0 })));
    all.sort_by_key(|e| e.0);
    Ok(all.into_iter().map(|(_, r)| r).collect())
}

/// Mean of `N_found(t) - θ(t)/π - 1` over `[lo, hi]`.
fn average_count_deficit(found: &[Refined], lo: f64, hi: f64, gl: &GaussLegendre) -> Result<f64> {
    let counted: f64 = found
        .iter()
        .filter(|r| r.gamma < hi)
        .map(|r| hi - r.gamma.max(lo))
        .sum();
    let mut main = 0.0;
    for (t, w) in gl.panel(lo, hi) {
        main += w * counting_main_term(t)?;
    }
    Ok((counted - main) / (hi - lo))
}
