//! Radii of starlikeness `r*` and convexity `r_c` for the whole class.
//!
//! With `c = α / (2κ)` the radii are the roots in `(0, 1)` of
//!
//! ```text
//! G₁(r) = α r F(r) − c
//! G₂(r) = r / (1 − r) + (2α − 1) r F(r) − c
//! ```
//!
//! where `F` is the restricted hypergeometric function. Both also expand as
//! positive-coefficient power series minus `c`:
//!
//! ```text
//! G₁(r) = Σ_{n≥2} rⁿ⁻¹ / (1/α + n − 2) − c
//! G₂(r) = Σ_{n≥2} n rⁿ⁻¹ / (1/α + n − 2) − c
//! ```
//!
//! so each is strictly increasing on `[0, 1)`, starts at `−c`, and has a
//! unique root. The series forms are kept as an independent evaluation path.

use crate::error::{Error, Result};
use crate::harmonic::HarmonicSeries;
use crate::specfun::{hyp2f1_special, hyp2f1_special_enclosure, ClassParams, CompensatedSum, SeriesEvalConfig};

/// Bisection step cap per root.
pub const MAX_BISECTION_STEPS: usize = 200;

/// Initial right end of the search bracket.
pub const INITIAL_BRACKET: f64 = 1.0 - 1e-6;

/// Step of the left-to-right scan used when the bracket has the wrong sign pattern.
pub const SCAN_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusKind {
    /// `G₁`, radius of starlikeness.
    Starlike,
    /// `G₂`, radius of convexity.
    Convex,
}

impl RadiusKind {
    fn name(self) -> &'static str {
        match self {
            RadiusKind::Starlike => "G1",
            RadiusKind::Convex => "G2",
        }
    }
}

/// `α / (2κ)`; equals `−G₁(0) = −G₂(0)`.
pub fn threshold(params: &ClassParams) -> f64 {
    params.alpha() / (2.0 * params.kappa())
}

pub fn g1(params: &ClassParams, r: f64, cfg: &SeriesEvalConfig) -> Result<f64> {
    let f = hyp2f1_special(params, r, cfg)?;
    Ok(params.alpha() * r * f - threshold(params))
}

pub fn g2(params: &ClassParams, r: f64, cfg: &SeriesEvalConfig) -> Result<f64> {
    let f = hyp2f1_special(params, r, cfg)?;
    Ok(r / (1.0 - r) + (2.0 * params.alpha() - 1.0) * r * f - threshold(params))
}

pub fn g(kind: RadiusKind, params: &ClassParams, r: f64, cfg: &SeriesEvalConfig) -> Result<f64> {
    match kind {
        RadiusKind::Starlike => g1(params, r, cfg),
        RadiusKind::Convex => g2(params, r, cfg),
    }
}

/// `G₁` through the series `Σ rⁿ⁻¹ / (1/α + n − 2)`.
pub fn g1_series(params: &ClassParams, r: f64, cfg: &SeriesEvalConfig) -> Result<f64> {
    Ok(positive_series(params, r, cfg, false)? - threshold(params))
}

/// `G₂` through the series `Σ n rⁿ⁻¹ / (1/α + n − 2)`.
pub fn g2_series(params: &ClassParams, r: f64, cfg: &SeriesEvalConfig) -> Result<f64> {
    Ok(positive_series(params, r, cfg, true)? - threshold(params))
}

fn positive_series(params: &ClassParams, r: f64, cfg: &SeriesEvalConfig, weighted: bool) -> Result<f64> {
    cfg.check_radius(r)?;
    let shift = 1.0 / params.alpha() - 2.0;
    let mut sum = CompensatedSum::default();
    let mut power = 1.0; // r^(n-1) before the multiply
    let mut tail = f64::INFINITY;
    for n in 2..cfg.max_terms() + 2 {
        let nf = n as f64;
        power *= r;
        let denom = shift + nf;
        sum.add(if weighted { nf * power / denom } else { power / denom });
        // terms past n carry r^n/(1 − r) times a coefficient bound
        let next = nf + 1.0;
        let coeff_bound = if weighted {
            if shift >= 0.0 {
                1.0
            } else {
                next / (next + shift)
            }
        } else {
            1.0 / (next + shift)
        };
        tail = coeff_bound * power * r / (1.0 - r);
        if tail <= cfg.tolerance() {
            return Ok(sum.value());
        }
    }
    Err(Error::BudgetExceeded {
        terms: cfg.max_terms(),
        tail,
        tolerance: cfg.tolerance(),
    })
}

/// Sign of `G(r)`, certified by a series enclosure whenever the enclosure
/// excludes zero. Only when `|G(r)|` is below the tolerance does the sign
/// come from the converged estimate.
fn g_is_positive(kind: RadiusKind, params: &ClassParams, r: f64, cfg: &SeriesEvalConfig) -> Result<bool> {
    let c = threshold(params);
    let (base, slope) = match kind {
        RadiusKind::Starlike => (-c, params.alpha() * r),
        RadiusKind::Convex => (r / (1.0 - r) - c, (2.0 * params.alpha() - 1.0) * r),
    };
    let range = |lo: f64, hi: f64| {
        let (x, y) = (base + slope * lo, base + slope * hi);
        (x.min(y), x.max(y))
    };
    let enc = hyp2f1_special_enclosure(params, r, cfg, |lo, hi| {
        let (gl, gh) = range(lo, hi);
        gl > 0.0 || gh < 0.0
    })?;
    let (gl, gh) = range(enc.lower, enc.upper);
    if gl > 0.0 {
        Ok(true)
    } else if gh < 0.0 {
        Ok(false)
    } else {
        Ok(base + slope * enc.lower > 0.0)
    }
}

/// Outcome of a sign-change search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub root: f64,
    pub iterations: usize,
    /// True when the endpoint sign pattern was wrong and the scan ran.
    pub used_scan: bool,
}

/// Smallest sign change of `is_positive` on `[lo, hi]`.
///
/// Expects the pattern negative at `lo`, positive at `hi` and bisects to full
/// binary64 resolution. Otherwise scans left to right in steps of
/// `scan_step` and bisects the first cell whose endpoints differ in sign.
/// Returns `None` when no sign change is found.
pub fn smallest_sign_change<F>(
    mut is_positive: F,
    lo: f64,
    hi: f64,
    scan_step: f64,
    max_steps: usize,
) -> Result<Option<RootBracket>>
where
    F: FnMut(f64) -> Result<bool>,
{
    let lo_pos = is_positive(lo)?;
    let hi_pos = is_positive(hi)?;
    if !lo_pos && hi_pos {
        let (root, iterations) = bisect(&mut is_positive, lo, hi, false, max_steps)?;
        return Ok(Some(RootBracket {
            root,
            iterations,
            used_scan: false,
        }));
    }
    let mut left = lo;
    let mut left_pos = lo_pos;
    let mut k = 1usize;
    while left < hi {
        let right = (lo + k as f64 * scan_step).min(hi);
        let right_pos = if right == hi { hi_pos } else { is_positive(right)? };
        if right_pos != left_pos {
            let (root, iterations) = bisect(&mut is_positive, left, right, left_pos, max_steps)?;
            return Ok(Some(RootBracket {
                root,
                iterations,
                used_scan: true,
            }));
        }
        left = right;
        left_pos = right_pos;
        k += 1;
    }
    Ok(None)
}

fn bisect<F>(is_positive: &mut F, mut lo: f64, mut hi: f64, lo_pos: bool, max_steps: usize) -> Result<(f64, usize)>
where
    F: FnMut(f64) -> Result<bool>,
{
    let mut steps = 0;
    while steps < max_steps {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        steps += 1;
        if is_positive(mid)? == lo_pos {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), steps))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiiResult {
    pub r_star: f64,
    pub r_c: f64,
    /// `G₁(r_star)`.
    pub residual_star: f64,
    /// `G₂(r_c)`.
    pub residual_c: f64,
    /// Bisection steps summed over both roots.
    pub iterations: usize,
}

/// Root of `G₁` or `G₂` in `(0, r_cap]`.
pub fn solve_radius(kind: RadiusKind, params: &ClassParams, cfg: &SeriesEvalConfig) -> Result<(f64, f64, usize)> {
    let failure = || Error::BracketFailure {
        which: kind.name(),
        alpha: params.alpha(),
        m: params.m(),
    };
    let mut is_positive = |r: f64| g_is_positive(kind, params, r, cfg);

    // push the right end toward r_cap until G changes sign
    let mut hi = INITIAL_BRACKET.min(cfg.r_cap());
    loop {
        match is_positive(hi) {
            Ok(true) => break,
            Ok(false) if hi < cfg.r_cap() => hi = (1.0 - (1.0 - hi) / 10.0).min(cfg.r_cap()),
            Ok(false) | Err(Error::BudgetExceeded { .. }) => return Err(failure()),
            Err(e) => return Err(e),
        }
    }
    let found = smallest_sign_change(&mut is_positive, 0.0, hi, SCAN_STEP, MAX_BISECTION_STEPS)?.ok_or_else(failure)?;
    let residual = g(kind, params, found.root, cfg)?;
    Ok((found.root, residual, found.iterations))
}

/// Solves both radii. `tol` bounds the reported residuals; the series are
/// evaluated a hundred times more accurately (clamped to `1e-15..=1e-12`).
pub fn solve_radii(params: &ClassParams, tol: f64) -> Result<RadiiResult> {
    if !(tol > 0.0) {
        return Err(Error::ArgumentOutOfRange(format!("tolerance must be > 0, got {tol}")));
    }
    let series_tol = (tol * 1e-2).clamp(SeriesEvalConfig::MIN_TOLERANCE, 1e-12);
    let cfg = SeriesEvalConfig::default().with_tolerance(series_tol)?;
    let (r_star, residual_star, it_star) = solve_radius(RadiusKind::Starlike, params, &cfg)?;
    let (r_c, residual_c, it_c) = solve_radius(RadiusKind::Convex, params, &cfg)?;
    Ok(RadiiResult {
        r_star,
        r_c,
        residual_star,
        residual_c,
        iterations: it_star + it_c,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub r: f64,
    pub g1: f64,
    pub g2: f64,
}

/// `steps` equally spaced samples on `[r_min, r_max]`, endpoints included.
pub fn curve(params: &ClassParams, r_min: f64, r_max: f64, steps: usize, cfg: &SeriesEvalConfig) -> Result<Vec<CurveSample>> {
    if !(r_min >= 0.0 && r_min < r_max && r_max <= cfg.r_cap()) {
        return Err(Error::ArgumentOutOfRange(format!(
            "need 0 <= r_min < r_max <= {}, got [{r_min}, {r_max}]",
            cfg.r_cap()
        )));
    }
    if steps < 2 {
        return Err(Error::ArgumentOutOfRange(format!("steps must be >= 2, got {steps}")));
    }
    let span = r_max - r_min;
    (0..steps)
        .map(|i| {
            let r = if i == steps - 1 {
                r_max
            } else {
                r_min + span * i as f64 / (steps - 1) as f64
            };
            Ok(CurveSample {
                r,
                g1: g1(params, r, cfg)?,
                g2: g2(params, r, cfg)?,
            })
        })
        .collect()
}

/// `Σ n(|aₙ| + |bₙ|) rⁿ⁻¹`; at most 1 implies starlike on `|z| ≤ r`.
pub fn starlikeness_sum(f: &HarmonicSeries, r: f64) -> f64 {
    weighted_modulus_sum(f, r, 1)
}

/// `Σ n²(|aₙ| + |bₙ|) rⁿ⁻¹`; at most 1 implies convex on `|z| ≤ r`.
pub fn convexity_sum(f: &HarmonicSeries, r: f64) -> f64 {
    weighted_modulus_sum(f, r, 2)
}

fn weighted_modulus_sum(f: &HarmonicSeries, r: f64, exponent: i32) -> f64 {
    let mut sum = CompensatedSum::default();
    let mut power = 1.0;
    for (n, a, b) in f.terms() {
        power *= r;
        sum.add((n as f64).powi(exponent) * (a.norm() + b.norm()) * power);
    }
    sum.value()
}
