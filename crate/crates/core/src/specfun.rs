//! The restricted hypergeometric function `2F1(1, 1/α; 1 + 1/α; r)`.
//!
//! With `c = 1/α` the Pochhammer ratio `(1)ₙ(c)ₙ / ((c+1)ₙ n!)` collapses to
//! `c / (c + n)`, so the function is the positive series
//!
//! ```text
//! Σ_{n≥0} rⁿ / (1 + αn)
//! ```
//!
//! Summation stops once the geometric tail bound
//! `r^{N+1} / ((1 + αN)(1 − r))` drops below the configured tolerance,
//! which makes every returned value certified to that absolute error.

use crate::error::{Error, Result};

/// The pair `(α, M)` selecting a member of the class family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassParams {
    alpha: f64,
    m: f64,
}

impl ClassParams {
    pub fn new(alpha: f64, m: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "alpha must lie in (0, 1], got {alpha}"
            )));
        }
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::InvalidParams(format!("M must be > 0, got {m}")));
        }
        let params = ClassParams { alpha, m };
        assert!(params.kappa() > 0.0);
        Ok(params)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    /// `M − α + 1`, the scale shared by every coefficient bound.
    pub fn kappa(&self) -> f64 {
        self.m - self.alpha + 1.0
    }
}

/// Truncation controls for the positive series evaluated in this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEvalConfig {
    tolerance: f64,
    max_terms: usize,
    r_cap: f64,
}

impl SeriesEvalConfig {
    pub const MIN_TOLERANCE: f64 = 1e-15;
    pub const MAX_TERMS_LIMIT: usize = 10_000_000;
    pub const MAX_R_CAP: f64 = 1.0 - 1e-9;

    pub fn new(tolerance: f64, max_terms: usize, r_cap: f64) -> Result<Self> {
        if !(tolerance >= Self::MIN_TOLERANCE) || !tolerance.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be >= {:e}, got {tolerance}",
                Self::MIN_TOLERANCE
            )));
        }
        if max_terms == 0 || max_terms > Self::MAX_TERMS_LIMIT {
            return Err(Error::InvalidConfig(format!(
                "max_terms must be in [1, {}], got {max_terms}",
                Self::MAX_TERMS_LIMIT
            )));
        }
        if !(r_cap > 0.0 && r_cap <= Self::MAX_R_CAP) {
            return Err(Error::InvalidConfig(format!(
                "r_cap must be in (0, 1 - 1e-9], got {r_cap}"
            )));
        }
        Ok(SeriesEvalConfig {
            tolerance,
            max_terms,
            r_cap,
        })
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn r_cap(&self) -> f64 {
        self.r_cap
    }

    /// Same budget and cap, different tolerance.
    pub fn with_tolerance(self, tolerance: f64) -> Result<Self> {
        Self::new(tolerance, self.max_terms, self.r_cap)
    }

    pub(crate) fn check_radius(&self, r: f64) -> Result<()> {
        if !(r >= 0.0 && r <= self.r_cap) {
            return Err(Error::ArgumentOutOfRange(format!(
                "radius {r} outside [0, {}]",
                self.r_cap
            )));
        }
        Ok(())
    }
}

impl Default for SeriesEvalConfig {
    fn default() -> Self {
        SeriesEvalConfig {
            tolerance: 1e-12,
            max_terms: 1_000_000,
            r_cap: Self::MAX_R_CAP,
        }
    }
}

/// Kahan-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

/// The coefficient weight `wₙ = n(1 + α(n − 2))` of the operator
/// `u ↦ (1 − α)u′ + αz u″` on the `n`-th power.
pub fn weight(n: usize, params: &ClassParams) -> Result<f64> {
    if n < 2 {
        return Err(Error::ArgumentOutOfRange(format!(
            "weight index must be >= 2, got {n}"
        )));
    }
    Ok(weight_unchecked(n, params.alpha()))
}

pub(crate) fn weight_unchecked(n: usize, alpha: f64) -> f64 {
    let n = n as f64;
    n + alpha * n * (n - 2.0)
}

/// Two-sided enclosure of the series value after a finite number of terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Enclosure {
    /// Partial sum; a lower bound because every term is positive.
    pub lower: f64,
    /// Partial sum plus the certified tail bound.
    pub upper: f64,
    pub terms: usize,
}

/// `2F1(1, 1/α; 1 + 1/α; r)` to absolute accuracy `cfg.tolerance()`.
pub fn hyp2f1_special(params: &ClassParams, r: f64, cfg: &SeriesEvalConfig) -> Result<f64> {
    hyp2f1_special_enclosure(params, r, cfg, |_, _| false).map(|e| e.lower)
}

/// Sums the series until `done(lower, upper)` holds or the tail bound meets
/// the tolerance, whichever comes first.
///
/// Sign tests near `r → 1` only need an enclosure that excludes a threshold,
/// which usually takes far fewer terms than full-tolerance evaluation.
pub fn hyp2f1_special_enclosure<F>(
    params: &ClassParams,
    r: f64,
    cfg: &SeriesEvalConfig,
    mut done: F,
) -> Result<Enclosure>
where
    F: FnMut(f64, f64) -> bool,
{
    cfg.check_radius(r)?;
    let alpha = params.alpha();
    let one_minus_r = 1.0 - r;
    let mut sum = CompensatedSum::default();
    let mut power = 1.0;
    let mut tail = f64::INFINITY;
    for n in 0..cfg.max_terms() {
        let nf = n as f64;
        sum.add(power / (1.0 + alpha * nf));
        power *= r;
        tail = power / ((1.0 + alpha * nf) * one_minus_r);
        let lower = sum.value();
        if tail <= cfg.tolerance() || done(lower, lower + tail) {
            return Ok(Enclosure {
                lower,
                upper: lower + tail,
                terms: n + 1,
            });
        }
    }
    Err(Error::BudgetExceeded {
        terms: cfg.max_terms(),
        tail,
        tolerance: cfg.tolerance(),
    })
}

/// The two parameter values with elementary closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogClosedForm {
    /// `α = 1`: `−ln(1 − r) / r`.
    One,
    /// `α = 1/2`: `(2 / r²)(−ln(1 − r) − r)`.
    Half,
}

/// Logarithmic closed form of the restricted `2F1` at `α ∈ {1, 1/2}`.
pub fn log_closed_form(kind: LogClosedForm, r: f64, cfg: &SeriesEvalConfig) -> Result<f64> {
    cfg.check_radius(r)?;
    if r == 0.0 {
        return Ok(1.0);
    }
    let neg_log = -(-r).ln_1p();
    Ok(match kind {
        LogClosedForm::One => neg_log / r,
        LogClosedForm::Half => {
            // -ln(1-r) - r cancels badly for small r
            let excess = if r < 0.1 {
                let mut acc = 0.0;
                let mut power = r * r;
                let mut k = 2.0;
                while power / k > 1e-20 * r * r {
                    acc += power / k;
                    power *= r;
                    k += 1.0;
                }
                acc
            } else {
                neg_log - r
            };
            2.0 * excess / (r * r)
        }
    })
}
