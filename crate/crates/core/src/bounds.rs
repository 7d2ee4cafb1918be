//! Coefficient and growth bounds for the class, membership oracles and the
//! convex-null conditions behind the convolution results.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::harmonic::{AnalyticSeries, HarmonicSeries};
use crate::specfun::{weight, weight_unchecked, ClassParams, CompensatedSum, SeriesEvalConfig};

/// Band below zero that sampled margins may reach before a witness is
/// reported, and below `κ` that the sufficient sum must stay to certify.
pub const STRICTNESS_SLACK: f64 = 1e-12;

/// `|bₙ| ≤ κ / wₙ`.
pub fn bn_bound(n: usize, params: &ClassParams) -> Result<f64> {
    Ok(params.kappa() / weight(n, params)?)
}

/// `|aₙ| + |bₙ| ≤ 2κ / wₙ`.
pub fn an_sum_bound(n: usize, params: &ClassParams) -> Result<f64> {
    Ok(2.0 * params.kappa() / weight(n, params)?)
}

/// `z + (κ / wₙ) conj(zⁿ)`, sharp for the co-analytic bound.
pub fn extremal_coanalytic(n: usize, params: &ClassParams) -> Result<HarmonicSeries> {
    let bound = bn_bound(n, params)?;
    let mut b = vec![Complex64::new(0.0, 0.0); n - 1];
    b[n - 2] = Complex64::new(bound, 0.0);
    HarmonicSeries::from_tails(Vec::new(), b)
}

/// `z + Σ_{n=2}^{degree} (2κ / wₙ) zⁿ`, sharp for the coefficient-sum and
/// growth bounds.
pub fn extremal_analytic(params: &ClassParams, degree: usize) -> Result<HarmonicSeries> {
    if degree < 1 {
        return Err(Error::ArgumentOutOfRange("degree must be >= 1".into()));
    }
    let a = (2..=degree)
        .map(|n| an_sum_bound(n, params).map(|v| Complex64::new(v, 0.0)))
        .collect::<Result<Vec<_>>>()?;
    HarmonicSeries::from_tails(a, Vec::new())
}

/// Two-sided bound on `|f(z)|` at `|z| = radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthEnvelope {
    pub radius: f64,
    pub lower: f64,
    pub upper: f64,
    pub terms_used: usize,
}

/// Lower and upper growth envelopes
/// `r + 2κ Σ (∓1)ⁿ⁻¹ rⁿ / (n(1 + α(n − 2)))`.
///
/// The upper series has the geometric tail bound
/// `2κ r^{N+1} / ((N+1)(1 + α(N−1))(1 − r))`; the alternating lower series
/// is off by at most its first omitted term, which is smaller.
pub fn growth_envelope(params: &ClassParams, radius: f64, cfg: &SeriesEvalConfig) -> Result<GrowthEnvelope> {
    cfg.check_radius(radius)?;
    if radius == 0.0 {
        return Ok(GrowthEnvelope {
            radius,
            lower: 0.0,
            upper: 0.0,
            terms_used: 0,
        });
    }
    let alpha = params.alpha();
    let scale = 2.0 * params.kappa();
    let mut pos = CompensatedSum::default();
    let mut alt = CompensatedSum::default();
    let mut power = radius;
    let mut tail = f64::INFINITY;
    for n in 2..cfg.max_terms() + 2 {
        power *= radius;
        let nf = n as f64;
        let term = power / (nf * (1.0 + alpha * (nf - 2.0)));
        pos.add(term);
        alt.add(if n % 2 == 0 { -term } else { term });
        let next = power * radius / ((nf + 1.0) * (1.0 + alpha * (nf - 1.0)));
        tail = scale * next / (1.0 - radius);
        if tail <= cfg.tolerance() {
            return Ok(GrowthEnvelope {
                radius,
                lower: radius + scale * alt.value(),
                upper: radius + scale * pos.value(),
                terms_used: n - 1,
            });
        }
    }
    Err(Error::BudgetExceeded {
        terms: cfg.max_terms(),
        tail,
        tolerance: cfg.tolerance(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    MemberCertified,
    NotMemberWitness,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::MemberCertified => "member_certified",
            Verdict::NotMemberWitness => "not_member_witness",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A sample point where the defining inequality fails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub z: Complex64,
    pub margin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipVerdict {
    pub verdict: Verdict,
    /// Present exactly when the verdict is `NotMemberWitness`.
    pub witness: Option<Witness>,
    /// Smallest margin seen: `κ − Σ` for the sufficient test, the grid
    /// minimum of `Re L_α h + M − |L_α g|` for the sampled test.
    pub margin_min: f64,
    /// Grid minimum of `Re L_α(h + εg) + M` over the sampled unit `ε`.
    pub slice_margin_min: Option<f64>,
}

/// `Σ wₙ(|aₙ| + |bₙ|)` over the stored coefficients.
pub fn weighted_coefficient_sum(f: &HarmonicSeries, params: &ClassParams) -> f64 {
    let mut sum = CompensatedSum::default();
    for (n, a, b) in f.terms() {
        sum.add(weight_unchecked(n, params.alpha()) * (a.norm() + b.norm()));
    }
    sum.value()
}

/// Certifies membership when `Σ wₙ(|aₙ| + |bₙ|) < κ`. The condition is only
/// sufficient, so failing it is inconclusive.
pub fn sufficient_membership(f: &HarmonicSeries, params: &ClassParams) -> MembershipVerdict {
    let kappa = params.kappa();
    let margin = kappa - weighted_coefficient_sum(f, params);
    let verdict = if margin > STRICTNESS_SLACK * kappa.max(1.0) {
        Verdict::MemberCertified
    } else {
        Verdict::Inconclusive
    };
    MembershipVerdict {
        verdict,
        witness: None,
        margin_min: margin,
        slice_margin_min: None,
    }
}

/// Polar sample grid `{rᵢ e^{iθⱼ}}` with `rᵢ = i r_cap / (n_radii + 1)`,
/// `i = 1..=n_radii`, and `θⱼ = 2πj / n_angles`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingGrid {
    pub n_radii: usize,
    pub n_angles: usize,
    pub eps_count: usize,
    pub r_cap: f64,
}

impl Default for SamplingGrid {
    fn default() -> Self {
        SamplingGrid {
            n_radii: 24,
            n_angles: 48,
            eps_count: 8,
            r_cap: SeriesEvalConfig::MAX_R_CAP,
        }
    }
}

impl SamplingGrid {
    pub fn new(n_radii: usize, n_angles: usize, eps_count: usize) -> Result<Self> {
        if n_radii == 0 || n_angles == 0 || eps_count == 0 {
            return Err(Error::ArgumentOutOfRange("grid sizes must be >= 1".into()));
        }
        Ok(SamplingGrid {
            n_radii,
            n_angles,
            eps_count,
            ..SamplingGrid::default()
        })
    }

    /// Points in lexicographic `(i, j)` order.
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (1..=self.n_radii).flat_map(move |i| {
            let r = i as f64 / (self.n_radii + 1) as f64 * self.r_cap;
            (0..self.n_angles).map(move |j| Complex64::from_polar(r, TAU * j as f64 / self.n_angles as f64))
        })
    }

    pub fn largest_radius(&self) -> f64 {
        self.n_radii as f64 / (self.n_radii + 1) as f64 * self.r_cap
    }
}

/// Samples the defining inequality `Re L_α h > −M + |L_α g|` and its
/// analytic slices. Sampling a necessary condition never certifies
/// membership; the verdict is a witness or inconclusive.
pub fn sampled_membership(f: &HarmonicSeries, params: &ClassParams, grid: &SamplingGrid) -> MembershipVerdict {
    let m = params.m();
    let eps: Vec<Complex64> = (0..grid.eps_count)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / grid.eps_count as f64))
        .collect();
    let mut best: Option<Witness> = None;
    let mut slice_min = f64::INFINITY;
    for z in grid.points() {
        let lh = f.apply_l_analytic(params, z).expect("grid lies inside the disk");
        let lg = f.apply_l_coanalytic(params, z).expect("grid lies inside the disk");
        let margin = lh.re + m - lg.norm();
        if best.is_none_or(|w| margin < w.margin) {
            best = Some(Witness { z, margin });
        }
        for e in &eps {
            slice_min = slice_min.min((lh + e * lg).re + m);
        }
    }
    let best = best.expect("grid is nonempty");
    let violated = best.margin < -STRICTNESS_SLACK || slice_min < -STRICTNESS_SLACK;
    MembershipVerdict {
        verdict: if violated {
            Verdict::NotMemberWitness
        } else {
            Verdict::Inconclusive
        },
        witness: violated.then_some(best),
        margin_min: best.margin,
        slice_margin_min: Some(slice_min),
    }
}

/// `κ ≤ 3(1 + α) / (6α + 4)`, the hypothesis of the convolution results.
pub fn convex_null_condition(params: &ClassParams) -> bool {
    let alpha = params.alpha();
    params.kappa() <= 3.0 * (1.0 + alpha) / (6.0 * alpha + 4.0)
}

/// The sequence `c₀ = 1`, `c_{n−1} = 2κ / wₙ` for `n = 2..=len + 1`.
pub fn convex_null_sequence(params: &ClassParams, len: usize) -> Vec<f64> {
    std::iter::once(1.0)
        .chain((2..=len + 1).map(|n| 2.0 * params.kappa() / weight_unchecked(n, params.alpha())))
        .collect()
}

/// Checks that `(c₀, …, c_len)` has nonnegative, nonincreasing differences.
///
/// Differences are compared with a relative band of `1e-12` so that
/// parameters sitting exactly on the closed-form boundary are accepted.
pub fn convex_null_sequence_check(params: &ClassParams, prefix_len: usize) -> Result<bool> {
    if prefix_len < 4 {
        return Err(Error::ArgumentOutOfRange(format!(
            "prefix length must be >= 4, got {prefix_len}"
        )));
    }
    let c = convex_null_sequence(params, prefix_len);
    let diffs: Vec<f64> = c.windows(2).map(|w| w[0] - w[1]).collect();
    let band = 1e-12;
    let nonneg = diffs.iter().all(|d| *d >= -band);
    let nonincreasing = diffs.windows(2).all(|w| w[0] >= w[1] - band * w[1].abs().max(1e-300));
    Ok(nonneg && nonincreasing)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReHalfCheck {
    pub holds_on_grid: bool,
    pub min_value: f64,
    pub argmin: Complex64,
}

/// Samples `Re(F(z)/z) = Re(1 + Σ cₙ zⁿ⁻¹)` and compares its minimum with 1/2.
pub fn re_half_check(f: &AnalyticSeries, grid: &SamplingGrid) -> ReHalfCheck {
    let mut min_value = f64::INFINITY;
    let mut argmin = Complex64::new(0.0, 0.0);
    for z in grid.points() {
        let v = 1.0 + f.tail_over_z(z).re;
        if v < min_value {
            min_value = v;
            argmin = z;
        }
    }
    ReHalfCheck {
        holds_on_grid: min_value > 0.5,
        min_value,
        argmin,
    }
}

/// Degree of the functions produced by [`random_member`].
pub const GENERATOR_DEGREE: usize = 16;

/// Random class member: complex Gaussian coefficients up to degree 16,
/// rescaled so that `Σ wₙ(|aₙ| + |bₙ|) = ρκ` with `ρ ~ U(0.1, 0.9)`.
/// Every output satisfies the sufficient condition, hence is a member.
pub fn random_member<R: Rng + ?Sized>(params: &ClassParams, rng: &mut R) -> HarmonicSeries {
    let len = GENERATOR_DEGREE - 1;
    let mut gaussian = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let mut a: Vec<Complex64> = (0..len).map(|_| gaussian()).collect();
    let mut b: Vec<Complex64> = (0..len).map(|_| gaussian()).collect();
    let rho: f64 = rng.random_range(0.1..0.9);
    let raw = HarmonicSeries::from_tails(a.clone(), b.clone()).expect("fixed small degree");
    let scale = rho * params.kappa() / weighted_coefficient_sum(&raw, params);
    for c in a.iter_mut().chain(b.iter_mut()) {
        *c *= scale;
    }
    HarmonicSeries::from_tails(a, b).expect("fixed small degree")
}
