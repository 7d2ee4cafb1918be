//! Truncated normalized harmonic mappings `f = h + conj(g)` on the unit disk.
//!
//! Only the tail coefficients (index 2 and up) are stored. The normalization
//! `h(0) = 0, h'(0) = 1, g(0) = g'(0) = 0` is structural.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{weight_unchecked, ClassParams};

/// Largest supported truncation degree.
pub const MAX_DEGREE: usize = 10_000;

/// Tolerance on `| |ε| − 1 |` for slice and rotation parameters.
pub const UNIT_MODULUS_TOL: f64 = 1e-12;

/// Tolerance on the convex-weight sum.
pub const CONVEX_WEIGHT_TOL: f64 = 1e-12;

/// Normalized analytic polynomial `z + c₂z² + … + c_N z^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSeries {
    // coeffs[k] is the coefficient of z^(k + 2)
    coeffs: Vec<Complex64>,
}

impl AnalyticSeries {
    /// The identity map `z`.
    pub fn identity() -> Self {
        AnalyticSeries { coeffs: Vec::new() }
    }

    /// Builds from `(c₂, …, c_N)`.
    pub fn from_tail(coeffs: Vec<Complex64>) -> Result<Self> {
        check_degree(coeffs.len() + 1)?;
        Ok(AnalyticSeries { coeffs })
    }

    /// `z + c zⁿ`.
    pub fn monomial(n: usize, c: Complex64) -> Result<Self> {
        if n < 2 {
            return Err(Error::ArgumentOutOfRange(format!(
                "monomial index must be >= 2, got {n}"
            )));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n - 1];
        coeffs[n - 2] = c;
        Self::from_tail(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() + 1
    }

    /// Coefficients `c₂, …, c_N`.
    pub fn tail(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `zⁿ`, including the implicit `c₀ = 0, c₁ = 1`.
    pub fn coeff(&self, n: usize) -> Complex64 {
        match n {
            0 => Complex64::new(0.0, 0.0),
            1 => Complex64::new(1.0, 0.0),
            _ => self.coeffs.get(n - 2).copied().unwrap_or_default(),
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        Ok(z + z * z * horner(&self.coeffs, z))
    }

    /// `Σ cₙ zⁿ⁻¹` over the tail.
    pub(crate) fn tail_over_z(&self, z: Complex64) -> Complex64 {
        z * horner(&self.coeffs, z)
    }

    /// `L_α u(z) = (1 − α)u′(z) + αz u″(z)`, i.e. `(1 − α) + Σ wₙcₙzⁿ⁻¹`.
    pub fn apply_l(&self, params: &ClassParams, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        Ok(Complex64::new(1.0 - params.alpha(), 0.0) + weighted_tail(&self.coeffs, params, z))
    }

    /// Hadamard product; the degree is the smaller of the two.
    pub fn convolve(&self, other: &AnalyticSeries) -> AnalyticSeries {
        AnalyticSeries {
            coeffs: hadamard(&self.coeffs, &other.coeffs),
        }
    }

    fn padded(&self, degree: usize) -> Vec<Complex64> {
        let mut c = self.coeffs.clone();
        c.resize(degree.saturating_sub(1), Complex64::new(0.0, 0.0));
        c
    }
}

/// Normalized harmonic polynomial `h + conj(g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicSeries {
    h: AnalyticSeries,
    // g[k] is b_(k + 2); always the same length as h's tail
    g: Vec<Complex64>,
}

impl HarmonicSeries {
    pub fn identity() -> Self {
        HarmonicSeries {
            h: AnalyticSeries::identity(),
            g: Vec::new(),
        }
    }

    /// Builds from `(a₂, …)` and `(b₂, …)`; the shorter is zero-padded.
    pub fn from_tails(a: Vec<Complex64>, b: Vec<Complex64>) -> Result<Self> {
        let len = a.len().max(b.len());
        check_degree(len + 1)?;
        let mut a = a;
        let mut b = b;
        a.resize(len, Complex64::new(0.0, 0.0));
        b.resize(len, Complex64::new(0.0, 0.0));
        Ok(HarmonicSeries {
            h: AnalyticSeries { coeffs: a },
            g: b,
        })
    }

    /// Harmonic map with vanishing co-analytic part.
    pub fn from_analytic(h: AnalyticSeries) -> Self {
        let g = vec![Complex64::new(0.0, 0.0); h.coeffs.len()];
        HarmonicSeries { h, g }
    }

    pub fn degree(&self) -> usize {
        self.h.degree()
    }

    pub fn analytic(&self) -> &AnalyticSeries {
        &self.h
    }

    /// `a₂, …, a_N`.
    pub fn a_tail(&self) -> &[Complex64] {
        &self.h.coeffs
    }

    /// `b₂, …, b_N`.
    pub fn b_tail(&self) -> &[Complex64] {
        &self.g
    }

    pub fn a(&self, n: usize) -> Complex64 {
        self.h.coeff(n)
    }

    pub fn b(&self, n: usize) -> Complex64 {
        if n < 2 {
            Complex64::new(0.0, 0.0)
        } else {
            self.g.get(n - 2).copied().unwrap_or_default()
        }
    }

    /// Iterates `(n, aₙ, bₙ)` for `n = 2..=N`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, Complex64, Complex64)> + '_ {
        self.h
            .coeffs
            .iter()
            .zip(&self.g)
            .enumerate()
            .map(|(k, (&a, &b))| (k + 2, a, b))
    }

    /// `h(z) + conj(g(z))`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        let h = z + z * z * horner(&self.h.coeffs, z);
        let g = z * z * horner(&self.g, z);
        Ok(h + g.conj())
    }

    /// `L_α h(z)`.
    pub fn apply_l_analytic(&self, params: &ClassParams, z: Complex64) -> Result<Complex64> {
        self.h.apply_l(params, z)
    }

    /// `L_α g(z) = Σ wₙbₙzⁿ⁻¹` (no constant term since `g′(0) = 0`).
    pub fn apply_l_coanalytic(&self, params: &ClassParams, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        Ok(weighted_tail(&self.g, params, z))
    }

    /// The analytic slice `h + εg`.
    pub fn epsilon_slice(&self, eps: Complex64) -> Result<AnalyticSeries> {
        check_unit(eps)?;
        Ok(AnalyticSeries {
            coeffs: self
                .h
                .coeffs
                .iter()
                .zip(&self.g)
                .map(|(&a, &b)| a + eps * b)
                .collect(),
        })
    }

    /// `h₁∗h₂ + conj(g₁∗g₂)`.
    pub fn convolve(&self, other: &HarmonicSeries) -> HarmonicSeries {
        HarmonicSeries {
            h: self.h.convolve(&other.h),
            g: hadamard(&self.g, &other.g),
        }
    }

    /// `h∗φ + conj(g∗φ)`.
    pub fn convolve_tilde(&self, phi: &AnalyticSeries) -> HarmonicSeries {
        HarmonicSeries {
            h: self.h.convolve(phi),
            g: hadamard(&self.g, &phi.coeffs),
        }
    }

    /// `f ∗ (φ + β·conj(φ)) = h∗φ + conj(conj(β)·(g∗φ))`.
    pub fn convolve_rotation(&self, phi: &AnalyticSeries, beta: Complex64) -> Result<HarmonicSeries> {
        check_unit(beta)?;
        let rot = beta.conj();
        Ok(HarmonicSeries {
            h: self.h.convolve(phi),
            g: hadamard(&self.g, &phi.coeffs)
                .into_iter()
                .map(|c| rot * c)
                .collect(),
        })
    }
}

/// `Σ tᵢ fᵢ` for nonnegative weights summing to one.
pub fn convex_combination(fs: &[HarmonicSeries], ts: &[f64]) -> Result<HarmonicSeries> {
    if fs.is_empty() {
        return Err(Error::NotConvexWeights("no functions given".into()));
    }
    if fs.len() != ts.len() {
        return Err(Error::NotConvexWeights(format!(
            "{} functions but {} weights",
            fs.len(),
            ts.len()
        )));
    }
    if let Some(t) = ts.iter().find(|t| !(**t >= 0.0)) {
        return Err(Error::NotConvexWeights(format!("negative weight {t}")));
    }
    let total: f64 = ts.iter().sum();
    if (total - 1.0).abs() > CONVEX_WEIGHT_TOL {
        return Err(Error::NotConvexWeights(format!("weights sum to {total}")));
    }
    let degree = fs.iter().map(HarmonicSeries::degree).max().unwrap_or(1);
    let len = degree - 1;
    let mut a = vec![Complex64::new(0.0, 0.0); len];
    let mut b = vec![Complex64::new(0.0, 0.0); len];
    for (f, &t) in fs.iter().zip(ts) {
        for (acc, c) in a.iter_mut().zip(f.h.padded(degree)) {
            *acc += c * t;
        }
        for (acc, c) in b.iter_mut().zip(&f.g) {
            *acc += c * t;
        }
    }
    HarmonicSeries::from_tails(a, b)
}

fn check_degree(degree: usize) -> Result<()> {
    if degree > MAX_DEGREE {
        return Err(Error::ArgumentOutOfRange(format!(
            "degree {degree} exceeds {MAX_DEGREE}"
        )));
    }
    Ok(())
}

fn check_disk(z: Complex64) -> Result<()> {
    if !(z.norm() < 1.0) {
        return Err(Error::ArgumentOutOfRange(format!(
            "|z| = {} is not inside the unit disk",
            z.norm()
        )));
    }
    Ok(())
}

pub(crate) fn check_unit(w: Complex64) -> Result<()> {
    let modulus = w.norm();
    if !((modulus - 1.0).abs() <= UNIT_MODULUS_TOL) {
        return Err(Error::NotUnitModulus(modulus));
    }
    Ok(())
}

// Σ c[k] z^k
fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

// Σ_{n≥2} wₙ cₙ zⁿ⁻¹ with coeffs[k] = c_(k+2)
fn weighted_tail(coeffs: &[Complex64], params: &ClassParams, z: Complex64) -> Complex64 {
    let alpha = params.alpha();
    let inner = coeffs
        .iter()
        .enumerate()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, (k, &c)| {
            acc * z + c * weight_unchecked(k + 2, alpha)
        });
    z * inner
}

fn hadamard(x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
    x.iter().zip(y).map(|(&p, &q)| p * q).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn params(alpha: f64, m: f64) -> ClassParams {
        ClassParams::new(alpha, m).unwrap()
    }

    fn a2_b2(a2: Complex64, b2: Complex64) -> HarmonicSeries {
        HarmonicSeries::from_tails(vec![a2], vec![b2]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let z = c(0.3, 0.4);
        assert_eq!(HarmonicSeries::identity().eval(z).unwrap(), z);

        let f = a2_b2(c(0.0, 0.0), c(0.5, 0.0));
        assert!(close(f.eval(c(0.5, 0.0)).unwrap(), c(0.625, 0.0), 1e-15));

        let f = a2_b2(c(0.25, 0.0), c(0.0, 0.0));
        assert!(close(f.eval(c(0.0, 0.4)).unwrap(), c(-0.04, 0.4), 1e-15));
    }

    #[test]
    fn eval_conjugates_coanalytic_part() {
        // b₂ = i at z = 0.5i: g = i·(−0.25) = −0.25i, conj → 0.25i
        let f = a2_b2(c(0.0, 0.0), c(0.0, 1.0));
        assert!(close(f.eval(c(0.0, 0.5)).unwrap(), c(0.0, 0.75), 1e-15));
    }

    #[test]
    fn eval_rejects_boundary() {
        let f = HarmonicSeries::identity();
        assert!(matches!(f.eval(c(1.0, 0.0)), Err(Error::ArgumentOutOfRange(_))));
        assert!(matches!(f.eval(c(0.8, 0.7)), Err(Error::ArgumentOutOfRange(_))));
        assert!(f.apply_l_analytic(&params(0.5, 1.0), c(0.0, -1.0)).is_err());
        assert!(f.apply_l_coanalytic(&params(0.5, 1.0), c(2.0, 0.0)).is_err());
    }

    #[test]
    fn operator_examples() {
        let id = HarmonicSeries::identity();
        for alpha in [0.2, 0.5, 1.0] {
            let v = id.apply_l_analytic(&params(alpha, 1.0), c(0.3, -0.2)).unwrap();
            assert_eq!(v, c(1.0 - alpha, 0.0));
        }
        let coef = c(0.3, -0.7);
        let z = c(0.1, 0.6);
        let f = a2_b2(c(0.0, 0.0), coef);
        let v = f.apply_l_coanalytic(&params(0.4, 1.0), z).unwrap();
        assert!(close(v, coef * z * 2.0, 1e-15));

        let h = AnalyticSeries::monomial(3, c(1.0, 0.0)).unwrap();
        let v = h.apply_l(&params(0.5, 1.0), c(0.2, 0.0)).unwrap();
        // (1 − α) + w₃·z² with w₃ = 4.5
        assert!(close(v, c(0.5 + 0.18, 0.0), 1e-15));
    }

    #[test]
    fn operator_matches_derivatives() {
        // (1 − α)h′ + αz h″ evaluated from the raw power series
        let tail = vec![c(0.2, 0.1), c(-0.3, 0.05), c(0.01, -0.4), c(0.07, 0.0)];
        let h = AnalyticSeries::from_tail(tail.clone()).unwrap();
        let p = params(0.35, 0.8);
        let z = c(-0.4, 0.55);
        let mut hp = c(1.0, 0.0);
        let mut hpp = c(0.0, 0.0);
        for (k, &a) in tail.iter().enumerate() {
            let n = (k + 2) as i32;
            hp += a * z.powi(n - 1) * n as f64;
            hpp += a * z.powi(n - 2) * (n * (n - 1)) as f64;
        }
        let direct = hp * (1.0 - p.alpha()) + z * hpp * p.alpha();
        assert!(close(h.apply_l(&p, z).unwrap(), direct, 1e-14));
    }

    #[test]
    fn operator_at_alpha_one() {
        // L₁h = z h″ = Σ n(n − 1) aₙ zⁿ⁻¹
        let h = AnalyticSeries::from_tail(vec![c(0.3, 0.0), c(0.0, 0.2)]).unwrap();
        let z = c(0.5, 0.1);
        let want = z * 2.0 * 0.3 + z * z * c(0.0, 0.2) * 6.0;
        assert!(close(h.apply_l(&params(1.0, 1.0), z).unwrap(), want, 1e-15));
    }

    #[test]
    fn slice_examples() {
        let h_only = a2_b2(c(0.1, 0.3), c(0.0, 0.0));
        assert_eq!(h_only.epsilon_slice(c(0.0, 1.0)).unwrap(), *h_only.analytic());

        let f = a2_b2(c(0.1, 0.0), c(0.2, 0.0));
        let s = f.epsilon_slice(c(-1.0, 0.0)).unwrap();
        assert!(close(s.coeff(2), c(-0.1, 0.0), 1e-16));
        let s = f.epsilon_slice(c(0.0, 1.0)).unwrap();
        assert!(close(s.coeff(2), c(0.1, 0.2), 1e-16));
        assert_eq!(s.degree(), f.degree());

        assert!(matches!(f.epsilon_slice(c(1.1, 0.0)), Err(Error::NotUnitModulus(_))));
        let nearly = c(1.0 + 5e-13, 0.0);
        assert!(f.epsilon_slice(nearly).is_ok());
    }

    #[test]
    fn convolution_examples() {
        let f = a2_b2(c(0.3, 0.2), c(0.1, 0.0));
        let id = HarmonicSeries::identity();
        let prod = f.convolve(&id);
        assert_eq!(prod, id);
        assert_eq!(prod.degree(), 1);

        let p = a2_b2(c(0.3, 0.0), c(0.0, 0.0)).convolve(&a2_b2(c(0.5, 0.0), c(0.0, 0.0)));
        assert!(close(p.a(2), c(0.15, 0.0), 1e-16));

        let f1 = HarmonicSeries::from_tails(vec![], vec![c(0.0, 0.0), c(0.2, 0.0)]).unwrap();
        let f2 = HarmonicSeries::from_tails(vec![], vec![c(0.0, 0.0), c(0.4, 0.0)]).unwrap();
        let p = f1.convolve(&f2);
        assert!(close(p.b(3), c(0.08, 0.0), 1e-16));
        assert!(p.a_tail().iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn mixed_degree_takes_minimum() {
        let f = HarmonicSeries::from_tails(vec![c(0.1, 0.0); 6], vec![]).unwrap();
        let g = HarmonicSeries::from_tails(vec![c(0.2, 0.0); 3], vec![]).unwrap();
        assert_eq!(f.convolve(&g).degree(), 4);
        assert_eq!(g.convolve(&f).degree(), 4);
        let phi = AnalyticSeries::from_tail(vec![c(1.0, 0.0); 2]).unwrap();
        assert_eq!(f.convolve_tilde(&phi).degree(), 3);
    }

    #[test]
    fn tilde_examples() {
        let f = a2_b2(c(0.2, 0.0), c(0.3, 0.0));
        let t = f.convolve_tilde(&AnalyticSeries::identity());
        assert_eq!(t, HarmonicSeries::identity());

        let phi = AnalyticSeries::monomial(2, c(0.5, 0.0)).unwrap();
        let t = f.convolve_tilde(&phi);
        assert!(close(t.a(2), c(0.1, 0.0), 1e-16));
        assert!(close(t.b(2), c(0.15, 0.0), 1e-16));

        let f = HarmonicSeries::from_tails(vec![], vec![c(0.0, 0.0), c(0.0, 0.0), c(0.8, 0.0)]).unwrap();
        let phi = AnalyticSeries::monomial(4, c(0.25, 0.0)).unwrap();
        assert!(close(f.convolve_tilde(&phi).b(4), c(0.2, 0.0), 1e-16));
    }

    #[test]
    fn rotation_examples() {
        let f = a2_b2(c(0.1, 0.05), c(0.4, 0.0));
        let phi = AnalyticSeries::monomial(2, c(0.5, 0.0)).unwrap();
        assert_eq!(f.convolve_rotation(&phi, c(1.0, 0.0)).unwrap(), f.convolve_tilde(&phi));
        let r = f.convolve_rotation(&phi, c(-1.0, 0.0)).unwrap();
        assert!(close(r.b(2), c(-0.2, 0.0), 1e-16));
        let r = f.convolve_rotation(&phi, c(0.0, 1.0)).unwrap();
        assert!(close(r.b(2), c(0.0, -0.2), 1e-16));
        assert!(close(r.a(2), c(0.05, 0.025), 1e-16));
        assert!(matches!(
            f.convolve_rotation(&phi, c(0.5, 0.5)),
            Err(Error::NotUnitModulus(_))
        ));
    }

    #[test]
    fn convex_combination_examples() {
        let f = a2_b2(c(0.2, 0.1), c(0.0, 0.3));
        assert_eq!(convex_combination(&[f.clone()], &[1.0]).unwrap(), f);

        let f1 = a2_b2(c(0.2, 0.0), c(0.0, 0.0));
        let f2 = a2_b2(c(0.6, 0.0), c(0.0, 0.0));
        let m = convex_combination(&[f1, f2], &[0.5, 0.5]).unwrap();
        assert!(close(m.a(2), c(0.4, 0.0), 1e-16));

        let f1 = a2_b2(c(0.0, 0.0), c(0.3, 0.0));
        let f2 = HarmonicSeries::identity();
        let m = convex_combination(&[f1, f2], &[1.0 / 3.0, 2.0 / 3.0]).unwrap();
        assert!(close(m.b(2), c(0.1, 0.0), 1e-16));
        assert_eq!(m.degree(), 2);
    }

    #[test]
    fn convex_combination_rejects_bad_weights() {
        let f = HarmonicSeries::identity();
        assert!(matches!(convex_combination(&[], &[]), Err(Error::NotConvexWeights(_))));
        assert!(matches!(
            convex_combination(&[f.clone(), f.clone()], &[0.7, 0.7]),
            Err(Error::NotConvexWeights(_))
        ));
        assert!(matches!(
            convex_combination(&[f.clone(), f.clone()], &[1.5, -0.5]),
            Err(Error::NotConvexWeights(_))
        ));
        assert!(matches!(
            convex_combination(&[f.clone()], &[0.5, 0.5]),
            Err(Error::NotConvexWeights(_))
        ));
    }

    #[test]
    fn degree_cap() {
        assert!(AnalyticSeries::from_tail(vec![c(0.0, 0.0); MAX_DEGREE]).is_err());
        assert!(AnalyticSeries::from_tail(vec![c(0.0, 0.0); MAX_DEGREE - 1]).is_ok());
        assert!(AnalyticSeries::monomial(1, c(1.0, 0.0)).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coeff() -> impl Strategy<Value = Complex64> {
            (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
        }

        fn series(len: usize) -> impl Strategy<Value = HarmonicSeries> {
            (
                proptest::collection::vec(coeff(), len),
                proptest::collection::vec(coeff(), len),
            )
                .prop_map(|(a, b)| HarmonicSeries::from_tails(a, b).unwrap())
        }

        fn disk_point() -> impl Strategy<Value = Complex64> {
            (0.0f64..0.99, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
        }

        fn max_diff(x: &HarmonicSeries, y: &HarmonicSeries) -> f64 {
            x.terms()
                .zip(y.terms())
                .map(|((_, a1, b1), (_, a2, b2))| (a1 - a2).norm().max((b1 - b2).norm()))
                .fold(0.0, f64::max)
        }

        proptest! {
            #[test]
            fn convolution_commutes_and_associates(
                (f, g, h) in (1usize..12).prop_flat_map(|n| (series(n), series(n), series(n)))
            ) {
                prop_assert!(max_diff(&f.convolve(&g), &g.convolve(&f)) <= 1e-14);
                let left = f.convolve(&g).convolve(&h);
                let right = f.convolve(&g.convolve(&h));
                prop_assert!(max_diff(&left, &right) <= 1e-14);
            }

            #[test]
            fn slice_is_coefficientwise(f in series(8), theta in 0.0f64..std::f64::consts::TAU) {
                let eps = Complex64::from_polar(1.0, theta);
                let s = f.epsilon_slice(eps).unwrap();
                for (n, a, b) in f.terms() {
                    prop_assert!((s.coeff(n) - (a + eps * b)).norm() <= 1e-15);
                }
            }

            #[test]
            fn operator_is_linear(
                u in series(6), v in series(6), z in disk_point(),
                t in -2.0f64..2.0, s in -2.0f64..2.0, alpha in 0.01f64..=1.0,
            ) {
                let p = ClassParams::new(alpha, 1.0).unwrap();
                let combo: Vec<_> = u.b_tail().iter().zip(v.b_tail()).map(|(&x, &y)| x * t + y * s).collect();
                let w = HarmonicSeries::from_tails(vec![], combo).unwrap();
                let lhs = w.apply_l_coanalytic(&p, z).unwrap();
                let rhs = u.apply_l_coanalytic(&p, z).unwrap() * t + v.apply_l_coanalytic(&p, z).unwrap() * s;
                prop_assert!((lhs - rhs).norm() <= 1e-12);
            }
        }
    }
}
