//! Plancherel density for `SL(n,R)/SO(n)` and its comparison products.
//!
//! The density is assembled from the rank-one ratio
//! `phi(s) = Gamma_R(s+1)/Gamma_R(s)` over the positive roots, normalized
//! by its value at the half-sum of positive roots. The polynomial
//! comparison product `beta_tilde` and the Levi-restricted ratio used in
//! the Levi-descent estimate live here too, together with seeded slope
//! verifiers that certify the boundedness claims empirically.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

use crate::fit;
use crate::form::QuadForm;
use crate::par;
use crate::rootsys::{self, LeviSubgroup, SpectralPoint};
use crate::special;
use crate::{Error, Result};

const POLE_TOL: f64 = 1e-12;

/// `Gamma_R(s) = pi^{-s/2} Gamma(s/2)`.
///
/// Errors at the poles `s = 0, -2, -4, ...`.
pub fn gamma_r(s: Complex64) -> Result<Complex64> {
    let half = s / 2.0;
    if half.im.abs() < POLE_TOL && half.re <= POLE_TOL && (half.re - half.re.round()).abs() < POLE_TOL
    {
        return Err(Error::Domain(format!("Gamma_R pole at s = {s}")));
    }
    Ok((-half * PI.ln()).exp() * special::gamma(half))
}

/// Rank-one density ratio `phi(s) = Gamma_R(s+1)/Gamma_R(s)`, with the
/// convention `phi = 0` at the denominator poles `s = 0, -2, -4, ...`.
pub fn phi_ratio(s: Complex64) -> Complex64 {
    let half = s / 2.0;
    if half.im.abs() < POLE_TOL && half.re <= POLE_TOL && (half.re - half.re.round()).abs() < POLE_TOL
    {
        return Complex64::new(0.0, 0.0);
    }
    // pi^{-1/2} Gamma((s+1)/2) / Gamma(s/2), via log-gamma for stability
    let lg = special::ln_gamma((s + 1.0) / 2.0) - special::ln_gamma(half);
    (lg - 0.5 * PI.ln()).exp()
}

/// Independent modulus oracle for `|phi(2iu)|^2 = (u/pi) tanh(pi u)`,
/// built from the elementary gamma-modulus identities rather than from
/// [`phi_ratio`].
pub fn phi_modulus_sq_oracle(u: f64) -> f64 {
    if u == 0.0 {
        return 0.0;
    }
    let u = u.abs();
    // |Gamma(1/2 + iu)|^2 = pi / cosh(pi u), |Gamma(iu)|^2 = pi/(u sinh(pi u))
    let num = PI / (PI * u).cosh();
    let den = PI / (u * (PI * u).sinh());
    num / den / PI // the pi^{-1/2} prefactor squared
}

/// Plancherel density for rank `n`, with the normalization constant
/// `c_rho_inv` cached at construction.
#[derive(Debug, Clone)]
pub struct PlancherelDensity {
    n: usize,
    form: QuadForm,
    /// positive real value of the rank-one product at the half-sum point
    c_rho_inv: f64,
}

impl PlancherelDensity {
    pub fn new(n: usize, form: QuadForm) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        // consecutive-difference values rho_i - rho_j = j - i for i < j
        let mut c_rho_inv = 1.0;
        for i in 0..n {
            for j in (i + 1)..n {
                c_rho_inv *= phi_ratio(Complex64::new((j - i) as f64, 0.0)).re;
            }
        }
        assert!(c_rho_inv > 0.0);
        Ok(PlancherelDensity { n, form, c_rho_inv })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn form(&self) -> QuadForm {
        self.form
    }

    pub fn c_rho_inv(&self) -> f64 {
        self.c_rho_inv
    }

    fn check_imaginary(&self, lambda: &SpectralPoint) -> Result<()> {
        if lambda.n() != self.n {
            return Err(Error::Domain(format!(
                "rank mismatch: density has n = {}, point has n = {}",
                self.n,
                lambda.n()
            )));
        }
        if !lambda.is_imaginary(1e-10 * (1.0 + lambda.norm(self.form))) {
            return Err(Error::Domain(
                "Plancherel density requires a purely imaginary spectral point".into(),
            ));
        }
        Ok(())
    }

    /// `beta(lambda)` for purely imaginary `lambda`.
    pub fn beta(&self, lambda: &SpectralPoint) -> Result<f64> {
        self.check_imaginary(lambda)?;
        Ok(self.beta_im(&lambda.im_coords()))
    }

    /// `beta` on imaginary parts directly (hot path for the verifiers).
    pub fn beta_im(&self, nu: &[f64]) -> f64 {
        let mut prod = 1.0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let u = 0.5 * (nu[i] - nu[j]);
                prod *= phi_modulus_sq_from_gamma(u);
            }
        }
        prod / (self.c_rho_inv * self.c_rho_inv)
    }

    /// Comparison product `beta_tilde(t, lambda) = prod (t + |l_i - l_j|)`.
    pub fn beta_tilde(&self, t: f64, lambda: &SpectralPoint) -> Result<f64> {
        if t <= 0.0 {
            return Err(Error::Domain(format!("beta_tilde requires t > 0, got {t}")));
        }
        let c = lambda.coords();
        let mut prod = 1.0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                prod *= t + (c[i] - c[j]).norm();
            }
        }
        Ok(prod)
    }

    /// `beta_tilde(lambda) = beta_tilde(1, lambda)`.
    pub fn beta_tilde1(&self, lambda: &SpectralPoint) -> Result<f64> {
        self.beta_tilde(1.0, lambda)
    }

    /// Central finite difference of `beta` at `lambda` along `i * xi`.
    pub fn directional_derivative_beta(
        &self,
        xi: &[f64],
        lambda: &SpectralPoint,
        step: f64,
    ) -> Result<f64> {
        self.check_imaginary(lambda)?;
        if !(1e-6..=1e-2).contains(&step) {
            return Err(Error::Domain(format!(
                "step must lie in [1e-6, 1e-2], got {step}"
            )));
        }
        let nu = lambda.im_coords();
        let plus: Vec<f64> = nu.iter().zip(xi).map(|(v, x)| v + step * x).collect();
        let minus: Vec<f64> = nu.iter().zip(xi).map(|(v, x)| v - step * x).collect();
        Ok((self.beta_im(&plus) - self.beta_im(&minus)) / (2.0 * step))
    }

    /// Levi-descent ratio `beta_tilde^M(lambda^M) (1 + |lambda|) /
    /// beta_tilde(lambda)`, where the numerator product runs over
    /// within-block pairs only.
    pub fn scr_ratio(&self, m: &LeviSubgroup, lambda: &SpectralPoint) -> Result<f64> {
        if m.is_full() {
            return Err(Error::Domain(
                "scr_ratio requires a proper Levi subgroup".into(),
            ));
        }
        let (lam_m, _) = rootsys::levi_decompose(lambda, m);
        let c = lam_m.coords();
        let mut num = 1.0;
        for b in m.blocks() {
            for (ai, &i) in b.iter().enumerate() {
                for &j in b.iter().skip(ai + 1) {
                    num *= 1.0 + (c[i] - c[j]).norm();
                }
            }
        }
        let den = self.beta_tilde1(lambda)?;
        Ok(num * (1.0 + lambda.norm(self.form)) / den)
    }
}

/// `|phi(2iu)|^2` through the production path (log-gamma ratio), kept as a
/// scalar helper so `beta_im` avoids complex allocation overhead.
fn phi_modulus_sq_from_gamma(u: f64) -> f64 {
    phi_ratio(Complex64::new(0.0, 2.0 * u)).norm_sqr()
}

/// Closed form of `beta` for `n = 2` at `lambda = (iu, -iu)`.
pub fn beta_n2_closed_form(u: f64) -> f64 {
    PI * u * (PI * u).tanh()
}

/// Empirical slope report for one boundedness claim.
#[derive(Debug, Clone, Serialize)]
pub struct SlopeReport {
    pub check: String,
    pub n: usize,
    pub samples: usize,
    pub sup: f64,
    pub slope: f64,
    pub pass: bool,
}

const SLOPE_PASS: f64 = 0.02;

/// Samples a uniformly distributed direction on the unit sphere of the
/// trace-zero dual space (coordinates, Euclidean-normalized after
/// projection).
pub(crate) fn random_traceless_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let raw: Vec<f64> = (0..n)
            .map(|_| {
                // Box-Muller
                let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
                let u2: f64 = rng.gen_range(0.0..1.0);
                (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
            })
            .collect();
        let mean = raw.iter().sum::<f64>() / n as f64;
        let v: Vec<f64> = raw.iter().map(|x| x - mean).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.iter().map(|x| x / norm).collect();
        }
    }
}

fn slope_experiment<F>(
    check: &str,
    n: usize,
    sample_count: usize,
    norm_max: f64,
    seed: u64,
    form: QuadForm,
    ratio: F,
) -> SlopeReport
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    // log-spaced radii from 1 to norm_max (configured dual norm)
    let radii: Vec<f64> = (0..sample_count)
        .map(|k| (norm_max.ln() * k as f64 / (sample_count - 1) as f64).exp())
        .collect();
    let values = par::map_collect(sample_count, |k| {
        let mut rng = par::stream_rng(seed, k as u64);
        let dir = random_traceless_direction(&mut rng, n);
        let dual_norm = form.norm_dual(n, &dir);
        let scale = radii[k] / dual_norm;
        let nu: Vec<f64> = dir.iter().map(|x| x * scale).collect();
        ratio(&nu)
    });
    let sup = values.iter().fold(0.0f64, |a, &b| a.max(b));
    let slope = fit::running_sup_loglog_slope(&radii, &values, 0.5);
    SlopeReport {
        check: check.to_string(),
        n,
        samples: sample_count,
        sup,
        slope,
        pass: slope <= SLOPE_PASS,
    }
}

/// Certifies `beta = O(beta_tilde)` empirically: samples on log-spaced
/// spheres up to `norm_max`, reports the sup of `beta/beta_tilde` and the
/// running-sup log-log slope (pass iff slope <= 0.02).
pub fn verify_plnchbnd(
    n: usize,
    form: QuadForm,
    sample_count: usize,
    norm_max: f64,
    seed: u64,
) -> Result<SlopeReport> {
    if n > 5 {
        return Err(Error::RankTooLarge(n, 5));
    }
    let density = PlancherelDensity::new(n, form)?;
    Ok(slope_experiment(
        "plnchbnd",
        n,
        sample_count,
        norm_max,
        seed,
        form,
        move |nu| {
            let lam = SpectralPoint::imaginary(nu).expect("traceless by construction");
            density.beta_im(nu) / density.beta_tilde1(&lam).expect("t = 1 valid")
        },
    ))
}

/// Certifies the derivative bound: `|D_xi beta| / (1+|lambda|)^{d-r-1}`
/// stays bounded along random directions.
pub fn verify_logderbnd(
    n: usize,
    form: QuadForm,
    sample_count: usize,
    norm_max: f64,
    seed: u64,
) -> Result<SlopeReport> {
    if n > 5 {
        return Err(Error::RankTooLarge(n, 5));
    }
    let density = PlancherelDensity::new(n, form)?;
    let (d, r) = rootsys::dims(n)?;
    let power = (d - r - 1) as f64;
    Ok(slope_experiment(
        "logderbnd",
        n,
        sample_count,
        norm_max,
        seed,
        form,
        move |nu| {
            let lam = SpectralPoint::imaginary(nu).expect("traceless by construction");
            let mut rng = par::stream_rng(0xD1F7, (nu[0].to_bits() >> 11) ^ nu[nu.len() - 1].to_bits());
            let xi = random_traceless_direction(&mut rng, n);
            let d_beta = density
                .directional_derivative_beta(&xi, &lam, 1e-4)
                .expect("valid step");
            d_beta.abs() / (1.0 + lam.norm(form)).powf(power)
        },
    ))
}

/// Certifies the Levi-descent estimate for one proper Levi `M`.
pub fn verify_scr(
    m: &LeviSubgroup,
    form: QuadForm,
    sample_count: usize,
    norm_max: f64,
    seed: u64,
) -> Result<SlopeReport> {
    let n = m.n();
    if n > 4 {
        return Err(Error::RankTooLarge(n, 4));
    }
    let density = PlancherelDensity::new(n, form)?;
    let m = m.clone();
    let mut report = slope_experiment(
        "scr",
        n,
        sample_count,
        norm_max,
        seed,
        form,
        move |nu| {
            let lam = SpectralPoint::imaginary(nu).expect("traceless by construction");
            density.scr_ratio(&m, &lam).expect("proper Levi")
        },
    );
    report.check = "scr".to_string();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::WeylElement;
    use approx::assert_relative_eq;
    use rand::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_r_reference_points() {
        assert_relative_eq!(gamma_r(c(1.0, 0.0)).unwrap().re, 1.0, max_relative = 1e-13);
        assert_relative_eq!(
            gamma_r(c(2.0, 0.0)).unwrap().re,
            1.0 / PI,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            gamma_r(c(4.0, 0.0)).unwrap().re,
            1.0 / (PI * PI),
            max_relative = 1e-13
        );
        assert!(gamma_r(c(0.0, 0.0)).is_err());
        assert!(gamma_r(c(-2.0, 0.0)).is_err());
    }

    #[test]
    fn phi_ratio_reference_points() {
        assert_relative_eq!(phi_ratio(c(1.0, 0.0)).re, 1.0 / PI, max_relative = 1e-13);
        assert_eq!(phi_ratio(c(0.0, 0.0)), c(0.0, 0.0));
        assert_eq!(phi_ratio(c(-4.0, 0.0)), c(0.0, 0.0));
        // phi(2) = Gamma_R(3)/Gamma_R(2) = pi^{-3/2}Gamma(3/2) * pi = pi^{-1/2} * (sqrt(pi)/2) * 1 = 1/2
        assert_relative_eq!(phi_ratio(c(2.0, 0.0)).re, 0.5, max_relative = 1e-13);
    }

    #[test]
    fn phi_modulus_matches_independent_oracle() {
        for k in 0..500 {
            let u = 0.01 + k as f64 * 0.1;
            let production = phi_ratio(c(0.0, 2.0 * u)).norm_sqr();
            let oracle = phi_modulus_sq_oracle(u);
            assert_relative_eq!(production, oracle, max_relative = 1e-11);
        }
    }

    #[test]
    fn beta_n2_matches_closed_form_on_fine_grid() {
        let density = PlancherelDensity::new(2, QuadForm::Killing).unwrap();
        let mut k = 0u64;
        while k <= 5000 {
            let u = k as f64 * 0.01;
            let lam = SpectralPoint::imaginary(&[u, -u]).unwrap();
            let b = density.beta(&lam).unwrap();
            let cf = beta_n2_closed_form(u);
            assert!(
                (b - cf).abs() <= 1e-10 * (1.0 + u * u),
                "u = {u}: beta = {b}, closed form = {cf}"
            );
            k += 1;
        }
    }

    #[test]
    fn beta_vanishes_at_origin_and_coincidence() {
        let density = PlancherelDensity::new(3, QuadForm::Killing).unwrap();
        assert_eq!(density.beta(&SpectralPoint::zero(3)).unwrap(), 0.0);
        let lam = SpectralPoint::imaginary(&[2.0, 2.0, -4.0]).unwrap();
        assert!(density.beta(&lam).unwrap().abs() < 1e-12);
    }

    #[test]
    fn beta_rejects_non_imaginary() {
        let density = PlancherelDensity::new(2, QuadForm::Killing).unwrap();
        let lam = SpectralPoint::real(&[1.0, -1.0]).unwrap();
        assert!(density.beta(&lam).is_err());
    }

    #[test]
    fn beta_weyl_invariant_and_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for n in 2..=4 {
            let density = PlancherelDensity::new(n, QuadForm::Killing).unwrap();
            let group = WeylElement::enumerate(n);
            for _ in 0..250 {
                let nu = {
                    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(-20.0..20.0)).collect();
                    crate::rootsys::CartanVector::project(raw).coords().to_vec()
                };
                let lam = SpectralPoint::imaginary(&nu).unwrap();
                let b = density.beta(&lam).unwrap();
                assert!(b >= 0.0);
                let w = group.choose(&mut rng).unwrap();
                let bw = density.beta(&lam.permute(w)).unwrap();
                assert!((b - bw).abs() <= 1e-12 * b.max(1.0), "n = {n}: {b} vs {bw}");
            }
        }
    }

    #[test]
    fn beta_tilde_examples() {
        let density = PlancherelDensity::new(2, QuadForm::Killing).unwrap();
        let lam = SpectralPoint::imaginary(&[3.0, -3.0]).unwrap();
        assert_relative_eq!(density.beta_tilde(1.0, &lam).unwrap(), 7.0, max_relative = 1e-14);
        assert!(density.beta_tilde(0.0, &lam).is_err());
        assert!(density.beta_tilde(-1.0, &lam).is_err());
        let d3 = PlancherelDensity::new(3, QuadForm::Killing).unwrap();
        let zero = SpectralPoint::zero(3);
        // t^{n(n-1)/2} at the origin
        assert_relative_eq!(d3.beta_tilde(2.0, &zero).unwrap(), 8.0, max_relative = 1e-14);
    }

    #[test]
    fn ratio_beta_over_tilde_bounded_n2() {
        // closed form: pi u tanh(pi u) / (1 + 2u) -> pi/2
        let density = PlancherelDensity::new(2, QuadForm::Killing).unwrap();
        let mut sup = 0.0f64;
        for k in 1..=4000 {
            let u = k as f64 * 0.25;
            let lam = SpectralPoint::imaginary(&[u, -u]).unwrap();
            let r = density.beta(&lam).unwrap() / density.beta_tilde1(&lam).unwrap();
            sup = sup.max(r);
        }
        assert!(sup <= PI / 2.0 + 1e-9, "sup = {sup}");
        assert!(sup > PI / 2.0 - 1e-2);
    }

    #[test]
    fn directional_derivative_matches_n2_closed_form() {
        let density = PlancherelDensity::new(2, QuadForm::Killing).unwrap();
        let xi = [1.0, -1.0];
        for &u in &[0.5, 2.0, 10.0] {
            let lam = SpectralPoint::imaginary(&[u, -u]).unwrap();
            let d = density.directional_derivative_beta(&xi, &lam, 1e-4).unwrap();
            let t = (PI * u).tanh();
            let exact = PI * t + PI * PI * u * (1.0 - t * t);
            assert_relative_eq!(d, exact, max_relative = 1e-6);
        }
        // zero at the origin by symmetry
        let zero = SpectralPoint::zero(2);
        assert!(density
            .directional_derivative_beta(&xi, &zero, 1e-4)
            .unwrap()
            .abs()
            < 1e-12);
        assert!(density
            .directional_derivative_beta(&xi, &zero, 1.0)
            .is_err());
    }

    #[test]
    fn scr_ratio_examples() {
        let density = PlancherelDensity::new(2, QuadForm::Killing).unwrap();
        let m0 = LeviSubgroup::minimal(2);
        assert_relative_eq!(
            density.scr_ratio(&m0, &SpectralPoint::zero(2)).unwrap(),
            1.0,
            max_relative = 1e-14
        );
        // n = 2, singleton Levi: numerator has no pairs, so the ratio is
        // (1 + |lambda|)/(1 + 2u); the configured norm gives |lambda| =
        // sqrt(2) u / sqrt(2n) = u/ sqrt(n) under Killing
        let u = 7.0;
        let lam = SpectralPoint::imaginary(&[u, -u]).unwrap();
        let kappa = (2.0f64 / QuadForm::Killing.scale(2)).sqrt();
        let expect = (1.0 + kappa * u) / (1.0 + 2.0 * u);
        assert_relative_eq!(density.scr_ratio(&m0, &lam).unwrap(), expect, max_relative = 1e-12);
        // full Levi rejected
        assert!(density
            .scr_ratio(&LeviSubgroup::full(2), &SpectralPoint::zero(2))
            .is_err());
    }

    #[test]
    fn verify_plnchbnd_small_ranks() {
        for n in 2..=3 {
            let rep = verify_plnchbnd(n, QuadForm::Killing, 4000, 1e3, 99).unwrap();
            assert!(rep.pass, "n = {n}: slope = {}", rep.slope);
            assert!(rep.sup.is_finite() && rep.sup > 0.0);
        }
        assert!(verify_plnchbnd(6, QuadForm::Killing, 100, 10.0, 1).is_err());
    }

    #[test]
    fn verify_logderbnd_small_ranks() {
        for n in 2..=3 {
            let rep = verify_logderbnd(n, QuadForm::Killing, 4000, 1e3, 7).unwrap();
            assert!(rep.pass, "n = {n}: slope = {}", rep.slope);
        }
    }

    #[test]
    fn verify_scr_all_proper_levis_n3() {
        for m in rootsys::enumerate_levis(3).unwrap() {
            if m.is_full() {
                continue;
            }
            let rep = verify_scr(&m, QuadForm::Killing, 3000, 1e3, 13).unwrap();
            assert!(rep.pass, "M = {:?}: slope = {}", m.blocks(), rep.slope);
        }
    }

    #[test]
    fn verify_report_is_deterministic() {
        let a = verify_plnchbnd(2, QuadForm::Killing, 500, 100.0, 5).unwrap();
        let b = verify_plnchbnd(2, QuadForm::Killing, 500, 100.0, 5).unwrap();
        assert_eq!(a.sup.to_bits(), b.sup.to_bits());
        assert_eq!(a.slope.to_bits(), b.slope.to_bits());
    }
}
