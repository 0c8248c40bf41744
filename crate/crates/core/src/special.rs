//! Complex special functions: log-gamma, digamma and the Hurwitz zeta
//! function with its `s`-derivative.
//!
//! Everything here is classical: Lanczos approximation with the reflection
//! formula for `lgamma`, argument-shifted asymptotic series for `psi`, and
//! Euler-Maclaurin summation for `zeta(s, a)`.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Lanczos coefficients (g = 7, n = 9).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Gamma(z)` with `exp(ln_gamma(z)) = Gamma(z)` everywhere off the
/// poles.
///
/// The real part (i.e. `ln |Gamma|`) is exact; in the reflected half plane
/// `Re z < 1/2` the imaginary part may differ from the principal branch by
/// a multiple of `2 pi`, which is irrelevant for ratios and exponentials.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let s = (PI * z).sin();
        if s.norm() == 0.0 {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        // ln(pi/sin(pi z)) with branch correction so the result is
        // continuous off the real axis
        let lg = Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma(Complex64::new(1.0, 0.0) - z);
        return lg;
    }
    let zm1 = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (zm1 + 0.5) * t.ln() - t + x.ln()
}

/// `ln sin(pi z)` with the branch chosen so that reflection yields a
/// log-gamma continuous in the upper and lower half planes.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / 2i; factor out the growing
    // exponential to stay finite for large |Im z|.
    let base = Complex64::new(-(2.0f64).ln(), -0.5 * PI);
    if z.im >= 0.0 {
        // sin(pi z) = e^{-i pi z}/(2i) * (e^{2 i pi z} - 1): the factored
        // exponential decays as Im z -> +inf
        let w = Complex64::new(0.0, 2.0 * PI) * z;
        base - Complex64::new(0.0, PI) * z + (w.exp() - 1.0).ln()
    } else {
        // sin(pi z) = e^{i pi z}/(2i) * (1 - e^{-2 i pi z})
        let w = Complex64::new(0.0, -2.0 * PI) * z;
        base + Complex64::new(0.0, PI) * z + (Complex64::new(1.0, 0.0) - w.exp()).ln()
    }
}

/// `Gamma(z)` via the Lanczos log-gamma.
pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// Digamma `psi(z)` for complex `z`, by shifting `Re z` above 10 and using
/// the asymptotic series.
pub fn digamma(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    if z.re < 0.5 {
        // psi(1 - z) - psi(z) = pi cot(pi z)
        let refl = PI / (PI * z).tan();
        return digamma(Complex64::new(1.0, 0.0) - z) - refl;
    }
    while z.re < 10.0 {
        shift -= 1.0 / z;
        z += 1.0;
    }
    // psi(z) ~ ln z - 1/(2z) - sum B_{2k} / (2k z^{2k})
    let inv2 = 1.0 / (z * z);
    let series = inv2
        * (Complex64::new(1.0 / 12.0, 0.0)
            - inv2
                * (Complex64::new(1.0 / 120.0, 0.0)
                    - inv2
                        * (Complex64::new(1.0 / 252.0, 0.0)
                            - inv2
                                * (Complex64::new(1.0 / 240.0, 0.0)
                                    - inv2 * Complex64::new(1.0 / 132.0, 0.0)))));
    shift + z.ln() - 0.5 / z - series
}

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Bernoulli numbers `B_2, B_4, ..., B_16`.
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Hurwitz zeta `zeta(s, a)` for `a > 0`, `s != 1`, by Euler-Maclaurin.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Complex64 {
    hurwitz_zeta_with_deriv(s, a).0
}

/// `(zeta(s, a), d/ds zeta(s, a))` by term-wise analytic differentiation of
/// the Euler-Maclaurin expansion.
pub fn hurwitz_zeta_with_deriv(s: Complex64, a: f64) -> (Complex64, Complex64) {
    assert!(a > 0.0, "hurwitz_zeta requires a > 0");
    let cutoff = (16.0 + 0.5 * s.im.abs()).ceil() as usize;
    let nf = |k: usize| a + k as f64;

    let mut sum = Complex64::new(0.0, 0.0);
    let mut dsum = Complex64::new(0.0, 0.0);
    for k in 0..cutoff {
        let x = nf(k);
        let lx = x.ln();
        let term = (-s * lx).exp();
        sum += term;
        dsum += -lx * term;
    }

    let x = nf(cutoff);
    let lx = x.ln();
    let xms = (-s * lx).exp(); // x^{-s}

    // integral tail x^{1-s}/(s-1)
    let sm1 = s - 1.0;
    sum += xms * x / sm1;
    dsum += xms * x * (-lx / sm1 - 1.0 / (sm1 * sm1));

    // half-term x^{-s}/2
    sum += 0.5 * xms;
    dsum += -0.5 * lx * xms;

    // Bernoulli corrections: B_{2j}/(2j)! * (s)_{2j-1} * x^{-s-2j+1}
    let mut fact = 1.0f64; // (2j)!
    for (j, &b2j) in BERNOULLI.iter().enumerate() {
        let j = j + 1;
        fact *= ((2 * j - 1) * (2 * j)) as f64;
        // rising factorial (s)(s+1)...(s+2j-2) and its s-derivative by the
        // product rule (safe at the zeros of the product)
        let mut poch = Complex64::new(1.0, 0.0);
        let mut dpoch = Complex64::new(0.0, 0.0);
        for m in 0..(2 * j - 1) {
            let f = s + m as f64;
            dpoch = dpoch * f + poch;
            poch *= f;
        }
        let xpow = (-(s + (2 * j - 1) as f64) * lx).exp(); // x^{-s-2j+1}
        let coeff = b2j / fact;
        sum += coeff * poch * xpow;
        dsum += coeff * xpow * (dpoch - lx * poch);
    }
    (sum, dsum)
}

/// Riemann zeta `zeta(s)` for `s != 1`.
pub fn riemann_zeta(s: Complex64) -> Complex64 {
    hurwitz_zeta(s, 1.0)
}

/// `(zeta(s), zeta'(s))`.
pub fn riemann_zeta_with_deriv(s: Complex64) -> (Complex64, Complex64) {
    hurwitz_zeta_with_deriv(s, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_small_integers_and_halves() {
        assert_relative_eq!(gamma(c(1.0, 0.0)).re, 1.0, max_relative = 1e-12);
        assert_relative_eq!(gamma(c(5.0, 0.0)).re, 24.0, max_relative = 1e-12);
        assert_relative_eq!(gamma(c(0.5, 0.0)).re, PI.sqrt(), max_relative = 1e-12);
        // Gamma(-1/2) = -2 sqrt(pi)
        assert_relative_eq!(gamma(c(-0.5, 0.0)).re, -2.0 * PI.sqrt(), max_relative = 1e-10);
    }

    #[test]
    fn gamma_functional_equation_complex() {
        for &z in &[c(0.3, 1.7), c(2.5, -4.0), c(-1.3, 0.8), c(0.1, 25.0)] {
            let lhs = gamma(z + 1.0);
            let rhs = z * gamma(z);
            assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1e-30));
        }
    }

    #[test]
    fn gamma_modulus_on_critical_lines() {
        // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
        for &y in &[0.1, 1.0, 3.0, 10.0] {
            let g = gamma(c(0.5, y)).norm_sqr();
            assert_relative_eq!(g, PI / (PI * y).cosh(), max_relative = 1e-10);
        }
        // |Gamma(iy)|^2 = pi / (y sinh(pi y))
        for &y in &[0.2, 1.5, 4.0] {
            let g = gamma(c(0.0, y)).norm_sqr();
            assert_relative_eq!(g, PI / (y * (PI * y).sinh()), max_relative = 1e-9);
        }
    }

    #[test]
    fn ln_gamma_large_imaginary_is_finite_and_consistent() {
        // Stirling check at large |Im z| where naive reflection overflows
        for &y in &[100.0, 500.0, 1000.0] {
            let z = c(0.5, y);
            let lg = ln_gamma(z);
            assert!(lg.re.is_finite() && lg.im.is_finite());
            // |Gamma(1/2+iy)| = sqrt(pi/cosh(pi y)); ln|.| ~ 0.5 ln(2 pi) - pi y / 2
            let expect = 0.5 * ((2.0 * PI).ln() - PI * y - (1.0 + (-2.0 * PI * y).exp()).ln());
            assert_relative_eq!(lg.re, expect, max_relative = 1e-10);
        }
    }

    #[test]
    fn digamma_reference_values() {
        // psi(1) = -gamma, psi(1/2) = -gamma - 2 ln 2
        assert_relative_eq!(digamma(c(1.0, 0.0)).re, -EULER_GAMMA, max_relative = 1e-12);
        assert_relative_eq!(
            digamma(c(0.5, 0.0)).re,
            -EULER_GAMMA - 2.0 * 2.0f64.ln(),
            max_relative = 1e-12
        );
        // psi(2) = 1 - gamma
        assert_relative_eq!(digamma(c(2.0, 0.0)).re, 1.0 - EULER_GAMMA, max_relative = 1e-12);
    }

    #[test]
    fn digamma_recurrence_and_conjugation() {
        for &z in &[c(0.5, 2.0), c(3.0, -7.0), c(0.2, 0.4), c(1.0, 300.0)] {
            let lhs = digamma(z + 1.0);
            let rhs = digamma(z) + 1.0 / z;
            assert!((lhs - rhs).norm() < 1e-11 * rhs.norm().max(1.0));
            let conj = digamma(z.conj());
            assert!((conj - digamma(z).conj()).norm() < 1e-11 * conj.norm().max(1.0));
        }
    }

    #[test]
    fn digamma_matches_gamma_log_derivative() {
        // central difference of ln_gamma along the real direction
        for &z in &[c(1.3, 0.7), c(4.0, -2.0), c(0.6, 5.0)] {
            let h = 1e-5;
            let num = (ln_gamma(z + h) - ln_gamma(z - h)) / (2.0 * h);
            assert!((num - digamma(z)).norm() < 1e-7);
        }
    }

    #[test]
    fn zeta_reference_values() {
        assert_relative_eq!(riemann_zeta(c(2.0, 0.0)).re, PI * PI / 6.0, max_relative = 1e-12);
        assert_relative_eq!(
            riemann_zeta(c(4.0, 0.0)).re,
            PI.powi(4) / 90.0,
            max_relative = 1e-12
        );
        // zeta(0) = -1/2, zeta(-1) = -1/12
        assert_relative_eq!(riemann_zeta(c(0.0, 0.0)).re, -0.5, max_relative = 1e-10);
        assert_relative_eq!(riemann_zeta(c(-1.0, 0.0)).re, -1.0 / 12.0, max_relative = 1e-9);
        // zeta'(0) = -ln(2 pi)/2
        let (_, dz) = riemann_zeta_with_deriv(c(0.0, 0.0));
        assert_relative_eq!(dz.re, -0.5 * (2.0 * PI).ln(), max_relative = 1e-9);
    }

    #[test]
    fn hurwitz_shift_identity() {
        // zeta(s, a) = a^{-s} + zeta(s, a + 1)
        for &s in &[c(1.5, 0.0), c(0.5, 10.0), c(2.0, -300.0), c(1.0, 5.0)] {
            for &a in &[0.25, 1.0 / 3.0, 0.9, 2.0] {
                let lhs = hurwitz_zeta(s, a);
                let rhs = (-s * a.ln()).exp() + hurwitz_zeta(s, a + 1.0);
                assert!(
                    (lhs - rhs).norm() < 1e-9 * lhs.norm().max(1.0),
                    "s = {s}, a = {a}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn hurwitz_multiplication_theorem() {
        // sum_{k=0}^{q-1} zeta(s, k/q + x/q)... specialize: zeta(s) =
        // q^{-s} sum_{a=1..q} zeta(s, a/q)
        let q = 3usize;
        for &s in &[c(2.0, 0.0), c(0.5, 7.0), c(1.5, -40.0)] {
            let mut sum = Complex64::new(0.0, 0.0);
            for a in 1..=q {
                sum += hurwitz_zeta(s, a as f64 / q as f64);
            }
            let lhs = (-s * (q as f64).ln()).exp() * sum;
            let rhs = riemann_zeta(s);
            assert!((lhs - rhs).norm() < 1e-9 * rhs.norm().max(1.0));
        }
    }

    #[test]
    fn hurwitz_derivative_matches_finite_difference() {
        for &s in &[c(2.0, 3.0), c(1.0, 50.0), c(0.5, -12.0)] {
            for &a in &[1.0 / 3.0, 0.8] {
                let h = 1e-6;
                let (_, d) = hurwitz_zeta_with_deriv(s, a);
                let num = (hurwitz_zeta(s + h, a) - hurwitz_zeta(s - h, a)) / (2.0 * h);
                assert!((d - num).norm() < 1e-5 * d.norm().max(1.0), "s = {s}, a = {a}");
            }
        }
    }

    #[test]
    fn zeta_high_imaginary_matches_conjugate_symmetry() {
        for &t in &[100.0, 500.0, 900.0] {
            let s = c(1.0, t);
            let z = riemann_zeta(s);
            let zc = riemann_zeta(s.conj());
            assert!((z.conj() - zc).norm() < 1e-9 * z.norm().max(1.0));
            assert!(z.norm().is_finite());
        }
    }
}
