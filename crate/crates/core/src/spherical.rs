//! Iwasawa projection, Harish-Chandra spherical functions by quadrature
//! over `SO(n)`, and the Kostant convexity check.
//!
//! The group element is factored as (upper triangular with positive
//! diagonal) * (orthogonal), so `H(g)` is the log-diagonal of the
//! triangular factor; the independent oracle for this is the trailing
//! principal minor sequence of `g g^T`, which telescopes to products of
//! squared diagonal entries under this triangularity convention.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

use crate::par;
use crate::quad;
use crate::rootsys::{self, CartanVector, SpectralPoint};
use crate::{Error, Result};

/// Representative of a point of `A_G \ G(R)`: an `n x n` real matrix with
/// `|det| = 1`.
#[derive(Debug, Clone)]
pub struct GroupPoint {
    mat: DMatrix<f64>,
}

impl GroupPoint {
    pub fn new(mat: DMatrix<f64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::Domain("group point must be square".into()));
        }
        let det = mat.determinant();
        if (det.abs() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "group point must have |det| = 1, got det = {det}"
            )));
        }
        Ok(GroupPoint { mat })
    }

    /// Scales an invertible matrix onto the `|det| = 1` slice.
    pub fn normalized(mat: DMatrix<f64>) -> Result<Self> {
        let det = mat.determinant();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Domain("singular matrix".into()));
        }
        let n = mat.nrows();
        let s = det.abs().powf(-1.0 / n as f64);
        GroupPoint::new(mat * s)
    }

    pub fn identity(n: usize) -> Self {
        GroupPoint {
            mat: DMatrix::identity(n, n),
        }
    }

    /// `exp(X)` for a Cartan vector `X` (diagonal group element).
    pub fn from_cartan(x: &CartanVector) -> Self {
        let n = x.n();
        GroupPoint {
            mat: DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                n,
                x.coords().iter().map(|&c| c.exp()),
            )),
        }
    }

    pub fn n(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }
}

/// Quadrature configuration for the `SO(n)` integrals.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadratureSpec {
    pub sample_count: usize,
    pub seed: u64,
}

impl QuadratureSpec {
    pub fn new(sample_count: usize, seed: u64) -> Result<Self> {
        if sample_count < 100 {
            return Err(Error::Domain(format!(
                "sample_count must be at least 100, got {sample_count}"
            )));
        }
        Ok(QuadratureSpec { sample_count, seed })
    }
}

/// Iwasawa projection `H(g)`: the log-diagonal of the positive triangular
/// factor in `g = (a n) k`, projected exactly onto trace zero.
pub fn iwasawa_h(g: &GroupPoint) -> CartanVector {
    let n = g.n();
    let m = &g.mat * g.mat.transpose();
    // flip-Cholesky: reverse rows/columns, take the lower Cholesky factor,
    // reverse back; this yields the upper triangular u with u u^T = m and
    // positive diagonal
    let mut flipped = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            flipped[(i, j)] = m[(n - 1 - i, n - 1 - j)];
        }
    }
    let chol = flipped
        .cholesky()
        .expect("g g^T is positive definite for invertible g");
    let l = chol.l();
    let coords: Vec<f64> = (0..n).map(|i| l[(n - 1 - i, n - 1 - i)].ln()).collect();
    CartanVector::project(coords)
}

/// Independent oracle for `H(g)`: trailing principal minors of `g g^T`.
///
/// With the triangular factor upper triangular, the trailing `(n-k) x
/// (n-k)` minor of `g g^T` equals the product of the squared diagonal
/// entries `d_k^2 ... d_{n-1}^2`, so consecutive minor ratios recover each
/// `d_k`.
pub fn iwasawa_h_minor_oracle(g: &GroupPoint) -> CartanVector {
    let n = g.n();
    let m = &g.mat * g.mat.transpose();
    let mut minors = vec![1.0; n + 1]; // minors[k] = det of trailing k x k block
    for k in 1..=n {
        let block = m.view((n - k, n - k), (k, k)).into_owned();
        minors[k] = block.determinant();
    }
    let coords: Vec<f64> = (0..n)
        .map(|i| 0.5 * (minors[n - i] / minors[n - i - 1]).ln())
        .collect();
    CartanVector::project(coords)
}

/// Haar-distributed `SO(n)` sample: orthogonal factor of a Gaussian
/// matrix with the positive-diagonal sign correction, then a final column
/// flip onto determinant `+1`.
pub fn haar_so_n(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let gauss = DMatrix::from_fn(n, n, |_, _| {
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
    });
    let qr = gauss.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    if q.determinant() < 0.0 {
        for i in 0..n {
            q[(i, n - 1)] = -q[(i, n - 1)];
        }
    }
    q
}

/// Monte Carlo value with a standard-error estimate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct McEstimate {
    pub value_re: f64,
    pub value_im: f64,
    pub stderr: f64,
    pub samples: usize,
}

impl McEstimate {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.value_re, self.value_im)
    }
}

/// Harish-Chandra spherical function `phi_lambda(g)`: Monte Carlo average
/// of `exp(<lambda + rho, H(k g)>)` over Haar samples `k`.
pub fn spherical_phi(
    lambda: &SpectralPoint,
    g: &GroupPoint,
    spec: &QuadratureSpec,
) -> Result<McEstimate> {
    let n = g.n();
    if lambda.n() != n {
        return Err(Error::Domain("rank mismatch".into()));
    }
    let rho = rootsys::rho(n)?;
    let shifted: Vec<Complex64> = lambda
        .coords()
        .iter()
        .zip(rho.coords())
        .map(|(l, r)| l + r)
        .collect();
    let samples = par::map_collect(spec.sample_count, |idx| {
        let mut rng = par::stream_rng(spec.seed, idx as u64);
        let k = haar_so_n(n, &mut rng);
        let kg = GroupPoint {
            mat: k * &g.mat,
        };
        let h = iwasawa_h(&kg);
        let mut expo = Complex64::new(0.0, 0.0);
        for (s, x) in shifted.iter().zip(h.coords()) {
            expo += s * x;
        }
        expo.exp()
    });
    Ok(reduce_mc(&samples))
}

fn reduce_mc(samples: &[Complex64]) -> McEstimate {
    let n = samples.len();
    let mean = samples.iter().sum::<Complex64>() / n as f64;
    let var = samples
        .iter()
        .map(|s| (s - mean).norm_sqr())
        .sum::<f64>()
        / (n as f64 - 1.0);
    McEstimate {
        value_re: mean.re,
        value_im: mean.im,
        stderr: (var / n as f64).sqrt(),
        samples: n,
    }
}

/// Deterministic one-angle oracle for `n = 2`: `phi_lambda(diag(e^s,
/// e^{-s}))` by trapezoid quadrature over the circle.
pub fn spherical_phi_n2_oracle(u: f64, s: f64) -> Complex64 {
    let f_re = |theta: f64| integrand_n2(u, s, theta).re;
    let f_im = |theta: f64| integrand_n2(u, s, theta).im;
    let nodes = 4096;
    Complex64::new(
        quad::periodic_trapezoid(&f_re, 2.0 * PI, nodes),
        quad::periodic_trapezoid(&f_im, 2.0 * PI, nodes),
    ) / (2.0 * PI)
}

fn integrand_n2(u: f64, s: f64, theta: f64) -> Complex64 {
    // trailing minor of (k_theta a_s)(k_theta a_s)^T is
    // sin^2(theta) e^{2s} + cos^2(theta) e^{-2s}
    let m22 = theta.sin().powi(2) * (2.0 * s).exp() + theta.cos().powi(2) * (-2.0 * s).exp();
    // <lambda + rho, H> = -(2iu + 1) * ln(m22) / 2 for lambda = (iu, -iu)
    (Complex64::new(-0.5, -u) * m22.ln()).exp()
}

/// Report of the convexity experiment: diagonals of `Ad(k)^{-1} xi` must
/// lie in the convex hull of the Weyl orbit of `xi` (a majorization test).
#[derive(Debug, Clone, Serialize)]
pub struct KostantReport {
    pub check: String,
    pub n: usize,
    pub samples: usize,
    pub max_violation: f64,
    pub pass: bool,
}

/// Runs the convexity check on `spec.sample_count` Haar rotations.
pub fn kostant_check(xi: &CartanVector, spec: &QuadratureSpec) -> Result<KostantReport> {
    let n = xi.n();
    let norm: f64 = xi.coords().iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::Domain("kostant_check requires nonzero xi".into()));
    }
    let violations = par::map_collect(spec.sample_count, |idx| {
        let mut rng = par::stream_rng(spec.seed, idx as u64);
        let k = haar_so_n(n, &mut rng);
        let diag = conjugated_diagonal(xi, &k);
        majorization_violation(&diag, xi.coords())
    });
    let max_violation = violations.into_iter().fold(0.0f64, f64::max);
    Ok(KostantReport {
        check: "kostant".to_string(),
        n,
        samples: spec.sample_count,
        max_violation,
        pass: max_violation <= 1e-9,
    })
}

/// Diagonal part of `k^T diag(xi) k`.
pub fn conjugated_diagonal(xi: &CartanVector, k: &DMatrix<f64>) -> Vec<f64> {
    let n = xi.n();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|i| xi.coords()[i] * k[(i, j)] * k[(i, j)])
                .sum()
        })
        .collect()
}

/// How far `d` sits outside the permutohedron of `xi`: the worst positive
/// excess among the majorization half-spaces (0 when inside).
pub fn majorization_violation(d: &[f64], xi: &[f64]) -> f64 {
    let mut ds = d.to_vec();
    let mut xs = xi.to_vec();
    ds.sort_by(|a, b| b.partial_cmp(a).unwrap());
    xs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut worst = (d.iter().sum::<f64>() - xi.iter().sum::<f64>()).abs();
    let mut pd = 0.0;
    let mut px = 0.0;
    for i in 0..d.len() - 1 {
        pd += ds[i];
        px += xs[i];
        worst = worst.max(pd - px);
    }
    worst
}
