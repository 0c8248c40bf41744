//! Internal quadrature and interpolation helpers: adaptive Simpson
//! integration, trapezoid rules, and natural cubic splines with exact
//! antiderivatives.

/// Adaptive Simpson with absolute tolerance; depth-limited so stray
/// singularities fail loudly instead of hanging.
pub fn simpson_adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Trapezoid rule for a smooth periodic integrand over one full period
/// (spectrally accurate in that case).
pub fn periodic_trapezoid<F: Fn(f64) -> f64>(f: &F, period: f64, n: usize) -> f64 {
    let h = period / n as f64;
    (0..n).map(|k| f(k as f64 * h)).sum::<f64>() * h
}

/// Composite Simpson over a uniform grid of values (`values.len()` odd).
pub fn simpson_uniform(values: &[f64], h: f64) -> f64 {
    assert!(values.len() >= 3 && values.len() % 2 == 1);
    let mut s = values[0] + values[values.len() - 1];
    for (i, &v) in values.iter().enumerate().skip(1).take(values.len() - 2) {
        s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    s * h / 3.0
}

/// Natural cubic spline on a strictly increasing grid, with an exact
/// antiderivative. Evaluation clamps to the end values outside the grid.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// second derivatives at the knots
    m: Vec<f64>,
    /// cumulative integral from x[0] to each knot
    cum: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> CubicSpline {
        let n = x.len();
        assert!(n >= 3 && y.len() == n);
        assert!(x.windows(2).all(|w| w[1] > w[0]));
        // tridiagonal system for natural boundary second derivatives
        let mut sub = vec![0.0; n];
        let mut diag = vec![1.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        for i in 1..n - 1 {
            let h0 = x[i] - x[i - 1];
            let h1 = x[i + 1] - x[i];
            sub[i] = h0 / 6.0;
            diag[i] = (h0 + h1) / 3.0;
            sup[i] = h1 / 6.0;
            rhs[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
        }
        // Thomas algorithm
        for i in 1..n {
            let w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
        }
        // cumulative exact segment integrals
        let mut cum = vec![0.0; n];
        for i in 0..n - 1 {
            let h = x[i + 1] - x[i];
            cum[i + 1] = cum[i]
                + h * 0.5 * (y[i] + y[i + 1])
                - h * h * h / 24.0 * (m[i] + m[i + 1]);
        }
        CubicSpline { x, y, m, cum }
    }

    fn segment(&self, t: f64) -> usize {
        match self
            .x
            .binary_search_by(|v| v.partial_cmp(&t).expect("non-NaN grid"))
        {
            Ok(i) => i.min(self.x.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.x.len() - 2),
        }
    }

    /// Spline value at `t` (clamped outside the grid).
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        if t <= self.x[0] {
            return self.y[0];
        }
        if t >= self.x[n - 1] {
            return self.y[n - 1];
        }
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }

    /// Exact integral of the spline from `x[0]` to `t` (clamped).
    pub fn integral_to(&self, t: f64) -> f64 {
        let n = self.x.len();
        if t <= self.x[0] {
            return 0.0;
        }
        if t >= self.x[n - 1] {
            return self.cum[n - 1];
        }
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        // integral over [x_i, t] of the Hermite form
        let part = h
            * (0.5 * (1.0 - a * a) * self.y[i] + 0.5 * b * b * self.y[i + 1]
                + (-a * a * a * a / 4.0 + a * a / 2.0 - 0.25) * self.m[i] * h * h / 6.0
                + (b * b * b * b / 4.0 - b * b / 2.0) * self.m[i + 1] * h * h / 6.0);
        self.cum[i] + part
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], *self.x.last().unwrap())
    }
}
