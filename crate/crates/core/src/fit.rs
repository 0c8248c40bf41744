//! Least-squares fitting helpers used by the asymptotic-slope experiments.

/// Ordinary least squares `y = slope * x + intercept`.
pub fn linreg(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert!(xs.len() == ys.len() && xs.len() >= 2);
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Slope of `log y` against `log x` (both inputs must be positive).
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|&x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|&y| y.ln()).collect();
    linreg(&lx, &ly).0
}

/// Log-log slope of the running supremum of `ys` along increasing `xs`,
/// fitted over the trailing `tail_frac` of the points.
///
/// A bounded quantity has running-sup slope tending to zero, so a small
/// slope certifies an `O(1)` bound empirically; growth like `x^eps` shows
/// up directly as a slope near `eps`.
pub fn running_sup_loglog_slope(xs: &[f64], ys: &[f64], tail_frac: f64) -> f64 {
    assert!(xs.len() == ys.len() && xs.len() >= 4);
    assert!(xs.windows(2).all(|w| w[1] > w[0]), "xs must be increasing");
    let mut sup = f64::NEG_INFINITY;
    let run: Vec<f64> = ys
        .iter()
        .map(|&y| {
            sup = sup.max(y);
            sup
        })
        .collect();
    let start = ((xs.len() as f64) * (1.0 - tail_frac)).floor() as usize;
    let start = start.min(xs.len() - 2);
    loglog_slope(&xs[start..], &run[start..])
}
