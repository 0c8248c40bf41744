//! Quadratic-form configuration on the Cartan subspace.
//!
//! Everything metric (norms on `a`, dual norms on `a*`, Lebesgue
//! normalizations on both) derives from this single choice so that
//! constant-level results stay internally consistent.

use serde::{Deserialize, Serialize};

/// Inner product on the trace-zero diagonal Cartan subspace of `gl(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum QuadForm {
    /// Killing form of `sl(n)`: `<X,Y> = 2n * sum x_i y_i` on diagonal
    /// trace-zero vectors.
    #[default]
    Killing,
    /// Plain trace form `<X,Y> = sum x_i y_i`.
    Trace,
}

impl QuadForm {
    /// Scaling constant `s` with `<X,Y> = s * sum x_i y_i`.
    pub fn scale(self, n: usize) -> f64 {
        match self {
            QuadForm::Killing => 2.0 * n as f64,
            QuadForm::Trace => 1.0,
        }
    }

    /// Inner product of two coordinate vectors in `a`.
    pub fn inner_a(self, n: usize, x: &[f64], y: &[f64]) -> f64 {
        self.scale(n) * dot(x, y)
    }

    /// Norm in `a`.
    pub fn norm_a(self, n: usize, x: &[f64]) -> f64 {
        self.inner_a(n, x, x).max(0.0).sqrt()
    }

    /// Dual inner product on `a*` induced by the form: coordinates of
    /// functionals pair with weight `1/s`.
    pub fn inner_dual(self, n: usize, l: &[f64], m: &[f64]) -> f64 {
        dot(l, m) / self.scale(n)
    }

    /// Dual norm on `a*`.
    pub fn norm_dual(self, n: usize, l: &[f64]) -> f64 {
        self.inner_dual(n, l, l).max(0.0).sqrt()
    }

    pub fn parse(s: &str) -> Option<QuadForm> {
        match s {
            "killing" => Some(QuadForm::Killing),
            "trace" => Some(QuadForm::Trace),
            _ => None,
        }
    }
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}
