use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

/// Gauss-Legendre nodes and weights on [-1, 1].
pub(crate) fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for k in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * k + 1) as f64 * z * p1 - k as f64 * p2) / (k + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Probability that a standard `d`-dimensional Gaussian lies in the unit ball,
/// by radial quadrature of the chi density.
pub fn unit_ball_gaussian_mass(d: usize) -> f64 {
    let (x, w) = gauss_legendre(48);
    let integral: f64 = x
        .iter()
        .zip(&w)
        .map(|(&t, &wt)| {
            let r = 0.5 * (t + 1.0);
            0.5 * wt * r.powi(d as i32 - 1) * (-0.5 * r * r).exp()
        })
        .sum();
    2.0 * integral / (2f64.powf(d as f64 / 2.0) * gamma(d as f64 / 2.0))
}

/// `eta` such that `eta * exp(-|w|^2 / 2 eps^2)` has unit mass on
/// `{|Re| < eps, |Im| < eps}` in `C^d = R^{2d}`.
pub fn mollifier_normalizer(d: usize, epsilon: f64) -> f64 {
    let one_ball = epsilon.powi(d as i32) * (2.0 * std::f64::consts::PI).powf(d as f64 / 2.0) * unit_ball_gaussian_mass(d);
    one_ball.powi(-2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MollifierSpec {
    pub d: usize,
    pub epsilon: f64,
    pub eta: f64,
}

impl MollifierSpec {
    pub fn new(d: usize, epsilon: f64) -> Self {
        Self {
            d,
            epsilon,
            eta: mollifier_normalizer(d, epsilon),
        }
    }

    /// Mollifier value at `psi = (Re phi_1, Im phi_1, ...)`; zero outside the truncation set.
    pub fn eval(&self, psi: &[f64]) -> f64 {
        let (re2, im2) = split_norms(psi);
        let e2 = self.epsilon * self.epsilon;
        if re2 < e2 && im2 < e2 {
            self.eta * (-(re2 + im2) / (2.0 * e2)).exp()
        } else {
            0.0
        }
    }
}

/// Squared norms of the real and imaginary parts of an interleaved vector.
pub(crate) fn split_norms(psi: &[f64]) -> (f64, f64) {
    let mut re2 = 0.0;
    let mut im2 = 0.0;
    for c in psi.chunks(2) {
        re2 += c[0] * c[0];
        im2 += c[1] * c[1];
    }
    (re2, im2)
}
