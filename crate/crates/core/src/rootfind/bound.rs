use serde::{Deserialize, Serialize};

use super::newton::{search, NewtonConfig};
use crate::numeric::norm2;
use crate::polysys::PolySystem;

/// Radius enclosing the zeros. `heuristic` is set when the radius comes from exploration
/// rather than a proven bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootBound {
    pub radius: f64,
    pub heuristic: bool,
}

fn cauchy(coeffs: &[num_complex::Complex64]) -> f64 {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    1.0 + coeffs[..n].iter().map(|c| c.norm() / lead).fold(0.0, f64::max)
}

pub fn root_bound(s: &PolySystem, cfg: &NewtonConfig) -> RootBound {
    if s.is_decoupled() {
        let r2: f64 = s
            .polys()
            .iter()
            .enumerate()
            .map(|(j, p)| {
                let c = p.univariate_coeffs(j);
                let c = &c[..c.iter().rposition(|x| *x != num_complex::Complex64::new(0.0, 0.0)).map_or(0, |k| k + 1)];
                if c.len() <= 1 {
                    0.0
                } else {
                    cauchy(c).powi(2)
                }
            })
            .sum();
        return RootBound {
            radius: r2.sqrt(),
            heuristic: false,
        };
    }
    // Cauchy-style seed from the ratio of lower-order to top-degree coefficient mass.
    let mut radius: f64 = 1.0;
    for p in s.polys() {
        let top = p.total_degree();
        let mut lower = 0.0;
        let mut min_top = f64::INFINITY;
        for (e, c) in p.terms() {
            let a = c.to_complex().norm();
            if e.iter().sum::<u32>() == top {
                min_top = min_top.min(a);
            } else {
                lower += a;
            }
        }
        if min_top > 0.0 && min_top.is_finite() {
            radius = radius.max(1.0 + lower / min_top);
        }
    }
    for round in 0..cfg.exploration_rounds {
        let found = search(
            s,
            None,
            2.0 * radius,
            cfg,
            cfg.seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(round as u64 + 1)),
            cfg.exploration_starts,
        );
        let far = found.iter().map(|z| norm2(z)).fold(0.0, f64::max);
        if 1.25 * far <= radius {
            break;
        }
        radius = 1.25 * far;
    }
    RootBound {
        radius,
        heuristic: true,
    }
}
