use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{dedup_radius, residual_tolerance, RootSet};
use crate::numeric::{norm2, solve_complex};
use crate::polysys::PolySystem;
use crate::qmc::RSequence;

const BATCH: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NewtonConfig {
    pub seed: u64,
    /// Upper limit on the number of starting points when a target count is given.
    pub max_starts: usize,
    /// Number of starts used when no target count is known.
    pub untargeted_starts: usize,
    pub max_iter: usize,
    /// Starts per round of root-bound exploration.
    pub exploration_starts: usize,
    pub exploration_rounds: usize,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_starts: 1 << 17,
            untargeted_starts: 4096,
            max_iter: 100,
            exploration_starts: 512,
            exploration_rounds: 6,
        }
    }
}

impl NewtonConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// Start `n` of the sequence, mapped into the polydisk of radius `radius`.
fn start_point(seq: &RSequence, n: u64, radius: f64, buf: &mut [f64]) -> Vec<Complex64> {
    seq.point(n, buf);
    buf.chunks(2)
        .map(|uv| Complex64::from_polar(radius * uv[0].sqrt(), std::f64::consts::TAU * uv[1]))
        .collect()
}

/// Damped Newton from `z`. The end point is kept only if the iteration converged (a full-size
/// step below `1e-9 (1 + ||z||)`) and it passes the residual test; points drifting to
/// infinity have small scaled residuals but never converge.
pub(crate) fn newton_polish(s: &PolySystem, mut z: Vec<Complex64>, max_iter: usize) -> Option<Vec<Complex64>> {
    let degree = s.max_degree();
    let mut f = s.evaluate(&z);
    let mut fnorm = norm2(&f);
    let mut converged_at: Option<usize> = None;
    for it in 0..max_iter {
        let zn = norm2(&z);
        if !zn.is_finite() || zn > 1e8 {
            return None;
        }
        let Some(delta) = solve_complex(&s.jacobian(&z), &f) else {
            break;
        };
        let dn = norm2(&delta);
        let mut t = 1.0;
        loop {
            let cand: Vec<Complex64> = z.iter().zip(&delta).map(|(a, b)| a - b * t).collect();
            let fc = s.evaluate(&cand);
            let fcn = norm2(&fc);
            if fcn < fnorm || t < 1.0 / 1024.0 || fnorm == 0.0 {
                z = cand;
                f = fc;
                fnorm = fcn;
                break;
            }
            t *= 0.5;
        }
        let scale = 1.0 + norm2(&z);
        if t == 1.0 && dn <= 1e-9 * scale && converged_at.is_none() {
            converged_at = Some(it);
        }
        if dn * t <= 1e-14 * scale || converged_at.is_some_and(|c| it >= c + 3) {
            break;
        }
    }
    let zn = norm2(&z);
    (converged_at.is_some() && zn.is_finite() && fnorm <= residual_tolerance(zn, degree)).then_some(z)
}

fn merge(found: &mut Vec<Vec<Complex64>>, z: Vec<Complex64>) -> bool {
    let rho = dedup_radius(norm2(&z));
    let dup = found.iter().any(|w| {
        let d: f64 = w.iter().zip(&z).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        d <= rho
    });
    if !dup {
        found.push(z);
    }
    !dup
}

/// Multistart damped Newton from quasi-random points in the polydisk of radius `radius`.
/// With a target count the search stops once that many distinct zeros are found or the
/// start budget runs out; without one it uses a fixed number of starts.
pub fn multistart_newton(s: &PolySystem, target: Option<usize>, radius: f64, cfg: &NewtonConfig) -> RootSet {
    let found = search(s, target, radius, cfg, cfg.seed, match target {
        Some(_) => cfg.max_starts,
        None => cfg.untargeted_starts,
    });
    RootSet::from_roots(s, found, target)
}

pub(crate) fn search(
    s: &PolySystem,
    target: Option<usize>,
    radius: f64,
    cfg: &NewtonConfig,
    seed: u64,
    budget: usize,
) -> Vec<Vec<Complex64>> {
    let d = s.dim();
    let seq = RSequence::seeded(2 * d, seed);
    let mut found: Vec<Vec<Complex64>> = Vec::new();
    if target == Some(0) {
        return found;
    }
    let mut next = 0usize;
    while next < budget {
        let end = (next + BATCH).min(budget);
        let batch: Vec<Option<Vec<Complex64>>> = (next..end)
            .into_par_iter()
            .map(|n| {
                let mut buf = vec![0.0; 2 * d];
                let z0 = start_point(&seq, n as u64, radius, &mut buf);
                newton_polish(s, z0, cfg.max_iter)
            })
            .collect();
        for z in batch.into_iter().flatten() {
            merge(&mut found, z);
        }
        next = end;
        if target.is_some_and(|t| found.len() >= t) {
            break;
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::parse_system;

    #[test]
    fn coupled_quadratics() {
        // z1^2 + z2^2 = 5, z1 z2 = 2: (+-1, +-2), (+-2, +-1) with matching signs.
        let s = parse_system(2, &["z1^2 + z2^2 - 5", "z1*z2 - 2"]).unwrap();
        let r = multistart_newton(&s, Some(4), 4.0, &NewtonConfig::default());
        assert!(r.complete);
        let mut pairs: Vec<(i64, i64)> = r
            .roots
            .iter()
            .map(|z| (z[0].re.round() as i64, z[1].re.round() as i64))
            .collect();
        pairs.sort();
        assert_eq!(pairs, vec![(-2, -1), (-1, -2), (1, 2), (2, 1)]);
    }

    #[test]
    fn deterministic() {
        let s = parse_system(2, &["z1^3 - z2 + 1", "z2^2 - z1*z2 - 3"]).unwrap();
        let a = multistart_newton(&s, None, 3.0, &NewtonConfig::default());
        let b = multistart_newton(&s, None, 3.0, &NewtonConfig::default());
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
    }
}
