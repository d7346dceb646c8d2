//! Coefficient perturbations that keep the zero count, and rationalization of
//! floating-point coefficients.

mod rationalize;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::degree::degree_via_mv;
use crate::error::{Error, Result};
use crate::exactgeom::LatticeSupport;
use crate::numeric::norm2;
use crate::polysys::{GaussianRational, PolySystem, SparsePoly};
use crate::qmc::{mix_seed, RSequence};
use crate::rootfind::{
    certify_regular, locate_roots, root_bound, NewtonConfig, RegularityCertificate, RootSet,
    DEFAULT_REGULARITY_TOLERANCE,
};

pub use rationalize::{rationalize, rationalize_complex};

/// Default number of sphere samples for the boundary minimum.
pub const DEFAULT_SPHERE_SAMPLES: usize = 100_000;
pub const MAX_RETRIES: usize = 10;

/// A coefficient radius under which every perturbation keeps the zero count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationPlan {
    pub epsilon: f64,
    pub root_bound: f64,
    /// Sampled minimum of `||phi||` on the sphere `||z|| = 2 R_b`.
    pub delta0: f64,
    pub max_degree: u32,
    pub dim: usize,
    /// Number of monomials of total degree at most `D` in `d` variables.
    pub monomial_count: f64,
    pub sphere_samples: usize,
}

impl PerturbationPlan {
    /// Bound on `||phi_b - phi||` over the sphere when every coefficient moves by at most `eps`.
    pub fn perturbation_bound(&self, eps: f64) -> f64 {
        self.monomial_count * eps * self.dim as f64 * (2.0 * self.root_bound).max(1.0).powi(self.max_degree as i32)
    }

    pub fn admits(&self, eps: f64) -> bool {
        eps >= 0.0 && self.perturbation_bound(eps) < self.delta0
    }

    pub fn is_valid(&self) -> bool {
        self.admits(self.epsilon)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanOptions {
    pub sphere_samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub newton: NewtonConfig,
}

impl Default for PlanOptions {
    fn default() -> Self {
        Self {
            sphere_samples: DEFAULT_SPHERE_SAMPLES,
            seed: 0,
            tolerance: DEFAULT_REGULARITY_TOLERANCE,
            newton: NewtonConfig::default(),
        }
    }
}

impl PlanOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            newton: NewtonConfig::with_seed(seed),
            ..Self::default()
        }
    }
}

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Plan from the zeros of `s`: `R_b` is the largest zero norm (at least 1), `delta0`
/// the sampled sphere minimum, and `epsilon` half the largest admissible radius.
/// Refuses when 0 is not certified regular at the located zeros.
pub fn rouche_radius(s: &PolySystem, opts: &PlanOptions) -> Result<PerturbationPlan> {
    let roots = locate_roots(s, degree_via_mv(s).ok().map(|v| v as usize), &opts.newton);
    plan_from_roots(s, &roots, opts)
}

pub(crate) fn plan_from_roots(s: &PolySystem, roots: &RootSet, opts: &PlanOptions) -> Result<PerturbationPlan> {
    let cert = certify_regular(s, roots, opts.tolerance);
    if !cert.is_regular() {
        return Err(Error::SuspectRegularity {
            min_abs_jac_det: cert.min_abs_jac_det.unwrap_or(0.0),
            tolerance: opts.tolerance,
        });
    }
    let rb = if roots.is_empty() {
        root_bound(s, &opts.newton).radius
    } else {
        roots.max_norm()
    };
    rouche_radius_with_bound(s, rb.max(1.0), opts)
}

/// Plan for a caller-supplied root bound.
pub fn rouche_radius_with_bound(s: &PolySystem, root_bound: f64, opts: &PlanOptions) -> Result<PerturbationPlan> {
    let d = s.dim();
    let radius = 2.0 * root_bound;
    let seq = RSequence::seeded(2 * d, opts.seed);
    let mut u = vec![0.0; 2 * d];
    let mut delta0 = f64::INFINITY;
    for n in 0..opts.sphere_samples.max(1) {
        seq.point(n as u64, &mut u);
        // Box-Muller pairs give an isotropic direction in R^{2d}.
        let mut z: Vec<Complex64> = u
            .chunks(2)
            .map(|p| {
                let r = (-2.0 * (1.0 - p[0]).ln()).sqrt();
                Complex64::from_polar(r, std::f64::consts::TAU * p[1])
            })
            .collect();
        let nz = norm2(&z);
        if !(nz > 0.0) {
            continue;
        }
        for c in &mut z {
            *c *= radius / nz;
        }
        delta0 = delta0.min(norm2(&s.evaluate(&z)));
    }
    if !(delta0 > 0.0) || !delta0.is_finite() {
        return Err(Error::DegenerateBoundary(delta0));
    }
    let max_degree = s.max_degree();
    let mut plan = PerturbationPlan {
        epsilon: 0.0,
        root_bound,
        delta0,
        max_degree,
        dim: d,
        monomial_count: binomial(max_degree as u64 + d as u64, d as u64),
        sphere_samples: opts.sphere_samples,
    };
    plan.epsilon = 0.5 * delta0 / plan.perturbation_bound(1.0);
    Ok(plan)
}

fn disk_draw(rng: &mut ChaCha8Rng, eps: f64) -> Complex64 {
    let r = eps * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, std::f64::consts::TAU * rng.random::<f64>())
}

/// Shifts every coefficient by an independent uniform draw from the disk of radius `epsilon`
/// and rationalizes the result. Supports are kept: a draw that cancels a coefficient is redrawn.
pub fn perturb_with_epsilon(s: &PolySystem, epsilon: f64, seed: u64) -> Result<PolySystem> {
    if !(epsilon >= 0.0) {
        return Err(Error::InvalidPlan { epsilon });
    }
    if epsilon == 0.0 {
        return Ok(s.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = epsilon * 1e-3;
    s.map_polys(|_, p| {
        p.map_coefficients(|_, c| loop {
            let g = rationalize_complex(c.to_complex() + disk_draw(&mut rng, epsilon), tol);
            if !g.is_zero() {
                break g;
            }
        })
    })
}

pub fn perturb_system(s: &PolySystem, plan: &PerturbationPlan, seed: u64) -> Result<PolySystem> {
    if !plan.is_valid() {
        return Err(Error::InvalidPlan { epsilon: plan.epsilon });
    }
    perturb_with_epsilon(s, plan.epsilon, seed)
}

/// A system with Gaussian-rational coefficients whose zeros were located and certified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularInstance {
    pub system: PolySystem,
    pub roots: RootSet,
    pub certificate: RegularityCertificate,
    pub plan: PerturbationPlan,
    /// Attempts used, including the successful one.
    pub attempts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularOptions {
    /// Known zero count (mixed volume); computed from the supports when absent.
    pub target: Option<u64>,
    pub plan: PlanOptions,
}

impl Default for RegularOptions {
    fn default() -> Self {
        Self {
            target: None,
            plan: PlanOptions::default(),
        }
    }
}

fn gaussian_system(supports: &[LatticeSupport], rng: &mut ChaCha8Rng) -> Result<PolySystem> {
    let d = supports.len();
    let polys = supports
        .iter()
        .map(|a| {
            let terms: Vec<_> = a
                .points()
                .iter()
                .map(|p| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    let c = GaussianRational::new(
                        BigRational::from_float(re).expect("finite"),
                        BigRational::from_float(im).expect("finite"),
                    );
                    (p.iter().map(|&x| x as u32).collect(), c)
                })
                .collect();
            SparsePoly::new(d, terms)
        })
        .collect::<Result<Vec<_>>>()?;
    PolySystem::new(polys)
}

/// Rationalizes within `tol` (per part), falling back to a finer tolerance for coefficients
/// that would round to zero.
fn rationalize_system(s: &PolySystem, tol: f64) -> Result<PolySystem> {
    s.map_polys(|_, p| {
        p.map_coefficients(|_, c| {
            let z = c.to_complex();
            let g = rationalize_complex(z, tol);
            if g.is_zero() {
                rationalize_complex(z, tol.min(0.5 * z.re.abs().max(z.im.abs())))
            } else {
                g
            }
        })
    })
}

pub fn make_regular_instance(supports: &[LatticeSupport], height: u64, seed: u64) -> Result<RegularInstance> {
    make_regular_instance_with(supports, height, seed, &RegularOptions::default())
}

/// Draws complex Gaussian coefficients on the supports, rationalizes them inside the Rouché
/// radius (and within `1/height`), then locates and certifies the zeros. A suspect draw is
/// retried with a derived seed, at most [`MAX_RETRIES`] times.
pub fn make_regular_instance_with(
    supports: &[LatticeSupport],
    height: u64,
    seed: u64,
    opts: &RegularOptions,
) -> Result<RegularInstance> {
    if height == 0 {
        return Err(Error::InvalidInput("height must be at least 1".into()));
    }
    if supports.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(j) = supports.iter().position(|a| !a.contains_origin()) {
        return Err(Error::MissingOrigin(j));
    }
    let target = match opts.target {
        Some(t) => t,
        None => {
            let mv = crate::exactgeom::mixed_volume_ie(supports)?;
            let v = mv.as_integer().ok_or_else(|| Error::Internal("non-integral mixed volume".into()))?;
            u64::try_from(v).map_err(|e| Error::Overflow(e.to_string()))?
        }
    };
    for attempt in 0..=MAX_RETRIES {
        let attempt_seed = mix_seed(seed, attempt as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(attempt_seed);
        let mut popts = opts.plan.clone();
        popts.seed = attempt_seed;
        popts.newton.seed = attempt_seed;
        let float_sys = gaussian_system(supports, &mut rng)?;
        let float_roots = locate_roots(&float_sys, Some(target as usize), &popts.newton);
        let Ok(plan) = plan_from_roots(&float_sys, &float_roots, &popts) else {
            continue;
        };
        let tol = plan.epsilon.min(1.0 / height as f64) / 2f64.sqrt();
        let system = rationalize_system(&float_sys, tol)?;
        let roots = locate_roots(&system, Some(target as usize), &popts.newton);
        let certificate = certify_regular(&system, &roots, popts.tolerance);
        if certificate.is_regular() {
            return Ok(RegularInstance {
                system,
                roots,
                certificate,
                plan,
                attempts: attempt + 1,
            });
        }
    }
    Err(Error::RetriesExhausted(MAX_RETRIES))
}
