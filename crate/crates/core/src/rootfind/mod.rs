//! Locating and certifying the isolated zeros of square polynomial systems.

mod bound;
mod newton;
mod univariate;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::norm2;
use crate::polysys::PolySystem;

pub use bound::{root_bound, RootBound};
pub use newton::{multistart_newton, NewtonConfig};

/// Default regularity threshold on `|det J_phi|` at a located zero.
pub const DEFAULT_REGULARITY_TOLERANCE: f64 = 1e-6;

/// Numerically located zeros with per-root residual `||phi(z)||_2` and `|det J_phi(z)|`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Vec<Complex64>>,
    pub residuals: Vec<f64>,
    pub jac_dets: Vec<f64>,
    /// The number of zeros the search aimed for, when known.
    pub target: Option<usize>,
    /// `true` when `roots.len()` equals `target`.
    pub complete: bool,
}

impl RootSet {
    pub(crate) fn from_roots(s: &PolySystem, mut roots: Vec<Vec<Complex64>>, target: Option<usize>) -> Self {
        roots.sort_by(|a, b| lex_cmp(a, b));
        let residuals = roots.iter().map(|z| norm2(&s.evaluate(z))).collect();
        let jac_dets = roots.iter().map(|z| s.jacobian_det(z).norm()).collect();
        let complete = target.is_some_and(|t| t == roots.len());
        Self {
            roots,
            residuals,
            jac_dets,
            target,
            complete,
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Largest Euclidean norm over the located roots (0 when empty).
    pub fn max_norm(&self) -> f64 {
        self.roots.iter().map(|z| norm2(z)).fold(0.0, f64::max)
    }
}

pub(crate) fn lex_cmp(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o.is_ne() {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// Dedup radius for a root of norm `r`.
pub(crate) fn dedup_radius(r: f64) -> f64 {
    1e-6 * (1.0 + r)
}

/// Residual acceptance threshold `1e-8 (1 + ||z||^D)`.
pub(crate) fn residual_tolerance(znorm: f64, degree: u32) -> f64 {
    1e-8 * (1.0 + znorm.powi(degree as i32))
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct RootRepr {
    coords: Vec<ComplexRepr>,
    residual: f64,
    jac_det: f64,
}

#[derive(Serialize, Deserialize)]
struct RootSetRepr {
    roots: Vec<RootRepr>,
    target: Option<usize>,
    complete: bool,
}

impl Serialize for RootSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootSetRepr {
            roots: self
                .roots
                .iter()
                .zip(&self.residuals)
                .zip(&self.jac_dets)
                .map(|((z, &residual), &jac_det)| RootRepr {
                    coords: z.iter().map(|c| ComplexRepr { re: c.re, im: c.im }).collect(),
                    residual,
                    jac_det,
                })
                .collect(),
            target: self.target,
            complete: self.complete,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RootSetRepr::deserialize(d)?;
        let mut out = RootSet {
            roots: Vec::new(),
            residuals: Vec::new(),
            jac_dets: Vec::new(),
            target: r.target,
            complete: r.complete,
        };
        for root in r.roots {
            out.roots
                .push(root.coords.iter().map(|c| Complex64::new(c.re, c.im)).collect());
            out.residuals.push(root.residual);
            out.jac_dets.push(root.jac_det);
        }
        Ok(out)
    }
}

/// All zeros of a system whose `j`-th component is univariate in `z_j`, as the
/// Cartesian product of the univariate root sets.
pub fn solve_decoupled(s: &PolySystem) -> Result<RootSet> {
    let d = s.dim();
    let mut factors = Vec::with_capacity(d);
    for (j, p) in s.polys().iter().enumerate() {
        if !p.is_univariate_in(j) {
            return Err(Error::NotDecoupled(j));
        }
        factors.push(univariate::roots(&p.univariate_coeffs(j)));
    }
    let target = factors.iter().map(|f| f.len()).product::<usize>();
    let mut roots: Vec<Vec<Complex64>> = vec![Vec::with_capacity(d)];
    for f in &factors {
        let mut next = Vec::with_capacity(roots.len() * f.len());
        for prefix in &roots {
            for &r in f {
                let mut z = prefix.clone();
                z.push(r);
                next.push(z);
            }
        }
        roots = next;
    }
    Ok(RootSet::from_roots(s, roots, Some(target)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Regular,
    Suspect,
}

/// Regularity of 0 judged at the located zeros: regular iff `min |det J_phi| > tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityCertificate {
    /// `None` when there are no zeros to check (vacuously regular).
    pub min_abs_jac_det: Option<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub roots_checked: usize,
}

impl RegularityCertificate {
    pub fn is_regular(&self) -> bool {
        self.verdict == Verdict::Regular
    }
}

pub fn certify_regular(s: &PolySystem, roots: &RootSet, tolerance: f64) -> RegularityCertificate {
    let min = roots
        .roots
        .iter()
        .map(|z| s.jacobian_det(z).norm())
        .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.min(v))));
    let verdict = match min {
        Some(m) if !(m > tolerance) => Verdict::Suspect,
        _ => Verdict::Regular,
    };
    RegularityCertificate {
        min_abs_jac_det: min,
        tolerance,
        verdict,
        roots_checked: roots.len(),
    }
}

/// Decoupled systems are solved directly; others by multistart Newton aimed at `target`
/// within the heuristic root bound.
pub fn locate_roots(s: &PolySystem, target: Option<usize>, cfg: &NewtonConfig) -> RootSet {
    if s.is_decoupled() {
        return solve_decoupled(s).expect("decoupled system");
    }
    let radius = root_bound(s, cfg).radius;
    multistart_newton(s, target, radius, cfg)
}
