//! Degree of a polynomial map at 0: by mixed volume, by counting zeros, and by the
//! mollified integral, plus a report cross-checking them.

mod integral;
mod mollifier;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactgeom::mixed_volume_ie;
use crate::polysys::PolySystem;
use crate::rootfind::{
    certify_regular, locate_roots, root_bound, NewtonConfig, RegularityCertificate, RootBound, RootSet,
    DEFAULT_REGULARITY_TOLERANCE,
};

pub use integral::{degree_via_integral, DegreeIntegralConfig, IntegralEstimate, LevelEstimate};
pub use mollifier::{mollifier_normalizer, unit_ball_gaussian_mass, MollifierSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mv,
    Roots,
    Integral,
    All,
}

impl Method {
    fn wants(self, m: Method) -> bool {
        self == Method::All || self == m
    }
}

/// Normalized mixed volume of the supports, which is the degree when 0 is a regular value.
pub fn degree_via_mv(s: &PolySystem) -> Result<u64> {
    if let Some(j) = s.supports().iter().position(|a| !a.contains_origin()) {
        return Err(Error::MissingOrigin(j));
    }
    let mv = mixed_volume_ie(&s.supports())?;
    let v = mv
        .as_integer()
        .ok_or_else(|| Error::Internal(format!("non-integral mixed volume {}", mv.value)))?;
    u64::try_from(v).map_err(|e| Error::Overflow(e.to_string()))
}

/// Zero count of a complete root set, refused unless 0 is certified regular.
pub fn degree_via_roots(s: &PolySystem, roots: &RootSet, tolerance: f64) -> Result<u64> {
    if !roots.complete {
        return Err(Error::IncompleteRoots {
            found: roots.len(),
            target: roots.target.unwrap_or(0),
        });
    }
    let cert = certify_regular(s, roots, tolerance);
    if !cert.is_regular() {
        return Err(Error::SuspectRegularity {
            min_abs_jac_det: cert.min_abs_jac_det.unwrap_or(0.0),
            tolerance,
        });
    }
    Ok(roots.len() as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeOptions {
    pub method: Method,
    pub tolerance: f64,
    pub newton: NewtonConfig,
    pub integral: DegreeIntegralConfig,
}

impl Default for DegreeOptions {
    fn default() -> Self {
        Self {
            method: Method::All,
            tolerance: DEFAULT_REGULARITY_TOLERANCE,
            newton: NewtonConfig::default(),
            integral: DegreeIntegralConfig::default(),
        }
    }
}

impl DegreeOptions {
    pub fn with_seed(seed: u64) -> Self {
        let mut o = Self::default();
        o.newton.seed = seed;
        o.integral.seed = seed;
        o
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub dim: usize,
    pub bezout_bound: u64,
    pub value_mv: Option<u64>,
    pub value_roots: Option<u64>,
    pub value_integral: Option<IntegralEstimate>,
    pub roots_found: Option<usize>,
    pub roots_complete: Option<bool>,
    pub certificate: Option<RegularityCertificate>,
    pub root_bound: Option<RootBound>,
    /// Why a requested method produced no value.
    pub notes: Vec<String>,
    pub consistent: bool,
}

impl DegreeReport {
    /// The agreed degree when the report is consistent.
    pub fn degree(&self) -> Option<u64> {
        if !self.consistent {
            return None;
        }
        self.value_roots
            .or(self.value_mv)
            .or_else(|| self.value_integral.as_ref().and_then(|e| e.rounded).map(|r| r as u64))
    }
}

/// Runs the requested evaluators and cross-checks them.
pub fn consistency_check(s: &PolySystem, opts: &DegreeOptions) -> DegreeReport {
    consistency_check_with_mv(s, None, opts)
}

/// As [`consistency_check`], taking the mixed volume from the caller when it is already known
/// (for supports too large for the generic mixed-volume routine).
pub fn consistency_check_with_mv(s: &PolySystem, known_mv: Option<u64>, opts: &DegreeOptions) -> DegreeReport {
    check(s, known_mv, None, opts)
}

/// As [`consistency_check_with_mv`], reusing zeros already located for this system.
pub fn consistency_check_with_roots(
    s: &PolySystem,
    known_mv: Option<u64>,
    roots: RootSet,
    opts: &DegreeOptions,
) -> DegreeReport {
    check(s, known_mv, Some(roots), opts)
}

fn check(s: &PolySystem, known_mv: Option<u64>, known_roots: Option<RootSet>, opts: &DegreeOptions) -> DegreeReport {
    let mut notes = Vec::new();
    let bezout = s.bezout_bound();
    let need_roots = opts.method.wants(Method::Roots) || opts.method.wants(Method::Integral);

    let mv = if let Some(v) = known_mv {
        Some(v)
    } else if opts.method.wants(Method::Mv) || need_roots {
        match degree_via_mv(s) {
            Ok(v) => Some(v),
            Err(e) => {
                notes.push(format!("mv: {e}"));
                None
            }
        }
    } else {
        None
    };

    let mut report = DegreeReport {
        dim: s.dim(),
        bezout_bound: bezout,
        value_mv: opts.method.wants(Method::Mv).then_some(mv).flatten(),
        value_roots: None,
        value_integral: None,
        roots_found: None,
        roots_complete: None,
        certificate: None,
        root_bound: None,
        notes: Vec::new(),
        consistent: false,
    };

    if need_roots {
        let roots = known_roots.unwrap_or_else(|| locate_roots(s, mv.map(|v| v as usize), &opts.newton));
        let cert = certify_regular(s, &roots, opts.tolerance);
        report.roots_found = Some(roots.len());
        report.roots_complete = Some(roots.complete);
        let regular = cert.is_regular();
        report.certificate = Some(cert);
        if opts.method.wants(Method::Roots) {
            match degree_via_roots(s, &roots, opts.tolerance) {
                Ok(v) => report.value_roots = Some(v),
                Err(e) => notes.push(format!("roots: {e}")),
            }
        }
        if opts.method.wants(Method::Integral) {
            if !regular {
                notes.push("integral: 0 is not certified regular".into());
            } else if s.dim() > opts.integral.max_dim {
                notes.push(format!(
                    "integral: dimension {} above limit {}",
                    s.dim(),
                    opts.integral.max_dim
                ));
            } else {
                let mut cfg = opts.integral.clone();
                if cfg.root_bound.is_none() {
                    let b = root_bound(s, &opts.newton);
                    // Located zeros can sit outside a heuristic bound; the box must hold them.
                    let r = if b.heuristic { b.radius.max(1.25 * roots.max_norm()) } else { b.radius };
                    report.root_bound = Some(RootBound {
                        radius: r,
                        heuristic: b.heuristic,
                    });
                    cfg.root_bound = Some(r);
                }
                match degree_via_integral(s, &cfg) {
                    Ok(mut e) => {
                        e.root_bound_heuristic = report.root_bound.is_some_and(|b| b.heuristic);
                        if e.inconclusive {
                            notes.push("integral: inconclusive".into());
                        }
                        report.value_integral = Some(e);
                    }
                    Err(e) => notes.push(format!("integral: {e}")),
                }
            }
        }
    }

    let mut values: Vec<u64> = report.value_mv.into_iter().chain(report.value_roots).collect();
    let mut ok = true;
    if let Some(e) = &report.value_integral {
        match e.rounded {
            Some(r) if r >= 0 => values.push(r as u64),
            _ => ok = false,
        }
    }
    ok &= !values.is_empty() && values.windows(2).all(|w| w[0] == w[1]) && values.iter().all(|&v| v <= bezout);
    if opts.method.wants(Method::Roots) || opts.method.wants(Method::Integral) {
        ok &= report.certificate.as_ref().is_some_and(|c| c.is_regular());
    }
    if opts.method == Method::All {
        ok &= report.value_roots.is_some();
    }
    report.consistent = ok;
    report.notes = notes;
    report
}
