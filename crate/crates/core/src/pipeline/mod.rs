//! Permanent instance to zonotope supports to mixed volume to a certified system and its degree.

mod io;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::degree::{consistency_check_with_roots, DegreeOptions, DegreeReport, Method};
use crate::error::{Error, Result};
use crate::exactgeom::{mixed_volume_ie, zonotope_mixed_volume, zonotope_support, LatticeSupport};
use crate::perturb::{make_regular_instance_with, PlanOptions, RegularOptions};
use crate::polysys::{random_system_on_supports, PolySystem};
use crate::rational::serde_bigint;
use crate::rootfind::RootSet;

pub use io::{parse_supports, IntMatrix};

pub const RYSER_LIMIT: usize = 14;
pub const DEFAULT_ROOT_LIMIT: usize = 7;
pub const DEFAULT_MV_LIMIT: usize = 12;

/// Permanent by Ryser's inclusion-exclusion over column subsets.
pub fn permanent_ryser(a: &[Vec<i64>]) -> Result<BigInt> {
    let m = IntMatrix::new(a.to_vec())?;
    let n = m.n();
    if n > RYSER_LIMIT {
        return Err(Error::SizeLimit {
            size: n,
            limit: RYSER_LIMIT,
        });
    }
    let mut total = BigInt::zero();
    for s in 1usize..(1 << n) {
        let mut prod = BigInt::one();
        for row in a {
            let rs: i128 = (0..n).filter(|j| s >> j & 1 == 1).map(|j| row[j] as i128).sum();
            if rs == 0 {
                prod = BigInt::zero();
                break;
            }
            prod *= rs;
        }
        if (n - s.count_ones() as usize) % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionOptions {
    pub height: u64,
    pub seed: u64,
    /// Largest size for which zeros are located and the degree is checked.
    pub root_limit: usize,
    /// Largest size accepted at all (mixed volume only above `root_limit`).
    pub mv_limit: usize,
    pub degree: DegreeOptions,
}

impl ReductionOptions {
    pub fn new(height: u64, seed: u64) -> Self {
        let mut degree = DegreeOptions::with_seed(seed);
        degree.method = Method::Roots;
        Self {
            height,
            seed,
            root_limit: DEFAULT_ROOT_LIMIT,
            mv_limit: DEFAULT_MV_LIMIT,
            degree,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootSearch {
    Full,
    MvOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub matrix: IntMatrix,
    #[serde(with = "serde_bigint")]
    pub permanent: BigInt,
    #[serde(with = "serde_bigint")]
    pub mixed_volume: BigInt,
    /// Generic mixed-volume routine on the materialized supports, for small sizes.
    pub mixed_volume_cross_check: Option<bool>,
    pub supports: Vec<LatticeSupport>,
    pub system: PolySystem,
    pub root_search: RootSearch,
    pub attempts: Option<usize>,
    pub degree: Option<DegreeReport>,
    /// The degree this trace stands behind: the consistent report's value, or the mixed
    /// volume when zeros were not located.
    pub reported_degree: Option<u64>,
    pub constants_nonzero: bool,
    pub nonnegative_coefficients: bool,
    pub agreement: bool,
}

pub fn reduce_permanent(a: &IntMatrix, height: u64, seed: u64) -> Result<ReductionTrace> {
    reduce_permanent_with(a, &ReductionOptions::new(height, seed))
}

pub fn reduce_permanent_with(a: &IntMatrix, opts: &ReductionOptions) -> Result<ReductionTrace> {
    let n = a.n();
    if n > opts.mv_limit {
        return Err(Error::SizeLimit {
            size: n,
            limit: opts.mv_limit,
        });
    }
    if let Some((i, j, v)) = a
        .rows()
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v)))
        .find(|t| t.2 < 0)
    {
        return Err(Error::NegativeEntry {
            position: format!("({i}, {j})"),
            value: v.to_string(),
        });
    }
    let permanent = permanent_ryser(a.rows())?;
    let q: Vec<Vec<BigRational>> = a
        .rows()
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    let mixed_volume = zonotope_mixed_volume(&q)?
        .as_integer()
        .ok_or_else(|| Error::Internal("non-integral zonotope mixed volume".into()))?;
    if mixed_volume != permanent {
        return Err(Error::Disagreement(format!(
            "permanent {permanent} but zonotope mixed volume {mixed_volume}"
        )));
    }
    let supports = (0..n)
        .map(|i| zonotope_support(a.rows(), i, opts.mv_limit))
        .collect::<Result<Vec<_>>>()?;
    let mixed_volume_cross_check = if n <= 3 {
        let ie = mixed_volume_ie(&supports)?;
        if ie.as_integer().as_ref() != Some(&mixed_volume) {
            return Err(Error::Disagreement(format!(
                "zonotope mixed volume {mixed_volume} but support mixed volume {}",
                ie.value
            )));
        }
        Some(true)
    } else {
        None
    };
    let mv = u64::try_from(&mixed_volume).map_err(|e| Error::Overflow(e.to_string()))?;

    let (system, root_search, attempts, degree, reported_degree) = if n <= opts.root_limit {
        let ropts = RegularOptions {
            target: Some(mv),
            plan: PlanOptions {
                seed: opts.seed,
                tolerance: opts.degree.tolerance,
                newton: opts.degree.newton.clone(),
                ..PlanOptions::default()
            },
        };
        let inst = make_regular_instance_with(&supports, opts.height, opts.seed, &ropts)?;
        let report = consistency_check_with_roots(&inst.system, Some(mv), inst.roots, &opts.degree);
        let deg = report.degree();
        (inst.system, RootSearch::Full, Some(inst.attempts), Some(report), deg)
    } else {
        let s = random_system_on_supports(&supports, opts.height, opts.seed)?;
        (s, RootSearch::MvOnly, None, None, Some(mv))
    };
    let origin = vec![0u32; n];
    let constants_nonzero = system
        .polys()
        .iter()
        .all(|p| p.coeff(&origin).is_some_and(|c| !c.is_zero()));
    let agreement = reported_degree.is_some_and(|d| BigInt::from(d) == permanent);
    Ok(ReductionTrace {
        matrix: a.clone(),
        nonnegative_coefficients: system.all_coefficients_nonnegative(),
        permanent,
        mixed_volume,
        mixed_volume_cross_check,
        supports,
        system,
        root_search,
        attempts,
        degree,
        reported_degree,
        constants_nonzero,
        agreement,
    })
}

/// Zeros of `phi` read as real zeros of its realification `psi` on `R^{2d}`; requires a
/// complete root set at which 0 is certified regular.
pub fn count_real_zeros_view(s: &PolySystem, roots: &RootSet, tolerance: f64) -> Result<u64> {
    crate::degree::degree_via_roots(s, roots, tolerance)?;
    let psi = s.realify();
    let mut count = 0;
    for (z, &res) in roots.roots.iter().zip(&roots.residuals) {
        let xy: Vec<f64> = z.iter().flat_map(|c| [c.re, c.im]).collect();
        let r = crate::numeric::norm2_real(&psi.eval(&xy));
        if r > 10.0 * res.max(1e-12) + 1e-9 {
            return Err(Error::Internal(format!("realified residual {r} at a certified zero")));
        }
        count += 1;
    }
    Ok(count)
}
