//! Normalized mixed volume `MV(Q_1, ..., Q_d)`, the coefficient of `t_1 ... t_d` in
//! `vol(t_1 Q_1 + ... + t_d Q_d)`. Two independent routes share only the hull/volume
//! primitive: inclusion-exclusion over Minkowski sums, and exact interpolation of the
//! volume polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{linalg, minkowski_sum, volume_exact, LatticeSupport, RationalPolytope};
use crate::error::{Error, Result};
use crate::rational::serde_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MvMethod {
    InclusionExclusion,
    Interpolation,
    ZonotopeDeterminant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedVolumeResult {
    #[serde(with = "serde_rational")]
    pub value: BigRational,
    pub method: MvMethod,
}

impl MixedVolumeResult {
    /// The value as an integer, when it is one (always, for lattice supports).
    pub fn as_integer(&self) -> Option<BigInt> {
        crate::rational::as_integer(&self.value)
    }
}

fn check_supports(supports: &[LatticeSupport]) -> Result<usize> {
    let d = supports.first().map(|s| s.dim()).ok_or(Error::SupportCount {
        expected: 1,
        found: 0,
    })?;
    if supports.len() != d {
        return Err(Error::SupportCount {
            expected: d,
            found: supports.len(),
        });
    }
    for s in supports {
        if s.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: s.dim(),
            });
        }
    }
    Ok(d)
}

fn check_polytopes(polys: &[RationalPolytope]) -> Result<usize> {
    let d = polys.first().map(|p| p.dim()).ok_or(Error::SupportCount {
        expected: 1,
        found: 0,
    })?;
    if polys.len() != d {
        return Err(Error::SupportCount {
            expected: d,
            found: polys.len(),
        });
    }
    if let Some(p) = polys.iter().find(|p| p.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: p.dim(),
        });
    }
    Ok(d)
}

/// Mixed volume of `d` polytopes in `R^d` by the chosen route.
pub fn mixed_volume(polys: &[RationalPolytope], method: MvMethod) -> Result<MixedVolumeResult> {
    let d = check_polytopes(polys)?;
    let value = match method {
        MvMethod::InclusionExclusion => inclusion_exclusion(polys, d),
        MvMethod::Interpolation => interpolation(polys, d)?,
        MvMethod::ZonotopeDeterminant => {
            return Err(Error::InvalidInput(
                "the zonotope route takes a generator matrix, see zonotope_mixed_volume".into(),
            ))
        }
    };
    Ok(MixedVolumeResult { value, method })
}

/// `sum over nonempty S of (-1)^(d - |S|) vol(sum_{i in S} Q_i)`.
pub fn mixed_volume_ie(supports: &[LatticeSupport]) -> Result<MixedVolumeResult> {
    check_supports(supports)?;
    let polys: Vec<RationalPolytope> = supports.par_iter().map(|s| s.newton_polytope()).collect();
    mixed_volume(&polys, MvMethod::InclusionExclusion)
}

/// Coefficient of `t_1 ... t_d` recovered by exact interpolation of the volume polynomial.
pub fn mixed_volume_interp(supports: &[LatticeSupport]) -> Result<MixedVolumeResult> {
    check_supports(supports)?;
    let polys: Vec<RationalPolytope> = supports.par_iter().map(|s| s.newton_polytope()).collect();
    mixed_volume(&polys, MvMethod::Interpolation)
}

fn inclusion_exclusion(polys: &[RationalPolytope], d: usize) -> BigRational {
    let full = 1usize << d;
    let mut sums: Vec<Option<RationalPolytope>> = vec![None; full];
    for k in 1..=d {
        let level: Vec<usize> = (1..full).filter(|m| m.count_ones() as usize == k).collect();
        let built: Vec<(usize, RationalPolytope)> = level
            .par_iter()
            .map(|&mask| {
                let low = mask.trailing_zeros() as usize;
                let rest = mask & (mask - 1);
                let p = if rest == 0 {
                    polys[low].clone()
                } else {
                    let prev = sums[rest].as_ref().expect("previous level built");
                    minkowski_sum(prev, &polys[low]).expect("dimensions checked")
                };
                (mask, p)
            })
            .collect();
        for (mask, p) in built {
            sums[mask] = Some(p);
        }
    }
    let mut total = BigRational::zero();
    for (mask, p) in sums.iter().enumerate().skip(1) {
        let v = volume_exact(p.as_ref().unwrap());
        if (d - mask.count_ones() as usize) % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    total
}

/// All exponent vectors of length `len` summing to `total`, in lexicographic order.
pub(crate) fn compositions(total: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, len - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

fn interpolation(polys: &[RationalPolytope], d: usize) -> Result<BigRational> {
    // Nodes beta + 1 with |beta| = d form the principal lattice of a simplex on the
    // hyperplane sum(t) = 2d, which is unisolvent for degree-d forms.
    let monomials = compositions(d, d);
    let nodes: Vec<Vec<i128>> = monomials
        .iter()
        .map(|b| b.iter().map(|&x| x as i128 + 1).collect())
        .collect();

    let values: Vec<BigRational> = nodes
        .par_iter()
        .map(|t| {
            let mut acc = polys[0].dilate(t[0]);
            for i in 1..d {
                acc = minkowski_sum(&acc, &polys[i].dilate(t[i])).expect("dimensions checked");
            }
            volume_exact(&acc)
        })
        .collect();

    let matrix: Vec<Vec<BigRational>> = nodes
        .iter()
        .map(|t| {
            monomials
                .iter()
                .map(|g| {
                    let mut v = BigInt::one();
                    for (ti, &gi) in t.iter().zip(g) {
                        v *= BigInt::from(*ti).pow(gi as u32);
                    }
                    BigRational::from_integer(v)
                })
                .collect()
        })
        .collect();

    let coeffs = linalg::solve_rational(matrix, values)
        .ok_or_else(|| Error::Internal("singular interpolation system".into()))?;
    let target = vec![1usize; d];
    let idx = monomials
        .iter()
        .position(|g| *g == target)
        .expect("t_1...t_d is a degree-d monomial");
    let v = coeffs[idx].clone();
    debug_assert!(!v.is_negative());
    Ok(v)
}
