//! Coordinate zonotopes `Z_i = sum_j a_ij [0, e_j]` and their mixed volume.
//!
//! By multilinearity of the mixed volume, `MV(Z_1, ..., Z_d)` expands into terms
//! `prod_i a_{i j_i} * MV([0, e_{j_1}], ..., [0, e_{j_d}])`, and the segment mixed volume
//! is `|det(e_{j_1}, ..., e_{j_d})|`, which is 1 for a permutation and 0 otherwise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{convex_hull, linalg, LatticeSupport, MixedVolumeResult, MvMethod, RationalPolytope};
use crate::error::{Error, Result};

/// Default bound on `d` for materialized zonotope supports (`2^d` points each).
pub const DEFAULT_ZONOTOPE_LIMIT: usize = 12;

fn check_square<T>(a: &[Vec<T>]) -> Result<usize> {
    let n = a.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                row: i,
                cols: row.len(),
            });
        }
    }
    Ok(n)
}

/// Normalized mixed volume of the row zonotopes of a nonnegative square matrix.
pub fn zonotope_mixed_volume(a: &[Vec<BigRational>]) -> Result<MixedVolumeResult> {
    let n = check_square(a)?;
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if x.is_negative() {
                return Err(Error::NegativeEntry {
                    position: format!("({i}, {j})"),
                    value: crate::rational::format_rational(x),
                });
            }
        }
    }
    // assigned[mask]: sum over injective assignments of the first |mask| rows onto mask.
    let mut assigned = vec![BigRational::zero(); 1 << n];
    assigned[0] = BigRational::from_integer(1.into());
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = BigRational::zero();
        let mut bits = mask;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if !a[row][j].is_zero() {
                acc += &assigned[mask & !(1 << j)] * &a[row][j];
            }
        }
        assigned[mask] = acc;
    }
    Ok(MixedVolumeResult {
        value: assigned[(1 << n) - 1].clone(),
        method: MvMethod::ZonotopeDeterminant,
    })
}

/// Lattice support of row `row`: all subset sums `sum_{j in T} a_ij e_j`.
pub fn zonotope_support(a: &[Vec<i64>], row: usize, limit: usize) -> Result<LatticeSupport> {
    let n = check_square(a)?;
    if n > limit {
        return Err(Error::SizeLimit { size: n, limit });
    }
    let r = a
        .get(row)
        .ok_or_else(|| Error::InvalidInput(format!("row {row} out of range for {n}x{n} matrix")))?;
    if let Some((j, v)) = r.iter().enumerate().find(|(_, &v)| v < 0) {
        return Err(Error::NegativeEntry {
            position: format!("({row}, {j})"),
            value: v.to_string(),
        });
    }
    let pts = (0..1usize << n)
        .map(|t| (0..n).map(|j| if t >> j & 1 == 1 { r[j] } else { 0 }).collect())
        .collect();
    LatticeSupport::new(n, pts)
}

/// A zonotope given by its generator segments `[0, v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Zonotope {
    generators: Vec<Vec<BigRational>>,
}

impl Zonotope {
    pub fn new(generators: Vec<Vec<BigRational>>) -> Result<Self> {
        let d = generators.first().map(|g| g.len()).ok_or(Error::Empty)?;
        if let Some(g) = generators.iter().find(|g| g.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: g.len(),
            });
        }
        Ok(Self { generators })
    }

    pub fn dim(&self) -> usize {
        self.generators[0].len()
    }

    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.generators
    }

    /// Hull of all `2^k` subset sums of the generators.
    pub fn polytope(&self) -> Result<RationalPolytope> {
        let d = self.dim();
        let k = self.generators.len();
        if k > 20 {
            return Err(Error::SizeLimit { size: k, limit: 20 });
        }
        let mut pts = Vec::with_capacity(1 << k);
        for t in 0..1usize << k {
            let mut p = vec![BigRational::zero(); d];
            for (j, g) in self.generators.iter().enumerate() {
                if t >> j & 1 == 1 {
                    for (x, y) in p.iter_mut().zip(g) {
                        *x += y;
                    }
                }
            }
            pts.push(p);
        }
        convex_hull(&pts)
    }

    /// `sum over d-subsets of generators of |det|`.
    pub fn volume(&self) -> BigRational {
        let d = self.dim();
        let k = self.generators.len();
        let mut total = BigRational::zero();
        let mut idx: Vec<usize> = (0..d).collect();
        if k < d {
            return total;
        }
        let denom = self
            .generators
            .iter()
            .flatten()
            .fold(BigInt::from(1), |l, x| num_integer::Integer::lcm(&l, x.denom()));
        let ints: Vec<Vec<i128>> = self
            .generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|x| {
                        let v = x.numer() * (&denom / x.denom());
                        num_traits::ToPrimitive::to_i128(&v).expect("generator overflow")
                    })
                    .collect()
            })
            .collect();
        loop {
            let m: Vec<Vec<i128>> = idx.iter().map(|&i| ints[i].clone()).collect();
            total += BigRational::from_integer(linalg::det(&m).abs());
            // next combination
            let mut i = d;
            loop {
                if i == 0 {
                    return total / BigRational::from_integer(denom.pow(d as u32));
                }
                i -= 1;
                if idx[i] != i + k - d {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..d {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}
