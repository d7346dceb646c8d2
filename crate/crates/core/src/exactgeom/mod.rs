//! Exact rational polytope geometry: hulls, Minkowski sums, volumes, and normalized
//! mixed volumes.
//!
//! Polytopes are stored as integer vertices over a common positive denominator, so all
//! hull and volume work happens in integer arithmetic.

mod hull;
mod linalg;
mod mixed;
mod zonotope;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use mixed::{mixed_volume, mixed_volume_ie, mixed_volume_interp, MixedVolumeResult, MvMethod};
pub use zonotope::{zonotope_mixed_volume, zonotope_support, Zonotope, DEFAULT_ZONOTOPE_LIMIT};


/// A finite nonempty set of exponent vectors in `Z_{>=0}^dim`, stored sorted and
/// without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SupportRepr", into = "SupportRepr")]
pub struct LatticeSupport {
    dim: usize,
    points: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct SupportRepr {
    dim: usize,
    points: Vec<Vec<i64>>,
}

impl TryFrom<SupportRepr> for LatticeSupport {
    type Error = Error;
    fn try_from(r: SupportRepr) -> Result<Self> {
        LatticeSupport::new(r.dim, r.points)
    }
}

impl From<LatticeSupport> for SupportRepr {
    fn from(s: LatticeSupport) -> Self {
        SupportRepr {
            dim: s.dim,
            points: s.points,
        }
    }
}

impl LatticeSupport {
    pub fn new(dim: usize, mut points: Vec<Vec<i64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty);
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            if let Some((k, v)) = p.iter().enumerate().find(|(_, &v)| v < 0) {
                return Err(Error::NegativeEntry {
                    position: format!("point {i}, coordinate {k}"),
                    value: v.to_string(),
                });
            }
        }
        points.sort();
        points.dedup();
        Ok(Self { dim, points })
    }

    /// `{0, e_1, ..., e_dim}`, the support of a generic affine-linear polynomial.
    pub fn simplex(dim: usize) -> Self {
        let mut pts = vec![vec![0; dim]];
        for i in 0..dim {
            let mut e = vec![0; dim];
            e[i] = 1;
            pts.push(e);
        }
        Self::new(dim, pts).expect("valid simplex support")
    }

    /// All exponents of total degree at most `degree`.
    pub fn dense(dim: usize, degree: u32) -> Self {
        let mut pts = vec![vec![]];
        for _ in 0..dim {
            let mut next = Vec::new();
            for p in &pts {
                let used: i64 = p.iter().sum();
                for e in 0..=(degree as i64 - used) {
                    let mut q = p.clone();
                    q.push(e);
                    next.push(q);
                }
            }
            pts = next;
        }
        Self::new(dim, pts).expect("valid dense support")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    pub fn contains_origin(&self) -> bool {
        self.points[0].iter().all(|&x| x == 0)
    }

    pub fn max_total_degree(&self) -> i64 {
        self.points.iter().map(|p| p.iter().sum::<i64>()).max().unwrap_or(0)
    }

    /// Translate by a lattice vector; fails if a coordinate would become negative.
    pub fn translate(&self, by: &[i64]) -> Result<Self> {
        let pts = self
            .points
            .iter()
            .map(|p| p.iter().zip(by).map(|(a, b)| a + b).collect())
            .collect();
        Self::new(self.dim, pts)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().cloned());
        Self::new(self.dim, pts)
    }

    pub fn newton_polytope(&self) -> RationalPolytope {
        let pts: Vec<Vec<i128>> = self
            .points
            .iter()
            .map(|p| p.iter().map(|&x| x as i128).collect())
            .collect();
        RationalPolytope::from_integer_points(self.dim, BigInt::one(), &pts)
    }
}

/// A convex polytope given by its irredundant vertex list, with exact rational
/// coordinates `int_vertices / denom`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolytope {
    dim: usize,
    denom: BigInt,
    int_vertices: Vec<Vec<i128>>,
    affine_dim: usize,
    /// `dim! * vol(int_vertices)`.
    scaled_volume: BigInt,
}

impl RationalPolytope {
    pub(crate) fn from_integer_points(dim: usize, denom: BigInt, pts: &[Vec<i128>]) -> Self {
        let h = hull::hull(pts, dim);
        Self {
            dim,
            denom,
            int_vertices: h.vertices,
            affine_dim: h.affine_dim,
            scaled_volume: h.scaled_volume,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn num_vertices(&self) -> usize {
        self.int_vertices.len()
    }

    /// Vertices in lexicographic order of their scaled integer coordinates.
    pub fn vertices(&self) -> Vec<Vec<BigRational>> {
        self.int_vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&x| BigRational::new(BigInt::from(x), self.denom.clone()))
                    .collect()
            })
            .collect()
    }

    /// Vertices scaled to integers together with their common denominator.
    pub fn integer_vertices(&self) -> (&[Vec<i128>], &BigInt) {
        (&self.int_vertices, &self.denom)
    }

    /// Dilation by a nonnegative integer factor.
    pub fn dilate(&self, t: i128) -> Self {
        assert!(t >= 0, "negative dilation");
        let pts: Vec<Vec<i128>> = self
            .int_vertices
            .iter()
            .map(|v| v.iter().map(|&x| x * t).collect())
            .collect();
        Self::from_integer_points(self.dim, self.denom.clone(), &pts)
    }

    fn rescaled(&self, denom: &BigInt) -> Vec<Vec<i128>> {
        let factor = (denom / &self.denom)
            .to_i128()
            .expect("common denominator overflow");
        self.int_vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&x| x.checked_mul(factor).expect("exact arithmetic overflow"))
                    .collect()
            })
            .collect()
    }
}

/// Convex hull of rational points, returned with an irredundant vertex set.
pub fn convex_hull(points: &[Vec<BigRational>]) -> Result<RationalPolytope> {
    let first = points.first().ok_or(Error::Empty)?;
    let dim = first.len();
    let mut denom = BigInt::one();
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        for x in p {
            denom = denom.lcm(x.denom());
        }
    }
    let mut ints = Vec::with_capacity(points.len());
    for p in points {
        let mut v = Vec::with_capacity(dim);
        for x in p {
            let scaled = x.numer() * (&denom / x.denom());
            v.push(scaled.to_i128().ok_or_else(|| Error::Overflow(scaled.to_string()))?);
        }
        ints.push(v);
    }
    Ok(RationalPolytope::from_integer_points(dim, denom, &ints))
}

/// `P + Q = conv{p + q}` over vertex pairs.
pub fn minkowski_sum(p: &RationalPolytope, q: &RationalPolytope) -> Result<RationalPolytope> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch {
            expected: p.dim,
            found: q.dim,
        });
    }
    let denom = p.denom.lcm(&q.denom);
    let pv = p.rescaled(&denom);
    let qv = q.rescaled(&denom);
    let mut sums = Vec::with_capacity(pv.len() * qv.len());
    for a in &pv {
        for b in &qv {
            sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    Ok(RationalPolytope::from_integer_points(p.dim, denom, &sums))
}

/// Exact Lebesgue volume; zero for polytopes of affine dimension below `dim`.
pub fn volume_exact(p: &RationalPolytope) -> BigRational {
    if p.affine_dim < p.dim || p.scaled_volume.is_zero() {
        return BigRational::zero();
    }
    let den = hull::factorial(p.dim) * p.denom.pow(p.dim as u32);
    BigRational::new(p.scaled_volume.abs(), den)
}
