//! Exact convex hulls of integer point sets in any dimension.
//!
//! Full-dimensional hulls are built by beneath-beyond insertion with a simplicial
//! boundary. A point is inserted only if it lies strictly beyond some facet, so
//! coplanar points never create degenerate facets. Lower-dimensional inputs are
//! projected onto a coordinate subspace that is injective on their affine hull.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::linalg::{self, Echelon};

#[derive(Debug, Clone)]
pub(crate) struct Hull {
    /// Irredundant vertices, sorted lexicographically.
    pub vertices: Vec<Vec<i128>>,
    pub affine_dim: usize,
    /// `dim! * volume` (an integer for lattice polytopes); zero when not full-dimensional.
    pub scaled_volume: BigInt,
}

#[derive(Debug, Clone)]
struct Facet {
    verts: Vec<usize>,
    normal: Vec<i128>,
    offset: i128,
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_mul(*y).expect("exact arithmetic overflow in hull"))
        .fold(0i128, |s, v| s.checked_add(v).expect("exact arithmetic overflow in hull"))
}

fn sub(a: &[i128], b: &[i128]) -> Vec<i128> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

pub(crate) fn hull(points: &[Vec<i128>], dim: usize) -> Hull {
    assert!(!points.is_empty(), "hull of an empty point set");
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();

    let base = pts[0].clone();
    let mut ech = Echelon::new();
    let mut basis = vec![0usize];
    let mut diffs = Vec::new();
    for (i, p) in pts.iter().enumerate().skip(1) {
        if ech.rank() == dim {
            break;
        }
        let d = sub(p, &base);
        if ech.insert(&d) {
            basis.push(i);
            diffs.push(d);
        }
    }
    let r = ech.rank();

    if r == 0 {
        return Hull {
            vertices: vec![base],
            affine_dim: 0,
            scaled_volume: BigInt::zero(),
        };
    }

    if r < dim {
        // Pick r coordinates on which the direction space projects bijectively.
        let mut cols = Vec::with_capacity(r);
        let mut col_ech = Echelon::new();
        for c in 0..dim {
            let column: Vec<i128> = diffs.iter().map(|d| d[c]).collect();
            if col_ech.insert(&column) {
                cols.push(c);
                if cols.len() == r {
                    break;
                }
            }
        }
        let projected: Vec<Vec<i128>> = pts
            .iter()
            .map(|p| cols.iter().map(|&c| p[c]).collect())
            .collect();
        let idx = vertex_indices_full(&projected, r);
        let mut vertices: Vec<Vec<i128>> = idx.into_iter().map(|i| pts[i].clone()).collect();
        vertices.sort();
        return Hull {
            vertices,
            affine_dim: r,
            scaled_volume: BigInt::zero(),
        };
    }

    if dim == 1 {
        let lo = pts.first().unwrap().clone();
        let hi = pts.last().unwrap().clone();
        let len = BigInt::from(hi[0] - lo[0]);
        return Hull {
            vertices: vec![lo, hi],
            affine_dim: 1,
            scaled_volume: len,
        };
    }

    let (idx, vol) = full_hull(&pts, dim, &basis);
    let mut vertices: Vec<Vec<i128>> = idx.into_iter().map(|i| pts[i].clone()).collect();
    vertices.sort();
    Hull {
        vertices,
        affine_dim: dim,
        scaled_volume: vol,
    }
}

/// Vertex indices of a full-dimensional point set (distinct points).
fn vertex_indices_full(pts: &[Vec<i128>], dim: usize) -> Vec<usize> {
    if dim == 1 {
        let lo = (0..pts.len()).min_by_key(|&i| pts[i][0]).unwrap();
        let hi = (0..pts.len()).max_by_key(|&i| pts[i][0]).unwrap();
        return if lo == hi { vec![lo] } else { vec![lo, hi] };
    }
    let base = &pts[0];
    let mut ech = Echelon::new();
    let mut basis = vec![0usize];
    for (i, p) in pts.iter().enumerate().skip(1) {
        if ech.insert(&sub(p, base)) {
            basis.push(i);
            if ech.rank() == dim {
                break;
            }
        }
    }
    debug_assert_eq!(ech.rank(), dim);
    full_hull(pts, dim, &basis).0
}

/// Outward facet through `verts`, oriented away from the point `centroid_sum / (dim + 1)`.
fn make_facet(pts: &[Vec<i128>], verts: Vec<usize>, centroid_sum: &[i128], dim: usize) -> Facet {
    let v0 = &pts[verts[0]];
    let rows: Vec<Vec<i128>> = verts[1..].iter().map(|&v| sub(&pts[v], v0)).collect();
    let mut normal = vec![0i128; dim];
    for (i, n) in normal.iter_mut().enumerate() {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, &x)| x).collect())
            .collect();
        let m = linalg::det_i128(&minor).expect("exact arithmetic overflow in facet normal");
        *n = if (dim - 1 + i) % 2 == 0 { m } else { -m };
    }
    let g = normal.iter().fold(0i128, |g, &x| g.gcd(&x));
    debug_assert!(g > 0, "degenerate facet");
    for x in normal.iter_mut() {
        *x /= g;
    }
    let mut offset = dot(&normal, v0);
    let side = dot(&normal, centroid_sum) - (dim as i128 + 1) * offset;
    debug_assert!(side != 0, "reference point lies on a facet hyperplane");
    if side > 0 {
        normal.iter_mut().for_each(|x| *x = -*x);
        offset = -offset;
    }
    Facet {
        verts,
        normal,
        offset,
    }
}

/// Beneath-beyond on a full-dimensional point set. `simplex` holds `dim + 1` affinely
/// independent indices. Returns vertex indices and `dim! * volume`.
fn full_hull(pts: &[Vec<i128>], dim: usize, simplex: &[usize]) -> (Vec<usize>, BigInt) {
    let mut centroid_sum = vec![0i128; dim];
    for &i in simplex {
        for (c, x) in centroid_sum.iter_mut().zip(&pts[i]) {
            *c += x;
        }
    }

    let mut facets: Vec<Facet> = (0..simplex.len())
        .map(|skip| {
            let verts: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, &v)| v)
                .collect();
            make_facet(pts, verts, &centroid_sum, dim)
        })
        .collect();

    let in_simplex = |i: usize| simplex.contains(&i);
    let mut ridges: HashMap<Vec<usize>, u32> = HashMap::new();
    for (pi, p) in pts.iter().enumerate() {
        if in_simplex(pi) {
            continue;
        }
        let visible: Vec<bool> = facets.iter().map(|f| dot(&f.normal, p) > f.offset).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        ridges.clear();
        for (f, _) in facets.iter().zip(&visible).filter(|(_, &v)| v) {
            for skip in 0..f.verts.len() {
                let mut ridge: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                ridge.sort_unstable();
                *ridges.entry(ridge).or_insert(0) += 1;
            }
        }
        let mut kept: Vec<Facet> = facets
            .into_iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| f)
            .collect();
        let mut horizon: Vec<&Vec<usize>> =
            ridges.iter().filter(|(_, &c)| c == 1).map(|(r, _)| r).collect();
        horizon.sort();
        for ridge in horizon {
            let mut verts = ridge.clone();
            verts.push(pi);
            kept.push(make_facet(pts, verts, &centroid_sum, dim));
        }
        facets = kept;
    }

    // A boundary point is a vertex iff the facet normals through it span the space.
    let mut incident: HashMap<usize, Echelon> = HashMap::new();
    for f in &facets {
        for &v in &f.verts {
            let e = incident.entry(v).or_default();
            if e.rank() < dim {
                e.insert(&f.normal);
            }
        }
    }
    let mut verts: Vec<usize> = incident
        .into_iter()
        .filter(|(_, e)| e.rank() == dim)
        .map(|(v, _)| v)
        .collect();
    verts.sort_unstable();

    let apex_index = facets[0].verts[0];
    let apex = &pts[apex_index];
    let mut vol = BigInt::zero();
    for f in &facets {
        if f.verts.contains(&apex_index) {
            continue;
        }
        let m: Vec<Vec<i128>> = f.verts.iter().map(|&v| sub(&pts[v], apex)).collect();
        vol += linalg::det(&m).abs();
    }
    (verts, vol)
}
