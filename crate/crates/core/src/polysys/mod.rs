//! Sparse complex polynomial systems over Gaussian rationals.

mod gaussian;
mod parse;
mod poly;
mod random;
mod real;
mod system;

pub use gaussian::GaussianRational;
pub use parse::{parse_poly, parse_system};
pub use poly::{Exponent, SparsePoly};
pub use random::{random_gaussian_rational, random_system_on_supports, randomize_constants};
pub use real::{RealPoly, RealSystem, RealWorkspace};
pub use system::PolySystem;

/// Newton polytope of one polynomial (the hull of its support).
pub fn newton_polytope(p: &SparsePoly) -> crate::exactgeom::RationalPolytope {
    p.newton_polytope()
}

/// Product of total degrees.
pub fn bezout_bound(s: &PolySystem) -> u64 {
    s.bezout_bound()
}
