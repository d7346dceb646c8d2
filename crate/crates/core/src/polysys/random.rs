use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GaussianRational, PolySystem, SparsePoly};
use crate::error::{Error, Result};
use crate::exactgeom::LatticeSupport;

fn random_rational(rng: &mut impl Rng, height: u64) -> BigRational {
    let h = height as i64;
    let p = rng.random_range(-h..=h);
    let q = rng.random_range(1..=h);
    BigRational::new(p.into(), q.into())
}

/// A nonzero Gaussian rational whose parts are `p/q` with `|p| <= H`, `1 <= q <= H`.
pub fn random_gaussian_rational(rng: &mut impl Rng, height: u64) -> GaussianRational {
    loop {
        let g = GaussianRational::new(random_rational(rng, height), random_rational(rng, height));
        if !g.is_zero() {
            return g;
        }
    }
}

fn check_height(height: u64) -> Result<()> {
    if height == 0 {
        return Err(Error::InvalidInput("coefficient height must be at least 1".into()));
    }
    Ok(())
}

/// Random system with every support point carrying a nonzero coefficient of height
/// at most `height`. Deterministic in `seed`.
pub fn random_system_on_supports(supports: &[LatticeSupport], height: u64, seed: u64) -> Result<PolySystem> {
    check_height(height)?;
    let d = supports.len();
    if d == 0 {
        return Err(Error::Empty);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut polys = Vec::with_capacity(d);
    for s in supports {
        if s.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: s.dim(),
            });
        }
        let terms: Vec<_> = s
            .points()
            .iter()
            .map(|p| {
                let e = p.iter().map(|&x| x as u32).collect();
                (e, random_gaussian_rational(&mut rng, height))
            })
            .collect();
        polys.push(SparsePoly::new(d, terms)?);
    }
    PolySystem::new(polys)
}

/// Replaces each constant term by a fresh nonzero random Gaussian rational of height at
/// most `height`, adding the origin to supports that lack it. Other coefficients are kept.
pub fn randomize_constants(s: &PolySystem, height: u64, seed: u64) -> Result<PolySystem> {
    check_height(height)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let origin = vec![0u32; s.dim()];
    s.map_polys(|_, p| p.with_coeff(origin.clone(), random_gaussian_rational(&mut rng, height)))
}
