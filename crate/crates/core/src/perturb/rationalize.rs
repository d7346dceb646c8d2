use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::polysys::GaussianRational;

/// First continued-fraction convergent of `x` within `epsilon`; its denominator is at most
/// `ceil(1 / epsilon)`. Non-finite input maps to 0.
pub fn rationalize(x: f64, epsilon: f64) -> BigRational {
    let Some(exact) = BigRational::from_float(x) else {
        return BigRational::zero();
    };
    rationalize_exact(&exact, epsilon)
}

pub(crate) fn rationalize_exact(x: &BigRational, epsilon: f64) -> BigRational {
    let eps = BigRational::from_float(epsilon.abs()).unwrap_or_else(BigRational::zero);
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    loop {
        let (a, r) = num.div_mod_floor(&den);
        let p = &a * &p0 + &p1;
        let q = &a * &q0 + &q1;
        let c = BigRational::new(p.clone(), q.clone());
        if (x - &c).abs() <= eps || r.is_zero() {
            return c;
        }
        (p1, q1) = (p0, q0);
        (p0, q0) = (p, q);
        num = den;
        den = r;
    }
}

/// Real and imaginary parts rationalized independently, so the modulus error is at most `epsilon * sqrt(2)`.
pub fn rationalize_complex(z: Complex64, epsilon: f64) -> GaussianRational {
    GaussianRational::new(rationalize(z.re, epsilon), rationalize(z.im, epsilon))
}
