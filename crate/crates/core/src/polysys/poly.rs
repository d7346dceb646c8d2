use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;

use super::GaussianRational;
use crate::error::{Error, Result};
use crate::exactgeom::{LatticeSupport, RationalPolytope};

pub type Exponent = Vec<u32>;

/// A sparse polynomial in `dim` complex variables with Gaussian-rational coefficients.
/// Only nonzero coefficients are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsePoly {
    dim: usize,
    terms: BTreeMap<Exponent, GaussianRational>,
    numeric: Vec<(Exponent, Complex64)>,
}

/// Writes the expression syntax accepted by the parser, in increasing exponent order.
impl std::fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use num_traits::{Signed, Zero};
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let (neg, re, im) = match (c.re.is_zero(), c.im.is_zero()) {
                (_, true) => (c.re < BigRational::zero(), c.re.abs(), BigRational::zero()),
                (true, false) => (c.im < BigRational::zero(), BigRational::zero(), c.im.abs()),
                (false, false) => (false, c.re.clone(), c.im.clone()),
            };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if c.im.is_zero() {
                write!(f, "{re}")?;
            } else if c.re.is_zero() {
                write!(f, "{im}*i")?;
            } else if im < BigRational::zero() {
                write!(f, "({re} - {}*i)", im.abs())?;
            } else {
                write!(f, "({re} + {im}*i)")?;
            }
            for (j, &a) in e.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "*z{}", j + 1)?,
                    _ => write!(f, "*z{}^{a}", j + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl SparsePoly {
    /// Builds a nonzero polynomial; repeated exponents are summed and zero terms dropped.
    pub fn new(dim: usize, terms: impl IntoIterator<Item = (Exponent, GaussianRational)>) -> Result<Self> {
        let p = Self::from_terms(dim, terms)?;
        if p.is_zero() {
            return Err(Error::ZeroPolynomial(0));
        }
        Ok(p)
    }

    /// Like [`SparsePoly::new`] but allows the zero polynomial.
    pub(crate) fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (Exponent, GaussianRational)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Exponent, GaussianRational> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.len(),
                });
            }
            let slot = map.entry(e).or_insert_with(GaussianRational::zero);
            *slot = &*slot + &c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self::from_map(dim, map))
    }

    fn from_map(dim: usize, terms: BTreeMap<Exponent, GaussianRational>) -> Self {
        let numeric = terms.iter().map(|(e, c)| (e.clone(), c.to_complex())).collect();
        Self { dim, terms, numeric }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, GaussianRational> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> Option<&GaussianRational> {
        self.terms.get(e)
    }

    pub fn constant_term(&self) -> Option<&GaussianRational> {
        self.terms.get(&vec![0; self.dim])
    }

    /// Max total degree over the support (0 for the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Exponents with nonzero coefficient. Panics on the zero polynomial.
    pub fn support(&self) -> LatticeSupport {
        let pts = self
            .terms
            .keys()
            .map(|e| e.iter().map(|&x| x as i64).collect())
            .collect();
        LatticeSupport::new(self.dim, pts).expect("nonzero polynomial has a valid support")
    }

    /// Convex hull of the support; independent of the coefficient values.
    pub fn newton_polytope(&self) -> RationalPolytope {
        self.support().newton_polytope()
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.numeric {
            let mut m = *c;
            for (zk, &ek) in z.iter().zip(e) {
                if ek > 0 {
                    m *= zk.powu(ek);
                }
            }
            acc += m;
        }
        acc
    }

    pub fn eval_exact(&self, z: &[GaussianRational]) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (zk, &ek) in z.iter().zip(e) {
                if ek > 0 {
                    m = &m * &zk.pow(ek);
                }
            }
            acc = &acc + &m;
        }
        acc
    }

    /// Partial derivative with respect to variable `k` (possibly the zero polynomial).
    pub fn derivative(&self, k: usize) -> SparsePoly {
        let mut map = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[k] -= 1;
            let factor = BigRational::from_integer(e[k].into());
            map.insert(e2, c.scale(&factor));
        }
        Self::from_map(self.dim, map)
    }

    /// `true` if every term involves only variable `k`.
    pub fn is_univariate_in(&self, k: usize) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().enumerate().all(|(i, &x)| i == k || x == 0))
    }

    /// Dense coefficient vector `a_0, ..., a_n` of a polynomial univariate in `k`.
    pub(crate) fn univariate_coeffs(&self, k: usize) -> Vec<Complex64> {
        let n = self.terms.keys().map(|e| e[k]).max().unwrap_or(0) as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for (e, c) in &self.numeric {
            out[e[k] as usize] += *c;
        }
        out
    }

    /// Applies `f` to every coefficient; results that vanish are dropped.
    pub fn map_coefficients(&self, mut f: impl FnMut(&Exponent, &GaussianRational) -> GaussianRational) -> SparsePoly {
        let map = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), f(e, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self::from_map(self.dim, map)
    }

    /// Sets (or removes, if zero) the coefficient of `e`.
    pub fn with_coeff(&self, e: Exponent, c: GaussianRational) -> SparsePoly {
        let mut map = self.terms.clone();
        if c.is_zero() {
            map.remove(&e);
        } else {
            map.insert(e, c);
        }
        Self::from_map(self.dim, map)
    }

    /// Sum of |c| over all coefficients.
    pub fn coeff_l1(&self) -> f64 {
        self.numeric.iter().map(|(_, c)| c.norm()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn construction_merges_and_drops_zero() {
        let p = SparsePoly::new(1, vec![(vec![1], g(1, 0)), (vec![1], g(-1, 0)), (vec![0], g(2, 0))]).unwrap();
        assert_eq!(p.terms().len(), 1);
        assert!(matches!(SparsePoly::new(1, vec![(vec![1], g(0, 0))]), Err(Error::ZeroPolynomial(_))));
        assert!(SparsePoly::new(2, vec![(vec![1], g(1, 0))]).is_err());
    }

    #[test]
    fn derivative_and_degree() {
        let p = SparsePoly::new(2, vec![(vec![2, 1], g(3, 0)), (vec![0, 0], g(1, 1))]).unwrap();
        assert_eq!(p.total_degree(), 3);
        let dx = p.derivative(0);
        assert_eq!(dx.coeff(&[1, 1]), Some(&g(6, 0)));
        assert!(p.derivative(1).derivative(1).is_zero());
    }

    #[test]
    fn newton_polytope_ignores_coefficients() {
        let a = SparsePoly::new(2, vec![(vec![0, 0], g(1, 0)), (vec![2, 0], g(5, 0)), (vec![1, 0], g(1, 0))]).unwrap();
        let b = a.map_coefficients(|_, c| &(c * &g(0, 3)) + &g(1, 0));
        assert_eq!(a.newton_polytope(), b.newton_polytope());
    }
}
