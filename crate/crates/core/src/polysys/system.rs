use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{GaussianRational, RealSystem, SparsePoly};
use crate::error::{Error, Result};
use crate::exactgeom::{LatticeSupport, RationalPolytope};
use crate::numeric::{self, ComplexMatrix};
use crate::rational::{format_rational, parse_rational};

/// A square system `phi = (phi_1, ..., phi_d)` of `d`-variate sparse polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySystem {
    dim: usize,
    polys: Vec<SparsePoly>,
    jac: Vec<Vec<SparsePoly>>,
}

impl PolySystem {
    pub fn new(polys: Vec<SparsePoly>) -> Result<Self> {
        let dim = polys.len();
        if dim == 0 {
            return Err(Error::Empty);
        }
        for (j, p) in polys.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            if p.is_zero() {
                return Err(Error::ZeroPolynomial(j));
            }
        }
        let jac = polys
            .iter()
            .map(|p| (0..dim).map(|k| p.derivative(k)).collect())
            .collect();
        Ok(Self { dim, polys, jac })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn polys(&self) -> &[SparsePoly] {
        &self.polys
    }

    pub fn supports(&self) -> Vec<LatticeSupport> {
        self.polys.iter().map(|p| p.support()).collect()
    }

    pub fn newton_polytopes(&self) -> Vec<RationalPolytope> {
        self.polys.iter().map(|p| p.newton_polytope()).collect()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(|p| p.total_degree()).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Product of total degrees (saturating).
    pub fn bezout_bound(&self) -> u64 {
        self.degrees()
            .into_iter()
            .fold(1u64, |acc, d| acc.saturating_mul(d as u64))
    }

    /// `true` when each `phi_j` depends only on `z_j`.
    pub fn is_decoupled(&self) -> bool {
        self.polys.iter().enumerate().all(|(j, p)| p.is_univariate_in(j))
    }

    pub fn supports_contain_origin(&self) -> bool {
        self.polys.iter().all(|p| p.constant_term().is_some())
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Vec<Complex64> {
        self.polys.iter().map(|p| p.eval(z)).collect()
    }

    pub fn evaluate_exact(&self, z: &[GaussianRational]) -> Vec<GaussianRational> {
        self.polys.iter().map(|p| p.eval_exact(z)).collect()
    }

    /// Complex Jacobian `d phi_j / d z_k` at `z`.
    pub fn jacobian(&self, z: &[Complex64]) -> ComplexMatrix {
        self.jac
            .iter()
            .map(|row| row.iter().map(|p| p.eval(z)).collect())
            .collect()
    }

    pub fn jacobian_exact(&self, z: &[GaussianRational]) -> Vec<Vec<GaussianRational>> {
        self.jac
            .iter()
            .map(|row| row.iter().map(|p| p.eval_exact(z)).collect())
            .collect()
    }

    /// Symbolic partial derivatives, row `j` column `k`.
    pub fn jacobian_polys(&self) -> &[Vec<SparsePoly>] {
        &self.jac
    }

    pub fn jacobian_det(&self, z: &[Complex64]) -> Complex64 {
        numeric::det_complex(&self.jacobian(z))
    }

    pub fn realify(&self) -> RealSystem {
        RealSystem::from_complex(self)
    }

    /// Replaces component polynomials via `f`; fails if one becomes zero.
    pub fn map_polys(&self, mut f: impl FnMut(usize, &SparsePoly) -> SparsePoly) -> Result<Self> {
        let polys = self.polys.iter().enumerate().map(|(j, p)| f(j, p)).collect();
        Self::new(polys)
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.polys
            .iter()
            .all(|p| p.terms().values().all(|c| c.is_nonnegative()))
    }

    /// Largest coefficient height over the system.
    pub fn height(&self) -> num_bigint::BigInt {
        self.polys
            .iter()
            .flat_map(|p| p.terms().values().map(|c| c.height()))
            .max()
            .unwrap_or_else(|| 1.into())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("system serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u32>,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct SystemRepr {
    dim: usize,
    polys: Vec<PolyRepr>,
}

impl Serialize for PolySystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = SystemRepr {
            dim: self.dim,
            polys: self
                .polys
                .iter()
                .map(|p| PolyRepr {
                    terms: p
                        .terms()
                        .iter()
                        .map(|(e, c)| TermRepr {
                            exp: e.clone(),
                            re: format_rational(&c.re),
                            im: format_rational(&c.im),
                        })
                        .collect(),
                })
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolySystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SystemRepr::deserialize(d)?;
        if repr.polys.len() != repr.dim {
            return Err(D::Error::custom(format!(
                "system of dimension {} has {} polynomials",
                repr.dim,
                repr.polys.len()
            )));
        }
        let mut polys = Vec::with_capacity(repr.dim);
        for (j, p) in repr.polys.into_iter().enumerate() {
            let mut terms = Vec::with_capacity(p.terms.len());
            for t in p.terms {
                let re = parse_rational(&t.re).map_err(D::Error::custom)?;
                let im = parse_rational(&t.im).map_err(D::Error::custom)?;
                terms.push((t.exp, GaussianRational::new(re, im)));
            }
            let poly = SparsePoly::from_terms(repr.dim, terms).map_err(D::Error::custom)?;
            if poly.is_zero() {
                return Err(D::Error::custom(Error::ZeroPolynomial(j)));
            }
            polys.push(poly);
        }
        PolySystem::new(polys).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::parse_system;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn evaluation_examples() {
        let s = parse_system(2, &["z1^2 - 1", "z2^3 - 1"]).unwrap();
        let v = s.evaluate(&[c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(v.iter().all(|x| x.norm() == 0.0));

        let s = parse_system(2, &["z1*z2 + 2", "z1 + 3*i"]).unwrap();
        let v = s.evaluate(&[c(1.0, 1.0), c(1.0, -1.0)]);
        assert!((v[0] - c(4.0, 0.0)).norm() < 1e-15);
        let at0 = s.evaluate(&[c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(at0, vec![c(2.0, 0.0), c(0.0, 3.0)]);
    }

    #[test]
    fn jacobian_examples() {
        let s = parse_system(1, &["z1^2"]).unwrap();
        assert_eq!(s.jacobian(&[c(3.0, 0.0)]), vec![vec![c(6.0, 0.0)]]);

        let s = parse_system(2, &["z1*z2", "z1 + z2"]).unwrap();
        let j = s.jacobian_exact(&[GaussianRational::from_ints(1, 0), GaussianRational::from_ints(2, 0)]);
        let expect = vec![
            vec![GaussianRational::from_ints(2, 0), GaussianRational::from_ints(1, 0)],
            vec![GaussianRational::from_ints(1, 0), GaussianRational::from_ints(1, 0)],
        ];
        assert_eq!(j, expect);
        assert!((s.jacobian_det(&[c(1.0, 0.0), c(2.0, 0.0)]) - c(1.0, 0.0)).norm() < 1e-15);

        let d = parse_system(2, &["z1^2 - 1", "z2^3 + z2"]).unwrap();
        let j = d.jacobian(&[c(0.3, 0.1), c(-0.7, 0.2)]);
        assert_eq!(j[0][1], c(0.0, 0.0));
        assert_eq!(j[1][0], c(0.0, 0.0));
    }

    #[test]
    fn bezout() {
        assert_eq!(parse_system(2, &["z1^2 - 1", "z2^3 - z1"]).unwrap().bezout_bound(), 6);
        assert_eq!(parse_system(2, &["z1 + z2 - 1", "z1 - z2"]).unwrap().bezout_bound(), 1);
        assert_eq!(
            parse_system(3, &["z1 - 1", "z2^2 - 1", "z3^3 - z1"]).unwrap().bezout_bound(),
            6
        );
    }

    #[test]
    fn zero_component_rejected() {
        let p = SparsePoly::from_terms(1, vec![]).unwrap();
        assert!(matches!(PolySystem::new(vec![p]), Err(Error::ZeroPolynomial(0))));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let s = parse_system(2, &["(1/2 + 3/4*i)*z1*z2 - 2", "z2^2 + i"]).unwrap();
        let back = PolySystem::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"dim": 1, "polys": [{"terms": [{"exp": [1], "re": "0", "im": "0"}]}]}"#;
        assert!(PolySystem::from_json(bad).is_err());
        let bad = r#"{"dim": 2, "polys": [{"terms": [{"exp": [1, 0], "re": "1", "im": "0"}]}]}"#;
        assert!(PolySystem::from_json(bad).is_err());
    }
}
