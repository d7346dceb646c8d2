//! Realification: `phi: C^d -> C^d` becomes `psi: R^{2d} -> R^{2d}` with variables
//! ordered `(x_1, y_1, ..., x_d, y_d)` and components `(Re phi_1, Im phi_1, ...)`,
//! so that `psi_{2j-1} + i psi_{2j} = phi_j(x + i y)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{GaussianRational, PolySystem};
use crate::numeric::{self, RealMatrix};
use crate::rational;

/// A real polynomial with exact rational coefficients and a compiled float form.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
    compiled: Vec<(f64, Vec<(usize, u32)>)>,
}

impl RealPoly {
    fn from_map(nvars: usize, mut terms: BTreeMap<Vec<u32>, BigRational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let compiled = terms
            .iter()
            .map(|(e, c)| {
                let factors = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(v, &p)| (v, p))
                    .collect();
                (rational::to_f64(c), factors)
            })
            .collect();
        Self { nvars, terms, compiled }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn derivative(&self, v: usize) -> RealPoly {
        let mut map = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[v] -= 1;
            map.insert(e2, c * BigRational::from_integer(e[v].into()));
        }
        Self::from_map(self.nvars, map)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.compiled
            .iter()
            .map(|(c, f)| f.iter().fold(*c, |acc, &(v, p)| acc * x[v].powi(p as i32)))
            .sum()
    }

    /// Evaluation against a precomputed power table `pw[v][p] = x_v^p`.
    #[inline]
    fn eval_table(&self, pw: &[Vec<f64>]) -> f64 {
        self.compiled
            .iter()
            .map(|(c, f)| f.iter().fold(*c, |acc, &(v, p)| acc * pw[v][p as usize]))
            .sum()
    }

    fn max_power(&self) -> u32 {
        self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0)
    }
}

/// The real form `psi` of a complex system, with symbolic partial derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSystem {
    dim: usize,
    components: Vec<RealPoly>,
    jac: Vec<Vec<RealPoly>>,
    max_power: u32,
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

impl RealSystem {
    pub(crate) fn from_complex(s: &PolySystem) -> Self {
        let d = s.dim();
        let nv = 2 * d;
        let mut components = Vec::with_capacity(nv);
        for p in s.polys() {
            let mut re: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
            let mut im: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
            for (e, c) in p.terms() {
                // Expand prod_k (x_k + i y_k)^{e_k} term by term.
                let mut expansion: Vec<(Vec<u32>, GaussianRational)> = vec![(vec![0; nv], c.clone())];
                for (k, &ek) in e.iter().enumerate() {
                    if ek == 0 {
                        continue;
                    }
                    let mut next = Vec::with_capacity(expansion.len() * (ek as usize + 1));
                    for (mono, coef) in &expansion {
                        for m in 0..=ek {
                            let mut mono2 = mono.clone();
                            mono2[2 * k] += ek - m;
                            mono2[2 * k + 1] += m;
                            let b = BigRational::from_integer(binomial(ek, m));
                            let unit = match m % 4 {
                                0 => GaussianRational::one(),
                                1 => GaussianRational::i(),
                                2 => GaussianRational::from_ints(-1, 0),
                                _ => GaussianRational::from_ints(0, -1),
                            };
                            next.push((mono2, (&coef.scale(&b)) * &unit));
                        }
                    }
                    expansion = next;
                }
                for (mono, coef) in expansion {
                    *re.entry(mono.clone()).or_insert_with(BigRational::zero) += coef.re;
                    *im.entry(mono).or_insert_with(BigRational::zero) += coef.im;
                }
            }
            components.push(RealPoly::from_map(nv, re));
            components.push(RealPoly::from_map(nv, im));
        }
        let jac: Vec<Vec<RealPoly>> = components
            .iter()
            .map(|c| (0..nv).map(|v| c.derivative(v)).collect())
            .collect();
        let max_power = components.iter().map(|c| c.max_power()).max().unwrap_or(0);
        Self {
            dim: d,
            components,
            jac,
            max_power,
        }
    }

    /// Complex dimension `d`; the real system has `2d` variables and components.
    pub fn complex_dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[RealPoly] {
        &self.components
    }

    pub fn eval(&self, xy: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval(xy)).collect()
    }

    pub fn jacobian(&self, xy: &[f64]) -> RealMatrix {
        self.jac
            .iter()
            .map(|row| row.iter().map(|p| p.eval(xy)).collect())
            .collect()
    }

    pub fn jac_det(&self, xy: &[f64]) -> f64 {
        numeric::det_real(&self.jacobian(xy))
    }

    /// Reusable evaluation buffers for hot loops.
    pub fn workspace(&self) -> RealWorkspace {
        let nv = 2 * self.dim;
        RealWorkspace {
            powers: vec![vec![1.0; self.max_power as usize + 1]; nv],
            values: vec![0.0; nv],
            jac: vec![vec![0.0; nv]; nv],
        }
    }

    /// Fills `ws.values` with `psi(xy)` using the power table.
    pub fn eval_into(&self, xy: &[f64], ws: &mut RealWorkspace) {
        for (v, &x) in xy.iter().enumerate() {
            let row = &mut ws.powers[v];
            for p in 1..row.len() {
                row[p] = row[p - 1] * x;
            }
        }
        for (out, c) in ws.values.iter_mut().zip(&self.components) {
            *out = c.eval_table(&ws.powers);
        }
    }

    /// `det J_psi` at the point most recently passed to [`RealSystem::eval_into`].
    pub fn jac_det_from(&self, ws: &mut RealWorkspace) -> f64 {
        for (r, row) in self.jac.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                ws.jac[r][c] = p.eval_table(&ws.powers);
            }
        }
        numeric::det_real(&ws.jac)
    }
}

#[derive(Debug, Clone)]
pub struct RealWorkspace {
    powers: Vec<Vec<f64>>,
    pub values: Vec<f64>,
    jac: RealMatrix,
}
