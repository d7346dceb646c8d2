//! A small infix parser for polynomials, e.g. `"(1/2 + i)*z1^2*z2 - 3"`.
//! Variables are `z1 .. zd`, `i` is the imaginary unit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Exponent, GaussianRational, PolySystem, SparsePoly};
use crate::error::{Error, Result};

type Terms = BTreeMap<Exponent, GaussianRational>;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    dim: usize,
}

fn add(mut a: Terms, b: Terms, sign: bool) -> Terms {
    for (e, c) in b {
        let c = if sign { c } else { -c };
        let slot = a.entry(e).or_insert_with(GaussianRational::zero);
        *slot = &*slot + &c;
    }
    a.retain(|_, c| !c.is_zero());
    a
}

fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert_with(GaussianRational::zero);
            *slot = &*slot + &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::InvalidInput(format!(
            "{msg} at offset {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn constant(&self, c: GaussianRational) -> Terms {
        let mut t = Terms::new();
        if !c.is_zero() {
            t.insert(vec![0; self.dim], c);
        }
        t
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut acc = Terms::new();
        let mut sign = true;
        if let Some(b'-') = self.peek() {
            self.pos += 1;
            sign = false;
        } else if let Some(b'+') = self.peek() {
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = add(acc, t, sign);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = true;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = false;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.power()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            let f = self.power()?;
            acc = mul(&acc, &f);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Terms> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                return Ok(add(Terms::new(), self.power()?, false));
            }
            Some(b'+') => {
                self.pos += 1;
                return self.power();
            }
            _ => {}
        }
        let base = self.factor()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            let e: u32 = self
                .number()?
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            let mut acc = self.constant(GaussianRational::one());
            for _ in 0..e {
                acc = mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn factor(&mut self) -> Result<Terms> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(self.constant(GaussianRational::i()))
            }
            Some(b'z') => {
                self.pos += 1;
                let k: usize = self
                    .number()?
                    .try_into()
                    .map_err(|_| self.err("bad variable index"))?;
                if k == 0 || k > self.dim {
                    return Err(self.err("variable index out of range"));
                }
                let mut e = vec![0; self.dim];
                e[k - 1] = 1;
                let mut t = Terms::new();
                t.insert(e, GaussianRational::one());
                Ok(t)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let mut q = BigRational::from_integer(n);
                // A '/' directly followed by digits is part of the literal.
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.number()?;
                    if d == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                    q /= BigRational::from_integer(d);
                }
                Ok(self.constant(GaussianRational::real(q)))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// Parses one polynomial in `dim` variables. The result may be zero.
pub fn parse_poly(dim: usize, text: &str) -> Result<SparsePoly> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
        dim,
    };
    let terms = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    SparsePoly::from_terms(dim, terms)
}

/// Parses a square system from one expression per component.
pub fn parse_system(dim: usize, polys: &[&str]) -> Result<PolySystem> {
    if polys.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: polys.len(),
        });
    }
    let ps = polys
        .iter()
        .map(|t| parse_poly(dim, t))
        .collect::<Result<Vec<_>>>()?;
    PolySystem::new(ps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_reparses() {
        for e in ["(z1 + z2)^2 - 2*z1*z2", "-1/3*z1^2 + (2 - i)*z2 - 7", "i*z1*z2^3 + z1 - 1/2*i"] {
            let p = parse_poly(2, e).unwrap();
            assert_eq!(parse_poly(2, &p.to_string()).unwrap(), p, "{p}");
        }
    }

    #[test]
    fn parses_products_and_powers() {
        let p = parse_poly(2, "(z1 + z2)^2 - 2*z1*z2").unwrap();
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.coeff(&[2, 0]), Some(&GaussianRational::one()));
        let q = parse_poly(1, "-(1/2 + 3*i)*z1 + 4/6").unwrap();
        assert_eq!(
            q.coeff(&[1]),
            Some(&GaussianRational::new(
                BigRational::new((-1).into(), 2.into()),
                BigRational::from_integer((-3).into())
            ))
        );
        assert_eq!(q.coeff(&[0]).unwrap().re, BigRational::new(2.into(), 3.into()));
    }

    #[test]
    fn unary_signs() {
        let a = parse_poly(1, "z1 + -1*i - -z1^2").unwrap();
        let b = parse_poly(1, "z1^2 + z1 - i").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly(1, "2*-z1^2").unwrap(), parse_poly(1, "-2*z1^2").unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly(1, "z2").is_err());
        assert!(parse_poly(1, "z1 +").is_err());
        assert!(parse_poly(1, "1/0").is_err());
        assert!(parse_poly(1, "z1 )").is_err());
        assert!(parse_poly(1, "z1 - z1").unwrap().is_zero());
    }
}
