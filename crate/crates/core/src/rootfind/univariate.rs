//! All roots of a dense univariate polynomial: Laguerre iteration with deflation,
//! followed by Newton polishing against the undeflated polynomial.

use num_complex::Complex64;

const EPSS: f64 = 1e-15;
const MR: usize = 8;
const MT: usize = 10;
const FRAC: [f64; MR + 1] = [0.0, 0.5, 0.25, 0.75, 0.13, 0.38, 0.62, 0.88, 1.0];

fn laguerre(a: &[Complex64], mut x: Complex64) -> Complex64 {
    let m = a.len() - 1;
    let mf = m as f64;
    for iter in 1..=MR * MT {
        let mut b = a[m];
        let mut err = b.norm();
        let mut d = Complex64::new(0.0, 0.0);
        let mut f = Complex64::new(0.0, 0.0);
        let abx = x.norm();
        for j in (0..m).rev() {
            f = x * f + d;
            d = x * d + b;
            b = x * b + a[j];
            err = b.norm() + abx * err;
        }
        err *= EPSS;
        if b.norm() <= err {
            return x;
        }
        let g = d / b;
        let g2 = g * g;
        let h = g2 - 2.0 * f / b;
        let sq = ((mf - 1.0) * (mf * h - g2)).sqrt();
        let gp = g + sq;
        let gm = g - sq;
        let (abp, abm) = (gp.norm(), gm.norm());
        let gp = if abp < abm { gm } else { gp };
        let dx = if abp.max(abm) > 0.0 {
            Complex64::new(mf, 0.0) / gp
        } else {
            Complex64::from_polar(1.0 + abx, iter as f64)
        };
        let x1 = x - dx;
        if x == x1 {
            return x;
        }
        if iter % MT != 0 {
            x = x1;
        } else {
            x -= dx * FRAC[iter / MT];
        }
    }
    x
}

fn horner(a: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in a.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Roots of `a[0] + a[1] z + ... + a[n] z^n`, with multiplicity. Trailing zero
/// coefficients are ignored; a constant polynomial has no roots.
pub(crate) fn roots(a: &[Complex64]) -> Vec<Complex64> {
    let n = match a.iter().rposition(|c| c.norm() != 0.0) {
        Some(n) => n,
        None => return Vec::new(),
    };
    let a = &a[..=n];
    let zeros = a.iter().position(|c| c.norm() != 0.0).unwrap();
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    let mut work: Vec<Complex64> = a[zeros..].to_vec();
    while work.len() > 1 {
        let r = laguerre(&work, Complex64::new(0.0, 0.0));
        // Deflate by (z - r).
        let m = work.len() - 1;
        let mut q = vec![Complex64::new(0.0, 0.0); m];
        let mut carry = work[m];
        for j in (0..m).rev() {
            q[j] = carry;
            carry = work[j] + carry * r;
        }
        work = q;
        out.push(r);
    }
    for r in out.iter_mut().skip(zeros) {
        for _ in 0..4 {
            let (p, dp) = horner(a, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *r -= step;
            if step.norm() <= 1e-16 * (1.0 + r.norm()) {
                break;
            }
        }
    }
    out
}
