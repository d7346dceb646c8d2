//! Exact integer and rational linear algebra used by the hull engine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, Signed, Zero};

/// Bareiss fraction-free determinant. Returns `None` on overflow.
fn bareiss<T>(mut m: Vec<Vec<T>>) -> Option<T>
where
    T: Integer + Signed + Clone + CheckedMul + CheckedSub,
{
    let n = m.len();
    if n == 0 {
        return Some(T::one());
    }
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Some(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(&m[k][k])?;
                let b = m[i][k].checked_mul(&m[k][j])?;
                m[i][j] = a.checked_sub(&b)? / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    Some(sign * m[n - 1][n - 1].clone())
}

/// Exact determinant of a small integer matrix; falls back to big integers on overflow.
pub(crate) fn det(m: &[Vec<i128>]) -> BigInt {
    if let Some(v) = bareiss(m.to_vec()) {
        return BigInt::from(v);
    }
    let big: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    bareiss(big).expect("big integer arithmetic does not overflow")
}

/// Determinant as `i128`, or `None` if it (or an intermediate) overflows.
pub(crate) fn det_i128(m: &[Vec<i128>]) -> Option<i128> {
    bareiss(m.to_vec())
}

fn gcd_row(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in row.iter_mut() {
            *x /= g;
        }
    }
}

/// Incremental row echelon form over the integers; answers "is this vector independent
/// of the rows so far?".
#[derive(Debug, Clone, Default)]
pub(crate) struct Echelon {
    rows: Vec<(usize, Vec<i128>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[i128]) -> Vec<i128> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c == 0 {
                continue;
            }
            let p = row[*pivot];
            let g = p.gcd(&c);
            let (pm, cm) = (p / g, c / g);
            for (x, r) in v.iter_mut().zip(row) {
                *x = x
                    .checked_mul(pm)
                    .and_then(|a| (*r).checked_mul(cm).and_then(|b| a.checked_sub(b)))
                    .expect("exact arithmetic overflow in rank computation");
            }
            gcd_row(&mut v);
        }
        v
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was added.
    pub fn insert(&mut self, v: &[i128]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|&x| x != 0) {
            Some(p) => {
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }
}

#[cfg(test)]
fn rank(rows: &[Vec<i128>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Solves `a x = b` exactly by Gauss-Jordan elimination. `None` if `a` is singular.
pub(crate) fn solve_rational(
    mut a: Vec<Vec<BigRational>>,
    mut b: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = BigRational::from_integer(1.into()) / a[col][col].clone();
        for j in col..n {
            a[col][j] = &a[col][j] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in col..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
            }
            let t = &f * &b[col];
            b[r] -= t;
        }
    }
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det(&[vec![1, 2], vec![3, 4]]), BigInt::from(-2));
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        let m = vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]];
        assert_eq!(det(&m), BigInt::from(0));
        let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(det(&m), BigInt::from(4));
    }

    #[test]
    fn overflow_falls_back() {
        let big = 1i128 << 100;
        let m = vec![vec![big, 1], vec![1, big]];
        assert!(det_i128(&m).is_none());
        let expect = BigInt::from(big) * BigInt::from(big) - 1;
        assert_eq!(det(&m), expect);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6]]), 1);
        assert_eq!(rank(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn rational_solve() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve_rational(a, vec![q(3), q(5)]).unwrap();
        assert_eq!(x, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
        assert!(solve_rational(vec![vec![q(1), q(2)], vec![q(2), q(4)]], vec![q(1), q(1)]).is_none());
    }
}
