//! Dense LU factorization with partial pivoting, generic over the scalar.

use crate::error::{Error, Result};
use crate::numcore::real::Real;

/// Row-major square matrix.
#[derive(Clone, Debug)]
pub struct Matrix<T> {
    pub n: usize,
    pub data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let row = &self.data[i * n..(i + 1) * n];
                let mut acc = T::zero();
                for (a, b) in row.iter().zip(x) {
                    acc += *a * *b;
                }
                acc
            })
            .collect()
    }

    pub fn matmul(&self, other: &Matrix<T>) -> Matrix<T> {
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                let orow = &other.data[k * n..(k + 1) * n];
                let drow = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in drow.iter_mut().zip(orow) {
                    *d += a * *b;
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Lu<T> {
    lu: Matrix<T>,
    perm: Vec<usize>,
    sign: f64,
}

impl<T: Real> Lu<T> {
    pub fn factor(mut a: Matrix<T>) -> Result<Self> {
        let n = a.n;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let mut p = k;
            let mut best = a.get(k, k).abs();
            for i in k + 1..n {
                let v = a.get(i, k).abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best.to_f64() == 0.0 {
                return Err(Error::Singular(format!("zero pivot in column {k}")));
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let piv = a.get(k, k);
            let inv = T::one() / piv;
            for i in k + 1..n {
                let l = a.get(i, k) * inv;
                a.set(i, k, l);
                if l.to_f64() == 0.0 {
                    continue;
                }
                let (top, bottom) = a.data.split_at_mut(i * n);
                let krow = &top[k * n + k + 1..k * n + n];
                let irow = &mut bottom[k + 1..n];
                for (x, y) in irow.iter_mut().zip(krow) {
                    *x -= l * *y;
                }
            }
        }
        Ok(Lu { lu: a, perm, sign })
    }

    /// ln|det| and the sign of the determinant.
    pub fn log_det(&self) -> (f64, f64) {
        let mut logabs = 0.0;
        let mut sign = self.sign;
        for k in 0..self.lu.n {
            let d = self.lu.get(k, k);
            if d.to_f64() < 0.0 {
                sign = -sign;
            }
            logabs += d.ln_abs();
        }
        (logabs, sign)
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.lu.n;
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = &self.lu.data[i * n..i * n + i];
            let mut acc = x[i];
            for (l, y) in row.iter().zip(&x[..i]) {
                acc -= *l * *y;
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let row = &self.lu.data[i * n + i + 1..(i + 1) * n];
            let mut acc = x[i];
            for (u, y) in row.iter().zip(&x[i + 1..]) {
                acc -= *u * *y;
            }
            x[i] = acc / self.lu.get(i, i);
        }
        x
    }

    pub fn inverse(&self) -> Matrix<T> {
        let n = self.lu.n;
        let mut inv = Matrix::zeros(n);
        let mut e = vec![T::zero(); n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = T::zero());
            e[j] = T::one();
            let col = self.solve(&e);
            for (i, v) in col.into_iter().enumerate() {
                inv.set(i, j, v);
            }
        }
        inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::dd::Dd;

    #[test]
    fn solve_and_det_small() {
        let mut a = Matrix::<f64>::zeros(3);
        let vals = [[2.0, 1.0, 1.0], [4.0, -6.0, 0.0], [-2.0, 7.0, 2.0]];
        for i in 0..3 {
            for j in 0..3 {
                a.set(i, j, vals[i][j]);
            }
        }
        let lu = Lu::factor(a.clone()).unwrap();
        let (l, s) = lu.log_det();
        assert!((s * l.exp() - -16.0).abs() < 1e-12);
        let x = lu.solve(&[5.0, -2.0, 9.0]);
        let r = a.mul_vec(&x);
        for (ri, bi) in r.iter().zip([5.0, -2.0, 9.0]) {
            assert!((ri - bi).abs() < 1e-13);
        }
    }

    #[test]
    fn hilbert_in_double_double() {
        // cond(H_8) is about 1.5e10, far beyond what f64 resolves to 1e-20.
        let n = 8;
        let mut a = Matrix::<Dd>::zeros(n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, Dd::from_f64(1.0) / Dd::from_f64((i + j + 1) as f64));
            }
        }
        let lu = Lu::factor(a.clone()).unwrap();
        let inv = lu.inverse();
        let prod = a.matmul(&inv);
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((prod.get(i, j).to_f64() - want).abs() < 1e-20);
            }
        }
    }
}
