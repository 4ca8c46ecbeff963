//! Dense square matrices over the rationals.

use std::fmt;
use std::ops::Mul;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        RatMatrix { n, data: vec![BigRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        RatMatrix { n, data: (0..n * n).map(|k| f(k / n, k % n)).collect() }
    }

    /// Exact conversion when every entry is an integer-valued float.
    pub fn from_integral_f64(m: &DMatrix<f64>) -> Option<Self> {
        let n = m.nrows();
        if m.ncols() != n {
            return None;
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let x = m[(i, j)];
                if x.fract() != 0.0 || !x.is_finite() {
                    return None;
                }
                data.push(BigRational::from_integer(BigInt::from(x as i64)));
            }
        }
        Some(RatMatrix { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.data[i * self.n + j] = x;
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).to_f64().unwrap_or(f64::NAN))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Determinant by Gaussian elimination over the rationals.
    pub fn determinant(&self) -> BigRational {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return BigRational::zero();
            };
            if p != col {
                for k in 0..n {
                    a.swap(p * n + k, col * n + k);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let f = &a[r * n + col] / &pivot;
                for k in col..n {
                    let sub = &f * &a[col * n + k];
                    a[r * n + k] -= sub;
                }
            }
        }
        det
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        let n = self.n;
        let mut out = RatMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Basis of the null space of a `rows x cols` rational matrix (row-major).
pub fn rational_nullspace(rows: usize, cols: usize, a: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut m = a.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
            continue;
        };
        for k in 0..cols {
            m.swap(p * cols + k, r * cols + k);
        }
        let inv = m[r * cols + c].recip();
        for k in 0..cols {
            m[r * cols + k] *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i * cols + c].is_zero() {
                let f = m[i * cols + c].clone();
                for k in 0..cols {
                    let sub = &f * &m[r * cols + k];
                    m[i * cols + k] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row * cols + f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn determinant_and_product() {
        let m = RatMatrix::from_fn(3, |i, j| int([[2, -1, -1], [-1, 2, -1], [-4, -1, 2]][i][j]));
        assert_eq!(m.determinant(), int(-9));
        let id = RatMatrix::identity(3);
        assert_eq!(&m * &id, m);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = vec![int(1), int(2), int(3)];
        let ns = rational_nullspace(1, 3, &a);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot: BigRational = v.iter().zip(&a).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
    }
}
