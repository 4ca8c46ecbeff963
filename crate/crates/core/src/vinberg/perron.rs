//! Perron type of an irreducible Cartan matrix.
//!
//! `B = 2 Id - A` is nonnegative and irreducible, so its spectral radius
//! `rho` is a simple eigenvalue with a positive eigenvector. The distinguished
//! eigenvalue of `A` is `2 - rho`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::cartan::CartanMatrix;
use super::VinbergError;
use crate::linalg::{eigenvalue_moduli, support_components};

/// Width of the band around zero in which `lambda` counts as zero.
pub const PERRON_ZERO_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PerronKind {
    Positive,
    Zero,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronReport {
    pub lambda: f64,
    /// Positive eigenvector, scaled to maximum entry 1.
    pub eigenvector: Vec<f64>,
    #[serde(rename = "type")]
    pub kind: PerronKind,
    /// Whether `|lambda|` is the smallest eigenvalue modulus of `A`. This holds
    /// for symmetrizable matrices but can fail for other ones.
    pub smallest_modulus: bool,
}

pub fn perron_type(a: &CartanMatrix, tol: f64) -> Result<PerronReport, VinbergError> {
    perron_of_block(a.entries(), tol)
}

pub(crate) fn perron_of_block(a: &DMatrix<f64>, tol: f64) -> Result<PerronReport, VinbergError> {
    let n = a.nrows();
    if n == 0 || support_components(a).len() != 1 {
        return Err(VinbergError::Reducible);
    }
    let b = DMatrix::identity(n, n) * 2.0 - a;
    let (lo, hi) = collatz_wielandt(&b, &power_vector(&b, 2_000));
    let rho = match eigenvalue_moduli(&b) {
        Some(moduli) => moduli.into_iter().fold(0.0f64, f64::max),
        None => (lo + hi) / 2.0,
    };

    // eigenvector: right singular vector of B - rho Id for the smallest
    // singular value
    let shifted = &b - DMatrix::identity(n, n) * rho;
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let k = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .map(|(i, _)| i)
        .expect("nonempty");
    let mut v: DVector<f64> = v_t.row(k).transpose();
    if v.sum() < 0.0 {
        v = -v;
    }
    let max = v.max();
    v /= max;
    if v.iter().any(|&x| x <= 0.0) {
        // fall back to power iteration when the null vector is poorly resolved
        v = power_vector(&b, 10_000);
    }

    let slack = 1e-6 * rho.max(1.0);
    if rho < lo - slack || rho > hi + slack {
        return Err(VinbergError::PerronMismatch { eigen: rho, lower: lo, upper: hi });
    }

    let lambda = 2.0 - rho;
    let kind = if lambda.abs() < tol {
        PerronKind::Zero
    } else if lambda > 0.0 {
        PerronKind::Positive
    } else {
        PerronKind::Negative
    };
    let smallest_modulus = eigenvalue_moduli(a)
        .is_some_and(|moduli| moduli.iter().all(|&mu| lambda.abs() <= mu + 1e-9));
    Ok(PerronReport { lambda, eigenvector: v.iter().copied().collect(), kind, smallest_modulus })
}

/// Power iteration on the primitive matrix `B + Id`; returns a positive vector
/// with maximum entry 1.
fn power_vector(b: &DMatrix<f64>, iterations: usize) -> DVector<f64> {
    let n = b.nrows();
    let m = b + DMatrix::identity(n, n);
    let mut x = DVector::from_element(n, 1.0);
    for _ in 0..iterations {
        let y = &m * &x;
        let max = y.max();
        let next = y / max;
        let done = (&next - &x).amax() < 1e-15;
        x = next;
        if done {
            break;
        }
    }
    x
}

/// Bounds `min (Bx)_i / x_i <= rho <= max (Bx)_i / x_i` for positive `x`.
fn collatz_wielandt(b: &DMatrix<f64>, x: &DVector<f64>) -> (f64, f64) {
    let y = b * x;
    let ratios: Vec<f64> = y.iter().zip(x.iter()).map(|(a, b)| a / b).collect();
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_diagram;

    fn cartan(rows: &[Vec<f64>]) -> CartanMatrix {
        CartanMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn a2_positive() {
        let r = perron_type(&cartan(&[vec![2.0, -1.0], vec![-1.0, 2.0]]), 1e-9).unwrap();
        assert!((r.lambda - 1.0).abs() < 1e-12);
        assert_eq!(r.kind, PerronKind::Positive);
        assert!(r.smallest_modulus);
    }

    #[test]
    fn affine_a1_zero() {
        let r = perron_type(&cartan(&[vec![2.0, -2.0], vec![-2.0, 2.0]]), 1e-9).unwrap();
        assert!(r.lambda.abs() < 1e-12);
        assert_eq!(r.kind, PerronKind::Zero);
        assert!((r.eigenvector[0] - 1.0).abs() < 1e-9 && (r.eigenvector[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn lanner_negative() {
        let m = parse_diagram("nodes a b c d; edge a b 5; edge b c 3; edge c d 5").unwrap().to_matrix();
        let r = perron_type(&CartanMatrix::cosine(&m), 1e-9).unwrap();
        assert_eq!(r.kind, PerronKind::Negative);
        assert!(r.eigenvector.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn reducible_rejected() {
        let a = cartan(&[vec![2.0, 0.0], vec![0.0, 2.0]]);
        assert_eq!(perron_type(&a, 1e-9), Err(VinbergError::Reducible));
    }

    #[test]
    fn asymmetric_eigenvector() {
        let a = cartan(&[vec![2.0, -1.0], vec![-4.0, 2.0]]);
        let r = perron_type(&a, 1e-9).unwrap();
        // eigenvalues of 2 Id - A are +-2
        assert!((r.lambda - 0.0).abs() < 1e-12);
        let b = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 4.0, 0.0]);
        let v = DVector::from_vec(r.eigenvector.clone());
        assert!((&b * &v - &v * 2.0).amax() < 1e-9);
    }
}
