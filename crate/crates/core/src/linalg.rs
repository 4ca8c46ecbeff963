//! Dense numeric helpers shared by the classification, Cartan and Lorentz
//! code: inertia of symmetric matrices, numeric rank and determinants.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default relative tolerance for eigenvalue and singular-value cut-offs.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Indices of inertia `(p, q, r)` of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignatureTriple {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub tolerance: f64,
}

impl SignatureTriple {
    pub fn dimension(&self) -> usize {
        self.positive + self.negative + self.zero
    }

    pub fn triple(&self) -> (usize, usize, usize) {
        (self.positive, self.negative, self.zero)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {gap:e}")]
    Asymmetric { i: usize, j: usize, gap: f64 },
}

/// Eigenvalue sign counts of a symmetric matrix. Eigenvalues with
/// `|lambda| < tol * spectral_radius` count as zero.
pub fn signature(m: &DMatrix<f64>, tol: f64) -> Result<SignatureTriple, LinalgError> {
    let n = check_square(m)?;
    let scale = m.amax().max(1.0);
    for i in 0..n {
        for j in i + 1..n {
            let gap = (m[(i, j)] - m[(j, i)]).abs();
            if gap > tol * scale {
                return Err(LinalgError::Asymmetric { i, j, gap });
            }
        }
    }
    let eig = symmetric_eigenvalues(m);
    Ok(inertia(&eig, tol))
}

pub(crate) fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let sym = (m + m.transpose()) * 0.5;
    sym.symmetric_eigenvalues().iter().copied().collect()
}

pub(crate) fn inertia(eigenvalues: &[f64], tol: f64) -> SignatureTriple {
    let radius = eigenvalues.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let cut = tol * radius;
    let mut sig = SignatureTriple { positive: 0, negative: 0, zero: 0, tolerance: tol };
    for &x in eigenvalues {
        if radius == 0.0 || x.abs() < cut {
            sig.zero += 1;
        } else if x > 0.0 {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
    }
    sig
}

/// Moduli of the eigenvalues of a square matrix, or `None` when the Schur
/// iteration does not converge. Symmetric input goes through the symmetric
/// solver.
pub(crate) fn eigenvalue_moduli(m: &DMatrix<f64>) -> Option<Vec<f64>> {
    if m.nrows() == 0 {
        return Some(Vec::new());
    }
    if m == &m.transpose() {
        return Some(m.clone().symmetric_eigenvalues().iter().map(|x| x.abs()).collect());
    }
    let schur = m.clone().try_schur(f64::EPSILON, 100_000)?;
    Some(schur.complex_eigenvalues().iter().map(|z| z.norm()).collect())
}

/// Number of singular values above `tol * sigma_max`.
pub fn numeric_rank(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().singular_values();
    let max = sv.iter().fold(0.0f64, |a, &x| a.max(x));
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&x| x > tol * max).count()
}

pub fn determinant(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 1.0;
    }
    m.clone().determinant()
}

fn check_square(m: &DMatrix<f64>) -> Result<usize, LinalgError> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    Ok(m.nrows())
}

/// Principal submatrix on the given indices.
pub fn principal(m: &DMatrix<f64>, idx: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])])
}

/// Connected components of the graph with an edge wherever `m[i][j]` or
/// `m[j][i]` is nonzero.
pub fn support_components(m: &DMatrix<f64>) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && i != j && (m[(i, j)] != 0.0 || m[(j, i)] != 0.0) {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}
