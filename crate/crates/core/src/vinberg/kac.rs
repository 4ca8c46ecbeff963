//! Integral rank-3 Cartan matrices whose reflection groups lie in
//! `SL^±(3, Z)` but preserve no hyperbolic plane.

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::cartan::CartanMatrix;
use super::exact::{rational_nullspace, RatMatrix};
use super::simplex::tits_simplex;
use super::VinbergError;
use crate::linalg::{determinant, signature, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantForm {
    pub matrix: Vec<Vec<f64>>,
    /// `(positive, negative, zero)`, sign chosen so that positive >= negative.
    pub signature: (usize, usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KacVinbergReport {
    pub integral: bool,
    pub negative_det: bool,
    /// `a_12 a_23 a_31 != a_13 a_32 a_21`.
    pub cyclic_asymmetric: bool,
    /// Every reflection has integer entries and determinant `-1`.
    pub in_sl3z: bool,
    /// Dimension of the space of symmetric forms preserved by all reflections.
    pub solution_dimension: usize,
    /// A nondegenerate invariant form, when one exists.
    pub invariant_form: Option<InvariantForm>,
    /// All three conditions hold.
    pub kac_vinberg: bool,
}

/// Symmetric 3x3 basis: `E_00, E_11, E_22, E_01 + E_10, E_02 + E_20, E_12 + E_21`.
const PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)];

pub fn kac_vinberg_check(a: &CartanMatrix) -> Result<KacVinbergReport, VinbergError> {
    if a.rank() != 3 {
        return Err(VinbergError::WrongSize { expected: 3, found: a.rank() });
    }
    let simplex = tits_simplex(a);
    let (negative_det, cyclic_asymmetric, in_sl3z, basis) = match (a.exact(), &simplex.exact_reflections) {
        (Some(e), Some(refl)) => {
            let g = |i: usize, j: usize| e.get(i, j).clone();
            let cyc = g(0, 1) * g(1, 2) * g(2, 0) != g(0, 2) * g(2, 1) * g(1, 0);
            let sl = refl.iter().all(|r| r.is_integral() && r.determinant().abs().is_one());
            let basis = exact_invariant_forms(refl);
            (e.determinant().is_negative(), cyc, sl, basis)
        }
        _ => {
            let g = |i: usize, j: usize| a.get(i, j);
            let lhs = g(0, 1) * g(1, 2) * g(2, 0);
            let rhs = g(0, 2) * g(2, 1) * g(1, 0);
            let cyc = (lhs - rhs).abs() > DEFAULT_TOL * lhs.abs().max(rhs.abs()).max(1.0);
            let basis = float_invariant_forms(&simplex.reflections);
            (determinant(a.entries()) < 0.0, cyc, false, basis)
        }
    };
    let integral = a.exact().is_some_and(|e| e.is_integral());
    let solution_dimension = basis.len();
    let invariant_form = nondegenerate(&basis);
    Ok(KacVinbergReport {
        integral,
        negative_det,
        cyclic_asymmetric,
        in_sl3z,
        solution_dimension,
        invariant_form,
        kac_vinberg: integral && negative_det && cyclic_asymmetric,
    })
}

fn exact_invariant_forms(refl: &[RatMatrix]) -> Vec<Vec<f64>> {
    let mut rows: Vec<BigRational> = Vec::new();
    for r in refl {
        let rt = r.transpose();
        let images: Vec<RatMatrix> = PAIRS
            .iter()
            .map(|&(i, j)| {
                let e = basis_matrix_exact(i, j);
                let mut m = &(&rt * &e) * r;
                for k in 0..3 {
                    for l in 0..3 {
                        let v = m.get(k, l) - e.get(k, l);
                        m.set(k, l, v);
                    }
                }
                m
            })
            .collect();
        for &(p, q) in &PAIRS {
            rows.extend(images.iter().map(|m| m.get(p, q).clone()));
        }
    }
    rational_nullspace(rows.len() / 6, 6, &rows)
        .into_iter()
        .map(|v| v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
        .collect()
}

fn basis_matrix_exact(i: usize, j: usize) -> RatMatrix {
    let mut e = RatMatrix::zeros(3);
    e.set(i, j, BigRational::one());
    e.set(j, i, BigRational::one());
    e
}

fn basis_matrix(i: usize, j: usize) -> DMatrix<f64> {
    let mut e = DMatrix::zeros(3, 3);
    e[(i, j)] = 1.0;
    e[(j, i)] = 1.0;
    e
}

fn float_invariant_forms(refl: &[DMatrix<f64>]) -> Vec<Vec<f64>> {
    let mut sys = DMatrix::zeros(6 * refl.len(), 6);
    for (k, r) in refl.iter().enumerate() {
        for (c, &(i, j)) in PAIRS.iter().enumerate() {
            let e = basis_matrix(i, j);
            let m = r.transpose() * &e * r - &e;
            for (row, &(p, q)) in PAIRS.iter().enumerate() {
                sys[(6 * k + row, c)] = m[(p, q)];
            }
        }
    }
    let svd = sys.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let max = svd.singular_values.max();
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|&(_, &x)| x <= DEFAULT_TOL * max.max(1.0))
        .map(|(k, _)| v_t.row(k).iter().copied().collect())
        .collect()
}

fn form(coords: &[f64]) -> DMatrix<f64> {
    let mut b = DMatrix::zeros(3, 3);
    for (&x, &(i, j)) in coords.iter().zip(&PAIRS) {
        b[(i, j)] = x;
        b[(j, i)] = x;
    }
    b
}

fn nondegenerate(basis: &[Vec<f64>]) -> Option<InvariantForm> {
    let mut candidates: Vec<Vec<f64>> = basis.to_vec();
    if basis.len() > 1 {
        candidates.push(
            (0..6)
                .map(|c| basis.iter().enumerate().map(|(k, v)| (k + 1) as f64 * v[c]).sum())
                .collect(),
        );
    }
    candidates.into_iter().find_map(|v| {
        let mut b = form(&v);
        let scale = b.amax();
        if scale.is_zero() || determinant(&b).abs() <= DEFAULT_TOL * scale.powi(3) {
            return None;
        }
        b /= scale;
        let mut sig = signature(&b, DEFAULT_TOL).ok()?;
        if sig.negative > sig.positive {
            b = -b;
            std::mem::swap(&mut sig.negative, &mut sig.positive);
        }
        Some(InvariantForm {
            matrix: (0..3).map(|i| (0..3).map(|j| b[(i, j)]).collect()).collect(),
            signature: sig.triple(),
        })
    })
}
