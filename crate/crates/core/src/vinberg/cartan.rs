//! Cartan matrices and their compatible Coxeter matrices.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_traits::Zero;
use serde::Serialize;

use super::exact::RatMatrix;
use super::VinbergError;
use crate::classify::cosine_matrix;
use crate::diagram::{default_names, CoxeterMatrix, Label};

/// Entries within this distance of an integer are snapped to it when a Cartan
/// matrix is built from a Coxeter matrix.
pub const SNAP_TOL: f64 = 1e-12;

/// A Cartan matrix: `a_ss = 2`, `a_st <= 0` off the diagonal, and
/// `a_st = 0` exactly when `a_ts = 0`.
///
/// When every entry is an integer the matrix also carries an exact copy,
/// which switches group enumeration and involution checks to exact arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct CartanMatrix {
    nodes: Vec<String>,
    entries: DMatrix<f64>,
    exact: Option<RatMatrix>,
}

impl CartanMatrix {
    pub fn new(nodes: Vec<String>, entries: DMatrix<f64>) -> Result<Self, VinbergError> {
        validate(&entries)?;
        if nodes.len() != entries.nrows() {
            return Err(VinbergError::NodeCount { nodes: nodes.len(), size: entries.nrows() });
        }
        let exact = RatMatrix::from_integral_f64(&entries);
        Ok(CartanMatrix { nodes, entries, exact })
    }

    /// Rows of numbers, nodes named `s0, s1, ...`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, VinbergError> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(VinbergError::NotSquare { rows: n, cols: r.len() });
        }
        Self::new(default_names(n), DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// Exact rational entries.
    pub fn from_rational(nodes: Vec<String>, exact: RatMatrix) -> Result<Self, VinbergError> {
        let entries = exact.to_f64();
        validate(&entries)?;
        if nodes.len() != entries.nrows() {
            return Err(VinbergError::NodeCount { nodes: nodes.len(), size: entries.nrows() });
        }
        Ok(CartanMatrix { nodes, entries, exact: Some(exact) })
    }

    /// The Cosine matrix of `m` as a Cartan matrix.
    pub fn cosine(m: &CoxeterMatrix) -> Self {
        cartan_from_coxeter(m, &CartanSpec::default()).expect("defaults are always valid")
    }

    pub fn rank(&self) -> usize {
        self.entries.nrows()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn exact(&self) -> Option<&RatMatrix> {
        self.exact.as_ref()
    }

    pub fn get(&self, s: usize, t: usize) -> f64 {
        self.entries[(s, t)]
    }

    /// `a_st a_ts`.
    pub fn product(&self, s: usize, t: usize) -> f64 {
        self.entries[(s, t)] * self.entries[(t, s)]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.rank()).map(|i| (0..self.rank()).map(|j| self.entries[(i, j)]).collect()).collect()
    }

    pub fn principal(&self, idx: &[usize]) -> CartanMatrix {
        let entries = DMatrix::from_fn(idx.len(), idx.len(), |i, j| self.entries[(idx[i], idx[j])]);
        let exact = self
            .exact
            .as_ref()
            .map(|e| RatMatrix::from_fn(idx.len(), |i, j| e.get(idx[i], idx[j]).clone()));
        CartanMatrix { nodes: idx.iter().map(|&i| self.nodes[i].clone()).collect(), entries, exact }
    }

    /// `D A D^{-1}` for the positive diagonal `D = diag(d)`.
    pub fn conjugated(&self, d: &[f64]) -> Result<CartanMatrix, VinbergError> {
        let n = self.rank();
        let entries = DMatrix::from_fn(n, n, |i, j| d[i] * self.entries[(i, j)] / d[j]);
        CartanMatrix::new(self.nodes.clone(), entries)
    }

    /// Connected components of the support graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        crate::linalg::support_components(&self.entries)
    }

    pub fn is_irreducible(&self) -> bool {
        self.rank() > 0 && self.components().len() == 1
    }
}

fn validate(a: &DMatrix<f64>) -> Result<(), VinbergError> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(VinbergError::NotSquare { rows: n, cols: a.ncols() });
    }
    for s in 0..n {
        for t in 0..n {
            let x = a[(s, t)];
            if !x.is_finite() {
                return Err(VinbergError::NotFinite { s, t });
            }
            if s == t {
                if x != 2.0 {
                    return Err(VinbergError::Diagonal { s, value: x });
                }
            } else if x > 0.0 {
                return Err(VinbergError::PositiveOffDiagonal { s, t, value: x });
            } else if (x == 0.0) != (a[(t, s)] == 0.0) {
                return Err(VinbergError::ZeroPattern { s, t });
            }
        }
    }
    Ok(())
}

/// Coxeter label of a pair with product `p = a_st a_ts`, or `None` when `p`
/// is not of the form `4 cos^2(pi/m)`.
pub fn label_for_product(p: f64, tol: f64) -> Option<Label> {
    if p >= 4.0 - tol {
        return Some(Label::Infinity);
    }
    if p.abs() <= tol {
        return Some(Label::TWO);
    }
    let m = PI / (p.max(0.0).sqrt() / 2.0).acos();
    let r = m.round();
    (r >= 2.0 && (m - r).abs() <= tol).then_some(Label::Finite(r as u32))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CartanReport {
    pub valid: bool,
    pub coxeter_type: bool,
    /// First pair whose product is not `4 cos^2(pi/m)`.
    pub offending_pair: Option<(usize, usize, f64)>,
    pub compatible_coxeter: Option<CoxeterMatrix>,
}

/// Validates a Cartan matrix and finds its compatible Coxeter matrix.
pub fn cartan_analyze(a: &DMatrix<f64>, tol: f64) -> Result<CartanReport, VinbergError> {
    validate(a)?;
    let n = a.nrows();
    let mut labels = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            let p = a[(s, t)] * a[(t, s)];
            match label_for_product(p, tol) {
                Some(l) => labels.push((s, t, l)),
                None => {
                    return Ok(CartanReport {
                        valid: true,
                        coxeter_type: false,
                        offending_pair: Some((s, t, p)),
                        compatible_coxeter: None,
                    })
                }
            }
        }
    }
    Ok(CartanReport {
        valid: true,
        coxeter_type: true,
        offending_pair: None,
        compatible_coxeter: Some(CoxeterMatrix::with_labels(n, &labels)),
    })
}

/// The compatible Coxeter matrix of a Cartan matrix of Coxeter type, with the
/// Cartan matrix's node names.
pub fn compatible_coxeter(a: &CartanMatrix, tol: f64) -> Result<CoxeterMatrix, VinbergError> {
    let rep = cartan_analyze(a.entries(), tol)?;
    match (rep.compatible_coxeter, rep.offending_pair) {
        (Some(m), _) => Ok(m.with_node_names(a.nodes().to_vec()).expect("Cartan node names are unique")),
        (None, Some((s, t, product))) => Err(VinbergError::NotCoxeterType { s, t, product }),
        (None, None) => unreachable!("a report without Coxeter matrix names a pair"),
    }
}

/// Free parameters of a Cartan matrix compatible with a given Coxeter matrix.
/// Pairs are keyed by `(s, t)` with `s < t`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CartanSpec {
    /// Product `a_st a_ts` (at least 4) for pairs labeled `inf`; default 4.
    pub infinity_products: BTreeMap<(usize, usize), f64>,
    /// Ratio `a_st / a_ts` (positive); default 1.
    pub asymmetry: BTreeMap<(usize, usize), f64>,
}

fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= SNAP_TOL {
        r
    } else {
        x
    }
}

pub fn cartan_from_coxeter(m: &CoxeterMatrix, spec: &CartanSpec) -> Result<CartanMatrix, VinbergError> {
    let n = m.rank();
    let cos = cosine_matrix(m).entries;
    let mut a = DMatrix::from_element(n, n, 0.0);
    for s in 0..n {
        a[(s, s)] = 2.0;
        for t in s + 1..n {
            let label = m.get(s, t);
            let product = match label {
                Label::Infinity => {
                    let p = spec.infinity_products.get(&(s, t)).copied().unwrap_or(4.0);
                    if p.is_nan() || p < 4.0 {
                        return Err(VinbergError::InfiniteProductTooSmall { s, t, product: p });
                    }
                    p
                }
                Label::Finite(_) => cos[(s, t)] * cos[(s, t)],
            };
            if product.is_zero() {
                continue;
            }
            let ratio = spec.asymmetry.get(&(s, t)).copied().unwrap_or(1.0);
            if !(ratio > 0.0 && ratio.is_finite()) {
                return Err(VinbergError::InvalidAsymmetry { s, t, ratio });
            }
            if ratio == 1.0 && !label.is_infinite() {
                a[(s, t)] = snap(cos[(s, t)]);
                a[(t, s)] = snap(cos[(s, t)]);
            } else {
                a[(s, t)] = snap(-(product * ratio).sqrt());
                a[(t, s)] = snap(-(product / ratio).sqrt());
            }
        }
    }
    CartanMatrix::new(m.nodes().to_vec(), a)
}
