//! Gram matrices of hyperbolic polytopes and their realization by unit
//! normals in Minkowski space `R^{d,1}`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::classify::cosine_matrix;
use crate::diagram::{CoxeterMatrix, Label};
use crate::linalg::{self, SignatureTriple};
use crate::moussong::{moussong_hyperbolic, MoussongWitness};

/// Literal description of the quadratic form of every realization.
pub const FORM: &str = "diag(+1..+1,-1)";

#[derive(Debug, Error, PartialEq)]
pub enum LorentzError {
    #[error("Gram matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("Gram matrix is not symmetric at ({i}, {j})")]
    Asymmetric { i: usize, j: usize },
    #[error("signature {p}+ {q}- {r}0 is not Lorentzian")]
    NotLorentzian { p: usize, q: usize, r: usize },
    #[error("Gram entry ({a}, {b}) = {found} is incompatible with label {label} (expected {expected})")]
    Incompatible { a: usize, b: usize, label: Label, expected: f64, found: f64 },
    #[error("Gram matrix is {gram}x{gram} but the Coxeter matrix has rank {rank}")]
    SizeMismatch { gram: usize, rank: usize },
    #[error("a polygon needs at least 3 angles, got {0}")]
    TooFewAngles(usize),
    #[error("angle {0} is outside [0, pi)")]
    AngleOutOfRange(String),
    #[error("dimension must be at least 2, got {0}")]
    SmallDimension(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub entries: DMatrix<f64>,
    pub dimension_hint: Option<usize>,
}

impl GramMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self, LorentzError> {
        if entries.nrows() != entries.ncols() {
            return Err(LorentzError::NotSquare { rows: entries.nrows(), cols: entries.ncols() });
        }
        let n = entries.nrows();
        for i in 0..n {
            for j in i + 1..n {
                if (entries[(i, j)] - entries[(j, i)]).abs() > 1e-12 {
                    return Err(LorentzError::Asymmetric { i, j });
                }
            }
        }
        Ok(GramMatrix { entries, dimension_hint: None })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LorentzError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(LorentzError::NotSquare { rows: n, cols: bad.len() });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }
}

/// Half the Cosine matrix.
pub fn gram_from_coxeter(m: &CoxeterMatrix) -> GramMatrix {
    GramMatrix { entries: cosine_matrix(m).entries * 0.5, dimension_hint: None }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramReport {
    pub irreducible: bool,
    pub signature: SignatureTriple,
    pub unit_diagonal: bool,
    pub nonpositive_off_diagonal: bool,
    pub vinberg_ok: bool,
    /// `d` when the signature is `(d, 1, r)`.
    pub dimension: Option<usize>,
}

pub fn validate_gram(g: &GramMatrix, tol: f64) -> GramReport {
    let e = &g.entries;
    let n = g.size();
    let signature = linalg::signature(e, tol).expect("GramMatrix is symmetric");
    let irreducible = n > 0 && linalg::support_components(e).len() == 1;
    let unit_diagonal = (0..n).all(|i| (e[(i, i)] - 1.0).abs() <= tol);
    let nonpositive_off_diagonal =
        (0..n).all(|i| (0..n).all(|j| i == j || e[(i, j)] <= tol));
    let dimension = (signature.negative == 1).then_some(signature.positive);
    GramReport {
        vinberg_ok: irreducible && unit_diagonal && nonpositive_off_diagonal && dimension.is_some(),
        irreducible,
        signature,
        unit_diagonal,
        nonpositive_off_diagonal,
        dimension,
    }
}

/// Unit normals `u_i` in `R^{d,1}` with `<u_i, u_j> = g_ij`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LorentzRealization {
    pub d: usize,
    #[serde(serialize_with = "serialize_vectors")]
    pub normals: Vec<DVector<f64>>,
    pub form: &'static str,
}

fn serialize_vectors<S: Serializer>(v: &[DVector<f64>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.iter().copied().collect::<Vec<f64>>()))
}

/// `x_1 y_1 + ... + x_d y_d - x_{d+1} y_{d+1}`.
pub fn lorentz_product(x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    let n = x.len();
    x.iter().zip(y.iter()).enumerate().map(|(i, (a, b))| if i + 1 == n { -a * b } else { a * b }).sum()
}

/// The form `J = diag(1, ..., 1, -1)` on `R^{d,1}`.
pub fn form_matrix(d: usize) -> DMatrix<f64> {
    DMatrix::from_fn(d + 1, d + 1, |i, j| match (i == j, i == d) {
        (true, true) => -1.0,
        (true, false) => 1.0,
        _ => 0.0,
    })
}

/// Factorizes `G` through its eigendecomposition, dropping the radical.
///
/// A positive semidefinite degenerate `G` (no negative eigenvalue, nonzero
/// radical) is realized with a vanishing time coordinate.
pub fn realize_normals(g: &GramMatrix, tol: f64) -> Result<LorentzRealization, LorentzError> {
    let n = g.size();
    let sym = (&g.entries + g.entries.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let sig = linalg::inertia(&values, tol);
    let lorentzian = sig.negative == 1 || (sig.negative == 0 && sig.zero > 0 && sig.positive > 0);
    if !lorentzian {
        return Err(LorentzError::NotLorentzian { p: sig.positive, q: sig.negative, r: sig.zero });
    }
    let radius = values.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let cut = tol * radius;
    let mut positive: Vec<usize> = (0..n).filter(|&k| values[k] >= cut).collect();
    positive.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let negative: Option<usize> = (0..n).find(|&k| values[k] <= -cut);
    let d = positive.len();
    let normals = (0..n)
        .map(|i| {
            let mut u = DVector::zeros(d + 1);
            for (c, &k) in positive.iter().enumerate() {
                u[c] = values[k].sqrt() * eig.eigenvectors[(i, k)];
            }
            if let Some(k) = negative {
                u[d] = (-values[k]).sqrt() * eig.eigenvectors[(i, k)];
            }
            u
        })
        .collect();
    Ok(LorentzRealization { d, normals, form: FORM })
}

/// Largest `|<u_i, u_j> - g_ij|`.
pub fn gram_reconstruction_error(r: &LorentzRealization, g: &GramMatrix) -> f64 {
    let n = r.normals.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let got = lorentz_product(&r.normals[i], &r.normals[j]);
            worst = worst.max((got - g.entries[(i, j)]).abs());
        }
    }
    worst
}

/// `sigma_i(x) = x - 2 <x, u_i> u_i` as matrices.
pub fn reflections_lorentz(r: &LorentzRealization) -> Vec<DMatrix<f64>> {
    let j = form_matrix(r.d);
    r.normals
        .iter()
        .map(|u| DMatrix::identity(r.d + 1, r.d + 1) - (u * (u.transpose() * &j)) * 2.0)
        .collect()
}

/// `max |sigma^T J sigma - J|`.
pub fn form_preservation_error(sigma: &DMatrix<f64>) -> f64 {
    let j = form_matrix(sigma.nrows() - 1);
    (sigma.transpose() * &j * sigma - &j).amax()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DhReason {
    NotWordHyperbolic { witness: MoussongWitness },
    /// `g_ab` within the tolerance band around `-1`.
    AsymptoticFacets { a: String, b: String, g: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DhReport {
    pub convex_cocompact: bool,
    pub reasons: Vec<DhReason>,
}

/// Absolute width of the band around `-1` used by [`dh_convex_cocompact`].
pub const DH_TOL: f64 = 1e-9;

/// Convex cocompactness of the reflection group of a hyperbolic Coxeter
/// polytope: word-hyperbolic and no asymptotic pair of facets.
///
/// `G` must agree with `-cos(pi/m)` on finite labels; on infinite labels it
/// must be at most `-1` (up to `DH_TOL`).
pub fn dh_convex_cocompact(m: &CoxeterMatrix, g: &GramMatrix) -> Result<DhReport, LorentzError> {
    let n = m.rank();
    if g.size() != n {
        return Err(LorentzError::SizeMismatch { gram: g.size(), rank: n });
    }
    for a in 0..n {
        for b in a + 1..n {
            let label = m.get(a, b);
            let found = g.entries[(a, b)];
            let (ok, expected) = match label {
                Label::Finite(k) => {
                    let want = -(PI / k as f64).cos();
                    ((found - want).abs() <= 1e-9, want)
                }
                Label::Infinity => (found <= -1.0 + DH_TOL, -1.0),
            };
            if !ok {
                return Err(LorentzError::Incompatible { a, b, label, expected, found });
            }
        }
    }
    let mut reasons = Vec::new();
    if let Some(witness) = moussong_hyperbolic(m).witness {
        reasons.push(DhReason::NotWordHyperbolic { witness });
    }
    for a in 0..n {
        for b in a + 1..n {
            let v = g.entries[(a, b)];
            if (v + 1.0).abs() < DH_TOL {
                reasons.push(DhReason::AsymptoticFacets {
                    a: m.nodes()[a].clone(),
                    b: m.nodes()[b].clone(),
                    g: v,
                });
            }
        }
    }
    Ok(DhReport { convex_cocompact: reasons.is_empty(), reasons })
}

/// Interior angle of a polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    /// The angle `pi * r`.
    PiFraction(Ratio<i64>),
    Radians(f64),
}

impl Angle {
    pub fn radians(self) -> f64 {
        match self {
            Angle::PiFraction(r) => PI * *r.numer() as f64 / *r.denom() as f64,
            Angle::Radians(x) => x,
        }
    }
}

/// Whether a compact hyperbolic polygon with these angles exists: the angle
/// sum must be strictly below `(n - 2) pi`. Exact when every angle is a
/// rational multiple of `pi`.
pub fn polygon_exists(angles: &[Angle]) -> Result<bool, LorentzError> {
    let n = angles.len();
    if n < 3 {
        return Err(LorentzError::TooFewAngles(n));
    }
    let mut exact = Some(Ratio::from_integer(0i64));
    for &a in angles {
        let ok = match a {
            Angle::PiFraction(r) => r >= Ratio::from_integer(0) && r < Ratio::from_integer(1),
            Angle::Radians(x) => (0.0..PI).contains(&x),
        };
        if !ok {
            return Err(LorentzError::AngleOutOfRange(format!("{a:?}")));
        }
        exact = match (exact, a) {
            (Some(sum), Angle::PiFraction(r)) => Some(sum + r),
            _ => None,
        };
    }
    let bound = (n - 2) as i64;
    Ok(match exact {
        Some(sum) => sum < Ratio::from_integer(bound),
        None => angles.iter().map(|a| a.radians()).sum::<f64>() < bound as f64 * PI,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Feasibility {
    /// Excluded by the known upper bound.
    Impossible,
    /// Examples are known in this dimension.
    KnownExample,
    /// Below the bound, but no example is known.
    Open,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionVerdict {
    pub feasibility: Feasibility,
    pub bound: u32,
    pub note: String,
}

/// Known constraints on the dimension of hyperbolic Coxeter polytopes.
pub fn dimension_bounds(d: u32, compact: bool, right_angled: bool) -> Result<DimensionVerdict, LorentzError> {
    if d < 2 {
        return Err(LorentzError::SmallDimension(d));
    }
    let (bound, known, note) = match (compact, right_angled) {
        (true, false) => (29, d <= 8, "compact examples are known up to dimension 8"),
        (false, false) => {
            (995, d <= 21 && d != 20, "finite-volume examples are known up to dimension 21, except 20")
        }
        (true, true) => (4, d <= 4, "right-angled compact examples are known up to dimension 4"),
        (false, true) => (12, d <= 8, "right-angled finite-volume examples are known up to dimension 8"),
    };
    let feasibility = if d > bound {
        Feasibility::Impossible
    } else if known {
        Feasibility::KnownExample
    } else {
        Feasibility::Open
    };
    Ok(DimensionVerdict { feasibility, bound, note: note.to_string() })
}
