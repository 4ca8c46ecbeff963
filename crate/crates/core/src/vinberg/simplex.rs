//! Mirror simplices and their projective reflections.

use nalgebra::{DMatrix, DVector};
use num_traits::{One, Zero};

use super::cartan::CartanMatrix;
use super::exact::RatMatrix;
use super::VinbergError;

/// The Tits simplex of a Cartan matrix: `alpha_s = e*_s`, `v_s` the column
/// `s` of `A`, and reflections `sigma_s = Id - alpha_s (x) v_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorSimplex {
    pub cartan: CartanMatrix,
    /// `alpha_s` as row vectors.
    pub alphas: Vec<DVector<f64>>,
    pub vs: Vec<DVector<f64>>,
    pub reflections: Vec<DMatrix<f64>>,
    /// Reflections over the rationals when the Cartan matrix is integral.
    pub exact_reflections: Option<Vec<RatMatrix>>,
}

impl MirrorSimplex {
    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    /// `alpha_s(v_t)`.
    pub fn pairing(&self, s: usize, t: usize) -> f64 {
        self.alphas[s].dot(&self.vs[t])
    }
}

pub fn tits_simplex(a: &CartanMatrix) -> MirrorSimplex {
    let n = a.rank();
    let alphas: Vec<DVector<f64>> = (0..n).map(|s| unit(n, s)).collect();
    let vs: Vec<DVector<f64>> = (0..n).map(|s| a.entries().column(s).into_owned()).collect();
    let reflections = (0..n)
        .map(|s| {
            let mut m = DMatrix::identity(n, n);
            for i in 0..n {
                m[(i, s)] -= vs[s][i];
            }
            m
        })
        .collect();
    let exact_reflections = a.exact().map(|e| {
        (0..n)
            .map(|s| {
                let mut m = RatMatrix::identity(n);
                for i in 0..n {
                    let v = m.get(i, s) - e.get(i, s);
                    m.set(i, s, v);
                }
                m
            })
            .collect()
    });
    MirrorSimplex { cartan: a.clone(), alphas, vs, reflections, exact_reflections }
}

fn unit(n: usize, s: usize) -> DVector<f64> {
    let mut v = DVector::zeros(n);
    v[s] = 1.0;
    v
}

/// Link of the vertex opposite facet `s`: the simplex of the principal
/// submatrix on `S - {s}`.
pub fn vertex_link(simplex: &MirrorSimplex, s: usize) -> Result<MirrorSimplex, VinbergError> {
    let n = simplex.rank();
    if s >= n {
        return Err(VinbergError::InvalidVertex(s));
    }
    let idx: Vec<usize> = (0..n).filter(|&i| i != s).collect();
    Ok(tits_simplex(&simplex.cartan.principal(&idx)))
}

/// `max |sigma_s^2 - Id|` over the generators (floating path).
pub fn involution_error(simplex: &MirrorSimplex) -> f64 {
    let n = simplex.rank();
    simplex
        .reflections
        .iter()
        .map(|r| (r * r - DMatrix::identity(n, n)).amax())
        .fold(0.0, f64::max)
}

/// Whether every exact reflection squares to the identity exactly; `None`
/// without an exact path.
pub fn exact_involutions(simplex: &MirrorSimplex) -> Option<bool> {
    simplex.exact_reflections.as_ref().map(|rs| rs.iter().all(|r| rat_is_identity(&(r * r))))
}

/// `max |(sigma_s sigma_t)^m - Id|` for the pair, with `m` given.
pub fn relation_error(simplex: &MirrorSimplex, s: usize, t: usize, m: u32) -> f64 {
    let n = simplex.rank();
    let p = &simplex.reflections[s] * &simplex.reflections[t];
    let mut acc = DMatrix::identity(n, n);
    for _ in 0..m {
        acc = &acc * &p;
    }
    (acc - DMatrix::identity(n, n)).amax()
}

/// Whether `alpha_s(v_t) = a_st` holds exactly for all `s, t`.
pub fn pairing_exact(simplex: &MirrorSimplex) -> bool {
    let n = simplex.rank();
    (0..n).all(|s| (0..n).all(|t| simplex.pairing(s, t) == simplex.cartan.get(s, t)))
}

/// Integer entries and determinant `-1`, when an exact path exists.
pub fn exact_integral_reflections(simplex: &MirrorSimplex) -> Option<bool> {
    simplex.exact_reflections.as_ref().map(|rs| {
        rs.iter().all(|r| r.is_integral() && r.determinant() == -num_rational::BigRational::one())
    })
}

pub(crate) fn rat_is_identity(m: &RatMatrix) -> bool {
    let n = m.size();
    (0..n).all(|i| (0..n).all(|j| if i == j { m.get(i, j).is_one() } else { m.get(i, j).is_zero() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{CoxeterMatrix, Label};

    #[test]
    fn diagonal_flips() {
        let a = CartanMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 2.0]]).unwrap();
        let s = tits_simplex(&a);
        assert_eq!(s.reflections[0], DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, 1.0]));
        assert_eq!(exact_involutions(&s), Some(true));
    }

    #[test]
    fn dihedral_relation() {
        let m = CoxeterMatrix::with_labels(2, &[(0, 1, Label::Finite(3))]);
        let s = tits_simplex(&CartanMatrix::cosine(&m));
        assert!(relation_error(&s, 0, 1, 3) < 1e-12);
        assert!(relation_error(&s, 0, 1, 2) > 0.1);
        assert!(pairing_exact(&s));
    }

    #[test]
    fn h3_relations() {
        let m = CoxeterMatrix::with_labels(3, &[(0, 1, Label::Finite(5)), (1, 2, Label::Finite(3))]);
        let s = tits_simplex(&CartanMatrix::cosine(&m));
        assert!(s.exact_reflections.is_none());
        assert!(involution_error(&s) < 1e-12);
        assert!(relation_error(&s, 0, 1, 5) < 1e-8);
        assert!(relation_error(&s, 0, 2, 2) < 1e-8);
    }

    #[test]
    fn kac_vinberg_integral() {
        let a = CartanMatrix::from_rows(&[
            vec![2.0, -1.0, -1.0],
            vec![-1.0, 2.0, -1.0],
            vec![-3.0, -1.0, 2.0],
        ])
        .unwrap();
        let s = tits_simplex(&a);
        assert_eq!(exact_integral_reflections(&s), Some(true));
        assert!(rat_is_identity(&(&s.exact_reflections.as_ref().unwrap()[2] * &s.exact_reflections.as_ref().unwrap()[2])));
    }

    #[test]
    fn links() {
        let m = CoxeterMatrix::with_labels(3, &[(0, 1, Label::Finite(3)), (1, 2, Label::Finite(3)), (0, 2, Label::Finite(3))]);
        let s = tits_simplex(&CartanMatrix::cosine(&m));
        let l = vertex_link(&s, 1).unwrap();
        assert_eq!(l.cartan.rows(), vec![vec![2.0, -1.0], vec![-1.0, 2.0]]);
        assert_eq!(l.cartan.nodes(), ["s0", "s2"]);
        assert_eq!(vertex_link(&s, 3), Err(VinbergError::InvalidVertex(3)));
    }
}
