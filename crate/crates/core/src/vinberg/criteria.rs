//! Anosov and convex cocompactness criteria for Cartan matrices of Coxeter
//! type.

use serde::Serialize;

use super::cartan::{compatible_coxeter, CartanMatrix};
use super::perron::{perron_of_block, PerronKind, PERRON_ZERO_TOL};
use super::VinbergError;
use crate::classify::classify;
use crate::diagram::{CoxeterMatrix, Label};
use crate::linalg::{determinant, principal};
use crate::moussong::{
    connected_subsets, mask_indices, moussong_hyperbolic, orthogonal_nonspherical_pair, subset_type,
    MoussongWitness,
};

/// Tolerance for reading labels off products and for the strict inequality
/// on `inf` pairs.
pub const CRITERIA_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnosovReason {
    NotWordHyperbolic { witness: MoussongWitness },
    /// An `inf` pair whose product lies in `[4 - tol, 4 + tol]`.
    BoundaryPair { s: String, t: String, product: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnosovReport {
    pub anosov: bool,
    pub reasons: Vec<AnosovReason>,
}

/// Coxeter matrix of `a`, refusing reducible and finite groups.
fn infinite_irreducible(a: &CartanMatrix) -> Result<CoxeterMatrix, VinbergError> {
    let w = compatible_coxeter(a, CRITERIA_TOL)?;
    if !w.is_connected() {
        return Err(VinbergError::ReducibleGroup);
    }
    if classify(&w).is_spherical {
        return Err(VinbergError::FiniteGroup);
    }
    Ok(w)
}

pub fn is_anosov(a: &CartanMatrix) -> Result<AnosovReport, VinbergError> {
    let w = infinite_irreducible(a)?;
    let mut reasons = Vec::new();
    if let Some(witness) = moussong_hyperbolic(&w).witness {
        reasons.push(AnosovReason::NotWordHyperbolic { witness });
    }
    let n = a.rank();
    for s in 0..n {
        for t in s + 1..n {
            if w.get(s, t) != Label::Infinity {
                continue;
            }
            let product = a.product(s, t);
            if product <= 4.0 + CRITERIA_TOL {
                reasons.push(AnosovReason::BoundaryPair {
                    s: a.nodes()[s].clone(),
                    t: a.nodes()[t].clone(),
                    product,
                });
            }
        }
    }
    Ok(AnosovReport { anosov: reasons.is_empty(), reasons })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CcVerdict {
    pub cc: bool,
    /// No two orthogonal non-spherical subsets.
    pub condition_i: bool,
    /// Every irreducible affine subset on at least three nodes is of type `~A`.
    pub condition_ii: bool,
    pub orthogonal_witness: Option<(Vec<String>, Vec<String>)>,
    pub non_a_affine_witness: Option<Vec<String>>,
    /// An irreducible principal submatrix of zero type.
    pub zero_type_witness: Option<Vec<String>>,
    /// A `~A_k` subset with singular Cartan submatrix.
    pub singular_witness: Option<Vec<String>>,
}

pub fn convex_cocompact_status(a: &CartanMatrix) -> Result<CcVerdict, VinbergError> {
    let w = infinite_irreducible(a)?;
    let names = |mask: u32| -> Vec<String> { mask_indices(mask).into_iter().map(|i| a.nodes()[i].clone()).collect() };

    let orthogonal = orthogonal_nonspherical_pair(&w);
    let connected = connected_subsets(&w);
    let non_a_affine = connected.iter().copied().find(|&mask| {
        let tag = subset_type(&w, mask);
        mask.count_ones() >= 3 && tag.is_affine() && !tag.is_affine_a()
    });
    let mut verdict = CcVerdict {
        cc: false,
        condition_i: orthogonal.is_none(),
        condition_ii: non_a_affine.is_none(),
        orthogonal_witness: orthogonal.map(|(x, y)| (names(x), names(y))),
        non_a_affine_witness: non_a_affine.map(names),
        zero_type_witness: None,
        singular_witness: None,
    };
    if !(verdict.condition_i && verdict.condition_ii) {
        return Ok(verdict);
    }

    let entries = a.entries();
    for &mask in &connected {
        let idx = mask_indices(mask);
        let block = principal(entries, &idx);
        if verdict.zero_type_witness.is_none() && perron_of_block(&block, PERRON_ZERO_TOL)?.kind == PerronKind::Zero {
            verdict.zero_type_witness = Some(names(mask));
        }
        if verdict.singular_witness.is_none() && subset_type(&w, mask).is_affine_a() {
            let scale = block.amax().powi(idx.len() as i32);
            if determinant(&block).abs() <= PERRON_ZERO_TOL * scale {
                verdict.singular_witness = Some(names(mask));
            }
        }
    }
    let by_zero_type = verdict.zero_type_witness.is_none();
    let by_det = verdict.singular_witness.is_none();
    if by_zero_type != by_det {
        return Err(VinbergError::CriteriaDisagree(format!(
            "zero-type witness {:?}, singular ~A witness {:?}",
            verdict.zero_type_witness, verdict.singular_witness
        )));
    }
    verdict.cc = by_zero_type;
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_diagram;
    use crate::vinberg::cartan::{cartan_from_coxeter, CartanSpec};

    fn triangle(product: f64) -> CartanMatrix {
        let m = parse_diagram("nodes a b c; edge a b 3; edge b c 3; edge a c inf").unwrap().to_matrix();
        let mut spec = CartanSpec::default();
        spec.infinity_products.insert((0, 2), product);
        cartan_from_coxeter(&m, &spec).unwrap()
    }

    #[test]
    fn anosov_triangle() {
        let r = is_anosov(&triangle(4.0)).unwrap();
        assert!(!r.anosov);
        assert!(matches!(r.reasons[..], [AnosovReason::BoundaryPair { product, .. }] if product == 4.0));
        assert!(is_anosov(&triangle(5.0)).unwrap().anosov);
    }

    #[test]
    fn anosov_lanner() {
        let m = parse_diagram("nodes a b c d; edge a b 5; edge b c 3; edge c d 5").unwrap().to_matrix();
        assert!(is_anosov(&CartanMatrix::cosine(&m)).unwrap().anosov);
    }

    #[test]
    fn cc_triangle() {
        let v = convex_cocompact_status(&triangle(4.0)).unwrap();
        assert!(v.condition_i && v.condition_ii && !v.cc);
        assert_eq!(v.singular_witness, Some(vec!["a".to_string(), "c".to_string()]));
        assert!(convex_cocompact_status(&triangle(5.0)).unwrap().cc);
    }

    #[test]
    fn cc_orthogonal_pairs() {
        let m = parse_diagram("nodes a b c d e; edge a b inf; edge b c 3; edge c d 3; edge d e inf")
            .unwrap()
            .to_matrix();
        let mut spec = CartanSpec::default();
        spec.infinity_products.insert((0, 1), 5.0);
        spec.infinity_products.insert((3, 4), 5.0);
        let v = convex_cocompact_status(&cartan_from_coxeter(&m, &spec).unwrap()).unwrap();
        assert!(!v.condition_i && !v.cc);
    }

    #[test]
    fn preconditions() {
        let a3 = CartanMatrix::cosine(&parse_diagram("nodes a b c; edge a b 3; edge b c 3").unwrap().to_matrix());
        assert_eq!(convex_cocompact_status(&a3), Err(VinbergError::FiniteGroup));
        assert_eq!(is_anosov(&a3), Err(VinbergError::FiniteGroup));
        let split = parse_diagram("nodes a b c d; edge a b inf; edge c d inf").unwrap().to_matrix();
        let split = CartanMatrix::cosine(&split);
        assert_eq!(convex_cocompact_status(&split), Err(VinbergError::ReducibleGroup));
        assert_eq!(is_anosov(&split), Err(VinbergError::ReducibleGroup));
    }

    #[test]
    fn cc_affine_b() {
        // ~B3 itself violates condition (ii)
        let m = parse_diagram("nodes a b c d; edge a c 3; edge b c 3; edge c d 4").unwrap().to_matrix();
        let v = convex_cocompact_status(&CartanMatrix::cosine(&m)).unwrap();
        assert!(!v.condition_ii && !v.cc);
    }
}
