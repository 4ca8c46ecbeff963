//! Embedded reference data: the irreducible spherical and affine catalog, the
//! rank-4 Lanner and quasi-Lanner diagrams, and labeled polytopes for
//! Andreev's conditions.

use crate::andreev::{polytope_from_json, LabeledPolytope3};
use crate::dsl::{parse_catalog, CatalogEntry};

/// Irreducible spherical and affine diagrams up to ten nodes, each named by
/// its expected type.
pub const IRREDUCIBLE_CATALOG: &str = include_str!("../data/irreducible_catalog.dsl");

/// The nine compact hyperbolic Coxeter tetrahedra.
pub const LANNER_RANK4: &str = include_str!("../data/lanner_rank4.dsl");

/// The twenty-three non-compact finite-volume hyperbolic Coxeter tetrahedra.
pub const QUASI_LANNER_RANK4: &str = include_str!("../data/quasi_lanner_rank4.dsl");

pub const RIGHT_ANGLED_CUBE: &str = include_str!("../data/polytopes/right_angled_cube.json");
pub const RIGHT_ANGLED_DODECAHEDRON: &str = include_str!("../data/polytopes/right_angled_dodecahedron.json");
/// Base-to-side labels `pi/2`, side labels `pi/3, pi/3, pi/4`.
pub const RIGHT_TRIANGULAR_PRISM: &str = include_str!("../data/polytopes/right_triangular_prism.json");

fn catalog(text: &str) -> Vec<CatalogEntry> {
    parse_catalog(text).expect("embedded catalog parses")
}

pub fn irreducible_catalog() -> Vec<CatalogEntry> {
    catalog(IRREDUCIBLE_CATALOG)
}

pub fn lanner_rank4() -> Vec<CatalogEntry> {
    catalog(LANNER_RANK4)
}

pub fn quasi_lanner_rank4() -> Vec<CatalogEntry> {
    catalog(QUASI_LANNER_RANK4)
}

/// Looks up a catalog by name: `irreducible`, `lanner4` or `quasi-lanner4`.
pub fn named_catalog(name: &str) -> Option<Vec<CatalogEntry>> {
    match name {
        "irreducible" => Some(irreducible_catalog()),
        "lanner4" => Some(lanner_rank4()),
        "quasi-lanner4" => Some(quasi_lanner_rank4()),
        _ => None,
    }
}

pub fn polytope(name: &str) -> Option<LabeledPolytope3> {
    let text = match name {
        "cube" => RIGHT_ANGLED_CUBE,
        "dodecahedron" => RIGHT_ANGLED_DODECAHEDRON,
        "prism" => RIGHT_TRIANGULAR_PRISM,
        _ => return None,
    };
    Some(polytope_from_json(text).expect("embedded polytope is valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(irreducible_catalog().len(), 75);
        assert_eq!(lanner_rank4().len(), 9);
        assert_eq!(quasi_lanner_rank4().len(), 23);
        for name in ["cube", "dodecahedron", "prism"] {
            assert!(polytope(name).is_some());
        }
    }
}
