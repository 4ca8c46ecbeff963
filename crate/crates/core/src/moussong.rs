//! Word-hyperbolicity of Coxeter groups by Moussong's criterion.
//!
//! Two orthogonal non-spherical subsets exist iff two orthogonal minimal
//! connected non-spherical subsets exist, and an affine subset on three or
//! more nodes either contains such an orthogonal pair or is connected. So
//! only connected subsets are inspected.

use serde::Serialize;

use crate::classify::{recognize_connected, sub_flat, TypeTag};
use crate::diagram::CoxeterMatrix;

/// Largest rank accepted by [`moussong_hyperbolic`] (subsets are bitmasks).
pub const MAX_RANK: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MoussongWitness {
    OrthogonalPair { first: Vec<String>, second: Vec<String> },
    AffineSubset { nodes: Vec<String>, #[serde(rename = "type")] tag: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoussongReport {
    pub hyperbolic: bool,
    pub witness: Option<MoussongWitness>,
}

/// Connected subsets of the diagram as bitmasks, in increasing numeric order.
pub(crate) fn connected_subsets(m: &CoxeterMatrix) -> Vec<u32> {
    let n = m.rank();
    assert!(n <= MAX_RANK, "rank {n} exceeds {MAX_RANK}");
    let adj: Vec<u32> = (0..n)
        .map(|s| (0..n).filter(|&t| t != s && m.get(s, t).is_edge()).fold(0, |a, t| a | 1 << t))
        .collect();
    (1u32..1 << n)
        .filter(|&mask| {
            let start = mask.trailing_zeros() as usize;
            let mut seen = 1u32 << start;
            let mut frontier = seen;
            while frontier != 0 {
                let s = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = adj[s] & mask & !seen;
                seen |= new;
                frontier |= new;
            }
            seen == mask
        })
        .collect()
}

pub(crate) fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

pub(crate) fn subset_type(m: &CoxeterMatrix, mask: u32) -> TypeTag {
    let idx = mask_indices(mask);
    recognize_connected(&sub_flat(m.flat(), m.rank(), &idx), idx.len())
}

pub fn moussong_hyperbolic(m: &CoxeterMatrix) -> MoussongReport {
    let names = |mask: u32| -> Vec<String> {
        mask_indices(mask).into_iter().map(|i| m.nodes()[i].clone()).collect()
    };
    let connected = connected_subsets(m);
    for &mask in &connected {
        let tag = subset_type(m, mask);
        if tag.is_affine() && mask.count_ones() >= 3 {
            return MoussongReport {
                hyperbolic: false,
                witness: Some(MoussongWitness::AffineSubset { nodes: names(mask), tag: tag.to_string() }),
            };
        }
    }
    if let Some((a, b)) = orthogonal_pair_in(m, &connected) {
        return MoussongReport {
            hyperbolic: false,
            witness: Some(MoussongWitness::OrthogonalPair { first: names(a), second: names(b) }),
        };
    }
    MoussongReport { hyperbolic: true, witness: None }
}

/// Two orthogonal connected non-spherical subsets, as bitmasks.
pub(crate) fn orthogonal_nonspherical_pair(m: &CoxeterMatrix) -> Option<(u32, u32)> {
    orthogonal_pair_in(m, &connected_subsets(m))
}

fn orthogonal_pair_in(m: &CoxeterMatrix, connected: &[u32]) -> Option<(u32, u32)> {
    let n = m.rank();
    let mut minimal: Vec<u32> = Vec::new();
    for &mask in connected {
        if subset_type(m, mask).is_spherical() {
            continue;
        }
        // masks come in increasing order, so every proper subset was seen
        if minimal.iter().all(|&small| small & !mask != 0) {
            minimal.push(mask);
        }
    }
    let neighborhood = |mask: u32| -> u32 {
        let mut out = mask;
        for s in mask_indices(mask) {
            for t in 0..n {
                if m.get(s, t).is_edge() {
                    out |= 1 << t;
                }
            }
        }
        out
    };
    minimal.iter().enumerate().find_map(|(i, &a)| {
        let closed = neighborhood(a);
        minimal[i + 1..].iter().find(|&&b| b & closed == 0).map(|&b| (a, b))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_diagram;

    fn dsl(text: &str) -> CoxeterMatrix {
        parse_diagram(text).unwrap().to_matrix()
    }

    #[test]
    fn spherical_is_hyperbolic() {
        let r = moussong_hyperbolic(&dsl("nodes a b c d; edge a b 5; edge b c 3; edge c d 3"));
        assert_eq!(r, MoussongReport { hyperbolic: true, witness: None });
    }

    #[test]
    fn affine_triangle() {
        let r = moussong_hyperbolic(&dsl("nodes a b c; edge a b 3; edge b c 3; edge a c 3"));
        assert!(!r.hyperbolic);
        match r.witness {
            Some(MoussongWitness::AffineSubset { nodes, tag }) => {
                assert_eq!(nodes, ["a", "b", "c"]);
                assert_eq!(tag, "~A2");
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn orthogonal_infinite_pairs() {
        let r = moussong_hyperbolic(&dsl("nodes a b c d; edge a b inf; edge c d inf"));
        assert_eq!(
            r.witness,
            Some(MoussongWitness::OrthogonalPair {
                first: vec!["a".into(), "b".into()],
                second: vec!["c".into(), "d".into()],
            })
        );
    }

    #[test]
    fn adjacent_pairs_are_not_orthogonal() {
        let r = moussong_hyperbolic(&dsl("nodes a b c d; edge a b inf; edge b c 3; edge c d inf"));
        // (inf, 3, inf) path: no affine triple, the two infinite edges touch b-c
        assert!(r.hyperbolic, "{r:?}");
        let r = moussong_hyperbolic(&dsl("nodes a b c; edge a b 3; edge b c 3; edge a c inf"));
        assert!(r.hyperbolic);
    }

    #[test]
    fn connected_subset_count() {
        // a path on 4 nodes has 10 connected subsets (intervals)
        let m = dsl("nodes a b c d; edge a b 3; edge b c 3; edge c d 3");
        assert_eq!(connected_subsets(&m).len(), 10);
    }
}
