//! Lannér and quasi-Lannér diagrams: the predicate and exhaustive enumeration
//! for ranks 4 to 10.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::{canonical_form_codes, CanonicalCode};
use crate::classify::{
    classify, components_flat, cosine_matrix, recognize_connected, sub_flat, TypeTag,
};
use crate::diagram::{default_names, CoxeterMatrix, Label};
use crate::linalg::{self, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LannerStatus {
    Lanner,
    QuasiLannerNotLanner,
    Neither,
}

impl LannerStatus {
    /// Quasi-Lannér in the broad sense (Lannér included).
    pub fn is_quasi_lanner(self) -> bool {
        self != LannerStatus::Neither
    }
}

impl fmt::Display for LannerStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LannerStatus::Lanner => "lanner",
            LannerStatus::QuasiLannerNotLanner => "quasi-lanner",
            LannerStatus::Neither => "neither",
        })
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum LannerError {
    #[error("determinant {det:e} is numerically zero but no component is affine")]
    ZeroDetWithoutAffine { det: f64 },
    #[error("determinant {det:e} is not numerically zero but a component is affine")]
    AffineWithNonzeroDet { det: f64 },
    #[error("enumeration supports ranks 4 to 10, got {0}")]
    RankOutOfRange(usize),
    #[error("label alphabet check failed: pair ({s}, {t}) with label {label} keeps every 3-subset admissible")]
    AlphabetLemma { s: usize, t: usize, label: Label },
}

/// Width of the band around zero in which a Cosine determinant counts as zero.
pub const DET_ZERO_BAND: f64 = 1e-9;

/// Hereditary part of the definitions: what every `(n-1)`-node deletion is.
fn deletion_kinds(flat: &[Label], n: usize) -> (bool, bool) {
    let mut all_spherical = true;
    let mut all_admissible = true;
    for skip in 0..n {
        let idx: Vec<usize> = (0..n).filter(|&i| i != skip).collect();
        match subset_kind(&sub_flat(flat, n, &idx), n - 1) {
            SubsetKind::Spherical => {}
            SubsetKind::IrreducibleAffine => all_spherical = false,
            SubsetKind::Other => {
                all_spherical = false;
                all_admissible = false;
            }
        }
    }
    (all_spherical, all_admissible)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SubsetKind {
    Spherical,
    IrreducibleAffine,
    Other,
}

fn subset_kind(flat: &[Label], n: usize) -> SubsetKind {
    let comps = components_flat(flat, n);
    if comps.len() == 1 && n > 0 {
        let tag = recognize_connected(flat, n);
        return if tag.is_spherical() {
            SubsetKind::Spherical
        } else if tag.is_affine() {
            SubsetKind::IrreducibleAffine
        } else {
            SubsetKind::Other
        };
    }
    let spherical = comps
        .iter()
        .all(|c| recognize_connected(&sub_flat(flat, n, c), c.len()).is_spherical());
    if spherical {
        SubsetKind::Spherical
    } else {
        SubsetKind::Other
    }
}

/// Lannér status of a diagram. `tol` is the threshold on the Cosine
/// determinant (`det < -tol` counts as negative).
///
/// Only the `n` one-node deletions are inspected: subsets of a spherical
/// diagram are spherical, and proper subsets of an irreducible affine one too.
pub fn lanner_status(m: &CoxeterMatrix, tol: f64) -> Result<LannerStatus, LannerError> {
    let n = m.rank();
    if n < 2 {
        return Ok(LannerStatus::Neither);
    }
    let det = linalg::determinant(&cosine_matrix(m).entries);
    let (all_spherical, all_admissible) = deletion_kinds(m.flat(), n);
    if !all_admissible {
        return Ok(LannerStatus::Neither);
    }
    let zero_band = tol.max(DET_ZERO_BAND);
    let has_affine = classify(m).components.iter().any(|c| c.tag.is_affine());
    if det.abs() < zero_band {
        if !has_affine {
            return Err(LannerError::ZeroDetWithoutAffine { det });
        }
        return Ok(LannerStatus::Neither);
    }
    if has_affine {
        return Err(LannerError::AffineWithNonzeroDet { det });
    }
    if det >= -tol {
        return Ok(LannerStatus::Neither);
    }
    Ok(if all_spherical { LannerStatus::Lanner } else { LannerStatus::QuasiLannerNotLanner })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EnumerationMode {
    /// Lannér diagrams only.
    Lanner,
    /// Quasi-Lannér diagrams, Lannér ones included.
    QuasiLanner,
    /// Quasi-Lannér diagrams that are not Lannér.
    StrictQuasiLanner,
}

/// Labels used by the enumerator. Larger finite labels and `inf` are excluded
/// by [`check_alphabet_lemma`].
pub const ALPHABET: [u32; 5] = [2, 3, 4, 5, 6];

const CODE_TWO: u8 = 2;

/// One canonical diagram per isomorphism class, sorted by canonical code, with
/// nodes named `s0, s1, ...` in canonical order.
pub fn enumerate_lanner_family(
    rank: usize,
    mode: EnumerationMode,
) -> Result<Vec<CoxeterMatrix>, LannerError> {
    if !(4..=10).contains(&rank) {
        return Err(LannerError::RankOutOfRange(rank));
    }
    let allow_affine = mode != EnumerationMode::Lanner;
    let rules = SizeRules { rank, allow_affine };

    let mut level: Vec<Vec<u8>> = vec![vec![1]];
    for k in 1..rank - 1 {
        level = extend_level(&level, k, &rules);
    }
    let finals = final_level(&level, rank - 1, &rules);

    let mut out = Vec::new();
    for (code, flat) in finals {
        let labels: Vec<Label> = flat.iter().map(|&c| decode(c)).collect();
        let m = CoxeterMatrix::from_flat(default_names(rank), labels);
        let status = lanner_status(&m, DEFAULT_TOL)?;
        let keep = match mode {
            EnumerationMode::Lanner => status == LannerStatus::Lanner,
            EnumerationMode::QuasiLanner => status.is_quasi_lanner(),
            EnumerationMode::StrictQuasiLanner => status == LannerStatus::QuasiLannerNotLanner,
        };
        if keep {
            check_alphabet_lemma(&m)?;
            out.push((code, m));
        }
    }
    Ok(out.into_iter().map(|(_, m)| m).collect())
}

fn decode(c: u8) -> Label {
    if c == 255 {
        Label::Infinity
    } else {
        Label::Finite(c as u32)
    }
}

struct SizeRules {
    rank: usize,
    allow_affine: bool,
}

impl SizeRules {
    /// Whether a subset of `size` nodes may be irreducible affine.
    fn affine_ok(&self, size: usize) -> bool {
        self.allow_affine && size + 1 == self.rank
    }
}

/// Admissibility of a `size`-node set whose last node is the newest one; every
/// subset avoiding the newest node is known to be admissible.
fn prefix_ok(codes: &[u8], size: usize, rules: &SizeRules) -> bool {
    let labels: Vec<Label> = codes.iter().map(|&c| decode(c)).collect();
    let comps = components_flat(&labels, size);
    let last = size - 1;
    let comp = comps.iter().find(|c| c.contains(&last)).expect("every node has a component");
    let tag = recognize_connected(&sub_flat(&labels, size, comp), comp.len());
    if tag.is_spherical() {
        return true;
    }
    tag.is_affine() && comp.len() == size && rules.affine_ok(size)
}

/// Flat matrix of `base` (k nodes) extended by one node with `labels[i]`
/// towards node `i` for `i < labels.len()`, restricted to those nodes and the
/// new one.
fn extended(base: &[u8], k: usize, labels: &[u8]) -> Vec<u8> {
    let j = labels.len();
    let size = j + 1;
    let mut out = vec![CODE_TWO; size * size];
    for a in 0..j {
        for b in 0..j {
            out[a * size + b] = base[a * k + b];
        }
        out[a * size + j] = labels[a];
        out[j * size + a] = labels[a];
    }
    out[j * size + j] = 1;
    out
}

fn extensions(base: &[u8], k: usize, rules: &SizeRules, keep_full: &mut dyn FnMut(Vec<u8>)) {
    let mut labels: Vec<u8> = Vec::with_capacity(k);
    dfs(base, k, rules, &mut labels, keep_full);
}

fn dfs(base: &[u8], k: usize, rules: &SizeRules, labels: &mut Vec<u8>, keep: &mut dyn FnMut(Vec<u8>)) {
    if labels.len() == k {
        keep(extended(base, k, labels));
        return;
    }
    for &l in &ALPHABET {
        labels.push(l as u8);
        let size = labels.len() + 1;
        // while the new node is isolated its component is itself, and a
        // full-size set is judged by the final check
        let ok = labels.iter().all(|&c| c == CODE_TWO)
            || size == rules.rank
            || prefix_ok(&extended(base, k, labels), size, rules);
        if ok {
            dfs(base, k, rules, labels, keep);
        }
        labels.pop();
    }
}

fn canonical(flat: &[u8], n: usize) -> (CanonicalCode, Vec<u8>) {
    let (perm, code) = canonical_form_codes(n, flat);
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = flat[perm[i] * n + perm[j]];
        }
    }
    (code, out)
}

fn extend_level(level: &[Vec<u8>], k: usize, rules: &SizeRules) -> Vec<Vec<u8>> {
    let found: Vec<(CanonicalCode, Vec<u8>)> = level
        .par_iter()
        .flat_map_iter(|base| {
            let mut local = Vec::new();
            extensions(base, k, rules, &mut |flat| {
                // only connected diagrams are kept: removing a suitable node
                // from a connected diagram leaves it connected
                if flat[k * (k + 1)..k * (k + 1) + k].iter().any(|&c| c != CODE_TWO) {
                    local.push(canonical(&flat, k + 1));
                }
            });
            local
        })
        .collect();
    let map: BTreeMap<CanonicalCode, Vec<u8>> = found.into_iter().collect();
    map.into_values().collect()
}

fn final_level(level: &[Vec<u8>], k: usize, rules: &SizeRules) -> BTreeMap<CanonicalCode, Vec<u8>> {
    let n = k + 1;
    let found: Vec<(CanonicalCode, Vec<u8>)> = level
        .par_iter()
        .flat_map_iter(|base| {
            let mut local = Vec::new();
            extensions(base, k, rules, &mut |flat| {
                let labels: Vec<Label> = flat.iter().map(|&c| decode(c)).collect();
                if components_flat(&labels, n).len() != 1 {
                    return;
                }
                let (all_spherical, all_admissible) = deletion_kinds(&labels, n);
                if !all_admissible || (!rules.allow_affine && !all_spherical) {
                    return;
                }
                let det = linalg::determinant(&cosine_of_codes(&flat, n));
                if det < -DET_ZERO_BAND {
                    local.push(canonical(&flat, n));
                }
            });
            local
        })
        .collect();
    found.into_iter().collect()
}

fn cosine_of_codes(flat: &[u8], n: usize) -> nalgebra::DMatrix<f64> {
    nalgebra::DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            2.0
        } else {
            decode(flat[i * n + j]).cosine_entry()
        }
    })
}

/// Checks that replacing any label of `m` by one in `7..=12` or `inf` creates
/// a connected 3-node subset that is neither spherical nor irreducible affine.
pub fn check_alphabet_lemma(m: &CoxeterMatrix) -> Result<(), LannerError> {
    let n = m.rank();
    let big: Vec<Label> = (7..=12).map(Label::Finite).chain([Label::Infinity]).collect();
    for s in 0..n {
        for t in s + 1..n {
            for &label in &big {
                let mut w = m.clone();
                w.set(s, t, label);
                let flat = w.flat();
                let violated = (0..n).filter(|&u| u != s && u != t).any(|u| {
                    let mut idx = vec![s, t, u];
                    idx.sort_unstable();
                    let sub = sub_flat(flat, n, &idx);
                    components_flat(&sub, 3).len() == 1 && {
                        let tag = recognize_connected(&sub, 3);
                        !(tag.is_spherical() || tag.is_affine())
                    }
                });
                if !violated {
                    return Err(LannerError::AlphabetLemma { s, t, label });
                }
            }
        }
    }
    Ok(())
}

/// Whether `tag` is a connected spherical or affine type on three nodes.
pub fn is_admissible_triple(tag: TypeTag) -> bool {
    matches!(
        tag,
        TypeTag::A(3) | TypeTag::B(3) | TypeTag::H(3) | TypeTag::AffA(2) | TypeTag::AffC(2) | TypeTag::AffG2
    )
}
