//! Spherical / affine / large classification of Coxeter diagrams.
//!
//! Irreducible diagrams are recognized by exact isomorphism against the
//! catalog of irreducible spherical and affine diagrams (generated per rank
//! and matched through canonical codes). The Cosine-matrix signature is
//! computed alongside as an independent check.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::canon::{canonical_form_codes, CanonicalCode};
use crate::diagram::{CoxeterDiagram, CoxeterMatrix, Label};
use crate::linalg::{self, SignatureTriple};

/// Irreducible spherical or affine type, or `Large`.
///
/// For spherical types the parameter is the number of nodes; affine types
/// `Aff*(n)` have `n + 1` nodes.
#[allow(missing_docs)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    I2(u32),
    AffA(usize),
    AffB(usize),
    AffC(usize),
    AffD(usize),
    AffE(usize),
    AffF4,
    AffG2,
    Large,
}

impl TypeTag {
    pub fn is_spherical(self) -> bool {
        matches!(
            self,
            TypeTag::A(_)
                | TypeTag::B(_)
                | TypeTag::D(_)
                | TypeTag::E(_)
                | TypeTag::F4
                | TypeTag::H(_)
                | TypeTag::I2(_)
        )
    }

    pub fn is_affine(self) -> bool {
        !self.is_spherical() && self != TypeTag::Large
    }

    /// Rank parameter as written in the type name (`None` for `Large`).
    pub fn rank(self) -> Option<usize> {
        Some(match self {
            TypeTag::A(n)
            | TypeTag::B(n)
            | TypeTag::D(n)
            | TypeTag::E(n)
            | TypeTag::H(n)
            | TypeTag::AffA(n)
            | TypeTag::AffB(n)
            | TypeTag::AffC(n)
            | TypeTag::AffD(n)
            | TypeTag::AffE(n) => n,
            TypeTag::F4 | TypeTag::AffF4 => 4,
            TypeTag::I2(_) | TypeTag::AffG2 => 2,
            TypeTag::Large => return None,
        })
    }

    /// Number of diagram nodes implied by the tag.
    pub fn node_count(self) -> Option<usize> {
        let r = self.rank()?;
        Some(if self.is_affine() { r + 1 } else { r })
    }

    /// True for `Ã_k` (`k >= 1`).
    pub fn is_affine_a(self) -> bool {
        matches!(self, TypeTag::AffA(_))
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::A(n) => write!(f, "A{n}"),
            TypeTag::B(n) => write!(f, "B{n}"),
            TypeTag::D(n) => write!(f, "D{n}"),
            TypeTag::E(n) => write!(f, "E{n}"),
            TypeTag::F4 => f.write_str("F4"),
            TypeTag::H(n) => write!(f, "H{n}"),
            TypeTag::I2(p) => write!(f, "I2({p})"),
            TypeTag::AffA(n) => write!(f, "~A{n}"),
            TypeTag::AffB(n) => write!(f, "~B{n}"),
            TypeTag::AffC(n) => write!(f, "~C{n}"),
            TypeTag::AffD(n) => write!(f, "~D{n}"),
            TypeTag::AffE(n) => write!(f, "~E{n}"),
            TypeTag::AffF4 => f.write_str("~F4"),
            TypeTag::AffG2 => f.write_str("~G2"),
            TypeTag::Large => f.write_str("Large"),
        }
    }
}

impl Serialize for TypeTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Cosine matrix `C_W` with entries `-2 cos(pi / m_{s,t})`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosineMatrix {
    pub entries: DMatrix<f64>,
    pub source: CoxeterMatrix,
}

pub fn cosine_matrix(m: &CoxeterMatrix) -> CosineMatrix {
    let n = m.rank();
    let entries = DMatrix::from_fn(n, n, |s, t| {
        if s == t {
            2.0
        } else {
            m.get(s, t).cosine_entry()
        }
    });
    CosineMatrix { entries, source: m.clone() }
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

fn path(n: usize, labels: &[u32]) -> Vec<(usize, usize, Label)> {
    (0..n.saturating_sub(1))
        .map(|i| (i, i + 1, Label::Finite(labels.get(i).copied().unwrap_or(3))))
        .collect()
}

/// The catalog diagram of an irreducible spherical or affine type, with nodes
/// `s0, s1, ...`. Returns `None` for `Large` and for parameters outside the
/// type's range.
pub fn catalog_diagram(tag: TypeTag) -> Option<CoxeterMatrix> {
    let three = Label::Finite(3);
    let edges: Vec<(usize, usize, Label)> = match tag {
        TypeTag::A(n) if n >= 1 => path(n, &[]),
        TypeTag::B(n) if n >= 2 => path(n, &[4]),
        TypeTag::D(n) if n >= 4 => {
            // path s0 ... s(n-2), extra leaf s(n-1) on s(n-3)
            let mut e = path(n - 1, &[]);
            e.push((n - 3, n - 1, three));
            e
        }
        TypeTag::E(n) if (6..=8).contains(&n) => {
            // path s0 ... s(n-2), extra leaf on s2
            let mut e = path(n - 1, &[]);
            e.push((2, n - 1, three));
            e
        }
        TypeTag::F4 => path(4, &[3, 4, 3]),
        TypeTag::H(3) => path(3, &[5, 3]),
        TypeTag::H(4) => path(4, &[5, 3, 3]),
        TypeTag::I2(p) if p >= 3 => vec![(0, 1, Label::Finite(p))],
        TypeTag::AffA(1) => vec![(0, 1, Label::Infinity)],
        TypeTag::AffA(n) if n >= 2 => {
            let mut e = path(n + 1, &[]);
            e.push((n, 0, three));
            e
        }
        TypeTag::AffB(n) if n >= 3 => {
            // s0 -4- s1 - ... - s(n-2), with two leaves s(n-1), s(n) on s(n-2)
            let mut e = path(n - 1, &[4]);
            e.push((n - 2, n - 1, three));
            e.push((n - 2, n, three));
            e
        }
        TypeTag::AffC(n) if n >= 2 => {
            let mut labels = vec![3u32; n];
            labels[0] = 4;
            labels[n - 1] = 4;
            path(n + 1, &labels)
        }
        TypeTag::AffD(n) if n >= 4 => {
            // spine s0 ... s(n-4); leaves s(n-3), s(n-2) on s0 and s(n-1), s(n) on s(n-4)
            let spine = n - 3;
            let mut e = path(spine, &[]);
            e.push((0, spine, three));
            e.push((0, spine + 1, three));
            e.push((spine - 1, spine + 2, three));
            e.push((spine - 1, spine + 3, three));
            e
        }
        TypeTag::AffE(6) => {
            // arms of length 2 around s2
            let mut e = path(5, &[]);
            e.push((2, 5, three));
            e.push((5, 6, three));
            e
        }
        TypeTag::AffE(7) => {
            let mut e = path(7, &[]);
            e.push((3, 7, three));
            e
        }
        TypeTag::AffE(8) => {
            let mut e = path(8, &[]);
            e.push((2, 8, three));
            e
        }
        TypeTag::AffF4 => path(5, &[3, 4, 3, 3]),
        TypeTag::AffG2 => path(3, &[6, 3]),
        _ => return None,
    };
    let nodes = tag.node_count()?;
    Some(CoxeterMatrix::with_labels(nodes, &edges))
}

/// Every catalog type with exactly `nodes` nodes (for two nodes, the dihedral
/// types up to `I2(max_p)`).
pub fn catalog_types(nodes: usize, max_p: u32) -> Vec<TypeTag> {
    let n = nodes;
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    out.push(TypeTag::A(n));
    if n == 1 {
        return out;
    }
    if n == 2 {
        out.push(TypeTag::B(2));
        out.extend((5..=max_p).map(TypeTag::I2));
        out.push(TypeTag::AffA(1));
        return out;
    }
    if n >= 3 {
        out.push(TypeTag::B(n));
    }
    if n >= 4 {
        out.push(TypeTag::D(n));
    }
    if (6..=8).contains(&n) {
        out.push(TypeTag::E(n));
    }
    match n {
        3 => out.extend([TypeTag::H(3), TypeTag::AffC(2), TypeTag::AffG2]),
        4 => out.extend([TypeTag::F4, TypeTag::H(4)]),
        5 => out.push(TypeTag::AffF4),
        _ => {}
    }
    out.push(TypeTag::AffA(n - 1));
    if n >= 4 {
        out.push(TypeTag::AffB(n - 1));
    }
    if n >= 4 {
        out.push(TypeTag::AffC(n - 1));
    }
    if n >= 5 {
        out.push(TypeTag::AffD(n - 1));
    }
    if (7..=9).contains(&n) {
        out.push(TypeTag::AffE(n - 1));
    }
    out
}

type Catalog = HashMap<CanonicalCode, TypeTag>;

fn catalog_for(nodes: usize) -> Arc<Catalog> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Catalog>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&nodes) {
        return c.clone();
    }
    let mut cat = Catalog::new();
    for tag in catalog_types(nodes, 0) {
        let m = catalog_diagram(tag).expect("catalog types are in range");
        let codes: Vec<u8> = m.flat().iter().map(|l| l.code()).collect();
        let (_, code) = canonical_form_codes(nodes, &codes);
        let prev = cat.insert(code, tag);
        assert!(prev.is_none(), "catalog collision between {tag} and {prev:?}");
    }
    let cat = Arc::new(cat);
    cache.lock().unwrap().insert(nodes, cat.clone());
    cat
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("diagram is not connected ({0} components)")]
    Disconnected(usize),
    #[error("diagram has no nodes")]
    Empty,
}

/// Type of a connected diagram by exact catalog match.
pub fn recognize_irreducible_type(m: &CoxeterMatrix) -> Result<TypeTag, ClassifyError> {
    let n = m.rank();
    if n == 0 {
        return Err(ClassifyError::Empty);
    }
    let comps = m.component_indices().len();
    if comps != 1 {
        return Err(ClassifyError::Disconnected(comps));
    }
    Ok(recognize_connected(m.flat(), n))
}

/// Same as [`recognize_irreducible_type`] on a flat label array known to be
/// connected.
pub(crate) fn recognize_connected(flat: &[Label], n: usize) -> TypeTag {
    match n {
        1 => return TypeTag::A(1),
        2 => {
            return match flat[1] {
                Label::Finite(3) => TypeTag::A(2),
                Label::Finite(4) => TypeTag::B(2),
                Label::Finite(p) => TypeTag::I2(p),
                Label::Infinity => TypeTag::AffA(1),
            }
        }
        _ => {}
    }
    // catalog diagrams of rank >= 3 are trees or cycles with labels <= 6
    let mut edges = 0usize;
    for s in 0..n {
        for t in s + 1..n {
            let l = flat[s * n + t];
            if l.is_edge() {
                match l {
                    Label::Finite(m) if m <= 6 => edges += 1,
                    _ => return TypeTag::Large,
                }
            }
        }
    }
    if edges > n {
        return TypeTag::Large;
    }
    let codes: Vec<u8> = flat.iter().map(|l| l.code()).collect();
    MEMO.with(|memo| {
        if let Some(&tag) = memo.borrow().get(&codes) {
            return tag;
        }
        let (_, code) = canonical_form_codes(n, &codes);
        let tag = catalog_for(n).get(&code).copied().unwrap_or(TypeTag::Large);
        let mut memo = memo.borrow_mut();
        if memo.len() > MEMO_LIMIT {
            memo.clear();
        }
        memo.insert(codes, tag);
        tag
    })
}

const MEMO_LIMIT: usize = 1 << 20;

thread_local! {
    static MEMO: RefCell<HashMap<Vec<u8>, TypeTag>> = RefCell::new(HashMap::new());
}

/// One irreducible component of a classification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Component {
    pub nodes: Vec<String>,
    #[serde(rename = "type")]
    pub tag: TypeTag,
    pub rank: Option<usize>,
    #[serde(skip)]
    pub indices: Vec<usize>,
    /// Signature of the component's Cosine matrix.
    #[serde(skip)]
    pub signature: SignatureTriple,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub components: Vec<Component>,
    pub is_spherical: bool,
    pub is_affine: bool,
    pub is_large_somewhere: bool,
    /// Whether every component's Cosine-matrix signature agrees with its
    /// catalog type (spherical: definite; affine: one zero eigenvalue and no
    /// negative ones; large: some negative eigenvalue).
    pub numerically_consistent: bool,
}

/// Whether a signature matches what the catalog type predicts.
pub fn signature_matches(tag: TypeTag, sig: &SignatureTriple) -> bool {
    if tag.is_spherical() {
        sig.negative == 0 && sig.zero == 0
    } else if tag.is_affine() {
        sig.negative == 0 && sig.zero == 1
    } else {
        sig.negative >= 1
    }
}

pub fn classify(m: &CoxeterMatrix) -> Classification {
    classify_with_tol(m, linalg::DEFAULT_TOL)
}

pub fn classify_with_tol(m: &CoxeterMatrix, tol: f64) -> Classification {
    let cos = cosine_matrix(m).entries;
    let mut components = Vec::new();
    let mut consistent = true;
    for idx in m.component_indices() {
        let sub = m.submatrix(&idx);
        let tag = recognize_connected(sub.flat(), sub.rank());
        let sig = linalg::signature(&linalg::principal(&cos, &idx), tol)
            .expect("cosine matrices are symmetric");
        consistent &= signature_matches(tag, &sig);
        components.push(Component {
            nodes: sub.nodes().to_vec(),
            tag,
            rank: tag.rank(),
            indices: idx,
            signature: sig,
        });
    }
    Classification {
        is_spherical: components.iter().all(|c| c.tag.is_spherical()),
        is_affine: !components.is_empty() && components.iter().all(|c| c.tag.is_affine()),
        is_large_somewhere: components.iter().any(|c| c.tag == TypeTag::Large),
        numerically_consistent: consistent,
        components,
    }
}

pub fn classify_diagram(d: &CoxeterDiagram) -> Classification {
    classify(&d.to_matrix())
}

pub(crate) fn components_flat(flat: &[Label], n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(s) = stack.pop() {
            for t in 0..n {
                if !seen[t] && flat[s * n + t].is_edge() {
                    seen[t] = true;
                    comp.push(t);
                    stack.push(t);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub(crate) fn sub_flat(flat: &[Label], n: usize, idx: &[usize]) -> Vec<Label> {
    idx.iter()
        .flat_map(|&s| idx.iter().map(move |&t| flat[s * n + t]))
        .collect()
}
