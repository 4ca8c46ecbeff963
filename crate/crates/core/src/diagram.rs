//! Coxeter matrices and Coxeter diagrams.
//!
//! A [`CoxeterMatrix`] is the dense symmetric array `m[s][t]` over an ordered
//! node set; a [`CoxeterDiagram`] is the same data seen as a labeled graph in
//! which only pairs with `m >= 3` are edges. The two convert into each other
//! losslessly.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An entry `m_{s,t}` of a Coxeter matrix: a positive integer or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl Label {
    pub const TWO: Label = Label::Finite(2);

    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Label::Infinity)
    }

    /// True when the pair is joined by an edge of the diagram (`m >= 3`).
    pub fn is_edge(self) -> bool {
        match self {
            Label::Finite(m) => m >= 3,
            Label::Infinity => true,
        }
    }

    /// `-2 cos(pi / m)`, with `pi / inf = 0`. Exact for `m` in 1, 2, 3, 4, 6.
    pub fn cosine_entry(self) -> f64 {
        match self {
            Label::Finite(1) => 2.0,
            Label::Finite(2) => 0.0,
            Label::Finite(3) => -1.0,
            Label::Finite(4) => -std::f64::consts::SQRT_2,
            Label::Finite(6) => -(3.0f64).sqrt(),
            Label::Finite(m) => -2.0 * (std::f64::consts::PI / m as f64).cos(),
            Label::Infinity => -2.0,
        }
    }

    /// Compact byte code used by canonical forms; infinity sorts last.
    pub(crate) fn code(self) -> u8 {
        match self {
            Label::Finite(m) => m.min(254) as u8,
            Label::Infinity => 255,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "∞" => Ok(Label::Infinity),
            _ => s
                .parse::<u32>()
                .map(Label::Finite)
                .map_err(|_| format!("invalid label `{s}`")),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Label::Finite(m) => serializer.serialize_u32(*m),
            Label::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(m) => Ok(Label::Finite(m)),
            Raw::Str(s) if s == "inf" => Ok(Label::Infinity),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected an integer or \"inf\", got \"{s}\""
            ))),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix has {rows} rows but {nodes} nodes")]
    Shape { rows: usize, nodes: usize },
    #[error("entry ({s}, {t}) differs from ({t}, {s})")]
    Asymmetric { s: String, t: String },
    #[error("diagonal entry at {0} must be 1")]
    Diagonal(String),
    #[error("off-diagonal entry ({s}, {t}) = {m} must be at least 2")]
    OffDiagonal { s: String, t: String, m: Label },
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("edge label {m} between `{a}` and `{b}` must be at least 3")]
    EdgeLabel { a: String, b: String, m: Label },
    #[error("unknown node `{0}`")]
    UnknownNode(String),
}

/// Symmetric Coxeter matrix `M = (m_{s,t})` over an ordered node set `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    nodes: Vec<String>,
    entries: Vec<Label>,
}

impl CoxeterMatrix {
    pub fn new(nodes: Vec<String>, rows: Vec<Vec<Label>>) -> Result<Self, MatrixError> {
        let n = nodes.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::Shape {
                rows: rows.len(),
                nodes: n,
            });
        }
        check_unique(&nodes)?;
        let entries: Vec<Label> = rows.into_iter().flatten().collect();
        let matrix = CoxeterMatrix { nodes, entries };
        matrix.validate()?;
        Ok(matrix)
    }

    /// All pairs commuting (`m = 2`), i.e. the diagram without edges.
    pub fn free(nodes: Vec<String>) -> Result<Self, MatrixError> {
        check_unique(&nodes)?;
        let n = nodes.len();
        let mut entries = vec![Label::TWO; n * n];
        for i in 0..n {
            entries[i * n + i] = Label::Finite(1);
        }
        Ok(CoxeterMatrix { nodes, entries })
    }

    /// Matrix on nodes `s0, s1, ...` with the given off-diagonal labels.
    /// Unlisted pairs get `m = 2`.
    pub fn with_labels(n: usize, labels: &[(usize, usize, Label)]) -> Self {
        let mut m = CoxeterMatrix::free(default_names(n)).expect("default names are unique");
        for &(a, b, label) in labels {
            m.set(a, b, label);
        }
        m
    }

    pub(crate) fn from_flat(nodes: Vec<String>, entries: Vec<Label>) -> Self {
        debug_assert_eq!(nodes.len() * nodes.len(), entries.len());
        CoxeterMatrix { nodes, entries }
    }

    fn validate(&self) -> Result<(), MatrixError> {
        let n = self.rank();
        for s in 0..n {
            if self.get(s, s) != Label::Finite(1) {
                return Err(MatrixError::Diagonal(self.nodes[s].clone()));
            }
            for t in 0..n {
                if s == t {
                    continue;
                }
                let m = self.get(s, t);
                if m != self.get(t, s) {
                    return Err(MatrixError::Asymmetric {
                        s: self.nodes[s].clone(),
                        t: self.nodes[t].clone(),
                    });
                }
                if let Label::Finite(v) = m {
                    if v < 2 {
                        return Err(MatrixError::OffDiagonal {
                            s: self.nodes[s].clone(),
                            t: self.nodes[t].clone(),
                            m,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn index_of(&self, node: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == node)
    }

    #[inline]
    pub fn get(&self, s: usize, t: usize) -> Label {
        self.entries[s * self.rank() + t]
    }

    /// Sets `m_{s,t} = m_{t,s} = label` (`s != t`).
    pub fn set(&mut self, s: usize, t: usize, label: Label) {
        assert_ne!(s, t, "diagonal entries are fixed to 1");
        assert!(
            label.finite().is_none_or(|m| m >= 2),
            "off-diagonal labels must be at least 2"
        );
        let n = self.rank();
        self.entries[s * n + t] = label;
        self.entries[t * n + s] = label;
    }

    pub(crate) fn flat(&self) -> &[Label] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Label>> {
        self.entries.chunks(self.rank()).map(<[Label]>::to_vec).collect()
    }

    /// Pairs `s < t` with an edge in the diagram.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        let n = self.rank();
        (0..n).flat_map(move |s| {
            (s + 1..n).filter_map(move |t| {
                let m = self.get(s, t);
                m.is_edge().then_some((s, t, m))
            })
        })
    }

    /// Standard subgroup on the given node indices, in the given order.
    pub fn submatrix(&self, subset: &[usize]) -> CoxeterMatrix {
        let nodes = subset.iter().map(|&i| self.nodes[i].clone()).collect();
        let entries = subset
            .iter()
            .flat_map(|&s| subset.iter().map(move |&t| self.get(s, t)))
            .collect();
        CoxeterMatrix { nodes, entries }
    }

    /// Relabels nodes so that new node `i` is old node `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> CoxeterMatrix {
        assert_eq!(perm.len(), self.rank());
        self.submatrix(perm)
    }

    pub fn with_node_names(mut self, names: Vec<String>) -> Result<Self, MatrixError> {
        if names.len() != self.rank() {
            return Err(MatrixError::Shape {
                rows: self.rank(),
                nodes: names.len(),
            });
        }
        check_unique(&names)?;
        self.nodes = names;
        Ok(self)
    }

    /// True when `m_{t,u} = 2` for every `t` in `a` and `u` in `b`.
    pub fn orthogonal(&self, a: &[usize], b: &[usize]) -> bool {
        a.iter()
            .all(|&t| b.iter().all(|&u| t != u && self.get(t, u) == Label::TWO))
    }

    /// Connected components of the diagram, each sorted, ordered by smallest
    /// node index.
    #[allow(clippy::needless_range_loop)]
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
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
                    if !seen[t] && self.get(s, t).is_edge() {
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

    pub fn is_connected(&self) -> bool {
        self.rank() > 0 && self.component_indices().len() == 1
    }
}

fn check_unique(nodes: &[String]) -> Result<(), MatrixError> {
    let mut seen = HashSet::new();
    for node in nodes {
        if !seen.insert(node.as_str()) {
            return Err(MatrixError::DuplicateNode(node.clone()));
        }
    }
    Ok(())
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

/// One labeled edge of a Coxeter diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: String,
    pub b: String,
    pub m: Label,
}

/// Labeled graph view of a Coxeter group: nodes `S`, edges where `m >= 3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterDiagram {
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
}

impl CoxeterDiagram {
    pub fn new(nodes: Vec<String>, edges: Vec<Edge>) -> Result<Self, MatrixError> {
        check_unique(&nodes)?;
        let mut seen = HashSet::new();
        for e in &edges {
            for end in [&e.a, &e.b] {
                if !nodes.contains(end) {
                    return Err(MatrixError::UnknownNode(end.clone()));
                }
            }
            if !e.m.is_edge() {
                return Err(MatrixError::EdgeLabel {
                    a: e.a.clone(),
                    b: e.b.clone(),
                    m: e.m,
                });
            }
            if e.a == e.b {
                return Err(MatrixError::Diagonal(e.a.clone()));
            }
            let key = if e.a < e.b {
                (e.a.clone(), e.b.clone())
            } else {
                (e.b.clone(), e.a.clone())
            };
            if !seen.insert(key) {
                return Err(MatrixError::Asymmetric {
                    s: e.a.clone(),
                    t: e.b.clone(),
                });
            }
        }
        Ok(CoxeterDiagram { nodes, edges })
    }

    pub fn to_matrix(&self) -> CoxeterMatrix {
        CoxeterMatrix::from(self)
    }

    pub fn rank(&self) -> usize {
        self.nodes.len()
    }

    /// Connected components as diagrams, ordered by smallest node position.
    pub fn components(&self) -> Vec<CoxeterDiagram> {
        let m = self.to_matrix();
        m.component_indices()
            .iter()
            .map(|c| CoxeterDiagram::from(&m.submatrix(c)))
            .collect()
    }
}

impl From<&CoxeterDiagram> for CoxeterMatrix {
    fn from(d: &CoxeterDiagram) -> Self {
        let mut m = CoxeterMatrix::free(d.nodes.clone()).expect("diagram nodes are unique");
        for e in &d.edges {
            let a = m.index_of(&e.a).expect("edge endpoints are nodes");
            let b = m.index_of(&e.b).expect("edge endpoints are nodes");
            m.set(a, b, e.m);
        }
        m
    }
}

impl Serialize for CoxeterMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CoxeterDiagram::from(self).serialize(serializer)
    }
}

impl From<&CoxeterMatrix> for CoxeterDiagram {
    fn from(m: &CoxeterMatrix) -> Self {
        let edges = m
            .edges()
            .map(|(s, t, label)| Edge {
                a: m.nodes[s].clone(),
                b: m.nodes[t].clone(),
                m: label,
            })
            .collect();
        CoxeterDiagram {
            nodes: m.nodes.clone(),
            edges,
        }
    }
}

impl From<CoxeterMatrix> for CoxeterDiagram {
    fn from(m: CoxeterMatrix) -> Self {
        CoxeterDiagram::from(&m)
    }
}

impl From<CoxeterDiagram> for CoxeterMatrix {
    fn from(d: CoxeterDiagram) -> Self {
        CoxeterMatrix::from(&d)
    }
}
