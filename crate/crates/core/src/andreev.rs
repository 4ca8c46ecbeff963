//! Labeled combinatorial 3-polytopes and Andreev's conditions for compact and
//! finite-volume hyperbolic realizations with non-obtuse dihedral angles.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::f64::consts::PI;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lorentz::Angle;

/// Tolerance for angle sums when some label is not a rational multiple of pi.
pub const ANGLE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AndreevError {
    #[error("face {0} has fewer than 3 vertices")]
    ShortFace(usize),
    #[error("face {face} uses unknown vertex {vertex}")]
    UnknownVertex { face: usize, vertex: String },
    #[error("face {face} repeats vertex {vertex}")]
    RepeatedVertex { face: usize, vertex: String },
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("edge {a}-{b} lies in only one face")]
    OpenEdge { a: String, b: String },
    #[error("edge {a}-{b} lies in more than two faces")]
    OverusedEdge { a: String, b: String },
    #[error("faces {0} and {1} share more than one edge")]
    MultipleSharedEdges(usize, usize),
    #[error("Euler characteristic V - E + F = {v} - {e} + {f} is not 2")]
    Euler { v: usize, e: usize, f: usize },
    #[error("vertex-edge graph is not 3-connected (removing {0:?} disconnects it)")]
    NotThreeConnected(Vec<String>),
    #[error("label on faces {0} and {1}, which do not share an edge")]
    NotAdjacent(usize, usize),
    #[error("faces {0} and {1} are labeled twice")]
    DuplicateLabel(usize, usize),
    #[error("label {value} on faces {face_a} and {face_b} is outside (0, pi/2]")]
    LabelOutOfRange { face_a: usize, face_b: usize, value: String },
    #[error("edge between faces {0} and {1} is unlabeled")]
    MissingLabel(usize, usize),
    #[error("unknown vertex {0}")]
    InvalidVertex(String),
    #[error("the polytope is a tetrahedron; use the Lanner classification instead")]
    Tetrahedron,
    #[error("invalid polytope JSON: {0}")]
    Json(String),
}

/// A combinatorial 3-polytope given by faces as cyclic vertex lists.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope3 {
    vertices: Vec<String>,
    faces: Vec<Vec<usize>>,
    /// Edges as sorted vertex pairs.
    edges: Vec<(usize, usize)>,
    /// The two faces of each edge, smaller index first.
    edge_faces: Vec<(usize, usize)>,
    face_edge: HashMap<(usize, usize), usize>,
}

impl Polytope3 {
    pub fn new(vertices: Vec<String>, faces: Vec<Vec<String>>) -> Result<Self, AndreevError> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(AndreevError::DuplicateVertex(v.clone()));
            }
        }
        let mut idx_faces = Vec::with_capacity(faces.len());
        for (f, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(AndreevError::ShortFace(f));
            }
            let mut seen = BTreeSet::new();
            let mut out = Vec::with_capacity(face.len());
            for v in face {
                let &i = index
                    .get(v)
                    .ok_or_else(|| AndreevError::UnknownVertex { face: f, vertex: v.clone() })?;
                if !seen.insert(i) {
                    return Err(AndreevError::RepeatedVertex { face: f, vertex: v.clone() });
                }
                out.push(i);
            }
            idx_faces.push(out);
        }

        let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (f, face) in idx_faces.iter().enumerate() {
            for k in 0..face.len() {
                let (a, b) = (face[k], face[(k + 1) % face.len()]);
                by_edge.entry((a.min(b), a.max(b))).or_default().push(f);
            }
        }
        let name = |i: usize| vertices[i].clone();
        let mut edges = Vec::new();
        let mut edge_faces = Vec::new();
        let mut face_edge = HashMap::new();
        for ((a, b), fs) in by_edge {
            match fs[..] {
                [f, g] => {
                    let key = (f.min(g), f.max(g));
                    if face_edge.insert(key, edges.len()).is_some() {
                        return Err(AndreevError::MultipleSharedEdges(key.0, key.1));
                    }
                    edges.push((a, b));
                    edge_faces.push(key);
                }
                [_] => return Err(AndreevError::OpenEdge { a: name(a), b: name(b) }),
                _ => return Err(AndreevError::OverusedEdge { a: name(a), b: name(b) }),
            }
        }
        let (v, e, f) = (vertices.len(), edges.len(), idx_faces.len());
        if v + f != e + 2 {
            return Err(AndreevError::Euler { v, e, f });
        }
        let p = Polytope3 { vertices, faces: idx_faces, edges, edge_faces, face_edge };
        if let Some(cut) = p.separating_set() {
            return Err(AndreevError::NotThreeConnected(cut.into_iter().map(|i| p.vertices[i].clone()).collect()));
        }
        Ok(p)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The two faces meeting along edge `e`.
    pub fn edge_faces(&self, e: usize) -> (usize, usize) {
        self.edge_faces[e]
    }

    /// The edge shared by two faces, if any.
    pub fn shared_edge(&self, f: usize, g: usize) -> Option<usize> {
        self.face_edge.get(&(f.min(g), f.max(g))).copied()
    }

    pub fn is_tetrahedron(&self) -> bool {
        self.faces.len() == 4
    }

    /// At most two vertices whose removal disconnects the vertex-edge graph.
    fn separating_set(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let connected_without = |removed: &[usize]| -> bool {
            let Some(start) = (0..n).find(|v| !removed.contains(v)) else {
                return true;
            };
            let mut seen = vec![false; n];
            seen[start] = true;
            let mut stack = vec![start];
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] && !removed.contains(&w) {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            count == n - removed.len()
        };
        if !connected_without(&[]) {
            return Some(Vec::new());
        }
        for a in 0..n {
            if !connected_without(&[a]) {
                return Some(vec![a]);
            }
            for b in a + 1..n {
                if !connected_without(&[a, b]) {
                    return Some(vec![a, b]);
                }
            }
        }
        None
    }
}

/// A dihedral label on the edge between two faces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeLabel {
    pub face_a: usize,
    pub face_b: usize,
    pub theta: Angle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPolytope3 {
    pub polytope: Polytope3,
    /// Label of each edge, indexed like [`Polytope3::edges`].
    pub theta: Vec<Angle>,
    pub warnings: Vec<String>,
}

fn in_range(a: Angle) -> bool {
    match a {
        Angle::PiFraction(r) => r > Ratio::from_integer(0) && r <= Ratio::new(1, 2),
        Angle::Radians(x) => x > 0.0 && x <= PI / 2.0,
    }
}

fn is_right(a: Angle) -> bool {
    match a {
        Angle::PiFraction(r) => r == Ratio::new(1, 2),
        Angle::Radians(x) => (x - PI / 2.0).abs() <= ANGLE_TOL,
    }
}

pub fn build_labeled_polytope(
    vertices: Vec<String>,
    faces: Vec<Vec<String>>,
    labels: &[EdgeLabel],
) -> Result<LabeledPolytope3, AndreevError> {
    let polytope = Polytope3::new(vertices, faces)?;
    let mut theta: Vec<Option<Angle>> = vec![None; polytope.edges.len()];
    for l in labels {
        let e = polytope
            .shared_edge(l.face_a, l.face_b)
            .ok_or(AndreevError::NotAdjacent(l.face_a, l.face_b))?;
        if !in_range(l.theta) {
            return Err(AndreevError::LabelOutOfRange {
                face_a: l.face_a,
                face_b: l.face_b,
                value: format!("{:?}", l.theta),
            });
        }
        if theta[e].replace(l.theta).is_some() {
            return Err(AndreevError::DuplicateLabel(l.face_a, l.face_b));
        }
    }
    let theta = theta
        .into_iter()
        .enumerate()
        .map(|(e, t)| {
            t.ok_or_else(|| {
                let (f, g) = polytope.edge_faces(e);
                AndreevError::MissingLabel(f, g)
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let warnings = if polytope.is_tetrahedron() {
        vec!["tetrahedron: Andreev theorem does not apply".to_string()]
    } else {
        Vec::new()
    };
    Ok(LabeledPolytope3 { polytope, theta, warnings })
}

/// Vertex ids in polytope JSON may be numbers or strings.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum VertexId {
    Int(i64),
    Str(String),
}

impl VertexId {
    fn into_name(self) -> String {
        match self {
            VertexId::Int(i) => i.to_string(),
            VertexId::Str(s) => s,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
struct JsonLabel {
    face_a: usize,
    face_b: usize,
    theta_num: i64,
    theta_den: i64,
}

#[derive(Debug, Clone, Deserialize)]
struct JsonPolytope {
    vertices: Vec<VertexId>,
    faces: Vec<Vec<VertexId>>,
    labels: Vec<JsonLabel>,
}

/// Reads `{vertices, faces, labels: [{face_a, face_b, theta_num, theta_den}]}`
/// with `theta = pi * num / den`.
pub fn polytope_from_json(text: &str) -> Result<LabeledPolytope3, AndreevError> {
    let raw: JsonPolytope = serde_json::from_str(text).map_err(|e| AndreevError::Json(e.to_string()))?;
    let mut labels = Vec::with_capacity(raw.labels.len());
    for l in raw.labels {
        if l.theta_den == 0 {
            return Err(AndreevError::LabelOutOfRange {
                face_a: l.face_a,
                face_b: l.face_b,
                value: format!("{}/0", l.theta_num),
            });
        }
        labels.push(EdgeLabel {
            face_a: l.face_a,
            face_b: l.face_b,
            theta: Angle::PiFraction(Ratio::new(l.theta_num, l.theta_den)),
        });
    }
    build_labeled_polytope(
        raw.vertices.into_iter().map(VertexId::into_name).collect(),
        raw.faces.into_iter().map(|f| f.into_iter().map(VertexId::into_name).collect()).collect(),
        &labels,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CircuitClass {
    Spherical,
    Euclidean,
    Hyperbolic,
}

/// An angle sum, exact when every summand is a rational multiple of pi.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleSum {
    /// The sum divided by pi, as `"num/den"`.
    #[serde(serialize_with = "serialize_fraction")]
    pub pi_fraction: Option<Ratio<i64>>,
    pub radians: f64,
}

fn serialize_fraction<S: serde::Serializer>(r: &Option<Ratio<i64>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format!("{}/{}", r.numer(), r.denom())),
        None => s.serialize_none(),
    }
}

impl AngleSum {
    fn of(angles: impl IntoIterator<Item = Angle>) -> Self {
        let mut exact = Some(Ratio::from_integer(0));
        let mut radians = 0.0;
        for a in angles {
            radians += a.radians();
            exact = match (exact, a) {
                (Some(s), Angle::PiFraction(r)) => Some(s + r),
                _ => None,
            };
        }
        AngleSum { pi_fraction: exact, radians }
    }

    /// Compares against `(k - 2) pi`.
    fn class(&self, k: usize) -> CircuitClass {
        let bound = k as i64 - 2;
        let ord = match self.pi_fraction {
            Some(r) => r.cmp(&Ratio::from_integer(bound)),
            None => {
                let diff = self.radians - bound as f64 * PI;
                if diff.abs() <= ANGLE_TOL {
                    std::cmp::Ordering::Equal
                } else {
                    diff.total_cmp(&0.0)
                }
            }
        };
        match ord {
            std::cmp::Ordering::Greater => CircuitClass::Spherical,
            std::cmp::Ordering::Equal => CircuitClass::Euclidean,
            std::cmp::Ordering::Less => CircuitClass::Hyperbolic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Circuit {
    pub facets: Vec<usize>,
    pub edges: Vec<usize>,
    pub prismatic: bool,
    pub angle_sum: AngleSum,
    pub class: CircuitClass,
}

impl LabeledPolytope3 {
    fn circuit(&self, facets: Vec<usize>) -> Circuit {
        let k = facets.len();
        let p = &self.polytope;
        let edges: Vec<usize> = (0..k)
            .map(|i| p.shared_edge(facets[i], facets[(i + 1) % k]).expect("consecutive facets are adjacent"))
            .collect();
        let prismatic = edges.iter().enumerate().all(|(i, &e)| {
            let (a, b) = p.edges[e];
            edges[i + 1..].iter().all(|&f| {
                let (c, d) = p.edges[f];
                a != c && a != d && b != c && b != d
            })
        });
        let angle_sum = AngleSum::of(edges.iter().map(|&e| self.theta[e]));
        Circuit { class: angle_sum.class(k), facets, edges, prismatic, angle_sum }
    }

    /// Faces around vertex `v` in cyclic order.
    fn vertex_circuit(&self, v: usize) -> Vec<usize> {
        let p = &self.polytope;
        let around: Vec<usize> = (0..p.faces.len()).filter(|&f| p.faces[f].contains(&v)).collect();
        let mut order = vec![around[0]];
        while order.len() < around.len() {
            let last = *order.last().expect("nonempty");
            let next = around
                .iter()
                .copied()
                .find(|&f| {
                    !order.contains(&f)
                        && p.shared_edge(last, f).is_some_and(|e| {
                            let (a, b) = p.edges[e];
                            a == v || b == v
                        })
                })
                .expect("faces around a vertex form a cycle");
            order.push(next);
        }
        order
    }
}

/// Prismatic `k`-circuits, each listed once up to rotation and reflection.
pub fn prismatic_circuits(p: &LabeledPolytope3, k: usize) -> Vec<Circuit> {
    all_circuits(p, k).into_iter().filter(|c| c.prismatic).collect()
}

/// All `k`-circuits in canonical form: the smallest facet first and the
/// second facet smaller than the last.
pub fn all_circuits(p: &LabeledPolytope3, k: usize) -> Vec<Circuit> {
    let nf = p.polytope.faces.len();
    let adjacent = |f: usize, g: usize| p.polytope.shared_edge(f, g).is_some();
    if k < 3 {
        return Vec::new();
    }
    fn extend(
        path: &mut Vec<usize>,
        k: usize,
        nf: usize,
        adjacent: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().expect("nonempty");
        if path.len() == k {
            if adjacent(last, path[0]) && path[1] < last {
                out.push(path.clone());
            }
            return;
        }
        for g in path[0] + 1..nf {
            if !path.contains(&g) && adjacent(last, g) {
                path.push(g);
                extend(path, k, nf, adjacent, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for start in 0..nf {
        extend(&mut vec![start], k, nf, &adjacent, &mut out);
    }
    out.into_iter().map(|c| p.circuit(c)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexReport {
    pub vertex: String,
    pub class: CircuitClass,
    pub angle_sum: AngleSum,
    pub degree: usize,
}

pub fn vertex_class(p: &LabeledPolytope3, vertex: &str) -> Result<VertexReport, AndreevError> {
    let v = p
        .polytope
        .vertices
        .iter()
        .position(|x| x == vertex)
        .ok_or_else(|| AndreevError::InvalidVertex(vertex.to_string()))?;
    Ok(vertex_report(p, v))
}

fn vertex_report(p: &LabeledPolytope3, v: usize) -> VertexReport {
    let c = p.circuit(p.vertex_circuit(v));
    VertexReport {
        vertex: p.polytope.vertices[v].clone(),
        class: c.class,
        angle_sum: c.angle_sum,
        degree: c.facets.len(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AndreevMode {
    Compact,
    FiniteVolume,
}

/// The two shapes in which conditions (i) and (ii) hold but the facet graph
/// is disconnected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exceptional {
    RightTriangularPrism,
    QuadrilateralPyramid,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AndreevFailure {
    Vertex(VertexReport),
    PrismaticCircuit(Circuit),
    DisconnectedGraph { components: Vec<Vec<usize>>, exceptional: Option<Exceptional> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AndreevVerdict {
    pub mode: AndreevMode,
    pub realizable: bool,
    pub failures: Vec<AndreevFailure>,
}

/// Connected components of the facet graph: facets are joined unless they
/// meet along an edge labeled `pi/2`.
#[allow(clippy::needless_range_loop)]
pub fn facet_graph_components(p: &LabeledPolytope3) -> Vec<Vec<usize>> {
    let nf = p.polytope.faces.len();
    let joined = |f: usize, g: usize| match p.polytope.shared_edge(f, g) {
        None => true,
        Some(e) => !is_right(p.theta[e]),
    };
    let mut seen = vec![false; nf];
    let mut out = Vec::new();
    for start in 0..nf {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            for g in 0..nf {
                if !seen[g] && g != f && joined(f, g) {
                    seen[g] = true;
                    comp.push(g);
                    stack.push(g);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn exceptional_shape(p: &LabeledPolytope3) -> Option<Exceptional> {
    let faces = &p.polytope.faces;
    let sizes: Vec<usize> = faces.iter().map(|f| f.len()).collect();
    let count = |n: usize| sizes.iter().filter(|&&s| s == n).count();
    if faces.len() == 5 && count(3) == 2 && count(4) == 3 {
        let triangles: Vec<usize> = (0..5).filter(|&f| sizes[f] == 3).collect();
        let right_bases = (0..p.theta.len()).all(|e| {
            let (f, g) = p.polytope.edge_faces(e);
            let touches_base = triangles.contains(&f) || triangles.contains(&g);
            !touches_base || is_right(p.theta[e])
        });
        if right_bases {
            return Some(Exceptional::RightTriangularPrism);
        }
    }
    if faces.len() == 5 && count(3) == 4 && count(4) == 1 {
        let base = (0..5).find(|&f| sizes[f] == 4).expect("one quadrilateral");
        let apex = (0..p.polytope.vertices.len()).find(|v| !faces[base].contains(v)).expect("apex");
        let base_label = |side: usize| {
            let (a, b) = (faces[base][side], faces[base][(side + 1) % 4]);
            let e = p.polytope.edges.iter().position(|&x| x == (a.min(b), a.max(b))).expect("base edge");
            is_right(p.theta[e])
        };
        let opposite_right = (base_label(0) && base_label(2)) || (base_label(1) && base_label(3));
        if vertex_report(p, apex).class == CircuitClass::Euclidean && opposite_right {
            return Some(Exceptional::QuadrilateralPyramid);
        }
    }
    None
}

pub fn andreev_check(p: &LabeledPolytope3, mode: AndreevMode) -> Result<AndreevVerdict, AndreevError> {
    if p.polytope.is_tetrahedron() {
        return Err(AndreevError::Tetrahedron);
    }
    let mut failures = Vec::new();
    for v in 0..p.polytope.vertices.len() {
        let r = vertex_report(p, v);
        let ok = match mode {
            AndreevMode::Compact => r.class == CircuitClass::Spherical,
            AndreevMode::FiniteVolume => r.class != CircuitClass::Hyperbolic,
        };
        if !ok {
            failures.push(AndreevFailure::Vertex(r));
        }
    }
    for k in [3, 4] {
        for c in prismatic_circuits(p, k) {
            if c.class != CircuitClass::Hyperbolic {
                failures.push(AndreevFailure::PrismaticCircuit(c));
            }
        }
    }
    let components = facet_graph_components(p);
    if components.len() > 1 {
        let exceptional = if failures.is_empty() { exceptional_shape(p) } else { None };
        failures.push(AndreevFailure::DisconnectedGraph { components, exceptional });
    }
    Ok(AndreevVerdict { mode, realizable: failures.is_empty(), failures })
}
