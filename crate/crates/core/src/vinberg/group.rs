//! Breadth-first enumeration of the projective reflection group of a simplex.
//!
//! Elements are found level by level; within a level, words are extended in
//! lexicographic order, so every element is recorded with its lexicographically
//! smallest reduced word. Duplicates are detected exactly on the rational path
//! and through a bucketed linear key with entrywise verification otherwise.

use std::collections::HashMap;

use nalgebra::DMatrix;
use serde::Serialize;

use super::exact::RatMatrix;
use super::simplex::MirrorSimplex;
use super::VinbergError;

/// Default bound on the number of stored elements.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Default entrywise tolerance (relative to the entry scale) for floating
/// duplicate verification.
pub const DEFAULT_DEDUP_TOL: f64 = 1e-7;

/// Width of a key bucket.
const BUCKET: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupElement {
    pub length: usize,
    pub word: Vec<usize>,
    #[serde(serialize_with = "serialize_matrix")]
    pub matrix: DMatrix<f64>,
}

fn serialize_matrix<S: serde::Serializer>(m: &DMatrix<f64>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq((0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect::<Vec<f64>>()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupEnumeration {
    pub elements: Vec<GroupElement>,
    /// Number of elements of each word length.
    pub growth: Vec<usize>,
    /// True when some level produced no new element.
    pub closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerationOptions {
    pub max_length: usize,
    pub dedup_tol: f64,
    pub cap: usize,
}

impl EnumerationOptions {
    pub fn new(max_length: usize) -> Self {
        EnumerationOptions { max_length, dedup_tol: DEFAULT_DEDUP_TOL, cap: DEFAULT_CAP }
    }
}

pub fn enumerate_group(
    simplex: &MirrorSimplex,
    max_length: usize,
    dedup_tol: f64,
) -> Result<GroupEnumeration, VinbergError> {
    enumerate_group_with(simplex, &EnumerationOptions { max_length, dedup_tol, cap: DEFAULT_CAP })
}

pub fn enumerate_group_with(
    simplex: &MirrorSimplex,
    opts: &EnumerationOptions,
) -> Result<GroupEnumeration, VinbergError> {
    match &simplex.exact_reflections {
        Some(exact) => run(exact, opts, ExactStore::default(), |m| m.to_f64()),
        None => {
            let store = FloatStore::new(simplex.rank(), opts.dedup_tol);
            run(&simplex.reflections, opts, store, |m| m.clone())
        }
    }
}

trait Store<M> {
    /// Inserts `m` unless an equal element is present; returns whether it was new.
    fn insert(&mut self, m: &M) -> bool;
}

trait Mat: Clone {
    fn identity(n: usize) -> Self;
    fn times(&self, other: &Self) -> Self;
}

impl Mat for RatMatrix {
    fn identity(n: usize) -> Self {
        RatMatrix::identity(n)
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

impl Mat for DMatrix<f64> {
    fn identity(n: usize) -> Self {
        DMatrix::identity(n, n)
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

fn run<M: Mat, S: Store<M>>(
    generators: &[M],
    opts: &EnumerationOptions,
    mut store: S,
    to_f64: impl Fn(&M) -> DMatrix<f64>,
) -> Result<GroupEnumeration, VinbergError> {
    let n = generators.len();
    let id = M::identity(n);
    store.insert(&id);
    let mut elements = vec![GroupElement { length: 0, word: Vec::new(), matrix: to_f64(&id) }];
    let mut growth = vec![1];
    let mut level: Vec<(Vec<usize>, M)> = vec![(Vec::new(), id)];
    let mut closed = false;
    for length in 1..=opts.max_length {
        let mut next = Vec::new();
        for (word, m) in &level {
            for (s, g) in generators.iter().enumerate() {
                if word.last() == Some(&s) {
                    continue;
                }
                let candidate = m.times(g);
                if store.insert(&candidate) {
                    let mut w = word.clone();
                    w.push(s);
                    elements.push(GroupElement { length, word: w.clone(), matrix: to_f64(&candidate) });
                    if elements.len() > opts.cap {
                        return Err(VinbergError::CapExceeded(opts.cap));
                    }
                    next.push((w, candidate));
                }
            }
        }
        if next.is_empty() {
            closed = true;
            break;
        }
        growth.push(next.len());
        level = next;
    }
    Ok(GroupEnumeration { elements, growth, closed })
}

#[derive(Default)]
struct ExactStore {
    seen: HashMap<RatMatrix, ()>,
}

impl Store<RatMatrix> for ExactStore {
    fn insert(&mut self, m: &RatMatrix) -> bool {
        self.seen.insert(m.clone(), ()).is_none()
    }
}

struct FloatStore {
    weights: Vec<f64>,
    tol: f64,
    buckets: HashMap<i64, Vec<DMatrix<f64>>>,
}

impl FloatStore {
    fn new(n: usize, tol: f64) -> Self {
        // fixed irrational-looking weights make accidental key collisions rare
        let weights = (0..n * n).map(|k| 1.0 + ((k as f64 + 1.0) * 0.618_033_988_75).fract()).collect();
        FloatStore { weights, tol, buckets: HashMap::new() }
    }

    fn key(&self, m: &DMatrix<f64>) -> (f64, f64) {
        let mut acc = 0.0;
        let mut scale = 1.0f64;
        for (x, w) in m.iter().zip(&self.weights) {
            acc += x * w;
            scale = scale.max(x.abs());
        }
        (acc, scale)
    }
}

impl Store<DMatrix<f64>> for FloatStore {
    fn insert(&mut self, m: &DMatrix<f64>) -> bool {
        let (k, scale) = self.key(m);
        let width = BUCKET * scale;
        let b = (k / width).round() as i64;
        let tol = self.tol * scale;
        for probe in [b - 1, b, b + 1] {
            if let Some(list) = self.buckets.get(&probe) {
                if list.iter().any(|other| (other - m).amax() <= tol) {
                    return false;
                }
            }
        }
        self.buckets.entry(b).or_default().push(m.clone());
        true
    }
}
