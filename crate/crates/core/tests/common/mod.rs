//! Oracles shared by the integration tests. None of them call into the
//! library's group enumeration or linear algebra.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use coxeter_core::{CoxeterMatrix, Label};
use rand::Rng;

/// Order of the permutation group generated by `gens`, by breadth-first
/// closure over permutation tuples.
pub fn permutation_group_order(gens: &[Vec<usize>]) -> usize {
    let n = gens[0].len();
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

/// Adjacent transpositions of `0..n`: the symmetric group `A_{n-1}`.
pub fn symmetric_generators(n: usize) -> Vec<Vec<usize>> {
    (0..n - 1)
        .map(|i| {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(i, i + 1);
            p
        })
        .collect()
}

/// Signed permutations of `n` letters acting on `±1..±n`, encoded as
/// `0..2n` with `k` and `k + n` opposite.
pub fn hyperoctahedral_generators(n: usize) -> Vec<Vec<usize>> {
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        let mut p: Vec<usize> = (0..2 * n).collect();
        p.swap(i, i + 1);
        p.swap(i + n, i + 1 + n);
        gens.push(p);
    }
    let mut flip: Vec<usize> = (0..2 * n).collect();
    flip.swap(n - 1, 2 * n - 1);
    gens.push(flip);
    gens
}

/// Rotation and reflection of a regular `m`-gon on its vertices.
pub fn dihedral_generators(m: usize) -> Vec<Vec<usize>> {
    vec![(0..m).map(|i| (m - i) % m).collect(), (0..m).map(|i| (m + 1 - i) % m).collect()]
}

/// Mirror reflections of the icosahedron, as permutations of its 12 vertices.
pub fn icosahedral_generators() -> Vec<Vec<usize>> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts = Vec::new();
    for a in [-1.0, 1.0] {
        for b in [-phi, phi] {
            verts.push([0.0, a, b]);
            verts.push([a, b, 0.0]);
            verts.push([b, 0.0, a]);
        }
    }
    // mirror normals: the 15 twofold axes, i.e. midpoints of opposite edges
    let mut normals: Vec<[f64; 3]> = Vec::new();
    for i in 0..12 {
        for j in i + 1..12 {
            let d2: f64 = (0..3).map(|k| (verts[i][k] - verts[j][k]).powi(2)).sum();
            if (d2 - 4.0).abs() < 1e-9 {
                let m = [0, 1, 2].map(|k| verts[i][k] + verts[j][k]);
                let len = m.iter().map(|x| x * x).sum::<f64>().sqrt();
                let m = m.map(|x| x / len);
                if !normals.iter().any(|n| (n[0] * m[0] + n[1] * m[1] + n[2] * m[2]).abs() > 1.0 - 1e-9) {
                    normals.push(m);
                }
            }
        }
    }
    assert_eq!(normals.len(), 15);
    normals
        .iter()
        .map(|n| {
            verts
                .iter()
                .map(|v| {
                    let d = 2.0 * (v[0] * n[0] + v[1] * n[1] + v[2] * n[2]);
                    let w = [v[0] - d * n[0], v[1] - d * n[1], v[2] - d * n[2]];
                    verts
                        .iter()
                        .position(|u| (0..3).all(|k| (u[k] - w[k]).abs() < 1e-9))
                        .expect("mirrors permute the vertices")
                })
                .collect()
        })
        .collect()
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn integer_rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            for k in c + 1..cols {
                rows[r][k] = (rows[rank][c] * rows[r][k] - rows[r][c] * rows[rank][k]) / prev;
            }
            rows[r][c] = 0;
        }
        prev = rows[rank][c];
        rank += 1;
    }
    rank
}

/// Integer reflections `x -> x - x_s a_s` of a 3x3 Cartan matrix, where
/// `a_s` is column `s`.
pub fn integer_reflections(a: &[[i64; 3]; 3]) -> Vec<[[i64; 3]; 3]> {
    (0..3)
        .map(|s| {
            let mut r = [[0i64; 3]; 3];
            for (i, row) in r.iter_mut().enumerate() {
                row[i] = 1;
                row[s] -= a[i][s];
            }
            r
        })
        .collect()
}

pub fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Dimension of the space of symmetric `B` with `r^T B r = B` for all `r`.
pub fn invariant_form_nullity(refl: &[[[i64; 3]; 3]]) -> usize {
    let pairs = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)];
    let mut rows = vec![vec![0i128; 6]; 6 * refl.len()];
    for (k, r) in refl.iter().enumerate() {
        for (c, &(i, j)) in pairs.iter().enumerate() {
            let mut e = [[0i64; 3]; 3];
            e[i][j] = 1;
            e[j][i] = 1;
            for (row, &(p, q)) in pairs.iter().enumerate() {
                let mut v = -e[p][q];
                for x in 0..3 {
                    for y in 0..3 {
                        v += r[x][p] * e[x][y] * r[y][q];
                    }
                }
                rows[6 * k + row][c] = v as i128;
            }
        }
    }
    6 - integer_rank(rows)
}

const LABELS: [Label; 7] = [
    Label::Finite(3),
    Label::Finite(4),
    Label::Finite(5),
    Label::Finite(6),
    Label::Finite(7),
    Label::Finite(8),
    Label::Infinity,
];

/// Random connected Coxeter matrix on `n` nodes: a random spanning tree plus
/// extra edges with probability `extra`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, extra: f64) -> CoxeterMatrix {
    let mut labels = Vec::new();
    for t in 1..n {
        let s = rng.gen_range(0..t);
        labels.push((s, t, LABELS[rng.gen_range(0..LABELS.len())]));
    }
    for s in 0..n {
        for t in s + 1..n {
            if !labels.iter().any(|&(a, b, _)| (a, b) == (s, t)) && rng.gen_bool(extra) {
                labels.push((s, t, LABELS[rng.gen_range(0..LABELS.len())]));
            }
        }
    }
    CoxeterMatrix::with_labels(n, &labels)
}

/// Independent Cosine matrix.
pub fn cosine_rows(m: &CoxeterMatrix) -> Vec<Vec<f64>> {
    let n = m.rank();
    (0..n)
        .map(|s| {
            (0..n)
                .map(|t| match m.get(s, t) {
                    _ if s == t => 2.0,
                    Label::Infinity => -2.0,
                    Label::Finite(k) => -2.0 * (std::f64::consts::PI / k as f64).cos(),
                })
                .collect()
        })
        .collect()
}
