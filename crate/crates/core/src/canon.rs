//! Canonical labeling of Coxeter matrices.
//!
//! Individualization–refinement: colors are refined by the multiset of
//! (label, neighbor color) pairs until stable, then the search branches on
//! every vertex of the first non-trivial cell and keeps the lexicographically
//! smallest upper triangle. Branches on twin vertices (same labels to every
//! other vertex) are skipped, since swapping twins is an automorphism.

use crate::diagram::{default_names, CoxeterMatrix};

/// Isomorphism-invariant code: the upper triangle of the relabeled matrix,
/// prefixed by the rank.
pub type CanonicalCode = Vec<u8>;

pub(crate) fn canonical_code_flat(n: usize, labels: &[u8]) -> (Vec<usize>, CanonicalCode) {
    debug_assert_eq!(labels.len(), n * n);
    if n == 0 {
        return (Vec::new(), vec![0]);
    }
    let mut search = Search { n, labels, best: None };
    let colors = vec![0u32; n];
    search.descend(colors);
    let (perm, code) = search.best.expect("search visits at least one leaf");
    (perm, code)
}

struct Search<'a> {
    n: usize,
    labels: &'a [u8],
    best: Option<(Vec<usize>, CanonicalCode)>,
}

impl Search<'_> {
    fn label(&self, a: usize, b: usize) -> u8 {
        self.labels[a * self.n + b]
    }

    fn refine(&self, colors: &mut [u32]) {
        let n = self.n;
        let mut classes = distinct(colors);
        loop {
            let sigs: Vec<(u32, Vec<(u8, u32)>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(u8, u32)> = (0..n)
                        .filter(|&u| u != v)
                        .map(|u| (self.label(v, u), colors[u]))
                        .collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut sorted: Vec<&(u32, Vec<(u8, u32)>)> = sigs.iter().collect();
            sorted.sort();
            sorted.dedup();
            for v in 0..n {
                colors[v] = sorted.binary_search(&&sigs[v]).expect("signature present") as u32;
            }
            let now = sorted.len();
            if now == classes {
                return;
            }
            classes = now;
        }
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        (0..self.n)
            .filter(|&w| w != a && w != b)
            .all(|w| self.label(a, w) == self.label(b, w))
    }

    fn descend(&mut self, mut colors: Vec<u32>) {
        self.refine(&mut colors);
        let n = self.n;
        let mut counts = vec![0usize; n];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
            self.leaf(&colors);
            return;
        };
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let next: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| if u == v { 2 * c } else { 2 * c + 1 })
                .collect();
            self.descend(next);
        }
    }

    fn leaf(&mut self, colors: &[u32]) {
        let n = self.n;
        let mut perm = vec![0usize; n];
        for (v, &c) in colors.iter().enumerate() {
            perm[c as usize] = v;
        }
        let mut code = Vec::with_capacity(1 + n * (n - 1) / 2);
        code.push(n as u8);
        for i in 0..n {
            for j in i + 1..n {
                code.push(self.label(perm[i], perm[j]));
            }
        }
        match &self.best {
            Some((_, best)) if *best <= code => {}
            _ => self.best = Some((perm, code)),
        }
    }
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Canonical code of a Coxeter matrix; equal codes iff isomorphic.
pub fn canonical_code(m: &CoxeterMatrix) -> CanonicalCode {
    canonical_form(m).1
}

/// Canonical relabeling: returns `(perm, code)` with `perm[i]` the original
/// index of canonical node `i`.
pub fn canonical_form(m: &CoxeterMatrix) -> (Vec<usize>, CanonicalCode) {
    let n = m.rank();
    let labels: Vec<u8> = m.flat().iter().map(|l| l.code()).collect();
    canonical_form_codes(n, &labels)
}

pub(crate) fn canonical_form_codes(n: usize, labels: &[u8]) -> (Vec<usize>, CanonicalCode) {
    canonical_code_flat(n, labels)
}

/// Representative in canonical node order with nodes renamed `s0, s1, ...`.
pub fn canonical_representative(m: &CoxeterMatrix) -> CoxeterMatrix {
    let (perm, _) = canonical_form(m);
    m.permuted(&perm)
        .with_node_names(default_names(m.rank()))
        .expect("default names are unique")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Label;

    fn cycle(n: usize, labels: &[u32]) -> CoxeterMatrix {
        let edges: Vec<_> = (0..n)
            .map(|i| (i, (i + 1) % n, Label::Finite(labels[i % labels.len()])))
            .collect();
        CoxeterMatrix::with_labels(n, &edges)
    }

    #[test]
    fn relabeling_invariance() {
        let m = cycle(5, &[3, 4, 3, 5, 3]);
        let code = canonical_code(&m);
        for perm in [[1, 2, 3, 4, 0], [4, 3, 2, 1, 0], [0, 2, 4, 1, 3]] {
            assert_eq!(canonical_code(&m.permuted(&perm)), code);
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        // paths (5,3,4) vs (4,3,5) are isomorphic; (5,4,3) is not
        let p = |a, b, c| {
            CoxeterMatrix::with_labels(
                4,
                &[(0, 1, Label::Finite(a)), (1, 2, Label::Finite(b)), (2, 3, Label::Finite(c))],
            )
        };
        assert_eq!(canonical_code(&p(5, 3, 4)), canonical_code(&p(4, 3, 5)));
        assert_ne!(canonical_code(&p(5, 3, 4)), canonical_code(&p(5, 4, 3)));
    }

    #[test]
    fn symmetric_graphs_are_fast() {
        // empty and complete graphs on 10 nodes would need 10! leaves without
        // twin pruning
        let free = CoxeterMatrix::with_labels(10, &[]);
        let mut complete = Vec::new();
        for i in 0..10 {
            for j in i + 1..10 {
                complete.push((i, j, Label::Finite(3)));
            }
        }
        let k10 = CoxeterMatrix::with_labels(10, &complete);
        assert_ne!(canonical_code(&free), canonical_code(&k10));
        let c10 = cycle(10, &[3]);
        assert_eq!(canonical_code(&c10), canonical_code(&c10.permuted(&[3, 1, 4, 0, 5, 9, 2, 6, 8, 7])));
    }

    #[test]
    fn representative_is_stable() {
        let m = cycle(4, &[6, 3, 4, 3]);
        let r = canonical_representative(&m);
        assert_eq!(canonical_representative(&r), r);
        assert_eq!(canonical_representative(&m.permuted(&[2, 0, 3, 1])), r);
    }
}
