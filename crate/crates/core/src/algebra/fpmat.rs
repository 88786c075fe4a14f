//! Linear algebra over F_p on row vectors.

use crate::algebra::fp::{add, inv, mul, sub};

/// Incrementally built subspace of F_p^n kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    p: u64,
    dim: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Subspace {
    pub fn new(p: u64, dim: usize) -> Self {
        Subspace { p, dim, rows: Vec::new() }
    }

    pub fn from_vectors(p: u64, dim: usize, vs: &[Vec<u64>]) -> Self {
        let mut s = Subspace::new(p, dim);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Residue of `v` modulo the subspace.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v = v.to_vec();
        for (piv, r) in &self.rows {
            let c = v[*piv];
            if c == 0 {
                continue;
            }
            for (x, y) in v.iter_mut().zip(r.iter()) {
                *x = sub(*x, mul(c, *y, p), p);
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether it was independent.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut r = self.reduce(v);
        let Some(piv) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(r[piv], p);
        for x in r.iter_mut() {
            *x = mul(*x, s, p);
        }
        for (_, other) in self.rows.iter_mut() {
            let c = other[piv];
            if c == 0 {
                continue;
            }
            for (x, y) in other.iter_mut().zip(r.iter()) {
                *x = sub(*x, mul(c, *y, p), p);
            }
        }
        self.rows.push((piv, r));
        true
    }

    pub fn basis(&self) -> Vec<Vec<u64>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

/// Rank of a list of row vectors.
pub fn rank(p: u64, rows: &[Vec<u64>]) -> usize {
    let dim = rows.first().map_or(0, |r| r.len());
    Subspace::from_vectors(p, dim, rows).rank()
}

/// Basis of `{x : sum_i x_i rows[i] = 0}`.
pub fn left_kernel(p: u64, rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let m = rows.len();
    let width = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<u64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..m).map(|j| u64::from(i == j)));
            v
        })
        .collect();
    let mut r = 0;
    for c in 0..width {
        let Some(piv) = (r..m).find(|&i| aug[i][c] != 0) else {
            continue;
        };
        aug.swap(r, piv);
        let s = inv(aug[r][c], p);
        for x in aug[r].iter_mut() {
            *x = mul(*x, s, p);
        }
        for i in 0..m {
            if i == r || aug[i][c] == 0 {
                continue;
            }
            let f = aug[i][c];
            let (a, b) = if i < r {
                let (h, t) = aug.split_at_mut(r);
                (&mut h[i], &t[0])
            } else {
                let (h, t) = aug.split_at_mut(i);
                (&mut t[0], &h[r])
            };
            for (x, y) in a.iter_mut().zip(b.iter()) {
                *x = sub(*x, mul(f, *y, p), p);
            }
        }
        r += 1;
    }
    aug[r..].iter().map(|row| row[width..].to_vec()).collect()
}

/// Row vector times matrix (given as rows).
pub fn vec_mat(p: u64, v: &[u64], rows: &[Vec<u64>]) -> Vec<u64> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut out = vec![0u64; width];
    for (a, r) in v.iter().zip(rows) {
        if *a == 0 {
            continue;
        }
        for (o, b) in out.iter_mut().zip(r) {
            *o = add(*o, mul(*a, *b, p), p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_vectors_annihilate() {
        let p = 5;
        let rows = vec![vec![1, 2, 3], vec![2, 4, 1], vec![3, 1, 4], vec![0, 0, 0]];
        let k = left_kernel(p, &rows);
        assert_eq!(k.len(), rows.len() - rank(p, &rows));
        for v in &k {
            assert!(vec_mat(p, v, &rows).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn subspace_membership() {
        let mut s = Subspace::new(3, 3);
        assert!(s.insert(&[1, 1, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 2, 1]));
        assert!(s.contains(&[2, 0, 1]));
        assert!(!s.contains(&[1, 0, 0]));
    }
}
