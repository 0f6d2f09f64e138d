//! Subspaces of ℚ(i)^n given by spanning sets.

use num_traits::Zero;

use super::{ExactMatrix, GaussianRational};

/// Canonical basis of the span: the nonzero rows of the RREF of the
/// stacked vectors. Equal subspaces give identical output.
pub fn reduced_basis(vectors: &[Vec<GaussianRational>], dim: usize) -> Vec<Vec<GaussianRational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = ExactMatrix::from_rows(vectors.to_vec()).expect("vectors of equal length");
    debug_assert_eq!(m.cols(), dim);
    let r = m.rref();
    (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect()
}

pub fn span_dim(vectors: &[Vec<GaussianRational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    ExactMatrix::from_rows(vectors.to_vec())
        .expect("vectors of equal length")
        .rank()
}

pub fn contains(basis: &[Vec<GaussianRational>], v: &[GaussianRational]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let mut rows = basis.to_vec();
    let before = span_dim(&rows);
    rows.push(v.to_vec());
    span_dim(&rows) == before
}

/// Basis of `span(a) ∩ span(b)`.
pub fn intersection(
    a: &[Vec<GaussianRational>],
    b: &[Vec<GaussianRational>],
    dim: usize,
) -> Vec<Vec<GaussianRational>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Columns a_1..a_p, -b_1..-b_q; kernel vectors give common elements.
    let mut m = ExactMatrix::zeros(dim, a.len() + b.len());
    for (c, v) in a.iter().enumerate() {
        for r in 0..dim {
            m[(r, c)] = v[r].clone();
        }
    }
    for (c, v) in b.iter().enumerate() {
        for r in 0..dim {
            m[(r, a.len() + c)] = -&v[r];
        }
    }
    let common: Vec<Vec<GaussianRational>> = m
        .kernel_basis()
        .into_iter()
        .map(|coeffs| {
            let mut x = vec![GaussianRational::zero(); dim];
            for (alpha, v) in coeffs.iter().zip(a) {
                if alpha.is_zero() {
                    continue;
                }
                for r in 0..dim {
                    x[r] += &(alpha * &v[r]);
                }
            }
            x
        })
        .collect();
    reduced_basis(&common, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::gq;

    fn v(xs: &[i64]) -> Vec<GaussianRational> {
        xs.iter().map(|&x| gq(x)).collect()
    }

    #[test]
    fn intersection_of_planes() {
        let a = vec![v(&[1, 0, 0]), v(&[0, 1, 0])];
        let b = vec![v(&[0, 1, 0]), v(&[0, 0, 1])];
        let i = intersection(&a, &b, 3);
        assert_eq!(i, vec![v(&[0, 1, 0])]);
        assert!(intersection(&a, &[], 3).is_empty());
    }

    #[test]
    fn membership() {
        let a = vec![v(&[1, 1, 0])];
        assert!(contains(&a, &v(&[2, 2, 0])));
        assert!(!contains(&a, &v(&[1, 0, 0])));
        assert!(contains(&[], &v(&[0, 0, 0])));
    }
}
