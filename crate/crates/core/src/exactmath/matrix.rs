use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use super::GaussianRational;
use crate::error::{Error, Result};

/// Dense row-major matrix over ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Outcome of [`ExactMatrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<GaussianRational>),
    /// One particular solution of an affine family of the given dimension.
    Particular {
        x: Vec<GaussianRational>,
        free_dims: usize,
    },
    Inconsistent,
}

impl Rref {
    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<GaussianRational>> {
        let cols = self.matrix.cols();
        (0..cols)
            .filter(|c| !self.pivots.contains(c))
            .map(|f| {
                let mut v = vec![GaussianRational::zero(); cols];
                v[f] = GaussianRational::one();
                for (row, &p) in self.pivots.iter().enumerate() {
                    v[p] = -&self.matrix[(row, f)];
                }
                v
            })
            .collect()
    }
}

impl Solution {
    pub fn vector(&self) -> Option<&[GaussianRational]> {
        match self {
            Solution::Unique(x) | Solution::Particular { x, .. } => Some(x),
            Solution::Inconsistent => None,
        }
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn diagonal(entries: &[GaussianRational]) -> Self {
        let mut m = ExactMatrix::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("rows of unequal length".to_string()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| GaussianRational::from_int(v)).collect())
                .collect(),
        )
        .expect("rectangular integer matrix")
    }

    /// Invertible matrix with small integer entries, drawn until the
    /// determinant is nonzero.
    pub fn random_invertible<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let rows = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| GaussianRational::from_int(rng.gen_range(-3..=3)))
                        .collect()
                })
                .collect();
            let m = ExactMatrix::from_rows(rows).expect("rectangular");
            if !m.det().expect("square").is_zero() {
                return m;
            }
        }
    }

    /// Integer matrix with determinant ±1: a row permutation of a product
    /// of unit lower and upper triangular factors with entries in `-2..=2`.
    pub fn random_unimodular<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        use rand::seq::SliceRandom;
        let mut lower = ExactMatrix::identity(n);
        let mut upper = ExactMatrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                lower[(i, j)] = GaussianRational::from_int(rng.gen_range(-2..=2));
                upper[(j, i)] = GaussianRational::from_int(rng.gen_range(-2..=2));
            }
        }
        let product = &lower * &upper;
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        ExactMatrix::from_rows(order.iter().map(|&r| product.row(r).to_vec()).collect()).expect("square")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn apply(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = GaussianRational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul_checked(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form. Pivots are the first nonzero entry found
    /// scanning each column top to bottom.
    pub fn rref(&self) -> Rref {
        if self.rows * self.cols > 16 {
            if let Some(r) = super::modular::rref_multimodular(self) {
                return r;
            }
        }
        self.rref_full()
    }

    pub(super) fn rref_full(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // Smallest pivot keeps coefficient growth down.
            let Some(p) = (r..m.rows)
                .filter(|&i| !m[(i, c)].is_zero())
                .min_by_key(|&i| m[(i, c)].height())
            else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            let pivot_row: Vec<GaussianRational> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if !pivot_row[j].is_zero() {
                        let d = &factor * &pivot_row[j];
                        m[(i, j)] -= &d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space `{v : M v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<GaussianRational>> {
        self.rref().kernel()
    }

    pub fn solve(&self, b: &[GaussianRational]) -> Result<Solution> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let Rref { matrix, rank, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut x = vec![GaussianRational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = matrix[(row, self.cols)].clone();
        }
        if rank == self.cols {
            Ok(Solution::Unique(x))
        } else {
            Ok(Solution::Particular {
                x,
                free_dims: self.cols - rank,
            })
        }
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<GaussianRational> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(GaussianRational::one());
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = GaussianRational::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return Ok(GaussianRational::zero());
                };
                m.swap_rows(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&m[(i, j)] * &m[(k, k)]) - &(&m[(i, k)] * &m[(k, j)]);
                    m[(i, j)] = &v / &prev;
                }
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        Ok(if sign { -d } else { d })
    }

    pub fn inverse(&self) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = GaussianRational::one();
        }
        let red = aug.rref();
        if red.rank < n || red.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red.matrix[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    /// Panics on incompatible shapes; use [`ExactMatrix::mul_checked`] otherwise.
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.mul_checked(rhs).expect("compatible matrix shapes")
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i() -> GaussianRational {
        GaussianRational::i()
    }

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn rref_proportional_rows() {
        let r = ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_identity() {
        let id = ExactMatrix::identity(3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_gaussian_entries() {
        let m = ExactMatrix::from_rows(vec![vec![g(0), g(1)], vec![g(1), i()]]).unwrap();
        let r = m.rref();
        assert_eq!(r.matrix, ExactMatrix::identity(2));
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn kernels() {
        assert!(ExactMatrix::identity(4).kernel_basis().is_empty());
        assert_eq!(ExactMatrix::zeros(2, 3).kernel_basis().len(), 3);
        let m = ExactMatrix::from_ints(&[&[1, 1, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).unwrap().iter().all(Zero::is_zero));
        }
        assert_eq!(k[0], vec![g(-1), g(1), g(0)]);
        assert_eq!(k[1], vec![g(0), g(0), g(1)]);
    }

    #[test]
    fn solving() {
        let sol = ExactMatrix::identity(2).solve(&[g(3), i()]).unwrap();
        assert_eq!(sol, Solution::Unique(vec![g(3), i()]));

        let m = ExactMatrix::from_ints(&[&[1, 1]]);
        let sol = m.solve(&[g(5)]).unwrap();
        let x = sol.vector().unwrap();
        assert_eq!(m.apply(x).unwrap(), vec![g(5)]);
        assert_eq!(x, &[g(5), g(0)]);

        let m = ExactMatrix::from_ints(&[&[1], &[1]]);
        assert_eq!(m.solve(&[g(0), g(1)]).unwrap(), Solution::Inconsistent);
        assert!(m.solve(&[g(0)]).is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(ExactMatrix::identity(5).det().unwrap(), g(1));
        assert_eq!(ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]).det().unwrap(), g(-1));
        let m = ExactMatrix::from_rows(vec![vec![g(1), i()], vec![i(), g(1)]]).unwrap();
        assert_eq!(m.det().unwrap(), g(2));
        assert!(ExactMatrix::zeros(2, 3).det().is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(ExactMatrix::identity(3).inverse().unwrap(), ExactMatrix::identity(3));
        let d = ExactMatrix::diagonal(&[g(2), i()]);
        assert_eq!(
            d.inverse().unwrap(),
            ExactMatrix::diagonal(&[GaussianRational::from_ratio(1, 2), -i()])
        );
        let u = ExactMatrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(u.inverse().unwrap(), ExactMatrix::from_ints(&[&[1, -1], &[0, 1]]));
        assert!(matches!(
            ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse(),
            Err(Error::Singular)
        ));
    }
}
