//! Algebras given by structure constants, and their invariants.

mod identities;
mod invariants;

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{ExactMatrix, GaussianRational};

pub use identities::{check_identity, IdentityCheck, IdentitySpec, Violation};
pub use invariants::{
    annihilator, derivations, family_dimension, fingerprint, orbit_dimension, power_filtration, Fingerprint,
    PowerFiltration,
};

/// An `n`-dimensional algebra in a fixed basis: `e_i e_j = Σ_k c[i][j][k] e_k`.
///
/// Methods taking indices use 0-based positions. The 1-based convention of
/// the data files is handled by [`StructureConstants::from_products`] and
/// [`StructureConstants::entries`].
#[derive(Clone)]
pub struct StructureConstants {
    name: String,
    dim: usize,
    c: Vec<GaussianRational>,
}

/// Equality compares tensors only; names are labels.
impl PartialEq for StructureConstants {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.c == other.c
    }
}

impl Eq for StructureConstants {}

impl StructureConstants {
    pub fn zero(dim: usize) -> Self {
        StructureConstants::named("zero", dim)
    }

    pub fn named(name: impl Into<String>, dim: usize) -> Self {
        StructureConstants {
            name: name.into(),
            dim,
            c: vec![GaussianRational::zero(); dim * dim * dim],
        }
    }

    /// Build from 1-based `(i, j, k, c)` products meaning `e_i e_j += c e_k`.
    pub fn from_products(
        name: impl Into<String>,
        dim: usize,
        products: &[(usize, usize, usize, GaussianRational)],
    ) -> Result<Self> {
        let mut a = StructureConstants::named(name, dim);
        for (i, j, k, v) in products {
            let in_range = |x: &usize| (1..=dim).contains(x);
            if !(in_range(i) && in_range(j) && in_range(k)) {
                return Err(Error::DimensionMismatch(format!(
                    "index ({i},{j},{k}) outside 1..={dim}"
                )));
            }
            a.add_to(i - 1, j - 1, k - 1, v);
        }
        Ok(a)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &GaussianRational {
        &self.c[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: GaussianRational) {
        let p = self.idx(i, j, k);
        self.c[p] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, k: usize, v: &GaussianRational) {
        let p = self.idx(i, j, k);
        self.c[p] += v;
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[GaussianRational] {
        let start = self.idx(i, j, 0);
        &self.c[start..start + self.dim]
    }

    /// Nonzero constants as 1-based `(i, j, k, c)`, in lexicographic order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, GaussianRational)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        out.push((i + 1, j + 1, k + 1, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn product(&self, x: &[GaussianRational], y: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "product of vectors of length {} and {} in dimension {}",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &[GaussianRational], y: &[GaussianRational]) -> Vec<GaussianRational> {
        let n = self.dim;
        let mut out = vec![GaussianRational::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let row = self.basis_product(i, j);
                if row.iter().all(Zero::is_zero) {
                    continue;
                }
                let s = xi * yj;
                for (o, c) in out.iter_mut().zip(row) {
                    if !c.is_zero() {
                        *o += &(&s * c);
                    }
                }
            }
        }
        out
    }

    /// Structure constants in the basis `f_i = Σ_j P[i][j] e_j`.
    pub fn change_basis(&self, p: &ExactMatrix) -> Result<StructureConstants> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} basis matrix for dimension {}",
                p.rows(),
                p.cols(),
                n
            )));
        }
        let q = p.inverse()?;
        let rows = p.row_vecs();
        let mut out = StructureConstants::named(self.name.clone(), n);
        for a in 0..n {
            for b in 0..n {
                let w = self.mul(&rows[a], &rows[b]);
                // e_k = Σ_m Q[k][m] f_m
                for (k, wk) in w.iter().enumerate() {
                    if wk.is_zero() {
                        continue;
                    }
                    for m in 0..n {
                        let qk = &q[(k, m)];
                        if !qk.is_zero() {
                            out.add_to(a, b, m, &(wk * qk));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Verifies a claimed isomorphism: `change_basis(self, P) == other`.
    pub fn check_isomorphism(&self, other: &StructureConstants, p: &ExactMatrix) -> Result<bool> {
        if self.dim != other.dim {
            return Ok(false);
        }
        Ok(self.change_basis(p)? == *other)
    }

    pub fn direct_sum(&self, other: &StructureConstants) -> StructureConstants {
        let (m, n) = (self.dim, other.dim);
        let mut out = StructureConstants::named(format!("{}+{}", self.name, other.name), m + n);
        for (i, j, k, v) in self.entries() {
            out.set(i - 1, j - 1, k - 1, v);
        }
        for (i, j, k, v) in other.entries() {
            out.set(m + i - 1, m + j - 1, m + k - 1, v);
        }
        out
    }

    /// The same products with `extra` zero basis vectors appended.
    pub fn padded(&self, extra: usize) -> StructureConstants {
        self.direct_sum(&StructureConstants::zero(extra))
            .with_name(self.name.clone())
    }
}

/// Standard basis vector `e_i` (0-based) of length `n`.
pub fn unit_vector(n: usize, i: usize) -> Vec<GaussianRational> {
    let mut v = vec![GaussianRational::zero(); n];
    v[i] = num_traits::One::one();
    v
}

/// Writes the nonzero products as `e1e1=e2, e1e2=-e3+2e4`.
impl fmt::Display for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim;
        let mut first = true;
        for i in 0..n {
            for j in 0..n {
                let row = self.basis_product(i, j);
                if row.iter().all(Zero::is_zero) {
                    continue;
                }
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "e{}e{}={}", i + 1, j + 1, format_vector(row))?;
            }
        }
        if first {
            write!(f, "(zero product)")?;
        }
        Ok(())
    }
}

impl fmt::Debug for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [dim {}]: {}", self.name, self.dim, self)
    }
}

/// Linear combination text such as `2e1-e3+(1+i)e4`, or `0`.
pub fn format_vector(v: &[GaussianRational]) -> String {
    use num_traits::One;
    let mut s = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coeff = if c.is_one() {
            String::new()
        } else if (-c).is_one() {
            "-".to_string()
        } else if !c.re.is_zero() && !c.im.is_zero() {
            format!("({c})")
        } else {
            c.to_string()
        };
        if !s.is_empty() && !coeff.starts_with('-') {
            s.push('+');
        }
        s.push_str(&coeff);
        s.push_str(&format!("e{}", k + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{gq, gq_ratio};

    fn n01() -> StructureConstants {
        StructureConstants::from_products("N_01", 4, &[(1, 1, 2, gq(1))]).unwrap()
    }

    #[test]
    fn product_of_basis_vectors() {
        let a = n01();
        assert_eq!(
            a.product(&unit_vector(4, 0), &unit_vector(4, 0)).unwrap(),
            unit_vector(4, 1)
        );
        let zero = vec![gq(0); 4];
        assert_eq!(a.product(&zero, &unit_vector(4, 0)).unwrap(), zero);
        assert!(a.product(&[gq(1)], &zero).is_err());
    }

    #[test]
    fn rescaling_first_vector() {
        let p = ExactMatrix::diagonal(&[gq(2), gq(1), gq(1), gq(1)]);
        let b = n01().change_basis(&p).unwrap();
        assert_eq!(b.get(0, 0, 1), &gq(4));
        assert_eq!(b.entries().len(), 1);
        let back = b
            .change_basis(&ExactMatrix::diagonal(&[gq_ratio(1, 2), gq(1), gq(1), gq(1)]))
            .unwrap();
        assert_eq!(back, n01());
    }

    #[test]
    fn identity_change_is_trivial() {
        let a = n01();
        assert!(a.check_isomorphism(&a, &ExactMatrix::identity(4)).unwrap());
        assert!(a.change_basis(&ExactMatrix::zeros(4, 4)).is_err());
    }

    #[test]
    fn direct_sums() {
        let core = StructureConstants::from_products("core", 2, &[(1, 1, 2, gq(1))]).unwrap();
        assert_eq!(core.direct_sum(&StructureConstants::zero(2)), n01());
        assert_eq!(
            StructureConstants::zero(2).direct_sum(&StructureConstants::zero(3)),
            StructureConstants::zero(5)
        );
    }

    #[test]
    fn display_lists_products() {
        let a = StructureConstants::from_products("x", 3, &[(1, 2, 3, gq(-1)), (1, 2, 1, gq(2))]).unwrap();
        assert_eq!(a.to_string(), "e1e2=2e1-e3");
        assert_eq!(StructureConstants::zero(2).to_string(), "(zero product)");
    }
}
