use num_traits::Zero;
use serde::Serialize;

use super::{unit_vector, StructureConstants};
use crate::cohomology;
use crate::exactmath::subspace::{reduced_basis, span_dim};
use crate::exactmath::{ExactMatrix, GaussianRational};

type Vector = Vec<GaussianRational>;

/// `{x : x e_j = e_j x = 0 for all j}`.
pub fn annihilator(a: &StructureConstants) -> Vec<Vector> {
    let n = a.dim();
    // Unknown x; rows express the k-th coordinate of x e_j and of e_j x.
    let mut m = ExactMatrix::zeros(2 * n * n, n);
    for j in 0..n {
        for k in 0..n {
            for i in 0..n {
                m[((j * n + k) * 2, i)] = a.get(i, j, k).clone();
                m[((j * n + k) * 2 + 1, i)] = a.get(j, i, k).clone();
            }
        }
    }
    reduced_basis(&m.kernel_basis(), n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerFiltration {
    /// `dims[k-1] = dim A^k`, listed until the chain vanishes or stabilizes.
    pub dims: Vec<usize>,
    /// Smallest `k` with `A^{k+1} = 0`, or `None` when not nilpotent.
    pub nilpotency_index: Option<usize>,
}

impl PowerFiltration {
    /// `dim A^k` for any `k ≥ 1`.
    pub fn dim_power(&self, k: usize) -> usize {
        assert!(k >= 1);
        match self.dims.get(k - 1) {
            Some(&d) => d,
            None if self.nilpotency_index.is_some() => 0,
            None => *self.dims.last().unwrap_or(&0),
        }
    }
}

/// `A^1 = A`, `A^k = Σ_{p+q=k} A^p A^q`.
pub fn power_filtration(a: &StructureConstants) -> PowerFiltration {
    let n = a.dim();
    let mut powers: Vec<Vec<Vector>> = vec![(0..n).map(|i| unit_vector(n, i)).collect()];
    let mut dims = vec![n];
    if n == 0 {
        return PowerFiltration {
            dims,
            nilpotency_index: Some(0),
        };
    }
    loop {
        let k = powers.len() + 1;
        let mut span = Vec::new();
        for p in 1..k {
            let q = k - p;
            for u in &powers[p - 1] {
                for v in &powers[q - 1] {
                    let w = a.mul(u, v);
                    if !w.iter().all(Zero::is_zero) {
                        span.push(w);
                    }
                }
            }
        }
        let basis = reduced_basis(&span, n);
        let d = basis.len();
        let prev = *dims.last().expect("non-empty");
        if d == 0 {
            return PowerFiltration {
                dims,
                nilpotency_index: Some(k - 1),
            };
        }
        dims.push(d);
        if d == prev {
            return PowerFiltration {
                dims,
                nilpotency_index: None,
            };
        }
        powers.push(basis);
    }
}

/// Basis of `Der(A)`; matrices act on coordinate columns, so column `i`
/// holds `D(e_i)`.
pub fn derivations(a: &StructureConstants) -> Vec<ExactMatrix> {
    let n = a.dim();
    derivation_system(a)
        .kernel_basis()
        .into_iter()
        .map(|v| ExactMatrix::from_rows(v.chunks(n).map(<[_]>::to_vec).collect()).expect("square"))
        .collect()
}

/// The map `gl(n) → Hom(A ⊗ A, A)` sending `D` to the failure of `D` to be
/// a derivation; its image is the tangent space of the orbit.
fn derivation_system(a: &StructureConstants) -> ExactMatrix {
    let n = a.dim();
    let var = |l: usize, k: usize| l * n + k;
    let mut m = ExactMatrix::zeros(n * n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let row = (i * n + j) * n + l;
                // D(e_i e_j)_l - (D(e_i) e_j)_l - (e_i D(e_j))_l
                for k in 0..n {
                    let c = a.get(i, j, k);
                    if !c.is_zero() {
                        m[(row, var(l, k))] += c;
                    }
                }
                for p in 0..n {
                    let c = a.get(p, j, l);
                    if !c.is_zero() {
                        m[(row, var(p, i))] -= c;
                    }
                    let c = a.get(i, p, l);
                    if !c.is_zero() {
                        m[(row, var(p, j))] -= c;
                    }
                }
            }
        }
    }
    m
}

/// Dimension of the tangent space at `a` to the union of orbits of a
/// family, given the partial derivatives of the structure constants with
/// respect to each parameter (flattened as `(i n + j) n + k`).
pub fn family_dimension(a: &StructureConstants, partials: &[Vec<GaussianRational>]) -> usize {
    let m = derivation_system(a);
    let rows: Vec<Vec<GaussianRational>> = (0..m.rows())
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.extend(partials.iter().map(|p| p[r].clone()));
            row
        })
        .collect();
    ExactMatrix::from_rows(rows).expect("rectangular").rank()
}

pub fn orbit_dimension(a: &StructureConstants) -> usize {
    let n = a.dim();
    n * n - derivations(a).len()
}

/// Basis-independent invariants used to tell algebras apart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    /// `dim A^2 .. dim A^5`.
    pub powers: [usize; 4],
    pub annihilator: usize,
    pub derivations: usize,
    pub cocycles: usize,
    pub h2: usize,
}

pub fn fingerprint(a: &StructureConstants) -> Fingerprint {
    let pf = power_filtration(a);
    let (cocycles, h2) = cohomology::h2_dims(a);
    Fingerprint {
        dim: a.dim(),
        powers: [2, 3, 4, 5].map(|k| pf.dim_power(k)),
        annihilator: span_dim(&annihilator(a)),
        derivations: derivations(a).len(),
        cocycles,
        h2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::gq;

    fn n01() -> StructureConstants {
        StructureConstants::from_products("N_01", 4, &[(1, 1, 2, gq(1))]).unwrap()
    }

    fn n02() -> StructureConstants {
        StructureConstants::from_products("N_02", 4, &[(1, 1, 3, gq(1)), (2, 2, 4, gq(1))]).unwrap()
    }

    #[test]
    fn annihilators() {
        assert_eq!(annihilator(&n02()), vec![unit_vector(4, 2), unit_vector(4, 3)]);
        assert_eq!(annihilator(&n01()).len(), 3);
        assert_eq!(annihilator(&StructureConstants::zero(3)).len(), 3);
    }

    #[test]
    fn zero_algebra_powers() {
        let pf = power_filtration(&StructureConstants::zero(4));
        assert_eq!(pf.dims, vec![4]);
        assert_eq!(pf.nilpotency_index, Some(1));
        assert_eq!(pf.dim_power(2), 0);
    }

    #[test]
    fn null_filiform_chain() {
        // e1e1=e2, e1e2=e3, e2e1=2e3
        let a =
            StructureConstants::from_products("z", 3, &[(1, 1, 2, gq(1)), (1, 2, 3, gq(1)), (2, 1, 3, gq(2))]).unwrap();
        let pf = power_filtration(&a);
        assert_eq!(pf.dims, vec![3, 2, 1]);
        assert_eq!(pf.nilpotency_index, Some(3));
    }

    #[test]
    fn idempotent_is_not_nilpotent() {
        let a = StructureConstants::from_products("e", 1, &[(1, 1, 1, gq(1))]).unwrap();
        let pf = power_filtration(&a);
        assert_eq!(pf.nilpotency_index, None);
        assert_eq!(pf.dim_power(7), 1);
    }

    #[test]
    fn derivation_dimensions() {
        assert_eq!(derivations(&StructureConstants::zero(3)).len(), 9);
        assert_eq!(derivations(&n01()).len(), 10);
        assert_eq!(orbit_dimension(&StructureConstants::zero(5)), 0);
    }

    #[test]
    fn derivations_satisfy_leibniz() {
        let a = n02();
        let n = a.dim();
        for d in derivations(&a) {
            for i in 0..n {
                for j in 0..n {
                    let ei = unit_vector(n, i);
                    let ej = unit_vector(n, j);
                    let lhs = d.apply(&a.mul(&ei, &ej)).unwrap();
                    let l = a.mul(&d.apply(&ei).unwrap(), &ej);
                    let r = a.mul(&ei, &d.apply(&ej).unwrap());
                    let rhs: Vec<_> = l.iter().zip(&r).map(|(x, y)| x + y).collect();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
