//! Property tests over the series engine, exact linear algebra and
//! changes of basis.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zinbiel::algebra::{check_identity, fingerprint, IdentitySpec, StructureConstants};
use zinbiel::catalog::Catalog;
use zinbiel::cohomology::{coboundary_space, cohomologous, h2, is_cocycle};
use zinbiel::exactmath::{ExactMatrix, GaussianRational};

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -3i64..=3)
        .prop_map(|(a, d, b)| &GaussianRational::from_ratio(a, d) + &GaussianRational::new(0, b))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(prop::collection::vec(gaussian(), cols), rows)
        .prop_map(|r| ExactMatrix::from_rows(r).unwrap())
}

/// Catalog algebras small enough to keep the cases cheap.
fn catalog_algebra() -> impl Strategy<Value = StructureConstants> {
    let ids = [
        "N_01", "N_03", "N_08^2", "N_14^-1", "Z_05", "Z_22", "Z_27", "Z_40", "Z_14^3",
    ];
    prop::sample::select(ids.to_vec()).prop_map(|id| Catalog::shipped().resolve(id, None).unwrap())
}

proptest! {
    #[test]
    fn series_expansion_is_a_ring_homomorphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = common::random_expr(&mut rng, 3);
        let y = common::random_expr(&mut rng, 3);
        if let Err(e) = common::check_series_laws(&x, &y) {
            prop_assert!(false, "{}", e);
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix(4, 6)) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len() + m.rank(), 6);
        for v in &kernel {
            prop_assert!(m.apply(v).unwrap().iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3, 3), b in matrix(3, 3)) {
        let ab = a.mul_checked(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
        if let Ok(inv) = a.inverse() {
            prop_assert_eq!(a.mul_checked(&inv).unwrap(), ExactMatrix::identity(3));
        }
    }

    #[test]
    fn coboundaries_are_trivial_cocycles(a in catalog_algebra(), coeffs in prop::collection::vec(gaussian(), 25)) {
        let basis = h2(&a);
        prop_assert_eq!(basis.z2.len(), basis.b2.len() + basis.dim());
        let n = a.dim();
        let mut theta = ExactMatrix::zeros(n, n);
        for (b, c) in coboundary_space(&a).iter().zip(&coeffs) {
            for i in 0..n {
                for j in 0..n {
                    theta[(i, j)] = &theta[(i, j)] + &(c * &b[(i, j)]);
                }
            }
        }
        prop_assert!(is_cocycle(&a, &theta));
        prop_assert!(cohomologous(&a, &theta, &ExactMatrix::zeros(n, n)));
        prop_assert!(basis.in_b2(&theta));
    }
}

proptest! {
    // Each case computes two fingerprints.
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_changes_compose(a in catalog_algebra(), seeds in any::<(u64, u64)>()) {
        let n = a.dim();
        let p = ExactMatrix::random_invertible(n, &mut ChaCha8Rng::seed_from_u64(seeds.0));
        let q = ExactMatrix::random_invertible(n, &mut ChaCha8Rng::seed_from_u64(seeds.1));
        let moved = a.change_basis(&p).unwrap();
        let stepwise = moved.change_basis(&q).unwrap();
        let direct = a.change_basis(&q.mul_checked(&p).unwrap()).unwrap();
        prop_assert_eq!(&stepwise, &direct);
        prop_assert!(a.check_isomorphism(&moved, &p).unwrap());
        prop_assert!(check_identity(&stepwise, IdentitySpec::Zinbiel).passed());
        prop_assert_eq!(fingerprint(&stepwise), fingerprint(&a));
    }
}
