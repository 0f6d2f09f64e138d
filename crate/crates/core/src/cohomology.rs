//! Second cohomology with trivial coefficients, cocycle annihilators and
//! central extensions.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{annihilator, unit_vector, StructureConstants};
use crate::degeneration::{linear_in_symbols, Symbol};
use crate::error::{Error, Result};
use crate::exactmath::subspace::{contains, intersection, reduced_basis, span_dim};
use crate::exactmath::{ExactMatrix, GaussianRational};

type Vector = Vec<GaussianRational>;

/// A bilinear form with values in `ℂ^s`, stored as `s` matrices with
/// `components[r][(l, m)] = θ_r(e_l, e_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleForm {
    dim: usize,
    components: Vec<ExactMatrix>,
}

impl CocycleForm {
    pub fn new(dim: usize, components: Vec<ExactMatrix>) -> Result<Self> {
        for m in &components {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "{}x{} component on a {dim}-dimensional algebra",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(CocycleForm { dim, components })
    }

    pub fn single(m: ExactMatrix) -> Result<Self> {
        CocycleForm::new(m.rows(), vec![m])
    }

    /// Sum of `c Δ_lm` terms with 1-based `(l, m, c)`.
    pub fn from_deltas(dim: usize, terms: &[(usize, usize, GaussianRational)]) -> Result<ExactMatrix> {
        let mut m = ExactMatrix::zeros(dim, dim);
        for (l, m_, c) in terms {
            if !(1..=dim).contains(l) || !(1..=dim).contains(m_) {
                return Err(Error::DimensionMismatch(format!("Δ_{l}{m_} in dimension {dim}")));
            }
            m[(l - 1, m_ - 1)] += c;
        }
        Ok(m)
    }

    /// Parses a combination such as `Δ12+2Δ21` (or `D12+2*D21`); named
    /// parameters in the coefficients are looked up in `env`.
    pub fn parse_deltas(
        text: &str,
        dim: usize,
        env: &dyn Fn(Symbol<'_>) -> Option<GaussianRational>,
    ) -> Result<ExactMatrix> {
        let slot = |name: &str| -> Option<usize> {
            let rest = name.strip_prefix('Δ').or_else(|| name.strip_prefix('D'))?;
            let rest = rest.strip_prefix('_').unwrap_or(rest);
            let digits: Vec<usize> = rest
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()?;
            match digits[..] {
                [l, m] if (1..=dim).contains(&l) && (1..=dim).contains(&m) => Some((l - 1) * dim + m - 1),
                _ => None,
            }
        };
        let coeffs = linear_in_symbols(text, dim * dim, &slot)?;
        let mut out = ExactMatrix::zeros(dim, dim);
        for (s, c) in coeffs.iter().enumerate() {
            out[(s / dim, s % dim)] = c.eval_exact(env)?;
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[ExactMatrix] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Flattened `n²` coordinates in the Δ_lm order (row-major).
fn flatten(m: &ExactMatrix) -> Vector {
    m.row_vecs().concat()
}

fn unflatten(v: &[GaussianRational], n: usize) -> ExactMatrix {
    ExactMatrix::from_rows(v.chunks(n).map(<[_]>::to_vec).collect()).expect("square")
}

/// `θ` as a combination such as `Δ12+2Δ21`, or `0`; the inverse of
/// [`CocycleForm::parse_deltas`] for dimensions below ten.
pub fn format_deltas(theta: &ExactMatrix) -> String {
    use num_traits::One;
    let mut s = String::new();
    for l in 0..theta.rows() {
        for m in 0..theta.cols() {
            let c = &theta[(l, m)];
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_one() {
                String::new()
            } else if (-c).is_one() {
                "-".to_string()
            } else if !c.im.is_zero() || !c.re.is_integer() {
                format!("({c})")
            } else {
                c.to_string()
            };
            if !s.is_empty() && !coeff.starts_with('-') {
                s.push('+');
            }
            s += &format!("{coeff}Δ{}{}", l + 1, m + 1);
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// The linear map θ ↦ residuals θ(e_i e_j, e_k) − θ(e_i, e_j e_k + e_k e_j).
fn cocycle_operator(a: &StructureConstants) -> ExactMatrix {
    let n = a.dim();
    let mut m = ExactMatrix::zeros(n * n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let row = (i * n + j) * n + k;
                for p in 0..n {
                    let c = a.get(i, j, p);
                    if !c.is_zero() {
                        m[(row, p * n + k)] += c;
                    }
                    let c = a.get(j, k, p) + a.get(k, j, p);
                    if !c.is_zero() {
                        m[(row, i * n + p)] -= &c;
                    }
                }
            }
        }
    }
    m
}

pub fn is_cocycle(a: &StructureConstants, theta: &ExactMatrix) -> bool {
    cocycle_operator(a)
        .apply(&flatten(theta))
        .map(|r| r.iter().all(Zero::is_zero))
        .unwrap_or(false)
}

pub fn cocycle_space(a: &StructureConstants) -> Vec<ExactMatrix> {
    let n = a.dim();
    let ker = cocycle_operator(a).kernel_basis();
    reduced_basis(&ker, n * n).iter().map(|v| unflatten(v, n)).collect()
}

/// Span of `δf(x, y) = f(xy)` over the coordinate functionals.
pub fn coboundary_space(a: &StructureConstants) -> Vec<ExactMatrix> {
    let n = a.dim();
    let gens: Vec<Vector> = (0..n)
        .map(|p| {
            let mut v = vec![GaussianRational::zero(); n * n];
            for l in 0..n {
                for m in 0..n {
                    v[l * n + m] = a.get(l, m, p).clone();
                }
            }
            v
        })
        .filter(|v| !v.iter().all(Zero::is_zero))
        .collect();
    reduced_basis(&gens, n * n).iter().map(|v| unflatten(v, n)).collect()
}

#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    pub z2: Vec<ExactMatrix>,
    pub b2: Vec<ExactMatrix>,
    /// Cocycles whose classes form a basis of `Z²/B²`.
    pub reps: Vec<ExactMatrix>,
}

impl CohomologyBasis {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Whether the classes of `forms` are independent in H².
    pub fn independent_mod_b2(&self, forms: &[ExactMatrix]) -> bool {
        let mut rows: Vec<Vector> = self.b2.iter().map(flatten).collect();
        rows.extend(forms.iter().map(flatten));
        span_dim(&rows) == self.b2.len() + forms.len()
    }

    /// Whether the classes of `forms` span H².
    pub fn spans_h2(&self, forms: &[ExactMatrix]) -> bool {
        let mut rows: Vec<Vector> = self.b2.iter().map(flatten).collect();
        rows.extend(forms.iter().map(flatten));
        span_dim(&rows) == self.z2.len()
    }

    pub fn in_b2(&self, theta: &ExactMatrix) -> bool {
        let rows: Vec<Vector> = self.b2.iter().map(flatten).collect();
        contains(&rows, &flatten(theta))
    }
}

/// `Z²`, `B²` and canonical representatives: the cocycle basis is reduced
/// against the pivots of `B²` in Δ order, then put in reduced echelon form.
pub fn h2(a: &StructureConstants) -> CohomologyBasis {
    let n = a.dim();
    let z2 = cocycle_space(a);
    let b2 = coboundary_space(a);
    let b_rows: Vec<Vector> = b2.iter().map(flatten).collect();
    let b_pivots: Vec<usize> = b_rows
        .iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect();
    let reduced: Vec<Vector> = z2
        .iter()
        .map(|z| {
            let mut v = flatten(z);
            for (row, &p) in b_rows.iter().zip(&b_pivots) {
                if !v[p].is_zero() {
                    let f = v[p].clone();
                    for (x, y) in v.iter_mut().zip(row) {
                        if !y.is_zero() {
                            *x -= &(&f * y);
                        }
                    }
                }
            }
            v
        })
        .collect();
    let reps = reduced_basis(&reduced, n * n).iter().map(|v| unflatten(v, n)).collect();
    CohomologyBasis { z2, b2, reps }
}

/// `(dim Z², dim H²)` without building bases.
pub fn h2_dims(a: &StructureConstants) -> (usize, usize) {
    let n = a.dim();
    let op = cocycle_operator(a);
    let z = n * n - op.rank();
    let b2: Vec<Vector> = coboundary_space(a).iter().map(flatten).collect();
    let inside = b2
        .iter()
        .all(|b| op.apply(b).expect("square length").iter().all(Zero::is_zero));
    if inside {
        (z, z - b2.len())
    } else {
        let h = h2(a);
        (h.z2.len(), h.reps.len())
    }
}

/// `{x : θ_r(x, e_j) = θ_r(e_j, x) = 0 for all r, j}`.
pub fn cocycle_annihilator(theta: &CocycleForm) -> Vec<Vector> {
    let n = theta.dim;
    let s = theta.components.len();
    if s == 0 {
        return (0..n).map(|i| unit_vector(n, i)).collect();
    }
    let mut m = ExactMatrix::zeros(2 * n * s, n);
    for (r, t) in theta.components.iter().enumerate() {
        for j in 0..n {
            for l in 0..n {
                m[((r * n + j) * 2, l)] = t[(l, j)].clone();
                m[((r * n + j) * 2 + 1, l)] = t[(j, l)].clone();
            }
        }
    }
    reduced_basis(&m.kernel_basis(), n)
}

/// `A ⊕ ℂ^s` with product `xy + θ(x, y)`; new basis vectors are central.
pub fn central_extension(a: &StructureConstants, theta: &CocycleForm) -> Result<StructureConstants> {
    let n = a.dim();
    if theta.dim != n {
        return Err(Error::DimensionMismatch(format!(
            "cocycle on dimension {} for an algebra of dimension {n}",
            theta.dim
        )));
    }
    for (r, t) in theta.components.iter().enumerate() {
        if !is_cocycle(a, t) {
            return Err(Error::NotCocycle(r + 1));
        }
    }
    Ok(extend_unchecked(a, theta))
}

fn extend_unchecked(a: &StructureConstants, theta: &CocycleForm) -> StructureConstants {
    let n = a.dim();
    let mut out = a.padded(theta.len());
    for (r, t) in theta.components.iter().enumerate() {
        for l in 0..n {
            for m in 0..n {
                if !t[(l, m)].is_zero() {
                    out.add_to(l, m, n + r, &t[(l, m)]);
                }
            }
        }
    }
    out
}

/// `θ_r ↦ φᵀ θ_r φ`, i.e. `(φθ)(x, y) = θ(φx, φy)` with `φ` acting on
/// coordinate columns.
pub fn aut_action(theta: &CocycleForm, phi: &ExactMatrix) -> Result<CocycleForm> {
    if phi.rows() != theta.dim || phi.cols() != theta.dim {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} map on a {}-dimensional form",
            phi.rows(),
            phi.cols(),
            theta.dim
        )));
    }
    let pt = phi.transpose();
    let components = theta
        .components
        .iter()
        .map(|t| pt.mul_checked(t)?.mul_checked(phi))
        .collect::<Result<Vec<_>>>()?;
    CocycleForm::new(theta.dim, components)
}

/// Whether `φ` (columns are images of basis vectors) is an endomorphism.
pub fn is_endomorphism(a: &StructureConstants, phi: &ExactMatrix) -> bool {
    let n = a.dim();
    if phi.rows() != n || phi.cols() != n {
        return false;
    }
    let images: Vec<Vector> = (0..n).map(|i| phi.column(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = phi.apply(a.basis_product(i, j)).expect("square");
            if lhs != a.mul(&images[i], &images[j]) {
                return false;
            }
        }
    }
    true
}

/// [`aut_action`] that first checks `φ` is an automorphism of `a`.
pub fn aut_action_verified(a: &StructureConstants, theta: &CocycleForm, phi: &ExactMatrix) -> Result<CocycleForm> {
    if !is_endomorphism(a, phi) {
        return Err(Error::Data("map is not an algebra endomorphism".into()));
    }
    if phi.det()?.is_zero() {
        return Err(Error::Singular);
    }
    aut_action(theta, phi)
}

pub fn cohomologous(a: &StructureConstants, t1: &ExactMatrix, t2: &ExactMatrix) -> bool {
    let diff: Vec<Vector> = vec![flatten(t1).iter().zip(flatten(t2)).map(|(x, y)| x - &y).collect()];
    let b: Vec<Vector> = coboundary_space(a).iter().map(flatten).collect();
    contains(&b, &diff[0])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub cocycles: bool,
    pub annihilator_intersection_trivial: bool,
    pub classes_independent: bool,
    /// `Ann(A_θ) = (Ann(θ) ∩ Ann(A)) ⊕ V` holds.
    pub annihilator_decomposition: bool,
    pub ok: bool,
}

pub fn extension_wellformed(a: &StructureConstants, theta: &CocycleForm) -> ExtensionReport {
    let n = a.dim();
    let s = theta.len();
    let cocycles = theta.components.iter().all(|t| is_cocycle(a, t));
    let common = intersection(&cocycle_annihilator(theta), &annihilator(a), n);
    let classes_independent = cocycles && h2(a).independent_mod_b2(&theta.components);

    let ext = extend_unchecked(a, theta);
    let ext_ann = annihilator(&ext);
    let mut expected: Vec<Vector> = common
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.resize(n + s, GaussianRational::zero());
            w
        })
        .collect();
    expected.extend((n..n + s).map(|i| unit_vector(n + s, i)));
    let annihilator_decomposition =
        cocycles && ext_ann.len() == expected.len() && expected.iter().all(|v| contains(&ext_ann, v));

    let annihilator_intersection_trivial = common.is_empty();
    ExtensionReport {
        cocycles,
        annihilator_intersection_trivial,
        classes_independent,
        annihilator_decomposition,
        ok: cocycles && annihilator_intersection_trivial && classes_independent && annihilator_decomposition,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{gq, gq_ratio};

    #[test]
    fn delta_text_round_trips() {
        let theta = CocycleForm::from_deltas(
            3,
            &[
                (1, 2, gq(1)),
                (2, 1, gq(-2)),
                (3, 3, gq_ratio(-1, 2)),
                (1, 3, GaussianRational::i()),
            ],
        )
        .unwrap();
        let text = format_deltas(&theta);
        assert_eq!(text, "Δ12+(i)Δ13-2Δ21+(-1/2)Δ33");
        assert_eq!(CocycleForm::parse_deltas(&text, 3, &|_| None).unwrap(), theta);
        assert_eq!(format_deltas(&ExactMatrix::zeros(2, 2)), "0");
    }

    fn n01() -> StructureConstants {
        StructureConstants::from_products("N_01", 4, &[(1, 1, 2, gq(1))]).unwrap()
    }

    fn n02() -> StructureConstants {
        StructureConstants::from_products("N_02", 4, &[(1, 1, 3, gq(1)), (2, 2, 4, gq(1))]).unwrap()
    }

    #[test]
    fn delta_text_matches_triples() {
        let alpha = gq(3);
        let env = |s: Symbol<'_>| matches!(s, Symbol::Param("alpha")).then(|| alpha.clone());
        let parsed = CocycleForm::parse_deltas("Δ12+2Δ21 - alpha*D_34", 4, &env).unwrap();
        assert_eq!(parsed, delta(4, &[(1, 2, 1), (2, 1, 2), (3, 4, -3)]));
        assert!(CocycleForm::parse_deltas("Δ15", 4, &env).is_err());
        assert!(CocycleForm::parse_deltas("Δ12*Δ21", 4, &env).is_err());
    }

    fn delta(n: usize, terms: &[(usize, usize, i64)]) -> ExactMatrix {
        let t: Vec<_> = terms.iter().map(|&(l, m, c)| (l, m, gq(c))).collect();
        CocycleForm::from_deltas(n, &t).unwrap()
    }

    #[test]
    fn spaces_of_zero_algebra() {
        let z = StructureConstants::zero(2);
        assert_eq!(cocycle_space(&z).len(), 4);
        assert!(coboundary_space(&z).is_empty());
        assert_eq!(h2(&z).dim(), 4);
    }

    #[test]
    fn small_cohomology() {
        assert_eq!(cocycle_space(&n01()).len(), 10);
        assert_eq!(coboundary_space(&n01()), vec![delta(4, &[(1, 1, 1)])]);
        assert_eq!(cocycle_space(&n02()).len(), 6);
        assert_eq!(
            coboundary_space(&n02()),
            vec![delta(4, &[(1, 1, 1)]), delta(4, &[(2, 2, 1)])]
        );
    }

    #[test]
    fn annihilators_of_forms() {
        let t = CocycleForm::single(delta(4, &[(3, 3, 1)])).unwrap();
        assert_eq!(cocycle_annihilator(&t).len(), 3);
        let z = CocycleForm::single(ExactMatrix::zeros(4, 4)).unwrap();
        assert_eq!(cocycle_annihilator(&z).len(), 4);
        let t = CocycleForm::single(delta(4, &[(1, 3, 1), (3, 1, 2), (2, 4, 1), (4, 2, 2)])).unwrap();
        assert!(cocycle_annihilator(&t).is_empty());
    }

    #[test]
    fn one_dimensional_extension() {
        let t = CocycleForm::single(delta(1, &[(1, 1, 1)])).unwrap();
        let e = central_extension(&StructureConstants::zero(1), &t).unwrap();
        assert_eq!(
            e,
            StructureConstants::from_products("", 2, &[(1, 1, 2, gq(1))]).unwrap()
        );
    }

    #[test]
    fn non_cocycle_rejected() {
        // θ(e1e1, e1) = θ(e2, e1) but θ(e1, 2 e2) must match.
        let t = CocycleForm::single(delta(4, &[(2, 1, 1)])).unwrap();
        assert!(matches!(central_extension(&n01(), &t), Err(Error::NotCocycle(1))));
    }

    #[test]
    fn cohomology_classes() {
        let a = n01();
        let th = delta(4, &[(1, 3, 1)]);
        assert!(cohomologous(&a, &th, &th));
        assert!(cohomologous(&a, &delta(4, &[(1, 1, 1)]), &ExactMatrix::zeros(4, 4)));
        assert!(!cohomologous(&a, &th, &delta(4, &[(1, 4, 1)])));
    }

    #[test]
    fn wellformedness() {
        let t = CocycleForm::single(delta(4, &[(3, 3, 1)])).unwrap();
        let r = extension_wellformed(&n01(), &t);
        assert!(!r.annihilator_intersection_trivial);
        assert!(r.annihilator_decomposition);
        assert!(!r.ok);
        let b = CocycleForm::single(delta(4, &[(1, 1, 1)])).unwrap();
        assert!(!extension_wellformed(&n01(), &b).classes_independent);
    }

    #[test]
    fn identity_action() {
        let t = CocycleForm::single(delta(4, &[(1, 2, 1), (2, 1, 2)])).unwrap();
        assert_eq!(aut_action(&t, &ExactMatrix::identity(4)).unwrap(), t);
        assert!(aut_action(&t, &ExactMatrix::identity(3)).is_err());
    }
}
