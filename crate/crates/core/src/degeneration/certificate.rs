//! Verification of parametrized bases: transport the source constants and
//! take `t → 0`.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use super::expr::Expr;
use super::numeric::{self, abs, eval_complex, extrapolate_to_zero, ladder_point, to_complex};
use super::series::{expand_series, Branches, Series, SeriesContext, SeriesError};
use crate::algebra::StructureConstants;
use crate::error::{Error, Result};
use crate::exactmath::GaussianRational;

/// A source family evaluated along its parametrized index, a target, and
/// a parametrized basis; every expression depends on `t` only.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub label: String,
    pub dim: usize,
    /// Source constants as 1-based `(i, j, k, c(t))`.
    pub source: Vec<(usize, usize, usize, Expr)>,
    pub target: StructureConstants,
    /// Row `i` holds the coordinates of `E_i` in the source basis.
    pub basis: Vec<Vec<Expr>>,
}

impl Certificate {
    /// Source with constant structure and a basis given by expressions.
    pub fn from_algebra(
        label: &str,
        source: &StructureConstants,
        target: StructureConstants,
        basis: Vec<Vec<Expr>>,
    ) -> Self {
        Certificate {
            label: label.to_string(),
            dim: source.dim(),
            source: source
                .entries()
                .into_iter()
                .map(|(i, j, k, c)| (i, j, k, Expr::Const(c)))
                .collect(),
            target,
            basis,
        }
    }

    fn expressions(&self) -> impl Iterator<Item = &Expr> {
        self.source
            .iter()
            .map(|(_, _, _, e)| e)
            .chain(self.basis.iter().flatten())
    }

    /// LCM of the exponent denominators that occur.
    pub fn ramification(&self) -> i64 {
        self.expressions()
            .flat_map(Expr::exponent_denominators)
            .fold(1, |acc, q| acc.lcm(&q))
    }

    /// Distinct square-root arguments, in order of appearance.
    pub fn sqrt_arguments(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for a in self.expressions().flat_map(Expr::sqrt_arguments) {
            if !out.contains(&a) {
                out.push(a);
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        if self.target.dim() != n || self.basis.len() != n || self.basis.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "certificate `{}` is not {n}-dimensional throughout",
                self.label
            )));
        }
        if self
            .source
            .iter()
            .any(|&(i, j, k, _)| [i, j, k].iter().any(|x| !(1..=n).contains(x)))
        {
            return Err(Error::DimensionMismatch(format!(
                "source index out of range in `{}`",
                self.label
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
    #[default]
    Auto,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
            Mode::Auto => "auto",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "exact" => Ok(Mode::Exact),
            "numeric" => Ok(Mode::Numeric),
            "auto" => Ok(Mode::Auto),
            _ => Err(Error::Parse(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub mode: Mode,
    /// Bits of the numeric tier.
    pub precision: u32,
    /// Whole powers of `t` kept by the series tier.
    pub truncation: i64,
    /// Sample points `t = 10^{-k}`.
    pub ladder: Vec<u32>,
    pub tolerance: f64,
    /// Largest ramification tried.
    pub max_ramification: i64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            mode: Mode::Auto,
            precision: 256,
            truncation: 16,
            ladder: (2..=8).collect(),
            tolerance: 1e-10,
            max_ramification: 12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Failed,
    Inconclusive,
}

/// One structure constant of the limit, reported when it or the target
/// is nonzero.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub target: String,
    /// Exact constant term, or the extrapolated value in numeric mode.
    pub limit: String,
    /// Leading exponent of `c(t)`, exact mode only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuation: Option<String>,
    /// `|limit - target|` in numeric mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<f64>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegenerationReport {
    pub label: String,
    pub verdict: Verdict,
    pub mode: Mode,
    pub residuals: Vec<Residual>,
    /// Leading exponent of `det(E)`; numeric mode gives a rounded estimate.
    pub det_valuation: Option<String>,
    pub ramification: i64,
    pub flipped_roots: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl DegenerationReport {
    pub fn verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }
}

enum Attempt {
    Done(DegenerationReport),
    /// Expressions leave ℚ(i); try the numeric tier.
    NotExpandable(String),
    Retry(SeriesError),
}

pub fn verify_certificate(cert: &Certificate, config: &VerifyConfig) -> Result<DegenerationReport> {
    cert.validate()?;
    let roots = cert.sqrt_arguments();
    let masks: u64 = 1 << roots.len().min(8);
    let mut notes = Vec::new();

    if config.mode != Mode::Numeric {
        match verify_exact(cert, config, &roots, masks) {
            Attempt::Done(r) => return Ok(r),
            Attempt::NotExpandable(why) => notes.push(format!("series tier unavailable: {why}")),
            Attempt::Retry(e) => notes.push(format!("series tier gave up: {e}")),
        }
        if config.mode == Mode::Exact {
            return Ok(DegenerationReport {
                label: cert.label.clone(),
                verdict: Verdict::Inconclusive,
                mode: Mode::Exact,
                residuals: Vec::new(),
                det_valuation: None,
                ramification: cert.ramification(),
                flipped_roots: Vec::new(),
                notes,
            });
        }
    }
    let mut report = verify_numeric(cert, config, &roots, masks)?;
    notes.append(&mut report.notes);
    report.notes = notes;
    Ok(report)
}

fn verify_exact(cert: &Certificate, config: &VerifyConfig, roots: &[String], masks: u64) -> Attempt {
    let base_den = cert.ramification();
    let mut last_error = SeriesError::Precision;
    for terms in [config.truncation, 2 * config.truncation] {
        let mut den = base_den;
        'ramification: while den <= config.max_ramification {
            let mut first_failure: Option<DegenerationReport> = None;
            for mask in 0..masks {
                let branches = Branches::from_mask(roots, mask);
                match exact_attempt(cert, SeriesContext::new(den, terms), &branches) {
                    Ok(report) if report.verified() => return Attempt::Done(report),
                    Ok(report) => {
                        first_failure.get_or_insert(report);
                    }
                    Err(SeriesError::Ramification(..)) => {
                        den *= 2;
                        continue 'ramification;
                    }
                    Err(e @ (SeriesError::NoExactRoot(..) | SeriesError::Unresolved(_))) => {
                        return Attempt::NotExpandable(e.to_string());
                    }
                    Err(e) => {
                        last_error = e;
                        first_failure = None;
                        break;
                    }
                }
            }
            if let Some(mut report) = first_failure {
                if !roots.is_empty() {
                    report.verdict = Verdict::Inconclusive;
                    report.notes.push(format!(
                        "no choice of signs for {} square root(s) realizes the target",
                        roots.len()
                    ));
                }
                return Attempt::Done(report);
            }
            break;
        }
    }
    Attempt::Retry(last_error)
}

/// Gauss-Jordan inverse over series, pivoting on the smallest valuation.
fn invert_series(m: &[Vec<Series>]) -> std::result::Result<(Vec<Vec<Series>>, Series), SeriesError> {
    let n = m.len();
    let ctx = m[0][0].context();
    let mut a: Vec<Vec<Series>> = m.to_vec();
    let mut inv: Vec<Vec<Series>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    Series::constant(
                        ctx,
                        if i == j {
                            GaussianRational::from_int(1)
                        } else {
                            GaussianRational::zero()
                        },
                    )
                })
                .collect()
        })
        .collect();
    let mut det = Series::constant(ctx, GaussianRational::from_int(1));
    for c in 0..n {
        let p = (c..n)
            .filter_map(|r| a[r][c].valuation().map(|v| (v, r)))
            .min()
            .map(|(_, r)| r)
            .ok_or(SeriesError::DivisionByZero)?;
        if p != c {
            a.swap(p, c);
            inv.swap(p, c);
            det = det.neg();
        }
        let pivot_inv = a[c][c].inv()?;
        det = det.mul(&a[c][c]);
        for j in 0..n {
            a[c][j] = a[c][j].mul(&pivot_inv);
            inv[c][j] = inv[c][j].mul(&pivot_inv);
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero_to_precision() {
                continue;
            }
            let f = a[r][c].clone();
            for j in 0..n {
                a[r][j] = a[r][j].sub(&f.mul(&a[c][j]));
                inv[r][j] = inv[r][j].sub(&f.mul(&inv[c][j]));
            }
        }
    }
    Ok((inv, det))
}

/// Transported constants indexed `[i][j][k]`, with `det(E)`.
pub type SeriesConstants = (Vec<Vec<Vec<Series>>>, Series);

/// `c_{ij}^m(t)` of the source in the basis `E`, as series (0-based grid).
pub fn transported_series(
    cert: &Certificate,
    ctx: SeriesContext,
    branches: &Branches,
) -> std::result::Result<SeriesConstants, SeriesError> {
    let n = cert.dim;
    let basis: Vec<Vec<Series>> = cert
        .basis
        .iter()
        .map(|row| row.iter().map(|e| expand_series(e, ctx, branches)).collect())
        .collect::<std::result::Result<_, _>>()?;
    let source: Vec<(usize, usize, usize, Series)> = cert
        .source
        .iter()
        .map(|(i, j, k, e)| Ok((i - 1, j - 1, k - 1, expand_series(e, ctx, branches)?)))
        .collect::<std::result::Result<_, SeriesError>>()?;
    let transposed: Vec<Vec<Series>> = (0..n).map(|r| (0..n).map(|c| basis[c][r].clone()).collect()).collect();
    let (x, det) = invert_series(&transposed)?;
    let zero = Series::zero(ctx);
    let mut out = vec![vec![vec![zero.clone(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut w = vec![zero.clone(); n];
            for (p, q, l, c) in &source {
                let a = &basis[i][*p];
                let b = &basis[j][*q];
                if a.is_zero_to_precision() || b.is_zero_to_precision() {
                    continue;
                }
                w[*l] = w[*l].add(&a.mul(b).mul(c));
            }
            for m in 0..n {
                let mut s = zero.clone();
                for l in 0..n {
                    if !w[l].is_zero_to_precision() && !x[m][l].is_zero_to_precision() {
                        s = s.add(&x[m][l].mul(&w[l]));
                    }
                }
                out[i][j][m] = s;
            }
        }
    }
    Ok((out, det))
}

fn exponent_text(v: i64, den: i64) -> String {
    num_rational::Ratio::new(v, den).to_string()
}

#[allow(clippy::needless_range_loop)]
fn exact_attempt(
    cert: &Certificate,
    ctx: SeriesContext,
    branches: &Branches,
) -> std::result::Result<DegenerationReport, SeriesError> {
    let n = cert.dim;
    let (c, det) = transported_series(cert, ctx, branches)?;
    let mut residuals = Vec::new();
    let mut all_ok = true;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let s = &c[i][j][k];
                let target = cert.target.get(i, j, k);
                let (limit, ok) = match s.valuation() {
                    Some(v) if v < 0 => (format!("diverges like t^({})", exponent_text(v, ctx.den)), false),
                    _ => {
                        let c0 = s.constant_term()?;
                        let ok = &c0 == target;
                        (c0.to_string(), ok)
                    }
                };
                all_ok &= ok;
                if !ok || !target.is_zero() || !s.is_zero_to_precision() {
                    residuals.push(Residual {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        target: target.to_string(),
                        limit,
                        valuation: s.valuation().map(|v| exponent_text(v, ctx.den)),
                        error: None,
                        ok,
                    });
                }
            }
        }
    }
    let det_valuation = det.valuation().map(|v| exponent_text(v, ctx.den));
    if det_valuation.is_none() {
        // Indistinguishable from a singular basis at this truncation.
        return Err(SeriesError::Precision);
    }
    let notes = Vec::new();
    Ok(DegenerationReport {
        label: cert.label.clone(),
        verdict: if all_ok { Verdict::Verified } else { Verdict::Failed },
        mode: Mode::Exact,
        residuals,
        det_valuation,
        ramification: ctx.den,
        flipped_roots: branches.flipped(),
        notes,
    })
}

/// Numeric transported constants at a single `t`, with the determinant.
pub fn transported_numeric(
    cert: &Certificate,
    t: &Float,
    prec: u32,
    branches: &Branches,
) -> Result<(Vec<Vec<Vec<Complex>>>, Complex)> {
    let n = cert.dim;
    let basis: Vec<Vec<Complex>> = cert
        .basis
        .iter()
        .map(|row| row.iter().map(|e| eval_complex(e, t, prec, branches)).collect())
        .collect::<Result<_>>()?;
    let source: Vec<(usize, usize, usize, Complex)> = cert
        .source
        .iter()
        .map(|(i, j, k, e)| Ok((i - 1, j - 1, k - 1, eval_complex(e, t, prec, branches)?)))
        .collect::<Result<_>>()?;
    let transposed: Vec<Vec<Complex>> = (0..n).map(|r| (0..n).map(|c| basis[c][r].clone()).collect()).collect();
    let (x, det) = numeric::invert(&transposed, prec).ok_or(Error::Singular)?;
    let zero = Complex::with_val(prec, 0);
    let mut out = vec![vec![vec![zero.clone(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut w = vec![zero.clone(); n];
            for (p, q, l, c) in &source {
                let term = Complex::with_val(prec, &basis[i][*p] * &basis[j][*q]) * c;
                w[*l] += term;
            }
            for m in 0..n {
                let mut s = zero.clone();
                for l in 0..n {
                    s += Complex::with_val(prec, &x[m][l] * &w[l]);
                }
                out[i][j][m] = s;
            }
        }
    }
    Ok((out, det))
}

fn verify_numeric(
    cert: &Certificate,
    config: &VerifyConfig,
    roots: &[String],
    masks: u64,
) -> Result<DegenerationReport> {
    let mut first: Option<DegenerationReport> = None;
    for mask in 0..masks {
        let branches = Branches::from_mask(roots, mask);
        let report = numeric_attempt(cert, config, &branches)?;
        if report.verified() {
            return Ok(report);
        }
        first.get_or_insert(report);
    }
    let mut report = first.expect("at least one branch");
    if !roots.is_empty() {
        report.verdict = Verdict::Inconclusive;
        report.notes.push(format!(
            "no choice of signs for {} square root(s) realizes the target",
            roots.len()
        ));
    }
    Ok(report)
}

fn numeric_attempt(cert: &Certificate, config: &VerifyConfig, branches: &Branches) -> Result<DegenerationReport> {
    let n = cert.dim;
    let prec = config.precision;
    let den = cert.ramification();
    let ts: Vec<Float> = config.ladder.iter().map(|&k| ladder_point(k, prec)).collect();
    let mut samples = Vec::with_capacity(ts.len());
    let mut dets = Vec::with_capacity(ts.len());
    for t in &ts {
        match transported_numeric(cert, t, prec, branches) {
            Ok((c, d)) => {
                samples.push(c);
                dets.push(d);
            }
            Err(e) => {
                return Ok(DegenerationReport {
                    label: cert.label.clone(),
                    verdict: Verdict::Failed,
                    mode: Mode::Numeric,
                    residuals: Vec::new(),
                    det_valuation: None,
                    ramification: den,
                    flipped_roots: branches.flipped(),
                    notes: vec![format!("evaluation failed at t = {}: {e}", t.to_f64())],
                })
            }
        }
    }
    // extrapolation variable s = t^{1/den}
    let s: Vec<Float> = ts
        .iter()
        .map(|t| Float::with_val(prec, t.root_ref(den as u32)))
        .collect();
    let tol = config.tolerance;
    let mut residuals = Vec::new();
    let mut all_ok = true;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let ys: Vec<Complex> = samples.iter().map(|c| c[i][j][k].clone()).collect();
                let full = extrapolate_to_zero(&s, &ys);
                let partial = extrapolate_to_zero(&s[..s.len() - 1], &ys[..ys.len() - 1]);
                let target_c = to_complex(cert.target.get(i, j, k), prec);
                let scale = abs(&target_c).to_f64().max(1.0);
                let err = abs(&Complex::with_val(prec, &full - &target_c)).to_f64();
                let drift = abs(&Complex::with_val(prec, &full - &partial)).to_f64();
                let ok = err <= tol * scale && drift <= tol * scale;
                all_ok &= ok;
                let small = abs(&full).to_f64() <= tol;
                if !ok || !cert.target.get(i, j, k).is_zero() || !small {
                    residuals.push(Residual {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        target: cert.target.get(i, j, k).to_string(),
                        limit: format_complex(&full),
                        valuation: None,
                        error: Some(if err.is_finite() { err.max(drift) } else { f64::MAX }),
                        ok,
                    });
                }
            }
        }
    }
    let det_nonzero = dets.iter().all(|d| !d.is_zero());
    let mut notes = Vec::new();
    if !det_nonzero {
        all_ok = false;
        notes.push("basis determinant vanishes at a sample point".into());
    }
    Ok(DegenerationReport {
        label: cert.label.clone(),
        verdict: if all_ok { Verdict::Verified } else { Verdict::Failed },
        mode: Mode::Numeric,
        residuals,
        det_valuation: estimate_valuation(&ts, &dets, den),
        ramification: den,
        flipped_roots: branches.flipped(),
        notes,
    })
}

/// Slope of `log|det|` against `log t` over the two smallest samples,
/// rounded to the exponent grid.
fn estimate_valuation(ts: &[Float], dets: &[Complex], den: i64) -> Option<String> {
    let k = ts.len();
    if k < 2 || dets.iter().any(|d| d.is_zero()) {
        return None;
    }
    let ln = |x: Float| x.ln().to_f64();
    let slope = (ln(abs(&dets[k - 1])) - ln(abs(&dets[k - 2]))) / (ln(ts[k - 1].clone()) - ln(ts[k - 2].clone()));
    let units = (slope * den as f64).round() as i64;
    Some(exponent_text(units, den))
}

fn format_complex(z: &Complex) -> String {
    let (re, im) = (z.real().to_f64(), z.imag().to_f64());
    let clean = |x: f64| if x.abs() < 1e-30 { 0.0 } else { x };
    let (re, im) = (clean(re), clean(im));
    if im == 0.0 {
        format!("{re:.12e}")
    } else {
        format!("{re:.12e}{im:+.12e}i")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::gq;

    fn expr_grid(rows: &[&[&str]]) -> Vec<Vec<Expr>> {
        rows.iter()
            .map(|r| r.iter().map(|s| Expr::parse(s).unwrap()).collect())
            .collect()
    }

    fn heis() -> StructureConstants {
        StructureConstants::from_products("h", 3, &[(1, 2, 3, gq(1)), (2, 1, 3, gq(-1))]).unwrap()
    }

    #[test]
    fn identity_basis_verifies() {
        let a = heis();
        let cert = Certificate::from_algebra(
            "id",
            &a,
            a.clone(),
            expr_grid(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]),
        );
        let r = verify_certificate(&cert, &VerifyConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.mode, Mode::Exact);
        assert_eq!(r.det_valuation.as_deref(), Some("0"));
    }

    #[test]
    fn scaling_to_zero() {
        let a = heis();
        let cert = Certificate::from_algebra(
            "contract",
            &a,
            StructureConstants::zero(3),
            expr_grid(&[&["t", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]),
        );
        let r = verify_certificate(&cert, &VerifyConfig::default()).unwrap();
        assert!(r.verified());
        let wrong = Certificate {
            target: a.clone(),
            ..cert
        };
        let r = verify_certificate(&wrong, &VerifyConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Failed);
        assert!(r.residuals.iter().any(|x| !x.ok));
    }

    #[test]
    fn numeric_mode_agrees() {
        let a = heis();
        let cert = Certificate::from_algebra(
            "contract",
            &a,
            StructureConstants::zero(3),
            expr_grid(&[&["t", "0", "0"], &["0", "1+t", "0"], &["0", "0", "1"]]),
        );
        let cfg = VerifyConfig {
            mode: Mode::Numeric,
            ..VerifyConfig::default()
        };
        let r = verify_certificate(&cert, &cfg).unwrap();
        assert_eq!(r.mode, Mode::Numeric);
        assert!(r.verified(), "{r:?}");
        assert_eq!(r.det_valuation.as_deref(), Some("1"));
    }

    #[test]
    fn singular_basis_fails() {
        let a = heis();
        let cert = Certificate::from_algebra(
            "sing",
            &a,
            a.clone(),
            expr_grid(&[&["1", "0", "0"], &["1", "0", "0"], &["0", "0", "1"]]),
        );
        let r = verify_certificate(&cert, &VerifyConfig::default()).unwrap();
        assert!(!r.verified());
    }
}
