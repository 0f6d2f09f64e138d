//! Multiple-precision complex evaluation and extrapolation to `t = 0`.

use rug::ops::Pow;
use rug::{Complex, Float};

use super::expr::Expr;
use super::series::Branches;
use crate::error::{Error, Result};
use crate::exactmath::{GaussianRational, Rational};

fn rational_float(r: &Rational, prec: u32) -> Float {
    if let Some((n, d)) = r.as_small() {
        return Float::with_val(prec, n) / Float::with_val(prec, d);
    }
    let parse = |s: String| Float::with_val(prec, Float::parse(s).expect("integer literal"));
    parse(r.numer().to_string()) / parse(r.denom().to_string())
}

pub fn to_complex(c: &GaussianRational, prec: u32) -> Complex {
    Complex::with_val(prec, (rational_float(&c.re, prec), rational_float(&c.im, prec)))
}

/// `10^{-k}` at the given precision.
pub fn ladder_point(k: u32, prec: u32) -> Float {
    Float::with_val(prec, Float::parse(format!("1e-{k}")).expect("literal"))
}

/// Value of `e` at `t`, principal roots unless flipped.
pub fn eval_complex(e: &Expr, t: &Float, prec: u32, branches: &Branches) -> Result<Complex> {
    let rec = |x: &Expr| eval_complex(x, t, prec, branches);
    Ok(match e {
        Expr::Const(c) => to_complex(c, prec),
        Expr::T => Complex::with_val(prec, t),
        Expr::Param(p) => return Err(Error::NotExact(format!("unresolved parameter `{p}`"))),
        Expr::StructConst(..) => return Err(Error::NotExact(format!("unresolved `{e}`"))),
        Expr::Add(a, b) => rec(a)? + rec(b)?,
        Expr::Sub(a, b) => rec(a)? - rec(b)?,
        Expr::Mul(a, b) => rec(a)? * rec(b)?,
        Expr::Div(a, b) => {
            let d = rec(b)?;
            if d.is_zero() {
                return Err(Error::NotExact(format!("division by zero in `{e}` at t = {t}")));
            }
            rec(a)? / d
        }
        Expr::Neg(a) => -rec(a)?,
        Expr::Pow(a, p, 1) => {
            let base = rec(a)?;
            if *p < 0 && base.is_zero() {
                return Err(Error::NotExact(format!("zero to a negative power in `{e}`")));
            }
            base.pow(i32::try_from(*p).map_err(|_| Error::NotExact("exponent too large".into()))?)
        }
        Expr::Pow(a, p, q) => {
            let base = rec(a)?;
            if base.is_zero() {
                Complex::with_val(prec, 0)
            } else {
                let exponent = Float::with_val(prec, *p) / Float::with_val(prec, *q);
                (base.ln() * exponent).exp()
            }
        }
        Expr::Sqrt(a) => {
            let root = rec(a)?.sqrt();
            if branches.is_flipped(&a.to_string()) {
                -root
            } else {
                root
            }
        }
    })
}

pub fn abs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// Inverse by Gauss-Jordan elimination with largest-modulus pivots;
/// also returns the determinant.
pub fn invert(m: &[Vec<Complex>], prec: u32) -> Option<(Vec<Vec<Complex>>, Complex)> {
    let n = m.len();
    let mut a: Vec<Vec<Complex>> = m.to_vec();
    let mut inv: Vec<Vec<Complex>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Complex::with_val(prec, if i == j { 1 } else { 0 }))
                .collect()
        })
        .collect();
    let mut det = Complex::with_val(prec, 1);
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| abs(&a[x][c]).partial_cmp(&abs(&a[y][c])).expect("finite"))?;
        if a[p][c].is_zero() {
            return None;
        }
        if p != c {
            a.swap(p, c);
            inv.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for j in 0..n {
            a[c][j] /= &pivot;
            inv[c][j] /= &pivot;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for j in 0..n {
                let d = Complex::with_val(prec, &f * &a[c][j]);
                a[r][j] -= d;
                let d = Complex::with_val(prec, &f * &inv[c][j]);
                inv[r][j] -= d;
            }
        }
    }
    Some((inv, det))
}

/// Neville extrapolation of `(s_k, y_k)` to `s = 0`.
pub fn extrapolate_to_zero(s: &[Float], y: &[Complex]) -> Complex {
    assert_eq!(s.len(), y.len());
    let mut p: Vec<Complex> = y.to_vec();
    let n = s.len();
    for m in 1..n {
        for i in 0..n - m {
            // P(0) = (s_{i+m} P_i - s_i P_{i+1}) / (s_{i+m} - s_i)
            let num =
                Complex::with_val(p[i].prec(), &p[i] * &s[i + m]) - Complex::with_val(p[i].prec(), &p[i + 1] * &s[i]);
            let den = Float::with_val(s[i].prec(), &s[i + m] - &s[i]);
            p[i] = num / den;
        }
    }
    p.swap_remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c_f64(z: &Complex) -> (f64, f64) {
        (z.real().to_f64(), z.imag().to_f64())
    }

    #[test]
    fn principal_square_root_of_negative_real() {
        let t = ladder_point(2, 128);
        let e = Expr::parse("sqrt(4t^2-1)").unwrap();
        let (re, im) = c_f64(&eval_complex(&e, &t, 128, &Branches::principal()).unwrap());
        assert!(re.abs() < 1e-30);
        assert!((im - (1.0f64 - 4e-4).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn extrapolates_polynomials_exactly() {
        let prec = 200;
        let s: Vec<Float> = (2..9).map(|k| ladder_point(k, prec)).collect();
        let y: Vec<Complex> = s
            .iter()
            .map(|x| Complex::with_val(prec, 3) + Complex::with_val(prec, x * Float::with_val(prec, 5)))
            .collect();
        let (re, im) = c_f64(&extrapolate_to_zero(&s, &y));
        assert!((re - 3.0).abs() < 1e-40 && im.abs() < 1e-40);
    }

    #[test]
    fn inverse_and_determinant() {
        let prec = 128;
        let c = |x: i32| Complex::with_val(prec, x);
        let m = vec![vec![c(0), c(2)], vec![c(1), c(1)]];
        let (inv, det) = invert(&m, prec).unwrap();
        assert_eq!(c_f64(&det), (-2.0, 0.0));
        assert_eq!(c_f64(&inv[0][0]), (-0.5, 0.0));
        assert_eq!(c_f64(&inv[0][1]), (1.0, 0.0));
        assert!(invert(&[vec![c(0)]], prec).is_none());
    }
}
