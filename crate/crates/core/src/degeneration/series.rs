//! Truncated Puiseux series in `t` with Gaussian-rational coefficients.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::expr::Expr;
use crate::exactmath::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by a series that vanishes to the available precision")]
    DivisionByZero,
    #[error("ramification {0} cannot represent an exponent with denominator {1}")]
    Ramification(i64, i64),
    #[error("leading coefficient {0} has no exact root of order {1}")]
    NoExactRoot(String, i64),
    #[error("precision exhausted before the constant term")]
    Precision,
    #[error("unresolved symbol `{0}`")]
    Unresolved(String),
}

/// Exponent grid `(1/den)ℤ` and the absolute precision cap shared by all
/// series of one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesContext {
    pub den: i64,
    /// Absolute precision cap, in units of `1/den`.
    pub cap: i64,
}

impl SeriesContext {
    /// Ramification `den`, truncation after `terms` whole powers of `t`.
    pub fn new(den: i64, terms: i64) -> Self {
        SeriesContext { den, cap: den * terms }
    }
}

/// `Σ_k coeffs[k] t^{(val+k)/den} + O(t^{prec/den})`.
///
/// The leading coefficient is nonzero unless the series is zero to its
/// precision, in which case `coeffs` is empty and `val == prec`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    ctx: SeriesContext,
    val: i64,
    coeffs: Vec<GaussianRational>,
    prec: i64,
}

impl Series {
    pub fn zero(ctx: SeriesContext) -> Series {
        Series {
            ctx,
            val: ctx.cap,
            coeffs: Vec::new(),
            prec: ctx.cap,
        }
    }

    /// `c t^{e/den}`, known to the cap.
    pub fn monomial(ctx: SeriesContext, c: GaussianRational, e: i64) -> Series {
        if c.is_zero() || e >= ctx.cap {
            return Series::zero(ctx);
        }
        let mut coeffs = vec![GaussianRational::zero(); (ctx.cap - e) as usize];
        coeffs[0] = c;
        Series {
            ctx,
            val: e,
            coeffs,
            prec: ctx.cap,
        }
    }

    pub fn constant(ctx: SeriesContext, c: GaussianRational) -> Series {
        Series::monomial(ctx, c, 0)
    }

    pub fn t(ctx: SeriesContext) -> Series {
        Series::monomial(ctx, GaussianRational::one(), ctx.den)
    }

    pub fn context(&self) -> SeriesContext {
        self.ctx
    }

    /// Exponent index of the leading term, `None` when zero to precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    /// Leading exponent as a rational power of `t`.
    pub fn leading_exponent(&self) -> Option<BigRational> {
        self.valuation()
            .map(|v| BigRational::new(BigInt::from(v), BigInt::from(self.ctx.den)))
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> Option<&GaussianRational> {
        self.coeffs.first()
    }

    /// Coefficient of `t^{e/den}`; `None` if beyond the precision.
    pub fn coefficient(&self, e: i64) -> Option<GaussianRational> {
        if e >= self.prec {
            return None;
        }
        if e < self.val {
            return Some(GaussianRational::zero());
        }
        Some(self.coeffs[(e - self.val) as usize].clone())
    }

    /// Value at `t = 0`; the caller must check the valuation is non-negative.
    pub fn constant_term(&self) -> Result<GaussianRational, SeriesError> {
        self.coefficient(0).ok_or(SeriesError::Precision)
    }

    /// Known terms as `(exponent index, coefficient)`, nonzero only.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.val + k as i64, c))
    }

    fn normalized(ctx: SeriesContext, val: i64, mut coeffs: Vec<GaussianRational>, prec: i64) -> Series {
        let prec = prec.min(ctx.cap);
        let keep = (prec - val).max(0) as usize;
        coeffs.truncate(keep);
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Series {
                ctx,
                val: prec,
                coeffs: Vec::new(),
                prec,
            },
            Some(k) => {
                coeffs.drain(..k);
                Series {
                    ctx,
                    val: val + k as i64,
                    coeffs,
                    prec,
                }
            }
        }
    }

    fn check_ctx(&self, other: &Series) {
        assert_eq!(self.ctx, other.ctx, "series from different contexts");
    }

    pub fn add(&self, other: &Series) -> Series {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.combine(other, true)
    }

    fn combine(&self, other: &Series, negate: bool) -> Series {
        self.check_ctx(other);
        let prec = self.prec.min(other.prec);
        let val = self.val.min(other.val).min(prec);
        let len = (prec - val).max(0) as usize;
        let mut coeffs = vec![GaussianRational::zero(); len];
        for (k, c) in self.coeffs.iter().enumerate() {
            let idx = (self.val - val) as usize + k;
            if idx < len {
                coeffs[idx] += c;
            }
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            let idx = (other.val - val) as usize + k;
            if idx < len {
                if negate {
                    coeffs[idx] -= c;
                } else {
                    coeffs[idx] += c;
                }
            }
        }
        Series::normalized(self.ctx, val, coeffs, prec)
    }

    pub fn neg(&self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Series {
        if c.is_zero() {
            return Series::normalized(self.ctx, self.prec, Vec::new(), self.prec);
        }
        Series {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Series) -> Series {
        self.check_ctx(other);
        let prec = (self.val + other.prec).min(other.val + self.prec).min(self.ctx.cap);
        let val = self.val + other.val;
        if self.coeffs.is_empty() || other.coeffs.is_empty() || val >= prec {
            return Series::normalized(self.ctx, prec, Vec::new(), prec);
        }
        let len = (prec - val) as usize;
        let mut coeffs = vec![GaussianRational::zero(); len];
        for (a, x) in self.coeffs.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate().take(len - a) {
                if !y.is_zero() {
                    coeffs[a + b] += &(x * y);
                }
            }
        }
        Series::normalized(self.ctx, val, coeffs, prec)
    }

    pub fn inv(&self) -> Result<Series, SeriesError> {
        let Some(u0) = self.coeffs.first() else {
            return Err(SeriesError::DivisionByZero);
        };
        let r = self.coeffs.len();
        let inv0 = u0.inv().expect("nonzero leading coefficient");
        let mut b: Vec<GaussianRational> = Vec::with_capacity(r);
        b.push(inv0.clone());
        for k in 1..r {
            let mut s = GaussianRational::zero();
            for j in 1..=k {
                let u = &self.coeffs[j];
                if !u.is_zero() && !b[k - j].is_zero() {
                    s += &(u * &b[k - j]);
                }
            }
            b.push(-(&s * &inv0));
        }
        let val = -self.val;
        Ok(Series::normalized(self.ctx, val, b, val + r as i64))
    }

    pub fn div(&self, other: &Series) -> Result<Series, SeriesError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn powi(&self, n: i64) -> Result<Series, SeriesError> {
        if n < 0 {
            return self.inv()?.powi(-n);
        }
        let mut base = self.clone();
        let mut acc = Series::constant(self.ctx, GaussianRational::one());
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// `self^{p/q}` on the branch whose leading coefficient is the
    /// principal root of the leading coefficient.
    pub fn pow_rational(&self, p: i64, q: i64) -> Result<Series, SeriesError> {
        if q == 1 {
            return self.powi(p);
        }
        let Some(c) = self.coeffs.first() else {
            if p > 0 {
                // O(t^{prec}) to a positive power
                let prec = (self.prec * p).div_euclid(q);
                return Ok(Series::normalized(self.ctx, prec, Vec::new(), prec));
            }
            return Err(SeriesError::DivisionByZero);
        };
        if (self.val * p) % q != 0 {
            return Err(SeriesError::Ramification(self.ctx.den, q));
        }
        let root = c
            .root(q as u32)
            .ok_or_else(|| SeriesError::NoExactRoot(c.to_string(), q))?;
        let lead = root.pow(p).expect("nonzero root");
        let inv_c = c.inv().expect("nonzero");
        let w: Vec<GaussianRational> = self.coeffs.iter().map(|x| x * &inv_c).collect();
        let alpha = GaussianRational::from_ratio(p, q);
        let alpha1 = &alpha + &GaussianRational::one();
        // Miller's recurrence for w^alpha with w_0 = 1.
        let r = w.len();
        let mut f: Vec<GaussianRational> = Vec::with_capacity(r);
        f.push(GaussianRational::one());
        for k in 1..r {
            let mut s = GaussianRational::zero();
            for j in 1..=k {
                if w[j].is_zero() || f[k - j].is_zero() {
                    continue;
                }
                let factor = &(&alpha1 * &GaussianRational::from_int(j as i64)) - &GaussianRational::from_int(k as i64);
                s += &(&factor * &(&w[j] * &f[k - j]));
            }
            f.push(&s / &GaussianRational::from_int(k as i64));
        }
        let val = self.val * p / q;
        let coeffs = f.iter().map(|x| x * &lead).collect();
        Ok(Series::normalized(self.ctx, val, coeffs, val + r as i64))
    }

    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        self.pow_rational(1, 2)
    }

    /// Truncated sum at a numeric `t > 0`, as `f64` parts.
    pub fn eval_f64(&self, t: f64) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in self.terms() {
            let w = t.powf(e as f64 / self.ctx.den as f64);
            let (a, b) = c.to_f64_pair();
            re += a * w;
            im += b * w;
        }
        (re, im)
    }

    /// Agreement on every term both series know.
    pub fn agrees_with(&self, other: &Series) -> bool {
        let upto = self.prec.min(other.prec);
        let from = self.val.min(other.val);
        (from..upto).all(|e| self.coefficient(e) == other.coefficient(e))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.ctx.den;
        for (e, c) in self.terms() {
            let exp = BigRational::new(BigInt::from(e), BigInt::from(den));
            write!(f, "({c})*t^({exp}) + ")?;
        }
        let exp = BigRational::new(BigInt::from(self.prec), BigInt::from(den));
        write!(f, "O(t^({exp}))")
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Which square roots take the non-principal sign, keyed by the display
/// text of their argument.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Branches {
    flipped: HashSet<String>,
}

impl Branches {
    pub fn principal() -> Self {
        Branches::default()
    }

    /// Flip the roots selected by the bits of `mask` among `args`.
    pub fn from_mask(args: &[String], mask: u64) -> Self {
        Branches {
            flipped: args
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, a)| a.clone())
                .collect(),
        }
    }

    pub fn is_flipped(&self, arg: &str) -> bool {
        self.flipped.contains(arg)
    }

    pub fn flipped(&self) -> Vec<String> {
        let mut v: Vec<String> = self.flipped.iter().cloned().collect();
        v.sort();
        v
    }
}

/// Expand an expression whose only free symbol is `t`.
pub fn expand_series(e: &Expr, ctx: SeriesContext, branches: &Branches) -> Result<Series, SeriesError> {
    let rec = |x: &Expr| expand_series(x, ctx, branches);
    match e {
        Expr::Const(c) => Ok(Series::constant(ctx, c.clone())),
        Expr::T => Ok(Series::t(ctx)),
        Expr::Param(p) => Err(SeriesError::Unresolved(p.clone())),
        Expr::StructConst(i, j, k) => Err(SeriesError::Unresolved(format!("c_{{{i}{j}}}^{{{k}}}"))),
        Expr::Add(a, b) => Ok(rec(a)?.add(&rec(b)?)),
        Expr::Sub(a, b) => Ok(rec(a)?.sub(&rec(b)?)),
        Expr::Mul(a, b) => Ok(rec(a)?.mul(&rec(b)?)),
        Expr::Div(a, b) => rec(a)?.div(&rec(b)?),
        Expr::Neg(a) => Ok(rec(a)?.neg()),
        Expr::Pow(a, p, q) => {
            if matches!(**a, Expr::T) {
                if (ctx.den * p) % q != 0 {
                    return Err(SeriesError::Ramification(ctx.den, *q));
                }
                return Ok(Series::monomial(ctx, GaussianRational::one(), ctx.den * p / q));
            }
            rec(a)?.pow_rational(*p, *q)
        }
        Expr::Sqrt(a) => {
            let root = rec(a)?.sqrt()?;
            Ok(if branches.is_flipped(&a.to_string()) {
                root.neg()
            } else {
                root
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{gq, gq_ratio};

    fn ctx() -> SeriesContext {
        SeriesContext::new(1, 8)
    }

    fn expand(s: &str) -> Series {
        expand_series(&Expr::parse(s).unwrap(), ctx(), &Branches::principal()).unwrap()
    }

    #[test]
    fn polynomial() {
        let s = expand("t^2 + 3");
        assert_eq!(s.valuation(), Some(0));
        assert_eq!(s.coefficient(0), Some(gq(3)));
        assert_eq!(s.coefficient(1), Some(gq(0)));
        assert_eq!(s.coefficient(2), Some(gq(1)));
    }

    #[test]
    fn geometric() {
        let s = expand("1/(t-1)");
        for e in 0..8 {
            assert_eq!(s.coefficient(e), Some(gq(-1)));
        }
        assert_eq!(s.coefficient(8), None);
    }

    #[test]
    fn square_root_with_imaginary_lead() {
        let s = expand("sqrt(4t^2-1)");
        let i = GaussianRational::i();
        assert_eq!(s.coefficient(0), Some(i.clone()));
        assert_eq!(s.coefficient(1), Some(gq(0)));
        assert_eq!(s.coefficient(2), Some(-&(&gq(2) * &i)));
        assert_eq!(s.coefficient(4), Some(-&(&gq(2) * &i)));
        assert!(s.mul(&s).agrees_with(&expand("4t^2-1")));
    }

    #[test]
    fn laurent_terms() {
        let s = expand("(t+1)/t");
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.coefficient(-1), Some(gq(1)));
        assert_eq!(s.coefficient(0), Some(gq(1)));
    }

    #[test]
    fn fractional_powers_need_ramification() {
        let e = Expr::parse("t^(2/3)").unwrap();
        assert_eq!(
            expand_series(&e, ctx(), &Branches::principal()),
            Err(SeriesError::Ramification(1, 3))
        );
        let s = expand_series(&e, SeriesContext::new(3, 4), &Branches::principal()).unwrap();
        assert_eq!(s.leading_exponent(), Some(BigRational::new(2.into(), 3.into())));
        let e = Expr::parse("sqrt(t/(4t^2-t-4))").unwrap();
        assert!(expand_series(&e, ctx(), &Branches::principal()).is_err());
        let s = expand_series(&e, SeriesContext::new(2, 6), &Branches::principal()).unwrap();
        assert_eq!(
            s.leading_coefficient(),
            Some(&(&gq_ratio(1, 2) * &GaussianRational::i()))
        );
    }

    #[test]
    fn irrational_roots_are_not_expanded() {
        let e = Expr::parse("sqrt(4t^2-5)").unwrap();
        assert!(matches!(
            expand_series(&e, ctx(), &Branches::principal()),
            Err(SeriesError::NoExactRoot(..))
        ));
    }

    #[test]
    fn branch_flip_negates() {
        let e = Expr::parse("sqrt(1+t)").unwrap();
        let args = e.sqrt_arguments();
        let p = expand_series(&e, ctx(), &Branches::principal()).unwrap();
        let f = expand_series(&e, ctx(), &Branches::from_mask(&args, 1)).unwrap();
        assert_eq!(f, p.neg());
        assert_eq!(p.coefficient(1), Some(gq_ratio(1, 2)));
        assert_eq!(p.coefficient(2), Some(gq_ratio(-1, 8)));
    }

    #[test]
    fn division_by_vanishing_series() {
        let e = Expr::parse("1/(t-t)").unwrap();
        assert_eq!(
            expand_series(&e, ctx(), &Branches::principal()),
            Err(SeriesError::DivisionByZero)
        );
    }
}
