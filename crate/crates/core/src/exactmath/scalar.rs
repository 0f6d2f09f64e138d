use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// An element `re + im*i` of the Gaussian rationals ℚ(i).
///
/// Both parts are canonical [`Rational`]s, so two values are equal exactly
/// when their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: impl Into<Rational>, im: impl Into<Rational>) -> Self {
        GaussianRational {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(n, 0)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::new(Rational::new(num, den), 0)
    }

    pub fn real(re: impl Into<Rational>) -> Self {
        GaussianRational::new(re, 0)
    }

    pub fn i() -> Self {
        GaussianRational::new(0, 1)
    }

    /// Total bit length of numerators and denominators.
    pub fn height(&self) -> u64 {
        self.re.bits() + self.im.bits()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, exp: i64) -> Option<Self> {
        if exp < 0 {
            return self.inv().map(|v| v.pow(-exp).expect("non-negative power"));
        }
        let mut base = self.clone();
        let mut acc = GaussianRational::one();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Some(acc)
    }

    /// Principal square root when it lies in ℚ(i).
    ///
    /// The principal root has positive real part, or zero real part and
    /// non-negative imaginary part.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = Rational::from_integer(2);
        let x = rational_sqrt(&((&modulus + &self.re) / &two))?;
        let y_abs = rational_sqrt(&((&modulus - &self.re) / &two))?;
        let y = if self.im.is_negative() { -y_abs } else { y_abs };
        let root = GaussianRational::new(x, y);
        debug_assert_eq!(&(&root * &root), self);
        Some(root)
    }

    /// Principal `q`-th root of a positive rational, when it is rational.
    /// The value one is handled for every `q`; negative and complex inputs
    /// are only handled for `q = 2`.
    pub fn root(&self, q: u32) -> Option<Self> {
        match q {
            0 => None,
            1 => Some(self.clone()),
            2 => self.sqrt(),
            _ => {
                if self.is_one() {
                    return Some(GaussianRational::one());
                }
                if !self.is_real() || !self.re.is_positive() {
                    return None;
                }
                let n = integer_root(&self.re.numer(), q)?;
                let d = integer_root(&self.re.denom(), q)?;
                Some(GaussianRational::real(BigRational::new(n, d)))
            }
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

fn integer_root(n: &BigInt, q: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(q);
    if r.pow(q) == *n {
        Some(r)
    } else {
        None
    }
}

/// Square root of a non-negative rational when it is rational.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    if let Some((n, d)) = x.as_small() {
        let (rn, rd) = (n.isqrt(), d.isqrt());
        return (rn * rn == n && rd * rd == d).then(|| Rational::new(rn, rd));
    }
    let n = integer_root(&x.numer(), 2)?;
    let d = integer_root(&x.denom(), 2)?;
    Some(BigRational::new(n, d).into())
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::new(1, 0)
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        GaussianRational::real(r)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::real(r)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the rational division it wraps.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &'a GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

/// Canonical text form: `3`, `-1/2`, `i`, `-2*i`, `1/2+3/4*i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |v: &Rational| -> String {
            if v.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", v)
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-{}", im_part(&-self.im.clone()))
                } else {
                    write!(f, "{}", im_part(&self.im))
                }
            }
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}", self.re, im_part(&-self.im.clone()))
                } else {
                    write!(f, "{}+{}", self.re, im_part(&self.im))
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_ratio(n, d)
    }

    #[test]
    fn canonical_form_is_structural() {
        assert_eq!(q(2, 4), q(-1, -2));
        assert_eq!(q(2, 4).re.denom(), BigInt::from(2));
        assert_eq!(q(3, -6).re.denom(), BigInt::from(2));
    }

    #[test]
    fn field_inverse() {
        let z = GaussianRational::new(Rational::new(1, 2), 3);
        let w = z.inv().unwrap();
        assert!((&z * &w).is_one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn square_roots() {
        assert_eq!(q(-1, 1).sqrt(), Some(GaussianRational::i()));
        assert_eq!(q(-4, 9).sqrt(), Some(&q(2, 3) * &GaussianRational::i()));
        assert_eq!(q(9, 4).sqrt(), Some(q(3, 2)));
        assert_eq!(q(-5, 1).sqrt(), None);
        // (1+i)^2 = 2i
        let two_i = &q(2, 1) * &GaussianRational::i();
        assert_eq!(two_i.sqrt(), Some(&q(1, 1) + &GaussianRational::i()));
        // principal branch of -2i is 1-i
        assert_eq!((-two_i).sqrt(), Some(&q(1, 1) - &GaussianRational::i()));
    }

    #[test]
    fn cube_roots() {
        assert_eq!(q(8, 27).root(3), Some(q(2, 3)));
        assert_eq!(q(2, 1).root(3), None);
        assert_eq!(q(1, 1).root(5), Some(q(1, 1)));
    }

    #[test]
    fn display() {
        assert_eq!(q(3, 1).to_string(), "3");
        assert_eq!(q(-1, 2).to_string(), "-1/2");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        let z = &q(1, 2) - &(&q(3, 4) * &GaussianRational::i());
        assert_eq!(z.to_string(), "1/2-3/4*i");
        assert_eq!((&q(0, 1) + &(&q(-2, 1) * &GaussianRational::i())).to_string(), "-2*i");
    }
}
