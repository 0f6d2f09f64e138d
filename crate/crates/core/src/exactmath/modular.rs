//! Multi-modular row reduction over ℚ(i).
//!
//! For a prime `p ≡ 3 (mod 4)` the ring `ℤ[i]/p` is the field with `p²`
//! elements, so Gaussian rationals reduce to pairs of residues. Reduced
//! forms modulo a few primes are glued by the Chinese remainder theorem,
//! lifted by rational reconstruction and then certified exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{ExactMatrix, GaussianRational, Rational, Rref};

/// Primes `≡ 3 (mod 4)` just below 2^31. Four of them cover numerators
/// and denominators up to about 2^61.
const PRIMES: [u64; 4] = [2147483647, 2147483587, 2147483579, 2147483563];

fn inv_mod(x: u64, p: u64) -> u64 {
    let (mut b, mut e, mut acc) = (x % p, p - 2, 1);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Arithmetic in `ℤ[i]/p` with elements stored as `(re, im)`.
#[derive(Clone, Copy)]
struct Field<const P: u64>;

type Elt = (u64, u64);

impl<const P: u64> Field<P> {
    fn inv_base(self, x: u64) -> u64 {
        inv_mod(x, P)
    }

    fn rational(self, r: &Rational) -> Option<u64> {
        let p = P;
        let (n, d) = match r.as_small() {
            Some((n, d)) => (n.rem_euclid(p as i64) as u64, d.rem_euclid(p as i64) as u64),
            None => {
                let m = BigInt::from(p);
                let red = |x: BigInt| x.mod_floor(&m).to_u64().expect("reduced below p");
                (red(r.numer()), red(r.denom()))
            }
        };
        match d {
            0 => None,
            1 => Some(n),
            _ => Some(n * self.inv_base(d) % p),
        }
    }

    fn mul(self, a: Elt, b: Elt) -> Elt {
        let p = P;
        (
            (a.0 * b.0 % p + p - a.1 * b.1 % p) % p,
            (a.0 * b.1 % p + a.1 * b.0 % p) % p,
        )
    }

    fn neg(self, a: Elt) -> Elt {
        let p = P;
        ((p - a.0) % p, (p - a.1) % p)
    }

    /// `a + g·b`; with `p < 2^31` the unreduced sums fit in a `u64`.
    fn mul_add(self, a: Elt, g: Elt, b: Elt) -> Elt {
        let p = P;
        (
            (a.0 + g.0 * b.0 + (p - g.1) * b.1) % p,
            (a.1 + g.0 * b.1 + g.1 * b.0) % p,
        )
    }

    /// Inverse of a nonzero element; `re² + im²` never vanishes since -1 is
    /// not a square modulo `p`.
    fn inv(self, a: Elt) -> Elt {
        let p = P;
        let n = self.inv_base((a.0 * a.0 % p + a.1 * a.1 % p) % p);
        (a.0 * n % p, (p - a.1) % p * n % p)
    }
}

/// Reduced row echelon form modulo `p`: pivot columns and the nonzero rows.
fn rref_mod<const P: u64>(m: &ExactMatrix) -> Option<(Vec<usize>, Vec<Vec<Elt>>)> {
    let f = Field::<P>;
    // Denominators repeat a lot, so remember the last inverse.
    let mut last = (1, 1);
    let mut part = |r: &Rational| -> Option<u64> {
        let p = P;
        let (n, d) = match r.as_small() {
            Some((0, _)) => return Some(0),
            Some((n, d)) => (n.rem_euclid(p as i64) as u64, d.rem_euclid(p as i64) as u64),
            None => return f.rational(r),
        };
        if d == 0 {
            return None;
        }
        if d != last.0 {
            last = (d, f.inv_base(d));
        }
        Some(n * last.1 % p)
    };
    let mut a: Vec<Vec<Elt>> = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let row = m
            .row(r)
            .iter()
            .map(|x| Some((part(&x.re)?, part(&x.im)?)))
            .collect::<Option<Vec<Elt>>>()?;
        a.push(row);
    }
    a.retain(|row| row.iter().any(|&x| x != (0, 0)));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != (0, 0)) else {
            continue;
        };
        a.swap(r, p);
        let s = f.inv(a[r][c]);
        for x in a[r][c..].iter_mut() {
            *x = f.mul(*x, s);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == (0, 0) {
                continue;
            }
            let g = f.neg(row[c]);
            for (x, &q) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if q != (0, 0) {
                    *x = f.mul_add(*x, g, q);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Some((pivots, a))
}

/// `a/b` with `a ≡ b·x (mod m)` and `|a|, b ≤ √(m/2)`, if one exists.
fn reconstruct(x: i128, m: i128) -> Option<Rational> {
    if x == 0 {
        return Some(Rational::zero());
    }
    let bound = ((m / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (m, x);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound || r1.gcd(&t1) != 1 {
        return None;
    }
    Some(Rational::from_i128(r1, t1))
}

/// Residues of one entry part across primes, combined by Garner's method.
fn crt(residues: impl Iterator<Item = (u64, u64)>) -> (i128, i128) {
    let (mut x, mut m) = (0i128, 1i128);
    for (r, p) in residues {
        let xm = (x % p as i128) as u64;
        let mm = (m % p as i128) as u64;
        let k = (r + p - xm) % p * inv_mod(mm, p) % p;
        x += m * k as i128;
        m *= p as i128;
    }
    (x, m)
}

/// Exact RREF computed modularly, or `None` when the primes were not
/// enough (large entries, unlucky reductions) or certification failed.
pub(super) fn rref_multimodular(m: &ExactMatrix) -> Option<Rref> {
    let mut best: Option<Vec<usize>> = None;
    let mut images: Vec<(u64, Vec<Vec<Elt>>)> = Vec::new();
    for (slot, &p) in PRIMES.iter().enumerate() {
        let image = match slot {
            0 => rref_mod::<{ PRIMES[0] }>(m),
            1 => rref_mod::<{ PRIMES[1] }>(m),
            2 => rref_mod::<{ PRIMES[2] }>(m),
            _ => rref_mod::<{ PRIMES[3] }>(m),
        };
        let Some((pivots, rows)) = image else {
            continue;
        };
        // Bad primes can only lose rank or push pivots to the right.
        let better = match &best {
            None => true,
            Some(b) => pivots.len() > b.len() || (pivots.len() == b.len() && pivots < *b),
        };
        if better {
            best = Some(pivots);
            images.clear();
        } else if best.as_ref() != Some(&pivots) {
            continue;
        }
        images.push((p, rows));
        if let Some(r) = lift(m, best.as_ref().expect("set above"), &images) {
            return Some(r);
        }
    }
    None
}

fn lift(m: &ExactMatrix, pivots: &[usize], images: &[(u64, Vec<Vec<Elt>>)]) -> Option<Rref> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut matrix = ExactMatrix::zeros(rows, cols);
    for (k, &pc) in pivots.iter().enumerate() {
        matrix[(k, pc)] = GaussianRational::from_int(1);
        for j in (pc + 1..cols).filter(|j| !pivots.contains(j)) {
            let part = |which: fn(Elt) -> u64| {
                let (x, modulus) = crt(images.iter().map(|(p, img)| (which(img[k][j]), *p)));
                reconstruct(x, modulus)
            };
            let re = part(|e| e.0)?;
            let im = part(|e| e.1)?;
            matrix[(k, j)] = GaussianRational::new(re, im);
        }
    }
    let candidate = Rref {
        matrix,
        rank: pivots.len(),
        pivots: pivots.to_vec(),
    };
    // The rank modulo p bounds the true rank from below; rows killing the
    // candidate kernel bound it from above and pin down the row space.
    let kernel = candidate.kernel();
    let int_kernel: Option<Vec<Vec<(i64, i64)>>> = kernel.iter().map(|v| integral(v)).collect();
    for r in 0..rows {
        let row = m.row(r);
        let fast = match (&int_kernel, integral(row)) {
            (Some(ks), Some(ir)) => ks.iter().try_fold(true, |ok, k| Some(ok && dot_is_zero(&ir, k)?)),
            _ => None,
        };
        let ok = fast.unwrap_or_else(|| kernel.iter().all(|v| exact_dot(row, v).is_zero()));
        if !ok {
            return None;
        }
    }
    Some(candidate)
}

fn exact_dot(a: &[GaussianRational], b: &[GaussianRational]) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// A nonzero multiple of `v` with Gaussian integer entries, if it fits in `i64`s.
fn integral(v: &[GaussianRational]) -> Option<Vec<(i64, i64)>> {
    let mut lcm = 1i64;
    for x in v {
        for part in [&x.re, &x.im] {
            let (_, d) = part.as_small()?;
            lcm = lcm.checked_mul(d / lcm.gcd(&d))?;
        }
    }
    let scale = |r: &Rational| -> Option<i64> {
        let (n, d) = r.as_small()?;
        n.checked_mul(lcm / d)
    };
    v.iter().map(|x| Some((scale(&x.re)?, scale(&x.im)?))).collect()
}

/// Whether the bilinear pairing vanishes, or `None` on overflow.
fn dot_is_zero(a: &[(i64, i64)], b: &[(i64, i64)]) -> Option<bool> {
    let (mut re, mut im) = (0i128, 0i128);
    for (&(ar, ai), &(br, bi)) in a.iter().zip(b) {
        let (ar, ai, br, bi) = (ar as i128, ai as i128, br as i128, bi as i128);
        re = re.checked_add(ar * br)?.checked_sub(ai * bi)?;
        im = im.checked_add(ar * bi)?.checked_add(ai * br)?;
    }
    Some(re == 0 && im == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{gq, gq_ratio};

    #[test]
    fn primes_make_fields() {
        for p in PRIMES {
            assert_eq!(p % 4, 3);
            assert!((2..1 << 16).all(|d| p % d != 0));
        }
        {
            let f = Field::<{ PRIMES[1] }>;
            let p = PRIMES[1];
            let z = (3, p - 5);
            assert_eq!(f.mul(z, f.inv(z)), (1, 0));
        }
    }

    #[test]
    fn reconstructs_small_fractions() {
        let p = PRIMES[0] as i128;
        let x = Field::<{ PRIMES[0] }>.rational(&Rational::new(-7, 12)).unwrap() as i128;
        assert_eq!(reconstruct(x, p), Some(Rational::new(-7, 12)));
    }

    #[test]
    fn agrees_with_plain_elimination() {
        let i = GaussianRational::i();
        let m = ExactMatrix::from_rows(vec![
            vec![gq(1), gq_ratio(2, 3), &i * &gq(3), gq(0)],
            vec![gq(2), gq_ratio(4, 3), &i * &gq(6), gq(0)],
            vec![gq(0), gq(5), gq(1), gq_ratio(-1, 7)],
            vec![gq(1), gq_ratio(17, 3), &i * &gq(3) + gq(1), gq_ratio(-1, 7)],
            vec![gq(0), gq(0), gq(0), gq(0)],
        ])
        .unwrap();
        let fast = rref_multimodular(&m).expect("small entries lift");
        assert_eq!(fast, m.rref_full());
        assert_eq!(fast.rank, 2);
    }

    #[test]
    fn huge_entries_decline() {
        let big = Rational::from_big(num_rational::BigRational::from_integer(BigInt::from(10).pow(40u32) + 1));
        let m = ExactMatrix::from_rows(vec![vec![gq(1), GaussianRational::real(big)], vec![gq(1), gq(1)]]).unwrap();
        assert!(rref_multimodular(&m).is_some());
        let huge = Rational::from_big(num_rational::BigRational::new(
            BigInt::from(10).pow(40u32) + 1,
            BigInt::from(10).pow(39u32) + 7,
        ));
        let k = ExactMatrix::from_rows(vec![vec![gq(1), GaussianRational::real(huge)], vec![gq(2), gq(0)]]).unwrap();
        // Full rank: the reduced form is the identity and lifts; a rank-one
        // row with a huge ratio cannot.
        assert!(rref_multimodular(&k).is_some());
        let h = Rational::from_big(num_rational::BigRational::new(
            BigInt::from(10).pow(40u32) + 1,
            BigInt::from(3),
        ));
        let single = ExactMatrix::from_rows(vec![vec![gq(1), GaussianRational::real(h)]]).unwrap();
        assert!(rref_multimodular(&single).is_none());
    }
}
