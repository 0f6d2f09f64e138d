//! Helpers shared by the integration test targets.

#![allow(dead_code)]

use rand::Rng;
use zinbiel::degeneration::{expand_series, Branches, Expr, Series, SeriesContext};
use zinbiel::exactmath::GaussianRational;

pub fn series_context() -> SeriesContext {
    SeriesContext::new(2, 8)
}

fn small_constant<R: Rng>(rng: &mut R) -> GaussianRational {
    let den = rng.gen_range(1..=3);
    let re = GaussianRational::from_ratio(rng.gen_range(-4..=4), den);
    if rng.gen_bool(0.25) {
        &re + &GaussianRational::new(0, rng.gen_range(-2..=2))
    } else {
        re
    }
}

/// A random expression in `t` with Gaussian-rational constants, integer
/// powers and `t^(1/2)`.
pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    let b = Box::new;
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..4) {
            0 | 1 => Expr::T,
            2 => Expr::Pow(b(Expr::T), 1, 2),
            _ => Expr::Const(small_constant(rng)),
        };
    }
    let mut sub = || random_expr(rng, depth - 1);
    let (x, y) = (sub(), sub());
    match rng.gen_range(0..7) {
        0 | 1 => Expr::Add(b(x), b(y)),
        2 => Expr::Sub(b(x), b(y)),
        3 | 4 => Expr::Mul(b(x), b(y)),
        5 => Expr::Div(b(x), b(Expr::Add(b(Expr::Const(GaussianRational::from_int(1))), b(y)))),
        _ => Expr::Pow(b(x), rng.gen_range(-2..=3), 1),
    }
}

fn expand(e: &Expr) -> Option<Series> {
    expand_series(e, series_context(), &Branches::principal()).ok()
}

/// Checks that expansion commutes with the ring operations on `x` and `y`
/// and that a square root of a square squares back. Returns how many laws
/// were exercised, or a description of the first violation.
pub fn check_series_laws(x: &Expr, y: &Expr) -> Result<usize, String> {
    let b = |e: &Expr| Box::new(e.clone());
    let (Some(sx), Some(sy)) = (expand(x), expand(y)) else {
        return Ok(0);
    };
    let mut exercised = 0;
    let mut law = |name: &str, combined: &Expr, direct: Option<Series>| -> Result<(), String> {
        match (expand(combined), direct) {
            (Some(s), Some(d)) if s.agrees_with(&d) => {
                exercised += 1;
                Ok(())
            }
            (None, None) => Ok(()),
            (s, d) => Err(format!("{name} on {x:?} and {y:?}: {s:?} vs {d:?}")),
        }
    };
    law("sum", &Expr::Add(b(x), b(y)), Some(sx.add(&sy)))?;
    law("difference", &Expr::Sub(b(x), b(y)), Some(sx.sub(&sy)))?;
    law("product", &Expr::Mul(b(x), b(y)), Some(sx.mul(&sy)))?;
    law("negation", &Expr::Neg(b(x)), Some(sx.neg()))?;
    if !sy.is_zero_to_precision() {
        law("quotient", &Expr::Div(b(x), b(y)), sx.div(&sy).ok())?;
    }

    let square = sx.mul(&sx);
    if !square.is_zero_to_precision() {
        let root = square.sqrt().map_err(|e| format!("sqrt of the square of {x:?}: {e}"))?;
        if !root.mul(&root).agrees_with(&square) {
            return Err(format!("sqrt of the square of {x:?} does not square back"));
        }
        if !(root.agrees_with(&sx) || root.agrees_with(&sx.neg())) {
            return Err(format!("sqrt of the square of {x:?} is not ±{x:?}"));
        }
        exercised += 1;
    }
    Ok(exercised)
}
