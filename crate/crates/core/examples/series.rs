//! Puiseux series arithmetic: expands an expression with a square root
//! and reads off its limit at t = 0.

use zinbiel::degeneration::{expand_series, Branches, Expr, SeriesContext};
use zinbiel::exactmath::Rational;

fn main() -> zinbiel::Result<()> {
    let ctx = SeriesContext::new(2, 6);
    for text in [
        "(1 - sqrt(1 - 4*t))/(2*t)",
        "t^(1/2)*(1 + t)^(-1)",
        "(3*t^2 - 1)/(9*t^2) * t^2",
    ] {
        let e = Expr::parse(text)?;
        let s = expand_series(&e, ctx, &Branches::principal())?;
        // Exponents are stored in units of 1/2 here.
        let head: Vec<String> = s
            .terms()
            .take(4)
            .map(|(k, c)| format!("({c})t^{}", Rational::new(k, 2)))
            .collect();
        println!("{text}");
        println!("  = {} + ...", head.join(" + "));
        match s.constant_term() {
            Ok(c) => println!("  limit {c}"),
            Err(e) => println!("  no limit: {e}"),
        }
    }
    Ok(())
}
