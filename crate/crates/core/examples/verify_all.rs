//! Runs the table suite on the shipped catalog and prints the report.
//! Check names given as arguments restrict the run.

use std::time::Instant;

use zinbiel::catalog::{verify_all, Catalog, Check, SuiteConfig};

fn main() -> zinbiel::Result<()> {
    let mut config = SuiteConfig::default();
    let named: Vec<Check> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<zinbiel::Result<_>>()?;
    if !named.is_empty() {
        config.checks = named;
    }
    let start = Instant::now();
    let report = verify_all(Catalog::shipped(), &config)?;
    print!("{}", report.to_text());
    println!("elapsed {:.1?}", start.elapsed());
    Ok(())
}
