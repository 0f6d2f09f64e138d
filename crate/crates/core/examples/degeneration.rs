//! Verifies a degeneration certificate exactly, then again with the
//! numeric tier.

use zinbiel::catalog::Catalog;
use zinbiel::degeneration::{verify_certificate, Mode, VerifyConfig};

fn main() -> zinbiel::Result<()> {
    let catalog = Catalog::shipped();
    let rec = catalog
        .certificates
        .certificates
        .iter()
        .find(|c| c.label == "Z_27 -> Z_28")
        .expect("shipped certificate");
    let cert = catalog.certificate(rec, None)?;
    for mode in [Mode::Exact, Mode::Numeric] {
        let config = VerifyConfig {
            mode,
            ..VerifyConfig::default()
        };
        let report = verify_certificate(&cert, &config)?;
        println!(
            "{} [{mode}]: {:?}, det valuation {:?}",
            report.label, report.verdict, report.det_valuation
        );
        for r in report.residuals.iter().take(3) {
            println!("  c_{}{}^{}: limit {} target {}", r.i, r.j, r.k, r.limit, r.target);
        }
    }
    Ok(())
}
