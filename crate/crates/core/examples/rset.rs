//! Tests catalog algebras against the closed sets used as evidence that a
//! degeneration is impossible.

use zinbiel::catalog::Catalog;
use zinbiel::degeneration::{rset_membership, RSet};

fn main() -> zinbiel::Result<()> {
    let catalog = Catalog::shipped();
    for row in catalog.rsets.rows.iter().take(4) {
        let conditions: Vec<String> = row.rset.containments.iter().map(ToString::to_string).collect();
        println!(
            "R({}): {} | {}",
            row.source,
            conditions.join(", "),
            row.rset.equations.join(", ")
        );
        if let Ok(source) = catalog.resolve(&row.source, None) {
            println!("  source member: {}", rset_membership(&source, &row.rset)?.member);
        }
        let plain = RSet {
            relabel: None,
            ..row.rset.clone()
        };
        for t in &row.targets {
            if let Ok(b) = catalog.resolve(t, None) {
                let m = rset_membership(&b, &plain)?;
                println!("  {t}: {}", m.violated.unwrap_or_else(|| "member".into()));
            }
        }
    }
    Ok(())
}
