//! Annihilator, powers, derivations and orbit dimension of a few catalog
//! algebras.

use zinbiel::algebra::{annihilator, derivations, format_vector, orbit_dimension, power_filtration};
use zinbiel::catalog::Catalog;

fn main() -> zinbiel::Result<()> {
    let catalog = Catalog::shipped();
    for spec in ["Z_05", "Z_22", "Z_40", "Z_14^1/3"] {
        let a = catalog.resolve(spec, None)?;
        let ann: Vec<String> = annihilator(&a).iter().map(|v| format_vector(v)).collect();
        println!("{spec}: {a}");
        println!("  Ann = span{{{}}}", ann.join(", "));
        println!("  dim A^k = {:?}", power_filtration(&a).dims);
        println!(
            "  dim Der = {}, orbit dimension = {}",
            derivations(&a).len(),
            orbit_dimension(&a)
        );
    }
    Ok(())
}
