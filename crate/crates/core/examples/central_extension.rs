//! Second cohomology of a four-dimensional algebra and the central
//! extension it yields, compared with the catalog entry.

use zinbiel::catalog::Catalog;
use zinbiel::cohomology::{central_extension, extension_wellformed, format_deltas, h2, CocycleForm};

fn main() -> zinbiel::Result<()> {
    let catalog = Catalog::shipped();
    let parent = catalog.resolve("N_01", None)?;
    let h = h2(&parent);
    println!("dim Z2 = {}, dim B2 = {}, dim H2 = {}", h.z2.len(), h.b2.len(), h.dim());
    for r in &h.reps {
        println!("  {}", format_deltas(r));
    }

    let theta = CocycleForm::single(CocycleForm::parse_deltas("Δ12+2Δ21+Δ13+Δ44", 4, &|_| None)?)?;
    let report = extension_wellformed(&parent, &theta);
    let child = central_extension(&parent, &theta)?;
    println!("extension: {child}");
    println!("well-formed: {}", report.ok);
    println!("equals Z_01: {}", child == catalog.resolve("Z_01", None)?);
    Ok(())
}
