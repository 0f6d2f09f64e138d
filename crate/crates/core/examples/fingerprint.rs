//! Fingerprints are unchanged by a random change of basis, and separate
//! the members of a family up to the symmetry alpha <-> 1/alpha.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zinbiel::algebra::fingerprint;
use zinbiel::catalog::Catalog;
use zinbiel::exactmath::ExactMatrix;

fn main() -> zinbiel::Result<()> {
    let catalog = Catalog::shipped();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = catalog.resolve("Z_35", None)?;
    let p = ExactMatrix::random_invertible(a.dim(), &mut rng);
    let b = a.change_basis(&p)?;
    println!("Z_35:            {:?}", fingerprint(&a));
    println!("after P:         {:?}", fingerprint(&b));
    for (x, y) in [("2", "1/2"), ("3", "1/3"), ("1/5", "5")] {
        let fx = fingerprint(&catalog.resolve(&format!("Z_02^{x}"), None)?);
        let fy = fingerprint(&catalog.resolve(&format!("Z_02^{y}"), None)?);
        println!("Z_02^{x} vs Z_02^{y}: equal = {}", fx == fy);
    }
    Ok(())
}
