//! Checks the defining identities on the symmetric example and shows the
//! first failing basis triple for an identity that does not hold.

use zinbiel::algebra::{check_identity, power_filtration, IdentityCheck, IdentitySpec};
use zinbiel::catalog::Catalog;

fn main() -> zinbiel::Result<()> {
    let catalog = Catalog::shipped();
    let s6 = catalog.resolve("S_6", None)?;
    for spec in [
        IdentitySpec::Zinbiel,
        IdentitySpec::SymmetricZinbiel,
        IdentitySpec::SkewCyclicLeft,
        IdentitySpec::SkewCyclicRight,
        IdentitySpec::Associative,
    ] {
        match check_identity(&s6, spec) {
            IdentityCheck::Pass => println!("{spec}: holds"),
            IdentityCheck::Fail(v) => println!("{spec}: fails, {} at {:?}", v.relation, v.indices),
        }
    }
    let pf = power_filtration(&s6);
    println!("dim A^3 = {}, dim A^4 = {}", pf.dim_power(3), pf.dim_power(4));
    Ok(())
}
