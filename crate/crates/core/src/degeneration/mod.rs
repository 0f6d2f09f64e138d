//! Degenerations: parametrized bases verified through `t → 0` limits,
//! invariant-based necessary conditions, and R-set evidence.

mod certificate;
pub mod expr;
pub mod numeric;
mod rset;
pub mod series;

use serde::Serialize;

use crate::algebra::{annihilator, derivations, power_filtration, StructureConstants};

pub use certificate::{
    transported_numeric, transported_series, verify_certificate, Certificate, DegenerationReport, Mode, Residual,
    SeriesConstants, Verdict, VerifyConfig,
};
pub use expr::{linear_combination, linear_in_symbols, Expr, Symbol};
pub use rset::{rset_membership, Containment, Membership, RSet};
pub use series::{expand_series, Branches, Series, SeriesContext, SeriesError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryConditions {
    pub der_source: usize,
    pub der_target: usize,
    /// `dim A^k` for `k = 2..5`, source then target.
    pub powers_source: [usize; 4],
    pub powers_target: [usize; 4],
    pub ann_source: usize,
    pub ann_target: usize,
    pub der_strict: bool,
    pub powers_ok: bool,
    pub ann_ok: bool,
}

impl NecessaryConditions {
    /// True when nothing rules out a proper degeneration.
    pub fn all_pass(&self) -> bool {
        self.der_strict && self.powers_ok && self.ann_ok
    }
}

/// Invariant inequalities every proper degeneration `a → b` satisfies.
pub fn necessary_conditions(a: &StructureConstants, b: &StructureConstants) -> NecessaryConditions {
    let pa = power_filtration(a);
    let pb = power_filtration(b);
    let powers_source = [2, 3, 4, 5].map(|k| pa.dim_power(k));
    let powers_target = [2, 3, 4, 5].map(|k| pb.dim_power(k));
    let der_source = derivations(a).len();
    let der_target = derivations(b).len();
    let ann_source = annihilator(a).len();
    let ann_target = annihilator(b).len();
    NecessaryConditions {
        der_source,
        der_target,
        powers_source,
        powers_target,
        ann_source,
        ann_target,
        der_strict: der_source < der_target,
        powers_ok: powers_source.iter().zip(&powers_target).all(|(s, t)| s >= t),
        ann_ok: ann_source <= ann_target,
    }
}
