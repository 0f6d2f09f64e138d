use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{unit_vector, StructureConstants};
use crate::error::Error;
use crate::exactmath::GaussianRational;

type Vector = Vec<GaussianRational>;

/// Polynomial identities, each a set of multilinear relations in at most
/// three variables, so checking basis tuples suffices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentitySpec {
    Zinbiel,
    SymmetricZinbiel,
    TwoStepNilpotent,
    SkewCyclicLeft,
    SkewCyclicRight,
    Associative,
    Commutative,
    Anticommutative,
}

impl IdentitySpec {
    pub const ALL: [IdentitySpec; 8] = [
        IdentitySpec::Zinbiel,
        IdentitySpec::SymmetricZinbiel,
        IdentitySpec::TwoStepNilpotent,
        IdentitySpec::SkewCyclicLeft,
        IdentitySpec::SkewCyclicRight,
        IdentitySpec::Associative,
        IdentitySpec::Commutative,
        IdentitySpec::Anticommutative,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentitySpec::Zinbiel => "zinbiel",
            IdentitySpec::SymmetricZinbiel => "symmetric-zinbiel",
            IdentitySpec::TwoStepNilpotent => "two-step-nilpotent",
            IdentitySpec::SkewCyclicLeft => "skew-cyclic-left",
            IdentitySpec::SkewCyclicRight => "skew-cyclic-right",
            IdentitySpec::Associative => "associative",
            IdentitySpec::Commutative => "commutative",
            IdentitySpec::Anticommutative => "anticommutative",
        }
    }

    fn relations(&self) -> &'static [Relation] {
        use Relation::*;
        match self {
            IdentitySpec::Zinbiel => &[Zinbiel],
            IdentitySpec::SymmetricZinbiel => &[Zinbiel, RightZinbiel],
            IdentitySpec::TwoStepNilpotent => &[LeftNormedZero, RightNormedZero],
            IdentitySpec::SkewCyclicLeft => &[SkewLeft],
            IdentitySpec::SkewCyclicRight => &[SkewRight],
            IdentitySpec::Associative => &[Associative],
            IdentitySpec::Commutative => &[Commutative],
            IdentitySpec::Anticommutative => &[Anticommutative],
        }
    }
}

impl fmt::Display for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentitySpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        IdentitySpec::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity `{s}`")))
    }
}

#[derive(Clone, Copy, Debug)]
enum Relation {
    Zinbiel,
    RightZinbiel,
    LeftNormedZero,
    RightNormedZero,
    SkewLeft,
    SkewRight,
    Associative,
    Commutative,
    Anticommutative,
}

impl Relation {
    fn arity(self) -> usize {
        match self {
            Relation::Commutative | Relation::Anticommutative => 2,
            _ => 3,
        }
    }

    fn text(self) -> &'static str {
        match self {
            Relation::Zinbiel => "(xy)z = x(yz) + x(zy)",
            Relation::RightZinbiel => "x(yz) = (xy)z + (yx)z",
            Relation::LeftNormedZero => "(xy)z = 0",
            Relation::RightNormedZero => "x(yz) = 0",
            Relation::SkewLeft => "(xy)z = -y(zx)",
            Relation::SkewRight => "(xy)z = -z(yx)",
            Relation::Associative => "(xy)z = x(yz)",
            Relation::Commutative => "xy = yx",
            Relation::Anticommutative => "xy = -yx",
        }
    }

    fn sides(self, a: &StructureConstants, x: &Vector, y: &Vector, z: &Vector) -> (Vector, Vector) {
        let m = |u: &Vector, v: &Vector| a.mul(u, v);
        let add = |u: Vector, v: Vector| -> Vector { u.iter().zip(&v).map(|(p, q)| p + q).collect() };
        let neg = |u: Vector| -> Vector { u.iter().map(|p| -p).collect() };
        let zero = || vec![GaussianRational::default(); a.dim()];
        match self {
            Relation::Zinbiel => (m(&m(x, y), z), add(m(x, &m(y, z)), m(x, &m(z, y)))),
            Relation::RightZinbiel => (m(x, &m(y, z)), add(m(&m(x, y), z), m(&m(y, x), z))),
            Relation::LeftNormedZero => (m(&m(x, y), z), zero()),
            Relation::RightNormedZero => (m(x, &m(y, z)), zero()),
            Relation::SkewLeft => (m(&m(x, y), z), neg(m(y, &m(z, x)))),
            Relation::SkewRight => (m(&m(x, y), z), neg(m(z, &m(y, x)))),
            Relation::Associative => (m(&m(x, y), z), m(x, &m(y, z))),
            Relation::Commutative => (m(x, y), m(y, x)),
            Relation::Anticommutative => (m(x, y), neg(m(y, x))),
        }
    }
}

/// First failing basis tuple for an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub relation: &'static str,
    /// 1-based basis indices substituted for x, y (and z).
    pub indices: Vec<usize>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityCheck {
    Pass,
    Fail(Violation),
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        matches!(self, IdentityCheck::Pass)
    }
}

pub fn check_identity(a: &StructureConstants, spec: IdentitySpec) -> IdentityCheck {
    let n = a.dim();
    let basis: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
    for &rel in spec.relations() {
        let third = if rel.arity() == 3 { n } else { 1.min(n) };
        for i in 0..n {
            for j in 0..n {
                for k in 0..third {
                    let (lhs, rhs) = rel.sides(a, &basis[i], &basis[j], &basis[k]);
                    if lhs != rhs {
                        let mut indices = vec![i + 1, j + 1];
                        if rel.arity() == 3 {
                            indices.push(k + 1);
                        }
                        return IdentityCheck::Fail(Violation {
                            relation: rel.text(),
                            indices,
                            lhs: lhs.iter().map(ToString::to_string).collect(),
                            rhs: rhs.iter().map(ToString::to_string).collect(),
                        });
                    }
                }
            }
        }
    }
    IdentityCheck::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::gq;

    #[test]
    fn idempotent_line_is_not_zinbiel() {
        let a = StructureConstants::from_products("e", 1, &[(1, 1, 1, gq(1))]).unwrap();
        let IdentityCheck::Fail(v) = check_identity(&a, IdentitySpec::Zinbiel) else {
            panic!("expected a violation");
        };
        assert_eq!(v.indices, vec![1, 1, 1]);
        assert_eq!(v.lhs, vec!["1"]);
        assert_eq!(v.rhs, vec!["2"]);
        assert!(check_identity(&a, IdentitySpec::Associative).passed());
        assert!(check_identity(&a, IdentitySpec::Commutative).passed());
    }

    #[test]
    fn zero_algebra_satisfies_everything() {
        let z = StructureConstants::zero(3);
        for spec in IdentitySpec::ALL {
            assert!(check_identity(&z, spec).passed(), "{spec}");
        }
    }

    #[test]
    fn commutation_relations() {
        let lie = StructureConstants::from_products("h", 3, &[(1, 2, 3, gq(1)), (2, 1, 3, gq(-1))]).unwrap();
        assert!(check_identity(&lie, IdentitySpec::Anticommutative).passed());
        let IdentityCheck::Fail(v) = check_identity(&lie, IdentitySpec::Commutative) else {
            panic!()
        };
        assert_eq!(v.indices, vec![1, 2]);
    }

    #[test]
    fn names_round_trip() {
        for spec in IdentitySpec::ALL {
            assert_eq!(spec.as_str().parse::<IdentitySpec>().unwrap(), spec);
        }
        assert!("leibniz".parse::<IdentitySpec>().is_err());
    }
}
