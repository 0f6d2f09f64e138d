//! Closed conditions on structure constants used as non-degeneration
//! evidence.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::expr::{Expr, Symbol};
use crate::algebra::StructureConstants;
use crate::error::{Error, Result};
use crate::exactmath::ExactMatrix;

/// `A_p A_q ⊆ A_r` with `A_i = span(e_i, …, e_n)`; `r = n + 1` means zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl fmt::Display for Containment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}A{} ⊆ A{}", self.p, self.q, self.r)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RSet {
    /// New basis `f_i = e_{relabel[i]}` (1-based) applied before checking.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relabel: Option<Vec<usize>>,
    #[serde(default)]
    pub containments: Vec<Containment>,
    /// Polynomials in `c_ij^k`, each `lhs = rhs` or an expression that must vanish.
    #[serde(default)]
    pub equations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violated: Option<String>,
}

impl RSet {
    fn relabel_matrix(&self, n: usize) -> Result<Option<ExactMatrix>> {
        let Some(perm) = &self.relabel else {
            return Ok(None);
        };
        if perm.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "relabeling of length {} in dimension {n}",
                perm.len()
            )));
        }
        let mut p = ExactMatrix::zeros(n, n);
        for (i, &j) in perm.iter().enumerate() {
            if !(1..=n).contains(&j) {
                return Err(Error::DimensionMismatch(format!("relabel index {j}")));
            }
            p[(i, j - 1)] = num_traits::One::one();
        }
        Ok(Some(p))
    }

    pub fn parsed_equations(&self) -> Result<Vec<Expr>> {
        self.equations
            .iter()
            .map(|s| match s.split_once('=') {
                Some((l, r)) => Ok(Expr::Sub(Box::new(Expr::parse(l)?), Box::new(Expr::parse(r)?))),
                None => Expr::parse(s),
            })
            .collect()
    }
}

pub fn rset_membership(s: &StructureConstants, set: &RSet) -> Result<Membership> {
    let n = s.dim();
    let a = match set.relabel_matrix(n)? {
        Some(p) => s.change_basis(&p)?,
        None => s.clone(),
    };
    for c in &set.containments {
        if c.p == 0 || c.q == 0 || c.r == 0 || c.p > n || c.q > n || c.r > n + 1 {
            return Err(Error::DimensionMismatch(format!("containment {c} in dimension {n}")));
        }
        for i in c.p - 1..n {
            for j in c.q - 1..n {
                for k in 0..c.r - 1 {
                    if !a.get(i, j, k).is_zero() {
                        return Ok(Membership {
                            member: false,
                            violated: Some(format!("{c}: c_{}{}^{} = {}", i + 1, j + 1, k + 1, a.get(i, j, k))),
                        });
                    }
                }
            }
        }
    }
    let env = |sym: Symbol<'_>| match sym {
        Symbol::StructConst(i, j, k) if (1..=n).contains(&i) && (1..=n).contains(&j) && (1..=n).contains(&k) => {
            Some(a.get(i - 1, j - 1, k - 1).clone())
        }
        _ => None,
    };
    for (text, e) in set.equations.iter().zip(set.parsed_equations()?) {
        let v = e.eval_exact(&env)?;
        if !v.is_zero() {
            return Ok(Membership {
                member: false,
                violated: Some(format!("{text} (residual {v})")),
            });
        }
    }
    Ok(Membership {
        member: true,
        violated: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::gq;

    fn set() -> RSet {
        RSet {
            relabel: None,
            containments: vec![Containment { p: 1, q: 1, r: 3 }, Containment { p: 1, q: 4, r: 6 }],
            equations: vec!["c_11^3".into(), "c_12^3 = -c_21^3".into()],
        }
    }

    #[test]
    fn zero_structure_is_a_member() {
        assert!(rset_membership(&StructureConstants::zero(5), &set()).unwrap().member);
    }

    #[test]
    fn violations_are_reported() {
        let a = StructureConstants::from_products("a", 5, &[(1, 1, 2, gq(1))]).unwrap();
        let m = rset_membership(&a, &set()).unwrap();
        assert!(!m.member);
        assert!(m.violated.unwrap().contains("A1A1 ⊆ A3"));
        let b = StructureConstants::from_products("b", 5, &[(1, 2, 3, gq(1)), (2, 1, 3, gq(1))]).unwrap();
        assert!(rset_membership(&b, &set())
            .unwrap()
            .violated
            .unwrap()
            .contains("c_12^3"));
        let c = StructureConstants::from_products("c", 5, &[(1, 2, 3, gq(1)), (2, 1, 3, gq(-1))]).unwrap();
        assert!(rset_membership(&c, &set()).unwrap().member);
    }

    #[test]
    fn relabeling_moves_products() {
        let a = StructureConstants::from_products("a", 3, &[(1, 1, 2, gq(1))]).unwrap();
        let r = RSet {
            relabel: Some(vec![1, 3, 2]),
            containments: vec![Containment { p: 1, q: 1, r: 3 }],
            equations: vec![],
        };
        assert!(rset_membership(&a, &r).unwrap().member);
        assert!(!rset_membership(&a, &RSet { relabel: None, ..r }).unwrap().member);
    }
}
