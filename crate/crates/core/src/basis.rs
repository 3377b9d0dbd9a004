//! Canonical bases of `GP_n(A)` for the builtin actions.
//!
//! * `x1⋯xn` and `e22 x1⋯xn`
//! * `x_I e12 x_J` for every subset `I` (both sides increasing)
//! * `x_L [x_k, x_m1, …, x_mt]` with `k > m1 < ⋯ < mt`, `t >= 1`
//! * `x_P [x_q1, e22, x_q2, …, x_qv]` with `v >= 1`
//!
//! D drops the `e12` family; F keeps only the first monomial and the
//! commutator family.

use std::fmt;

use crate::eval::{eval_vector, EvalError};
use crate::linalg::solve_in_span;
use crate::poly::GenPolynomial;
use crate::scalar::Scalar;
use crate::walgebra::{ActionTag, Slot, WAlgebraAction};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CanonicalFamily {
    Straight,
    E22Straight,
    /// Variables to the left of `e12`.
    X12 {
        left: Vec<u32>,
    },
    /// Prefix variables and the head `k` of the commutator.
    XLk {
        prefix: Vec<u32>,
        k: u32,
    },
    /// Prefix variables in front of `[x_q1, e22, …]`.
    X22 {
        prefix: Vec<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalElement {
    pub n: usize,
    pub family: CanonicalFamily,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BasisError {
    #[error("no canonical basis is known for the {0} action")]
    UnsupportedAction(ActionTag),
    #[error("polynomial is not in the span of the canonical basis")]
    NotRepresentable,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn complement(n: usize, set: &[u32]) -> Vec<u32> {
    (1..=n as u32).filter(|v| !set.contains(v)).collect()
}

fn word<T: Scalar>(vars: &[u32]) -> GenPolynomial<T> {
    vars.iter().fold(GenPolynomial::scalar(T::one()), |acc, &v| &acc * &GenPolynomial::var(v))
}

/// All subsets of `1..=n`, by size and then lexicographically.
fn subsets(n: usize) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> =
        (0u32..1 << n).map(|mask| (0..n as u32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()).collect();
    out.sort_by(|a: &Vec<u32>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

impl CanonicalElement {
    pub fn poly<T: Scalar>(&self) -> GenPolynomial<T> {
        let n = self.n;
        match &self.family {
            CanonicalFamily::Straight => word(&complement(n, &[])),
            CanonicalFamily::E22Straight => &GenPolynomial::slot(Slot::E22) * &word(&complement(n, &[])),
            CanonicalFamily::X12 { left } => {
                &(&word(left) * &GenPolynomial::slot(Slot::E12)) * &word(&complement(n, left))
            }
            CanonicalFamily::XLk { prefix, k } => {
                let mut args = vec![GenPolynomial::var(*k)];
                args.extend(complement(n, prefix).into_iter().filter(|v| v != k).map(GenPolynomial::var));
                &word(prefix) * &GenPolynomial::commutator(&args).expect("at least two arguments")
            }
            CanonicalFamily::X22 { prefix } => {
                let q = complement(n, prefix);
                let mut args = vec![GenPolynomial::var(q[0]), GenPolynomial::slot(Slot::E22)];
                args.extend(q[1..].iter().map(|&v| GenPolynomial::var(v)));
                &word(prefix) * &GenPolynomial::commutator(&args).expect("at least two arguments")
            }
        }
    }
}

impl fmt::Display for CanonicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &[u32]| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        match &self.family {
            CanonicalFamily::Straight => write!(f, "straight"),
            CanonicalFamily::E22Straight => write!(f, "e22-straight"),
            CanonicalFamily::X12 { left } => write!(f, "x12{{{}}}", set(left)),
            CanonicalFamily::XLk { prefix, k } => write!(f, "xl{{{}}}k{k}", set(prefix)),
            CanonicalFamily::X22 { prefix } => write!(f, "x22{{{}}}", set(prefix)),
        }
    }
}

/// The canonical basis of `GP_n(A)` for a builtin action, `None` for custom ones.
pub fn enumerate_basis(n: usize, tag: ActionTag) -> Option<Vec<CanonicalElement>> {
    if tag == ActionTag::Custom {
        return None;
    }
    let el = |family| CanonicalElement { n, family };
    let subs = subsets(n);
    let mut out = vec![el(CanonicalFamily::Straight)];
    if tag != ActionTag::F {
        out.push(el(CanonicalFamily::E22Straight));
    }
    if tag == ActionTag::Regular {
        out.extend(subs.iter().map(|s| el(CanonicalFamily::X12 { left: s.clone() })));
    }
    for prefix in &subs {
        let rest = complement(n, prefix);
        if rest.len() >= 2 {
            out.extend(rest[1..].iter().map(|&k| el(CanonicalFamily::XLk { prefix: prefix.clone(), k })));
        }
    }
    if tag != ActionTag::F {
        for prefix in subs.iter().filter(|s| s.len() < n) {
            out.push(el(CanonicalFamily::X22 { prefix: prefix.clone() }));
        }
    }
    Some(out)
}

/// Closed-form `gc_n` for the builtin actions.
pub fn codim_formula(n: usize, tag: ActionTag) -> Option<u64> {
    let half = 1i128 << (n as u32).saturating_sub(1);
    let n = n as i128;
    let v = match tag {
        ActionTag::Regular => (n + 2) * half + 2,
        ActionTag::D => n * half + 2,
        ActionTag::F => half * (n - 2) + 2,
        ActionTag::Custom => return None,
    };
    Some(v as u64)
}

/// Coordinates of a multilinear `f` in the canonical basis, modulo identities of `act`.
pub fn coordinates<T: Scalar>(f: &GenPolynomial<T>, n: usize, act: &WAlgebraAction<T>) -> Result<Vec<T>, BasisError> {
    let basis = enumerate_basis(n, act.tag).ok_or(BasisError::UnsupportedAction(act.tag))?;
    let vectors = basis
        .iter()
        .map(|b| eval_vector(&b.poly::<T>(), n, act).map(|v| v.into_entries()))
        .collect::<Result<Vec<_>, _>>()?;
    let target = eval_vector(f, n, act)?.into_entries();
    solve_in_span(&vectors, &target).ok_or(BasisError::NotRepresentable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::evaluate;
    use crate::scalar::{rational, Rational};
    use crate::walgebra::{UTElement, Unit};
    use std::collections::BTreeMap;

    type P = GenPolynomial<Rational>;

    #[test]
    fn degree_two_regular() {
        let basis = enumerate_basis(2, ActionTag::Regular).unwrap();
        let texts: Vec<String> = basis.iter().map(|b| b.poly::<Rational>().to_string()).collect();
        assert_eq!(basis.len(), 10);
        let expect_polys = [
            P::var(1) * P::var(2),
            P::slot(Slot::E22) * P::var(1) * P::var(2),
            P::commutator(&[P::var(2), P::var(1)]).unwrap(),
            P::commutator(&[P::var(1), P::slot(Slot::E22), P::var(2)]).unwrap(),
            P::var(1) * P::commutator(&[P::var(2), P::slot(Slot::E22)]).unwrap(),
            P::var(2) * P::commutator(&[P::var(1), P::slot(Slot::E22)]).unwrap(),
        ];
        for p in expect_polys {
            assert!(texts.contains(&p.to_string()), "{p}");
        }
        let x12 = basis.iter().filter(|b| matches!(b.family, CanonicalFamily::X12 { .. })).count();
        assert_eq!(x12, 4);
    }

    #[test]
    fn counts_agree_with_formula() {
        for tag in ActionTag::BUILTIN {
            for n in 1..=8 {
                assert_eq!(enumerate_basis(n, tag).unwrap().len() as u64, codim_formula(n, tag).unwrap(), "{tag} {n}");
            }
        }
        assert_eq!(enumerate_basis(1, ActionTag::Regular).unwrap().len(), 5);
        assert_eq!(enumerate_basis(3, ActionTag::D).unwrap().len(), 14);
    }

    #[test]
    fn formula_values() {
        assert_eq!(codim_formula(5, ActionTag::Regular), Some(114));
        assert_eq!(codim_formula(1, ActionTag::F), Some(1));
        assert_eq!(codim_formula(2, ActionTag::D), Some(6));
        assert_eq!(codim_formula(6, ActionTag::Regular), Some(258));
        assert_eq!(codim_formula(2, ActionTag::Custom), None);
    }

    #[test]
    fn coordinate_examples() {
        let reg = WAlgebraAction::<Rational>::regular();
        let basis = enumerate_basis(2, ActionTag::Regular).unwrap();
        let straight = coordinates(&(P::var(1) * P::var(2)), 2, &reg).unwrap();
        assert_eq!(straight[0], rational(1, 1));
        assert!(straight[1..].iter().all(|c| *c == rational(0, 1)));
        let at = basis.iter().position(|b| b.family == CanonicalFamily::XLk { prefix: vec![], k: 2 }).unwrap();
        let c = coordinates(&P::commutator(&[P::var(1), P::var(2)]).unwrap(), 2, &reg).unwrap();
        for (i, v) in c.iter().enumerate() {
            assert_eq!(*v, if i == at { rational(-1, 1) } else { rational(0, 1) });
        }
        assert!(coordinates(&P::var(1), 2, &reg).is_err());
    }

    #[test]
    fn all_e11_isolates_two_coefficients() {
        let reg = WAlgebraAction::<Rational>::regular();
        for n in 1..=4 {
            let point: BTreeMap<u32, UTElement<Rational>> = (1..=n as u32).map(|v| (v, Unit::E11.element())).collect();
            let full: Vec<u32> = (1..=n as u32).collect();
            for b in enumerate_basis(n, ActionTag::Regular).unwrap() {
                let value = evaluate(&b.poly(), &point, &reg).unwrap();
                let expect = match &b.family {
                    CanonicalFamily::Straight => Unit::E11.element(),
                    CanonicalFamily::X12 { left } if *left == full => Unit::E12.element(),
                    _ => UTElement::zero(),
                };
                assert_eq!(value, expect, "{b}");
            }
        }
    }
}
