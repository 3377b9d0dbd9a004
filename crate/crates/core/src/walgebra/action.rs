use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::element::{Slot, UTElement, Unit};
use crate::scalar::Scalar;

/// Which bimodule structure UT2 carries over itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionTag {
    /// Left and right multiplication.
    Regular,
    /// 1 and e22 multiply, e12 acts as zero.
    D,
    /// Only the identity acts nontrivially.
    F,
    Custom,
}

impl ActionTag {
    pub const BUILTIN: [ActionTag; 3] = [ActionTag::Regular, ActionTag::D, ActionTag::F];

    pub fn name(self) -> &'static str {
        match self {
            ActionTag::Regular => "regular",
            ActionTag::D => "D",
            ActionTag::F => "F",
            ActionTag::Custom => "custom",
        }
    }
}

impl fmt::Display for ActionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("unknown action tag {0:?}")]
    UnknownTag(String),
    #[error("custom actions have no builtin table")]
    NotBuiltin,
}

impl FromStr for ActionTag {
    type Err = ActionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "regular" | "Regular" | "R" => Ok(ActionTag::Regular),
            "D" | "d" => Ok(ActionTag::D),
            "F" | "f" => Ok(ActionTag::F),
            "custom" => Ok(ActionTag::Custom),
            other => Err(ActionError::UnknownTag(other.to_string())),
        }
    }
}

/// A UT2-bimodule structure on A = UT2.
///
/// `left[w][u]` is `w·u` and `right[w][u]` is `u·w`, for `w` in the sandwich
/// basis and `u` a matrix unit of A. The product of A is always the matrix
/// product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WAlgebraAction<T> {
    pub tag: ActionTag,
    pub left: [[UTElement<T>; 3]; 3],
    pub right: [[UTElement<T>; 3]; 3],
}

fn table<T: Scalar>(f: impl Fn(Slot, Unit) -> UTElement<T>) -> [[UTElement<T>; 3]; 3] {
    Slot::ALL.map(|w| Unit::ALL.map(|u| f(w, u)))
}

impl<T: Scalar> WAlgebraAction<T> {
    pub fn builtin(tag: ActionTag) -> Result<Self, ActionError> {
        let mult = |w: Slot, u: Unit, on_left: bool| -> UTElement<T> {
            let (we, ue) = (w.element::<T>(), u.element::<T>());
            if on_left {
                we.mul(&ue)
            } else {
                ue.mul(&we)
            }
        };
        let acts = |w: Slot| match tag {
            ActionTag::Regular => true,
            ActionTag::D => w != Slot::E12,
            ActionTag::F => w == Slot::One,
            ActionTag::Custom => unreachable!(),
        };
        if tag == ActionTag::Custom {
            return Err(ActionError::NotBuiltin);
        }
        Ok(WAlgebraAction {
            tag,
            left: table(|w, u| if acts(w) { mult(w, u, true) } else { UTElement::zero() }),
            right: table(|w, u| if acts(w) { mult(w, u, false) } else { UTElement::zero() }),
        })
    }

    pub fn regular() -> Self {
        Self::builtin(ActionTag::Regular).unwrap()
    }

    /// `w·a` for a sandwich basis element `w`.
    pub fn left(&self, w: Slot, a: &UTElement<T>) -> UTElement<T> {
        combine(&self.left[w.index()], a)
    }

    /// `a·w` for a sandwich basis element `w`.
    pub fn right(&self, a: &UTElement<T>, w: Slot) -> UTElement<T> {
        combine(&self.right[w.index()], a)
    }

    /// `w·a` for an arbitrary `w ∈ W`.
    pub fn left_elem(&self, w: &UTElement<T>, a: &UTElement<T>) -> UTElement<T> {
        let ws = w.to_sandwich();
        Slot::ALL
            .iter()
            .zip(ws.iter())
            .filter(|(_, c)| !c.is_zero())
            .fold(UTElement::zero(), |acc, (s, c)| acc + self.left(*s, a).scale(c))
    }

    /// `a·w` for an arbitrary `w ∈ W`.
    pub fn right_elem(&self, a: &UTElement<T>, w: &UTElement<T>) -> UTElement<T> {
        let ws = w.to_sandwich();
        Slot::ALL
            .iter()
            .zip(ws.iter())
            .filter(|(_, c)| !c.is_zero())
            .fold(UTElement::zero(), |acc, (s, c)| acc + self.right(a, *s).scale(c))
    }

    /// Converts the tables to another coefficient field.
    pub fn try_map<U: Scalar>(&self, f: impl Fn(&T) -> Option<U>) -> Option<WAlgebraAction<U>> {
        let conv =
            |e: &UTElement<T>| -> Option<UTElement<U>> { Some(UTElement::new(f(&e.e11)?, f(&e.e12)?, f(&e.e22)?)) };
        let conv_table = |t: &[[UTElement<T>; 3]; 3]| -> Option<[[UTElement<U>; 3]; 3]> {
            let mut rows = Vec::with_capacity(3);
            for row in t {
                rows.push([conv(&row[0])?, conv(&row[1])?, conv(&row[2])?]);
            }
            let [a, b, c]: [[UTElement<U>; 3]; 3] = rows.try_into().ok()?;
            Some([a, b, c])
        };
        Some(WAlgebraAction { tag: self.tag, left: conv_table(&self.left)?, right: conv_table(&self.right)? })
    }
}

fn combine<T: Scalar>(row: &[UTElement<T>; 3], a: &UTElement<T>) -> UTElement<T> {
    let mut acc = UTElement::zero();
    for u in Unit::ALL {
        let c = a.coord(u);
        if !c.is_zero() {
            acc = acc + row[u.index()].scale(c);
        }
    }
    acc
}

/// One of the W-algebra equations checked by [`check_axioms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    /// w(a1 a2) = (w a1) a2
    LeftProduct,
    /// (a1 a2) w = a1 (a2 w)
    RightProduct,
    /// (a1 w) a2 = a1 (w a2)
    Middle,
    /// (w1 w2) a = w1 (w2 a)
    LeftModule,
    /// a (w1 w2) = (a w1) w2
    RightModule,
    /// (w1 a) w2 = w1 (a w2)
    Bimodule,
    /// 1·a = a
    LeftUnit,
    /// a·1 = a
    RightUnit,
}

impl Axiom {
    pub fn equation(self) -> &'static str {
        match self {
            Axiom::LeftProduct => "w(a1a2)=(wa1)a2",
            Axiom::RightProduct => "(a1a2)w=a1(a2w)",
            Axiom::Middle => "(a1w)a2=a1(wa2)",
            Axiom::LeftModule => "(w1w2)a=w1(w2a)",
            Axiom::RightModule => "a(w1w2)=(aw1)w2",
            Axiom::Bimodule => "(w1a)w2=w1(aw2)",
            Axiom::LeftUnit => "1a=a",
            Axiom::RightUnit => "a1=a",
        }
    }
}

/// A basis triple (or pair) at which an equation fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub w: Vec<Slot>,
    pub a: Vec<Unit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively checks every compatibility and bimodule equation on basis elements.
pub fn check_axioms<T: Scalar>(act: &WAlgebraAction<T>) -> AxiomReport {
    let mut violations = Vec::new();
    let mut checked = 0;
    let mut check = |ok: bool, axiom: Axiom, w: Vec<Slot>, a: Vec<Unit>| {
        checked += 1;
        if !ok {
            violations.push(Violation { axiom, w, a });
        }
    };
    let wmul = |w1: Slot, w2: Slot| w1.mul(w2);
    for w in Slot::ALL {
        for a1 in Unit::ALL {
            let e1 = a1.element::<T>();
            for a2 in Unit::ALL {
                let e2 = a2.element::<T>();
                let lhs = act.left(w, &e1.mul(&e2));
                let rhs = act.left(w, &e1).mul(&e2);
                check(lhs == rhs, Axiom::LeftProduct, vec![w], vec![a1, a2]);

                let lhs = act.right(&e1.mul(&e2), w);
                let rhs = e1.mul(&act.right(&e2, w));
                check(lhs == rhs, Axiom::RightProduct, vec![w], vec![a1, a2]);

                let lhs = act.right(&e1, w).mul(&e2);
                let rhs = e1.mul(&act.left(w, &e2));
                check(lhs == rhs, Axiom::Middle, vec![w], vec![a1, a2]);
            }
        }
    }
    for w1 in Slot::ALL {
        for w2 in Slot::ALL {
            for a in Unit::ALL {
                let e = a.element::<T>();
                let lhs = wmul(w1, w2).map(|w| act.left(w, &e)).unwrap_or_else(UTElement::zero);
                let rhs = act.left(w1, &act.left(w2, &e));
                check(lhs == rhs, Axiom::LeftModule, vec![w1, w2], vec![a]);

                let lhs = wmul(w1, w2).map(|w| act.right(&e, w)).unwrap_or_else(UTElement::zero);
                let rhs = act.right(&act.right(&e, w1), w2);
                check(lhs == rhs, Axiom::RightModule, vec![w1, w2], vec![a]);

                let lhs = act.right(&act.left(w1, &e), w2);
                let rhs = act.left(w1, &act.right(&e, w2));
                check(lhs == rhs, Axiom::Bimodule, vec![w1, w2], vec![a]);
            }
        }
    }
    for a in Unit::ALL {
        let e = a.element::<T>();
        check(act.left(Slot::One, &e) == e, Axiom::LeftUnit, vec![Slot::One], vec![a]);
        check(act.right(&e, Slot::One) == e, Axiom::RightUnit, vec![Slot::One], vec![a]);
    }
    AxiomReport { checked, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Act = WAlgebraAction<Rational>;

    #[test]
    fn regular_tables() {
        let act = Act::regular();
        let e12 = Unit::E12.element();
        assert!(act.left(Slot::E22, &e12).is_zero());
        assert_eq!(act.right(&e12, Slot::E22), e12);
    }

    #[test]
    fn d_kills_e12() {
        let act = Act::builtin(ActionTag::D).unwrap();
        for u in Unit::ALL {
            assert!(act.left(Slot::E12, &u.element()).is_zero());
            assert!(act.right(&u.element(), Slot::E12).is_zero());
        }
        let e22 = Unit::E22.element();
        assert_eq!(act.left(Slot::E22, &e22), e22);
    }

    #[test]
    fn f_only_identity_acts() {
        let act = Act::builtin(ActionTag::F).unwrap();
        let e22 = Unit::E22.element();
        assert!(act.left(Slot::E22, &e22).is_zero());
        assert_eq!(act.left(Slot::One, &e22), e22);
    }

    #[test]
    fn builtin_actions_satisfy_axioms() {
        for tag in ActionTag::BUILTIN {
            let report = check_axioms(&Act::builtin(tag).unwrap());
            assert!(report.passed(), "{tag}: {:?}", report.violations);
            assert_eq!(report.checked, 27 * 3 + 27 * 3 + 6);
        }
    }

    #[test]
    fn corrupted_table_fails() {
        let mut act = Act::regular();
        act.left[Slot::E22.index()][Unit::E12.index()] = Unit::E12.element();
        let report = check_axioms(&act);
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.w.contains(&Slot::E22)));
    }

    #[test]
    fn custom_has_no_builtin() {
        assert_eq!(Act::builtin(ActionTag::Custom), Err(ActionError::NotBuiltin));
        assert!("G".parse::<ActionTag>().is_err());
    }

    #[test]
    fn general_w_element_acts_linearly() {
        let act = Act::regular();
        let e11 = Unit::E11.element::<Rational>();
        let e12 = Unit::E12.element();
        // e11 written as 1 - e22 in the sandwich basis
        assert_eq!(act.left_elem(&e11, &e12), e12);
        assert!(act.right_elem(&e12, &e11).is_zero());
    }
}
