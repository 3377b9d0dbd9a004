use std::collections::BTreeSet;

use super::action::WAlgebraAction;
use super::element::{Slot, UTElement, Unit};
use crate::linalg;
use crate::poly::{GenPolynomial, PolyError};
use crate::scalar::Scalar;

/// A linear map on A = UT2, as a 3×3 matrix in `(e11, e12, e22)` coordinates.
/// `m[i][j]` is the `i`-th coordinate of the image of the `j`-th unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearOperator<T> {
    pub m: [[T; 3]; 3],
}

impl<T: Scalar> LinearOperator<T> {
    pub fn zero() -> Self {
        LinearOperator { m: std::array::from_fn(|_| std::array::from_fn(|_| T::zero())) }
    }

    pub fn identity() -> Self {
        LinearOperator {
            m: std::array::from_fn(|i| std::array::from_fn(|j| if i == j { T::one() } else { T::zero() })),
        }
    }

    /// The operator sending unit `j` to `images[j]`.
    pub fn from_images(images: [UTElement<T>; 3]) -> Self {
        let cols = images.map(|e| e.coords());
        LinearOperator { m: std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone())) }
    }

    pub fn apply(&self, x: &UTElement<T>) -> UTElement<T> {
        let c = x.coords();
        UTElement::from_coords(std::array::from_fn(|i| {
            (0..3).fold(T::zero(), |acc, j| acc + self.m[i][j].clone() * c[j].clone())
        }))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        LinearOperator {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..3).fold(T::zero(), |acc, k| acc + self.m[i][k].clone() * other.m[k][j].clone())
                })
            }),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        LinearOperator {
            m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].clone() + other.m[i][j].clone())),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        LinearOperator { m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].clone() * k.clone())) }
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|c| c.is_zero())
    }

    /// Row-major entries.
    pub fn flatten(&self) -> Vec<T> {
        self.m.iter().flatten().cloned().collect()
    }
}

/// `x ↦ (w·x)·v`.
pub fn operator_of<T: Scalar>(w: &UTElement<T>, v: &UTElement<T>, act: &WAlgebraAction<T>) -> LinearOperator<T> {
    LinearOperator::from_images(Unit::ALL.map(|u| act.right_elem(&act.left_elem(w, &u.element()), v)))
}

/// `L_{w} ∘ R_{v}` for sandwich basis elements.
pub fn slot_operator<T: Scalar>(w: Slot, v: Slot, act: &WAlgebraAction<T>) -> LinearOperator<T> {
    LinearOperator::from_images(Unit::ALL.map(|u| act.right(&act.left(w, &u.element()), v)))
}

/// Dimension of the span of the nine operators `L_w ∘ R_v`.
pub fn lr_span_dim<T: Scalar>(act: &WAlgebraAction<T>) -> usize {
    let rows: Vec<Vec<T>> = Slot::ALL
        .iter()
        .flat_map(|&w| Slot::ALL.iter().map(move |&v| (w, v)))
        .map(|(w, v)| slot_operator(w, v, act).flatten())
        .collect();
    linalg::rank(&rows)
}

/// The operator `Σ α L_w ∘ R_v` of a one-variable polynomial `Σ α w x v`.
pub fn operator_sum<T: Scalar>(f: &GenPolynomial<T>, act: &WAlgebraAction<T>) -> Result<LinearOperator<T>, PolyError> {
    let vars: BTreeSet<u32> = f.variables();
    if vars.len() > 1 {
        return Err(PolyError::OverlappingVariables(vars.into_iter().collect()));
    }
    let mut total = LinearOperator::zero();
    for (m, c) in f.terms() {
        if m.degree() != 1 {
            return Err(PolyError::DegreeMismatch { degree: m.degree(), var: vars.first().copied().unwrap_or(0) });
        }
        let s = m.slots();
        total = total.add(&slot_operator(s[0], s[1], act).scale(c));
    }
    Ok(total)
}

/// Whether `Σ α w x v` is the zero operator under the regular action.
pub fn is_trivial_linear<T: Scalar>(f: &GenPolynomial<T>) -> Result<bool, PolyError> {
    Ok(operator_sum(f, &WAlgebraAction::regular())?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};
    use crate::walgebra::ActionTag;

    type Op = LinearOperator<Rational>;
    type P = GenPolynomial<Rational>;

    fn act(tag: ActionTag) -> WAlgebraAction<Rational> {
        WAlgebraAction::builtin(tag).unwrap()
    }

    #[test]
    fn e22_sandwich_projects() {
        let e22 = Slot::E22.element();
        let op = operator_of(&e22, &e22, &act(ActionTag::Regular));
        let x = UTElement::from_coords([3, 5, 7].map(|v| rational(v, 1)));
        assert_eq!(op.apply(&x), UTElement::from_coords([0, 0, 7].map(|v| rational(v, 1))));
        assert_eq!(operator_of(&UTElement::one(), &UTElement::one(), &act(ActionTag::Regular)), Op::identity());
        assert!(operator_of(&Slot::E12.element(), &UTElement::one(), &act(ActionTag::D)).is_zero());
    }

    #[test]
    fn span_dimensions() {
        assert_eq!(lr_span_dim(&act(ActionTag::Regular)), 5);
        assert_eq!(lr_span_dim(&act(ActionTag::D)), 3);
        assert_eq!(lr_span_dim(&act(ActionTag::F)), 1);
    }

    #[test]
    fn composition_laws() {
        let reg = act(ActionTag::Regular);
        let one = UTElement::one();
        for w1 in Slot::ALL {
            for w2 in Slot::ALL {
                for v in Slot::ALL {
                    let (a, b, c) = (w1.element(), w2.element(), v.element());
                    let lhs = operator_of(&a.mul(&b), &c, &reg);
                    let rhs = operator_of(&a, &one, &reg).compose(&operator_of(&b, &c, &reg));
                    assert_eq!(lhs, rhs);
                    let lhs = operator_of(&c, &a.mul(&b), &reg);
                    let rhs = operator_of(&one, &b, &reg).compose(&operator_of(&c, &a, &reg));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn triviality_examples() {
        let x = P::var(1);
        let e22 = P::slot(Slot::E22);
        let e12 = P::slot(Slot::E12);
        let f = &(&(&e22 * &x) * &e22) - &(&e22 * &x);
        assert!(is_trivial_linear(&f).unwrap());
        assert!(is_trivial_linear(&(&(&e12 * &x) * &e12)).unwrap());
        assert!(!is_trivial_linear(&x).unwrap());
        assert!(is_trivial_linear(&(&x * &P::var(2))).is_err());
        assert!(is_trivial_linear(&(&x * &x)).is_err());
        assert!(is_trivial_linear(&e22).is_err());
    }
}
