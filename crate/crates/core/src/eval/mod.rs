//! Evaluation of generalized polynomials in UT2 and everything built on the
//! evaluation map: identities, codimensions, dependence and traces.

mod codim;
mod stream;

pub use codim::{codimension, codimension_seeded, perm_trace, Caps, CodimResult, Mode, MultilinearImage};

use std::collections::BTreeMap;

use rand::Rng;

use crate::linalg::{self, Dependence};
use crate::perm::Permutation;
use crate::poly::{GenMonomial, GenPolynomial, PolyError};
use crate::scalar::{Rational, Scalar};
use crate::walgebra::{UTElement, Unit, WAlgebraAction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("variable x{0} is not bound")]
    UnboundVariable(u32),
    #[error("a constant term (degree 0) cannot be tested for identity")]
    ConstantTerm,
    #[error("polynomial is not multilinear in x1..x{0}")]
    NotMultilinear(usize),
    #[error("exact computations are capped at n = {cap} (requested {n})")]
    ExactCap { n: usize, cap: usize },
    #[error("modular computations are capped at n = {cap} (requested {n})")]
    ModularCap { n: usize, cap: usize },
    #[error("n must be at least 1")]
    ZeroArity,
    #[error("action coefficients have denominators divisible by {0}")]
    PrimeUnusable(u64),
    #[error("modular ranks disagree: {0:?}")]
    ModularDisagreement(Vec<(u64, usize)>),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Number of basis tuples `{e11, e12, e22}^n`.
pub fn tuple_count(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Digits of a tuple index, `x1` first (most significant).
pub fn decode_tuple(mut index: usize, n: usize) -> Vec<Unit> {
    let mut out = vec![Unit::E11; n];
    for k in (0..n).rev() {
        out[k] = Unit::from_index(index % 3);
        index /= 3;
    }
    out
}

pub fn encode_tuple(tuple: &[Unit]) -> usize {
    tuple.iter().fold(0, |acc, u| acc * 3 + u.index())
}

/// Values of a multilinear polynomial at every basis tuple: entry
/// `3·t + c` is coordinate `c` (in `e11, e12, e22` order) at tuple `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EvaluationVector<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Scalar> EvaluationVector<T> {
    pub fn zero(n: usize) -> Self {
        EvaluationVector { n, entries: vec![T::zero(); 3 * tuple_count(n)] }
    }

    pub fn from_entries(n: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), 3 * tuple_count(n));
        EvaluationVector { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|c| c.is_zero())
    }

    pub fn at(&self, tuple: &[Unit]) -> UTElement<T> {
        let t = encode_tuple(tuple);
        UTElement::from_coords(std::array::from_fn(|c| self.entries[3 * t + c].clone()))
    }

    /// The vector of `σ·f` given that of `f`: entry at `t` is the old entry at `t∘σ`.
    pub fn permuted(&self, sigma: &Permutation) -> Self {
        let map = tuple_permutation(self.n, sigma);
        let mut entries = vec![T::zero(); self.entries.len()];
        for (t, &src) in map.iter().enumerate() {
            for c in 0..3 {
                entries[3 * t + c] = self.entries[3 * src + c].clone();
            }
        }
        EvaluationVector { n: self.n, entries }
    }
}

/// `map[t] = index of t∘σ`, where `(t∘σ)_i = t_{σ(i)}`.
pub(crate) fn tuple_permutation(n: usize, sigma: &Permutation) -> Vec<usize> {
    assert_eq!(sigma.degree(), n);
    (0..tuple_count(n))
        .map(|t| {
            let d = decode_tuple(t, n);
            (0..n).fold(0, |acc, i| acc * 3 + d[sigma.apply(i)].index())
        })
        .collect()
}

/// `w0 a1 w1 a2 ⋯ an wn` folded through the action tables.
pub(crate) fn eval_monomial<'a, T: Scalar>(
    m: &GenMonomial,
    value: impl Fn(u32) -> Option<&'a UTElement<T>>,
    act: &WAlgebraAction<T>,
) -> Result<UTElement<T>, EvalError> {
    let slots = m.slots();
    let vars = m.vars();
    let Some((&first, rest)) = vars.split_first() else {
        return Err(EvalError::ConstantTerm);
    };
    let a = value(first).ok_or(EvalError::UnboundVariable(first))?;
    let mut acc = act.left(slots[0], a);
    for (k, &v) in rest.iter().enumerate() {
        let a = value(v).ok_or(EvalError::UnboundVariable(v))?;
        acc = act.right(&acc, slots[k + 1]).mul(a);
    }
    Ok(act.right(&acc, slots[vars.len()]))
}

/// `f(a1, …, an)`. Constant monomials have no value in A and are rejected.
pub fn evaluate<T: Scalar>(
    f: &GenPolynomial<T>,
    assignment: &BTreeMap<u32, UTElement<T>>,
    act: &WAlgebraAction<T>,
) -> Result<UTElement<T>, EvalError> {
    let mut out = UTElement::zero();
    for (m, c) in f.terms() {
        let v = eval_monomial(m, |x| assignment.get(&x), act)?;
        out = out + v.scale(c);
    }
    Ok(out)
}

/// Evaluation at every basis tuple. `f` must be multilinear in `x1..xn`.
pub fn eval_vector<T: Scalar>(
    f: &GenPolynomial<T>,
    n: usize,
    act: &WAlgebraAction<T>,
) -> Result<EvaluationVector<T>, EvalError> {
    if n == 0 {
        return Err(EvalError::ZeroArity);
    }
    if !f.is_multilinear_of_arity(n) {
        return Err(EvalError::NotMultilinear(n));
    }
    let mut ev = EvaluationVector::zero(n);
    let units: Vec<UTElement<T>> = Unit::ALL.iter().map(|u| u.element()).collect();
    for t in 0..tuple_count(n) {
        let tuple = decode_tuple(t, n);
        let mut total = UTElement::zero();
        for (m, c) in f.terms() {
            let v = eval_monomial(m, |x| Some(&units[tuple[x as usize - 1].index()]), act)?;
            total = total + v.scale(c);
        }
        for (k, val) in total.coords().into_iter().enumerate() {
            ev.entries[3 * t + k] = val;
        }
    }
    Ok(ev)
}

/// Whether `f` vanishes on A: each multihomogeneous component is
/// multilinearized and tested on basis tuples.
pub fn is_identity<T: Scalar>(f: &GenPolynomial<T>, act: &WAlgebraAction<T>) -> Result<bool, EvalError> {
    for (multideg, component) in f.homogeneous_components() {
        if multideg.is_empty() {
            return Err(EvalError::ConstantTerm);
        }
        let lin = component.multilinearize()?;
        let n = lin.total_degree();
        if !eval_vector(&lin, n, act)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank and relations of the evaluation vectors of `fs`.
pub fn dependence<T: Scalar>(
    fs: &[GenPolynomial<T>],
    act: &WAlgebraAction<T>,
    n: usize,
) -> Result<Dependence<T>, EvalError> {
    let vectors =
        fs.iter().map(|f| eval_vector(f, n, act).map(EvaluationVector::into_entries)).collect::<Result<Vec<_>, _>>()?;
    Ok(linalg::dependence(&vectors))
}

/// A rational with numerator in `[-bound, bound]` and denominator in `[1, bound]`.
pub fn random_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    crate::scalar::rational(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn random_element(rng: &mut impl Rng, bound: i64) -> UTElement<Rational> {
    UTElement::new(random_rational(rng, bound), random_rational(rng, bound), random_rational(rng, bound))
}

pub fn random_assignment(rng: &mut impl Rng, n: usize, bound: i64) -> BTreeMap<u32, UTElement<Rational>> {
    (1..=n as u32).map(|v| (v, random_element(rng, bound))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walgebra::{ActionTag, Slot};
    use rand::SeedableRng;

    type P = GenPolynomial<Rational>;

    fn act(tag: ActionTag) -> WAlgebraAction<Rational> {
        WAlgebraAction::builtin(tag).unwrap()
    }

    fn comm(args: &[P]) -> P {
        P::commutator(args).unwrap()
    }

    fn x(i: u32) -> P {
        P::var(i)
    }

    fn generator() -> P {
        &comm(&[x(1), x(2)]) - &comm(&[x(1), x(2), P::slot(Slot::E22)])
    }

    #[test]
    fn worked_evaluations() {
        let reg = act(ActionTag::Regular);
        let at = |a: Unit, b: Unit| BTreeMap::from([(1, a.element()), (2, b.element())]);
        assert!(evaluate(&generator(), &at(Unit::E11, Unit::E12), &reg).unwrap().is_zero());
        let f = &(&x(1) * &P::slot(Slot::E12)) * &x(2);
        assert_eq!(evaluate(&f, &at(Unit::E11, Unit::E22), &reg).unwrap(), Unit::E12.element());
        let g = &P::slot(Slot::E22) * &x(1);
        let one = BTreeMap::from([(1, Unit::E22.element())]);
        assert!(evaluate(&g, &one, &act(ActionTag::F)).unwrap().is_zero());
        assert_eq!(evaluate(&f, &one, &reg), Err(EvalError::UnboundVariable(2)));
    }

    #[test]
    fn worked_vectors() {
        let reg = act(ActionTag::Regular);
        assert!(eval_vector(&P::zero(), 2, &reg).unwrap().is_zero());
        let c = comm(&[x(1), x(2)]);
        assert!(eval_vector(&(&P::slot(Slot::E22) * &c), 2, &reg).unwrap().is_zero());
        let ev = eval_vector(&c, 2, &reg).unwrap();
        assert_eq!(ev.at(&[Unit::E11, Unit::E12]), Unit::E12.element());
        assert_eq!(ev.entries().len(), 27);
        assert!(eval_vector(&x(1), 2, &reg).is_err());
    }

    #[test]
    fn identity_examples() {
        let reg = act(ActionTag::Regular);
        let d = act(ActionTag::D);
        let prod = &comm(&[x(1), x(2)]) * &comm(&[x(3), x(4)]);
        assert!(is_identity(&prod, &reg).unwrap());
        assert!(is_identity(&generator(), &d).unwrap());
        assert!(!is_identity(&(&P::slot(Slot::E22) * &x(1)), &d).unwrap());
        assert!(!is_identity(&x(1), &reg).unwrap());
        assert_eq!(is_identity(&P::slot(Slot::E22), &reg), Err(EvalError::ConstantTerm));
    }

    #[test]
    fn powers_are_linearized() {
        let reg = act(ActionTag::Regular);
        let e12 = P::slot(Slot::E12);
        assert!(is_identity(&(&(&e12 * &x(1)) * &e12), &reg).unwrap());
        let sq = comm(&[x(1), x(2)]).pow(2);
        assert!(is_identity(&sq, &reg).unwrap());
        assert!(!is_identity(&x(1).pow(3), &reg).unwrap());
    }

    #[test]
    fn dependence_of_scaled_copy() {
        let reg = act(ActionTag::Regular);
        let f = comm(&[x(1), x(2)]);
        let dep = dependence(&[f.clone(), f.scale(&crate::scalar::rational(2, 1))], &reg, 2).unwrap();
        assert_eq!(dep.rank, 1);
        assert_eq!(dep.kernel.len(), 1);
        let k = &dep.kernel[0];
        assert_eq!(k[0].clone() / k[1].clone(), crate::scalar::rational(-2, 1));
    }

    #[test]
    fn tuple_codec() {
        let t = [Unit::E12, Unit::E22, Unit::E11];
        assert_eq!(decode_tuple(encode_tuple(&t), 3), t.to_vec());
        assert_eq!(encode_tuple(&[Unit::E12, Unit::E11]), 3);
    }

    #[test]
    fn random_elements_are_reproducible() {
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        assert_eq!(random_element(&mut a, 9), random_element(&mut b, 9));
    }
}
