//! Generalized polynomials: noncommutative words in the variables with
//! sandwich coefficients from `{1, e22, e12}` between consecutive letters.

mod hwv;
mod young;

pub use hwv::{row_family, three_row_family, two_row_family, HwvFamily};
pub use young::{young_symmetrize, YoungTableau};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::perm::Permutation;
use crate::scalar::Scalar;
use crate::walgebra::{Slot, UTElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("factors share variables {0:?}")]
    OverlappingVariables(Vec<u32>),
    #[error("a commutator needs at least two arguments")]
    TooFewArguments,
    #[error("permutation of degree {degree} cannot act on variable x{var}")]
    DegreeMismatch { degree: usize, var: u32 },
    #[error("variable x{0} does not occur in the polynomial")]
    VariableNotPresent(u32),
    #[error("polynomial is not multihomogeneous")]
    NonHomogeneous,
    #[error("expected a multilinear polynomial in x1..x{expected}")]
    NotMultilinear { expected: usize },
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
}

/// `w0 x_{v1} w1 x_{v2} … x_{vn} wn`. Variables are 1-based labels; `slots`
/// always has one more entry than `vars`. A monomial with no variables is a
/// bare sandwich constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenMonomial {
    vars: Vec<u32>,
    slots: Vec<Slot>,
}

impl GenMonomial {
    pub fn new(vars: Vec<u32>, slots: Vec<Slot>) -> Self {
        assert_eq!(slots.len(), vars.len() + 1, "a monomial of degree n has n+1 slots");
        GenMonomial { vars, slots }
    }

    /// The plain word `x_{v1} ⋯ x_{vn}`.
    pub fn word(vars: Vec<u32>) -> Self {
        let slots = vec![Slot::One; vars.len() + 1];
        GenMonomial { vars, slots }
    }

    pub fn constant(slot: Slot) -> Self {
        GenMonomial { vars: Vec::new(), slots: vec![slot] }
    }

    pub fn vars(&self) -> &[u32] {
        &self.vars
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    pub fn is_multilinear(&self) -> bool {
        let set: BTreeSet<_> = self.vars.iter().collect();
        set.len() == self.vars.len()
    }

    /// Occurrence count of each variable.
    pub fn multidegree(&self) -> Vec<(u32, usize)> {
        let mut m: BTreeMap<u32, usize> = BTreeMap::new();
        for &v in &self.vars {
            *m.entry(v).or_default() += 1;
        }
        m.into_iter().collect()
    }

    /// Juxtaposition; the two touching slots are multiplied in W.
    pub fn mul(&self, other: &GenMonomial) -> Option<GenMonomial> {
        let mid = self.slots.last().unwrap().mul(other.slots[0])?;
        let mut vars = self.vars.clone();
        vars.extend_from_slice(&other.vars);
        let mut slots = self.slots[..self.slots.len() - 1].to_vec();
        slots.push(mid);
        slots.extend_from_slice(&other.slots[1..]);
        Some(GenMonomial { vars, slots })
    }

    fn relabel(&self, f: impl Fn(u32) -> u32) -> GenMonomial {
        GenMonomial { vars: self.vars.iter().map(|&v| f(v)).collect(), slots: self.slots.clone() }
    }
}

impl fmt::Display for GenMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return f.write_str(self.slots[0].symbol());
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, slot) in self.slots.iter().enumerate() {
            if *slot != Slot::One {
                parts.push(slot.symbol().to_string());
            }
            if let Some(v) = self.vars.get(k) {
                parts.push(format!("x{v}"));
            }
        }
        f.write_str(&parts.join("*"))
    }
}

/// A finite combination of generalized monomials, stored sparsely in
/// monomial order with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenPolynomial<T> {
    terms: BTreeMap<GenMonomial, T>,
}

impl<T: Scalar> Default for GenPolynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> GenPolynomial<T> {
    pub fn zero() -> Self {
        GenPolynomial { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn var(v: u32) -> Self {
        Self::from_monomial(GenMonomial::word(vec![v]), T::one())
    }

    pub fn from_monomial(m: GenMonomial, c: T) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn slot(s: Slot) -> Self {
        Self::from_monomial(GenMonomial::constant(s), T::one())
    }

    /// A constant of W, expanded in the sandwich basis (`e11 = 1 - e22`).
    pub fn constant(w: &UTElement<T>) -> Self {
        let mut p = Self::zero();
        for (s, c) in Slot::ALL.into_iter().zip(w.to_sandwich()) {
            p.add_term(GenMonomial::constant(s), c);
        }
        p
    }

    pub fn scalar(c: T) -> Self {
        Self::from_monomial(GenMonomial::constant(Slot::One), c)
    }

    pub fn add_term(&mut self, m: GenMonomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GenMonomial, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &GenMonomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn scale(&self, k: &T) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.clone() * k.clone());
        }
        p
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.terms.keys().flat_map(|m| m.vars.iter().copied()).collect()
    }

    pub fn has_constant_part(&self) -> bool {
        self.terms.keys().any(|m| m.vars.is_empty())
    }

    /// True when every monomial is a multilinear word in exactly `x1..xn`.
    pub fn is_multilinear_of_arity(&self, n: usize) -> bool {
        let target: Vec<u32> = (1..=n as u32).collect();
        self.terms.keys().all(|m| {
            let mut vs = m.vars.clone();
            vs.sort_unstable();
            vs == target
        })
    }

    /// Multiplication that refuses to merge factors sharing a variable.
    pub fn mul_multilinear(&self, other: &Self) -> Result<Self, PolyError> {
        let common: Vec<u32> = self.variables().intersection(&other.variables()).copied().collect();
        if !common.is_empty() {
            return Err(PolyError::OverlappingVariables(common));
        }
        Ok(self * other)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::scalar(T::one()), |acc, _| &acc * self)
    }

    /// Left-normed commutator `[f1, f2, …, fk] = [[f1, …, f(k-1)], fk]`.
    pub fn commutator(args: &[Self]) -> Result<Self, PolyError> {
        let (first, rest) = args.split_first().ok_or(PolyError::TooFewArguments)?;
        if rest.is_empty() {
            return Err(PolyError::TooFewArguments);
        }
        Ok(rest.iter().fold(first.clone(), |acc, g| &(&acc * g) - &(g * &acc)))
    }

    /// The endomorphism sending `x_v` to `bindings[v]` (unbound variables are fixed).
    pub fn substitute(&self, bindings: &BTreeMap<u32, Self>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::slot(m.slots[0]);
            for (k, &v) in m.vars.iter().enumerate() {
                let image = bindings.get(&v).cloned().unwrap_or_else(|| Self::var(v));
                acc = &(&acc * &image) * &Self::slot(m.slots[k + 1]);
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc.scale(c);
        }
        out
    }

    fn relabel(&self, f: impl Fn(u32) -> u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.relabel(&f), c.clone());
        }
        out
    }

    /// `σ·f`, replacing each `x_i` by `x_{σ(i)}`.
    pub fn permute_vars(&self, sigma: &Permutation) -> Result<Self, PolyError> {
        let degree = sigma.degree();
        if let Some(&var) = self.variables().iter().find(|&&v| v == 0 || v as usize > degree) {
            return Err(PolyError::DegreeMismatch { degree, var });
        }
        Ok(self.relabel(|v| sigma.apply(v as usize - 1) as u32 + 1))
    }

    /// `Σ sgn(π) π·f` over all permutations `π` of `varset`.
    pub fn alternate(&self, varset: &[u32]) -> Result<Self, PolyError> {
        let present = self.variables();
        let vars: Vec<u32> = varset.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if let Some(&v) = vars.iter().find(|v| !present.contains(v)) {
            return Err(PolyError::VariableNotPresent(v));
        }
        let mut out = Self::zero();
        for pi in Permutation::all(vars.len()) {
            let map: BTreeMap<u32, u32> = vars.iter().enumerate().map(|(i, &v)| (v, vars[pi.apply(i)])).collect();
            let term = self.relabel(|v| map.get(&v).copied().unwrap_or(v));
            out = if pi.sign() > 0 { &out + &term } else { &out - &term };
        }
        Ok(out)
    }

    /// Groups the monomials by multidegree.
    pub fn homogeneous_components(&self) -> BTreeMap<Vec<(u32, usize)>, Self> {
        let mut parts: BTreeMap<Vec<(u32, usize)>, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.multidegree()).or_default().add_term(m.clone(), c.clone());
        }
        parts
    }

    /// Full linearization of a multihomogeneous polynomial.
    ///
    /// A variable of degree `d` is replaced by `d` fresh variables summed over
    /// every assignment to its occurrences. Fresh labels are `1..=Σd`,
    /// assigned in order of the original label and then occurrence. No
    /// factorial normalization is applied.
    pub fn multilinearize(&self) -> Result<Self, PolyError> {
        let components = self.homogeneous_components();
        if components.len() > 1 {
            return Err(PolyError::NonHomogeneous);
        }
        let Some((multideg, _)) = components.into_iter().next() else {
            return Ok(Self::zero());
        };
        let mut offset = BTreeMap::new();
        let mut next = 1u32;
        for &(v, d) in &multideg {
            offset.insert(v, next);
            next += d as u32;
        }
        let assignments: Vec<Vec<Permutation>> = multideg.iter().map(|&(_, d)| Permutation::all(d).collect()).collect();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let occurrence: Vec<usize> = {
                let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
                m.vars
                    .iter()
                    .map(|v| {
                        let k = seen.entry(*v).or_default();
                        *k += 1;
                        *k - 1
                    })
                    .collect()
            };
            let var_index: BTreeMap<u32, usize> = multideg.iter().enumerate().map(|(i, &(v, _))| (v, i)).collect();
            let mut choice = vec![0usize; multideg.len()];
            loop {
                let vars: Vec<u32> = m
                    .vars
                    .iter()
                    .zip(&occurrence)
                    .map(|(v, &k)| {
                        let i = var_index[v];
                        offset[v] + assignments[i][choice[i]].apply(k) as u32
                    })
                    .collect();
                out.add_term(GenMonomial { vars, slots: m.slots.clone() }, c.clone());
                // odometer over the product of symmetric groups
                let mut i = 0;
                while i < choice.len() {
                    choice[i] += 1;
                    if choice[i] < assignments[i].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == choice.len() {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Number of variables after linearization, i.e. the total degree of a
    /// homogeneous polynomial.
    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(GenMonomial::degree).max().unwrap_or(0)
    }
}

impl<T: Scalar> Add for &GenPolynomial<T> {
    type Output = GenPolynomial<T>;
    fn add(self, rhs: Self) -> GenPolynomial<T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &GenPolynomial<T> {
    type Output = GenPolynomial<T>;
    fn sub(self, rhs: Self) -> GenPolynomial<T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<T: Scalar> Neg for &GenPolynomial<T> {
    type Output = GenPolynomial<T>;
    fn neg(self) -> GenPolynomial<T> {
        self.scale(&-T::one())
    }
}

impl<T: Scalar> Mul for &GenPolynomial<T> {
    type Output = GenPolynomial<T>;
    fn mul(self, rhs: Self) -> GenPolynomial<T> {
        let mut out = GenPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                if let Some(m) = m1.mul(m2) {
                    out.add_term(m, c1.clone() * c2.clone());
                }
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<T: Scalar> $tr for GenPolynomial<T> {
            type Output = GenPolynomial<T>;
            fn $method(self, rhs: Self) -> GenPolynomial<T> {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for GenPolynomial<T> {
    type Output = GenPolynomial<T>;
    fn neg(self) -> GenPolynomial<T> {
        -&self
    }
}

/// Canonical text form, re-readable by the expression parser.
impl<T: Scalar> fmt::Display for GenPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let coef = c.to_string();
            let (negative, magnitude) = match coef.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, coef),
            };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if magnitude == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};
    use crate::walgebra::Unit;

    type P = GenPolynomial<Rational>;

    fn x(v: u32) -> P {
        P::var(v)
    }

    fn s(slot: Slot) -> P {
        P::slot(slot)
    }

    fn mono(vars: &[u32], slots: &[Slot]) -> GenMonomial {
        GenMonomial::new(vars.to_vec(), slots.to_vec())
    }

    fn one() -> Rational {
        rational(1, 1)
    }

    #[test]
    fn juxtaposition_merges_slots() {
        use Slot::*;
        let f = &x(1) * &s(E22);
        assert_eq!(&f * &x(2), P::from_monomial(mono(&[1, 2], &[One, E22, One]), one()));
        let g = &s(E22) * &x(2);
        assert_eq!(&f * &g, P::from_monomial(mono(&[1, 2], &[One, E22, One]), one()));
        let h = &x(1) * &s(E12);
        assert!((&h * &(&s(E12) * &x(2))).is_zero());
    }

    #[test]
    fn commutators() {
        let c = P::commutator(&[x(1), x(2)]).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.to_string(), "x1*x2 - x2*x1");
        let c = P::commutator(&[x(1), s(Slot::E22)]).unwrap();
        assert_eq!(c.to_string(), "x1*E22 - E22*x1");
        assert_eq!(P::commutator(&[x(1)]), Err(PolyError::TooFewArguments));
    }

    #[test]
    fn jacobi_relation_is_formal() {
        let e22 = s(Slot::E22);
        let a = P::commutator(&[x(2), e22.clone(), x(1)]).unwrap();
        let b = P::commutator(&[x(1), e22.clone(), x(2)]).unwrap();
        let c = P::commutator(&[x(1), x(2), e22]).unwrap();
        assert!((&(&a - &b) + &c).is_zero());
    }

    #[test]
    fn substitution() {
        let f = &(&x(1) * &s(Slot::E22)) * &x(3);
        let b = BTreeMap::from([(1, &x(1) + &x(2))]);
        let expect = &f + &(&(&x(2) * &s(Slot::E22)) * &x(3));
        assert_eq!(f.substitute(&b), expect);

        let xy = &x(1) * &x(2);
        let b = BTreeMap::from([(2, P::commutator(&[x(1), x(3)]).unwrap())]);
        assert_eq!(xy.substitute(&b), &x(1) * &P::commutator(&[x(1), x(3)]).unwrap());

        let comm = P::commutator(&[x(1), s(Slot::E22)]).unwrap();
        let b = BTreeMap::from([(1, P::constant(&Unit::E11.element()))]);
        assert!(comm.substitute(&b).is_zero());
    }

    #[test]
    fn permuting_variables() {
        let t = Permutation::transposition(2, 0, 1);
        let xy = &x(1) * &x(2);
        assert_eq!(xy.permute_vars(&t).unwrap(), &x(2) * &x(1));
        assert_eq!(xy.permute_vars(&Permutation::identity(2)).unwrap(), xy);
        assert_eq!(xy.permute_vars(&t).unwrap().permute_vars(&t).unwrap(), xy);
        assert!(matches!(xy.permute_vars(&Permutation::identity(1)), Err(PolyError::DegreeMismatch { .. })));
    }

    #[test]
    fn alternation() {
        let xy = &x(1) * &x(2);
        assert_eq!(xy.alternate(&[1, 2]).unwrap(), P::commutator(&[x(1), x(2)]).unwrap());
        assert_eq!(xy.alternate(&[1]).unwrap(), xy);
        let core = &(&x(1) * &s(Slot::E22)) * &x(2);
        let alt = core.alternate(&[1, 2]).unwrap();
        assert_eq!(alt.to_string(), "x1*E22*x2 - x2*E22*x1");
        assert_eq!(xy.alternate(&[3]), Err(PolyError::VariableNotPresent(3)));
    }

    #[test]
    fn linearization() {
        let sq = x(1).pow(2);
        assert_eq!(sq.multilinearize().unwrap(), &(&x(1) * &x(2)) + &(&x(2) * &x(1)));

        let f = &P::commutator(&[x(1), s(Slot::E22)]).unwrap() * &x(1);
        let lin = f.multilinearize().unwrap();
        let c = |a, b| &P::commutator(&[x(a), s(Slot::E22)]).unwrap() * &x(b);
        assert_eq!(lin, &c(1, 2) + &c(2, 1));

        assert_eq!((&x(1) + &x(1).pow(2)).multilinearize(), Err(PolyError::NonHomogeneous));
    }

    #[test]
    fn linearization_of_power_is_row_symmetrizer() {
        let t = YoungTableau::new(vec![vec![1, 2, 3]]).unwrap();
        let straight = &(&x(1) * &x(2)) * &x(3);
        assert_eq!(x(1).pow(3).multilinearize().unwrap(), young_symmetrize(&t, &straight).unwrap());
    }

    #[test]
    fn constants_expand_in_sandwich_basis() {
        let e11 = P::constant(&Unit::E11.element());
        assert_eq!(e11.to_string(), "I - E22");
        assert!(e11.has_constant_part());
    }

    #[test]
    fn multilinear_product_guard() {
        assert!(x(1).mul_multilinear(&x(2)).is_ok());
        assert_eq!(x(1).mul_multilinear(&x(1)), Err(PolyError::OverlappingVariables(vec![1])));
    }

    #[test]
    fn display_coefficients() {
        let f = &(&x(1) * &s(Slot::E12)) * &x(2);
        assert_eq!(f.scale(&rational(3, 2)).to_string(), "3/2*x1*E12*x2");
        assert_eq!((-&x(1)).to_string(), "-x1");
        assert_eq!(P::zero().to_string(), "0");
    }
}
