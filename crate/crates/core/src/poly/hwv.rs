//! Highest-weight generalized polynomials attached to one-, two- and
//! three-row shapes.
//!
//! Variables: `x = x1`, `y = x2`, `z = x3`. Paired alternations are built on
//! temporary variables that are identified with `x` and `y` afterwards.

use std::collections::BTreeMap;
use std::fmt;

use super::{GenPolynomial, PolyError};
use crate::rep::Partition;
use crate::scalar::Scalar;
use crate::walgebra::Slot;

const X: u32 = 1;
const Y: u32 = 2;
const Z: u32 = 3;
const PAIR_LEFT: u32 = 100;
const PAIR_RIGHT: u32 = 200;
const TRIPLE: u32 = 300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HwvFamily {
    /// `x^n`
    A { n: usize },
    /// `e22 x^n` for `i = 0`, else `x^(i-1) [x, e22] x^(n-i)`
    A22 { n: usize, i: usize },
    /// `x^j e12 x^(n-j)`
    A12 { n: usize, j: usize },
    /// core `[x, y]`
    B { p: usize, q: usize, i: usize },
    /// core `x e12 y - y e12 x`
    C { p: usize, q: usize, i: usize },
    /// core `x e22 y - y e22 x`
    D { p: usize, q: usize, i: usize },
    /// core: `x y z` alternated in all three letters
    H { p: usize, q: usize, i: usize },
}

impl fmt::Display for HwvFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            HwvFamily::A { n } => write!(f, "a(n={n})"),
            HwvFamily::A22 { n, i } => write!(f, "a22^({i})(n={n})"),
            HwvFamily::A12 { n, j } => write!(f, "a12^({j})(n={n})"),
            HwvFamily::B { p, q, i } => write!(f, "b^({i})_{{{p},{q}}}"),
            HwvFamily::C { p, q, i } => write!(f, "c^({i})_{{{p},{q}}}"),
            HwvFamily::D { p, q, i } => write!(f, "d^({i})_{{{p},{q}}}"),
            HwvFamily::H { p, q, i } => write!(f, "h^({i})_{{{p},{q}}}"),
        }
    }
}

impl HwvFamily {
    /// The shape whose multiplicity this polynomial witnesses.
    pub fn shape(&self) -> Partition {
        let parts = match *self {
            HwvFamily::A { n } | HwvFamily::A22 { n, .. } | HwvFamily::A12 { n, .. } => vec![n],
            HwvFamily::B { p, q, .. } | HwvFamily::C { p, q, .. } | HwvFamily::D { p, q, .. } => {
                vec![p + q, p]
            }
            HwvFamily::H { p, q, .. } => vec![p + q, p, 1],
        };
        Partition::new(parts).expect("valid shape")
    }

    fn validate(&self) -> Result<(), PolyError> {
        let bad = |msg: String| Err(PolyError::OutOfRange(msg));
        match *self {
            HwvFamily::A { n: 0 } => bad("a needs n >= 1".into()),
            HwvFamily::A22 { n, i } if n == 0 || i > n => bad(format!("a22 needs 0 <= i <= n, n >= 1 (i={i}, n={n})")),
            HwvFamily::A12 { n, j } if n == 0 || j > n => bad(format!("a12 needs 0 <= j <= n, n >= 1 (j={j}, n={n})")),
            HwvFamily::B { p, q, i }
            | HwvFamily::C { p, q, i }
            | HwvFamily::D { p, q, i }
            | HwvFamily::H { p, q, i }
                if p == 0 || i > q =>
            {
                bad(format!("{self} needs p >= 1 and 0 <= i <= q"))
            }
            _ => Ok(()),
        }
    }

    pub fn build<T: Scalar>(&self) -> Result<GenPolynomial<T>, PolyError> {
        self.validate()?;
        let x = GenPolynomial::<T>::var(X);
        let y = GenPolynomial::<T>::var(Y);
        let slot = GenPolynomial::<T>::slot;
        let poly = match *self {
            HwvFamily::A { n } => x.pow(n),
            HwvFamily::A22 { n, i: 0 } => &slot(Slot::E22) * &x.pow(n),
            HwvFamily::A22 { n, i } => {
                let comm = GenPolynomial::commutator(&[x.clone(), slot(Slot::E22)])?;
                &(&x.pow(i - 1) * &comm) * &x.pow(n - i)
            }
            HwvFamily::A12 { n, j } => &(&x.pow(j) * &slot(Slot::E12)) * &x.pow(n - j),
            HwvFamily::B { p, q, i } => framed(p, q, i, GenPolynomial::commutator(&[x.clone(), y.clone()])?)?,
            HwvFamily::C { p, q, i } => framed(p, q, i, sandwich_core(Slot::E12))?,
            HwvFamily::D { p, q, i } => framed(p, q, i, sandwich_core(Slot::E22))?,
            HwvFamily::H { p, q, i } => {
                let t = |k: u32| GenPolynomial::<T>::var(TRIPLE + k);
                let core = (&(&t(1) * &t(2)) * &t(3)).alternate(&[TRIPLE + 1, TRIPLE + 2, TRIPLE + 3])?;
                let bind = BTreeMap::from([
                    (TRIPLE + 1, x.clone()),
                    (TRIPLE + 2, y.clone()),
                    (TRIPLE + 3, GenPolynomial::var(Z)),
                ]);
                let framed = frame_with_pairs(p, q, i, core)?;
                framed.substitute(&bind)
            }
        };
        Ok(poly)
    }
}

/// `x e y - y e x`
fn sandwich_core<T: Scalar>(e: Slot) -> GenPolynomial<T> {
    let (x, y) = (GenPolynomial::var(X), GenPolynomial::var(Y));
    let s = GenPolynomial::slot(e);
    &(&(&x * &s) * &y) - &(&(&y * &s) * &x)
}

fn framed<T: Scalar>(p: usize, q: usize, i: usize, core: GenPolynomial<T>) -> Result<GenPolynomial<T>, PolyError> {
    frame_with_pairs(p, q, i, core)
}

/// `x^i u1⋯u(p-1) core v1⋯v(p-1) x^(q-i)` with each `(uk, vk)` alternated,
/// then `uk ↦ x`, `vk ↦ y`.
fn frame_with_pairs<T: Scalar>(
    p: usize,
    q: usize,
    i: usize,
    core: GenPolynomial<T>,
) -> Result<GenPolynomial<T>, PolyError> {
    let x = GenPolynomial::<T>::var(X);
    let pairs = (p - 1) as u32;
    let word = |base: u32| {
        (1..=pairs).fold(GenPolynomial::<T>::scalar(T::one()), |acc, k| &acc * &GenPolynomial::var(base + k))
    };
    let mut poly = &(&(&(&x.pow(i) * &word(PAIR_LEFT)) * &core) * &word(PAIR_RIGHT)) * &x.pow(q - i);
    for k in 1..=pairs {
        poly = poly.alternate(&[PAIR_LEFT + k, PAIR_RIGHT + k])?;
    }
    let mut bind = BTreeMap::new();
    for k in 1..=pairs {
        bind.insert(PAIR_LEFT + k, x.clone());
        bind.insert(PAIR_RIGHT + k, GenPolynomial::var(Y));
    }
    Ok(poly.substitute(&bind))
}

/// `a`, `a22^(0..=n)`, `a12^(0..=n)`: the `2n + 3` polynomials for shape `(n)`.
pub fn row_family(n: usize) -> Vec<HwvFamily> {
    let mut fam = vec![HwvFamily::A { n }];
    fam.extend((0..=n).map(|i| HwvFamily::A22 { n, i }));
    fam.extend((0..=n).map(|j| HwvFamily::A12 { n, j }));
    fam
}

/// `b`, `c`, `d` for `0 <= i <= q`: the `3(q + 1)` polynomials for `(p+q, p)`.
pub fn two_row_family(p: usize, q: usize) -> Vec<HwvFamily> {
    let mut fam: Vec<HwvFamily> = (0..=q).map(|i| HwvFamily::B { p, q, i }).collect();
    fam.extend((0..=q).map(|i| HwvFamily::C { p, q, i }));
    fam.extend((0..=q).map(|i| HwvFamily::D { p, q, i }));
    fam
}

/// `h` for `0 <= i <= q`: the `q + 1` polynomials for `(p+q, p, 1)`.
pub fn three_row_family(p: usize, q: usize) -> Vec<HwvFamily> {
    (0..=q).map(|i| HwvFamily::H { p, q, i }).collect()
}
