use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Matrix unit of UT2, used as the evaluation basis of the algebra A.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Unit {
    E11,
    E12,
    E22,
}

impl Unit {
    pub const ALL: [Unit; 3] = [Unit::E11, Unit::E12, Unit::E22];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Unit {
        Unit::ALL[i]
    }

    pub fn key(self) -> &'static str {
        match self {
            Unit::E11 => "e11",
            Unit::E12 => "e12",
            Unit::E22 => "e22",
        }
    }

    pub fn element<T: Scalar>(self) -> UTElement<T> {
        let mut e = UTElement::zero();
        *e.coord_mut(self) = T::one();
        e
    }

    /// `e_ij e_kl = δ_jk e_il`, restricted to the upper triangle.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Unit) -> Option<Unit> {
        use Unit::*;
        match (self, other) {
            (E11, E11) => Some(E11),
            (E11, E12) => Some(E12),
            (E12, E22) => Some(E12),
            (E22, E22) => Some(E22),
            _ => None,
        }
    }
}

/// Sandwich basis `{1, e22, e12}` of W = UT2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Slot {
    One,
    E22,
    E12,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::One, Slot::E22, Slot::E12];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Slot {
        Slot::ALL[i]
    }

    /// Name used in polynomial text.
    pub fn symbol(self) -> &'static str {
        match self {
            Slot::One => "I",
            Slot::E22 => "E22",
            Slot::E12 => "E12",
        }
    }

    /// Key used in action-table documents.
    pub fn key(self) -> &'static str {
        match self {
            Slot::One => "1",
            Slot::E22 => "e22",
            Slot::E12 => "e12",
        }
    }

    /// Product in W. The sandwich basis is closed under multiplication up to zero.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Slot) -> Option<Slot> {
        use Slot::*;
        match (self, other) {
            (One, s) | (s, One) => Some(s),
            (E22, E22) => Some(E22),
            (E12, E22) => Some(E12),
            (E22, E12) | (E12, E12) => None,
        }
    }

    pub fn element<T: Scalar>(self) -> UTElement<T> {
        match self {
            Slot::One => UTElement::one(),
            Slot::E22 => Unit::E22.element(),
            Slot::E12 => Unit::E12.element(),
        }
    }
}

/// An element `e11·a + e12·b + e22·c` of UT2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UTElement<T> {
    pub e11: T,
    pub e12: T,
    pub e22: T,
}

impl<T: Scalar> UTElement<T> {
    pub fn new(e11: T, e12: T, e22: T) -> Self {
        UTElement { e11, e12, e22 }
    }

    pub fn zero() -> Self {
        UTElement::new(T::zero(), T::zero(), T::zero())
    }

    pub fn one() -> Self {
        UTElement::new(T::one(), T::zero(), T::one())
    }

    pub fn is_zero(&self) -> bool {
        self.e11.is_zero() && self.e12.is_zero() && self.e22.is_zero()
    }

    pub fn coord(&self, u: Unit) -> &T {
        match u {
            Unit::E11 => &self.e11,
            Unit::E12 => &self.e12,
            Unit::E22 => &self.e22,
        }
    }

    pub fn coord_mut(&mut self, u: Unit) -> &mut T {
        match u {
            Unit::E11 => &mut self.e11,
            Unit::E12 => &mut self.e12,
            Unit::E22 => &mut self.e22,
        }
    }

    pub fn coords(&self) -> [T; 3] {
        [self.e11.clone(), self.e12.clone(), self.e22.clone()]
    }

    pub fn from_coords([e11, e12, e22]: [T; 3]) -> Self {
        UTElement { e11, e12, e22 }
    }

    pub fn scale(&self, k: &T) -> Self {
        UTElement::new(self.e11.clone() * k.clone(), self.e12.clone() * k.clone(), self.e22.clone() * k.clone())
    }

    /// Matrix product.
    pub fn mul(&self, y: &Self) -> Self {
        UTElement::new(
            self.e11.clone() * y.e11.clone(),
            self.e11.clone() * y.e12.clone() + self.e12.clone() * y.e22.clone(),
            self.e22.clone() * y.e22.clone(),
        )
    }

    /// Right multiplication by a matrix unit; cheaper than a full product.
    pub fn mul_unit(&self, u: Unit) -> Self {
        match u {
            Unit::E11 => UTElement::new(self.e11.clone(), T::zero(), T::zero()),
            Unit::E12 => UTElement::new(T::zero(), self.e11.clone(), T::zero()),
            Unit::E22 => UTElement::new(T::zero(), self.e12.clone(), self.e22.clone()),
        }
    }

    /// Coordinates over the sandwich basis `(1, e22, e12)`.
    pub fn to_sandwich(&self) -> [T; 3] {
        [self.e11.clone(), self.e22.clone() - self.e11.clone(), self.e12.clone()]
    }

    pub fn from_sandwich([one, e22, e12]: [T; 3]) -> Self {
        UTElement::new(one.clone(), e12, one + e22)
    }
}

impl<T: Scalar> Add for UTElement<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        UTElement::new(self.e11 + o.e11, self.e12 + o.e12, self.e22 + o.e22)
    }
}

impl<T: Scalar> Sub for UTElement<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        UTElement::new(self.e11 - o.e11, self.e12 - o.e12, self.e22 - o.e22)
    }
}

impl<T: Scalar> Neg for UTElement<T> {
    type Output = Self;
    fn neg(self) -> Self {
        UTElement::new(-self.e11, -self.e12, -self.e22)
    }
}

impl<T: Scalar> Mul for UTElement<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        UTElement::mul(&self, &o)
    }
}

impl<T: Scalar> fmt::Display for UTElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.e11, self.e12, self.e22)
    }
}
