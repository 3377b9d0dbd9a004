//! Incremental row reduction.
//!
//! [`FieldEchelon`] keeps a reduced row echelon basis over any [`Scalar`];
//! [`IntegerEchelon`] is the fraction-free variant used for certified ranks
//! over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Rational, Scalar};

/// Something that accumulates vectors and tracks the dimension of their span.
pub trait RankAccumulator<T> {
    fn dim(&self) -> usize;
    fn rank(&self) -> usize;
    /// Returns true when `v` enlarged the span.
    fn insert(&mut self, v: &[T]) -> bool;
}

/// Reduced row echelon basis: each pivot column is zero in every other row
/// and one in its own.
#[derive(Debug, Clone)]
pub struct FieldEchelon<T> {
    dim: usize,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Scalar> FieldEchelon<T> {
    pub fn new(dim: usize) -> Self {
        FieldEchelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the basis from `v` in place.
    pub fn reduce(&self, v: &mut [T]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            axpy(v, &c, row);
        }
    }

    /// Coordinates of `v` in the stored basis, or `None` if it is outside the span.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        let coords: Vec<T> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        self.reduce(&mut r);
        r.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.coordinates(v).is_some()
    }
}

/// `v -= c * row`
fn axpy<T: Scalar>(v: &mut [T], c: &T, row: &[T]) {
    for (x, r) in v.iter_mut().zip(row) {
        if !r.is_zero() {
            *x = x.clone() - c.clone() * r.clone();
        }
    }
}

impl<T: Scalar> RankAccumulator<T> for FieldEchelon<T> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length does not match ambient dimension");
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot is invertible");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                axpy(row, &c, &v);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

/// Fraction-free echelon form over the integers. Rows are primitive and
/// sorted by pivot column; rational input is scaled to integers first.
#[derive(Debug, Clone)]
pub struct IntegerEchelon {
    dim: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IntegerEchelon {
    pub fn new(dim: usize) -> Self {
        IntegerEchelon { dim, rows: Vec::new() }
    }

    /// Primitive integer rows with their pivot columns.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &[BigInt])> {
        self.rows.iter().map(|(p, r)| (*p, r.as_slice()))
    }

    fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
        let lcm = v.iter().filter(|x| !x.is_zero()).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
    }

    fn make_primitive(v: &mut [BigInt]) {
        let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for x in v.iter_mut() {
                *x = &*x / &g;
            }
        }
    }

    pub fn insert_integer(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.dim, "vector length does not match ambient dimension");
        Self::make_primitive(&mut v);
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = row[*p].clone();
            let b = v[*p].clone();
            let g = a.gcd(&b);
            let (a, b) = (&a / &g, &b / &g);
            for (x, r) in v.iter_mut().zip(row) {
                *x = &a * &*x - &b * r;
            }
            Self::make_primitive(&mut v);
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if v[p].is_negative() {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }
}

impl RankAccumulator<Rational> for IntegerEchelon {
    fn dim(&self) -> usize {
        self.dim
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, v: &[Rational]) -> bool {
        self.insert_integer(Self::clear_denominators(v))
    }
}

/// Rank of a family together with a basis of its linear relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dependence<T> {
    pub rank: usize,
    /// Each entry `c` satisfies `Σ c[i]·vectors[i] = 0`.
    pub kernel: Vec<Vec<T>>,
}

/// Eliminates the vectors in order, tracking the combination that produced
/// each reduced row; rows reducing to zero yield the relations.
pub fn dependence<T: Scalar>(vectors: &[Vec<T>]) -> Dependence<T> {
    let k = vectors.len();
    struct Row<T> {
        pivot: usize,
        v: Vec<T>,
        comb: Vec<T>,
    }
    let mut rows: Vec<Row<T>> = Vec::new();
    let mut kernel = Vec::new();
    for (i, vec) in vectors.iter().enumerate() {
        let mut v = vec.clone();
        let mut comb = vec![T::zero(); k];
        comb[i] = T::one();
        for row in &rows {
            if v[row.pivot].is_zero() {
                continue;
            }
            let c = v[row.pivot].clone();
            axpy(&mut v, &c, &row.v);
            axpy(&mut comb, &c, &row.comb);
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => kernel.push(comb),
            Some(p) => {
                let inv = v[p].inv().expect("nonzero pivot is invertible");
                v.iter_mut().for_each(|x| *x = x.clone() * inv.clone());
                comb.iter_mut().for_each(|x| *x = x.clone() * inv.clone());
                for row in rows.iter_mut() {
                    if !row.v[p].is_zero() {
                        let c = row.v[p].clone();
                        axpy(&mut row.v, &c, &v);
                        axpy(&mut row.comb, &c, &comb);
                    }
                }
                rows.push(Row { pivot: p, v, comb });
            }
        }
    }
    Dependence { rank: rows.len(), kernel }
}

/// Rank over the field `T`.
pub fn rank<T: Scalar>(vectors: &[Vec<T>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut acc = FieldEchelon::new(first.len());
    for v in vectors {
        acc.insert(v);
    }
    acc.rank()
}

/// Some `c` with `Σ c[i]·vectors[i] = target`, if one exists.
pub fn solve_in_span<T: Scalar>(vectors: &[Vec<T>], target: &[T]) -> Option<Vec<T>> {
    let mut all = vectors.to_vec();
    all.push(target.to_vec());
    let dep = dependence(&all);
    let k = vectors.len();
    let rel = dep.kernel.into_iter().find(|c| !c[k].is_zero())?;
    let scale = -rel[k].inv()?;
    Some(rel[..k].iter().map(|c| c.clone() * scale.clone()).collect())
}
