//! All multilinear monomials of degree `n`, streamed in canonical order and
//! deduplicated by evaluation vector.
//!
//! The vector of `w0 x_σ(1) w1 ⋯ x_σ(n) wn` at tuple `t` equals the value of
//! `w0 x1 w1 ⋯ xn wn` at `t∘σ`, so one positional table per slot sequence is
//! enough. Values are interned so that tables and vectors are `u32` ids.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::{tuple_count, tuple_permutation};
use crate::perm::Permutation;
use crate::scalar::Scalar;
use crate::walgebra::{Slot, UTElement, Unit, WAlgebraAction};

const PERMUTATION_BATCH: usize = 48;

struct Interner<T> {
    values: Vec<T>,
    ids: HashMap<T, u32>,
}

impl<T: Scalar> Interner<T> {
    fn new() -> Self {
        let mut me = Interner { values: Vec::new(), ids: HashMap::new() };
        me.id(T::zero());
        me
    }

    fn id(&mut self, v: T) -> u32 {
        if let Some(&i) = self.ids.get(&v) {
            return i;
        }
        let i = self.values.len() as u32;
        self.values.push(v.clone());
        self.ids.insert(v, i);
        i
    }
}

pub(crate) struct MonomialStream<T> {
    n: usize,
    values: Vec<T>,
    /// Distinct nonzero positional tables, in order of first slot sequence.
    tables: Vec<Vec<u32>>,
}

impl<T: Scalar> MonomialStream<T> {
    pub(crate) fn new(act: &WAlgebraAction<T>, n: usize) -> Self {
        assert!(n >= 1);
        let units: Vec<UTElement<T>> = Unit::ALL.iter().map(|u| u.element()).collect();
        // Values of w0 x1 w1 ⋯ wk-1 xk at all positional tuples, one entry per
        // nonzero slot prefix.
        let mut level: Vec<Vec<UTElement<T>>> =
            Slot::ALL.iter().map(|&s| units.iter().map(|u| act.left(s, u)).collect()).collect();
        for _ in 1..n {
            let mut next = Vec::with_capacity(level.len() * 3);
            for vals in &level {
                for s in Slot::ALL {
                    let mut out = Vec::with_capacity(vals.len() * 3);
                    for v in vals {
                        let r = act.right(v, s);
                        out.extend(units.iter().map(|u| r.mul(u)));
                    }
                    if out.iter().any(|e| !e.is_zero()) {
                        next.push(out);
                    }
                }
            }
            level = next;
        }
        let mut interner = Interner::new();
        let mut seen = HashSet::new();
        let mut tables = Vec::new();
        for vals in &level {
            for s in Slot::ALL {
                let ids: Vec<u32> =
                    vals.iter().flat_map(|v| act.right(v, s).coords()).map(|c| interner.id(c)).collect();
                if ids.iter().any(|&i| i != 0) && !seen.contains(&ids) {
                    seen.insert(ids.clone());
                    tables.push(ids);
                }
            }
        }
        MonomialStream { n, values: interner.values, tables }
    }

    /// Calls `sink` once per distinct nonzero evaluation vector, in the order
    /// of first occurrence among monomials sorted by permutation, then slots.
    pub(crate) fn for_each_distinct(&self, mut sink: impl FnMut(Vec<T>)) {
        let perms: Vec<Permutation> = Permutation::all(self.n).collect();
        let tc = tuple_count(self.n);
        let mut global: HashSet<Vec<u32>> = HashSet::new();
        for batch in perms.chunks(PERMUTATION_BATCH) {
            let found: Vec<Vec<Vec<u32>>> = batch
                .par_iter()
                .map(|sigma| {
                    let map = tuple_permutation(self.n, sigma);
                    let mut local = HashSet::new();
                    let mut out = Vec::new();
                    for table in &self.tables {
                        let mut ids = Vec::with_capacity(3 * tc);
                        for &src in &map {
                            ids.extend_from_slice(&table[3 * src..3 * src + 3]);
                        }
                        if !local.contains(&ids) {
                            local.insert(ids.clone());
                            out.push(ids);
                        }
                    }
                    out
                })
                .collect();
            for ids in found.into_iter().flatten() {
                if !global.contains(&ids) {
                    sink(ids.iter().map(|&i| self.values[i as usize].clone()).collect());
                    global.insert(ids);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval_vector;
    use crate::linalg::rank;
    use crate::poly::{GenMonomial, GenPolynomial};
    use crate::scalar::Rational;
    use crate::walgebra::ActionTag;
    use num_traits::{One, Zero};

    /// Every monomial evaluated directly, no sharing.
    fn brute_force(act: &WAlgebraAction<Rational>, n: usize) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for sigma in Permutation::all(n) {
            let vars: Vec<u32> = sigma.images().iter().map(|&i| i as u32 + 1).collect();
            for code in 0..3usize.pow(n as u32 + 1) {
                let slots: Vec<Slot> =
                    (0..=n).rev().map(|k| Slot::from_index(code / 3usize.pow(k as u32) % 3)).collect();
                let f = GenPolynomial::from_monomial(GenMonomial::new(vars.clone(), slots), Rational::one());
                out.push(eval_vector(&f, n, act).unwrap().into_entries());
            }
        }
        out
    }

    #[test]
    fn matches_direct_evaluation() {
        for tag in ActionTag::BUILTIN {
            let act = WAlgebraAction::builtin(tag).unwrap();
            for n in 1..=3 {
                let direct = brute_force(&act, n);
                let mut streamed = Vec::new();
                MonomialStream::new(&act, n).for_each_distinct(|v| streamed.push(v));
                let expect: Vec<Vec<Rational>> = {
                    let mut seen = HashSet::new();
                    direct
                        .iter()
                        .filter(|v| v.iter().any(|c| !c.is_zero()) && seen.insert((*v).clone()))
                        .cloned()
                        .collect()
                };
                assert_eq!(streamed, expect, "{tag} n = {n}");
                assert_eq!(rank(&streamed), rank(&direct));
            }
        }
    }
}
