//! Partitions, irreducible characters of the symmetric group, and the
//! decomposition of the generalized cocharacter into irreducibles.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::eval::{EvalError, MultilinearImage};
use crate::perm::Permutation;
use crate::scalar::Rational;
use crate::walgebra::ActionTag;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),
    #[error("character table requested for n = {n}, above the cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("multiplicity of {partition} is {value}, not a nonnegative integer")]
    NonIntegral { partition: Partition, value: String },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A partition `λ1 >= λ2 >= … > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, RepError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition(parts))
        } else {
            Err(RepError::InvalidPartition(parts))
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition((0..width).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// Hook lengths, row by row.
    pub fn hooks(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                out.push(row - j + conj.part(j) - i - 1);
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter())
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `d_λ = n! / Π hooks`.
pub fn hook_degree(lambda: &Partition) -> u128 {
    let hooks: u128 = lambda.hooks().iter().map(|&h| h as u128).product();
    factorial(lambda.size()) / hooks
}

/// Number of standard Young tableaux, by removing the cell holding `n` in
/// every possible way.
pub fn standard_tableaux_count(lambda: &Partition) -> u128 {
    fn rec(parts: &mut Vec<usize>, memo: &mut HashMap<Vec<usize>, u128>) -> u128 {
        if parts.iter().all(|&p| p == 0) {
            return 1;
        }
        if let Some(&v) = memo.get(parts.as_slice()) {
            return v;
        }
        let mut total = 0;
        for i in 0..parts.len() {
            let is_corner = parts[i] > 0 && parts.get(i + 1).is_none_or(|&next| next < parts[i]);
            if is_corner {
                parts[i] -= 1;
                total += rec(parts, memo);
                parts[i] += 1;
            }
        }
        memo.insert(parts.clone(), total);
        total
    }
    rec(&mut lambda.0.clone(), &mut HashMap::new())
}

/// `z_μ = Π i^{m_i} m_i!`, so that the class of cycle type `μ` has `n!/z_μ` elements.
pub fn centralizer_order(mu: &Partition) -> u128 {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &p in mu.parts() {
        *counts.entry(p).or_default() += 1;
    }
    counts.iter().map(|(&i, &m)| (i as u128).pow(m as u32) * factorial(m)).product()
}

/// Irreducible characters of `S_n`, indexed by partitions (rows) and
/// cycle types (columns), both in the order of [`partitions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    pub class_sizes: Vec<u128>,
    pub values: Vec<Vec<i64>>,
}

pub const DEFAULT_CHARACTER_CAP: usize = 8;

impl CharacterTable {
    pub fn new(n: usize, cap: usize) -> Result<Self, RepError> {
        if n > cap {
            return Err(RepError::CapExceeded { n, cap });
        }
        let parts = partitions(n);
        let nf = factorial(n);
        let class_sizes = parts.iter().map(|mu| nf / centralizer_order(mu)).collect();
        let mut memo = HashMap::new();
        let values = parts
            .iter()
            .map(|lambda| parts.iter().map(|mu| murnaghan_nakayama(lambda.parts(), mu.parts(), &mut memo)).collect())
            .collect();
        Ok(CharacterTable { n, partitions: parts, class_sizes, values })
    }

    pub fn classes(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn index_of(&self, lambda: &Partition) -> Option<usize> {
        self.partitions.iter().position(|p| p == lambda)
    }

    pub fn value(&self, lambda: &Partition, cycle_type: &Partition) -> Option<i64> {
        Some(self.values[self.index_of(lambda)?][self.index_of(cycle_type)?])
    }

    /// `Σ_classes |C| χ_λ(C) χ_μ(C)` for every pair; `n!·δ` when the table is right.
    pub fn inner_products(&self) -> Vec<Vec<i128>> {
        let k = self.partitions.len();
        (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        (0..k)
                            .map(|c| {
                                self.class_sizes[c] as i128 * self.values[a][c] as i128 * self.values[b][c] as i128
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn is_orthogonal(&self) -> bool {
        let nf = factorial(self.n) as i128;
        self.inner_products()
            .iter()
            .enumerate()
            .all(|(a, row)| row.iter().enumerate().all(|(b, &v)| v == if a == b { nf } else { 0 }))
    }
}

/// `χ_λ(μ)` by stripping rim hooks of length `μ1, μ2, …`, tracked on beta-sets.
fn murnaghan_nakayama(lambda: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return if lambda.is_empty() { 1 } else { 0 };
    };
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let l = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let height = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<usize> = next.iter().enumerate().map(|(j, &c)| c - (l - 1 - j)).filter(|&p| p > 0).collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * murnaghan_nakayama(&shape, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// `gχ_n(A) = Σ m_λ χ_λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocharacterDecomposition {
    pub n: usize,
    pub algebra: ActionTag,
    pub multiplicities: Vec<(Partition, u64)>,
}

impl CocharacterDecomposition {
    pub fn get(&self, lambda: &Partition) -> u64 {
        self.multiplicities.iter().find(|(p, _)| p == lambda).map_or(0, |(_, m)| *m)
    }

    /// `Σ m_λ d_λ`, which must equal the codimension.
    pub fn degree_sum(&self) -> u128 {
        self.multiplicities.iter().map(|(p, m)| *m as u128 * hook_degree(p)).sum()
    }
}

struct Multiplicities<'a>(&'a [(Partition, u64)]);

impl Serialize for Multiplicities<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (p, m) in self.0 {
            map.serialize_entry(&p.to_string(), m)?;
        }
        map.end()
    }
}

impl Serialize for CocharacterDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("algebra", self.algebra.name())?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("multiplicities", &Multiplicities(&self.multiplicities))?;
        map.end()
    }
}

/// `m_λ = (1/n!) Σ_classes |C| χ_λ(C) tr(σ_C)` from the traces of class
/// representatives on the image of the evaluation map.
pub fn cocharacter_from_image(
    image: &MultilinearImage<Rational>,
    table: &CharacterTable,
) -> Result<CocharacterDecomposition, RepError> {
    let n = image.n();
    assert_eq!(table.n, n, "character table degree must match the image");
    let traces: Vec<Rational> =
        table.classes().iter().map(|mu| image.trace(&Permutation::of_cycle_type(mu.parts()))).collect();
    let nf = Rational::from_integer(factorial(n).into());
    let mut multiplicities = Vec::with_capacity(table.partitions.len());
    for (row, lambda) in table.values.iter().zip(&table.partitions) {
        let sum: Rational = row
            .iter()
            .zip(&table.class_sizes)
            .zip(&traces)
            .map(|((&chi, &size), tr)| Rational::from_integer((size as i128 * chi as i128).into()) * tr)
            .fold(Rational::zero(), |a, b| a + b);
        let m = sum / &nf;
        if !m.is_integer() || m.is_negative() {
            return Err(RepError::NonIntegral { partition: lambda.clone(), value: m.to_string() });
        }
        let value = crate::scalar::rational_to_i64(&m).expect("multiplicity fits in i64") as u64;
        multiplicities.push((lambda.clone(), value));
    }
    Ok(CocharacterDecomposition { n, algebra: image.algebra(), multiplicities })
}

/// Cocharacter of `A` in degree `n`, computed exactly.
pub fn cocharacter(
    act: &crate::walgebra::WAlgebraAction<Rational>,
    n: usize,
    caps: &crate::eval::Caps,
) -> Result<CocharacterDecomposition, RepError> {
    let image = MultilinearImage::exact(act, n, caps)?;
    let table = CharacterTable::new(n, caps.character_max_n)?;
    cocharacter_from_image(&image, &table)
}

/// Closed-form multiplicities for the builtin actions; `None` for custom ones.
pub fn multiplicity_formula(tag: ActionTag, lambda: &Partition) -> Option<u64> {
    let n = lambda.size() as u64;
    let parts = lambda.parts();
    let shape = match parts {
        [_] => Shape::Row,
        [a, b] => Shape::TwoRow { q: (a - b) as u64 },
        [a, b, 1] => Shape::ThreeRow { q: (a - b) as u64 },
        _ => Shape::Other,
    };
    let m = match (tag, shape) {
        (ActionTag::Custom, _) => return None,
        (_, Shape::Other) => 0,
        (ActionTag::Regular, Shape::Row) => 2 * n + 3,
        (ActionTag::Regular, Shape::TwoRow { q }) => 3 * (q + 1),
        (ActionTag::D, Shape::Row) => n + 2,
        (ActionTag::D, Shape::TwoRow { q }) => 2 * (q + 1),
        (ActionTag::F, Shape::Row) => 1,
        (ActionTag::F, Shape::TwoRow { q }) => q + 1,
        (_, Shape::ThreeRow { q }) => q + 1,
    };
    Some(m)
}

enum Shape {
    Row,
    TwoRow { q: u64 },
    ThreeRow { q: u64 },
    Other,
}

/// `Σ m_λ χ_λ` at the class of `cycle_type`.
pub fn character_of_decomposition(
    decomp: &CocharacterDecomposition,
    table: &CharacterTable,
    cycle_type: &Partition,
) -> i64 {
    decomp.multiplicities.iter().map(|(lambda, m)| *m as i64 * table.value(lambda, cycle_type).unwrap_or(0)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn partition_lists() {
        assert_eq!(partitions(3), vec![part(&[3]), part(&[2, 1]), part(&[1, 1, 1])]);
        assert_eq!(partitions(1), vec![part(&[1])]);
        assert_eq!(partitions(6).len(), 11);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn hook_degrees() {
        assert_eq!(hook_degree(&part(&[5])), 1);
        assert_eq!(hook_degree(&part(&[2, 1])), 2);
        assert_eq!(hook_degree(&part(&[3, 2])), 5);
        assert_eq!(part(&[3, 2]).conjugate(), part(&[2, 2, 1]));
    }

    #[test]
    fn two_and_three_row_hook_closed_forms() {
        let binom = |n: u128, k: u128| -> u128 { (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1)) };
        for n in 2..=10usize {
            for p in 1..=n / 2 {
                let q = n - 2 * p;
                let lhs = hook_degree(&part(&[p + q, p])) * (n - p + 1) as u128;
                assert_eq!(lhs, binom(n as u128, p as u128) * (n - 2 * p + 1) as u128);
            }
            for p in 1..=(n - 1) / 2 {
                let q = n - 2 * p - 1;
                let lhs = hook_degree(&part(&[p + q, p, 1])) * (n - p + 1) as u128;
                assert_eq!(lhs, binom(n as u128, p as u128 + 1) * (p * (n - 2 * p)) as u128);
            }
        }
    }

    #[test]
    fn sign_and_small_characters() {
        let t = CharacterTable::new(4, 8).unwrap();
        let sign = part(&[1, 1, 1, 1]);
        for mu in t.classes() {
            let perm = Permutation::of_cycle_type(mu.parts());
            assert_eq!(t.value(&sign, mu).unwrap(), perm.sign());
        }
        let t3 = CharacterTable::new(3, 8).unwrap();
        assert_eq!(t3.value(&part(&[2, 1]), &part(&[3])), Some(-1));
        assert_eq!(t3.value(&part(&[2, 1]), &part(&[2, 1])), Some(0));
        assert!(CharacterTable::new(9, 8).is_err());
    }

    #[test]
    fn identity_column_is_hook_degree() {
        let t = CharacterTable::new(6, 8).unwrap();
        let id = part(&[1, 1, 1, 1, 1, 1]);
        for lambda in &t.partitions {
            assert_eq!(t.value(lambda, &id).unwrap() as u128, hook_degree(lambda));
        }
    }

    #[test]
    fn orthogonality_small() {
        for n in 1..=6 {
            assert!(CharacterTable::new(n, 8).unwrap().is_orthogonal(), "n = {n}");
        }
    }

    #[test]
    fn formula_values() {
        assert_eq!(multiplicity_formula(ActionTag::Regular, &part(&[4])), Some(11));
        assert_eq!(multiplicity_formula(ActionTag::Regular, &part(&[2, 2])), Some(3));
        for tag in ActionTag::BUILTIN {
            assert_eq!(multiplicity_formula(tag, &part(&[2, 2, 2])), Some(0));
            assert_eq!(multiplicity_formula(tag, &part(&[2, 1, 1, 1])), Some(0));
        }
        assert_eq!(multiplicity_formula(ActionTag::Custom, &part(&[1])), None);
        assert_eq!(multiplicity_formula(ActionTag::F, &part(&[3, 1, 1])), Some(3));
    }

    #[test]
    fn formula_sum_rule_matches_closed_codimension() {
        use crate::basis::codim_formula;
        for tag in ActionTag::BUILTIN {
            for n in 1..=12 {
                let sum: u128 =
                    partitions(n).iter().map(|l| multiplicity_formula(tag, l).unwrap() as u128 * hook_degree(l)).sum();
                assert_eq!(sum, codim_formula(n, tag).unwrap() as u128, "{tag} n = {n}");
            }
        }
    }

    #[test]
    fn decomposition_reproduces_traces() {
        use crate::eval::Caps;
        use crate::scalar::rational;
        use crate::walgebra::WAlgebraAction;
        for tag in ActionTag::BUILTIN {
            let act = WAlgebraAction::builtin(tag).unwrap();
            let image = MultilinearImage::exact(&act, 4, &Caps::default()).unwrap();
            let table = CharacterTable::new(4, DEFAULT_CHARACTER_CAP).unwrap();
            let decomp = cocharacter_from_image(&image, &table).unwrap();
            for class in partitions(4) {
                let sigma = Permutation::of_cycle_type(class.parts());
                let chi = character_of_decomposition(&decomp, &table, &class);
                assert_eq!(image.trace(&sigma), rational(chi, 1), "{tag} {class}");
            }
        }
    }
}
