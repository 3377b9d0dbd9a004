use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::stream::MonomialStream;
use super::{tuple_count, tuple_permutation, EvalError};
use crate::linalg::{FieldEchelon, IntegerEchelon, RankAccumulator};
use crate::perm::Permutation;
use crate::scalar::{with_pool_prime, Fp, PrimeFieldTask, Rational, Scalar, PRIME_POOL};
use crate::walgebra::{ActionTag, WAlgebraAction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Exact,
    Modular,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Modular => "modular",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Mode::Exact),
            "modular" => Ok(Mode::Modular),
            _ => Err(format!("unknown mode `{s}` (expected exact or modular)")),
        }
    }
}

/// Largest `n` accepted by each engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub exact_max_n: usize,
    pub modular_max_n: usize,
    pub character_max_n: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { exact_max_n: 5, modular_max_n: 7, character_max_n: 8 }
    }
}

impl Caps {
    fn check(&self, n: usize, mode: Mode) -> Result<(), EvalError> {
        if n == 0 {
            return Err(EvalError::ZeroArity);
        }
        match mode {
            Mode::Exact if n > self.exact_max_n => Err(EvalError::ExactCap { n, cap: self.exact_max_n }),
            Mode::Modular if n > self.modular_max_n => Err(EvalError::ModularCap { n, cap: self.modular_max_n }),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodimResult {
    pub n: usize,
    pub algebra: ActionTag,
    pub value: usize,
    pub mode: Mode,
    /// The two primes used in modular mode; empty in exact mode.
    pub primes: Vec<u64>,
}

impl Serialize for CodimResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let modular = self.mode == Mode::Modular;
        let mut map = s.serialize_map(Some(if modular { 5 } else { 4 }))?;
        map.serialize_entry("algebra", self.algebra.name())?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("codim", &self.value)?;
        map.serialize_entry("mode", self.mode.name())?;
        if modular {
            map.serialize_entry("primes", &self.primes)?;
        }
        map.end()
    }
}

fn exact_rank(act: &WAlgebraAction<Rational>, n: usize) -> usize {
    let mut acc = IntegerEchelon::new(3 * tuple_count(n));
    MonomialStream::new(act, n).for_each_distinct(|v| {
        acc.insert(&v);
    });
    acc.rank()
}

struct ModularRank<'a> {
    act: &'a WAlgebraAction<Rational>,
    n: usize,
}

impl PrimeFieldTask for ModularRank<'_> {
    type Output = Result<usize, EvalError>;

    fn run<const P: u64>(&self) -> Self::Output {
        let act = self.act.try_map(Fp::<P>::from_rational).ok_or(EvalError::PrimeUnusable(P))?;
        let mut acc = FieldEchelon::new(3 * tuple_count(self.n));
        MonomialStream::new(&act, self.n).for_each_distinct(|v| {
            acc.insert(&v);
        });
        Ok(acc.rank())
    }
}

/// `gc_n(A)`, the rank of the evaluation map on all multilinear monomials.
/// Modular mode uses two primes drawn from the pool with seed 0.
pub fn codimension(
    act: &WAlgebraAction<Rational>,
    n: usize,
    mode: Mode,
    caps: &Caps,
) -> Result<CodimResult, EvalError> {
    codimension_seeded(act, n, mode, caps, 0)
}

pub fn codimension_seeded(
    act: &WAlgebraAction<Rational>,
    n: usize,
    mode: Mode,
    caps: &Caps,
    seed: u64,
) -> Result<CodimResult, EvalError> {
    caps.check(n, mode)?;
    let result = |value, primes| CodimResult { n, algebra: act.tag, value, mode, primes };
    match mode {
        Mode::Exact => Ok(result(exact_rank(act, n), Vec::new())),
        Mode::Modular => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let picks = sample(&mut rng, PRIME_POOL.len(), 2).into_vec();
            let task = ModularRank { act, n };
            let ranks = picks
                .iter()
                .map(|&i| with_pool_prime(i, &task).map(|r| (PRIME_POOL[i], r)))
                .collect::<Result<Vec<_>, _>>()?;
            if ranks[0].1 != ranks[1].1 {
                return Err(EvalError::ModularDisagreement(ranks));
            }
            Ok(result(ranks[0].1, ranks.iter().map(|r| r.0).collect()))
        }
    }
}

/// Span of the evaluation vectors of all of `GP_n`, i.e. a copy of the
/// quotient `GP_n(A)`, with its reduced echelon basis.
#[derive(Debug, Clone)]
pub struct MultilinearImage<T> {
    n: usize,
    algebra: ActionTag,
    basis: FieldEchelon<T>,
}

impl<T: Scalar> MultilinearImage<T> {
    pub fn build(act: &WAlgebraAction<T>, n: usize) -> Self {
        let mut basis = FieldEchelon::new(3 * tuple_count(n));
        MonomialStream::new(act, n).for_each_distinct(|v| {
            basis.insert(&v);
        });
        MultilinearImage { n, algebra: act.tag, basis }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn algebra(&self) -> ActionTag {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn basis(&self) -> &FieldEchelon<T> {
        &self.basis
    }

    /// Trace of `σ` on the image: the diagonal of `Q_σ B = B C_σ`, read off
    /// at the pivot columns of the reduced basis.
    pub fn trace(&self, sigma: &Permutation) -> T {
        let map = tuple_permutation(self.n, sigma);
        self.basis
            .rows()
            .iter()
            .zip(self.basis.pivots())
            .fold(T::zero(), |acc, (row, &p)| acc + row[3 * map[p / 3] + p % 3].clone())
    }

    /// Whether `Q_σ` maps the image into itself.
    pub fn is_invariant(&self, sigma: &Permutation) -> bool {
        let map = tuple_permutation(self.n, sigma);
        self.basis.rows().iter().all(|row| {
            let moved: Vec<T> = (0..row.len()).map(|j| row[3 * map[j / 3] + j % 3].clone()).collect();
            self.basis.contains(&moved)
        })
    }
}

impl MultilinearImage<Rational> {
    pub fn exact(act: &WAlgebraAction<Rational>, n: usize, caps: &Caps) -> Result<Self, EvalError> {
        caps.check(n, Mode::Exact)?;
        Ok(Self::build(act, n))
    }
}

/// Trace of `σ` acting on `GP_n(A)`.
pub fn perm_trace(
    sigma: &Permutation,
    act: &WAlgebraAction<Rational>,
    n: usize,
    caps: &Caps,
) -> Result<Rational, EvalError> {
    Ok(MultilinearImage::exact(act, n, caps)?.trace(sigma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn act(tag: ActionTag) -> WAlgebraAction<Rational> {
        WAlgebraAction::builtin(tag).unwrap()
    }

    #[test]
    fn small_codimensions() {
        let caps = Caps::default();
        assert_eq!(codimension(&act(ActionTag::Regular), 3, Mode::Exact, &caps).unwrap().value, 22);
        assert_eq!(codimension(&act(ActionTag::D), 3, Mode::Exact, &caps).unwrap().value, 14);
        assert_eq!(codimension(&act(ActionTag::F), 2, Mode::Exact, &caps).unwrap().value, 2);
    }

    #[test]
    fn modular_reports_primes() {
        let r = codimension_seeded(&act(ActionTag::Regular), 2, Mode::Modular, &Caps::default(), 11).unwrap();
        assert_eq!(r.value, 10);
        assert_eq!(r.primes.len(), 2);
        assert_ne!(r.primes[0], r.primes[1]);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["mode"], "modular");
        assert_eq!(json["codim"], 10);
    }

    #[test]
    fn caps_are_enforced() {
        let caps = Caps { exact_max_n: 2, ..Caps::default() };
        assert_eq!(codimension(&act(ActionTag::F), 3, Mode::Exact, &caps), Err(EvalError::ExactCap { n: 3, cap: 2 }));
        assert_eq!(codimension(&act(ActionTag::F), 0, Mode::Exact, &caps), Err(EvalError::ZeroArity));
    }

    #[test]
    fn json_shape() {
        let r = codimension(&act(ActionTag::Regular), 3, Mode::Exact, &Caps::default()).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"algebra":"regular","n":3,"codim":22,"mode":"exact"}"#);
    }

    #[test]
    fn traces_in_degree_two() {
        let caps = Caps::default();
        let id = Permutation::identity(2);
        let swap = Permutation::transposition(2, 0, 1);
        assert_eq!(perm_trace(&id, &act(ActionTag::Regular), 2, &caps).unwrap(), rational(10, 1));
        assert_eq!(perm_trace(&swap, &act(ActionTag::Regular), 2, &caps).unwrap(), rational(4, 1));
        assert_eq!(perm_trace(&swap, &act(ActionTag::F), 2, &caps).unwrap(), rational(0, 1));
    }

    #[test]
    fn image_is_invariant() {
        let image = MultilinearImage::build(&act(ActionTag::D), 3);
        for sigma in Permutation::all(3) {
            assert!(image.is_invariant(&sigma));
        }
    }
}
