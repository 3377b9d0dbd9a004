//! Named identities, highest-weight family groupings, and the end-to-end
//! property suite run by `ut2gpi verify`.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::basis::{codim_formula, enumerate_basis};
use crate::cli::parse_poly;
use crate::eval::{self, codimension, codimension_seeded, Caps, EvalError, Mode, MultilinearImage};
use crate::perm::Permutation;
use crate::poly::{row_family, three_row_family, two_row_family, GenMonomial, GenPolynomial, HwvFamily};
use crate::rep::{
    cocharacter_from_image, hook_degree, multiplicity_formula, partitions, standard_tableaux_count, CharacterTable,
    Partition,
};
use crate::scalar::Rational;
use crate::walgebra::{check_axioms, is_trivial_linear, lr_span_dim, ActionTag, Slot, UTElement, Unit, WAlgebraAction};

/// A polynomial together with the verdict expected from `is_identity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityCase {
    pub source: &'static str,
    pub algebra: ActionTag,
    pub expected: bool,
}

const fn case(source: &'static str, algebra: ActionTag, expected: bool) -> IdentityCase {
    IdentityCase { source, algebra, expected }
}

pub const GENERATOR: &str = "[x1,x2] - [x1,x2,E22]";

/// The generator of the regular identities with its consequences, and the
/// generating sets for D and F.
pub fn identity_suite() -> Vec<IdentityCase> {
    use ActionTag::*;
    vec![
        case(GENERATOR, Regular, true),
        case("E22[x1,x2]", Regular, true),
        case("[x1,x2] - [x1,x2]E22", Regular, true),
        case("[x1,x2][x3,x4]", Regular, true),
        case("[x1,x2]E12", Regular, true),
        case("E12[x1,x2]", Regular, true),
        case("E12 x1", D, true),
        case("x1 E12", D, true),
        case(GENERATOR, D, true),
        case("E22 x1", F, true),
        case("x1 E22", F, true),
        case("[x1,x2][x3,x4]", F, true),
    ]
}

/// Polynomials separating the identities of D and F.
pub fn witness_cases() -> Vec<IdentityCase> {
    use ActionTag::*;
    vec![case("E22 x1", F, true), case("E22 x1", D, false), case(GENERATOR, D, true), case(GENERATOR, F, false)]
}

/// One-variable polynomials with known triviality.
pub fn triviality_cases() -> Vec<(&'static str, bool)> {
    vec![("E22*x1*E22 - E22*x1", true), ("E12*x1*E12", true), ("x1", false)]
}

/// Highest-weight families of degree `n`, grouped by shape.
pub fn hwv_shapes(n: usize) -> Vec<(Partition, Vec<HwvFamily>)> {
    let mut out = vec![(Partition::new(vec![n]).expect("row"), row_family(n))];
    for p in 1..=n / 2 {
        let q = n - 2 * p;
        out.push((Partition::new(vec![p + q, p]).expect("two rows"), two_row_family(p, q)));
    }
    for p in (1..).take_while(|p| 2 * p < n) {
        let q = n - 2 * p - 1;
        out.push((Partition::new(vec![p + q, p, 1]).expect("three rows"), three_row_family(p, q)));
    }
    out
}

/// Rank of the multilinearized family modulo the identities of `act`.
pub fn hwv_rank(act: &WAlgebraAction<Rational>, n: usize, family: &[HwvFamily]) -> Result<usize, EvalError> {
    let polys =
        family.iter().map(|f| Ok(f.build::<Rational>()?.multilinearize()?)).collect::<Result<Vec<_>, EvalError>>()?;
    Ok(eval::dependence(&polys, act, n)?.rank)
}

/// Regular action with `e22·e12` changed to `e12`.
pub fn corrupted_regular() -> WAlgebraAction<Rational> {
    let mut act = WAlgebraAction::regular();
    act.tag = ActionTag::Custom;
    act.left[Slot::E22.index()][Unit::E12.index()] = Unit::E12.element();
    act
}

/// Every multilinear monomial of degree `n`.
pub fn all_monomials(n: usize) -> Vec<GenPolynomial<Rational>> {
    let mut out = Vec::new();
    for sigma in Permutation::all(n) {
        let vars: Vec<u32> = sigma.images().iter().map(|&i| i as u32 + 1).collect();
        for code in 0..3usize.pow(n as u32 + 1) {
            let slots = (0..=n).rev().map(|k| Slot::from_index(code / 3usize.pow(k as u32) % 3)).collect();
            out.push(GenPolynomial::from_monomial(GenMonomial::new(vars.clone(), slots), Rational::one()));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub group: &'static str,
    pub detail: String,
    pub passed: bool,
    pub millis: u128,
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn run(&mut self, group: &'static str, f: impl FnOnce() -> Result<(bool, String), String>) {
        let start = Instant::now();
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check { group, detail, passed, millis: start.elapsed().as_millis() });
    }
}

fn builtin(tag: ActionTag) -> WAlgebraAction<Rational> {
    WAlgebraAction::builtin(tag).expect("builtin")
}

fn listing<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Runs every theorem check for degrees up to `max_n`.
pub fn run_property_suite(max_n: usize, caps: &Caps, seed: u64) -> Vec<Check> {
    let mut s = Suite { checks: Vec::new() };
    let max_n = max_n.max(1);
    let e = |err: &dyn std::fmt::Display| err.to_string();

    s.run("axioms", || {
        let ok = ActionTag::BUILTIN.iter().all(|&t| check_axioms(&builtin(t)).passed());
        let corrupted = check_axioms(&corrupted_regular());
        Ok((
            ok && !corrupted.passed(),
            format!("builtins pass, corrupted table has {} violations", corrupted.violations.len()),
        ))
    });

    for tag in ActionTag::BUILTIN {
        let act = builtin(tag);
        s.run("codimension", || {
            let mut got = Vec::new();
            for n in 1..=max_n {
                got.push(codimension(&act, n, Mode::Exact, caps).map_err(|x| e(&x))?.value as u64);
            }
            let want: Vec<u64> = (1..=max_n).map(|n| codim_formula(n, tag).expect("builtin")).collect();
            Ok((got == want, format!("{tag}: [{}] vs formula [{}]", listing(&got), listing(&want))))
        });
    }

    for tag in ActionTag::BUILTIN {
        let act = builtin(tag);
        s.run("cocharacter", || {
            let mut bad = Vec::new();
            for n in 2..=max_n {
                let image = MultilinearImage::exact(&act, n, caps).map_err(|x| e(&x))?;
                let table = CharacterTable::new(n, caps.character_max_n).map_err(|x| e(&x))?;
                let decomp = cocharacter_from_image(&image, &table).map_err(|x| e(&x))?;
                for (lambda, m) in &decomp.multiplicities {
                    if Some(*m) != multiplicity_formula(tag, lambda) {
                        bad.push(format!("{lambda}:{m}"));
                    }
                }
                if decomp.degree_sum() != image.dim() as u128 {
                    bad.push(format!("sum rule at n={n}"));
                }
            }
            Ok((bad.is_empty(), format!("{tag}: n=2..{max_n}, mismatches [{}]", bad.join(" "))))
        });
    }

    for tag in ActionTag::BUILTIN {
        let act = builtin(tag);
        s.run("highest-weight", || {
            let mut bad = Vec::new();
            let mut count = 0;
            for n in 1..=max_n {
                for (shape, fam) in hwv_shapes(n) {
                    let r = hwv_rank(&act, n, &fam).map_err(|x| e(&x))?;
                    count += 1;
                    if Some(r as u64) != multiplicity_formula(tag, &shape) {
                        bad.push(format!("{shape}:{r}"));
                    }
                }
            }
            Ok((bad.is_empty(), format!("{tag}: {count} shapes, mismatches [{}]", bad.join(" "))))
        });
    }

    for tag in ActionTag::BUILTIN {
        let act = builtin(tag);
        s.run("canonical-basis", || {
            let counts_ok = (1..=8).all(|n| enumerate_basis(n, tag).map(|b| b.len() as u64) == codim_formula(n, tag));
            let mut ranks = Vec::new();
            for n in 1..=max_n.min(caps.exact_max_n) {
                let polys: Vec<_> = enumerate_basis(n, tag).expect("builtin").iter().map(|b| b.poly()).collect();
                ranks.push(eval::dependence(&polys, &act, n).map_err(|x| e(&x))?.rank as u64);
            }
            let want: Vec<u64> = (1..=ranks.len()).map(|n| codim_formula(n, tag).expect("builtin")).collect();
            Ok((counts_ok && ranks == want, format!("{tag}: counts n<=8 {}, ranks [{}]", counts_ok, listing(&ranks))))
        });
    }

    s.run("operators", || {
        let dims: Vec<usize> = ActionTag::BUILTIN.iter().map(|&t| lr_span_dim(&builtin(t))).collect();
        let gc1: Vec<usize> =
            ActionTag::BUILTIN.iter().map(|&t| codim_formula(1, t).expect("builtin") as usize).collect();
        let mut verdicts = true;
        for (src, want) in triviality_cases() {
            let f = parse_poly(src).map_err(|x| e(&x))?;
            verdicts &= is_trivial_linear(&f).map_err(|x| e(&x))? == want;
        }
        Ok((dims == gc1 && verdicts, format!("span dims [{}], triviality verdicts {}", listing(&dims), verdicts)))
    });

    s.run("identities", || {
        let mut bad = Vec::new();
        for c in identity_suite().into_iter().chain(witness_cases()) {
            let f = parse_poly(c.source).map_err(|x| e(&x))?;
            if eval::is_identity(&f, &builtin(c.algebra)).map_err(|x| e(&x))? != c.expected {
                bad.push(format!("{} on {}", c.source, c.algebra));
            }
        }
        Ok((bad.is_empty(), format!("mismatches [{}]", bad.join("; "))))
    });

    s.run("character-tables", || {
        let ok = (1..=7.min(caps.character_max_n))
            .all(|n| CharacterTable::new(n, caps.character_max_n).is_ok_and(|t| t.is_orthogonal()));
        let hooks = (1..=6).all(|n| partitions(n).iter().all(|l| hook_degree(l) == standard_tableaux_count(l)));
        Ok((ok && hooks, format!("orthogonality n<=7 {ok}, hook degrees n<=6 {hooks}")))
    });

    for tag in ActionTag::BUILTIN {
        let act = builtin(tag);
        s.run("modular-agreement", || {
            let mut pairs = Vec::new();
            for n in 1..=4.min(max_n) {
                let exact = codimension(&act, n, Mode::Exact, caps).map_err(|x| e(&x))?.value;
                let modular = codimension_seeded(&act, n, Mode::Modular, caps, seed).map_err(|x| e(&x))?.value;
                pairs.push((exact, modular));
            }
            let ok = pairs.iter().all(|(a, b)| a == b);
            Ok((
                ok,
                format!(
                    "{tag}: exact/modular {}",
                    pairs.iter().map(|(a, b)| format!("{a}/{b}")).collect::<Vec<_>>().join(" ")
                ),
            ))
        });
    }

    for tag in ActionTag::BUILTIN {
        let act = builtin(tag);
        s.run("kernel-soundness", || {
            let monomials = all_monomials(2);
            let dep = eval::dependence(&monomials, &act, 2).map_err(|x| e(&x))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failures = 0;
            for _ in 0..1000 {
                let point: BTreeMap<u32, UTElement<Rational>> = eval::random_assignment(&mut rng, 2, 9);
                let values = monomials
                    .iter()
                    .map(|m| eval::evaluate(m, &point, &act))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|x| e(&x))?;
                for rel in &dep.kernel {
                    let total = values.iter().zip(rel).fold(UTElement::zero(), |acc, (v, k)| acc + v.scale(k));
                    if !total.is_zero() {
                        failures += 1;
                    }
                }
            }
            Ok((failures == 0, format!("{tag}: {} relations x 1000 points, {failures} failures", dep.kernel.len())))
        });
    }

    s.checks
}
