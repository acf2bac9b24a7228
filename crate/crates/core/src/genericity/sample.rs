use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::relation::{find_relation_with_budget, DEFAULT_STATE_BUDGET};
use super::scalar::{AdditiveScalar, EigenScalar, MultiplicativeScalar};
use super::{ClassSpec, Mode, SpecTuple};
use crate::error::{DspError, Result};
use crate::jnf::JnfTuple;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleOptions {
    pub max_denominator: i64,
    pub retries: usize,
    pub state_budget: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { max_denominator: 97, retries: 1000, state_budget: DEFAULT_STATE_BUDGET }
    }
}

/// Draws exact eigenvalues for every slot of `tuple` satisfying the
/// trace/determinant condition and no non-genericity relation.
///
/// The last slot of the last entry is solved from the global condition. In
/// multiplicative mode all eigenvalues lie on the unit circle.
pub fn sample_generic(tuple: &JnfTuple, mode: Mode, seed: u64, opts: SampleOptions) -> Result<SpecTuple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..opts.retries {
        let candidate = match mode {
            Mode::Additive => draw_additive(tuple, &mut rng, opts.max_denominator).map(SpecTuple::Additive),
            Mode::Multiplicative => {
                draw_multiplicative(tuple, &mut rng, opts.max_denominator).map(SpecTuple::Multiplicative)
            }
        };
        let Some(candidate) = candidate else { continue };
        let generic = match &candidate {
            SpecTuple::Additive(s) => find_relation_with_budget(s, opts.state_budget)?.is_none(),
            SpecTuple::Multiplicative(s) => find_relation_with_budget(s, opts.state_budget)?.is_none(),
        };
        if generic {
            return Ok(candidate);
        }
    }
    Err(DspError::SamplingExhausted(opts.retries))
}

fn random_rational(rng: &mut ChaCha8Rng, max_den: i64, spread: i64) -> BigRational {
    let den = rng.random_range(1..=max_den);
    let num = rng.random_range(-spread * den..=spread * den);
    BigRational::new(num.into(), den.into())
}

/// Fills every slot but the last through `draw`, then solves the last one
/// from `solve(partial total, multiplicity)`. `None` if a class ends up with
/// repeated eigenvalues.
fn assemble<S: EigenScalar>(
    tuple: &JnfTuple,
    mut draw: impl FnMut() -> S,
    solve: impl FnOnce(&S, usize) -> S,
) -> Option<Vec<ClassSpec<S>>> {
    let entries = tuple.entries();
    let mut values: Vec<Vec<S>> = entries.iter().map(|j| (0..j.slot_count()).map(|_| draw()).collect()).collect();
    let last_entry = entries.len() - 1;
    let last_slot = entries[last_entry].slot_count() - 1;
    let mut partial = S::identity();
    for (j, jnf) in entries.iter().enumerate() {
        for (l, m) in jnf.multiplicities().into_iter().enumerate() {
            if (j, l) != (last_entry, last_slot) {
                partial = partial.combine(&values[j][l].times(m));
            }
        }
    }
    let m_last = entries[last_entry].multiplicities()[last_slot];
    values[last_entry][last_slot] = solve(&partial, m_last);
    entries.iter().zip(values).map(|(jnf, evs)| ClassSpec::new(jnf.clone(), evs).ok()).collect()
}

fn draw_additive(tuple: &JnfTuple, rng: &mut ChaCha8Rng, max_den: i64) -> Option<Vec<ClassSpec<AdditiveScalar>>> {
    let mut draws = Vec::new();
    let total: usize = tuple.entries().iter().map(|j| j.slot_count()).sum();
    for _ in 0..total {
        draws.push(AdditiveScalar::real(random_rational(rng, max_den, 2)));
    }
    let mut it = draws.into_iter();
    assemble(
        tuple,
        || it.next().expect("one draw per slot"),
        |partial, m| partial.inverse().scale(&BigRational::new(1.into(), BigInt::from(m))),
    )
}

fn draw_multiplicative(
    tuple: &JnfTuple,
    rng: &mut ChaCha8Rng,
    max_den: i64,
) -> Option<Vec<ClassSpec<MultiplicativeScalar>>> {
    let total: usize = tuple.entries().iter().map(|j| j.slot_count()).sum();
    let mut draws = Vec::new();
    for _ in 0..total {
        let den = rng.random_range(1..=max_den);
        let num = rng.random_range(0..den);
        draws.push(MultiplicativeScalar::root_of_unity(num, den));
    }
    let m_last = tuple.entries().last().unwrap().multiplicities().last().copied().unwrap();
    let branch = rng.random_range(0..m_last as i64);
    let mut it = draws.into_iter();
    assemble(
        tuple,
        || it.next().expect("one draw per slot"),
        |partial, m| {
            // m · arg ≡ −arg(partial) (mod 1); pick one of the m solutions.
            let target = partial.inverse().arg().clone() + BigRational::from_integer(branch.into());
            let arg = target / BigRational::from_integer(BigInt::from(m));
            MultiplicativeScalar::new(num_traits::One::one(), arg).expect("unit modulus")
        },
    )
}
