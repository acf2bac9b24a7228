//! Numerical search for matrix tuples in prescribed classes, with
//! irreducibility and centralizer certificates.

mod certify;
pub mod linalg;
mod search;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{DspError, Result};
use crate::genericity::{ClassSpec, EigenScalar, Mode, SpecTuple};
pub use certify::{burnside_dim, centralizer_nullity, class_membership};
use linalg::{condition_number, jordan_matrix, CMatrix};
use search::{conjugator_towards, random_conjugators, DescentEnd, Landscape};

/// Restart budget, tolerances and size caps for [`realize`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Budget {
    pub restarts: usize,
    pub iters: usize,
    pub seed: u64,
    /// Frobenius norm of the constraint residual.
    pub residual_tol: f64,
    /// Singular values below this fraction of the largest count as zero.
    pub rank_tol: f64,
    pub eigen_tol: f64,
    /// Initial conjugators are redrawn above this condition number.
    pub start_cond_cap: f64,
    /// A restart is abandoned once a conjugator exceeds this condition number.
    pub abort_cond: f64,
    pub jobs: usize,
    pub max_size: usize,
    pub max_classes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            restarts: 50,
            iters: 200,
            seed: 0,
            residual_tol: 1e-8,
            rank_tol: 1e-6,
            eigen_tol: 1e-6,
            start_cond_cap: 1e4,
            abort_cond: 1e10,
            jobs: 1,
            max_size: 8,
            max_classes: 6,
        }
    }
}

fn serialize_matrices<S: Serializer>(ms: &[CMatrix], s: S) -> std::result::Result<S::Ok, S::Error> {
    ms.iter().map(matrix_rows).collect::<Vec<_>>().serialize(s)
}

/// Row-major `[re, im]` pairs.
pub fn matrix_rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationResult {
    #[serde(serialize_with = "serialize_matrices")]
    pub conjugators: Vec<CMatrix>,
    #[serde(serialize_with = "serialize_matrices")]
    pub matrices: Vec<CMatrix>,
    pub residual: f64,
    pub burnside_dim: usize,
    pub centralizer_nullity: usize,
    pub class_membership_ok: bool,
    /// Restart that produced the witness; `None` for a warm start.
    pub restart: Option<usize>,
    pub iterations: usize,
}

impl RealizationResult {
    pub fn size(&self) -> usize {
        self.matrices.first().map_or(0, |m| m.nrows())
    }

    pub fn is_irreducible(&self) -> bool {
        self.burnside_dim == self.size() * self.size()
    }

    pub fn has_trivial_centralizer(&self) -> bool {
        self.centralizer_nullity == 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    /// First certified witness by restart order.
    pub found: Option<RealizationResult>,
    pub restarts_run: usize,
    pub ill_conditioned_restarts: usize,
}

/// Class membership test for the matrix of a given class index.
type MemberCheck = Box<dyn Fn(usize, &CMatrix, &Budget) -> bool + Sync>;

struct Problem {
    landscape: Landscape,
    member: MemberCheck,
}

fn problem_of<S: EigenScalar + 'static>(specs: &[ClassSpec<S>], mode: Mode) -> Problem {
    let n = specs.first().map_or(0, |s| s.size());
    let jordans = specs.iter().map(jordan_matrix).collect();
    let owned: Vec<ClassSpec<S>> = specs.to_vec();
    Problem {
        landscape: Landscape { mode, n, jordans },
        member: Box::new(move |j, m, b| class_membership(m, &owned[j], b.eigen_tol, b.rank_tol)),
    }
}

fn build(specs: &SpecTuple, budget: &Budget) -> Result<Problem> {
    let tuple = specs.jnf_tuple()?;
    if tuple.size() > budget.max_size {
        return Err(DspError::ResourceExceeded(format!("size {} exceeds cap {}", tuple.size(), budget.max_size)));
    }
    if tuple.entries().len() > budget.max_classes {
        return Err(DspError::ResourceExceeded(format!(
            "{} classes exceed cap {}",
            tuple.entries().len(),
            budget.max_classes
        )));
    }
    Ok(match specs {
        SpecTuple::Additive(s) => problem_of(s, Mode::Additive),
        SpecTuple::Multiplicative(s) => problem_of(s, Mode::Multiplicative),
    })
}

enum Attempt {
    Certified(RealizationResult),
    Uncertified,
    IllConditioned,
}

impl Problem {
    fn certify(&self, conjugators: Vec<CMatrix>, matrices: Vec<CMatrix>, residual: f64, budget: &Budget) -> Option<RealizationResult> {
        if residual >= budget.residual_tol {
            return None;
        }
        let membership = matrices.iter().enumerate().all(|(j, m)| (self.member)(j, m, budget));
        if !membership {
            return None;
        }
        let burnside = burnside_dim(&matrices, budget.rank_tol);
        let nullity = centralizer_nullity(&matrices, budget.rank_tol);
        let n = self.landscape.n;
        debug_assert!(burnside < n * n || nullity == 1, "irreducible tuple with nontrivial centralizer");
        Some(RealizationResult {
            conjugators,
            matrices,
            residual,
            burnside_dim: burnside,
            centralizer_nullity: nullity,
            class_membership_ok: membership,
            restart: None,
            iterations: 0,
        })
    }

    fn attempt(&self, start: Vec<CMatrix>, budget: &Budget) -> Attempt {
        let target = budget.residual_tol * 1e-4;
        match self.landscape.descend(start, budget.iters, target, budget.abort_cond) {
            None => Attempt::Uncertified,
            Some(DescentEnd::IllConditioned) => Attempt::IllConditioned,
            Some(DescentEnd::Finished(d)) => {
                match self.certify(d.conjugators, d.matrices, d.residual, budget) {
                    Some(mut r) => {
                        r.iterations = d.iterations;
                        Attempt::Certified(r)
                    }
                    None => Attempt::Uncertified,
                }
            }
        }
    }

    fn restart(&self, index: usize, budget: &Budget) -> Attempt {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        rng.set_stream(index as u64);
        let count = self.landscape.jordans.len();
        match random_conjugators(&mut rng, self.landscape.n, count, budget.start_cond_cap, 100) {
            None => Attempt::IllConditioned,
            Some(start) => match self.attempt(start, budget) {
                Attempt::Certified(mut r) => {
                    r.restart = Some(index);
                    Attempt::Certified(r)
                }
                other => other,
            },
        }
    }
}

/// Searches for a tuple in the prescribed classes with zero sum (additive)
/// or identity product (multiplicative).
///
/// Restarts are seeded by (seed, restart index) and run in chunks of
/// `budget.jobs`; the certified witness with the lowest restart index wins,
/// so the outcome does not depend on the worker count. An exhausted budget
/// yields `found: None`, which says nothing about existence.
pub fn realize(specs: &SpecTuple, budget: &Budget) -> Result<SearchOutcome> {
    let problem = build(specs, budget)?;
    let jobs = budget.jobs.max(1);
    let pool = if jobs > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| DspError::InvalidInput(format!("worker pool: {e}")))?,
        )
    } else {
        None
    };
    let mut run = 0;
    let mut ill = 0;
    let mut next = 0;
    while next < budget.restarts {
        let chunk: Vec<usize> = (next..(next + jobs).min(budget.restarts)).collect();
        next += chunk.len();
        let attempts: Vec<Attempt> = match &pool {
            Some(pool) => pool.install(|| chunk.par_iter().map(|&i| problem.restart(i, budget)).collect()),
            None => chunk.iter().map(|&i| problem.restart(i, budget)).collect(),
        };
        for attempt in attempts {
            run += 1;
            match attempt {
                Attempt::Certified(r) => {
                    return Ok(SearchOutcome { found: Some(r), restarts_run: run, ill_conditioned_restarts: ill })
                }
                Attempt::IllConditioned => ill += 1,
                Attempt::Uncertified => {}
            }
        }
    }
    if run > 0 && ill == run {
        return Err(DspError::IllConditioned);
    }
    Ok(SearchOutcome { found: None, restarts_run: run, ill_conditioned_restarts: ill })
}

/// Starts from given matrices, one per class: conjugators are recovered from
/// them, refined, and certified. Falls back to random restarts when the warm
/// start does not certify.
pub fn realize_from(specs: &SpecTuple, warm: &[CMatrix], budget: &Budget) -> Result<SearchOutcome> {
    let problem = build(specs, budget)?;
    let n = problem.landscape.n;
    if warm.len() != problem.landscape.jordans.len() || warm.iter().any(|m| m.shape() != (n, n)) {
        return Err(DspError::InvalidInput(format!(
            "warm start needs {} matrices of size {n}",
            problem.landscape.jordans.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    rng.set_stream(u64::MAX);
    let mut start = Vec::with_capacity(warm.len());
    for (j, (m, g)) in warm.iter().zip(&problem.landscape.jordans).enumerate() {
        let q = conjugator_towards(&mut rng, m, g, 1e-9)
            .filter(|q| condition_number(q) <= budget.abort_cond)
            .ok_or_else(|| DspError::InvalidInput(format!("warm start matrix {j} is not in its class")))?;
        start.push(q);
    }
    if let Attempt::Certified(r) = problem.attempt(start, budget) {
        return Ok(SearchOutcome { found: Some(r), restarts_run: 0, ill_conditioned_restarts: 0 });
    }
    realize(specs, budget)
}
