//! Non-genericity relations.
//!
//! A relation picks, for a common cardinality k < n, k eigenvalues (with
//! multiplicity) from every class so that the picked values sum to zero,
//! resp. multiply to one. For each class and each k the achievable partial
//! values are tabulated by walking the count vectors; the classes are then
//! split into two halves whose combined tables are matched against each
//! other.

use std::collections::BTreeMap;

use serde::Serialize;

use super::scalar::{gcd_all, EigenScalar, MultiplicativeScalar};
use super::{common_size, ClassSpec, SpecTuple};
use crate::error::{DspError, Result};

/// Problems above this size are refused rather than searched.
pub const MAX_RELATION_SIZE: usize = 16;
/// Ceiling on the number of tabulated partial values per search.
pub const DEFAULT_STATE_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlotCount {
    pub slot: usize,
    pub count: usize,
}

/// The picked eigenvalues of a relation: per class, how many copies of
/// each slot's eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationWitness {
    pub k: usize,
    pub selections: Vec<Vec<SlotCount>>,
}

impl RelationWitness {
    fn from_counts(k: usize, counts: Vec<Vec<usize>>) -> Self {
        let selections = counts
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .enumerate()
                    .filter(|&(_, count)| count > 0)
                    .map(|(slot, count)| SlotCount { slot, count })
                    .collect()
            })
            .collect();
        RelationWitness { k, selections }
    }

    /// Re-evaluates the relation on `specs`.
    pub fn value<S: EigenScalar>(&self, specs: &[ClassSpec<S>]) -> S {
        specs.iter().zip(&self.selections).fold(S::identity(), |acc, (spec, sel)| {
            sel.iter().fold(acc, |acc, sc| acc.combine(&spec.eigenvalues()[sc.slot].times(sc.count)))
        })
    }
}

struct Choice<S> {
    value: S,
    /// Counts proportional to the multiplicities (c_l · n = m_l · k).
    proportional: bool,
    counts: Vec<usize>,
}

fn charge(budget: &mut usize, amount: usize) -> Result<()> {
    if amount > *budget {
        return Err(DspError::ResourceExceeded("relation search state budget".into()));
    }
    *budget -= amount;
    Ok(())
}

/// Distinct (value, proportional) outcomes of picking `k` eigenvalues from one class.
fn class_choices<S: EigenScalar>(spec: &ClassSpec<S>, k: usize, budget: &mut usize) -> Result<Vec<Choice<S>>> {
    let mults = spec.jnf().multiplicities();
    let n = spec.size();
    let mut seen: BTreeMap<(S, bool), Vec<usize>> = BTreeMap::new();
    let mut counts = vec![0; mults.len()];
    let mut visited = 0usize;

    #[allow(clippy::too_many_arguments)]
    fn walk<S: EigenScalar>(
        spec: &ClassSpec<S>,
        mults: &[usize],
        n: usize,
        k: usize,
        slot: usize,
        rest: usize,
        value: S,
        counts: &mut Vec<usize>,
        seen: &mut BTreeMap<(S, bool), Vec<usize>>,
        visited: &mut usize,
    ) {
        if slot == mults.len() {
            if rest == 0 {
                *visited += 1;
                let proportional = counts.iter().zip(mults).all(|(&c, &m)| c * n == m * k);
                seen.entry((value, proportional)).or_insert_with(|| counts.clone());
            }
            return;
        }
        let tail: usize = mults[slot + 1..].iter().sum();
        let lo = rest.saturating_sub(tail);
        for c in lo..=rest.min(mults[slot]) {
            counts[slot] = c;
            let v = value.combine(&spec.eigenvalues()[slot].times(c));
            walk(spec, mults, n, k, slot + 1, rest - c, v, counts, seen, visited);
        }
        counts[slot] = 0;
    }

    walk(spec, &mults, n, k, 0, k, S::identity(), &mut counts, &mut seen, &mut visited);
    charge(budget, visited)?;
    Ok(seen
        .into_iter()
        .map(|((value, proportional), counts)| Choice { value, proportional, counts })
        .collect())
}

type Table<S> = BTreeMap<(S, bool), Vec<usize>>;

/// Combined values over a group of classes, keyed by (value, any non-proportional
/// pick), each with one path of choice indices.
fn fold_half<S: EigenScalar>(choices: &[Vec<Choice<S>>], budget: &mut usize) -> Result<Table<S>> {
    let mut table: Table<S> = BTreeMap::new();
    table.insert((S::identity(), false), Vec::new());
    for opts in choices {
        let mut next: Table<S> = BTreeMap::new();
        for ((value, odd), path) in &table {
            for (i, c) in opts.iter().enumerate() {
                let key = (value.combine(&c.value), *odd || !c.proportional);
                next.entry(key).or_insert_with(|| {
                    let mut p = path.clone();
                    p.push(i);
                    p
                });
            }
        }
        charge(budget, next.len())?;
        table = next;
    }
    Ok(table)
}

fn search<S: EigenScalar>(
    specs: &[ClassSpec<S>],
    budget: usize,
    require_non_proportional: bool,
) -> Result<Option<RelationWitness>> {
    let n = common_size(specs)?;
    if n > MAX_RELATION_SIZE {
        return Err(DspError::ResourceExceeded(format!("size {n} exceeds {MAX_RELATION_SIZE}")));
    }
    let mut budget = budget;
    for k in 1..n {
        let choices = specs.iter().map(|s| class_choices(s, k, &mut budget)).collect::<Result<Vec<_>>>()?;
        let mid = choices.len() / 2;
        let left = fold_half(&choices[..mid], &mut budget)?;
        let right = fold_half(&choices[mid..], &mut budget)?;
        for ((value, odd), lpath) in &left {
            let target = value.inverse();
            for flag in [false, true] {
                if require_non_proportional && !odd && !flag {
                    continue;
                }
                if let Some(rpath) = right.get(&(target.clone(), flag)) {
                    let counts = lpath
                        .iter()
                        .chain(rpath)
                        .enumerate()
                        .map(|(j, &i)| choices[j][i].counts.clone())
                        .collect();
                    return Ok(Some(RelationWitness::from_counts(k, counts)));
                }
            }
        }
    }
    Ok(None)
}

/// A non-genericity relation, if any; `None` means the eigenvalues are generic.
pub fn find_relation<S: EigenScalar>(specs: &[ClassSpec<S>]) -> Result<Option<RelationWitness>> {
    search(specs, DEFAULT_STATE_BUDGET, false)
}

pub fn find_relation_with_budget<S: EigenScalar>(
    specs: &[ClassSpec<S>],
    budget: usize,
) -> Result<Option<RelationWitness>> {
    search(specs, budget, false)
}

/// A relation in which some class picks counts that are not proportional to
/// its multiplicities, i.e. one not obtained by dividing all multiplicities
/// by a common factor.
pub fn find_unexpected_relation<S: EigenScalar>(
    specs: &[ClassSpec<S>],
    budget: usize,
) -> Result<Option<RelationWitness>> {
    search(specs, budget, true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorReduction {
    pub divisor: usize,
    /// Product of the eigenvalues after dividing multiplicities by `divisor`.
    pub product: MultiplicativeScalar,
    /// Whether `product` is a root of unity of order exactly `divisor`.
    pub primitive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdReduction {
    /// gcd of all eigenvalue multiplicities of all classes.
    pub d: usize,
    pub xi: Option<MultiplicativeScalar>,
    pub xi_primitive: Option<bool>,
    /// Reductions by every divisor of `d` above one (multiplicative mode).
    pub divisors: Vec<DivisorReduction>,
    /// Whether dividing all multiplicities by some divisor of `d` yields a relation.
    pub forced_relation: bool,
}

fn reduced_product(specs: &[ClassSpec<MultiplicativeScalar>], divisor: usize) -> MultiplicativeScalar {
    specs.iter().fold(MultiplicativeScalar::identity(), |acc, spec| {
        spec.eigenvalues()
            .iter()
            .zip(spec.jnf().multiplicities())
            .fold(acc, |acc, (s, m)| acc.combine(&s.times(m / divisor)))
    })
}

pub fn gcd_reduction(specs: &SpecTuple) -> Result<GcdReduction> {
    if !specs.check_evs()? {
        return Err(DspError::InvalidInput("trace/determinant condition fails".into()));
    }
    match specs {
        SpecTuple::Additive(s) => {
            let d = gcd_all(s.iter().flat_map(|c| c.jnf().multiplicities()));
            Ok(GcdReduction { d, xi: None, xi_primitive: None, divisors: Vec::new(), forced_relation: d > 1 })
        }
        SpecTuple::Multiplicative(s) => {
            let d = gcd_all(s.iter().flat_map(|c| c.jnf().multiplicities()));
            if d == 1 {
                return Ok(GcdReduction {
                    d,
                    xi: None,
                    xi_primitive: None,
                    divisors: Vec::new(),
                    forced_relation: false,
                });
            }
            let divisors: Vec<DivisorReduction> = (2..=d)
                .filter(|e| d % e == 0)
                .map(|e| {
                    let product = reduced_product(s, e);
                    DivisorReduction { divisor: e, primitive: product.is_primitive_root(e), product }
                })
                .collect();
            let reduced = reduced_product(s, d);
            let primitive = reduced.is_primitive_root(d);
            Ok(GcdReduction {
                d,
                xi: Some(reduced),
                xi_primitive: Some(primitive),
                forced_relation: divisors.iter().any(|r| r.product.is_identity()),
                divisors,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralizedRank {
    /// Minimum of Σ rk(b_j M_j − I) under the constraint on the b_j.
    pub minimum: usize,
    /// 2n.
    pub bound: usize,
    pub holds: bool,
}

/// Evaluates min Σ_j rk(b_j M_j − I) over b_1⋯b_{p+1} = 1 (resp.
/// Σ_j rk(A_j − b_j I) over Σ b_j = 0) exactly.
///
/// rk(b M − I) is n minus the number of blocks at the eigenvalue 1/b, and n
/// when 1/b is not an eigenvalue. Either every class picks an eigenvalue and
/// the picks must combine to the identity, or some class is left free and
/// absorbs the constraint.
pub fn check_generalized_rank<S: EigenScalar>(specs: &[ClassSpec<S>], budget: usize) -> Result<GeneralizedRank> {
    let n = common_size(specs)?;
    if specs.len() < 2 {
        return Err(DspError::InvalidInput("need at least two classes".into()));
    }
    let entries = specs.len();
    let max_blocks: Vec<usize> = specs.iter().map(|s| s.jnf().max_block_count()).collect();
    let free = entries * n - (max_blocks.iter().sum::<usize>() - max_blocks.iter().min().unwrap());

    let mut best: BTreeMap<S, usize> = BTreeMap::new();
    best.insert(S::identity(), 0);
    let mut budget = budget;
    for spec in specs {
        let mut next: BTreeMap<S, usize> = BTreeMap::new();
        for (value, blocks) in &best {
            for (ev, part) in spec.eigenvalues().iter().zip(spec.jnf().slots()) {
                let v = value.combine(ev);
                let b = blocks + part.len();
                let e = next.entry(v).or_insert(b);
                *e = (*e).max(b);
            }
        }
        charge(&mut budget, next.len())?;
        best = next;
    }
    let pinned = best.get(&S::identity()).map(|b| entries * n - b);
    let minimum = pinned.map_or(free, |p| p.min(free));
    Ok(GeneralizedRank { minimum, bound: 2 * n, holds: minimum >= 2 * n })
}
