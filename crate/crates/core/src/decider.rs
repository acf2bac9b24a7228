//! Solvability for generic eigenvalues.
//!
//! The three integer conditions on a tuple of Jordan normal forms are
//!
//! * dimension: Σ d_j ≥ 2n² − 2
//! * rank: Σ_{i≠j} r_i ≥ n for every j
//! * rank sum: Σ r_j ≥ 2n
//!
//! When the first two hold, the third fails and n > 1, the reduction step
//! maps the tuple to one of size n₁ = Σ r_j − n: in every entry pick an
//! eigenvalue with the most blocks, shrink its n − n₁ smallest blocks by one
//! and drop empty blocks. The index of rigidity is unchanged by the step. For
//! generic eigenvalues the problem is solvable exactly when the rank
//! condition holds and iterating the step ends at a tuple satisfying the
//! rank-sum condition or of size one.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{DspError, Result};
use crate::jnf::{Jnf, JnfTuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Solvable,
    NotSolvable,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub n: usize,
    /// Σ d_j ≥ 2n² − 2.
    pub dimension: bool,
    /// Σ d_j > 2n² − 2.
    pub dimension_strict: bool,
    /// Σ_{i≠j} r_i ≥ n for all j.
    pub rank: bool,
    /// Σ r_j ≥ 2n.
    pub rank_sum: bool,
}

pub fn check_conditions(tuple: &JnfTuple) -> ConditionCheck {
    conditions_from(tuple.size(), &tuple.min_ranks(), tuple.class_dims().iter().sum())
}

fn conditions_from(n: usize, ranks: &[usize], total_dim: usize) -> ConditionCheck {
    let total_rank: usize = ranks.iter().sum();
    let bound = 2 * n * n - 2;
    ConditionCheck {
        n,
        dimension: total_dim >= bound,
        dimension_strict: total_dim > bound,
        rank: ranks.iter().all(|&r| total_rank - r >= n),
        rank_sum: total_rank >= 2 * n,
    }
}

/// Why iteration of the reduction step stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    RankSumHolds,
    SizeOne,
    ReductionUndefined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub input: JnfTuple,
    /// Slot reduced in each entry.
    pub chosen_slots: Vec<usize>,
    pub next_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub terminal: JnfTuple,
    pub termination: Termination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecisionReport {
    pub verdict: Verdict,
    pub conditions: ConditionCheck,
    pub rigidity_index: i64,
    pub trace: ReductionTrace,
    /// 2 − κ, present when the verdict is solvable.
    pub expected_moduli_dimension: Option<i64>,
    pub provenance: &'static str,
}

/// Checks that the reduction step is defined and returns the next size n₁.
pub fn reduction_target(tuple: &JnfTuple) -> Result<usize> {
    target_from(&check_conditions(tuple), &tuple.min_ranks())
        .map_err(|why| DspError::ReductionUndefined(format!("{why} for {tuple}")))
}

fn target_from(c: &ConditionCheck, ranks: &[usize]) -> std::result::Result<usize, String> {
    let n = c.n;
    if n <= 1 {
        return Err("size is one".into());
    } else if c.rank_sum {
        return Err("rank-sum condition already holds".into());
    } else if !c.dimension {
        return Err("dimension condition fails".into());
    } else if !c.rank {
        return Err("rank condition fails".into());
    }
    let next = ranks.iter().sum::<usize>() - n;
    if next == 0 || next >= n {
        return Err(format!("target size {next} out of range for n = {n}"));
    }
    Ok(next)
}

/// Slots of `jnf` attaining the largest block count.
pub fn maximizer_slots(jnf: &Jnf) -> Vec<usize> {
    let top = jnf.max_block_count();
    (0..jnf.slot_count()).filter(|&l| jnf.slots()[l].len() == top).collect()
}

/// Largest block count first, then largest multiplicity, then lowest index.
pub fn default_choice(tuple: &JnfTuple) -> Vec<usize> {
    tuple
        .entries()
        .iter()
        .map(|jnf| {
            let mut best = maximizer_slots(jnf)[0];
            for l in maximizer_slots(jnf) {
                if jnf.slots()[l].sum() > jnf.slots()[best].sum() {
                    best = l;
                }
            }
            best
        })
        .collect()
}

fn shrink_entry(jnf: &Jnf, slot: usize, count: usize) -> Result<Jnf> {
    let shrunk = jnf.slots()[slot].shrink_smallest(count);
    jnf.with_slot(slot, shrunk)
        .ok_or_else(|| DspError::ReductionUndefined(format!("entry {jnf} reduced to size zero")))
}

/// One application of the reduction step. `choice` names the slot to reduce
/// in every entry; `None` uses [`default_choice`].
pub fn reduction_step(tuple: &JnfTuple, choice: Option<&[usize]>) -> Result<JnfTuple> {
    let next = reduction_target(tuple)?;
    let n = tuple.size();
    let choice = match choice {
        Some(c) => {
            validate_choice(tuple, c)?;
            c.to_vec()
        }
        None => default_choice(tuple),
    };
    let entries = tuple
        .entries()
        .iter()
        .zip(&choice)
        .map(|(jnf, &slot)| shrink_entry(jnf, slot, n - next))
        .collect::<Result<Vec<_>>>()?;
    let out = JnfTuple::new(entries)?;
    debug_assert_eq!(out.size(), next);
    Ok(out)
}

fn validate_choice(tuple: &JnfTuple, choice: &[usize]) -> Result<()> {
    if choice.len() != tuple.entries().len() {
        return Err(DspError::InvalidChoice(format!(
            "{} slots given for {} entries",
            choice.len(),
            tuple.entries().len()
        )));
    }
    for (j, (jnf, &slot)) in tuple.entries().iter().zip(choice).enumerate() {
        if !maximizer_slots(jnf).contains(&slot) {
            return Err(DspError::InvalidChoice(format!(
                "slot {slot} of entry {j} ({jnf}) does not carry the most blocks"
            )));
        }
    }
    Ok(())
}

/// Iterates the reduction step with the default choice until it stops.
pub fn reduce(tuple: &JnfTuple) -> ReductionTrace {
    let mut steps = Vec::new();
    let mut current = tuple.clone();
    loop {
        let termination = if current.size() == 1 {
            Some(Termination::SizeOne)
        } else if check_conditions(&current).rank_sum {
            Some(Termination::RankSumHolds)
        } else {
            None
        };
        if let Some(termination) = termination {
            return ReductionTrace { steps, terminal: current, termination };
        }
        let choice = default_choice(&current);
        match reduction_step(&current, Some(&choice)) {
            Ok(next) => {
                steps.push(ReductionStep { input: current, chosen_slots: choice, next_size: next.size() });
                current = next;
            }
            Err(_) => {
                return ReductionTrace { steps, terminal: current, termination: Termination::ReductionUndefined };
            }
        }
    }
}

/// Solvability of the problem for generic eigenvalues.
pub fn decide_generic(tuple: &JnfTuple) -> DecisionReport {
    let conditions = check_conditions(tuple);
    let trace = reduce(tuple);
    let index = tuple.rigidity_index();
    let solvable = tuple.size() == 1
        || (conditions.rank
            && matches!(trace.termination, Termination::RankSumHolds | Termination::SizeOne));
    let verdict = if solvable { Verdict::Solvable } else { Verdict::NotSolvable };
    DecisionReport {
        verdict,
        conditions,
        rigidity_index: index,
        trace,
        expected_moduli_dimension: solvable.then_some(2 - index),
        provenance: "generic-eigenvalue criterion: rank condition plus iterated reduction",
    }
}

/// Weak problem when some entry has n distinct eigenvalues: solvable iff the
/// dimension and rank conditions hold.
pub fn decide_weak_distinct(tuple: &JnfTuple) -> Result<DecisionReport> {
    if !tuple.has_distinct_entry() {
        return Err(DspError::NotApplicable("no entry has distinct eigenvalues".into()));
    }
    let conditions = check_conditions(tuple);
    let index = tuple.rigidity_index();
    let solvable = tuple.size() == 1 || (conditions.dimension && conditions.rank);
    Ok(DecisionReport {
        verdict: if solvable { Verdict::Solvable } else { Verdict::NotSolvable },
        conditions,
        rigidity_index: index,
        trace: reduce(tuple),
        expected_moduli_dimension: solvable.then_some(2 - index),
        provenance: "weak problem with a distinct-eigenvalue entry: dimension and rank conditions",
    })
}

/// Terminations reached over every sequence of maximizer choices.
pub fn explore_choices(tuple: &JnfTuple) -> BTreeSet<Termination> {
    ChoiceExplorer::default().explore(tuple)
}

/// [`explore_choices`] with memos kept across calls, for sweeping many
/// tuples whose reductions share intermediate tuples.
///
/// Canonical forms are interned so that tuples become sorted id lists.
#[derive(Default)]
pub struct ChoiceExplorer {
    ids: HashMap<Jnf, u32>,
    // Per id: the form, its size, minimal shifted rank and class dimension.
    forms: Vec<(Jnf, usize, usize, usize)>,
    memo: HashMap<Vec<u32>, BTreeSet<Termination>>,
    // Distinct shrunk forms of an entry; `None` when a choice empties it.
    shrinks: HashMap<(u32, usize), Vec<Option<u32>>>,
}

impl ChoiceExplorer {
    pub fn explore(&mut self, tuple: &JnfTuple) -> BTreeSet<Termination> {
        let mut ids: Vec<u32> = tuple.entries().iter().map(|j| self.intern(&j.canonical())).collect();
        ids.sort_unstable();
        // Roots are rarely revisited; only reduced tuples go into the memo.
        self.terminations(&ids)
    }

    fn intern(&mut self, canonical: &Jnf) -> u32 {
        if let Some(&id) = self.ids.get(canonical) {
            return id;
        }
        let id = self.forms.len() as u32;
        self.forms.push((canonical.clone(), canonical.size(), canonical.min_shifted_rank(), canonical.class_dim()));
        self.ids.insert(canonical.clone(), id);
        id
    }

    fn lookup(&mut self, ids: Vec<u32>) -> BTreeSet<Termination> {
        if let Some(hit) = self.memo.get(&ids) {
            return hit.clone();
        }
        let out = self.terminations(&ids);
        self.memo.insert(ids, out.clone());
        out
    }

    fn shrunk_forms(&mut self, id: u32, count: usize) -> Vec<Option<u32>> {
        if let Some(hit) = self.shrinks.get(&(id, count)) {
            return hit.clone();
        }
        let jnf = self.forms[id as usize].0.clone();
        let shrunk: BTreeSet<Option<Jnf>> = maximizer_slots(&jnf)
            .into_iter()
            .map(|slot| shrink_entry(&jnf, slot, count).ok().map(|j| j.canonical()))
            .collect();
        let forms: Vec<Option<u32>> = shrunk.iter().map(|o| o.as_ref().map(|j| self.intern(j))).collect();
        self.shrinks.insert((id, count), forms.clone());
        forms
    }

    fn terminations(&mut self, ids: &[u32]) -> BTreeSet<Termination> {
        let mut out = BTreeSet::new();
        let n = self.forms[ids[0] as usize].1;
        let ranks: Vec<usize> = ids.iter().map(|&i| self.forms[i as usize].2).collect();
        let dim = ids.iter().map(|&i| self.forms[i as usize].3).sum();
        let c = conditions_from(n, &ranks, dim);
        if n == 1 {
            out.insert(Termination::SizeOne);
            return out;
        }
        if c.rank_sum {
            out.insert(Termination::RankSumHolds);
            return out;
        }
        let Ok(next) = target_from(&c, &ranks) else {
            out.insert(Termination::ReductionUndefined);
            return out;
        };
        // Cartesian product of the distinct shrunk forms per entry.
        let mut partial: Vec<Vec<u32>> = vec![Vec::new()];
        for &id in ids {
            let opts = self.shrunk_forms(id, n - next);
            if opts.contains(&None) {
                out.insert(Termination::ReductionUndefined);
            }
            partial = partial
                .iter()
                .flat_map(|prefix| {
                    opts.iter().flatten().map(move |&j| {
                        let mut v = prefix.clone();
                        v.push(j);
                        v
                    })
                })
                .collect();
        }
        let nexts: BTreeSet<Vec<u32>> = partial
            .into_iter()
            .map(|mut v| {
                v.sort_unstable();
                v
            })
            .collect();
        for next_ids in nexts {
            out.extend(self.lookup(next_ids));
        }
        out
    }
}
