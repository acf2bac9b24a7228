//! Partitions, Jordan normal forms and their conjugacy-class invariants.
//!
//! A [`Jnf`] records block sizes only. Eigenvalue slots are anonymous: two
//! forms compare equal when their multisets of partitions agree, whatever the
//! order in which the slots were listed.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{DspError, Result};

/// Block sizes of one eigenvalue, stored weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts `parts` into decreasing order; rejects zero parts and the empty list.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(DspError::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(DspError::InvalidPartition(format!("nonpositive part in {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// `m` blocks of size one.
    pub fn ones(m: usize) -> Self {
        assert!(m > 0, "empty partition");
        Partition(vec![1; m])
    }

    /// A single block of size `m`.
    pub fn single(m: usize) -> Self {
        assert!(m > 0, "empty partition");
        Partition(vec![m])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_all_ones(&self) -> bool {
        self.0[0] == 1
    }

    /// Conjugate partition: part `k` counts the blocks of size at least `k`.
    pub fn dual(&self) -> Partition {
        let largest = self.0[0];
        Partition((1..=largest).map(|k| self.0.iter().filter(|&&b| b >= k).count()).collect())
    }

    /// Σ (2i−1)·b_i over the decreasing part list, i counted from 1.
    pub fn centralizer_dim(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &b)| (2 * i + 1) * b).sum()
    }

    /// Rank of the `j`-th power of the nilpotent matrix with these blocks.
    pub fn power_rank(&self, j: usize) -> usize {
        self.0.iter().map(|&b| b.saturating_sub(j)).sum()
    }

    /// Decreases the `count` smallest blocks by one and drops blocks that
    /// reach zero. Returns `None` when nothing is left.
    pub fn shrink_smallest(&self, count: usize) -> Option<Partition> {
        debug_assert!(count <= self.0.len());
        let keep = self.0.len() - count;
        let mut parts: Vec<usize> = self.0[..keep].to_vec();
        parts.extend(self.0[keep..].iter().filter(|&&b| b > 1).map(|&b| b - 1));
        if parts.is_empty() {
            None
        } else {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            Some(Partition(parts))
        }
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for b in (1..=rest.min(max)).rev() {
                cur.push(b);
                go(rest - b, b, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A Jordan normal form: one partition per eigenvalue slot.
#[derive(Clone, Debug)]
pub struct Jnf {
    slots: Vec<Partition>,
}

impl Jnf {
    pub fn new(slots: Vec<Partition>) -> Result<Self> {
        if slots.is_empty() {
            return Err(DspError::InvalidJnf("no eigenvalue slots".into()));
        }
        Ok(Jnf { slots })
    }

    /// Parses raw block lists, one per slot.
    pub fn from_blocks(blocks: Vec<Vec<usize>>) -> Result<Self> {
        Jnf::new(blocks.into_iter().map(Partition::new).collect::<Result<_>>()?)
    }

    /// Diagonal form with the given eigenvalue multiplicities.
    pub fn diagonal(multiplicities: &[usize]) -> Result<Self> {
        if multiplicities.contains(&0) {
            return Err(DspError::InvalidJnf("zero multiplicity".into()));
        }
        Jnf::new(multiplicities.iter().map(|&m| Partition::ones(m)).collect())
    }

    /// `n` distinct eigenvalues.
    pub fn distinct(n: usize) -> Self {
        Jnf::diagonal(&vec![1; n]).expect("n > 0")
    }

    /// One eigenvalue with the given blocks.
    pub fn single_eigenvalue(blocks: Vec<usize>) -> Result<Self> {
        Jnf::new(vec![Partition::new(blocks)?])
    }

    pub fn slots(&self) -> &[Partition] {
        &self.slots
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn size(&self) -> usize {
        self.slots.iter().map(Partition::sum).sum()
    }

    /// Eigenvalue multiplicities, in slot order.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.slots.iter().map(Partition::sum).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.slots.iter().all(Partition::is_all_ones)
    }

    pub fn has_distinct_eigenvalues(&self) -> bool {
        self.slots.iter().all(|p| p.parts() == [1])
    }

    /// Dimension of the centralizer of a matrix with this form.
    pub fn centralizer_dim(&self) -> usize {
        self.slots.iter().map(Partition::centralizer_dim).sum()
    }

    /// Dimension of the conjugacy class, n² − centralizer dimension.
    pub fn class_dim(&self) -> usize {
        let n = self.size();
        n * n - self.centralizer_dim()
    }

    /// Largest number of blocks sharing one eigenvalue.
    pub fn max_block_count(&self) -> usize {
        self.slots.iter().map(Partition::len).max().unwrap_or(0)
    }

    /// min over λ of rank(Y − λI), i.e. n minus the largest block count.
    pub fn min_shifted_rank(&self) -> usize {
        self.size() - self.max_block_count()
    }

    /// The diagonal form whose multiplicities are the disjoint union of the
    /// dual partitions of every slot.
    pub fn corresponding_diagonal(&self) -> Jnf {
        let mut mults: Vec<usize> =
            self.slots.iter().flat_map(|p| p.dual().parts().to_vec()).collect();
        mults.sort_unstable_by(|a, b| b.cmp(a));
        Jnf::diagonal(&mults).expect("dual parts are positive")
    }

    /// Slots sorted into a canonical order.
    pub fn canonical(&self) -> Jnf {
        let mut slots = self.slots.clone();
        slots.sort_unstable_by(|a, b| b.cmp(a));
        Jnf { slots }
    }

    /// Every Jordan normal form of size `n`, each listed once (canonical order).
    pub fn all_of_size(n: usize) -> Vec<Jnf> {
        let pool: Vec<Partition> = (1..=n).rev().flat_map(Partition::all).collect();
        fn go(pool: &[Partition], start: usize, rest: usize, cur: &mut Vec<Partition>, out: &mut Vec<Jnf>) {
            if rest == 0 {
                out.push(Jnf { slots: cur.clone() });
                return;
            }
            for (i, p) in pool.iter().enumerate().skip(start) {
                if p.sum() <= rest {
                    cur.push(p.clone());
                    go(pool, i, rest - p.sum(), cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(&pool, 0, n, &mut Vec::new(), &mut out);
        out
    }

    /// The form with slot `slot` replaced; `None` removes the slot.
    pub(crate) fn with_slot(&self, slot: usize, replacement: Option<Partition>) -> Option<Jnf> {
        let mut slots = self.slots.clone();
        match replacement {
            Some(p) => slots[slot] = p,
            None => {
                slots.remove(slot);
            }
        }
        if slots.is_empty() {
            None
        } else {
            Some(Jnf { slots })
        }
    }

    fn is_canonical(&self) -> bool {
        self.slots.windows(2).all(|w| w[0] >= w[1])
    }

    fn sorted_slots(&self) -> Vec<&Partition> {
        let mut v: Vec<&Partition> = self.slots.iter().collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

impl PartialEq for Jnf {
    fn eq(&self, other: &Self) -> bool {
        if self.is_canonical() && other.is_canonical() {
            return self.slots == other.slots;
        }
        self.sorted_slots() == other.sorted_slots()
    }
}

impl Eq for Jnf {}

impl Hash for Jnf {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // A slice of references hashes like the slice itself.
        if self.is_canonical() {
            self.slots.hash(state);
        } else {
            self.sorted_slots().hash(state);
        }
    }
}

impl PartialOrd for Jnf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Jnf {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.is_canonical() && other.is_canonical() {
            return self.slots.cmp(&other.slots);
        }
        self.sorted_slots().cmp(&other.sorted_slots())
    }
}

impl fmt::Display for Jnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.slots.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Jnf {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.slots.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Jnf {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let slots = Vec::<Partition>::deserialize(d)?;
        Jnf::new(slots).map_err(serde::de::Error::custom)
    }
}

/// A tuple of `p + 1 ≥ 2` Jordan normal forms of one common size.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct JnfTuple {
    entries: Vec<Jnf>,
}

/// Per-entry invariants and the index of rigidity of a tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantSummary {
    pub n: usize,
    /// min over λ of rank(Y − λI), per entry.
    pub min_ranks: Vec<usize>,
    pub class_dims: Vec<usize>,
    pub centralizer_dims: Vec<usize>,
    pub rigidity_index: i64,
}

impl JnfTuple {
    pub fn new(entries: Vec<Jnf>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(DspError::InvalidTuple(format!(
                "need at least two entries, got {}",
                entries.len()
            )));
        }
        let n = entries[0].size();
        if let Some(bad) = entries.iter().find(|j| j.size() != n) {
            return Err(DspError::InvalidTuple(format!(
                "entry {bad} has size {}, expected {n}",
                bad.size()
            )));
        }
        Ok(JnfTuple { entries })
    }

    pub fn entries(&self) -> &[Jnf] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries[0].size()
    }

    /// Number of entries minus one.
    pub fn p(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn min_ranks(&self) -> Vec<usize> {
        self.entries.iter().map(Jnf::min_shifted_rank).collect()
    }

    pub fn class_dims(&self) -> Vec<usize> {
        self.entries.iter().map(Jnf::class_dim).collect()
    }

    /// κ = 2n² − Σ d_j.
    pub fn rigidity_index(&self) -> i64 {
        let n = self.size() as i64;
        2 * n * n - self.class_dims().iter().sum::<usize>() as i64
    }

    pub fn has_distinct_entry(&self) -> bool {
        self.entries.iter().any(Jnf::has_distinct_eigenvalues)
    }

    pub fn invariants(&self) -> InvariantSummary {
        InvariantSummary {
            n: self.size(),
            min_ranks: self.min_ranks(),
            class_dims: self.class_dims(),
            centralizer_dims: self.entries.iter().map(Jnf::centralizer_dim).collect(),
            rigidity_index: self.rigidity_index(),
        }
    }

    /// Entries sorted into a canonical order, each with canonical slots.
    pub fn canonical(&self) -> JnfTuple {
        let mut entries: Vec<Jnf> = self.entries.iter().map(Jnf::canonical).collect();
        entries.sort_unstable_by(|a, b| b.cmp(a));
        JnfTuple { entries }
    }
}

impl fmt::Display for JnfTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{j}")?;
        }
        Ok(())
    }
}

/// Outcome of comparing two classes in the closure order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subordination {
    Subordinate,
    NotSubordinate,
    /// Eigenvalues or their multiplicities differ.
    NotComparable,
}

/// Whether the class `lower` lies in the closure of the class `upper`.
///
/// Each class is given as (eigenvalue, blocks) pairs with pairwise distinct
/// eigenvalues. For every shared eigenvalue the power ranks
/// Σ max(b_i − j, 0) of `upper` must dominate those of `lower`; the common
/// summand n − m_λ cancels. Different classes have different rank
/// sequences, so the required strict inequality comes for free.
pub fn is_subordinate<E: PartialEq>(lower: &[(E, Partition)], upper: &[(E, Partition)]) -> Subordination {
    if lower.len() != upper.len() {
        return Subordination::NotComparable;
    }
    let mut pairs = Vec::with_capacity(lower.len());
    for (ev, lo) in lower {
        match upper.iter().find(|(e, _)| e == ev) {
            Some((_, up)) if up.sum() == lo.sum() => pairs.push((lo, up)),
            _ => return Subordination::NotComparable,
        }
    }
    let dominated = pairs.iter().all(|(lo, up)| {
        let top = lo.parts()[0].max(up.parts()[0]);
        (1..=top).all(|j| up.power_rank(j) >= lo.power_rank(j))
    });
    if dominated {
        Subordination::Subordinate
    } else {
        Subordination::NotSubordinate
    }
}
