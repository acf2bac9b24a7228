//! Named families of tuples and the verdicts attached to them.

use serde::Serialize;

use crate::decider::{check_conditions, decide_generic, Verdict};
use crate::error::{DspError, Result};
use crate::genericity::{
    common_size, find_unexpected_relation, gcd_reduction, jnf_tuple, ClassSpec, EigenScalar, Mode, SpecTuple,
};
use crate::jnf::{is_subordinate, Jnf, JnfTuple, Partition, Subordination};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RigidFamily {
    Hypergeometric,
    OddFamily,
    EvenFamily,
    ExtraCase,
    None,
}

fn sorted_vectors(vectors: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = vectors
        .iter()
        .map(|m| {
            let mut m = m.clone();
            m.sort_unstable_by(|a, b| b.cmp(a));
            m
        })
        .collect();
    v.sort();
    v
}

/// Multiplicity vectors of each diagonal rigid family at size `n`, when the
/// family exists there.
pub fn rigid_family_vectors(family: RigidFamily, n: usize) -> Option<Vec<Vec<usize>>> {
    let ones = vec![1; n];
    match family {
        RigidFamily::Hypergeometric if n >= 2 => Some(vec![vec![n - 1, 1], ones.clone(), ones]),
        RigidFamily::OddFamily if n >= 3 && n % 2 == 1 => {
            let h = (n - 1) / 2;
            Some(vec![vec![h + 1, h], vec![h, h, 1], ones])
        }
        RigidFamily::EvenFamily if n >= 4 && n.is_multiple_of(2) => {
            let h = n / 2;
            Some(vec![vec![h, h], vec![h, h - 1, 1], ones])
        }
        RigidFamily::ExtraCase if n == 6 => Some(vec![vec![4, 2], vec![2, 2, 2], ones]),
        _ => None,
    }
}

/// Recognizes the four diagonal rigid triples, up to reordering entries and
/// eigenvalues. The first matching family wins, so n = 3 reads as
/// hypergeometric rather than the odd family.
pub fn match_rigid_family(tuple: &JnfTuple) -> RigidFamily {
    if tuple.p() != 2 || !tuple.entries().iter().all(Jnf::is_diagonal) {
        return RigidFamily::None;
    }
    let n = tuple.size();
    let have = sorted_vectors(&tuple.entries().iter().map(Jnf::multiplicities).collect::<Vec<_>>());
    [RigidFamily::Hypergeometric, RigidFamily::OddFamily, RigidFamily::EvenFamily, RigidFamily::ExtraCase]
        .into_iter()
        .find(|&f| rigid_family_vectors(f, n).is_some_and(|want| sorted_vectors(&want) == have))
        .unwrap_or(RigidFamily::None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialKind {
    SpecialA,
    SpecialB,
    SpecialC,
    SpecialD,
    AlmostA,
    AlmostB,
    AlmostC,
    AlmostD,
    None,
}

impl SpecialKind {
    pub fn is_special(self) -> bool {
        matches!(self, SpecialKind::SpecialA | SpecialKind::SpecialB | SpecialKind::SpecialC | SpecialKind::SpecialD)
    }

    pub fn is_almost_special(self) -> bool {
        matches!(self, SpecialKind::AlmostA | SpecialKind::AlmostB | SpecialKind::AlmostC | SpecialKind::AlmostD)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpecialCase {
    pub kind: SpecialKind,
    pub k: Option<usize>,
}

impl SpecialCase {
    pub const NONE: SpecialCase = SpecialCase { kind: SpecialKind::None, k: None };
}

/// Uniform block sizes per entry for the four special shapes.
const SPECIAL_SHAPES: [(SpecialKind, SpecialKind, &[usize]); 4] = [
    (SpecialKind::SpecialA, SpecialKind::AlmostA, &[2, 2, 2, 2]),
    (SpecialKind::SpecialB, SpecialKind::AlmostB, &[3, 3, 3]),
    (SpecialKind::SpecialC, SpecialKind::AlmostC, &[4, 4, 2]),
    (SpecialKind::SpecialD, SpecialKind::AlmostD, &[6, 3, 2]),
];

fn uniform(block: usize, n: usize) -> Partition {
    Partition::new(vec![block; n / block]).expect("nonempty blocks")
}

/// Block partitions of the special (or, with `almost`, almost special) case of
/// the given kind at multiplier `k ≥ 2`. Entries come in table order.
pub fn special_partitions(kind: SpecialKind, k: usize) -> Option<Vec<Partition>> {
    if k < 2 {
        return None;
    }
    let (sizes, almost) = SPECIAL_SHAPES.iter().find_map(|(s, a, sizes)| {
        if *s == kind {
            Some((*sizes, false))
        } else if *a == kind {
            Some((*sizes, true))
        } else {
            None
        }
    })?;
    let n = k * sizes[0];
    let mut parts: Vec<Partition> = sizes.iter().map(|&l| uniform(l, n)).collect();
    if almost {
        // Two blocks of the largest size l become l + 1 and l − 1.
        let l = sizes[0];
        let mut blocks = vec![l; n / l - 2];
        blocks.push(l + 1);
        blocks.push(l - 1);
        blocks.retain(|&b| b > 0);
        parts[0] = Partition::new(blocks).expect("nonempty blocks");
    }
    Some(parts)
}

/// Matches a tuple of single-eigenvalue classes against the special and almost
/// special block tables, up to reordering.
pub fn match_special(tuple: &JnfTuple) -> SpecialCase {
    if tuple.entries().iter().any(|j| j.slot_count() != 1) {
        return SpecialCase::NONE;
    }
    let mut have: Vec<Partition> = tuple.entries().iter().map(|j| j.slots()[0].clone()).collect();
    have.sort();
    let n = tuple.size();
    for (special, almost, sizes) in SPECIAL_SHAPES {
        if sizes.len() != have.len() || !n.is_multiple_of(sizes[0]) {
            continue;
        }
        let k = n / sizes[0];
        for kind in [special, almost] {
            if let Some(mut want) = special_partitions(kind, k) {
                want.sort();
                if want == have {
                    return SpecialCase { kind, k: Some(k) };
                }
            }
        }
    }
    SpecialCase::NONE
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    /// Irreducible tuples.
    Dsp,
    /// Tuples with trivial centralizer.
    WeakDsp,
}

/// Verdict for unipotent (multiplicative) or nilpotent (additive) classes,
/// where each entry has a single eigenvalue.
pub fn decide_unipotent_nilpotent(tuple: &JnfTuple, problem: Problem, mode: Mode) -> Result<Verdict> {
    if tuple.entries().iter().any(|j| j.slot_count() != 1) {
        return Err(DspError::NotApplicable("every class must have a single eigenvalue".into()));
    }
    if tuple.size() == 1 {
        return Ok(Verdict::Solvable);
    }
    if !check_conditions(tuple).rank_sum {
        return Ok(Verdict::NotSolvable);
    }
    let case = match_special(tuple);
    Ok(if case.kind.is_special() {
        Verdict::NotSolvable
    } else if case.kind.is_almost_special() {
        match (problem, mode) {
            (Problem::WeakDsp, _) => Verdict::Solvable,
            (Problem::Dsp, Mode::Additive) => Verdict::NotSolvable,
            (Problem::Dsp, Mode::Multiplicative) => Verdict::Unknown,
        }
    } else {
        Verdict::Solvable
    })
}

/// Satisfies the rank condition and the iterated reduction succeeds.
pub fn is_good(tuple: &JnfTuple) -> bool {
    decide_generic(tuple).verdict == Verdict::Solvable
}

/// A factorization n = l·n₁ exhibiting a special-diagonal tuple: each class
/// degenerates to n₁ copies of a diagonal class of size l.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialDiagonalWitness {
    pub l: usize,
    pub n1: usize,
    pub quotient: SpecTuple,
}

fn quotient_classes<S: EigenScalar>(specs: &[ClassSpec<S>], n1: usize) -> Option<Vec<ClassSpec<S>>> {
    let mut out = Vec::with_capacity(specs.len());
    for spec in specs {
        let mults = spec.jnf().multiplicities();
        if mults.iter().any(|m| m % n1 != 0) {
            return None;
        }
        let reduced: Vec<usize> = mults.iter().map(|m| m / n1).collect();
        let replicated: Vec<_> =
            spec.eigenvalues().iter().cloned().zip(mults.iter().map(|&m| Partition::ones(m))).collect();
        debug_assert_eq!(is_subordinate(&replicated, &spec.labeled()), Subordination::Subordinate);
        let jnf = Jnf::diagonal(&reduced).ok()?;
        out.push(ClassSpec::new(jnf, spec.eigenvalues().to_vec()).ok()?);
    }
    Some(out)
}

fn find_special_diagonal<S: EigenScalar>(specs: &[ClassSpec<S>]) -> Result<Option<(usize, Vec<ClassSpec<S>>)>> {
    let n = common_size(specs)?;
    for n1 in (2..=n).filter(|d| n % d == 0) {
        let Some(quotient) = quotient_classes(specs, n1) else { continue };
        let total = quotient.iter().fold(S::identity(), |acc, c| acc.combine(&c.total()));
        if total.is_identity() && is_good(&jnf_tuple(&quotient)?) {
            return Ok(Some((n1, quotient)));
        }
    }
    Ok(None)
}

/// Whether a rigid tuple of classes is special-diagonal. The smallest valid
/// n₁ is reported.
pub fn is_special_diagonal(specs: &SpecTuple) -> Result<Option<SpecialDiagonalWitness>> {
    let tuple = specs.jnf_tuple()?;
    let index = tuple.rigidity_index();
    if index != 2 {
        return Err(DspError::KappaNotTwo(index));
    }
    let n = tuple.size();
    let found = match specs {
        SpecTuple::Additive(s) => find_special_diagonal(s)?.map(|(n1, q)| (n1, SpecTuple::Additive(q))),
        SpecTuple::Multiplicative(s) => find_special_diagonal(s)?.map(|(n1, q)| (n1, SpecTuple::Multiplicative(q))),
    };
    Ok(found.map(|(n1, quotient)| SpecialDiagonalWitness { l: n / n1, n1, quotient }))
}

/// Weak problem for rigid tuples: special-diagonal tuples are not solvable;
/// otherwise nothing is claimed.
pub fn weak_verdict_rigid(specs: &SpecTuple) -> Result<(Verdict, Option<SpecialDiagonalWitness>)> {
    let witness = is_special_diagonal(specs)?;
    let verdict = if witness.is_some() { Verdict::NotSolvable } else { Verdict::Unknown };
    Ok((verdict, witness))
}

/// Weak problem for κ = 0 tuples of good JNFs whose multiplicities share a
/// factor d > 1 and whose only relations come from dividing by that factor.
pub fn weak_verdict_index_zero(specs: &SpecTuple, budget: usize) -> Result<Verdict> {
    let tuple = specs.jnf_tuple()?;
    let index = tuple.rigidity_index();
    if index != 0 {
        return Err(DspError::NotApplicable(format!("rigidity index is {index}, not 0")));
    }
    if !is_good(&tuple) {
        return Err(DspError::NotApplicable("the JNFs are not good".into()));
    }
    let reduction = gcd_reduction(specs)?;
    if reduction.d <= 1 {
        return Err(DspError::NotApplicable("multiplicities have no common factor".into()));
    }
    let unexpected = match specs {
        SpecTuple::Additive(s) => find_unexpected_relation(s, budget),
        SpecTuple::Multiplicative(s) => find_unexpected_relation(s, budget),
    };
    match unexpected {
        Ok(None) => {}
        Ok(Some(_)) => {
            return Err(DspError::NotApplicable("a relation not induced by the common factor exists".into()))
        }
        Err(DspError::ResourceExceeded(why)) => {
            return Err(DspError::NotApplicable(format!("hypothesis check exceeded its budget: {why}")))
        }
        Err(e) => return Err(e),
    }
    Ok(match specs {
        SpecTuple::Additive(_) => Verdict::NotSolvable,
        SpecTuple::Multiplicative(_) => {
            if reduction.xi_primitive == Some(true) {
                Verdict::Solvable
            } else {
                Verdict::NotSolvable
            }
        }
    })
}
