//! Eigenvalue assignments and the relations among them.

mod relation;
mod sample;
pub mod scalar;

use serde::{Deserialize, Serialize};

use crate::error::{DspError, Result};
use crate::jnf::{is_subordinate, Jnf, JnfTuple, Partition, Subordination};

pub use relation::{
    check_generalized_rank, find_relation, find_relation_with_budget, find_unexpected_relation,
    gcd_reduction, DivisorReduction, GcdReduction, GeneralizedRank, RelationWitness,
    DEFAULT_STATE_BUDGET, MAX_RELATION_SIZE,
};
pub use sample::{sample_generic, SampleOptions};
pub use scalar::{AdditiveScalar, EigenScalar, MultiplicativeScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Matrices with zero sum.
    #[default]
    Additive,
    /// Invertible matrices with product the identity.
    Multiplicative,
}

/// A conjugacy class: a Jordan normal form with one eigenvalue per slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec<S> {
    jnf: Jnf,
    eigenvalues: Vec<S>,
}

impl<S: EigenScalar> ClassSpec<S> {
    pub fn new(jnf: Jnf, eigenvalues: Vec<S>) -> Result<Self> {
        if eigenvalues.len() != jnf.slot_count() {
            return Err(DspError::InvalidInput(format!(
                "{} eigenvalues for {} slots of {jnf}",
                eigenvalues.len(),
                jnf.slot_count()
            )));
        }
        for (i, a) in eigenvalues.iter().enumerate() {
            if eigenvalues[i + 1..].contains(a) {
                return Err(DspError::InvalidInput(format!("eigenvalue {a} repeated in {jnf}")));
            }
        }
        Ok(ClassSpec { jnf, eigenvalues })
    }

    pub fn jnf(&self) -> &Jnf {
        &self.jnf
    }

    pub fn eigenvalues(&self) -> &[S] {
        &self.eigenvalues
    }

    pub fn size(&self) -> usize {
        self.jnf.size()
    }

    /// (eigenvalue, blocks) pairs.
    pub fn labeled(&self) -> Vec<(S, Partition)> {
        self.eigenvalues.iter().cloned().zip(self.jnf.slots().iter().cloned()).collect()
    }

    /// All eigenvalues combined with multiplicity: the trace or determinant.
    pub fn total(&self) -> S {
        self.eigenvalues
            .iter()
            .zip(self.jnf.multiplicities())
            .fold(S::identity(), |acc, (s, m)| acc.combine(&s.times(m)))
    }

    /// Whether this class lies in the closure of `upper`.
    pub fn is_subordinate_to(&self, upper: &ClassSpec<S>) -> Subordination {
        is_subordinate(&self.labeled(), &upper.labeled())
    }
}

/// Trace-sum zero, resp. determinant-product one, across all classes.
pub fn check_evs<S: EigenScalar>(specs: &[ClassSpec<S>]) -> Result<bool> {
    common_size(specs)?;
    let total = specs.iter().fold(S::identity(), |acc, c| acc.combine(&c.total()));
    Ok(total.is_identity())
}

pub(crate) fn common_size<S: EigenScalar>(specs: &[ClassSpec<S>]) -> Result<usize> {
    let n = specs.first().ok_or_else(|| DspError::InvalidInput("no classes".into()))?.size();
    if specs.iter().any(|c| c.size() != n) {
        return Err(DspError::InvalidInput("classes differ in size".into()));
    }
    Ok(n)
}

pub fn jnf_tuple<S: EigenScalar>(specs: &[ClassSpec<S>]) -> Result<JnfTuple> {
    JnfTuple::new(specs.iter().map(|c| c.jnf.clone()).collect())
}

/// Eigenvalue data of a whole problem, in one of the two modes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecTuple {
    Additive(Vec<ClassSpec<AdditiveScalar>>),
    Multiplicative(Vec<ClassSpec<MultiplicativeScalar>>),
}

impl SpecTuple {
    pub fn mode(&self) -> Mode {
        match self {
            SpecTuple::Additive(_) => Mode::Additive,
            SpecTuple::Multiplicative(_) => Mode::Multiplicative,
        }
    }

    pub fn jnf_tuple(&self) -> Result<JnfTuple> {
        match self {
            SpecTuple::Additive(s) => jnf_tuple(s),
            SpecTuple::Multiplicative(s) => jnf_tuple(s),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            SpecTuple::Additive(s) => s.len(),
            SpecTuple::Multiplicative(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Eigenvalues of each class as text, in slot order.
    pub fn eigenvalue_texts(&self) -> Vec<Vec<String>> {
        fn texts<S: EigenScalar>(specs: &[ClassSpec<S>]) -> Vec<Vec<String>> {
            specs.iter().map(|c| c.eigenvalues.iter().map(ToString::to_string).collect()).collect()
        }
        match self {
            SpecTuple::Additive(s) => texts(s),
            SpecTuple::Multiplicative(s) => texts(s),
        }
    }

    pub fn check_evs(&self) -> Result<bool> {
        match self {
            SpecTuple::Additive(s) => check_evs(s),
            SpecTuple::Multiplicative(s) => check_evs(s),
        }
    }
}

/// λ ↦ e^{2πiλ} on real rational eigenvalues.
pub fn exp_map(spec: &ClassSpec<AdditiveScalar>) -> Result<ClassSpec<MultiplicativeScalar>> {
    let mut images = Vec::with_capacity(spec.eigenvalues.len());
    for lambda in &spec.eigenvalues {
        if !num_traits::Zero::is_zero(&lambda.im) {
            return Err(DspError::UnsupportedScalar(lambda.to_string()));
        }
        let image = MultiplicativeScalar::new(num_traits::One::one(), lambda.re.clone())?;
        if images.contains(&image) {
            return Err(DspError::SlotCollision(format!("{lambda} maps onto an earlier image {image}")));
        }
        images.push(image);
    }
    ClassSpec::new(spec.jnf.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn add(v: &str) -> AdditiveScalar {
        v.parse().unwrap()
    }

    fn mul(v: &str) -> MultiplicativeScalar {
        v.parse().unwrap()
    }

    #[test]
    fn class_spec_validation() {
        let j = Jnf::diagonal(&[1, 1]).unwrap();
        assert!(ClassSpec::new(j.clone(), vec![add("1")]).is_err());
        assert!(ClassSpec::new(j.clone(), vec![add("1"), add("1")]).is_err());
        assert!(ClassSpec::new(j, vec![add("1"), add("2")]).is_ok());
    }

    #[test]
    fn evs_additive_strata_example() {
        // a + c + g = b + d + h = 0.
        let d = Jnf::distinct(2);
        let specs = vec![
            ClassSpec::new(d.clone(), vec![add("1"), add("2")]).unwrap(),
            ClassSpec::new(d.clone(), vec![add("3"), add("-5")]).unwrap(),
            ClassSpec::new(d, vec![add("-4"), add("3")]).unwrap(),
        ];
        assert!(check_evs(&specs).unwrap());
    }

    #[test]
    fn evs_all_zero() {
        let z = ClassSpec::new(Jnf::single_eigenvalue(vec![2, 1]).unwrap(), vec![add("0")]).unwrap();
        assert!(check_evs(&[z.clone(), z]).unwrap());
    }

    #[test]
    fn evs_multiplicative_four_by_four() {
        // One eigenvalue of multiplicity four per class: i^4 = 1.
        let j = Jnf::single_eigenvalue(vec![2, 2]).unwrap();
        let specs: Vec<_> =
            ["i", "1", "1", "1"].iter().map(|v| ClassSpec::new(j.clone(), vec![mul(v)]).unwrap()).collect();
        assert!(check_evs(&specs).unwrap());
        // With multiplicity two the determinant product is i^2 = -1.
        let j2 = Jnf::single_eigenvalue(vec![2]).unwrap();
        let specs: Vec<_> =
            ["i", "1", "1", "1"].iter().map(|v| ClassSpec::new(j2.clone(), vec![mul(v)]).unwrap()).collect();
        assert!(!check_evs(&specs).unwrap());
    }

    #[test]
    fn exp_map_examples() {
        let d = Jnf::distinct(2);
        let spec = ClassSpec::new(d.clone(), vec![add("0"), add("1/2")]).unwrap();
        let image = exp_map(&spec).unwrap();
        assert_eq!(image.eigenvalues(), &[MultiplicativeScalar::identity(), mul("-1")]);
        let clash = ClassSpec::new(d.clone(), vec![add("0"), add("1")]).unwrap();
        assert!(matches!(exp_map(&clash), Err(DspError::SlotCollision(_))));
        let complex = ClassSpec::new(d, vec![add("0"), add("1/2+1 i")]).unwrap();
        assert!(matches!(exp_map(&complex), Err(DspError::UnsupportedScalar(_))));
    }

    #[test]
    fn subordination_of_classes() {
        let lower = ClassSpec::new(Jnf::diagonal(&[2, 1]).unwrap(), vec![add("0"), add("1")]).unwrap();
        let upper = ClassSpec::new(Jnf::from_blocks(vec![vec![2], vec![1]]).unwrap(), vec![add("0"), add("1")])
            .unwrap();
        assert_eq!(lower.is_subordinate_to(&upper), Subordination::Subordinate);
        assert_eq!(upper.is_subordinate_to(&lower), Subordination::NotSubordinate);
        let swapped = ClassSpec::new(Jnf::diagonal(&[2, 1]).unwrap(), vec![add("1"), add("0")]).unwrap();
        assert_eq!(swapped.is_subordinate_to(&upper), Subordination::NotComparable);
    }
}
