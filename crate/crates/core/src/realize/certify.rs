//! Independent checks run on candidate matrix tuples.

use nalgebra::DVector;
use num_complex::Complex64;

use super::linalg::{identity, kron, numerical_rank, singular_values, vectorize, CMatrix};
use crate::genericity::{ClassSpec, EigenScalar};

/// Dimension of the unital algebra generated by `matrices`.
///
/// Grows an orthonormal basis from the identity by right-multiplying every
/// basis element with every generator until nothing new appears. The algebra
/// is all of n×n exactly when the tuple is irreducible.
pub fn burnside_dim(matrices: &[CMatrix], tol: f64) -> usize {
    let Some(n) = matrices.first().map(|m| m.nrows()) else { return 1 };
    let generators: Vec<CMatrix> = matrices
        .iter()
        .map(|m| {
            let norm = m.norm();
            if norm > 0.0 {
                m / Complex64::new(norm, 0.0)
            } else {
                m.clone()
            }
        })
        .collect();
    let mut basis: Vec<DVector<Complex64>> = Vec::new();
    let mut words: Vec<CMatrix> = Vec::new();
    let start = identity(n);
    add_if_new(&mut basis, &mut words, start, tol);
    let mut frontier = 0;
    while frontier < words.len() && basis.len() < n * n {
        let w = words[frontier].clone();
        frontier += 1;
        for g in &generators {
            add_if_new(&mut basis, &mut words, &w * g, tol);
        }
    }
    basis.len()
}

fn add_if_new(basis: &mut Vec<DVector<Complex64>>, words: &mut Vec<CMatrix>, m: CMatrix, tol: f64) {
    let mut v = vectorize(&m);
    let scale = v.norm();
    if scale == 0.0 {
        return;
    }
    // Modified Gram–Schmidt, twice for stability.
    for _ in 0..2 {
        for b in basis.iter() {
            let c = b.dotc(&v);
            v -= b * c;
        }
    }
    let rest = v.norm();
    if rest > tol * scale {
        let unit = v / Complex64::new(rest, 0.0);
        basis.push(unit.clone());
        let n = m.nrows();
        words.push(CMatrix::from_column_slice(n, n, unit.as_slice()));
    }
}

/// Dimension of the space of matrices commuting with every member.
pub fn centralizer_nullity(matrices: &[CMatrix], rel_tol: f64) -> usize {
    let Some(n) = matrices.first().map(|m| m.nrows()) else { return 0 };
    let eye = identity(n);
    let n2 = n * n;
    let mut system = CMatrix::zeros(n2 * matrices.len(), n2);
    for (j, a) in matrices.iter().enumerate() {
        // vec(AX − XA) = (I ⊗ A − Aᵀ ⊗ I) vec(X).
        let block = kron(&eye, a) - kron(&a.transpose(), &eye);
        system.view_mut((j * n2, 0), (n2, n2)).copy_from(&block);
    }
    n2 - numerical_rank(&system, rel_tol)
}

/// Whether `m` lies (numerically) in the class described by `spec`: its
/// eigenvalues cluster around the prescribed ones with the right
/// multiplicities, and the ranks of (m − λ)^j match the block structure.
pub fn class_membership<S: EigenScalar>(m: &CMatrix, spec: &ClassSpec<S>, eigen_tol: f64, rank_tol: f64) -> bool {
    let n = spec.size();
    if m.shape() != (n, n) {
        return false;
    }
    let targets: Vec<Complex64> = spec.eigenvalues().iter().map(EigenScalar::to_complex).collect();
    let Some(computed) = m.clone().eigenvalues() else { return false };
    let mut clusters: Vec<Vec<Complex64>> = vec![Vec::new(); targets.len()];
    for z in computed.iter() {
        let nearest = (0..targets.len())
            .min_by(|&a, &b| (z - targets[a]).norm().total_cmp(&(z - targets[b]).norm()))
            .expect("at least one eigenvalue");
        clusters[nearest].push(*z);
    }
    let mults = spec.jnf().multiplicities();
    for ((cluster, target), m_l) in clusters.iter().zip(&targets).zip(&mults) {
        if cluster.len() != *m_l {
            return false;
        }
        let centroid = cluster.iter().sum::<Complex64>() / Complex64::new(*m_l as f64, 0.0);
        if (centroid - target).norm() > eigen_tol * target.norm().max(1.0) {
            return false;
        }
    }
    let scale = singular_values(m).first().copied().unwrap_or(0.0);
    for ((target, part), m_l) in targets.iter().zip(spec.jnf().slots()).zip(&mults) {
        let shifted = m - identity(n) * *target;
        let mut power = identity(n);
        for j in 1..=part.parts()[0] + 1 {
            power = &power * &shifted;
            let expected = n - m_l + part.power_rank(j);
            if power_rank(&power, j, rank_tol, scale + target.norm()) != expected {
                return false;
            }
        }
    }
    true
}

/// Rank of the j-th power with the threshold scaled by ‖m‖^j rather than by
/// the power itself, so powers that vanish up to round-off count as zero.
fn power_rank(power: &CMatrix, j: usize, rel_tol: f64, scale: f64) -> usize {
    let floor = rel_tol * scale.max(1.0).powi(j as i32);
    singular_values(power).iter().filter(|&&x| x > floor).count()
}
