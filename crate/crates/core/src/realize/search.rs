//! Damped Gauss–Newton over conjugators.
//!
//! Each class is A_j = Q_j G_j Q_j⁻¹ with G_j its Jordan matrix. A step
//! updates Q_j ← (I + X_j) Q_j, which moves A_j by [X_j, A_j] to first order,
//! and takes the minimum-norm damped least-squares X for the residual.

use nalgebra::Cholesky;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::linalg::{condition_number, frobenius, identity, kron, product, unvectorize, vectorize, CMatrix};
use crate::genericity::Mode;

pub(crate) struct Landscape {
    pub mode: Mode,
    pub n: usize,
    pub jordans: Vec<CMatrix>,
}

pub(crate) struct Descent {
    pub conjugators: Vec<CMatrix>,
    pub matrices: Vec<CMatrix>,
    pub residual: f64,
    pub iterations: usize,
}

pub(crate) enum DescentEnd {
    Finished(Descent),
    /// A conjugator's condition number crossed the abort threshold.
    IllConditioned,
}

impl Landscape {
    pub fn matrices(&self, conjugators: &[CMatrix]) -> Option<Vec<CMatrix>> {
        conjugators
            .iter()
            .zip(&self.jordans)
            .map(|(q, g)| q.clone().try_inverse().map(|inv| q * g * inv))
            .collect()
    }

    /// Σ A_j, resp. M_1 ⋯ M_m − I.
    pub fn residual_matrix(&self, matrices: &[CMatrix]) -> CMatrix {
        match self.mode {
            Mode::Additive => matrices.iter().fold(CMatrix::zeros(self.n, self.n), |acc, m| acc + m),
            Mode::Multiplicative => product(matrices, self.n) - identity(self.n),
        }
    }

    fn jacobian(&self, matrices: &[CMatrix]) -> CMatrix {
        let n = self.n;
        let n2 = n * n;
        let eye = identity(n);
        let mut jac = CMatrix::zeros(n2, n2 * matrices.len());
        for (j, a) in matrices.iter().enumerate() {
            let block = match self.mode {
                // vec(XA − AX) = (Aᵀ ⊗ I − I ⊗ A) vec(X).
                Mode::Additive => kron(&a.transpose(), &eye) - kron(&eye, a),
                // L (XM − MX) R with L, R the products before and after M.
                Mode::Multiplicative => {
                    let left = product(&matrices[..j], n);
                    let right = product(&matrices[j + 1..], n);
                    kron(&(a * &right).transpose(), &left) - kron(&right.transpose(), &(&left * a))
                }
            };
            jac.view_mut((0, j * n2), (n2, n2)).copy_from(&block);
        }
        jac
    }

    pub fn descend(&self, start: Vec<CMatrix>, iters: usize, target: f64, abort_cond: f64) -> Option<DescentEnd> {
        let n = self.n;
        let n2 = n * n;
        let mut conjugators = start;
        let mut matrices = self.matrices(&conjugators)?;
        let mut res = self.residual_matrix(&matrices);
        let mut cost = frobenius(&res);
        let mut jac = self.jacobian(&matrices);
        let mut damping = 1e-3 * (jac.norm_squared() / n2 as f64).max(1e-12);
        let mut iterations = 0;
        while iterations < iters && cost >= target {
            iterations += 1;
            let gram = &jac * jac.adjoint() + identity(n2) * Complex64::new(damping, 0.0);
            let Some(chol) = Cholesky::new(gram) else {
                damping *= 4.0;
                continue;
            };
            let step = -(jac.adjoint() * chol.solve(&vectorize(&res)));
            let candidate: Option<Vec<CMatrix>> = conjugators
                .iter()
                .enumerate()
                .map(|(j, q)| {
                    let x = unvectorize(&step.as_slice()[j * n2..(j + 1) * n2], n);
                    let next = (identity(n) + x) * q;
                    let scale = frobenius(&next) / (n as f64).sqrt();
                    (scale > 0.0 && scale.is_finite()).then(|| next / Complex64::new(scale, 0.0))
                })
                .collect();
            let trial = candidate.and_then(|qs| self.matrices(&qs).map(|ms| (qs, ms)));
            match trial {
                Some((qs, ms)) => {
                    let r = self.residual_matrix(&ms);
                    let c = frobenius(&r);
                    if c.is_finite() && c < cost {
                        if qs.iter().any(|q| condition_number(q) > abort_cond) {
                            return Some(DescentEnd::IllConditioned);
                        }
                        conjugators = qs;
                        matrices = ms;
                        res = r;
                        cost = c;
                        jac = self.jacobian(&matrices);
                        damping = (damping / 3.0).max(1e-15);
                    } else {
                        damping *= 4.0;
                    }
                }
                None => damping *= 4.0,
            }
            if damping > 1e16 {
                break;
            }
        }
        Some(DescentEnd::Finished(Descent { conjugators, matrices, residual: cost, iterations }))
    }
}

fn unit_disc(rng: &mut ChaCha8Rng) -> Complex64 {
    let radius: f64 = rng.random::<f64>().sqrt();
    let angle: f64 = rng.random::<f64>() * std::f64::consts::TAU;
    Complex64::from_polar(radius, angle)
}

/// Random conjugators with entries uniform on the unit disc, redrawn while
/// the condition number exceeds `cap`. `None` after `attempts` failures.
pub(crate) fn random_conjugators(
    rng: &mut ChaCha8Rng,
    n: usize,
    count: usize,
    cap: f64,
    attempts: usize,
) -> Option<Vec<CMatrix>> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let q = (0..attempts)
            .map(|_| CMatrix::from_fn(n, n, |_, _| unit_disc(rng)))
            .find(|q| condition_number(q) <= cap)?;
        out.push(q);
    }
    Some(out)
}

/// A conjugator carrying `jordan` to `target`: a random element of the
/// solution space of target·Q = Q·jordan.
pub(crate) fn conjugator_towards(
    rng: &mut ChaCha8Rng,
    target: &CMatrix,
    jordan: &CMatrix,
    null_tol: f64,
) -> Option<CMatrix> {
    let n = target.nrows();
    let eye = identity(n);
    // vec(TQ − QG) = (I ⊗ T − Gᵀ ⊗ I) vec(Q).
    let system = kron(&eye, target) - kron(&jordan.transpose(), &eye);
    let kernel = super::linalg::null_space(&system, null_tol);
    if kernel.is_empty() {
        return None;
    }
    let mut v = nalgebra::DVector::<Complex64>::zeros(n * n);
    for k in &kernel {
        v += k * unit_disc(rng);
    }
    Some(unvectorize(v.as_slice(), n))
}
