//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the classical real Jacobi rotation, so a single
//! complex unitary `J` zeroes the pivot pair while the matrix stays Hermitian.

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Sweeps stop once the off-diagonal Frobenius norm drops below this,
/// relative to `max(1, ‖H‖_F)`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 100;
pub const MAX_DIM: usize = 4096;

#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, matching `values`.
    pub vectors: ComplexMatrix,
    pub sweeps: usize,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    /// Largest eigenvalue in absolute value.
    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// `Σ λ_k v_k v_k†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.vectors.dim();
        let mut out = ComplexMatrix::zeros(n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let v = self.vector(k);
            for i in 0..n {
                for j in 0..n {
                    let z = out.get(i, j) + v[i] * v[j].conj() * lambda;
                    out.set(i, j, z);
                }
            }
        }
        out
    }
}

pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    h.check_hermitian()?;
    let n = h.dim();
    if n > MAX_DIM {
        return Err(Error::InvalidArgument(format!(
            "eigensolver supports dimension up to {MAX_DIM}, got {n}"
        )));
    }

    // exact Hermitian copy
    let mut a = ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            C64::new(h.get(i, i).re, 0.0)
        } else {
            (h.get(i, j) + h.get(j, i).conj()) * 0.5
        }
    });
    let mut v = ComplexMatrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * h.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    while off_diagonal_norm(&a) > threshold {
        if sweeps == MAX_SWEEPS {
            log::warn!(
                "Jacobi eigensolver stopped after {MAX_SWEEPS} sweeps (off-diagonal norm {:e})",
                off_diagonal_norm(&a)
            );
            break;
        }
        sweeps += 1;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep their first-occurrence order
    order.sort_by(|&i, &j| a.get(j, j).re.total_cmp(&a.get(i, i).re));
    let values = order.iter().map(|&i| a.get(i, i).re).collect();
    let vectors = ComplexMatrix::from_fn(n, |row, col| v.get(row, order[col]));
    Ok(HermitianEigen {
        values,
        vectors,
        sweeps,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            sum += a.get(i, j).norm_sqr();
        }
    }
    (2.0 * sum).sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let n = a.dim();
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let phase = apq / mag;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J = diag(1, e^{-iα}) · [[c, s], [-s, c]] on the (p, q) plane
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    // A ← A J and V ← V J
    for m in [&mut *a, &mut *v] {
        for k in 0..n {
            let kp = m.get(k, p);
            let kq = m.get(k, q);
            m.set(k, p, kp * c + kq * jqp);
            m.set(k, q, kp * s + kq * jqq);
        }
    }
    // A ← J† A
    for k in 0..n {
        let pk = a.get(p, k);
        let qk = a.get(q, k);
        a.set(p, k, pk * c + qk * jqp.conj());
        a.set(q, k, pk * s + qk * jqq.conj());
    }

    a.set(p, q, C64::new(0.0, 0.0));
    a.set(q, p, C64::new(0.0, 0.0));
    a.set(p, p, C64::new(app - t * mag, 0.0));
    a.set(q, q, C64::new(aqq + t * mag, 0.0));
}
