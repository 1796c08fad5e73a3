use crate::direction::Direction;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;
use std::ops::{Add, Mul, Sub};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Tolerance used for the Hermiticity precondition.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    /// Builds a matrix from nested rows of `(re, im)` pairs.
    pub fn from_rows(rows: &[&[(f64, f64)]]) -> Result<Self> {
        let dim = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&(re, im)| C64::new(re, im)))
            .collect();
        Self::new(dim, entries)
    }

    /// Outer product `|a⟩⟨b|`.
    pub fn outer(a: &[C64], b: &[C64]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        let dim = a.len();
        Ok(Self::from_fn(dim, |i, j| a[i] * b[j].conj()))
    }

    pub fn pauli_x() -> Self {
        Self::from_fn(2, |i, j| if i != j { ONE } else { ZERO })
    }

    pub fn pauli_y() -> Self {
        Self {
            dim: 2,
            entries: vec![ZERO, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO],
        }
    }

    pub fn pauli_z() -> Self {
        Self {
            dim: 2,
            entries: vec![ONE, ZERO, ZERO, -ONE],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    /// `max |A[i][j] − conj(A[j][i])|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub(crate) fn check_hermitian(&self) -> Result<()> {
        let deviation = self.hermiticity_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(())
    }

    /// Largest element-wise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(self
            .entries
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.entries[k * n..(k + 1) * n];
                for (o, b) in out[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { dim: n, entries: out })
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }

    /// Kronecker product with `self` as the high-significance factor.
    pub fn kron(&self, other: &Self) -> Self {
        let (m, n) = (self.dim, other.dim);
        let dim = m * n;
        let mut entries = vec![ZERO; dim * dim];
        for i1 in 0..m {
            for j1 in 0..m {
                let a = self.get(i1, j1);
                for i2 in 0..n {
                    let row = (i1 * n + i2) * dim + j1 * n;
                    for j2 in 0..n {
                        entries[row + j2] = a * other.get(i2, j2);
                    }
                }
            }
        }
        Self { dim, entries }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on mismatched dimensions; use [`ComplexMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("dimension mismatch")
    }
}

/// `σ(e) = sinθ cosφ σx + sinθ sinφ σy + cosθ σz`.
pub fn spin_operator(d: &Direction) -> ComplexMatrix {
    let theta = d.theta.rem_euclid(TAU);
    let phi = d.phi.rem_euclid(TAU);
    let (st, ct) = theta.sin_cos();
    ComplexMatrix {
        dim: 2,
        entries: vec![
            C64::new(ct, 0.0),
            C64::from_polar(st, -phi),
            C64::from_polar(st, phi),
            C64::new(-ct, 0.0),
        ],
    }
}

/// `σ(e₁) ⊗ σ(e₂) ⊗ …` over the given directions, first direction most significant.
pub fn spin_product(dirs: &[Direction]) -> ComplexMatrix {
    dirs.iter()
        .map(spin_operator)
        .reduce(|acc, s| acc.kron(&s))
        .unwrap_or_else(|| ComplexMatrix::identity(1))
}
