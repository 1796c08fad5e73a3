//! Pure states and density matrices over `n` spin-½ particles.
//!
//! Basis index convention: particle 0 owns the most significant bit, and a
//! bit value of 0 means spin up along z.

use super::eigen::hermitian_eigen;
use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const NORM_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;

/// Upper bound on particle count for dense storage.
pub const MAX_PARTICLES: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PureState {
    n: usize,
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Checked constructor: `2^n` amplitudes with unit norm.
    pub fn new(n: usize, amplitudes: Vec<C64>) -> Result<Self> {
        check_particle_count(n)?;
        if amplitudes.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: amplitudes.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::BadNorm { norm_sq });
        }
        Ok(Self { n, amplitudes })
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn normalize(n: usize, mut amplitudes: Vec<C64>) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq <= 0.0 || !norm_sq.is_finite() {
            return Err(Error::BadNorm { norm_sq });
        }
        let inv = 1.0 / norm_sq.sqrt();
        amplitudes.iter_mut().for_each(|a| *a *= inv);
        Self::new(n, amplitudes)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_particle_count(n)?;
        if index >= 1 << n {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n} particles"
            )));
        }
        let mut amplitudes = vec![ZERO; 1 << n];
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self { n, amplitudes })
    }

    pub(crate) fn from_parts_unchecked(n: usize, amplitudes: Vec<C64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n);
        Self { n, amplitudes }
    }

    pub fn particles(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|`, the phase-insensitive comparison between states.
    pub fn overlap_modulus(&self, other: &PureState) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix {
            n: self.n,
            matrix: ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
                .expect("same length"),
        }
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|b| a * b));
        }
        PureState {
            n: self.n + other.n,
            amplitudes,
        }
    }
}

/// Mixed state over `n` particles.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(n: usize, matrix: ComplexMatrix) -> Result<Self> {
        check_particle_count(n)?;
        if matrix.dim() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: matrix.dim(),
            });
        }
        matrix.check_hermitian()?;
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidArgument(format!(
                "density matrix trace is {trace}, expected 1"
            )));
        }
        let eig = hermitian_eigen(&matrix)?;
        let smallest = eig.values.last().copied().unwrap_or(0.0);
        if smallest < -PSD_TOL {
            return Err(Error::InvalidArgument(format!(
                "density matrix has negative eigenvalue {smallest:e}"
            )));
        }
        Ok(Self { n, matrix })
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        check_particle_count(n)?;
        let dim = 1 << n;
        Ok(Self {
            n,
            matrix: ComplexMatrix::identity(dim).scale(C64::new(1.0 / dim as f64, 0.0)),
        })
    }

    /// Weighted sum `Σ w_k |ψ_k⟩⟨ψ_k|` of pure states.
    pub fn mixture(components: &[(f64, &PureState)]) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
        let n = first.1.particles();
        let mut matrix = ComplexMatrix::zeros(1 << n);
        for (w, psi) in components {
            if psi.particles() != n {
                return Err(Error::DimensionMismatch {
                    expected: 1 << n,
                    found: psi.dim(),
                });
            }
            matrix = &matrix + &psi.projector().matrix.scale(C64::new(*w, 0.0));
        }
        Self::new(n, matrix)
    }

    pub(crate) fn from_parts_unchecked(n: usize, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.dim(), 1 << n);
        Self { n, matrix }
    }

    pub fn particles(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            n: self.n + other.n,
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }
}

impl From<&PureState> for DensityMatrix {
    fn from(psi: &PureState) -> Self {
        psi.projector()
    }
}

/// Kronecker product with the left operand as the high-significance factor.
pub trait TensorProduct {
    fn tensor_with(&self, other: &Self) -> Self;
}

impl TensorProduct for ComplexMatrix {
    fn tensor_with(&self, other: &Self) -> Self {
        self.kron(other)
    }
}

impl TensorProduct for PureState {
    fn tensor_with(&self, other: &Self) -> Self {
        self.tensor(other)
    }
}

impl TensorProduct for DensityMatrix {
    fn tensor_with(&self, other: &Self) -> Self {
        self.tensor(other)
    }
}

pub fn tensor_product<T: TensorProduct>(a: &T, b: &T) -> T {
    a.tensor_with(b)
}

/// Sorted, deduplicated `keep` set validated as a non-empty strict subset of `0..n`.
pub(crate) fn validate_subset(n: usize, keep: &[usize]) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::BadSubset("particle set is empty".into()));
    }
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::BadSubset(format!("duplicate particle index in {keep:?}")));
    }
    if let Some(&bad) = sorted.iter().find(|&&k| k >= n) {
        return Err(Error::BadSubset(format!(
            "particle {bad} out of range for {n} particles"
        )));
    }
    if sorted.len() == n {
        return Err(Error::BadSubset("set must be a strict subset".into()));
    }
    Ok(sorted)
}

/// Scatters the bits of `sub` onto the positions of `particles` in an `n`-particle index.
pub(crate) fn scatter_bits(n: usize, particles: &[usize], sub: usize) -> usize {
    let m = particles.len();
    particles.iter().enumerate().fold(0, |acc, (pos, &p)| {
        let bit = (sub >> (m - 1 - pos)) & 1;
        acc | (bit << (n - 1 - p))
    })
}

/// Reduced state on the `keep` particles (0-based), in their original relative order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n;
    let keep = validate_subset(n, keep)?;
    let traced: Vec<usize> = (0..n).filter(|p| !keep.contains(p)).collect();
    let kept_dim = 1 << keep.len();
    let traced_dim = 1 << traced.len();
    let traced_offsets: Vec<usize> = (0..traced_dim)
        .map(|t| scatter_bits(n, &traced, t))
        .collect();
    let kept_offsets: Vec<usize> = (0..kept_dim).map(|k| scatter_bits(n, &keep, k)).collect();

    let matrix = ComplexMatrix::from_fn(kept_dim, |r, c| {
        traced_offsets
            .iter()
            .map(|&t| rho.matrix.get(kept_offsets[r] | t, kept_offsets[c] | t))
            .sum()
    });
    Ok(DensityMatrix {
        n: keep.len(),
        matrix,
    })
}

fn check_particle_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PARTICLES {
        return Err(Error::InvalidArgument(format!(
            "particle count must be in 1..={MAX_PARTICLES}, got {n}"
        )));
    }
    Ok(())
}
