//! Spin correlation functions: closed forms and the operator expectations
//! they are checked against.

use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::linalg::{spin_product, ComplexMatrix, DensityMatrix, PureState, C64};
use crate::states::{branch_probability, Branch, TriorthogonalSpec, ZERO_PROBABILITY};
use serde::{Deserialize, Serialize};

const IMAG_RESIDUE_TOL: f64 = 1e-10;

/// A state an observable can be averaged over.
pub trait Expectation {
    fn particles(&self) -> usize;

    /// `⟨O⟩` for a Hermitian `op` of matching dimension.
    fn expectation(&self, op: &ComplexMatrix) -> Result<f64>;
}

impl Expectation for PureState {
    fn particles(&self) -> usize {
        PureState::particles(self)
    }

    fn expectation(&self, op: &ComplexMatrix) -> Result<f64> {
        check_operator(self.dim(), op)?;
        let applied = op.apply(self.amplitudes())?;
        let value: C64 = self
            .amplitudes()
            .iter()
            .zip(&applied)
            .map(|(a, b)| a.conj() * b)
            .sum();
        real_part(value)
    }
}

impl Expectation for DensityMatrix {
    fn particles(&self) -> usize {
        DensityMatrix::particles(self)
    }

    fn expectation(&self, op: &ComplexMatrix) -> Result<f64> {
        let rho = self.matrix();
        check_operator(rho.dim(), op)?;
        let n = rho.dim();
        let mut value = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                value += rho.get(i, j) * op.get(j, i);
            }
        }
        real_part(value)
    }
}

pub fn expectation<S: Expectation + ?Sized>(state: &S, op: &ComplexMatrix) -> Result<f64> {
    state.expectation(op)
}

fn check_operator(dim: usize, op: &ComplexMatrix) -> Result<()> {
    if op.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: op.dim(),
        });
    }
    op.check_hermitian()
}

fn real_part(value: C64) -> Result<f64> {
    debug_assert!(
        value.im.abs() <= IMAG_RESIDUE_TOL * value.re.abs().max(1.0),
        "expectation of a Hermitian operator has imaginary part {}",
        value.im
    );
    Ok(value.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrelationKind {
    Unconditional,
    ConditionalPlus,
    ConditionalMinus,
}

impl From<Branch> for CorrelationKind {
    fn from(b: Branch) -> Self {
        match b {
            Branch::Plus => CorrelationKind::ConditionalPlus,
            Branch::Minus => CorrelationKind::ConditionalMinus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRecord {
    pub directions: Vec<Direction>,
    pub value: f64,
    pub kind: CorrelationKind,
}

/// `(c₁² + (−1)^N c₂²) z₁⋯z_N cosϑ₁⋯cosϑ_N` for the leading `N = dirs.len()`
/// particles. The prefactor is 1 for even `N`; for odd `N` the two branches
/// contribute with opposite signs.
pub fn unconditional_correlation_closed(
    spec: &TriorthogonalSpec,
    dirs: &[Direction],
) -> Result<CorrelationRecord> {
    let n = dirs.len();
    if n == 0 || n >= spec.particles() {
        return Err(Error::BadSubset(format!(
            "need directions for 1..{} leading particles, got {n}",
            spec.particles()
        )));
    }
    let weight = if n.is_multiple_of(2) {
        1.0
    } else {
        spec.c1() * spec.c1() - spec.c2() * spec.c2()
    };
    let value = weight
        * dirs
            .iter()
            .zip(spec.labels())
            .map(|(d, z)| z.sign() * d.theta.cos())
            .product::<f64>();
    Ok(CorrelationRecord {
        directions: dirs.to_vec(),
        value,
        kind: CorrelationKind::Unconditional,
    })
}

/// Correlation of particles 1 and 2 within the subensemble selected by the
/// outcome of particle 3 along `e3`:
///
/// `γ cosϑ₁cosϑ₂ ± z₃ (c₁c₂/p±) sinϑ₁ sinϑ₂ sinϑ₃ cos(φ₁ + γφ₂ + z₁z₃φ₃)`.
pub fn conditional_correlation_closed(
    spec: &TriorthogonalSpec,
    e1: &Direction,
    e2: &Direction,
    e3: &Direction,
    branch: Branch,
) -> Result<CorrelationRecord> {
    if spec.particles() != 3 {
        return Err(Error::InvalidArgument(format!(
            "closed-form conditional correlation is for three particles, got {}",
            spec.particles()
        )));
    }
    let p = branch_probability(spec, std::slice::from_ref(e3), branch)?;
    if p <= ZERO_PROBABILITY {
        return Err(Error::ZeroProbability { probability: p });
    }
    let gamma = spec.gamma();
    let z1 = spec.label(0).sign();
    let z3 = spec.label(2).sign();
    let local = gamma * e1.theta.cos() * e2.theta.cos();
    let interference = branch.sign() * z3 * (spec.c1() * spec.c2() / p)
        * e1.theta.sin()
        * e2.theta.sin()
        * e3.theta.sin()
        * (e1.phi + gamma * e2.phi + z1 * z3 * e3.phi).cos();
    Ok(CorrelationRecord {
        directions: vec![*e1, *e2],
        value: local + interference,
        kind: branch.into(),
    })
}

/// `⟨σ(e₁)⊗…⊗σ(e_k)⟩` evaluated through the full operator.
pub fn correlation<S: Expectation + ?Sized>(state: &S, dirs: &[Direction]) -> Result<f64> {
    if dirs.len() != state.particles() {
        return Err(Error::DimensionMismatch {
            expected: state.particles(),
            found: dirs.len(),
        });
    }
    state.expectation(&spin_product(dirs))
}

/// All `3^n` Pauli correlations `T[i₁…i_n] = ⟨σ_{i₁}⊗…⊗σ_{i_n}⟩` of a state.
///
/// Any product correlation is then the contraction of `T` with the unit
/// vectors of the measurement axes, which is far cheaper than rebuilding the
/// operator when the same state is probed many times.
#[derive(Debug, Clone)]
pub struct CorrelationTensor {
    n: usize,
    values: Vec<f64>,
}

impl CorrelationTensor {
    pub fn new<S: Expectation + ?Sized>(state: &S) -> Result<Self> {
        let n = state.particles();
        let paulis = [
            ComplexMatrix::pauli_x(),
            ComplexMatrix::pauli_y(),
            ComplexMatrix::pauli_z(),
        ];
        let count = 3usize.pow(n as u32);
        let mut values = Vec::with_capacity(count);
        for flat in 0..count {
            let mut op: Option<ComplexMatrix> = None;
            for pos in (0..n).rev() {
                let axis = (flat / 3usize.pow(pos as u32)) % 3;
                op = Some(match op {
                    None => paulis[axis].clone(),
                    Some(acc) => acc.kron(&paulis[axis]),
                });
            }
            values.push(state.expectation(&op.expect("n >= 1"))?);
        }
        Ok(Self { n, values })
    }

    pub fn particles(&self) -> usize {
        self.n
    }

    /// Contracts the tensor with the given axes (first axis most significant).
    pub fn correlation(&self, dirs: &[Direction]) -> f64 {
        assert_eq!(dirs.len(), self.n, "one direction per particle");
        let units: Vec<[f64; 3]> = dirs.iter().map(Direction::unit_vector).collect();
        let mut acc = self.values.clone();
        // contract the least significant index first
        for u in units.iter().rev() {
            acc = acc
                .chunks_exact(3)
                .map(|c| c[0] * u[0] + c[1] * u[1] + c[2] * u[2])
                .collect();
        }
        acc[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direction::SpinLabel::{Down, Up};
    use crate::states::{make_triorthogonal, reduced_density};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    #[test]
    fn up_sigma_z() {
        let up = PureState::basis(1, 0).unwrap();
        assert_eq!(expectation(&up, &ComplexMatrix::pauli_z()).unwrap(), 1.0);
    }

    #[test]
    fn maximally_mixed_zz() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        let zz = ComplexMatrix::pauli_z().kron(&ComplexMatrix::pauli_z());
        assert_eq!(expectation(&rho, &zz).unwrap(), 0.0);
    }

    #[test]
    fn dimension_and_hermiticity_errors() {
        let up = PureState::basis(1, 0).unwrap();
        assert!(matches!(
            expectation(&up, &ComplexMatrix::identity(4)),
            Err(Error::DimensionMismatch { .. })
        ));
        let mut m = ComplexMatrix::zeros(2);
        m.set(0, 1, C64::new(1.0, 0.0));
        assert!(matches!(expectation(&up, &m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn ghz_reduced_correlation() {
        let spec = TriorthogonalSpec::ghz(3).unwrap();
        let rho = reduced_density(&spec, 2).unwrap();
        let dirs = [Direction::new(0.7, 1.9), Direction::new(-2.2, 0.4)];
        let oracle = correlation(&rho, &dirs).unwrap();
        let closed = (0.7f64).cos() * (-2.2f64).cos();
        assert!((oracle - closed).abs() < 1e-14);
        let record = unconditional_correlation_closed(&spec, &dirs).unwrap();
        assert!((record.value - closed).abs() < 1e-15);
    }

    #[test]
    fn odd_subsets_carry_the_coefficient_imbalance() {
        let spec = TriorthogonalSpec::new(0.6, 0.8, vec![Up, Down, Down, Up]).unwrap();
        let dirs = [Direction::new(0.3, 0.5), Direction::new(2.1, -1.0), Direction::new(-0.8, 3.0)];
        let rho = reduced_density(&spec, 3).unwrap();
        let oracle = correlation(&rho, &dirs).unwrap();
        let v = unconditional_correlation_closed(&spec, &dirs).unwrap().value;
        assert!((v - oracle).abs() < 1e-14);
        let ghz = TriorthogonalSpec::ghz(4).unwrap();
        assert!(unconditional_correlation_closed(&ghz, &dirs).unwrap().value.abs() < 1e-15);
    }

    #[test]
    fn opposite_labels_flip_sign() {
        let spec = TriorthogonalSpec::new(0.6, 0.8, vec![Up, Down, Up]).unwrap();
        let dirs = [Direction::new(0.3, 0.0), Direction::new(1.2, 2.0)];
        let v = unconditional_correlation_closed(&spec, &dirs).unwrap().value;
        assert!((v + 0.3f64.cos() * 1.2f64.cos()).abs() < 1e-15);
        let zero = unconditional_correlation_closed(&spec, &[Direction::z(), Direction::z()]).unwrap();
        assert!((zero.value + 1.0).abs() < 1e-15);
        assert!(unconditional_correlation_closed(&spec, &[Direction::z(); 3]).is_err());
    }

    #[test]
    fn conditional_correlation_on_z_axis_is_local() {
        let spec = TriorthogonalSpec::new(0.6, -0.8, vec![Up, Down, Down]).unwrap();
        let (e1, e2) = (Direction::new(0.4, 1.0), Direction::new(2.0, -0.5));
        for branch in [Branch::Plus, Branch::Minus] {
            let r = conditional_correlation_closed(&spec, &e1, &e2, &Direction::z(), branch).unwrap();
            assert_eq!(r.value, spec.gamma() * 0.4f64.cos() * 2.0f64.cos());
        }
    }

    #[test]
    fn ghz_conditional_in_plane_is_perfect() {
        let spec = TriorthogonalSpec::ghz(3).unwrap();
        let r = conditional_correlation_closed(
            &spec,
            &Direction::x(),
            &Direction::x(),
            &Direction::x(),
            Branch::Plus,
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
        assert_eq!(r.kind, CorrelationKind::ConditionalPlus);
    }

    #[test]
    fn product_state_has_no_interference() {
        let spec = TriorthogonalSpec::new(0.0, 1.0, vec![Up; 3]).unwrap();
        let (e1, e2, e3) = (Direction::new(1.0, 0.2), Direction::new(FRAC_PI_2, 0.3), Direction::new(0.9, 0.0));
        for branch in [Branch::Plus, Branch::Minus] {
            let r = conditional_correlation_closed(&spec, &e1, &e2, &e3, branch).unwrap();
            assert!((r.value - 1.0f64.cos() * FRAC_PI_2.cos()).abs() < 1e-15);
        }
    }

    #[test]
    fn tensor_matches_operator() {
        let spec = TriorthogonalSpec::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2, vec![Up, Down, Up]).unwrap();
        let psi = make_triorthogonal(&spec);
        let t = CorrelationTensor::new(&psi).unwrap();
        let dirs = [Direction::new(0.3, 1.0), Direction::new(-1.2, 2.5), Direction::new(2.0, -0.7)];
        let a = t.correlation(&dirs);
        let b = correlation(&psi, &dirs).unwrap();
        assert!((a - b).abs() < 1e-14);
    }
}
