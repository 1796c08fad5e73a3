//! Dense complex linear algebra for small spin systems.

mod eigen;
mod matrix;
mod state;

pub use eigen::{hermitian_eigen, HermitianEigen, MAX_DIM, MAX_SWEEPS, OFF_DIAGONAL_TOL};
pub use matrix::{spin_operator, spin_product, ComplexMatrix, C64, HERMITIAN_TOL};
pub use state::{
    partial_trace, tensor_product, DensityMatrix, PureState, TensorProduct, MAX_PARTICLES,
    NORM_TOL, PSD_TOL, TRACE_TOL,
};

pub(crate) use matrix::ZERO;
pub(crate) use state::{scatter_bits, validate_subset};
