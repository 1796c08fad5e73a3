//! Bell operators for two and three particles, their spectral maxima, and
//! the violation conditions for conditional two-particle states.

mod chsh;
mod hardy;
mod nelder_mead;
mod optimize;

pub use chsh::{
    chsh_condition_lhs, chsh_expectation, chsh_lambda_closed, chsh_operator, chsh_square_closed,
    maximal_family, singlet_equality_lhs, special_case_lhs, special_case_settings,
    triplet_equality_lhs, FamilyKind, Parity,
};
pub use hardy::{hardy_expectation, hardy_lambda_closed, hardy_operator};
pub use nelder_mead::{nelder_mead, NelderMeadOptions, NelderMeadResult};
pub use optimize::{
    optimize_settings, optimize_settings_with, BellKind, OptimizationResult, OptimizerOptions,
    Settings,
};

use crate::direction::{cross, norm, Direction};
use crate::linalg::{ComplexMatrix, C64};
use serde::{Deserialize, Serialize};

/// Local-realistic bound shared by both inequalities.
pub const LOCAL_BOUND: f64 = 2.0;
const VIOLATION_TOL: f64 = 1e-12;

/// Two alternative axes per particle for the CHSH experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChshSettings {
    pub e1: Direction,
    pub e1p: Direction,
    pub e2: Direction,
    pub e2p: Direction,
}

impl ChshSettings {
    pub fn new(e1: Direction, e1p: Direction, e2: Direction, e2p: Direction) -> Self {
        Self { e1, e1p, e2, e2p }
    }

    /// From `[ϑ₁, φ₁, ϑ′₁, φ′₁, ϑ₂, φ₂, ϑ′₂, φ′₂]`.
    pub fn from_angles(a: &[f64]) -> Self {
        assert_eq!(a.len(), 8, "CHSH settings take 8 angles");
        Self {
            e1: Direction::new(a[0], a[1]),
            e1p: Direction::new(a[2], a[3]),
            e2: Direction::new(a[4], a[5]),
            e2p: Direction::new(a[6], a[7]),
        }
    }

    pub fn to_angles(&self) -> [f64; 8] {
        [
            self.e1.theta,
            self.e1.phi,
            self.e1p.theta,
            self.e1p.phi,
            self.e2.theta,
            self.e2.phi,
            self.e2p.theta,
            self.e2p.phi,
        ]
    }

    /// Unoriented included angles `(θ₁, θ₂)`, each in `[0, π]`.
    pub fn included_angles(&self) -> (f64, f64) {
        (self.e1.angle_to(&self.e1p), self.e2.angle_to(&self.e2p))
    }

    pub fn pairs(&self) -> [(Direction, Direction); 2] {
        [(self.e1, self.e1p), (self.e2, self.e2p)]
    }
}

/// Two alternative axes per particle for the three-particle inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HardySettings {
    pub e1: Direction,
    pub e1p: Direction,
    pub e2: Direction,
    pub e2p: Direction,
    pub e3: Direction,
    pub e3p: Direction,
}

impl HardySettings {
    pub fn new(
        e1: Direction,
        e1p: Direction,
        e2: Direction,
        e2p: Direction,
        e3: Direction,
        e3p: Direction,
    ) -> Self {
        Self {
            e1,
            e1p,
            e2,
            e2p,
            e3,
            e3p,
        }
    }

    /// `σx` and `σy` on every particle.
    pub fn xy() -> Self {
        let (x, y) = (Direction::x(), Direction::y());
        Self::new(x, y, x, y, x, y)
    }

    pub fn from_angles(a: &[f64]) -> Self {
        assert_eq!(a.len(), 12, "Hardy settings take 12 angles");
        let d = |k: usize| Direction::new(a[2 * k], a[2 * k + 1]);
        Self::new(d(0), d(1), d(2), d(3), d(4), d(5))
    }

    pub fn to_angles(&self) -> [f64; 12] {
        let mut out = [0.0; 12];
        for (k, (a, b)) in self.pairs().iter().enumerate() {
            out[4 * k..4 * k + 4].copy_from_slice(&[a.theta, a.phi, b.theta, b.phi]);
        }
        out
    }

    pub fn included_angles(&self) -> (f64, f64, f64) {
        (
            self.e1.angle_to(&self.e1p),
            self.e2.angle_to(&self.e2p),
            self.e3.angle_to(&self.e3p),
        )
    }

    pub fn pairs(&self) -> [(Direction, Direction); 3] {
        [(self.e1, self.e1p), (self.e2, self.e2p), (self.e3, self.e3p)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub expectation_value: f64,
    pub bound: f64,
    pub violated: bool,
    /// `|expectation_value| − bound`.
    pub margin: f64,
}

impl ViolationReport {
    pub fn new(expectation_value: f64) -> Self {
        let margin = expectation_value.abs() - LOCAL_BOUND;
        Self {
            expectation_value,
            bound: LOCAL_BOUND,
            violated: margin > VIOLATION_TOL,
            margin,
        }
    }
}

/// `n·σ` for an arbitrary (not necessarily unit) Cartesian vector.
pub(crate) fn spin_along(v: &[f64; 3]) -> ComplexMatrix {
    let [x, y, z] = *v;
    ComplexMatrix::new(
        2,
        vec![
            C64::new(z, 0.0),
            C64::new(x, -y),
            C64::new(x, y),
            C64::new(-z, 0.0),
        ],
    )
    .expect("2x2")
}

/// Signed `sinθ_i = (ê_i × ê′_i)·n̂`, with `n̂` the unit normal of the first
/// non-degenerate pair. The reference pair therefore always reports a
/// non-negative sine.
pub fn oriented_sines(pairs: &[(Direction, Direction)]) -> Vec<f64> {
    let crosses: Vec<[f64; 3]> = pairs
        .iter()
        .map(|(a, b)| cross(&a.unit_vector(), &b.unit_vector()))
        .collect();
    let reference = crosses.iter().find(|c| norm(c) > 1e-12).map(|c| {
        let l = norm(c);
        [c[0] / l, c[1] / l, c[2] / l]
    });
    match reference {
        None => vec![0.0; pairs.len()],
        Some(nh) => crosses
            .iter()
            .map(|c| c[0] * nh[0] + c[1] * nh[1] + c[2] * nh[2])
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn violation_report_fields() {
        let r = ViolationReport::new(-2.5);
        assert!(r.violated);
        assert_eq!(r.margin, 0.5);
        let r = ViolationReport::new(2.0 + 1e-13);
        assert!(!r.violated);
    }

    #[test]
    fn angle_round_trip() {
        let a = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8];
        assert_eq!(ChshSettings::from_angles(&a).to_angles(), a);
        let h: Vec<f64> = (0..12).map(|k| k as f64 * 0.1).collect();
        assert_eq!(HardySettings::from_angles(&h).to_angles().to_vec(), h);
    }

    #[test]
    fn oriented_sines_signs() {
        let (x, y) = (Direction::x(), Direction::y());
        let s = oriented_sines(&[(x, y), (y, x)]);
        assert!((s[0] - 1.0).abs() < 1e-15);
        assert!((s[1] + 1.0).abs() < 1e-15);
        let z = Direction::new(0.0, FRAC_PI_2);
        assert_eq!(oriented_sines(&[(z, z)]), vec![0.0]);
    }
}
