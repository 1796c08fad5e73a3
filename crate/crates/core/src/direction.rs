//! Measurement axes on the unit sphere and the two-valued spin labels.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::ops::Neg;

/// A measurement axis given by polar angle `theta` and azimuth `phi`, in radians.
///
/// Raw angles are kept as given. Negative or out-of-range polar angles are
/// legal and meaningful: the half-angle formulas used for eigenvectors
/// distinguish `theta` from its canonical representative by a sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    pub const fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    pub const fn z() -> Self {
        Self::new(0.0, 0.0)
    }

    pub const fn x() -> Self {
        Self::new(PI / 2.0, 0.0)
    }

    pub const fn y() -> Self {
        Self::new(PI / 2.0, PI / 2.0)
    }

    /// Cartesian unit vector `(sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Same axis with `theta ∈ [0, π]` and `phi ∈ [0, 2π)`.
    pub fn normalized(&self) -> Self {
        let [x, y, z] = self.unit_vector();
        let theta = z.clamp(-1.0, 1.0).acos();
        let phi = if x.abs() < 1e-15 && y.abs() < 1e-15 {
            0.0
        } else {
            y.atan2(x).rem_euclid(2.0 * PI)
        };
        // rem_euclid can round up to exactly 2π
        let phi = if phi >= 2.0 * PI { 0.0 } else { phi };
        Self { theta, phi }
    }

    /// Unoriented angle between the two axes, in `[0, π]`.
    pub fn angle_to(&self, other: &Direction) -> f64 {
        dot(&self.unit_vector(), &other.unit_vector())
            .clamp(-1.0, 1.0)
            .acos()
    }

    pub fn is_finite(&self) -> bool {
        self.theta.is_finite() && self.phi.is_finite()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(θ={:.6}, φ={:.6})", self.theta, self.phi)
    }
}

/// Spin projection `±1` along some axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum SpinLabel {
    Up,
    Down,
}

impl SpinLabel {
    pub fn from_sign(value: i8) -> Option<Self> {
        match value {
            1 => Some(SpinLabel::Up),
            -1 => Some(SpinLabel::Down),
            _ => None,
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            SpinLabel::Up => 1.0,
            SpinLabel::Down => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            SpinLabel::Up => 1,
            SpinLabel::Down => -1,
        }
    }

    /// Computational-basis bit: 0 for spin up along z, 1 for spin down.
    pub fn bit(self) -> usize {
        match self {
            SpinLabel::Up => 0,
            SpinLabel::Down => 1,
        }
    }
}

impl Neg for SpinLabel {
    type Output = SpinLabel;

    fn neg(self) -> SpinLabel {
        match self {
            SpinLabel::Up => SpinLabel::Down,
            SpinLabel::Down => SpinLabel::Up,
        }
    }
}

impl TryFrom<i8> for SpinLabel {
    type Error = String;

    fn try_from(value: i8) -> std::result::Result<Self, String> {
        SpinLabel::from_sign(value).ok_or_else(|| format!("spin label must be +1 or -1, got {value}"))
    }
}

impl From<SpinLabel> for i8 {
    fn from(label: SpinLabel) -> i8 {
        label.as_i8()
    }
}

pub(crate) fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn norm(a: &[f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axes() {
        let x = Direction::x().unit_vector();
        assert!((x[0] - 1.0).abs() < 1e-15 && x[2].abs() < 1e-15);
        let y = Direction::y().unit_vector();
        assert!((y[1] - 1.0).abs() < 1e-15);
        assert_eq!(Direction::z().unit_vector(), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn normalization_keeps_the_axis() {
        let d = Direction::new(-PI / 4.0, 0.3);
        let n = d.normalized();
        assert!((0.0..=PI).contains(&n.theta));
        assert!((0.0..2.0 * PI).contains(&n.phi));
        let (a, b) = (d.unit_vector(), n.unit_vector());
        for k in 0..3 {
            assert!((a[k] - b[k]).abs() < 1e-12);
        }
        // raw angles untouched
        assert_eq!(d.theta, -PI / 4.0);
    }

    #[test]
    fn label_serde() {
        let labels: Vec<SpinLabel> = serde_json::from_str("[1, -1]").unwrap();
        assert_eq!(labels, vec![SpinLabel::Up, SpinLabel::Down]);
        assert!(serde_json::from_str::<SpinLabel>("0").is_err());
        assert_eq!(serde_json::to_string(&-SpinLabel::Up).unwrap(), "-1");
    }
}
