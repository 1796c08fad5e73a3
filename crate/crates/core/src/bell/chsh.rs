use super::{spin_along, ChshSettings};
use crate::correlations::conditional_correlation_closed;
use crate::direction::{cross, norm, Direction};
use crate::error::Result;
use crate::linalg::{spin_operator, ComplexMatrix, C64};
use crate::states::{branch_probability, Branch, TriorthogonalSpec};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

/// `σ(e₁)⊗[σ(e₂)+σ(e′₂)] + σ(e′₁)⊗[σ(e₂)−σ(e′₂)]`.
pub fn chsh_operator(s: &ChshSettings) -> ComplexMatrix {
    let a = spin_operator(&s.e1);
    let ap = spin_operator(&s.e1p);
    let b = spin_operator(&s.e2);
    let bp = spin_operator(&s.e2p);
    &a.kron(&(&b + &bp)) + &ap.kron(&(&b - &bp))
}

/// Largest `|eigenvalue|` of the CHSH operator, `2(1 + |sinθ₁ sinθ₂|)^{1/2}`.
pub fn chsh_lambda_closed(s: &ChshSettings) -> f64 {
    let (t1, t2) = s.included_angles();
    2.0 * (1.0 + (t1.sin() * t2.sin()).abs()).sqrt()
}

/// `4(I + sinθ₁ sinθ₂ σ⊥₁⊗σ⊥₂)` with `σ⊥_i` along the normalized
/// `ê_i × ê′_i`. `None` when either pair is (anti)parallel within 1e-8 and
/// the perpendicular is undefined.
pub fn chsh_square_closed(s: &ChshSettings) -> Option<ComplexMatrix> {
    let mut factors = Vec::with_capacity(2);
    for (a, b) in s.pairs() {
        let c = cross(&a.unit_vector(), &b.unit_vector());
        let sin = norm(&c);
        if sin < 1e-8 {
            log::debug!("skipping squared-operator check: pair {a} / {b} is degenerate");
            return None;
        }
        let unit = [c[0] / sin, c[1] / sin, c[2] / sin];
        factors.push((sin, spin_along(&unit)));
    }
    let (s1, p1) = &factors[0];
    let (s2, p2) = &factors[1];
    let perp = p1.kron(p2).scale(C64::new(s1 * s2, 0.0));
    Some((&ComplexMatrix::identity(4) + &perp).scale(C64::new(4.0, 0.0)))
}

/// Signed `E(e₁,e₂) + E(e₁,e′₂) + E(e′₁,e₂) − E(e′₁,e′₂)` for any
/// correlation function.
pub fn chsh_expectation(s: &ChshSettings, mut corr: impl FnMut(&Direction, &Direction) -> f64) -> f64 {
    corr(&s.e1, &s.e2) + corr(&s.e1, &s.e2p) + corr(&s.e1p, &s.e2) - corr(&s.e1p, &s.e2p)
}

/// Absolute CHSH value for the subensemble selected by particle 3's outcome
/// along `e3`, built from closed-form conditional correlations. Values
/// above 2 violate the local bound.
pub fn chsh_condition_lhs(
    spec: &TriorthogonalSpec,
    s: &ChshSettings,
    e3: &Direction,
    branch: Branch,
) -> Result<f64> {
    let mut err = None;
    let value = chsh_expectation(s, |a, b| {
        match conditional_correlation_closed(spec, a, b, e3, branch) {
            Ok(r) => r.value,
            Err(e) => {
                err.get_or_insert(e);
                f64::NAN
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(value.abs()),
    }
}

/// Parity of the integer `n` in `φ₁ + γφ₂ + z₁z₃φ₃ = 3π/4 + nπ`; it fixes
/// the sign `μ` (+1 for odd, −1 for even) in the reduced condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: i64) -> Self {
        if n.rem_euclid(2) == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn mu(self) -> f64 {
        match self {
            Parity::Odd => 1.0,
            Parity::Even => -1.0,
        }
    }
}

/// Settings with `ϑ′ᵢ = ϑᵢ`, `φ′₁ = φ₁ + π/2`, `γφ′₂ = γφ₂ + π/2` and
/// `φ₂` chosen so that `φ₁ + γφ₂ + z₁z₃φ₃ = 3π/4 + nπ`.
pub fn special_case_settings(
    spec: &TriorthogonalSpec,
    theta1: f64,
    phi1: f64,
    theta2: f64,
    e3: &Direction,
    n: i64,
) -> ChshSettings {
    let gamma = spec.gamma();
    let z1z3 = spec.label(0).sign() * spec.label(2).sign();
    let phi2 = gamma * (3.0 * FRAC_PI_4 + n as f64 * PI - phi1 - z1z3 * e3.phi);
    ChshSettings::new(
        Direction::new(theta1, phi1),
        Direction::new(theta1, phi1 + FRAC_PI_2),
        Direction::new(theta2, phi2),
        Direction::new(theta2, phi2 + gamma * FRAC_PI_2),
    )
}

/// `|γ cosϑ₁cosϑ₂ ± μ z₃ (c₁c₂/p±) √2 sinϑ₁ sinϑ₂ sinϑ₃|`; for
/// [`special_case_settings`] the full condition equals twice this value.
pub fn special_case_lhs(
    spec: &TriorthogonalSpec,
    theta1: f64,
    theta2: f64,
    e3: &Direction,
    branch: Branch,
    parity: Parity,
) -> Result<f64> {
    let p = branch_probability(spec, std::slice::from_ref(e3), branch)?;
    if p <= crate::states::ZERO_PROBABILITY {
        return Err(crate::error::Error::ZeroProbability { probability: p });
    }
    let z3 = spec.label(2).sign();
    let value = spec.gamma() * theta1.cos() * theta2.cos()
        + branch.sign() * parity.mu() * z3 * (spec.c1() * spec.c2() / p)
            * SQRT_2
            * theta1.sin()
            * theta2.sin()
            * e3.theta.sin();
    Ok(value.abs())
}

fn equality_lhs(s: &ChshSettings, sign: f64) -> f64 {
    let term = |a: &Direction, b: &Direction| {
        a.theta.cos() * b.theta.cos() + sign * a.theta.sin() * b.theta.sin() * (a.phi - b.phi).cos()
    };
    chsh_expectation(s, term).abs()
}

/// Left side of the maximal-violation equality for the singlet pair.
pub fn singlet_equality_lhs(s: &ChshSettings) -> f64 {
    equality_lhs(s, 1.0)
}

/// Left side of the maximal-violation equality for the triplet pair.
pub fn triplet_equality_lhs(s: &ChshSettings) -> f64 {
    equality_lhs(s, -1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Singlet,
    Triplet,
}

/// One member of the two-parameter family of maximally violating settings.
///
/// Singlet: all azimuths `φ₀`, `ϑ₁ = ϑ₀ − π/4`, `ϑ′₁ = ϑ₀ + π/4`,
/// `ϑ₂ = ϑ₀`, `ϑ′₂ = ϑ₀ − π/2`. The triplet member negates the polar
/// angles of particle 1.
pub fn maximal_family(phi0: f64, theta0: f64, which: FamilyKind) -> ChshSettings {
    let sign = match which {
        FamilyKind::Singlet => 1.0,
        FamilyKind::Triplet => -1.0,
    };
    ChshSettings::new(
        Direction::new(sign * (theta0 - FRAC_PI_4), phi0),
        Direction::new(sign * (theta0 + FRAC_PI_4), phi0),
        Direction::new(theta0, phi0),
        Direction::new(theta0 - FRAC_PI_2, phi0),
    )
}
