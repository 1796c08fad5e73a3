use super::HardySettings;
use crate::direction::Direction;
use crate::linalg::{spin_operator, ComplexMatrix};

/// `[σ(e₁)⊗σ(e′₂) + σ(e′₁)⊗σ(e₂)]⊗σ(e′₃) + [σ(e′₁)⊗σ(e′₂) − σ(e₁)⊗σ(e₂)]⊗σ(e₃)`.
pub fn hardy_operator(s: &HardySettings) -> ComplexMatrix {
    let [a, ap, b, bp, c, cp] = [s.e1, s.e1p, s.e2, s.e2p, s.e3, s.e3p].map(|d| spin_operator(&d));
    let first = &a.kron(&bp) + &ap.kron(&b);
    let second = &ap.kron(&bp) - &a.kron(&b);
    &first.kron(&cp) + &second.kron(&c)
}

/// `2(1 + |sinθ₁sinθ₂| + |sinθ₂sinθ₃| + |sinθ₁sinθ₃|)^{1/2}`.
pub fn hardy_lambda_closed(s: &HardySettings) -> f64 {
    let (t1, t2, t3) = s.included_angles();
    let (s1, s2, s3) = (t1.sin(), t2.sin(), t3.sin());
    2.0 * (1.0 + (s1 * s2).abs() + (s2 * s3).abs() + (s1 * s3).abs()).sqrt()
}

/// Signed `⟨B_H⟩` assembled from a three-particle correlation function.
pub fn hardy_expectation(
    s: &HardySettings,
    mut corr: impl FnMut(&Direction, &Direction, &Direction) -> f64,
) -> f64 {
    corr(&s.e1, &s.e2p, &s.e3p) + corr(&s.e1p, &s.e2, &s.e3p) + corr(&s.e1p, &s.e2p, &s.e3)
        - corr(&s.e1, &s.e2, &s.e3)
}
