//! Triorthogonal states, rotated measurement bases and conditional projection.
//!
//! A triorthogonal state over `n` particles is `c₁ ⊗|z_i⟩ + c₂ ⊗|−z_i⟩`
//! where each `z_i = ±1` names the z-eigenvector that plays the role of
//! `|z_i⟩` for particle `i`. Measuring a subset of the particles along
//! arbitrary axes and keeping only the runs with a given outcome leaves the
//! rest in a pure conditional state whose entanglement depends on the remote
//! measurement axes.

use crate::direction::{Direction, SpinLabel};
use crate::error::{Error, Result};
use crate::linalg::{
    scatter_bits, validate_subset, ComplexMatrix, DensityMatrix, PureState, C64, ZERO,
};
use serde::{Deserialize, Serialize};

/// Conditioning events at or below this probability are rejected.
pub const ZERO_PROBABILITY: f64 = 1e-12;
pub const COEFFICIENT_NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriorthogonalSpec {
    n: usize,
    c1: f64,
    c2: f64,
    labels: Vec<SpinLabel>,
}

impl TriorthogonalSpec {
    pub fn new(c1: f64, c2: f64, labels: Vec<SpinLabel>) -> Result<Self> {
        let n = labels.len();
        if !(2..=crate::linalg::MAX_PARTICLES).contains(&n) {
            return Err(Error::InvalidArgument(format!(
                "triorthogonal state needs 2..={} particles, got {n}",
                crate::linalg::MAX_PARTICLES
            )));
        }
        let norm_sq = c1 * c1 + c2 * c2;
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > COEFFICIENT_NORM_TOL {
            return Err(Error::BadNorm { norm_sq });
        }
        Ok(Self { n, c1, c2, labels })
    }

    /// `(|↑…↑⟩ + |↓…↓⟩)/√2`.
    pub fn ghz(n: usize) -> Result<Self> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(r, r, vec![SpinLabel::Up; n])
    }

    pub fn particles(&self) -> usize {
        self.n
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn labels(&self) -> &[SpinLabel] {
        &self.labels
    }

    pub fn label(&self, particle: usize) -> SpinLabel {
        self.labels[particle]
    }

    /// `γ = z₁ z₂`.
    pub fn gamma(&self) -> f64 {
        self.labels[0].sign() * self.labels[1].sign()
    }

    /// Basis index of `|z_0 … z_{k−1}⟩` over the first `k` particles.
    fn index_of(&self, k: usize, flip: bool) -> usize {
        self.labels[..k].iter().fold(0, |acc, &z| {
            let z = if flip { -z } else { z };
            (acc << 1) | z.bit()
        })
    }
}

pub fn make_triorthogonal(spec: &TriorthogonalSpec) -> PureState {
    let n = spec.n;
    let mut amplitudes = vec![ZERO; 1 << n];
    amplitudes[spec.index_of(n, false)] += C64::new(spec.c1, 0.0);
    amplitudes[spec.index_of(n, true)] += C64::new(spec.c2, 0.0);
    PureState::from_parts_unchecked(n, amplitudes)
}

/// The eigenvector of `σ(d)` with eigenvalue `label`:
/// `cos(ϑ/2) e^{−izφ/2}|z⟩ + z sin(ϑ/2) e^{izφ/2}|−z⟩`.
///
/// Half angles are taken from the raw `theta`, so `ϑ` and `ϑ + 2π` differ by
/// an overall sign.
pub fn rotated_ket(d: &Direction, label: SpinLabel) -> PureState {
    let z = label.sign();
    let (s, c) = (d.theta / 2.0).sin_cos();
    let mut amplitudes = [ZERO; 2];
    amplitudes[label.bit()] = C64::from_polar(c, -z * d.phi / 2.0);
    amplitudes[(-label).bit()] = C64::from_polar(z * s, z * d.phi / 2.0);
    PureState::from_parts_unchecked(1, amplitudes.to_vec())
}

/// Which of the two outcomes of the selecting measurement is kept:
/// `Plus` keeps outcome `z_j`, `Minus` keeps `−z_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    /// The spin outcome selected on a particle whose label is `z`.
    pub fn outcome(self, z: SpinLabel) -> SpinLabel {
        match self {
            Branch::Plus => z,
            Branch::Minus => -z,
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub particle: usize,
    pub direction: Direction,
    pub outcome: SpinLabel,
}

impl Measurement {
    pub fn new(particle: usize, direction: Direction, outcome: SpinLabel) -> Self {
        Self {
            particle,
            direction,
            outcome,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalResult {
    /// Normalized state of the unmeasured particles, in their original order.
    pub state: PureState,
    pub probability: f64,
}

/// Projects `state` onto the measured outcomes and renormalizes the rest.
pub fn condition_on(state: &PureState, measured: &[Measurement]) -> Result<ConditionalResult> {
    let n = state.particles();
    let mut idx: Vec<usize> = measured.iter().map(|m| m.particle).collect();
    if idx.is_empty() {
        return Err(Error::BadSubset("no particle is measured".into()));
    }
    idx = validate_subset(n, &idx)?;
    let mut measured: Vec<&Measurement> = measured.iter().collect();
    measured.sort_by_key(|m| m.particle);
    let kept: Vec<usize> = (0..n).filter(|p| !idx.contains(p)).collect();

    // conjugated bra coefficients per measured particle
    let bras: Vec<[C64; 2]> = measured
        .iter()
        .map(|m| {
            let ket = rotated_ket(&m.direction, m.outcome);
            [ket.amplitudes()[0].conj(), ket.amplitudes()[1].conj()]
        })
        .collect();

    let m = idx.len();
    let weights: Vec<(usize, C64)> = (0..1usize << m)
        .map(|bits| {
            let w = bras
                .iter()
                .enumerate()
                .map(|(pos, bra)| bra[(bits >> (m - 1 - pos)) & 1])
                .product();
            (scatter_bits(n, &idx, bits), w)
        })
        .collect();

    let amps = state.amplitudes();
    let reduced: Vec<C64> = (0..1usize << kept.len())
        .map(|k| {
            let base = scatter_bits(n, &kept, k);
            weights.iter().map(|&(off, w)| w * amps[base | off]).sum()
        })
        .collect();
    finish(kept.len(), reduced)
}

fn finish(n: usize, amplitudes: Vec<C64>) -> Result<ConditionalResult> {
    let probability: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    if probability <= ZERO_PROBABILITY {
        return Err(Error::ZeroProbability { probability });
    }
    let inv = 1.0 / probability.sqrt();
    let state = PureState::from_parts_unchecked(n, amplitudes.into_iter().map(|a| a * inv).collect());
    Ok(ConditionalResult { state, probability })
}

/// Unnormalized conditional amplitudes `(A, B)` on `|z₁…z_N⟩` and `|−z₁…−z_N⟩`
/// when the suffix particles are measured, global phase `Π e^{i z_j φ_j/2}` removed.
fn closed_form_amplitudes(
    spec: &TriorthogonalSpec,
    measured: &[(Direction, SpinLabel)],
) -> Result<(usize, C64, C64)> {
    let n = spec.n;
    if measured.is_empty() || measured.len() >= n {
        return Err(Error::BadSubset(format!(
            "{} measured particles out of {n}; need a non-empty strict suffix",
            measured.len()
        )));
    }
    let kept = n - measured.len();
    let mut a = C64::new(spec.c1, 0.0);
    let mut b = C64::new(spec.c2, 0.0);
    for (j, (dir, outcome)) in measured.iter().enumerate() {
        let z = spec.labels[kept + j];
        let (s, c) = (dir.theta / 2.0).sin_cos();
        let zs = z.sign();
        let phase = C64::from_polar(1.0, -zs * dir.phi);
        if *outcome == z {
            a *= c;
            b *= phase * (zs * s);
        } else {
            a *= -zs * s;
            b *= phase * c;
        }
    }
    Ok((kept, a, b))
}

/// Conditional state and probability from the explicit product formulas,
/// with no projection. The measured particles are the last `measured.len()`
/// ones, listed in order; the kept particles are the leading ones.
pub fn conditional_closed_form(
    spec: &TriorthogonalSpec,
    measured: &[(Direction, SpinLabel)],
) -> Result<ConditionalResult> {
    let (kept, a, b) = closed_form_amplitudes(spec, measured)?;
    let mut amplitudes = vec![ZERO; 1 << kept];
    amplitudes[spec.index_of(kept, false)] = a;
    amplitudes[spec.index_of(kept, true)] = b;
    finish(kept, amplitudes)
}

/// Probability that the selecting particles (the suffix) all land on the
/// branch's outcome, for uniform-branch selection.
pub fn branch_probability(spec: &TriorthogonalSpec, suffix: &[Direction], branch: Branch) -> Result<f64> {
    let measured = suffix_measurements(spec, suffix, branch);
    let (_, a, b) = closed_form_amplitudes(spec, &measured)?;
    Ok(a.norm_sqr() + b.norm_sqr())
}

/// Pairs each suffix direction with the outcome selected by `branch`.
pub fn suffix_measurements(
    spec: &TriorthogonalSpec,
    suffix: &[Direction],
    branch: Branch,
) -> Vec<(Direction, SpinLabel)> {
    let offset = spec.n.saturating_sub(suffix.len());
    suffix
        .iter()
        .enumerate()
        .map(|(j, d)| (*d, branch.outcome(spec.labels[offset + j])))
        .collect()
}

/// Reduced state of the first `kept` particles: `c₁²|z…⟩⟨z…| + c₂²|−z…⟩⟨−z…|`.
pub fn reduced_density(spec: &TriorthogonalSpec, kept: usize) -> Result<DensityMatrix> {
    if kept == 0 || kept >= spec.n {
        return Err(Error::BadSubset(format!(
            "must keep 1..{} leading particles, got {kept}",
            spec.n
        )));
    }
    let mut m = ComplexMatrix::zeros(1 << kept);
    let up = spec.index_of(kept, false);
    let down = spec.index_of(kept, true);
    m.set(up, up, C64::new(spec.c1 * spec.c1, 0.0));
    let d = m.get(down, down) + C64::new(spec.c2 * spec.c2, 0.0);
    m.set(down, down, d);
    Ok(DensityMatrix::from_parts_unchecked(kept, m))
}

/// Mixture of every conditional state weighted by its probability, the
/// suffix measured along `suffix`. Summed over all `2^m` outcome patterns,
/// zero-probability patterns included (they contribute nothing).
pub fn conditional_mixture(spec: &TriorthogonalSpec, suffix: &[Direction]) -> Result<DensityMatrix> {
    let m = suffix.len();
    let mut total: Option<ComplexMatrix> = None;
    for pattern in 0..1usize << m {
        let measured: Vec<(Direction, SpinLabel)> = suffix
            .iter()
            .enumerate()
            .map(|(j, d)| {
                let z = spec.labels[spec.n - m + j];
                let outcome = if (pattern >> j) & 1 == 0 { z } else { -z };
                (*d, outcome)
            })
            .collect();
        let (kept, a, b) = closed_form_amplitudes(spec, &measured)?;
        let mut v = vec![ZERO; 1 << kept];
        v[spec.index_of(kept, false)] = a;
        v[spec.index_of(kept, true)] = b;
        let term = ComplexMatrix::outer(&v, &v)?;
        total = Some(match total {
            None => term,
            Some(acc) => &acc + &term,
        });
    }
    let matrix = total.expect("suffix is non-empty");
    Ok(DensityMatrix::from_parts_unchecked(spec.n - m, matrix))
}

/// `2|a₀₀a₁₁ − a₀₁a₁₀|` for a two-particle pure state; zero exactly for
/// product states and one for maximally entangled ones.
pub fn concurrence(state: &PureState) -> Result<f64> {
    if state.particles() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: state.dim(),
        });
    }
    let a = state.amplitudes();
    Ok(2.0 * (a[0] * a[3] - a[1] * a[2]).norm())
}
