//! Seeded Monte Carlo of the selection protocol: every particle is measured
//! along its own axis, and the pair (1, 2) results are sorted into
//! subensembles by the outcome seen on a selecting particle.

use crate::bell::ChshSettings;
use crate::direction::{Direction, SpinLabel};
use crate::error::{Error, Result};
use crate::linalg::{PureState, C64};
use crate::rng::Stream;
use crate::states::rotated_ket;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Shots per random substream. Fixed so the shot sequence does not depend
/// on how chunks are spread over workers.
pub const CHUNK_SHOTS: usize = 4096;

const DISTRIBUTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotRecord {
    /// `±1` per particle.
    pub outcomes: Vec<i8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubensembleStats {
    pub shots_total: usize,
    pub shots_selected: usize,
    pub p_hat: f64,
    pub e12_hat: f64,
    /// `sqrt((1 − e12_hat²)/shots_selected)`.
    pub stderr: f64,
}

/// Joint outcome distribution of a product measurement, with its CDF.
#[derive(Debug, Clone)]
pub struct OutcomeDistribution {
    n: usize,
    probabilities: Vec<f64>,
    cdf: Vec<f64>,
}

impl OutcomeDistribution {
    /// Born-rule probabilities `|⟨⊗ e_k,a_k|Ψ⟩|²`, outcome bit 0 meaning `+1`.
    pub fn new(state: &PureState, dirs: &[Direction]) -> Result<Self> {
        let n = state.particles();
        if dirs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: dirs.len(),
            });
        }
        // rotate each particle into its measurement basis, one qubit at a time
        let mut amps: Vec<C64> = state.amplitudes().to_vec();
        for (k, d) in dirs.iter().enumerate() {
            let plus = rotated_ket(d, SpinLabel::Up);
            let minus = rotated_ket(d, SpinLabel::Down);
            let bra = [
                [plus.amplitudes()[0].conj(), plus.amplitudes()[1].conj()],
                [minus.amplitudes()[0].conj(), minus.amplitudes()[1].conj()],
            ];
            let stride = 1 << (n - 1 - k);
            for base in 0..amps.len() {
                if base & stride != 0 {
                    continue;
                }
                let (a0, a1) = (amps[base], amps[base | stride]);
                amps[base] = bra[0][0] * a0 + bra[0][1] * a1;
                amps[base | stride] = bra[1][0] * a0 + bra[1][1] * a1;
            }
        }
        let probabilities: Vec<f64> = amps.iter().map(|a| a.norm_sqr()).collect();
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > DISTRIBUTION_TOL {
            return Err(Error::BadNorm { norm_sq: total });
        }
        let mut cdf = Vec::with_capacity(probabilities.len());
        let mut acc = 0.0;
        for p in &probabilities {
            acc += p;
            cdf.push(acc);
        }
        Ok(Self {
            n,
            probabilities,
            cdf,
        })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Outcome index for a uniform draw in `[0, 1)`.
    pub fn sample_index(&self, u: f64) -> usize {
        let target = u * self.cdf[self.cdf.len() - 1];
        self.cdf
            .partition_point(|&c| c <= target)
            .min(self.cdf.len() - 1)
    }

    pub fn decode(&self, index: usize) -> ShotRecord {
        ShotRecord {
            outcomes: (0..self.n)
                .map(|k| if (index >> (self.n - 1 - k)) & 1 == 0 { 1 } else { -1 })
                .collect(),
        }
    }
}

pub fn sample_shots(
    state: &PureState,
    dirs: &[Direction],
    shots: usize,
    seed: u64,
) -> Result<Vec<ShotRecord>> {
    sample_shots_with(state, dirs, shots, seed, None)
}

/// As [`sample_shots`], with an optional cap on worker threads.
/// Chunk `c` draws from substream `c` of `seed`.
pub fn sample_shots_with(
    state: &PureState,
    dirs: &[Direction],
    shots: usize,
    seed: u64,
    threads: Option<usize>,
) -> Result<Vec<ShotRecord>> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let dist = OutcomeDistribution::new(state, dirs)?;
    let chunks = shots.div_ceil(CHUNK_SHOTS);
    let draw = |c: usize| -> Vec<ShotRecord> {
        let mut stream = Stream::new(seed, c as u64);
        let len = CHUNK_SHOTS.min(shots - c * CHUNK_SHOTS);
        (0..len)
            .map(|_| dist.decode(dist.sample_index(stream.uniform())))
            .collect()
    };
    let parts: Vec<Vec<ShotRecord>> = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(|| (0..chunks).into_par_iter().map(draw).collect()),
        None => (0..chunks).into_par_iter().map(draw).collect(),
    };
    Ok(parts.into_iter().flatten().collect())
}

/// Statistics of `a₁·a₂` over the shots where `selector_particle` shows
/// `selector_outcome`.
pub fn postselect(
    shots: &[ShotRecord],
    selector_particle: usize,
    selector_outcome: SpinLabel,
) -> Result<SubensembleStats> {
    let want = selector_outcome.as_i8();
    let mut selected = 0usize;
    let mut sum = 0i64;
    for shot in shots {
        if shot.outcomes.len() < 2 || selector_particle >= shot.outcomes.len() {
            return Err(Error::InvalidArgument(format!(
                "selector particle {selector_particle} invalid for {}-particle shots",
                shot.outcomes.len()
            )));
        }
        if shot.outcomes[selector_particle] == want {
            selected += 1;
            sum += i64::from(shot.outcomes[0] * shot.outcomes[1]);
        }
    }
    if selected == 0 {
        return Err(Error::EmptySubensemble);
    }
    let e12_hat = sum as f64 / selected as f64;
    Ok(SubensembleStats {
        shots_total: shots.len(),
        shots_selected: selected,
        p_hat: selected as f64 / shots.len() as f64,
        e12_hat,
        stderr: ((1.0 - e12_hat * e12_hat).max(0.0) / selected as f64).sqrt(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChshEstimate {
    /// Signed `E₁₁ + E₁₂ + E₂₁ − E₂₂` from the selected subensembles.
    pub value: f64,
    /// Standard errors of the four terms added in quadrature.
    pub stderr: f64,
    /// Subensemble statistics for (e₁,e₂), (e₁,e′₂), (e′₁,e₂), (e′₁,e′₂).
    pub terms: Vec<SubensembleStats>,
}

/// Runs the four CHSH setting pairs on a three-particle state, selecting on
/// particle 3 measured along `e3`. Setting pair `k` uses seed `seed + k`.
pub fn estimate_conditional_chsh(
    state: &PureState,
    settings: &ChshSettings,
    e3: &Direction,
    selector_outcome: SpinLabel,
    shots: usize,
    seed: u64,
    threads: Option<usize>,
) -> Result<ChshEstimate> {
    if state.particles() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            found: state.dim(),
        });
    }
    let pairs = [
        (settings.e1, settings.e2),
        (settings.e1, settings.e2p),
        (settings.e1p, settings.e2),
        (settings.e1p, settings.e2p),
    ];
    let mut terms = Vec::with_capacity(4);
    for (k, (a, b)) in pairs.iter().enumerate() {
        let shots = sample_shots_with(state, &[*a, *b, *e3], shots, seed.wrapping_add(k as u64), threads)?;
        terms.push(postselect(&shots, 2, selector_outcome)?);
    }
    let value = terms[0].e12_hat + terms[1].e12_hat + terms[2].e12_hat - terms[3].e12_hat;
    let stderr = terms.iter().map(|t| t.stderr * t.stderr).sum::<f64>().sqrt();
    Ok(ChshEstimate {
        value,
        stderr,
        terms,
    })
}
