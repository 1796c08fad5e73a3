//! Multi-start Nelder–Mead search for settings maximizing `|⟨B⟩|`.

use super::nelder_mead::{nelder_mead, NelderMeadOptions};
use super::{chsh_expectation, hardy_expectation, oriented_sines, ChshSettings, HardySettings};
use crate::correlations::{CorrelationTensor, Expectation};
use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::rng::Stream;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Re-seeding a converged simplex at its best vertex escapes the occasional
/// premature collapse; this many extra passes at most.
const POLISH_PASSES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BellKind {
    Chsh,
    Hardy,
}

impl BellKind {
    pub fn particles(self) -> usize {
        match self {
            BellKind::Chsh => 2,
            BellKind::Hardy => 3,
        }
    }

    fn angle_count(self) -> usize {
        4 * self.particles()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Settings {
    Chsh(ChshSettings),
    Hardy(HardySettings),
}

impl Settings {
    fn from_angles(kind: BellKind, a: &[f64]) -> Self {
        match kind {
            BellKind::Chsh => Settings::Chsh(ChshSettings::from_angles(a)),
            BellKind::Hardy => Settings::Hardy(HardySettings::from_angles(a)),
        }
    }

    pub fn pairs(&self) -> Vec<(Direction, Direction)> {
        match self {
            Settings::Chsh(s) => s.pairs().to_vec(),
            Settings::Hardy(s) => s.pairs().to_vec(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimizerOptions {
    pub restarts: usize,
    pub seed: u64,
    pub simplex: NelderMeadOptions,
    /// Worker cap; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            restarts: 32,
            seed: 0,
            simplex: NelderMeadOptions::default(),
            threads: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub settings: Settings,
    /// `|⟨B⟩|` at the returned settings.
    pub value: f64,
    /// Signed `⟨B⟩`.
    pub expectation: f64,
    /// `sinθ_i` per particle, oriented against the normal of particle 1's pair.
    pub oriented_sines: Vec<f64>,
    /// Index of the restart that produced the result.
    pub restart: usize,
    pub evaluations: usize,
}

pub fn optimize_settings<S: Expectation + ?Sized>(
    state: &S,
    kind: BellKind,
    restarts: usize,
    seed: u64,
) -> Result<OptimizationResult> {
    let opts = OptimizerOptions {
        restarts,
        seed,
        ..Default::default()
    };
    optimize_settings_with(state, kind, &opts)
}

/// Maximizes `|⟨B⟩|` from `restarts` random starts. Restart `r` draws its
/// start from substream `r` of the seed, and the best restart (lowest index
/// on ties) wins, so the result does not depend on the worker count.
pub fn optimize_settings_with<S: Expectation + ?Sized>(
    state: &S,
    kind: BellKind,
    opts: &OptimizerOptions,
) -> Result<OptimizationResult> {
    if opts.restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be at least 1".into()));
    }
    if state.particles() != kind.particles() {
        return Err(Error::DimensionMismatch {
            expected: 1 << kind.particles(),
            found: 1 << state.particles(),
        });
    }
    let tensor = CorrelationTensor::new(state)?;
    let objective = |a: &[f64]| -> f64 {
        match kind {
            BellKind::Chsh => chsh_expectation(&ChshSettings::from_angles(a), |x, y| {
                tensor.correlation(&[*x, *y])
            }),
            BellKind::Hardy => hardy_expectation(&HardySettings::from_angles(a), |x, y, z| {
                tensor.correlation(&[*x, *y, *z])
            }),
        }
    };

    let run = |restart: usize| -> (Vec<f64>, f64, usize) {
        let mut stream = Stream::new(opts.seed, restart as u64);
        let mut x: Vec<f64> = (0..kind.angle_count())
            .map(|k| {
                if k % 2 == 0 {
                    stream.uniform_in(0.0, PI)
                } else {
                    stream.uniform_in(0.0, TAU)
                }
            })
            .collect();
        let mut evaluations = 0;
        let mut best = f64::INFINITY;
        for _ in 0..=POLISH_PASSES {
            let r = nelder_mead(
                |a| {
                    evaluations += 1;
                    -objective(a).abs()
                },
                &x,
                &opts.simplex,
            );
            let improved = best - r.value;
            if r.value < best {
                best = r.value;
                x = r.x;
            }
            if improved <= 1e-15 {
                break;
            }
        }
        (x, -best, evaluations)
    };

    let results: Vec<(Vec<f64>, f64, usize)> = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(|| (0..opts.restarts).into_par_iter().map(run).collect()),
        None => (0..opts.restarts).into_par_iter().map(run).collect(),
    };

    let mut best = 0;
    for (i, r) in results.iter().enumerate() {
        if r.1 > results[best].1 {
            best = i;
        }
    }
    let evaluations = results.iter().map(|r| r.2).sum();
    let (x, value, _) = &results[best];
    let settings = Settings::from_angles(kind, x);
    Ok(OptimizationResult {
        oriented_sines: oriented_sines(&settings.pairs()),
        settings,
        value: *value,
        expectation: objective(x),
        restart: best,
        evaluations,
    })
}
