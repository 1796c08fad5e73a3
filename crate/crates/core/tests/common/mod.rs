//! Reference computations for the integration tests.
//!
//! Everything here works directly on amplitude vectors with hand-written
//! kets and single-qubit operator application, so it shares no code path
//! with the closed forms or the library's projection routines.

#![allow(dead_code)]

use belllab::rng::Stream;
use belllab::{Direction, SpinLabel};
use num_complex::Complex64 as C;
use std::f64::consts::{PI, TAU};

pub fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// Eigenvector of `σ(e)` for the eigenvalue `sign`.
pub fn ket(d: &Direction, sign: SpinLabel) -> [C; 2] {
    let (s, co) = (d.theta / 2.0).sin_cos();
    let e = C::from_polar(1.0, d.phi);
    match sign {
        SpinLabel::Up => [c(co), e * s],
        SpinLabel::Down => [c(s), -e * co],
    }
}

pub fn sigma(d: &Direction) -> [[C; 2]; 2] {
    let (s, co) = d.theta.sin_cos();
    [
        [c(co), C::from_polar(s, -d.phi)],
        [C::from_polar(s, d.phi), c(-co)],
    ]
}

pub fn index_of(labels: &[SpinLabel], flip: bool) -> usize {
    labels.iter().fold(0, |acc, z| {
        let down = (*z == SpinLabel::Down) != flip;
        (acc << 1) | usize::from(down)
    })
}

pub fn triorthogonal(c1: f64, c2: f64, labels: &[SpinLabel]) -> Vec<C> {
    let mut v = vec![c(0.0); 1 << labels.len()];
    v[index_of(labels, false)] += c1;
    v[index_of(labels, true)] += c2;
    v
}

/// Applies a single-qubit operator to qubit `k` (0 = most significant).
pub fn apply_one(psi: &[C], n: usize, k: usize, m: &[[C; 2]; 2]) -> Vec<C> {
    let bit = 1 << (n - 1 - k);
    let mut out = vec![c(0.0); psi.len()];
    for i in 0..psi.len() {
        if i & bit == 0 {
            let (a, b) = (psi[i], psi[i | bit]);
            out[i] = m[0][0] * a + m[0][1] * b;
            out[i | bit] = m[1][0] * a + m[1][1] * b;
        }
    }
    out
}

pub fn inner(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sqr(a: &[C]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

/// `⟨ψ|σ(d₀)⊗…⊗σ(d_{k−1})⊗1|ψ⟩` for the leading `dirs.len()` qubits.
pub fn expect_leading(psi: &[C], n: usize, dirs: &[Direction]) -> f64 {
    let mut phi = psi.to_vec();
    for (k, d) in dirs.iter().enumerate() {
        phi = apply_one(&phi, n, k, &sigma(d));
    }
    let v = inner(psi, &phi);
    assert!(v.im.abs() < 1e-10, "non-real expectation {v}");
    v.re / norm_sqr(psi)
}

/// Unnormalized amplitudes of the leading qubits after projecting the last
/// `measured.len()` qubits onto the given eigenvectors.
pub fn project_suffix(psi: &[C], n: usize, measured: &[(Direction, SpinLabel)]) -> Vec<C> {
    let m = measured.len();
    let kept = n - m;
    let bras: Vec<[C; 2]> = measured.iter().map(|(d, o)| ket(d, *o)).collect();
    (0..1usize << kept)
        .map(|i| {
            (0..1usize << m)
                .map(|j| {
                    let w: C = (0..m).map(|p| bras[p][(j >> (m - 1 - p)) & 1].conj()).product();
                    w * psi[(i << m) | j]
                })
                .sum()
        })
        .collect()
}

/// Dense `2^k × 2^k` reduced density matrix of the leading `k` qubits.
pub fn reduce_leading(psi: &[C], n: usize, k: usize) -> Vec<Vec<C>> {
    let m = n - k;
    let d = 1 << k;
    let mut rho = vec![vec![c(0.0); d]; d];
    for (i, row) in rho.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = (0..1usize << m)
                .map(|t| psi[(i << m) | t] * psi[(j << m) | t].conj())
                .sum();
        }
    }
    rho
}

pub struct Draws(Stream);

impl Draws {
    pub fn new(seed: u64) -> Self {
        Self(Stream::new(seed, 0xacce))
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.0.uniform_in(lo, hi)
    }

    pub fn direction(&mut self) -> Direction {
        Direction::new(self.uniform(0.0, PI), self.uniform(0.0, TAU))
    }

    pub fn directions(&mut self, k: usize) -> Vec<Direction> {
        (0..k).map(|_| self.direction()).collect()
    }

    pub fn label(&mut self) -> SpinLabel {
        if self.uniform(0.0, 1.0) < 0.5 {
            SpinLabel::Up
        } else {
            SpinLabel::Down
        }
    }

    pub fn labels(&mut self, n: usize) -> Vec<SpinLabel> {
        (0..n).map(|_| self.label()).collect()
    }

    /// `(cos α, sin α)` for uniform `α`.
    pub fn coefficients(&mut self) -> (f64, f64) {
        let a = self.uniform(0.0, TAU);
        (a.cos(), a.sin())
    }
}
