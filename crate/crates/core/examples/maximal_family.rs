//! Sweeping the two-parameter family of maximally violating settings.
//!
//! Run with `cargo run --example maximal_family`.

use belllab::bell::{maximal_family, singlet_equality_lhs, triplet_equality_lhs, FamilyKind};
use std::f64::consts::{PI, SQRT_2, TAU};

fn main() {
    let mut worst: f64 = 0.0;
    println!("phi0,theta0,singlet,triplet");
    for i in 0..6 {
        for j in 0..4 {
            let phi0 = TAU * i as f64 / 6.0;
            let theta0 = PI * j as f64 / 4.0;
            let s = singlet_equality_lhs(&maximal_family(phi0, theta0, FamilyKind::Singlet));
            let t = triplet_equality_lhs(&maximal_family(phi0, theta0, FamilyKind::Triplet));
            worst = worst.max((s - 2.0 * SQRT_2).abs()).max((t - 2.0 * SQRT_2).abs());
            println!("{phi0:.4},{theta0:.4},{s:.12},{t:.12}");
        }
    }
    eprintln!("largest deviation from 2*sqrt(2): {worst:.2e}");
}
