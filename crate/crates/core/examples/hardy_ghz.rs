//! The three-particle Bell operator on GHZ-type states.
//!
//! Run with `cargo run --example hardy_ghz`.

use belllab::bell::{hardy_lambda_closed, hardy_operator, HardySettings};
use belllab::correlations::expectation;
use belllab::states::{make_triorthogonal, TriorthogonalSpec};
use belllab::SpinLabel;
use std::f64::consts::FRAC_1_SQRT_2;

fn main() -> belllab::Result<()> {
    let settings = HardySettings::xy();
    let b = hardy_operator(&settings);
    for (name, c2) in [("c2 = +1/sqrt2", FRAC_1_SQRT_2), ("c2 = -1/sqrt2", -FRAC_1_SQRT_2)] {
        let spec = TriorthogonalSpec::new(FRAC_1_SQRT_2, c2, vec![SpinLabel::Up; 3])?;
        let v = expectation(&make_triorthogonal(&spec), &b)?;
        println!("{name}: <B_H> = {v:+.12}");
    }
    println!("largest eigenvalue for x/y settings: {}", hardy_lambda_closed(&settings));

    println!("weight of the GHZ superposition vs |<B_H>|:");
    for k in 0..=5 {
        let a = k as f64 * std::f64::consts::FRAC_PI_4 / 5.0;
        let spec = TriorthogonalSpec::new(a.cos(), a.sin(), vec![SpinLabel::Up; 3])?;
        let v = expectation(&make_triorthogonal(&spec), &b)?;
        println!("  c1 = {:.4}, c2 = {:.4}: {:.6}", a.cos(), a.sin(), v.abs());
    }
    Ok(())
}
