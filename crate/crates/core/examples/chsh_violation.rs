//! CHSH violation by the subensembles of a three-particle state.
//!
//! Run with `cargo run --example chsh_violation`.

use belllab::bell::{chsh_condition_lhs, ChshSettings, ViolationReport};
use belllab::states::{Branch, TriorthogonalSpec};
use belllab::{Direction, SpinLabel};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

fn main() -> belllab::Result<()> {
    use SpinLabel::*;
    let singlet = TriorthogonalSpec::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2, vec![Up, Down, Up])?;
    let settings = ChshSettings::from_angles(&[0.0, 0.0, FRAC_PI_2, 0.0, FRAC_PI_4, 0.0, -FRAC_PI_4, 0.0]);

    println!("selected on particle 3 along (theta3, 0); subensemble +");
    for k in 0..=6 {
        let theta3 = k as f64 * FRAC_PI_2 / 3.0;
        let lhs = chsh_condition_lhs(&singlet, &settings, &Direction::new(theta3, 0.0), Branch::Plus)?;
        let r = ViolationReport::new(lhs);
        println!(
            "theta3 = {theta3:.4}  |<B>| = {lhs:.6}  margin {:+.6}  violated {}",
            r.margin, r.violated
        );
    }

    let triplet = TriorthogonalSpec::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, vec![Up, Down, Up])?;
    let yz = ChshSettings::from_angles(&[
        0.0, FRAC_PI_2, -FRAC_PI_2, FRAC_PI_2, FRAC_PI_4, FRAC_PI_2, -FRAC_PI_4, FRAC_PI_2,
    ]);
    let lhs = chsh_condition_lhs(&triplet, &yz, &Direction::x(), Branch::Plus)?;
    println!("triplet subensemble with y-z plane settings: |<B>| = {lhs:.12}");
    Ok(())
}
