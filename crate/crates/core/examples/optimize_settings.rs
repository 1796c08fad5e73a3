//! Searching for the best CHSH settings with and without post-selection.
//!
//! Run with `cargo run --release --example optimize_settings`.

use belllab::bell::{optimize_settings, BellKind, Settings};
use belllab::states::{condition_on, make_triorthogonal, reduced_density, Measurement, TriorthogonalSpec};
use belllab::{Direction, SpinLabel};

fn main() -> belllab::Result<()> {
    let spec = TriorthogonalSpec::new(0.6, 0.8, vec![SpinLabel::Up, SpinLabel::Down, SpinLabel::Up])?;
    let rho = reduced_density(&spec, 2)?;
    let r = optimize_settings(&rho, BellKind::Chsh, 32, 1)?;
    println!("reduced state, no selection: best |<B>| = {:.9}", r.value);

    for theta3 in [0.0, 0.5, 1.0, std::f64::consts::FRAC_PI_2] {
        let e3 = Direction::new(theta3, 0.0);
        let cond = condition_on(&make_triorthogonal(&spec), &[Measurement::new(2, e3, SpinLabel::Up)])?;
        let r = optimize_settings(&cond.state, BellKind::Chsh, 32, 1)?;
        let Settings::Chsh(s) = &r.settings else { unreachable!() };
        let (t1, t2) = s.included_angles();
        println!(
            "selected along theta3 = {theta3:.3}: best |<B>| = {:.9}, included angles ({t1:.4}, {t2:.4}), oriented sines {:.4?}",
            r.value, r.oriented_sines
        );
    }
    Ok(())
}
