//! Seeded sampling of a three-observer run, sorted into subensembles.
//!
//! Run with `cargo run --release --example monte_carlo`.

use belllab::bell::ChshSettings;
use belllab::correlations::conditional_correlation_closed;
use belllab::experiment::{estimate_conditional_chsh, postselect, sample_shots};
use belllab::states::{branch_probability, make_triorthogonal, Branch, TriorthogonalSpec};
use belllab::{Direction, SpinLabel};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

fn main() -> belllab::Result<()> {
    let spec = TriorthogonalSpec::ghz(3)?;
    let psi = make_triorthogonal(&spec);
    let x = Direction::x();
    let shots = sample_shots(&psi, &[x, x, x], 200_000, 42)?;
    for (outcome, branch) in [(SpinLabel::Up, Branch::Plus), (SpinLabel::Down, Branch::Minus)] {
        let stats = postselect(&shots, 2, outcome)?;
        let e = conditional_correlation_closed(&spec, &x, &x, &x, branch)?.value;
        let p = branch_probability(&spec, &[x], branch)?;
        println!(
            "subensemble {branch}: p_hat {:.4} (exact {p:.4}), e12_hat {:+.4} ± {:.4} (exact {e:+.4})",
            stats.p_hat, stats.e12_hat, stats.stderr
        );
    }

    let singlet = TriorthogonalSpec::new(
        FRAC_1_SQRT_2,
        -FRAC_1_SQRT_2,
        vec![SpinLabel::Up, SpinLabel::Down, SpinLabel::Up],
    )?;
    let settings = ChshSettings::from_angles(&[0.0, 0.0, FRAC_PI_2, 0.0, FRAC_PI_4, 0.0, -FRAC_PI_4, 0.0]);
    let est = estimate_conditional_chsh(
        &make_triorthogonal(&singlet),
        &settings,
        &Direction::x(),
        SpinLabel::Up,
        200_000,
        7,
        None,
    )?;
    println!("empirical CHSH value {:+.4} ± {:.4}", est.value, est.stderr);
    Ok(())
}
