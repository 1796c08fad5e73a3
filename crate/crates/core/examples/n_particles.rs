//! Five particles, conditioning on the last two or three of them.
//!
//! Run with `cargo run --example n_particles`.

use belllab::correlations::unconditional_correlation_closed;
use belllab::states::{condition_on, conditional_closed_form, make_triorthogonal, Measurement, TriorthogonalSpec};
use belllab::{Direction, SpinLabel};

fn main() -> belllab::Result<()> {
    use SpinLabel::*;
    let spec = TriorthogonalSpec::new(0.8, 0.6, vec![Up, Down, Up, Up, Down])?;
    let psi = make_triorthogonal(&spec);
    let axes = [Direction::new(1.1, 0.2), Direction::new(0.7, 2.4), Direction::new(2.0, -0.9)];

    for measured in [2usize, 3] {
        let kept = 5 - measured;
        let suffix: Vec<(Direction, SpinLabel)> = axes[..measured]
            .iter()
            .zip([Up, Down, Up])
            .map(|(d, o)| (*d, o))
            .collect();
        let closed = conditional_closed_form(&spec, &suffix)?;
        let projection: Vec<Measurement> = suffix
            .iter()
            .enumerate()
            .map(|(j, (d, o))| Measurement::new(kept + j, *d, *o))
            .collect();
        let projected = condition_on(&psi, &projection)?;
        println!(
            "{kept} particles kept: p = {:.12} (projection {:.12}), overlap {:.15}",
            closed.probability,
            projected.probability,
            closed.state.overlap_modulus(&projected.state)?
        );
    }

    for kept in 2..5 {
        let dirs = vec![Direction::new(0.4, 0.0); kept];
        let e = unconditional_correlation_closed(&spec, &dirs)?.value;
        println!("unconditional {kept}-particle correlation at theta = 0.4: {e:+.6}");
    }
    Ok(())
}
