//! Unconditional correlations against the subensemble correlations they
//! average over.
//!
//! Run with `cargo run --example correlations`.

use belllab::correlations::{conditional_correlation_closed, unconditional_correlation_closed};
use belllab::states::{branch_probability, Branch, TriorthogonalSpec};
use belllab::{Direction, SpinLabel};

fn main() -> belllab::Result<()> {
    let spec = TriorthogonalSpec::new(0.6, -0.8, vec![SpinLabel::Up, SpinLabel::Up, SpinLabel::Down])?;
    let e1 = Direction::new(1.2, 0.4);
    let e2 = Direction::new(0.5, 2.0);
    let unconditional = unconditional_correlation_closed(&spec, &[e1, e2])?.value;
    println!("E12 over the whole ensemble: {unconditional:+.6}");
    for theta3 in [0.0, 0.6, 1.2, std::f64::consts::FRAC_PI_2] {
        let e3 = Direction::new(theta3, 0.3);
        let mut mixed = 0.0;
        print!("theta3 = {theta3:.3}:");
        for branch in [Branch::Plus, Branch::Minus] {
            let p = branch_probability(&spec, &[e3], branch)?;
            let e = conditional_correlation_closed(&spec, &e1, &e2, &e3, branch)?.value;
            mixed += p * e;
            print!("  p{branch} = {p:.4}, E{branch} = {e:+.6}");
        }
        println!("  weighted sum {mixed:+.6}");
    }
    Ok(())
}
