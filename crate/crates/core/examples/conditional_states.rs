//! How the entanglement left on particles 1 and 2 depends on the axis used
//! to measure particle 3.
//!
//! Run with `cargo run --example conditional_states`.

use belllab::states::{concurrence, conditional_closed_form, TriorthogonalSpec};
use belllab::{Direction, SpinLabel};
use std::f64::consts::PI;

fn main() -> belllab::Result<()> {
    let spec = TriorthogonalSpec::ghz(3)?;
    println!("GHZ state, particle 3 measured at polar angle theta3 (phi3 = 0)");
    println!("{:>8} {:>10} {:>10} {:>12}", "theta3", "p(+)", "p(-)", "concurrence");
    for k in 0..=8 {
        let theta3 = k as f64 * PI / 8.0;
        let e3 = Direction::new(theta3, 0.0);
        let plus = conditional_closed_form(&spec, &[(e3, SpinLabel::Up)])?;
        let minus = conditional_closed_form(&spec, &[(e3, SpinLabel::Down)])?;
        println!(
            "{theta3:>8.4} {:>10.6} {:>10.6} {:>12.6}",
            plus.probability,
            minus.probability,
            concurrence(&plus.state)?
        );
    }

    let uneven = TriorthogonalSpec::new(0.6, 0.8, vec![SpinLabel::Up, SpinLabel::Down, SpinLabel::Up])?;
    let e3 = Direction::new(PI / 2.0, 0.7);
    let plus = conditional_closed_form(&uneven, &[(e3, SpinLabel::Up)])?;
    println!();
    println!("c1 = 0.6, c2 = 0.8, particle 3 along the x-y plane:");
    for (i, a) in plus.state.amplitudes().iter().enumerate() {
        println!("  |{i:02b}>  {:+.6} {:+.6}i", a.re, a.im);
    }
    println!("  concurrence {:.6} (2|c1 c2| = 0.96)", concurrence(&plus.state)?);
    Ok(())
}
