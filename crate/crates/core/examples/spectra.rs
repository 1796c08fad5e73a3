//! Numerical spectra of the Bell operators next to their closed-form maxima.
//!
//! Run with `cargo run --example spectra`.

use belllab::bell::{
    chsh_lambda_closed, chsh_operator, hardy_lambda_closed, hardy_operator, ChshSettings, HardySettings,
};
use belllab::linalg::hermitian_eigen;
use belllab::rng::Stream;
use belllab::Direction;
use std::f64::consts::{PI, TAU};

fn main() -> belllab::Result<()> {
    let mut rng = Stream::new(2024, 0);
    let mut dir = || Direction::new(rng.uniform_in(0.0, PI), rng.uniform_in(0.0, TAU));
    for _ in 0..3 {
        let s = ChshSettings::new(dir(), dir(), dir(), dir());
        let eig = hermitian_eigen(&chsh_operator(&s))?;
        let (t1, t2) = s.included_angles();
        println!("CHSH  theta = ({t1:.3}, {t2:.3})");
        println!("  spectrum {:.6?}", eig.values);
        println!("  closed form {:.12}, numeric {:.12}", chsh_lambda_closed(&s), eig.values[0]);
    }
    let h = HardySettings::new(dir(), dir(), dir(), dir(), dir(), dir());
    let eig = hermitian_eigen(&hardy_operator(&h))?;
    println!("Hardy spectrum {:.6?}", eig.values);
    println!("  closed form {:.12}, numeric {:.12}", hardy_lambda_closed(&h), eig.values[0]);
    Ok(())
}
