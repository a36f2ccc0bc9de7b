//! Compositional inverse of z(x) and of a random series, checked on both sides.

use mxi::sample::{random_series, rng, DEFAULT_SEED};
use mxi::series::{left_substitute, revert, CentralSeries};
use mxi::{Nsym, Ring};

fn main() -> mxi::Result<()> {
    let alg = Nsym::real(Ring::Rational);
    let z = mxi::fgl::orientation_series(&alg, 6)?;
    let g = revert(&z)?;
    println!("z^-1(x) = {g}");

    let f = random_series(&alg, 6, &mut rng(DEFAULT_SEED))?;
    let h = revert(&f)?;
    let x = CentralSeries::variable(&alg, f.vars(), 6, 0);
    println!("f(x)    = {f}");
    println!("f(h(x)) = {}", left_substitute(&f, &h)?);
    println!("h(f(x)) = x: {}", left_substitute(&h, &f)? == x);
    Ok(())
}
