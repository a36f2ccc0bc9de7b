//! The series c(x) with z(-x) = sum c_k z(x)^k.

use mxi::fgl::inverse_table;
use mxi::{Nsym, Ring};

fn main() -> mxi::Result<()> {
    let alg = Nsym::complex(Ring::Integer);
    let inv = inverse_table(&alg, 6)?;
    print!("{inv}");
    println!("as a series: {}", inv.as_series()?);
    Ok(())
}
