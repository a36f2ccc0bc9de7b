//! Coefficients of the noncommutative formal group law and a check of its axioms.

use mxi::fgl::{fgl_table, verify_table};
use mxi::{Nsym, Ring};

fn main() -> mxi::Result<()> {
    let alg = Nsym::complex(Ring::Integer);
    let table = fgl_table(&alg, 5)?;
    print!("{table}");

    // F(x, y) = z(x + y) with the arguments read in swapped order
    let report = verify_table(&table)?;
    println!();
    print!("{report}");
    Ok(())
}
