//! Multiplicities of suspended BP summands, for p = 2, 3, 5.

use mxi::gradebook::splitting_multiplicities;

fn main() -> mxi::Result<()> {
    for p in [2, 3, 5] {
        println!("p = {p}: {}", splitting_multiplicities(p, 40)?);
    }
    Ok(())
}
