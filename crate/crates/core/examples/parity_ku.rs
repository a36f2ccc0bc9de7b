//! Odd-degree classes that separate suspended ku from the stunted projective space.

use mxi::gradebook::parity_check_ku;

fn main() -> mxi::Result<()> {
    for p in [2u64, 3, 5] {
        let r = parity_check_ku(p, (2 * p * p + 2) as usize)?;
        println!("p = {p}: least odd degree {:?}, {}", r.least_odd_ku_degree, r.verdict);
    }
    Ok(())
}
