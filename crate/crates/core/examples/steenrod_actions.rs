//! Coproducts, antipodes, the BP coaction and right actions of reduced powers.

use mxi::comm::CommElement;
use mxi::steenrod::{self, MilnorOp};
use mxi::{Nsym, Ring};

fn main() -> mxi::Result<()> {
    let (ring, grading) = steenrod::dual_steenrod(2)?;
    let xi2 = CommElement::parse(ring, &grading, "xi2")?;
    println!("coproduct(xi2) = {}", steenrod::coproduct(&xi2)?);
    println!("chi(xi2)       = {}", steenrod::antipode(&xi2)?);

    let (ring, grading) = steenrod::brown_peterson(3)?;
    let t2 = CommElement::parse(ring, &grading, "t2")?;
    let p1 = MilnorOp::new(3, 1)?;
    println!("psi(t2)        = {}", steenrod::bp_coaction(&t2)?);
    println!("t2 . P^1       = {}", steenrod::right_action(&t2, &p1)?);

    let alg = Nsym::complex(Ring::prime_field(3)?);
    let w = alg.parse("Z1^4 + Z2*Z1^2")?;
    println!("({w}) . P^1 = {}", steenrod::nsym_action(&p1, &w)?);
    Ok(())
}
