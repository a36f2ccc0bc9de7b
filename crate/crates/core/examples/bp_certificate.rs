//! No derivation of the BP action can make z(x) a two-sided orientation.

use mxi::steenrod::{bp_obstruction_certificate, bp_obstruction_certificate_with, Method};

fn main() -> mxi::Result<()> {
    let cert = bp_obstruction_certificate(3)?;
    print!("{cert}");
    println!();
    let cert = bp_obstruction_certificate_with(5, Method::LeadingWordBound)?;
    print!("{cert}");
    Ok(())
}
