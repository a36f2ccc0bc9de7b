//! u z(x)^k - z(x)^k u vanishes below x^(k+1) for homogeneous u.

use mxi::fgl::commutator_filtration;
use mxi::{Nsym, Ring};

fn main() -> mxi::Result<()> {
    let alg = Nsym::complex(Ring::Integer);
    let u = &alg.z(1) * &alg.z(2);
    for k in 1..=4 {
        let r = commutator_filtration(&u, k, 8)?;
        let lead = r.leading_term().map(|(e, c)| format!("x^{e}: {c}")).unwrap_or_default();
        println!("k = {k}: valuation {:?}, bound {}, leading {lead}", r.valuation, r.bound);
    }
    Ok(())
}
