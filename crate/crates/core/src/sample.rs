//! Seeded random elements for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::free::{FreeElement, Nsym};
use crate::series::{CentralSeries, VarSet};

pub const DEFAULT_SEED: u64 = 0x5eed_2013;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A homogeneous element of degree `degree` with at most `max_terms` words and
/// small non-zero integer coefficients. Zero when the degree has no words.
pub fn random_homogeneous(alg: &Nsym, degree: u32, max_terms: usize, rng: &mut impl Rng) -> FreeElement {
    let words = alg.words_of_degree(degree);
    let n = rng.gen_range(1..=max_terms.max(1)).min(words.len());
    let mut out = alg.zero();
    for w in words.choose_multiple(rng, n) {
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-3..=3);
        }
        out = &out + &alg.monomial(w.clone(), alg.ring.from_i64(c)).expect("word of this algebra");
    }
    out
}

/// `x + sum_{k >= 2} a_k x^k` in one variable with `a_k` random homogeneous of the
/// degree that keeps the series homogeneous.
pub fn random_series(alg: &Nsym, order: u32, rng: &mut impl Rng) -> Result<CentralSeries> {
    let vd = alg.profile.variable_degree();
    let vars = VarSet::standard(1, vd)?;
    let mut coeffs = vec![alg.zero(), alg.one()];
    for k in 2..=order {
        coeffs.push(random_homogeneous(alg, vd * (k - 1), 3, rng));
    }
    CentralSeries::univariate(alg, &vars, order, &coeffs)
}
