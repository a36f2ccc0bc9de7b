//! Seeded checks shared by the property suite and the acceptance run.
#![allow(dead_code)]

pub mod oracle;

use std::collections::BTreeMap;
use std::error::Error;

use mxi::comm::{CommElement, CommGrading, Exponents};
use mxi::gradebook::{series_divide, splitting_multiplicities, PoincareSeries};
use mxi::sample::{random_homogeneous, random_series, rng};
use mxi::series::{all_indices, left_expand, left_substitute, recombine, revert, CentralSeries, LinearForm, VarSet};
use mxi::steenrod::{self, cartan_extend, lucas_binomial, GeneratorActionTable, MilnorOp, Tensor};
use mxi::{Nsym, Ring, Scalar};
use num_bigint::BigUint;
use rand::Rng;

pub type Check = Result<(), Box<dyn Error>>;

fn fail<T>(msg: String) -> Result<T, Box<dyn Error>> {
    Err(msg.into())
}

/// Random homogeneous series in `nvars` variables without constant term.
pub fn random_multi(alg: &Nsym, nvars: usize, order: u32, rng: &mut impl Rng) -> mxi::Result<CentralSeries> {
    let vd = alg.profile.variable_degree();
    let vars = VarSet::standard(nvars, vd)?;
    let mut out = CentralSeries::zero(alg, &vars, order);
    for idx in all_indices(nvars, order) {
        if idx.total() == 0 {
            continue;
        }
        let c = random_homogeneous(alg, vd * (idx.total() - 1), 2, rng);
        out = out.checked_add(&CentralSeries::monomial(alg, &vars, order, idx, c))?;
    }
    Ok(out)
}

pub fn left_expand_round_trip(alg: &Nsym, seed: u64, order: u32) -> Check {
    let mut r = rng(seed);
    let vd = alg.profile.variable_degree();
    let vars = VarSet::standard(2, vd)?;
    let basis = [random_series(alg, order, &mut r)?, random_series(alg, order, &mut r)?];
    let mut expansion = BTreeMap::new();
    for idx in all_indices(2, order) {
        if idx.total() == 0 {
            continue;
        }
        let c = random_homogeneous(alg, vd * (idx.total() - 1), 2, &mut r);
        if !c.is_zero() {
            expansion.insert(idx, c);
        }
    }
    let target = recombine(&expansion, &basis, &vars, order)?;
    let mut back = left_expand(&target, &basis)?;
    back.retain(|_, c| !c.is_zero());
    if back != expansion {
        return fail(format!("left_expand round trip differs for seed {seed}"));
    }
    Ok(())
}

pub fn specialize_multiplicative(alg: &Nsym, seed: u64, order: u32) -> Check {
    let mut r = rng(seed);
    let f = random_multi(alg, 2, order, &mut r)?;
    let g = random_multi(alg, 2, order, &mut r)?;
    let target = VarSet::standard(3, alg.profile.variable_degree())?;
    let forms: Vec<LinearForm> = (0..2).map(|_| LinearForm((0..3).map(|_| r.gen_range(-2..=2)).collect())).collect();
    let lhs = f.checked_mul(&g)?.specialize(&target, &forms)?;
    let rhs = f.specialize(&target, &forms)?.checked_mul(&g.specialize(&target, &forms)?)?;
    if lhs != rhs {
        return fail(format!("specialize is not multiplicative for seed {seed}"));
    }
    Ok(())
}

pub fn revert_two_sided(f: &CentralSeries) -> Check {
    let g = revert(f)?;
    let x = CentralSeries::variable(f.algebra(), f.vars(), f.order(), 0);
    if left_substitute(f, &g)? != x || left_substitute(&g, f)? != x {
        return fail(format!("reversion of {f} is not two-sided"));
    }
    Ok(())
}

pub fn revert_random(alg: &Nsym, seed: u64, order: u32) -> Check {
    revert_two_sided(&random_series(alg, order, &mut rng(seed))?)
}

/// Exponent vectors of all monomials in the first generators of `g` up to degree `top`.
pub fn monomials_up_to(g: &CommGrading, top: u64) -> Vec<Exponents> {
    let mut gens = Vec::new();
    while let Some(d) = g.degree_of(gens.len() as u32 + 1).filter(|&d| d <= top) {
        gens.push(d);
    }
    let mut out = vec![Vec::new()];
    for &d in &gens {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u64 = v.iter().zip(&gens).map(|(&e, &dg)| e as u64 * dg).sum();
                (0..=((top - used) / d) as u32).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(Exponents::new).collect()
}

fn pairs(t: &Tensor<CommElement>) -> Vec<(Exponents, Exponents, Scalar)> {
    t.terms()
        .flat_map(|(m, r)| r.terms().map(move |(n, c)| (m.clone(), n.clone(), c.clone())))
        .collect()
}

fn mono(ring: Ring, g: &CommGrading, m: &Exponents) -> CommElement {
    CommElement::monomial(ring, g, m.clone(), ring.one())
}

type Triple = BTreeMap<(Exponents, Exponents, Exponents), Scalar>;

fn add_to(map: &mut Triple, key: (Exponents, Exponents, Exponents), c: Scalar) {
    let slot = map.entry(key).or_insert_with(|| c.ring().zero());
    slot.add_assign(&c);
}

/// `(D x 1) D = (1 x D) D` and `m (chi x 1) D = eps = m (1 x chi) D` on every
/// monomial of degree at most `2 (p^3 - 1)`.
pub fn hopf_laws(p: u64) -> Check {
    let (ring, g) = steenrod::dual_steenrod(p)?;
    let top = 2 * (p.pow(3) - 1);
    for m in monomials_up_to(&g, top) {
        let a = mono(ring, &g, &m);
        let delta = pairs(&steenrod::coproduct(&a)?);
        let (mut lhs, mut rhs) = (Triple::new(), Triple::new());
        for (m1, m2, c) in &delta {
            for (n1, n2, d) in pairs(&steenrod::coproduct(&mono(ring, &g, m1))?) {
                add_to(&mut lhs, (n1, n2, m2.clone()), c.mul(&d));
            }
            for (n1, n2, d) in pairs(&steenrod::coproduct(&mono(ring, &g, m2))?) {
                add_to(&mut rhs, (m1.clone(), n1, n2), c.mul(&d));
            }
        }
        lhs.retain(|_, c| !c.is_zero());
        rhs.retain(|_, c| !c.is_zero());
        if lhs != rhs {
            return fail(format!("coproduct is not coassociative on {a} at p = {p}"));
        }

        let counit = if m.is_one() { a.clone() } else { a.zero_like() };
        let (mut left, mut right) = (a.zero_like(), a.zero_like());
        for (m1, m2, c) in &delta {
            let (x, y) = (mono(ring, &g, m1), mono(ring, &g, m2));
            left = left.checked_add(&steenrod::antipode(&x)?.checked_mul(&y)?.scale(c))?;
            right = right.checked_add(&x.checked_mul(&steenrod::antipode(&y)?)?.scale(c))?;
        }
        if left != counit || right != counit {
            return fail(format!("antipode law fails on {a} at p = {p}"));
        }
    }
    Ok(())
}

/// The coaction-defined action agrees with the Cartan extension of its values on
/// generators, on `count` random monomials.
pub fn action_matches_cartan(p: u64, seed: u64, count: usize) -> Check {
    let (ring, g) = steenrod::brown_peterson(p)?;
    let kmax = (p * p) as u32;
    let mut table = GeneratorActionTable::new(p);
    for r in 1..=3 {
        let t = CommElement::generator(ring, &g, r);
        for k in 1..=kmax {
            table.insert(k, r, steenrod::right_action(&t, &MilnorOp::new(p, k)?)?);
        }
    }
    let mut rng = rng(seed);
    let mut nonzero = 0;
    for _ in 0..count {
        let e = vec![rng.gen_range(0..=2 * p as u32), rng.gen_range(0..=2), rng.gen_range(0..=1)];
        let a = mono(ring, &g, &Exponents::new(e));
        let op = MilnorOp::new(p, rng.gen_range(1..=kmax))?;
        let direct = steenrod::right_action(&a, &op)?;
        let cartan = cartan_extend(&table, &a, &op)?;
        if direct != cartan {
            return fail(format!("{a} . {op}: coaction gives {direct}, Cartan gives {cartan}"));
        }
        nonzero += usize::from(!direct.is_zero());
    }
    if nonzero < count / 10 {
        return fail(format!("only {nonzero} of {count} actions are non-zero"));
    }
    Ok(())
}

pub fn lucas_agrees(p: u64, top: u64) -> Check {
    for m in 0..=top {
        let mut exact = BigUint::from(1u32);
        for k in 0..=m {
            if k > 0 {
                exact = exact * BigUint::from(m - k + 1) / BigUint::from(k);
            }
            let expected = (&exact % BigUint::from(p)).to_u64_digits().first().copied().unwrap_or(0);
            if lucas_binomial(m, k, p) != expected {
                return fail(format!("C({m}, {k}) mod {p}"));
            }
        }
    }
    Ok(())
}

pub fn division_round_trip(seed: u64, order: usize) -> Check {
    let mut r = rng(seed);
    let a = PoincareSeries::new((0..=order).map(|_| r.gen_range(0..5)).collect())?;
    let mut b: Vec<i64> = (0..=order).map(|_| r.gen_range(0..5)).collect();
    b[0] = 1;
    let b = PoincareSeries::new(b)?;
    if series_divide(&a.checked_mul(&b)?, &b, order)? != a {
        return fail(format!("division round trip fails for seed {seed}"));
    }
    Ok(())
}

pub fn splits_nonnegative(p: u64, order: usize) -> Check {
    let s = splitting_multiplicities(p, order)?;
    if !s.is_nonnegative() {
        return fail(format!("negative multiplicity at p = {p}"));
    }
    Ok(())
}
