//! The polynomial part of the mod-p dual Steenrod algebra and right actions of the
//! Milnor operations `P^k` (or `Sq^k` at `p = 2`) on comodules.
//!
//! A right action is read off a coaction: `a . theta = sum <theta, a'> a''` where
//! `psi(a) = sum a' (x) a''`, and `<P^k, -> ` picks the coefficient of `xi_1^k`.

use std::collections::BTreeMap;
use std::fmt;

use crate::comm::{write_monomial, CommElement, CommGrading, Exponents};
use crate::error::{Error, Result};
use crate::free::FreeElement;
use crate::scalar::{is_prime, powmod, Ring, Scalar};

pub mod cartan;
pub mod certificate;

pub use cartan::{cartan_extend, nsym_action, nsym_generator_action, CartanAlgebra, GeneratorActionTable};
pub use certificate::{
    bp_obstruction_certificate, bp_obstruction_certificate_with, hf2_obstruction_certificate, Method,
    ObstructionCertificate, Verdict,
};

/// `P^k` for odd `p`, `Sq^k` for `p = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MilnorOp {
    p: u64,
    k: u32,
}

impl MilnorOp {
    pub fn new(p: u64, k: u32) -> Result<MilnorOp> {
        check_prime(p)?;
        Ok(MilnorOp { p, k })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn index(&self) -> u32 {
        self.k
    }

    pub fn is_sq(&self) -> bool {
        self.p == 2
    }

    pub fn degree(&self) -> u64 {
        if self.p == 2 {
            self.k as u64
        } else {
            2 * self.k as u64 * (self.p - 1)
        }
    }

    /// Same family, different index.
    pub fn with_index(&self, k: u32) -> MilnorOp {
        MilnorOp { p: self.p, k }
    }
}

impl fmt::Display for MilnorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_sq() {
            write!(f, "Sq^{}", self.k)
        } else {
            write!(f, "P^{}", self.k)
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) && p <= u32::MAX as u64 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{p} is not a supported prime")))
    }
}

/// `C(m, k) mod p` by Lucas' theorem.
pub fn lucas_binomial(mut m: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 {
        let (md, kd) = (m % p, k % p);
        if kd > md {
            return 0;
        }
        // C(md, kd) for digits below p, all denominators invertible
        let mut num = 1u64;
        let mut den = 1u64;
        for t in 0..kd {
            num = (num as u128 * ((md - t) % p) as u128 % p as u128) as u64;
            den = (den as u128 * ((t + 1) % p) as u128 % p as u128) as u64;
        }
        let digit = (num as u128 * powmod(den, p - 2, p) as u128 % p as u128) as u64;
        acc = (acc as u128 * digit as u128 % p as u128) as u64;
        m /= p;
        k /= p;
    }
    acc % p
}

/// Elements that can sit in the right factor of a tensor or be acted on by Cartan.
pub trait AlgebraElement: Clone + PartialEq + fmt::Display {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Scalar) -> Self;
}

impl AlgebraElement for CommElement {
    fn is_zero(&self) -> bool {
        CommElement::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        CommElement::zero_like(self)
    }
    fn one_like(&self) -> Self {
        CommElement::one_like(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.checked_add(other).expect("same algebra")
    }
    fn times(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("same algebra")
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
}

impl AlgebraElement for FreeElement {
    fn is_zero(&self) -> bool {
        FreeElement::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        self.algebra().zero()
    }
    fn one_like(&self) -> Self {
        self.algebra().one()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
}

/// `sum xi^m (x) r_m`: left factors are monomials of the dual Steenrod algebra at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<R> {
    p: u64,
    terms: BTreeMap<Exponents, R>,
}

impl<R: AlgebraElement> Tensor<R> {
    pub fn new(p: u64) -> Tensor<R> {
        Tensor { p, terms: BTreeMap::new() }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &R)> {
        self.terms.iter()
    }

    /// Right factor paired with `xi^m`.
    pub fn right_of(&self, m: &Exponents) -> Option<&R> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Exponents, r: R) {
        if r.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => old.plus(&r),
            None => r,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    /// Adds `left (x) right` for a polynomial left factor.
    pub fn add_product(&mut self, left: &CommElement, right: &R) {
        for (m, c) in left.terms() {
            self.add_term(m.clone(), right.scaled(c));
        }
    }

    pub fn mul(&self, other: &Tensor<R>) -> Tensor<R> {
        let mut out = Tensor::new(self.p);
        for (m1, r1) in &self.terms {
            for (m2, r2) in &other.terms {
                out.add_term(m1.mul(m2), r1.times(r2));
            }
        }
        out
    }

    pub fn left_grading(&self) -> CommGrading {
        CommGrading::DualSteenrod { p: self.p }
    }
}

impl<R: AlgebraElement> fmt::Display for Tensor<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let g = self.left_grading();
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(m, _)| (m.degree(&g), std::cmp::Reverse((*m).clone())));
        for (n, (m, r)) in v.into_iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let mut left = String::new();
            write_monomial(&mut left, &g, m);
            if left.is_empty() {
                left.push('1');
            }
            let right = r.to_string();
            if right.contains([' ', '-']) {
                write!(f, "{left} ⊗ ({right})")?;
            } else {
                write!(f, "{left} ⊗ {right}")?;
            }
        }
        Ok(())
    }
}

pub fn dual_steenrod(p: u64) -> Result<(Ring, CommGrading)> {
    check_prime(p)?;
    Ok((Ring::PrimeField(p), CommGrading::DualSteenrod { p }))
}

pub fn brown_peterson(p: u64) -> Result<(Ring, CommGrading)> {
    check_prime(p)?;
    Ok((Ring::PrimeField(p), CommGrading::BrownPeterson { p }))
}

/// `xi_r` at `p`, with `xi_0 = 1`.
pub fn xi(p: u64, r: u32) -> Result<CommElement> {
    let (ring, g) = dual_steenrod(p)?;
    Ok(CommElement::generator(ring, &g, r))
}

/// `t_r` in `H_*(BP)` at `p`, with `t_0 = 1`.
pub fn t(p: u64, r: u32) -> Result<CommElement> {
    let (ring, g) = brown_peterson(p)?;
    Ok(CommElement::generator(ring, &g, r))
}

fn expect_grading(a: &CommElement, want: &CommGrading) -> Result<()> {
    if a.grading() != want || a.ring() != Ring::PrimeField(want.prime().unwrap_or(0)) {
        return Err(Error::ModeMismatch(format!("{a} is not an element of the expected algebra")));
    }
    Ok(())
}

fn p_of(a: &CommElement) -> Result<u64> {
    a.grading()
        .prime()
        .ok_or_else(|| Error::Unsupported(format!("{a} has no registered coaction")))
}

/// Extends generator images multiplicatively over a polynomial.
fn extend_multiplicatively<R: AlgebraElement>(
    a: &CommElement,
    unit: &Tensor<R>,
    mut image: impl FnMut(u32) -> Result<Tensor<R>>,
) -> Result<Tensor<R>> {
    let mut cache: BTreeMap<u32, Tensor<R>> = BTreeMap::new();
    let mut out = Tensor::new(unit.p);
    for (m, c) in a.terms() {
        let mut acc = unit.clone();
        for (r, e) in m.factors() {
            if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(r) {
                e.insert(image(r)?);
            }
            for _ in 0..e {
                acc = acc.mul(&cache[&r]);
            }
        }
        for (lm, rr) in acc.terms {
            out.add_term(lm, rr.scaled(c));
        }
    }
    Ok(out)
}

/// Milnor coproduct `psi(xi_n) = sum_i xi_{n-i}^{p^i} (x) xi_i`, extended multiplicatively.
pub fn coproduct(a: &CommElement) -> Result<Tensor<CommElement>> {
    let p = p_of(a)?;
    let (ring, g) = dual_steenrod(p)?;
    expect_grading(a, &g)?;
    let one = CommElement::one(ring, &g);
    let mut unit = Tensor::new(p);
    unit.add_term(Exponents::one(), one.clone());
    extend_multiplicatively(a, &unit, |n| {
        let mut t = Tensor::new(p);
        for i in 0..=n {
            let left = CommElement::generator(ring, &g, n - i).pow(p.pow(i));
            t.add_product(&left, &CommElement::generator(ring, &g, i));
        }
        Ok(t)
    })
}

/// The conjugate `zeta_r = chi(xi_r)`, computed from
/// `chi(xi_n) = -sum_{i=1}^{n} chi(xi_{n-i})^{p^i} xi_i`.
pub fn zeta(p: u64, r: u32) -> Result<CommElement> {
    let (ring, g) = dual_steenrod(p)?;
    let mut chis = vec![CommElement::one(ring, &g)];
    for n in 1..=r {
        let mut acc = CommElement::zero(ring, &g);
        for i in 1..=n {
            let term = chis[(n - i) as usize].pow(p.pow(i)).checked_mul(&CommElement::generator(ring, &g, i))?;
            acc = acc.checked_sub(&term)?;
        }
        chis.push(acc);
    }
    Ok(chis.pop().expect("at least the unit"))
}

/// The Hopf antipode, extended multiplicatively from `zeta`.
pub fn antipode(a: &CommElement) -> Result<CommElement> {
    let p = p_of(a)?;
    let (ring, g) = dual_steenrod(p)?;
    expect_grading(a, &g)?;
    let mut out = CommElement::zero(ring, &g);
    let mut cache: BTreeMap<u32, CommElement> = BTreeMap::new();
    for (m, c) in a.terms() {
        let mut acc = CommElement::one(ring, &g);
        for (r, e) in m.factors() {
            if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(r) {
                e.insert(zeta(p, r)?);
            }
            acc = acc.checked_mul(&cache[&r].pow(e as u64))?;
        }
        out = out.checked_add(&acc.scale(c))?;
    }
    Ok(out)
}

/// `psi(t_n) = sum_k zeta_k (x) t_{n-k}^{p^k}` on `H_*(BP)`, odd primes only.
pub fn bp_coaction(a: &CommElement) -> Result<Tensor<CommElement>> {
    let p = p_of(a)?;
    if p == 2 {
        return Err(Error::Unsupported("the BP coaction is only provided for odd primes".into()));
    }
    let (ring, g) = brown_peterson(p)?;
    expect_grading(a, &g)?;
    let mut unit = Tensor::new(p);
    unit.add_term(Exponents::one(), CommElement::one(ring, &g));
    extend_multiplicatively(a, &unit, |n| {
        let mut t = Tensor::new(p);
        for k in 0..=n {
            let right = CommElement::generator(ring, &g, n - k).pow(p.pow(k));
            t.add_product(&zeta(p, k)?, &right);
        }
        Ok(t)
    })
}

/// `<P^k, a>`: the coefficient of `xi_1^k` in `a`.
pub fn milnor_pair(op: &MilnorOp, a: &CommElement) -> Result<Scalar> {
    let (_, g) = dual_steenrod(op.p)?;
    expect_grading(a, &g)?;
    Ok(a.coeff(&Exponents::generator(1, op.k)))
}

/// Pairs the left factors of a coaction against `op`.
pub fn act_through<R: AlgebraElement>(op: &MilnorOp, coaction: &Tensor<R>, zero: R) -> Result<R> {
    if coaction.p != op.p {
        return Err(Error::ModeMismatch(format!("{op} acting on a coaction at p = {}", coaction.p)));
    }
    // xi_1^0 is the unit monomial, so P^0 returns the 1 (x) a component, i.e. a itself
    Ok(coaction.right_of(&Exponents::generator(1, op.k)).cloned().unwrap_or(zero))
}

/// Objects with a right action of the Milnor operations.
pub trait SteenrodModule: Sized {
    fn act(&self, op: &MilnorOp) -> Result<Self>;
}

impl SteenrodModule for CommElement {
    fn act(&self, op: &MilnorOp) -> Result<CommElement> {
        let coaction = match self.grading() {
            CommGrading::DualSteenrod { .. } => coproduct(self)?,
            CommGrading::BrownPeterson { .. } => bp_coaction(self)?,
            CommGrading::Custom { .. } => {
                return Err(Error::Unsupported(format!("{self} has no registered coaction")));
            }
        };
        act_through(op, &coaction, self.zero_like())
    }
}

impl SteenrodModule for FreeElement {
    fn act(&self, op: &MilnorOp) -> Result<FreeElement> {
        nsym_action(op, self)
    }
}

/// `a . op`.
pub fn right_action<M: SteenrodModule>(a: &M, op: &MilnorOp) -> Result<M> {
    a.act(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn parse(p: u64, s: &str) -> CommElement {
        let (ring, g) = dual_steenrod(p).unwrap();
        CommElement::parse(ring, &g, s).unwrap()
    }

    #[test]
    fn op_degrees() {
        assert_eq!(MilnorOp::new(3, 2).unwrap().degree(), 8);
        assert_eq!(MilnorOp::new(2, 3).unwrap().degree(), 3);
        assert_eq!(MilnorOp::new(5, 1).unwrap().to_string(), "P^1");
        assert!(MilnorOp::new(4, 1).is_err());
    }

    #[test]
    fn lucas_matches_exact_binomials() {
        for p in [2u64, 3, 5, 7] {
            for m in 0..=200u64 {
                let mut exact = BigUint::from(1u32);
                for k in 0..=200u64 {
                    if k > 0 {
                        exact = if k > m { BigUint::from(0u32) } else { exact * (m - k + 1) / k };
                    }
                    let want = (&exact % p).to_u64_digits().first().copied().unwrap_or(0);
                    assert_eq!(lucas_binomial(m, k, p), want, "C({m},{k}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn coproduct_examples() {
        for p in [2, 3, 5] {
            let x1 = xi(p, 1).unwrap();
            let c = coproduct(&x1).unwrap();
            assert_eq!(c.to_string(), "1 ⊗ xi1 + xi1 ⊗ 1");
            let c2 = coproduct(&xi(p, 2).unwrap()).unwrap();
            let mut want = Tensor::new(p);
            want.add_term(Exponents::one(), xi(p, 2).unwrap());
            want.add_term(Exponents::generator(1, p as u32), x1.clone());
            want.add_term(Exponents::generator(2, 1), x1.one_like());
            assert_eq!(c2, want);
            let sq = coproduct(&x1.pow(2)).unwrap();
            assert_eq!(sq, c.mul(&c));
        }
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(zeta(3, 1).unwrap(), parse(3, "-xi1"));
        assert_eq!(zeta(2, 1).unwrap(), parse(2, "xi1"));
        assert_eq!(zeta(3, 2).unwrap(), parse(3, "xi1^4 - xi2"));
        assert_eq!(zeta(5, 2).unwrap(), parse(5, "xi1^6 - xi2"));
        assert_eq!(antipode(&xi(3, 0).unwrap()).unwrap(), xi(3, 0).unwrap());
    }

    #[test]
    fn bp_coaction_examples() {
        for p in [3, 5] {
            let t1 = t(p, 1).unwrap();
            let c1 = bp_coaction(&t1).unwrap();
            let mut want = Tensor::new(p);
            want.add_product(&zeta(p, 1).unwrap(), &t1.one_like());
            want.add_term(Exponents::one(), t1.clone());
            assert_eq!(c1, want);
            let c2 = bp_coaction(&t(p, 2).unwrap()).unwrap();
            let mut want = Tensor::new(p);
            want.add_product(&zeta(p, 2).unwrap(), &t1.one_like());
            want.add_product(&zeta(p, 1).unwrap(), &t1.pow(p));
            want.add_term(Exponents::one(), t(p, 2).unwrap());
            assert_eq!(c2, want);
            assert_eq!(bp_coaction(&t1.pow(2)).unwrap(), c1.mul(&c1));
        }
        assert!(matches!(bp_coaction(&t(2, 1).unwrap()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn pairing_examples() {
        let sq2 = MilnorOp::new(2, 2).unwrap();
        assert!(milnor_pair(&sq2, &parse(2, "xi1^2")).unwrap().is_one());
        let p1 = MilnorOp::new(3, 1).unwrap();
        assert_eq!(milnor_pair(&p1, &zeta(3, 1).unwrap()).unwrap(), Ring::PrimeField(3).from_i64(-1));
        assert!(milnor_pair(&p1, &zeta(3, 2).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn displayed_action_values() {
        for p in [3, 5] {
            let p1 = MilnorOp::new(p, 1).unwrap();
            let pp = MilnorOp::new(p, p as u32).unwrap();
            let t1 = t(p, 1).unwrap();
            let t2 = t(p, 2).unwrap();
            assert_eq!(right_action(&t1, &p1).unwrap(), t1.one_like().neg());
            assert_eq!(right_action(&t2, &p1).unwrap(), t1.pow(p).neg());
            assert!(right_action(&t2, &pp).unwrap().is_zero());
        }
        let sq = |k| MilnorOp::new(2, k).unwrap();
        assert_eq!(right_action(&parse(2, "xi1"), &sq(1)).unwrap(), parse(2, "1"));
        assert_eq!(right_action(&parse(2, "xi2"), &sq(2)).unwrap(), parse(2, "xi1"));
        assert!(right_action(&parse(2, "xi2"), &sq(1)).unwrap().is_zero());
    }

    #[test]
    fn custom_family_has_no_coaction() {
        let g = CommGrading::custom("w", vec![4]);
        let w = CommElement::generator(Ring::PrimeField(3), &g, 1);
        let op = MilnorOp::new(3, 1).unwrap();
        assert!(matches!(right_action(&w, &op), Err(Error::Unsupported(_))));
    }
}
