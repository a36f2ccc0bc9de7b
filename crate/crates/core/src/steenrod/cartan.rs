//! Extending an action from generators to products with the Cartan rule
//! `(ab) . P^k = sum_{i+j=k} (a . P^i)(b . P^j)`, and the action on NSym.

use std::collections::{BTreeMap, HashMap};

use super::{lucas_binomial, AlgebraElement, MilnorOp};
use crate::comm::CommElement;
use crate::error::{Error, Result};
use crate::free::{FreeElement, GradingProfile};
use crate::scalar::{Ring, Scalar};

/// An algebra whose monomials are ordered products of indexed generators.
pub trait CartanAlgebra: AlgebraElement {
    /// Each term as its ordered generator occurrences and its coefficient.
    fn factorizations(&self) -> Vec<(Vec<u32>, Scalar)>;
    fn generator_like(&self, g: u32) -> Self;
    fn generator_degree(&self, g: u32) -> Option<u64>;
}

impl CartanAlgebra for FreeElement {
    fn factorizations(&self) -> Vec<(Vec<u32>, Scalar)> {
        self.iter().map(|(w, c)| (w.letters().to_vec(), c.clone())).collect()
    }
    fn generator_like(&self, g: u32) -> Self {
        self.algebra().z(g)
    }
    fn generator_degree(&self, g: u32) -> Option<u64> {
        self.profile().degree_of(g).map(u64::from)
    }
}

impl CartanAlgebra for CommElement {
    fn factorizations(&self) -> Vec<(Vec<u32>, Scalar)> {
        self.terms()
            .map(|(m, c)| {
                let seq = m.factors().flat_map(|(r, e)| std::iter::repeat_n(r, e as usize)).collect();
                (seq, c.clone())
            })
            .collect()
    }
    fn generator_like(&self, g: u32) -> Self {
        CommElement::generator(self.ring(), self.grading(), g)
    }
    fn generator_degree(&self, g: u32) -> Option<u64> {
        self.grading().degree_of(g)
    }
}

/// Values `g . P^k` for one operation family. Entries whose operation degree exceeds
/// the generator degree are zero without being stored; `k = 0` is the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorActionTable<A> {
    p: u64,
    entries: BTreeMap<(u32, u32), A>,
}

impl<A: CartanAlgebra> GeneratorActionTable<A> {
    pub fn new(p: u64) -> GeneratorActionTable<A> {
        GeneratorActionTable { p, entries: BTreeMap::new() }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Records `g . P^k = value`.
    pub fn insert(&mut self, k: u32, g: u32, value: A) -> &mut Self {
        self.entries.insert((k, g), value);
        self
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &A)> {
        self.entries.iter()
    }

    fn lookup(&self, like: &A, k: u32, g: u32) -> Result<A> {
        if k == 0 {
            return Ok(like.generator_like(g));
        }
        if let Some(v) = self.entries.get(&(k, g)) {
            return Ok(v.clone());
        }
        let op = MilnorOp { p: self.p, k };
        match like.generator_degree(g) {
            Some(d) if op.degree() > d => Ok(like.zero_like()),
            _ => Err(Error::IncompleteTable { generator: g, index: k }),
        }
    }
}

/// Cartan extension with generator values supplied by `gen_action(k, g)` for `k >= 1`.
pub(crate) fn cartan_with<A: CartanAlgebra>(
    a: &A,
    k: u32,
    mut gen_action: impl FnMut(u32, u32) -> Result<A>,
) -> Result<A> {
    let mut cache: HashMap<(u32, u32), A> = HashMap::new();
    let mut value = |i: u32, g: u32| -> Result<A> {
        if i == 0 {
            return Ok(a.generator_like(g));
        }
        if let Some(v) = cache.get(&(i, g)) {
            return Ok(v.clone());
        }
        let v = gen_action(i, g)?;
        cache.insert((i, g), v.clone());
        Ok(v)
    };
    let k = k as usize;
    let mut out = a.zero_like();
    for (factors, c) in a.factorizations() {
        // states[j]: partial products with P^j distributed over the factors so far
        let mut states: Vec<Option<A>> = vec![None; k + 1];
        states[0] = Some(a.one_like().scaled(&c));
        for (n, &g) in factors.iter().enumerate() {
            let last = n + 1 == factors.len();
            let mut next: Vec<Option<A>> = vec![None; k + 1];
            for (j, st) in states.iter().enumerate() {
                let Some(st) = st else { continue };
                // the last factor has to absorb whatever is left of P^k
                let lo = if last { k - j } else { 0 };
                for i in lo..=k - j {
                    let v = value(i as u32, g)?;
                    if v.is_zero() {
                        continue;
                    }
                    let term = st.times(&v);
                    next[j + i] = Some(match next[j + i].take() {
                        Some(acc) => acc.plus(&term),
                        None => term,
                    });
                }
            }
            states = next;
        }
        if let Some(v) = states.pop().flatten() {
            out = out.plus(&v);
        }
    }
    Ok(out)
}

/// `a . op` from a table of generator values.
pub fn cartan_extend<A: CartanAlgebra>(table: &GeneratorActionTable<A>, a: &A, op: &MilnorOp) -> Result<A> {
    if op.p != table.p {
        return Err(Error::ModeMismatch(format!("{op} at p = {} with a table at p = {}", op.p, table.p)));
    }
    cartan_with(a, op.k, |i, g| table.lookup(a, i, g))
}

/// `z_i . op` as `(coefficient mod p, target index)`, `None` when it vanishes.
///
/// Complex profile: `P^k z_i = C(i+1-k(p-1), k) z_{i-k(p-1)}`; at `p = 2` odd squares
/// vanish and `Sq^{2k}` acts as `P^k`. Real profile at `p = 2`:
/// `Sq^k z_i = C(i+1-k, k) z_{i-k}`.
pub fn nsym_generator_action(profile: &GradingProfile, op: &MilnorOp, i: u32) -> Result<Option<(u64, u32)>> {
    let (p, k) = (op.p, op.k as u64);
    let (shift, steps) = match (profile, p) {
        (GradingProfile::Complex, 2) => {
            if k % 2 == 1 {
                return Ok(None);
            }
            (k / 2, k / 2)
        }
        (GradingProfile::Complex, _) => (k * (p - 1), k),
        (GradingProfile::Real, 2) => (k, k),
        _ => {
            return Err(Error::Unsupported(format!(
                "no Steenrod action on the {} profile at p = {p}",
                profile.name()
            )))
        }
    };
    let i = i as u64;
    if shift > i {
        return Ok(None);
    }
    let c = lucas_binomial(i + 1 - shift, steps, p);
    Ok((c != 0).then_some((c, (i - shift) as u32)))
}

/// `a . op` on NSym over `F_p`, extended from generators by the Cartan rule.
pub fn nsym_action(op: &MilnorOp, a: &FreeElement) -> Result<FreeElement> {
    if a.ring() != Ring::PrimeField(op.p) {
        return Err(Error::ModeMismatch(format!("{op} needs coefficients in F_{}, got {}", op.p, a.ring())));
    }
    let profile = a.profile().clone();
    nsym_generator_action(&profile, op, 1)?;
    let alg = a.algebra().clone();
    cartan_with(a, op.k, |k, g| {
        Ok(match nsym_generator_action(&profile, &op.with_index(k), g)? {
            Some((c, j)) => alg.z(j).scale(&alg.ring.from_i64(c as i64)),
            None => alg.zero(),
        })
    })
}
