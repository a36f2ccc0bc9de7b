//! Commutative polynomial algebras on graded generator families: the polynomial part
//! of the dual Steenrod algebra, `H_*(BP) = F_p[t_1, t_2, ...]`, and small custom
//! families such as a single symbolic class `w`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free::write_sum;
use crate::scalar::{Ring, Scalar};

/// Generator family with its degree rule; generators are indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CommGrading {
    /// `xi_r` of degree `2(p^r - 1)`, or `2^r - 1` at `p = 2`.
    DualSteenrod { p: u64 },
    /// `t_r` of degree `2p^r - 2`.
    BrownPeterson { p: u64 },
    Custom { name: Arc<str>, degrees: Arc<[u32]> },
}

impl CommGrading {
    pub fn custom(name: &str, degrees: Vec<u32>) -> CommGrading {
        CommGrading::Custom { name: name.into(), degrees: degrees.into() }
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            CommGrading::DualSteenrod { p } | CommGrading::BrownPeterson { p } => Some(*p),
            CommGrading::Custom { .. } => None,
        }
    }

    pub fn degree_of(&self, r: u32) -> Option<u64> {
        if r == 0 {
            return None;
        }
        let pr = |p: u64| p.checked_pow(r);
        match self {
            CommGrading::DualSteenrod { p: 2 } => pr(2).map(|x| x - 1),
            CommGrading::DualSteenrod { p } => pr(*p).map(|x| 2 * (x - 1)),
            CommGrading::BrownPeterson { p } => pr(*p).map(|x| 2 * x - 2),
            CommGrading::Custom { degrees, .. } => degrees.get(r as usize - 1).map(|&d| d as u64),
        }
    }

    fn symbol(&self) -> &str {
        match self {
            CommGrading::DualSteenrod { .. } => "xi",
            CommGrading::BrownPeterson { .. } => "t",
            CommGrading::Custom { name, .. } => name,
        }
    }

    fn write_generator(&self, out: &mut String, r: u32) {
        match self {
            CommGrading::Custom { degrees, .. } if degrees.len() == 1 => out.push_str(self.symbol()),
            _ => {
                out.push_str(self.symbol());
                out.push_str(&r.to_string());
            }
        }
    }
}

/// Exponent vector: entry `r - 1` is the exponent of generator `r`. No trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn one() -> Exponents {
        Exponents(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Exponents {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Exponents(exps)
    }

    pub fn generator(r: u32, e: u32) -> Exponents {
        let mut v = vec![0; r as usize];
        v[r as usize - 1] = e;
        Exponents::new(v)
    }

    pub fn get(&self, r: u32) -> u32 {
        self.0.get(r as usize - 1).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Exponents) -> Exponents {
        let n = self.0.len().max(other.0.len());
        let v = (0..n)
            .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
            .collect();
        Exponents(v)
    }

    /// `(r, e)` for each generator with non-zero exponent.
    pub fn factors(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i as u32 + 1, e))
    }

    pub fn degree(&self, grading: &CommGrading) -> Option<u64> {
        self.factors().try_fold(0u64, |acc, (r, e)| {
            grading.degree_of(r)?.checked_mul(e as u64).and_then(|d| acc.checked_add(d))
        })
    }
}

/// A polynomial in a commuting generator family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommElement {
    ring: Ring,
    grading: CommGrading,
    terms: BTreeMap<Exponents, Scalar>,
}

impl CommElement {
    pub fn zero(ring: Ring, grading: &CommGrading) -> CommElement {
        CommElement { ring, grading: grading.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: Ring, grading: &CommGrading) -> CommElement {
        CommElement::monomial(ring, grading, Exponents::one(), ring.one())
    }

    pub fn scalar(ring: Ring, grading: &CommGrading, c: Scalar) -> CommElement {
        CommElement::monomial(ring, grading, Exponents::one(), c)
    }

    pub fn monomial(ring: Ring, grading: &CommGrading, m: Exponents, c: Scalar) -> CommElement {
        let mut e = CommElement::zero(ring, grading);
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    /// Generator `r`; `r = 0` is the unit, matching the convention `xi_0 = t_0 = 1`.
    pub fn generator(ring: Ring, grading: &CommGrading, r: u32) -> CommElement {
        if r == 0 {
            CommElement::one(ring, grading)
        } else {
            CommElement::monomial(ring, grading, Exponents::generator(r, 1), ring.one())
        }
    }

    pub fn zero_like(&self) -> CommElement {
        CommElement::zero(self.ring, &self.grading)
    }

    pub fn one_like(&self) -> CommElement {
        CommElement::one(self.ring, &self.grading)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn grading(&self) -> &CommGrading {
        &self.grading
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Exponents) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    /// Terms sorted by degree, then with powers of earlier generators first.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(m, _)| (m.degree(&self.grading), std::cmp::Reverse((*m).clone())));
        v
    }

    fn compatible(&self, other: &CommElement) -> Result<()> {
        if self.ring != other.ring || self.grading != other.grading {
            return Err(Error::ModeMismatch(format!(
                "{} over {} against {} over {}",
                self.grading.symbol(),
                self.ring,
                other.grading.symbol(),
                other.ring
            )));
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, m: Exponents, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_assign(c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn checked_add(&self, other: &CommElement) -> Result<CommElement> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &CommElement) -> Result<CommElement> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &CommElement) -> Result<CommElement> {
        self.compatible(other)?;
        let mut out = self.zero_like();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> CommElement {
        self.scale(&self.ring.from_i64(-1))
    }

    pub fn scale(&self, c: &Scalar) -> CommElement {
        let mut out = self.zero_like();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &v.mul(c));
        }
        out
    }

    pub fn pow(&self, mut n: u64) -> CommElement {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.checked_mul(&base).expect("same algebra");
            }
            n >>= 1;
            if n > 0 {
                base = base.checked_mul(&base).expect("same algebra");
            }
        }
        acc
    }

    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut degs = self.terms.keys().map(|m| m.degree(&self.grading));
        let first = degs.next()??;
        degs.all(|d| d == Some(first)).then_some(first)
    }

    /// Reads sums such as `xi1^3 - 2*xi2` or `t1^p t2` (juxtaposition multiplies).
    pub fn parse(ring: Ring, grading: &CommGrading, text: &str) -> Result<CommElement> {
        let bad = |why: &str| Error::Parse(format!("{why} in {text:?}"));
        let symbol = grading.symbol();
        let single = matches!(grading, CommGrading::Custom { degrees, .. } if degrees.len() == 1);
        let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = CommElement::zero(ring, grading);
        let mut i = 0;
        if s.is_empty() {
            return Err(bad("empty input"));
        }
        while i < s.len() {
            let mut sign = 1;
            if i > 0 || s[i] == '-' || s[i] == '+' {
                match s[i] {
                    '+' => {}
                    '-' => sign = -1,
                    _ => return Err(bad("expected + or -")),
                }
                i += 1;
            }
            let start = i;
            while i < s.len() && (s[i].is_ascii_digit() || s[i] == '/') {
                i += 1;
            }
            let mut coeff = if i > start {
                ring.parse(&s[start..i].iter().collect::<String>())?
            } else {
                ring.one()
            };
            if i < s.len() && s[i] == '*' {
                i += 1;
            }
            let mut mono = Exponents::one();
            loop {
                let rest: String = s[i..].iter().collect();
                if !rest.starts_with(symbol) {
                    break;
                }
                i += symbol.chars().count();
                let ds = i;
                while i < s.len() && s[i].is_ascii_digit() {
                    i += 1;
                }
                let r: u32 = if single && i == ds {
                    1
                } else {
                    s[ds..i].iter().collect::<String>().parse().map_err(|_| bad("missing generator index"))?
                };
                if grading.degree_of(r).is_none() {
                    return Err(bad("unknown generator"));
                }
                let mut e = 1;
                if i < s.len() && s[i] == '^' {
                    i += 1;
                    let es = i;
                    while i < s.len() && s[i].is_ascii_digit() {
                        i += 1;
                    }
                    e = s[es..i].iter().collect::<String>().parse().map_err(|_| bad("bad exponent"))?;
                }
                mono = mono.mul(&Exponents::generator(r, e));
                if i < s.len() && s[i] == '*' {
                    i += 1;
                }
            }
            if i == start {
                return Err(bad("expected a term"));
            }
            if sign < 0 {
                coeff = coeff.neg();
            }
            out.add_term(mono, &coeff);
        }
        Ok(out)
    }
}

pub(crate) fn write_monomial(out: &mut String, grading: &CommGrading, m: &Exponents) {
    let mut first = true;
    for (r, e) in m.factors() {
        if !first {
            out.push('*');
        }
        first = false;
        grading.write_generator(out, r);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

impl fmt::Display for CommElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.sorted_terms(), |out, m| {
            write_monomial(out, &self.grading, m);
            Ok(())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        let a2 = CommGrading::DualSteenrod { p: 2 };
        let a3 = CommGrading::DualSteenrod { p: 3 };
        let bp = CommGrading::BrownPeterson { p: 3 };
        assert_eq!(a2.degree_of(2), Some(3));
        assert_eq!(a3.degree_of(2), Some(16));
        assert_eq!(bp.degree_of(1), Some(4));
        assert_eq!(Exponents::new(vec![2, 1, 0]).degree(&a3), Some(24));
    }

    #[test]
    fn arithmetic_and_display() {
        let f3 = Ring::PrimeField(3);
        let g = CommGrading::DualSteenrod { p: 3 };
        let x1 = CommElement::generator(f3, &g, 1);
        let x2 = CommElement::generator(f3, &g, 2);
        let e = x1.pow(4).checked_sub(&x2).unwrap();
        assert_eq!(e.to_string(), "xi1^4 + 2*xi2");
        assert_eq!(e.homogeneous_degree(), Some(16));
        let sq = x1.checked_add(&x1).unwrap().checked_add(&x1).unwrap();
        assert!(sq.is_zero());
        assert_eq!(x1.checked_mul(&x2).unwrap(), x2.checked_mul(&x1).unwrap());
        assert_eq!(CommElement::parse(f3, &g, "xi1^4 - xi2").unwrap(), e);
        assert_eq!(CommElement::parse(f3, &g, "2 xi1 xi2").unwrap().to_string(), "2*xi1*xi2");
    }

    #[test]
    fn symbolic_single_generator() {
        let g = CommGrading::custom("w", vec![4]);
        let f3 = Ring::PrimeField(3);
        let w = CommElement::generator(f3, &g, 1);
        assert_eq!(w.pow(4).to_string(), "w^4");
        assert_eq!(CommElement::parse(f3, &g, "-w^2").unwrap(), w.pow(2).neg());
    }

    #[test]
    fn mismatch_is_an_error() {
        let f3 = Ring::PrimeField(3);
        let a = CommElement::generator(f3, &CommGrading::DualSteenrod { p: 3 }, 1);
        let b = CommElement::generator(f3, &CommGrading::BrownPeterson { p: 3 }, 1);
        assert!(a.checked_add(&b).is_err());
    }
}
