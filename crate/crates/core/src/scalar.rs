//! Exact coefficient rings: arbitrary precision integers, rationals and prime fields.
//!
//! A [`Ring`] is chosen once per computation; every [`Scalar`] produced by a ring
//! carries the matching variant. Mixing variants inside one arithmetic call is a
//! programming error and panics, callers that combine user supplied values go through
//! [`Ring::check`] first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient ring of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integer,
    Rational,
    /// Residues modulo a prime, construct through [`Ring::prime_field`].
    PrimeField(u64),
}

/// An exact coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod { p: u64, v: u64 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::Parameter(format!("{p} is not a prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::Parameter(format!("prime {p} exceeds 32 bits")));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integer)
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Ring::Integer => Scalar::Int(n.clone()),
            Ring::Rational => Scalar::Rat(BigRational::from_integer(n.clone())),
            Ring::PrimeField(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Mod { p: *p, v: r.to_u64().expect("residue fits") }
            }
        }
    }

    /// Reads `"12"`, `"-3"`, `"a/b"` (rational mode only) or a residue (prime mode).
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad coefficient {s:?} for {self}"));
        match self {
            Ring::Rational => {
                if let Some((n, d)) = s.split_once('/') {
                    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    Ok(Scalar::Rat(BigRational::new(n, d)))
                } else {
                    let n: BigInt = s.parse().map_err(|_| bad())?;
                    Ok(self.from_bigint(&n))
                }
            }
            _ => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(self.from_bigint(&n))
            }
        }
    }

    /// Fails unless `s` belongs to this ring.
    pub fn check(&self, s: &Scalar) -> Result<()> {
        if s.ring() == *self {
            Ok(())
        } else {
            Err(Error::ModeMismatch(format!("scalar of {} used in {}", s.ring(), self)))
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integer => write!(f, "Z"),
            Ring::Rational => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Int(_) => Ring::Integer,
            Scalar::Rat(_) => Ring::Rational,
            Scalar::Mod { p, .. } => Ring::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_zero(),
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_one(),
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { v, .. } => *v == 1,
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_negative(),
            Scalar::Rat(q) => q.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { p, v: a }, Scalar::Mod { p: q, v: b }) if p == q => {
                Scalar::Mod { p: *p, v: (a + b) % p }
            }
            _ => panic!("scalar mode mismatch: {self:?} + {other:?}"),
        }
    }

    pub fn add_assign(&mut self, other: &Scalar) {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => *a += b,
            (Scalar::Rat(a), Scalar::Rat(b)) => *a += b,
            (Scalar::Mod { p, v: a }, Scalar::Mod { p: q, v: b }) if p == q => *a = (*a + b) % *p,
            (a, b) => panic!("scalar mode mismatch: {a:?} + {b:?}"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { p, v } => Scalar::Mod { p: *p, v: (p - v) % p },
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { p, v: a }, Scalar::Mod { p: q, v: b }) if p == q => {
                Scalar::Mod { p: *p, v: mulmod(*a, *b, *p) }
            }
            _ => panic!("scalar mode mismatch: {self:?} * {other:?}"),
        }
    }

    /// Multiplicative inverse, `None` for zero and for non-unit integers.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Int(a) => {
                if a.abs().is_one() {
                    Some(self.clone())
                } else {
                    None
                }
            }
            Scalar::Rat(a) => Some(Scalar::Rat(a.recip())),
            Scalar::Mod { p, v } => Some(Scalar::Mod { p: *p, v: powmod(*v, p - 2, *p) }),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.ring().one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Moves an integer or rational value into `ring` (rationals need an invertible denominator).
    pub fn convert(&self, ring: Ring) -> Result<Scalar> {
        match (self, ring) {
            (s, r) if s.ring() == r => Ok(s.clone()),
            (Scalar::Int(n), r) => Ok(r.from_bigint(n)),
            (Scalar::Rat(q), Ring::PrimeField(p)) => {
                let num = Ring::PrimeField(p).from_bigint(q.numer());
                let den = Ring::PrimeField(p).from_bigint(q.denom());
                den.inv()
                    .map(|d| num.mul(&d))
                    .ok_or_else(|| Error::ModeMismatch(format!("{q} has no image in F_{p}")))
            }
            (Scalar::Rat(q), Ring::Integer) if q.is_integer() => Ok(Scalar::Int(q.to_integer())),
            (s, r) => Err(Error::ModeMismatch(format!("cannot convert {s} into {r}"))),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(n) => write!(f, "{n}"),
            Scalar::Rat(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Ring::Rational.parse("6/-4").unwrap();
        assert_eq!(q.to_string(), "-3/2");
        let sum = q.add(&Ring::Rational.parse("3/2").unwrap());
        assert!(sum.is_zero());
    }

    #[test]
    fn prime_field_needs_prime() {
        assert!(Ring::prime_field(9).is_err());
        assert!(Ring::prime_field(1).is_err());
        let f7 = Ring::prime_field(7).unwrap();
        assert_eq!(f7.from_i64(-1), Scalar::Mod { p: 7, v: 6 });
        let three = f7.from_i64(3);
        assert_eq!(three.mul(&three.inv().unwrap()), f7.one());
    }

    #[test]
    fn big_integers_do_not_overflow() {
        let big = Ring::Integer.parse("18446744073709551615").unwrap();
        let sq = big.mul(&big);
        assert_eq!(sq.to_string(), "340282366920938463426481119284349108225");
    }

    #[test]
    fn conversion() {
        let half = Ring::Rational.parse("1/2").unwrap();
        assert_eq!(half.convert(Ring::PrimeField(5)).unwrap(), Scalar::Mod { p: 5, v: 3 });
        assert!(half.convert(Ring::Integer).is_err());
        assert!(Ring::Integer.check(&half).is_err());
    }
}
