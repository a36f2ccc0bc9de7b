//! Poincaré series (graded dimensions) of tensor, polynomial and exterior algebras,
//! and the dimension counts behind the splitting and non-equivalence arguments.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::is_prime;

/// Dimensions `s_0, ..., s_N` of a graded vector space, truncated at degree `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareSeries {
    order: usize,
    dims: Vec<i64>,
}

impl PoincareSeries {
    pub fn new(dims: Vec<i64>) -> Result<PoincareSeries> {
        if dims.is_empty() {
            return Err(Error::Parameter("a series needs at least the degree-0 term".into()));
        }
        Ok(PoincareSeries { order: dims.len() - 1, dims })
    }

    pub fn zero(order: usize) -> PoincareSeries {
        PoincareSeries { order, dims: vec![0; order + 1] }
    }

    pub fn one(order: usize) -> PoincareSeries {
        let mut s = PoincareSeries::zero(order);
        s.dims[0] = 1;
        s
    }

    /// `u^d`.
    pub fn monomial(d: usize, order: usize) -> PoincareSeries {
        let mut s = PoincareSeries::zero(order);
        if d <= order {
            s.dims[d] = 1;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dims(&self) -> &[i64] {
        &self.dims
    }

    pub fn get(&self, d: usize) -> i64 {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn truncate(&self, order: usize) -> PoincareSeries {
        let order = order.min(self.order);
        PoincareSeries { order, dims: self.dims[..=order].to_vec() }
    }

    pub fn checked_add(&self, other: &PoincareSeries) -> Result<PoincareSeries> {
        let order = self.order.min(other.order);
        let dims = (0..=order)
            .map(|d| self.dims[d].checked_add(other.dims[d]).ok_or(Error::Overflow("series sum")))
            .collect::<Result<_>>()?;
        Ok(PoincareSeries { order, dims })
    }

    pub fn checked_mul(&self, other: &PoincareSeries) -> Result<PoincareSeries> {
        let order = self.order.min(other.order);
        let mut dims = vec![0i64; order + 1];
        for (i, &a) in self.dims.iter().enumerate().take(order + 1) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.dims.iter().enumerate().take(order + 1 - i) {
                let t = a.checked_mul(b).ok_or(Error::Overflow("series product"))?;
                dims[i + j] = dims[i + j].checked_add(t).ok_or(Error::Overflow("series product"))?;
            }
        }
        Ok(PoincareSeries { order, dims })
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, k: usize) -> PoincareSeries {
        let mut s = PoincareSeries::zero(self.order);
        for d in k..=self.order {
            s.dims[d] = self.dims[d - k];
        }
        s
    }

    pub fn is_nonnegative(&self) -> bool {
        self.dims.iter().all(|&d| d >= 0)
    }

    pub fn least_odd_degree(&self) -> Option<usize> {
        (1..=self.order).step_by(2).find(|&d| self.dims[d] != 0)
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(", "))
    }
}

fn check_degrees(degrees: &[usize]) -> Result<()> {
    if degrees.contains(&0) {
        return Err(Error::Parameter("generators of degree 0 have no locally finite series".into()));
    }
    Ok(())
}

/// Tensor algebra on generators of the given degrees: `T_n = sum_d T_{n-d}`.
pub fn series_free_assoc(degrees: &[usize], order: usize) -> Result<PoincareSeries> {
    check_degrees(degrees)?;
    let mut s = PoincareSeries::one(order);
    for n in 1..=order {
        let mut acc = 0i64;
        for &d in degrees.iter().filter(|&&d| d <= n) {
            acc = acc.checked_add(s.dims[n - d]).ok_or(Error::Overflow("tensor algebra series"))?;
        }
        s.dims[n] = acc;
    }
    Ok(s)
}

/// `prod 1/(1 - u^d)` over `poly` times `prod (1 + u^e)` over `exterior`.
pub fn series_graded_algebra(poly: &[usize], exterior: &[usize], order: usize) -> Result<PoincareSeries> {
    check_degrees(poly)?;
    check_degrees(exterior)?;
    let mut s = PoincareSeries::one(order);
    for &d in poly.iter().filter(|&&d| d <= order) {
        // multiply by 1/(1 - u^d) in place
        for n in d..=order {
            s.dims[n] = s.dims[n].checked_add(s.dims[n - d]).ok_or(Error::Overflow("polynomial series"))?;
        }
    }
    for &e in exterior.iter().filter(|&&e| e <= order) {
        for n in (e..=order).rev() {
            s.dims[n] = s.dims[n].checked_add(s.dims[n - e]).ok_or(Error::Overflow("exterior series"))?;
        }
    }
    Ok(s)
}

/// `q` with `q * den = num` through degree `order`.
pub fn series_divide(num: &PoincareSeries, den: &PoincareSeries, order: usize) -> Result<PoincareSeries> {
    if den.get(0) != 1 {
        return Err(Error::Division(format!("denominator has constant term {}", den.get(0))));
    }
    let order = order.min(num.order).min(den.order);
    let mut q = PoincareSeries::zero(order);
    for n in 0..=order {
        let mut acc = num.dims[n];
        for k in 1..=n {
            let t = den.dims[k].checked_mul(q.dims[n - k]).ok_or(Error::Overflow("series division"))?;
            acc = acc.checked_sub(t).ok_or(Error::Overflow("series division"))?;
        }
        q.dims[n] = acc;
    }
    Ok(q)
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{p} is not a prime")))
    }
}

/// Degrees `2, 4, 6, ...` up to `order`.
fn even_degrees(order: usize) -> Vec<usize> {
    (1..).map(|i| 2 * i).take_while(|&d| d <= order).collect()
}

/// `f(1), f(2), ...` while the values stay at most `order`.
fn family(order: usize, f: impl Fn(u32) -> Option<u64>) -> Vec<usize> {
    (1..)
        .map_while(|r| f(r).filter(|&d| d <= order as u64))
        .map(|d| d as usize)
        .collect()
}

/// Degrees `2p^r - 2` of `t_r` in `H_*(BP)`.
pub fn bp_degrees(p: u64, order: usize) -> Vec<usize> {
    family(order, |r| p.checked_pow(r).map(|x| 2 * x - 2))
}

/// Number of `Sigma^d BP` summands, the quotient of the NSym series by the BP series.
pub fn splitting_multiplicities(p: u64, order: usize) -> Result<PoincareSeries> {
    check_prime(p)?;
    let nsym = series_free_assoc(&even_degrees(order), order)?;
    let bp = series_graded_algebra(&bp_degrees(p, order), &[], order)?;
    let q = series_divide(&nsym, &bp, order)?;
    if let Some(d) = q.dims.iter().position(|&v| v < 0) {
        return Err(Error::NegativeMultiplicity { degree: d, value: q.dims[d] });
    }
    Ok(q)
}

/// Comparison of the dimension series on the two sides of a would-be equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub prime: u64,
    pub order: usize,
    pub ku_side: PoincareSeries,
    pub cp_side: PoincareSeries,
    pub least_odd_ku_degree: Option<usize>,
    pub cp_side_even_only: bool,
    pub verdict: String,
}

impl fmt::Display for ParityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p = {}, degrees 0..={}", self.prime, self.order)?;
        writeln!(f, "suspended ku side: {}", self.ku_side)?;
        writeln!(f, "projective side:   {}", self.cp_side)?;
        match self.least_odd_ku_degree {
            Some(d) => writeln!(f, "least odd degree on the ku side: {d}")?,
            None => writeln!(f, "no odd degree on the ku side through {}", self.order)?,
        }
        writeln!(f, "projective side supported in even degrees: {}", self.cp_side_even_only)?;
        writeln!(f, "verdict: {}", self.verdict)
    }
}

/// `H_*(Sigma^2 ku)` against `H_*(Sigma^{infty-2} CP^infty_2)`, which has one class in each
/// even degree `>= 2`.
pub fn parity_check_ku(p: u64, order: usize) -> Result<ParityReport> {
    check_prime(p)?;
    if p > 5 {
        return Err(Error::Parameter(format!("parity check is provided for p <= 5, got {p}")));
    }
    let ku_side = if p == 2 {
        // F_2[zeta_1^2, zeta_2^2, zeta_3, zeta_4, ...] with |zeta_s| = 2^s - 1
        let mut poly = vec![2, 6];
        poly.extend(family(order, |s| 2u64.checked_pow(s + 2).map(|x| x - 1)));
        poly.retain(|&d| d <= order);
        series_graded_algebra(&poly, &[], order)?.shift(2)
    } else {
        // wedge of Sigma^{2r} l, r = 1..p-1, with
        // H_*(l) = F_p[zeta_1, zeta_2, ...] (x) E(tau_r : r >= 2), |zeta_s| = 2p^s - 2, |tau_s| = 2p^s - 1
        let poly = family(order, |s| p.checked_pow(s).map(|x| 2 * x - 2));
        let ext = family(order, |s| p.checked_pow(s + 1).map(|x| 2 * x - 1));
        let ell = series_graded_algebra(&poly, &ext, order)?;
        let mut acc = PoincareSeries::zero(order);
        for r in 1..p as usize {
            acc = acc.checked_add(&ell.shift(2 * r))?;
        }
        acc
    };
    let mut cp_side = PoincareSeries::zero(order);
    for d in (2..=order).step_by(2) {
        cp_side.dims[d] = 1;
    }
    let least_odd_ku_degree = ku_side.least_odd_degree();
    let cp_side_even_only = cp_side.least_odd_degree().is_none();
    let verdict = if least_odd_ku_degree.is_some() && cp_side_even_only {
        "NOT-ISOMORPHIC"
    } else {
        "UNDECIDED"
    };
    Ok(ParityReport {
        prime: p,
        order,
        ku_side,
        cp_side,
        least_odd_ku_degree,
        cp_side_even_only,
        verdict: verdict.into(),
    })
}

/// Partition numbers by Euler's pentagonal recurrence.
pub fn partition_numbers(n: usize) -> Result<Vec<i64>> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc = 0i64;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let mut term = p[m - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                term = term.checked_add(p[m - g2]).ok_or(Error::Overflow("partition numbers"))?;
            }
            acc = acc.checked_add(sign * term).ok_or(Error::Overflow("partition numbers"))?;
        }
        p[m] = acc;
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuSeriesReport {
    pub order: usize,
    pub polynomial: PoincareSeries,
    pub partitions: PoincareSeries,
    pub matches: bool,
}

/// The polynomial algebra on classes of degrees `2, 4, 6, ...` against partition counts.
pub fn rational_mu_series_check(order: usize) -> Result<MuSeriesReport> {
    if order < 2 {
        return Err(Error::Parameter("order must be at least 2".into()));
    }
    let polynomial = series_graded_algebra(&even_degrees(order), &[], order)?;
    let parts = partition_numbers(order / 2)?;
    let mut partitions = PoincareSeries::zero(order);
    for (n, &c) in parts.iter().enumerate() {
        partitions.dims[2 * n] = c;
    }
    let matches = polynomial == partitions;
    Ok(MuSeriesReport { order, polynomial, partitions, matches })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_assoc_examples() {
        assert_eq!(series_free_assoc(&[], 4).unwrap().dims(), &[1, 0, 0, 0, 0]);
        assert_eq!(series_free_assoc(&even_degrees(8), 8).unwrap().dims(), &[1, 0, 1, 0, 2, 0, 4, 0, 8]);
        let real: Vec<usize> = (1..=5).collect();
        assert_eq!(series_free_assoc(&real, 5).unwrap().dims(), &[1, 1, 2, 4, 8, 16]);
        assert!(series_free_assoc(&[0, 1], 3).is_err());
    }

    #[test]
    fn graded_algebra_examples() {
        assert_eq!(series_graded_algebra(&[2], &[], 6).unwrap().dims(), &[1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(series_graded_algebra(&[2, 6], &[], 6).unwrap().dims(), &[1, 0, 1, 0, 1, 0, 2]);
        assert_eq!(series_graded_algebra(&[], &[7], 7).unwrap().dims(), &[1, 0, 0, 0, 0, 0, 0, 1]);
        assert!(series_graded_algebra(&[], &[0], 3).is_err());
    }

    #[test]
    fn division() {
        let s = series_graded_algebra(&[1, 3], &[2], 10).unwrap();
        assert_eq!(series_divide(&s, &s, 10).unwrap(), PoincareSeries::one(10));
        let bad = PoincareSeries::new(vec![2, 1]).unwrap();
        assert!(matches!(series_divide(&s, &bad, 5), Err(Error::Division(_))));
    }

    #[test]
    fn multiplicities_at_2() {
        let m = splitting_multiplicities(2, 12).unwrap();
        let even: Vec<i64> = (0..=12).step_by(2).map(|d| m.get(d)).collect();
        assert_eq!(even, vec![1, 0, 1, 1, 4, 7, 14]);
        assert!((1..=12).step_by(2).all(|d| m.get(d) == 0));
        assert_eq!(bp_degrees(2, 20), vec![2, 6, 14]);
    }

    #[test]
    fn parity_examples() {
        let r = parity_check_ku(2, 20).unwrap();
        assert_eq!(r.least_odd_ku_degree, Some(9));
        assert!(r.cp_side_even_only);
        assert_eq!(r.verdict, "NOT-ISOMORPHIC");
        assert_eq!(parity_check_ku(3, 30).unwrap().least_odd_ku_degree, Some(19));
        assert_eq!(parity_check_ku(5, 60).unwrap().least_odd_ku_degree, Some(51));
        assert_eq!(parity_check_ku(2, 8).unwrap().verdict, "UNDECIDED");
        assert!(parity_check_ku(7, 10).is_err());
    }

    #[test]
    fn partitions() {
        assert_eq!(partition_numbers(10).unwrap(), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        let r = rational_mu_series_check(8).unwrap();
        assert_eq!(r.polynomial.dims(), &[1, 0, 1, 0, 2, 0, 3, 0, 5]);
        assert!(r.matches);
    }
}
