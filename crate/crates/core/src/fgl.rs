//! The orientation series `z(x) = sum_i Z_i x^{i+1}`, the noncommutative formal group
//! law it induces, its inverse series, and checks of the group-law identities.
//!
//! The law is defined by expanding `z(x + y)` in the ordered left basis
//! `z(x)^i z(y)^j`; the inverse series by expanding `z(-x)` in the basis `z(x)^k`.
//! Since left substitution is not multiplicative over noncommuting coefficients, no
//! logarithm is involved anywhere.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free::{FreeElement, Nsym, TermRecord};
use crate::scalar::Scalar;
use crate::series::{left_expand, CentralSeries, LinearForm, MultiIndex, VarSet};

/// `z(x)` truncated at total order `order`.
pub fn orientation_series(alg: &Nsym, order: u32) -> Result<CentralSeries> {
    if order < 1 {
        return Err(Error::Parameter("orientation series needs order >= 1".into()));
    }
    let vars = VarSet::standard(1, alg.profile.variable_degree())?;
    let mut coeffs = vec![alg.zero()];
    for i in 0..order {
        coeffs.push(if i == 0 { alg.one() } else { alg.generator(i)? });
    }
    CentralSeries::univariate(alg, &vars, order, &coeffs)
}

/// `z` evaluated at a linear combination of the variables of `vars`.
pub fn orientation_at(alg: &Nsym, order: u32, vars: &VarSet, form: &[i64]) -> Result<CentralSeries> {
    orientation_series(alg, order)?.specialize(vars, &[LinearForm(form.to_vec())])
}

/// The coefficients `a_{i,j}` for all `i + j <= order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FglTable {
    alg: Nsym,
    order: u32,
    entries: BTreeMap<(u32, u32), FreeElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FglEntryRecord {
    pub i: u32,
    pub j: u32,
    pub element: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FglTableRecord {
    pub order: u32,
    pub entries: Vec<FglEntryRecord>,
}

impl FglTable {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn algebra(&self) -> &Nsym {
        &self.alg
    }

    pub fn get(&self, i: u32, j: u32) -> FreeElement {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(|| self.alg.zero())
    }

    /// Entries sorted by `(i + j, i)`.
    pub fn entries(&self) -> Vec<((u32, u32), &FreeElement)> {
        let mut v: Vec<_> = self.entries.iter().map(|(k, e)| (*k, e)).collect();
        v.sort_by_key(|((i, j), _)| (i + j, *i));
        v
    }

    /// `sum a_{i,j} left^i right^j`, coefficients on the left and powers in that order.
    pub fn evaluate(&self, left: &CentralSeries, right: &CentralSeries) -> Result<CentralSeries> {
        let order = left.order().min(self.order);
        let left = left.truncate(order);
        let right = right.truncate(order);
        let pows = |s: &CentralSeries| -> Result<Vec<CentralSeries>> {
            let mut v = vec![CentralSeries::one(s.algebra(), s.vars(), order)];
            for k in 1..=order as usize {
                v.push(v[k - 1].checked_mul(s)?);
            }
            Ok(v)
        };
        let lp = pows(&left)?;
        let rp = pows(&right)?;
        let mut acc = CentralSeries::zero(left.algebra(), left.vars(), order);
        for ((i, j), a) in &self.entries {
            if a.is_zero() || i + j > order {
                continue;
            }
            let term = lp[*i as usize].checked_mul(&rp[*j as usize])?.left_mul(a)?;
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    pub fn to_record(&self) -> FglTableRecord {
        FglTableRecord {
            order: self.order,
            entries: self
                .entries()
                .into_iter()
                .map(|((i, j), e)| FglEntryRecord { i, j, element: e.to_records() })
                .collect(),
        }
    }

    pub fn from_record(alg: &Nsym, rec: &FglTableRecord) -> Result<FglTable> {
        let mut entries = BTreeMap::new();
        for e in &rec.entries {
            if e.i + e.j > rec.order {
                return Err(Error::Parse(format!("entry ({}, {}) beyond order {}", e.i, e.j, rec.order)));
            }
            entries.insert((e.i, e.j), alg.from_records(&e.element)?);
        }
        Ok(FglTable { alg: alg.clone(), order: rec.order, entries })
    }
}

impl fmt::Display for FglTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "formal group law coefficients, i + j <= {}", self.order)?;
        for ((i, j), e) in self.entries() {
            writeln!(f, "a[{i},{j}] = {e}")?;
        }
        Ok(())
    }
}

fn check_order(order: u32) -> Result<()> {
    if order < 2 {
        Err(Error::Parameter(format!("order must be at least 2, got {order}")))
    } else {
        Ok(())
    }
}

/// Solves `sum a_{i,j} z(x)^i z(y)^j = z(x + y)` to total order `order`.
pub fn fgl_table(alg: &Nsym, order: u32) -> Result<FglTable> {
    check_order(order)?;
    let vars = VarSet::standard(2, alg.profile.variable_degree())?;
    let z = orientation_series(alg, order)?;
    let target = z.specialize(&vars, &[LinearForm(vec![1, 1])])?;
    let expansion = left_expand(&target, &[z.clone(), z])?;
    let mut entries = BTreeMap::new();
    for i in 0..=order {
        for j in 0..=order - i {
            let e = expansion.get(&MultiIndex::new(&[i, j])).cloned().unwrap_or_else(|| alg.zero());
            entries.insert((i, j), e);
        }
    }
    Ok(FglTable { alg: alg.clone(), order, entries })
}

/// The inverse series `-x + sum_k c_k x^{k+1}` in the basis `z(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseTable {
    alg: Nsym,
    order: u32,
    gamma1: Scalar,
    coeffs: Vec<FreeElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseEntryRecord {
    pub k: u32,
    pub element: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseTableRecord {
    pub order: u32,
    pub gamma1: String,
    pub entries: Vec<InverseEntryRecord>,
}

impl InverseTable {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// The leading coefficient, always `-1`.
    pub fn gamma1(&self) -> &Scalar {
        &self.gamma1
    }

    /// `c_k` for `1 <= k < order`.
    pub fn c(&self, k: u32) -> FreeElement {
        match k {
            0 => self.alg.zero(),
            k => self.coeffs.get(k as usize - 1).cloned().unwrap_or_else(|| self.alg.zero()),
        }
    }

    pub fn coeffs(&self) -> &[FreeElement] {
        &self.coeffs
    }

    /// `-x + sum c_k x^{k+1}` as a univariate series (in the basis variable).
    pub fn as_series(&self) -> Result<CentralSeries> {
        let vars = VarSet::standard(1, self.alg.profile.variable_degree())?;
        let mut cs = vec![self.alg.zero(), self.alg.scalar(self.gamma1.clone())];
        cs.extend(self.coeffs.iter().cloned());
        CentralSeries::univariate(&self.alg, &vars, self.order, &cs)
    }

    pub fn to_record(&self) -> InverseTableRecord {
        InverseTableRecord {
            order: self.order,
            gamma1: self.gamma1.to_string(),
            entries: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, e)| InverseEntryRecord { k: k as u32 + 1, element: e.to_records() })
                .collect(),
        }
    }
}

impl fmt::Display for InverseTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "inverse series coefficients, order {}", self.order)?;
        writeln!(f, "gamma1 = {}", self.gamma1)?;
        for (k, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "c[{}] = {c}", k + 1)?;
        }
        Ok(())
    }
}

pub fn inverse_table(alg: &Nsym, order: u32) -> Result<InverseTable> {
    check_order(order)?;
    let vars = VarSet::standard(1, alg.profile.variable_degree())?;
    let z = orientation_series(alg, order)?;
    let target = z.specialize(&vars, &[LinearForm(vec![-1])])?;
    let expansion = left_expand(&target, &[z])?;
    let at = |k: u32| expansion.get(&MultiIndex::new(&[k])).cloned().unwrap_or_else(|| alg.zero());
    let lead = at(1);
    let gamma1 = lead.coeff_of(&[]);
    if lead != alg.scalar(gamma1.clone()) {
        return Err(Error::Expansion(format!("leading coefficient {lead} is not a scalar")));
    }
    let coeffs = (2..=order).map(at).collect();
    Ok(InverseTable { alg: alg.clone(), order, gamma1, coeffs })
}

/// Where an identity first fails: the lowest monomial of the residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Offending {
    pub identity: String,
    pub exponents: Vec<u32>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub passed: bool,
    pub first_offending: Option<Offending>,
}

impl CheckResult {
    fn pass() -> CheckResult {
        CheckResult { passed: true, first_offending: None }
    }

    fn fail(identity: &str, exponents: Vec<u32>, residual: String) -> CheckResult {
        CheckResult {
            passed: false,
            first_offending: Some(Offending { identity: identity.into(), exponents, residual }),
        }
    }

    fn from_residual(identity: &str, residual: &CentralSeries) -> CheckResult {
        match residual.terms().next() {
            None => CheckResult::pass(),
            Some((i, c)) => CheckResult::fail(identity, i.exponents(residual.vars().len()), c.to_string()),
        }
    }

    fn and(self, other: CheckResult) -> CheckResult {
        if self.passed {
            other
        } else {
            self
        }
    }
}

/// Outcome of the four group-law checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub order: u32,
    pub unit: CheckResult,
    pub comm: CheckResult,
    /// `sum a_{i,j} z(y)^i z(x)^j = z(x + y)`, the law with its arguments swapped.
    pub comm_swapped: CheckResult,
    pub assoc: CheckResult,
    pub inverse: CheckResult,
}

impl AxiomReport {
    /// True when all checks pass, coefficient symmetry `a_{i,j} = a_{j,i}` included.
    pub fn all_passed(&self) -> bool {
        self.unit.passed && self.comm.passed && self.comm_swapped.passed && self.assoc.passed && self.inverse.passed
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, c) in [("UNIT", &self.unit), ("COMM", &self.comm), ("COMM-SWAP", &self.comm_swapped), ("ASSOC", &self.assoc), ("INVERSE", &self.inverse)] {
            write!(f, "{name:<10} {}", if c.passed { "pass" } else { "FAIL" })?;
            if let Some(o) = &c.first_offending {
                write!(f, "  ({} at exponents {:?}: {})", o.identity, o.exponents, o.residual)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Checks unit, commutativity, both associativity groupings and both inverse identities
/// to total order `order`.
pub fn verify_axioms(alg: &Nsym, order: u32) -> Result<AxiomReport> {
    let table = fgl_table(alg, order)?;
    verify_table(&table)
}

/// Same checks as [`verify_axioms`] for a given table.
pub fn verify_table(table: &FglTable) -> Result<AxiomReport> {
    let alg = &table.alg;
    let order = table.order;

    let mut unit = CheckResult::pass();
    for i in 0..=order {
        let expect = if i == 1 { alg.one() } else { alg.zero() };
        for (idx, got) in [((i, 0), table.get(i, 0)), ((0, i), table.get(0, i))] {
            if unit.passed && got != expect {
                unit = CheckResult::fail("a[i,0] = a[0,i] = delta(i,1)", vec![idx.0, idx.1], (&got - &expect).to_string());
            }
        }
    }

    let mut comm = CheckResult::pass();
    for ((i, j), a) in table.entries() {
        if comm.passed && *a != table.get(j, i) {
            comm = CheckResult::fail("a[i,j] = a[j,i]", vec![i, j], (a - &table.get(j, i)).to_string());
        }
    }

    let vd = alg.profile.variable_degree();
    let v2 = VarSet::standard(2, vd)?;
    let swapped = table.evaluate(&orientation_at(alg, order, &v2, &[0, 1])?, &orientation_at(alg, order, &v2, &[1, 0])?)?;
    let comm_swapped = CheckResult::from_residual("F(y,x) = z(x+y)", &swapped.checked_sub(&orientation_at(alg, order, &v2, &[1, 1])?)?);

    let v3 = VarSet::standard(3, vd)?;
    let sum3 = orientation_at(alg, order, &v3, &[1, 1, 1])?;
    let left = table.evaluate(&orientation_at(alg, order, &v3, &[1, 1, 0])?, &orientation_at(alg, order, &v3, &[0, 0, 1])?)?;
    let right = table.evaluate(&orientation_at(alg, order, &v3, &[1, 0, 0])?, &orientation_at(alg, order, &v3, &[0, 1, 1])?)?;
    let assoc = CheckResult::from_residual("F(F(x,y),w) = z(x+y+w)", &left.checked_sub(&sum3)?)
        .and(CheckResult::from_residual("F(x,F(y,w)) = z(x+y+w)", &right.checked_sub(&sum3)?));

    let v1 = VarSet::standard(1, vd)?;
    let zx = orientation_at(alg, order, &v1, &[1])?;
    let zbar = orientation_at(alg, order, &v1, &[-1])?;
    let inverse = CheckResult::from_residual("F(x, xbar) = 0", &table.evaluate(&zx, &zbar)?)
        .and(CheckResult::from_residual("F(xbar, x) = 0", &table.evaluate(&zbar, &zx)?));

    Ok(AxiomReport { order, unit, comm, comm_swapped, assoc, inverse })
}

/// `u z(x)^k - z(x)^k u` and its x-adic valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    pub k: u32,
    pub difference: CentralSeries,
    pub valuation: Option<u32>,
    /// Least valuation allowed: `k + 1`, i.e. filtration `2k + 2`.
    pub bound: u32,
}

impl FiltrationReport {
    pub fn holds(&self) -> bool {
        self.valuation.is_none_or(|v| v >= self.bound)
    }

    /// Lowest non-zero term of the commutator, if any.
    pub fn leading_term(&self) -> Option<(u32, FreeElement)> {
        self.difference.terms().next().map(|(i, c)| (i.total(), c.clone()))
    }
}

pub fn commutator_filtration(u: &FreeElement, k: u32, order: u32) -> Result<FiltrationReport> {
    if k < 1 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    if order < k + 2 {
        return Err(Error::Parameter(format!("order {order} too small for k = {k}, need at least {}", k + 2)));
    }
    if !u.is_zero() && u.homogeneous_degree().is_none() {
        return Err(Error::UnsupportedInput(format!("{u} is not homogeneous")));
    }
    let zk = orientation_series(u.algebra(), order)?.pow(k);
    let difference = zk.left_mul(u)?.checked_sub(&zk.right_mul(u)?)?;
    let valuation = difference.valuation();
    Ok(FiltrationReport { k, difference, valuation, bound: k + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ring;

    fn zc() -> Nsym {
        Nsym::complex(Ring::Integer)
    }

    #[test]
    fn orientation_examples() {
        let a = zc();
        assert_eq!(orientation_series(&a, 1).unwrap().to_string(), "x + O(2)");
        assert_eq!(orientation_series(&a, 3).unwrap().to_string(), "x + Z1*x^2 + Z2*x^3 + O(4)");
        assert_eq!(orientation_series(&a, 5).unwrap().coeff_at(&[5]), a.z(4));
        assert!(orientation_series(&a, 0).is_err());
        assert_eq!(orientation_series(&a, 6).unwrap().homogeneous_degree(), Some(2));
    }

    #[test]
    fn low_order_table() {
        let a = zc();
        let t = fgl_table(&a, 3).unwrap();
        assert_eq!(t.get(1, 1), a.parse("2*Z1").unwrap());
        assert_eq!(t.get(1, 2), a.parse("3*Z2 - 2*Z1^2").unwrap());
        assert_eq!(t.get(2, 1), t.get(1, 2));
        assert_eq!(t.get(1, 0), a.one());
        assert_eq!(t.get(2, 0), a.zero());
        assert!(fgl_table(&a, 1).is_err());
    }

    #[test]
    fn inverse_examples() {
        let a = zc();
        let inv = inverse_table(&a, 4).unwrap();
        assert_eq!(*inv.gamma1(), Ring::Integer.from_i64(-1));
        assert_eq!(inv.c(1), a.parse("2*Z1").unwrap());
        assert_eq!(inv.c(2), a.parse("-4*Z1^2").unwrap());
    }

    #[test]
    fn axioms_order4() {
        let r = verify_axioms(&zc(), 4).unwrap();
        assert!(r.all_passed(), "{r}");
        let r2 = verify_axioms(&zc(), 2).unwrap();
        assert!(r2.inverse.passed);
    }

    // Symmetry of the ordered-basis coefficients first breaks at a[2,3], while the
    // law with swapped arguments still holds.
    #[test]
    fn coefficient_symmetry_breaks_at_order5() {
        let a = zc();
        let r = verify_axioms(&a, 5).unwrap();
        assert!(r.unit.passed && r.comm_swapped.passed && r.assoc.passed && r.inverse.passed);
        let off = r.comm.first_offending.unwrap();
        assert_eq!(off.exponents, vec![2, 3]);
        assert_eq!(a.parse(&off.residual).unwrap(), a.parse("2*Z1*Z2*Z1 - 2*Z1^2*Z2").unwrap());
    }

    #[test]
    fn broken_table_is_reported() {
        let a = zc();
        let mut t = fgl_table(&a, 3).unwrap();
        t.entries.insert((2, 1), a.z(2));
        let r = verify_table(&t).unwrap();
        assert!(r.unit.passed);
        assert!(!r.comm.passed);
        assert_eq!(r.comm.first_offending.as_ref().unwrap().exponents, vec![1, 2]);
        assert!(!r.assoc.passed);
    }

    #[test]
    fn filtration_examples() {
        let a = zc();
        let r = commutator_filtration(&a.one(), 2, 5).unwrap();
        assert_eq!(r.valuation, None);
        let r = commutator_filtration(&a.z(1), 1, 4).unwrap();
        assert_eq!(r.valuation, Some(3));
        assert_eq!(r.leading_term().unwrap(), (3, a.parse("Z1*Z2 - Z2*Z1").unwrap()));
        let r = commutator_filtration(&a.parse("Z1^2").unwrap(), 2, 6).unwrap();
        assert!(r.valuation.unwrap() >= 3);
        assert!(commutator_filtration(&a.z(1), 0, 4).is_err());
        assert!(commutator_filtration(&a.parse("Z1 + Z2").unwrap(), 1, 4).is_err());
    }
}
