//! Truncated power series in up to three central variables with coefficients in a
//! free algebra.
//!
//! Every series is kept in left-normal form: a finite map from variable monomials to
//! coefficients, read as `sum c_I x^I` with each coefficient written to the left of its
//! monomial. The variables commute with everything, so a product of monomials is
//! `(a x^I)(b x^J) = (ab) x^(I+J)`; the coefficients keep their order.
//!
//! Truncation is by total variable exponent only.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free::{FreeElement, Nsym, TermRecord};

pub const MAX_VARS: usize = 3;

/// Names and degree of the central variables of a series.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
    var_degree: u32,
}

impl VarSet {
    pub fn new(names: &[&str], var_degree: u32) -> Result<VarSet> {
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(Error::Parameter(format!("1 to {MAX_VARS} variables, got {}", names.len())));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || names[..i].contains(n) {
                return Err(Error::Parameter(format!("bad or repeated variable name {n:?}")));
            }
        }
        if var_degree == 0 {
            return Err(Error::Parameter("variable degree must be positive".into()));
        }
        Ok(VarSet { names: names.iter().map(|s| s.to_string()).collect(), var_degree })
    }

    /// `x`, `x, y` or `x, y, w`.
    pub fn standard(n: usize, var_degree: u32) -> Result<VarSet> {
        let all = ["x", "y", "w"];
        VarSet::new(&all[..n.min(3)], var_degree).and_then(|v| {
            if n == v.len() {
                Ok(v)
            } else {
                Err(Error::Parameter(format!("1 to {MAX_VARS} variables, got {n}")))
            }
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_degree(&self) -> u32 {
        self.var_degree
    }
}

/// Exponent vector; unused trailing slots are zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(pub [u32; MAX_VARS]);

impl MultiIndex {
    pub fn new(exps: &[u32]) -> MultiIndex {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} exponents");
        let mut a = [0; MAX_VARS];
        a[..exps.len()].copy_from_slice(exps);
        MultiIndex(a)
    }

    pub fn unit(var: usize) -> MultiIndex {
        let mut a = [0; MAX_VARS];
        a[var] = 1;
        MultiIndex(a)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        let mut a = self.0;
        for (x, y) in a.iter_mut().zip(other.0) {
            *x += y;
        }
        MultiIndex(a)
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.0[..nvars].to_vec()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors in `nvars` variables of total at most `order`, graded-lex ascending.
pub fn all_indices(nvars: usize, order: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    fn rec(nvars: usize, pos: usize, left: u32, cur: &mut [u32; MAX_VARS], out: &mut Vec<MultiIndex>) {
        if pos == nvars {
            out.push(MultiIndex(*cur));
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(nvars, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    rec(nvars, 0, order, &mut [0; MAX_VARS], &mut out);
    out.sort();
    out
}

/// An integer linear combination of target variables, used by [`CentralSeries::specialize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm(pub Vec<i64>);

impl LinearForm {
    pub fn var(i: usize, nvars: usize) -> LinearForm {
        let mut v = vec![0; nvars];
        v[i] = 1;
        LinearForm(v)
    }

    pub fn zero(nvars: usize) -> LinearForm {
        LinearForm(vec![0; nvars])
    }
}

/// A truncated series `sum_I c_I x^I` with free-algebra coefficients written on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSeries {
    alg: Nsym,
    vars: VarSet,
    order: u32,
    coeffs: BTreeMap<MultiIndex, FreeElement>,
}

/// A serialized series term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub exponents: Vec<u32>,
    pub element: Vec<TermRecord>,
}

impl CentralSeries {
    pub fn zero(alg: &Nsym, vars: &VarSet, order: u32) -> CentralSeries {
        CentralSeries { alg: alg.clone(), vars: vars.clone(), order, coeffs: BTreeMap::new() }
    }

    pub fn one(alg: &Nsym, vars: &VarSet, order: u32) -> CentralSeries {
        Self::monomial(alg, vars, order, MultiIndex::default(), alg.one())
    }

    /// `c x^I`, or zero when `I` exceeds the truncation order.
    pub fn monomial(alg: &Nsym, vars: &VarSet, order: u32, idx: MultiIndex, c: FreeElement) -> CentralSeries {
        let mut s = Self::zero(alg, vars, order);
        s.insert(idx, c);
        s
    }

    pub fn variable(alg: &Nsym, vars: &VarSet, order: u32, var: usize) -> CentralSeries {
        Self::monomial(alg, vars, order, MultiIndex::unit(var), alg.one())
    }

    /// Univariate series `sum_k coeffs[k] x^k`.
    pub fn univariate(alg: &Nsym, vars: &VarSet, order: u32, coeffs: &[FreeElement]) -> Result<CentralSeries> {
        if vars.len() != 1 {
            return Err(Error::Shape("univariate series needs exactly one variable".into()));
        }
        let mut s = Self::zero(alg, vars, order);
        for (k, c) in coeffs.iter().enumerate() {
            if c.algebra() != alg {
                return Err(Error::ModeMismatch("coefficient from another algebra".into()));
            }
            s.insert(MultiIndex::new(&[k as u32]), c.clone());
        }
        Ok(s)
    }

    fn insert(&mut self, idx: MultiIndex, c: FreeElement) {
        debug_assert!(idx.0[self.vars.len()..].iter().all(|&e| e == 0));
        if idx.total() <= self.order && !c.is_zero() {
            self.coeffs.insert(idx, c);
        }
    }

    fn slot(&mut self, idx: MultiIndex) -> &mut FreeElement {
        let alg = &self.alg;
        self.coeffs.entry(idx).or_insert_with(|| alg.zero())
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| !c.is_zero());
    }

    pub fn algebra(&self) -> &Nsym {
        &self.alg
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> FreeElement {
        self.coeffs.get(idx).cloned().unwrap_or_else(|| self.alg.zero())
    }

    pub fn coeff_at(&self, exps: &[u32]) -> FreeElement {
        self.coeff(&MultiIndex::new(exps))
    }

    /// Non-zero terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &FreeElement)> {
        self.coeffs.iter()
    }

    /// Least total exponent of a non-zero term; `None` for the zero series.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().map(|i| i.total()).min()
    }

    /// The topological degree `var_degree * |I| - deg c_I` when it is the same for every term.
    ///
    /// Coefficients carry homological degree, which counts negatively in cohomology.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.coeffs.iter().map(|(i, c)| {
            c.homogeneous_degree().map(|d| (self.vars.var_degree * i.total()) as i64 - d as i64)
        });
        let first = it.next()??;
        for d in it {
            if d? != first {
                return None;
            }
        }
        Some(first)
    }

    fn same_shape(&self, other: &CentralSeries) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::ModeMismatch("series over different coefficient algebras".into()));
        }
        if self.vars != other.vars || self.order != other.order {
            return Err(Error::Shape(format!(
                "variables {:?} order {} vs variables {:?} order {}",
                self.vars.names, self.order, other.vars.names, other.order
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CentralSeries) -> Result<CentralSeries> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            out.slot(*i).add_assign_ref(c);
        }
        out.prune();
        Ok(out)
    }

    pub fn checked_sub(&self, other: &CentralSeries) -> Result<CentralSeries> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> CentralSeries {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -&*c;
        }
        out
    }

    /// Truncated product; coefficients multiply in the order `f`, then `g`.
    pub fn checked_mul(&self, other: &CentralSeries) -> Result<CentralSeries> {
        self.same_shape(other)?;
        let mut out = Self::zero(&self.alg, &self.vars, self.order);
        for (i, a) in &self.coeffs {
            let room = self.order - i.total();
            for (j, b) in &other.coeffs {
                if j.total() > room {
                    // graded order: every later index is at least as large
                    break;
                }
                out.slot(i.add(j)).add_mul_assign(a, b);
            }
        }
        out.prune();
        Ok(out)
    }

    /// `a f`: multiplies every coefficient on the left.
    pub fn left_mul(&self, a: &FreeElement) -> Result<CentralSeries> {
        self.check_coeff(a)?;
        let mut out = Self::zero(&self.alg, &self.vars, self.order);
        for (i, c) in &self.coeffs {
            out.insert(*i, a.checked_mul(c)?);
        }
        Ok(out)
    }

    /// `f a`: the variables are central, so `a` lands right of every coefficient.
    pub fn right_mul(&self, a: &FreeElement) -> Result<CentralSeries> {
        self.check_coeff(a)?;
        let mut out = Self::zero(&self.alg, &self.vars, self.order);
        for (i, c) in &self.coeffs {
            out.insert(*i, c.checked_mul(a)?);
        }
        Ok(out)
    }

    fn check_coeff(&self, a: &FreeElement) -> Result<()> {
        if a.algebra() == &self.alg {
            Ok(())
        } else {
            Err(Error::ModeMismatch("coefficient from another algebra".into()))
        }
    }

    pub fn pow(&self, n: u32) -> CentralSeries {
        let mut acc = Self::one(&self.alg, &self.vars, self.order);
        for _ in 0..n {
            acc = acc.checked_mul(self).expect("same shape");
        }
        acc
    }

    /// Drops every term of total exponent above `order` (which must not exceed the current order).
    pub fn truncate(&self, order: u32) -> CentralSeries {
        let order = order.min(self.order);
        let mut out = Self::zero(&self.alg, &self.vars, order);
        for (i, c) in &self.coeffs {
            out.insert(*i, c.clone());
        }
        out
    }

    /// Substitutes for each variable an integer linear combination of the variables in
    /// `target`. This is a ring homomorphism since all variables are central.
    pub fn specialize(&self, target: &VarSet, assignment: &[LinearForm]) -> Result<CentralSeries> {
        if assignment.len() != self.vars.len() {
            return Err(Error::Shape(format!(
                "{} assignments for {} variables",
                assignment.len(),
                self.vars.len()
            )));
        }
        if let Some(f) = assignment.iter().find(|f| f.0.len() != target.len()) {
            return Err(Error::Shape(format!("linear form {:?} over {} target variables", f.0, target.len())));
        }
        // powers[v][e] = (L_v)^e as an integer polynomial in the target variables
        let powers: Vec<Vec<BTreeMap<MultiIndex, BigInt>>> = assignment
            .iter()
            .map(|f| {
                let lin: BTreeMap<MultiIndex, BigInt> = f
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| (MultiIndex::unit(i), BigInt::from(*c)))
                    .collect();
                let mut pows = vec![BTreeMap::from([(MultiIndex::default(), BigInt::from(1))])];
                for _ in 0..self.order {
                    let prev = pows.last().unwrap();
                    pows.push(int_poly_mul(prev, &lin, self.order));
                }
                pows
            })
            .collect();
        let mut out = Self::zero(&self.alg, target, self.order);
        for (idx, c) in &self.coeffs {
            let mut poly = BTreeMap::from([(MultiIndex::default(), BigInt::from(1))]);
            for (v, pv) in powers.iter().enumerate() {
                poly = int_poly_mul(&poly, &pv[idx.get(v) as usize], self.order);
            }
            for (j, n) in poly {
                let s = self.alg.ring.from_bigint(&n);
                out.slot(j).add_assign_ref(&c.scale(&s));
            }
        }
        out.prune();
        Ok(out)
    }

    /// Converts the terms to the serialized record list.
    pub fn to_records(&self) -> Vec<SeriesRecord> {
        self.coeffs
            .iter()
            .map(|(i, c)| SeriesRecord { exponents: i.exponents(self.vars.len()), element: c.to_records() })
            .collect()
    }

    pub fn from_records(alg: &Nsym, vars: &VarSet, order: u32, records: &[SeriesRecord]) -> Result<CentralSeries> {
        let mut out = Self::zero(alg, vars, order);
        for r in records {
            if r.exponents.len() != vars.len() {
                return Err(Error::Parse(format!("exponent vector {:?} for {} variables", r.exponents, vars.len())));
            }
            let idx = MultiIndex::new(&r.exponents);
            if idx.total() > order {
                return Err(Error::Parse(format!("exponent vector {:?} beyond order {order}", r.exponents)));
            }
            out.slot(idx).add_assign_ref(&alg.from_records(&r.element)?);
        }
        out.prune();
        Ok(out)
    }
}

fn int_poly_mul(
    a: &BTreeMap<MultiIndex, BigInt>,
    b: &BTreeMap<MultiIndex, BigInt>,
    order: u32,
) -> BTreeMap<MultiIndex, BigInt> {
    let mut out: BTreeMap<MultiIndex, BigInt> = BTreeMap::new();
    for (i, x) in a {
        for (j, y) in b {
            let k = i.add(j);
            if k.total() <= order {
                *out.entry(k).or_default() += x * y;
            }
        }
    }
    out.retain(|_, v| *v != BigInt::from(0));
    out
}

/// `f(g) = sum_k f_k g^k` with each `f_k` on the left of the ordered power `g^k`.
///
/// This is not multiplicative in `f` once coefficients fail to commute:
/// with `g = Z2 x`, `(x Z1)(g) = Z1 Z2 x` while `x(g) Z1(g) = Z2 Z1 x`.
pub fn left_substitute(f: &CentralSeries, g: &CentralSeries) -> Result<CentralSeries> {
    if f.vars.len() != 1 {
        return Err(Error::Shape("the outer series must be univariate".into()));
    }
    if f.alg != g.alg {
        return Err(Error::ModeMismatch("series over different coefficient algebras".into()));
    }
    if !g.coeff(&MultiIndex::default()).is_zero() {
        return Err(Error::Composability("inner series has a non-zero constant term".into()));
    }
    let order = f.order.min(g.order);
    let g = g.truncate(order);
    let mut acc = CentralSeries::zero(&g.alg, &g.vars, order);
    let mut gp = CentralSeries::one(&g.alg, &g.vars, order);
    for k in 0..=order {
        let fk = f.coeff_at(&[k]);
        if !fk.is_zero() {
            acc = acc.checked_add(&gp.left_mul(&fk)?)?;
        }
        if k < order {
            gp = gp.checked_mul(&g)?;
        }
    }
    Ok(acc)
}

fn check_unit_linear(f: &CentralSeries, what: &str) -> std::result::Result<(), String> {
    if f.vars.len() != 1 {
        return Err(format!("{what} must be univariate"));
    }
    if !f.coeff_at(&[0]).is_zero() {
        return Err(format!("{what} has a non-zero constant term"));
    }
    if f.coeff_at(&[1]) != f.alg.one() {
        return Err(format!("{what} has linear coefficient {} instead of 1", f.coeff_at(&[1])));
    }
    Ok(())
}

/// The unique `g = x + ...` with `left_substitute(f, g) = x` to the truncation order.
pub fn revert(f: &CentralSeries) -> Result<CentralSeries> {
    check_unit_linear(f, "series").map_err(Error::Reversion)?;
    let x = CentralSeries::variable(&f.alg, &f.vars, f.order, 0);
    let mut g = x.clone();
    for n in 2..=f.order {
        let h = left_substitute(&f.truncate(n), &g.truncate(n))?;
        let c = h.coeff_at(&[n]);
        g.insert(MultiIndex::new(&[n]), -&c);
    }
    Ok(g)
}

/// Ordered product `b_1(x_1)^{i_1} ... b_m(x_m)^{i_m}` evaluated through per-variable power tables.
struct BasisPowers {
    // tables[v][k][j] = coefficient of x^j in b_v^k
    tables: Vec<Vec<Vec<FreeElement>>>,
}

impl BasisPowers {
    fn new(basis: &[CentralSeries], order: u32) -> BasisPowers {
        let tables = basis
            .iter()
            .map(|b| {
                let b = b.truncate(order);
                let mut p = CentralSeries::one(&b.alg, &b.vars, order);
                let mut rows = Vec::new();
                for k in 0..=order {
                    rows.push((0..=order).map(|j| p.coeff_at(&[j])).collect());
                    if k < order {
                        p = p.checked_mul(&b).expect("same shape");
                    }
                }
                rows
            })
            .collect();
        BasisPowers { tables }
    }

    /// Coefficient of `x^J` in the ordered basis product indexed by `i`, or `None` when zero.
    fn coeff(&self, i: &MultiIndex, j: &MultiIndex) -> Option<FreeElement> {
        let mut acc: Option<FreeElement> = None;
        for (v, table) in self.tables.iter().enumerate() {
            let c = &table[i.get(v) as usize][j.get(v) as usize];
            if c.is_zero() {
                return None;
            }
            acc = Some(match acc {
                None => c.clone(),
                Some(a) => &a * c,
            });
        }
        acc
    }
}

fn check_basis(target: &CentralSeries, basis: &[CentralSeries]) -> Result<()> {
    if basis.len() != target.vars.len() {
        return Err(Error::Expansion(format!(
            "{} basis series for {} variables",
            basis.len(),
            target.vars.len()
        )));
    }
    for (v, b) in basis.iter().enumerate() {
        check_unit_linear(b, &format!("basis series {v}")).map_err(Error::Expansion)?;
        if b.alg != target.alg {
            return Err(Error::ModeMismatch("basis over a different coefficient algebra".into()));
        }
        if b.order < target.order {
            return Err(Error::Shape(format!(
                "basis series {v} has order {} below target order {}",
                b.order, target.order
            )));
        }
    }
    Ok(())
}

/// Coefficients `A(I)` with `sum_I A(I) b_1(x_1)^{i_1} ... b_m(x_m)^{i_m} = target`, all
/// coefficients on the left and the basis powers multiplied in variable order.
///
/// The change of basis from variable monomials is unitriangular in graded order, so the
/// expansion exists and is unique; it is found by peeling off the lowest remaining term.
pub fn left_expand(target: &CentralSeries, basis: &[CentralSeries]) -> Result<BTreeMap<MultiIndex, FreeElement>> {
    check_basis(target, basis)?;
    let order = target.order;
    let n = target.vars.len();
    let powers = BasisPowers::new(basis, order);
    let indices = all_indices(n, order);
    let mut residual = target.coeffs.clone();
    let mut out = BTreeMap::new();
    for (pos, i) in indices.iter().enumerate() {
        let Some(a) = residual.remove(i) else { continue };
        if a.is_zero() {
            continue;
        }
        for j in indices[pos + 1..].iter().filter(|j| i.divides(j)) {
            if let Some(p) = powers.coeff(i, j) {
                let slot = residual.entry(*j).or_insert_with(|| target.alg.zero());
                slot.sub_assign_ref(&(&a * &p));
            }
        }
        out.insert(*i, a);
    }
    Ok(out)
}

/// Re-sums an expansion produced by [`left_expand`].
pub fn recombine(
    expansion: &BTreeMap<MultiIndex, FreeElement>,
    basis: &[CentralSeries],
    vars: &VarSet,
    order: u32,
) -> Result<CentralSeries> {
    let alg = basis
        .first()
        .map(|b| b.alg.clone())
        .ok_or_else(|| Error::Expansion("empty basis".into()))?;
    let probe = CentralSeries::zero(&alg, vars, order);
    check_basis(&probe, basis)?;
    let powers = BasisPowers::new(basis, order);
    let indices = all_indices(vars.len(), order);
    let mut out = probe;
    for (i, a) in expansion {
        for j in indices.iter().filter(|j| i.divides(j)) {
            if let Some(p) = powers.coeff(i, j) {
                out.slot(*j).add_mul_assign(a, &p);
            }
        }
    }
    out.prune();
    Ok(out)
}

impl fmt::Display for CentralSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 + O({})", self.order + 1);
        }
        for (n, (i, c)) in self.coeffs.iter().enumerate() {
            let mono: Vec<String> = (0..self.vars.len())
                .filter(|&v| i.get(v) > 0)
                .map(|v| match i.get(v) {
                    1 => self.vars.names[v].clone(),
                    e => format!("{}^{e}", self.vars.names[v]),
                })
                .collect();
            let mono = mono.join("*");
            let cs = c.to_string();
            let single = c.num_terms() == 1;
            let (sign, cs) = match cs.strip_prefix('-') {
                Some(rest) if single => ("-", rest.to_string()),
                _ => ("+", cs),
            };
            if n > 0 {
                write!(f, " {sign} ")?;
            } else if sign == "-" {
                f.write_str("-")?;
            }
            match (mono.is_empty(), cs.as_str(), single) {
                (true, _, true) => f.write_str(&cs)?,
                (true, _, false) => write!(f, "({cs})")?,
                (false, "1", _) => f.write_str(&mono)?,
                (false, _, true) => write!(f, "{cs}*{mono}")?,
                (false, _, false) => write!(f, "({cs})*{mono}")?,
            }
        }
        write!(f, " + O({})", self.order + 1)
    }
}
