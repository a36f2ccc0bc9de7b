//! Graded free associative algebras on generators `Z_1, Z_2, ...`.
//!
//! The complex profile puts `Z_i` in degree `2i` and models `NSym`; the real profile
//! puts `z_i` in degree `i`. Elements are finite sums of words with exact
//! coefficients, stored without zero entries. The empty word is the unit `Z_0 = 1`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{echelon_basis, field_of, Matrix};
use crate::scalar::{Ring, Scalar};

/// Degree assignment for the generators of a free algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GradingProfile {
    /// `deg Z_i = 2i`.
    Complex,
    /// `deg z_i = i`.
    Real,
    /// Explicit finite degree list; generator `i` has degree `degrees[i - 1]`.
    Custom { name: Arc<str>, degrees: Arc<[u32]> },
}

impl GradingProfile {
    pub fn custom(name: &str, degrees: Vec<u32>) -> Result<GradingProfile> {
        if degrees.contains(&0) {
            return Err(Error::Parameter("generator degrees must be positive".into()));
        }
        Ok(GradingProfile::Custom { name: name.into(), degrees: degrees.into() })
    }

    pub fn name(&self) -> &str {
        match self {
            GradingProfile::Complex => "complex",
            GradingProfile::Real => "real",
            GradingProfile::Custom { name, .. } => name,
        }
    }

    pub fn degree_of(&self, i: u32) -> Option<u32> {
        if i == 0 {
            return None;
        }
        match self {
            GradingProfile::Complex => Some(2 * i),
            GradingProfile::Real => Some(i),
            GradingProfile::Custom { degrees, .. } => degrees.get(i as usize - 1).copied(),
        }
    }

    /// Degree of the central orientation variable paired with this profile.
    pub fn variable_degree(&self) -> u32 {
        match self {
            GradingProfile::Real => 1,
            _ => 2,
        }
    }

    fn letter(&self) -> char {
        match self {
            GradingProfile::Real => 'z',
            _ => 'Z',
        }
    }

    fn generators_up_to(&self, d: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        let mut i = 1;
        while let Some(deg) = self.degree_of(i) {
            match self {
                GradingProfile::Custom { .. } => {
                    if deg <= d {
                        out.push((i, deg));
                    }
                }
                _ => {
                    if deg > d {
                        break;
                    }
                    out.push((i, deg));
                }
            }
            i += 1;
        }
        out
    }
}

/// A monomial: generator indices in multiplication order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn degree(&self, profile: &GradingProfile) -> u32 {
        self.0
            .iter()
            .map(|&i| profile.degree_of(i).expect("letter validated on construction"))
            .sum()
    }
}

/// Order used for all printed and serialized output: degree, then length, then letters.
pub fn canonical_cmp(profile: &GradingProfile, a: &Word, b: &Word) -> Ordering {
    a.degree(profile)
        .cmp(&b.degree(profile))
        .then(a.len().cmp(&b.len()))
        .then_with(|| a.0.cmp(&b.0))
}

/// Coefficient ring together with a grading profile; the constructor for elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Nsym {
    pub ring: Ring,
    pub profile: GradingProfile,
}

/// A term of a serialized [`FreeElement`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub word: Vec<u32>,
    pub coeff: String,
}

impl Nsym {
    pub fn new(ring: Ring, profile: GradingProfile) -> Nsym {
        Nsym { ring, profile }
    }

    pub fn complex(ring: Ring) -> Nsym {
        Nsym::new(ring, GradingProfile::Complex)
    }

    pub fn real(ring: Ring) -> Nsym {
        Nsym::new(ring, GradingProfile::Real)
    }

    pub fn zero(&self) -> FreeElement {
        FreeElement { alg: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> FreeElement {
        self.scalar(self.ring.one())
    }

    pub fn scalar(&self, c: Scalar) -> FreeElement {
        self.monomial(Word::empty(), c).expect("empty word is valid")
    }

    pub fn int(&self, n: i64) -> FreeElement {
        self.scalar(self.ring.from_i64(n))
    }

    pub fn generator(&self, i: u32) -> Result<FreeElement> {
        self.monomial(Word(vec![i]), self.ring.one())
    }

    /// `Z_i` for an index known to be valid; `Z_0` is the unit.
    pub fn z(&self, i: u32) -> FreeElement {
        if i == 0 {
            return self.one();
        }
        self.generator(i).expect("generator index in range")
    }

    pub fn word(&self, letters: &[u32]) -> Result<FreeElement> {
        self.monomial(Word(letters.to_vec()), self.ring.one())
    }

    pub fn monomial(&self, word: Word, c: Scalar) -> Result<FreeElement> {
        self.check_word(&word)?;
        self.ring.check(&c)?;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(word, c);
        }
        Ok(FreeElement { alg: self.clone(), terms })
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&i| self.profile.degree_of(i).is_none()) {
            Some(i) => Err(Error::Parameter(format!(
                "generator {i} does not exist in the {} profile",
                self.profile.name()
            ))),
            None => Ok(()),
        }
    }

    /// All words of degree `d`, in canonical order.
    pub fn words_of_degree(&self, d: u32) -> Vec<Word> {
        let gens = self.profile.generators_up_to(d);
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        fn rec(gens: &[(u32, u32)], left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Word>) {
            if left == 0 {
                out.push(Word(prefix.clone()));
                return;
            }
            for &(i, deg) in gens {
                if deg <= left {
                    prefix.push(i);
                    rec(gens, left - deg, prefix, out);
                    prefix.pop();
                }
            }
        }
        rec(&gens, d, &mut prefix, &mut out);
        out.sort_by(|a, b| canonical_cmp(&self.profile, a, b));
        out
    }

    pub fn dimension(&self, d: u32) -> usize {
        self.words_of_degree(d).len()
    }

    /// Reads elements such as `2*Z1*Z2 - Z2^3 + 1/2*Z1` (letters `Z` and `z` are interchangeable).
    pub fn parse(&self, text: &str) -> Result<FreeElement> {
        parse_element(self, text)
    }

    pub fn from_records(&self, records: &[TermRecord]) -> Result<FreeElement> {
        let mut acc = self.zero();
        for r in records {
            let c = self.ring.parse(&r.coeff)?;
            acc = &acc + &self.monomial(Word(r.word.clone()), c)?;
        }
        Ok(acc)
    }

    /// Element with the given coordinates in the basis `words`.
    pub fn from_coordinates(&self, words: &[Word], coords: &[Scalar]) -> FreeElement {
        let mut terms = BTreeMap::new();
        for (w, c) in words.iter().zip(coords) {
            if !c.is_zero() {
                terms.insert(w.clone(), c.clone());
            }
        }
        FreeElement { alg: self.clone(), terms }
    }
}

/// An element of a free associative algebra with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeElement {
    alg: Nsym,
    terms: BTreeMap<Word, Scalar>,
}

impl FreeElement {
    pub fn algebra(&self) -> &Nsym {
        &self.alg
    }

    pub fn ring(&self) -> Ring {
        self.alg.ring
    }

    pub fn profile(&self) -> &GradingProfile {
        &self.alg.profile
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.alg.ring.zero())
    }

    pub fn coeff_of(&self, letters: &[u32]) -> Scalar {
        self.coeff(&Word(letters.to_vec()))
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> Vec<(&Word, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| canonical_cmp(&self.alg.profile, a.0, b.0));
        v
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    fn same_algebra(&self, other: &FreeElement) -> Result<()> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::ModeMismatch(format!(
                "{} / {} element combined with {} / {} element",
                self.alg.ring,
                self.alg.profile.name(),
                other.alg.ring,
                other.alg.profile.name()
            )))
        }
    }

    pub fn checked_add(&self, other: &FreeElement) -> Result<FreeElement> {
        self.same_algebra(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            accumulate(&mut terms, w.clone(), c);
        }
        Ok(FreeElement { alg: self.alg.clone(), terms })
    }

    pub fn checked_sub(&self, other: &FreeElement) -> Result<FreeElement> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &FreeElement) -> Result<FreeElement> {
        self.same_algebra(other)?;
        let mut terms = BTreeMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                accumulate(&mut terms, w1.concat(w2), &c1.mul(c2));
            }
        }
        Ok(FreeElement { alg: self.alg.clone(), terms })
    }

    /// `self += a * b`, for callers that accumulate many products.
    pub(crate) fn add_mul_assign(&mut self, a: &FreeElement, b: &FreeElement) {
        debug_assert!(a.alg == self.alg && b.alg == self.alg);
        for (w1, c1) in &a.terms {
            for (w2, c2) in &b.terms {
                accumulate(&mut self.terms, w1.concat(w2), &c1.mul(c2));
            }
        }
    }

    pub(crate) fn add_assign_ref(&mut self, other: &FreeElement) {
        debug_assert!(other.alg == self.alg);
        for (w, c) in &other.terms {
            accumulate(&mut self.terms, w.clone(), c);
        }
    }

    pub(crate) fn sub_assign_ref(&mut self, other: &FreeElement) {
        debug_assert!(other.alg == self.alg);
        for (w, c) in &other.terms {
            accumulate(&mut self.terms, w.clone(), &c.neg());
        }
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &FreeElement) -> Result<FreeElement> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    fn neg_ref(&self) -> FreeElement {
        FreeElement {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> FreeElement {
        if c.is_zero() {
            return self.alg.zero();
        }
        let mut out = self.alg.zero();
        for (w, v) in &self.terms {
            let prod = v.mul(c);
            if !prod.is_zero() {
                out.terms.insert(w.clone(), prod);
            }
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> FreeElement {
        self.scale(&self.alg.ring.from_i64(n))
    }

    pub fn pow(&self, n: u32) -> FreeElement {
        let mut acc = self.alg.one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Homogeneous components keyed by degree; their sum is `self`.
    pub fn components(&self) -> BTreeMap<u32, FreeElement> {
        let mut out: BTreeMap<u32, FreeElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.degree(&self.alg.profile))
                .or_insert_with(|| self.alg.zero())
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    /// The common degree of all words, `None` for zero or inhomogeneous elements.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|w| w.degree(&self.alg.profile));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Largest word in canonical order.
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().max_by(|a, b| canonical_cmp(&self.alg.profile, a, b))
    }

    /// Coordinates in the basis `words`; `None` if some word of `self` is missing from it.
    pub fn coordinates(&self, words: &[Word]) -> Option<Vec<Scalar>> {
        let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut v = vec![self.alg.ring.zero(); words.len()];
        for (w, c) in &self.terms {
            v[*index.get(w)?] = c.clone();
        }
        Some(v)
    }

    /// Moves the element into another coefficient ring (integers map everywhere).
    pub fn convert(&self, ring: Ring) -> Result<FreeElement> {
        let alg = Nsym::new(ring, self.alg.profile.clone());
        let mut out = alg.zero();
        for (w, c) in &self.terms {
            let c = c.convert(ring)?;
            if !c.is_zero() {
                out.terms.insert(w.clone(), c);
            }
        }
        Ok(out)
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms()
            .into_iter()
            .map(|(w, c)| TermRecord { word: w.0.clone(), coeff: c.to_string() })
            .collect()
    }

    /// Iterator over raw `(word, coefficient)` pairs in letter order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }
}

fn accumulate(terms: &mut BTreeMap<Word, Scalar>, w: Word, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(w) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            e.get_mut().add_assign(c);
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FreeElement> for &FreeElement {
            type Output = FreeElement;
            fn $method(self, rhs: &FreeElement) -> FreeElement {
                self.$checked(rhs).expect("operands from the same algebra")
            }
        }
        impl $tr<FreeElement> for FreeElement {
            type Output = FreeElement;
            fn $method(self, rhs: FreeElement) -> FreeElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        self.neg_ref()
    }
}

impl Neg for FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        self.neg_ref()
    }
}

pub(crate) fn write_word(f: &mut impl fmt::Write, letter: char, w: &Word) -> fmt::Result {
    let mut first = true;
    let mut i = 0;
    let l = w.letters();
    while i < l.len() {
        let mut j = i;
        while j < l.len() && l[j] == l[i] {
            j += 1;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        write!(f, "{letter}{}", l[i])?;
        if j - i > 1 {
            write!(f, "^{}", j - i)?;
        }
        i = j;
    }
    Ok(())
}

/// Writes `sum c * m` where `m` renders a monomial (empty string for the unit).
pub(crate) fn write_sum<'a, M: 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl IntoIterator<Item = (&'a M, &'a Scalar)>,
    mut mono: impl FnMut(&mut String, &M) -> fmt::Result,
) -> fmt::Result {
    let mut first = true;
    for (m, c) in terms {
        let mut body = String::new();
        mono(&mut body, m)?;
        let (neg, mag) = if c.is_negative() { (true, c.neg()) } else { (false, c.clone()) };
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        if body.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            f.write_str(&body)?;
        } else {
            write!(f, "{mag}*{body}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = self.alg.profile.letter();
        write_sum(f, self.terms(), |s, w| write_word(s, letter, w))
    }
}

fn parse_element(alg: &Nsym, text: &str) -> Result<FreeElement> {
    let err = |msg: &str| Error::Parse(format!("{msg} in {text:?}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty input"));
    }
    let bytes = s.as_bytes();
    let mut pos = 0;
    let mut acc = alg.zero();
    let read_uint = |pos: &mut usize| -> Option<String> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (start < *pos).then(|| s[start..*pos].to_string())
    };
    while pos < bytes.len() {
        let mut sign = 1i64;
        while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
        }
        let mut coeff = alg.ring.from_i64(sign);
        let mut word = Vec::new();
        let mut saw_factor = false;
        loop {
            if pos >= bytes.len() {
                break;
            }
            match bytes[pos] {
                b'0'..=b'9' => {
                    let num = read_uint(&mut pos).unwrap();
                    let mut lit = num;
                    if pos < bytes.len() && bytes[pos] == b'/' {
                        pos += 1;
                        let den = read_uint(&mut pos).ok_or_else(|| err("missing denominator"))?;
                        lit = format!("{lit}/{den}");
                    }
                    coeff = coeff.mul(&alg.ring.parse(&lit)?);
                }
                b'Z' | b'z' => {
                    pos += 1;
                    let idx: u32 = read_uint(&mut pos)
                        .ok_or_else(|| err("missing generator index"))?
                        .parse()
                        .map_err(|_| err("generator index too large"))?;
                    let mut exp = 1u32;
                    if pos < bytes.len() && bytes[pos] == b'^' {
                        pos += 1;
                        exp = read_uint(&mut pos)
                            .ok_or_else(|| err("missing exponent"))?
                            .parse()
                            .map_err(|_| err("exponent too large"))?;
                    }
                    if idx > 0 {
                        word.extend(std::iter::repeat_n(idx, exp as usize));
                    }
                }
                _ => return Err(err(&format!("unexpected character {:?}", bytes[pos] as char))),
            }
            saw_factor = true;
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                continue;
            }
            if pos < bytes.len() && matches!(bytes[pos], b'Z' | b'z') {
                continue;
            }
            break;
        }
        if !saw_factor {
            return Err(err("dangling sign"));
        }
        if pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
            return Err(err(&format!("unexpected character {:?}", bytes[pos] as char)));
        }
        acc = &acc + &alg.monomial(Word(word), coeff)?;
    }
    Ok(acc)
}

/// Basis of the degree `d` part of the centralizer of `w`.
///
/// Solves `vw - wv = 0` over the word basis of degree `d` and returns the solution
/// space in reduced echelon form with respect to the canonical word order (leading
/// coefficient 1). Over the integers the rational solution vectors are rescaled to
/// primitive integer vectors with positive leading coefficient.
pub fn centralizer_basis(w: &FreeElement, d: u32) -> Result<Vec<FreeElement>> {
    if w.is_zero() {
        return Err(Error::DegenerateInput("every element commutes with 0".into()));
    }
    let wd = w
        .homogeneous_degree()
        .ok_or_else(|| Error::UnsupportedInput(format!("{w} is not homogeneous")))?;
    let alg = w.algebra();
    let basis = alg.words_of_degree(d);
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let targets = alg.words_of_degree(d + wd);
    let field = field_of(alg.ring);
    let wf = w.convert(field)?;
    let falg = wf.algebra().clone();
    let index: BTreeMap<&Word, usize> = targets.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut m = Matrix::zeros(field, targets.len(), basis.len())?;
    for (col, b) in basis.iter().enumerate() {
        let v = falg.monomial(b.clone(), field.one())?;
        for (word, c) in v.commutator(&wf)?.iter() {
            m.set(index[word], col, c.clone());
        }
    }
    let kernel = echelon_basis(field, &m.kernel(), basis.len());
    kernel
        .iter()
        .map(|coords| {
            let e = falg.from_coordinates(&basis, coords);
            if alg.ring == Ring::Integer {
                primitive_integer(&e)
            } else {
                Ok(e)
            }
        })
        .collect()
}

fn primitive_integer(e: &FreeElement) -> Result<FreeElement> {
    let mut lcm = BigInt::one();
    for (_, c) in e.iter() {
        if let Scalar::Rat(q) = c {
            lcm = lcm.lcm(q.denom());
        }
    }
    let int_alg = Nsym::new(Ring::Integer, e.profile().clone());
    let mut out = int_alg.zero();
    let mut g = BigInt::zero();
    let mut scaled = Vec::new();
    for (w, c) in e.iter() {
        let Scalar::Rat(q) = c else { unreachable!("rational kernel") };
        let n = (q * num_rational::BigRational::from_integer(lcm.clone())).to_integer();
        g = g.gcd(&n);
        scaled.push((w.clone(), n));
    }
    let lead = e.leading_sign_first(&scaled);
    for (w, n) in scaled {
        let v = &n / &g * lead;
        out.terms.insert(w, Scalar::Int(v));
    }
    Ok(out)
}

impl FreeElement {
    fn leading_sign_first(&self, scaled: &[(Word, BigInt)]) -> i32 {
        let first = scaled
            .iter()
            .min_by(|a, b| canonical_cmp(&self.alg.profile, &a.0, &b.0))
            .map(|(_, n)| n.is_negative());
        if first == Some(true) {
            -1
        } else {
            1
        }
    }
}
