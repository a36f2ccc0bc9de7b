//! Finite linear-algebra certificates that no element of NSym can play the role of
//! the images of `t_1, t_2` (odd `p`) or `xi_1, xi_2` (`p = 2`, real profile) under a
//! ring map: the images would have to commute and satisfy the displayed actions.
//!
//! Exhaustive certificates solve, for every candidate `w`, the system
//! `[v, w] = 0` together with the action constraints on `v`. For `p = 5` the
//! candidate set and the ambient degree are too large for that, and the bounded
//! route is used instead: in a free algebra the leading words of commuting elements
//! commute, commuting words are powers of one word, so the centralizer of `w` has
//! dimension at most one in each degree and in degree `(p+1) deg w` it is spanned by
//! `w^{p+1}`. The remaining one-unknown system is solved in `F_p[w]` with the Cartan
//! rule, using only `w . P^1 = -1` (which defines the candidates).

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::cartan::{cartan_extend, nsym_action, GeneratorActionTable};
use super::MilnorOp;
use crate::comm::{CommElement, CommGrading};
use crate::error::{Error, Result};
use crate::free::{centralizer_basis, FreeElement, Nsym, Word};
use crate::linalg::{AffineSolution, Matrix};
use crate::scalar::{is_prime, Ring, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Infeasible,
    Feasible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    LeadingWordBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemSize {
    pub label: String,
    pub degree: u32,
    pub dimension: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerRecord {
    pub candidate: String,
    pub degree: u32,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionCertificate {
    pub prime: u64,
    pub method: Method,
    pub candidates: Vec<String>,
    pub systems: Vec<SystemSize>,
    pub centralizers: Vec<CentralizerRecord>,
    pub solutions: Vec<String>,
    pub verdict: Verdict,
}

impl ObstructionCertificate {
    fn finish(mut self) -> ObstructionCertificate {
        self.verdict = if self.solutions.is_empty() { Verdict::Infeasible } else { Verdict::Feasible };
        self
    }

    pub fn largest_system(&self) -> Option<&SystemSize> {
        self.systems.iter().max_by_key(|s| s.dimension)
    }
}

impl fmt::Display for ObstructionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "prime: {}", self.prime)?;
        let method = match self.method {
            Method::Exhaustive => "exhaustive",
            Method::LeadingWordBound => "leading-word bound",
        };
        writeln!(f, "method: {method}")?;
        writeln!(f, "candidates:")?;
        for c in &self.candidates {
            writeln!(f, "  {c}")?;
        }
        writeln!(f, "systems:")?;
        for s in &self.systems {
            writeln!(f, "  {} (degree {}, dimension {}, rank {})", s.label, s.degree, s.dimension, s.rank)?;
        }
        if !self.centralizers.is_empty() {
            writeln!(f, "centralizers:")?;
            for c in &self.centralizers {
                writeln!(f, "  C({}) in degree {} = span{{{}}}", c.candidate, c.degree, c.basis.join(", "))?;
            }
        }
        writeln!(f, "solutions: {}", if self.solutions.is_empty() { "none".to_string() } else { self.solutions.join("; ") })?;
        let v = match self.verdict {
            Verdict::Infeasible => "INFEASIBLE",
            Verdict::Feasible => "FEASIBLE",
        };
        writeln!(f, "verdict: {v}")
    }
}

type LinearMap<'a> = Box<dyn Fn(&FreeElement) -> Result<FreeElement> + 'a>;

/// One family of linear constraints `image(v) = rhs`, landing in `target_degree`.
struct Block<'a> {
    target_degree: u32,
    image: LinearMap<'a>,
    rhs: FreeElement,
}

/// Solves `image_b(v) = rhs_b` for all blocks, `v` ranging over degree `d`.
fn solve_blocks(alg: &Nsym, d: u32, blocks: &[Block<'_>]) -> Result<(SystemSize, Option<AffineSolution>, Vec<Word>)> {
    let src = alg.words_of_degree(d);
    let mut row_of: Vec<HashMap<Word, usize>> = Vec::new();
    let mut nrows = 0;
    for b in blocks {
        let words = alg.words_of_degree(b.target_degree);
        let map: HashMap<Word, usize> = words.into_iter().enumerate().map(|(i, w)| (w, nrows + i)).collect();
        nrows += map.len();
        row_of.push(map);
    }
    let mut m = Matrix::zeros(alg.ring, nrows, src.len())?;
    let mut rhs = vec![alg.ring.zero(); nrows];
    for (bi, b) in blocks.iter().enumerate() {
        for (w, c) in b.rhs.iter() {
            let r = row_of[bi].get(w).ok_or_else(|| Error::Shape(format!("{w:?} outside the target degree")))?;
            rhs[*r] = c.clone();
        }
    }
    for (col, u) in src.iter().enumerate() {
        let e = alg.monomial(u.clone(), alg.ring.one())?;
        for (bi, b) in blocks.iter().enumerate() {
            for (w, c) in (b.image)(&e)?.iter() {
                let r = row_of[bi].get(w).ok_or_else(|| Error::Shape(format!("{w:?} outside the target degree")))?;
                m.set(*r, col, c.clone());
            }
        }
    }
    let size = SystemSize { label: String::new(), degree: d, dimension: src.len(), rank: m.rank() };
    Ok((size, m.solve(&rhs), src))
}

fn describe_solution(alg: &Nsym, words: &[Word], sol: &AffineSolution) -> String {
    let part = alg.from_coordinates(words, &sol.particular);
    if sol.kernel.is_empty() {
        part.to_string()
    } else {
        let dirs: Vec<String> = sol.kernel.iter().map(|k| alg.from_coordinates(words, k).to_string()).collect();
        format!("{part} + span{{{}}}", dirs.join(", "))
    }
}

/// Every element of `particular + span(kernel)` over `F_p`, in a fixed order.
fn enumerate_affine(alg: &Nsym, words: &[Word], sol: &AffineSolution, p: u64) -> Vec<FreeElement> {
    let base = alg.from_coordinates(words, &sol.particular);
    let dirs: Vec<FreeElement> = sol.kernel.iter().map(|k| alg.from_coordinates(words, k)).collect();
    let mut out = vec![base];
    for d in &dirs {
        let mut next = Vec::new();
        for e in &out {
            for lambda in 0..p {
                next.push(e + &d.scale(&alg.ring.from_i64(lambda as i64)));
            }
        }
        out = next;
    }
    out
}

fn op(p: u64, k: u32) -> MilnorOp {
    MilnorOp { p, k }
}

/// Solves `w . P^1 = -1` (odd `p`) or `w . Sq^1 = 1` in degree `deg1`.
fn first_step(alg: &Nsym, p: u64, deg1: u32, value: i64, label: &str) -> Result<(SystemSize, Option<AffineSolution>, Vec<Word>)> {
    let a = op(p, 1);
    let blocks = [Block {
        target_degree: deg1 - a.degree() as u32,
        image: Box::new(move |e: &FreeElement| nsym_action(&a, e)),
        rhs: alg.int(value),
    }];
    let (mut size, sol, words) = solve_blocks(alg, deg1, &blocks)?;
    size.label = label.into();
    Ok((size, sol, words))
}

/// Certificate that no commuting pair `(w, v)` in NSym over `F_p` satisfies
/// `w . P^1 = -1`, `v . P^1 = -w^p` and `v . P^p = 0`.
pub fn bp_obstruction_certificate(p: u64) -> Result<ObstructionCertificate> {
    let method = if p <= 3 { Method::Exhaustive } else { Method::LeadingWordBound };
    bp_obstruction_certificate_with(p, method)
}

pub fn bp_obstruction_certificate_with(p: u64, method: Method) -> Result<ObstructionCertificate> {
    if p == 2 || !is_prime(p) || p > 5 {
        return Err(Error::Parameter(format!("the BP certificate needs an odd prime p <= 5, got {p}")));
    }
    let alg = Nsym::complex(Ring::PrimeField(p));
    let deg1 = 2 * (p as u32 - 1);
    let deg2 = 2 * (p as u32 * p as u32 - 1);
    let (size1, sol1, words1) = first_step(&alg, p, deg1, -1, "w . P^1 = -1")?;
    let mut cert = ObstructionCertificate {
        prime: p,
        method,
        candidates: Vec::new(),
        systems: vec![size1],
        centralizers: Vec::new(),
        solutions: Vec::new(),
        verdict: Verdict::Infeasible,
    };
    let Some(sol1) = sol1 else {
        return Ok(cert.finish());
    };

    match method {
        Method::Exhaustive => {
            for w in enumerate_affine(&alg, &words1, &sol1, p) {
                cert.candidates.push(w.to_string());
                let basis = centralizer_basis(&w, deg2)?;
                cert.centralizers.push(CentralizerRecord {
                    candidate: w.to_string(),
                    degree: deg2,
                    basis: basis.iter().map(|b| b.to_string()).collect(),
                });
                let (p1, pp) = (op(p, 1), op(p, p as u32));
                let wc = w.clone();
                let blocks = [
                    Block {
                        target_degree: deg2 + deg1,
                        image: Box::new(move |e: &FreeElement| e.commutator(&wc)),
                        rhs: alg.zero(),
                    },
                    Block {
                        target_degree: deg2 - pp.degree() as u32,
                        image: Box::new(move |e: &FreeElement| nsym_action(&pp, e)),
                        rhs: alg.zero(),
                    },
                    Block {
                        target_degree: deg2 - p1.degree() as u32,
                        image: Box::new(move |e: &FreeElement| nsym_action(&p1, e)),
                        rhs: -w.pow(p as u32),
                    },
                ];
                let (mut size, sol, words) = solve_blocks(&alg, deg2, &blocks)?;
                size.label = format!("[v, w] = 0, v . P^{p} = 0, v . P^1 = -w^{p} for w = {}", cert.candidates.last().unwrap());
                cert.systems.push(size);
                if let Some(s) = sol {
                    cert.solutions.push(format!("w = {}: v = {}", cert.candidates.last().unwrap(), describe_solution(&alg, &words, &s)));
                }
            }
        }
        Method::LeadingWordBound => {
            cert.candidates.push(format!("w = {}", describe_solution(&alg, &words1, &sol1)));
            let reduced = reduced_power_system(p, p + 1, &[(1, -1, p), (p as u32, 0, 1)])?;
            cert.centralizers.push(CentralizerRecord {
                candidate: "w".into(),
                degree: deg2,
                basis: vec![format!("w^{}", p + 1)],
            });
            cert.systems.push(SystemSize {
                label: format!("v = c*w^{}: v . P^1 = -w^{p}, v . P^{p} = 0", p + 1),
                degree: deg2,
                dimension: 1,
                rank: reduced.0,
            });
            if let Some(c) = reduced.1 {
                cert.solutions.push(format!("v = {c}*w^{}", p + 1));
            }
        }
    }
    Ok(cert.finish())
}

/// Solves for `c` in `(c*w^n) . P^k = value * w^e` for each `(k, value, e)`, with
/// `w` symbolic of degree `2(p-1)`, `w . P^1 = -1` and higher operations zero by degree.
/// Returns the rank and the solution, if any.
fn reduced_power_system(p: u64, n: u64, constraints: &[(u32, i64, u64)]) -> Result<(usize, Option<Scalar>)> {
    let ring = Ring::PrimeField(p);
    let g = CommGrading::custom("w", vec![2 * (p as u32 - 1)]);
    let w = CommElement::generator(ring, &g, 1);
    let mut table = GeneratorActionTable::new(p);
    table.insert(1, 1, w.one_like().neg());
    let v = w.pow(n);
    // one row per (constraint, monomial of w) that appears on either side
    let mut rows: Vec<(Scalar, Scalar)> = Vec::new();
    for &(k, value, e) in constraints {
        let image = cartan_extend(&table, &v, &MilnorOp::new(p, k)?)?;
        let target = w.pow(e).scale(&ring.from_i64(value));
        let mut monos: Vec<_> = image.terms().map(|(m, _)| m.clone()).collect();
        monos.extend(target.terms().map(|(m, _)| m.clone()));
        monos.sort();
        monos.dedup();
        for m in monos {
            rows.push((image.coeff(&m), target.coeff(&m)));
        }
    }
    let mut mat = Matrix::zeros(ring, rows.len(), 1)?;
    let rhs: Vec<Scalar> = rows.iter().map(|r| r.1.clone()).collect();
    for (i, (a, _)) in rows.into_iter().enumerate() {
        mat.set(i, 0, a);
    }
    Ok((mat.rank(), mat.solve(&rhs).map(|s| s.particular[0].clone())))
}

/// Certificate that no commuting pair `(w, v)` in the real NSym over `F_2` satisfies
/// `w . Sq^1 = 1`, `v . Sq^2 = w` and `v . Sq^1 = 0`.
pub fn hf2_obstruction_certificate() -> Result<ObstructionCertificate> {
    let alg = Nsym::real(Ring::PrimeField(2));
    let (size1, sol1, words1) = first_step(&alg, 2, 1, 1, "w . Sq^1 = 1")?;
    let mut cert = ObstructionCertificate {
        prime: 2,
        method: Method::Exhaustive,
        candidates: Vec::new(),
        systems: vec![size1],
        centralizers: Vec::new(),
        solutions: Vec::new(),
        verdict: Verdict::Infeasible,
    };
    let Some(sol1) = sol1 else {
        return Ok(cert.finish());
    };
    for w in enumerate_affine(&alg, &words1, &sol1, 2) {
        cert.candidates.push(w.to_string());
        let basis = centralizer_basis(&w, 3)?;
        cert.centralizers.push(CentralizerRecord {
            candidate: w.to_string(),
            degree: 3,
            basis: basis.iter().map(|b| b.to_string()).collect(),
        });
        let (sq1, sq2) = (op(2, 1), op(2, 2));
        let wc = w.clone();
        let blocks = [
            Block { target_degree: 4, image: Box::new(move |e: &FreeElement| e.commutator(&wc)), rhs: alg.zero() },
            Block { target_degree: 1, image: Box::new(move |e: &FreeElement| nsym_action(&sq2, e)), rhs: w.clone() },
            Block { target_degree: 2, image: Box::new(move |e: &FreeElement| nsym_action(&sq1, e)), rhs: alg.zero() },
        ];
        let (mut size, sol, words) = solve_blocks(&alg, 3, &blocks)?;
        size.label = format!("[v, w] = 0, v . Sq^2 = w, v . Sq^1 = 0 for w = {}", cert.candidates.last().unwrap());
        cert.systems.push(size);
        if let Some(s) = sol {
            cert.solutions.push(format!("w = {}: v = {}", cert.candidates.last().unwrap(), describe_solution(&alg, &words, &s)));
        }
    }
    Ok(cert.finish())
}
