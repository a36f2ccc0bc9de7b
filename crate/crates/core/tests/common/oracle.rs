//! Brute-force formal group law coefficients.
//!
//! Everything here is self-contained: words are `Vec<u32>`, coefficients are
//! `BigRational`, and the unknown coefficients `a_{i,j}` are solved for all at once
//! from one dense linear system `sum a_{i,j} z(x)^i z(y)^j = z(x + y)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;


pub type Poly = BTreeMap<Vec<u32>, BigRational>;
type Series = BTreeMap<(u32, u32), Poly>;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn add_into(acc: &mut Poly, w: Vec<u32>, c: BigRational) {
    let e = acc.entry(w).or_insert_with(BigRational::zero);
    *e += c;
}

fn series_mul(a: &Series, b: &Series, n: u32) -> Series {
    let mut out = Series::new();
    for ((i1, j1), p1) in a {
        for ((i2, j2), p2) in b {
            if i1 + j1 + i2 + j2 > n {
                continue;
            }
            let slot = out.entry((i1 + i2, j1 + j2)).or_default();
            for (w1, c1) in p1 {
                for (w2, c2) in p2 {
                    let mut w = w1.clone();
                    w.extend(w2);
                    add_into(slot, w, c1 * c2);
                }
            }
        }
    }
    out
}

fn z_in(n: u32, in_x: bool) -> Series {
    let mut s = Series::new();
    for k in 1..=n {
        let word = if k == 1 { vec![] } else { vec![k - 1] };
        let key = if in_x { (k, 0) } else { (0, k) };
        s.insert(key, Poly::from([(word, q(1))]));
    }
    s
}

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, t| acc * (n - t) as i64 / (t + 1) as i64)
}

fn compositions(m: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=m {
        for mut rest in compositions(m - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Solves for `a_{i,j}` as word -> rational maps, asserting the solution is unique.
pub fn oracle_table(n: u32) -> BTreeMap<(u32, u32), Poly> {
    let one = Series::from([((0, 0), Poly::from([(vec![], q(1))]))]);
    let (zx, zy) = (z_in(n, true), z_in(n, false));
    let mut unknowns = Vec::new();
    let mut products = BTreeMap::new();
    for i in 0..=n {
        for j in 0..=n - i {
            if i + j == 0 {
                continue;
            }
            let mut p = one.clone();
            for _ in 0..i {
                p = series_mul(&p, &zx, n);
            }
            for _ in 0..j {
                p = series_mul(&p, &zy, n);
            }
            products.insert((i, j), p);
            for w in compositions(i + j - 1) {
                unknowns.push(((i, j), w));
            }
        }
    }

    // right-hand side z(x + y)
    let mut target = Series::new();
    for k in 1..=n {
        let word = if k == 1 { vec![] } else { vec![k - 1] };
        for a in 0..=k {
            add_into(target.entry((a, k - a)).or_default(), word.clone(), q(binom(k, a)));
        }
    }

    // one equation per (monomial, word) that occurs anywhere
    let mut rows: BTreeMap<_, Vec<BigRational>> = BTreeMap::new();
    let width = unknowns.len() + 1;
    for (col, (ij, w)) in unknowns.iter().enumerate() {
        for (mono, poly) in &products[ij] {
            for (v, c) in poly {
                let mut word = w.clone();
                word.extend(v);
                let row = rows.entry((*mono, word)).or_insert_with(|| vec![q(0); width]);
                row[col] += c;
            }
        }
    }
    for (mono, poly) in &target {
        for (v, c) in poly {
            let row = rows.entry((*mono, v.clone())).or_insert_with(|| vec![q(0); width]);
            row[width - 1] += c;
        }
    }

    let mut m: Vec<Vec<BigRational>> = rows.into_values().collect();
    let cols = width - 1;
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot).skip(c) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    assert_eq!(pivots.len(), cols, "solution must be unique");
    assert!(m[r..].iter().all(|row| row[cols].is_zero()), "system must be consistent");

    let mut table: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
    for (row, &c) in m.iter().zip(&pivots) {
        let (ij, w) = &unknowns[c];
        let entry = table.entry(*ij).or_default();
        if !row[cols].is_zero() {
            entry.insert(w.clone(), row[cols].clone());
        }
    }
    table
}

pub fn as_map(e: &mxi::FreeElement) -> Poly {
    e.iter()
        .map(|(w, c)| (w.0.clone(), c.to_string().parse::<BigRational>().unwrap()))
        .collect()
}
