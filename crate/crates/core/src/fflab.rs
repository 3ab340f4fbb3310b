//! Finite-field point enumeration for support masks.
//!
//! Replacing the scalar field by a small finite field turns any support
//! mask into a finite monoid that can be searched exhaustively. The
//! results are finite-point shadows of the corresponding statements over
//! an algebraically closed field: useful as an oracle, never as a proof.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::antichain::{MaskSymbol, SupportMask};
use crate::{Error, Result};

/// Hard ceiling on enumerated points.
pub const POINT_CAP: u64 = 1_000_000;

/// Table-driven arithmetic for the fields of order 2..9.
///
/// F4 is built on x^2+x+1 over F2, F8 on x^3+x+1, and F9 on x^2+1 over
/// F3; binary-field elements are bit-packed polynomials, F9 elements are
/// a+3b for a+bx.
#[derive(Clone, Debug)]
pub struct FieldTable {
    q: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn poly_mul_f2(a: u16, b: u16, modulus: u16) -> u8 {
    let deg = 15 - modulus.leading_zeros();
    let mut acc: u16 = 0;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> deg != 0 {
            a ^= modulus;
        }
    }
    acc as u8
}

impl FieldTable {
    pub fn new(q: u8) -> Result<FieldTable> {
        if !matches!(q, 2 | 3 | 4 | 5 | 7 | 8 | 9) {
            return Err(Error::invalid(format!(
                "q must be a prime power between 2 and 9, got {q}"
            )));
        }
        let qq = q as usize;
        let mut add = vec![0u8; qq * qq];
        let mut mul = vec![0u8; qq * qq];
        for a in 0..qq {
            for b in 0..qq {
                let (s, p) = match q {
                    2 | 3 | 5 | 7 => (((a + b) % qq) as u8, ((a * b) % qq) as u8),
                    4 => ((a ^ b) as u8, poly_mul_f2(a as u16, b as u16, 0b111)),
                    8 => ((a ^ b) as u8, poly_mul_f2(a as u16, b as u16, 0b1011)),
                    9 => {
                        let (a0, a1) = (a % 3, a / 3);
                        let (b0, b1) = (b % 3, b / 3);
                        let s = (a0 + b0) % 3 + 3 * ((a1 + b1) % 3);
                        // (a0+a1 x)(b0+b1 x) with x^2 = -1
                        let c0 = (a0 * b0 % 3 + 3 - a1 * b1 % 3) % 3;
                        let c1 = (a0 * b1 + a1 * b0) % 3;
                        (s as u8, (c0 + 3 * c1) as u8)
                    }
                    _ => unreachable!(),
                };
                add[a * qq + b] = s;
                mul[a * qq + b] = p;
            }
        }
        let mut neg = vec![0u8; qq];
        let mut inv = vec![0u8; qq];
        for a in 0..qq {
            for b in 0..qq {
                if add[a * qq + b] == 0 {
                    neg[a] = b as u8;
                }
                if a != 0 && mul[a * qq + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        Ok(FieldTable { q, add, mul, neg, inv })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; 0 maps to 0 and must not be fed in.
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }
}

/// All points of a support mask over a fixed finite field.
#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    field: FieldTable,
    n: usize,
    closure: bool,
    elements: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

/// Enumerates every matrix the mask admits over F_q, in lexicographic
/// order of the flattened entry rows. `closure` widens FreeUnit cells
/// from nonzero values to all of F_q.
pub fn enumerate_points(mask: &SupportMask, q: u8, closure: bool) -> Result<FiniteMonoid> {
    let field = FieldTable::new(q)?;
    let n = mask.n();
    let mut choices: Vec<Vec<u8>> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let cell = match mask.symbol(i, j) {
                MaskSymbol::Zero => vec![0],
                MaskSymbol::One => vec![1],
                MaskSymbol::FreeUnit => {
                    if closure {
                        (0..q).collect()
                    } else {
                        (1..q).collect()
                    }
                }
                MaskSymbol::Free => (0..q).collect(),
            };
            choices.push(cell);
        }
    }
    let mut count: u64 = 1;
    for c in &choices {
        count = count.saturating_mul(c.len() as u64);
        if count > POINT_CAP {
            return Err(Error::CapExceeded { what: "finite points", cap: POINT_CAP as u128 });
        }
    }
    let cells = n * n;
    let mut elements: Vec<Vec<u8>> = Vec::with_capacity(count as usize);
    let mut cursor = vec![0usize; cells];
    for _ in 0..count {
        elements.push(cursor.iter().zip(&choices).map(|(&k, c)| c[k]).collect());
        // odometer, last cell fastest
        for pos in (0..cells).rev() {
            cursor[pos] += 1;
            if cursor[pos] < choices[pos].len() {
                break;
            }
            cursor[pos] = 0;
        }
    }
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    Ok(FiniteMonoid { field, n, closure, elements, index })
}

impl FiniteMonoid {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u8 {
        self.field.q()
    }

    pub fn closure(&self) -> bool {
        self.closure
    }

    pub fn elements(&self) -> &[Vec<u8>] {
        &self.elements
    }

    pub fn contains(&self, el: &[u8]) -> bool {
        self.index.contains_key(el)
    }

    pub fn mul(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let n = self.n;
        let f = &self.field;
        let mut out = vec![0u8; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i * n + k];
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    let bkj = b[k * n + j];
                    if bkj == 0 {
                        continue;
                    }
                    let cell = &mut out[i * n + j];
                    *cell = f.add(*cell, f.mul(aik, bkj));
                }
            }
        }
        out
    }

    pub fn identity(&self) -> Vec<u8> {
        let n = self.n;
        let mut id = vec![0u8; n * n];
        for i in 0..n {
            id[i * n + i] = 1;
        }
        id
    }

    /// Full product-table closure check.
    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| self.contains(&self.mul(a, b))))
    }

    /// Invertible points: upper triangular over a field, so exactly the
    /// points with a nonzero diagonal.
    pub fn unit_count_enumerated(&self) -> u64 {
        let n = self.n;
        self.elements
            .iter()
            .filter(|e| (0..n).all(|i| e[i * n + i] != 0))
            .count() as u64
    }

    /// Von Neumann regularity: every a has an x with a x a = a. Returns
    /// the lexicographically first counterexample otherwise.
    pub fn is_regular(&self) -> (bool, Option<Vec<u8>>) {
        for a in &self.elements {
            let found = self
                .elements
                .iter()
                .any(|x| self.mul(&self.mul(a, x), a) == *a);
            if !found {
                return (false, Some(a.clone()));
            }
        }
        (true, None)
    }

    /// Complete regularity via eventual periodicity: x lies in a subgroup
    /// iff x^(k+1) = x for some k between 1 and the monoid order.
    pub fn is_completely_regular(&self) -> (bool, Option<Vec<u8>>) {
        let bound = self.elements.len();
        for x in &self.elements {
            let mut pow = x.clone();
            let mut ok = false;
            for _ in 1..=bound {
                pow = self.mul(&pow, x);
                if pow == *x {
                    ok = true;
                    break;
                }
            }
            if !ok {
                return (false, Some(x.clone()));
            }
        }
        (true, None)
    }

    pub fn element_rows(el: &[u8], n: usize) -> Vec<Vec<u8>> {
        (0..n).map(|i| el[i * n..(i + 1) * n].to_vec()).collect()
    }
}

/// Closed-form unit count (q-1)^n * q^m of a full incidence mask, m the
/// number of strict support cells.
pub fn unit_count(mask: &SupportMask, q: u8) -> Result<BigUint> {
    FieldTable::new(q)?;
    if !mask.is_full_incidence() {
        return Err(Error::invalid(
            "unit count formula applies to full incidence masks only".to_string(),
        ));
    }
    let n = mask.n() as u32;
    let m = mask.poset().strict_pairs().len() as u32;
    Ok(BigUint::from(q as u64 - 1).pow(n) * BigUint::from(q as u64).pow(m))
}

/// CLI-facing report over one mask and field.
pub fn report(mask: &SupportMask, q: u8, closure: bool) -> Result<Value> {
    let m = enumerate_points(mask, q, closure)?;
    let (regular, wr) = m.is_regular();
    let (cr, wc) = m.is_completely_regular();
    let witness = wr.or(wc).map(|w| FiniteMonoid::element_rows(&w, m.n()));
    let units = m.unit_count_enumerated();
    Ok(json!({
        "mask_id": mask.id_string(),
        "q": q,
        "closure": closure,
        "size": m.len(),
        "units": units,
        "regular": regular,
        "completely_regular": cr,
        "witness": witness,
        "finite_point_shadow": true,
    }))
}
