//! The incidence algebra as upper-triangular matrices.
//!
//! Every matrix carries its poset and enforces the support constraint:
//! entry `(i, j)` may be nonzero only when `i <= j` in the order. Since
//! indices form a linear extension, all supported matrices are
//! upper-triangular and units invert by back-substitution.

use num_traits::Zero;
use serde_json::json;

use crate::poset::Poset;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Element of the incidence algebra `I(P)` over scalar `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct IncidenceMatrix<S: Scalar> {
    poset: Poset,
    entries: Vec<S>,
}

impl<S: Scalar> IncidenceMatrix<S> {
    /// Zeta element: 1 on every related pair.
    pub fn zeta(p: &Poset) -> Self {
        let n = p.n();
        let entries = (0..n * n)
            .map(|k| if p.leq(k / n, k % n) { S::one() } else { S::zero() })
            .collect();
        IncidenceMatrix { poset: p.clone(), entries }
    }

    /// Delta element: the identity matrix.
    pub fn delta(p: &Poset) -> Self {
        let n = p.n();
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { S::one() } else { S::zero() })
            .collect();
        IncidenceMatrix { poset: p.clone(), entries }
    }

    /// Mobius element, by the defining recursion: `mu(s, s) = 1` and
    /// `mu(s, u) = -sum of mu(s, t) over s <= t < u`.
    pub fn mobius(p: &Poset) -> Self {
        let n = p.n();
        let mut entries = vec![S::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = S::one();
            for j in i + 1..n {
                if !p.leq(i, j) {
                    continue;
                }
                let mut acc = S::zero();
                for t in i..j {
                    if p.leq(i, t) && p.leq(t, j) {
                        acc = acc + entries[i * n + t].clone();
                    }
                }
                entries[i * n + j] = -acc;
            }
        }
        IncidenceMatrix { poset: p.clone(), entries }
    }

    /// Scalar multiple of delta.
    pub fn scalar(p: &Poset, s: S) -> Self {
        let n = p.n();
        let mut entries = vec![S::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = s.clone();
        }
        IncidenceMatrix { poset: p.clone(), entries }
    }

    /// Matrix unit `E_ij`; requires `i <= j` in the order.
    pub fn unit_cell(p: &Poset, i: usize, j: usize) -> Result<Self> {
        if !p.leq(i, j) {
            return Err(Error::SupportViolation { row: i, col: j });
        }
        let n = p.n();
        let mut entries = vec![S::zero(); n * n];
        entries[i * n + j] = S::one();
        Ok(IncidenceMatrix { poset: p.clone(), entries })
    }

    /// Builds from row-major entries, rejecting support violations.
    pub fn from_entries(p: &Poset, entries: Vec<S>) -> Result<Self> {
        let n = p.n();
        if entries.len() != n * n {
            return Err(Error::invalid(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if !entries[i * n + j].is_zero() && !p.leq(i, j) {
                    return Err(Error::SupportViolation { row: i, col: j });
                }
            }
        }
        Ok(IncidenceMatrix { poset: p.clone(), entries })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.n() + j]
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn assert_support(&self) {
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                debug_assert!(
                    self.entries[i * n + j].is_zero() || self.poset.leq(i, j),
                    "support violated at ({i}, {j})"
                );
            }
        }
    }

    /// Convolution product `(f * g)(x, y) = sum over x <= z <= y`.
    /// Both operands must live over the same poset.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.poset != other.poset {
            return Err(Error::PosetMismatch);
        }
        let n = self.n();
        let mut entries = vec![S::zero(); n * n];
        for i in 0..n {
            for k in i..n {
                if !self.poset.leq(i, k) || self.entries[i * n + k].is_zero() {
                    continue;
                }
                for j in k..n {
                    if self.poset.leq(k, j) && !other.entries[k * n + j].is_zero() {
                        let t = self.entries[i * n + k].clone()
                            * other.entries[k * n + j].clone();
                        entries[i * n + j] = entries[i * n + j].clone() + t;
                    }
                }
            }
        }
        let out = IncidenceMatrix { poset: self.poset.clone(), entries };
        out.assert_support();
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.poset != other.poset {
            return Err(Error::PosetMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(IncidenceMatrix { poset: self.poset.clone(), entries })
    }

    /// True iff every diagonal entry is nonzero, which characterizes units.
    pub fn is_unit(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| !self.entries[i * n + i].is_zero())
    }

    /// Two-sided inverse by back-substitution along the linear extension.
    /// Fails with the first zero diagonal index when not a unit.
    pub fn invert_unit(&self) -> Result<Self> {
        let n = self.n();
        for i in 0..n {
            if self.entries[i * n + i].is_zero() {
                return Err(Error::NonUnit { index: i });
            }
        }
        let mut inv = vec![S::zero(); n * n];
        let diag_inv: Vec<S> = (0..n)
            .map(|i| self.entries[i * n + i].try_inverse().expect("nonzero diagonal"))
            .collect();
        for j in 0..n {
            inv[j * n + j] = diag_inv[j].clone();
            for i in (0..j).rev() {
                if !self.poset.leq(i, j) {
                    continue;
                }
                let mut acc = S::zero();
                for t in i + 1..=j {
                    if self.poset.leq(i, t)
                        && self.poset.leq(t, j)
                        && !self.entries[i * n + t].is_zero()
                        && !inv[t * n + j].is_zero()
                    {
                        acc = acc + self.entries[i * n + t].clone() * inv[t * n + j].clone();
                    }
                }
                inv[i * n + j] = -(diag_inv[i].clone() * acc);
            }
        }
        let out = IncidenceMatrix { poset: self.poset.clone(), entries: inv };
        out.assert_support();
        Ok(out)
    }

    /// Renders as rows of `Display` tokens. Exact rationals print as `p/q`
    /// with integers left bare.
    pub fn to_token_rows(&self) -> Vec<Vec<String>> {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[i * n + j].to_string()).collect())
            .collect()
    }

    /// JSON matrix: array of arrays of entry strings.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&json!(self.to_token_rows()))
            .expect("matrix serialization cannot fail")
    }
}

/// Recovers the order relation multiplicatively: `(i, j)` is related iff
/// `E_ii * zeta * E_jj` is nonzero in the algebra. A regression guard for
/// the support constraint; returns the dense relation row-major.
pub fn recover_order(p: &Poset) -> Vec<bool> {
    let n = p.n();
    let zeta: IncidenceMatrix<crate::Rational> = IncidenceMatrix::zeta(p);
    let mut rel = vec![false; n * n];
    for i in 0..n {
        let e_i = IncidenceMatrix::unit_cell(p, i, i).expect("diagonal is always supported");
        let row = e_i.convolve(&zeta).expect("same poset");
        for j in 0..n {
            // Right-multiplying by E_jj keeps exactly column j.
            let picked = (0..n).any(|r| !row.entry(r, j).is_zero());
            rel[i * n + j] = picked;
        }
    }
    rel
}

/// A partial permutation matrix supported on the order relation: at most
/// one 1 per row and per column, `entry(i, j) = 1` only when `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RookMatrix {
    n: usize,
    /// Column holding the 1 of each row, if any.
    row_to_col: Vec<Option<usize>>,
}

impl RookMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        u8::from(self.row_to_col[i] == Some(j))
    }

    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.row_to_col
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|j| (i, j)))
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j)).collect())
            .collect()
    }
}

/// Enumerates every rook matrix supported on the order relation of `p`,
/// sorted by flattened 0/1 entries. Count is exponential; intended for
/// small posets.
pub fn rook_representatives(p: &Poset) -> Vec<RookMatrix> {
    let n = p.n();
    let mut out = Vec::new();
    let mut used_col = vec![false; n];
    let mut rows: Vec<Option<usize>> = vec![None; n];
    fn rec(
        p: &Poset,
        n: usize,
        row: usize,
        used_col: &mut Vec<bool>,
        rows: &mut Vec<Option<usize>>,
        out: &mut Vec<RookMatrix>,
    ) {
        if row == n {
            out.push(RookMatrix { n, row_to_col: rows.clone() });
            return;
        }
        rows[row] = None;
        rec(p, n, row + 1, used_col, rows, out);
        for col in 0..n {
            if !used_col[col] && p.leq(row, col) {
                used_col[col] = true;
                rows[row] = Some(col);
                rec(p, n, row + 1, used_col, rows, out);
                rows[row] = None;
                used_col[col] = false;
            }
        }
    }
    rec(p, n, 0, &mut used_col, &mut rows, &mut out);
    out.sort_by_key(|r| {
        (0..n * n)
            .map(|k| r.entry(k / n, k % n))
            .collect::<Vec<u8>>()
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type M = IncidenceMatrix<Rational>;

    fn rat(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn mat(p: &Poset, cells: &[i64]) -> M {
        M::from_entries(p, cells.iter().map(|&v| rat(v)).collect()).unwrap()
    }

    fn five() -> Poset {
        Poset::from_covers(
            &["x1", "x2", "x3", "x4", "x5"],
            &[
                ("x1", "x2"),
                ("x1", "x3"),
                ("x2", "x4"),
                ("x2", "x5"),
                ("x3", "x4"),
                ("x3", "x5"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn zeta_and_mobius_goldens() {
        let p = five();
        #[rustfmt::skip]
        let zeta = mat(&p, &[
            1, 1, 1, 1, 1,
            0, 1, 0, 1, 1,
            0, 0, 1, 1, 1,
            0, 0, 0, 1, 0,
            0, 0, 0, 0, 1,
        ]);
        assert_eq!(M::zeta(&p), zeta);

        #[rustfmt::skip]
        let mobius = mat(&p, &[
            1, -1, -1,  1,  1,
            0,  1,  0, -1, -1,
            0,  0,  1, -1, -1,
            0,  0,  0,  1,  0,
            0,  0,  0,  0,  1,
        ]);
        assert_eq!(M::mobius(&p), mobius);
        // the double count of x2, x3 flips the sign back up
        assert_eq!(*M::mobius(&p).entry(0, 3), rat(1));

        assert_eq!(M::zeta(&Poset::antichain_poset(4)), M::delta(&Poset::antichain_poset(4)));
    }

    #[test]
    fn chain_mobius_is_bidiagonal() {
        // hand inversion of [[1,1,1],[0,1,1],[0,0,1]]
        let chain = Poset::chain(3);
        #[rustfmt::skip]
        let expected = mat(&chain, &[
            1, -1,  0,
            0,  1, -1,
            0,  0,  1,
        ]);
        assert_eq!(M::mobius(&chain), expected);
    }

    #[test]
    fn convolution_products() {
        let two = Poset::chain(2);
        let zeta = M::zeta(&two);
        assert_eq!(zeta.convolve(&zeta).unwrap(), mat(&two, &[1, 2, 0, 1]));

        let p = five();
        let f = M::mobius(&p);
        let delta = M::delta(&p);
        assert_eq!(delta.convolve(&f).unwrap(), f);
        assert_eq!(f.convolve(&delta).unwrap(), f);

        // associativity spot check with mixed entries
        let z = M::zeta(&p);
        let lhs = f.convolve(&z).unwrap().convolve(&z).unwrap();
        let rhs = f.convolve(&z.convolve(&z).unwrap()).unwrap();
        assert_eq!(lhs, rhs);

        assert!(matches!(
            zeta.convolve(&M::zeta(&Poset::chain(3))),
            Err(Error::PosetMismatch)
        ));
    }

    #[test]
    fn unit_inversion() {
        let p = five();
        let zeta = M::zeta(&p);
        assert!(zeta.is_unit());
        assert_eq!(zeta.invert_unit().unwrap(), M::mobius(&p));
        assert_eq!(M::delta(&p).invert_unit().unwrap(), M::delta(&p));

        let double = M::scalar(&p, rat(2));
        let half = double.invert_unit().unwrap();
        assert_eq!(*half.entry(0, 0), Rational::new(1.into(), 2.into()));
        assert_eq!(half.convolve(&double).unwrap(), M::delta(&p));

        // zero diagonal is rejected at the first bad index
        let e12 = M::unit_cell(&p, 0, 1).unwrap();
        assert!(!e12.is_unit());
        assert!(matches!(e12.invert_unit(), Err(Error::NonUnit { index: 0 })));

        let unit = zeta.add(&M::delta(&p)).unwrap();
        let inv = unit.invert_unit().unwrap();
        assert_eq!(inv.invert_unit().unwrap(), unit);
        assert_eq!(unit.convolve(&inv).unwrap(), M::delta(&p));
    }

    #[test]
    fn support_is_enforced() {
        let p = five();
        // (x4, x5) is not a relation
        let mut cells = vec![0i64; 25];
        cells[3 * 5 + 4] = 1;
        let bad = M::from_entries(&p, cells.iter().map(|&v| rat(v)).collect());
        assert!(matches!(bad, Err(Error::SupportViolation { row: 3, col: 4 })));
        assert!(matches!(
            M::unit_cell(&p, 1, 2),
            Err(Error::SupportViolation { row: 1, col: 2 })
        ));
    }

    #[test]
    fn order_recovery() {
        let p = five();
        let rel = recover_order(&p);
        assert_eq!(rel.iter().filter(|&&b| b).count(), 13);
        let expected: Vec<bool> = (0..25).map(|k| p.leq(k / 5, k % 5)).collect();
        assert_eq!(rel, expected);

        let anti = Poset::antichain_poset(3);
        let diag: Vec<bool> = (0..9).map(|k| k / 3 == k % 3).collect();
        assert_eq!(recover_order(&anti), diag);
    }

    #[test]
    fn rook_enumeration() {
        let two = Poset::chain(2);
        let rooks = rook_representatives(&two);
        let cells: Vec<Vec<(usize, usize)>> = rooks.iter().map(|r| r.cells()).collect();
        assert_eq!(
            cells,
            vec![
                vec![],
                vec![(1, 1)],
                vec![(0, 1)],
                vec![(0, 0)],
                vec![(0, 0), (1, 1)],
            ]
        );

        assert_eq!(rook_representatives(&Poset::antichain_poset(3)).len(), 8);
        assert!(rook_representatives(&Poset::antichain_poset(3))
            .iter()
            .all(|r| r.cells().iter().all(|&(i, j)| i == j)));

        // oracle: subsets of the five supported cells, keeping rook subsets
        let star3 =
            Poset::from_covers(&["x1", "x2", "x3"], &[("x1", "x2"), ("x1", "x3")]).unwrap();
        let supported: Vec<(usize, usize)> = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .filter(|&(i, j)| star3.leq(i, j))
            .collect();
        assert_eq!(supported.len(), 5);
        let mut brute = 0u32;
        for mask in 0u32..(1 << supported.len()) {
            let set: Vec<(usize, usize)> = supported
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &c)| c)
                .collect();
            let rows_ok = (0..3).all(|i| set.iter().filter(|&&(r, _)| r == i).count() <= 1);
            let cols_ok = (0..3).all(|j| set.iter().filter(|&&(_, c)| c == j).count() <= 1);
            if rows_ok && cols_ok {
                brute += 1;
            }
        }
        assert_eq!(brute, 12);
        assert_eq!(rook_representatives(&star3).len(), 12);
    }

    #[test]
    fn serialization_tokens() {
        let two = Poset::chain(2);
        let m = M::from_entries(
            &two,
            vec![rat(1), Rational::new(1.into(), 2.into()), rat(0), rat(-3)],
        )
        .unwrap();
        assert_eq!(
            m.to_token_rows(),
            vec![vec!["1".to_string(), "1/2".into()], vec!["0".to_string(), "-3".into()]]
        );
        assert_eq!(m.to_json_string(), r#"[["1","1/2"],["0","-3"]]"#);
    }
}
