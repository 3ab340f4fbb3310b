//! Antichain submonoids of the incidence monoid.
//!
//! An antichain `A` picks out the submonoid generated by the torus factors
//! at `A` together with the unipotent part: diagonal cells in `A` carry a
//! free unit, the rest of the diagonal is pinned to 1, and strict cells of
//! the order relation stay free. Masks record that shape symbolically; the
//! finite-field lab enumerates their points.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::poset::{Poset, DEFAULT_ENUMERATION_CAP};
use crate::{Error, Result};

/// Symbolic content of one matrix cell.
///
/// Diagonal cells are `One` or `FreeUnit` (never `Zero` or `Free`);
/// off-diagonal cells are `Free` exactly on strict relations and `Zero`
/// elsewhere. `FreeUnit` ranges over nonzero scalars; downstream
/// enumeration may widen it to `Free` when taking the monoid closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaskSymbol {
    Zero,
    One,
    FreeUnit,
    Free,
}

impl fmt::Display for MaskSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MaskSymbol::Zero => "Zero",
            MaskSymbol::One => "One",
            MaskSymbol::FreeUnit => "FreeUnit",
            MaskSymbol::Free => "Free",
        };
        write!(f, "{s}")
    }
}

/// Support mask of a submonoid of the incidence monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportMask {
    poset: Poset,
    grid: Vec<MaskSymbol>,
    /// `None` for the full incidence mask, `Some(A)` for `I(P)_A`.
    antichain: Option<Vec<usize>>,
}

impl SupportMask {
    /// Mask of the full incidence monoid: every diagonal cell a free unit,
    /// every strict cell free.
    pub fn full_incidence(p: &Poset) -> SupportMask {
        let n = p.n();
        let grid = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                if i == j {
                    MaskSymbol::FreeUnit
                } else if p.leq(i, j) {
                    MaskSymbol::Free
                } else {
                    MaskSymbol::Zero
                }
            })
            .collect();
        SupportMask { poset: p.clone(), grid, antichain: None }
    }

    /// Mask of the antichain submonoid `I(P)_A`.
    pub fn antichain_submonoid(p: &Poset, antichain: &[usize]) -> Result<SupportMask> {
        let a = validate_antichain(p, antichain)?;
        let n = p.n();
        let grid = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                if i == j {
                    if a.binary_search(&i).is_ok() {
                        MaskSymbol::FreeUnit
                    } else {
                        MaskSymbol::One
                    }
                } else if p.leq(i, j) {
                    MaskSymbol::Free
                } else {
                    MaskSymbol::Zero
                }
            })
            .collect();
        Ok(SupportMask { poset: p.clone(), grid, antichain: Some(a) })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    pub fn symbol(&self, i: usize, j: usize) -> MaskSymbol {
        self.grid[i * self.n() + j]
    }

    /// `Some(A)` when this is an antichain submonoid mask.
    pub fn antichain(&self) -> Option<&[usize]> {
        self.antichain.as_deref()
    }

    pub fn is_full_incidence(&self) -> bool {
        self.antichain.is_none()
    }

    /// Dimension of the submonoid: free units on the diagonal plus free
    /// strict cells. The full mask gives `dim I(P)`.
    pub fn dimension(&self) -> u64 {
        self.grid
            .iter()
            .filter(|s| matches!(s, MaskSymbol::FreeUnit | MaskSymbol::Free))
            .count() as u64
    }

    /// Identifier like `I(P)`, `I(P)_{}` or `I(P)_{x2,x3}`.
    pub fn id_string(&self) -> String {
        match &self.antichain {
            None => "I(P)".to_string(),
            Some(a) => {
                let labels: Vec<&str> =
                    a.iter().map(|&i| self.poset.label(i)).collect();
                format!("I(P)_{{{}}}", labels.join(","))
            }
        }
    }

    pub fn to_json_value(&self) -> Value {
        let n = self.n();
        let rows: Vec<Vec<String>> = (0..n)
            .map(|i| (0..n).map(|j| self.symbol(i, j).to_string()).collect())
            .collect();
        json!({
            "mask_id": self.id_string(),
            "elements": self.poset.labels(),
            "grid": rows,
            "dimension": self.dimension(),
        })
    }
}

/// Sorts, deduplicates, and checks pairwise incomparability.
pub fn validate_antichain(p: &Poset, antichain: &[usize]) -> Result<Vec<usize>> {
    let mut a = antichain.to_vec();
    a.sort_unstable();
    a.dedup();
    for &i in &a {
        if i >= p.n() {
            return Err(Error::invalid(format!(
                "antichain index {i} out of range for {} elements",
                p.n()
            )));
        }
    }
    for (k, &i) in a.iter().enumerate() {
        for &j in &a[k + 1..] {
            if p.comparable(i, j) {
                return Err(Error::NotAntichain(format!(
                    "{{{}, {}}}",
                    p.label(i),
                    p.label(j)
                )));
            }
        }
    }
    Ok(a)
}

/// Torus weight of a strict cell under the `A`-torus action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    /// `+eps_i`: only the row index lies in `A`.
    PlusEps(usize),
    /// `-eps_j`: only the column index lies in `A`.
    MinusEps(usize),
    /// Neither endpoint lies in `A`.
    Zero,
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::PlusEps(i) => write!(f, "+e{}", i + 1),
            Weight::MinusEps(j) => write!(f, "-e{}", j + 1),
            Weight::Zero => write!(f, "0"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEntry {
    pub row: usize,
    pub col: usize,
    pub weight: Weight,
}

/// Weights of every strict support cell under the `A`-torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub antichain: Vec<usize>,
    pub entries: Vec<WeightEntry>,
}

pub fn weight_report(p: &Poset, antichain: &[usize]) -> Result<WeightReport> {
    let a = validate_antichain(p, antichain)?;
    let mut entries = Vec::new();
    for (i, j) in p.strict_pairs() {
        let row_in = a.binary_search(&i).is_ok();
        let col_in = a.binary_search(&j).is_ok();
        let weight = match (row_in, col_in) {
            (true, false) => Weight::PlusEps(i),
            (false, true) => Weight::MinusEps(j),
            (false, false) => Weight::Zero,
            // i < j comparable with both in A contradicts the antichain
            // validation above.
            (true, true) => unreachable!("antichain contains a comparable pair"),
        };
        entries.push(WeightEntry { row: i, col: j, weight });
    }
    Ok(WeightReport { antichain: a, entries })
}

/// The meet-semilattice of all antichains ordered by inclusion.
///
/// Nodes are sorted index sets in lexicographic order; covers add exactly
/// one element (every subset of an antichain is an antichain, so inclusion
/// covers are single-element extensions). Meet is intersection, and the
/// empty antichain is the unique minimum.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    nodes: Vec<Vec<usize>>,
    covers: Vec<(usize, usize)>,
    maximal: Vec<bool>,
    index: HashMap<Vec<usize>, usize>,
}

impl IntersectionLattice {
    pub fn nodes(&self) -> &[Vec<usize>] {
        &self.nodes
    }

    /// Covering pairs `(lower, upper)` as node indices, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn maximal_flags(&self) -> &[bool] {
        &self.maximal
    }

    pub fn node_index(&self, set: &[usize]) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Meet of two nodes: index of their intersection.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        let set_a = &self.nodes[a];
        let set_b = &self.nodes[b];
        let inter: Vec<usize> = set_a
            .iter()
            .copied()
            .filter(|x| set_b.binary_search(x).is_ok())
            .collect();
        self.index[&inter]
    }

    /// DOT rendering ranked by antichain size, labels as `{x2,x3}`.
    pub fn to_dot(&self, p: &Poset) -> String {
        let mut out = String::from("graph intersection_lattice {\n  rankdir=BT;\n  node [shape=box];\n");
        let label = |set: &[usize]| -> String {
            if set.is_empty() {
                "∅".to_string()
            } else {
                let names: Vec<&str> = set.iter().map(|&i| p.label(i)).collect();
                format!("{{{}}}", names.join(","))
            }
        };
        let max_size = self.nodes.iter().map(Vec::len).max().unwrap_or(0);
        for size in 0..=max_size {
            let row: Vec<String> = self
                .nodes
                .iter()
                .enumerate()
                .filter(|(_, s)| s.len() == size)
                .map(|(i, _)| format!("n{i};"))
                .collect();
            if !row.is_empty() {
                out.push_str(&format!("  {{ rank=same; {} }}\n", row.join(" ")));
            }
        }
        for (i, set) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", label(set)));
        }
        for &(lo, hi) in &self.covers {
            out.push_str(&format!("  n{lo} -- n{hi};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json_value(&self, p: &Poset) -> Value {
        json!({
            "nodes": self
                .nodes
                .iter()
                .map(|s| s.iter().map(|&i| p.label(i)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "covers": self.covers,
            "maximal": self.maximal,
        })
    }
}

pub fn intersection_lattice(p: &Poset) -> Result<IntersectionLattice> {
    intersection_lattice_with_cap(p, DEFAULT_ENUMERATION_CAP)
}

pub fn intersection_lattice_with_cap(p: &Poset, cap: u64) -> Result<IntersectionLattice> {
    let antichains = p.antichains(cap)?;
    let nodes: Vec<Vec<usize>> = antichains.iter().map(|(s, _)| s.clone()).collect();
    let maximal: Vec<bool> = antichains.iter().map(|&(_, m)| m).collect();
    let index: HashMap<Vec<usize>, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let mut covers = Vec::new();
    for (hi, set) in nodes.iter().enumerate() {
        for k in 0..set.len() {
            let mut sub = set.clone();
            sub.remove(k);
            let lo = index[&sub];
            covers.push((lo, hi));
        }
    }
    covers.sort_unstable();
    Ok(IntersectionLattice { nodes, covers, maximal, index })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star3() -> Poset {
        crate::star::star_poset(3).unwrap()
    }

    #[test]
    fn star_mask_shapes() {
        let p = star3();

        let m = SupportMask::antichain_submonoid(&p, &[1, 2]).unwrap();
        let d: Vec<MaskSymbol> = (0..3).map(|i| m.symbol(i, i)).collect();
        assert_eq!(d, vec![MaskSymbol::One, MaskSymbol::FreeUnit, MaskSymbol::FreeUnit]);
        assert_eq!(m.symbol(0, 1), MaskSymbol::Free);
        assert_eq!(m.symbol(0, 2), MaskSymbol::Free);
        assert_eq!(m.symbol(1, 2), MaskSymbol::Zero);
        assert_eq!(m.symbol(1, 0), MaskSymbol::Zero);
        // dim I(P_n)_A at the maximal antichain: (n-1) + (n-1)
        assert_eq!(m.dimension(), 4);

        let unipotent = SupportMask::antichain_submonoid(&p, &[]).unwrap();
        assert!((0..3).all(|i| unipotent.symbol(i, i) == MaskSymbol::One));
        assert_eq!(unipotent.dimension(), 2);

        let bottom = SupportMask::antichain_submonoid(&p, &[0]).unwrap();
        assert_eq!(bottom.symbol(0, 0), MaskSymbol::FreeUnit);
        assert_eq!(bottom.symbol(1, 1), MaskSymbol::One);
        assert_eq!(bottom.dimension(), 3);

        let full = SupportMask::full_incidence(&p);
        assert!((0..3).all(|i| full.symbol(i, i) == MaskSymbol::FreeUnit));
        assert_eq!(full.dimension(), p.dim_incidence());
        assert!(full.is_full_incidence());
        assert!(!bottom.is_full_incidence());
    }

    #[test]
    fn mask_ids_and_json() {
        let p = star3();
        let m = SupportMask::antichain_submonoid(&p, &[1, 2]).unwrap();
        let v = m.to_json_value();
        assert_eq!(v["mask_id"], "I(P)_{x2,x3}");
        assert_eq!(v["elements"], serde_json::json!(["x1", "x2", "x3"]));
        assert_eq!(v["dimension"], 4);
        let grid = v["grid"].as_array().unwrap();
        assert_eq!(grid.len(), 3);
        assert_eq!(grid[0].as_array().unwrap()[1], "Free");

        // ids distinguish the closure family members
        let ids: Vec<String> = [vec![], vec![0], vec![1], vec![2], vec![1, 2]]
            .iter()
            .map(|a| SupportMask::antichain_submonoid(&p, a).unwrap().id_string())
            .collect();
        let mut unique = ids.clone();
        unique.sort();
        unique.dedup();
        assert_eq!(unique.len(), ids.len());
    }

    #[test]
    fn weight_examples() {
        let p = star3();

        let w = weight_report(&p, &[1]).unwrap();
        assert_eq!(
            w.entries,
            vec![
                WeightEntry { row: 0, col: 1, weight: Weight::MinusEps(1) },
                WeightEntry { row: 0, col: 2, weight: Weight::Zero },
            ]
        );

        let w = weight_report(&p, &[0]).unwrap();
        assert_eq!(
            w.entries,
            vec![
                WeightEntry { row: 0, col: 1, weight: Weight::PlusEps(0) },
                WeightEntry { row: 0, col: 2, weight: Weight::PlusEps(0) },
            ]
        );
        assert_eq!(w.entries[0].weight.to_string(), "+e1");

        let w = weight_report(&p, &[]).unwrap();
        assert!(w.entries.iter().all(|e| e.weight == Weight::Zero));
    }

    #[test]
    fn rejects_non_antichains() {
        let p = star3();
        assert!(matches!(
            SupportMask::antichain_submonoid(&p, &[0, 1]),
            Err(Error::NotAntichain(_))
        ));
        assert!(matches!(weight_report(&p, &[0, 2]), Err(Error::NotAntichain(_))));
        assert!(validate_antichain(&p, &[5]).is_err());
        // unsorted or repeated input is normalized, not rejected
        assert_eq!(validate_antichain(&p, &[1, 1]).unwrap(), vec![1]);
        assert_eq!(validate_antichain(&p, &[2, 1]).unwrap(), vec![1, 2]);
    }

    #[test]
    fn star_lattice_golden() {
        let p = star3();
        let lat = intersection_lattice(&p).unwrap();
        assert_eq!(
            lat.nodes(),
            [vec![], vec![0], vec![1], vec![1, 2], vec![2]]
        );
        let mut edges = lat.covers().to_vec();
        edges.sort();
        assert_eq!(edges, vec![(0, 1), (0, 2), (0, 4), (2, 3), (4, 3)]);
        assert_eq!(lat.maximal_flags(), [false, true, false, true, false]);

        assert_eq!(lat.meet(1, 3), 0);
        assert_eq!(lat.meet(2, 3), 2);
        assert_eq!(lat.node_index(&[1, 2]), Some(3));
        assert_eq!(lat.node_index(&[0, 1]), None);
    }

    #[test]
    fn small_lattices() {
        let two = Poset::chain(2);
        let lat = intersection_lattice(&two).unwrap();
        assert_eq!(lat.nodes(), [vec![], vec![0], vec![1]]);
        assert_eq!(lat.meet(1, 2), 0);

        let one = Poset::from_covers(&["a"], &[]).unwrap();
        assert_eq!(intersection_lattice(&one).unwrap().nodes().len(), 2);

        assert!(matches!(
            intersection_lattice_with_cap(&Poset::antichain_poset(6), 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn meet_table_laws() {
        let p = star3();
        let lat = intersection_lattice(&p).unwrap();
        let n = lat.nodes().len();
        for a in 0..n {
            assert_eq!(lat.meet(a, a), a);
            assert_eq!(lat.meet(a, 0), 0);
            for b in 0..n {
                assert_eq!(lat.meet(a, b), lat.meet(b, a));
                for c in 0..n {
                    assert_eq!(
                        lat.meet(lat.meet(a, b), c),
                        lat.meet(a, lat.meet(b, c))
                    );
                }
            }
        }
    }

    #[test]
    fn inclusion_refines_masks() {
        let p = star3();
        let chain: [&[usize]; 3] = [&[], &[1], &[1, 2]];
        for w in chain.windows(2) {
            let small = SupportMask::antichain_submonoid(&p, w[0]).unwrap();
            let big = SupportMask::antichain_submonoid(&p, w[1]).unwrap();
            for i in 0..3 {
                if small.symbol(i, i) == MaskSymbol::FreeUnit {
                    assert_eq!(big.symbol(i, i), MaskSymbol::FreeUnit);
                }
            }
            assert!(small.dimension() <= big.dimension());
        }
    }

    #[test]
    fn dot_output_shape() {
        let p = star3();
        let lat = intersection_lattice(&p).unwrap();
        let dot = lat.to_dot(&p);
        assert!(dot.starts_with("graph"));
        assert!(dot.contains("{x2,x3}"));
        let empty_nodes = dot.matches("\u{2205}").count();
        assert!(empty_nodes >= 1, "minimum node must be labeled");
    }
}
