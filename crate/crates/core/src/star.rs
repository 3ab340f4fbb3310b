//! Orbit combinatorics for star posets.
//!
//! The star poset on n elements puts x1 below x2..xn. Its incidence monoid
//! is small enough that the two-sided unit-group orbits admit canonical
//! 0/1 representatives, read off column by column as words, and the
//! adherence order between orbit closures has an explicit cell-by-cell
//! covering rule. This module enumerates the representatives, computes
//! orbit dimensions, builds the Hasse diagram of the adherence order, and
//! summarizes the (much larger) Boolean lattice of torus orbits.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::gen::standard_labels;
use crate::poset::Poset;
use crate::{Error, Result};

/// Star poset: x1 covered by each of x2..xn.
pub fn star_poset(n: usize) -> Result<Poset> {
    if n < 2 {
        return Err(Error::invalid(format!("star poset needs n >= 2, got {n}")));
    }
    let labels = standard_labels(n);
    let cover_pairs: Vec<(String, String)> =
        (1..n).map(|j| (labels[0].clone(), labels[j].clone())).collect();
    Poset::from_labeled_covers(labels, cover_pairs)
}

/// Canonical orbit representative, stored column-wise.
///
/// `w[j]` is the 1-indexed row of the single 1 in column j+1, or 0 for an
/// empty column. Valid positions: column 1 holds {0,1}, column j >= 2
/// holds {0, 1, j}. A 1 at (1,1) rules out 1s elsewhere in row 1: such
/// entries can be cleared by unit column operations, so no representative
/// carries both.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitWord {
    w: Vec<u8>,
}

impl OrbitWord {
    pub fn new(w: Vec<u8>) -> Result<OrbitWord> {
        let n = w.len();
        if n < 2 {
            return Err(Error::invalid(format!("word length {n} < 2")));
        }
        if n > 16 {
            return Err(Error::invalid(format!("word length {n} > 16")));
        }
        if w[0] > 1 {
            return Err(Error::invalid(format!(
                "column 1 must hold 0 or 1, got {}",
                w[0]
            )));
        }
        for (k, &v) in w.iter().enumerate().skip(1) {
            let col = (k + 1) as u8;
            if v != 0 && v != 1 && v != col {
                return Err(Error::invalid(format!(
                    "column {col} must hold 0, 1, or {col}, got {v}"
                )));
            }
            if v == 1 && w[0] == 1 {
                return Err(Error::invalid(format!(
                    "column {col} holds row 1, but column 1 already does"
                )));
            }
        }
        Ok(OrbitWord { w })
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn word(&self) -> &[u8] {
        &self.w
    }

    /// Zero word, the minimum of the adherence order.
    pub fn zero(n: usize) -> Result<OrbitWord> {
        OrbitWord::new(vec![0; n])
    }

    /// Identity word, the maximum of the adherence order.
    pub fn identity(n: usize) -> Result<OrbitWord> {
        OrbitWord::new((1..=n as u8).collect())
    }

    fn x11(&self) -> bool {
        self.w[0] == 1
    }

    /// 1 at (j,j) for a column j in 2..=n (1-indexed).
    fn diag(&self, j: usize) -> bool {
        self.w[j - 1] == j as u8
    }

    /// 1 at (1,j) for a column j in 2..=n (1-indexed).
    fn row1(&self, j: usize) -> bool {
        self.w[j - 1] == 1
    }

    /// Nonzero cells as 0-indexed (row, col).
    pub fn support(&self) -> Vec<(usize, usize)> {
        self.w
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v != 0)
            .map(|(j, &v)| (v as usize - 1, j))
            .collect()
    }

    pub fn to_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.n();
        let mut m = vec![vec![0u8; n]; n];
        for (i, j) in self.support() {
            m[i][j] = 1;
        }
        m
    }

    /// At most one 1 per row as well as per column. Only row 1 can ever
    /// repeat, so this fails exactly on words with two or more 1-values.
    pub fn is_rook(&self) -> bool {
        self.w.iter().filter(|&&v| v == 1).count() <= 1
    }

    /// Dimension of the two-sided unit-group orbit through this word.
    ///
    /// With a unit at (1,1) the whole first row moves: n-1 plus one per
    /// diagonal 1. Otherwise each diagonal 1 contributes a row and column
    /// scale (2) and each surviving (1,j) cell contributes 1.
    pub fn orbit_dim(&self) -> usize {
        let n = self.n();
        if self.x11() {
            let diag = 1 + (2..=n).filter(|&j| self.diag(j)).count();
            n - 1 + diag
        } else {
            let diag = (2..=n).filter(|&j| self.diag(j)).count();
            let row1 = (2..=n).filter(|&j| self.row1(j)).count();
            2 * diag + row1
        }
    }
}

impl fmt::Display for OrbitWord {
    /// Digit string for n <= 9, dash-separated numbers above that.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &v in &self.w {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.w.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join("-"))
        }
    }
}

impl FromStr for OrbitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<OrbitWord> {
        let digits: Vec<u8> = if s.contains('-') {
            s.split('-')
                .map(|t| {
                    t.parse::<u8>()
                        .map_err(|_| Error::invalid(format!("bad word part {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::invalid(format!("bad word digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        OrbitWord::new(digits)
    }
}

/// All orbit representatives for the star poset on n elements, in
/// lexicographic word order. Count is 2^(n-1) + 3^(n-1).
pub fn enumerate_reps(n: usize) -> Result<Vec<OrbitWord>> {
    if !(2..=16).contains(&n) {
        return Err(Error::invalid(format!(
            "representative enumeration supports 2 <= n <= 16, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut w = vec![0u8; n];
    fn rec(w: &mut Vec<u8>, pos: usize, out: &mut Vec<OrbitWord>) {
        let n = w.len();
        if pos == n {
            out.push(OrbitWord { w: w.clone() });
            return;
        }
        let options: &[u8] = if pos == 0 {
            &[0, 1]
        } else if w[0] == 1 {
            // row 1 is taken by the (1,1) cell
            &[0, (pos + 1) as u8]
        } else {
            &[0, 1, (pos + 1) as u8]
        };
        for &v in options {
            w[pos] = v;
            rec(w, pos + 1, out);
        }
        w[pos] = 0;
    }
    rec(&mut w, 0, &mut out);
    debug_assert!(out.windows(2).all(|p| p[0].w < p[1].w));
    Ok(out)
}

/// True iff y is covered by x in the adherence order.
///
/// Cell-by-cell case analysis on the pair; every case forces the two
/// words to agree outside one or two pinned cells.
pub fn covers(x: &OrbitWord, y: &OrbitWord) -> Result<bool> {
    let n = x.n();
    if y.n() != n {
        return Err(Error::invalid(format!(
            "word length mismatch: {n} vs {}",
            y.n()
        )));
    }
    if x == y {
        return Ok(false);
    }

    // Case 1: both keep the (1,1) unit; one diagonal 1 of x drops to 0.
    if x.x11() && y.x11() {
        let mut diffs = (2..=n).filter(|&j| x.w[j - 1] != y.w[j - 1]);
        if let (Some(r), None) = (diffs.next(), diffs.next()) {
            return Ok(x.diag(r) && y.w[r - 1] == 0);
        }
        return Ok(false);
    }

    // Case 2: x keeps the (1,1) unit, y gives it up. Dropping x11 is only
    // one codimension when every zero column of x picks up a (1,j) cell in
    // y; columns with a diagonal 1 must carry over unchanged. With x the
    // single-cell (1,1) word this reproduces the all-ones first-row cover.
    if x.x11() && !y.x11() {
        let ok = (2..=n).all(|j| {
            if x.diag(j) {
                y.w[j - 1] == j as u8
            } else {
                y.w[j - 1] == 1
            }
        });
        return Ok(ok);
    }

    if !x.x11() && y.x11() {
        return Ok(false);
    }

    // x11 = y11 = 0: the words must agree except in one column r.
    let mut diffs = (2..=n).filter(|&j| x.w[j - 1] != y.w[j - 1]);
    let (Some(r), None) = (diffs.next(), diffs.next()) else {
        return Ok(false);
    };
    // Case 4: the diagonal 1 at (r,r) degenerates to a (1,r) cell.
    if x.diag(r) && y.row1(r) {
        return Ok(true);
    }
    // Case 5: a (1,r) cell of x vanishes; column r of y must be zero (a
    // diagonal 1 appearing there would raise the dimension instead).
    if x.row1(r) && y.w[r - 1] == 0 {
        return Ok(true);
    }
    Ok(false)
}

/// All words covered by x, built constructively case by case.
pub fn covered_words(x: &OrbitWord) -> Vec<OrbitWord> {
    let n = x.n();
    let mut out = Vec::new();
    if x.x11() {
        // case 1
        for r in 2..=n {
            if x.diag(r) {
                let mut w = x.w.clone();
                w[r - 1] = 0;
                out.push(OrbitWord { w });
            }
        }
        // case 2
        let mut w = x.w.clone();
        w[0] = 0;
        for j in 2..=n {
            if !x.diag(j) {
                w[j - 1] = 1;
            }
        }
        out.push(OrbitWord { w });
    } else {
        for r in 2..=n {
            if x.diag(r) {
                // case 4
                let mut w = x.w.clone();
                w[r - 1] = 1;
                out.push(OrbitWord { w });
            } else if x.row1(r) {
                // case 5
                let mut w = x.w.clone();
                w[r - 1] = 0;
                out.push(OrbitWord { w });
            }
        }
    }
    out
}

/// Hasse diagram of the adherence order on the orbit representatives.
#[derive(Clone, Debug)]
pub struct OrbitPoset {
    nodes: Vec<OrbitWord>,
    dims: Vec<usize>,
    /// (lower, upper) node indices: upper covers lower.
    cover_edges: Vec<(usize, usize)>,
}

impl OrbitPoset {
    pub fn nodes(&self) -> &[OrbitWord] {
        &self.nodes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn cover_edges(&self) -> &[(usize, usize)] {
        &self.cover_edges
    }

    pub fn node_index(&self, w: &OrbitWord) -> Option<usize> {
        self.nodes.binary_search(w).ok()
    }

    /// True iff the node `lo` lies below `hi` in the adherence order
    /// (reflexive). BFS down from `hi` through the cover edges.
    pub fn leq(&self, lo: usize, hi: usize) -> bool {
        if lo == hi {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![hi];
        seen[hi] = true;
        while let Some(v) = stack.pop() {
            for &(l, u) in &self.cover_edges {
                if u == v && !seen[l] {
                    if l == lo {
                        return true;
                    }
                    seen[l] = true;
                    stack.push(l);
                }
            }
        }
        false
    }

    /// DOT rendering with one rank row per orbit dimension.
    pub fn to_dot(&self) -> String {
        let mut out =
            String::from("graph adherence {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        let max_dim = self.dims.iter().copied().max().unwrap_or(0);
        for d in 0..=max_dim {
            let row: Vec<String> = (0..self.nodes.len())
                .filter(|&i| self.dims[i] == d)
                .map(|i| format!("n{i};"))
                .collect();
            if !row.is_empty() {
                out.push_str(&format!("  {{ rank=same; {} }}\n", row.join(" ")));
            }
        }
        for (i, w) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{w}\"];\n"));
        }
        for &(lo, hi) in &self.cover_edges {
            out.push_str(&format!("  n{lo} -- n{hi};\n"));
        }
        out.push_str("}\n");
        out
    }

    /// JSON listing; `covers` holds the words each node covers.
    pub fn to_json_value(&self) -> Value {
        let mut lower_of: Vec<Vec<String>> = vec![Vec::new(); self.nodes.len()];
        for &(lo, hi) in &self.cover_edges {
            lower_of[hi].push(self.nodes[lo].to_string());
        }
        for l in &mut lower_of {
            l.sort();
        }
        Value::Array(
            self.nodes
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    json!({
                        "word": w.to_string(),
                        "dim": self.dims[i],
                        "covers": lower_of[i],
                    })
                })
                .collect(),
        )
    }
}

/// Builds the adherence Hasse diagram for the star poset on n elements.
///
/// Panics if the generated edges are not graded by orbit dimension or the
/// extremes are not the zero and identity words; both are structural
/// guarantees of the covering rule, so a violation is a bug here.
pub fn adherence_hasse(n: usize) -> Result<OrbitPoset> {
    if !(2..=12).contains(&n) {
        return Err(Error::invalid(format!(
            "adherence diagram supports 2 <= n <= 12, got {n}"
        )));
    }
    let nodes = enumerate_reps(n)?;
    let dims: Vec<usize> = nodes.iter().map(OrbitWord::orbit_dim).collect();
    let index: HashMap<&[u8], usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, w)| (w.word(), i))
        .collect();
    let mut cover_edges = Vec::new();
    for (hi, x) in nodes.iter().enumerate() {
        for y in covered_words(x) {
            let lo = index[y.word()];
            cover_edges.push((lo, hi));
        }
    }
    cover_edges.sort_unstable();

    for &(lo, hi) in &cover_edges {
        assert_eq!(dims[lo] + 1, dims[hi], "cover edge must raise dim by 1");
    }
    let zero = OrbitWord::zero(n)?;
    let identity = OrbitWord::identity(n)?;
    assert!(dims.iter().filter(|&&d| d == 0).count() == 1 && nodes[0] == zero);
    let top = dims.iter().position(|&d| d == 2 * n - 1).unwrap();
    assert!(nodes[top] == identity && dims.iter().filter(|&&d| d == 2 * n - 1).count() == 1);

    Ok(OrbitPoset { nodes, dims, cover_edges })
}

/// Index set A of the torus-orbit parametrization for the star poset on n
/// elements: the diagonal cells then the strict first-row cells, all
/// 0-indexed.
pub fn star_cells(n: usize) -> Vec<(usize, usize)> {
    let mut cells: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    cells.extend((1..n).map(|j| (0, j)));
    cells
}

/// Bitmask over `star_cells(n)` of the cells NOT in `support`.
pub fn zero_set(n: usize, support: &[(usize, usize)]) -> u64 {
    let cells = star_cells(n);
    let mut mask = 0u64;
    for (k, c) in cells.iter().enumerate() {
        if !support.contains(c) {
            mask |= 1 << k;
        }
    }
    mask
}

/// Counts for the lattice of torus orbits, which is Boolean on the index
/// set A: orbits correspond to zero-sets Z subseteq A, adherence reverses
/// inclusion, and covers delete single elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusOrbitSummary {
    pub n: usize,
    pub index_set_size: usize,
    pub orbit_count: u128,
    pub cover_count: u128,
    /// Some(true) when materialized and checked (n <= 5), None otherwise.
    pub boolean_iso_check: Option<bool>,
}

impl TorusOrbitSummary {
    pub fn to_json_value(&self) -> Value {
        json!({
            "n": self.n,
            "index_set_size": self.index_set_size,
            "orbit_count": self.orbit_count.to_string(),
            "cover_count": self.cover_count.to_string(),
            "boolean_iso_check": self.boolean_iso_check,
        })
    }
}

pub fn torus_orbit_lattice(n: usize) -> Result<TorusOrbitSummary> {
    if !(2..=20).contains(&n) {
        return Err(Error::invalid(format!(
            "torus orbit summary supports 2 <= n <= 20, got {n}"
        )));
    }
    let a = 2 * n - 1;
    let orbit_count = 1u128 << a;
    let cover_count = if n <= 8 {
        // materialize: every orbit covers one orbit per element of its
        // zero-set complement's... each subset Z covers the orbits with
        // zero-set Z plus one element; count single-element deletions.
        let mut count: u128 = 0;
        for z in 0u64..(1u64 << a) {
            count += u128::from(z.count_ones());
        }
        count
    } else {
        (a as u128) * (1u128 << (a - 1))
    };
    debug_assert_eq!(cover_count, (a as u128) * (1u128 << (a - 1)));
    let boolean_iso_check = if n <= 5 {
        let full = (1u64 << a) - 1;
        let mut ok = true;
        'outer: for z in 0u64..=full {
            for zz in 0u64..=full {
                // orbit(z) above orbit(zz) iff z subset zz
                if z == zz || z & zz != z {
                    continue;
                }
                let no_intermediate = (0u64..=full)
                    .all(|w| !(w != z && w != zz && z & w == z && w & zz == w));
                let single_delta = (zz & !z).count_ones() == 1;
                if no_intermediate != single_delta {
                    ok = false;
                    break 'outer;
                }
            }
        }
        Some(ok)
    } else {
        None
    };
    Ok(TorusOrbitSummary {
        n,
        index_set_size: a,
        orbit_count,
        cover_count,
        boolean_iso_check,
    })
}

/// Floating-point closure sampler. Numeric cross-check only; the
/// combinatorial covering rule above is the authoritative order.
pub mod sampler {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    use super::OrbitWord;

    /// Star-shaped matrix: diagonal d[0..n], first-row cells r[j] = (1, j+2).
    #[derive(Clone, Debug)]
    pub struct StarPoint {
        pub d: Vec<f64>,
        pub r: Vec<f64>,
    }

    impl StarPoint {
        pub fn n(&self) -> usize {
            self.d.len()
        }

        pub fn from_word(w: &OrbitWord) -> StarPoint {
            let n = w.n();
            let mut p = StarPoint { d: vec![0.0; n], r: vec![0.0; n - 1] };
            for (i, j) in w.support() {
                if i == j {
                    p.d[i] = 1.0;
                } else {
                    p.r[j - 1] = 1.0;
                }
            }
            p
        }

        pub fn dist2(&self, other: &StarPoint) -> f64 {
            let dd = self
                .d
                .iter()
                .zip(&other.d)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>();
            let rr = self
                .r
                .iter()
                .zip(&other.r)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>();
            dd + rr
        }
    }

    /// Product of two star-shaped matrices; the shape is closed under it.
    pub fn star_mul(u: &StarPoint, v: &StarPoint) -> StarPoint {
        let n = u.n();
        let mut out = StarPoint { d: vec![0.0; n], r: vec![0.0; n - 1] };
        for i in 0..n {
            out.d[i] = u.d[i] * v.d[i];
        }
        for j in 1..n {
            out.r[j - 1] = u.d[0] * v.r[j - 1] + u.r[j - 1] * v.d[j];
        }
        out
    }

    fn random_unit<R: Rng>(rng: &mut R, n: usize) -> StarPoint {
        let mut p = StarPoint { d: vec![0.0; n], r: vec![0.0; n - 1] };
        for i in 0..n {
            let mag = rng.gen_range(0.5..1.5);
            p.d[i] = if rng.gen::<bool>() { mag } else { -mag };
        }
        for j in 0..n - 1 {
            p.r[j] = rng.gen_range(-1.0..1.0);
        }
        p
    }

    /// Squared distance from `target` to the unit-orbit of `x`, with unit
    /// parameters allowed to degenerate down to `t`. Exact levers (free
    /// off-diagonal parameters) absorb their cells; only cells with no
    /// lever and the t-degenerate diagonal residues remain.
    fn solve_dist2(x: &OrbitWord, target: &StarPoint, t: f64) -> f64 {
        let n = x.n();
        let w = x.word();
        let mut dist2 = 0.0;
        // (1,1) cell is a11*b11 when x11 = 1 (degenerating to t*t when the
        // target needs 0 there), and identically 0 otherwise.
        if w[0] == 1 {
            if target.d[0].abs() <= 1e-12 {
                dist2 += (t * t) * (t * t);
            }
        } else {
            dist2 += target.d[0] * target.d[0];
        }
        for j in 2..=n {
            let tm_jj = target.d[j - 1];
            let tm_1j = target.r[j - 2];
            let x_jj = w[j - 1] == j as u8;
            let x_1j = w[j - 1] == 1;
            if x_jj {
                if tm_jj.abs() <= 1e-12 {
                    dist2 += (t * t) * (t * t);
                }
            } else {
                dist2 += tm_jj * tm_jj;
            }
            // (1,j) levers, tried in order: b_1j against a live a11, a_1j
            // against a nonzero column unit, b_jj against a surviving
            // (1,j) cell of x. Each matches the target cell exactly in
            // the t -> 0 limit, so only leverless cells leave a residue.
            let has_lever = w[0] == 1 || x_jj || x_1j;
            if !has_lever {
                dist2 += tm_1j * tm_1j;
            }
        }
        dist2
    }

    /// Worst-case (over random generic points of y's orbit) best residual
    /// for approaching them from x's orbit, swept over the degeneration
    /// parameter. Near zero iff y lies in the closure of x's orbit.
    pub fn closure_residual(x: &OrbitWord, y: &OrbitWord, trials: usize, seed: u64) -> f64 {
        let n = x.n();
        assert_eq!(n, y.n(), "word length mismatch");
        let mut rng = StdRng::seed_from_u64(seed);
        let y0 = StarPoint::from_word(y);
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let a = random_unit(&mut rng, n);
            let b = random_unit(&mut rng, n);
            let target = star_mul(&star_mul(&a, &y0), &b);
            let best = [1e-1, 1e-2, 1e-3, 1e-4]
                .iter()
                .map(|&t| solve_dist2(x, &target, t))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(best);
        }
        worst
    }
}
