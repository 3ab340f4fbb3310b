//! Finite posets with a fixed linear extension.
//!
//! Construction normalizes element order: indices are re-sorted by a stable
//! topological sort of the cover relation, so `i <= j` in the poset implies
//! `i <= j` as integers. Every downstream module relies on that invariant
//! when it walks matrices row by row.

pub mod aut;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Guard for simple-cycle and antichain enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// A finite poset on labeled elements.
///
/// `leq` is the full reflexive-transitive relation stored densely; `covers`
/// is its transitive reduction, sorted. Indices form a linear extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<bool>,
    covers: Vec<(usize, usize)>,
}

/// Circuit data of the underlying undirected Hasse graph.
///
/// `simple_circuit_count` is `None` when enumeration hits the cap; the cycle
/// rank `E - V + C` is always available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitStats {
    pub cycle_rank: usize,
    pub simple_circuit_count: Option<u64>,
}

/// Gradedness report.
///
/// `is_graded` requires both that every maximal chain within a connected
/// component has the same length and that a rank function compatible with
/// covers exists. `rank_of` is present only when graded, normalized to
/// minimum 0 per component. `max_chain_lengths` maps chain length to the
/// number of maximal chains of that length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedReport {
    pub is_graded: bool,
    pub rank_of: Option<Vec<usize>>,
    pub max_chain_lengths: BTreeMap<usize, u128>,
}

#[derive(Serialize, Deserialize)]
struct PosetFile {
    elements: Vec<String>,
    covers: Vec<(String, String)>,
}

impl Poset {
    /// Builds a poset from labels and covering pairs `(lower, upper)`.
    ///
    /// Errors on duplicate labels, unknown labels, directed cycles, and
    /// input pairs that are not covering relations of the generated order
    /// (i.e. pairs implied transitively by the others, or repeated pairs).
    pub fn from_covers(labels: &[&str], cover_pairs: &[(&str, &str)]) -> Result<Poset> {
        Poset::from_labeled_covers(
            labels.iter().map(|s| s.to_string()).collect(),
            cover_pairs
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        )
    }

    /// Owned-string variant of [`Poset::from_covers`]; the JSON entry point.
    pub fn from_labeled_covers(
        labels: Vec<String>,
        cover_pairs: Vec<(String, String)>,
    ) -> Result<Poset> {
        let n = labels.len();
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut edges = Vec::with_capacity(cover_pairs.len());
        for (a, b) in &cover_pairs {
            let ia = *index.get(a.as_str()).ok_or_else(|| Error::UnknownLabel(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or_else(|| Error::UnknownLabel(b.clone()))?;
            if ia == ib {
                return Err(Error::CoverCycle);
            }
            edges.push((ia, ib));
        }
        {
            let mut seen = edges.clone();
            seen.sort_unstable();
            for w in seen.windows(2) {
                if w[0] == w[1] {
                    let (a, b) = w[0];
                    return Err(Error::RedundantCover {
                        lower: labels[a].clone(),
                        upper: labels[b].clone(),
                    });
                }
            }
        }

        // Stable topological sort: always emit the smallest available input
        // index, so incomparable elements keep their input order.
        let order = stable_toposort(n, &edges).ok_or(Error::CoverCycle)?;
        let mut new_of = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new;
        }
        let sorted_labels: Vec<String> = order.iter().map(|&o| labels[o].clone()).collect();
        let edges: Vec<(usize, usize)> =
            edges.iter().map(|&(a, b)| (new_of[a], new_of[b])).collect();

        // Reflexive-transitive closure; children have larger indices, so one
        // descending pass suffices.
        let mut leq = vec![false; n * n];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &edges {
            children[a].push(b);
        }
        for i in (0..n).rev() {
            leq[i * n + i] = true;
            for &c in &children[i] {
                for j in 0..n {
                    if leq[c * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }

        let covers = reduction(n, &leq);
        if covers.len() != edges.len() {
            let mut sorted_edges = edges.clone();
            sorted_edges.sort_unstable();
            for &(a, b) in &sorted_edges {
                if !covers.contains(&(a, b)) {
                    return Err(Error::RedundantCover {
                        lower: sorted_labels[a].clone(),
                        upper: sorted_labels[b].clone(),
                    });
                }
            }
        }

        Ok(Poset { labels: sorted_labels, leq, covers })
    }

    /// Builds from a dense `leq` relation already known to be a partial
    /// order whose indices form a linear extension. Used by the generators.
    pub(crate) fn from_leq(labels: Vec<String>, leq: Vec<bool>) -> Poset {
        let n = labels.len();
        debug_assert_eq!(leq.len(), n * n);
        debug_assert!(is_natural_order(n, &leq));
        let covers = reduction(n, &leq);
        Poset { labels, leq, covers }
    }

    /// Parses `{"elements": [...], "covers": [["a","b"], ...]}`.
    pub fn from_json_str(s: &str) -> Result<Poset> {
        let file: PosetFile = serde_json::from_str(s)?;
        Poset::from_labeled_covers(file.elements, file.covers)
    }

    /// Serializes to the same JSON shape accepted by [`Poset::from_json_str`].
    pub fn to_json_string(&self) -> String {
        let file = PosetFile {
            elements: self.labels.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
                .collect(),
        };
        serde_json::to_string(&file).expect("poset serialization cannot fail")
    }

    /// Total order x1 < x2 < ... < xn.
    pub fn chain(n: usize) -> Poset {
        let labels = standard_labels(n);
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in i..n {
                leq[i * n + j] = true;
            }
        }
        Poset::from_leq(labels, leq)
    }

    /// Discrete order on n elements.
    pub fn antichain_poset(n: usize) -> Poset {
        let labels = standard_labels(n);
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        Poset::from_leq(labels, leq)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n() + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Covering pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Number of related pairs; this is the dimension of the incidence
    /// algebra and equals `Z(P, 3)`.
    pub fn dim_incidence(&self) -> u64 {
        self.leq.iter().filter(|&&b| b).count() as u64
    }

    /// Strictly related pairs `(i, j)` with `i < j`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq[i * n + j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Index sets of the connected components of the Hasse graph, each
    /// sorted ascending, ordered by smallest member.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for &(a, b) in &self.covers {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|g| g[0]);
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_indices().len() <= 1
    }

    /// Induced subposet on `indices` (ascending), with the index map back to
    /// `self`. Restriction of a linear extension stays a linear extension.
    pub fn induced(&self, indices: &[usize]) -> (Poset, Vec<usize>) {
        let m = indices.len();
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let mut leq = vec![false; m * m];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                leq[a * m + b] = self.leq(i, j);
            }
        }
        (Poset::from_leq(labels, leq), indices.to_vec())
    }

    /// Connected components as posets, with index maps back to `self`.
    pub fn connected_components(&self) -> Vec<(Poset, Vec<usize>)> {
        self.component_indices()
            .iter()
            .map(|g| self.induced(g))
            .collect()
    }

    /// Circuit statistics of the undirected Hasse graph with the default cap.
    pub fn circuit_stats(&self) -> CircuitStats {
        self.circuit_stats_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    /// Circuit statistics; `simple_circuit_count` is `None` when more than
    /// `cap` simple cycles exist.
    pub fn circuit_stats_with_cap(&self, cap: u64) -> CircuitStats {
        let n = self.n();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.covers {
            adj[a].push(b);
            adj[b].push(a);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        let components = self.component_indices().len();
        let cycle_rank = self.covers.len() + components - n;
        CircuitStats {
            cycle_rank,
            simple_circuit_count: count_simple_cycles(&adj, cap),
        }
    }

    /// Evaluates the zeta polynomial `Z(P, m)`: the number of multichains
    /// `t_1 <= ... <= t_{m-1}`, computed as the entry sum of `zeta^(m-2)`.
    /// Requires `m >= 2`.
    pub fn zeta_poly_eval(&self, m: u64) -> Result<BigUint> {
        if m < 2 {
            return Err(Error::invalid(format!(
                "zeta polynomial needs m >= 2, got {m}"
            )));
        }
        let n = self.n();
        let zeta: Vec<BigUint> = self
            .leq
            .iter()
            .map(|&b| if b { BigUint::one() } else { BigUint::zero() })
            .collect();
        let power = biguint_mat_pow(n, &zeta, m - 2);
        Ok(power.into_iter().sum())
    }

    /// Maximal-chain lengths and rank-function consistency.
    pub fn graded_report(&self) -> GradedReport {
        let n = self.n();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut down: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.covers {
            up[a].push(b);
            down[b].push(a);
        }

        // Saturated chains from minimal elements, counted by length via DP
        // along the linear extension.
        let mut chains_at: Vec<BTreeMap<usize, u128>> = vec![BTreeMap::new(); n];
        for v in 0..n {
            if down[v].is_empty() {
                chains_at[v].insert(0, 1);
            } else {
                let mut acc: BTreeMap<usize, u128> = BTreeMap::new();
                for &u in &down[v] {
                    for (&len, &cnt) in &chains_at[u] {
                        *acc.entry(len + 1).or_insert(0) += cnt;
                    }
                }
                chains_at[v] = acc;
            }
        }
        let mut max_chain_lengths: BTreeMap<usize, u128> = BTreeMap::new();
        if n == 0 {
            return GradedReport {
                is_graded: true,
                rank_of: Some(Vec::new()),
                max_chain_lengths,
            };
        }
        let components = self.component_indices();
        let mut comp_of = vec![0usize; n];
        for (c, group) in components.iter().enumerate() {
            for &v in group {
                comp_of[v] = c;
            }
        }
        let mut comp_lengths: Vec<Vec<usize>> = vec![Vec::new(); components.len()];
        for v in 0..n {
            if up[v].is_empty() {
                for (&len, &cnt) in &chains_at[v] {
                    *max_chain_lengths.entry(len).or_insert(0) += cnt;
                    comp_lengths[comp_of[v]].push(len);
                }
            }
        }
        let equal_per_component = comp_lengths
            .iter()
            .all(|ls| ls.windows(2).all(|w| w[0] == w[1]));

        // Rank via BFS over undirected cover edges; +1 upward, -1 downward.
        let mut rank = vec![0i64; n];
        let mut seen = vec![false; n];
        let mut consistent = true;
        'outer: for group in &components {
            let root = group[0];
            seen[root] = true;
            rank[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let steps: Vec<(usize, i64)> = up[v]
                    .iter()
                    .map(|&w| (w, 1))
                    .chain(down[v].iter().map(|&w| (w, -1)))
                    .collect();
                for (w, d) in steps {
                    if !seen[w] {
                        seen[w] = true;
                        rank[w] = rank[v] + d;
                        queue.push_back(w);
                    } else if rank[w] != rank[v] + d {
                        consistent = false;
                        break 'outer;
                    }
                }
            }
        }
        let rank_of = if consistent {
            let mut out = vec![0usize; n];
            for group in &components {
                let min = group.iter().map(|&v| rank[v]).min().unwrap();
                for &v in group {
                    out[v] = (rank[v] - min) as usize;
                }
            }
            Some(out)
        } else {
            None
        };

        let is_graded = consistent && equal_per_component;
        GradedReport {
            is_graded,
            rank_of: if is_graded { rank_of } else { None },
            max_chain_lengths,
        }
    }

    /// Rank-function consistency alone: there is an assignment with every
    /// cover raising rank by exactly one. Weaker than `is_graded`.
    pub fn has_rank_function(&self) -> bool {
        // Trees and forests always admit one; circuits may obstruct it.
        let n = self.n();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut down: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.covers {
            up[a].push(b);
            down[b].push(a);
        }
        let mut rank = vec![0i64; n];
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let steps: Vec<(usize, i64)> = up[v]
                    .iter()
                    .map(|&w| (w, 1))
                    .chain(down[v].iter().map(|&w| (w, -1)))
                    .collect();
                for (w, d) in steps {
                    if !seen[w] {
                        seen[w] = true;
                        rank[w] = rank[v] + d;
                        queue.push_back(w);
                    } else if rank[w] != rank[v] + d {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All antichains (the empty one included) as sorted index sets in
    /// lexicographic order, each flagged maximal when no element can extend
    /// it.
    pub fn antichains(&self, cap: u64) -> Result<Vec<(Vec<usize>, bool)>> {
        let n = self.n();
        let mut out: Vec<(Vec<usize>, bool)> = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        // Iterative lexicographic DFS over extension start points.
        fn emit(
            p: &Poset,
            n: usize,
            start: usize,
            current: &mut Vec<usize>,
            out: &mut Vec<(Vec<usize>, bool)>,
            cap: u64,
        ) -> Result<()> {
            if out.len() as u64 >= cap {
                return Err(Error::CapExceeded { what: "antichain", cap: cap as u128 });
            }
            let maximal = (0..n).all(|x| {
                current.contains(&x) || current.iter().any(|&a| p.comparable(a, x))
            });
            out.push((current.clone(), maximal));
            for i in start..n {
                if current.iter().all(|&a| !p.comparable(a, i)) {
                    current.push(i);
                    emit(p, n, i + 1, current, out, cap)?;
                    current.pop();
                }
            }
            Ok(())
        }
        emit(self, n, 0, &mut current, &mut out, cap)?;
        Ok(out)
    }

    /// Automorphism group of the order relation.
    pub fn automorphisms(&self) -> aut::AutGroup {
        aut::automorphisms(self)
    }
}

fn standard_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn stable_toposort(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        indeg[b] += 1;
        children[a].push(b);
    }
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&i| indeg[i] == 0)
        .map(std::cmp::Reverse)
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse(v)) = heap.pop() {
        order.push(v);
        for &c in &children[v] {
            indeg[c] -= 1;
            if indeg[c] == 0 {
                heap.push(std::cmp::Reverse(c));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Transitive reduction of a finite order given its closure.
fn reduction(n: usize, leq: &[bool]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !leq[i * n + j] {
                continue;
            }
            let between = (0..n)
                .any(|k| k != i && k != j && leq[i * n + k] && leq[k * n + j]);
            if !between {
                covers.push((i, j));
            }
        }
    }
    covers.sort_unstable();
    covers
}

pub(crate) fn is_natural_order(n: usize, leq: &[bool]) -> bool {
    for i in 0..n {
        if !leq[i * n + i] {
            return false;
        }
        for j in 0..n {
            if leq[i * n + j] && j < i {
                return false;
            }
            for k in 0..n {
                if leq[i * n + j] && leq[j * n + k] && !leq[i * n + k] {
                    return false;
                }
            }
        }
    }
    true
}

struct CycleSearch<'a> {
    adj: &'a [Vec<usize>],
    on_path: Vec<bool>,
    count: u64,
    cap: u64,
}

impl CycleSearch<'_> {
    // Counts simple cycles whose minimum vertex is `base`; the path walks
    // vertices above `base` and is canonicalized by first < last neighbor.
    fn walk(&mut self, base: usize, v: usize, first: usize, len: usize) -> bool {
        for &w in &self.adj[v] {
            if w == base {
                if len >= 2 && first < v {
                    self.count += 1;
                    if self.count > self.cap {
                        return false;
                    }
                }
            } else if w > base && !self.on_path[w] {
                self.on_path[w] = true;
                let ok = self.walk(base, w, first, len + 1);
                self.on_path[w] = false;
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

fn count_simple_cycles(adj: &[Vec<usize>], cap: u64) -> Option<u64> {
    let n = adj.len();
    let mut search = CycleSearch { adj, on_path: vec![false; n], count: 0, cap };
    for base in 0..n {
        for &first in &adj[base] {
            if first > base {
                search.on_path[first] = true;
                let ok = search.walk(base, first, first, 1);
                search.on_path[first] = false;
                if !ok {
                    return None;
                }
            }
        }
    }
    Some(search.count)
}

fn biguint_mat_mul(n: usize, a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            if a[i * n + k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k * n + j].is_zero() {
                    let t = &a[i * n + k] * &b[k * n + j];
                    out[i * n + j] += t;
                }
            }
        }
    }
    out
}

fn biguint_mat_pow(n: usize, m: &[BigUint], mut e: u64) -> Vec<BigUint> {
    let mut result = vec![BigUint::zero(); n * n];
    for i in 0..n {
        result[i * n + i] = BigUint::one();
    }
    let mut base = m.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = biguint_mat_mul(n, &result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = biguint_mat_mul(n, &base, &base);
        }
    }
    result
}
