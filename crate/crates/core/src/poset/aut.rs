//! Order automorphisms by partition-refined backtracking.
//!
//! The group order comes from an orbit-stabilizer chain: for each point `i`
//! in turn we find, inside the stabilizer of `0..i-1`, every image `j` that
//! some automorphism sends `i` to. Each successful search contributes a
//! coset representative; the representatives generate the group, and the
//! order is the product of the orbit sizes. Worst case exponential, intended
//! for n up to about 30.

use std::collections::BTreeMap;

use super::Poset;

/// Automorphism group given by its order and a generating set of
/// permutations (images by index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGroup {
    pub order: u128,
    pub generators: Vec<Vec<usize>>,
}

impl AutGroup {
    /// Multiplies out the full group by closure. Only sensible for small
    /// orders; used by tests to cross-check `order`.
    pub fn elements(&self, n: usize) -> Vec<Vec<usize>> {
        let id: Vec<usize> = (0..n).collect();
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(p) = frontier.pop() {
            for g in &self.generators {
                let q: Vec<usize> = (0..n).map(|i| g[p[i]]).collect();
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// True when `perm` preserves the order relation in both directions.
pub fn preserves_order(p: &Poset, perm: &[usize]) -> bool {
    let n = p.n();
    (0..n).all(|i| (0..n).all(|j| p.leq(i, j) == p.leq(perm[i], perm[j])))
}

pub fn automorphisms(p: &Poset) -> AutGroup {
    let n = p.n();
    if n == 0 {
        return AutGroup { order: 1, generators: Vec::new() };
    }
    let colors = refine_colors(p);
    let mut order: u128 = 1;
    let mut generators = Vec::new();
    for i in 0..n {
        let mut orbit_size: u128 = 1;
        for j in i + 1..n {
            if colors[j] != colors[i] {
                continue;
            }
            if let Some(g) = search(p, &colors, i, j) {
                debug_assert!(preserves_order(p, &g));
                orbit_size += 1;
                generators.push(g);
            }
        }
        order *= orbit_size;
    }
    AutGroup { order, generators }
}

/// Iterated neighborhood color refinement; a cheap isomorphism invariant
/// that prunes the backtracking.
fn refine_colors(p: &Poset) -> Vec<usize> {
    let n = p.n();
    let mut colors: Vec<usize> = {
        let sigs: Vec<(usize, usize)> = (0..n)
            .map(|v| {
                let down = (0..n).filter(|&u| p.lt(u, v)).count();
                let up = (0..n).filter(|&u| p.lt(v, u)).count();
                (down, up)
            })
            .collect();
        canonical_ids(&sigs)
    };
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut below: Vec<usize> =
                    (0..n).filter(|&u| p.lt(u, v)).map(|u| colors[u]).collect();
                let mut above: Vec<usize> =
                    (0..n).filter(|&u| p.lt(v, u)).map(|u| colors[u]).collect();
                below.sort_unstable();
                above.sort_unstable();
                (colors[v], below, above)
            })
            .collect();
        let next = canonical_ids(&sigs);
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

fn canonical_ids<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut ids: BTreeMap<T, usize> = BTreeMap::new();
    for s in sigs {
        let next = ids.len();
        ids.entry(s.clone()).or_insert(next);
    }
    // Renumber by sorted signature for determinism across runs.
    let mut sorted: Vec<&T> = ids.keys().collect();
    sorted.sort();
    let remap: BTreeMap<&T, usize> =
        sorted.into_iter().enumerate().map(|(k, s)| (s, k)).collect();
    sigs.iter().map(|s| remap[s]).collect()
}

/// Finds one automorphism fixing `0..fixed` pointwise and sending `fixed`
/// to `target`, if any exists.
fn search(p: &Poset, colors: &[usize], fixed: usize, target: usize) -> Option<Vec<usize>> {
    let n = p.n();
    let mut image: Vec<Option<usize>> = (0..fixed).map(Some).collect();
    image.resize(n, None);
    let mut used = vec![false; n];
    for k in 0..fixed {
        used[k] = true;
    }
    // The identity prefix is consistent by construction; start by placing
    // `fixed -> target`.
    if !compatible(p, &image, fixed, target) {
        return None;
    }
    image[fixed] = Some(target);
    used[target] = true;
    if extend(p, colors, &mut image, &mut used, fixed + 1) {
        Some(image.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

fn extend(
    p: &Poset,
    colors: &[usize],
    image: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    k: usize,
) -> bool {
    let n = p.n();
    if k == n {
        return true;
    }
    for cand in 0..n {
        if used[cand] || colors[cand] != colors[k] || !compatible(p, image, k, cand) {
            continue;
        }
        image[k] = Some(cand);
        used[cand] = true;
        if extend(p, colors, image, used, k + 1) {
            return true;
        }
        image[k] = None;
        used[cand] = false;
    }
    false
}

fn compatible(p: &Poset, image: &[Option<usize>], k: usize, cand: usize) -> bool {
    for (m, im) in image.iter().enumerate() {
        if let Some(im) = *im {
            if p.leq(k, m) != p.leq(cand, im) || p.leq(m, k) != p.leq(im, cand) {
                return false;
            }
        }
    }
    true
}
