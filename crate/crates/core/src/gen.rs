//! Exhaustive and random generation of naturally labeled posets.
//!
//! A poset on indices 0..n is naturally labeled when the identity is a
//! linear extension. Every isomorphism class appears among these, and
//! [`crate::Poset`] construction normalizes to exactly this form, so the
//! generators below are the driver behind `verify` and the exhaustive test
//! suites. Counts by n: 1, 1, 2, 7, 40, 357, 4824, 96428.

use rand::Rng;

use crate::poset::Poset;

/// All naturally labeled posets on `n` elements, built by extending each
/// smaller poset with a new maximal element over every lower set.
pub fn natural_posets(n: usize) -> Vec<Poset> {
    natural_leqs(n)
        .into_iter()
        .map(|leq| Poset::from_leq(standard_labels(n), leq))
        .collect()
}

/// The connected members of [`natural_posets`].
pub fn connected_natural_posets(n: usize) -> Vec<Poset> {
    natural_posets(n)
        .into_iter()
        .filter(|p| p.is_connected())
        .collect()
}

/// One random naturally labeled poset: strict pairs above the diagonal are
/// sampled independently, then closed transitively. Density varies per call.
pub fn random_natural_poset<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Poset {
    let density: f64 = rng.gen_range(0.05..0.6);
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
        for j in i + 1..n {
            if rng.gen_bool(density) {
                leq[i * n + j] = true;
            }
        }
    }
    transitive_close(n, &mut leq);
    Poset::from_leq(standard_labels(n), leq)
}

pub(crate) fn standard_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn transitive_close(n: usize, leq: &mut [bool]) {
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
}

fn natural_leqs(n: usize) -> Vec<Vec<bool>> {
    let mut current: Vec<Vec<bool>> = vec![Vec::new()];
    for m in 0..n {
        let mut next = Vec::new();
        for leq in &current {
            for down in lower_sets(m, leq) {
                let mut bigger = vec![false; (m + 1) * (m + 1)];
                for i in 0..m {
                    for j in 0..m {
                        bigger[i * (m + 1) + j] = leq[i * m + j];
                    }
                }
                bigger[m * (m + 1) + m] = true;
                for i in 0..m {
                    if down & (1 << i) != 0 {
                        bigger[i * (m + 1) + m] = true;
                    }
                }
                next.push(bigger);
            }
        }
        current = next;
    }
    current
}

/// Lower sets of an m-element poset as bitmasks. m stays small (<= 10), so
/// scanning all subsets is fine.
fn lower_sets(m: usize, leq: &[bool]) -> Vec<u32> {
    let mut out = Vec::new();
    'subsets: for mask in 0u32..(1 << m) {
        for i in 0..m {
            if mask & (1 << i) == 0 {
                continue;
            }
            for j in 0..i {
                if leq[j * m + i] && mask & (1 << j) == 0 {
                    continue 'subsets;
                }
            }
        }
        out.push(mask);
    }
    out
}
