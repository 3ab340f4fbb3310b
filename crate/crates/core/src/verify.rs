//! Exhaustive small-n self-checks across every module.
//!
//! [`run`] sweeps all naturally labeled posets up to a size bound through
//! each invariant suite, plus seeded random posets for the properties that
//! scale past exhaustive range. Each suite reports its scope, how many
//! poset instances it processed, how many checks it made, and the first
//! counterexample if one appeared. Heavy suites carry tighter size caps
//! than `n_max`; the scope string says which.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::algebra::{recover_order, rook_representatives};
use crate::antichain::{
    intersection_lattice, weight_report, MaskSymbol, SupportMask, Weight,
};
use crate::complexity::{classification_consistency, classify, complexity_report, PosetClass};
use crate::fflab::{enumerate_points, unit_count};
use crate::gen::{natural_posets, random_natural_poset};
use crate::poset::{aut, Poset, DEFAULT_ENUMERATION_CAP};
use crate::star::{
    adherence_hasse, covered_words, covers, enumerate_reps, star_poset,
    torus_orbit_lattice, OrbitWord,
};
use crate::{Error, RationalMatrix, Result};

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub scope: String,
    pub posets: u64,
    pub checks: u64,
    pub failure: Option<String>,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub n_max: usize,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.suites.iter().all(|s| s.failure.is_none())
    }

    pub fn posets_checked(&self) -> u64 {
        self.suites.iter().map(|s| s.posets).sum()
    }

    pub fn total_checks(&self) -> u64 {
        self.suites.iter().map(|s| s.checks).sum()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("verify n_max={}\n", self.n_max);
        for s in &self.suites {
            let status = if s.failure.is_none() { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "{status}  {}  posets={}  checks={}  scope={}\n",
                s.name, s.posets, s.checks, s.scope
            ));
            if let Some(f) = &s.failure {
                out.push_str(&format!("      first failure: {f}\n"));
            }
        }
        let status = if self.all_pass() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{status}  suites={}  posets={}  checks={}\n",
            self.suites.len(),
            self.posets_checked(),
            self.total_checks()
        ));
        out
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "n_max": self.n_max,
            "all_pass": self.all_pass(),
            "posets_checked": self.posets_checked(),
            "total_checks": self.total_checks(),
            "suites": self
                .suites
                .iter()
                .map(|s| {
                    json!({
                        "name": s.name,
                        "scope": s.scope,
                        "posets": s.posets,
                        "checks": s.checks,
                        "failure": s.failure,
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

struct Suite {
    name: &'static str,
    scope: String,
    posets: u64,
    checks: u64,
    failure: Option<String>,
}

impl Suite {
    fn new(name: &'static str, scope: String) -> Suite {
        Suite { name, scope, posets: 0, checks: 0, failure: None }
    }

    fn ok(&self) -> bool {
        self.failure.is_none()
    }

    fn poset(&mut self) {
        self.posets += 1;
    }

    fn check<F: FnOnce() -> String>(&mut self, cond: bool, msg: F) {
        if self.failure.is_some() {
            return;
        }
        self.checks += 1;
        if !cond {
            self.failure = Some(msg());
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            scope: self.scope,
            posets: self.posets,
            checks: self.checks,
            failure: self.failure,
        }
    }
}

fn sweep<F: FnMut(&mut Suite, &Poset)>(s: &mut Suite, cap: usize, mut body: F) {
    for n in 0..=cap {
        for p in natural_posets(n) {
            if !s.ok() {
                return;
            }
            s.poset();
            body(s, &p);
        }
    }
}

pub fn run(n_max: usize) -> Result<VerifyReport> {
    if n_max > 7 {
        return Err(Error::invalid(format!(
            "verification sweeps support n_max <= 7, got {n_max}"
        )));
    }
    let suites = vec![
        suite_order_axioms(n_max),
        suite_zeta_polynomial(n_max),
        suite_mobius_inversion(n_max),
        suite_support_recovery(n_max),
        suite_complexity(n_max),
        suite_classification(n_max),
        suite_circuits(n_max),
        suite_gradedness(n_max),
        suite_antichains_brute(n_max),
        suite_intersection_lattice(n_max),
        suite_antichain_masks(n_max),
        suite_automorphisms_brute(n_max),
        suite_star_words(n_max),
        suite_torus_lattice(n_max),
        suite_fflab_points(n_max),
        suite_random_mobius(n_max),
        suite_random_roundtrip(n_max),
    ];
    Ok(VerifyReport { n_max, suites })
}

fn suite_order_axioms(n_max: usize) -> SuiteResult {
    let mut s = Suite::new("order-axioms", format!("n<={n_max}"));
    sweep(&mut s, n_max, |s, p| {
        let n = p.n();
        s.check(
            (0..n).all(|i| p.leq(i, i)),
            || format!("reflexivity fails on {}", p.to_json_string()),
        );
        s.check(
            (0..n).all(|i| (0..n).all(|j| i == j || !(p.leq(i, j) && p.leq(j, i)))),
            || format!("antisymmetry fails on {}", p.to_json_string()),
        );
        s.check(
            (0..n).all(|i| {
                (0..n).all(|j| {
                    (0..n).all(|k| !(p.leq(i, j) && p.leq(j, k)) || p.leq(i, k))
                })
            }),
            || format!("transitivity fails on {}", p.to_json_string()),
        );
        s.check(
            (0..n).all(|i| (0..n).all(|j| !p.leq(i, j) || i <= j)),
            || format!("labeling is not a linear extension on {}", p.to_json_string()),
        );
        let roundtrip = Poset::from_json_str(&p.to_json_string());
        s.check(
            roundtrip.as_ref().map_or(false, |r| r == p),
            || format!("JSON roundtrip changes {}", p.to_json_string()),
        );
        let labels: Vec<String> = p.labels().to_vec();
        let pairs: Vec<(String, String)> = p
            .covers()
            .iter()
            .map(|&(a, b)| (labels[a].clone(), labels[b].clone()))
            .collect();
        let rebuilt = Poset::from_labeled_covers(labels, pairs);
        s.check(
            rebuilt.as_ref().map_or(false, |r| r == p),
            || format!("cover rebuild changes {}", p.to_json_string()),
        );
    });
    s.finish()
}

/// Literal multichain enumeration: sequences t1 <= ... <= tk.
fn brute_multichains(p: &Poset, k: usize) -> u128 {
    fn rec(p: &Poset, prev: usize, left: usize) -> u128 {
        if left == 0 {
            return 1;
        }
        (0..p.n())
            .filter(|&j| p.leq(prev, j))
            .map(|j| rec(p, j, left - 1))
            .sum()
    }
    (0..p.n()).map(|i| rec(p, i, k - 1)).sum()
}

fn suite_zeta_polynomial(n_max: usize) -> SuiteResult {
    let cap = n_max.min(6);
    let brute_cap = n_max.min(4);
    let mut s = Suite::new(
        "zeta-polynomial",
        format!("n<={cap}; multichain oracle n<={brute_cap}, m<=6"),
    );
    sweep(&mut s, cap, |s, p| {
        let n = p.n();
        s.check(
            p.zeta_poly_eval(2).unwrap() == BigUint::from(n),
            || format!("Z(P,2) != |P| on {}", p.to_json_string()),
        );
        s.check(
            p.zeta_poly_eval(3).unwrap() == BigUint::from(p.dim_incidence()),
            || format!("Z(P,3) != dim on {}", p.to_json_string()),
        );
        s.check(p.zeta_poly_eval(1).is_err(), || "m=1 accepted".to_string());
        if n <= brute_cap {
            for m in 2..=6u64 {
                let brute = brute_multichains(p, (m - 1) as usize);
                s.check(
                    p.zeta_poly_eval(m).unwrap() == BigUint::from(brute),
                    || format!("Z(P,{m}) != multichain count on {}", p.to_json_string()),
                );
            }
        }
    });
    s.finish()
}

fn suite_mobius_inversion(n_max: usize) -> SuiteResult {
    let cap = n_max.min(6);
    let mut s = Suite::new("mobius-inversion", format!("n<={cap}"));
    sweep(&mut s, cap, |s, p| {
        let zeta = RationalMatrix::zeta(p);
        let mu = RationalMatrix::mobius(p);
        let delta = RationalMatrix::delta(p);
        s.check(
            mu.convolve(&zeta).unwrap() == delta,
            || format!("mu * zeta != delta on {}", p.to_json_string()),
        );
        s.check(
            zeta.convolve(&mu).unwrap() == delta,
            || format!("zeta * mu != delta on {}", p.to_json_string()),
        );
        s.check(
            zeta.invert_unit().unwrap() == mu,
            || format!("zeta^-1 != mu on {}", p.to_json_string()),
        );
        s.check(
            mu.invert_unit().unwrap() == zeta,
            || format!("mu^-1 != zeta on {}", p.to_json_string()),
        );
    });
    s.finish()
}

fn suite_support_recovery(n_max: usize) -> SuiteResult {
    let cap = n_max.min(6);
    let mut s = Suite::new("support-recovery", format!("n<={cap}"));
    sweep(&mut s, cap, |s, p| {
        let n = p.n();
        let expected: Vec<bool> = (0..n * n).map(|k| p.leq(k / n, k % n)).collect();
        s.check(
            recover_order(p) == expected,
            || format!("order recovery differs on {}", p.to_json_string()),
        );
    });
    s.finish()
}

fn suite_complexity(n_max: usize) -> SuiteResult {
    let mut s = Suite::new("complexity-formulas", format!("n<={n_max}"));
    sweep(&mut s, n_max, |s, p| {
        let report = complexity_report(p);
        let parts = p.connected_components();
        let part_sum: i64 = parts
            .iter()
            .map(|(c, _)| complexity_report(c).complexity)
            .sum();
        s.check(
            report.complexity == part_sum,
            || format!("complexity not additive on {}", p.to_json_string()),
        );
        if !p.is_connected() || p.n() == 0 {
            return;
        }
        let n = p.n() as i64;
        let z2 = p.zeta_poly_eval(2).unwrap().to_i64().unwrap();
        let z3 = p.zeta_poly_eval(3).unwrap().to_i64().unwrap();
        let formula = z3 - 2 * z2 + 1;
        s.check(
            report.complexity == formula,
            || format!("complexity != Z-formula on {}", p.to_json_string()),
        );
        s.check(
            report.complexity == report.dim as i64 - (2 * n - 1),
            || format!("complexity != dim-(2n-1) on {}", p.to_json_string()),
        );
        s.check(report.complexity >= 0, || {
            format!("negative complexity on {}", p.to_json_string())
        });
        let cycle_rank = p.circuit_stats_with_cap(0).cycle_rank as i64;
        s.check(
            report.dim as i64 >= 2 * n - 1 + cycle_rank,
            || format!("dim below circuit bound on {}", p.to_json_string()),
        );
        s.check(
            report.rank == (2 * n - 1) as u64,
            || format!("torus rank != 2n-1 on {}", p.to_json_string()),
        );
    });
    s.finish()
}

fn suite_classification(n_max: usize) -> SuiteResult {
    let consistency_cap = n_max.min(6);
    let mut s = Suite::new(
        "classification",
        format!("connected n<={n_max}; consistency n<={consistency_cap}"),
    );
    sweep(&mut s, n_max, |s, p| {
        if !p.is_connected() || p.n() == 0 {
            return;
        }
        let c = complexity_report(p).complexity;
        let class = classify(p);
        s.check(
            (class == PosetClass::Toric) == (c == 0),
            || format!("toric tag mismatch on {}", p.to_json_string()),
        );
        let is_c1 = matches!(
            class,
            PosetClass::Complexity1Circuit | PosetClass::Complexity1TwoChain
        );
        s.check(
            is_c1 == (c == 1),
            || format!("complexity-1 tag mismatch on {}", p.to_json_string()),
        );
        if p.n() <= consistency_cap {
            s.check(
                classification_consistency(p).unwrap(),
                || format!("toric characterizations disagree on {}", p.to_json_string()),
            );
        }
    });
    s.finish()
}

fn suite_circuits(n_max: usize) -> SuiteResult {
    let mut s = Suite::new("circuits", format!("n<={n_max}"));
    sweep(&mut s, n_max, |s, p| {
        let stats = p.circuit_stats();
        let count = stats.simple_circuit_count;
        s.check(
            (stats.cycle_rank == 0) == (count == Some(0)),
            || format!("cycle rank 0 vs circuit count on {}", p.to_json_string()),
        );
        s.check(
            (stats.cycle_rank == 1) == (count == Some(1)),
            || format!("cycle rank 1 vs circuit count on {}", p.to_json_string()),
        );
        if let Some(c) = count {
            s.check(
                stats.cycle_rank < 2 || c >= 2,
                || format!("high cycle rank, few circuits on {}", p.to_json_string()),
            );
        }
        // tiny caps surface as None, never as a wrong count
        if count.is_some() && count != Some(0) {
            s.check(
                p.circuit_stats_with_cap(0).simple_circuit_count.is_none(),
                || format!("cap 0 did not trip on {}", p.to_json_string()),
            );
        }
    });
    s.finish()
}

/// All maximal chains, enumerated explicitly cover by cover.
fn brute_maximal_chain_lengths(p: &Poset) -> BTreeMap<usize, u128> {
    let n = p.n();
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut down_deg = vec![0usize; n];
    for &(a, b) in p.covers() {
        up[a].push(b);
        down_deg[b] += 1;
    }
    let mut out = BTreeMap::new();
    fn dfs(up: &[Vec<usize>], v: usize, len: usize, out: &mut BTreeMap<usize, u128>) {
        if up[v].is_empty() {
            *out.entry(len).or_insert(0) += 1;
            return;
        }
        for &w in &up[v] {
            dfs(up, w, len + 1, out);
        }
    }
    for v in 0..n {
        if down_deg[v] == 0 {
            dfs(&up, v, 0, &mut out);
        }
    }
    out
}

fn brute_has_rank_function(p: &Poset) -> bool {
    let n = p.n();
    if n == 0 {
        return true;
    }
    let mut r = vec![0usize; n];
    fn rec(p: &Poset, r: &mut Vec<usize>, pos: usize) -> bool {
        let n = p.n();
        if pos == n {
            return p.covers().iter().all(|&(a, b)| r[b] == r[a] + 1);
        }
        for v in 0..n {
            r[pos] = v;
            // prune against already-assigned cover partners
            let fine = p.covers().iter().all(|&(a, b)| {
                if a == pos && b < pos {
                    r[b] == v + 1
                } else if b == pos && a < pos {
                    v == r[a] + 1
                } else {
                    true
                }
            });
            if fine && rec(p, r, pos + 1) {
                return true;
            }
        }
        false
    }
    rec(p, &mut r, 0)
}

fn suite_gradedness(n_max: usize) -> SuiteResult {
    let chain_cap = n_max.min(6);
    let rank_cap = n_max.min(4);
    let mut s = Suite::new(
        "gradedness",
        format!("n<={n_max}; chain oracle n<={chain_cap}; rank oracle n<={rank_cap}"),
    );
    sweep(&mut s, n_max, |s, p| {
        let report = p.graded_report();
        if p.n() <= chain_cap {
            s.check(
                report.max_chain_lengths == brute_maximal_chain_lengths(p),
                || format!("chain profile differs on {}", p.to_json_string()),
            );
        }
        s.check(
            report.is_graded == report.rank_of.is_some(),
            || format!("graded flag vs rank witness on {}", p.to_json_string()),
        );
        if let Some(rank_of) = &report.rank_of {
            s.check(
                p.covers().iter().all(|&(a, b)| rank_of[b] == rank_of[a] + 1),
                || format!("rank witness broken on {}", p.to_json_string()),
            );
        }
        if report.is_graded {
            s.check(
                p.has_rank_function(),
                || format!("graded but unrankable on {}", p.to_json_string()),
            );
        }
        if p.n() <= rank_cap {
            s.check(
                p.has_rank_function() == brute_has_rank_function(p),
                || format!("rank function existence differs on {}", p.to_json_string()),
            );
        }
    });
    s.finish()
}

fn brute_antichains(p: &Poset) -> Vec<(Vec<usize>, bool)> {
    let n = p.n();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let anti = set
            .iter()
            .enumerate()
            .all(|(k, &i)| set[k + 1..].iter().all(|&j| !p.comparable(i, j)));
        if anti {
            sets.push(set);
        }
    }
    sets.sort();
    sets.into_iter()
        .map(|set| {
            let maximal = (0..n)
                .all(|x| set.contains(&x) || set.iter().any(|&a| p.comparable(a, x)));
            (set, maximal)
        })
        .collect()
}

fn suite_antichains_brute(n_max: usize) -> SuiteResult {
    let cap = n_max.min(6);
    let mut s = Suite::new("antichains-brute", format!("n<={cap}"));
    sweep(&mut s, cap, |s, p| {
        let got = p.antichains(DEFAULT_ENUMERATION_CAP).unwrap();
        s.check(
            got == brute_antichains(p),
            || format!("antichain listing differs on {}", p.to_json_string()),
        );
    });
    s.finish()
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn suite_intersection_lattice(n_max: usize) -> SuiteResult {
    let cap = n_max.min(6);
    let bound_cap = n_max.min(4);
    let mut s = Suite::new(
        "intersection-lattice",
        format!("meet table n<={cap}; bound oracle n<={bound_cap}"),
    );
    sweep(&mut s, cap, |s, p| {
        let lat = intersection_lattice(p).unwrap();
        let nodes = lat.nodes();
        let nn = nodes.len();
        s.check(
            nodes[0].is_empty(),
            || format!("minimum is not empty on {}", p.to_json_string()),
        );
        for a in 0..nn {
            if !s.ok() {
                return;
            }
            for b in 0..nn {
                let m = lat.meet(a, b);
                let inter: Vec<usize> = nodes[a]
                    .iter()
                    .copied()
                    .filter(|x| nodes[b].binary_search(x).is_ok())
                    .collect();
                s.check(
                    nodes[m] == inter,
                    || format!("meet != intersection on {}", p.to_json_string()),
                );
                if p.n() <= bound_cap {
                    let is_glb = subset(&nodes[m], &nodes[a])
                        && subset(&nodes[m], &nodes[b])
                        && (0..nn).all(|w| {
                            !(subset(&nodes[w], &nodes[a]) && subset(&nodes[w], &nodes[b]))
                                || subset(&nodes[w], &nodes[m])
                        });
                    s.check(
                        is_glb,
                        || format!("meet is not the glb on {}", p.to_json_string()),
                    );
                }
            }
        }
        let edge_ok = lat.covers().iter().all(|&(lo, hi)| {
            nodes[hi].len() == nodes[lo].len() + 1 && subset(&nodes[lo], &nodes[hi])
        });
        s.check(edge_ok, || format!("bad cover edge on {}", p.to_json_string()));
        let mut expected_edges = 0usize;
        for hi in 0..nn {
            for lo in 0..nn {
                if nodes[hi].len() == nodes[lo].len() + 1 && subset(&nodes[lo], &nodes[hi]) {
                    expected_edges += 1;
                }
            }
        }
        s.check(
            lat.covers().len() == expected_edges,
            || format!("cover count differs on {}", p.to_json_string()),
        );
    });
    s.finish()
}

fn suite_antichain_masks(n_max: usize) -> SuiteResult {
    let cap = n_max.min(5);
    let mut s = Suite::new("antichain-masks", format!("n<={cap}"));
    sweep(&mut s, cap, |s, p| {
        let n = p.n();
        let strict = p.strict_pairs().len() as u64;
        let full = SupportMask::full_incidence(p);
        s.check(
            full.dimension() == p.dim_incidence(),
            || format!("full mask dimension on {}", p.to_json_string()),
        );
        for (a, _) in p.antichains(DEFAULT_ENUMERATION_CAP).unwrap() {
            if !s.ok() {
                return;
            }
            let mask = SupportMask::antichain_submonoid(p, &a).unwrap();
            s.check(
                mask.dimension() == a.len() as u64 + strict,
                || format!("mask dimension on {}", p.to_json_string()),
            );
            let symbols_ok = (0..n).all(|i| {
                (0..n).all(|j| {
                    let sym = mask.symbol(i, j);
                    if i == j {
                        if a.binary_search(&i).is_ok() {
                            sym == MaskSymbol::FreeUnit
                        } else {
                            sym == MaskSymbol::One
                        }
                    } else if p.lt(i, j) {
                        sym == MaskSymbol::Free
                    } else {
                        sym == MaskSymbol::Zero
                    }
                })
            });
            s.check(symbols_ok, || format!("mask symbols on {}", p.to_json_string()));
            let wr = weight_report(p, &a).unwrap();
            let weights_ok = wr.entries.iter().all(|e| {
                let row_in = a.binary_search(&e.row).is_ok();
                let col_in = a.binary_search(&e.col).is_ok();
                match &e.weight {
                    Weight::PlusEps(i) => *i == e.row && row_in && !col_in,
                    Weight::MinusEps(j) => *j == e.col && col_in && !row_in,
                    Weight::Zero => !row_in && !col_in,
                }
            });
            s.check(weights_ok, || format!("weights on {}", p.to_json_string()));
            s.check(
                wr.entries.len() == strict as usize,
                || format!("weight entry count on {}", p.to_json_string()),
            );
        }
        // comparable pairs are rejected
        if let Some(&(lo, hi)) = p.covers().first() {
            s.check(
                SupportMask::antichain_submonoid(p, &[lo, hi]).is_err(),
                || format!("comparable antichain accepted on {}", p.to_json_string()),
            );
        }
    });
    s.finish()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

fn suite_automorphisms_brute(n_max: usize) -> SuiteResult {
    let cap = n_max.min(5);
    let mut s = Suite::new("automorphisms-brute", format!("n<={cap}"));
    sweep(&mut s, cap, |s, p| {
        let group = p.automorphisms();
        let brute: Vec<Vec<usize>> = permutations(p.n())
            .into_iter()
            .filter(|perm| aut::preserves_order(p, perm))
            .collect();
        s.check(
            group.order == brute.len() as u128,
            || format!("automorphism order on {}", p.to_json_string()),
        );
        let mut expanded = group.elements(p.n());
        expanded.sort();
        s.check(
            expanded == brute,
            || format!("generated group differs on {}", p.to_json_string()),
        );
        s.check(
            group.generators.iter().all(|g| aut::preserves_order(p, g)),
            || format!("generator breaks order on {}", p.to_json_string()),
        );
    });
    s.finish()
}

fn suite_star_words(n_max: usize) -> SuiteResult {
    let mut s = Suite::new(
        "star-words",
        "n in 2..=7; rooks n<=5; pairwise covers n<=4; diagram n<=6".to_string(),
    );
    if n_max < 2 {
        s.scope = "skipped (n_max < 2)".to_string();
        return s.finish();
    }
    for n in 2..=7usize {
        if !s.ok() {
            break;
        }
        s.poset();
        let reps = enumerate_reps(n).unwrap();
        let expected = (1u128 << (n - 1)) + 3u128.pow((n - 1) as u32);
        s.check(
            reps.len() as u128 == expected,
            || format!("representative count at n={n}"),
        );
        s.check(
            OrbitWord::identity(n).unwrap().orbit_dim() == 2 * n - 1,
            || format!("identity dimension at n={n}"),
        );
        s.check(
            OrbitWord::zero(n).unwrap().orbit_dim() == 0,
            || format!("zero dimension at n={n}"),
        );
        if n <= 5 {
            let p = star_poset(n).unwrap();
            let rooks = rook_representatives(&p);
            let rook_words = reps.iter().filter(|w| w.is_rook()).count();
            s.check(
                rooks.len() == rook_words,
                || format!("rook count differs at n={n}"),
            );
        }
        if n <= 4 {
            for x in &reps {
                let lows = covered_words(x);
                for y in &reps {
                    let direct = covers(x, y).unwrap();
                    s.check(
                        direct == lows.contains(y),
                        || format!("cover rule vs construction at n={n}: x={x} y={y}"),
                    );
                }
            }
        }
        if n <= 6 {
            // construction asserts gradedness and unique extremes
            let h = adherence_hasse(n).unwrap();
            s.check(
                h.cover_edges().iter().all(|&(lo, hi)| h.dims()[lo] + 1 == h.dims()[hi]),
                || format!("ungraded edge at n={n}"),
            );
        }
    }
    s.finish()
}

fn suite_torus_lattice(n_max: usize) -> SuiteResult {
    let mut s = Suite::new("torus-lattice", "n in 2..=10; materialized n<=5".to_string());
    if n_max < 2 {
        s.scope = "skipped (n_max < 2)".to_string();
        return s.finish();
    }
    for n in 2..=10usize {
        if !s.ok() {
            break;
        }
        s.poset();
        let summary = torus_orbit_lattice(n).unwrap();
        s.check(
            summary.orbit_count == 1u128 << (2 * n - 1),
            || format!("orbit count at n={n}"),
        );
        s.check(
            summary.cover_count == (2 * n - 1) as u128 * (1u128 << (2 * n - 2)),
            || format!("cover count at n={n}"),
        );
        if n <= 5 {
            s.check(
                summary.boolean_iso_check == Some(true),
                || format!("boolean isomorphism at n={n}"),
            );
        } else {
            s.check(
                summary.boolean_iso_check.is_none(),
                || format!("unexpected materialization at n={n}"),
            );
        }
        let reps = (1u128 << (n - 1)) + 3u128.pow((n - 1) as u32);
        s.check(
            reps < summary.orbit_count,
            || format!("more representatives than torus orbits at n={n}"),
        );
    }
    s.finish()
}

fn suite_fflab_points(n_max: usize) -> SuiteResult {
    let cap = n_max.min(3);
    let mut cr_true = 0u64;
    let mut cr_total = 0u64;
    let mut s = Suite::new("fflab-points", String::new());
    for n in 1..=cap {
        for p in natural_posets(n) {
            if !s.ok() {
                break;
            }
            s.poset();
            let strict = p.strict_pairs().len() as u32;
            let full = SupportMask::full_incidence(&p);
            for q in [2u8, 3] {
                let closed = enumerate_points(&full, q, true).unwrap();
                let expected = (q as u64).pow(n as u32 + strict);
                s.check(
                    closed.len() as u64 == expected,
                    || format!("point count q={q} on {}", p.to_json_string()),
                );
                let units_formula = unit_count(&full, q).unwrap();
                s.check(
                    BigUint::from(closed.unit_count_enumerated()) == units_formula,
                    || format!("unit count q={q} on {}", p.to_json_string()),
                );
                let group = enumerate_points(&full, q, false).unwrap();
                s.check(
                    BigUint::from(group.len() as u64) == units_formula,
                    || format!("unit group size q={q} on {}", p.to_json_string()),
                );
                if closed.len() <= 800 {
                    s.check(
                        closed.is_closed(),
                        || format!("not closed q={q} on {}", p.to_json_string()),
                    );
                }
            }
            // the unipotent part is a group: regular and completely regular
            let u_mask = SupportMask::antichain_submonoid(&p, &[]).unwrap();
            let u = enumerate_points(&u_mask, 2, true).unwrap();
            s.check(
                u.is_regular().0 && u.is_completely_regular().0,
                || format!("unipotent group fails regularity on {}", p.to_json_string()),
            );
            // findings sweep over antichain submonoids
            for (a, _) in p.antichains(DEFAULT_ENUMERATION_CAP).unwrap() {
                let mask = SupportMask::antichain_submonoid(&p, &a).unwrap();
                for q in [2u8, 3] {
                    let m = enumerate_points(&mask, q, true).unwrap();
                    if m.len() > 3000 {
                        continue;
                    }
                    s.check(
                        m.is_closed(),
                        || format!("antichain points not closed on {}", p.to_json_string()),
                    );
                    let (cr, _) = m.is_completely_regular();
                    cr_total += 1;
                    if cr {
                        cr_true += 1;
                    }
                    if strict == 0 {
                        // diagonal monoid: t^q = t forces complete regularity
                        s.check(cr, || {
                            format!("diagonal mask not completely regular on {}", p.to_json_string())
                        });
                    }
                }
            }
        }
    }
    s.scope = format!(
        "n<={cap}, q in {{2,3}}, masks <= 3000 points; findings: {cr_true}/{cr_total} completely regular"
    );
    s.finish()
}

fn suite_random_mobius(n_max: usize) -> SuiteResult {
    if n_max < 2 {
        let mut s = Suite::new("random-mobius", "skipped (n_max < 2)".to_string());
        s.checks = 0;
        return s.finish();
    }
    let samples = 700 * n_max as u64;
    let mut s = Suite::new(
        "random-mobius",
        format!("{samples} seeded random posets, n in 2..=8"),
    );
    let mut rng = StdRng::seed_from_u64(0xA5A5_0001);
    for _ in 0..samples {
        if !s.ok() {
            break;
        }
        let n = rng.gen_range(2..=8);
        let p = random_natural_poset(&mut rng, n);
        s.poset();
        let zeta = RationalMatrix::zeta(&p);
        let mu = RationalMatrix::mobius(&p);
        let delta = RationalMatrix::delta(&p);
        s.check(
            mu.convolve(&zeta).unwrap() == delta && zeta.convolve(&mu).unwrap() == delta,
            || format!("random inversion fails on {}", p.to_json_string()),
        );
        let expected: Vec<bool> = (0..n * n).map(|k| p.leq(k / n, k % n)).collect();
        s.check(
            recover_order(&p) == expected,
            || format!("random order recovery fails on {}", p.to_json_string()),
        );
    }
    s.finish()
}

fn suite_random_roundtrip(n_max: usize) -> SuiteResult {
    if n_max < 2 {
        let mut s = Suite::new("random-roundtrip", "skipped (n_max < 2)".to_string());
        s.checks = 0;
        return s.finish();
    }
    let samples = 700 * n_max as u64;
    let mut s = Suite::new(
        "random-roundtrip",
        format!("{samples} seeded random posets, n in 2..=12"),
    );
    let mut rng = StdRng::seed_from_u64(0xA5A5_0002);
    for _ in 0..samples {
        if !s.ok() {
            break;
        }
        let n = rng.gen_range(2..=12);
        let p = random_natural_poset(&mut rng, n);
        s.poset();
        s.check(
            Poset::from_json_str(&p.to_json_string()).map_or(false, |r| r == p),
            || format!("random roundtrip fails on {}", p.to_json_string()),
        );
        s.check(
            (0..n).all(|i| (0..n).all(|j| !p.leq(i, j) || i <= j)),
            || format!("random poset not naturally labeled: {}", p.to_json_string()),
        );
    }
    s.finish()
}
