//! Complexity of the torus action on the incidence monoid.
//!
//! For connected `P` on `n` elements the maximal two-sided torus orbit has
//! dimension `2n - 1`, so the complexity is `dim I(P) - (2n - 1)`, i.e.
//! `Z(P,3) - 2 Z(P,2) + 1`. Disconnected posets add up their components'
//! complexities. The classification below separates complexity 0 (toric)
//! and the two complexity-1 shapes: one circuit with chains of length 1, or
//! a unique maximal 2-chain in a circuit-free Hasse diagram.

use std::fmt;

use serde_json::{json, Value};

use crate::poset::Poset;
use crate::{Error, Result};

/// Complexity data of one connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentComplexity {
    pub size: u64,
    pub nontrivial_relations: u64,
    pub complexity: i64,
}

/// Complexity report for a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityReport {
    /// `Z(P, 3)`: number of related pairs.
    pub dim: u64,
    /// Sum of component complexities; equals `dim - (2n - 1)` when connected.
    pub complexity: i64,
    /// Rank of the acting quotient torus: `2 Z(P, 2) - #components`.
    pub rank: u64,
    pub per_component: Vec<ComponentComplexity>,
}

/// Classification tag. Connected posets get one of the first four;
/// disconnected posets report per-component tags, collapsing to `Toric`
/// when every factor is toric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosetClass {
    Toric,
    Complexity1Circuit,
    Complexity1TwoChain,
    Higher(i64),
    Product(Vec<PosetClass>),
}

impl fmt::Display for PosetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetClass::Toric => write!(f, "Toric"),
            PosetClass::Complexity1Circuit => write!(f, "Complexity1Circuit"),
            PosetClass::Complexity1TwoChain => write!(f, "Complexity1TwoChain"),
            PosetClass::Higher(c) => write!(f, "Higher({c})"),
            PosetClass::Product(parts) => {
                write!(f, "Product[")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Outer symmetry descriptor: `H^1` of the Hasse graph paired with the
/// order automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutDescriptor {
    /// First Betti number (cycle rank) of the undirected Hasse graph.
    pub betti1: usize,
    pub aut_order: u128,
    pub aut_generators: Vec<Vec<usize>>,
}

pub fn complexity_report(p: &Poset) -> ComplexityReport {
    let components = p.connected_components();
    let mut per_component = Vec::with_capacity(components.len());
    let mut total: i64 = 0;
    for (comp, _) in &components {
        let size = comp.n() as u64;
        let dim = comp.dim_incidence();
        let nontrivial = dim - size;
        let complexity = dim as i64 - (2 * size as i64 - 1);
        per_component.push(ComponentComplexity {
            size,
            nontrivial_relations: nontrivial,
            complexity,
        });
        total += complexity;
    }
    ComplexityReport {
        dim: p.dim_incidence(),
        complexity: total,
        rank: 2 * p.n() as u64 - components.len() as u64,
        per_component,
    }
}

pub fn classify(p: &Poset) -> PosetClass {
    let components = p.connected_components();
    if components.len() == 1 {
        return classify_connected(&components[0].0);
    }
    let parts: Vec<PosetClass> = components
        .iter()
        .map(|(c, _)| classify_connected(c))
        .collect();
    if parts.iter().all(|t| *t == PosetClass::Toric) {
        PosetClass::Toric
    } else {
        PosetClass::Product(parts)
    }
}

fn classify_connected(p: &Poset) -> PosetClass {
    let report = complexity_report(p);
    let c = report.complexity;
    let graded = p.graded_report();
    let cycle_rank = p.circuit_stats_with_cap(0).cycle_rank;
    let longest = graded.max_chain_lengths.keys().max().copied().unwrap_or(0);
    let two_chains = graded.max_chain_lengths.get(&2).copied().unwrap_or(0);
    let rankable = p.has_rank_function();

    if longest <= 1 && cycle_rank == 0 {
        PosetClass::Toric
    } else if longest <= 1 && cycle_rank == 1 && rankable {
        PosetClass::Complexity1Circuit
    } else if longest <= 2 && two_chains == 1 && cycle_rank == 0 && rankable {
        PosetClass::Complexity1TwoChain
    } else {
        PosetClass::Higher(c)
    }
}

/// Checks the four equivalent descriptions of the toric case on a connected
/// poset: toric tag, `dim = 2n - 1`, exactly `n - 1` nontrivial relations,
/// and a circuit-free Hasse diagram with no chain of length 2. Returns true
/// iff all four agree.
pub fn classification_consistency(p: &Poset) -> Result<bool> {
    if !p.is_connected() {
        return Err(Error::invalid(
            "classification consistency is defined for connected posets",
        ));
    }
    let n = p.n() as u64;
    let report = complexity_report(p);
    let graded = p.graded_report();
    let longest = graded.max_chain_lengths.keys().max().copied().unwrap_or(0);
    let cycle_rank = p.circuit_stats_with_cap(0).cycle_rank;

    let by_class = classify(p) == PosetClass::Toric;
    let by_dim = report.dim == 2 * n - 1;
    let by_relations = report.dim - n == n - 1;
    let by_shape = longest <= 1 && cycle_rank == 0;
    Ok(by_class == by_dim && by_dim == by_relations && by_relations == by_shape)
}

pub fn out_descriptor(p: &Poset) -> OutDescriptor {
    let aut = p.automorphisms();
    OutDescriptor {
        betti1: p.circuit_stats_with_cap(0).cycle_rank,
        aut_order: aut.order,
        aut_generators: aut.generators,
    }
}

/// Full analysis as JSON: dimension, complexity, rank, class, outer data,
/// and the per-component table.
pub fn report_json(p: &Poset) -> Value {
    let report = complexity_report(p);
    let out = out_descriptor(p);
    json!({
        "elements": p.n(),
        "dim": report.dim,
        "complexity": report.complexity,
        "rank": report.rank,
        "class": classify(p).to_string(),
        "betti1": out.betti1,
        "aut_order": out.aut_order,
        "per_component": report
            .per_component
            .iter()
            .map(|c| {
                json!({
                    "size": c.size,
                    "nontrivial_relations": c.nontrivial_relations,
                    "complexity": c.complexity,
                })
            })
            .collect::<Vec<_>>(),
    })
}
