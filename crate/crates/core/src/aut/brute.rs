use num_bigint::BigUint;

use super::{PermGroup, StabChain};
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::model::Permutation;

/// Largest graph the exhaustive oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// Every colour- and edge-preserving permutation, by exhaustive backtracking
/// over colour-compatible images.
pub fn brute_force_elements(graph: &ColoredGraph) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    enumerate(graph, |p| out.push(p.clone()))?;
    Ok(out)
}

/// The automorphism group found by exhaustive enumeration. The generator
/// list keeps each enumerated element that is not yet generated; the
/// recorded order is the number of elements enumerated.
pub fn brute_force_automorphisms(graph: &ColoredGraph) -> Result<PermGroup> {
    let n = graph.num_vertices();
    let mut chain = StabChain::new(n);
    let mut generators = Vec::new();
    let mut count: u64 = 0;
    enumerate(graph, |p| {
        count += 1;
        if !p.is_identity() && chain.insert(p) {
            generators.push(p.clone());
        }
    })?;
    Ok(PermGroup::with_order(n, generators, BigUint::from(count)))
}

fn enumerate(graph: &ColoredGraph, mut visit: impl FnMut(&Permutation)) -> Result<()> {
    let n = graph.num_vertices();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::Guard {
            what: "graph size",
            size: n as u128,
            limit: BRUTE_FORCE_LIMIT as u128,
        });
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(graph, 0, &mut image, &mut used, &mut visit);
    Ok(())
}

fn extend(
    graph: &ColoredGraph,
    v: usize,
    image: &mut [usize],
    used: &mut [bool],
    visit: &mut impl FnMut(&Permutation),
) {
    let n = image.len();
    if v == n {
        let p = Permutation::from_images(image.to_vec()).expect("bijection by construction");
        visit(&p);
        return;
    }
    for u in 0..n {
        if used[u] || graph.colour(u) != graph.colour(v) {
            continue;
        }
        image[v] = u;
        let consistent = (0..=v).all(|w| graph.has_edge(v, w) == graph.has_edge(u, image[w]));
        if consistent {
            used[u] = true;
            extend(graph, v + 1, image, used, visit);
            used[u] = false;
        }
    }
    image[v] = usize::MAX;
}
