//! Colour-preserving graph automorphisms: refinement, search, a brute-force
//! oracle and permutation-group utilities.

mod brute;
mod refine;
mod schreier;
mod search;

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;

pub use brute::{brute_force_automorphisms, brute_force_elements, BRUTE_FORCE_LIMIT};
pub use refine::{is_equitable, refine, Coloring};
pub use schreier::StabChain;
pub use search::automorphism_group;

use crate::error::{Error, Result};
use crate::model::Permutation;

/// A permutation group given by generators. The identity never appears in
/// the generator list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    order: Option<BigUint>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: impl IntoIterator<Item = Permutation>) -> Self {
        let mut seen = HashSet::new();
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_identity() && seen.insert(g.clone()))
            .collect();
        PermGroup {
            degree,
            generators,
            order: None,
        }
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, [])
    }

    pub(crate) fn with_order(degree: usize, generators: Vec<Permutation>, order: BigUint) -> Self {
        PermGroup {
            order: Some(order),
            ..PermGroup::new(degree, generators)
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Order recorded during construction, else from a stabilizer chain.
    pub fn order(&self) -> BigUint {
        self.order.clone().unwrap_or_else(|| self.chain_order())
    }

    pub fn chain(&self) -> StabChain {
        StabChain::from_generators(self.degree, &self.generators)
    }

    pub fn chain_order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && (g.is_identity() || self.chain().contains(g))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        if self.degree != other.degree {
            return false;
        }
        let chain = other.chain();
        self.generators.iter().all(|g| chain.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }

    /// Every element, by breadth-first closure; fails past `limit` elements.
    pub fn elements(&self, limit: usize) -> Result<Vec<Permutation>> {
        let id = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = p.then(g);
                if seen.insert(q.clone()) {
                    if out.len() >= limit {
                        return Err(Error::Guard {
                            what: "group closure",
                            size: out.len() as u128 + 1,
                            limit: limit as u128,
                        });
                    }
                    out.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
        Ok(out)
    }

    /// The same group acting on `0..n` with the extra points fixed.
    pub fn extend_degree(&self, n: usize) -> PermGroup {
        PermGroup::new(n, self.generators.iter().map(|g| g.extend(n)))
    }

    /// Restriction to an invariant prefix `0..n` of the domain.
    pub fn restrict(&self, n: usize) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.restrict(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(PermGroup::new(n, gens))
    }
}

/// Orbits of the group on `subset`: components of the generator action,
/// intersected with the subset, each sorted, ordered by smallest element.
pub fn orbits(group: &PermGroup, subset: &[usize]) -> Vec<Vec<usize>> {
    let n = group.degree();
    let mut component = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        component[start] = next;
        while let Some(v) = stack.pop() {
            for g in group.generators() {
                for w in [g.apply(v), g.inverse().apply(v)] {
                    if component[w] == usize::MAX {
                        component[w] = next;
                        stack.push(w);
                    }
                }
            }
        }
        next += 1;
    }
    let mut members = vec![Vec::new(); next];
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for v in sorted {
        members[component[v]].push(v);
    }
    let mut out: Vec<Vec<usize>> = members.into_iter().filter(|m| !m.is_empty()).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbits_of_double_transposition() {
        let g = Permutation::from_cycles(4, &[&[0, 3], &[1, 2]]).unwrap();
        let group = PermGroup::new(4, [g]);
        assert_eq!(orbits(&group, &[0, 1, 2, 3]), vec![vec![0, 3], vec![1, 2]]);
    }

    #[test]
    fn trivial_orbits_are_singletons() {
        assert_eq!(
            orbits(&PermGroup::trivial(3), &[0, 1, 2]),
            vec![vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn klein_group_is_transitive() {
        let a = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        let b = Permutation::from_cycles(4, &[&[0, 3], &[1, 2]]).unwrap();
        let group = PermGroup::new(4, [a, b]);
        assert_eq!(orbits(&group, &[0, 1, 2, 3]), vec![vec![0, 1, 2, 3]]);
        assert_eq!(group.elements(10).unwrap().len(), 4);
        assert_eq!(group.order(), BigUint::from(4u32));
    }

    #[test]
    fn identity_generators_are_dropped() {
        let group = PermGroup::new(3, [Permutation::identity(3)]);
        assert!(group.is_trivial());
    }

    #[test]
    fn closure_guard() {
        let a = Permutation::from_cycles(6, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap();
        assert!(PermGroup::new(6, [a, b]).elements(100).is_err());
    }
}
