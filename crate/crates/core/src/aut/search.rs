//! Individualization-refinement search for the automorphism group.
//!
//! The first path of the search tree is walked to a discrete leaf. Then,
//! from the deepest first-path node upwards, every other vertex of the
//! node's target cell is tried: a subtree whose leaf maps the first leaf to
//! an automorphism yields a generator, and vertices already in the orbit of
//! the first-path vertex (under generators fixing the path prefix) are
//! skipped. The product of those orbit sizes is the group order.

use num_bigint::BigUint;
use num_traits::One;

use super::refine::{refine, Coloring};
use super::PermGroup;
use crate::graph::ColoredGraph;
use crate::model::Permutation;

pub fn automorphism_group(graph: &ColoredGraph) -> PermGroup {
    let n = graph.num_vertices();
    if n == 0 {
        return PermGroup::trivial(0);
    }
    let mut search = Search {
        graph,
        first_leaf: Vec::new(),
        path_invariants: Vec::new(),
        generators: Vec::new(),
        order: BigUint::one(),
    };
    let root = refine(graph, &Coloring::from_graph(graph));
    search.first_path(root);
    PermGroup::with_order(n, search.generators, search.order)
}

struct Search<'g> {
    graph: &'g ColoredGraph,
    first_leaf: Vec<usize>,
    path_invariants: Vec<u64>,
    generators: Vec<Permutation>,
    order: BigUint,
}

impl Search<'_> {
    fn first_path(&mut self, node: Coloring) {
        let depth = self.path_invariants.len();
        self.path_invariants.push(node.invariant(self.graph));
        let Some(target) = node.target_cell() else {
            self.first_leaf = node.labelling();
            return;
        };
        let cell = node.cells()[target].clone();
        let fixed = cell[0];
        self.first_path(refine(self.graph, &node.individualize(fixed)));

        let mut orbits = UnionFind::new(self.graph.num_vertices());
        for g in &self.generators {
            orbits.absorb(g);
        }
        let mut failed: Vec<usize> = Vec::new();
        for &v in &cell[1..] {
            if orbits.same(fixed, v) || failed.iter().any(|&f| orbits.same(f, v)) {
                continue;
            }
            let child = refine(self.graph, &node.individualize(v));
            match self.find_equivalent(child, depth + 1) {
                Some(gamma) => {
                    orbits.absorb(&gamma);
                    self.generators.push(gamma);
                }
                None => failed.push(v),
            }
        }
        let orbit_size = cell.iter().filter(|&&v| orbits.same(fixed, v)).count();
        self.order *= BigUint::from(orbit_size);
    }

    fn find_equivalent(&self, node: Coloring, depth: usize) -> Option<Permutation> {
        if self.path_invariants.get(depth) != Some(&node.invariant(self.graph)) {
            return None;
        }
        let Some(target) = node.target_cell() else {
            let leaf = node.labelling();
            let mut image = vec![0; leaf.len()];
            for (pos, &v) in self.first_leaf.iter().enumerate() {
                image[v] = leaf[pos];
            }
            let gamma = Permutation::from_images(image).ok()?;
            return self.graph.is_automorphism(&gamma).then_some(gamma);
        };
        node.cells()[target].iter().find_map(|&v| {
            self.find_equivalent(refine(self.graph, &node.individualize(v)), depth + 1)
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    fn absorb(&mut self, g: &Permutation) {
        for v in 0..g.degree() {
            let (a, b) = (self.find(v), self.find(g.apply(v)));
            if a != b {
                self.parent[a.max(b)] = a.min(b);
            }
        }
    }
}
