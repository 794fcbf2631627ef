//! Vertex-coloured undirected graphs with loops, shared by every graph
//! construction and by the automorphism engine.

use std::collections::BTreeSet;

use crate::model::Permutation;

/// What a vertex stands for in the source problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    Objective,
    /// Constraint index, 0-based.
    Constraint(usize),
    Constant,
    /// Variable index in the problem the graph was built from.
    Variable(usize),
    /// Operator node of an expression graph.
    Operator,
    /// Numerical constant leaf of an expression graph.
    Coefficient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexInfo {
    pub origin: Origin,
    pub layer: u32,
    /// Exactly one base vertex per origin; copies hang off it.
    pub base: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexMeta {
    pub vertices: Vec<VertexInfo>,
    pub layers: u32,
}

impl VertexMeta {
    /// Base vertex of each variable, indexed by variable.
    pub fn variable_vertices(&self) -> Vec<usize> {
        let mut found: Vec<(usize, usize)> = self
            .vertices
            .iter()
            .enumerate()
            .filter_map(|(v, info)| match info.origin {
                Origin::Variable(i) if info.base => Some((i, v)),
                _ => None,
            })
            .collect();
        found.sort();
        found.into_iter().map(|(_, v)| v).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    colours: Vec<u32>,
    adj: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
    meta: VertexMeta,
}

impl ColoredGraph {
    pub fn new(colours: Vec<u32>) -> Self {
        let n = colours.len();
        ColoredGraph {
            colours,
            adj: vec![Vec::new(); n],
            edges: BTreeSet::new(),
            meta: VertexMeta::default(),
        }
    }

    pub fn with_meta(colours: Vec<u32>, meta: VertexMeta) -> Self {
        debug_assert_eq!(colours.len(), meta.vertices.len());
        ColoredGraph {
            meta,
            ..ColoredGraph::new(colours)
        }
    }

    /// Adds the undirected edge `{u, v}`; `u == v` is a loop. Duplicates are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        let key = (u.min(v), u.max(v));
        if self.edges.insert(key) {
            insert_sorted(&mut self.adj[u], v);
            if u != v {
                insert_sorted(&mut self.adj[v], u);
            }
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.colours.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn colour(&self, v: usize) -> u32 {
        self.colours[v]
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    /// Sorted neighbours; a looped vertex lists itself.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn meta(&self) -> &VertexMeta {
        &self.meta
    }

    /// Colour classes in ascending colour order, vertices ascending.
    pub fn colour_classes(&self) -> Vec<Vec<usize>> {
        let mut ids: Vec<u32> = self.colours.clone();
        ids.sort_unstable();
        ids.dedup();
        let mut classes = vec![Vec::new(); ids.len()];
        for (v, c) in self.colours.iter().enumerate() {
            classes[ids.binary_search(c).unwrap()].push(v);
        }
        classes
    }

    /// Colour-preserving and edge-preserving.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.num_vertices()
            && (0..self.num_vertices()).all(|v| self.colours[v] == self.colours[p.apply(v)])
            && self
                .edges
                .iter()
                .all(|&(u, v)| self.has_edge(p.apply(u), p.apply(v)))
    }
}

/// Dense colour ids from arbitrary ordered keys, numbered in key order.
pub fn dense_colours<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut distinct = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).expect("key present") as u32)
        .collect()
}

fn insert_sorted(list: &mut Vec<usize>, v: usize) {
    if let Err(pos) = list.binary_search(&v) {
        list.insert(pos, v);
    }
}
