use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::graph::ColoredGraph;

/// An ordered partition of the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl Coloring {
    /// Cells from the graph's colour classes, in ascending colour order.
    pub fn from_graph(graph: &ColoredGraph) -> Self {
        Self::from_cells(graph.colour_classes(), graph.num_vertices())
    }

    pub fn from_cells(cells: Vec<Vec<usize>>, n: usize) -> Self {
        let mut cell_of = vec![usize::MAX; n];
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        debug_assert!(cell_of.iter().all(|&c| c != usize::MAX));
        Coloring { cells, cell_of }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_of(&self, v: usize) -> usize {
        self.cell_of[v]
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.len() == self.cell_of.len()
    }

    /// Vertex at each position of a discrete coloring.
    pub fn labelling(&self) -> Vec<usize> {
        debug_assert!(self.is_discrete());
        self.cells.iter().map(|c| c[0]).collect()
    }

    /// Splits `v` off its cell into a singleton placed just before the rest.
    pub fn individualize(&self, v: usize) -> Coloring {
        let c = self.cell_of[v];
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        for (i, cell) in self.cells.iter().enumerate() {
            if i == c && cell.len() > 1 {
                cells.push(vec![v]);
                cells.push(cell.iter().copied().filter(|&u| u != v).collect());
            } else {
                cells.push(cell.clone());
            }
        }
        Coloring::from_cells(cells, self.cell_of.len())
    }

    /// First largest non-singleton cell, ties to the lowest index.
    pub fn target_cell(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, cell) in self.cells.iter().enumerate() {
            if cell.len() > 1 && best.is_none_or(|b| cell.len() > self.cells[b].len()) {
                best = Some(i);
            }
        }
        best
    }

    /// Label-invariant summary: cell sizes plus the quotient-graph counts.
    pub fn invariant(&self, graph: &ColoredGraph) -> u64 {
        let mut h = DefaultHasher::new();
        for cell in &self.cells {
            cell.len().hash(&mut h);
            signature(graph, self, cell[0]).hash(&mut h);
        }
        h.finish()
    }
}

fn signature(graph: &ColoredGraph, coloring: &Coloring, v: usize) -> Vec<(usize, usize)> {
    let mut cells: Vec<usize> = graph
        .neighbors(v)
        .iter()
        .map(|&u| coloring.cell_of(u))
        .collect();
    cells.sort_unstable();
    let mut out: Vec<(usize, usize)> = Vec::new();
    for c in cells {
        match out.last_mut() {
            Some((last, count)) if *last == c => *count += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}

/// Coarsest equitable refinement. Cells only ever split; each split cell is
/// replaced in place by its parts ordered by neighbour-count signature.
pub fn refine(graph: &ColoredGraph, coloring: &Coloring) -> Coloring {
    let mut current = coloring.clone();
    loop {
        let mut cells = Vec::with_capacity(current.num_cells());
        for cell in current.cells() {
            if cell.len() == 1 {
                cells.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<(usize, usize)>, usize)> = cell
                .iter()
                .map(|&v| (signature(graph, &current, v), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for end in 1..=keyed.len() {
                if end == keyed.len() || keyed[end].0 != keyed[start].0 {
                    cells.push(keyed[start..end].iter().map(|(_, v)| *v).collect());
                    start = end;
                }
            }
        }
        let next = Coloring::from_cells(cells, current.cell_of.len());
        if next.num_cells() == current.num_cells() {
            return next;
        }
        current = next;
    }
}

/// Whether every cell is uniform in its neighbour counts into every cell.
pub fn is_equitable(graph: &ColoredGraph, coloring: &Coloring) -> bool {
    coloring.cells().iter().all(|cell| {
        let first = signature(graph, coloring, cell[0]);
        cell.iter().all(|&v| signature(graph, coloring, v) == first)
    })
}
