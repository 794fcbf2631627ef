//! Expression DAGs: one sum-rooted tree per equation, sharing variable
//! leaves, constant leaves and identical term nodes across equations.
//! Direction is carried by colours (each operator colour includes its
//! height), so undirected automorphisms of the result respect it.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::aut::PermGroup;
use crate::encode::entry_count_bounds;
use crate::error::Result;
use crate::graph::{dense_colours, ColoredGraph, Origin, VertexInfo, VertexMeta};
use crate::group::{detect, Representation};
use crate::model::{normalize, Problem, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Root { objective: bool },
    Variable(usize),
    Constant(Rational),
    Operator { height: u32, symbol: &'static str },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Term {
    Scaled(Rational, usize),
    Square(usize),
    ScaledSquare(Rational, usize),
    Product(Rational, usize, usize),
}

struct Dag {
    keys: Vec<Key>,
    info: Vec<VertexInfo>,
    edges: Vec<(usize, usize)>,
    constants: HashMap<Rational, usize>,
    terms: HashMap<Term, usize>,
}

const ROOT_LAYER: u32 = 3;

impl Dag {
    fn add(&mut self, key: Key, origin: Origin, layer: u32) -> usize {
        self.keys.push(key);
        self.info.push(VertexInfo {
            origin,
            layer,
            base: true,
        });
        self.keys.len() - 1
    }

    fn constant(&mut self, value: Rational) -> usize {
        if let Some(&v) = self.constants.get(&value) {
            return v;
        }
        let v = self.add(Key::Constant(value), Origin::Coefficient, 0);
        self.constants.insert(value, v);
        v
    }

    fn operator(&mut self, term: Term, height: u32, symbol: &'static str) -> (usize, bool) {
        if let Some(&v) = self.terms.get(&term) {
            return (v, false);
        }
        let v = self.add(Key::Operator { height, symbol }, Origin::Operator, height);
        self.terms.insert(term, v);
        (v, true)
    }

    /// Node for `coef * x_var`; the bare variable when `coef == 1`.
    fn scaled(&mut self, coef: Rational, var: usize) -> usize {
        if coef.is_one() {
            return var;
        }
        let (v, fresh) = self.operator(Term::Scaled(coef, var), 1, "*");
        if fresh {
            let c = self.constant(coef);
            self.edges.push((v, c));
            self.edges.push((v, var));
        }
        v
    }

    fn square(&mut self, coef: Rational, var: usize) -> usize {
        let (pow, fresh) = self.operator(Term::Square(var), 1, "^2");
        if fresh {
            self.edges.push((pow, var));
        }
        if coef.is_one() {
            return pow;
        }
        let (v, fresh) = self.operator(Term::ScaledSquare(coef, var), 2, "*");
        if fresh {
            let c = self.constant(coef);
            self.edges.push((v, c));
            self.edges.push((v, pow));
        }
        v
    }

    fn product(&mut self, coef: Rational, a: usize, b: usize) -> usize {
        let (v, fresh) = self.operator(Term::Product(coef, a, b), 1, "*");
        if fresh {
            if !coef.is_one() {
                let c = self.constant(coef);
                self.edges.push((v, c));
            }
            self.edges.push((v, a));
            self.edges.push((v, b));
        }
        v
    }
}

/// Coloured expression DAG of the normalized problem. Vertex order: equation
/// roots (objective first), variables, then constants and operators in
/// creation order.
pub fn build_dag(problem: &Problem) -> Result<ColoredGraph> {
    let problem = normalize(problem)?;
    let mut dag = Dag {
        keys: Vec::new(),
        info: Vec::new(),
        edges: Vec::new(),
        constants: HashMap::new(),
        terms: HashMap::new(),
    };
    let rows = problem.num_constraints() + 1;
    for k in 0..rows {
        let origin = if k == 0 {
            Origin::Objective
        } else {
            Origin::Constraint(k - 1)
        };
        dag.add(Key::Root { objective: k == 0 }, origin, ROOT_LAYER);
    }
    let classes = problem.class_ids();
    let var0 = dag.keys.len();
    for (i, &c) in classes.iter().enumerate() {
        dag.add(Key::Variable(c), Origin::Variable(i), 0);
    }
    for (k, eq) in problem.equations().enumerate() {
        let mut children = Vec::new();
        for (&i, &c) in eq.lin() {
            children.push(dag.scaled(c, var0 + i));
        }
        for (&(i, j), &c) in eq.quad() {
            let node = if i == j {
                dag.square(c, var0 + i)
            } else {
                dag.product(c, var0 + i, var0 + j)
            };
            children.push(node);
        }
        if !eq.constant().is_zero() {
            children.push(dag.constant(eq.constant()));
        }
        for child in children {
            dag.edges.push((k, child));
        }
    }
    let colours = dense_colours(&dag.keys);
    let mut g = ColoredGraph::with_meta(
        colours,
        VertexMeta {
            vertices: dag.info,
            layers: ROOT_LAYER + 1,
        },
    );
    for (u, v) in dag.edges {
        g.add_edge(u, v);
    }
    Ok(g)
}

/// Size and projected group of one representation.
#[derive(Clone, Debug)]
pub struct RepresentationRow {
    pub representation: Representation,
    pub vertices: usize,
    pub edges: usize,
    /// Projected group restricted to the original variables.
    pub group: PermGroup,
    pub order: BigUint,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub rows: Vec<RepresentationRow>,
    pub num_vars: usize,
    pub num_constraints: usize,
}

impl ComparisonReport {
    /// Whether all representations found the same group on the original variables.
    pub fn groups_agree(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[0].group.same_group(&w[1].group))
    }

    pub fn entry_counts(&self) -> crate::encode::EntryCounts {
        entry_count_bounds(self.num_vars as u64, self.num_constraints as u64)
    }
}

/// Runs BLG-tensor, BLG-flat (relaxing first when needed) and DAG detection.
/// A problem without variables gives an empty report.
pub fn compare_representations(problem: &Problem) -> Result<ComparisonReport> {
    let normalized = normalize(problem)?;
    let n = normalized.num_vars();
    let mut rows = Vec::new();
    if n > 0 {
        for rep in [
            Representation::Blg2,
            Representation::Blg1,
            Representation::Dag,
        ] {
            let found = detect(&normalized, rep)?;
            let group = found.group.restrict(n)?;
            rows.push(RepresentationRow {
                representation: rep,
                vertices: found.graph_vertices,
                edges: found.graph_edges,
                order: group.chain_order(),
                group,
                verified: found.report.all_verified(),
            });
        }
    }
    Ok(ComparisonReport {
        rows,
        num_vars: n,
        num_constraints: normalized.num_constraints(),
    })
}
