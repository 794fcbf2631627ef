//! From graph automorphisms back to variable permutations, and exact
//! verification of the result against the problem.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::aut::{automorphism_group, orbits, PermGroup, StabChain};
use crate::blg::{build_blg_flat, build_blg_tensor};
use crate::dag::build_dag;
use crate::encode::{flat_encode, tensor_encode};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Origin, VertexMeta};
use crate::model::{
    all_permutations, match_constraints, normalize, Mismatch, Permutation, Problem,
};
use crate::relax::mccormick_relax;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Representation {
    /// Graph 1 over the flat encoding of the linearized problem.
    Blg1,
    /// Graph 2 over the tensor encoding.
    Blg2,
    Dag,
}

impl Representation {
    pub fn name(self) -> &'static str {
        match self {
            Representation::Blg1 => "blg1",
            Representation::Blg2 => "blg2",
            Representation::Dag => "dag",
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The problem a representation actually encodes, and its graph. Graph 1
/// needs a linear problem, so nonlinear input is relaxed first.
pub fn build_graph(problem: &Problem, rep: Representation) -> Result<(Problem, ColoredGraph)> {
    let problem = normalize(problem)?;
    match rep {
        Representation::Blg1 => {
            let target = if problem.is_linear() {
                problem
            } else {
                mccormick_relax(&problem)?.problem
            };
            let graph = build_blg_flat(&flat_encode(&target)?)?;
            Ok((target, graph))
        }
        Representation::Blg2 => {
            let graph = build_blg_tensor(&tensor_encode(&problem)?)?;
            Ok((problem, graph))
        }
        Representation::Dag => {
            let graph = build_dag(&problem)?;
            Ok((problem, graph))
        }
    }
}

/// Restricts every generator to the base variable vertices.
pub fn project_to_variables(group: &PermGroup, meta: &VertexMeta) -> Result<PermGroup> {
    let vars = meta.variable_vertices();
    let mut projected = Vec::with_capacity(group.generators().len());
    for g in group.generators() {
        let mut image = Vec::with_capacity(vars.len());
        for (i, &v) in vars.iter().enumerate() {
            let w = g.apply(v);
            match meta.vertices.get(w) {
                Some(info) if info.base => match info.origin {
                    Origin::Variable(j) => image.push(j),
                    _ => {
                        return Err(Error::Invariant(format!(
                            "automorphism maps variable {i} to a non-variable vertex"
                        )))
                    }
                },
                _ => {
                    return Err(Error::Invariant(format!(
                        "automorphism maps variable {i} off the base layer"
                    )))
                }
            }
        }
        projected.push(Permutation::from_images(image)?);
    }
    Ok(PermGroup::new(vars.len(), projected))
}

/// Outcome for one generator: the constraint permutation σ, or why none exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCheck {
    pub generator: Permutation,
    pub outcome: std::result::Result<Permutation, Mismatch>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<GeneratorCheck>,
}

impl VerificationReport {
    pub fn all_verified(&self) -> bool {
        self.checks.iter().all(|c| c.outcome.is_ok())
    }
}

/// Checks each generator exactly against the (normalized) problem.
pub fn verify_formulation_group(problem: &Problem, group: &PermGroup) -> VerificationReport {
    let checks = group
        .generators()
        .iter()
        .map(|g| GeneratorCheck {
            generator: g.clone(),
            outcome: match_constraints(problem, g),
        })
        .collect();
    VerificationReport { checks }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Timings {
    pub build: Duration,
    pub search: Duration,
    pub verify: Duration,
}

/// Everything one detection run produces.
#[derive(Clone, Debug)]
pub struct Detection {
    pub representation: Representation,
    /// The normalized problem the graph encodes (relaxed for Graph 1).
    pub problem: Problem,
    pub graph_vertices: usize,
    pub graph_edges: usize,
    pub graph_layers: u32,
    pub graph_group_order: BigUint,
    /// Projected group on the variables of `problem`.
    pub group: PermGroup,
    pub report: VerificationReport,
    pub timings: Timings,
}

impl Detection {
    /// Variable orbits, including singletons.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.group.degree()).collect();
        orbits(&self.group, &all)
    }

    pub fn order(&self) -> BigUint {
        self.group.chain_order()
    }
}

/// Graph construction, automorphism search, projection and verification.
pub fn detect(problem: &Problem, rep: Representation) -> Result<Detection> {
    let start = Instant::now();
    let (target, graph) = build_graph(problem, rep)?;
    let build = start.elapsed();
    let start = Instant::now();
    let aut = automorphism_group(&graph);
    for g in aut.generators() {
        if !graph.is_automorphism(g) {
            return Err(Error::Invariant(format!(
                "search produced a non-automorphism {g}"
            )));
        }
    }
    let group = project_to_variables(&aut, graph.meta())?;
    let search = start.elapsed();
    let start = Instant::now();
    let report = verify_formulation_group(&target, &group);
    let verify = start.elapsed();
    Ok(Detection {
        representation: rep,
        graph_vertices: graph.num_vertices(),
        graph_edges: graph.num_edges(),
        graph_layers: graph.meta().layers,
        graph_group_order: aut.order(),
        problem: target,
        group,
        report,
        timings: Timings {
            build,
            search,
            verify,
        },
    })
}

/// Largest variable count for exhaustive formulation-group search.
pub const FORMULATION_BRUTE_FORCE_LIMIT: usize = 8;

/// Every π admitting a constraint permutation, by trying all of `S_n`.
pub fn formulation_group_bruteforce(problem: &Problem) -> Result<PermGroup> {
    let problem = normalize(problem)?;
    let n = problem.num_vars();
    if n > FORMULATION_BRUTE_FORCE_LIMIT {
        return Err(Error::Guard {
            what: "variable count",
            size: n as u128,
            limit: FORMULATION_BRUTE_FORCE_LIMIT as u128,
        });
    }
    let mut chain = StabChain::new(n);
    let mut generators = Vec::new();
    let mut count = 0u64;
    for pi in all_permutations(n) {
        if match_constraints(&problem, &pi).is_ok() {
            count += 1;
            if !pi.is_identity() && chain.insert(&pi) {
                generators.push(pi);
            }
        }
    }
    Ok(PermGroup::with_order(n, generators, BigUint::from(count)))
}
