//! Ground truth by enumeration: the feasible lattice points of a small
//! integer problem and the permutations that preserve them.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;

use crate::aut::{PermGroup, StabChain};
use crate::error::{Error, Result};
use crate::model::{all_permutations, Problem, Rational};

/// Largest lattice scanned.
pub const LATTICE_LIMIT: u128 = 1_000_000;
/// Largest variable count for the `n!` permutation scan.
pub const PERMUTATION_LIMIT: usize = 8;
/// Largest group expanded element by element for membership tests.
pub const EXPANSION_LIMIT: usize = 40_320;

/// Feasible integer points, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleSet {
    pub points: Vec<Vec<i128>>,
}

impl FeasibleSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, point: &[i128]) -> bool {
        self.points
            .binary_search_by(|p| p.as_slice().cmp(point))
            .is_ok()
    }
}

fn integer_ranges(problem: &Problem) -> Result<Vec<(i128, i128)>> {
    problem
        .variables
        .iter()
        .map(|v| {
            if !v.kind.is_integer() {
                return Err(Error::Continuous(v.name.clone()));
            }
            let (lo, hi) = v.bounds()?;
            Ok((lo.ceil().to_integer(), hi.floor().to_integer()))
        })
        .collect()
}

/// Scans the whole box lattice with exact arithmetic.
pub fn enumerate_feasible(problem: &Problem) -> Result<FeasibleSet> {
    problem.validate()?;
    let ranges = integer_ranges(problem)?;
    let mut size: u128 = 1;
    for &(lo, hi) in &ranges {
        let width = if hi < lo { 0 } else { (hi - lo + 1) as u128 };
        size = size.saturating_mul(width);
    }
    if size > LATTICE_LIMIT {
        return Err(Error::Guard {
            what: "lattice size",
            size,
            limit: LATTICE_LIMIT,
        });
    }
    let mut points = Vec::new();
    if size == 0 {
        return Ok(FeasibleSet { points });
    }
    let mut current: Vec<i128> = ranges.iter().map(|r| r.0).collect();
    loop {
        let x: Vec<Rational> = current.iter().map(|&v| Rational::from_integer(v)).collect();
        if problem.constraints.iter().all(|c| c.is_satisfied(&x)) {
            points.push(current.clone());
        }
        // Odometer with the last coordinate fastest: lexicographic order.
        let mut pos = current.len();
        loop {
            if pos == 0 {
                return Ok(FeasibleSet { points });
            }
            pos -= 1;
            if current[pos] < ranges[pos].1 {
                current[pos] += 1;
                break;
            }
            current[pos] = ranges[pos].0;
        }
    }
}

/// All π with `π(F) = F` and `f_0(π(x)) = f_0(x)` on `F`. Variables of
/// different kinds or bounds may be exchanged.
pub fn symmetry_group_bruteforce(problem: &Problem) -> Result<PermGroup> {
    let n = problem.num_vars();
    if n > PERMUTATION_LIMIT {
        return Err(Error::Guard {
            what: "variable count",
            size: n as u128,
            limit: PERMUTATION_LIMIT as u128,
        });
    }
    let feasible = enumerate_feasible(problem)?;
    let as_point = |p: &[i128]| {
        p.iter()
            .map(|&v| Rational::from_integer(v))
            .collect::<Vec<_>>()
    };
    let values: Vec<Rational> = feasible
        .points
        .iter()
        .map(|p| problem.objective.eval(&as_point(p)))
        .collect();
    let mut chain = StabChain::new(n);
    let mut generators = Vec::new();
    let mut count = 0u64;
    for pi in all_permutations(n) {
        let preserved = feasible.points.iter().zip(&values).all(|(p, value)| {
            let image = pi.permute_point(p);
            feasible.contains(&image) && problem.objective.eval(&as_point(&image)) == *value
        });
        if preserved {
            count += 1;
            if !pi.is_identity() && chain.insert(&pi) {
                generators.push(pi);
            }
        }
    }
    Ok(PermGroup::with_order(n, generators, BigUint::from(count)))
}

/// Whether every generator of `formulation` lies in `symmetry`, by lookup
/// in the fully expanded `symmetry` group.
pub fn check_containment(formulation: &PermGroup, symmetry: &PermGroup) -> Result<bool> {
    if formulation.degree() != symmetry.degree() {
        return Err(Error::DegreeMismatch(
            formulation.degree(),
            symmetry.degree(),
        ));
    }
    let elements: HashSet<_> = symmetry.elements(EXPANSION_LIMIT)?.into_iter().collect();
    Ok(formulation
        .generators()
        .iter()
        .all(|g| elements.contains(g)))
}

/// Points of `F` as a set, for order-insensitive comparison.
pub fn point_set(feasible: &FeasibleSet) -> BTreeSet<Vec<i128>> {
    feasible.points.iter().cloned().collect()
}
