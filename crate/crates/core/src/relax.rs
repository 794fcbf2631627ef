//! McCormick / RLT linearization: every selected monomial `x_i x_j` becomes
//! an auxiliary variable `X_ij` bounded by the four envelope inequalities.

use std::ops::Range;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{normalize, Constraint, Problem, QuadForm, Rational, VarKind, Variable};

/// A linearization variable standing for `x_i x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxVar {
    pub index: usize,
    pub origin: (usize, usize),
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedProblem {
    pub problem: Problem,
    pub aux: Vec<AuxVar>,
    /// Constraint indices of the emitted envelope rows.
    pub rlt_range: Range<usize>,
}

/// Distinct monomials in order of first appearance (objective, then
/// constraints, each in key order).
pub fn monomials(problem: &Problem) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for eq in problem.equations() {
        for &key in eq.quad().keys() {
            if !out.contains(&key) {
                out.push(key);
            }
        }
    }
    out
}

/// Linearizes every monomial of the problem.
pub fn mccormick_relax(problem: &Problem) -> Result<LinearizedProblem> {
    let problem = normalize(problem)?;
    let all = monomials(&problem);
    linearize(&problem, &all)
}

/// Linearizes only the listed monomials; the rest stay quadratic.
pub fn relax_subset(problem: &Problem, selected: &[(usize, usize)]) -> Result<LinearizedProblem> {
    let problem = normalize(problem)?;
    let present = monomials(&problem);
    let names = problem.names();
    let mut chosen = Vec::new();
    for &(a, b) in selected {
        let key = (a.min(b), a.max(b));
        if !present.contains(&key) {
            let show = |i: usize| names.get(i).copied().unwrap_or("?").to_string();
            return Err(Error::MonomialNotPresent(format!(
                "{}*{}",
                show(key.0),
                show(key.1)
            )));
        }
        if !chosen.contains(&key) {
            chosen.push(key);
        }
    }
    // Envelope rows follow first-appearance order regardless of request order.
    let ordered: Vec<(usize, usize)> = present.into_iter().filter(|k| chosen.contains(k)).collect();
    linearize(&problem, &ordered)
}

/// The four envelope rows `row <= 0` for `X = x_i x_j`, in the order
/// under-L, under-U, over-mixed-1, over-mixed-2. `i == j` for squares.
pub fn envelope_rows(
    i: usize,
    j: usize,
    x: usize,
    (li, ui): (Rational, Rational),
    (lj, uj): (Rational, Rational),
) -> [QuadForm; 4] {
    let row = |ci: Rational, cj: Rational, cx: Rational, c: Rational| {
        let mut q = QuadForm::constant_only(c);
        q.add_lin(i, ci);
        q.add_lin(j, cj);
        q.add_lin(x, cx);
        q
    };
    let one = Rational::one();
    [
        row(lj, li, -one, -(li * lj)),
        row(uj, ui, -one, -(ui * uj)),
        row(-uj, -li, one, li * uj),
        row(-lj, -ui, one, ui * lj),
    ]
}

/// Range of `x_i x_j` over the box.
pub fn product_bounds(
    (li, ui): (Rational, Rational),
    (lj, uj): (Rational, Rational),
    square: bool,
) -> (Rational, Rational) {
    if square {
        let (a, b) = (li * li, ui * ui);
        let lo = if li <= Rational::zero() && ui >= Rational::zero() {
            Rational::zero()
        } else {
            a.min(b)
        };
        return (lo, a.max(b));
    }
    let corners = [li * lj, li * uj, ui * lj, ui * uj];
    let lo = corners.iter().copied().min().expect("four corners");
    let hi = corners.iter().copied().max().expect("four corners");
    (lo, hi)
}

fn aux_name(problem: &Problem, (i, j): (usize, usize), taken: &[String]) -> String {
    let free = |s: &String| problem.var_index(s).is_none() && !taken.contains(s);
    let (a, b) = (i + 1, j + 1);
    let mut candidates = Vec::new();
    if a < 10 && b < 10 {
        candidates.push(format!("X{a}{b}"));
    }
    candidates.push(format!("X{a}_{b}"));
    if let Some(name) = candidates.into_iter().find(free) {
        return name;
    }
    (1..)
        .map(|k| format!("X{a}_{b}_{k}"))
        .find(free)
        .expect("unbounded suffix search")
}

fn linearize(problem: &Problem, selected: &[(usize, usize)]) -> Result<LinearizedProblem> {
    let n = problem.num_vars();
    let mut columns: Vec<(usize, usize)> = selected.to_vec();
    columns.sort_unstable();

    let mut out = problem.clone();
    let mut aux = Vec::with_capacity(columns.len());
    let mut taken = Vec::new();
    for (offset, &origin) in columns.iter().enumerate() {
        let bi = problem.variables[origin.0].bounds()?;
        let bj = problem.variables[origin.1].bounds()?;
        let (lo, hi) = product_bounds(bi, bj, origin.0 == origin.1);
        let name = aux_name(problem, origin, &taken);
        taken.push(name.clone());
        out.variables.push(Variable {
            aux: Some(origin),
            kind: VarKind::Continuous,
            ..Variable::continuous(name.clone(), lo, hi)
        });
        aux.push(AuxVar {
            index: n + offset,
            origin,
            name,
        });
    }
    let column_of = |key: (usize, usize)| n + columns.binary_search(&key).expect("selected");

    let substitute = |q: &mut QuadForm| {
        for &key in selected {
            if let Some(c) = q.remove_quad(key.0, key.1) {
                q.add_lin(column_of(key), c);
            }
        }
    };
    substitute(&mut out.objective);
    for c in &mut out.constraints {
        substitute(&mut c.body);
    }

    let start = out.constraints.len();
    let mut labels: Vec<String> = out.constraints.iter().map(|c| c.label.clone()).collect();
    for &key in selected {
        let x = column_of(key);
        let bi = problem.variables[key.0].bounds()?;
        let bj = problem.variables[key.1].bounds()?;
        for row in envelope_rows(key.0, key.1, x, bi, bj) {
            if out.constraints.iter().any(|c| c.body == row) {
                continue;
            }
            if row.lin().len() == 1 && row.lin().contains_key(&x) {
                absorb_bound(&mut out.variables[x], &row, x);
                continue;
            }
            if row.lin().is_empty() {
                continue;
            }
            let label = row_label(out.constraints.len() + 1, &labels);
            labels.push(label.clone());
            out.constraints.push(Constraint::le_zero(label, row));
        }
    }
    let end = out.constraints.len();
    Ok(LinearizedProblem {
        problem: out,
        aux,
        rlt_range: start..end,
    })
}

/// `a X + c <= 0` tightens one side of `X`'s bounds.
fn absorb_bound(var: &mut Variable, row: &QuadForm, x: usize) {
    let a = row.lin()[&x];
    let limit = -row.constant() / a;
    if a > Rational::zero() {
        var.upper = Some(var.upper.map_or(limit, |u| u.min(limit)));
    } else {
        var.lower = Some(var.lower.map_or(limit, |l| l.max(limit)));
    }
}

/// `c{number}` continuing the 1-based constraint numbering.
fn row_label(index: usize, taken: &[String]) -> String {
    let plain = format!("c{index}");
    if !taken.contains(&plain) {
        return plain;
    }
    let prefixed = format!("rlt_c{index}");
    if !taken.contains(&prefixed) {
        return prefixed;
    }
    (1..)
        .map(|k| format!("rlt_c{index}_{k}"))
        .find(|s| !taken.contains(s))
        .expect("unbounded suffix search")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::int;

    fn unit() -> (Rational, Rational) {
        (int(0), int(1))
    }

    #[test]
    fn bilinear_unit_box_envelopes() {
        let rows = envelope_rows(0, 1, 2, unit(), unit());
        let half = Rational::new(1, 2);
        // At (1/2, 1/2) the rows pin X into [0, 1/2].
        let at = |x: Rational| {
            rows.iter()
                .all(|r| r.eval(&[half, half, x]) <= Rational::zero())
        };
        assert!(at(int(0)));
        assert!(at(half));
        assert!(!at(Rational::new(3, 4)));
        assert!(!at(Rational::new(-1, 4)));
    }

    #[test]
    fn square_rows_coincide() {
        let rows = envelope_rows(0, 0, 1, unit(), unit());
        assert_eq!(rows[2], rows[3]);
    }

    #[test]
    fn product_bounds_of_mixed_signs() {
        assert_eq!(
            product_bounds((int(-1), int(2)), (int(-3), int(1)), false),
            (int(-6), int(3))
        );
        assert_eq!(
            product_bounds((int(-1), int(2)), (int(-1), int(2)), true),
            (int(0), int(4))
        );
        assert_eq!(
            product_bounds((int(1), int(2)), (int(1), int(2)), true),
            (int(1), int(4))
        );
    }

    #[test]
    fn linear_problem_is_unchanged() {
        let mut p = Problem::new(
            crate::model::ObjSense::Min,
            vec![Variable::continuous("x1", int(0), int(1))],
        );
        p.objective.add_lin(0, int(1));
        let lin = mccormick_relax(&p).unwrap();
        assert!(lin.aux.is_empty());
        assert_eq!(lin.problem, p);
        assert!(lin.rlt_range.is_empty());
    }
}
