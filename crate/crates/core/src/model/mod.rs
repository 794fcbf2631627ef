//! In-memory QCQP problems, normalization and direct symmetry checks.

mod number;
mod perm;

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{One, Zero};

pub use number::{format_number, int, parse_number, Rational};
pub use perm::{all_permutations, Permutation};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    Continuous,
    Integer,
    Binary,
}

impl VarKind {
    pub fn is_integer(self) -> bool {
        !matches!(self, VarKind::Continuous)
    }
}

/// A decision variable. `None` bounds are infinite and rejected by [`normalize`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
    pub kind: VarKind,
    /// Origin monomial `(i, j)`, `i <= j`, when this is a linearization variable.
    pub aux: Option<(usize, usize)>,
}

impl Variable {
    pub fn continuous(name: impl Into<String>, lower: Rational, upper: Rational) -> Self {
        Variable {
            name: name.into(),
            lower: Some(lower),
            upper: Some(upper),
            kind: VarKind::Continuous,
            aux: None,
        }
    }

    pub fn integer(name: impl Into<String>, lower: Rational, upper: Rational) -> Self {
        Variable {
            kind: VarKind::Integer,
            ..Variable::continuous(name, lower, upper)
        }
    }

    pub fn binary(name: impl Into<String>) -> Self {
        Variable {
            kind: VarKind::Binary,
            ..Variable::continuous(name, Rational::zero(), Rational::one())
        }
    }

    pub fn bounds(&self) -> Result<(Rational, Rational)> {
        match (self.lower, self.upper) {
            (Some(lo), Some(hi)) => Ok((lo, hi)),
            _ => Err(Error::Unbounded(self.name.clone())),
        }
    }

    fn base_class(&self) -> BaseClass {
        BaseClass {
            integer: self.kind.is_integer(),
            lower: self.lower,
            upper: self.upper,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseClass {
    pub integer: bool,
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

/// Interchangeability class of a variable: two variables may be swapped by
/// a formulation symmetry only if their keys are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    pub base: BaseClass,
    /// For linearization variables: square flag and sorted origin classes.
    pub aux: Option<(bool, BaseClass, BaseClass)>,
}

/// `Σ quad[(i,j)] x_i x_j + Σ lin[i] x_i + constant`, indices 0-based, `i <= j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    quad: BTreeMap<(usize, usize), Rational>,
    lin: BTreeMap<usize, Rational>,
    constant: Rational,
}

impl QuadForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant_only(c: Rational) -> Self {
        QuadForm {
            constant: c,
            ..Self::default()
        }
    }

    pub fn add_quad(&mut self, i: usize, j: usize, coef: Rational) {
        let key = if i <= j { (i, j) } else { (j, i) };
        let entry = self.quad.entry(key).or_insert_with(Rational::zero);
        *entry += coef;
        if entry.is_zero() {
            self.quad.remove(&key);
        }
    }

    pub fn add_lin(&mut self, i: usize, coef: Rational) {
        let entry = self.lin.entry(i).or_insert_with(Rational::zero);
        *entry += coef;
        if entry.is_zero() {
            self.lin.remove(&i);
        }
    }

    pub fn add_constant(&mut self, c: Rational) {
        self.constant += c;
    }

    /// Removes the monomial `x_i x_j`, returning its coefficient.
    pub fn remove_quad(&mut self, i: usize, j: usize) -> Option<Rational> {
        self.quad.remove(&if i <= j { (i, j) } else { (j, i) })
    }

    pub fn quad(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.quad
    }

    pub fn lin(&self) -> &BTreeMap<usize, Rational> {
        &self.lin
    }

    pub fn constant(&self) -> Rational {
        self.constant
    }

    pub fn is_linear(&self) -> bool {
        self.quad.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.quad.is_empty() && self.lin.is_empty() && self.constant.is_zero()
    }

    /// Largest variable index referenced, if any.
    pub fn max_index(&self) -> Option<usize> {
        let q = self.quad.keys().map(|&(_, j)| j).max();
        let l = self.lin.keys().copied().max();
        q.max(l)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut acc = self.constant;
        for (&i, c) in &self.lin {
            acc += c * x[i];
        }
        for (&(i, j), c) in &self.quad {
            acc += c * x[i] * x[j];
        }
        acc
    }

    pub fn scaled(&self, factor: Rational) -> QuadForm {
        let mut out = QuadForm::constant_only(self.constant * factor);
        for (&(i, j), c) in &self.quad {
            out.add_quad(i, j, c * factor);
        }
        for (&i, c) in &self.lin {
            out.add_lin(i, c * factor);
        }
        out
    }

    /// Substitutes `x_i -> x_{π(i)}`.
    pub fn permuted(&self, pi: &Permutation) -> QuadForm {
        let mut out = QuadForm::constant_only(self.constant);
        for (&(i, j), c) in &self.quad {
            out.add_quad(pi.apply(i), pi.apply(j), *c);
        }
        for (&i, c) in &self.lin {
            out.add_lin(pi.apply(i), *c);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObjSense {
    Min,
    Max,
}

/// `body sense rhs`; normalized constraints are `body <= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub label: String,
    pub body: QuadForm,
    pub sense: Sense,
    pub rhs: Rational,
}

impl Constraint {
    pub fn le_zero(label: impl Into<String>, body: QuadForm) -> Self {
        Constraint {
            label: label.into(),
            body,
            sense: Sense::Le,
            rhs: Rational::zero(),
        }
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let lhs = self.body.eval(x);
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Problem {
    pub sense: ObjSense,
    pub objective: QuadForm,
    pub constraints: Vec<Constraint>,
    pub variables: Vec<Variable>,
}

impl Problem {
    pub fn new(sense: ObjSense, variables: Vec<Variable>) -> Self {
        Problem {
            sense,
            objective: QuadForm::new(),
            constraints: Vec::new(),
            variables,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn names(&self) -> Vec<&str> {
        self.variables.iter().map(|v| v.name.as_str()).collect()
    }

    pub fn constraint_labels(&self) -> Vec<&str> {
        self.constraints.iter().map(|c| c.label.as_str()).collect()
    }

    /// Index of the variable with the given name.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    /// Objective followed by constraint bodies.
    pub fn equations(&self) -> impl Iterator<Item = &QuadForm> {
        std::iter::once(&self.objective).chain(self.constraints.iter().map(|c| &c.body))
    }

    pub fn is_linear(&self) -> bool {
        self.equations().all(QuadForm::is_linear)
    }

    pub fn is_normalized(&self) -> bool {
        self.constraints
            .iter()
            .all(|c| c.sense == Sense::Le && c.rhs.is_zero())
    }

    pub fn class_key(&self, i: usize) -> ClassKey {
        let v = &self.variables[i];
        let aux = v.aux.map(|(a, b)| {
            let (ca, cb) = (
                self.variables[a].base_class(),
                self.variables[b].base_class(),
            );
            let (lo, hi) = if ca <= cb { (ca, cb) } else { (cb, ca) };
            (a == b, lo, hi)
        });
        ClassKey {
            base: v.base_class(),
            aux,
        }
    }

    /// Dense class ids, numbered by sorted [`ClassKey`].
    pub fn class_ids(&self) -> Vec<usize> {
        let keys: Vec<ClassKey> = (0..self.num_vars()).map(|i| self.class_key(i)).collect();
        let mut distinct = keys.clone();
        distinct.sort();
        distinct.dedup();
        keys.iter()
            .map(|k| distinct.binary_search(k).expect("key present"))
            .collect()
    }

    /// Checks index ranges and bound ordering.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        for v in &self.variables {
            if let (Some(lo), Some(hi)) = (v.lower, v.upper) {
                if lo > hi {
                    return Err(Error::Invariant(format!(
                        "variable `{}` has lower bound above upper bound",
                        v.name
                    )));
                }
            }
            if let Some((a, b)) = v.aux {
                if a > b || b >= n {
                    return Err(Error::Invariant(format!(
                        "variable `{}` has an invalid origin monomial",
                        v.name
                    )));
                }
            }
        }
        for eq in self.equations() {
            if let Some(max) = eq.max_index() {
                if max >= n {
                    return Err(Error::Invariant(format!(
                        "variable index {max} out of range for {n} variables"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Brings every constraint to `f_k(x) <= 0`: right-hand sides are folded
/// into the constant, `>=` rows negated and equalities split in two.
pub fn normalize(problem: &Problem) -> Result<Problem> {
    problem.validate()?;
    for v in &problem.variables {
        v.bounds()?;
    }
    let mut constraints = Vec::with_capacity(problem.constraints.len());
    for c in &problem.constraints {
        let mut shifted = c.body.clone();
        shifted.add_constant(-c.rhs);
        match c.sense {
            Sense::Le => constraints.push(Constraint::le_zero(c.label.clone(), shifted)),
            Sense::Ge => constraints.push(Constraint::le_zero(
                c.label.clone(),
                shifted.scaled(-Rational::one()),
            )),
            Sense::Eq => {
                let negated = shifted.scaled(-Rational::one());
                constraints.push(Constraint::le_zero(format!("{}_le", c.label), shifted));
                constraints.push(Constraint::le_zero(format!("{}_ge", c.label), negated));
            }
        }
    }
    Ok(Problem {
        sense: problem.sense,
        objective: problem.objective.clone(),
        constraints,
        variables: problem.variables.clone(),
    })
}

/// Replaces every occurrence of variable `i` by `π(i)`. Constraint order,
/// labels and the variable list are unchanged.
pub fn apply_variable_permutation(problem: &Problem, pi: &Permutation) -> Result<Problem> {
    if pi.degree() != problem.num_vars() {
        return Err(Error::SizeMismatch {
            expected: problem.num_vars(),
            found: pi.degree(),
        });
    }
    Ok(Problem {
        sense: problem.sense,
        objective: problem.objective.permuted(pi),
        constraints: problem
            .constraints
            .iter()
            .map(|c| Constraint {
                body: c.body.permuted(pi),
                ..c.clone()
            })
            .collect(),
        variables: problem.variables.clone(),
    })
}

/// Why a variable permutation is not a formulation symmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    Degree {
        expected: usize,
        found: usize,
    },
    /// Variable `i` is sent to a variable of a different class.
    Class(usize),
    Objective,
    /// The image of constraint `k` matches no remaining constraint.
    Constraint(usize),
}

/// Finds σ with `σ f_k(π(x)) = f_k(x)` for all constraints, matching
/// permuted bodies against the originals by exact equality.
pub fn match_constraints(problem: &Problem, pi: &Permutation) -> Result<Permutation, Mismatch> {
    let n = problem.num_vars();
    if pi.degree() != n {
        return Err(Mismatch::Degree {
            expected: n,
            found: pi.degree(),
        });
    }
    let classes = problem.class_ids();
    if let Some(i) = (0..n).find(|&i| classes[i] != classes[pi.apply(i)]) {
        return Err(Mismatch::Class(i));
    }
    if problem.objective.permuted(pi) != problem.objective {
        return Err(Mismatch::Objective);
    }
    let mut buckets: HashMap<(QuadForm, Sense, Rational), VecDeque<usize>> = HashMap::new();
    for (k, c) in problem.constraints.iter().enumerate() {
        buckets
            .entry((c.body.clone(), c.sense, c.rhs))
            .or_default()
            .push_back(k);
    }
    let mut sigma = Vec::with_capacity(problem.num_constraints());
    for (k, c) in problem.constraints.iter().enumerate() {
        let image = c.body.permuted(pi);
        let target = buckets
            .get_mut(&(image, c.sense, c.rhs))
            .and_then(VecDeque::pop_front)
            .ok_or(Mismatch::Constraint(k))?;
        sigma.push(target);
    }
    Ok(Permutation::from_images(sigma).expect("bucket matching is a bijection"))
}

/// The constraint permutation witnessing that π is a formulation symmetry.
pub fn find_constraint_permutation(problem: &Problem, pi: &Permutation) -> Option<Permutation> {
    match_constraints(problem, pi).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        int(n)
    }

    fn qp1() -> Problem {
        let vars = (1..=4)
            .map(|i| Variable::continuous(format!("x{i}"), r(0), r(1)))
            .collect();
        let mut p = Problem::new(ObjSense::Max, vars);
        p.objective.add_lin(0, r(3));
        p.objective.add_lin(3, r(3));
        p.objective.add_quad(1, 2, r(2));
        let mut c1 = QuadForm::constant_only(r(1));
        c1.add_lin(1, r(1));
        c1.add_quad(0, 0, r(1));
        let mut c2 = QuadForm::constant_only(r(1));
        c2.add_lin(2, r(1));
        c2.add_quad(3, 3, r(1));
        let mut c3 = QuadForm::constant_only(r(1));
        c3.add_lin(1, r(1));
        c3.add_lin(2, r(1));
        p.constraints = vec![
            Constraint::le_zero("c1", c1),
            Constraint::le_zero("c2", c2),
            Constraint::le_zero("c3", c3),
        ];
        p
    }

    #[test]
    fn quad_keys_are_symmetrized() {
        let mut q = QuadForm::new();
        q.add_quad(2, 1, r(3));
        q.add_quad(1, 2, r(-3));
        assert!(q.is_zero());
        q.add_quad(3, 0, r(1));
        assert_eq!(q.quad().keys().copied().collect::<Vec<_>>(), vec![(0, 3)]);
    }

    #[test]
    fn ge_rows_are_negated() {
        // x1 >= 2 x3 - 1 written as x1 - 2 x3 >= -1
        let vars = (1..=3).map(|i| Variable::binary(format!("x{i}"))).collect();
        let mut p = Problem::new(ObjSense::Min, vars);
        let mut body = QuadForm::new();
        body.add_lin(0, r(1));
        body.add_lin(2, r(-2));
        p.constraints.push(Constraint {
            label: "c".into(),
            body,
            sense: Sense::Ge,
            rhs: r(-1),
        });
        let n = normalize(&p).unwrap();
        let c = &n.constraints[0].body;
        assert_eq!(c.lin().get(&0), Some(&r(-1)));
        assert_eq!(c.lin().get(&2), Some(&r(2)));
        assert_eq!(c.constant(), r(-1));
        assert_eq!(normalize(&n).unwrap(), n);
    }

    #[test]
    fn equalities_split() {
        let mut p = Problem::new(ObjSense::Min, vec![Variable::binary("x")]);
        let mut body = QuadForm::new();
        body.add_lin(0, r(1));
        p.constraints.push(Constraint {
            label: "e".into(),
            body,
            sense: Sense::Eq,
            rhs: r(1),
        });
        let n = normalize(&p).unwrap();
        assert_eq!(n.constraint_labels(), vec!["e_le", "e_ge"]);
        assert_eq!(n.constraints[1].body.constant(), r(1));
    }

    #[test]
    fn unbounded_variable_is_named() {
        let mut v = Variable::continuous("y", r(0), r(1));
        v.upper = None;
        let p = Problem::new(ObjSense::Min, vec![v]);
        assert_eq!(normalize(&p), Err(Error::Unbounded("y".into())));
    }

    #[test]
    fn qp1_witness_swaps_c1_c2() {
        let p = qp1();
        let pi = Permutation::from_cycles(4, &[&[0, 3], &[1, 2]]).unwrap();
        let sigma = find_constraint_permutation(&p, &pi).unwrap();
        assert_eq!(sigma, Permutation::from_cycles(3, &[&[0, 1]]).unwrap());
        let id = Permutation::identity(4);
        assert!(find_constraint_permutation(&p, &id).unwrap().is_identity());
    }

    #[test]
    fn qp1_rejects_x1_x2_swap() {
        let p = qp1();
        let pi = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        assert_eq!(find_constraint_permutation(&p, &pi), None);
        // exhaustive: no constraint permutation reproduces the permuted problem
        let permuted = apply_variable_permutation(&p, &pi).unwrap();
        for sigma in all_permutations(3) {
            let all_match =
                (0..3).all(|k| permuted.constraints[k].body == p.constraints[sigma.apply(k)].body);
            assert!(!(all_match && permuted.objective == p.objective));
        }
    }

    #[test]
    fn class_mismatch_is_reported() {
        let mut p = qp1();
        p.variables[0].upper = Some(r(2));
        let pi = Permutation::from_cycles(4, &[&[0, 3], &[1, 2]]).unwrap();
        assert_eq!(match_constraints(&p, &pi), Err(Mismatch::Class(0)));
    }

    #[test]
    fn permutation_size_checked() {
        let p = qp1();
        assert!(apply_variable_permutation(&p, &Permutation::identity(3)).is_err());
    }
}
