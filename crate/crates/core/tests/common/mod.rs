//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use num_traits::Zero;
use qcqp_symmetry::graph::ColoredGraph;
use qcqp_symmetry::io::{parse_problem, ProblemSource};
use qcqp_symmetry::model::{
    int, Constraint, ObjSense, Permutation, Problem, QuadForm, Rational, Sense, Variable,
};
use rand::Rng;

pub const FIXTURES: &[&str] = &[
    "qp1",
    "lqp1",
    "ex1",
    "ex2",
    "ex4",
    "binary_qp",
    "binary_lqp",
    "linear_toy",
    "circles",
    "trivial",
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.prob"))
}

pub fn fixture(name: &str) -> Problem {
    ProblemSource::from_path(fixture_path(name))
        .and_then(|s| s.parse())
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn parse(text: &str) -> Problem {
    parse_problem(text).expect("test problem parses")
}

pub fn cycles(n: usize, cs: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, cs).expect("valid cycles")
}

/// Evaluates a quadratic form term by term.
pub fn eval(q: &QuadForm, x: &[Rational]) -> Rational {
    let mut v = q.constant();
    for (&i, c) in q.lin() {
        v += *c * x[i];
    }
    for (&(i, j), c) in q.quad() {
        v += *c * x[i] * x[j];
    }
    v
}

pub fn satisfies(p: &Problem, x: &[Rational]) -> bool {
    p.constraints.iter().all(|c| {
        let lhs = eval(&c.body, x);
        match c.sense {
            Sense::Le => lhs <= c.rhs,
            Sense::Ge => lhs >= c.rhs,
            Sense::Eq => lhs == c.rhs,
        }
    })
}

/// `y[pi(i)] = x[i]`.
pub fn act<T: Clone>(pi: &Permutation, x: &[T]) -> Vec<T> {
    let mut y = x.to_vec();
    for (i, xi) in x.iter().enumerate() {
        y[pi.apply(i)] = xi.clone();
    }
    y
}

/// Feasible points of an all-binary problem, by scanning `{0,1}^n`.
pub fn binary_feasible(p: &Problem) -> Vec<Vec<Rational>> {
    let n = p.num_vars();
    (0..1u32 << n)
        .map(|mask| {
            (0..n)
                .map(|i| int(((mask >> i) & 1) as i64))
                .collect::<Vec<_>>()
        })
        .filter(|x| satisfies(p, x))
        .collect()
}

/// Whether `pi` maps the feasible set onto itself and keeps the objective.
pub fn is_solution_symmetry(p: &Problem, feasible: &[Vec<Rational>], pi: &Permutation) -> bool {
    let set: BTreeSet<&Vec<Rational>> = feasible.iter().collect();
    feasible.iter().all(|x| {
        let y = act(pi, x);
        set.contains(&y) && eval(&p.objective, &y) == eval(&p.objective, x)
    })
}

/// All permutations of `0..n`, by Heap's algorithm.
pub fn all_perms(n: usize) -> Vec<Permutation> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation::from_images(a.clone()).unwrap()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(Permutation::from_images(a.clone()).unwrap());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

pub fn graph_automorphism(g: &ColoredGraph, p: &Permutation) -> bool {
    let n = g.num_vertices();
    (0..n).all(|v| g.colour(v) == g.colour(p.apply(v)))
        && g.edges().all(|(u, v)| g.has_edge(p.apply(u), p.apply(v)))
}

/// A random involution on `0..n`.
pub fn random_involution<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut img: Vec<usize> = (0..n).collect();
    let pairs = rng.gen_range(0..=n / 2);
    for k in 0..pairs {
        let (a, b) = (order[2 * k], order[2 * k + 1]);
        img[a] = b;
        img[b] = a;
    }
    Permutation::from_images(img).unwrap()
}

/// Random coloured graph with at most `max_n` vertices. Half of them are
/// closed under a random involution so that symmetry is common.
pub fn random_graph<R: Rng>(rng: &mut R, max_n: usize) -> ColoredGraph {
    let n = rng.gen_range(1..=max_n);
    let k = rng.gen_range(1..=3);
    let density = rng.gen_range(0.1..0.6);
    let symmetric = rng.gen_bool(0.5);
    let inv = random_involution(rng, n);
    let mut colours: Vec<u32> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    if symmetric {
        for v in 0..n {
            colours[inv.apply(v)] = colours[v].min(colours[inv.apply(v)]);
        }
    }
    let mut g = ColoredGraph::new(colours);
    for u in 0..n {
        for v in u..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v);
                if symmetric {
                    g.add_edge(inv.apply(u), inv.apply(v));
                }
            }
        }
    }
    g
}

fn random_form<R: Rng>(rng: &mut R, n: usize) -> QuadForm {
    let mut q = QuadForm::new();
    for i in 0..n {
        if rng.gen_bool(0.5) {
            q.add_lin(i, int(rng.gen_range(-2..=2)));
        }
        for j in i..n {
            if rng.gen_bool(0.15) {
                q.add_quad(i, j, int(rng.gen_range(-2..=2)));
            }
        }
    }
    q
}

/// Random binary QCQP with `n <= 5` and `m <= 4`. Roughly half are closed
/// under a random involution of the variables.
pub fn random_binary_qcqp<R: Rng>(rng: &mut R) -> Problem {
    let n = rng.gen_range(1..=5);
    let vars = (1..=n).map(|i| Variable::binary(format!("x{i}"))).collect();
    let mut p = Problem::new(
        if rng.gen_bool(0.5) {
            ObjSense::Min
        } else {
            ObjSense::Max
        },
        vars,
    );
    let inv = random_involution(rng, n);
    let close = rng.gen_bool(0.5);
    p.objective = random_form(rng, n);
    if close {
        let image = p.objective.permuted(&inv);
        p.objective = sum(&p.objective, &image);
    }
    let m = rng.gen_range(0..=4);
    let mut bodies: Vec<(QuadForm, Sense, Rational)> = Vec::new();
    while bodies.len() < m {
        let body = random_form(rng, n);
        if body.is_zero() {
            continue;
        }
        let sense = [Sense::Le, Sense::Ge, Sense::Eq][rng.gen_range(0..3)];
        let rhs = int(rng.gen_range(-1..=2));
        let image = body.permuted(&inv);
        bodies.push((body.clone(), sense, rhs));
        if close && image != body && bodies.len() < m {
            bodies.push((image, sense, rhs));
        }
    }
    for (k, (body, sense, rhs)) in bodies.into_iter().enumerate() {
        p.constraints.push(Constraint {
            label: format!("c{}", k + 1),
            body,
            sense,
            rhs,
        });
    }
    p
}

fn sum(a: &QuadForm, b: &QuadForm) -> QuadForm {
    let mut q = a.clone();
    for (&i, c) in b.lin() {
        q.add_lin(i, *c);
    }
    for (&(i, j), c) in b.quad() {
        q.add_quad(i, j, *c);
    }
    q.add_constant(b.constant());
    q
}

/// A random rational in `[lo, hi]` with a small denominator.
pub fn sample<R: Rng>(rng: &mut R, lo: Rational, hi: Rational) -> Rational {
    let den: i128 = rng.gen_range(1..=64);
    let num: i128 = rng.gen_range(0..=den);
    let t = Rational::new(num, den);
    lo + (hi - lo) * t
}

pub fn zero() -> Rational {
    Rational::zero()
}
