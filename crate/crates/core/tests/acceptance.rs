//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed even when a
//! criterion fails; the process exits non-zero if any does.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use qcqp_symmetry::aut::{automorphism_group, brute_force_automorphisms, PermGroup};
use qcqp_symmetry::cli;
use qcqp_symmetry::dag::compare_representations;
use qcqp_symmetry::encode::{entry_count_bounds, tensor_encode};
use qcqp_symmetry::group::{detect, Representation};
use qcqp_symmetry::model::{int, normalize, Rational};
use qcqp_symmetry::oracle::{check_containment, enumerate_feasible, symmetry_group_bruteforce};
use qcqp_symmetry::relax::{
    envelope_rows, mccormick_relax, monomials, product_bounds, relax_subset,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["qsym"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap(),
    )
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn qp1_detect() -> Outcome {
    let start = Instant::now();
    let qp1 = fixture_path("qp1");
    let (code, text) = run_cli(&["detect", qp1.to_str().unwrap(), "--rep", "blg2"]);
    within(Duration::from_secs(1), start)?;
    ensure(code == 0, || format!("exit {code}: {text}"))?;
    for line in [
        "graph: 18 vertices",
        "4 layers",
        "generators: (x1 x4)(x2 x3)\n",
        "order: 2\n",
        "orbits: {x1,x4},{x2,x3}\n",
        "verified: yes (σ=(c1 c2))\n",
    ] {
        ensure(text.contains(line), || {
            format!("missing {line:?} in\n{text}")
        })?;
    }
    let found = detect(&fixture("qp1"), Representation::Blg2).map_err(|e| e.to_string())?;
    let expected = PermGroup::new(4, [cycles(4, &[&[0, 3], &[1, 2]])]);
    ensure(found.group.same_group(&expected), || {
        format!("group {:?}", found.group.generators())
    })?;
    Ok("⟨(x1 x4)(x2 x3)⟩, σ=(c1 c2), 4 layers, 18 vertices".into())
}

/// LQP1 as printed in the worked example, one row per line.
const LQP1_ROWS: &[(&str, &str)] = &[
    ("c1", "X11 + x2 + 1 <= 0"),
    ("c2", "x3 + X44 + 1 <= 0"),
    ("c3", "x2 + x3 + 1 <= 0"),
    ("c4", "x2 + x3 - X23 - 1 <= 0"),
    ("c5", "X23 - x2 <= 0"),
    ("c6", "X23 - x3 <= 0"),
    ("c7", "2 x1 - X11 - 1 <= 0"),
    ("c8", "X11 - x1 <= 0"),
    ("c9", "2 x4 - X44 - 1 <= 0"),
    ("c10", "X44 - x4 <= 0"),
];

fn lqp1_pipeline() -> Outcome {
    let start = Instant::now();
    let lin = mccormick_relax(&fixture("qp1")).map_err(|e| e.to_string())?;
    let p = &lin.problem;
    let mut text = String::from(
        "var x1 in [0,1]\nvar x2 in [0,1]\nvar x3 in [0,1]\nvar x4 in [0,1]\n\
         var X11 in [0,1]\nvar X23 in [0,1]\nvar X44 in [0,1]\n\
         max 3 x1 + 2 X23 + 3 x4\n",
    );
    for (label, row) in LQP1_ROWS {
        text.push_str(&format!("st {label}: {row}\n"));
    }
    let listed = parse(&text);
    ensure(p.names() == listed.names(), || {
        format!("columns {:?}", p.names())
    })?;
    ensure(p.objective == listed.objective, || {
        "objective c0 differs".into()
    })?;
    ensure(p.constraints.len() == 10, || {
        format!("{} constraints", p.constraints.len())
    })?;
    for (got, want) in p.constraints.iter().zip(&listed.constraints) {
        ensure(
            got.label == want.label && got.body == want.body && got.rhs == want.rhs,
            || format!("{} differs from the listed row", want.label),
        )?;
    }
    for v in &p.variables[4..] {
        ensure(v.lower == Some(int(0)) && v.upper == Some(int(1)), || {
            format!("{} bounds", v.name)
        })?;
    }
    let found = detect(p, Representation::Blg1).map_err(|e| e.to_string())?;
    within(Duration::from_secs(1), start)?;
    let expected = PermGroup::new(7, [cycles(7, &[&[0, 3], &[1, 2], &[4, 6]])]);
    ensure(
        found.group.same_group(&expected) && found.report.all_verified(),
        || format!("group {:?}", found.group.generators()),
    )?;
    Ok("c0–c10 and aux bounds match; ⟨(x1 x4)(x2 x3)(X11 X44)⟩".into())
}

fn sparse_encoding() -> Outcome {
    let enc = tensor_encode(&fixture("qp1")).map_err(|e| e.to_string())?;
    let m = [3, 3, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1];
    let i = [0, 0, 2, 0, 0, 1, 0, 0, 4, 0, 0, 0];
    let j = [1, 4, 3, 0, 2, 1, 0, 3, 4, 0, 2, 3];
    let k = [0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3];
    let mut listed: Vec<(usize, usize, usize, Rational)> =
        (0..12).map(|t| (k[t], i[t], j[t], int(m[t]))).collect();
    let mut ours: Vec<(usize, usize, usize, Rational)> = enc.entries().collect();
    listed.sort();
    ours.sort();
    ensure(ours == listed, || format!("got {ours:?}"))?;
    let direct: Vec<_> = (0..enc.len())
        .map(|t| (enc.m[t], enc.i[t], enc.j[t], enc.k[t]))
        .collect();
    let listed: Vec<_> = (0..12).map(|t| (int(m[t]), i[t], j[t], k[t])).collect();
    ensure(direct == listed, || {
        "vectors match only after sorting".into()
    })?;
    Ok("M, I, J, K identical (12 entries)".into())
}

fn feasible_strings(name: &str) -> Result<BTreeSet<String>, String> {
    let f = enumerate_feasible(&fixture(name)).map_err(|e| e.to_string())?;
    Ok(f.points
        .iter()
        .map(|p| p.iter().map(|v| v.to_string()).collect())
        .collect())
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn counterexamples() -> Outcome {
    let g = |name: &str| symmetry_group_bruteforce(&fixture(name)).map_err(|e| e.to_string());
    ensure(feasible_strings("ex1")? == set(&["00", "10", "01"]), || {
        "F(ex1)".into()
    })?;
    ensure(
        feasible_strings("binary_qp")? == set(&["111", "010", "101"]),
        || "F(QP)".into(),
    )?;
    ensure(
        feasible_strings("binary_lqp")? == set(&["1111", "1010", "0101"]),
        || "F(LQP)".into(),
    )?;
    let ex1 = g("ex1")?;
    ensure(
        ex1.same_group(&PermGroup::new(2, [cycles(2, &[&[0, 1]])])),
        || "G̃(ex1)".into(),
    )?;
    let qp = g("binary_qp")?;
    let lqp = g("binary_lqp")?;
    let contained = check_containment(&lqp, &qp.extend_degree(4)).map_err(|e| e.to_string())?;
    ensure(!contained, || "G̃(LQP) ≤ G̃(QP)".into())?;
    let (oq, ol) = (qp.order(), lqp.order());
    ensure(
        oq == BigUint::from(1u32) && ol == BigUint::from(6u32),
        || {
            format!(
                "F sets, G̃(ex1) and G̃(LQP) ≰ G̃(QP) reproduce, but |G̃(QP)| = {oq} (expected 1) and \
             |G̃(LQP)| = {ol} (expected 6); see README"
            )
        },
    )?;
    Ok("F, G̃ and non-containment reproduce".into())
}

fn partial_relaxation() -> Outcome {
    let ex4 = fixture("ex4");
    let partial = relax_subset(&ex4, &[(0, 0)]).map_err(|e| e.to_string())?;
    let full = mccormick_relax(&ex4).map_err(|e| e.to_string())?;
    // Graph 1 would relax the remaining x2² itself, so only the quadratic
    // representations see the partial problem as written.
    for rep in [Representation::Blg2, Representation::Dag] {
        let a = detect(&partial.problem, rep).map_err(|e| e.to_string())?;
        ensure(a.group.is_trivial(), || {
            format!("{rep}: partial group {:?}", a.group.generators())
        })?;
    }
    for rep in [
        Representation::Blg1,
        Representation::Blg2,
        Representation::Dag,
    ] {
        let b = detect(&full.problem, rep).map_err(|e| e.to_string())?;
        let expected = PermGroup::new(4, [cycles(4, &[&[0, 1], &[2, 3]])]);
        ensure(
            b.group.same_group(&expected) && b.report.all_verified(),
            || format!("{rep}: full group {:?}", b.group.generators()),
        )?;
    }
    Ok("x1² only → {I}; both squares → ⟨(x1 x2)(X11 X22)⟩".into())
}

fn automorphism_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut nontrivial = 0;
    for case in 0..200 {
        let g = random_graph(&mut rng, 10);
        let fast = automorphism_group(&g);
        let slow = brute_force_automorphisms(&g).map_err(|e| e.to_string())?;
        for gen in fast.generators() {
            ensure(graph_automorphism(&g, gen), || {
                format!("case {case}: {gen:?} is not an automorphism")
            })?;
        }
        ensure(fast.order() == slow.order(), || {
            format!(
                "case {case}: order {} vs brute force {}",
                fast.order(),
                slow.order()
            )
        })?;
        ensure(slow.is_subgroup_of(&fast), || {
            format!("case {case}: search misses automorphisms")
        })?;
        if !fast.is_trivial() {
            nontrivial += 1;
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!(
        "200/200 graphs agree ({nontrivial} with symmetry) in {:?}",
        start.elapsed()
    ))
}

fn containment() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nontrivial = 0;
    for case in 0..50 {
        let p = random_binary_qcqp(&mut rng);
        let found = detect(&p, Representation::Dag).map_err(|e| format!("case {case}: {e}"))?;
        ensure(found.report.all_verified(), || {
            format!("case {case}: unverified generator")
        })?;
        let sym = symmetry_group_bruteforce(&p).map_err(|e| e.to_string())?;
        let inside = check_containment(&found.group, &sym).map_err(|e| e.to_string())?;
        ensure(inside, || format!("case {case}: detected group escapes G̃"))?;
        let feasible = binary_feasible(&p);
        for g in found.group.generators() {
            ensure(is_solution_symmetry(&p, &feasible, g), || {
                format!("case {case}: {g:?} breaks F or f0")
            })?;
        }
        if !found.group.is_trivial() {
            nontrivial += 1;
        }
    }
    Ok(format!(
        "50/50 problems have G ≤ G̃ ({nontrivial} with symmetry)"
    ))
}

fn representation_agreement() -> Outcome {
    for name in FIXTURES {
        let report = compare_representations(&fixture(name)).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            report.rows.len() == 3 || (report.rows.is_empty() && report.num_vars == 0),
            || format!("{name}: {} rows", report.rows.len()),
        )?;
        ensure(report.groups_agree(), || {
            format!("{name}: representations disagree")
        })?;
        ensure(report.rows.iter().all(|r| r.verified), || {
            format!("{name}: unverified row")
        })?;
    }
    Ok(format!(
        "{} fixtures, three representations each",
        FIXTURES.len()
    ))
}

fn hull_validity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0usize;
    for name in FIXTURES {
        let p = normalize(&fixture(name)).map_err(|e| e.to_string())?;
        if p.is_linear() {
            continue;
        }
        let lin = mccormick_relax(&p).map_err(|e| e.to_string())?;
        let box_of = |i: usize| p.variables[i].bounds().unwrap();
        for &(i, j) in &monomials(&p) {
            let aux = lin
                .aux
                .iter()
                .find(|a| a.origin == (i, j))
                .expect("aux column");
            let (lo, hi) = product_bounds(box_of(i), box_of(j), i == j);
            let rows = envelope_rows(i, j, aux.index, box_of(i), box_of(j));
            for _ in 0..1000 {
                let mut x: Vec<Rational> = lin
                    .problem
                    .variables
                    .iter()
                    .map(|v| sample(&mut rng, v.lower.unwrap(), v.upper.unwrap()))
                    .collect();
                for a in &lin.aux {
                    x[a.index] = x[a.origin.0] * x[a.origin.1];
                }
                let product = x[aux.index];
                ensure(lo <= product && product <= hi, || {
                    format!("{name}: {product} outside aux bounds")
                })?;
                for row in rows.iter().chain(
                    lin.problem.constraints[lin.rlt_range.clone()]
                        .iter()
                        .map(|c| &c.body),
                ) {
                    let v = eval(row, &x);
                    ensure(v <= Rational::zero(), || {
                        format!("{name}: row violated by {v} at {x:?}")
                    })?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} exact samples, zero violations"))
}

fn entry_counts() -> Outcome {
    let grid = [
        (0, 0),
        (1, 1),
        (1, 13),
        (2, 3),
        (2, 27),
        (2, 28),
        (3, 5),
        (4, 3),
        (5, 100),
        (10, 400),
    ];
    for (n, m) in grid {
        let c = entry_count_bounds(n, m);
        let nf = Rational::from_integer(n as i128);
        let mf = Rational::from_integer(m as i128);
        let one = int(1);
        let flat = (one + nf) * (one + nf / int(2)) * (one + mf + int(2) * nf * nf + int(2) * nf);
        let tensor = (one + nf) * (one + nf) * (one + mf);
        ensure(
            flat.is_integer() && flat.to_integer().to_u128() == Some(c.flat_worst),
            || format!("(n={n}, m={m}): flat {} vs {flat}", c.flat_worst),
        )?;
        ensure(
            tensor.to_integer().to_u128() == Some(c.tensor_worst),
            || format!("(n={n}, m={m}): tensor {} vs {tensor}", c.tensor_worst),
        )?;
        let cross = mf > int(3) * nf * nf + int(6) * nf + int(3);
        ensure(c.crossover == cross, || {
            format!("(n={n}, m={m}): crossover {}", c.crossover)
        })?;
    }
    Ok("10 grid points, both formulas and the crossover".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("QP1 formulation group", qp1_detect),
        ("LQP1 pipeline", lqp1_pipeline),
        ("sparse encoding", sparse_encoding),
        ("solution-symmetry counterexamples", counterexamples),
        ("partial relaxation", partial_relaxation),
        ("automorphism oracle", automorphism_oracle),
        ("containment", containment),
        ("representation agreement", representation_agreement),
        ("McCormick hull validity", hull_validity),
        ("entry-count bounds", entry_counts),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
