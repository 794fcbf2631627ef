//! Canonical problem printer; its output parses back to the same problem.

use num_traits::{One, Signed, Zero};

use crate::model::{
    format_number, ObjSense, Problem, QuadForm, Rational, Sense, VarKind, Variable,
};

fn bound(b: Option<Rational>, lower: bool) -> String {
    match b {
        Some(v) => format_number(&v),
        None if lower => "-inf".to_string(),
        None => "inf".to_string(),
    }
}

fn var_line(v: &Variable, names: &[&str]) -> String {
    let mut out = format!("var {}", v.name);
    let range = format!("[{},{}]", bound(v.lower, true), bound(v.upper, false));
    match v.kind {
        VarKind::Binary => out.push_str(" bin"),
        VarKind::Integer => out.push_str(&format!(" int in {range}")),
        VarKind::Continuous => out.push_str(&format!(" in {range}")),
    }
    if let Some((a, b)) = v.aux {
        out.push_str(&format!(" aux {}*{}", names[a], names[b]));
    }
    out
}

/// Linear terms by index, then products by index pair, then the constant;
/// unit coefficients are omitted. The zero form prints as `0`.
pub fn format_expr(q: &QuadForm, names: &[&str]) -> String {
    let mut terms: Vec<(Rational, String)> = Vec::new();
    for (&i, c) in q.lin() {
        terms.push((*c, names[i].to_string()));
    }
    for (&(i, j), c) in q.quad() {
        terms.push((*c, format!("{}*{}", names[i], names[j])));
    }
    if !q.constant().is_zero() || terms.is_empty() {
        terms.push((q.constant(), String::new()));
    }
    let mut out = String::new();
    for (k, (c, body)) in terms.iter().enumerate() {
        let magnitude = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if k == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if body.is_empty() {
            out.push_str(&format_number(&magnitude));
        } else if magnitude.is_one() {
            out.push_str(body);
        } else {
            out.push_str(&format!("{} {body}", format_number(&magnitude)));
        }
    }
    out
}

pub fn write_problem(problem: &Problem) -> String {
    let names = problem.names();
    let mut out = String::new();
    for v in &problem.variables {
        out.push_str(&var_line(v, &names));
        out.push('\n');
    }
    let sense = match problem.sense {
        ObjSense::Min => "min",
        ObjSense::Max => "max",
    };
    out.push_str(&format!(
        "{sense} {}\n",
        format_expr(&problem.objective, &names)
    ));
    for c in &problem.constraints {
        let op = match c.sense {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        };
        out.push_str(&format!(
            "st {}: {} {op} {}\n",
            c.label,
            format_expr(&c.body, &names),
            format_number(&c.rhs)
        ));
    }
    out
}
