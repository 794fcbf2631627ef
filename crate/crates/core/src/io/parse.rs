//! Line-oriented problem grammar.
//!
//! ```text
//! var x1 in [0,1]            # continuous
//! var b bin                  # binary
//! var k int in [0,5]         # general integer
//! var X12 in [0,1] aux x1*x2 # linearization variable
//! max 3 x1 + 2 x2*x3 - x1^2
//! st c1: x2 + x1*x1 + 1 <= 0
//! st c2: x1 >= 2 x3 - 1     # right-hand terms move left
//! ```
//!
//! Variables may be referenced before their declaration.

use std::collections::HashMap;
use std::path::Path;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{
    parse_number, Constraint, ObjSense, Problem, QuadForm, Rational, Sense, VarKind, Variable,
};

/// Problem text plus the name used in diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSource {
    pub name: String,
    pub text: String,
}

impl ProblemSource {
    pub fn inline(name: impl Into<String>, text: impl Into<String>) -> Self {
        ProblemSource {
            name: name.into(),
            text: text.into(),
        }
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Ok(ProblemSource::inline(path.display().to_string(), text))
    }

    pub fn parse(&self) -> Result<Problem> {
        parse_named(&self.name, &self.text)
    }
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    parse_named("<input>", text)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

struct Line<'a> {
    source: &'a str,
    line: usize,
    tokens: Vec<Token>,
    pos: usize,
    end_col: usize,
}

const SYMBOLS: [&str; 11] = ["<=", ">=", "=", "+", "-", "*", "^", ":", "[", "]", ","];

fn lex<'a>(source: &'a str, line: usize, text: &str) -> Result<Line<'a>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let err = |col: usize, message: String| Error::Parse {
        source_name: source.to_string(),
        line,
        col,
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit()
            || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
        {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let value = parse_number(&text)
                .ok_or_else(|| err(col, format!("malformed number `{text}`")))?;
            tokens.push(Token {
                tok: Tok::Num(value),
                col,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            tokens.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else {
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            let sym = SYMBOLS
                .iter()
                .find(|s| rest.starts_with(**s))
                .ok_or_else(|| err(col, format!("unexpected character `{c}`")))?;
            i += sym.len();
            tokens.push(Token {
                tok: Tok::Sym(sym),
                col,
            });
        }
    }
    Ok(Line {
        source,
        line,
        tokens,
        pos: 0,
        end_col: chars.len() + 1,
    })
}

impl Line<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        let col = self.tokens.get(self.pos).map_or(self.end_col, |t| t.col);
        self.error_at(col, message)
    }

    fn error_at(&self, col: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            source_name: self.source.to_string(),
            line: self.line,
            col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + offset).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn eat_sym(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, sym: &str) -> Result<()> {
        if self.eat_sym(sym) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{sym}`")))
        }
    }

    fn eat_keyword(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == word) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize)> {
        let col = self.col();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok((s, col))
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn signed_number(&mut self) -> Result<Rational> {
        let negative = if self.eat_sym("-") {
            true
        } else {
            self.eat_sym("+");
            false
        };
        match self.peek() {
            Some(Tok::Num(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(if negative { -v } else { v })
            }
            _ => Err(self.error("expected a number")),
        }
    }

    /// A bound: signed number, or `inf`/`-inf` (as `None`).
    fn bound(&mut self) -> Result<Option<Rational>> {
        let save = self.pos;
        let negative = self.eat_sym("-");
        if !negative {
            self.eat_sym("+");
        }
        if self.eat_keyword("inf") {
            return Ok(None);
        }
        self.pos = save;
        self.signed_number()
            .map(Some)
            .map_err(|_| self.error("malformed bound"))
    }
}

struct VarDecl {
    var: Variable,
    line: usize,
    aux: Option<(String, usize, String, usize)>,
}

fn parse_var(line: &mut Line) -> Result<(VarDecl, usize)> {
    let (name, col) = line.ident("a variable name")?;
    let mut kind = VarKind::Continuous;
    let (lower, upper);
    if line.eat_keyword("bin") {
        kind = VarKind::Binary;
        lower = Some(Rational::zero());
        upper = Some(Rational::one());
    } else {
        if line.eat_keyword("int") {
            kind = VarKind::Integer;
        }
        if !line.eat_keyword("in") {
            return Err(line.error("expected `in`, `int` or `bin`"));
        }
        let open = line.col();
        line.expect_sym("[")?;
        lower = line.bound()?;
        line.expect_sym(",")?;
        upper = line.bound()?;
        line.expect_sym("]")?;
        if let (Some(lo), Some(hi)) = (lower, upper) {
            if lo > hi {
                return Err(line.error_at(
                    open,
                    format!("bound error: lower bound exceeds upper bound for `{name}`"),
                ));
            }
        }
    }
    let aux = if line.eat_keyword("aux") {
        let (a, ca) = line.ident("a variable name")?;
        line.expect_sym("*")?;
        let (b, cb) = line.ident("a variable name")?;
        Some((a, ca, b, cb))
    } else {
        None
    };
    line.finish()?;
    Ok((
        VarDecl {
            var: Variable {
                name,
                lower,
                upper,
                kind,
                aux: None,
            },
            line: 0,
            aux,
        },
        col,
    ))
}

fn parse_expr(line: &mut Line, vars: &HashMap<String, usize>) -> Result<QuadForm> {
    let mut q = QuadForm::new();
    let mut first = true;
    loop {
        let sign = if line.eat_sym("-") {
            -Rational::one()
        } else if line.eat_sym("+") || first {
            Rational::one()
        } else {
            break;
        };
        first = false;
        parse_term(line, vars, sign, &mut q)?;
    }
    Ok(q)
}

fn lookup(line: &Line, vars: &HashMap<String, usize>, name: &str, col: usize) -> Result<usize> {
    vars.get(name)
        .copied()
        .ok_or_else(|| line.error_at(col, format!("unknown variable `{name}`")))
}

fn parse_term(
    line: &mut Line,
    vars: &HashMap<String, usize>,
    sign: Rational,
    q: &mut QuadForm,
) -> Result<()> {
    let mut coef = sign;
    let mut has_number = false;
    if let Some(Tok::Num(v)) = line.peek() {
        coef *= *v;
        line.pos += 1;
        has_number = true;
        if !line.eat_sym("*") && !matches!(line.peek(), Some(Tok::Ident(_))) {
            q.add_constant(coef);
            return Ok(());
        }
    }
    let (name, col) = line.ident(if has_number {
        "a variable name"
    } else {
        "a term"
    })?;
    let a = lookup(line, vars, &name, col)?;
    if matches!(line.peek(), Some(Tok::Sym("*"))) && matches!(line.peek_at(1), Some(Tok::Ident(_)))
    {
        line.pos += 1;
        let (other, col) = line.ident("a variable name")?;
        let b = lookup(line, vars, &other, col)?;
        q.add_quad(a, b, coef);
    } else if line.eat_sym("^") {
        let col = line.col();
        match line.peek() {
            Some(Tok::Num(v)) if *v == Rational::from_integer(2) => {
                line.pos += 1;
                q.add_quad(a, a, coef);
            }
            _ => return Err(line.error_at(col, "only `^2` is supported")),
        }
    } else {
        q.add_lin(a, coef);
    }
    Ok(())
}

fn parse_named(source: &str, text: &str) -> Result<Problem> {
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let line = lex(source, idx + 1, content)?;
        if !line.tokens.is_empty() {
            lines.push(line);
        }
    }

    // Pass 1: declarations.
    let mut decls: Vec<VarDecl> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for (at, line) in lines.iter_mut().enumerate() {
        if line.eat_keyword("var") {
            let (mut decl, col) = parse_var(line)?;
            decl.line = at;
            if index.contains_key(&decl.var.name) {
                return Err(line.error_at(col, format!("duplicate variable `{}`", decl.var.name)));
            }
            index.insert(decl.var.name.clone(), decls.len());
            decls.push(decl);
        }
    }
    let mut variables = Vec::with_capacity(decls.len());
    for (i, decl) in decls.into_iter().enumerate() {
        let mut var = decl.var;
        if let Some((a, ca, b, cb)) = decl.aux {
            let line = &lines[decl.line];
            let ia = lookup(line, &index, &a, ca)?;
            let ib = lookup(line, &index, &b, cb)?;
            if ia == i || ib == i {
                return Err(line.error_at(
                    ca,
                    format!("`{}` cannot stand for a product involving itself", var.name),
                ));
            }
            var.aux = Some((ia.min(ib), ia.max(ib)));
        }
        variables.push(var);
    }

    // Pass 2: objective and constraints.
    let mut objective: Option<(ObjSense, QuadForm)> = None;
    let mut constraints: Vec<Constraint> = Vec::new();
    for line in lines.iter_mut() {
        if line.pos > 0 {
            continue;
        }
        let (word, col) = line.ident("`var`, `min`, `max` or `st`")?;
        match word.as_str() {
            "min" | "max" => {
                if objective.is_some() {
                    return Err(line.error_at(col, "second objective"));
                }
                let sense = if word == "min" {
                    ObjSense::Min
                } else {
                    ObjSense::Max
                };
                let expr = parse_expr(line, &index)?;
                line.finish()?;
                objective = Some((sense, expr));
            }
            "st" => {
                let (label, col) = line.ident("a constraint label")?;
                if constraints.iter().any(|c| c.label == label) {
                    return Err(line.error_at(col, format!("duplicate constraint label `{label}`")));
                }
                line.expect_sym(":")?;
                let mut body = parse_expr(line, &index)?;
                let sense = if line.eat_sym("<=") {
                    Sense::Le
                } else if line.eat_sym(">=") {
                    Sense::Ge
                } else if line.eat_sym("=") {
                    Sense::Eq
                } else {
                    return Err(line.error("expected `<=`, `>=` or `=`"));
                };
                // Variable terms on the right move to the left; the
                // constant stays as the right-hand side.
                let right = parse_expr(line, &index)?;
                line.finish()?;
                let rhs = right.constant();
                for (&i, c) in right.lin() {
                    body.add_lin(i, -c);
                }
                for (&(i, j), c) in right.quad() {
                    body.add_quad(i, j, -c);
                }
                constraints.push(Constraint {
                    label,
                    body,
                    sense,
                    rhs,
                });
            }
            other => return Err(line.error_at(col, format!("unknown statement `{other}`"))),
        }
    }
    let (sense, objective) = objective.unwrap_or((ObjSense::Min, QuadForm::new()));
    Ok(Problem {
        sense,
        objective,
        constraints,
        variables,
    })
}
