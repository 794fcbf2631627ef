//! Matrix encodings of a problem and their sparse `(M, I, J, K)` form.
//!
//! Index 0 is the constant element; variable `v` is index `v + 1`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{normalize, Problem, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EncodingKind {
    /// One symmetric `(n+1) x (n+1)` matrix per equation.
    Tensor,
    /// One row per equation, one column per constant/variable.
    Flat,
}

impl EncodingKind {
    pub fn name(self) -> &'static str {
        match self {
            EncodingKind::Tensor => "tensor",
            EncodingKind::Flat => "flat",
        }
    }
}

/// Non-zero entries sorted by `(K, I, J)`. In the flat kind `I` is always 0
/// and `J` is the column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseEncoding {
    pub kind: EncodingKind,
    pub m: Vec<Rational>,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub k: Vec<usize>,
    pub num_vars: usize,
    pub num_equations: usize,
    /// Interchangeability class of each variable.
    pub classes: Vec<usize>,
}

impl SparseEncoding {
    fn empty(kind: EncodingKind, problem: &Problem) -> Self {
        SparseEncoding {
            kind,
            m: Vec::new(),
            i: Vec::new(),
            j: Vec::new(),
            k: Vec::new(),
            num_vars: problem.num_vars(),
            num_equations: problem.num_constraints() + 1,
            classes: problem.class_ids(),
        }
    }

    fn push(&mut self, k: usize, i: usize, j: usize, value: Rational) {
        if value.is_zero() {
            return;
        }
        self.k.push(k);
        self.i.push(i);
        self.j.push(j);
        self.m.push(value);
    }

    fn sort(&mut self) {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&e| (self.k[e], self.i[e], self.j[e]));
        self.m = order.iter().map(|&e| self.m[e]).collect();
        self.i = order.iter().map(|&e| self.i[e]).collect();
        self.j = order.iter().map(|&e| self.j[e]).collect();
        self.k = order.iter().map(|&e| self.k[e]).collect();
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    /// `(n+1, n+1, m+1)` for tensors, `(m+1, n+1, 1)` for flat matrices.
    pub fn shape(&self) -> (usize, usize, usize) {
        match self.kind {
            EncodingKind::Tensor => (self.num_vars + 1, self.num_vars + 1, self.num_equations),
            EncodingKind::Flat => (self.num_equations, self.num_vars + 1, 1),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, Rational)> + '_ {
        (0..self.len()).map(|e| (self.k[e], self.i[e], self.j[e], self.m[e]))
    }

    /// `K,I,J,M` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("K,I,J,M\n");
        for (k, i, j, v) in self.entries() {
            out.push_str(&format!(
                "{k},{i},{j},{}\n",
                crate::model::format_number(&v)
            ));
        }
        out
    }

    /// Dense form: per equation, the symmetric matrix (tensor) or a single
    /// row (flat).
    pub fn to_dense(&self) -> Vec<Vec<Vec<Rational>>> {
        let size = self.num_vars + 1;
        match self.kind {
            EncodingKind::Tensor => {
                let mut dense = vec![vec![vec![Rational::zero(); size]; size]; self.num_equations];
                for (k, i, j, v) in self.entries() {
                    dense[k][i][j] = v;
                    dense[k][j][i] = v;
                }
                dense
            }
            EncodingKind::Flat => {
                let mut dense = vec![vec![vec![Rational::zero(); size]]; self.num_equations];
                for (k, _, j, v) in self.entries() {
                    dense[k][0][j] = v;
                }
                dense
            }
        }
    }

    /// Inverse of [`SparseEncoding::to_dense`]; reads the upper triangle.
    pub fn from_dense(
        kind: EncodingKind,
        dense: &[Vec<Vec<Rational>>],
        classes: Vec<usize>,
    ) -> SparseEncoding {
        let num_vars = classes.len();
        let mut enc = SparseEncoding {
            kind,
            m: Vec::new(),
            i: Vec::new(),
            j: Vec::new(),
            k: Vec::new(),
            num_vars,
            num_equations: dense.len(),
            classes,
        };
        for (k, matrix) in dense.iter().enumerate() {
            for (i, row) in matrix.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if kind == EncodingKind::Flat || i <= j {
                        enc.push(k, i, j, *v);
                    }
                }
            }
        }
        enc
    }

    /// Relabels variable indices by `π` and equations `1..` by `σ` (the
    /// objective stays at 0), then re-sorts.
    pub fn permuted(
        &self,
        pi: &crate::model::Permutation,
        sigma: &crate::model::Permutation,
    ) -> SparseEncoding {
        let var = |x: usize| if x == 0 { 0 } else { pi.apply(x - 1) + 1 };
        let eq = |k: usize| if k == 0 { 0 } else { sigma.apply(k - 1) + 1 };
        let mut out = SparseEncoding {
            m: Vec::new(),
            i: Vec::new(),
            j: Vec::new(),
            k: Vec::new(),
            ..self.clone()
        };
        for (k, i, j, v) in self.entries() {
            match self.kind {
                EncodingKind::Tensor => {
                    let (a, b) = (var(i), var(j));
                    out.push(eq(k), a.min(b), a.max(b), v);
                }
                EncodingKind::Flat => out.push(eq(k), 0, var(j), v),
            }
        }
        out.sort();
        out
    }
}

/// Tensor encoding of a (normalized) QCQP.
pub fn tensor_encode(problem: &Problem) -> Result<SparseEncoding> {
    let problem = normalize(problem)?;
    let mut enc = SparseEncoding::empty(EncodingKind::Tensor, &problem);
    for (k, eq) in problem.equations().enumerate() {
        enc.push(k, 0, 0, eq.constant());
        for (&v, c) in eq.lin() {
            enc.push(k, 0, v + 1, *c);
        }
        for (&(a, b), c) in eq.quad() {
            enc.push(k, a + 1, b + 1, *c);
        }
    }
    enc.sort();
    Ok(enc)
}

/// Flat encoding of a linear (typically linearized) problem.
pub fn flat_encode(problem: &Problem) -> Result<SparseEncoding> {
    let problem = normalize(problem)?;
    if let Some(k) = problem.equations().position(|eq| !eq.is_linear()) {
        let label = match k {
            0 => "objective".to_string(),
            _ => problem.constraints[k - 1].label.clone(),
        };
        return Err(Error::Nonlinear(label));
    }
    let mut enc = SparseEncoding::empty(EncodingKind::Flat, &problem);
    for (k, eq) in problem.equations().enumerate() {
        enc.push(k, 0, 0, eq.constant());
        for (&v, c) in eq.lin() {
            enc.push(k, 0, v + 1, *c);
        }
    }
    enc.sort();
    Ok(enc)
}

/// Worst-case entry counts of the flat and tensor encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntryCounts {
    pub flat_worst: u128,
    pub tensor_worst: u128,
    /// `m > 3n² + 6n + 3`.
    pub crossover: bool,
}

pub fn entry_count_bounds(n: u64, m: u64) -> EntryCounts {
    let (n, m) = (n as u128, m as u128);
    // (1+n)(1+n/2) = (1+n)(2+n)/2, always an integer.
    let flat_worst = (1 + n) * (2 + n) / 2 * (1 + m + 2 * n * n + 2 * n);
    let tensor_worst = (1 + n) * (1 + n) * (1 + m);
    EntryCounts {
        flat_worst,
        tensor_worst,
        crossover: m > 3 * n * n + 6 * n + 3,
    }
}
