//! Binary Layered Graphs: each distinct coefficient gets a positive integer
//! label and an entry with label `z` becomes edges on the layers of the set
//! bits of `z`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::encode::{EncodingKind, SparseEncoding};
use crate::error::{Error, Result};
use crate::graph::{dense_colours, ColoredGraph, Origin, VertexInfo, VertexMeta};
use crate::model::Rational;

/// Injective labelling of the distinct non-zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMap {
    labels: BTreeMap<Rational, u64>,
}

impl LabelMap {
    /// A caller-chosen labelling; labels must be positive and distinct.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Rational, u64)>) -> Result<Self> {
        let mut labels = BTreeMap::new();
        let mut used = std::collections::BTreeSet::new();
        for (value, label) in pairs {
            if value.is_zero() || label == 0 || !used.insert(label) {
                return Err(Error::Invariant(format!(
                    "label map must be injective onto positive labels (value {value}, label {label})"
                )));
            }
            if labels.insert(value, label).is_some() {
                return Err(Error::Invariant(format!("value {value} labelled twice")));
            }
        }
        Ok(LabelMap { labels })
    }

    pub fn label(&self, value: &Rational) -> Option<u64> {
        self.labels.get(value).copied()
    }

    /// Number of labelled values.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Values ordered by label.
    pub fn values(&self) -> Vec<Rational> {
        let mut pairs: Vec<(u64, Rational)> = self.labels.iter().map(|(v, l)| (*l, *v)).collect();
        pairs.sort();
        pairs.into_iter().map(|(_, v)| v).collect()
    }

    pub fn max_label(&self) -> u64 {
        self.labels.values().copied().max().unwrap_or(0)
    }

    /// Bits needed for the largest label; `⌈log₂(ℓ+1)⌉` for the default map.
    pub fn layers(&self) -> u32 {
        u64::BITS - self.max_label().leading_zeros()
    }

    fn graph_layers(&self) -> u32 {
        self.layers().max(1)
    }

    fn layer_set(&self, value: &Rational, layers: u32) -> Result<Vec<u32>> {
        let label = self
            .label(value)
            .ok_or_else(|| Error::Invariant(format!("coefficient {value} has no label")))?;
        binary_layers(label, layers)
    }
}

/// Default labelling: positive values ascending get `1, 2, …`, then
/// negative values by ascending magnitude.
pub fn label_coefficients(enc: &SparseEncoding) -> LabelMap {
    let mut positive: Vec<Rational> = enc
        .m
        .iter()
        .copied()
        .filter(|v| *v > Rational::zero())
        .collect();
    let mut negative: Vec<Rational> = enc
        .m
        .iter()
        .copied()
        .filter(|v| *v < Rational::zero())
        .collect();
    positive.sort();
    positive.dedup();
    negative.sort_by(|a, b| b.cmp(a));
    negative.dedup();
    let labels = positive.into_iter().chain(negative).zip(1u64..).collect();
    LabelMap { labels }
}

/// Layers `t` with bit `t` of `label` set.
pub fn binary_layers(label: u64, layers: u32) -> Result<Vec<u32>> {
    let fits = label >= 1 && (layers >= 64 || label < (1u64 << layers));
    if !fits {
        return Err(Error::LabelOutOfRange { label, layers });
    }
    Ok((0..layers.min(64))
        .filter(|t| label >> t & 1 == 1)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Role {
    Objective,
    Constraint,
    Constant,
    Variable(usize),
}

struct Builder {
    keys: Vec<(u32, Role)>,
    info: Vec<VertexInfo>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            keys: Vec::new(),
            info: Vec::new(),
        }
    }

    fn add(&mut self, origin: Origin, role: Role, layer: u32, base: bool) -> usize {
        self.keys.push((layer, role));
        self.info.push(VertexInfo {
            origin,
            layer,
            base,
        });
        self.keys.len() - 1
    }

    /// Equation vertices, layer-major: `eq(t, k) = t * rows + k`.
    fn equations(&mut self, rows: usize, layers: u32) {
        for t in 0..layers {
            for k in 0..rows {
                let (origin, role) = match k {
                    0 => (Origin::Objective, Role::Objective),
                    _ => (Origin::Constraint(k - 1), Role::Constraint),
                };
                self.add(origin, role, t, t == 0);
            }
        }
    }

    /// Constant followed by the variables, all on one layer.
    fn columns(&mut self, classes: &[usize], layer: u32, base: bool) -> usize {
        let start = self.add(Origin::Constant, Role::Constant, layer, base);
        for (v, &c) in classes.iter().enumerate() {
            self.add(Origin::Variable(v), Role::Variable(c), layer, base);
        }
        start
    }

    fn finish(self, layers: u32) -> ColoredGraph {
        let colours = dense_colours(&self.keys);
        ColoredGraph::with_meta(
            colours,
            VertexMeta {
                vertices: self.info,
                layers,
            },
        )
    }
}

fn check_kind(enc: &SparseEncoding, expected: EncodingKind) -> Result<()> {
    if enc.kind != expected {
        return Err(Error::EncodingKind {
            expected: expected.name(),
            found: enc.kind.name(),
        });
    }
    Ok(())
}

/// Graph 1, for flat encodings.
pub fn build_blg_flat(enc: &SparseEncoding) -> Result<ColoredGraph> {
    build_blg_flat_with(enc, &label_coefficients(enc))
}

/// Graph 1 with a caller-supplied labelling.
///
/// Equation copies on layers `0..L` joined by vertical edges, then one
/// layer holding the constant and variable columns. An entry with label `z`
/// joins the layer-`t` copy of its row to its column for every set bit `t`.
pub fn build_blg_flat_with(enc: &SparseEncoding, labels: &LabelMap) -> Result<ColoredGraph> {
    check_kind(enc, EncodingKind::Flat)?;
    let layers = labels.graph_layers();
    let rows = enc.num_equations;
    let mut b = Builder::new();
    b.equations(rows, layers);
    let cols = b.columns(&enc.classes, layers, true);
    let mut g = b.finish(layers + 1);
    let eq = |t: u32, k: usize| t as usize * rows + k;
    for k in 0..rows {
        for t in 1..layers {
            g.add_edge(eq(t - 1, k), eq(t, k));
        }
    }
    for (k, _, j, v) in enc.entries() {
        for t in labels.layer_set(&v, layers)? {
            g.add_edge(eq(t, k), cols + j);
        }
    }
    Ok(g)
}

/// Graph 2, for tensor encodings.
pub fn build_blg_tensor(enc: &SparseEncoding) -> Result<ColoredGraph> {
    build_blg_tensor_with(enc, &label_coefficients(enc))
}

/// Graph 2 with a caller-supplied labelling.
///
/// Equation copies as in Graph 1; the constant and variables get a base
/// layer and one copy layer. Constant entries attach to the base constant,
/// linear entries to the base variable and the constant copy, squares to
/// the variable copy (plus a loop there), and bilinear entries to both
/// variable copies, which are also joined to each other.
pub fn build_blg_tensor_with(enc: &SparseEncoding, labels: &LabelMap) -> Result<ColoredGraph> {
    check_kind(enc, EncodingKind::Tensor)?;
    let layers = labels.graph_layers();
    let rows = enc.num_equations;
    let mut b = Builder::new();
    b.equations(rows, layers);
    let base = b.columns(&enc.classes, layers, true);
    let copy = b.columns(&enc.classes, layers + 1, false);
    let mut g = b.finish(layers + 2);
    let eq = |t: u32, k: usize| t as usize * rows + k;
    for k in 0..rows {
        for t in 1..layers {
            g.add_edge(eq(t - 1, k), eq(t, k));
        }
    }
    for c in 0..=enc.num_vars {
        g.add_edge(base + c, copy + c);
    }
    for (k, i, j, v) in enc.entries() {
        for t in labels.layer_set(&v, layers)? {
            let e = eq(t, k);
            match (i, j) {
                (0, 0) => g.add_edge(e, base),
                (0, j) => {
                    g.add_edge(e, base + j);
                    g.add_edge(e, copy);
                }
                (i, j) if i == j => {
                    g.add_edge(e, copy + i);
                    g.add_edge(copy + i, copy + i);
                }
                (i, j) => {
                    g.add_edge(e, copy + i);
                    g.add_edge(e, copy + j);
                    g.add_edge(copy + i, copy + j);
                }
            }
        }
    }
    Ok(g)
}
