use std::fmt;

use crate::error::{Error, Result};

/// A bijection on `{0, .., n-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Builds a permutation from its image array, rejecting non-bijections.
    pub fn from_images(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            if i >= n || seen[i] {
                return Err(Error::Invariant(format!(
                    "image array {image:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { image })
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (k, &from) in cycle.iter().enumerate() {
                let to = cycle[(k + 1) % cycle.len()];
                if from >= n || to >= n {
                    return Err(Error::SizeMismatch {
                        expected: n,
                        found: from.max(to) + 1,
                    });
                }
                image[from] = to;
            }
        }
        Self::from_images(image)
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j] = i;
        }
        Permutation { image }
    }

    /// `self` followed by `other`: `i -> other(self(i))`.
    pub fn then(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            image: self.image.iter().map(|&j| other.image[j]).collect(),
        }
    }

    /// Moves the entry at position `i` to position `self(i)`.
    pub fn permute_point<T: Clone>(&self, point: &[T]) -> Vec<T> {
        let mut out = point.to_vec();
        for (i, value) in point.iter().enumerate() {
            out[self.image[i]] = value.clone();
        }
        out
    }

    /// Non-trivial cycles, each starting at its smallest element, sorted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.image.len()];
        let mut out = Vec::new();
        for start in 0..self.image.len() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.image[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.image[next];
            }
            out.push(cycle);
        }
        out
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.image
            .iter()
            .enumerate()
            .filter(|(i, j)| i != *j)
            .map(|(i, _)| i)
    }

    /// Cycle notation using the given names, `()` for the identity.
    pub fn to_cycle_string<S: AsRef<str>>(&self, names: &[S]) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let parts: Vec<&str> = c.iter().map(|&i| names[i].as_ref()).collect();
                format!("({})", parts.join(" "))
            })
            .collect()
    }

    /// Restriction to the invariant prefix `0..n`.
    pub fn restrict(&self, n: usize) -> Result<Self> {
        Self::from_images(self.image[..n].to_vec())
    }

    /// The same permutation acting on a larger domain, fixing the new points.
    pub fn extend(&self, n: usize) -> Self {
        let mut image = self.image.clone();
        image.extend(self.image.len()..n.max(self.image.len()));
        Permutation { image }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.degree()).map(|i| i.to_string()).collect();
        write!(f, "{}", self.to_cycle_string(&names))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Every permutation of `0..n` in lexicographic order of image arrays.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut next: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut a = current.clone();
        // standard next-permutation step
        if let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) {
            let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
            a.swap(i - 1, j);
            a[i..].reverse();
            next = Some(a);
        }
        Some(Permutation { image: current })
    })
}
