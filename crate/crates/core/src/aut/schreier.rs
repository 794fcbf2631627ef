//! Base and strong generating set (Schreier–Sims) for membership tests and
//! exact group orders.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::model::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Strong generators first introduced at this level.
    gens: Vec<Permutation>,
    /// `point -> u` with `u(base) = point`.
    transversal: BTreeMap<usize, Permutation>,
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    pub fn from_generators<'a>(
        degree: usize,
        gens: impl IntoIterator<Item = &'a Permutation>,
    ) -> Self {
        let mut chain = StabChain::new(degree);
        for g in gens {
            chain.insert(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds `g` to the group; returns false when it was already a member.
    pub fn insert(&mut self, g: &Permutation) -> bool {
        let (residue, level) = self.sift(g.clone(), 0);
        if residue.is_identity() {
            return false;
        }
        self.push_generator(level, residue);
        self.complete();
        true
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g.clone(), 0).0.is_identity()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| {
            acc * BigUint::from(l.transversal.len())
        })
    }

    pub fn strong_generators(&self) -> impl Iterator<Item = &Permutation> {
        self.levels.iter().flat_map(|l| l.gens.iter())
    }

    fn sift(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            match level.transversal.get(&g.apply(level.base)) {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    fn push_generator(&mut self, level: usize, h: Permutation) {
        if level == self.levels.len() {
            let base = h.support().next().expect("non-identity residue");
            self.levels.push(Level {
                base,
                gens: Vec::new(),
                transversal: BTreeMap::new(),
            });
        }
        self.levels[level].gens.push(h);
    }

    fn rebuild_orbit(&mut self, level: usize) {
        let gens: Vec<Permutation> = self.levels[level..]
            .iter()
            .flat_map(|l| l.gens.iter().cloned())
            .collect();
        let base = self.levels[level].base;
        let mut transversal = BTreeMap::new();
        transversal.insert(base, Permutation::identity(self.degree));
        let mut queue = vec![base];
        while let Some(b) = queue.pop() {
            let ub = transversal[&b].clone();
            for s in &gens {
                let c = s.apply(b);
                if let std::collections::btree_map::Entry::Vacant(e) = transversal.entry(c) {
                    e.insert(ub.then(s));
                    queue.push(c);
                }
            }
        }
        self.levels[level].transversal = transversal;
    }

    /// Repeats Schreier-generator sifting until every level is closed.
    fn complete(&mut self) {
        'restart: loop {
            for level in (0..self.levels.len()).rev() {
                self.rebuild_orbit(level);
            }
            for level in (0..self.levels.len()).rev() {
                let gens: Vec<Permutation> = self.levels[level..]
                    .iter()
                    .flat_map(|l| l.gens.iter().cloned())
                    .collect();
                let reps: Vec<(usize, Permutation)> = self.levels[level]
                    .transversal
                    .iter()
                    .map(|(b, u)| (*b, u.clone()))
                    .collect();
                for (b, ub) in &reps {
                    for s in &gens {
                        let usb = &self.levels[level].transversal[&s.apply(*b)];
                        let schreier = ub.then(s).then(&usb.inverse());
                        if schreier.is_identity() {
                            continue;
                        }
                        let (residue, at) = self.sift(schreier, level + 1);
                        if !residue.is_identity() {
                            self.push_generator(at, residue);
                            continue 'restart;
                        }
                    }
                }
            }
            return;
        }
    }
}
