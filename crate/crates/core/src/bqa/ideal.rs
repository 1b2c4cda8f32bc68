//! Two-sided ideals of a path algebra, kept as echelonized sparse path vectors.

use std::collections::{BTreeMap, VecDeque};

use super::Arrow;
use crate::exactla::{Field, Scalar};

/// Deglex key: shorter paths first, then lexicographic in arrow indices.
pub(crate) type PathKey = (usize, Vec<usize>);

pub(crate) type PathVec = BTreeMap<PathKey, Scalar>;

pub(crate) fn key(word: &[usize]) -> PathKey {
    (word.len(), word.to_vec())
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Cut {
    /// Drop a product entirely when one of its terms is longer than the limit.
    Discard(usize),
    /// Drop terms of length at least the limit (valid once those paths are known to vanish).
    Truncate(usize),
}

pub(crate) struct IdealSpan<'a> {
    field: Field,
    arrows: &'a [Arrow],
    cut: Cut,
    pivots: BTreeMap<PathKey, PathVec>,
}

fn axpy(field: Field, acc: &mut PathVec, c: &Scalar, v: &PathVec) {
    for (k, x) in v {
        let add = field.mul(c, x);
        let e = acc.entry(k.clone()).or_insert_with(|| field.zero());
        *e = field.add(e, &add);
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

impl<'a> IdealSpan<'a> {
    pub(crate) fn new(field: Field, arrows: &'a [Arrow], cut: Cut) -> Self {
        IdealSpan {
            field,
            arrows,
            cut,
            pivots: BTreeMap::new(),
        }
    }

    /// Eliminates every pivot path from `v`.
    pub(crate) fn reduce(&self, mut v: PathVec) -> PathVec {
        let mut bound: Option<PathKey> = None;
        loop {
            let next = v
                .keys()
                .rev()
                .filter(|k| bound.as_ref().is_none_or(|b| *k < b))
                .find(|k| self.pivots.contains_key(*k))
                .cloned();
            let Some(k) = next else { break };
            let c = self.field.neg(&v[&k]);
            axpy(self.field, &mut v, &c, &self.pivots[&k]);
            bound = Some(k);
        }
        v
    }

    pub(crate) fn contains_path(&self, word: &[usize]) -> bool {
        let mut v = PathVec::new();
        v.insert(key(word), self.field.one());
        self.reduce(v).is_empty()
    }

    pub(crate) fn is_pivot(&self, k: &PathKey) -> bool {
        self.pivots.contains_key(k)
    }

    /// Adds `v` to the span; returns the stored (normalized) vector if it was new.
    fn insert(&mut self, v: PathVec) -> Option<PathVec> {
        let v = self.reduce(v);
        let (lead, c) = v.iter().next_back()?;
        let lead = lead.clone();
        let inv = self.field.inv(c).expect("nonzero leading coefficient");
        let v: PathVec = v.into_iter().map(|(k, x)| (k, self.field.mul(&x, &inv))).collect();
        self.pivots.insert(lead, v.clone());
        Some(v)
    }

    fn endpoints(&self, v: &PathVec) -> (usize, usize) {
        let (_, w) = v.keys().next().expect("nonzero vector");
        (self.arrows[w[0]].source, self.arrows[*w.last().unwrap()].target)
    }

    fn cut(&self, v: PathVec) -> Option<PathVec> {
        match self.cut {
            Cut::Discard(l) => (v.keys().all(|(n, _)| *n <= l)).then_some(v),
            Cut::Truncate(l) => {
                let v: PathVec = v.into_iter().filter(|((n, _), _)| *n < l).collect();
                (!v.is_empty()).then_some(v)
            }
        }
    }

    /// Adds the generators and closes the span under multiplication by arrows on both sides.
    pub(crate) fn close(&mut self, gens: Vec<PathVec>) -> Vec<PathVec> {
        let mut queue = VecDeque::new();
        let mut fresh = Vec::new();
        for g in gens {
            if let Some(g) = self.cut(g) {
                if let Some(s) = self.insert(g) {
                    fresh.push(s.clone());
                    queue.push_back(s);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            let (s, t) = self.endpoints(&v);
            for (ai, a) in self.arrows.iter().enumerate() {
                let mut products = Vec::new();
                if a.source == t {
                    products.push(
                        v.iter()
                            .map(|((n, w), c)| {
                                let mut w = w.clone();
                                w.push(ai);
                                ((n + 1, w), c.clone())
                            })
                            .collect::<PathVec>(),
                    );
                }
                if a.target == s {
                    products.push(
                        v.iter()
                            .map(|((n, w), c)| {
                                let mut x = vec![ai];
                                x.extend_from_slice(w);
                                ((n + 1, x), c.clone())
                            })
                            .collect::<PathVec>(),
                    );
                }
                for p in products {
                    if let Some(p) = self.cut(p) {
                        if let Some(s) = self.insert(p) {
                            queue.push_back(s);
                        }
                    }
                }
            }
        }
        fresh
    }
}
