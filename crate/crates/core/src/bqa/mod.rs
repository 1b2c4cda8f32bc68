//! Finite-dimensional bound quiver algebras `kQ/I`.
//!
//! Paths compose left to right: the word `[a, b]` means `a` first, then `b`.
//! This matches right modules, where a vector at the source of `a` is sent
//! to the target of `a`.

mod ideal;
mod structure;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{ExactMatrix, Field, Scalar};

use ideal::{key, Cut, IdealSpan, PathVec};
pub use structure::{BlockAlgebra, Derived};

pub const DEFAULT_PATH_BOUND: usize = 12;

/// Sparse algebra element: `(basis index, coefficient)`, sorted, no zero coefficients.
pub type Elem = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A linear combination of parallel paths, each given as a word of arrow indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    pub bound: usize,
}

impl Presentation {
    pub fn new(field: Field) -> Self {
        Presentation {
            field,
            vertices: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
            bound: DEFAULT_PATH_BOUND,
        }
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<usize> {
        if self.vertices.iter().any(|v| v == label) {
            return Err(Error::InvalidArgument(format!("duplicate vertex `{label}`")));
        }
        self.vertices.push(label.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<usize> {
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(Error::InvalidArgument(format!("duplicate arrow `{name}`")));
        }
        let source = self.vertex_index(source)?;
        let target = self.vertex_index(target)?;
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        Ok(self.arrows.len() - 1)
    }

    pub fn add_relation(&mut self, terms: Vec<(Scalar, Vec<usize>)>) -> Result<()> {
        let rel = Relation { terms };
        self.check_relation(&rel)?;
        self.relations.push(rel);
        Ok(())
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    /// Source and target of a nonempty composable word.
    pub fn word_endpoints(&self, word: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows.get(*word.first()?)?;
        let mut t = first.target;
        for &a in &word[1..] {
            let a = self.arrows.get(a)?;
            if a.source != t {
                return None;
            }
            t = a.target;
        }
        Some((first.source, t))
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        word.iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn format_relation(&self, rel: &Relation) -> String {
        let mut out = String::new();
        for (i, (c, w)) in rel.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&format!("{} {}", c, self.format_word(w)));
        }
        out
    }

    fn check_relation(&self, rel: &Relation) -> Result<()> {
        let bad = |m: String| Error::InvalidArgument(m);
        let mut ends = None;
        if rel.terms.is_empty() {
            return Err(bad("empty relation".into()));
        }
        for (c, w) in &rel.terms {
            if !self.field.is_member(c) {
                return Err(bad(format!("coefficient {c} is not in {}", self.field)));
            }
            let e = self
                .word_endpoints(w)
                .ok_or_else(|| bad(format!("`{}` is not a path", self.format_word(w))))?;
            if w.len() < 2 {
                return Err(bad(format!(
                    "relation term `{}` has length below 2",
                    self.format_word(w)
                )));
            }
            if *ends.get_or_insert(e) != e {
                return Err(bad(format!(
                    "relation `{}` mixes paths with different endpoints",
                    self.format_relation(rel)
                )));
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate vertex `{v}`")));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if self.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidArgument(format!("duplicate arrow `{}`", a.name)));
            }
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(Error::InvalidArgument(format!("arrow `{}` has a bad endpoint", a.name)));
            }
        }
        for r in &self.relations {
            self.check_relation(r)?;
        }
        if self.bound == 0 {
            return Err(Error::InvalidArgument("path length bound must be positive".into()));
        }
        Ok(())
    }

    /// The presentation of the opposite algebra: arrows and relation words reversed.
    pub fn opposite(&self) -> Presentation {
        Presentation {
            field: self.field,
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    terms: r
                        .terms
                        .iter()
                        .map(|(c, w)| (c.clone(), w.iter().rev().copied().collect()))
                        .collect(),
                })
                .collect(),
            bound: self.bound,
        }
    }

    /// All paths of the given positive length, in lexicographic order of arrow indices.
    pub(crate) fn paths_of_length(&self, len: usize) -> Vec<Vec<usize>> {
        let mut level: Vec<Vec<usize>> = (0..self.arrows.len()).map(|a| vec![a]).collect();
        for _ in 1..len {
            let mut next = Vec::new();
            for w in &level {
                let t = self.arrows[*w.last().unwrap()].target;
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == t {
                        let mut x = w.clone();
                        x.push(ai);
                        next.push(x);
                    }
                }
            }
            level = next;
        }
        if len == 0 {
            Vec::new()
        } else {
            level
        }
    }
}

/// A basis element: a path from `source` to `target` (the empty word is `e_source`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisPath {
    pub source: usize,
    pub target: usize,
    pub word: Vec<usize>,
}

/// A bound quiver algebra with a path basis and its structure constants.
#[derive(Clone, Debug)]
pub struct Algebra {
    presentation: Presentation,
    basis: Vec<BasisPath>,
    table: Vec<Vec<Elem>>,
    idempotents: Vec<usize>,
    arrow_basis: Vec<usize>,
    pair_basis: Vec<Vec<Vec<usize>>>,
    vanishing_length: usize,
    opposite: OnceLock<Arc<Algebra>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation && self.basis == other.basis && self.table == other.table
    }
}

impl Eq for Algebra {}

fn add_scaled(field: Field, acc: &mut BTreeMap<usize, Scalar>, c: &Scalar, v: &Elem) {
    for (i, x) in v {
        let add = field.mul(c, x);
        let e = acc.entry(*i).or_insert_with(|| field.zero());
        *e = field.add(e, &add);
    }
}

fn finish(acc: BTreeMap<usize, Scalar>) -> Elem {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Builds `kQ/I` from a presentation.
///
/// Fails with `NonAdmissible` unless every path of some length at most the
/// presentation's bound lies in the ideal.
pub fn build_algebra(p: &Presentation) -> Result<Algebra> {
    p.validate()?;
    let field = p.field;
    let gens: Vec<PathVec> = p
        .relations
        .iter()
        .map(|r| {
            let mut v = PathVec::new();
            for (c, w) in &r.terms {
                let e = v.entry(key(w)).or_insert_with(|| field.zero());
                *e = field.add(e, c);
            }
            v.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        })
        .filter(|v: &PathVec| !v.is_empty())
        .collect();
    let longest = p
        .relations
        .iter()
        .flat_map(|r| r.terms.iter().map(|(_, w)| w.len()))
        .max()
        .unwrap_or(0);
    if longest > p.bound {
        return Err(Error::InvalidArgument(format!(
            "relation of length {longest} exceeds the path length bound {}",
            p.bound
        )));
    }

    // Certify that some length's paths all lie in the ideal, using only
    // products whose terms stay within the bound (so nothing is assumed).
    let mut certified = IdealSpan::new(field, &p.arrows, Cut::Discard(p.bound));
    certified.close(gens.clone());
    let mut vanishing = None;
    for len in 1..=p.bound {
        if p.paths_of_length(len).iter().all(|w| certified.contains_path(w)) {
            vanishing = Some(len);
            break;
        }
    }
    let Some(vanishing) = vanishing else {
        let bad = p
            .paths_of_length(p.bound)
            .into_iter()
            .find(|w| !certified.contains_path(w))
            .expect("some path escapes the ideal");
        return Err(Error::NonAdmissible {
            bound: p.bound,
            path: p.format_word(&bad),
        });
    };
    drop(certified);

    let mut ideal = IdealSpan::new(field, &p.arrows, Cut::Truncate(vanishing));
    ideal.close(gens);

    let n = p.vertices.len();
    let mut basis: Vec<BasisPath> = (0..n)
        .map(|v| BasisPath {
            source: v,
            target: v,
            word: vec![],
        })
        .collect();
    for len in 1..vanishing {
        for w in p.paths_of_length(len) {
            if !ideal.is_pivot(&key(&w)) {
                let (s, t) = p.word_endpoints(&w).unwrap();
                basis.push(BasisPath {
                    source: s,
                    target: t,
                    word: w,
                });
            }
        }
    }
    let index: HashMap<Vec<usize>, usize> = basis
        .iter()
        .enumerate()
        .skip(n)
        .map(|(i, b)| (b.word.clone(), i))
        .collect();
    let normal_form = |w: &[usize]| -> Elem {
        if w.len() >= vanishing {
            return vec![];
        }
        let mut v = PathVec::new();
        v.insert(key(w), field.one());
        let mut out: Elem = ideal.reduce(v).into_iter().map(|((_, w), c)| (index[&w], c)).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    };

    let dim = basis.len();
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let (bi, bj) = (&basis[i], &basis[j]);
            if bi.target != bj.source {
                continue;
            }
            table[i][j] = if bi.word.is_empty() {
                vec![(j, field.one())]
            } else if bj.word.is_empty() {
                vec![(i, field.one())]
            } else {
                let mut w = bi.word.clone();
                w.extend_from_slice(&bj.word);
                normal_form(&w)
            };
        }
    }
    let arrow_basis = p.arrows.iter().map(|a| index[&vec![arrow_pos(p, a)]]).collect();
    let alg = Algebra::assemble(p.clone(), basis, table, arrow_basis, vanishing);
    alg.check_associativity()?;
    Ok(alg)
}

fn arrow_pos(p: &Presentation, a: &Arrow) -> usize {
    p.arrows.iter().position(|b| b == a).unwrap()
}

impl Algebra {
    fn assemble(
        presentation: Presentation,
        basis: Vec<BasisPath>,
        table: Vec<Vec<Elem>>,
        arrow_basis: Vec<usize>,
        vanishing_length: usize,
    ) -> Algebra {
        let n = presentation.vertices.len();
        let mut pair_basis = vec![vec![Vec::new(); n]; n];
        for (i, b) in basis.iter().enumerate() {
            pair_basis[b.source][b.target].push(i);
        }
        let idempotents = (0..n)
            .map(|v| basis.iter().position(|b| b.word.is_empty() && b.source == v).unwrap())
            .collect();
        Algebra {
            presentation,
            basis,
            table,
            idempotents,
            arrow_basis,
            pair_basis,
            vanishing_length,
            opposite: OnceLock::new(),
        }
    }

    /// Shared handle to the opposite algebra, built once.
    pub fn opposite_arc(&self) -> Arc<Algebra> {
        self.opposite.get_or_init(|| Arc::new(self.opposite())).clone()
    }

    pub fn field(&self) -> Field {
        self.presentation.field
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.presentation.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.presentation.vertices
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.presentation.vertices[v]
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.presentation.vertex_index(label)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.presentation.arrows
    }

    pub fn basis(&self) -> &[BasisPath] {
        &self.basis
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn arrow_basis_index(&self, a: usize) -> usize {
        self.arrow_basis[a]
    }

    /// Basis indices of the paths from `s` to `t`, in basis order.
    pub fn pair_basis(&self, s: usize, t: usize) -> &[usize] {
        &self.pair_basis[s][t]
    }

    /// Every path of this length is zero in the algebra.
    pub fn vanishing_length(&self) -> usize {
        self.vanishing_length
    }

    pub fn product(&self, i: usize, j: usize) -> &Elem {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let field = self.field();
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                let t = &self.table[*i][*j];
                if !t.is_empty() {
                    add_scaled(field, &mut acc, &field.mul(a, b), t);
                }
            }
        }
        finish(acc)
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        let field = self.field();
        let mut acc = BTreeMap::new();
        add_scaled(field, &mut acc, &field.one(), x);
        add_scaled(field, &mut acc, &field.one(), y);
        finish(acc)
    }

    pub fn scale(&self, c: &Scalar, x: &Elem) -> Elem {
        let field = self.field();
        let mut acc = BTreeMap::new();
        add_scaled(field, &mut acc, c, x);
        finish(acc)
    }

    pub fn basis_elem(&self, i: usize) -> Elem {
        vec![(i, self.field().one())]
    }

    /// The element represented by a composable word of arrows.
    pub fn path_element(&self, word: &[usize]) -> Elem {
        let Some(&first) = word.first() else {
            panic!("empty word has no vertex");
        };
        let mut x = self.basis_elem(self.arrow_basis[first]);
        for &a in &word[1..] {
            x = self.mul(&x, &self.basis_elem(self.arrow_basis[a]));
        }
        x
    }

    pub fn format_basis(&self, i: usize) -> String {
        let b = &self.basis[i];
        if b.word.is_empty() {
            format!("e_{}", self.vertex_label(b.source))
        } else {
            self.presentation.format_word(&b.word)
        }
    }

    /// `C[s][t] = dim e_s A e_t`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        self.pair_basis
            .iter()
            .map(|row| row.iter().map(|v| v.len()).collect())
            .collect()
    }

    /// Unit law, orthogonality of the vertex idempotents and associativity;
    /// exhaustive up to dimension 64, sampled above.
    pub fn check_associativity(&self) -> Result<()> {
        let dim = self.dim();
        let field = self.field();
        let one: Elem = {
            let mut acc = BTreeMap::new();
            for &e in &self.idempotents {
                add_scaled(field, &mut acc, &field.one(), &self.basis_elem(e));
            }
            finish(acc)
        };
        for i in 0..dim {
            let x = self.basis_elem(i);
            if self.mul(&one, &x) != x || self.mul(&x, &one) != x {
                return Err(Error::invariant(format!("unit law fails on {}", self.format_basis(i))));
            }
        }
        let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if dim <= 64 {
            Box::new((0..dim).flat_map(move |i| (0..dim).flat_map(move |j| (0..dim).map(move |k| (i, j, k)))))
        } else {
            // deterministic stride sample
            Box::new((0..20_000usize).map(move |n| {
                let h = n.wrapping_mul(2_654_435_761);
                (h % dim, (h / dim) % dim, (h / (dim * dim)) % dim)
            }))
        };
        for (i, j, k) in triples {
            let (bi, bj, bk) = (&self.basis[i], &self.basis[j], &self.basis[k]);
            if bi.target != bj.source || bj.target != bk.source {
                continue;
            }
            let left = self.mul(&self.table[i][j], &self.basis_elem(k));
            let right = self.mul(&self.basis_elem(i), &self.table[j][k]);
            if left != right {
                return Err(Error::invariant(format!(
                    "associativity fails on ({}, {}, {})",
                    self.format_basis(i),
                    self.format_basis(j),
                    self.format_basis(k)
                )));
            }
        }
        Ok(())
    }

    /// `A^op` on the same basis, with reversed words and transposed structure constants.
    pub fn opposite(&self) -> Algebra {
        let basis = self
            .basis
            .iter()
            .map(|b| BasisPath {
                source: b.target,
                target: b.source,
                word: b.word.iter().rev().copied().collect(),
            })
            .collect();
        let dim = self.dim();
        let table = (0..dim)
            .map(|i| (0..dim).map(|j| self.table[j][i].clone()).collect())
            .collect();
        Algebra::assemble(
            self.presentation.opposite(),
            basis,
            table,
            self.arrow_basis.clone(),
            self.vanishing_length,
        )
    }

    fn vertex_subset(&self, verts: &[usize]) -> Result<Vec<usize>> {
        let mut v = verts.to_vec();
        v.sort_unstable();
        v.dedup();
        if let Some(&bad) = v.iter().find(|&&x| x >= self.num_vertices()) {
            return Err(Error::InvalidArgument(format!("no vertex with index {bad}")));
        }
        Ok(v)
    }

    /// The structure-constant description of `eAe` for `e` the sum of the given idempotents.
    pub fn corner_blocks(&self, verts: &[usize]) -> Result<BlockAlgebra> {
        let verts = self.vertex_subset(verts)?;
        let field = self.field();
        let spaces: Vec<Vec<ExactMatrix>> = verts
            .iter()
            .map(|&s| {
                verts
                    .iter()
                    .map(|&t| {
                        let idx = &self.pair_basis[s][t];
                        let n = idx.len();
                        let mut m = ExactMatrix::zeros(field, n, self.dim());
                        for (r, &i) in idx.iter().enumerate() {
                            m.set(r, i, &field.one());
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        let names = verts
            .iter()
            .map(|&s| {
                verts
                    .iter()
                    .map(|&t| {
                        self.pair_basis[s][t]
                            .iter()
                            .map(|&i| {
                                Some(
                                    self.basis[i]
                                        .word
                                        .iter()
                                        .map(|&a| self.arrows()[a].name.as_str())
                                        .collect::<String>(),
                                )
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(BlockAlgebra::from_subquotient(self, &verts, spaces, None, names))
    }

    /// `eAe`, re-presented by a quiver with relations.
    pub fn corner(&self, verts: &[usize]) -> Result<Derived> {
        if verts.is_empty() {
            return Err(Error::InvalidArgument("corner needs at least one vertex".into()));
        }
        self.corner_blocks(verts)?.derive_presentation()
    }

    /// Basis of `e_s (AeA) e_t` inside `e_s A e_t`, as rows over the full basis.
    pub fn idempotent_ideal_part(&self, verts: &[usize], s: usize, t: usize) -> ExactMatrix {
        let field = self.field();
        let mut rows = Vec::new();
        for &v in verts {
            for &i in &self.pair_basis[s][v] {
                for &j in &self.pair_basis[v][t] {
                    let p = &self.table[i][j];
                    if !p.is_empty() {
                        rows.push(p.clone());
                    }
                }
            }
        }
        let mut m = ExactMatrix::zeros(field, rows.len(), self.dim());
        for (r, e) in rows.iter().enumerate() {
            for (i, c) in e {
                m.set(r, *i, c);
            }
        }
        m.row_space_basis()
    }

    /// Dimension of the two-sided ideal `AeA`.
    pub fn idempotent_ideal_dim(&self, verts: &[usize]) -> usize {
        let n = self.num_vertices();
        (0..n)
            .flat_map(|s| (0..n).map(move |t| (s, t)))
            .map(|(s, t)| self.idempotent_ideal_part(verts, s, t).rows())
            .sum()
    }

    /// `A/AeA` on the remaining vertices, re-presented by a quiver with relations.
    pub fn quotient_by_idempotents(&self, verts: &[usize]) -> Result<Derived> {
        Ok(self.quotient_by_idempotents_lifted(verts)?.0)
    }

    /// As [`Algebra::quotient_by_idempotents`], also returning for each pair of
    /// remaining vertices the basis paths (rows over the basis of `A`) that
    /// the block coordinates of the quotient refer to.
    pub fn quotient_by_idempotents_lifted(&self, verts: &[usize]) -> Result<(Derived, Vec<Vec<ExactMatrix>>)> {
        let verts = self.vertex_subset(verts)?;
        if verts.is_empty() {
            return Err(Error::InvalidArgument(
                "quotient by the empty idempotent is not supported".into(),
            ));
        }
        let rest: Vec<usize> = (0..self.num_vertices()).filter(|v| !verts.contains(v)).collect();
        let field = self.field();
        let mut spaces = Vec::new();
        let mut kills = Vec::new();
        for &s in &rest {
            let mut srow = Vec::new();
            let mut krow = Vec::new();
            for &t in &rest {
                let idx = &self.pair_basis[s][t];
                let mut full = ExactMatrix::zeros(field, idx.len(), self.dim());
                for (r, &i) in idx.iter().enumerate() {
                    full.set(r, i, &field.one());
                }
                let kill = self.idempotent_ideal_part(&verts, s, t);
                // complement of the ideal part, chosen among basis paths
                let mut chosen = kill.clone();
                let mut comp = Vec::new();
                for r in 0..full.rows() {
                    let cand = ExactMatrix::vstack(field, self.dim(), &[&chosen, &full.row(r)]);
                    if cand.rank() > chosen.rank() {
                        chosen = cand;
                        comp.push(r);
                    }
                }
                srow.push(full.select_rows(&comp));
                krow.push(kill);
            }
            spaces.push(srow);
            kills.push(krow);
        }
        let names = rest
            .iter()
            .enumerate()
            .map(|(si, _)| {
                rest.iter()
                    .enumerate()
                    .map(|(ti, _)| {
                        let sp: &ExactMatrix = &spaces[si][ti];
                        (0..sp.rows())
                            .map(|r| {
                                let i = (0..self.dim()).find(|&i| !sp.get(r, i).is_zero())?;
                                Some(
                                    self.basis[i]
                                        .word
                                        .iter()
                                        .map(|&a| self.arrows()[a].name.as_str())
                                        .collect::<String>(),
                                )
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let derived =
            BlockAlgebra::from_subquotient(self, &rest, spaces.clone(), Some(kills), names).derive_presentation()?;
        Ok((derived, spaces))
    }

    /// Whether two algebras are the same object (same presentation and structure constants).
    pub fn same_as(self: &Arc<Self>, other: &Arc<Algebra>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }

    /// Checks that `arrow_map` (arrows of `self` to arrows of `other`, vertices matched by
    /// position) extends to an algebra isomorphism; returns the basis change
    /// (row `i` = image of basis element `i` in `other`).
    pub fn arrow_map_isomorphism(&self, other: &Algebra, arrow_map: &[usize]) -> Option<ExactMatrix> {
        if self.dim() != other.dim()
            || self.num_vertices() != other.num_vertices()
            || arrow_map.len() != self.arrows().len()
            || self.field() != other.field()
        {
            return None;
        }
        for (a, &b) in arrow_map.iter().enumerate() {
            let (x, y) = (&self.arrows()[a], other.arrows().get(b)?);
            if x.source != y.source || x.target != y.target {
                return None;
            }
        }
        let field = self.field();
        let image = |i: usize| -> Elem {
            let b = &self.basis[i];
            if b.word.is_empty() {
                other.basis_elem(other.idempotent(b.source))
            } else {
                let w: Vec<usize> = b.word.iter().map(|&a| arrow_map[a]).collect();
                other.path_element(&w)
            }
        };
        let dim = self.dim();
        let mut t = ExactMatrix::zeros(field, dim, dim);
        let images: Vec<Elem> = (0..dim).map(image).collect();
        for (i, e) in images.iter().enumerate() {
            for (j, c) in e {
                t.set(i, *j, c);
            }
        }
        if t.rank() != dim {
            return None;
        }
        for i in 0..dim {
            for j in 0..dim {
                let lhs: Elem = {
                    let mut acc = BTreeMap::new();
                    for (k, c) in &self.table[i][j] {
                        add_scaled(field, &mut acc, c, &images[*k]);
                    }
                    finish(acc)
                };
                if other.mul(&images[i], &images[j]) != lhs {
                    return None;
                }
            }
        }
        Some(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf5() -> Field {
        Field::prime(5).unwrap()
    }

    fn pres(vertices: &[&str], arrows: &[(&str, &str, &str)], rels: &[&[&str]]) -> Presentation {
        let mut p = Presentation::new(gf5());
        for v in vertices {
            p.add_vertex(v).unwrap();
        }
        for (n, s, t) in arrows {
            p.add_arrow(n, s, t).unwrap();
        }
        for r in rels {
            let w = r.iter().map(|a| p.arrow_index(a).unwrap()).collect();
            p.add_relation(vec![(p.field.one(), w)]).unwrap();
        }
        p
    }

    /// Counts paths by brute force: all composable words modulo the monomial relations.
    fn monomial_path_count(p: &Presentation, max: usize) -> usize {
        let zero: Vec<Vec<usize>> = p.relations.iter().map(|r| r.terms[0].1.clone()).collect();
        let mut count = p.vertices.len();
        for len in 1..=max {
            for w in p.paths_of_length(len) {
                let killed = zero.iter().any(|z| w.windows(z.len()).any(|win| win == z.as_slice()));
                if !killed {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn semisimple_two_vertices() {
        let a = build_algebra(&pres(&["1", "2"], &[], &[])).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.cartan(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn a2_path_algebra() {
        let p = pres(&["1", "2"], &[("a", "1", "2")], &[]);
        let a = build_algebra(&p).unwrap();
        assert_eq!(a.dim(), monomial_path_count(&p, 12));
        assert_eq!(a.dim(), 3);
        let op = a.opposite();
        assert_eq!(op.arrows()[0].source, 1);
        assert_eq!(op.opposite(), a);
    }

    #[test]
    fn example_algebra_dimension() {
        let p = pres(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "1"), ("c", "2", "3"), ("d", "3", "2")],
            &[&["a", "b"], &["a", "c", "d", "b"], &["d", "c"], &["d", "b", "a", "c"]],
        );
        let a = build_algebra(&p).unwrap();
        let oracle = monomial_path_count(&p, 12);
        assert_eq!(a.dim(), oracle);
        assert_eq!(a.dim(), 17);
        assert_eq!(a.cartan(), vec![vec![1, 2, 1], vec![2, 5, 2], vec![1, 2, 1]]);
    }

    #[test]
    fn free_loop_is_not_admissible() {
        let p = pres(&["1"], &[("x", "1", "1")], &[]);
        assert!(matches!(build_algebra(&p), Err(Error::NonAdmissible { .. })));
        // x^2 = x^3 has a finite quotient but is not admissible
        let mut p = pres(&["1"], &[("x", "1", "1")], &[]);
        let f = p.field;
        p.add_relation(vec![(f.one(), vec![0, 0]), (f.from_i64(-1), vec![0, 0, 0])])
            .unwrap();
        assert!(matches!(build_algebra(&p), Err(Error::NonAdmissible { .. })));
    }

    #[test]
    fn commutative_square() {
        let mut p = pres(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "1", "3"), ("c", "2", "4"), ("d", "3", "4")],
            &[],
        );
        let f = p.field;
        p.add_relation(vec![(f.one(), vec![0, 2]), (f.from_i64(-1), vec![1, 3])])
            .unwrap();
        let a = build_algebra(&p).unwrap();
        // e's, four arrows, one surviving length-2 path
        assert_eq!(a.dim(), 9);
        let ac = a.path_element(&[0, 2]);
        let bd = a.path_element(&[1, 3]);
        assert_eq!(ac, bd);
    }

    #[test]
    fn quotient_of_a2() {
        let p = pres(&["1", "2"], &[("a", "1", "2")], &[]);
        let a = build_algebra(&p).unwrap();
        assert_eq!(a.idempotent_ideal_dim(&[0]), 2);
        let q = a.quotient_by_idempotents(&[0]).unwrap();
        assert_eq!(q.algebra.dim(), 1);
        assert_eq!(q.algebra.vertices(), &["2".to_string()]);
        let all = a.quotient_by_idempotents(&[0, 1]).unwrap();
        assert_eq!(all.algebra.dim(), 0);
        assert!(a.quotient_by_idempotents(&[]).is_err());
    }

    #[test]
    fn corner_of_everything_is_same_algebra() {
        let p = pres(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "1"), ("c", "2", "3"), ("d", "3", "2")],
            &[&["a", "b"], &["a", "c", "d", "b"], &["d", "c"], &["d", "b", "a", "c"]],
        );
        let a = build_algebra(&p).unwrap();
        let c = a.corner(&[0, 1, 2]).unwrap();
        assert_eq!(c.algebra.dim(), a.dim());
        assert_eq!(c.algebra.cartan(), a.cartan());
        let k = a.corner(&[2]).unwrap();
        assert_eq!(k.algebra.dim(), 1);
    }
}
