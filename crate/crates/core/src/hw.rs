//! Weight posets, standard and costandard modules, Δ-filtrations, the
//! highest-weight check, standarizable collections and the canonical poset.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bqa::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{ExactMatrix, Field, RowSpace, Scalar};
use crate::homalg::{ext_dim, global_dimension_bound_with_cap, Resolution, DEFAULT_RESOLUTION_CAP};
use crate::rep::{
    dualize_over, hom_dim, hom_space, is_isomorphic, projective_module, simple_module, IsoOptions, ModuleMorphism,
    Representation, Submodule,
};

/// A partial order on `0..n`, stored as its full `⪯` table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPoset {
    labels: Vec<String>,
    le: Vec<Vec<bool>>,
}

impl WeightPoset {
    /// The smallest partial order containing `a ≺ b` for each pair `(a, b)`.
    pub fn new(labels: Vec<String>, less: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in less {
            if a >= n || b >= n {
                return Err(Error::InvalidArgument(format!(
                    "weight index {} out of range",
                    a.max(b)
                )));
            }
            le[a][b] = true;
        }
        Self::from_relation(labels, le)
    }

    /// Reflexive-transitive closure of an arbitrary relation table.
    pub fn from_relation(labels: Vec<String>, mut le: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if le[i][j] && le[j][i] {
                    return Err(Error::CyclicRelation(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        Ok(WeightPoset { labels, le })
    }

    pub fn discrete(labels: Vec<String>) -> Self {
        Self::new(labels, &[]).expect("discrete order")
    }

    /// The total order `order[0] ≺ order[1] ≺ ...`.
    pub fn chain(labels: Vec<String>, order: &[usize]) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = order.windows(2).map(|w| (w[0], w[1])).collect();
        Self::new(labels, &pairs)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le[a][b] || self.le[b][a]
    }

    pub fn opposite(&self) -> Self {
        let n = self.len();
        let le = (0..n).map(|i| (0..n).map(|j| self.le[j][i]).collect()).collect();
        WeightPoset {
            labels: self.labels.clone(),
            le,
        }
    }

    /// `{μ : μ ⪯ λ}`.
    pub fn lower_ideal(&self, l: usize) -> Vec<usize> {
        (0..self.len()).filter(|&m| self.le[m][l]).collect()
    }

    /// `{μ : μ ⪰ λ}`.
    pub fn upper_ideal(&self, l: usize) -> Vec<usize> {
        (0..self.len()).filter(|&m| self.le[l][m]).collect()
    }

    pub fn is_lower_ideal(&self, set: &[usize]) -> bool {
        set.iter()
            .all(|&l| (0..self.len()).all(|m| !self.le[m][l] || set.contains(&m)))
    }

    /// Whether every relation of `other` also holds here.
    pub fn dominates(&self, other: &WeightPoset) -> bool {
        let n = self.len();
        n == other.len() && (0..n).all(|i| (0..n).all(|j| !other.le[i][j] || self.le[i][j]))
    }

    /// Strict covering pairs `(a, b)` with `a ≺ b` and nothing in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Some linear extension, smallest index first among minimal elements.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut done = vec![false; n];
        let mut out = Vec::new();
        while out.len() < n {
            let next = (0..n)
                .find(|&i| !done[i] && (0..n).all(|j| done[j] || j == i || !self.le[j][i]))
                .expect("finite poset has a minimal element");
            done[next] = true;
            out.push(next);
        }
        out
    }

    /// All total orders on `0..n` extending this one, as lists from bottom to top.
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        fn go(p: &WeightPoset, done: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let n = p.len();
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for i in 0..n {
                if !done[i] && (0..n).all(|j| done[j] || j == i || !p.le[j][i]) {
                    done[i] = true;
                    cur.push(i);
                    go(p, done, cur, out);
                    cur.pop();
                    done[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut vec![false; self.len()], &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for WeightPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.covers();
        if c.is_empty() {
            return write!(f, "discrete");
        }
        let parts: Vec<String> = c
            .iter()
            .map(|(a, b)| format!("{} < {}", self.labels[*a], self.labels[*b]))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

fn vertex_poset_check(alg: &Algebra, poset: &WeightPoset) -> Result<()> {
    if poset.len() != alg.num_vertices() {
        return Err(Error::InvalidArgument(format!(
            "poset has {} weights but the algebra has {} vertices",
            poset.len(),
            alg.num_vertices()
        )));
    }
    Ok(())
}

/// `Δ(λ) = P(λ) / trace of {P(ν) : ν ⋠ λ}`.
///
/// A single trace suffices: any morphism from `P(ν)` into a quotient of
/// `P(λ)` lifts to `P(λ)`, so the quotient has no factor `L(ν)` with `ν ⋠ λ`.
pub fn standard_module(alg: &Arc<Algebra>, poset: &WeightPoset, l: usize) -> Result<Representation> {
    vertex_poset_check(alg, poset)?;
    let p = projective_module(alg, l);
    let out: Vec<usize> = (0..poset.len()).filter(|&v| !poset.le(v, l)).collect();
    let tr = p.trace_of_projectives(&out);
    let d = p.quotient(&tr).module;
    let factors = d.composition_factors();
    if factors.iter().enumerate().any(|(v, &c)| c > 0 && !poset.le(v, l)) || factors[l] == 0 {
        return Err(Error::invariant("standard module has a factor outside the lower ideal"));
    }
    Ok(d)
}

pub fn standard_modules(alg: &Arc<Algebra>, poset: &WeightPoset) -> Result<Vec<Representation>> {
    (0..poset.len()).map(|l| standard_module(alg, poset, l)).collect()
}

/// `∇(λ) = D Δ^{op}(λ)`, with the standard module taken over the opposite algebra.
pub fn costandard_module(alg: &Arc<Algebra>, poset: &WeightPoset, l: usize) -> Result<Representation> {
    let op = alg.opposite_arc();
    let d = standard_module(&op, poset, l)?;
    let n = dualize_over(&d, alg.clone());
    let soc = n.socle().module;
    if soc.dim_at(l) == 0 {
        return Err(Error::invariant("costandard module does not contain its simple"));
    }
    Ok(n)
}

pub fn costandard_modules(alg: &Arc<Algebra>, poset: &WeightPoset) -> Result<Vec<Representation>> {
    (0..poset.len()).map(|l| costandard_module(alg, poset, l)).collect()
}

/// Limits of the filtration search.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Maximal number of surjections tried.
    pub budget: usize,
    pub seed: u64,
    /// Limits for isomorphism tests between computed modules.
    pub iso: IsoOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 1_000_000,
            seed: 7,
            iso: IsoOptions::default(),
        }
    }
}

/// `0 = M_0 ⊂ M_1 ⊂ ... ⊂ M_n = M` with `M_i / M_{i-1} ≅ Δ(λ_i)`.
#[derive(Clone, Debug)]
pub struct FiltrationWitness {
    pub module: Representation,
    /// `M_1, ..., M_n` as submodules of `M`.
    pub chain: Vec<Submodule>,
    /// `λ_1, ..., λ_n`.
    pub weights: Vec<usize>,
    /// Surjections `M_i -> Δ(λ_i)` with kernel `M_{i-1}`.
    pub maps: Vec<ModuleMorphism>,
}

impl FiltrationWitness {
    /// Rechecks nesting, the kernels and the surjectivity of every factor map.
    pub fn verify(&self, deltas: &[Representation]) -> bool {
        let nv = self.module.dims().len();
        let mut prev: Option<&Submodule> = None;
        for (i, s) in self.chain.iter().enumerate() {
            let f = &self.maps[i];
            let d = &deltas[self.weights[i]];
            if f.source != s.module || f.target != *d || !f.is_valid() || !f.is_surjective() {
                return false;
            }
            for v in 0..nv {
                let below = prev.map_or(0, |p| p.module.dim_at(v));
                if s.module.dim_at(v) != below + d.dim_at(v) {
                    return false;
                }
                if let Some(p) = prev {
                    let here = &s.inclusion.blocks[v];
                    let Some(coords) = here.solve_left(&p.inclusion.blocks[v]) else {
                        return false;
                    };
                    if !coords.mul(&f.blocks[v]).is_zero() {
                        return false;
                    }
                }
            }
            prev = Some(s);
        }
        match prev {
            None => self.module.is_zero(),
            Some(top) => (0..nv).all(|v| {
                top.module.dim_at(v) == self.module.dim_at(v) && top.inclusion.blocks[v].rank() == self.module.dim_at(v)
            }),
        }
    }
}

/// Outcome of a filtration search.
#[derive(Clone, Debug)]
pub enum Filtration {
    Found(FiltrationWitness),
    /// Every branch was explored (or a structural criterion certified the negative).
    Absent {
        nodes: usize,
    },
}

impl Filtration {
    pub fn is_found(&self) -> bool {
        matches!(self, Filtration::Found(_))
    }

    pub fn witness(&self) -> Option<&FiltrationWitness> {
        match self {
            Filtration::Found(w) => Some(w),
            Filtration::Absent { .. } => None,
        }
    }
}

/// Searches for a filtration of `m` with factors among `deltas`.
///
/// Over a finite field this is an exhaustive backtracking search over
/// surjections onto the `Δ`'s. Over the rationals surjections cannot be
/// enumerated, and the layers are peeled off as traces along `poset`, which
/// is exact for standarizable collections.
pub fn delta_filtration(
    m: &Representation,
    deltas: &[Representation],
    poset: &WeightPoset,
    opts: &SearchOptions,
) -> Result<Filtration> {
    let all: Vec<usize> = (0..deltas.len()).collect();
    filtration_among(m, deltas, &all, poset, opts)
}

/// As [`delta_filtration`], with factors restricted to the weights in `allowed`.
pub fn filtration_among(
    m: &Representation,
    deltas: &[Representation],
    allowed: &[usize],
    poset: &WeightPoset,
    opts: &SearchOptions,
) -> Result<Filtration> {
    match m.field() {
        Field::Prime(_) => Search::new(m, deltas, allowed, opts).run(),
        Field::Rationals => peel(m, deltas, allowed, poset),
    }
}

struct Search<'a> {
    module: &'a Representation,
    deltas: &'a [Representation],
    order: Vec<usize>,
    budget: usize,
    nodes: usize,
    failed: HashSet<Vec<RowSpace>>,
    solvable: HashMap<Vec<usize>, bool>,
    rng: ChaCha8Rng,
}

impl<'a> Search<'a> {
    fn new(m: &'a Representation, deltas: &'a [Representation], allowed: &[usize], opts: &SearchOptions) -> Self {
        let mut order: Vec<usize> = allowed.iter().copied().filter(|&l| !deltas[l].is_zero()).collect();
        order.sort_by_key(|&l| (std::cmp::Reverse(deltas[l].total_dim()), l));
        Search {
            module: m,
            deltas,
            order,
            budget: opts.budget,
            nodes: 0,
            failed: HashSet::new(),
            solvable: HashMap::new(),
            rng: ChaCha8Rng::seed_from_u64(opts.seed),
        }
    }

    fn run(mut self) -> Result<Filtration> {
        let top = self.module.identity();
        let whole = Submodule {
            module: self.module.clone(),
            inclusion: top,
        };
        let mut steps = Vec::new();
        if self.descend(&whole, &mut steps)? {
            steps.reverse();
            let (chain, rest): (Vec<Submodule>, Vec<(usize, ModuleMorphism)>) =
                steps.into_iter().map(|(s, l, f)| (s, (l, f))).unzip();
            let (weights, maps) = rest.into_iter().unzip();
            Ok(Filtration::Found(FiltrationWitness {
                module: self.module.clone(),
                chain,
                weights,
                maps,
            }))
        } else {
            Ok(Filtration::Absent { nodes: self.nodes })
        }
    }

    /// Whether `dims` is a nonnegative integer combination of the allowed dimension vectors.
    fn dims_solvable(&mut self, dims: &[usize]) -> bool {
        if dims.iter().all(|&d| d == 0) {
            return true;
        }
        if let Some(&b) = self.solvable.get(dims) {
            return b;
        }
        let mut ok = false;
        for i in 0..self.order.len() {
            let dd = self.deltas[self.order[i]].dims();
            if dd.iter().zip(dims).all(|(a, b)| a <= b) {
                let rest: Vec<usize> = dims.iter().zip(dd).map(|(a, b)| a - b).collect();
                if self.dims_solvable(&rest) {
                    ok = true;
                    break;
                }
            }
        }
        self.solvable.insert(dims.to_vec(), ok);
        ok
    }

    fn key(sub: &Submodule) -> Vec<RowSpace> {
        sub.inclusion.blocks.iter().map(RowSpace::span).collect()
    }

    /// Tries to filter `sub`; on success pushes `(M_i, λ_i, map)` from the top down.
    fn descend(&mut self, sub: &Submodule, steps: &mut Vec<(Submodule, usize, ModuleMorphism)>) -> Result<bool> {
        if sub.module.is_zero() {
            return Ok(true);
        }
        if !self.dims_solvable(sub.module.dims()) {
            return Ok(false);
        }
        let key = Self::key(sub);
        if self.failed.contains(&key) {
            return Ok(false);
        }
        for oi in 0..self.order.len() {
            let l = self.order[oi];
            let d = &self.deltas[l];
            if d.dims().iter().zip(sub.module.dims()).any(|(a, b)| a > b) {
                continue;
            }
            let rest: Vec<usize> = sub.module.dims().iter().zip(d.dims()).map(|(a, b)| a - b).collect();
            if !self.dims_solvable(&rest) {
                continue;
            }
            let basis = hom_space(&sub.module, d)?;
            if basis.is_empty() {
                continue;
            }
            let mut seen = HashSet::new();
            for coeffs in projective_points(sub.module.field(), basis.len(), &mut self.rng) {
                let f = combine(&basis, &coeffs);
                if !f.is_surjective() {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(Error::SearchBudgetExceeded { budget: self.budget });
                }
                let k = f.kernel();
                let kernel = Submodule {
                    module: k.module.clone(),
                    inclusion: k.inclusion.then(&sub.inclusion),
                };
                let kk = Self::key(&kernel);
                if !seen.insert(kk.clone()) || self.failed.contains(&kk) {
                    continue;
                }
                steps.push((sub.clone(), l, f));
                if self.descend(&kernel, steps)? {
                    return Ok(true);
                }
                steps.pop();
            }
        }
        self.failed.insert(key);
        Ok(false)
    }
}

fn combine(basis: &[ModuleMorphism], coeffs: &[Scalar]) -> ModuleMorphism {
    let mut f = ModuleMorphism::zero(&basis[0].source, &basis[0].target);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            f = f.add(&b.scale(c));
        }
    }
    f
}

/// Points of the projective space of `k^h`: unit vectors first, then all
/// remaining points (preceded by a random sample when `h > 6`).
fn projective_points(field: Field, h: usize, rng: &mut ChaCha8Rng) -> Box<dyn Iterator<Item = Vec<Scalar>>> {
    let elems = field.elements().expect("finite field");
    let units: Vec<Vec<Scalar>> = (0..h)
        .map(|i| {
            (0..h)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect();
    let sample: Vec<Vec<Scalar>> = if h > 6 {
        (0..64)
            .map(|_| {
                let mut v: Vec<Scalar> = (0..h).map(|_| field.random(rng, 1)).collect();
                if let Some(p) = v.iter().position(|c| !c.is_zero()) {
                    let inv = field.inv(&v[p]).expect("nonzero");
                    v = v.iter().map(|c| field.mul(c, &inv)).collect();
                }
                v
            })
            .filter(|v| v.iter().any(|c| !c.is_zero()))
            .collect()
    } else {
        Vec::new()
    };
    let q = elems.len();
    let (zero, one) = (field.zero(), field.one());
    let all = (0..h).rev().flat_map(move |lead| {
        // leading one at position `lead`, zeros after it, anything before it
        let elems = elems.clone();
        let (zero, one) = (zero.clone(), one.clone());
        let count = q.pow(lead as u32);
        (0..count).filter_map(move |mut code| {
            let mut v = vec![zero.clone(); h];
            for item in v.iter_mut().take(lead) {
                *item = elems[code % q].clone();
                code /= q;
            }
            v[lead] = one.clone();
            let nonunit = v.iter().filter(|c| !c.is_zero()).count() > 1;
            nonunit.then_some(v)
        })
    });
    Box::new(units.into_iter().chain(sample).chain(all))
}

/// Peels off the traces of `Δ(λ)` for `λ` from the top of a linear extension.
/// Exact when the allowed `Δ`'s form a standarizable collection.
fn peel(m: &Representation, deltas: &[Representation], allowed: &[usize], poset: &WeightPoset) -> Result<Filtration> {
    let field = m.field();
    let nv = m.dims().len();
    let coll: Vec<Representation> = allowed.iter().map(|&l| deltas[l].clone()).collect();
    let sub_poset = restrict(poset, allowed);
    if !verify_standarizable(&coll, &sub_poset)?.ok {
        return Err(Error::NotStandarizable(
            "trace peeling needs a standarizable collection".into(),
        ));
    }
    let mut order: Vec<usize> = sub_poset.linear_extension().into_iter().map(|i| allowed[i]).collect();
    order.reverse();
    let mut current: Vec<RowSpace> = (0..nv).map(|v| RowSpace::zero(field, m.dim_at(v))).collect();
    let mut chain = Vec::new();
    let mut weights = Vec::new();
    let mut maps = Vec::new();
    for l in order {
        let d = &deltas[l];
        let q = m.quotient_by_spaces(&current);
        let homs = hom_space(d, &q.module)?;
        if homs.is_empty() {
            continue;
        }
        let h = homs.len();
        // evaluation Δ^h -> X must be injective
        let eval: Vec<ExactMatrix> = (0..nv)
            .map(|v| {
                let parts: Vec<&ExactMatrix> = homs.iter().map(|f| &f.blocks[v]).collect();
                ExactMatrix::vstack(field, q.module.dim_at(v), &parts)
            })
            .collect();
        if (0..nv).any(|v| eval[v].rank() != h * d.dim_at(v)) {
            return Ok(Filtration::Absent { nodes: 0 });
        }
        let right_inv: Vec<ExactMatrix> = (0..nv)
            .map(|v| {
                eval[v]
                    .solve(&ExactMatrix::identity(field, h * d.dim_at(v)))
                    .expect("injective evaluation")
            })
            .collect();
        for k in 0..h {
            for v in 0..nv {
                let img = homs[k].blocks[v].mul(&q.lift[v]);
                current[v] = current[v].sum(&RowSpace::span(&img));
            }
            let s = m.submodule_of_spaces(&current)?;
            // M_i -> X -> coordinates of the k-th copy of Δ
            let blocks = (0..nv)
                .map(|v| {
                    let to_x = s.inclusion.blocks[v].mul(&q.projection.blocks[v]);
                    let dv = d.dim_at(v);
                    to_x.mul(&right_inv[v])
                        .block(0, s.module.dim_at(v), k * dv, (k + 1) * dv)
                })
                .collect();
            maps.push(ModuleMorphism {
                source: s.module.clone(),
                target: d.clone(),
                blocks,
            });
            chain.push(s);
            weights.push(l);
        }
    }
    if (0..nv).any(|v| current[v].dim() != m.dim_at(v)) {
        return Ok(Filtration::Absent { nodes: 0 });
    }
    Ok(Filtration::Found(FiltrationWitness {
        module: m.clone(),
        chain,
        weights,
        maps,
    }))
}

fn restrict(poset: &WeightPoset, subset: &[usize]) -> WeightPoset {
    let labels = subset.iter().map(|&i| poset.label(i).to_string()).collect();
    let le = subset
        .iter()
        .map(|&i| subset.iter().map(|&j| poset.le(i, j)).collect())
        .collect();
    WeightPoset::from_relation(labels, le).expect("restriction of a partial order")
}

/// The clauses of the highest-weight definition, in evaluation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Clause {
    /// `End(Δ(λ)) = k`.
    St1,
    /// `P(λ)` has a Δ-filtration.
    St2,
    /// `Δ(λ) -> L(λ)` has kernel with factors strictly below `λ`.
    St1Prime,
    /// `P(λ) -> Δ(λ)` has kernel filtered by `Δ(μ)`, `μ ≻ λ`.
    St2Prime,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::St1 => "st1",
            Clause::St2 => "st2",
            Clause::St1Prime => "st1'",
            Clause::St2Prime => "st2'",
        })
    }
}

#[derive(Clone, Debug)]
pub struct WeightReport {
    pub weight: usize,
    pub standard: Representation,
    pub costandard: Representation,
    pub end_dim: usize,
    pub st1: bool,
    pub st2: Filtration,
    pub st1_prime: bool,
    pub st2_prime: Filtration,
}

#[derive(Clone, Debug)]
pub struct HwReport {
    pub algebra: Arc<Algebra>,
    pub poset: WeightPoset,
    pub per_weight: Vec<WeightReport>,
    pub verdict: bool,
    /// First failing clause and the weight where it fails.
    pub failing: Option<(Clause, usize)>,
}

impl HwReport {
    pub fn standards(&self) -> Vec<Representation> {
        self.per_weight.iter().map(|w| w.standard.clone()).collect()
    }

    pub fn costandards(&self) -> Vec<Representation> {
        self.per_weight.iter().map(|w| w.costandard.clone()).collect()
    }

    /// Human-readable reason for a negative verdict.
    pub fn failure_message(&self) -> Option<String> {
        let (c, l) = self.failing?;
        let name = self.poset.label(l);
        Some(match c {
            Clause::St1 => format!(
                "st1 failed: End(Δ({name})) has dimension {}",
                self.per_weight[l].end_dim
            ),
            Clause::St2 => format!("st2 failed: P({name}) has no Δ-filtration"),
            Clause::St1Prime => format!("st1' failed: L({name}) occurs more than once in Δ({name})"),
            Clause::St2Prime => {
                format!("st2' failed: the kernel of P({name}) -> Δ({name}) has no filtration by Δ(μ), μ > {name}")
            }
        })
    }
}

/// Checks `(st1)`, `(st2)` and their reformulations `(st1')`, `(st2')` for every weight.
pub fn check_hw(alg: &Arc<Algebra>, poset: &WeightPoset, opts: &SearchOptions) -> Result<HwReport> {
    vertex_poset_check(alg, poset)?;
    let n = poset.len();
    let deltas = standard_modules(alg, poset)?;
    let nablas = costandard_modules(alg, poset)?;
    let mut per_weight = Vec::new();
    let over_q = alg.field() == Field::Rationals;
    let mut standarizable = true;
    if over_q {
        standarizable = verify_standarizable(&deltas, poset)?.ok;
    }
    for l in 0..n {
        let d = &deltas[l];
        let end_dim = hom_dim(d, d)?;
        let st1 = end_dim == 1;
        let st1_prime = d.composition_factors()[l] == 1;
        let p = projective_module(alg, l);
        let above: Vec<usize> = (0..n).filter(|&m| poset.lt(l, m)).collect();
        let kernel = p.trace_of_projectives(&(0..n).filter(|&v| !poset.le(v, l)).collect::<Vec<_>>());
        let (st2, st2_prime) = if over_q && !standarizable {
            // a standard system that is not standarizable cannot satisfy st2
            (Filtration::Absent { nodes: 0 }, Filtration::Absent { nodes: 0 })
        } else {
            (
                delta_filtration(&p, &deltas, poset, opts)?,
                filtration_among(&kernel.module, &deltas, &above, poset, opts)?,
            )
        };
        per_weight.push(WeightReport {
            weight: l,
            standard: d.clone(),
            costandard: nablas[l].clone(),
            end_dim,
            st1,
            st2,
            st1_prime,
            st2_prime,
        });
    }
    let mut failing = None;
    'outer: for c in [Clause::St1, Clause::St2, Clause::St1Prime, Clause::St2Prime] {
        for w in &per_weight {
            let ok = match c {
                Clause::St1 => w.st1,
                Clause::St2 => w.st2.is_found(),
                Clause::St1Prime => w.st1_prime,
                Clause::St2Prime => w.st2_prime.is_found(),
            };
            if !ok {
                failing = Some((c, w.weight));
                break 'outer;
            }
        }
    }
    Ok(HwReport {
        algebra: alg.clone(),
        poset: poset.clone(),
        per_weight,
        verdict: failing.is_none(),
        failing,
    })
}

/// `M ∈ F(Δ)` iff `Ext^i(M, T) = 0` for `1 ≤ i ≤` the global dimension bound,
/// with `T` the characteristic tilting module.
pub fn membership_by_ext(m: &Representation, tilting: &Representation) -> Result<bool> {
    membership_by_ext_with_cap(m, tilting, DEFAULT_RESOLUTION_CAP)
}

/// As [`membership_by_ext`], with an explicit cap on resolution length.
pub fn membership_by_ext_with_cap(m: &Representation, tilting: &Representation, cap: usize) -> Result<bool> {
    let bound = global_dimension_bound_with_cap(m.algebra(), cap)?;
    let mut res = Resolution::with_cap(m, cap);
    for i in 1..=bound {
        if res.ext_dim(tilting, i)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The minimal order with `i ⪯ j` whenever `Hom(E_j, E_i) ≠ 0` or `Ext^1(E_j, E_i) ≠ 0`.
pub fn canonical_poset(collection: &[Representation], labels: Vec<String>) -> Result<WeightPoset> {
    let n = collection.len();
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j
                && (hom_dim(&collection[j], &collection[i])? != 0 || ext_dim(&collection[j], &collection[i], 1)? != 0)
            {
                le[i][j] = true;
            }
        }
    }
    WeightPoset::from_relation(labels, le)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Hom,
    Ext,
    EndNotScalar,
    SelfExt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub from: usize,
    pub to: usize,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug)]
pub struct StandarizableReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Checks `Hom(E(λ), E(μ)) = 0 = Ext^1(E(λ), E(μ))` unless `λ ≺ μ`, and that
/// each `E(λ)` has scalar endomorphisms and no self-extensions.
pub fn verify_standarizable(collection: &[Representation], poset: &WeightPoset) -> Result<StandarizableReport> {
    let n = collection.len();
    let mut violations = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let (ea, eb) = (&collection[a], &collection[b]);
            if a == b {
                if hom_dim(ea, ea)? != 1 {
                    violations.push(Violation {
                        from: a,
                        to: a,
                        kind: ViolationKind::EndNotScalar,
                    });
                }
                if ext_dim(ea, ea, 1)? != 0 {
                    violations.push(Violation {
                        from: a,
                        to: a,
                        kind: ViolationKind::SelfExt,
                    });
                }
            } else if !poset.le(a, b) {
                if hom_dim(ea, eb)? != 0 {
                    violations.push(Violation {
                        from: a,
                        to: b,
                        kind: ViolationKind::Hom,
                    });
                }
                if ext_dim(ea, eb, 1)? != 0 {
                    violations.push(Violation {
                        from: a,
                        to: b,
                        kind: ViolationKind::Ext,
                    });
                }
            }
        }
    }
    Ok(StandarizableReport {
        ok: violations.is_empty(),
        violations,
    })
}

/// Outcome of comparing two highest-weight structures on one algebra.
#[derive(Clone, Debug)]
pub struct HwEquivalence {
    pub verdict: bool,
    /// The canonical poset of the `Λ`-standard modules.
    pub canonical: WeightPoset,
    /// `Λ'` dominates the opposite of the canonical poset.
    pub by_domination: bool,
    /// `(A, Λ')` is highest weight with isomorphic standard modules.
    pub by_standards: bool,
    pub explanation: String,
}

/// Decides whether `(A, Λ')` is a highest-weight structure with the same
/// standard modules as `(A, Λ)`, by domination and by comparing standards.
pub fn hw_equivalent(
    alg: &Arc<Algebra>,
    poset: &WeightPoset,
    other: &WeightPoset,
    opts: &SearchOptions,
) -> Result<HwEquivalence> {
    let first = check_hw(alg, poset, opts)?;
    if !first.verdict {
        return Err(Error::InvalidArgument(format!(
            "({}) is not a highest weight structure",
            poset
        )));
    }
    let deltas = first.standards();
    let canonical = canonical_poset(&deltas, poset.labels().to_vec())?;
    let by_domination = other.dominates(&canonical.opposite());
    let second = check_hw(alg, other, opts)?;
    let mut by_standards = second.verdict;
    let mut differing = None;
    if by_standards {
        for (l, d2) in second.standards().iter().enumerate() {
            if is_isomorphic(&deltas[l], d2, &opts.iso)?.is_none() {
                by_standards = false;
                differing = Some(l);
                break;
            }
        }
    }
    if by_domination != by_standards {
        return Err(Error::invariant(format!(
            "domination ({by_domination}) and standard comparison ({by_standards}) disagree"
        )));
    }
    let explanation = if by_domination {
        format!(
            "{} dominates the opposite canonical order ({})",
            other,
            canonical.opposite()
        )
    } else if !second.verdict {
        format!(
            "the opposite canonical order ({}) is not dominated; ({}) is not highest weight: {}",
            canonical.opposite(),
            other,
            second.failure_message().unwrap_or_default()
        )
    } else {
        let l = differing.expect("some standard differs");
        format!(
            "the opposite canonical order ({}) is not dominated; Δ({}) differs",
            canonical.opposite(),
            poset.label(l)
        )
    };
    Ok(HwEquivalence {
        verdict: by_domination,
        canonical,
        by_domination,
        by_standards,
        explanation,
    })
}

/// `dim Hom(Δ(λ), ∇(μ))` for all pairs.
pub fn hom_table(deltas: &[Representation], nablas: &[Representation]) -> Result<Vec<Vec<usize>>> {
    deltas
        .iter()
        .map(|d| nablas.iter().map(|n| hom_dim(d, n)).collect())
        .collect()
}

/// Simple modules of the algebra, in vertex order.
pub fn simples(alg: &Arc<Algebra>) -> Vec<Representation> {
    (0..alg.num_vertices()).map(|v| simple_module(alg, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rep::{direct_sum, injective_module, isomorphic};

    fn load(name: &str) -> (Arc<Algebra>, WeightPoset) {
        let f = catalog::load(name).unwrap().unwrap();
        (f.build().unwrap(), f.poset().unwrap())
    }

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn poset_basics() {
        let p = WeightPoset::new(labels(3), &[(1, 0), (1, 2)]).unwrap();
        let q = WeightPoset::new(labels(3), &[(1, 0)]).unwrap();
        assert!(p.dominates(&p) && p.dominates(&q) && !q.dominates(&p));
        assert_eq!(p.lower_ideal(0), vec![0, 1]);
        assert!(p.is_lower_ideal(&[1]) && !p.is_lower_ideal(&[0]));
        assert_eq!(p.linear_extensions().len(), 2);
        let total = WeightPoset::chain(labels(3), &[1, 0, 2]).unwrap();
        assert!(total.dominates(&p));
        assert!(matches!(
            WeightPoset::new(labels(2), &[(0, 1), (1, 0)]),
            Err(Error::CyclicRelation(..))
        ));
    }

    #[test]
    fn standards_on_a2() {
        let (a, _) = load("a2");
        let down = WeightPoset::new(labels(2), &[(1, 0)]).unwrap();
        let up = WeightPoset::new(labels(2), &[(0, 1)]).unwrap();
        assert_eq!(standard_module(&a, &down, 0).unwrap(), projective_module(&a, 0));
        assert_eq!(standard_module(&a, &down, 1).unwrap().dims(), &[0, 1]);
        assert_eq!(standard_module(&a, &up, 0).unwrap().dims(), &[1, 0]);
        assert_eq!(costandard_module(&a, &down, 0).unwrap().dims(), &[1, 0]);
        // Hom(Δ(1), ∇(2)) = Hom(P(1), ∇(2)) = ∇(2)_1 must vanish
        assert_eq!(costandard_module(&a, &down, 1).unwrap().dims(), &[0, 1]);
        let n2 = costandard_module(&a, &up, 1).unwrap();
        assert!(isomorphic(&n2, &injective_module(&a, 1)).unwrap());
        assert_eq!(n2.dims(), &[1, 1]);
    }

    #[test]
    fn filtrations_on_a2() {
        let (a, _) = load("a2");
        let down = WeightPoset::new(labels(2), &[(1, 0)]).unwrap();
        let deltas = standard_modules(&a, &down).unwrap();
        let opts = SearchOptions::default();
        let l2 = simple_module(&a, 1);
        let w = delta_filtration(&l2, &deltas, &down, &opts).unwrap();
        assert_eq!(w.witness().unwrap().weights, vec![1]);
        let l1 = simple_module(&a, 0);
        let sum = direct_sum(&a, &[l1.clone(), l1]).module;
        assert!(!delta_filtration(&sum, &deltas, &down, &opts).unwrap().is_found());
        let up = WeightPoset::new(labels(2), &[(0, 1)]).unwrap();
        let simples = standard_modules(&a, &up).unwrap();
        let f = delta_filtration(&sum, &simples, &up, &opts).unwrap();
        let w = f.witness().unwrap();
        assert!(w.verify(&simples));
        assert_eq!(w.weights, vec![0, 0]);
        let p1 = projective_module(&a, 0);
        let w = delta_filtration(&p1, &simples, &up, &opts).unwrap();
        assert_eq!(w.witness().unwrap().weights, vec![1, 0]);
    }

    #[test]
    fn rational_route_peels_traces() {
        let text = catalog::source("auslander").unwrap().replace("GF(5)", "QQ");
        let f = crate::format::parse_algebra(&text).unwrap();
        let (a, p) = (f.build().unwrap(), f.poset().unwrap());
        let r = check_hw(&a, &p, &SearchOptions::default()).unwrap();
        assert!(r.verdict);
        let deltas = r.standards();
        for w in &r.per_weight {
            assert!(w.st2.witness().unwrap().verify(&deltas));
        }
        let bad = WeightPoset::new(labels(2), &[(0, 1)]).unwrap();
        let r = check_hw(&a, &bad, &SearchOptions::default()).unwrap();
        assert_eq!(r.failing, Some((Clause::St1, 1)));
    }

    #[test]
    fn check_hw_verdicts() {
        let opts = SearchOptions::default();
        let (s, p) = load("semisimple");
        assert!(check_hw(&s, &p, &opts).unwrap().verdict);
        let (a, p) = load("a2");
        let r = check_hw(&a, &p, &opts).unwrap();
        assert!(r.verdict);
        for w in &r.per_weight {
            assert!(w.st2.witness().unwrap().verify(&r.standards()));
        }
        let (d, p) = load("dual_numbers");
        let r = check_hw(&d, &p, &opts).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.failing, Some((Clause::St1, 0)));
        assert_eq!(r.per_weight[0].end_dim, 2);
        let (e, p) = load("exm_strictness");
        let r = check_hw(&e, &p, &opts).unwrap();
        assert!(r.per_weight.iter().all(|w| w.st1 && w.st2.is_found() && w.st1_prime));
        assert_eq!(r.failing, Some((Clause::St2Prime, 0)));
    }

    #[test]
    fn standarizable_and_canonical() {
        let (a, _) = load("a2");
        let down = WeightPoset::new(labels(2), &[(1, 0)]).unwrap();
        let simples = simples(&a);
        let rep = verify_standarizable(&simples, &down).unwrap();
        assert!(!rep.ok);
        assert_eq!(
            rep.violations,
            vec![Violation {
                from: 0,
                to: 1,
                kind: ViolationKind::Ext
            }]
        );
        let deltas = standard_modules(&a, &down).unwrap();
        assert!(verify_standarizable(&deltas, &down).unwrap().ok);
        assert!(
            !verify_standarizable(&deltas, &WeightPoset::discrete(labels(2)))
                .unwrap()
                .ok
        );
        let can = canonical_poset(&deltas, labels(2)).unwrap();
        assert!(can.le(0, 1) && !can.le(1, 0));
        assert!(down.dominates(&can.opposite()));

        let kronecker = crate::format::parse_algebra(
            "field GF(5)\nvertex 1\nvertex 2\narrow a 1 2\narrow b 2 1\nrelation a*b\nrelation b*a\nend\n",
        )
        .unwrap()
        .build()
        .unwrap();
        let sims = simples_of(&kronecker);
        assert!(matches!(
            canonical_poset(&sims, labels(2)),
            Err(Error::CyclicRelation(..))
        ));
        let disc = canonical_poset(&[simple_module(&a, 0)], labels(1)).unwrap();
        assert_eq!(disc, WeightPoset::discrete(labels(1)));
    }

    fn simples_of(a: &Arc<Algebra>) -> Vec<Representation> {
        simples(a)
    }

    #[test]
    fn equivalence_on_a2() {
        let (a, _) = load("a2");
        let opts = SearchOptions::default();
        let down = WeightPoset::new(labels(2), &[(1, 0)]).unwrap();
        let disc = WeightPoset::discrete(labels(2));
        assert!(hw_equivalent(&a, &down, &down, &opts).unwrap().verdict);
        let e = hw_equivalent(&a, &down, &disc, &opts).unwrap();
        assert!(!e.verdict && !e.by_standards);
    }
}
