//! Finite-dimensional right modules, as representations of the bound quiver.
//!
//! A module assigns a space `M_v` to each vertex and, to each arrow
//! `a: s -> t`, a `dim M_s × dim M_t` matrix acting on row vectors.
//! A morphism `f: M -> N` has blocks `F_v` of size `dim M_v × dim N_v` with
//! `A^M_a F_t = F_s A^N_a`; "`f` then `g`" is the blockwise product `F G`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bqa::{Algebra, Elem};
use crate::error::{Error, Result};
use crate::exactla::{ExactMatrix, Field, RowSpace, Scalar};

struct RepInner {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Vec<ExactMatrix>,
    actions: OnceLock<Vec<ExactMatrix>>,
    cover: OnceLock<Cover>,
}

/// A right module over a bound quiver algebra. Cloning is cheap.
#[derive(Clone)]
pub struct Representation(Arc<RepInner>);

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.algebra.same_as(&other.0.algebra) && self.0.dims == other.0.dims && self.0.maps == other.0.maps)
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation(dims {:?})", self.0.dims)
    }
}

/// The projective cover `P_0 = ⊕ P(v_g) -> M` of a module.
#[derive(Clone, Debug)]
pub struct Cover {
    /// Generators: vertex and a `1 × dim M_v` row, a basis of the top.
    pub gens: Vec<(usize, ExactMatrix)>,
    /// Basis of `P_0` at each vertex `w`: pairs `(generator, basis path from v_g to w)`.
    pub cover_basis: Vec<Vec<(usize, usize)>>,
    /// `epi[w]`: `dim P_0,w × dim M_w`.
    pub epi: Vec<ExactMatrix>,
    /// `section[w]`: `dim M_w × dim P_0,w`, right inverse of `epi[w]`.
    pub section: Vec<ExactMatrix>,
    /// Basis of the kernel (the first syzygy) at each vertex, rows over `cover_basis[w]`.
    pub syzygy: Vec<RowSpace>,
}

impl Cover {
    /// The syzygy element `k` at vertex `w` as one algebra element per generator.
    pub fn syzygy_elements(&self, alg: &Algebra, w: usize, k: &ExactMatrix) -> Vec<Elem> {
        let mut per_gen: Vec<Elem> = vec![Vec::new(); self.gens.len()];
        for (c, &(g, b)) in self.cover_basis[w].iter().enumerate() {
            let x = k.get(0, c);
            if !x.is_zero() {
                per_gen[g].push((b, x));
            }
        }
        for e in per_gen.iter_mut() {
            e.sort_by_key(|(i, _)| *i);
            *e = alg.scale(&alg.field().one(), e);
        }
        per_gen
    }
}

/// A module homomorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMorphism {
    pub source: Representation,
    pub target: Representation,
    pub blocks: Vec<ExactMatrix>,
}

/// A submodule together with its inclusion into the ambient module.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub module: Representation,
    pub inclusion: ModuleMorphism,
}

/// A quotient module together with the projection onto it.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: Representation,
    pub projection: ModuleMorphism,
    /// Linear (not module) sections `lift[v]`: rows of the ambient space mapping onto the quotient basis.
    pub lift: Vec<ExactMatrix>,
}

impl Representation {
    /// Builds a module, checking shapes and that every relation acts as zero.
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, maps: Vec<ExactMatrix>) -> Result<Self> {
        let field = algebra.field();
        if dims.len() != algebra.num_vertices() || maps.len() != algebra.arrows().len() {
            return Err(Error::InvalidArgument(
                "dimension vector or arrow maps do not match the quiver".into(),
            ));
        }
        for (a, m) in algebra.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.source] || m.cols() != dims[a.target] || m.field() != field {
                return Err(Error::InvalidArgument(format!(
                    "map for arrow `{}` has shape {}x{}, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    dims[a.source],
                    dims[a.target]
                )));
            }
        }
        let rep = Representation(Arc::new(RepInner {
            algebra,
            dims,
            maps,
            actions: OnceLock::new(),
            cover: OnceLock::new(),
        }));
        rep.check_relations()?;
        Ok(rep)
    }

    fn check_relations(&self) -> Result<()> {
        let alg = &self.0.algebra;
        let p = alg.presentation();
        for rel in &p.relations {
            let (s, t) = p.word_endpoints(&rel.terms[0].1).expect("validated relation");
            let mut acc = ExactMatrix::zeros(alg.field(), self.0.dims[s], self.0.dims[t]);
            for (c, w) in &rel.terms {
                acc = acc.add(&self.word_action(w).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::RelationViolated {
                    relation: p.format_relation(rel),
                    vertex: alg.vertex_label(s).to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let field = algebra.field();
        let n = algebra.num_vertices();
        let maps = algebra
            .arrows()
            .iter()
            .map(|_| ExactMatrix::zeros(field, 0, 0))
            .collect();
        Representation::new(algebra, vec![0; n], maps).expect("zero module")
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.algebra
    }

    pub fn field(&self) -> Field {
        self.0.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.0.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &ExactMatrix {
        &self.0.maps[arrow]
    }

    pub fn maps(&self) -> &[ExactMatrix] {
        &self.0.maps
    }

    fn word_action(&self, word: &[usize]) -> ExactMatrix {
        let mut m = self.0.maps[word[0]].clone();
        for &a in &word[1..] {
            m = m.mul(&self.0.maps[a]);
        }
        m
    }

    /// Action of the `i`-th basis element of the algebra.
    pub fn basis_action(&self, i: usize) -> &ExactMatrix {
        &self.0.actions.get_or_init(|| {
            let alg = &self.0.algebra;
            alg.basis()
                .iter()
                .map(|b| {
                    if b.word.is_empty() {
                        ExactMatrix::identity(alg.field(), self.0.dims[b.source])
                    } else {
                        self.word_action(&b.word)
                    }
                })
                .collect()
        })[i]
    }

    /// Action of an element of `e_s A e_t`.
    pub fn elem_action(&self, s: usize, t: usize, x: &Elem) -> ExactMatrix {
        let mut acc = ExactMatrix::zeros(self.field(), self.0.dims[s], self.0.dims[t]);
        for (i, c) in x {
            let b = &self.0.algebra.basis()[*i];
            debug_assert!(b.source == s && b.target == t);
            acc = acc.add(&self.basis_action(*i).scale(c));
        }
        acc
    }

    pub fn identity(&self) -> ModuleMorphism {
        let field = self.field();
        ModuleMorphism {
            source: self.clone(),
            target: self.clone(),
            blocks: self.0.dims.iter().map(|&d| ExactMatrix::identity(field, d)).collect(),
        }
    }

    /// Submodule generated by the given rows (`gens[v]`: rows in `M_v`).
    pub fn generated_submodule(&self, gens: &[ExactMatrix]) -> Submodule {
        let alg = self.0.algebra.clone();
        let n = alg.num_vertices();
        let field = self.field();
        let spaces: Vec<ExactMatrix> = (0..n)
            .map(|t| {
                let mut parts = Vec::new();
                for (s, g) in gens.iter().enumerate() {
                    if g.rows() == 0 {
                        continue;
                    }
                    for &b in alg.pair_basis(s, t) {
                        parts.push(g.mul(self.basis_action(b)));
                    }
                }
                let refs: Vec<&ExactMatrix> = parts.iter().collect();
                ExactMatrix::vstack(field, self.0.dims[t], &refs)
            })
            .collect();
        self.submodule(&spaces).expect("generated span is a submodule")
    }

    /// Submodule spanned by `rows[v]` at each vertex; fails if not closed under the arrows.
    pub fn submodule(&self, rows: &[ExactMatrix]) -> Result<Submodule> {
        let spaces: Vec<RowSpace> = rows.iter().map(RowSpace::span).collect();
        self.submodule_of_spaces(&spaces)
    }

    pub fn submodule_of_spaces(&self, spaces: &[RowSpace]) -> Result<Submodule> {
        let alg = self.0.algebra.clone();
        let mut maps = Vec::new();
        for (ai, a) in alg.arrows().iter().enumerate() {
            let img = spaces[a.source].basis().mul(&self.0.maps[ai]);
            let coords = spaces[a.target]
                .coordinates(&img)
                .ok_or_else(|| Error::invariant(format!("subspace not closed under arrow `{}`", a.name)))?;
            maps.push(coords);
        }
        let dims = spaces.iter().map(|s| s.dim()).collect();
        let module = Representation::new(alg, dims, maps)?;
        let inclusion = ModuleMorphism {
            source: module.clone(),
            target: self.clone(),
            blocks: spaces.iter().map(|s| s.basis().clone()).collect(),
        };
        Ok(Submodule { module, inclusion })
    }

    /// Quotient by a submodule given as subspaces (assumed closed under the arrows).
    pub fn quotient_by_spaces(&self, spaces: &[RowSpace]) -> Quotient {
        let alg = self.0.algebra.clone();
        let proj: Vec<ExactMatrix> = spaces.iter().map(|s| s.projection()).collect();
        let comp: Vec<ExactMatrix> = spaces.iter().map(|s| s.complement()).collect();
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| comp[a.source].mul(&self.0.maps[ai]).mul(&proj[a.target]))
            .collect();
        let dims = proj.iter().map(|p| p.cols()).collect();
        let module = Representation::new(alg, dims, maps).expect("quotient module");
        let projection = ModuleMorphism {
            source: self.clone(),
            target: module.clone(),
            blocks: proj,
        };
        Quotient {
            module,
            projection,
            lift: comp,
        }
    }

    pub fn quotient(&self, sub: &Submodule) -> Quotient {
        let spaces: Vec<RowSpace> = sub.inclusion.blocks.iter().map(RowSpace::span).collect();
        self.quotient_by_spaces(&spaces)
    }

    /// `rad M`: the span of the images of all arrows.
    pub fn radical(&self) -> Submodule {
        let alg = self.0.algebra.clone();
        let field = self.field();
        let rows: Vec<ExactMatrix> = (0..alg.num_vertices())
            .map(|t| {
                let parts: Vec<&ExactMatrix> = alg
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.target == t)
                    .map(|(ai, _)| &self.0.maps[ai])
                    .collect();
                ExactMatrix::vstack(field, self.0.dims[t], &parts)
            })
            .collect();
        self.submodule(&rows).expect("radical is a submodule")
    }

    pub fn top(&self) -> Quotient {
        self.quotient(&self.radical())
    }

    /// `soc M`: vectors killed by every arrow.
    pub fn socle(&self) -> Submodule {
        let alg = self.0.algebra.clone();
        let field = self.field();
        let rows: Vec<ExactMatrix> = (0..alg.num_vertices())
            .map(|s| {
                let parts: Vec<&ExactMatrix> = alg
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.source == s)
                    .map(|(ai, _)| &self.0.maps[ai])
                    .collect();
                if parts.is_empty() {
                    return ExactMatrix::identity(field, self.0.dims[s]);
                }
                ExactMatrix::hstack(field, self.0.dims[s], &parts).left_kernel_basis()
            })
            .collect();
        self.submodule(&rows).expect("socle is a submodule")
    }

    /// Multiplicity of each simple `L(v)` as a composition factor.
    pub fn composition_factors(&self) -> Vec<usize> {
        self.0.dims.clone()
    }

    pub fn top_dims(&self) -> Vec<usize> {
        let r = self.radical();
        self.0.dims.iter().zip(r.module.dims()).map(|(a, b)| a - b).collect()
    }

    /// The trace of `{P(v) : v in verts}`: the submodule generated by `M_v`, `v in verts`.
    pub fn trace_of_projectives(&self, verts: &[usize]) -> Submodule {
        let field = self.field();
        let gens: Vec<ExactMatrix> = (0..self.0.dims.len())
            .map(|v| {
                if verts.contains(&v) {
                    ExactMatrix::identity(field, self.0.dims[v])
                } else {
                    ExactMatrix::zeros(field, 0, self.0.dims[v])
                }
            })
            .collect();
        self.generated_submodule(&gens)
    }

    /// The projective cover, computed once per module.
    pub fn cover(&self) -> &Cover {
        self.0.cover.get_or_init(|| self.compute_cover())
    }

    fn compute_cover(&self) -> Cover {
        let alg = self.0.algebra.clone();
        let field = self.field();
        let n = alg.num_vertices();
        let rad = self.radical();
        let mut gens = Vec::new();
        for v in 0..n {
            let r = RowSpace::span(&rad.inclusion.blocks[v]);
            let c = r.complement();
            for i in 0..c.rows() {
                gens.push((v, c.row(i)));
            }
        }
        let mut cover_basis = vec![Vec::new(); n];
        let mut epi = Vec::new();
        let mut section = Vec::new();
        let mut syzygy = Vec::new();
        for w in 0..n {
            let mut rows = Vec::new();
            for (g, (v, m)) in gens.iter().enumerate() {
                for &b in alg.pair_basis(*v, w) {
                    cover_basis[w].push((g, b));
                    rows.push(m.mul(self.basis_action(b)));
                }
            }
            let refs: Vec<&ExactMatrix> = rows.iter().collect();
            let e = ExactMatrix::vstack(field, self.0.dims[w], &refs);
            let s = e
                .solve_left(&ExactMatrix::identity(field, self.0.dims[w]))
                .expect("cover is surjective");
            syzygy.push(RowSpace::span(&e.left_kernel_basis()));
            epi.push(e);
            section.push(s);
        }
        Cover {
            gens,
            cover_basis,
            epi,
            section,
            syzygy,
        }
    }

    /// The cover module `P_0 = ⊕ P(v_g)` with the same basis order as [`Cover::cover_basis`].
    pub fn cover_module(&self) -> Representation {
        let alg = self.0.algebra.clone();
        let verts: Vec<usize> = self.cover().gens.iter().map(|(v, _)| *v).collect();
        sum_of_projectives(&alg, &verts)
    }

    /// The cover epimorphism `P_0 -> M`.
    pub fn cover_epi(&self) -> ModuleMorphism {
        ModuleMorphism {
            source: self.cover_module(),
            target: self.clone(),
            blocks: self.cover().epi.clone(),
        }
    }

    /// The first syzygy with its inclusion into the cover module.
    pub fn syzygy(&self) -> Submodule {
        let p0 = self.cover_module();
        p0.submodule_of_spaces(&self.cover().syzygy)
            .expect("kernel is a submodule")
    }
}

/// `⊕ P(v)` over the list, generator by generator, matching [`Cover::cover_basis`].
pub fn sum_of_projectives(alg: &Arc<Algebra>, verts: &[usize]) -> Representation {
    let field = alg.field();
    let n = alg.num_vertices();
    let mut index: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (g, &v) in verts.iter().enumerate() {
        for (w, idx) in index.iter_mut().enumerate() {
            for &b in alg.pair_basis(v, w) {
                idx.push((g, b));
            }
        }
    }
    let dims: Vec<usize> = index.iter().map(|i| i.len()).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = ExactMatrix::zeros(field, dims[a.source], dims[a.target]);
            let arrow = alg.arrow_basis_index(ai);
            for (r, &(g, b)) in index[a.source].iter().enumerate() {
                for (k, c) in alg.product(b, arrow) {
                    let col = index[a.target]
                        .iter()
                        .position(|&(h, x)| h == g && x == *k)
                        .expect("product lands in the same summand");
                    m.set(r, col, c);
                }
            }
            m
        })
        .collect();
    Representation::new(alg.clone(), dims, maps).expect("projective module")
}

/// `L(v)`: one-dimensional at `v`, zero elsewhere.
pub fn simple_module(alg: &Arc<Algebra>, v: usize) -> Representation {
    let field = alg.field();
    let n = alg.num_vertices();
    let dims: Vec<usize> = (0..n).map(|w| usize::from(w == v)).collect();
    let maps = alg
        .arrows()
        .iter()
        .map(|a| ExactMatrix::zeros(field, dims[a.source], dims[a.target]))
        .collect();
    Representation::new(alg.clone(), dims, maps).expect("simple module")
}

/// `P(v) = e_v A`.
pub fn projective_module(alg: &Arc<Algebra>, v: usize) -> Representation {
    sum_of_projectives(alg, &[v])
}

/// `I(v) = D(A e_v)`, the dual of a projective over the opposite algebra.
pub fn injective_module(alg: &Arc<Algebra>, v: usize) -> Representation {
    let op = alg.opposite_arc();
    dualize_over(&projective_module(&op, v), alg.clone())
}

/// `D M = Hom_k(M, k)`, a module over the opposite algebra.
pub fn dualize(m: &Representation) -> Representation {
    dualize_over(m, m.algebra().opposite_arc())
}

/// Dual of `m`, with `target` known to be the opposite of `m`'s algebra.
pub fn dualize_over(m: &Representation, target: Arc<Algebra>) -> Representation {
    debug_assert!(*target == m.algebra().opposite());
    let maps = m.maps().iter().map(|x| x.transpose()).collect();
    Representation::new(target, m.dims().to_vec(), maps).expect("dual module")
}

/// Dual of a morphism `f: M -> N`: `Df: DN -> DM`.
pub fn dualize_morphism(f: &ModuleMorphism, dm: &Representation, dn: &Representation) -> ModuleMorphism {
    ModuleMorphism {
        source: dn.clone(),
        target: dm.clone(),
        blocks: f.blocks.iter().map(|b| b.transpose()).collect(),
    }
}

/// Direct sum with its canonical inclusions and projections.
pub struct DirectSum {
    pub module: Representation,
    pub inclusions: Vec<ModuleMorphism>,
    pub projections: Vec<ModuleMorphism>,
}

pub fn direct_sum(alg: &Arc<Algebra>, parts: &[Representation]) -> DirectSum {
    let field = alg.field();
    let n = alg.num_vertices();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dim_at(v)).sum()).collect();
    let maps = (0..alg.arrows().len())
        .map(|ai| {
            let bl: Vec<&ExactMatrix> = parts.iter().map(|p| p.map(ai)).collect();
            ExactMatrix::block_diag(field, &bl)
        })
        .collect();
    let module = Representation::new(alg.clone(), dims.clone(), maps).expect("direct sum");
    let mut offsets = vec![0usize; n];
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    for p in parts {
        let mut inc = Vec::new();
        let mut proj = Vec::new();
        for v in 0..n {
            let d = p.dim_at(v);
            let mut i = ExactMatrix::zeros(field, d, dims[v]);
            i.paste(0, offsets[v], &ExactMatrix::identity(field, d));
            proj.push(i.transpose());
            inc.push(i);
            offsets[v] += d;
        }
        inclusions.push(ModuleMorphism {
            source: p.clone(),
            target: module.clone(),
            blocks: inc,
        });
        projections.push(ModuleMorphism {
            source: module.clone(),
            target: p.clone(),
            blocks: proj,
        });
    }
    DirectSum {
        module,
        inclusions,
        projections,
    }
}

/// `M^{⊕k}`.
pub fn power(m: &Representation, k: usize) -> Representation {
    direct_sum(m.algebra(), &vec![m.clone(); k]).module
}

fn same_algebra(m: &Representation, n: &Representation) -> Result<()> {
    if m.algebra().same_as(n.algebra()) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// The linear system whose solutions are `Hom(M, N)`: unknowns are the images
/// `n_g ∈ N_{v_g}` of the top generators of `M`; returns the constraint matrix
/// (solutions are its left kernel) and the column offsets of each generator.
fn hom_system(m: &Representation, n: &Representation) -> (ExactMatrix, Vec<usize>) {
    let alg = m.algebra().clone();
    let field = m.field();
    let cover = m.cover();
    let mut offsets = Vec::new();
    let mut total = 0;
    for (v, _) in &cover.gens {
        offsets.push(total);
        total += n.dim_at(*v);
    }
    let mut columns = Vec::new();
    for (w, syz) in cover.syzygy.iter().enumerate() {
        for r in 0..syz.dim() {
            let elems = cover.syzygy_elements(&alg, w, &syz.basis().row(r));
            let mut block = ExactMatrix::zeros(field, total, n.dim_at(w));
            for (g, e) in elems.iter().enumerate() {
                if e.is_empty() {
                    continue;
                }
                let v = cover.gens[g].0;
                block.paste(offsets[g], 0, &n.elem_action(v, w, e));
            }
            columns.push(block);
        }
    }
    let refs: Vec<&ExactMatrix> = columns.iter().collect();
    (ExactMatrix::hstack(field, total, &refs), offsets)
}

/// The morphism `M -> N` sending generator `g` to `images[g]`.
pub fn morphism_from_generators(m: &Representation, n: &Representation, images: &[ExactMatrix]) -> ModuleMorphism {
    let alg = m.algebra().clone();
    let field = m.field();
    let cover = m.cover();
    let blocks = (0..alg.num_vertices())
        .map(|w| {
            let rows: Vec<ExactMatrix> = cover.cover_basis[w]
                .iter()
                .map(|&(g, b)| images[g].mul(n.basis_action(b)))
                .collect();
            let refs: Vec<&ExactMatrix> = rows.iter().collect();
            let y = ExactMatrix::vstack(field, n.dim_at(w), &refs);
            cover.section[w].mul(&y)
        })
        .collect();
    ModuleMorphism {
        source: m.clone(),
        target: n.clone(),
        blocks,
    }
}

/// Basis of `Hom(M, N)`.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<ModuleMorphism>> {
    same_algebra(m, n)?;
    let (sys, offsets) = hom_system(m, n);
    let sols = sys.left_kernel_basis();
    let cover = m.cover();
    Ok((0..sols.rows())
        .map(|r| {
            let x = sols.row(r);
            let images: Vec<ExactMatrix> = cover
                .gens
                .iter()
                .enumerate()
                .map(|(g, (v, _))| x.block(0, 1, offsets[g], offsets[g] + n.dim_at(*v)))
                .collect();
            morphism_from_generators(m, n, &images)
        })
        .collect())
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    same_algebra(m, n)?;
    let (sys, _) = hom_system(m, n);
    Ok(sys.rows() - sys.rank())
}

impl ModuleMorphism {
    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let field = source.field();
        ModuleMorphism {
            source: source.clone(),
            target: target.clone(),
            blocks: source
                .dims()
                .iter()
                .zip(target.dims())
                .map(|(&a, &b)| ExactMatrix::zeros(field, a, b))
                .collect(),
        }
    }

    /// Checks shapes and the intertwining identities.
    pub fn is_valid(&self) -> bool {
        let alg = self.source.algebra();
        if !alg.same_as(self.target.algebra()) {
            return false;
        }
        for (v, b) in self.blocks.iter().enumerate() {
            if b.rows() != self.source.dim_at(v) || b.cols() != self.target.dim_at(v) {
                return false;
            }
        }
        alg.arrows().iter().enumerate().all(|(ai, a)| {
            self.source.map(ai).mul(&self.blocks[a.target]) == self.blocks[a.source].mul(self.target.map(ai))
        })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMorphism) -> ModuleMorphism {
        ModuleMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            blocks: self.blocks.iter().zip(&next.blocks).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, other: &ModuleMorphism) -> ModuleMorphism {
        ModuleMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMorphism {
        ModuleMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().all(|b| b.rows() == b.cols() && b.rank() == b.rows())
    }

    pub fn kernel(&self) -> Submodule {
        let rows: Vec<ExactMatrix> = self.blocks.iter().map(|b| b.left_kernel_basis()).collect();
        self.source.submodule(&rows).expect("kernel is a submodule")
    }

    pub fn image(&self) -> Submodule {
        self.target.submodule(&self.blocks).expect("image is a submodule")
    }

    pub fn cokernel(&self) -> Quotient {
        let spaces: Vec<RowSpace> = self.blocks.iter().map(RowSpace::span).collect();
        self.target.quotient_by_spaces(&spaces)
    }

    /// Flattened coordinates, for linear algebra on Hom spaces.
    pub fn flatten(&self) -> ExactMatrix {
        let parts: Vec<ExactMatrix> = self
            .blocks
            .iter()
            .map(|b| {
                let e = b.entries();
                ExactMatrix::from_scalars(b.field(), 1, e.len(), &e)
            })
            .collect();
        let refs: Vec<&ExactMatrix> = parts.iter().collect();
        let total = parts.iter().map(|p| p.cols()).sum();
        ExactMatrix::hstack(self.source.field(), 1, &refs).block(0, 1, 0, total)
    }
}

/// Search limits for [`is_isomorphic`].
#[derive(Clone, Copy, Debug)]
pub struct IsoOptions {
    /// Exhaustive enumeration is allowed when `|k|^dim Hom` is at most this.
    pub enumeration_cap: u64,
    pub random_trials: usize,
    pub seed: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            enumeration_cap: 5u64.pow(6),
            random_trials: 256,
            seed: 0x5eed,
        }
    }
}

fn combination(basis: &[ModuleMorphism], coeffs: &[Scalar]) -> ModuleMorphism {
    let mut f = ModuleMorphism::zero(&basis[0].source, &basis[0].target);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            f = f.add(&b.scale(c));
        }
    }
    f
}

/// Invariants that must agree for isomorphic modules; a mismatch certifies `false`.
fn invariants_differ(m: &Representation, n: &Representation, hom_mn: usize) -> Result<bool> {
    if m.dims() != n.dims() {
        return Ok(true);
    }
    if m.top_dims() != n.top_dims() || m.socle().module.dims() != n.socle().module.dims() {
        return Ok(true);
    }
    let end_m = hom_dim(m, m)?;
    if end_m != hom_mn || hom_dim(n, n)? != end_m || hom_dim(n, m)? != end_m {
        return Ok(true);
    }
    Ok(false)
}

/// Decides `M ≅ N`, returning an isomorphism as witness.
///
/// Negatives are certified by invariants or by exhaustive enumeration of
/// `Hom(M, N)` over a small finite field; otherwise `Undecided`.
pub fn is_isomorphic(m: &Representation, n: &Representation, opts: &IsoOptions) -> Result<Option<ModuleMorphism>> {
    same_algebra(m, n)?;
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(ModuleMorphism::zero(m, n)));
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() || invariants_differ(m, n, basis.len())? {
        return Ok(None);
    }
    let field = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    // single basis elements first: often one of them already is an isomorphism
    for b in &basis {
        if b.is_isomorphism() {
            return Ok(Some(b.clone()));
        }
    }
    let trials = match field {
        Field::Prime(_) => opts.random_trials.min(64),
        Field::Rationals => opts.random_trials,
    };
    for t in 0..trials {
        let height = 1 + (t as i64) / 16;
        let coeffs: Vec<Scalar> = basis.iter().map(|_| field.random(&mut rng, height)).collect();
        let f = combination(&basis, &coeffs);
        if f.is_isomorphism() {
            return Ok(Some(f));
        }
    }
    if let Some(q) = field.order() {
        let h = basis.len() as u32;
        let count = q.checked_pow(h);
        if count.is_some_and(|c| c <= opts.enumeration_cap) {
            // enumerate up to scalars: first nonzero coefficient equal to one
            let elems = field.elements().unwrap();
            let mut idx = vec![0usize; basis.len()];
            loop {
                let lead = idx.iter().position(|&i| i != 0);
                if let Some(l) = lead {
                    if idx[l] == 1 {
                        let coeffs: Vec<Scalar> = idx.iter().map(|&i| elems[i].clone()).collect();
                        if combination(&basis, &coeffs).is_isomorphism() {
                            return Ok(Some(combination(&basis, &coeffs)));
                        }
                    }
                }
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        return Ok(None);
                    }
                    idx[k] += 1;
                    if idx[k] < elems.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        }
        for _ in trials..opts.random_trials {
            let coeffs: Vec<Scalar> = basis.iter().map(|_| field.random(&mut rng, 1)).collect();
            let f = combination(&basis, &coeffs);
            if f.is_isomorphism() {
                return Ok(Some(f));
            }
        }
    }
    Err(Error::Undecided(format!(
        "no isomorphism found in a Hom space of dimension {}",
        basis.len()
    )))
}

/// Convenience wrapper returning only the verdict.
pub fn isomorphic(m: &Representation, n: &Representation) -> Result<bool> {
    Ok(is_isomorphic(m, n, &IsoOptions::default())?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bqa::{build_algebra, Presentation};

    fn gf5() -> Field {
        Field::prime(5).unwrap()
    }

    fn a2() -> Arc<Algebra> {
        let mut p = Presentation::new(gf5());
        p.add_vertex("1").unwrap();
        p.add_vertex("2").unwrap();
        p.add_arrow("a", "1", "2").unwrap();
        Arc::new(build_algebra(&p).unwrap())
    }

    fn semisimple() -> Arc<Algebra> {
        let mut p = Presentation::new(gf5());
        p.add_vertex("1").unwrap();
        p.add_vertex("2").unwrap();
        Arc::new(build_algebra(&p).unwrap())
    }

    /// Brute force: all block tuples over GF(5) satisfying the intertwining identities.
    fn brute_hom_count(m: &Representation, n: &Representation) -> usize {
        let field = m.field();
        let sizes: Vec<(usize, usize)> = m.dims().iter().zip(n.dims()).map(|(&a, &b)| (a, b)).collect();
        let total: usize = sizes.iter().map(|(a, b)| a * b).sum();
        assert!(total <= 6);
        let mut count = 0;
        for code in 0..5usize.pow(total as u32) {
            let mut c = code;
            let mut blocks = Vec::new();
            for &(a, b) in &sizes {
                let mut e = Vec::new();
                for _ in 0..a * b {
                    e.push((c % 5) as i64);
                    c /= 5;
                }
                blocks.push(ExactMatrix::from_i64(field, a, b, &e));
            }
            let f = ModuleMorphism {
                source: m.clone(),
                target: n.clone(),
                blocks,
            };
            if f.is_valid() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn simples_and_projectives() {
        let ss = semisimple();
        assert_eq!(simple_module(&ss, 0).dims(), &[1, 0]);
        assert_eq!(projective_module(&ss, 0), simple_module(&ss, 0));
        let a = a2();
        assert_eq!(projective_module(&a, 0).dims(), &[1, 1]);
        assert_eq!(projective_module(&a, 1).dims(), &[0, 1]);
        assert_eq!(injective_module(&a, 1).dims(), &[1, 1]);
        assert_eq!(injective_module(&a, 0).dims(), &[1, 0]);
    }

    #[test]
    fn hom_dimensions_match_brute_force() {
        let a = a2();
        let mods = [
            simple_module(&a, 0),
            simple_module(&a, 1),
            projective_module(&a, 0),
            injective_module(&a, 1),
        ];
        for m in &mods {
            for n in &mods {
                let h = hom_space(m, n).unwrap();
                assert_eq!(5usize.pow(h.len() as u32), brute_hom_count(m, n));
                assert!(h.iter().all(|f| f.is_valid()));
            }
        }
        let p1 = projective_module(&a, 0);
        assert_eq!(hom_dim(&p1, &p1).unwrap(), 1);
        assert_eq!(hom_dim(&simple_module(&a, 1), &p1).unwrap(), 1);
        assert_eq!(
            hom_dim(&simple_module(&ss_zero(), 0), &simple_module(&ss_zero(), 1)).unwrap(),
            0
        );
    }

    fn ss_zero() -> Arc<Algebra> {
        semisimple()
    }

    #[test]
    fn radical_top_socle() {
        let a = a2();
        let p1 = projective_module(&a, 0);
        assert_eq!(p1.radical().module.dims(), &[0, 1]);
        assert_eq!(p1.top().module.dims(), &[1, 0]);
        assert_eq!(p1.socle().module.dims(), &[0, 1]);
        assert!(p1.radical().module.radical().module.is_zero());
        let s = simple_module(&a, 0);
        assert_eq!(s.socle().module.dims(), s.dims());
    }

    #[test]
    fn trace_and_cokernel() {
        let a = a2();
        let p1 = projective_module(&a, 0);
        let tr = p1.trace_of_projectives(&[1]);
        assert_eq!(tr.module.dims(), &[0, 1]);
        assert_eq!(p1.trace_of_projectives(&[0]).module.dims(), &[1, 1]);
        let coker = tr.inclusion.cokernel();
        assert!(isomorphic(&coker.module, &simple_module(&a, 0)).unwrap());
        let id = p1.identity();
        assert!(id.kernel().module.is_zero());
        assert_eq!(id.image().module.dims(), p1.dims());
    }

    #[test]
    fn iso_tests() {
        let a = a2();
        let p1 = projective_module(&a, 0);
        let i2 = injective_module(&a, 1);
        assert!(isomorphic(&p1, &i2).unwrap());
        assert!(!isomorphic(&simple_module(&a, 0), &simple_module(&a, 1)).unwrap());
        let split = direct_sum(&a, &[simple_module(&a, 0), simple_module(&a, 1)]).module;
        assert!(!isomorphic(&split, &p1).unwrap());
        let dd = dualize(&dualize(&p1));
        assert_eq!(dd, p1);
    }

    #[test]
    fn relation_violation_is_reported() {
        let mut p = Presentation::new(gf5());
        p.add_vertex("1").unwrap();
        p.add_arrow("x", "1", "1").unwrap();
        let f = p.field;
        p.add_relation(vec![(f.one(), vec![0, 0])]).unwrap();
        let alg = Arc::new(build_algebra(&p).unwrap());
        let bad = ExactMatrix::identity(gf5(), 1);
        let err = Representation::new(alg, vec![1], vec![bad]).unwrap_err();
        assert!(matches!(err, Error::RelationViolated { .. }));
    }
}
