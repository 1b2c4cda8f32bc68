//! Relative projective and injective generators of `F(E)` for a thin
//! (standarizable) collection, envelopes, characteristic tilting modules and
//! Ringel duals.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bqa::{Algebra, BlockAlgebra, Derived};
use crate::error::{Error, Result};
use crate::exactla::ExactMatrix;
use crate::homalg::{ext_dim, global_dimension_bound, universal_extension};
use crate::hw::{
    canonical_poset, check_hw, costandard_module, costandard_modules, delta_filtration, standard_module,
    standard_modules, verify_standarizable, HwReport, SearchOptions, ViolationKind, WeightPoset,
};
use crate::rep::{direct_sum, dualize_over, hom_space, is_isomorphic, IsoOptions, ModuleMorphism, Representation};

/// A standarizable collection `E(λ)` indexed by a poset.
#[derive(Clone, Debug)]
pub struct ThinCollection {
    algebra: Arc<Algebra>,
    modules: Vec<Representation>,
    poset: WeightPoset,
    canonical: WeightPoset,
}

impl ThinCollection {
    /// Validates standarizability of `modules` with respect to `poset`.
    pub fn new(modules: Vec<Representation>, poset: WeightPoset) -> Result<Self> {
        let algebra = match modules.first() {
            Some(m) => m.algebra().clone(),
            None => return Err(Error::InvalidArgument("empty collection".into())),
        };
        if modules.len() != poset.len() {
            return Err(Error::InvalidArgument(format!(
                "{} modules but {} weights",
                modules.len(),
                poset.len()
            )));
        }
        if modules.iter().any(|m| !m.algebra().same_as(&algebra)) {
            return Err(Error::AlgebraMismatch);
        }
        let report = verify_standarizable(&modules, &poset)?;
        if !report.ok {
            let msg = report
                .violations
                .iter()
                .map(|v| {
                    let (a, b) = (poset.label(v.from), poset.label(v.to));
                    match v.kind {
                        ViolationKind::Hom => format!("Hom({a}, {b}) ≠ 0"),
                        ViolationKind::Ext => format!("Ext^1({a}, {b}) ≠ 0"),
                        ViolationKind::EndNotScalar => format!("End({a}) is not k"),
                        ViolationKind::SelfExt => format!("Ext^1({a}, {a}) ≠ 0"),
                    }
                })
                .collect::<Vec<_>>()
                .join(", ");
            return Err(Error::NotStandarizable(msg));
        }
        let canonical = canonical_poset(&modules, poset.labels().to_vec())?;
        Ok(ThinCollection {
            algebra,
            modules,
            poset,
            canonical,
        })
    }

    /// Uses the opposite of the canonical poset as indexing poset.
    pub fn with_canonical(modules: Vec<Representation>, labels: Vec<String>) -> Result<Self> {
        let canonical = canonical_poset(&modules, labels)?;
        Self::new(modules, canonical.opposite())
    }

    /// The standard modules of `(A, Λ)`.
    pub fn standards(alg: &Arc<Algebra>, poset: &WeightPoset) -> Result<Self> {
        Self::new(standard_modules(alg, poset)?, poset.clone())
    }

    /// The costandard modules of `(A, Λ)`, indexed by `Λ^op`.
    pub fn costandards(alg: &Arc<Algebra>, poset: &WeightPoset) -> Result<Self> {
        Self::new(costandard_modules(alg, poset)?, poset.opposite())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn modules(&self) -> &[Representation] {
        &self.modules
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn poset(&self) -> &WeightPoset {
        &self.poset
    }

    /// `i ⪯ j` iff `Hom(E_j, E_i)` or `Ext^1(E_j, E_i)` is nonzero, closed up.
    pub fn canonical(&self) -> &WeightPoset {
        &self.canonical
    }

    pub fn labels(&self) -> &[String] {
        self.poset.labels()
    }

    /// `D E` over the opposite algebra, indexed by the opposite poset.
    pub fn dual(&self) -> Result<Self> {
        let op = self.algebra.opposite_arc();
        let modules = self.modules.iter().map(|m| dualize_over(m, op.clone())).collect();
        Self::new(modules, self.poset.opposite())
    }
}

/// One universal extension `0 -> T^e -> Y -> Q -> 0` performed while building
/// a relative projective.
#[derive(Clone, Debug)]
pub struct ExtensionStep {
    /// Weight whose relative projective is being built.
    pub weight: usize,
    /// Weight of the module `T` added at the bottom.
    pub added: usize,
    pub quotient: Representation,
    pub irreducible: Representation,
    pub module: Representation,
    pub ext_dim: usize,
    pub inclusion: ModuleMorphism,
    pub projection: ModuleMorphism,
}

/// `P_E(λ)` with deflations `P_E(λ) -> E(λ)` and the extension steps used.
#[derive(Clone, Debug)]
pub struct RelativeProjectives {
    pub modules: Vec<Representation>,
    pub deflations: Vec<ModuleMorphism>,
    pub steps: Vec<ExtensionStep>,
}

/// `I_E(λ)` with inflations `E(λ) -> I_E(λ)`.
#[derive(Clone, Debug)]
pub struct RelativeInjectives {
    pub modules: Vec<Representation>,
    pub inflations: Vec<ModuleMorphism>,
}

fn first_minimal(canonical: &WeightPoset, subset: &[usize]) -> usize {
    *subset
        .iter()
        .find(|&&v| !subset.iter().any(|&u| u != v && canonical.lt(u, v)))
        .expect("a finite poset has minimal elements")
}

type Built = BTreeMap<usize, (Representation, ModuleMorphism)>;

fn build_projectives(c: &ThinCollection, subset: &[usize], steps: &mut Vec<ExtensionStep>) -> Result<Built> {
    let nu = first_minimal(&c.canonical, subset);
    let e_nu = &c.modules[nu];
    let rest: Vec<usize> = subset.iter().copied().filter(|&v| v != nu).collect();
    let mut out = Built::new();
    if !rest.is_empty() {
        for (l, (q, defl)) in build_projectives(c, &rest, steps)? {
            let ue = universal_extension(&q, e_nu)?;
            let deflation = ue.projection.then(&defl);
            steps.push(ExtensionStep {
                weight: l,
                added: nu,
                quotient: q,
                irreducible: e_nu.clone(),
                module: ue.module.clone(),
                ext_dim: ue.ext_dim,
                inclusion: ue.inclusion,
                projection: ue.projection,
            });
            out.insert(l, (ue.module, deflation));
        }
    }
    out.insert(nu, (e_nu.clone(), e_nu.identity()));
    Ok(out)
}

/// Builds `P_E(λ)` by iterated universal extensions, peeling a minimal weight
/// of the canonical poset at each level.
///
/// Checks `Ext^1(P_E(λ), E(μ)) = 0`, that the deflations are onto and that
/// `End(P_E(λ))` is local.
pub fn relative_projectives(c: &ThinCollection) -> Result<RelativeProjectives> {
    let all: Vec<usize> = (0..c.len()).collect();
    let mut steps = Vec::new();
    let built = build_projectives(c, &all, &mut steps)?;
    let (modules, deflations): (Vec<_>, Vec<_>) = built.into_values().unzip();
    for (l, p) in modules.iter().enumerate() {
        for (mu, e) in c.modules.iter().enumerate() {
            if ext_dim(p, e, 1)? != 0 {
                return Err(Error::invariant(format!(
                    "Ext^1(P_E({}), E({})) ≠ 0",
                    c.poset.label(l),
                    c.poset.label(mu)
                )));
            }
        }
        if !deflations[l].is_surjective() || !deflations[l].is_valid() {
            return Err(Error::invariant(format!(
                "deflation onto E({}) is not an epimorphism",
                c.poset.label(l)
            )));
        }
        if !has_local_endomorphisms(p)? {
            return Err(Error::LocalityFailure(format!("P_E({})", c.poset.label(l))));
        }
    }
    Ok(RelativeProjectives {
        modules,
        deflations,
        steps,
    })
}

/// `I_E(λ)`, computed as duals of relative projectives of `D E` over `A^op`.
pub fn relative_injectives(c: &ThinCollection) -> Result<RelativeInjectives> {
    let dual = c.dual()?;
    let rp = relative_projectives(&dual)?;
    let alg = c.algebra.clone();
    let modules: Vec<Representation> = rp.modules.iter().map(|m| dualize_over(m, alg.clone())).collect();
    let inflations = rp
        .deflations
        .iter()
        .zip(&modules)
        .enumerate()
        .map(|(l, (d, i))| ModuleMorphism {
            source: c.modules[l].clone(),
            target: i.clone(),
            blocks: d.blocks.iter().map(|b| b.transpose()).collect(),
        })
        .collect::<Vec<_>>();
    for (l, f) in inflations.iter().enumerate() {
        if !f.is_valid() || !f.is_injective() {
            return Err(Error::invariant(format!(
                "inflation of E({}) is not a monomorphism",
                c.poset.label(l)
            )));
        }
        for e in &c.modules {
            if ext_dim(e, &modules[l], 1)? != 0 {
                return Err(Error::invariant(format!("Ext^1(E, I_E({})) ≠ 0", c.poset.label(l))));
            }
        }
    }
    Ok(RelativeInjectives { modules, inflations })
}

/// Whether `End(M)` is local with residue field `k`.
pub fn has_local_endomorphisms(m: &Representation) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let basis = HomBasis::new(m, m)?;
    let blocks = endomorphism_blocks(std::slice::from_ref(m), &[basis], &["E".to_string()]);
    match blocks.derive_presentation() {
        Ok(_) => Ok(true),
        Err(Error::LocalityFailure(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// A basis of `Hom(M, N)` with coordinates.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub source: Representation,
    pub target: Representation,
    pub basis: Vec<ModuleMorphism>,
    frame: ExactMatrix,
}

impl HomBasis {
    pub fn new(m: &Representation, n: &Representation) -> Result<Self> {
        let basis = hom_space(m, n)?;
        let width: usize = m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum();
        let rows: Vec<ExactMatrix> = basis.iter().map(|f| f.flatten()).collect();
        let refs: Vec<&ExactMatrix> = rows.iter().collect();
        let frame = ExactMatrix::vstack(m.field(), width, &refs);
        Ok(HomBasis {
            source: m.clone(),
            target: n.clone(),
            basis,
            frame,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `f` as a `1 × dim` row.
    pub fn coords(&self, f: &ModuleMorphism) -> ExactMatrix {
        let field = self.source.field();
        if self.basis.is_empty() {
            return ExactMatrix::zeros(field, 1, 0);
        }
        self.frame
            .solve_left(&f.flatten())
            .expect("morphism lies in the Hom space")
    }

    /// `Σ x_i b_i` for a row `x`.
    pub fn combine(&self, x: &ExactMatrix) -> ModuleMorphism {
        let mut out = ModuleMorphism::zero(&self.source, &self.target);
        for (i, b) in self.basis.iter().enumerate() {
            let c = x.get(0, i);
            if !c.is_zero() {
                out = out.add(&b.scale(&c));
            }
        }
        out
    }
}

/// Block description of `End(⊕ G_s)`: block `(s, t)` is `Hom(G_t, G_s)` and
/// `x · y = x ∘ y`. `homs[t * n + s]` must be a basis of `Hom(G_t, G_s)`.
fn endomorphism_blocks(gens: &[Representation], homs: &[HomBasis], labels: &[String]) -> BlockAlgebra {
    let n = gens.len();
    let field = gens[0].field();
    let h = |s: usize, t: usize| &homs[t * n + s];
    let dims: Vec<Vec<usize>> = (0..n).map(|s| (0..n).map(|t| h(s, t).dim()).collect()).collect();
    let mut mult = vec![vec![vec![Vec::new(); n]; n]; n];
    for s in 0..n {
        for t in 0..n {
            for u in 0..n {
                mult[s][t][u] = h(s, t)
                    .basis
                    .iter()
                    .map(|x| {
                        let mut m = ExactMatrix::zeros(field, dims[t][u], dims[s][u]);
                        for (j, y) in h(t, u).basis.iter().enumerate() {
                            m.paste(j, 0, &h(s, u).coords(&y.then(x)));
                        }
                        m
                    })
                    .collect();
            }
        }
    }
    let units = (0..n).map(|s| h(s, s).coords(&gens[s].identity())).collect();
    let names = (0..n)
        .map(|s| (0..n).map(|t| vec![None; dims[s][t]]).collect())
        .collect();
    BlockAlgebra {
        field,
        labels: labels.to_vec(),
        dims,
        mult,
        units,
        names,
    }
}

/// `End(⊕ G_λ)` re-presented as a bound quiver algebra, with the vertex `λ`
/// corresponding to `G_λ`.
#[derive(Clone, Debug)]
pub struct EndomorphismAlgebra {
    pub generators: Vec<Representation>,
    pub blocks: BlockAlgebra,
    pub derived: Derived,
    pub algebra: Arc<Algebra>,
    homs: Vec<HomBasis>,
}

impl EndomorphismAlgebra {
    pub fn new(gens: &[Representation], labels: &[String]) -> Result<Self> {
        let n = gens.len();
        if n == 0 {
            return Err(Error::InvalidArgument("no generators".into()));
        }
        let mut homs = Vec::with_capacity(n * n);
        for t in 0..n {
            for s in 0..n {
                homs.push(HomBasis::new(&gens[t], &gens[s])?);
            }
        }
        let blocks = endomorphism_blocks(gens, &homs, labels);
        let derived = blocks.derive_presentation()?;
        let algebra = Arc::new(derived.algebra.clone());
        Ok(EndomorphismAlgebra {
            generators: gens.to_vec(),
            blocks,
            derived,
            algebra,
            homs,
        })
    }

    fn hom(&self, s: usize, t: usize) -> &HomBasis {
        &self.homs[t * self.generators.len() + s]
    }

    /// The arrow images as morphisms `G_t -> G_s` (arrow from `s` to `t`).
    fn arrow_morphisms(&self) -> Vec<ModuleMorphism> {
        self.algebra
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| self.hom(a.source, a.target).combine(&self.derived.arrow_image[ai]))
            .collect()
    }

    /// `Hom(⊕ G, X)` as a right module: an arrow `s -> t` acts by precomposition.
    pub fn hom_from(&self, x: &Representation) -> Result<Representation> {
        let n = self.generators.len();
        let spaces: Vec<HomBasis> = self
            .generators
            .iter()
            .map(|g| HomBasis::new(g, x))
            .collect::<Result<_>>()?;
        let field = x.field();
        let maps = self
            .arrow_morphisms()
            .iter()
            .zip(self.algebra.arrows())
            .map(|(b, a)| {
                let (src, tgt) = (&spaces[a.source], &spaces[a.target]);
                let mut m = ExactMatrix::zeros(field, src.dim(), tgt.dim());
                for (j, f) in src.basis.iter().enumerate() {
                    m.paste(j, 0, &tgt.coords(&b.then(f)));
                }
                m
            })
            .collect();
        let dims = (0..n).map(|v| spaces[v].dim()).collect();
        Representation::new(self.algebra.clone(), dims, maps)
    }

    /// `D Hom(X, ⊕ G)` as a right module: an arrow `s -> t` acts by the dual
    /// of postcomposition `Hom(X, G_t) -> Hom(X, G_s)`.
    pub fn dual_hom_to(&self, x: &Representation) -> Result<Representation> {
        let n = self.generators.len();
        let spaces: Vec<HomBasis> = self
            .generators
            .iter()
            .map(|g| HomBasis::new(x, g))
            .collect::<Result<_>>()?;
        let field = x.field();
        let maps = self
            .arrow_morphisms()
            .iter()
            .zip(self.algebra.arrows())
            .map(|(b, a)| {
                let (src, tgt) = (&spaces[a.source], &spaces[a.target]);
                // g in Hom(X, G_t) goes to g ∘ b in Hom(X, G_s)
                let mut m = ExactMatrix::zeros(field, tgt.dim(), src.dim());
                for (j, g) in tgt.basis.iter().enumerate() {
                    m.paste(j, 0, &src.coords(&g.then(b)));
                }
                m.transpose()
            })
            .collect();
        let dims = (0..n).map(|v| spaces[v].dim()).collect();
        Representation::new(self.algebra.clone(), dims, maps)
    }

    pub fn cartan(&self) -> Vec<Vec<usize>> {
        self.algebra.cartan()
    }
}

/// The kernel `K` of `End(Y) -> End(Q)` for one extension step.
#[derive(Clone, Debug)]
pub struct SquareZeroReport {
    pub weight: usize,
    pub added: usize,
    pub kernel_dim: usize,
    /// `e · dim Hom(Q, T)`.
    pub expected_dim: usize,
    pub square_zero: bool,
    pub verdict: bool,
}

/// Checks that the endomorphisms of `Y` inducing zero on `Q` form a
/// square-zero ideal of the expected dimension.
pub fn square_zero_check(step: &ExtensionStep) -> Result<SquareZeroReport> {
    let y = &step.module;
    let q = &step.quotient;
    let field = y.field();
    let ends = hom_space(y, y)?;
    let end_q = HomBasis::new(q, q)?;
    // a linear section of the projection
    let section: Vec<ExactMatrix> = step
        .projection
        .blocks
        .iter()
        .map(|b| {
            if b.cols() == 0 {
                ExactMatrix::zeros(field, 0, b.rows())
            } else {
                b.solve_left(&ExactMatrix::identity(field, b.cols()))
                    .expect("projection is onto")
            }
        })
        .collect();
    let induced: Vec<ExactMatrix> = ends
        .iter()
        .map(|phi| {
            let blocks = (0..q.dims().len())
                .map(|v| section[v].mul(&phi.blocks[v]).mul(&step.projection.blocks[v]))
                .collect();
            let f = ModuleMorphism {
                source: q.clone(),
                target: q.clone(),
                blocks,
            };
            end_q.coords(&f)
        })
        .collect();
    let refs: Vec<&ExactMatrix> = induced.iter().collect();
    let big = ExactMatrix::vstack(field, end_q.dim(), &refs);
    let kernel_rows = big.left_kernel_basis();
    let kernel: Vec<ModuleMorphism> = (0..kernel_rows.rows())
        .map(|r| {
            let mut out = ModuleMorphism::zero(y, y);
            for (i, phi) in ends.iter().enumerate() {
                let c = kernel_rows.get(r, i);
                if !c.is_zero() {
                    out = out.add(&phi.scale(&c));
                }
            }
            out
        })
        .collect();
    let square_zero = kernel.iter().all(|a| kernel.iter().all(|b| a.then(b).is_zero()));
    let hq = hom_space(q, &step.irreducible)?.len();
    let expected_dim = step.ext_dim * hq;
    let kernel_dim = kernel.len();
    Ok(SquareZeroReport {
        weight: step.weight,
        added: step.added,
        kernel_dim,
        expected_dim,
        square_zero,
        verdict: square_zero && kernel_dim == expected_dim,
    })
}

/// Which envelope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A highest weight algebra `B` whose module category is equivalent to an
/// envelope of `F(E)`, with the images of the `E(λ)`.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub side: Side,
    pub algebra: Arc<Algebra>,
    /// Relative projectives (right) or relative injectives (left) of `F(E)`.
    pub generators: Vec<Representation>,
    pub poset: WeightPoset,
    /// Images of `E(λ)`: standard modules on the right, costandard on the left.
    pub transports: Vec<Representation>,
    pub report: HwReport,
    /// Whether each transport is isomorphic to the matching (co)standard module.
    pub transports_match: bool,
}

impl Envelope {
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        self.algebra.cartan()
    }
}

fn matches(xs: &[Representation], ys: &[Representation], iso: &IsoOptions) -> Result<bool> {
    for (x, y) in xs.iter().zip(ys) {
        if is_isomorphic(x, y, iso)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `B = End(⊕ P_E(λ))`, highest weight for the opposite canonical poset, with
/// `Hom(⊕ P_E, E(λ))` as its standard modules.
pub fn right_envelope(c: &ThinCollection, opts: &SearchOptions) -> Result<Envelope> {
    let rp = relative_projectives(c)?;
    let end = EndomorphismAlgebra::new(&rp.modules, c.labels())?;
    let poset = c.canonical.opposite();
    let transports = c.modules.iter().map(|e| end.hom_from(e)).collect::<Result<Vec<_>>>()?;
    let report = check_hw(&end.algebra, &poset, opts)?;
    let standards = standard_modules(&end.algebra, &poset)?;
    let transports_match = matches(&transports, &standards, &opts.iso)?;
    Ok(Envelope {
        side: Side::Right,
        algebra: end.algebra,
        generators: rp.modules,
        poset,
        transports,
        report,
        transports_match,
    })
}

/// The left envelope, as the opposite of the right envelope of `D E`.
///
/// `B = End(⊕ I_E(λ))` is highest weight for the canonical poset, with the
/// images of `E(λ)` as costandard modules.
pub fn left_envelope(c: &ThinCollection, opts: &SearchOptions) -> Result<Envelope> {
    let dual = c.dual()?;
    let right = right_envelope(&dual, opts)?;
    let algebra = right.algebra.opposite_arc();
    let poset = c.canonical.clone();
    let transports: Vec<Representation> = right
        .transports
        .iter()
        .map(|t| dualize_over(t, algebra.clone()))
        .collect();
    let generators = right
        .generators
        .iter()
        .map(|g| dualize_over(g, c.algebra.clone()))
        .collect();
    let report = check_hw(&algebra, &poset, opts)?;
    let costandards = costandard_modules(&algebra, &poset)?;
    let transports_match = matches(&transports, &costandards, &opts.iso)?;
    Ok(Envelope {
        side: Side::Left,
        algebra,
        generators,
        poset,
        transports,
        report,
        transports_match,
    })
}

pub fn envelope(c: &ThinCollection, side: Side, opts: &SearchOptions) -> Result<Envelope> {
    match side {
        Side::Left => left_envelope(c, opts),
        Side::Right => right_envelope(c, opts),
    }
}

/// `T = ⊕ T(λ)` with `T(λ) = I_{F(Δ)}(λ)`.
#[derive(Clone, Debug)]
pub struct TiltingModule {
    pub poset: WeightPoset,
    pub summands: Vec<Representation>,
    pub module: Representation,
}

fn require_hw(alg: &Arc<Algebra>, poset: &WeightPoset, opts: &SearchOptions) -> Result<HwReport> {
    let report = check_hw(alg, poset, opts)?;
    if !report.verdict {
        return Err(Error::InvalidArgument(format!(
            "({poset}) is not a highest weight structure: {}",
            report.failure_message().unwrap_or_default()
        )));
    }
    Ok(report)
}

/// The characteristic tilting module of a highest weight algebra.
///
/// Checks `T(λ) ∈ F(Δ)`, `Ext^1(Δ(μ), T(λ)) = 0` and `Ext^i(T, T) = 0` for
/// `1 ≤ i ≤` the global dimension.
pub fn characteristic_tilting(alg: &Arc<Algebra>, poset: &WeightPoset, opts: &SearchOptions) -> Result<TiltingModule> {
    let report = require_hw(alg, poset, opts)?;
    let deltas = report.standards();
    let c = ThinCollection::new(deltas.clone(), poset.clone())?;
    let ri = relative_injectives(&c)?;
    for (l, t) in ri.modules.iter().enumerate() {
        for d in &deltas {
            if ext_dim(d, t, 1)? != 0 {
                return Err(Error::invariant(format!("Ext^1(Δ, T({})) ≠ 0", poset.label(l))));
            }
        }
        if !delta_filtration(t, &deltas, poset, opts)?.is_found() {
            return Err(Error::invariant(format!("T({}) has no Δ-filtration", poset.label(l))));
        }
    }
    let module = direct_sum(alg, &ri.modules).module;
    let gd = global_dimension_bound(alg)?;
    for i in 1..=gd {
        if ext_dim(&module, &module, i)? != 0 {
            return Err(Error::invariant(format!("Ext^{i}(T, T) ≠ 0")));
        }
    }
    Ok(TiltingModule {
        poset: poset.clone(),
        summands: ri.modules,
        module,
    })
}

/// `B = End_A(T)` with the opposite poset.
#[derive(Clone, Debug)]
pub struct RingelDual {
    pub algebra: Arc<Algebra>,
    pub poset: WeightPoset,
    pub tilting: TiltingModule,
    pub report: HwReport,
    /// `D Hom_A(Δ(λ), T)`, to be compared with `∇_B(λ)`.
    pub transported_standards: Vec<Representation>,
    /// `Hom_A(T, ∇(λ))`, to be compared with `Δ_B(λ)`.
    pub transported_costandards: Vec<Representation>,
    pub costandards_match: bool,
    pub standards_match: bool,
}

impl RingelDual {
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        self.algebra.cartan()
    }
}

pub fn ringel_dual(alg: &Arc<Algebra>, poset: &WeightPoset, opts: &SearchOptions) -> Result<RingelDual> {
    let tilting = characteristic_tilting(alg, poset, opts)?;
    let end = EndomorphismAlgebra::new(&tilting.summands, poset.labels())?;
    let dual_poset = poset.opposite();
    let report = check_hw(&end.algebra, &dual_poset, opts)?;
    let deltas = standard_modules(alg, poset)?;
    let nablas = costandard_modules(alg, poset)?;
    let transported_standards = deltas.iter().map(|d| end.dual_hom_to(d)).collect::<Result<Vec<_>>>()?;
    let transported_costandards = nablas.iter().map(|n| end.hom_from(n)).collect::<Result<Vec<_>>>()?;
    let mut costandards_match = true;
    let mut standards_match = true;
    for l in 0..poset.len() {
        let nb = costandard_module(&end.algebra, &dual_poset, l)?;
        costandards_match &= is_isomorphic(&transported_standards[l], &nb, &opts.iso)?.is_some();
        let db = standard_module(&end.algebra, &dual_poset, l)?;
        standards_match &= is_isomorphic(&transported_costandards[l], &db, &opts.iso)?.is_some();
    }
    Ok(RingelDual {
        algebra: end.algebra,
        poset: dual_poset,
        tilting,
        report,
        transported_standards,
        transported_costandards,
        costandards_match,
        standards_match,
    })
}

/// Cartan matrices of `A` and of its Ringel dual taken twice.
pub fn double_dual(alg: &Arc<Algebra>, poset: &WeightPoset, opts: &SearchOptions) -> Result<(RingelDual, RingelDual)> {
    let first = ringel_dual(alg, poset, opts)?;
    let second = ringel_dual(&first.algebra, &first.poset, opts)?;
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rep::{injective_module, projective_module};

    fn load(name: &str) -> (Arc<Algebra>, WeightPoset) {
        let f = catalog::load(name).unwrap().unwrap();
        (f.build().unwrap(), f.poset().unwrap())
    }

    fn iso(a: &Representation, b: &Representation) -> bool {
        is_isomorphic(a, b, &IsoOptions::default()).unwrap().is_some()
    }

    #[test]
    fn relative_projectives_of_standards_are_projective() {
        for name in ["a2", "auslander", "diamond", "semisimple"] {
            let (alg, poset) = load(name);
            let c = ThinCollection::standards(&alg, &poset).unwrap();
            let rp = relative_projectives(&c).unwrap();
            for (v, p) in rp.modules.iter().enumerate() {
                assert!(iso(p, &projective_module(&alg, v)), "{name} P_E({v})");
            }
            for s in &rp.steps {
                let r = square_zero_check(s).unwrap();
                assert!(r.verdict, "{name}: {r:?}");
            }
        }
    }

    #[test]
    fn relative_injectives_of_costandards_are_injective() {
        for name in ["a2", "auslander", "diamond"] {
            let (alg, poset) = load(name);
            let c = ThinCollection::costandards(&alg, &poset).unwrap();
            let ri = relative_injectives(&c).unwrap();
            for (v, i) in ri.modules.iter().enumerate() {
                assert!(iso(i, &injective_module(&alg, v)), "{name} I_E({v})");
            }
        }
    }

    #[test]
    fn right_envelope_of_standards_recovers_cartan() {
        let opts = SearchOptions::default();
        for name in ["a2", "auslander", "diamond"] {
            let (alg, poset) = load(name);
            let c = ThinCollection::standards(&alg, &poset).unwrap();
            let env = right_envelope(&c, &opts).unwrap();
            assert_eq!(env.cartan(), alg.cartan(), "{name}");
            assert!(env.report.verdict, "{name}");
            assert!(env.transports_match, "{name}");
        }
    }

    #[test]
    fn a2_ringel_dual() {
        let opts = SearchOptions::default();
        let (alg, poset) = load("a2");
        let t = characteristic_tilting(&alg, &poset, &opts).unwrap();
        assert_eq!(t.summands[0].dims(), &[1, 1]);
        assert_eq!(t.summands[1].dims(), &[0, 1]);
        let rd = ringel_dual(&alg, &poset, &opts).unwrap();
        assert_eq!(rd.algebra.dim(), 3);
        assert_eq!(rd.algebra.arrows().len(), 1);
        assert!(rd.report.verdict);
        assert!(rd.costandards_match && rd.standards_match);
        let (_, second) = double_dual(&alg, &poset, &opts).unwrap();
        assert_eq!(second.cartan(), alg.cartan());
    }

    #[test]
    fn envelope_routes_agree() {
        let opts = SearchOptions::default();
        for name in ["a2", "auslander", "diamond"] {
            let (alg, poset) = load(name);
            let deltas = ThinCollection::standards(&alg, &poset).unwrap();
            let nablas = ThinCollection::costandards(&alg, &poset).unwrap();
            let left = left_envelope(&deltas, &opts).unwrap();
            let right = right_envelope(&nablas, &opts).unwrap();
            let rd = ringel_dual(&alg, &poset, &opts).unwrap();
            assert_eq!(left.cartan(), right.cartan(), "{name}");
            assert_eq!(left.cartan(), rd.cartan(), "{name}");
            assert!(left.transports_match && right.transports_match, "{name}");
            assert!(
                rd.report.verdict && rd.costandards_match && rd.standards_match,
                "{name}"
            );
        }
    }
}
