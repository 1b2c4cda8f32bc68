//! Algebras given by structure constants on a vertex decomposition, and
//! their re-presentation as bound quiver algebras.

use super::ideal::{key, Cut, IdealSpan, PathVec};
use super::{build_algebra, Algebra, Arrow, Elem, Presentation, Relation};
use crate::error::{Error, Result};
use crate::exactla::{ExactMatrix, Field, RowSpace};

/// A finite-dimensional algebra `S = ⊕ e_s S e_t` presented blockwise.
///
/// Elements of block `(s, t)` are row vectors of length `dims[s][t]`.
/// `mult[s][t][u][i]` is the `dims[t][u] × dims[s][u]` matrix of
/// `y ↦ b_i · y`, where `b_i` is the `i`-th basis vector of block `(s, t)`.
#[derive(Clone, Debug)]
pub struct BlockAlgebra {
    pub field: Field,
    pub labels: Vec<String>,
    pub dims: Vec<Vec<usize>>,
    pub mult: Vec<Vec<Vec<Vec<ExactMatrix>>>>,
    pub units: Vec<ExactMatrix>,
    /// Optional names for block basis vectors, used to name arrows.
    pub names: Vec<Vec<Vec<Option<String>>>>,
}

/// A bound quiver algebra together with its identification with a block algebra.
#[derive(Clone, Debug)]
pub struct Derived {
    pub algebra: Algebra,
    /// Row `1 × dims[s][t]` for every basis element of `algebra` (from `s` to `t`).
    pub basis_image: Vec<ExactMatrix>,
    /// Image of each arrow, same format.
    pub arrow_image: Vec<ExactMatrix>,
}

fn to_dense(field: Field, e: &Elem, dim: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(field, 1, dim);
    for (i, c) in e {
        m.set(0, *i, c);
    }
    m
}

fn to_elem(m: &ExactMatrix) -> Elem {
    (0..m.cols())
        .map(|j| (j, m.get(0, j)))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

fn valid_name(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl BlockAlgebra {
    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    /// Product of `x` in block `(s, t)` with `y` in block `(t, u)`.
    pub fn prod(&self, s: usize, t: usize, u: usize, x: &ExactMatrix, y: &ExactMatrix) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.field, 1, self.dims[s][u]);
        if self.dims[s][u] == 0 {
            return out;
        }
        for i in 0..self.dims[s][t] {
            let c = x.get(0, i);
            if c.is_zero() {
                continue;
            }
            out = out.add(&y.mul(&self.mult[s][t][u][i]).scale(&c));
        }
        out
    }

    /// Builds the block description of a subquotient of `alg`: block `(s, t)` is spanned
    /// by `spaces[s][t]` (rows over the basis of `alg`) modulo `kills[s][t]`.
    pub(crate) fn from_subquotient(
        alg: &Algebra,
        verts: &[usize],
        spaces: Vec<Vec<ExactMatrix>>,
        kills: Option<Vec<Vec<ExactMatrix>>>,
        names: Vec<Vec<Vec<Option<String>>>>,
    ) -> BlockAlgebra {
        let field = alg.field();
        let n = verts.len();
        let dim = alg.dim();
        let dims: Vec<Vec<usize>> = spaces.iter().map(|r| r.iter().map(|m| m.rows()).collect()).collect();
        // [B; K] for each block, used to read off coordinates
        let frames: Vec<Vec<ExactMatrix>> = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| match &kills {
                        Some(k) => ExactMatrix::vstack(field, dim, &[&spaces[s][t], &k[s][t]]),
                        None => spaces[s][t].clone(),
                    })
                    .collect()
            })
            .collect();
        let coords = |s: usize, t: usize, z: &ExactMatrix| -> ExactMatrix {
            let d = dims[s][t];
            if d == 0 {
                return ExactMatrix::zeros(field, 1, 0);
            }
            let x = frames[s][t].solve_left(z).expect("product stays in the block");
            x.block(0, 1, 0, d)
        };
        let mut mult = vec![vec![vec![Vec::new(); n]; n]; n];
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    let mats = (0..dims[s][t])
                        .map(|i| {
                            let bi = to_elem(&spaces[s][t].row(i));
                            let mut m = ExactMatrix::zeros(field, dims[t][u], dims[s][u]);
                            for j in 0..dims[t][u] {
                                let bj = to_elem(&spaces[t][u].row(j));
                                let p = to_dense(field, &alg.mul(&bi, &bj), dim);
                                let c = coords(s, u, &p);
                                m.paste(j, 0, &c);
                            }
                            m
                        })
                        .collect();
                    mult[s][t][u] = mats;
                }
            }
        }
        let units = (0..n)
            .map(|s| {
                let e = alg.basis_elem(alg.idempotent(verts[s]));
                coords(s, s, &to_dense(field, &e, dim))
            })
            .collect();
        BlockAlgebra {
            field,
            labels: verts.iter().map(|&v| alg.vertex_label(v).to_string()).collect(),
            dims,
            mult,
            units,
            names,
        }
    }

    fn unit_row(&self, d: usize, i: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.field, 1, d);
        m.set(0, i, &self.field.one());
        m
    }

    /// The residue character of the local ring `e_s S e_s`, as a column.
    fn residue_character(&self, s: usize) -> Result<ExactMatrix> {
        let field = self.field;
        let n = self.dims[s][s];
        let fail = || Error::LocalityFailure(self.labels[s].clone());
        if n == 0 {
            return Err(fail());
        }
        let mut chi = ExactMatrix::zeros(field, n, 1);
        let id = ExactMatrix::identity(field, n);
        for i in 0..n {
            let m = &self.mult[s][s][s][i];
            let nilpotent_after = |c: &crate::exactla::Scalar| {
                let shifted = m.sub(&id.scale(c));
                let mut p = shifted.clone();
                for _ in 1..n {
                    p = p.mul(&shifted);
                }
                p.is_zero()
            };
            let trace = (0..n).fold(field.zero(), |acc, k| field.add(&acc, &m.get(k, k)));
            let n_scalar = field.from_i64(n as i64);
            let guess = field.inv(&n_scalar).map(|inv| field.mul(&trace, &inv));
            let c = match guess {
                Some(c) if nilpotent_after(&c) => c,
                Some(_) => return Err(fail()),
                None => field
                    .elements()
                    .into_iter()
                    .flatten()
                    .find(|c| nilpotent_after(c))
                    .ok_or_else(fail)?,
            };
            chi.set(i, 0, &c);
        }
        if !self.units[s].mul(&chi).get(0, 0).is_one() {
            return Err(fail());
        }
        Ok(chi)
    }

    /// Re-presents the algebra by a quiver with relations.
    ///
    /// The radical is located blockwise, arrows are a complement of
    /// `rad^2` in `rad`, and relations are the kernel of the induced map from
    /// paths. Fails with `LocalityFailure` if some `e_s S e_s` is not local
    /// with residue field `k`.
    pub fn derive_presentation(&self) -> Result<Derived> {
        let field = self.field;
        let n = self.num_vertices();
        let mut chis = Vec::new();
        let mut rad: Vec<Vec<ExactMatrix>> = vec![Vec::new(); n];
        for s in 0..n {
            let chi = self.residue_character(s)?;
            let j = chi.left_kernel_basis();
            let fail = || Error::LocalityFailure(self.labels[s].clone());
            let d = self.dims[s][s];
            for i in 0..d {
                let b = self.unit_row(d, i);
                for r in 0..j.rows() {
                    let x = j.row(r);
                    if !self.prod(s, s, s, &b, &x).mul(&chi).is_zero()
                        || !self.prod(s, s, s, &x, &b).mul(&chi).is_zero()
                    {
                        return Err(fail());
                    }
                }
            }
            let mut power = j.clone();
            let mut steps = 0;
            while power.rows() > 0 {
                steps += 1;
                if steps > d + 1 {
                    return Err(fail());
                }
                let mut rows = Vec::new();
                for p in 0..power.rows() {
                    for q in 0..j.rows() {
                        rows.push(self.prod(s, s, s, &power.row(p), &j.row(q)));
                    }
                }
                let refs: Vec<&ExactMatrix> = rows.iter().collect();
                power = ExactMatrix::vstack(field, d, &refs).row_space_basis();
            }
            chis.push(chi);
            for t in 0..n {
                rad[s].push(if s == t {
                    j.clone()
                } else {
                    ExactMatrix::identity(field, self.dims[s][t])
                });
            }
        }
        for s in 0..n {
            for t in 0..n {
                if s == t {
                    continue;
                }
                for i in 0..self.dims[s][t] {
                    for k in 0..self.dims[t][s] {
                        let p = self.prod(
                            s,
                            t,
                            s,
                            &self.unit_row(self.dims[s][t], i),
                            &self.unit_row(self.dims[t][s], k),
                        );
                        if !p.mul(&chis[s]).is_zero() {
                            return Err(Error::invariant(format!(
                                "vertices `{}` and `{}` are isomorphic; the algebra is not basic",
                                self.labels[s], self.labels[t]
                            )));
                        }
                    }
                }
            }
        }

        // arrows: complement of rad^2 in rad, blockwise
        let mut arrows = Vec::new();
        let mut arrow_image = Vec::new();
        let mut used_names: Vec<String> = Vec::new();
        let mut generic = 0;
        for s in 0..n {
            for u in 0..n {
                let d = self.dims[s][u];
                let mut sq = Vec::new();
                for t in 0..n {
                    for a in 0..rad[s][t].rows() {
                        for b in 0..rad[t][u].rows() {
                            sq.push(self.prod(s, t, u, &rad[s][t].row(a), &rad[t][u].row(b)));
                        }
                    }
                }
                let refs: Vec<&ExactMatrix> = sq.iter().collect();
                let mut span = RowSpace::span(&ExactMatrix::vstack(field, d, &refs));
                for r in 0..rad[s][u].rows() {
                    let cand = rad[s][u].row(r);
                    if span.contains(&cand) {
                        continue;
                    }
                    span = span.sum(&RowSpace::span(&cand));
                    let unit_pos = (0..d).filter(|&k| !cand.get(0, k).is_zero()).collect::<Vec<_>>();
                    let hinted = match unit_pos.as_slice() {
                        [k] if cand.get(0, *k).is_one() => self.names[s][u][*k].clone(),
                        _ => None,
                    };
                    let name = match hinted {
                        Some(h) if valid_name(&h) && !used_names.contains(&h) => h,
                        _ => loop {
                            generic += 1;
                            let g = format!("x{generic}");
                            if !used_names.contains(&g) {
                                break g;
                            }
                        },
                    };
                    used_names.push(name.clone());
                    arrows.push(Arrow {
                        name,
                        source: s,
                        target: u,
                    });
                    arrow_image.push(cand);
                }
            }
        }

        // images of paths, by length, until every path of some length vanishes
        struct P {
            word: Vec<usize>,
            s: usize,
            t: usize,
            img: ExactMatrix,
        }
        let mut by_len: Vec<Vec<P>> = vec![Vec::new()];
        by_len.push(
            arrows
                .iter()
                .enumerate()
                .map(|(i, a)| P {
                    word: vec![i],
                    s: a.source,
                    t: a.target,
                    img: arrow_image[i].clone(),
                })
                .collect(),
        );
        let cap = self.total_dim() + 2;
        let vanishing = loop {
            let last = by_len.last().unwrap();
            if last.iter().all(|p| p.img.is_zero()) {
                break by_len.len() - 1;
            }
            if by_len.len() > cap {
                return Err(Error::invariant("radical of derived algebra is not nilpotent"));
            }
            let mut next = Vec::new();
            for p in last {
                for (ai, a) in arrows.iter().enumerate() {
                    if a.source == p.t {
                        let mut word = p.word.clone();
                        word.push(ai);
                        next.push(P {
                            word,
                            s: p.s,
                            t: a.target,
                            img: self.prod(p.s, p.t, a.target, &p.img, &arrow_image[ai]),
                        });
                    }
                }
            }
            by_len.push(next);
        };

        // relations: kernel of paths of length >= 2 in each block, leading term = largest path
        let mut candidates: Vec<PathVec> = Vec::new();
        for s in 0..n {
            for u in 0..n {
                let mut paths: Vec<&P> = by_len
                    .iter()
                    .skip(2)
                    .flatten()
                    .filter(|p| p.s == s && p.t == u)
                    .collect();
                if paths.is_empty() {
                    continue;
                }
                paths.sort_by_key(|p| std::cmp::Reverse(key(&p.word)));
                let imgs: Vec<&ExactMatrix> = paths.iter().map(|p| &p.img).collect();
                let m = ExactMatrix::vstack(field, self.dims[s][u], &imgs);
                let ker = m.left_kernel_basis().row_space_basis();
                for r in 0..ker.rows() {
                    let v: PathVec = (0..paths.len())
                        .filter(|&c| !ker.get(r, c).is_zero())
                        .map(|c| (key(&paths[c].word), ker.get(r, c)))
                        .collect();
                    candidates.push(v);
                }
            }
        }
        candidates.sort_by(|a, b| a.keys().next_back().cmp(&b.keys().next_back()));
        let mut ideal = IdealSpan::new(field, &arrows, Cut::Truncate(vanishing + 1));
        let mut relations = Vec::new();
        for c in candidates {
            if ideal.reduce(c.clone()).is_empty() {
                continue;
            }
            ideal.close(vec![c.clone()]);
            let mut terms: Vec<_> = c.into_iter().rev().map(|((_, w), x)| (x, w)).collect();
            terms.sort_by_key(|t| std::cmp::Reverse(key(&t.1)));
            relations.push(Relation { terms });
        }
        let presentation = Presentation {
            field,
            vertices: self.labels.clone(),
            arrows,
            relations,
            bound: vanishing.max(1),
        };
        let algebra = build_algebra(&presentation)?;
        if algebra.dim() != self.total_dim() {
            return Err(Error::invariant(format!(
                "re-presented algebra has dimension {} instead of {}",
                algebra.dim(),
                self.total_dim()
            )));
        }
        let basis_image: Vec<ExactMatrix> = algebra
            .basis()
            .iter()
            .map(|b| {
                if b.word.is_empty() {
                    self.units[b.source].clone()
                } else {
                    let mut x = arrow_image[b.word[0]].clone();
                    let mut t = algebra.arrows()[b.word[0]].target;
                    for &a in &b.word[1..] {
                        let u = algebra.arrows()[a].target;
                        x = self.prod(b.source, t, u, &x, &arrow_image[a]);
                        t = u;
                    }
                    x
                }
            })
            .collect();
        for s in 0..n {
            for t in 0..n {
                let rows: Vec<&ExactMatrix> = algebra.pair_basis(s, t).iter().map(|&i| &basis_image[i]).collect();
                let m = ExactMatrix::vstack(field, self.dims[s][t], &rows);
                if m.rank() != self.dims[s][t] {
                    return Err(Error::invariant("path images do not span a block"));
                }
            }
        }
        let dim = algebra.dim();
        for i in 0..dim {
            for j in 0..dim {
                let (bi, bj) = (&algebra.basis()[i], &algebra.basis()[j]);
                if bi.target != bj.source {
                    continue;
                }
                let (s, t, u) = (bi.source, bi.target, bj.target);
                let want = self.prod(s, t, u, &basis_image[i], &basis_image[j]);
                let mut got = ExactMatrix::zeros(field, 1, self.dims[s][u]);
                for (k, c) in algebra.product(i, j) {
                    got = got.add(&basis_image[*k].scale(c));
                }
                if got != want {
                    return Err(Error::invariant("re-presented structure constants disagree"));
                }
            }
        }
        Ok(Derived {
            algebra,
            basis_image,
            arrow_image,
        })
    }
}
