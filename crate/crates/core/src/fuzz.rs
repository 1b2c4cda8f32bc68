//! Seeded random modules for property checks.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bqa::Algebra;
use crate::error::Result;
use crate::exactla::{ExactMatrix, Scalar};
use crate::homalg::ext;
use crate::rep::{
    direct_sum, hom_space, injective_module, simple_module, sum_of_projectives, ModuleMorphism, Representation,
};

pub const DEFAULT_MAX_DIM: usize = 30;

/// Kinds of generated modules, recorded for reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    QuotientOfProjectives,
    SubmoduleOfInjectives,
    DirectSum,
    Extension,
    Filtered,
}

pub struct Fuzzer {
    rng: ChaCha8Rng,
    max_dim: usize,
}

impl Fuzzer {
    pub fn new(seed: u64, max_dim: usize) -> Self {
        Fuzzer {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_dim,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn random_rows(&mut self, alg: &Arc<Algebra>, m: &Representation, count: usize) -> Vec<ExactMatrix> {
        let field = alg.field();
        let mut gens: Vec<ExactMatrix> = m.dims().iter().map(|&d| ExactMatrix::zeros(field, 0, d)).collect();
        let support: Vec<usize> = (0..m.dims().len()).filter(|&v| m.dim_at(v) > 0).collect();
        for _ in 0..count {
            let Some(&v) = support.choose(&mut self.rng) else { break };
            let row = ExactMatrix::random(field, 1, m.dim_at(v), &mut self.rng);
            gens[v] = ExactMatrix::vstack(field, m.dim_at(v), &[&gens[v], &row]);
        }
        gens
    }

    fn random_vertices(&mut self, alg: &Arc<Algebra>) -> Vec<usize> {
        let n = alg.num_vertices();
        let k = self.rng.gen_range(1..=2);
        (0..k).map(|_| self.rng.gen_range(0..n)).collect()
    }

    /// `P / U` for a sum of one or two indecomposable projectives and `U`
    /// generated by a few random elements.
    pub fn quotient_of_projectives(&mut self, alg: &Arc<Algebra>) -> Representation {
        let p = sum_of_projectives(alg, &self.random_vertices(alg));
        let count = self.rng.gen_range(0..=3);
        let gens = self.random_rows(alg, &p, count);
        let sub = p.generated_submodule(&gens);
        p.quotient(&sub).module
    }

    /// A submodule of a sum of injectives generated by a few random elements.
    pub fn submodule_of_injectives(&mut self, alg: &Arc<Algebra>) -> Representation {
        let parts: Vec<Representation> = self
            .random_vertices(alg)
            .into_iter()
            .map(|v| injective_module(alg, v))
            .collect();
        let i = direct_sum(alg, &parts).module;
        let count = self.rng.gen_range(1..=3);
        let gens = self.random_rows(alg, &i, count);
        i.generated_submodule(&gens).module
    }

    /// A random class of `Ext^1(m, n)` realized as `0 -> n -> E -> m -> 0`.
    pub fn extension(&mut self, m: &Representation, n: &Representation) -> Result<Representation> {
        let e = ext(m, n, 1)?;
        if e.dim() == 0 {
            return Ok(direct_sum(m.algebra(), &[n.clone(), m.clone()]).module);
        }
        let field = m.field();
        let coeffs: Vec<Scalar> = (0..e.dim()).map(|_| field.random(&mut self.rng, 2)).collect();
        Ok(e.realize(&coeffs)?.module)
    }

    /// Iterated random extensions of the given pieces (bottom piece first).
    pub fn filtered(&mut self, pieces: &[Representation], length: usize) -> Result<Representation> {
        let mut m = pieces.choose(&mut self.rng).expect("pieces").clone();
        for _ in 1..length {
            let top = pieces.choose(&mut self.rng).expect("pieces").clone();
            if m.total_dim() + top.total_dim() > self.max_dim {
                break;
            }
            m = self.extension(&top, &m)?;
        }
        Ok(m)
    }

    /// A direct sum of randomly chosen pieces within the dimension cap.
    pub fn sum_of(&mut self, pieces: &[Representation]) -> Representation {
        let alg = pieces[0].algebra().clone();
        let k = self.rng.gen_range(1..=3);
        let mut chosen: Vec<Representation> = Vec::new();
        let mut total = 0;
        for _ in 0..k {
            let p = pieces.choose(&mut self.rng).expect("pieces").clone();
            if total + p.total_dim() > self.max_dim && !chosen.is_empty() {
                break;
            }
            total += p.total_dim();
            chosen.push(p);
        }
        direct_sum(&alg, &chosen).module
    }

    /// A module of a random kind, with total dimension at most the cap.
    pub fn module(&mut self, alg: &Arc<Algebra>) -> Result<(Kind, Representation)> {
        for _ in 0..16 {
            let kind = match self.rng.gen_range(0..4) {
                0 => Kind::QuotientOfProjectives,
                1 => Kind::SubmoduleOfInjectives,
                2 => Kind::DirectSum,
                _ => Kind::Extension,
            };
            let m = match kind {
                Kind::QuotientOfProjectives => self.quotient_of_projectives(alg),
                Kind::SubmoduleOfInjectives => self.submodule_of_injectives(alg),
                Kind::DirectSum => {
                    let a = self.quotient_of_projectives(alg);
                    let b = self.submodule_of_injectives(alg);
                    direct_sum(alg, &[a, b]).module
                }
                _ => {
                    let a = self.quotient_of_projectives(alg);
                    let b = self.submodule_of_injectives(alg);
                    if a.total_dim() + b.total_dim() > self.max_dim {
                        continue;
                    }
                    self.extension(&a, &b)?
                }
            };
            if !m.is_zero() && m.total_dim() <= self.max_dim {
                return Ok((kind, m));
            }
        }
        let v = self.rng.gen_range(0..alg.num_vertices());
        Ok((Kind::QuotientOfProjectives, simple_module(alg, v)))
    }

    /// A random morphism `m -> n`.
    pub fn morphism(&mut self, m: &Representation, n: &Representation) -> Result<ModuleMorphism> {
        let field = m.field();
        let mut out = ModuleMorphism::zero(m, n);
        for b in hom_space(m, n)? {
            out = out.add(&b.scale(&field.random(&mut self.rng, 2)));
        }
        Ok(out)
    }

    /// A mixed corpus: about a third built from `pieces` (sums and iterated
    /// extensions), the rest of random kinds.
    pub fn corpus(
        &mut self,
        alg: &Arc<Algebra>,
        pieces: Option<&[Representation]>,
        size: usize,
    ) -> Result<Vec<(Kind, Representation)>> {
        let mut out = Vec::with_capacity(size);
        while out.len() < size {
            let roll = self.rng.gen_range(0..6);
            let item = match (pieces, roll) {
                (Some(p), 0) => (Kind::DirectSum, self.sum_of(p)),
                (Some(p), 1) => {
                    let len = self.rng.gen_range(2..=4);
                    (Kind::Filtered, self.filtered(p, len)?)
                }
                _ => self.module(alg)?,
            };
            if item.1.total_dim() <= self.max_dim && !item.1.is_zero() {
                out.push(item);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::hw::standard_modules;

    #[test]
    fn corpus_is_deterministic_and_capped() {
        let f = catalog::load("diamond").unwrap().unwrap();
        let alg = f.build().unwrap();
        let deltas = standard_modules(&alg, &f.poset().unwrap()).unwrap();
        let a = Fuzzer::new(11, 30).corpus(&alg, Some(&deltas), 40).unwrap();
        let b = Fuzzer::new(11, 30).corpus(&alg, Some(&deltas), 40).unwrap();
        assert_eq!(a.len(), 40);
        for ((ka, ma), (kb, mb)) in a.iter().zip(&b) {
            assert_eq!(ka, kb);
            assert_eq!(ma.dims(), mb.dims());
            assert_eq!(ma.maps(), mb.maps());
            assert!(ma.total_dim() <= 30 && !ma.is_zero());
        }
    }
}
