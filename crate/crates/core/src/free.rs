//! Free modules on the category: finite direct sums of representable
//! functors, with their hom-set bases.
//!
//! A free module is stored combinatorially. Its basis at degree `n` is the
//! disjoint union over generators `i` (of degree `d_i`) of the hom sets
//! `C(d_i, n)`, in canonical order; every morphism acts by post-composition,
//! which is a permutation of this basis. Matrices are only materialized on
//! demand.

use std::sync::Arc;


use crate::category::{compose, transposition, color_insertion, FiGMorphism, HomBasis};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::group::FiniteGroup;
use crate::matrix::Matrix;
use crate::module::{Bounds, DegreewiseModule};

/// A free module `⊕_i C(d_i, −)`, truncated to `0..=window`.
#[derive(Debug, Clone)]
pub struct FreeModule {
    pub field: FieldSpec,
    pub group: Arc<FiniteGroup>,
    pub window: usize,
    pub gen_degrees: Vec<usize>,
    /// `bases[i][n]` is the hom basis `C(d_i, n)`; empty below `d_i`.
    bases: Vec<Vec<Arc<HomBasis>>>,
    /// Basis offset of generator `i` at degree `n`.
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl FreeModule {
    pub fn new(
        field: FieldSpec,
        group: Arc<FiniteGroup>,
        gen_degrees: Vec<usize>,
        window: usize,
    ) -> Result<Self> {
        for &d in &gen_degrees {
            if d > window {
                return Err(Error::window("free module generator degree", d, window));
            }
        }
        let mut bases = Vec::with_capacity(gen_degrees.len());
        for &d in &gen_degrees {
            let per_degree: Vec<Arc<HomBasis>> = (0..=window)
                .map(|n| HomBasis::new(d, n, &group))
                .collect();
            bases.push(per_degree);
        }
        let mut offsets = vec![vec![0usize; window + 1]; gen_degrees.len()];
        let mut dims = vec![0usize; window + 1];
        for n in 0..=window {
            let mut off = 0usize;
            for (i, b) in bases.iter().enumerate() {
                offsets[i][n] = off;
                off += b[n].len();
            }
            dims[n] = off;
        }
        Ok(FreeModule {
            field,
            group,
            window,
            gen_degrees,
            bases,
            offsets,
            dims,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn num_gens(&self) -> usize {
        self.gen_degrees.len()
    }

    /// Basis element `(generator, morphism)` at global index `idx` of degree `n`.
    pub fn basis_element(&self, n: usize, idx: usize) -> (usize, &FiGMorphism) {
        for (i, b) in self.bases.iter().enumerate() {
            let off = self.offsets[i][n];
            let len = b[n].len();
            if idx < off + len {
                return (i, &b[n].morphisms[idx - off]);
            }
        }
        panic!("basis index {idx} out of range at degree {n}");
    }

    /// Global index of basis element `(generator i, alpha)` at degree `n`.
    pub fn index_of(&self, n: usize, i: usize, alpha: &FiGMorphism) -> usize {
        self.offsets[i][n] + self.bases[i][n].index_of(alpha)
    }

    /// Index of the generator `i` itself in degree `d_i` (identity morphism).
    pub fn generator_index(&self, i: usize) -> usize {
        let d = self.gen_degrees[i];
        self.index_of(d, i, &FiGMorphism::identity(d, &self.group))
    }

    /// Where the basis of degree `n` lands under `alpha: n -> p`
    /// (post-composition). Returns the permutation-like index map.
    pub fn act_indices(&self, n: usize, alpha: &FiGMorphism) -> Vec<usize> {
        assert_eq!(alpha.source, n);
        let p = alpha.target;
        let mut out = Vec::with_capacity(self.dims[n]);
        for (i, b) in self.bases.iter().enumerate() {
            for beta in &b[n].morphisms {
                let composed = compose(alpha, beta, &self.group);
                out.push(self.index_of(p, i, &composed));
            }
        }
        out
    }

    /// Apply `alpha: n -> p` to a degree-`n` vector.
    pub fn act_vector<S: Scalar>(&self, n: usize, alpha: &FiGMorphism, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.dims[n]);
        let map = self.act_indices(n, alpha);
        let mut out = vec![S::zero(); self.dims[alpha.target]];
        for (src, &dst) in map.iter().enumerate() {
            if !v[src].is_zero() {
                out[dst].add_assign(&v[src]);
            }
        }
        out
    }

    /// Materialize the matrix of `alpha: n -> p` (a 0/1 permutation-like matrix).
    pub fn act_matrix<S: Scalar>(&self, n: usize, alpha: &FiGMorphism) -> Matrix<S> {
        let map = self.act_indices(n, alpha);
        let mut m = Matrix::zeros(self.dims[alpha.target], self.dims[n]);
        for (src, &dst) in map.iter().enumerate() {
            m[(dst, src)] = S::one();
        }
        m
    }

    /// The structure map `ι_n` index map: degree `n` basis into degree `n+1`.
    pub fn structmap_indices(&self, n: usize) -> Vec<usize> {
        self.act_indices(n, &FiGMorphism::standard_inclusion(n, &self.group))
    }

    /// Action index maps for the standard generators of the endomorphism
    /// group at degree `n`: the adjacent transpositions followed by the
    /// color insertions (one per group element).
    pub fn generator_actions(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for i in 1..n {
            out.push(self.act_indices(n, &transposition(n, i, &self.group)));
        }
        for g in 0..self.group.order() {
            if n >= 1 {
                out.push(self.act_indices(n, &color_insertion(n, g, &self.group)));
            }
        }
        out
    }

    /// Materialize the whole module with explicit matrices.
    pub fn to_module<S: Scalar>(&self) -> DegreewiseModule<S> {
        let mut transp = Vec::with_capacity(self.window + 1);
        let mut colors = Vec::with_capacity(self.window + 1);
        for n in 0..=self.window {
            let mut tn = Vec::new();
            for i in 1..n {
                tn.push(self.act_matrix::<S>(n, &transposition(n, i, &self.group)));
            }
            transp.push(tn);
            let mut cn = Vec::new();
            for g in 0..self.group.order() {
                if n >= 1 {
                    cn.push(self.act_matrix::<S>(n, &color_insertion(n, g, &self.group)));
                } else {
                    cn.push(Matrix::identity(self.dims[0]));
                }
            }
            colors.push(cn);
        }
        let structmaps = (0..self.window)
            .map(|n| {
                self.act_matrix::<S>(n, &FiGMorphism::standard_inclusion(n, &self.group))
            })
            .collect();
        let g = self.gen_degrees.iter().copied().max();
        DegreewiseModule::from_parts(
            self.field,
            self.group.clone(),
            self.window,
            self.dims.clone(),
            transp,
            colors,
            structmaps,
            Bounds {
                gen: Some(g.map_or(-1, |x| x as i64)),
                rel: Some(-1), // free: no relations
            },
        )
    }

    /// Dimension counting identity used in tests: `dim_n = Σ_i |C(d_i, n)|`.
    pub fn expected_dim(&self, n: usize) -> usize {
        self.gen_degrees
            .iter()
            .map(|&d| crate::category::hom_size(d, n, self.group.order()))
            .sum()
    }
}

/// Scatter a vector along a basis index map.
pub fn permute_indices<S: Scalar>(v: &[S], index_map: &[usize], dim: usize) -> Vec<S> {
    let mut w = vec![S::zero(); dim];
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            w[index_map[i]] = x.clone();
        }
    }
    w
}

/// Close an echelon span under permutation-like operators.
///
/// `wave` holds candidate vectors whose insertion has not been attempted
/// yet. Each wave is pre-filtered by the quotient projection of the current
/// span, which is much cheaper than a full reduction per candidate; because
/// the span only grows, a candidate that projects to zero can never enlarge
/// it later, so the filter is sound.
pub fn orbit_closure<S: Scalar>(
    ech: &mut crate::matrix::Echelon<S>,
    mut wave: Vec<Vec<S>>,
    gens: &[Vec<usize>],
) {
    let dim = ech.dim();
    while !wave.is_empty() {
        if ech.rank() == dim {
            return;
        }
        let proj = crate::module::quotient_projection(ech);
        let mut next = Vec::new();
        for v in wave {
            let image = proj.apply(&v);
            if image.iter().all(|x| x.is_zero()) {
                continue;
            }
            if ech.insert(v.clone()).is_some() {
                for g in gens {
                    next.push(permute_indices(&v, g, dim));
                }
            }
        }
        wave = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::canonical_factor;
    use crate::field::Rat;

    #[test]
    fn free_module_dims() {
        let triv = Arc::new(FiniteGroup::trivial());
        let m0 = FreeModule::new(FieldSpec::Rational, triv.clone(), vec![0], 5).unwrap();
        assert_eq!(m0.dims(), &[1, 1, 1, 1, 1, 1]);
        let m1 = FreeModule::new(FieldSpec::Rational, triv.clone(), vec![1], 5).unwrap();
        assert_eq!(m1.dims(), &[0, 1, 2, 3, 4, 5]);
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let m1c = FreeModule::new(FieldSpec::Rational, c2, vec![1], 4).unwrap();
        assert_eq!(m1c.dims(), &[0, 2, 4, 6, 8]);
        // window error
        assert!(FreeModule::new(FieldSpec::Rational, triv, vec![3], 2).is_err());
    }

    #[test]
    fn action_is_functorial_on_basis() {
        let triv = Arc::new(FiniteGroup::trivial());
        let m1 = FreeModule::new(FieldSpec::Rational, triv.clone(), vec![1], 4).unwrap();
        // compare act(beta ∘ alpha) with act(beta) ∘ act(alpha) on indices
        for alpha in crate::category::hom_set(2, 3, &triv) {
            for beta in crate::category::hom_set(3, 4, &triv) {
                let ba = compose(&beta, &alpha, &triv);
                let direct = m1.act_indices(2, &ba);
                let a_then_b: Vec<usize> = m1
                    .act_indices(2, &alpha)
                    .iter()
                    .map(|&j| m1.act_indices(3, &beta)[j])
                    .collect();
                assert_eq!(direct, a_then_b);
            }
        }
    }

    #[test]
    fn materialized_free_module_validates() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let f = FreeModule::new(FieldSpec::Rational, c2, vec![0, 2], 4).unwrap();
        let m: DegreewiseModule<Rat> = f.to_module();
        assert!(m.validate().is_empty());
    }

    #[test]
    fn canonical_factor_matches_action() {
        // applying alpha equals applying the inclusion chain then tau
        let triv = Arc::new(FiniteGroup::trivial());
        let f = FreeModule::new(FieldSpec::Rational, triv.clone(), vec![1], 4).unwrap();
        for alpha in crate::category::hom_set(2, 4, &triv) {
            let tau = canonical_factor(&alpha, &triv);
            let chain = crate::category::inclusion_chain(2, 4, &triv);
            let via: Vec<usize> = f
                .act_indices(2, &chain)
                .iter()
                .map(|&j| f.act_indices(4, &tau)[j])
                .collect();
            assert_eq!(f.act_indices(2, &alpha), via);
        }
    }
}
