//! Presentations and their compilation to degreewise modules.
//!
//! A presentation is the exact, untruncated description of a module:
//! generator degrees plus relation elements of the corresponding free
//! module. Compilation quotients the free module degree by degree by the
//! submodule the relations generate.

use std::sync::Arc;


use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::free::FreeModule;
use crate::group::FiniteGroup;
use crate::matrix::{Echelon, Matrix};
use crate::module::{Bounds, DegreewiseModule};

/// One term of a relation: `coeff * (generator, morphism)`.
#[derive(Debug, Clone)]
pub struct RelationTerm<S: Scalar> {
    pub gen: usize,
    pub morphism: crate::category::FiGMorphism,
    pub coeff: S,
}

/// A relation element living in the free module at `degree`.
#[derive(Debug, Clone)]
pub struct Relation<S: Scalar> {
    pub degree: usize,
    pub terms: Vec<RelationTerm<S>>,
}

/// Generator degrees and relations: the source of truth for a module.
#[derive(Debug, Clone)]
pub struct Presentation<S: Scalar> {
    pub field: FieldSpec,
    pub group: Arc<FiniteGroup>,
    pub generators: Vec<usize>,
    pub relations: Vec<Relation<S>>,
}

impl<S: Scalar> Presentation<S> {
    pub fn max_generator_degree(&self) -> Option<usize> {
        self.generators.iter().copied().max()
    }

    pub fn max_relation_degree(&self) -> Option<usize> {
        self.relations.iter().map(|r| r.degree).max()
    }

    /// Certified bounds of the compiled module: generators bound the
    /// generating degree, relations bound the first homological degree.
    pub fn bounds(&self) -> Bounds {
        Bounds {
            gen: Some(self.max_generator_degree().map_or(-1, |g| g as i64)),
            rel: Some(self.max_relation_degree().map_or(-1, |r| r as i64)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.field.validate()?;
        for r in &self.relations {
            for t in &r.terms {
                if t.gen >= self.generators.len() {
                    return Err(Error::invalid(format!(
                        "relation term references generator {} of {}",
                        t.gen,
                        self.generators.len()
                    )));
                }
                if t.morphism.source != self.generators[t.gen] {
                    return Err(Error::invalid(format!(
                        "relation term morphism has source {} but generator {} has degree {}",
                        t.morphism.source, t.gen, self.generators[t.gen]
                    )));
                }
                if t.morphism.target != r.degree {
                    return Err(Error::invalid(format!(
                        "relation term morphism targets degree {} in a degree-{} relation",
                        t.morphism.target, r.degree
                    )));
                }
                if t.morphism.colors.iter().any(|&c| c >= self.group.order()) {
                    return Err(Error::invalid("relation term color out of range"));
                }
            }
        }
        Ok(())
    }

    /// Compile onto a truncation window.
    pub fn compile(&self, window: usize) -> Result<Compiled<S>> {
        self.validate()?;
        if let Some(g) = self.max_generator_degree() {
            if g > window {
                return Err(Error::window("presentation generator degree", g, window));
            }
        }
        if let Some(r) = self.max_relation_degree() {
            if r > window {
                return Err(Error::window("presentation relation degree", r, window));
            }
        }
        let free = FreeModule::new(
            self.field,
            self.group.clone(),
            self.generators.clone(),
            window,
        )?;

        // relation vectors grouped by degree
        let mut rels_at: Vec<Vec<Vec<S>>> = vec![Vec::new(); window + 1];
        for r in &self.relations {
            let mut v = vec![S::zero(); free.dim(r.degree)];
            for t in &r.terms {
                let idx = free.index_of(r.degree, t.gen, &t.morphism);
                v[idx].add_assign(&t.coeff);
            }
            rels_at[r.degree].push(v);
        }

        let mut spans: Vec<Echelon<S>> = Vec::with_capacity(window + 1);
        for n in 0..=window {
            let dim = free.dim(n);
            let mut ech = Echelon::new(dim);
            let gens = free.generator_actions(n);
            let mut wave: Vec<Vec<S>> = Vec::new();

            // push the previous degree's span through the structure map; the
            // image is already stable under the embedded endomorphism group
            // of the previous degree, so only the new transposition (and at
            // degree 1 the colors) must enter the first wave
            if n > 0 {
                let phi = free.structmap_indices(n - 1);
                let mut seeds: Vec<Vec<S>> = Vec::new();
                for row in spans[n - 1].rows() {
                    seeds.push(permute(row, &phi, dim));
                }
                for s in &seeds {
                    ech.insert(s.clone());
                }
                let new_gens: Vec<&Vec<usize>> = if n >= 2 {
                    vec![&gens[n - 2]] // s_{n-1}
                } else {
                    gens.iter().collect()
                };
                for s in &seeds {
                    for pim in &new_gens {
                        wave.push(permute(s, pim, dim));
                    }
                }
            }

            // relations entering at this degree
            for v in &rels_at[n] {
                if ech.insert(v.clone()).is_some() {
                    for pim in &gens {
                        wave.push(permute(v, pim, dim));
                    }
                }
            }

            crate::free::orbit_closure(&mut ech, wave, &gens);
            spans.push(ech);
        }

        // projections and induced structure
        let projections: Vec<Matrix<S>> = spans
            .iter()
            .map(crate::module::quotient_projection)
            .collect();
        let sections: Vec<Vec<usize>> = spans.iter().map(|e| e.free_columns()).collect();
        let dims: Vec<usize> = sections.iter().map(|s| s.len()).collect();

        let induced = |n_to: usize, index_map: &[usize], n_from: usize| -> Matrix<S> {
            // projection ∘ (basis permutation) ∘ section: columns are copied
            // straight out of the projection matrix
            let proj = &projections[n_to];
            let mut m = Matrix::zeros(dims[n_to], dims[n_from]);
            for (c, &j) in sections[n_from].iter().enumerate() {
                m.set_col(c, &proj.col(index_map[j]));
            }
            m
        };

        let mut transp = Vec::with_capacity(window + 1);
        let mut colors = Vec::with_capacity(window + 1);
        for n in 0..=window {
            let mut tn = Vec::new();
            for i in 1..n {
                let pim = free.act_indices(n, &crate::category::transposition(n, i, &self.group));
                tn.push(induced(n, &pim, n));
            }
            transp.push(tn);
            let mut cn = Vec::new();
            if n == 0 {
                for _ in 0..self.group.order() {
                    cn.push(Matrix::identity(dims[0]));
                }
            } else {
                for g in 0..self.group.order() {
                    let pim =
                        free.act_indices(n, &crate::category::color_insertion(n, g, &self.group));
                    cn.push(induced(n, &pim, n));
                }
            }
            colors.push(cn);
        }
        let mut structmaps = Vec::with_capacity(window);
        for n in 0..window {
            let pim = free.structmap_indices(n);
            structmaps.push(induced(n + 1, &pim, n));
        }

        let module = DegreewiseModule::from_parts(
            self.field,
            self.group.clone(),
            window,
            dims,
            transp,
            colors,
            structmaps,
            self.bounds(),
        );
        Ok(Compiled {
            free,
            module,
            relation_spans: spans,
            projections,
        })
    }
}

/// Result of compiling a presentation.
#[derive(Debug)]
pub struct Compiled<S: Scalar> {
    pub free: FreeModule,
    pub module: DegreewiseModule<S>,
    /// Degreewise echelon bases of the submodule the relations generate.
    pub relation_spans: Vec<Echelon<S>>,
    /// Degreewise quotient projections from the free module.
    pub projections: Vec<Matrix<S>>,
}

use crate::free::permute_indices as permute;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::FiGMorphism;
    use crate::field::Rat;
    use crate::testutil::k0_presentation;
    use num_traits::One;

    fn triv() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::trivial())
    }

    #[test]
    fn compile_k0() {
        let c = k0_presentation().compile(5).unwrap();
        assert_eq!(c.module.dims(), &[1, 0, 0, 0, 0, 0]);
        assert!(c.module.validate().is_empty());
    }

    #[test]
    fn compile_free_matches_free_module() {
        let group = triv();
        let p: Presentation<Rat> = Presentation {
            field: FieldSpec::Rational,
            group,
            generators: vec![1],
            relations: vec![],
        };
        let c = p.compile(5).unwrap();
        assert_eq!(c.module.dims(), &[0, 1, 2, 3, 4, 5]);
        assert!(c.module.validate().is_empty());
    }

    #[test]
    fn compile_merged_generators() {
        // two generators at 0 with the relation identifying them
        let group = triv();
        let alpha = FiGMorphism::new(0, 0, vec![], vec![]);
        let p: Presentation<Rat> = Presentation {
            field: FieldSpec::Rational,
            group: group.clone(),
            generators: vec![0, 0],
            relations: vec![Relation {
                degree: 0,
                terms: vec![
                    RelationTerm {
                        gen: 0,
                        morphism: alpha.clone(),
                        coeff: Rat::one(),
                    },
                    RelationTerm {
                        gen: 1,
                        morphism: alpha,
                        coeff: Rat::from_i64(-1),
                    },
                ],
            }],
        };
        let c = p.compile(4).unwrap();
        assert_eq!(c.module.dims(), &[1, 1, 1, 1, 1]);
        assert!(c.module.validate().is_empty());
    }

    #[test]
    fn dims_equal_free_minus_rank() {
        let c = k0_presentation().compile(4).unwrap();
        for n in 0..=4usize {
            assert_eq!(
                c.module.dim(n),
                c.free.dim(n) - c.relation_spans[n].rank()
            );
        }
    }

    #[test]
    fn window_errors() {
        let group = triv();
        let p: Presentation<Rat> = Presentation {
            field: FieldSpec::Rational,
            group,
            generators: vec![3],
            relations: vec![],
        };
        assert!(matches!(
            p.compile(2),
            Err(Error::Window { required: 3, .. })
        ));
    }
}
