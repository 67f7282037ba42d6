//! Shared fixtures for unit tests.

use std::sync::Arc;

use num_traits::One;

use crate::category::FiGMorphism;
use crate::field::{FieldSpec, Rat};
use crate::group::FiniteGroup;
use crate::presentation::{Presentation, Relation, RelationTerm};

/// The torsion module supported in degree 0: one generator at 0, one
/// relation killing the unique degree-1 element.
pub fn k0_presentation() -> Presentation<Rat> {
    let group = Arc::new(FiniteGroup::trivial());
    let alpha = FiGMorphism::new(0, 1, vec![], vec![]);
    Presentation {
        field: FieldSpec::Rational,
        group,
        generators: vec![0],
        relations: vec![Relation {
            degree: 1,
            terms: vec![RelationTerm {
                gen: 0,
                morphism: alpha,
                coeff: Rat::one(),
            }],
        }],
    }
}
