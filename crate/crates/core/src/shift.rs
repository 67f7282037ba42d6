//! The shift functor, its natural map, the derivative, and the torsion
//! theory they induce: torsion kernel (socle), torsion degree, and the
//! torsion/torsionless splitting.

use std::sync::Arc;

use crate::category::FiGMorphism;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{kernel_basis, rank, Echelon, Matrix};
use crate::module::{
    map_cokernel, map_kernel, Bounds, Degree, DegreeValue, DegreewiseModule, ModuleMap,
};

/// `Σ_a V`: the module `n |-> V_{n+a}` with the window reduced by `a`.
///
/// The transposition `s_i` acts as `s_{i+a}` did, colors act on coordinate
/// `1+a`, and structure maps are reused unchanged.
pub fn shift<S: Scalar>(v: &DegreewiseModule<S>, a: usize) -> Result<DegreewiseModule<S>> {
    if a > v.window {
        return Err(Error::window("shift amount", a, v.window));
    }
    if a == 0 {
        return Ok(v.clone());
    }
    let window = v.window - a;
    let dims: Vec<usize> = (0..=window).map(|n| v.dim(n + a)).collect();
    let mut transp = Vec::with_capacity(window + 1);
    let mut colors = Vec::with_capacity(window + 1);
    for n in 0..=window {
        let mut tn = Vec::new();
        for i in 1..n {
            tn.push(v.transposition_action(n + a, i + a).clone());
        }
        transp.push(tn);
        let mut cn = Vec::new();
        if n == 0 {
            for _ in 0..v.group.order() {
                cn.push(Matrix::identity(dims[0]));
            }
        } else {
            // conjugate the coordinate-1 color over to coordinate 1+a:
            // c_{1+a}(g) = W c_1(g) W^{-1} with W = s_a ∘ … ∘ s_1
            let mut w = Matrix::identity(dims[n]);
            for i in (1..=a).rev() {
                w = w.mul(v.transposition_action(n + a, i));
            }
            let mut w_inv = Matrix::identity(dims[n]);
            for i in 1..=a {
                w_inv = w_inv.mul(v.transposition_action(n + a, i));
            }
            for g in 0..v.group.order() {
                if g == v.group.identity() {
                    cn.push(Matrix::identity(dims[n]));
                } else {
                    cn.push(w.mul(v.color_action(n + a, g)).mul(&w_inv));
                }
            }
        }
        colors.push(cn);
    }
    let structmaps: Vec<Matrix<S>> = (0..window).map(|n| v.structmap(n + a).clone()).collect();
    Ok(DegreewiseModule::from_parts(
        v.field,
        v.group.clone(),
        window,
        dims,
        transp,
        colors,
        structmaps,
        Bounds {
            gen: v.bounds.gen, // shifting cannot raise the generating degree
            rel: None,
        },
    ))
}

/// The natural map `V -> Σ V` induced by adding 1 to every point.
///
/// The source is `V` truncated to `window - 1` so both sides share a window.
pub fn natural_map<S: Scalar>(v: &DegreewiseModule<S>) -> Result<ModuleMap<S>> {
    if v.window < 1 {
        return Err(Error::window("natural map", 1, v.window));
    }
    let source = Arc::new(v.truncate(v.window - 1));
    let target = Arc::new(shift(v, 1)?);
    let mats: Vec<Matrix<S>> = (0..v.window)
        .map(|n| v.act_morphism(&FiGMorphism::shift_embedding(n, &v.group)))
        .collect();
    Ok(ModuleMap::new(source, target, mats))
}

/// The derivative `DV`: cokernel of the natural map.
pub fn derivative<S: Scalar>(v: &DegreewiseModule<S>) -> Result<Arc<DegreewiseModule<S>>> {
    let nat = natural_map(v)?;
    let (d, _) = map_cokernel(&nat)?;
    Ok(d)
}

/// The torsion kernel `K`: elements killed by every morphism to the next
/// degree, realized as the kernel of the natural map. Returns the module
/// with its inclusion.
pub fn torsion_kernel<S: Scalar>(
    v: &DegreewiseModule<S>,
) -> Result<(Arc<DegreewiseModule<S>>, ModuleMap<S>)> {
    let nat = natural_map(v)?;
    let (k, incl) = map_kernel(&nat)?;
    // K is torsion: it is generated wherever it lives, which is bounded by
    // the torsion bound of V, and its relations sit one degree higher.
    let mut k = (*k).clone();
    if let Some(Degree::Finite(t)) = v.bounds.td_bound() {
        k.bounds = Bounds {
            gen: Some(t),
            rel: Some(t + 1),
        };
    } else if let Some(Degree::NegInf) = v.bounds.td_bound() {
        k.bounds = Bounds {
            gen: Some(-1),
            rel: Some(-1),
        };
    }
    let k = Arc::new(k);
    let incl = ModuleMap::new(k.clone(), incl.target, incl.mats);
    Ok((k, incl))
}

/// Degrees `n` in `0..window` whose structure map has a kernel.
fn socle_dims<S: Scalar>(v: &DegreewiseModule<S>) -> Vec<usize> {
    (0..v.window)
        .map(|n| v.dim(n) - rank(v.structmap(n)))
        .collect()
}

/// The torsion degree: top degree of the socle, `-inf` when torsionless.
pub fn torsion_degree<S: Scalar>(v: &DegreewiseModule<S>) -> DegreeValue {
    let socle = socle_dims(v);
    let value = socle
        .iter()
        .enumerate()
        .rev()
        .find(|(_, &d)| d > 0)
        .map(|(n, _)| Degree::Finite(n as i64))
        .unwrap_or(Degree::NegInf);
    let certified = match v.bounds.td_window() {
        Some(w) => v.window >= w,
        None => false,
    };
    DegreeValue { value, certified }
}

/// The torsion/torsionless splitting `0 -> V_T -> V -> V_F -> 0`.
#[derive(Debug, Clone)]
pub struct TorsionSplit<S: Scalar> {
    pub vt: Arc<DegreewiseModule<S>>,
    pub vf: Arc<DegreewiseModule<S>>,
    pub inclusion: ModuleMap<S>,
    pub projection: ModuleMap<S>,
    pub td: DegreeValue,
    pub certified: bool,
}

/// Split off the torsion part. Membership is decided by mapping forward to
/// the bounded degree `td + 1`; with a certified torsion degree this is a
/// complete test, otherwise the result is flagged uncertified.
pub fn torsion_split<S: Scalar>(v: &Arc<DegreewiseModule<S>>) -> Result<TorsionSplit<S>> {
    let td = torsion_degree(v);
    let certified = td.certified;
    let window = v.window;
    let bound = match td.value {
        Degree::NegInf => None,
        Degree::Finite(t) => Some(t as usize),
    };
    let mut spans: Vec<Echelon<S>> = Vec::with_capacity(window + 1);
    for n in 0..=window {
        let mut ech = Echelon::new(v.dim(n));
        if let Some(t) = bound {
            if n <= t {
                // torsion at degree n dies by degree td+1
                let target = (t + 1).min(window);
                let mut comp = Matrix::<S>::identity(v.dim(n));
                for m in n..target {
                    comp = v.structmap(m).mul(&comp);
                }
                let ker = kernel_basis(&comp);
                for c in 0..ker.cols() {
                    ech.insert(ker.col(c));
                }
            }
        }
        spans.push(ech);
    }
    let vt_bounds = match td.value {
        Degree::NegInf => Bounds {
            gen: Some(-1),
            rel: Some(-1),
        },
        Degree::Finite(t) => Bounds {
            gen: Some(t),
            rel: Some(t + 1),
        },
    };
    let (vt, incl_mats) = v.submodule(&spans, vt_bounds)?;
    let vt = Arc::new(vt);
    let inclusion = ModuleMap::new(vt.clone(), v.clone(), incl_mats);
    // quotient bounds: generated like V; relations from V plus the torsion part
    let vf_bounds = Bounds::coker(&vt.bounds, &v.bounds);
    let (vf, proj_mats) = v.quotient(&spans, vf_bounds)?;
    let vf = Arc::new(vf);
    let projection = ModuleMap::new(v.clone(), vf.clone(), proj_mats);
    Ok(TorsionSplit {
        vt,
        vf,
        inclusion,
        projection,
        td,
        certified,
    })
}

/// Dimensions of the four-term sequence `0 -> K -> V -> ΣV -> DV -> 0` at a
/// degree; its alternating sum vanishes by exactness.
pub fn four_term_dims<S: Scalar>(
    v: &DegreewiseModule<S>,
) -> Result<Vec<(usize, usize, usize, usize)>> {
    let nat = natural_map(v)?;
    let mut out = Vec::new();
    for n in 0..v.window {
        let r = rank(&nat.mats[n]);
        let k = v.dim(n) - r;
        let sv = v.dim(n + 1);
        let dv = sv - r;
        out.push((k, v.dim(n), sv, dv));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Rat};
    use crate::free::FreeModule;
    use crate::group::FiniteGroup;

    fn triv() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::trivial())
    }

    fn free_mod(degrees: Vec<usize>, window: usize) -> DegreewiseModule<Rat> {
        FreeModule::new(FieldSpec::Rational, triv(), degrees, window)
            .unwrap()
            .to_module()
    }

    fn k0() -> DegreewiseModule<Rat> {
        crate::testutil::k0_presentation()
            .compile(5)
            .unwrap()
            .module
    }

    #[test]
    fn shift_of_m0_is_m0() {
        let m0 = free_mod(vec![0], 5);
        let s = shift(&m0, 1).unwrap();
        assert_eq!(s.dims(), &[1, 1, 1, 1, 1]);
        assert!(s.validate().is_empty());
        // explicit degreewise isomorphism with M(0) on the shared window
        let m0small = Arc::new(free_mod(vec![0], 4));
        let s = Arc::new(s);
        let iso = ModuleMap::new(
            m0small,
            s,
            (0..=4).map(|_| Matrix::identity(1)).collect(),
        );
        assert!(iso.validate().is_empty());
    }

    #[test]
    fn shift_of_m1_dims() {
        let m1 = free_mod(vec![1], 5);
        let s = shift(&m1, 1).unwrap();
        assert_eq!(s.dims(), &[1, 2, 3, 4, 5]);
        assert!(s.validate().is_empty());
    }

    #[test]
    fn shift_of_k0_vanishes() {
        let s = shift(&k0(), 1).unwrap();
        assert!(s.is_zero_module());
    }

    #[test]
    fn iterated_shift_equals_single() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let f = FreeModule::new(FieldSpec::Rational, c2, vec![0, 2], 6).unwrap();
        let v: DegreewiseModule<Rat> = f.to_module();
        let a = shift(&shift(&v, 1).unwrap(), 2).unwrap();
        let b = shift(&v, 3).unwrap();
        assert_eq!(a.dims(), b.dims());
        for n in 0..=a.window {
            for i in 1..n {
                assert_eq!(a.transposition_action(n, i), b.transposition_action(n, i));
            }
            for g in 0..2 {
                assert_eq!(a.color_action(n, g), b.color_action(n, g));
            }
        }
        for n in 0..a.window {
            assert_eq!(a.structmap(n), b.structmap(n));
        }
        assert!(a.validate().is_empty());
    }

    #[test]
    fn natural_map_examples() {
        // on M(0) every component is the identity
        let m0 = free_mod(vec![0], 4);
        let nat = natural_map(&m0).unwrap();
        assert!(nat.validate().is_empty());
        for n in 0..=3 {
            assert_eq!(nat.mats[n], Matrix::identity(1));
        }
        // on k0 the map is zero
        let natk = natural_map(&k0()).unwrap();
        assert!(natk.mats.iter().all(|m| m.is_zero()));
        // on M(1) each component is injective
        let m1 = free_mod(vec![1], 4);
        let nat1 = natural_map(&m1).unwrap();
        assert!(nat1.validate().is_empty());
        for n in 0..=3usize {
            assert_eq!(rank(&nat1.mats[n]), n);
        }
    }

    #[test]
    fn derivative_examples() {
        // D M(0) = 0
        let d = derivative(&free_mod(vec![0], 4)).unwrap();
        assert!(d.is_zero_module());
        // D M(1) has dims (1,1,1,...)
        let d1 = derivative(&free_mod(vec![1], 4)).unwrap();
        assert_eq!(d1.dims(), &[1, 1, 1, 1]);
        assert!(d1.validate().is_empty());
        // D k0 = 0
        let dk = derivative(&k0()).unwrap();
        assert!(dk.is_zero_module());
    }

    #[test]
    fn torsion_kernel_examples() {
        // K(k0) = k0
        let (k, incl) = torsion_kernel(&k0()).unwrap();
        assert_eq!(k.dims(), &[1, 0, 0, 0, 0]);
        assert!(incl.validate().is_empty());
        // K(M(m)) = 0 for free modules
        for m in 0..=2usize {
            let (k, _) = torsion_kernel(&free_mod(vec![m], 5)).unwrap();
            assert!(k.is_zero_module(), "free module M({m}) has torsion");
        }
        // additivity: K(M(0) ⊕ k0) = k0
        let sum = free_mod(vec![0], 5).direct_sum(&k0()).unwrap();
        let (k, _) = torsion_kernel(&sum).unwrap();
        assert_eq!(k.dims(), &[1, 0, 0, 0, 0]);
    }

    #[test]
    fn torsion_degree_examples() {
        let td = torsion_degree(&k0());
        assert_eq!(td.value, Degree::Finite(0));
        assert!(td.certified);
        let tdf = torsion_degree(&free_mod(vec![2], 5));
        assert_eq!(tdf.value, Degree::NegInf);
        assert!(tdf.certified);
    }

    #[test]
    fn torsion_split_examples() {
        // split(k0) = (k0, 0)
        let s = torsion_split(&Arc::new(k0())).unwrap();
        assert_eq!(s.vt.dims(), &[1, 0, 0, 0, 0, 0]);
        assert!(s.vf.is_zero_module());
        assert!(s.certified);
        // split(M(1)) = (0, M(1))
        let s1 = torsion_split(&Arc::new(free_mod(vec![1], 5))).unwrap();
        assert!(s1.vt.is_zero_module());
        assert_eq!(s1.vf.dims(), &[0, 1, 2, 3, 4, 5]);
        // split(M(0) ⊕ k0) = (k0, M(0))
        let sum = Arc::new(free_mod(vec![0], 5).direct_sum(&k0()).unwrap());
        let s2 = torsion_split(&sum).unwrap();
        assert_eq!(s2.vt.dims(), &[1, 0, 0, 0, 0, 0]);
        assert_eq!(s2.vf.dims(), &[1, 1, 1, 1, 1, 1]);
        assert!(s2.inclusion.validate().is_empty());
        assert!(s2.projection.validate().is_empty());
        // exactness of the split, degreewise
        for n in 0..=5usize {
            assert_eq!(s2.vt.dim(n) + s2.vf.dim(n), sum.dim(n));
        }
    }

    #[test]
    fn four_term_alternating_sum_vanishes() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let f = FreeModule::new(FieldSpec::Rational, c2, vec![1, 2], 5).unwrap();
        let v: DegreewiseModule<Rat> = f.to_module();
        for (k, vn, sv, dv) in four_term_dims(&v).unwrap() {
            assert_eq!(k as i64 - vn as i64 + sv as i64 - dv as i64, 0);
        }
        for (k, vn, sv, dv) in four_term_dims(&k0()).unwrap() {
            assert_eq!(k as i64 - vn as i64 + sv as i64 - dv as i64, 0);
        }
    }
}
