//! Degreewise presentation of a finitely generated module over the category.
//!
//! A module truncated to degrees `0..=window` is determined by the
//! endomorphism-group actions (stored through their standard generators) and
//! the structure maps realizing the standard inclusions. Everything else —
//! arbitrary morphism actions, submodules, quotients, kernels, cokernels —
//! is derived from those.

use std::fmt;
use std::sync::Arc;


use crate::category::{wreath_word, FiGMorphism, WreathGen};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::group::FiniteGroup;
use crate::matrix::{kernel_basis, Echelon, Matrix};

// ---------------------------------------------------------------------------
// Degrees with -infinity
// ---------------------------------------------------------------------------

/// A degree value: an integer or -infinity (empty defining set).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(i64),
}

impl Degree {
    pub fn finite(&self) -> Option<i64> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(v) => Some(*v),
        }
    }

    /// `self + s`, with -infinity absorbing.
    pub fn plus(&self, s: i64) -> Degree {
        match self {
            Degree::NegInf => Degree::NegInf,
            Degree::Finite(v) => Degree::Finite(v + s),
        }
    }

    pub fn max(self, other: Degree) -> Degree {
        std::cmp::max(self, other)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// A degree together with its certification flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeValue {
    pub value: Degree,
    pub certified: bool,
}

impl DegreeValue {
    pub fn certified(value: Degree) -> Self {
        DegreeValue {
            value,
            certified: true,
        }
    }

    pub fn uncertified(value: Degree) -> Self {
        DegreeValue {
            value,
            certified: false,
        }
    }
}

// ---------------------------------------------------------------------------
// Certification bounds
// ---------------------------------------------------------------------------

/// Certified upper bounds carried by a module: `gen` bounds the generating
/// degree, `rel` bounds the first homological degree. `None` means unknown;
/// a value of -1 means the corresponding invariant is -infinity.
///
/// All window requirements derive from these, via the regularity
/// inequalities: the torsion degree is at most `gen + rel - 1` and the s-th
/// homological degree at most `gen + rel + s - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub gen: Option<i64>,
    pub rel: Option<i64>,
}

impl Bounds {
    pub fn unknown() -> Self {
        Bounds {
            gen: None,
            rel: None,
        }
    }

    pub fn merge_max(a: &Bounds, b: &Bounds) -> Bounds {
        let m = |x: Option<i64>, y: Option<i64>| match (x, y) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        Bounds {
            gen: m(a.gen, b.gen),
            rel: m(a.rel, b.rel),
        }
    }

    /// Bounds for the cokernel of a map `V -> W`: a quotient of `W` is
    /// generated wherever `W` is, and its relations come from relations of
    /// `W` together with generators of the image (a quotient of `V`).
    pub fn coker(source: &Bounds, target: &Bounds) -> Bounds {
        let rel = match (target.rel, source.gen) {
            (Some(r), Some(g)) => Some(r.max(g)),
            _ => None,
        };
        Bounds {
            gen: target.gen,
            rel,
        }
    }

    /// Bounds for the kernel of a map `V -> W`, via the long exact homology
    /// sequences of `0 -> K -> V -> I -> 0` and `0 -> I -> W -> C -> 0`
    /// combined with the regularity inequality for the second homological
    /// degree of the cokernel.
    pub fn kernel(source: &Bounds, target: &Bounds) -> Bounds {
        match (source.gen, source.rel, target.gen, target.rel) {
            (Some(gv), Some(rv), Some(gw), Some(rw)) => {
                let rc = rw.max(gv); // relations of the cokernel
                let hd2_c = gw + rc + 1;
                let hd1_i = hd2_c.max(rw);
                let gen = hd1_i.max(gv);
                let hd2_i = (gw + rc + 2).max(gw + rw + 1);
                let rel = hd2_i.max(rv);
                Bounds {
                    gen: Some(gen),
                    rel: Some(rel),
                }
            }
            _ => Bounds::unknown(),
        }
    }

    /// Window needed to certify the generating degree.
    pub fn gd_window(&self) -> Option<usize> {
        self.gen.map(|g| g.max(0) as usize)
    }

    /// Window needed to certify the torsion degree (one degree above the
    /// torsion bound, so the last structure map exists).
    pub fn td_window(&self) -> Option<usize> {
        match (self.gen, self.rel) {
            (Some(g), Some(r)) => Some((g + r).max(0) as usize),
            _ => None,
        }
    }

    /// Window needed to certify homological degrees up to `s`.
    pub fn hd_window(&self, s: usize) -> Option<usize> {
        match (self.gen, self.rel) {
            (Some(g), Some(r)) => Some((g + r + s as i64 - 1).max(0) as usize),
            _ => None,
        }
    }

    /// Certified upper bound for the torsion degree.
    pub fn td_bound(&self) -> Option<Degree> {
        match (self.gen, self.rel) {
            (Some(g), Some(r)) => {
                if g < 0 || r < 0 {
                    Some(Degree::NegInf)
                } else {
                    Some(Degree::Finite(g + r - 1))
                }
            }
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// The module type
// ---------------------------------------------------------------------------

/// A finitely generated module on the truncation window `0..=window`.
#[derive(Debug, Clone)]
pub struct DegreewiseModule<S: Scalar> {
    pub field: FieldSpec,
    pub group: Arc<FiniteGroup>,
    pub window: usize,
    dims: Vec<usize>,
    /// `transp[n][i-1]` is the action of the adjacent transposition `s_i`
    /// at degree `n`, for `1 <= i < n`.
    transp: Vec<Vec<Matrix<S>>>,
    /// `colors[n][g]` is the action of the color insertion `c_g` on
    /// coordinate 1 at degree `n` (identity at degree 0).
    colors: Vec<Vec<Matrix<S>>>,
    /// `structmaps[n]` realizes the standard inclusion, `dims[n+1] x dims[n]`.
    structmaps: Vec<Matrix<S>>,
    pub bounds: Bounds,
}

impl<S: Scalar> DegreewiseModule<S> {
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        field: FieldSpec,
        group: Arc<FiniteGroup>,
        window: usize,
        dims: Vec<usize>,
        transp: Vec<Vec<Matrix<S>>>,
        colors: Vec<Vec<Matrix<S>>>,
        structmaps: Vec<Matrix<S>>,
        bounds: Bounds,
    ) -> Self {
        assert_eq!(dims.len(), window + 1);
        assert_eq!(transp.len(), window + 1);
        assert_eq!(colors.len(), window + 1);
        assert_eq!(structmaps.len(), window);
        for n in 0..=window {
            assert_eq!(transp[n].len(), n.saturating_sub(1));
            assert_eq!(colors[n].len(), group.order());
            for m in transp[n].iter().chain(colors[n].iter()) {
                assert_eq!((m.rows(), m.cols()), (dims[n], dims[n]));
            }
            if n < window {
                assert_eq!(
                    (structmaps[n].rows(), structmaps[n].cols()),
                    (dims[n + 1], dims[n])
                );
            }
        }
        DegreewiseModule {
            field,
            group,
            window,
            dims,
            transp,
            colors,
            structmaps,
            bounds,
        }
    }

    pub fn zero(field: FieldSpec, group: Arc<FiniteGroup>, window: usize) -> Self {
        let dims = vec![0usize; window + 1];
        let transp = (0..=window)
            .map(|n| vec![Matrix::zeros(0, 0); n.saturating_sub(1)])
            .collect();
        let colors = (0..=window)
            .map(|_| vec![Matrix::zeros(0, 0); group.order()])
            .collect();
        let structmaps = (0..window).map(|_| Matrix::zeros(0, 0)).collect();
        DegreewiseModule::from_parts(
            field,
            group,
            window,
            dims,
            transp,
            colors,
            structmaps,
            Bounds {
                gen: Some(-1),
                rel: Some(-1),
            },
        )
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn is_zero_module(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn structmap(&self, n: usize) -> &Matrix<S> {
        &self.structmaps[n]
    }

    pub fn transposition_action(&self, n: usize, i: usize) -> &Matrix<S> {
        &self.transp[n][i - 1]
    }

    pub fn color_action(&self, n: usize, g: usize) -> &Matrix<S> {
        &self.colors[n][g]
    }

    /// All generator actions at degree `n` (transpositions, then colors,
    /// skipping the identity color).
    pub fn generator_actions(&self, n: usize) -> Vec<&Matrix<S>> {
        let mut out: Vec<&Matrix<S>> = self.transp[n].iter().collect();
        for (g, m) in self.colors[n].iter().enumerate() {
            if g != self.group.identity() {
                out.push(m);
            }
        }
        out
    }

    /// Action of an arbitrary endomorphism via its generator word.
    pub fn act_wreath(&self, n: usize, tau: &FiGMorphism) -> Matrix<S> {
        assert_eq!(tau.source, n);
        assert_eq!(tau.target, n);
        let word = wreath_word(tau, &self.group);
        let mut acc = Matrix::identity(self.dims[n]);
        for gen in word.iter().rev() {
            let m = match gen {
                WreathGen::Transposition(i) => &self.transp[n][i - 1],
                WreathGen::Color(g) => &self.colors[n][*g],
            };
            acc = m.mul(&acc);
        }
        acc
    }

    /// Matrix of the action of `alpha: m -> n` (canonical factorization:
    /// invertible completion after the chain of standard inclusions).
    pub fn act_morphism(&self, alpha: &FiGMorphism) -> Matrix<S> {
        let (m, n) = (alpha.source, alpha.target);
        assert!(n <= self.window, "morphism target beyond window");
        let mut acc = Matrix::identity(self.dims[m]);
        for k in m..n {
            acc = self.structmaps[k].mul(&acc);
        }
        let tau = crate::category::canonical_factor(alpha, &self.group);
        self.act_wreath(n, &tau).mul(&acc)
    }

    /// Apply `alpha: m -> n` to a vector in degree `m`.
    pub fn apply_morphism(&self, alpha: &FiGMorphism, v: &[S]) -> Vec<S> {
        self.act_morphism(alpha).apply(v)
    }

    /// Restrict to a smaller window.
    pub fn truncate(&self, window: usize) -> DegreewiseModule<S> {
        assert!(window <= self.window);
        DegreewiseModule {
            field: self.field,
            group: self.group.clone(),
            window,
            dims: self.dims[..=window].to_vec(),
            transp: self.transp[..=window].to_vec(),
            colors: self.colors[..=window].to_vec(),
            structmaps: self.structmaps[..window].to_vec(),
            bounds: self.bounds,
        }
    }

    /// Check every structural invariant on the window; returns the list of
    /// violations (empty means valid).
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let id = &Matrix::<S>::identity(0);
        let _ = id;
        for n in 0..=self.window {
            let dn = self.dims[n];
            let idn = Matrix::<S>::identity(dn);
            let t = &self.transp[n];
            // involutions
            for (i, s) in t.iter().enumerate() {
                if s.mul(s) != idn {
                    bad.push(format!("degree {n}: s_{}^2 != 1", i + 1));
                }
            }
            // braid and disjoint commutation
            for i in 0..t.len() {
                for j in i + 1..t.len() {
                    if j == i + 1 {
                        let lhs = t[i].mul(&t[j]).mul(&t[i]);
                        let rhs = t[j].mul(&t[i]).mul(&t[j]);
                        if lhs != rhs {
                            bad.push(format!("degree {n}: braid fails at s_{},s_{}", i + 1, j + 1));
                        }
                    } else {
                        let lhs = t[i].mul(&t[j]);
                        let rhs = t[j].mul(&t[i]);
                        if lhs != rhs {
                            bad.push(format!(
                                "degree {n}: s_{} s_{} != s_{} s_{}",
                                i + 1,
                                j + 1,
                                j + 1,
                                i + 1
                            ));
                        }
                    }
                }
            }
            // color multiplicativity: c_g c_h = c_{gh}
            for g in 0..self.group.order() {
                for h in 0..self.group.order() {
                    let gh = self.group.mul(g, h);
                    if self.colors[n][g].mul(&self.colors[n][h]) != self.colors[n][gh] {
                        bad.push(format!("degree {n}: c_{g} c_{h} != c_{gh}"));
                    }
                }
            }
            // colors at coordinate 1 commute with s_i for i >= 2
            for (i, s) in t.iter().enumerate() {
                if i + 1 >= 2 {
                    for g in 0..self.group.order() {
                        if s.mul(&self.colors[n][g]) != self.colors[n][g].mul(s) {
                            bad.push(format!("degree {n}: s_{} c_{g} != c_{g} s_{}", i + 1, i + 1));
                        }
                    }
                }
            }
            // identity color acts as identity
            if self.colors[n][self.group.identity()] != idn {
                bad.push(format!("degree {n}: identity color is not the identity"));
            }
        }
        // equivariance of structure maps
        for n in 0..self.window {
            let phi = &self.structmaps[n];
            for i in 1..n.max(1) {
                if i < n {
                    let lhs = self.transp[n + 1][i - 1].mul(phi);
                    let rhs = phi.mul(&self.transp[n][i - 1]);
                    if lhs != rhs {
                        bad.push(format!("structmap {n}: equivariance fails for s_{i}"));
                    }
                }
            }
            for g in 0..self.group.order() {
                if self.dims[n] > 0 || self.dims[n + 1] > 0 {
                    let lhs = self.colors[n + 1][g].mul(phi);
                    let rhs = phi.mul(&self.colors[n][g]);
                    if lhs != rhs {
                        bad.push(format!("structmap {n}: equivariance fails for c_{g}"));
                    }
                }
            }
        }
        // the two inclusions into degree n+2 agree up to the adjoined swap
        for n in 0..self.window.saturating_sub(1) {
            let two_step = self.structmaps[n + 1].mul(&self.structmaps[n]);
            if n + 1 >= 1 && !self.transp[n + 2].is_empty() {
                let t_last = &self.transp[n + 2][n]; // s_{n+1} in degree n+2
                let swapped = t_last.mul(&two_step);
                if swapped != two_step {
                    bad.push(format!(
                        "degrees {n}..{}: adjoined-point swap moves the two-step inclusion",
                        n + 2
                    ));
                }
            }
        }
        bad
    }

    /// Direct sum, block-diagonal throughout.
    pub fn direct_sum(&self, other: &DegreewiseModule<S>) -> Result<DegreewiseModule<S>> {
        if self.field != other.field
            || self.group != other.group
            || self.window != other.window
        {
            return Err(Error::contract("direct sum of incompatible modules"));
        }
        let window = self.window;
        let dims = (0..=window).map(|n| self.dims[n] + other.dims[n]).collect();
        let transp = (0..=window)
            .map(|n| {
                (0..n.saturating_sub(1))
                    .map(|i| self.transp[n][i].block_diag(&other.transp[n][i]))
                    .collect()
            })
            .collect();
        let colors = (0..=window)
            .map(|n| {
                (0..self.group.order())
                    .map(|g| self.colors[n][g].block_diag(&other.colors[n][g]))
                    .collect()
            })
            .collect();
        let structmaps = (0..window)
            .map(|n| self.structmaps[n].block_diag(&other.structmaps[n]))
            .collect();
        Ok(DegreewiseModule::from_parts(
            self.field,
            self.group.clone(),
            window,
            dims,
            transp,
            colors,
            structmaps,
            Bounds::merge_max(&self.bounds, &other.bounds),
        ))
    }

    // -----------------------------------------------------------------------
    // Induced structure on subspaces and quotients
    // -----------------------------------------------------------------------

    /// Submodule spanned degreewise by the given echelon bases.
    ///
    /// The spans must be stable under all actions and structure maps; this is
    /// checked and reported as an internal error otherwise. Returns the
    /// module plus the degreewise inclusion matrices.
    pub fn submodule(
        &self,
        spans: &[Echelon<S>],
        bounds: Bounds,
    ) -> Result<(DegreewiseModule<S>, Vec<Matrix<S>>)> {
        assert_eq!(spans.len(), self.window + 1);
        let window = self.window;
        let dims: Vec<usize> = spans.iter().map(|e| e.rank()).collect();
        // inclusion: columns are the canonical basis rows
        let incl: Vec<Matrix<S>> = (0..=window)
            .map(|n| {
                let mut m = Matrix::zeros(self.dims[n], dims[n]);
                for (c, row) in spans[n].rows().iter().enumerate() {
                    m.set_col(c, row);
                }
                m
            })
            .collect();
        let express = |n: usize, m: &Matrix<S>| -> Result<Matrix<S>> {
            // coordinates of each column of m (a vector of V_n) in the span basis
            let mut out = Matrix::zeros(spans[n].rank(), m.cols());
            for c in 0..m.cols() {
                let col = m.col(c);
                let coords = spans[n].coordinates(&col).ok_or_else(|| {
                    Error::internal(format!("span not stable at degree {n}"))
                })?;
                out.set_col(c, &coords);
            }
            Ok(out)
        };
        let mut transp = Vec::with_capacity(window + 1);
        let mut colors = Vec::with_capacity(window + 1);
        for n in 0..=window {
            let mut tn = Vec::new();
            for i in 1..n.max(1) {
                if i < n {
                    tn.push(express(n, &self.transp[n][i - 1].mul(&incl[n]))?);
                }
            }
            transp.push(tn);
            let mut cn = Vec::new();
            for g in 0..self.group.order() {
                cn.push(express(n, &self.colors[n][g].mul(&incl[n]))?);
            }
            colors.push(cn);
        }
        let mut structmaps = Vec::with_capacity(window);
        for n in 0..window {
            structmaps.push(express(n + 1, &self.structmaps[n].mul(&incl[n]))?);
        }
        let sub = DegreewiseModule::from_parts(
            self.field,
            self.group.clone(),
            window,
            dims,
            transp,
            colors,
            structmaps,
            bounds,
        );
        Ok((sub, incl))
    }

    /// Quotient by the degreewise spans. Returns the module plus the
    /// degreewise projection matrices.
    ///
    /// The quotient basis is the greedy standard-basis completion of the
    /// span: images of the unit vectors at the span's non-pivot columns.
    pub fn quotient(
        &self,
        spans: &[Echelon<S>],
        bounds: Bounds,
    ) -> Result<(DegreewiseModule<S>, Vec<Matrix<S>>)> {
        assert_eq!(spans.len(), self.window + 1);
        let window = self.window;
        let projs: Vec<Matrix<S>> = (0..=window)
            .map(|n| quotient_projection(&spans[n]))
            .collect();
        let dims: Vec<usize> = projs.iter().map(|p| p.rows()).collect();
        // sections: unit columns at the free coordinates
        let sections: Vec<Vec<usize>> = spans.iter().map(|e| e.free_columns()).collect();
        let induced = |n: usize, m: &Matrix<S>| -> Matrix<S> {
            // proj_n * m * section_n
            let mut out = Matrix::zeros(dims[n], sections[n].len());
            for (c, &j) in sections[n].iter().enumerate() {
                let col = projs[n].apply(&m.col(j));
                out.set_col(c, &col);
            }
            out
        };
        let induced_cross = |n_to: usize, m: &Matrix<S>, n_from: usize| -> Matrix<S> {
            let mut out = Matrix::zeros(dims[n_to], sections[n_from].len());
            for (c, &j) in sections[n_from].iter().enumerate() {
                let col = projs[n_to].apply(&m.col(j));
                out.set_col(c, &col);
            }
            out
        };
        let mut transp = Vec::with_capacity(window + 1);
        let mut colors = Vec::with_capacity(window + 1);
        for n in 0..=window {
            let mut tn = Vec::new();
            for i in 1..n.max(1) {
                if i < n {
                    tn.push(induced(n, &self.transp[n][i - 1]));
                }
            }
            transp.push(tn);
            let mut cn = Vec::new();
            for g in 0..self.group.order() {
                cn.push(induced(n, &self.colors[n][g]));
            }
            colors.push(cn);
        }
        let mut structmaps = Vec::with_capacity(window);
        for n in 0..window {
            structmaps.push(induced_cross(n + 1, &self.structmaps[n], n));
        }
        let q = DegreewiseModule::from_parts(
            self.field,
            self.group.clone(),
            window,
            dims,
            transp,
            colors,
            structmaps,
            bounds,
        );
        Ok((q, projs))
    }
}

/// Projection matrix of `ambient / span`, read off the reduced echelon rows:
/// unit vectors at free columns stay, pivots map to minus the free part of
/// their row.
pub fn quotient_projection<S: Scalar>(span: &Echelon<S>) -> Matrix<S> {
    let free = span.free_columns();
    let k = free.len();
    let mut proj = Matrix::zeros(k, span.dim());
    for (r, &j) in free.iter().enumerate() {
        proj[(r, j)] = S::one();
    }
    for (t, &p) in span.pivots().iter().enumerate() {
        for (r, &j) in free.iter().enumerate() {
            let v = span.rows()[t][j].clone();
            if !v.is_zero() {
                proj[(r, p)] = v.neg();
            }
        }
    }
    proj
}

// ---------------------------------------------------------------------------
// Module maps
// ---------------------------------------------------------------------------

/// A degreewise linear map commuting with all actions and structure maps.
#[derive(Debug, Clone)]
pub struct ModuleMap<S: Scalar> {
    pub source: Arc<DegreewiseModule<S>>,
    pub target: Arc<DegreewiseModule<S>>,
    pub mats: Vec<Matrix<S>>,
}

impl<S: Scalar> ModuleMap<S> {
    pub fn new(
        source: Arc<DegreewiseModule<S>>,
        target: Arc<DegreewiseModule<S>>,
        mats: Vec<Matrix<S>>,
    ) -> Self {
        assert_eq!(source.window, target.window, "module map across windows");
        assert_eq!(mats.len(), source.window + 1);
        for n in 0..=source.window {
            assert_eq!((mats[n].rows(), mats[n].cols()), (target.dim(n), source.dim(n)));
        }
        ModuleMap {
            source,
            target,
            mats,
        }
    }

    pub fn window(&self) -> usize {
        self.source.window
    }

    pub fn identity(module: Arc<DegreewiseModule<S>>) -> Self {
        let mats = (0..=module.window)
            .map(|n| Matrix::identity(module.dim(n)))
            .collect();
        ModuleMap::new(module.clone(), module, mats)
    }

    pub fn zero(source: Arc<DegreewiseModule<S>>, target: Arc<DegreewiseModule<S>>) -> Self {
        let mats = (0..=source.window)
            .map(|n| Matrix::zeros(target.dim(n), source.dim(n)))
            .collect();
        ModuleMap::new(source, target, mats)
    }

    /// Composite `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap<S>) -> ModuleMap<S> {
        let mats = (0..=self.window())
            .map(|n| self.mats[n].mul(&first.mats[n]))
            .collect();
        ModuleMap::new(first.source.clone(), self.target.clone(), mats)
    }

    /// Violations of equivariance/commutation (empty = valid map).
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let w = self.window();
        for n in 0..=w {
            for i in 1..n.max(1) {
                if i < n {
                    let lhs = self.target.transposition_action(n, i).mul(&self.mats[n]);
                    let rhs = self.mats[n].mul(self.source.transposition_action(n, i));
                    if lhs != rhs {
                        bad.push(format!("map degree {n}: s_{i} does not commute"));
                    }
                }
            }
            for g in 0..self.source.group.order() {
                let lhs = self.target.color_action(n, g).mul(&self.mats[n]);
                let rhs = self.mats[n].mul(self.source.color_action(n, g));
                if lhs != rhs {
                    bad.push(format!("map degree {n}: c_{g} does not commute"));
                }
            }
        }
        for n in 0..w {
            let lhs = self.target.structmap(n).mul(&self.mats[n]);
            let rhs = self.mats[n + 1].mul(self.source.structmap(n));
            if lhs != rhs {
                bad.push(format!("map degree {n}: structure maps do not commute"));
            }
        }
        bad
    }
}

/// Kernel of a module map, with its inclusion.
pub fn map_kernel<S: Scalar>(f: &ModuleMap<S>) -> Result<(Arc<DegreewiseModule<S>>, ModuleMap<S>)> {
    let w = f.window();
    let mut spans = Vec::with_capacity(w + 1);
    for n in 0..=w {
        let k = kernel_basis(&f.mats[n]);
        let mut ech = Echelon::new(f.source.dim(n));
        for c in 0..k.cols() {
            ech.insert(k.col(c));
        }
        spans.push(ech);
    }
    let bounds = Bounds::kernel(&f.source.bounds, &f.target.bounds);
    let (sub, incl) = f.source.submodule(&spans, bounds)?;
    let sub = Arc::new(sub);
    let map = ModuleMap::new(sub.clone(), f.source.clone(), incl);
    Ok((sub, map))
}

/// Cokernel of a module map, with its projection.
pub fn map_cokernel<S: Scalar>(
    f: &ModuleMap<S>,
) -> Result<(Arc<DegreewiseModule<S>>, ModuleMap<S>)> {
    let w = f.window();
    let mut spans = Vec::with_capacity(w + 1);
    for n in 0..=w {
        let mut ech = Echelon::new(f.target.dim(n));
        for c in 0..f.mats[n].cols() {
            ech.insert(f.mats[n].col(c));
        }
        spans.push(ech);
    }
    let bounds = Bounds::coker(&f.source.bounds, &f.target.bounds);
    let (q, projs) = f.target.quotient(&spans, bounds)?;
    let q = Arc::new(q);
    let map = ModuleMap::new(f.target.clone(), q.clone(), projs);
    Ok((q, map))
}

/// Group-orbit span closure: the smallest subspace containing the seeds and
/// stable under the given operators.
pub fn span_closure<S: Scalar>(
    dim: usize,
    seeds: impl IntoIterator<Item = Vec<S>>,
    gens: &[&Matrix<S>],
) -> Echelon<S> {
    let mut ech = Echelon::new(dim);
    let mut frontier: Vec<Vec<S>> = Vec::new();
    for v in seeds {
        if ech.insert(v.clone()).is_some() {
            frontier.push(v);
        }
    }
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w = g.apply(&v);
            if ech.insert(w.clone()).is_some() {
                frontier.push(w);
            }
        }
    }
    ech
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::free::FreeModule;

    fn m1_module() -> DegreewiseModule<Rat> {
        let triv = Arc::new(FiniteGroup::trivial());
        FreeModule::new(FieldSpec::Rational, triv, vec![1], 4)
            .unwrap()
            .to_module()
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let v = Arc::new(m1_module());
        let id = ModuleMap::identity(v);
        let (k, incl) = map_kernel(&id).unwrap();
        assert!(k.is_zero_module());
        assert!(incl.validate().is_empty());
    }

    #[test]
    fn cokernel_of_zero_is_identity() {
        let v = Arc::new(m1_module());
        let z = ModuleMap::zero(v.clone(), v.clone());
        let (c, proj) = map_cokernel(&z).unwrap();
        assert_eq!(c.dims(), v.dims());
        assert!(proj.validate().is_empty());
        assert!(c.validate().is_empty());
    }

    #[test]
    fn fold_map_kernel_dims() {
        // kernel of the fold map M(0) ⊕ M(0) -> M(0) has dims (1,1,...)
        let triv = Arc::new(FiniteGroup::trivial());
        let m0 = FreeModule::new(FieldSpec::Rational, triv.clone(), vec![0], 4)
            .unwrap()
            .to_module::<Rat>();
        let sum = Arc::new(m0.direct_sum(&m0).unwrap());
        let m0 = Arc::new(m0);
        let mats = (0..=4)
            .map(|_| Matrix::new(1, 2, vec![Rat::from_i64(1), Rat::from_i64(1)]))
            .collect();
        let fold = ModuleMap::new(sum, m0, mats);
        assert!(fold.validate().is_empty());
        let (k, incl) = map_kernel(&fold).unwrap();
        assert_eq!(k.dims(), &[1, 1, 1, 1, 1]);
        assert!(incl.validate().is_empty());
        assert!(k.validate().is_empty());
    }

    #[test]
    fn direct_sum_dims_additive() {
        let v = m1_module();
        let s = v.direct_sum(&v).unwrap();
        assert_eq!(s.dims(), &[0, 2, 4, 6, 8]);
        assert!(s.validate().is_empty());
    }

    #[test]
    fn validate_catches_fault_injection() {
        let mut v = m1_module();
        // corrupt one structmap entry
        let m = &mut v.structmaps[2];
        m[(0, 0)] = Rat::from_i64(7);
        let report = v.validate();
        assert!(!report.is_empty());
        assert!(report.iter().any(|s| s.contains("structmap") || s.contains("degree")));
    }

    #[test]
    fn degree_ordering() {
        assert!(Degree::NegInf < Degree::Finite(-100));
        assert_eq!(Degree::NegInf.plus(5), Degree::NegInf);
        assert_eq!(Degree::Finite(2).plus(3), Degree::Finite(5));
        assert_eq!(Degree::NegInf.to_string(), "-inf");
    }
}
