//! The skeletal category of finite sets with group-colored injections.
//!
//! Objects are 0,1,2,…, the object `n` standing for `[n] = {1,…,n}`. A
//! morphism `m -> n` is an injection `[m] -> [n]` together with one group
//! element per source point. Endomorphism groups are wreath products of
//! symmetric groups with the coloring group.

use std::collections::HashMap;
use std::sync::Arc;

use crate::group::FiniteGroup;

/// A colored injection `source -> target`.
///
/// `injection[i]` is the (1-based) image of point `i+1`; `colors[i]` is the
/// group element attached to point `i+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiGMorphism {
    pub source: usize,
    pub target: usize,
    pub injection: Vec<usize>,
    pub colors: Vec<usize>,
}

impl FiGMorphism {
    pub fn new(source: usize, target: usize, injection: Vec<usize>, colors: Vec<usize>) -> Self {
        assert_eq!(injection.len(), source);
        assert_eq!(colors.len(), source);
        debug_assert!(injection.iter().all(|&v| v >= 1 && v <= target));
        debug_assert!({
            let mut seen = vec![false; target + 1];
            injection.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        });
        FiGMorphism {
            source,
            target,
            injection,
            colors,
        }
    }

    pub fn identity(n: usize, group: &FiniteGroup) -> Self {
        FiGMorphism {
            source: n,
            target: n,
            injection: (1..=n).collect(),
            colors: vec![group.identity(); n],
        }
    }

    /// The inclusion `[n] ⊆ [n+1]` with trivial colors.
    pub fn standard_inclusion(n: usize, group: &FiniteGroup) -> Self {
        FiGMorphism {
            source: n,
            target: n + 1,
            injection: (1..=n).collect(),
            colors: vec![group.identity(); n],
        }
    }

    /// The order-embedding `[n] -> [n+1]` adding 1 to every point.
    pub fn shift_embedding(n: usize, group: &FiniteGroup) -> Self {
        FiGMorphism {
            source: n,
            target: n + 1,
            injection: (2..=n + 1).collect(),
            colors: vec![group.identity(); n],
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.source == self.target
    }

    /// Inverse of an endomorphism.
    pub fn inverse(&self, group: &FiniteGroup) -> FiGMorphism {
        assert!(self.is_invertible());
        let n = self.source;
        let mut injection = vec![0usize; n];
        let mut colors = vec![group.identity(); n];
        for i in 0..n {
            let img = self.injection[i] - 1;
            injection[img] = i + 1;
            colors[img] = group.inv(self.colors[i]);
        }
        FiGMorphism::new(n, n, injection, colors)
    }
}

/// Composite `beta ∘ alpha`. Colors compose as `h(i) = g_beta(f_alpha(i)) * g_alpha(i)`.
pub fn compose(beta: &FiGMorphism, alpha: &FiGMorphism, group: &FiniteGroup) -> FiGMorphism {
    assert_eq!(
        alpha.target, beta.source,
        "composition degree mismatch: {} -> {} then {} -> {}",
        alpha.source, alpha.target, beta.source, beta.target
    );
    let injection: Vec<usize> = alpha
        .injection
        .iter()
        .map(|&v| beta.injection[v - 1])
        .collect();
    let colors: Vec<usize> = alpha
        .injection
        .iter()
        .zip(alpha.colors.iter())
        .map(|(&v, &g)| group.mul(beta.colors[v - 1], g))
        .collect();
    FiGMorphism::new(alpha.source, beta.target, injection, colors)
}

/// All morphisms `m -> n`, exactly once, ordered lexicographically on
/// `(injection, colors)`. Empty when `m > n`.
pub fn hom_set(m: usize, n: usize, group: &FiniteGroup) -> Vec<FiGMorphism> {
    if m > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut injection = Vec::with_capacity(m);
    let mut used = vec![false; n + 1];
    fn rec(
        m: usize,
        n: usize,
        group: &FiniteGroup,
        injection: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<FiGMorphism>,
    ) {
        if injection.len() == m {
            // colors in lexicographic order
            let k = group.order();
            let mut colors = vec![0usize; m];
            loop {
                out.push(FiGMorphism::new(m, n, injection.clone(), colors.clone()));
                // next color tuple
                let mut i = m;
                loop {
                    if i == 0 {
                        return;
                    }
                    i -= 1;
                    if colors[i] + 1 < k {
                        colors[i] += 1;
                        for c in colors.iter_mut().skip(i + 1) {
                            *c = 0;
                        }
                        break;
                    }
                }
                if m == 0 {
                    return;
                }
            }
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                injection.push(v);
                rec(m, n, group, injection, used, out);
                injection.pop();
                used[v] = false;
            }
        }
    }
    rec(m, n, group, &mut injection, &mut used, &mut out);
    out
}

/// Number of morphisms `m -> n`: `binom(n,m) * m! * |G|^m`.
pub fn hom_size(m: usize, n: usize, group_order: usize) -> usize {
    if m > n {
        return 0;
    }
    let mut size = 1usize;
    for i in 0..m {
        size *= n - i;
    }
    size * group_order.pow(m as u32)
}

/// Order of the endomorphism group at degree n: `n! * |G|^n`.
pub fn wreath_order(n: usize, group_order: usize) -> usize {
    hom_size(n, n, group_order)
}

/// Canonical invertible completion of `alpha: m -> n`.
///
/// The returned endomorphism `tau` of `[n]` agrees with `alpha` on `[m]`
/// (images and colors) and sends the remaining points to the complement of
/// the image in increasing order with trivial colors, so that
/// `alpha = tau ∘ ι_{n-1} ∘ … ∘ ι_m`.
pub fn canonical_factor(alpha: &FiGMorphism, group: &FiniteGroup) -> FiGMorphism {
    let (m, n) = (alpha.source, alpha.target);
    let mut injection = Vec::with_capacity(n);
    let mut colors = Vec::with_capacity(n);
    injection.extend_from_slice(&alpha.injection);
    colors.extend_from_slice(&alpha.colors);
    let mut hit = vec![false; n + 1];
    for &v in &alpha.injection {
        hit[v] = true;
    }
    for v in 1..=n {
        if !hit[v] {
            injection.push(v);
            colors.push(group.identity());
        }
    }
    let _ = m;
    FiGMorphism::new(n, n, injection, colors)
}

/// Chain of standard inclusions `[m] ⊆ [m+1] ⊆ … ⊆ [n]` composed into one morphism.
pub fn inclusion_chain(m: usize, n: usize, group: &FiniteGroup) -> FiGMorphism {
    assert!(m <= n);
    FiGMorphism {
        source: m,
        target: n,
        injection: (1..=m).collect(),
        colors: vec![group.identity(); m],
    }
}

// ---------------------------------------------------------------------------
// Hom-set bases with index lookup
// ---------------------------------------------------------------------------

/// A materialized hom-set `C(d, n)` with O(1) index lookup, shared behind `Arc`.
#[derive(Debug)]
pub struct HomBasis {
    pub d: usize,
    pub n: usize,
    pub morphisms: Vec<FiGMorphism>,
    index: HashMap<FiGMorphism, usize>,
}

impl HomBasis {
    pub fn new(d: usize, n: usize, group: &FiniteGroup) -> Arc<Self> {
        let morphisms = hom_set(d, n, group);
        let index = morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Arc::new(HomBasis {
            d,
            n,
            morphisms,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn index_of(&self, m: &FiGMorphism) -> usize {
        *self
            .index
            .get(m)
            .unwrap_or_else(|| panic!("morphism not in hom basis C({},{})", self.d, self.n))
    }
}

// ---------------------------------------------------------------------------
// Wreath group elements as generator words
// ---------------------------------------------------------------------------

/// Generator of the endomorphism group at a fixed degree:
/// an adjacent transposition `s_i` (swapping i, i+1; 1-based) or a color
/// insertion at coordinate 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WreathGen {
    Transposition(usize),
    Color(usize),
}

/// The adjacent transposition `s_i` in `G_n` (1-based, `1 <= i < n`).
pub fn transposition(n: usize, i: usize, group: &FiniteGroup) -> FiGMorphism {
    assert!(i >= 1 && i < n);
    let mut injection: Vec<usize> = (1..=n).collect();
    injection.swap(i - 1, i);
    FiGMorphism::new(n, n, injection, vec![group.identity(); n])
}

/// The color insertion `c_g` acting on coordinate 1 of `[n]`.
pub fn color_insertion(n: usize, g: usize, group: &FiniteGroup) -> FiGMorphism {
    assert!(n >= 1);
    let mut colors = vec![group.identity(); n];
    colors[0] = g;
    FiGMorphism::new(n, n, (1..=n).collect(), colors)
}

/// Decompose an endomorphism into a word in the standard generators, in
/// application order: composing the generators left to right (leftmost
/// applied last) reproduces the element.
pub fn wreath_word(tau: &FiGMorphism, group: &FiniteGroup) -> Vec<WreathGen> {
    assert!(tau.is_invertible());
    let n = tau.source;
    let mut word: Vec<WreathGen> = Vec::new();

    // Color part first (applied before the permutation): tau = (sigma; e) ∘ (id; colors).
    // A color g at coordinate i is (move i to 1) ⁻¹ ∘ c_g ∘ (move i to 1),
    // with "move i to 1" the word s_1 s_2 … s_{i-1} read in application order.
    for i in 1..=n {
        let g = tau.colors[i - 1];
        if g != group.identity() {
            let mut conj: Vec<WreathGen> = Vec::new();
            for j in (1..i).rev() {
                conj.push(WreathGen::Transposition(j));
            }
            conj.push(WreathGen::Color(g));
            for j in 1..i {
                conj.push(WreathGen::Transposition(j));
            }
            // prepend: colors at distinct coordinates commute
            let mut w = conj;
            w.extend(word);
            word = w;
        }
    }

    // Permutation part: bubble-sort sigma to the identity, recording swaps.
    // If sigma = s_{i_1} ∘ … ∘ s_{i_k} (application right to left), then the
    // word [s_{i_1}, …, s_{i_k}] prepends before the color word.
    let mut sigma: Vec<usize> = tau.injection.clone();
    let mut perm_word: Vec<WreathGen> = Vec::new();
    loop {
        let mut done = true;
        for i in 0..n.saturating_sub(1) {
            if sigma[i] > sigma[i + 1] {
                sigma.swap(i, i + 1);
                perm_word.push(WreathGen::Transposition(i + 1));
                done = false;
            }
        }
        if done {
            break;
        }
    }
    // sorting used swaps t_k … t_1 with sigma ∘ t_1 ∘ … misordered; the word
    // recorded applies sigma = (swaps reversed)
    perm_word.reverse();
    let mut out = perm_word;
    out.extend(word);
    out
}

/// Evaluate a generator word back to a morphism (for tests and small cases).
pub fn eval_word(n: usize, word: &[WreathGen], group: &FiniteGroup) -> FiGMorphism {
    let mut acc = FiGMorphism::identity(n, group);
    for gen in word.iter().rev() {
        let m = match gen {
            WreathGen::Transposition(i) => transposition(n, *i, group),
            WreathGen::Color(g) => color_insertion(n, *g, group),
        };
        acc = compose(&m, &acc, group);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_set_sizes() {
        let triv = FiniteGroup::trivial();
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(hom_set(0, 5, &triv).len(), 1);
        assert_eq!(hom_set(1, 3, &triv).len(), 3);
        assert_eq!(hom_set(2, 4, &c2).len(), 48);
        // |hom(m,n)| = binom(n,m) m! |G|^m = |G_n| / |G_{n-m}|, exhaustively
        for g in [&triv, &c2] {
            for n in 0..=6usize {
                for m in 0..=n {
                    let hs = hom_set(m, n, g);
                    assert_eq!(hs.len(), hom_size(m, n, g.order()));
                    assert_eq!(
                        hs.len() * wreath_order(n - m, g.order()),
                        wreath_order(n, g.order())
                    );
                    // pairwise distinct and lexicographically sorted
                    for w in hs.windows(2) {
                        assert!(
                            (&w[0].injection, &w[0].colors) < (&w[1].injection, &w[1].colors)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn compose_hand_example() {
        let triv = FiniteGroup::trivial();
        let beta = FiGMorphism::new(2, 3, vec![2, 3], vec![0, 0]);
        let alpha = FiGMorphism::new(1, 2, vec![2], vec![0]);
        let c = compose(&beta, &alpha, &triv);
        assert_eq!(c, FiGMorphism::new(1, 3, vec![3], vec![0]));
    }

    #[test]
    fn identity_law_and_associativity() {
        let triv = FiniteGroup::trivial();
        for n in 0..=3usize {
            for m in 0..=n {
                let id = FiGMorphism::identity(n, &triv);
                for alpha in hom_set(m, n, &triv) {
                    assert_eq!(compose(&id, &alpha, &triv), alpha);
                    let id_m = FiGMorphism::identity(m, &triv);
                    assert_eq!(compose(&alpha, &id_m, &triv), alpha);
                }
            }
        }
        // exhaustive associativity over all degree-<=3 triples
        for a in 0..=3usize {
            for b in a..=3usize {
                for c in b..=3usize {
                    for n in c..=3usize {
                        for alpha in hom_set(a, b, &triv) {
                            for beta in hom_set(b, c, &triv) {
                                for gamma in hom_set(c, n, &triv) {
                                    let lhs =
                                        compose(&gamma, &compose(&beta, &alpha, &triv), &triv);
                                    let rhs =
                                        compose(&compose(&gamma, &beta, &triv), &alpha, &triv);
                                    assert_eq!(lhs, rhs);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn colored_composition_convention() {
        let c2 = FiniteGroup::cyclic(2);
        // beta: 1 -> 2, 1|->1 with color 1; alpha: 1 -> 1, color 1
        let beta = FiGMorphism::new(1, 2, vec![1], vec![1]);
        let alpha = FiGMorphism::new(1, 1, vec![1], vec![1]);
        let c = compose(&beta, &alpha, &c2);
        // colors multiply: 1 * 1 = 0 in Z/2
        assert_eq!(c.colors, vec![0]);
    }

    #[test]
    fn canonical_factor_examples() {
        let triv = FiniteGroup::trivial();
        // identity factors as identity
        let id = FiGMorphism::identity(3, &triv);
        assert_eq!(canonical_factor(&id, &triv), id);
        // (1 |-> 2): tau is the transposition
        let a = FiGMorphism::new(1, 2, vec![2], vec![0]);
        let tau = canonical_factor(&a, &triv);
        assert_eq!(tau, FiGMorphism::new(2, 2, vec![2, 1], vec![0, 0]));
        assert_eq!(compose(&tau, &inclusion_chain(1, 2, &triv), &triv), a);
    }

    #[test]
    fn canonical_factor_reproduces_exhaustively() {
        let triv = FiniteGroup::trivial();
        let c2 = FiniteGroup::cyclic(2);
        for g in [&triv, &c2] {
            for m in 0..=4usize {
                for n in m..=4usize {
                    for alpha in hom_set(m, n, g) {
                        let tau = canonical_factor(&alpha, g);
                        assert!(tau.is_invertible());
                        let back = compose(&tau, &inclusion_chain(m, n, g), g);
                        assert_eq!(back, alpha, "C({m},{n}) factorization");
                    }
                }
            }
        }
    }

    #[test]
    fn endomorphisms_act_transitively_on_corank_one() {
        // for every tau in G_{n+1}, tau ∘ iota ranges over all of C(n, n+1)
        let triv = FiniteGroup::trivial();
        let c2 = FiniteGroup::cyclic(2);
        for g in [&triv, &c2] {
            for n in 0..=3usize {
                let iota = FiGMorphism::standard_inclusion(n, g);
                let mut seen = std::collections::HashSet::new();
                for tau in hom_set(n + 1, n + 1, g) {
                    seen.insert(compose(&tau, &iota, g));
                }
                assert_eq!(seen.len(), hom_size(n, n + 1, g.order()));
            }
        }
    }

    #[test]
    fn wreath_words_evaluate_back() {
        let triv = FiniteGroup::trivial();
        let c2 = FiniteGroup::cyclic(2);
        for g in [&triv, &c2] {
            for n in 1..=4usize {
                for tau in hom_set(n, n, g) {
                    let word = wreath_word(&tau, g);
                    assert_eq!(eval_word(n, &word, g), tau, "word for {tau:?}");
                }
            }
        }
    }

    #[test]
    fn inverse_is_two_sided() {
        let c2 = FiniteGroup::cyclic(2);
        for tau in hom_set(3, 3, &c2) {
            let inv = tau.inverse(&c2);
            assert_eq!(compose(&tau, &inv, &c2), FiGMorphism::identity(3, &c2));
            assert_eq!(compose(&inv, &tau, &c2), FiGMorphism::identity(3, &c2));
        }
    }
}
