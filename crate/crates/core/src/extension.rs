//! The extension `1 → A → G → Q → 1` determined by an action and a
//! normalized 2-cocycle `β`, with inflation, restriction and structural
//! probes.

use std::collections::HashSet;

use thiserror::Error;

use crate::cochains::{is_cocycle, is_normalized, Cochain, CochainError, Kernel};
use crate::groups::{AbElement, AbelianGroup, Action, AxiomCheck, FiniteGroup, GroupError, RootExp, Subgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("β is not a 2-cocycle")]
    BetaNotCocycle,
    #[error("β is not normalized")]
    BetaNotNormalized,
    #[error("β has the wrong shape")]
    BetaShape,
    #[error("action is defined on a group of order {found}, Q has order {expected}")]
    ActionMismatch { expected: usize, found: usize },
    #[error("built extension fails the group axioms: {0}")]
    Axioms(GroupError),
    #[error("transversal check failed: {0}")]
    Transversal(&'static str),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

/// `aḡ ∈ G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElement {
    pub a: AbElement,
    pub g: usize,
}

/// `G` as pairs `(a, g)` with `(a, g)` stored at index `idx(a) + |A|·g`.
#[derive(Clone, Debug)]
pub struct ExtensionGroup {
    a: AbelianGroup,
    q: FiniteGroup,
    action: Action,
    beta: Cochain<AbElement>,
    g: FiniteGroup,
}

/// Group axioms are checked on every triple up to this order, on a sample
/// above it.
const FULL_CHECK_ORDER: usize = 64;

impl ExtensionGroup {
    /// `(a₁, g₁)·(a₂, g₂) = (a₁ + g₁(a₂) + β(g₁,g₂), g₁g₂)`.
    pub fn build(q: &FiniteGroup, action: &Action, beta: &Cochain<AbElement>) -> Result<Self, ExtensionError> {
        if action.q_order() != q.order() {
            return Err(ExtensionError::ActionMismatch {
                expected: q.order(),
                found: action.q_order(),
            });
        }
        if beta.degree() != 2 || beta.base() != q.order() {
            return Err(ExtensionError::BetaShape);
        }
        let a = action.kernel().clone();
        if beta.values().iter().any(|b| !a.contains(b)) {
            return Err(ExtensionError::BetaShape);
        }
        if !is_normalized(beta, &a.identity()) {
            return Err(ExtensionError::BetaNotNormalized);
        }
        if !is_cocycle(q, &Kernel(action), beta)? {
            return Err(ExtensionError::BetaNotCocycle);
        }
        let na = a.order();
        let nq = q.order();
        let at = a.as_finite_group();
        let bidx: Vec<usize> = beta.values().iter().map(|b| a.index_of(b)).collect();
        let n = na * nq;
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let (a1, g1) = (x % na, x / na);
                (0..n)
                    .map(|y| {
                        let (a2, g2) = (y % na, y / na);
                        let av = at.mul(at.mul(a1, action.act_index(g1, a2)), bidx[g1 * nq + g2]);
                        av + na * q.mul(g1, g2)
                    })
                    .collect()
            })
            .collect();
        let check = if n <= FULL_CHECK_ORDER {
            AxiomCheck::Full
        } else {
            AxiomCheck::Sampled {
                triples: 200_000,
                seed: 0x5eed,
            }
        };
        let g = FiniteGroup::from_table_with(rows, check).map_err(ExtensionError::Axioms)?;
        let ext = ExtensionGroup {
            a,
            q: q.clone(),
            action: action.clone(),
            beta: beta.clone(),
            g,
        };
        ext.check_transversal()?;
        Ok(ext)
    }

    fn check_transversal(&self) -> Result<(), ExtensionError> {
        let na = self.a.order();
        for g1 in 0..self.q.order() {
            for g2 in 0..self.q.order() {
                let p = self.g.mul(self.lift(g1), self.lift(g2));
                if p != self.index(self.a.index_of(self.beta.at2(g1, g2)), self.q.mul(g1, g2)) {
                    return Err(ExtensionError::Transversal("ḡ₁ḡ₂ ≠ β(g₁,g₂)·(g₁g₂)‾"));
                }
            }
            for x in 0..na {
                let c = self.g.conj(self.lift(g1), x);
                if c != self.action.act_index(g1, x) {
                    return Err(ExtensionError::Transversal("ḡaḡ⁻¹ ≠ g(a)"));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    pub fn kernel(&self) -> &AbelianGroup {
        &self.a
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.q
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn beta(&self) -> &Cochain<AbElement> {
        &self.beta
    }

    /// Index of `aḡ` given the index of `a` in `A`.
    #[inline]
    pub fn index(&self, a: usize, g: usize) -> usize {
        a + self.a.order() * g
    }

    /// `(index of a, g)` for `γ = aḡ`.
    #[inline]
    pub fn split(&self, gamma: usize) -> (usize, usize) {
        (gamma % self.a.order(), gamma / self.a.order())
    }

    /// Image of `γ` in `Q`.
    #[inline]
    pub fn project(&self, gamma: usize) -> usize {
        gamma / self.a.order()
    }

    /// Transversal element `ḡ = (1, g)`.
    #[inline]
    pub fn lift(&self, g: usize) -> usize {
        self.a.order() * g
    }

    pub fn element(&self, gamma: usize) -> ExtElement {
        let (a, g) = self.split(gamma);
        ExtElement {
            a: self.a.element_at(a),
            g,
        }
    }

    pub fn index_of(&self, e: &ExtElement) -> usize {
        self.index(self.a.index_of(&e.a), e.g)
    }

    /// The copy of `A` inside `G`.
    pub fn kernel_subgroup(&self) -> Subgroup {
        let gens: Vec<usize> = (0..self.a.rank()).map(|i| self.a.index_of(&self.a.generator(i))).collect();
        Subgroup::generated(&self.g, &gens)
    }

    /// `f̄(a₁ḡ₁, a₂ḡ₂) = f(g₁, g₂)`.
    pub fn inflate(&self, f: &Cochain<RootExp>) -> Cochain<RootExp> {
        assert_eq!((f.degree(), f.base()), (2, self.q.order()), "inflate expects a 2-cochain on Q");
        Cochain::from_fn(2, self.order(), |x| *f.at2(self.project(x[0]), self.project(x[1])))
    }

    /// Restriction of a 2-cochain on `G` to `A × A`, indexed as in `A`.
    pub fn restrict(&self, c: &Cochain<RootExp>) -> Cochain<RootExp> {
        assert_eq!((c.degree(), c.base()), (2, self.order()), "restrict expects a 2-cochain on G");
        Cochain::from_fn(2, self.a.order(), |x| *c.at2(x[0], x[1]))
    }
}

/// All abelian normal subgroups of order `k`, found by growing abelian
/// subgroups one commuting generator at a time from the trivial subgroup.
pub fn abelian_normal_subgroups(g: &FiniteGroup, k: usize) -> Vec<Subgroup> {
    if k == 0 || g.order() % k != 0 {
        return Vec::new();
    }
    let triv = Subgroup::trivial(g);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([triv.elements().to_vec()]);
    let mut all = vec![triv];
    let mut i = 0;
    while i < all.len() {
        let h = all[i].clone();
        i += 1;
        if h.order() == k {
            continue;
        }
        for x in 0..g.order() {
            if h.contains(x) || !h.elements().iter().all(|&y| g.mul(x, y) == g.mul(y, x)) {
                continue;
            }
            let j = h.join(g, &[x]);
            if k % j.order() == 0 && seen.insert(j.elements().to_vec()) {
                all.push(j);
            }
        }
    }
    let mut out: Vec<Subgroup> = all.into_iter().filter(|h| h.order() == k && h.is_normal(g)).collect();
    out.sort_by(|x, y| x.elements().cmp(y.elements()));
    out
}

/// A subgroup `H` with `N ∩ H = 1` and `NH = G`, if one exists.
///
/// If `g₁N, …, g_kN` generate `G/N`, any complement contains exactly one
/// element `gᵢnᵢ` of each coset and is generated by them, so trying every
/// choice of `(n₁, …, n_k)` is exhaustive.
pub fn find_complement(g: &FiniteGroup, n: &Subgroup) -> Result<Option<Subgroup>, ExtensionError> {
    if !n.is_normal(g) {
        return Err(ExtensionError::NotNormal);
    }
    let target = g.order() / n.order();
    let mut gens = Vec::new();
    let mut span = n.clone();
    while span.order() < g.order() {
        let x = (0..g.order()).find(|&x| !span.contains(x)).unwrap();
        gens.push(x);
        span = span.join(g, &[x]);
    }
    let ne = n.elements();
    let k = gens.len();
    let total = ne.len().pow(k as u32);
    let mut lifts = vec![0usize; k];
    for code in 0..total {
        let mut c = code;
        for (slot, &s) in lifts.iter_mut().zip(&gens) {
            *slot = g.mul(s, ne[c % ne.len()]);
            c /= ne.len();
        }
        let h = Subgroup::generated(g, &lifts);
        if h.order() == target && h.intersection_order(n) == 1 {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::{coboundary, Roots};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn split(q: &FiniteGroup, action: &Action) -> ExtensionGroup {
        let beta = Cochain::constant(2, q.order(), action.kernel().identity());
        ExtensionGroup::build(q, action, &beta).unwrap()
    }

    #[test]
    fn split_extension_is_semidirect() {
        let q = FiniteGroup::cyclic(2);
        let a = AbelianGroup::new(vec![3]).unwrap();
        let act = Action::from_generators(&q, a, &[(1, vec![vec![2]])]).unwrap();
        let ext = split(&q, &act);
        assert_eq!(ext.order(), 6);
        assert!(!ext.group().is_abelian());
        let n = ext.kernel_subgroup();
        assert_eq!(n.order(), 3);
        let h = find_complement(ext.group(), &n).unwrap().unwrap();
        assert_eq!(h.order(), 2);
        assert_eq!(find_complement(ext.group(), &Subgroup::whole(ext.group())).unwrap().unwrap().order(), 1);
    }

    #[test]
    fn trivial_kernel_gives_q() {
        let q = FiniteGroup::dihedral(3);
        let act = Action::trivial(&q, AbelianGroup::trivial());
        let ext = split(&q, &act);
        assert_eq!(ext.group(), &q);
    }

    #[test]
    fn non_split_cyclic_extension() {
        // C4 as an extension of C2 by C2: β(1,1) = generator
        let q = FiniteGroup::cyclic(2);
        let a = AbelianGroup::new(vec![2]).unwrap();
        let act = Action::trivial(&q, a.clone());
        let beta = Cochain::from_fn(2, 2, |g| a.element(&[(g == [1, 1]) as i64]).unwrap());
        let ext = ExtensionGroup::build(&q, &act, &beta).unwrap();
        assert_eq!(ext.group().element_order(ext.lift(1)), 4);
        assert!(find_complement(ext.group(), &ext.kernel_subgroup()).unwrap().is_none());
        let mut bad = beta.values().to_vec();
        bad[2] = a.element(&[1]).unwrap();
        let bad = Cochain::from_values(2, 2, bad).unwrap();
        assert_eq!(ExtensionGroup::build(&q, &act, &bad).unwrap_err(), ExtensionError::BetaNotNormalized);
    }

    #[test]
    fn inflation_commutes_with_coboundary() {
        let q = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        let a = AbelianGroup::new(vec![2]).unwrap();
        let ext = split(&q, &Action::trivial(&q, a));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let f = Cochain::from_fn(2, 4, |_| RootExp::new(rng.gen_range(0..4), 4));
            let lhs = coboundary(ext.group(), &Roots(4), &ext.inflate(&f)).unwrap();
            let df = coboundary(&q, &Roots(4), &f).unwrap();
            let rhs = Cochain::from_fn(3, 8, |x| *df.get(&[ext.project(x[0]), ext.project(x[1]), ext.project(x[2])]));
            assert_eq!(lhs, rhs);
            let inf = ext.inflate(&f);
            for x in 0..8 {
                for y in 0..8 {
                    assert_eq!(inf.at2(x, y), inf.at2(2 * (x / 2), 2 * (y / 2)));
                }
            }
        }
        let f = Cochain::from_fn(2, 4, |g| RootExp::new((g[0] * g[1]) as i64, 4));
        let normalized = Cochain::from_fn(2, 4, |g| *f.at2(g[0], g[1]));
        assert!(ext.restrict(&ext.inflate(&normalized)).is_trivial());
    }

    #[test]
    fn abelian_normal_subgroup_probe() {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4));
        let all = abelian_normal_subgroups(&g, 8);
        assert_eq!(all, vec![Subgroup::whole(&g)]);
        assert_eq!(abelian_normal_subgroups(&g, 1), vec![Subgroup::trivial(&g)]);
        // D4 has three abelian normal subgroups of order 4: ⟨r⟩, ⟨r², s⟩, ⟨r², rs⟩
        assert_eq!(abelian_normal_subgroups(&FiniteGroup::dihedral(4), 4).len(), 3);
        // Q8: ⟨i⟩, ⟨j⟩, ⟨k⟩, none with a complement
        let q8 = FiniteGroup::quaternion8();
        let ns = abelian_normal_subgroups(&q8, 4);
        assert_eq!(ns.len(), 3);
        for n in &ns {
            assert!(find_complement(&q8, n).unwrap().is_none());
        }
        let d4 = FiniteGroup::dihedral(4);
        let notnormal = Subgroup::generated(&d4, &[4]);
        assert_eq!(find_complement(&d4, &notnormal).unwrap_err(), ExtensionError::NotNormal);
    }
}
