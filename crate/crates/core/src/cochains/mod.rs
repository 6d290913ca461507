//! Cochains `C^n(Q, M)` as dense tables, their coboundaries, and the
//! constructive solvers built on top of them.

mod solve;

pub use solve::{
    cohomologous_1, cup3, default_zeta_modulus, find_bijective_classes, solve_root_coboundary, solve_zeta,
    two_cocycle_generators, z1_space, RootSolution, Z1Space, ZetaOutcome, ZetaSolution,
};

use std::fmt::Debug;

use thiserror::Error;

use crate::groups::{AbElement, AbelianGroup, Action, DualCharacter, FiniteGroup, RootExp};
use crate::zmodlin::LinAlgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CochainError {
    #[error("coboundary of degree {0} is not supported (max 3)")]
    UnsupportedDegree(usize),
    #[error("cochain is defined on a group of order {found}, expected {expected}")]
    BaseMismatch { expected: usize, found: usize },
    #[error("expected a cochain of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("input is not a cocycle")]
    NotACocycle,
    #[error("|Q| = {q} but |A| = {a}; bijective 1-cocycles need |Q| = |A|")]
    OrderMismatch { q: usize, a: usize },
    #[error("root of order {0} cannot be lifted into the requested modulus {1}")]
    Modulus(u64, u64),
    #[error("solved ζ violates ζ(1,g) = ζ(g,1) at g = {0}")]
    UnbalancedZeta(usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Value group of a cochain together with its `Q`-module structure.
/// Written additively; for roots of unity addition is multiplication.
pub trait CoefficientModule {
    type Value: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn act(&self, g: usize, v: &Self::Value) -> Self::Value;

    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.add(a, &self.neg(b))
    }
}

/// `μ_n ⊂ ℂ*` with the trivial action.
#[derive(Clone, Copy, Debug)]
pub struct Roots(pub u64);

impl CoefficientModule for Roots {
    type Value = RootExp;

    fn zero(&self) -> RootExp {
        RootExp::one(self.0)
    }
    fn add(&self, a: &RootExp, b: &RootExp) -> RootExp {
        *a * *b
    }
    fn neg(&self, a: &RootExp) -> RootExp {
        a.inv()
    }
    fn act(&self, _g: usize, v: &RootExp) -> RootExp {
        *v
    }
}

/// `A` with the given action.
#[derive(Clone, Copy, Debug)]
pub struct Kernel<'a>(pub &'a Action);

impl CoefficientModule for Kernel<'_> {
    type Value = AbElement;

    fn zero(&self) -> AbElement {
        self.0.kernel().identity()
    }
    fn add(&self, a: &AbElement, b: &AbElement) -> AbElement {
        self.0.kernel().add(a, b)
    }
    fn neg(&self, a: &AbElement) -> AbElement {
        self.0.kernel().neg(a)
    }
    fn act(&self, g: usize, v: &AbElement) -> AbElement {
        self.0.act(g, v)
    }
}

/// `Â` with the diagonal action.
#[derive(Clone, Copy, Debug)]
pub struct Dual<'a>(pub &'a Action);

impl CoefficientModule for Dual<'_> {
    type Value = DualCharacter;

    fn zero(&self) -> DualCharacter {
        self.0.kernel().trivial_character()
    }
    fn add(&self, a: &DualCharacter, b: &DualCharacter) -> DualCharacter {
        self.0.kernel().char_mul(a, b)
    }
    fn neg(&self, a: &DualCharacter) -> DualCharacter {
        self.0.kernel().char_inv(a)
    }
    fn act(&self, g: usize, v: &DualCharacter) -> DualCharacter {
        self.0.dual_act(g, v)
    }
}

/// A map `Hⁿ → M` tabulated row-major: `(h₁, …, hₙ)` sits at
/// `Σ hᵢ·|H|^{n-i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain<V> {
    degree: usize,
    base: usize,
    values: Vec<V>,
}

impl<V: Clone> Cochain<V> {
    pub fn constant(degree: usize, base: usize, v: V) -> Self {
        Cochain {
            degree,
            base,
            values: vec![v; base.pow(degree as u32)],
        }
    }

    pub fn from_fn(degree: usize, base: usize, mut f: impl FnMut(&[usize]) -> V) -> Self {
        let len = base.pow(degree as u32);
        let mut args = vec![0usize; degree];
        let mut values = Vec::with_capacity(len);
        for idx in 0..len {
            decode(idx, base, &mut args);
            values.push(f(&args));
        }
        Cochain { degree, base, values }
    }

    pub fn from_values(degree: usize, base: usize, values: Vec<V>) -> Result<Self, CochainError> {
        let len = base.pow(degree as u32);
        if values.len() != len {
            return Err(CochainError::BaseMismatch {
                expected: len,
                found: values.len(),
            });
        }
        Ok(Cochain { degree, base, values })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Order of the group the cochain is defined on.
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn get(&self, args: &[usize]) -> &V {
        debug_assert_eq!(args.len(), self.degree);
        &self.values[encode(args, self.base)]
    }

    #[inline]
    pub fn at1(&self, g: usize) -> &V {
        &self.values[g]
    }

    #[inline]
    pub fn at2(&self, g: usize, h: usize) -> &V {
        &self.values[g * self.base + h]
    }

    pub fn map<W: Clone>(&self, f: impl FnMut(&V) -> W) -> Cochain<W> {
        Cochain {
            degree: self.degree,
            base: self.base,
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn zip_with<W: Clone, X: Clone>(&self, other: &Cochain<W>, mut f: impl FnMut(&V, &W) -> X) -> Cochain<X> {
        assert_eq!((self.degree, self.base), (other.degree, other.base), "cochain shapes differ");
        Cochain {
            degree: self.degree,
            base: self.base,
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Cochain<RootExp> {
    /// Ambient order `n` of the `μ_n` the values live in.
    pub fn ambient(&self) -> u64 {
        self.values.first().map_or(1, |v| v.ambient())
    }

    pub fn lift(&self, m: u64) -> Self {
        self.map(|v| v.lift(m))
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = num_integer::lcm(self.ambient(), other.ambient());
        self.zip_with(other, |a, b| a.lift(n) * b.lift(n))
    }

    pub fn inv(&self) -> Self {
        self.map(|v| v.inv())
    }

    /// Smallest `n` such that every value lies in `μ_n`.
    pub fn minimal_ambient(&self) -> u64 {
        self.values.iter().fold(1, |acc, v| num_integer::lcm(acc, v.order()))
    }

    pub fn reduce_ambient(&self) -> Self {
        let n = self.minimal_ambient();
        let m = self.ambient();
        self.map(|v| RootExp::new((v.numerator() / (m / n)) as i64, n))
    }
}

fn encode(args: &[usize], base: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * base + a)
}

fn decode(mut idx: usize, base: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % base;
        idx /= base;
    }
}

/// `δⁿφ(γ₁,…,γₙ₊₁) = γ₁·φ(γ₂,…) + Σ (−1)ⁱ φ(…,γᵢγᵢ₊₁,…) + (−1)ⁿ⁺¹ φ(γ₁,…,γₙ)`.
pub fn coboundary<M: CoefficientModule>(
    group: &FiniteGroup,
    module: &M,
    f: &Cochain<M::Value>,
) -> Result<Cochain<M::Value>, CochainError> {
    let n = f.degree;
    if n > 3 {
        return Err(CochainError::UnsupportedDegree(n));
    }
    let base = group.order();
    if f.base != base {
        return Err(CochainError::BaseMismatch {
            expected: base,
            found: f.base,
        });
    }
    let mut inner = vec![0usize; n];
    Ok(Cochain::from_fn(n + 1, base, |args| {
        inner.copy_from_slice(&args[1..]);
        let mut acc = module.act(args[0], f.get(&inner));
        for i in 0..n {
            for (k, slot) in inner.iter_mut().enumerate() {
                *slot = match k.cmp(&i) {
                    std::cmp::Ordering::Less => args[k],
                    std::cmp::Ordering::Equal => group.mul(args[k], args[k + 1]),
                    std::cmp::Ordering::Greater => args[k + 1],
                };
            }
            let v = f.get(&inner);
            acc = if i % 2 == 0 { module.sub(&acc, v) } else { module.add(&acc, v) };
        }
        let last = f.get(&args[..n]);
        if n % 2 == 0 {
            module.sub(&acc, last)
        } else {
            module.add(&acc, last)
        }
    }))
}

pub fn is_cocycle<M: CoefficientModule>(group: &FiniteGroup, module: &M, f: &Cochain<M::Value>) -> Result<bool, CochainError> {
    let zero = module.zero();
    Ok(coboundary(group, module, f)?.values.iter().all(|v| *v == zero))
}

/// `β(g,1) = β(1,g) = 0` for all `g`.
pub fn is_normalized<V: Clone + PartialEq>(f: &Cochain<V>, zero: &V) -> bool {
    f.degree == 2 && (0..f.base).all(|g| f.at2(g, 0) == zero && f.at2(0, g) == zero)
}

/// Identity 0-cochain for building coboundaries `δ⁰m`.
pub fn zero_cochain<V: Clone>(v: V) -> Cochain<V> {
    Cochain::constant(0, 1, v)
}

/// `δ⁰(m)(g) = g(m)·m⁻¹`. A 0-cochain is a single module element, so this
/// helper sidesteps the base-order bookkeeping of [`coboundary`].
pub fn coboundary0<M: CoefficientModule>(group: &FiniteGroup, module: &M, m: &M::Value) -> Cochain<M::Value> {
    Cochain::from_fn(1, group.order(), |a| module.sub(&module.act(a[0], m), m))
}

/// Checks `π(g₁g₂) = π(g₁)·g₁(π(g₂))`, returning the first failing pair.
pub fn one_cocycle_check(q: &FiniteGroup, action: &Action, pi: &Cochain<DualCharacter>) -> Result<(), (usize, usize)> {
    let a = action.kernel();
    for g1 in 0..q.order() {
        for g2 in 0..q.order() {
            let lhs = pi.at1(q.mul(g1, g2));
            let rhs = a.char_mul(pi.at1(g1), &action.dual_act(g1, pi.at1(g2)));
            if *lhs != rhs {
                return Err((g1, g2));
            }
        }
    }
    Ok(())
}

/// `π` hits `|Q|` distinct characters and `|Q| = |A|`.
pub fn is_bijective(a: &AbelianGroup, pi: &Cochain<DualCharacter>) -> bool {
    if pi.base != a.order() {
        return false;
    }
    let mut seen = vec![false; a.order()];
    for chi in &pi.values {
        let i = a.char_index_of(chi);
        if seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

/// A cohomology class, recorded through one cocycle representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleClass<V> {
    pub representative: Cochain<V>,
}
