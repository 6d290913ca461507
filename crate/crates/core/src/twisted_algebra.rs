//! The twisted group algebra `ℂ^c[G]` over `ℚ(ζ_N)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::cochains::{is_cocycle, Cochain, CochainError, Roots};
use crate::cyclotomic::{CycError, CycField, CycMatrix, CycNumber};
use crate::extension::ExtensionGroup;
use crate::groups::{DualCharacter, FiniteGroup, RootExp};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("c is not a 2-cocycle on G")]
    NotACocycle,
    #[error("c is not normalized")]
    NotNormalized,
    #[error("c has shape ({degree}, {base}), expected a 2-cochain on a group of order {order}")]
    Shape { degree: usize, base: usize, order: usize },
    #[error("c restricted to A × A is not identically 1")]
    RestrictionNotTrivial,
    #[error("extension and algebra live on different groups")]
    GroupMismatch,
    #[error("element vectors have length {found}, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

/// `Σ_γ x_γ U_γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub coeffs: Vec<CycNumber>,
}

/// `ℂ^c[G]` with `U_σU_γ = c(σ,γ)U_{σγ}`. Values of `c` are stored as
/// exponents of `ζ_N`.
#[derive(Clone, Debug)]
pub struct TwistedAlgebra {
    g: FiniteGroup,
    field: CycField,
    c: Vec<u64>,
    // [σ,γ]_c at σ·n + γ
    comm: Vec<u64>,
}

/// A matrix whose entries are `ζ_N^{k}/scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootMatrix {
    pub size: usize,
    pub exps: Vec<u64>,
    pub scale: u64,
}

impl TwistedAlgebra {
    /// `extra` is merged into the cyclotomic order, e.g. `exp(A)` so that
    /// characters of `A` are available.
    pub fn new(g: &FiniteGroup, c: &Cochain<RootExp>, extra: u64) -> Result<Self, AlgebraError> {
        let n = g.order();
        if c.degree() != 2 || c.base() != n {
            return Err(AlgebraError::Shape {
                degree: c.degree(),
                base: c.base(),
                order: n,
            });
        }
        if !is_cocycle(g, &Roots(c.ambient()), c)? {
            return Err(AlgebraError::NotACocycle);
        }
        if (0..n).any(|x| !c.at2(0, x).is_one() || !c.at2(x, 0).is_one()) {
            return Err(AlgebraError::NotNormalized);
        }
        let order = num_integer::lcm(c.minimal_ambient(), extra.max(1));
        let field = CycField::new(order);
        let cexp: Vec<u64> = c
            .values()
            .iter()
            .map(|&v| field.root_index(v))
            .collect::<Result<_, _>>()?;
        let mut comm = vec![0u64; n * n];
        for s in 0..n {
            for gm in 0..n {
                let conj = g.conj(gm, s);
                comm[s * n + gm] = (cexp[gm * n + s] + order - cexp[conj * n + gm]) % order;
            }
        }
        Ok(TwistedAlgebra { g: g.clone(), field, c: cexp, comm })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    fn n(&self) -> usize {
        self.g.order()
    }

    /// Exponent `k` with `c(σ,γ) = ζ_N^k`.
    pub fn cocycle_exp(&self, s: usize, gm: usize) -> u64 {
        self.c[s * self.n() + gm]
    }

    /// Exponent of `[σ,γ]_c = c(γ,σ)·c(γσγ⁻¹,γ)⁻¹`.
    #[inline]
    pub fn commutator_exp(&self, s: usize, gm: usize) -> u64 {
        self.comm[s * self.n() + gm]
    }

    pub fn commutator(&self, s: usize, gm: usize) -> RootExp {
        RootExp::new(self.commutator_exp(s, gm) as i64, self.field.order())
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            coeffs: vec![self.field.zero(); self.n()],
        }
    }

    pub fn basis(&self, gm: usize) -> AlgebraElement {
        let mut e = self.zero();
        e.coeffs[gm] = self.field.one();
        e
    }

    pub fn element(&self, coeffs: Vec<CycNumber>) -> Result<AlgebraElement, AlgebraError> {
        if coeffs.len() != self.n() {
            return Err(AlgebraError::Length {
                expected: self.n(),
                found: coeffs.len(),
            });
        }
        Ok(AlgebraElement { coeffs })
    }

    fn check(&self, u: &AlgebraElement) -> Result<(), AlgebraError> {
        if u.coeffs.len() != self.n() {
            return Err(AlgebraError::Length {
                expected: self.n(),
                found: u.coeffs.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: u.coeffs.iter().zip(&v.coeffs).map(|(a, b)| self.field.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, u: &AlgebraElement, r: &BigRational) -> AlgebraElement {
        AlgebraElement {
            coeffs: u.coeffs.iter().map(|a| self.field.scale(a, r)).collect(),
        }
    }

    pub fn multiply(&self, u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(u)?;
        self.check(v)?;
        let f = &self.field;
        let mut out = self.zero();
        for (s, us) in u.coeffs.iter().enumerate() {
            if us.is_zero() {
                continue;
            }
            for (gm, vg) in v.coeffs.iter().enumerate() {
                if vg.is_zero() {
                    continue;
                }
                let t = f.mul_root(&f.mul(us, vg), self.cocycle_exp(s, gm) as i64);
                let p = self.g.mul(s, gm);
                out.coeffs[p] = f.add(&out.coeffs[p], &t);
            }
        }
        Ok(out)
    }

    /// `γ·U_σ = [σ,γ]_c U_{γσγ⁻¹}`, extended linearly.
    pub fn conj_action(&self, gm: usize, u: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(u)?;
        let mut out = self.zero();
        for (s, us) in u.coeffs.iter().enumerate() {
            if !us.is_zero() {
                out.coeffs[self.g.conj(gm, s)] = self.field.mul_root(us, self.commutator_exp(s, gm) as i64);
            }
        }
        Ok(out)
    }

    /// `Σ_γ [γ,τ]_c` for every `τ`.
    pub fn commutator_sums(&self) -> Vec<CycNumber> {
        let n = self.n();
        let order = self.field.order() as usize;
        (0..n)
            .map(|tau| {
                let mut counts = vec![0i64; order];
                for gm in 0..n {
                    counts[self.commutator_exp(gm, tau) as usize] += 1;
                }
                self.field.from_root_counts(&counts)
            })
            .collect()
    }

    /// `ψ_c(U_γ) = Σ_σ [γ,σ⁻¹]_c σ`: entry `(σ, γ)`.
    pub fn psi_matrix(&self) -> RootMatrix {
        let n = self.n();
        let mut exps = vec![0u64; n * n];
        for s in 0..n {
            for gm in 0..n {
                exps[s * n + gm] = self.commutator_exp(gm, self.g.inv(s));
            }
        }
        RootMatrix { size: n, exps, scale: 1 }
    }

    /// `θ_c(σ) = |G|⁻¹ Σ_γ [γ,σ⁻¹]_c⁻¹ U_γ`: entry `(γ, σ)`.
    pub fn theta_matrix(&self) -> RootMatrix {
        let n = self.n();
        let order = self.field.order();
        let mut exps = vec![0u64; n * n];
        for gm in 0..n {
            for s in 0..n {
                exps[gm * n + s] = (order - self.commutator_exp(gm, self.g.inv(s))) % order;
            }
        }
        RootMatrix { size: n, exps, scale: n as u64 }
    }

    /// `ψ_c(τ·U_γ) = τ·ψ_c(U_γ)` for all `τ, γ`, entrywise.
    pub fn psi_equivariant(&self) -> bool {
        let n = self.n();
        let order = self.field.order();
        let psi = self.psi_matrix();
        (0..n).all(|tau| {
            (0..n).all(|gm| {
                let k = self.commutator_exp(gm, tau);
                let conj = self.g.conj(tau, gm);
                // left: [γ,τ]·ψ(U_{τγτ⁻¹}) has σ-entry k + psi[σ][conj];
                // right: τ·ψ(U_γ) has τη-entry psi[η][γ]
                (0..n).all(|eta| {
                    let s = self.g.mul(tau, eta);
                    (k + psi.exps[s * n + conj]) % order == psi.exps[eta * n + gm]
                })
            })
        })
    }

    /// `θ_c(τ) = τ·θ_c(1)` for all `τ`, entrywise.
    pub fn theta_equivariant(&self) -> bool {
        let n = self.n();
        let theta = self.theta_matrix();
        (0..n).all(|tau| {
            (0..n).all(|gm| {
                // τ·θ(1) puts [γ,τ]/|G| on U_{τγτ⁻¹}
                let target = self.g.conj(tau, gm);
                theta.exps[target * n + tau] == self.commutator_exp(gm, tau)
            })
        })
    }

    /// Dimension of the center, from an exact null space: `x` is central
    /// iff `γ·x = x` for every generator `γ`, so the system is
    /// `x_{γσγ⁻¹} − [σ,γ]_c x_σ = 0`.
    pub fn center_dimension(&self) -> usize {
        let n = self.n();
        let f = &self.field;
        let mut rows = Vec::new();
        for gm in self.g.generators() {
            for s in 0..n {
                let t = self.g.conj(gm, s);
                let lam = f.root(self.commutator_exp(s, gm) as i64);
                if t == s {
                    rows.push(vec![(s, f.sub(&f.one(), &lam))]);
                } else {
                    rows.push(vec![(t, f.one()), (s, f.neg(&lam))]);
                }
            }
        }
        n - sparse_rank(f, rows)
    }

    /// Number of conjugacy classes whose elements `γ` satisfy `[γ,τ]_c = 1`
    /// for every `τ` centralizing `γ`.
    pub fn regular_class_count(&self) -> usize {
        self.g
            .conjugacy_classes()
            .iter()
            .filter(|cls| {
                let x = cls[0];
                self.g.centralizer(x).iter().all(|&t| self.commutator_exp(x, t) == 0)
            })
            .count()
    }

    /// `ι_χ = |A|⁻¹ Σ_a ⟨χ,a⟩⁻¹ U_a`. Requires `c|_{A×A} ≡ 1`.
    pub fn idempotent(&self, ext: &ExtensionGroup, chi: &DualCharacter) -> Result<AlgebraElement, AlgebraError> {
        self.check_kernel(ext)?;
        let a = ext.kernel();
        let e = a.exponent();
        let f = &self.field;
        let inv_order = BigRational::new(BigInt::from(1), BigInt::from(a.order()));
        let mut out = self.zero();
        for (i, x) in a.elements().iter().enumerate() {
            let k = a.pairing_exponent(chi, x);
            let idx = f.root_index(RootExp::new(-(k as i64), e))?;
            out.coeffs[ext.index(i, 0)] = f.scale(&f.root(idx as i64), &inv_order);
        }
        Ok(out)
    }

    fn check_kernel(&self, ext: &ExtensionGroup) -> Result<(), AlgebraError> {
        if ext.group() != &self.g {
            return Err(AlgebraError::GroupMismatch);
        }
        let na = ext.kernel().order();
        if (0..na).any(|x| (0..na).any(|y| self.cocycle_exp(x, y) != 0)) {
            return Err(AlgebraError::RestrictionNotTrivial);
        }
        Ok(())
    }

    /// `ι_χ² = ι_χ`, `ι_χ ι_χ′ = 0` for `χ ≠ χ′`, and `Σ_χ ι_χ = U_1`.
    pub fn idempotents_complete(&self, ext: &ExtensionGroup) -> Result<bool, AlgebraError> {
        let a = ext.kernel();
        let ids: Vec<AlgebraElement> = a.characters().iter().map(|chi| self.idempotent(ext, chi)).collect::<Result<_, _>>()?;
        let zero = self.zero();
        for (i, u) in ids.iter().enumerate() {
            for (j, v) in ids.iter().enumerate() {
                let p = self.multiply(u, v)?;
                if (i == j && p != *u) || (i != j && p != zero) {
                    return Ok(false);
                }
            }
        }
        let total = ids.iter().fold(zero, |acc, u| self.add(&acc, u));
        Ok(total == self.basis(0))
    }
}

/// How conjugation by lifts `ḡ` moves the idempotents `ι_χ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentAction {
    /// `ḡ(ι_χ) = ι_{g(χ)·π_c(g)}` for all `g, χ`.
    pub charact: bool,
    /// `ḡ(ι₁) = ι_{π_c(g)}` for all `g`.
    pub iot: bool,
    /// `perm[g][χ]` is the index of `ψ` with `ḡ(ι_χ) = ι_ψ`, if any.
    pub perm: Vec<Vec<Option<usize>>>,
    pub orbit_of_trivial: usize,
}

impl TwistedAlgebra {
    pub fn idempotent_action(&self, ext: &ExtensionGroup, pi_c: &Cochain<DualCharacter>) -> Result<IdempotentAction, AlgebraError> {
        let a = ext.kernel();
        let q = ext.quotient();
        let chars = a.characters();
        let ids: Vec<AlgebraElement> = chars.iter().map(|chi| self.idempotent(ext, chi)).collect::<Result<_, _>>()?;
        let mut charact = true;
        let mut iot = true;
        let mut perm = Vec::with_capacity(q.order());
        for g in 0..q.order() {
            let mut row = Vec::with_capacity(chars.len());
            for (i, chi) in chars.iter().enumerate() {
                let moved = self.conj_action(ext.lift(g), &ids[i])?;
                let target = a.char_index_of(&a.char_mul(&ext.action().dual_act(g, chi), pi_c.at1(g)));
                let ok = moved == ids[target];
                charact &= ok;
                if i == 0 {
                    iot &= moved == ids[a.char_index_of(pi_c.at1(g))];
                }
                row.push(if ok { Some(target) } else { ids.iter().position(|u| *u == moved) });
            }
            perm.push(row);
        }
        let mut seen = vec![false; chars.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for row in &perm {
                if let Some(y) = row[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        Ok(IdempotentAction {
            charact,
            iot,
            perm,
            orbit_of_trivial: seen.iter().filter(|&&b| b).count(),
        })
    }
}

/// Rank of a sparse system over `ℚ(ζ_N)`; rows are `(column, value)` lists.
pub fn sparse_rank(f: &CycField, rows: Vec<Vec<(usize, CycNumber)>>) -> usize {
    use std::collections::BTreeMap;
    let mut pivots: BTreeMap<usize, BTreeMap<usize, CycNumber>> = BTreeMap::new();
    for row in rows {
        let mut r: BTreeMap<usize, CycNumber> = BTreeMap::new();
        for (c, v) in row {
            let cur = r.remove(&c).unwrap_or_else(|| f.zero());
            let s = f.add(&cur, &v);
            if !s.is_zero() {
                r.insert(c, s);
            }
        }
        while let Some((&lead, lv)) = r.iter().next() {
            let lv = lv.clone();
            match pivots.get(&lead) {
                Some(p) => {
                    for (c, pv) in p {
                        let cur = r.remove(c).unwrap_or_else(|| f.zero());
                        let s = f.sub(&cur, &f.mul(&lv, pv));
                        if !s.is_zero() {
                            r.insert(*c, s);
                        }
                    }
                }
                None => {
                    let inv = f.inv(&lv).expect("nonzero leading entry");
                    let norm = r.into_iter().map(|(c, v)| (c, f.mul(&v, &inv))).collect();
                    pivots.insert(lead, norm);
                    break;
                }
            }
        }
    }
    pivots.len()
}

impl RootMatrix {
    pub fn entry(&self, f: &CycField, i: usize, j: usize) -> CycNumber {
        let r = f.root(self.exps[i * self.size + j] as i64);
        if self.scale == 1 {
            r
        } else {
            f.scale(&r, &BigRational::new(BigInt::from(1), BigInt::from(self.scale)))
        }
    }

    pub fn transpose(&self) -> RootMatrix {
        let n = self.size;
        RootMatrix {
            size: n,
            exps: (0..n * n).map(|k| self.exps[(k % n) * n + k / n]).collect(),
            scale: self.scale,
        }
    }

    pub fn to_cyc(&self, f: &CycField) -> CycMatrix {
        let inv = BigRational::new(BigInt::from(1), BigInt::from(self.scale));
        (0..self.size)
            .map(|i| (0..self.size).map(|j| f.scale(&f.root(self.exps[i * self.size + j] as i64), &inv)).collect())
            .collect()
    }

    /// `self·other` over `ℚ(ζ_N)`, summing roots by exponent counts.
    pub fn compose(&self, other: &RootMatrix, f: &CycField) -> CycMatrix {
        let n = self.size;
        let order = f.order() as usize;
        let inv = BigRational::new(BigInt::from(1), BigInt::from(self.scale * other.scale));
        let mut counts = vec![0i64; order];
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        counts.iter_mut().for_each(|c| *c = 0);
                        for k in 0..n {
                            let e = (self.exps[i * n + k] + other.exps[k * n + j]) as usize % order;
                            counts[e] += 1;
                        }
                        f.scale(&f.from_root_counts(&counts), &inv)
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn is_identity(f: &CycField, m: &CycMatrix) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, x)| if i == j { *x == f.one() } else { x.is_zero() })
    })
}
