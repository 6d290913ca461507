//! The regular element `r = θ_c(1)`, the dual coalgebra of `ℂ^c[G]`, and
//! the twist `J_φ = (φ⁻¹⊗φ⁻¹)Δ′(φ(1))` with a checker for the twist identity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{CycField, CycNumber};
use crate::groups::FiniteGroup;
use crate::twisted_algebra::{is_identity, AlgebraElement, AlgebraError, RootMatrix, TwistedAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistError {
    #[error("the orbit of θ(1) has rank {0} < |G| = {1}; c is degenerate")]
    Degenerate(usize, usize),
    #[error("φ has no inverse of the expected form")]
    PhiNotInvertible,
    #[error("r* does not satisfy r*(γ·r) = δ_γ,1")]
    DualBasis,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `Σ J[a·n + b] a⊗b` in `ℂ[G]⊗ℂ[G]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub n: usize,
    pub coeffs: Vec<CycNumber>,
}

impl TensorElement {
    pub fn one(f: &CycField, n: usize) -> Self {
        let mut coeffs = vec![f.zero(); n * n];
        coeffs[0] = f.one();
        TensorElement { n, coeffs }
    }

    pub fn get(&self, a: usize, b: usize) -> &CycNumber {
        &self.coeffs[a * self.n + b]
    }

    pub fn support(&self) -> usize {
        self.coeffs.iter().filter(|x| !x.is_zero()).count()
    }
}

#[derive(Clone, Debug)]
pub struct RegularElement {
    pub r: AlgebraElement,
    pub orbit_rank: usize,
}

/// `r = θ_c(1) = |G|⁻¹ Σ_γ U_γ`. The orbit `{γ·r}` is the column set of
/// `θ_c`, and a left inverse `ψ_c` certifies that it is a basis.
pub fn regular_element(alg: &TwistedAlgebra) -> Result<RegularElement, TwistError> {
    let g = alg.group();
    let n = g.order();
    let f = alg.field();
    let theta = alg.theta_matrix();
    let r = AlgebraElement {
        coeffs: (0..n).map(|gm| theta.entry(f, gm, 0)).collect(),
    };
    for gm in 0..n {
        let moved = alg.conj_action(gm, &r)?;
        if (0..n).any(|s| moved.coeffs[s] != theta.entry(f, s, gm)) {
            return Err(TwistError::Degenerate(0, n));
        }
    }
    let rank = if is_identity(f, &alg.psi_matrix().compose(&theta, f)) {
        n
    } else {
        crate::cyclotomic::rank(f, &theta.to_cyc(f))
    };
    if rank < n {
        return Err(TwistError::Degenerate(rank, n));
    }
    Ok(RegularElement { r, orbit_rank: rank })
}

/// `Δ′(U_γ*) = Σ_{στ=γ} c(σ,τ) U_σ*⊗U_τ*` as a tensor indexed `σ·n + τ`.
pub fn dual_comultiplication(alg: &TwistedAlgebra, gamma: usize) -> TensorElement {
    let g = alg.group();
    let n = g.order();
    let f = alg.field();
    let mut coeffs = vec![f.zero(); n * n];
    for s in 0..n {
        let t = g.mul(g.inv(s), gamma);
        coeffs[s * n + t] = f.root(alg.cocycle_exp(s, t) as i64);
    }
    TensorElement { n, coeffs }
}

/// Coassociativity `(Δ′⊗id)Δ′ = (id⊗Δ′)Δ′` and the counit law for
/// `ε′(f) = f(U_1)`, on every basis functional.
pub fn check_dual_coalgebra(alg: &TwistedAlgebra) -> bool {
    let g = alg.group();
    let n = g.order();
    let m = alg.field().order();
    let e = |s, t| alg.cocycle_exp(s, t);
    let coassoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|d| (e(a, b) + e(g.mul(a, b), d)) % m == (e(b, d) + e(a, g.mul(b, d))) % m)));
    let counit = (0..n).all(|x| e(0, x) == 0 && e(x, 0) == 0);
    coassoc && counit
}

/// The data of `J_φ`: `r* ∈ (ℂ^c[G])*` with `r*(γ·r) = δ_{γ,1}`, the matrix
/// of `φ: γ ↦ γ·r*` on the dual basis, and `J` itself.
#[derive(Clone, Debug)]
pub struct Twist {
    pub regular: RegularElement,
    /// Coordinates of `r*` in the basis `U_ρ*`.
    pub r_star: Vec<CycNumber>,
    /// `φ(γ)(U_ρ)` at `ρ·n + γ`, as exponents of `ζ_N` times `r*`.
    pub phi: RootMatrix,
    pub j: TensorElement,
}

/// Builds `J = (φ⁻¹⊗φ⁻¹)Δ′(φ(1))` where `(γ·f)(u) = f(γ⁻¹·u)`.
pub fn build_twist(alg: &TwistedAlgebra) -> Result<Twist, TwistError> {
    let g = alg.group();
    let n = g.order();
    let f = alg.field();
    let order = f.order();
    let regular = regular_element(alg)?;
    // the orbit matrix is θ, so r*ᵀ is the first row of θ⁻¹ = ψ, all ones
    let psi = alg.psi_matrix();
    let r_star: Vec<CycNumber> = (0..n).map(|rho| psi.entry(f, 0, rho)).collect();
    for gm in 0..n {
        let v = alg.conj_action(gm, &regular.r)?;
        let mut acc = f.zero();
        for (x, y) in r_star.iter().zip(&v.coeffs) {
            acc = f.add(&acc, &f.mul(x, y));
        }
        if acc != if gm == 0 { f.one() } else { f.zero() } {
            return Err(TwistError::DualBasis);
        }
    }
    let r_exp: Vec<u64> = (0..n).map(|rho| psi.exps[rho]).collect();
    // φ(γ)(U_ρ) = r*(γ⁻¹·U_ρ) = [ρ,γ⁻¹]·r*(U_{γ⁻¹ργ})
    let mut phi = RootMatrix {
        size: n,
        exps: vec![0; n * n],
        scale: 1,
    };
    for rho in 0..n {
        for gm in 0..n {
            let gi = g.inv(gm);
            phi.exps[rho * n + gm] = (alg.commutator_exp(rho, gi) + r_exp[g.conj(gi, rho)]) % order;
        }
    }
    // with r* ≡ 1 the contragredient matrix inverts to θᵀ
    let theta = alg.theta_matrix();
    let theta_t = theta.transpose();
    if !is_identity(f, &theta_t.compose(&phi, f)) {
        return Err(TwistError::PhiNotInvertible);
    }
    // J_{γ,γ′} = Σ_{σ,τ} φ⁻¹[γ][σ]·r*(U_{στ})c(σ,τ)·φ⁻¹[γ′][τ]
    let o = order as usize;
    let mut coeffs = Vec::with_capacity(n * n);
    let inv_scale = BigRational::new(BigInt::one(), BigInt::from(theta.scale) * BigInt::from(theta.scale));
    let mut counts = vec![0i64; o];
    for gm in 0..n {
        for gp in 0..n {
            counts.iter_mut().for_each(|c| *c = 0);
            for s in 0..n {
                let left = theta_t.exps[gm * n + s];
                for t in 0..n {
                    let k = left + r_exp[g.mul(s, t)] + alg.cocycle_exp(s, t) + theta_t.exps[gp * n + t];
                    counts[(k % order) as usize] += 1;
                }
            }
            coeffs.push(f.scale(&f.from_root_counts(&counts), &inv_scale));
        }
    }
    Ok(Twist {
        regular,
        r_star,
        phi,
        j: TensorElement { n, coeffs },
    })
}

/// `φ(τγ) = τ·φ(γ)` for the contragredient action, entrywise.
pub fn phi_equivariant(alg: &TwistedAlgebra, twist: &Twist) -> bool {
    let g = alg.group();
    let n = g.order();
    let order = alg.field().order();
    let p = &twist.phi;
    (0..n).all(|tau| {
        let ti = g.inv(tau);
        (0..n).all(|gm| {
            (0..n).all(|rho| {
                let lhs = p.exps[rho * n + g.mul(tau, gm)];
                let rhs = (alg.commutator_exp(rho, ti) + p.exps[g.conj(ti, rho) * n + gm]) % order;
                lhs == rhs
            })
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `(Δ⊗id)(J)·(J⊗1) = (id⊗Δ)(J)·(1⊗J)`.
    Standard,
    /// `(J⊗1)·(Δ⊗id)(J) = (1⊗J)·(id⊗Δ)(J)`.
    Mirrored,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistReport {
    /// `None` if the identity holds, else the first failing `(x, y, z)`.
    pub standard: Option<(usize, usize, usize)>,
    pub mirrored: Option<(usize, usize, usize)>,
    pub counit_left: bool,
    pub counit_right: bool,
}

impl TwistReport {
    pub fn passing(&self) -> Vec<Orientation> {
        let mut out = Vec::new();
        if self.standard.is_none() {
            out.push(Orientation::Standard);
        }
        if self.mirrored.is_none() {
            out.push(Orientation::Mirrored);
        }
        out
    }

    pub fn valid(&self) -> bool {
        !self.passing().is_empty() && self.counit_left && self.counit_right
    }
}

/// Checks the twist identity in both orientations over all `|G|³`
/// coordinates, plus `(ε⊗id)J = (id⊗ε)J = 1`.
pub fn verify_twist_axioms(g: &FiniteGroup, f: &CycField, j: &TensorElement) -> TwistReport {
    let n = g.order();
    let mut ring = Accumulator::new(f, j);
    let mut standard = None;
    let mut mirrored = None;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if standard.is_none() {
                    // Σ_a J(a,z) J(a⁻¹x, a⁻¹y)  vs  Σ_b J(x,b) J(b⁻¹y, b⁻¹z)
                    ring.clear();
                    for a in 0..n {
                        let ai = g.inv(a);
                        ring.fma(Side::Left, a * n + z, g.mul(ai, x) * n + g.mul(ai, y));
                        ring.fma(Side::Right, x * n + a, g.mul(ai, y) * n + g.mul(ai, z));
                    }
                    if !ring.balanced() {
                        standard = Some((x, y, z));
                    }
                }
                if mirrored.is_none() {
                    // Σ_a J(xa⁻¹, ya⁻¹) J(a,z)  vs  Σ_b J(yb⁻¹, zb⁻¹) J(x,b)
                    ring.clear();
                    for a in 0..n {
                        let ai = g.inv(a);
                        ring.fma(Side::Left, g.mul(x, ai) * n + g.mul(y, ai), a * n + z);
                        ring.fma(Side::Right, g.mul(y, ai) * n + g.mul(z, ai), x * n + a);
                    }
                    if !ring.balanced() {
                        mirrored = Some((x, y, z));
                    }
                }
                if standard.is_some() && mirrored.is_some() {
                    break 'outer;
                }
            }
        }
    }
    let sum = |idx: &mut dyn Iterator<Item = usize>| idx.fold(f.zero(), |acc, i| f.add(&acc, &j.coeffs[i]));
    let delta = |b: usize| if b == 0 { f.one() } else { f.zero() };
    let counit_left = (0..n).all(|b| sum(&mut (0..n).map(|a| a * n + b)) == delta(b));
    let counit_right = (0..n).all(|a| sum(&mut (0..n).map(|b| a * n + b)) == delta(a));
    TwistReport {
        standard,
        mirrored,
        counit_left,
        counit_right,
    }
}

/// Outcome of the invertibility check for `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Invertibility {
    /// Left multiplication by `J` on `ℂ[H]`, with `H ≤ G×G` generated by the
    /// support of `J`, is nonsingular after reduction to `F_p` along
    /// `ζ_N ↦ root`; hence it is nonsingular over `ℚ(ζ_N)`.
    Certified { prime: u64, root: u64, subgroup_order: usize },
    /// Every prime tried gave a singular reduction.
    Undetermined { primes: Vec<u64>, subgroup_order: usize },
    /// `H` exceeds the size limit.
    TooLarge { subgroup_order: usize },
}

impl Invertibility {
    pub fn certified(&self) -> bool {
        matches!(self, Invertibility::Certified { .. })
    }
}

/// Certifies that `J` is a unit of `ℂ[G]⊗ℂ[G]`. A unit of `ℂ[H]` is a unit
/// of `ℂ[G×G]`, and conversely, so the check is done on the support subgroup.
pub fn check_invertible(g: &FiniteGroup, f: &CycField, j: &TensorElement, max_order: usize) -> Invertibility {
    use std::collections::HashMap;
    let n = g.order();
    let support: Vec<(usize, usize)> = (0..n * n).filter(|&i| !j.coeffs[i].is_zero()).map(|i| (i / n, i % n)).collect();
    let mut index: HashMap<(usize, usize), usize> = HashMap::from([((0, 0), 0)]);
    let mut elems = vec![(0usize, 0usize)];
    let mut cursor = 0;
    while cursor < elems.len() {
        let (a, b) = elems[cursor];
        cursor += 1;
        for &(x, y) in &support {
            let p = (g.mul(a, x), g.mul(b, y));
            if !index.contains_key(&p) {
                index.insert(p, elems.len());
                elems.push(p);
                if elems.len() > max_order {
                    return Invertibility::TooLarge { subgroup_order: elems.len() };
                }
            }
        }
    }
    let h = elems.len();
    let order = f.order();
    let mut primes = Vec::new();
    let mut p = (1u64 << 31) / order * order + 1;
    while primes.len() < 3 {
        if is_prime(p) {
            primes.push(p);
            let w = root_of_order(p, order);
            let reduce = |x: &CycNumber| -> Option<u64> {
                let den = mod_big(x.denominator(), p);
                if den == 0 {
                    return None;
                }
                let mut acc = 0u64;
                let mut pow = 1u64;
                for c in x.numerators() {
                    acc = (acc + mulmod(mod_big(c, p), pow, p)) % p;
                    pow = mulmod(pow, w, p);
                }
                Some(mulmod(acc, powmod(den, p - 2, p), p))
            };
            let entries: Option<Vec<(usize, usize, u64)>> = support
                .iter()
                .map(|&(a, b)| reduce(j.get(a, b)).map(|v| (a, b, v)))
                .collect();
            if let Some(entries) = entries {
                // M[u][v] = J(u·v⁻¹)
                let mut m = vec![vec![0u64; h]; h];
                for (v, &(va, vb)) in elems.iter().enumerate() {
                    for &(a, b, val) in &entries {
                        let u = index[&(g.mul(a, va), g.mul(b, vb))];
                        m[u][v] = (m[u][v] + val) % p;
                    }
                }
                if rank_mod_p(&mut m, p) == h {
                    return Invertibility::Certified {
                        prime: p,
                        root: w,
                        subgroup_order: h,
                    };
                }
            }
        }
        p += order;
    }
    Invertibility::Undetermined { primes, subgroup_order: h }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn mod_big(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("reduced below p")
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of exact order `n` in `F_p`, for `n | p − 1`.
fn root_of_order(p: u64, n: u64) -> u64 {
    let qs = prime_factors(n);
    (2..p)
        .map(|h| powmod(h, (p - 1) / n, p))
        .find(|&w| qs.iter().all(|&q| powmod(w, n / q, p) != 1))
        .expect("F_p* is cyclic")
}

fn rank_mod_p(m: &mut [Vec<u64>], p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = powmod(m[r][c], p - 2, p);
        for x in m[r][c..].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = (*x + p - mulmod(factor, y, p)) % p;
                }
            }
        }
        r += 1;
    }
    r
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

/// Accumulates `Σ J(u)J(v)` on two sides and compares them.
enum Accumulator<'a> {
    /// Entries scaled to a common denominator as integer polynomials in
    /// `ζ_N` of degree `< φ(N)`; products accumulate unreduced in `i128` and
    /// are reduced modulo `Φ_N` only when compared.
    Int {
        phi: usize,
        cyclo: Vec<i64>,
        entries: Vec<Option<Vec<i64>>>,
        sides: [Vec<i128>; 2],
    },
    Exact {
        f: &'a CycField,
        coeffs: &'a [CycNumber],
        sides: [CycNumber; 2],
    },
}

impl<'a> Accumulator<'a> {
    fn new(f: &'a CycField, j: &'a TensorElement) -> Self {
        let phi = f.degree();
        let mut den = BigInt::one();
        for x in &j.coeffs {
            den = num_integer::Integer::lcm(&den, x.denominator());
        }
        let scaled: Vec<Vec<BigInt>> = j
            .coeffs
            .iter()
            .map(|x| x.numerators().iter().map(|c| c * (&den / x.denominator())).collect())
            .collect();
        let max_bits = scaled.iter().flatten().map(|c| c.bits()).max().unwrap_or(0);
        // each side is a sum of |G|·φ products, then reduced by Φ_N whose
        // coefficients are small; keep a wide margin below 2¹²⁷
        let terms = (j.n * phi).max(2) as u64;
        let reduction = f.modulus_polynomial().iter().map(|c| c.unsigned_abs()).max().unwrap_or(1).max(2);
        let budget = 2 * max_bits + 64 - terms.leading_zeros() as u64 + (phi as u64) * (64 - reduction.leading_zeros() as u64);
        if budget >= 120 {
            return Accumulator::Exact {
                f,
                coeffs: &j.coeffs,
                sides: [f.zero(), f.zero()],
            };
        }
        let entries = scaled
            .iter()
            .map(|cs| (!cs.iter().all(|c| c.is_zero())).then(|| cs.iter().map(|c| c.to_i64().expect("bounded")).collect()))
            .collect();
        Accumulator::Int {
            phi,
            cyclo: f.modulus_polynomial().to_vec(),
            entries,
            sides: [vec![0; 2 * phi], vec![0; 2 * phi]],
        }
    }

    fn clear(&mut self) {
        match self {
            Accumulator::Int { sides, .. } => sides.iter_mut().for_each(|s| s.iter_mut().for_each(|c| *c = 0)),
            Accumulator::Exact { f, sides, .. } => *sides = [f.zero(), f.zero()],
        }
    }

    fn fma(&mut self, side: Side, u: usize, v: usize) {
        let k = side as usize;
        match self {
            Accumulator::Int { entries, sides, .. } => {
                let (Some(a), Some(b)) = (&entries[u], &entries[v]) else {
                    return;
                };
                let acc = &mut sides[k];
                for (i, &x) in a.iter().enumerate() {
                    if x != 0 {
                        let x = x as i128;
                        for (l, &y) in b.iter().enumerate() {
                            acc[i + l] += x * y as i128;
                        }
                    }
                }
            }
            Accumulator::Exact { f, coeffs, sides } => {
                if !coeffs[u].is_zero() && !coeffs[v].is_zero() {
                    sides[k] = f.add(&sides[k], &f.mul(&coeffs[u], &coeffs[v]));
                }
            }
        }
    }

    /// Reduces `left − right` modulo the monic `Φ_N` and tests for zero.
    fn balanced(&mut self) -> bool {
        match self {
            Accumulator::Int { phi, cyclo, sides, .. } => {
                let phi = *phi;
                let [lhs, rhs] = sides;
                for (l, r) in lhs.iter_mut().zip(rhs.iter()) {
                    *l -= *r;
                }
                for top in (phi..lhs.len()).rev() {
                    let c = lhs[top];
                    if c != 0 {
                        lhs[top] = 0;
                        for (j, &p) in cyclo[..phi].iter().enumerate() {
                            lhs[top - phi + j] -= c * p as i128;
                        }
                    }
                }
                lhs[..phi].iter().all(|&c| c == 0)
            }
            Accumulator::Exact { sides, .. } => sides[0] == sides[1],
        }
    }
}
