use std::collections::{BTreeSet, HashSet};

use super::{coboundary, coboundary0, is_bijective, is_cocycle, one_cocycle_check, Cochain, CochainError, CocycleClass, Dual, Roots};
use crate::groups::{AbElement, AbelianGroup, Action, DualCharacter, FiniteGroup, RootExp};
use crate::zmodlin::{solve_mod_sparse, SparseRow};

/// Generators of `Z¹(Q, Â)` and `B¹(Q, Â)`.
#[derive(Clone, Debug)]
pub struct Z1Space {
    pub cocycles: Vec<Cochain<DualCharacter>>,
    pub coboundaries: Vec<Cochain<DualCharacter>>,
    a: AbelianGroup,
    q_order: usize,
}

fn flatten(a: &AbelianGroup, f: &Cochain<DualCharacter>) -> Vec<usize> {
    f.values().iter().map(|c| a.char_index_of(c)).collect()
}

impl Z1Space {
    fn span(&self, gens: &[Cochain<DualCharacter>]) -> Vec<Cochain<DualCharacter>> {
        let zero = Cochain::constant(1, self.q_order, self.a.trivial_character());
        let mut seen: HashSet<Vec<usize>> = HashSet::from([flatten(&self.a, &zero)]);
        let mut out = vec![zero];
        let mut i = 0;
        while i < out.len() {
            for g in gens {
                let s = out[i].zip_with(g, |x, y| self.a.char_mul(x, y));
                if seen.insert(flatten(&self.a, &s)) {
                    out.push(s);
                }
            }
            i += 1;
        }
        out.sort_by_key(|f| flatten(&self.a, f));
        out
    }

    /// Every element of `Z¹`, sorted by value table.
    pub fn elements(&self) -> Vec<Cochain<DualCharacter>> {
        self.span(&self.cocycles)
    }

    /// Every element of `B¹`, sorted by value table.
    pub fn coboundary_elements(&self) -> Vec<Cochain<DualCharacter>> {
        self.span(&self.coboundaries)
    }
}

/// Row scale making a congruence mod `d_i` into one mod `exp(A)`.
fn scales(a: &AbelianGroup) -> Vec<i64> {
    let e = a.exponent();
    a.factors().iter().map(|&d| (e / d) as i64).collect()
}

/// Solves the linearized cocycle condition over the exponent lattice of `Â`.
pub fn z1_space(q: &FiniteGroup, action: &Action) -> Result<Z1Space, CochainError> {
    let a = action.kernel().clone();
    let n = q.order();
    let r = a.rank();
    let e = a.exponent();
    let s = scales(&a);
    let idx = |g: usize, i: usize| g * r + i;
    let mut rows = Vec::with_capacity(n * n * r);
    for g1 in 0..n {
        let d = action.dual_matrix(g1);
        for g2 in 0..n {
            for i in 0..r {
                let mut row = SparseRow::new(0);
                row.push(idx(q.mul(g1, g2), i), s[i]).push(idx(g1, i), -s[i]);
                for (j, &dij) in d[i].iter().enumerate() {
                    if dij != 0 {
                        row.push(idx(g2, j), -s[i] * dij);
                    }
                }
                rows.push(row);
            }
        }
    }
    let sol = solve_mod_sparse(n * r, &rows, e)?.ok_or_else(|| CochainError::Internal("homogeneous system unsolvable".into()))?;
    let to_cochain = |v: &[u64]| {
        Cochain::from_fn(1, n, |g| {
            let exps: Vec<i64> = (0..r).map(|i| v[idx(g[0], i)] as i64).collect();
            a.character(&exps).expect("rank matches")
        })
    };
    let mut cocycles: Vec<_> = sol.kernel.iter().map(|v| to_cochain(v)).collect();
    let trivial = Cochain::constant(1, n, a.trivial_character());
    cocycles.retain(|c| *c != trivial);
    for c in &cocycles {
        if one_cocycle_check(q, action, c).is_err() {
            return Err(CochainError::Internal("solver produced a non-cocycle".into()));
        }
    }
    let mut coboundaries: Vec<_> = (0..r).map(|j| coboundary0(q, &Dual(action), &a.basis_character(j))).collect();
    coboundaries.retain(|c| *c != trivial);
    Ok(Z1Space {
        cocycles,
        coboundaries,
        a,
        q_order: n,
    })
}

/// Finds `χ` with `π₁(g)·π₂(g)⁻¹ = g(χ)·χ⁻¹` for all `g`, if one exists.
pub fn cohomologous_1(
    q: &FiniteGroup,
    action: &Action,
    pi1: &Cochain<DualCharacter>,
    pi2: &Cochain<DualCharacter>,
) -> Result<Option<DualCharacter>, CochainError> {
    let a = action.kernel();
    let r = a.rank();
    let s = scales(a);
    let mut rows = Vec::with_capacity(q.order() * r);
    for g in 0..q.order() {
        let diff = a.char_mul(pi1.at1(g), &a.char_inv(pi2.at1(g)));
        let d = action.dual_matrix(g);
        for i in 0..r {
            let mut row = SparseRow::new(s[i] * diff.0[i] as i64);
            for j in 0..r {
                let coeff = d[i][j] - (i == j) as i64;
                if coeff != 0 {
                    row.push(j, s[i] * coeff);
                }
            }
            rows.push(row);
        }
    }
    let Some(sol) = solve_mod_sparse(r, &rows, a.exponent())? else {
        return Ok(None);
    };
    let exps: Vec<i64> = sol.particular.iter().map(|&x| x as i64).collect();
    let chi = a.character(&exps).expect("rank matches");
    let check = coboundary0(q, &Dual(action), &chi);
    for g in 0..q.order() {
        if a.char_mul(check.at1(g), pi2.at1(g)) != *pi1.at1(g) {
            return Err(CochainError::Internal("B¹ witness fails verification".into()));
        }
    }
    Ok(Some(chi))
}

/// One representative per `H¹` class of bijective 1-cocycles. The whole
/// coset is checked, not just the representative.
pub fn find_bijective_classes(q: &FiniteGroup, action: &Action) -> Result<Vec<CocycleClass<DualCharacter>>, CochainError> {
    let a = action.kernel();
    if q.order() != a.order() {
        return Err(CochainError::OrderMismatch {
            q: q.order(),
            a: a.order(),
        });
    }
    let space = z1_space(q, action)?;
    let b1 = space.coboundary_elements();
    let mut covered: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut classes = Vec::new();
    for z in space.elements() {
        let key = flatten(a, &z);
        if covered.contains(&key) {
            continue;
        }
        let bij = is_bijective(a, &z);
        for b in &b1 {
            let y = z.zip_with(b, |u, v| a.char_mul(u, v));
            if is_bijective(a, &y) != bij {
                return Err(CochainError::Internal("bijectivity is not constant on an H¹ class".into()));
            }
            covered.insert(flatten(a, &y));
        }
        if bij {
            classes.push(CocycleClass { representative: z });
        }
    }
    Ok(classes)
}

/// `w(g₁,g₂,g₃) = ⟨π(g₁), g₁(β(g₂,g₃))⟩`, valued in `μ_{exp(A)}`.
pub fn cup3(q: &FiniteGroup, action: &Action, beta: &Cochain<AbElement>, pi: &Cochain<DualCharacter>) -> Cochain<RootExp> {
    let a = action.kernel();
    let e = a.exponent();
    Cochain::from_fn(3, q.order(), |g| {
        let b = action.act(g[0], beta.at2(g[1], g[2]));
        RootExp::new(a.pairing_exponent(pi.at1(g[0]), &b) as i64, e)
    })
}

/// `exp(A)·|Q|`, the first modulus tried when solving for `ζ`.
pub fn default_zeta_modulus(a: &AbelianGroup, q: &FiniteGroup) -> u64 {
    a.exponent() * q.order() as u64
}

/// Particular solution and homogeneous generators of `δx = target` with
/// `μ_m` values and trivial action.
#[derive(Clone, Debug)]
pub struct RootSolution {
    pub solution: Cochain<RootExp>,
    pub kernel: Vec<Cochain<RootExp>>,
}

/// Solves `δⁿ⁻¹x = target` for `x` with values in `μ_m`, where `target` has
/// degree `n ∈ {1, 2, 3}` and `exp` of its values divides `m`.
pub fn solve_root_coboundary(group: &FiniteGroup, target: &Cochain<RootExp>, m: u64) -> Result<Option<RootSolution>, CochainError> {
    let n = target.degree();
    if !(1..=3).contains(&n) {
        return Err(CochainError::UnsupportedDegree(n));
    }
    let base = group.order();
    if target.base() != base {
        return Err(CochainError::BaseMismatch {
            expected: base,
            found: target.base(),
        });
    }
    let amb = target.ambient();
    if m % amb != 0 {
        return Err(CochainError::Modulus(amb, m));
    }
    let lifted = target.lift(m);
    let unknowns = base.pow(n as u32 - 1);
    let encode = |xs: &[usize]| xs.iter().fold(0, |acc, &x| acc * base + x);
    let mut args = vec![0usize; n];
    let mut inner = vec![0usize; n - 1];
    let mut rows = Vec::with_capacity(lifted.values().len());
    for (idx, v) in lifted.values().iter().enumerate() {
        let mut t = idx;
        for slot in args.iter_mut().rev() {
            *slot = t % base;
            t /= base;
        }
        let mut row = SparseRow::new(v.numerator() as i64);
        row.push(encode(&args[1..]), 1);
        for i in 0..n - 1 {
            for (k, slot) in inner.iter_mut().enumerate() {
                *slot = match k.cmp(&i) {
                    std::cmp::Ordering::Less => args[k],
                    std::cmp::Ordering::Equal => group.mul(args[k], args[k + 1]),
                    std::cmp::Ordering::Greater => args[k + 1],
                };
            }
            row.push(encode(&inner), if i % 2 == 0 { -1 } else { 1 });
        }
        row.push(encode(&args[..n - 1]), if n % 2 == 0 { 1 } else { -1 });
        rows.push(row);
    }
    let Some(sol) = solve_mod_sparse(unknowns, &rows, m)? else {
        return Ok(None);
    };
    let to_cochain = |v: &[u64]| Cochain::from_values(n - 1, base, v.iter().map(|&k| RootExp::new(k as i64, m)).collect()).expect("length matches");
    let solution = to_cochain(&sol.particular);
    if coboundary(group, &Roots(m), &solution)? != lifted {
        return Err(CochainError::Internal("coboundary solution fails verification".into()));
    }
    Ok(Some(RootSolution {
        solution,
        kernel: sol.kernel.iter().map(|v| to_cochain(v)).collect(),
    }))
}

/// Normalized `ζ` with `δ²ζ = w`, and the modulus where it was found.
#[derive(Clone, Debug)]
pub struct ZetaSolution {
    pub zeta: Cochain<RootExp>,
    pub modulus: u64,
}

#[derive(Clone, Debug)]
pub enum ZetaOutcome {
    Solved { solution: ZetaSolution, trace: Vec<(u64, bool)> },
    /// No solution at any modulus in the trace.
    Obstructed { trace: Vec<(u64, bool)> },
}

impl ZetaOutcome {
    pub fn trace(&self) -> &[(u64, bool)] {
        match self {
            ZetaOutcome::Solved { trace, .. } | ZetaOutcome::Obstructed { trace } => trace,
        }
    }

    pub fn solution(&self) -> Option<&ZetaSolution> {
        match self {
            ZetaOutcome::Solved { solution, .. } => Some(solution),
            ZetaOutcome::Obstructed { .. } => None,
        }
    }
}

/// Solves `δ²ζ = w`, trying `m, m·|Q|, …, m·|Q|^escalations` in turn.
pub fn solve_zeta(q: &FiniteGroup, w: &Cochain<RootExp>, m: u64, escalations: usize) -> Result<ZetaOutcome, CochainError> {
    if w.degree() != 3 {
        return Err(CochainError::DegreeMismatch {
            expected: 3,
            found: w.degree(),
        });
    }
    if !is_cocycle(q, &Roots(w.ambient()), w)? {
        return Err(CochainError::NotACocycle);
    }
    let mut trace = Vec::new();
    let mut modulus = m;
    for step in 0..=escalations {
        if step > 0 {
            modulus *= q.order() as u64;
        }
        let Some(sol) = solve_root_coboundary(q, w, modulus)? else {
            trace.push((modulus, false));
            continue;
        };
        trace.push((modulus, true));
        let raw = sol.solution;
        for g in 0..q.order() {
            if w.get(&[g, 0, g]).is_one() && raw.at2(0, g) != raw.at2(g, 0) {
                return Err(CochainError::UnbalancedZeta(g));
            }
        }
        let zeta = Cochain::from_fn(2, q.order(), |g| *raw.at2(g[0], g[1]) / *raw.at2(0, g[1]));
        if coboundary(q, &Roots(modulus), &zeta)? != w.lift(modulus) {
            return Err(CochainError::Internal("normalized ζ no longer solves δ²ζ = w".into()));
        }
        return Ok(ZetaOutcome::Solved {
            solution: ZetaSolution { zeta, modulus },
            trace,
        });
    }
    Ok(ZetaOutcome::Obstructed { trace })
}

/// Generators of the normalized 2-cocycles `Q² → μ_m`.
pub fn two_cocycle_generators(q: &FiniteGroup, m: u64) -> Result<Vec<Cochain<RootExp>>, CochainError> {
    let one = Cochain::constant(3, q.order(), RootExp::one(m));
    let sol = solve_root_coboundary(q, &one, m)?.ok_or_else(|| CochainError::Internal("homogeneous system unsolvable".into()))?;
    Ok(sol
        .kernel
        .into_iter()
        .map(|f| {
            let base = *f.at2(0, 0);
            f.map(|v| *v / base)
        })
        .filter(|f| !f.is_trivial())
        .collect())
}
