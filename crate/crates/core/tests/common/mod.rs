//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's solvers; only group tables and pairings are reused.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use central_type::cochains::Cochain;
use central_type::extension::ExtensionGroup;
use central_type::groups::{AbElement, AbelianGroup, Action, DualCharacter, ExpMatrix, FiniteGroup, RootExp};
use central_type::instance::Instance;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn c2() -> FiniteGroup {
    FiniteGroup::cyclic(2)
}

pub fn klein_group() -> FiniteGroup {
    FiniteGroup::direct_product(&c2(), &c2())
}

/// Groups of order `n ∈ {2, 4, 8}` up to isomorphism.
pub fn groups_of_order(n: usize) -> Vec<(&'static str, FiniteGroup)> {
    match n {
        2 => vec![("C2", c2())],
        4 => vec![("C4", FiniteGroup::cyclic(4)), ("C2xC2", klein_group())],
        8 => vec![
            ("C8", FiniteGroup::cyclic(8)),
            ("C4xC2", FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &c2())),
            ("C2^3", FiniteGroup::direct_product(&klein_group(), &c2())),
            ("D4", FiniteGroup::dihedral(4)),
            ("Q8", FiniteGroup::quaternion8()),
        ],
        _ => panic!("unsupported order {n}"),
    }
}

pub fn abelian_of_order(n: usize) -> Vec<AbelianGroup> {
    let f: Vec<Vec<u64>> = match n {
        2 => vec![vec![2]],
        4 => vec![vec![4], vec![2, 2]],
        8 => vec![vec![8], vec![2, 4], vec![2, 2, 2]],
        _ => panic!("unsupported order {n}"),
    };
    f.into_iter().map(|v| AbelianGroup::new(v).unwrap()).collect()
}

/// Every automorphism of `A` as an exponent matrix, found by testing all
/// matrices with entries below the exponent.
pub fn automorphisms(a: &AbelianGroup) -> Vec<ExpMatrix> {
    let r = a.rank();
    let e = a.exponent() as i64;
    let elems = a.elements();
    let mut out = Vec::new();
    let total = (e as usize).pow((r * r) as u32);
    for code in 0..total {
        let mut c = code;
        let m: ExpMatrix = (0..r)
            .map(|_| {
                (0..r)
                    .map(|_| {
                        let v = (c % e as usize) as i64;
                        c /= e as usize;
                        v
                    })
                    .collect()
            })
            .collect();
        // well defined on generators: d_j·(column j) = 0
        let ok = (0..r).all(|j| {
            let col: Vec<i64> = (0..r).map(|i| m[i][j] * a.factors()[j] as i64).collect();
            a.element(&col).unwrap() == a.identity()
        });
        if !ok {
            continue;
        }
        let img: HashSet<AbElement> = elems.iter().map(|x| apply(a, &m, x)).collect();
        if img.len() == elems.len() {
            let reduced: ExpMatrix = (0..r).map(|i| (0..r).map(|j| m[i][j].rem_euclid(a.factors()[i] as i64)).collect()).collect();
            if !out.contains(&reduced) {
                out.push(reduced);
            }
        }
    }
    out
}

pub fn apply(a: &AbelianGroup, m: &ExpMatrix, x: &AbElement) -> AbElement {
    let r = a.rank();
    let v: Vec<i64> = (0..r).map(|i| (0..r).map(|j| m[i][j] * x.exponents()[j] as i64).sum()).collect();
    a.element(&v).unwrap()
}

/// Every action of `Q` on `A`: all images of the generators, filtered by the
/// library's validation, deduplicated.
pub fn all_actions(q: &FiniteGroup, a: &AbelianGroup) -> Vec<Action> {
    let gens = q.generators();
    let auts = automorphisms(a);
    let mut out: Vec<Action> = Vec::new();
    let mut idx = vec![0usize; gens.len()];
    loop {
        let assignment: Vec<(usize, ExpMatrix)> = gens.iter().zip(&idx).map(|(&g, &i)| (g, auts[i].clone())).collect();
        if let Ok(act) = Action::from_generators(q, a.clone(), &assignment) {
            if !out.iter().any(|o| o.matrices() == act.matrices()) {
                out.push(act);
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < auts.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// `A`-valued 2-cocycle identity `g₁β(g₂,g₃) + β(g₁,g₂g₃) = β(g₁g₂,g₃) + β(g₁,g₂)`.
pub fn is_a_cocycle(q: &FiniteGroup, act: &Action, beta: &[usize], a: &AbelianGroup) -> bool {
    let n = q.order();
    let elems = a.elements();
    for x in 1..n {
        for y in 1..n {
            for z in 1..n {
                let l = a.add(&act.act(x, &elems[beta[y * n + z]]), &elems[beta[x * n + q.mul(y, z)]]);
                let r = a.add(&elems[beta[q.mul(x, y) * n + z]], &elems[beta[x * n + y]]);
                if l != r {
                    return false;
                }
            }
        }
    }
    true
}

/// One normalized representative per class of `H²(Q, A)`, by enumerating all
/// normalized cocycles and quotienting by coboundaries of normalized
/// 1-cochains.
pub fn h2_representatives(q: &FiniteGroup, act: &Action) -> Vec<Cochain<AbElement>> {
    let a = act.kernel();
    let n = q.order();
    let na = a.order();
    let free: Vec<(usize, usize)> = (1..n).flat_map(|x| (1..n).map(move |y| (x, y))).collect();
    let mut cocycles: Vec<Vec<usize>> = Vec::new();
    let total = na.pow(free.len() as u32);
    let mut table = vec![0usize; n * n];
    for code in 0..total {
        let mut c = code;
        for &(x, y) in &free {
            table[x * n + y] = c % na;
            c /= na;
        }
        if is_a_cocycle(q, act, &table, a) {
            cocycles.push(table.clone());
        }
    }
    let elems = a.elements();
    let mut boundaries: Vec<Vec<usize>> = Vec::new();
    let lfree = n - 1;
    for code in 0..na.pow(lfree as u32) {
        let mut c = code;
        let mut lam = vec![0usize; n];
        for l in lam.iter_mut().skip(1) {
            *l = c % na;
            c /= na;
        }
        let d: Vec<usize> = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                let v = a.sub(&a.add(&act.act(x, &elems[lam[y]]), &elems[lam[x]]), &elems[lam[q.mul(x, y)]]);
                a.index_of(&v)
            })
            .collect();
        boundaries.push(d);
    }
    let set: HashSet<Vec<usize>> = cocycles.iter().cloned().collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut reps = Vec::new();
    for z in &cocycles {
        if seen.contains(z) {
            continue;
        }
        for b in &boundaries {
            let s: Vec<usize> = z.iter().zip(b).map(|(&u, &v)| a.index_of(&a.add(&elems[u], &elems[v]))).collect();
            assert!(set.contains(&s), "coset leaves the cocycle set");
            seen.insert(s);
        }
        reps.push(Cochain::from_values(2, n, z.iter().map(|&i| elems[i].clone()).collect()).unwrap());
    }
    assert_eq!(seen.len(), cocycles.len());
    reps
}

/// `π(gh) = π(g)·g(π(h))`, checked directly.
pub fn is_dual_cocycle(q: &FiniteGroup, act: &Action, pi: &[DualCharacter]) -> bool {
    let a = act.kernel();
    (0..q.order()).all(|g| (0..q.order()).all(|h| pi[q.mul(g, h)] == a.char_mul(&pi[g], &act.dual_act(g, &pi[h]))))
}

/// Every 1-cocycle `Q → Â`, by enumerating all maps with `π(1) = 1`.
pub fn all_dual_cocycles(q: &FiniteGroup, act: &Action) -> Vec<Cochain<DualCharacter>> {
    let a = act.kernel();
    let chars = a.characters();
    let n = q.order();
    let na = chars.len();
    let mut out = Vec::new();
    for code in 0..na.pow((n - 1) as u32) {
        let mut c = code;
        let mut pi = vec![a.trivial_character(); n];
        for p in pi.iter_mut().skip(1) {
            *p = chars[c % na].clone();
            c /= na;
        }
        if is_dual_cocycle(q, act, &pi) {
            out.push(Cochain::from_values(1, n, pi).unwrap());
        }
    }
    out
}

pub fn is_bijective_map(a: &AbelianGroup, pi: &Cochain<DualCharacter>) -> bool {
    let img: HashSet<usize> = pi.values().iter().map(|c| a.char_index_of(c)).collect();
    img.len() == a.order() && pi.base() == a.order()
}

/// `χ` with `d(g) = g(χ)·χ⁻¹` for all `g`, by search.
pub fn b1_witness(q: &FiniteGroup, act: &Action, d: &Cochain<DualCharacter>) -> Option<DualCharacter> {
    let a = act.kernel();
    a.characters()
        .into_iter()
        .find(|chi| (0..q.order()).all(|g| *d.at1(g) == a.char_mul(&act.dual_act(g, chi), &a.char_inv(chi))))
}

/// `f(γ₁,γ₂)` depends only on the images in `Q`.
pub fn is_inflated(ext: &ExtensionGroup, f: &Cochain<RootExp>) -> bool {
    let n = ext.order();
    (0..n).all(|x| (0..n).all(|y| f.at2(x, y) == f.at2(ext.lift(ext.project(x)), ext.lift(ext.project(y)))))
}

/// `f(h,k)·f(g,hk) = f(gh,k)·f(g,h)` for a scalar 2-cochain, directly.
pub fn scalar_2_cocycle(g: &FiniteGroup, f: &Cochain<RootExp>) -> bool {
    let n = g.order();
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| *f.at2(y, z) * *f.at2(x, g.mul(y, z)) == *f.at2(g.mul(x, y), z) * *f.at2(x, y)))
    })
}

/// `(δμ)(x,y) = μ(y)μ(xy)⁻¹μ(x)`.
pub fn scalar_coboundary1(g: &FiniteGroup, mu: &[RootExp]) -> Cochain<RootExp> {
    Cochain::from_fn(2, g.order(), |v| mu[v[1]] / mu[g.mul(v[0], v[1])] * mu[v[0]])
}

/// Number of conjugacy classes of `c`-regular elements, from the cocycle
/// table alone: `x` is regular iff `c(x,t) = c(t,x)` for all `t` commuting
/// with `x`.
pub fn regular_classes(g: &FiniteGroup, c: &Cochain<RootExp>) -> usize {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut count = 0;
    for x in 0..n {
        if seen[x] {
            continue;
        }
        for t in 0..n {
            seen[g.conj(t, x)] = true;
        }
        let regular = (0..n).filter(|&t| g.mul(t, x) == g.mul(x, t)).all(|t| c.at2(x, t) == c.at2(t, x));
        count += usize::from(regular);
    }
    count
}

pub type C64 = (f64, f64);

pub fn root_c64(r: RootExp) -> C64 {
    let t = 2.0 * std::f64::consts::PI * r.numerator() as f64 / r.ambient() as f64;
    (t.cos(), t.sin())
}

pub fn cmul(a: C64, b: C64) -> C64 {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

pub fn cadd(a: C64, b: C64) -> C64 {
    (a.0 + b.0, a.1 + b.1)
}

pub fn cabs(a: C64) -> f64 {
    a.0.hypot(a.1)
}

/// `Σ_γ [γ,τ]_c` in floating point, with `[σ,γ] = c(γ,σ)c(γσγ⁻¹,γ)⁻¹`.
pub fn commutator_sum_c64(g: &FiniteGroup, c: &Cochain<RootExp>, tau: usize) -> C64 {
    (0..g.order()).fold((0.0, 0.0), |acc, gm| {
        let r = *c.at2(tau, gm) / *c.at2(g.conj(tau, gm), tau);
        cadd(acc, root_c64(r))
    })
}

/// Random normalized 1-cochain `Q → A`.
pub fn random_lambda(rng: &mut impl Rng, q: &FiniteGroup, a: &AbelianGroup) -> Cochain<AbElement> {
    let elems = a.elements();
    Cochain::from_fn(1, q.order(), |g| if g[0] == 0 { a.identity() } else { elems.choose(rng).unwrap().clone() })
}

/// Random `μ_m`-valued normalized 2-cocycle on `Q`: a coboundary times a
/// bilinear-type factor built from a homomorphism `Q → C_k`.
pub fn random_scalar_cocycle(rng: &mut impl Rng, q: &FiniteGroup, m: u64) -> Cochain<RootExp> {
    let n = q.order();
    let mut mu: Vec<RootExp> = (0..n).map(|_| RootExp::new(rng.gen_range(0..m as i64), m)).collect();
    mu[0] = RootExp::one(m);
    scalar_coboundary1(q, &mu)
}

/// All subgroups generated by at most three elements, by closure.
pub fn small_generated_subgroups(g: &FiniteGroup, order: usize) -> Vec<Vec<usize>> {
    let n = g.order();
    let close = |gens: &[usize]| -> Vec<usize> {
        let mut set = vec![false; n];
        set[0] = true;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            i += 1;
            for &s in gens {
                let y = g.mul(x, s);
                if !set[y] {
                    set[y] = true;
                    list.push(y);
                }
            }
        }
        list.sort();
        list
    };
    let mut found: HashMap<Vec<usize>, ()> = HashMap::new();
    for x in 0..n {
        for y in x..n {
            let h2 = close(&[x, y]);
            if h2.len() == order {
                found.insert(h2.clone(), ());
            }
            if h2.len() >= order {
                continue;
            }
            for z in y..n {
                let h3 = close(&[x, y, z]);
                if h3.len() == order {
                    found.insert(h3, ());
                }
            }
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_keys().collect();
    out.sort();
    out
}

/// One small instance: `(A, Q, action, β)` plus a label.
pub struct Labelled {
    pub label: String,
    pub inst: Instance,
}

/// Every `(A, Q, action, [β])` with `|A| = |Q| ∈ {2, 4}`.
pub fn small_suite() -> Vec<Labelled> {
    let mut out = Vec::new();
    for n in [2usize, 4] {
        for (qname, q) in groups_of_order(n) {
            for a in abelian_of_order(n) {
                for (ai, act) in all_actions(&q, &a).into_iter().enumerate() {
                    for (bi, beta) in h2_representatives(&q, &act).into_iter().enumerate() {
                        out.push(Labelled {
                            label: format!("Q={qname} A={:?} action#{ai} beta#{bi}", a.factors()),
                            inst: Instance {
                                name: None,
                                a: a.clone(),
                                q: q.clone(),
                                action: act.clone(),
                                beta,
                                pi: None,
                                c: None,
                            },
                        });
                    }
                }
            }
        }
    }
    out
}

/// A random `|A| = |Q| = 8` instance: random action from the automorphism
/// group, `β = δλ` times a fixed-point cyclic class when `Q` is cyclic.
pub fn random_order8(rng: &mut impl Rng) -> Labelled {
    let qs = groups_of_order(8);
    let (qname, q) = qs.choose(rng).unwrap().clone();
    let a = abelian_of_order(8).choose(rng).unwrap().clone();
    let auts = automorphisms(&a);
    let act = loop {
        if rng.gen_bool(0.2) {
            break Action::trivial(&q, a.clone());
        }
        let gens: Vec<(usize, ExpMatrix)> = q.generators().into_iter().map(|g| (g, auts.choose(rng).unwrap().clone())).collect();
        if let Ok(act) = Action::from_generators(&q, a.clone(), &gens) {
            break act;
        }
    };
    let lam = random_lambda(rng, &q, &a);
    let n = q.order();
    let mut beta = Cochain::from_fn(2, n, |v| {
        let (x, y) = (v[0], v[1]);
        a.sub(&a.add(&act.act(x, lam.at1(y)), lam.at1(x)), lam.at1(q.mul(x, y)))
    });
    if qname == "C8" && rng.gen_bool(0.7) {
        let fixed: Vec<AbElement> = a.elements().into_iter().filter(|x| (0..n).all(|g| act.act(g, x) == *x)).collect();
        let z = fixed.choose(rng).unwrap().clone();
        // generator 1: β(gⁱ, gʲ) = z when i + j ≥ 8
        let cyc = Cochain::from_fn(2, n, |v| if v[0] + v[1] >= n { z.clone() } else { a.identity() });
        beta = beta.zip_with(&cyc, |x, y| a.add(x, y));
    }
    Labelled {
        label: format!("Q={qname} A={:?} action={:?}", a.factors(), act.matrices()),
        inst: Instance {
            name: None,
            a,
            q,
            action: act,
            beta,
            pi: None,
            c: None,
        },
    }
}
