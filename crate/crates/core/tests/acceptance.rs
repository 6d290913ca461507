//! Acceptance battery: one PASS/FAIL line per criterion. All comparisons are
//! exact except the floating-point cross-checks, which use `FLOAT_TOL`.

mod common;

use std::time::Instant;

use central_type::catalog;
use central_type::cochains::{
    coboundary, find_bijective_classes, is_bijective, is_cocycle, one_cocycle_check, solve_root_coboundary, two_cocycle_generators,
    z1_space, Cochain, Kernel, Roots,
};
use central_type::correspondence::{
    build_c_pi, build_c_pi_with_zeta, change_transversal, extract_pi, karp_normalize, nondeg_sum_test, restriction_witness,
    roundtrip_c_then_pi, roundtrip_pi_then_c, CPi, TwoCocycleG,
};
use central_type::cyclotomic::CycField;
use central_type::extension::{abelian_normal_subgroups, find_complement, ExtensionGroup};
use central_type::groups::{AbElement, AbelianGroup, Action, DualCharacter, FiniteGroup, RootExp};
use central_type::twisted_algebra::{is_identity, TwistedAlgebra};
use central_type::twists::{build_twist, check_invertible, verify_twist_axioms, Orientation, TensorElement};
use central_type::zmodlin::{smith_normal_form, solve_mod, IntMatrix};
use common::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FLOAT_TOL: f64 = 1e-9;
const RANDOM_ORDER8: usize = 20;

type Verdict = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// A `π` on an instance together with whatever `build_c_pi` produced.
struct Case {
    label: String,
    ext: ExtensionGroup,
    pi: Cochain<DualCharacter>,
    bijective: bool,
    built: Option<CPi>,
}

struct Suite {
    cases: Vec<Case>,
    small_instances: usize,
    random_instances: usize,
    random_attempts: usize,
}

fn build_suite() -> Suite {
    let mut cases = Vec::new();
    let small = small_suite();
    for inst in &small {
        let ext = inst.inst.extension().expect("small extension");
        let (q, act) = (&inst.inst.q, &inst.inst.action);
        for pi in all_dual_cocycles(q, act) {
            let bijective = is_bijective_map(ext.kernel(), &pi);
            let built = build_c_pi(&ext, &pi, 1).ok();
            cases.push(Case {
                label: inst.label.clone(),
                ext: ext.clone(),
                pi,
                bijective,
                built,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let (mut found, mut attempts) = (0, 0);
    while found < RANDOM_ORDER8 && attempts < 2000 {
        attempts += 1;
        let inst = random_order8(&mut rng);
        let (q, act) = (&inst.inst.q, &inst.inst.action);
        let classes = find_bijective_classes(q, act).expect("orders match");
        if classes.is_empty() {
            continue;
        }
        let ext = inst.inst.extension().expect("random extension");
        let mut any_built = false;
        for cls in classes.iter().take(2) {
            let pi = cls.representative.clone();
            let built = build_c_pi(&ext, &pi, 1).ok();
            any_built |= built.is_some();
            cases.push(Case {
                label: inst.label.clone(),
                ext: ext.clone(),
                bijective: true,
                pi,
                built,
            });
        }
        // a couple of non-bijective cocycles for the degenerate side
        let z1 = z1_space(q, act).expect("z1");
        for pi in z1.elements().into_iter().filter(|p| !is_bijective(ext.kernel(), p)).take(2) {
            let built = build_c_pi(&ext, &pi, 1).ok();
            cases.push(Case {
                label: inst.label.clone(),
                ext: ext.clone(),
                bijective: false,
                pi,
                built,
            });
        }
        found += usize::from(any_built);
    }
    Suite {
        cases,
        small_instances: small.len(),
        random_instances: found,
        random_attempts: attempts,
    }
}

fn ratio(x: &Cochain<RootExp>, y: &Cochain<RootExp>) -> Cochain<RootExp> {
    let m = num_integer::lcm(x.ambient(), y.ambient());
    x.lift(m).mul(&y.lift(m).inv())
}

fn descend(ext: &ExtensionGroup, f: &Cochain<RootExp>) -> Cochain<RootExp> {
    Cochain::from_fn(2, ext.quotient().order(), |g| *f.at2(ext.lift(g[0]), ext.lift(g[1])))
}

fn random_g_cochain(rng: &mut impl Rng, n: usize, m: u64) -> Vec<RootExp> {
    let mut mu: Vec<RootExp> = (0..n).map(|_| RootExp::new(rng.gen_range(0..m as i64), m)).collect();
    mu[0] = RootExp::one(m);
    mu
}

/// A random normalized 2-cocycle on `Q` valued in `μ_m`: a random product of
/// the library's class generators, checked here, times a random coboundary.
fn random_q_cocycle(rng: &mut impl Rng, q: &FiniteGroup, m: u64) -> Cochain<RootExp> {
    let mut f = random_scalar_cocycle(rng, q, m);
    for g in two_cocycle_generators(q, m).expect("generators") {
        let g = g.lift(m);
        for _ in 0..rng.gen_range(0..3) {
            f = f.mul(&g);
        }
    }
    assert!(scalar_2_cocycle(q, &f));
    f
}

fn alg_of(ext: &ExtensionGroup, c: &Cochain<RootExp>) -> TwistedAlgebra {
    TwistedAlgebra::new(ext.group(), c, ext.kernel().exponent()).expect("algebra")
}

fn criterion1() -> Verdict {
    let start = Instant::now();
    let inst = catalog::paper64();
    let ext = inst.extension().map_err(|e| e.to_string())?;
    let g = ext.group();
    let a = ext.kernel();
    ensure!(g.order() == 64, "|G| = {}", g.order());
    let (s, t) = (ext.lift(1), ext.lift(4));
    ensure!(g.power(s, 4) == 0 && g.power(t, 2) == 0, "σ̄⁴ or τ̄² is not 1");
    let comm = g.mul(g.mul(t, s), g.mul(g.inv(t), g.inv(s)));
    // x⁻¹y with factors stored as (y, x)
    let z = a.element(&[1, -1]).unwrap();
    ensure!(comm == ext.index(a.index_of(&z), 0), "τ̄σ̄τ̄⁻¹σ̄⁻¹ ≠ x⁻¹y");
    let pi = inst.pi.clone().unwrap();
    ensure!(one_cocycle_check(&inst.q, &inst.action, &pi).is_ok(), "π fails one_cocycle_check");
    ensure!(is_dual_cocycle(&inst.q, &inst.action, pi.values()), "π fails the oracle cocycle check");
    ensure!(is_bijective(a, &pi) && is_bijective_map(a, &pi), "π is not bijective");
    let cpi = build_c_pi(&ext, &pi, 0).map_err(|e| e.to_string())?;
    ensure!(cpi.zeta.modulus == 32 && cpi.trace == vec![(32, true)], "ζ trace {:?}", cpi.trace);
    let c = cpi.c.table();
    ensure!(is_cocycle(g, &Roots(c.ambient()), c).unwrap(), "c_π fails is_cocycle");
    ensure!(scalar_2_cocycle(g, c), "c_π fails the oracle cocycle identity");
    let na = a.order();
    ensure!((0..na).all(|x| (0..na).all(|y| c.at2(x, y).is_one())), "c_π|A×A is not identically 1");
    ensure!(restriction_witness(&ext, c).unwrap().is_some(), "no restriction witness");
    let alg = alg_of(&ext, c);
    ensure!(nondeg_sum_test(&alg), "nondeg_sum_test false");
    let worst = (1..64).map(|tau| cabs(commutator_sum_c64(g, c, tau))).fold(0.0, f64::max);
    ensure!(worst < FLOAT_TOL, "floating commutator sum {worst:e}");
    ensure!(alg.center_dimension() == 1, "center dimension {}", alg.center_dimension());
    ensure!(regular_classes(g, c) == 1, "oracle regular classes {}", regular_classes(g, c));
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 30.0, "took {secs:.1}s");
    Ok(format!("relations, π bijective, ζ at M = 32, center 1, max |Σ| = {worst:.1e}, {secs:.2}s"))
}

fn criterion2() -> Verdict {
    let start = Instant::now();
    let ext = catalog::paper64().extension().map_err(|e| e.to_string())?;
    let g = ext.group();
    let lib = abelian_normal_subgroups(g, 8);
    ensure!(!lib.is_empty(), "no abelian normal subgroup of order 8");
    for n in &lib {
        ensure!(find_complement(g, n).unwrap().is_none(), "library found a complement to {:?}", n.elements());
    }
    // oracle: all order-8 subgroups by closure of ≤ 3 generators
    let all8 = small_generated_subgroups(g, 8);
    let normal_abelian: Vec<&Vec<usize>> = all8
        .iter()
        .filter(|h| h.iter().all(|&x| h.iter().all(|&y| g.mul(x, y) == g.mul(y, x))))
        .filter(|h| (0..64).all(|t| h.iter().all(|&x| h.binary_search(&g.conj(t, x)).is_ok())))
        .collect();
    let mut lib_sets: Vec<Vec<usize>> = lib
        .iter()
        .map(|s| {
            let mut v = s.elements().to_vec();
            v.sort();
            v
        })
        .collect();
    lib_sets.sort();
    let oracle_sets: Vec<Vec<usize>> = normal_abelian.iter().map(|v| (*v).clone()).collect();
    ensure!(lib_sets == oracle_sets, "library lists {} subgroups, oracle {}", lib_sets.len(), oracle_sets.len());
    for n in &normal_abelian {
        let split = all8.iter().any(|h| h.iter().filter(|x| n.binary_search(x).is_ok()).count() == 1);
        ensure!(!split, "oracle found a complement to {n:?}");
    }
    Ok(format!(
        "{} abelian normal subgroups of order 8 (oracle agrees among {} subgroups of order 8), none complemented, {:.2}s",
        lib.len(),
        all8.len(),
        start.elapsed().as_secs_f64()
    ))
}

fn criterion3(suite: &Suite) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut from_pi, mut from_c, mut obstructed) = (0, 0, 0);
    for case in suite.cases.iter().filter(|c| c.bijective) {
        let Some(cpi) = &case.built else {
            // the cup class vanishes identically for split β
            let a = case.ext.kernel();
            ensure!(case.ext.beta().values().iter().any(|b| *b != a.identity()), "{}: split β reported obstructed", case.label);
            obstructed += 1;
            continue;
        };
        let (ext, q, act) = (&case.ext, case.ext.quotient(), case.ext.action());
        let rt = roundtrip_c_then_pi(ext, &case.pi, 1).map_err(|e| format!("{}: {e}", case.label))?;
        let diff = Cochain::from_fn(1, q.order(), |g| ext.kernel().char_mul(rt.extracted.at1(g[0]), &ext.kernel().char_inv(case.pi.at1(g[0]))));
        ensure!(b1_witness(q, act, &diff).is_some(), "{}: [π_c_π] ≠ [π] by oracle", case.label);
        ensure!(rt.classes_agree(), "{}: library B¹ solve failed", case.label);
        from_pi += 1;

        // c = c_π · δμ · inflate(f), generally not (karp)-normalized
        let c0 = cpi.c.table();
        let m = c0.ambient();
        let mu = random_g_cochain(&mut rng, ext.order(), m);
        let f = random_q_cocycle(&mut rng, q, m);
        let c = c0.mul(&scalar_coboundary1(ext.group(), &mu)).mul(&ext.inflate(&f));
        let user = TwoCocycleG::user_supplied(ext, c.clone()).map_err(|e| e.to_string())?;
        let normed = karp_normalize(ext, &user, 1).map_err(|e| format!("{}: {e}", case.label))?;
        let back = ratio(normed.c.table(), &c);
        let dmu = scalar_coboundary1(ext.group(), normed.mu.lift(back.ambient()).values());
        ensure!(back == dmu, "{}: karp output is not c·δμ", case.label);
        let rt = roundtrip_pi_then_c(ext, &normed.c, 1).map_err(|e| format!("{}: {e}", case.label))?;
        let r = ratio(normed.c.table(), rt.rebuilt.c.table());
        ensure!(is_inflated(ext, &r), "{}: c·c_(π_c)⁻¹ not inflated", case.label);
        ensure!(scalar_2_cocycle(q, &descend(ext, &r)), "{}: descended ratio not a cocycle", case.label);
        ensure!(rt.differs_by_inflation(), "{}: library disagrees", case.label);
        let diff = Cochain::from_fn(1, q.order(), |g| {
            ext.kernel().char_mul(rt.extraction.pi.at1(g[0]), &ext.kernel().char_inv(case.pi.at1(g[0])))
        });
        ensure!(b1_witness(q, act, &diff).is_some(), "{}: [π_c] ≠ [π] after perturbation", case.label);
        from_c += 1;
    }
    ensure!(suite.random_instances >= RANDOM_ORDER8, "only {} random instances", suite.random_instances);
    Ok(format!(
        "{} small + {} random order-8 instances ({} draws); {from_pi} π→c→π and {from_c} c→π→c round trips exact; {obstructed} bijective π outside K_β (all with non-split β)",
        suite.small_instances, suite.random_instances, suite.random_attempts
    ))
}

fn criterion4(suite: &Suite) -> Verdict {
    let (mut good, mut bad) = (0, 0);
    for case in &suite.cases {
        let Some(cpi) = &case.built else { continue };
        let (ext, c) = (&case.ext, cpi.c.table());
        let g = ext.group();
        let alg = alg_of(ext, c);
        let dim = alg.center_dimension();
        let oracle = regular_classes(g, c);
        ensure!(dim == oracle, "{}: center {dim} vs oracle {oracle}", case.label);
        if case.bijective {
            ensure!(nondeg_sum_test(&alg) && dim == 1, "{}: bijective π gives center {dim}", case.label);
            let worst = (1..g.order()).map(|t| cabs(commutator_sum_c64(g, c, t))).fold(0.0, f64::max);
            ensure!(worst < FLOAT_TOL, "{}: floating sum {worst:e}", case.label);
            good += 1;
        } else {
            ensure!(dim > 1, "{}: non-bijective π gives center 1", case.label);
            bad += 1;
        }
    }
    Ok(format!("{good} bijective c_π non-degenerate; {bad} non-bijective c_π with center > 1"))
}

fn criterion5(suite: &Suite) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut counts = [0usize; 5];
    let mut seen_labels: Vec<&str> = Vec::new();
    for case in &suite.cases {
        let Some(cpi) = &case.built else { continue };
        let (ext, q) = (&case.ext, case.ext.quotient());
        let (a, act) = (ext.kernel(), ext.action());
        let c = cpi.c.table();
        let na = a.order();

        // (1) restriction to A is trivial
        ensure!((0..na).all(|x| (0..na).all(|y| c.at2(x, y).is_one())), "{}: c|A×A ≢ 1", case.label);
        let w = cpi.restriction_witness.clone();
        let ag = a.as_finite_group();
        let dw = scalar_coboundary1(&ag, w.values());
        ensure!(dw == ext.restrict(c).lift(dw.ambient()), "{}: restriction witness", case.label);
        counts[0] += 1;

        // (2) ζ ↦ ζ·f changes c_π by inflate(f)
        let m = cpi.zeta.zeta.ambient();
        let f = random_q_cocycle(&mut rng, q, m);
        let c2 = build_c_pi_with_zeta(ext, &case.pi, &cpi.zeta.zeta.mul(&f)).map_err(|e| e.to_string())?;
        let r = ratio(c2.table(), c);
        ensure!(is_inflated(ext, &r) && descend(ext, &r) == f.lift(r.ambient()), "{}: ζ perturbation", case.label);
        counts[1] += 1;

        // (3) a new transversal changes c_π by an inflated 2-cocycle
        let lam = random_lambda(&mut rng, q, a);
        let (ext2, to_g) = change_transversal(ext, &lam).map_err(|e| e.to_string())?;
        let cpi2 = build_c_pi(&ext2, &case.pi, 1).map_err(|e| format!("{}: {e}", case.label))?;
        let mut from_g = vec![0; ext.order()];
        for (x, &y) in to_g.iter().enumerate() {
            from_g[y] = x;
        }
        let pulled = Cochain::from_fn(2, ext.order(), |v| *cpi2.c.table().at2(from_g[v[0]], from_g[v[1]]));
        let r = ratio(&pulled, c);
        ensure!(is_inflated(ext, &r), "{}: transversal change not inflated", case.label);
        ensure!(scalar_2_cocycle(q, &descend(ext, &r)), "{}: transversal ratio not a cocycle", case.label);
        counts[2] += 1;

        // (4) and (5) once per instance
        if seen_labels.contains(&case.label.as_str()) {
            continue;
        }
        seen_labels.push(&case.label);
        let e = a.exponent();
        let chi = a.character_at(rng.gen_range(0..na));
        let pi_b = Cochain::from_fn(1, q.order(), |g| a.char_mul(&act.dual_act(g[0], &chi), &a.char_inv(&chi)));
        let zeta = Cochain::from_fn(2, q.order(), |g| RootExp::new(a.pairing_exponent(&chi, ext.beta().at2(g[0], g[1])) as i64, e));
        let cb = build_c_pi_with_zeta(ext, &pi_b, &zeta).map_err(|err| format!("{}: (4) {err}", case.label))?;
        let cb = cb.table();
        // χ̄(aḡ) = ⟨χ, a⟩
        let chibar_inv: Vec<RootExp> = (0..ext.order())
            .map(|gm| {
                let (ai, _) = ext.split(gm);
                RootExp::new(-(a.pairing_exponent(&chi, &a.element_at(ai)) as i64), e).lift(cb.ambient())
            })
            .collect();
        ensure!(*cb == scalar_coboundary1(ext.group(), &chibar_inv), "{}: c_δχ ≠ δ(χ̄⁻¹)", case.label);
        let solved = solve_root_coboundary(ext.group(), cb, cb.ambient()).unwrap();
        ensure!(solved.is_some(), "{}: c_δχ not solved as a coboundary", case.label);
        counts[3] += 1;

        let z1: Vec<Cochain<DualCharacter>> = all_or_sampled_cocycles(&mut rng, q, act);
        let built: Vec<(Cochain<DualCharacter>, Cochain<RootExp>)> = z1
            .iter()
            .filter_map(|p| build_c_pi(ext, p, 1).ok().map(|b| (p.clone(), b.c.table().clone())))
            .collect();
        for (p1, t1) in built.iter().take(3) {
            for (p2, t2) in built.iter().take(3) {
                let p12 = p1.zip_with(p2, |x, y| a.char_mul(x, y));
                let t12 = build_c_pi(ext, &p12, 1).map_err(|err| format!("{}: K_β not closed: {err}", case.label))?;
                let r = ratio(&ratio(t1, &t2.inv()), t12.c.table());
                ensure!(is_inflated(ext, &r), "{}: c_π₁c_π₂c_π₁π₂⁻¹ not inflated", case.label);
                counts[4] += 1;
            }
        }
    }
    Ok(format!(
        "(1) {} (2) {} (3) {} (4) {} (5) {} entrywise checks",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    ))
}

fn all_or_sampled_cocycles(rng: &mut impl Rng, q: &FiniteGroup, act: &Action) -> Vec<Cochain<DualCharacter>> {
    let all = z1_space(q, act).expect("z1").elements();
    if all.len() <= 6 {
        return all;
    }
    (0..6).map(|_| all[rng.gen_range(0..all.len())].clone()).collect()
}

fn criterion6(suite: &Suite) -> Verdict {
    let (mut checks, mut transitive) = (0, 0);
    for case in &suite.cases {
        let Some(cpi) = &case.built else { continue };
        let (ext, q) = (&case.ext, case.ext.quotient());
        let (a, act) = (ext.kernel(), ext.action());
        let c = cpi.c.table();
        let pi_c = extract_pi(ext, &cpi.c).map_err(|e| e.to_string())?.pi;
        let alg = alg_of(ext, c);
        let dynamics = alg.idempotent_action(ext, &pi_c).map_err(|e| e.to_string())?;
        ensure!(dynamics.charact, "{}: library reports (charact) failure", case.label);
        // oracle: ⟨χ,a⟩⁻¹·[a,ḡ]_c = ⟨g(χ)π_c(g), g(a)⟩⁻¹ for every a
        let amb = num_integer::lcm(c.ambient(), a.exponent());
        let p = |chi: &DualCharacter, x: &AbElement| RootExp::new(a.pairing_exponent(chi, x) as i64, a.exponent()).lift(amb);
        let mut orbit = vec![false; a.order()];
        for g in 0..q.order() {
            let gb = ext.lift(g);
            for chi in a.characters() {
                let target = a.char_mul(&act.dual_act(g, &chi), pi_c.at1(g));
                for (ai, x) in a.elements().iter().enumerate() {
                    let u = ext.index(ai, 0);
                    let comm = (*c.at2(gb, u) / *c.at2(ext.group().conj(gb, u), gb)).lift(amb);
                    ensure!(ext.group().conj(gb, u) == ext.index(a.index_of(&act.act(g, x)), 0), "conjugation leaves A");
                    ensure!(p(&chi, x).inv() * comm == p(&target, &act.act(g, x)).inv(), "{}: (charact) fails at g = {g}", case.label);
                }
                checks += 1;
            }
            orbit[a.char_index_of(pi_c.at1(g))] = true;
            ensure!(dynamics.perm[g][0] == Some(a.char_index_of(pi_c.at1(g))), "{}: (iot) fails at g = {g}", case.label);
        }
        if case.bijective {
            ensure!(orbit.iter().all(|&b| b), "{}: oracle orbit of ι₁ not everything", case.label);
            ensure!(dynamics.orbit_of_trivial == a.order() && dynamics.iot, "{}: not transitive", case.label);
            transitive += 1;
        }
    }
    Ok(format!("{checks} (g, χ) pairs satisfy (charact); {transitive} non-degenerate c_π act transitively with orbit map π_c"))
}

fn float_matrix_identity(g: &FiniteGroup, c: &Cochain<RootExp>) -> (f64, f64) {
    let n = g.order();
    let br = |s: usize, gm: usize| root_c64(*c.at2(gm, s) / *c.at2(g.conj(gm, s), gm));
    // ψ[σ][γ] = [γ,σ⁻¹], θ[γ][σ] = [γ,σ⁻¹]⁻¹/n
    let psi: Vec<Vec<C64>> = (0..n).map(|s| (0..n).map(|gm| br(gm, g.inv(s))).collect()).collect();
    let theta: Vec<Vec<C64>> = (0..n)
        .map(|gm| {
            (0..n)
                .map(|s| {
                    let z = br(gm, g.inv(s));
                    (z.0 / n as f64, -z.1 / n as f64)
                })
                .collect()
        })
        .collect();
    let dev = |x: &Vec<Vec<C64>>, y: &Vec<Vec<C64>>| {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let s = (0..n).fold((0.0, 0.0), |acc, k| cadd(acc, cmul(x[i][k], y[k][j])));
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max(cabs((s.0 - want, s.1)));
            }
        }
        worst
    };
    (dev(&psi, &theta), dev(&theta, &psi))
}

fn criterion7() -> Verdict {
    let mut details = Vec::new();
    for inst in [catalog::klein4(), catalog::paper64()] {
        let ext = inst.extension().map_err(|e| e.to_string())?;
        let cpi = build_c_pi(&ext, inst.pi.as_ref().unwrap(), 1).map_err(|e| e.to_string())?;
        let alg = alg_of(&ext, cpi.c.table());
        let f = alg.field();
        let (psi, theta) = (alg.psi_matrix(), alg.theta_matrix());
        ensure!(is_identity(f, &psi.compose(&theta, f)), "{:?}: ψθ ≠ 1", inst.name);
        ensure!(is_identity(f, &theta.compose(&psi, f)), "{:?}: θψ ≠ 1", inst.name);
        let (d1, d2) = float_matrix_identity(ext.group(), cpi.c.table());
        ensure!(d1 < FLOAT_TOL && d2 < FLOAT_TOL, "{:?}: floating deviation {d1:e}, {d2:e}", inst.name);
        details.push(format!("{} |G| = {} dev {:.0e}", inst.name.unwrap(), ext.order(), d1.max(d2)));
    }
    let c2 = c2();
    let one = Cochain::constant(2, 2, RootExp::one(1));
    let alg = TwistedAlgebra::new(&c2, &one, 1).unwrap();
    let f = alg.field();
    let comp = alg.psi_matrix().compose(&alg.theta_matrix(), f);
    ensure!(!is_identity(f, &comp), "control: ψθ = 1 for c ≡ 1 on C₂");
    let (d, _) = float_matrix_identity(&c2, &one);
    ensure!(d > 0.5, "control: floating deviation only {d}");
    Ok(format!("{}; control c ≡ 1 on C₂ deviates by {d:.2}", details.join(", ")))
}

/// Coefficients of `X·Y` in `ℂ[G]^{⊗3}` for sparse triples.
fn tensor3_product(g: &FiniteGroup, x: &[([usize; 3], C64)], y: &[([usize; 3], C64)]) -> Vec<C64> {
    let n = g.order();
    let mut out = vec![(0.0, 0.0); n * n * n];
    for (u, cu) in x {
        for (v, cv) in y {
            let w = [g.mul(u[0], v[0]), g.mul(u[1], v[1]), g.mul(u[2], v[2])];
            let k = (w[0] * n + w[1]) * n + w[2];
            out[k] = cadd(out[k], cmul(*cu, *cv));
        }
    }
    out
}

/// Largest coefficient of the two twist identities, from the definitions.
fn float_twist_residuals(g: &FiniteGroup, j: &[C64]) -> (f64, f64) {
    let n = g.order();
    let terms: Vec<(usize, usize, C64)> = (0..n * n).filter(|&i| cabs(j[i]) > 1e-14).map(|i| (i / n, i % n, j[i])).collect();
    let delta_id: Vec<([usize; 3], C64)> = terms.iter().map(|&(x, y, c)| ([x, x, y], c)).collect();
    let id_delta: Vec<([usize; 3], C64)> = terms.iter().map(|&(x, y, c)| ([x, y, y], c)).collect();
    let j_one: Vec<([usize; 3], C64)> = terms.iter().map(|&(x, y, c)| ([x, y, 0], c)).collect();
    let one_j: Vec<([usize; 3], C64)> = terms.iter().map(|&(x, y, c)| ([0, x, y], c)).collect();
    let diff = |l: Vec<C64>, r: Vec<C64>| l.iter().zip(&r).map(|(a, b)| cabs((a.0 - b.0, a.1 - b.1))).fold(0.0, f64::max);
    let standard = diff(tensor3_product(g, &delta_id, &j_one), tensor3_product(g, &id_delta, &one_j));
    let mirrored = diff(tensor3_product(g, &j_one, &delta_id), tensor3_product(g, &one_j, &id_delta));
    (standard, mirrored)
}

fn criterion8() -> Verdict {
    let mut details = Vec::new();
    for inst in [catalog::klein4(), catalog::paper64()] {
        let start = Instant::now();
        let name = inst.name.clone().unwrap();
        let ext = inst.extension().map_err(|e| e.to_string())?;
        let cpi = build_c_pi(&ext, inst.pi.as_ref().unwrap(), 1).map_err(|e| e.to_string())?;
        let alg = alg_of(&ext, cpi.c.table());
        let tw = build_twist(&alg).map_err(|e| e.to_string())?;
        let f: &CycField = alg.field();
        let j: &TensorElement = &tw.j;
        let report = verify_twist_axioms(ext.group(), f, j);
        ensure!(report.valid(), "{name}: {report:?}");
        let approx: Vec<C64> = j.coeffs.iter().map(|x| f.approx(x)).collect();
        let (st, mi) = float_twist_residuals(ext.group(), &approx);
        let passing = report.passing();
        for (o, r) in [(Orientation::Standard, st), (Orientation::Mirrored, mi)] {
            let exact = passing.contains(&o);
            ensure!(exact == (r < FLOAT_TOL), "{name}: {o:?} exact {exact} but floating residual {r:e}");
        }
        let n = ext.order();
        let counit = (0..n).all(|b| {
            let s = (0..n).fold((0.0, 0.0), |acc, a| cadd(acc, approx[a * n + b]));
            cabs((s.0 - if b == 0 { 1.0 } else { 0.0 }, s.1)) < FLOAT_TOL
        });
        ensure!(counit, "{name}: floating (ε⊗id)J ≠ 1");
        let inv = check_invertible(ext.group(), f, j, 1024);
        ensure!(inv.certified(), "{name}: invertibility {inv:?}");
        let secs = start.elapsed().as_secs_f64();
        ensure!(secs < 120.0, "{name}: took {secs:.1}s");
        details.push(format!("{name} passes {passing:?} (residuals {st:.0e}/{mi:.0e}), invertible, {secs:.2}s"));
    }
    Ok(details.join("; "))
}

/// `δⁿ` written out for a module given by `add`, `neg`, `act`.
fn oracle_delta<V: Clone>(
    g: &FiniteGroup,
    f: &Cochain<V>,
    add: impl Fn(&V, &V) -> V,
    neg: impl Fn(&V) -> V,
    act: impl Fn(usize, &V) -> V,
) -> Cochain<V> {
    let n = f.degree();
    Cochain::from_fn(n + 1, g.order(), |x| {
        let mut acc = act(x[0], f.get(&x[1..]));
        for i in 0..n {
            let mut args: Vec<usize> = x[..i].to_vec();
            args.push(g.mul(x[i], x[i + 1]));
            args.extend_from_slice(&x[i + 2..]);
            let v = f.get(&args);
            acc = if i % 2 == 0 { add(&acc, &neg(v)) } else { add(&acc, v) };
        }
        let last = f.get(&x[..n]);
        if n % 2 == 0 {
            add(&acc, &neg(last))
        } else {
            add(&acc, last)
        }
    })
}

fn det(rows: &[Vec<BigInt>]) -> BigInt {
    // fraction-free Bareiss
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn criterion9() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    // δ∘δ in degrees 0, 1, 2 and agreement with the oracle δ
    let inst = catalog::paper64();
    let (a, act) = (&inst.a, &inst.action);
    let mut groups = groups_of_order(4);
    groups.extend(groups_of_order(8));
    let mut dd = 0;
    for (name, g) in &groups {
        for degree in 0..=2 {
            let m = 12u64;
            let f = Cochain::from_fn(degree, g.order(), |_| RootExp::new(rng.gen_range(0..m as i64), m));
            let d1 = coboundary(g, &Roots(m), &f).unwrap();
            ensure!(d1 == oracle_delta(g, &f, |x, y| *x * *y, |x| x.inv(), |_, v| *v), "{name}: δ{degree} disagrees");
            let d2 = coboundary(g, &Roots(m), &d1).unwrap();
            ensure!(oracle_delta(g, &d1, |x, y| *x * *y, |x| x.inv(), |_, v| *v).is_trivial() && d2.is_trivial(), "{name}: δδ ≠ 1");
            dd += 1;
        }
    }
    for degree in 0..=2 {
        let f = Cochain::from_fn(degree, 8, |_| a.element_at(rng.gen_range(0..a.order())));
        let d1 = coboundary(&inst.q, &Kernel(act), &f).unwrap();
        let o1 = oracle_delta(&inst.q, &f, |x, y| a.add(x, y), |x| a.neg(x), |g, v| act.act(g, v));
        ensure!(d1 == o1, "A-valued δ{degree} disagrees");
        let o2 = oracle_delta(&inst.q, &o1, |x, y| a.add(x, y), |x| a.neg(x), |g, v| act.act(g, v));
        ensure!(o2.values().iter().all(|v| *v == a.identity()), "A-valued δδ ≠ 0");
        dd += 1;
    }

    // Smith normal form
    for trial in 0..60 {
        let (r, c) = (rng.gen_range(1..6), rng.gen_range(1..6));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-12..13)).collect()).collect();
        let m = IntMatrix::from_rows(&rows).unwrap();
        let snf = smith_normal_form(&m);
        ensure!(snf.u.mul(&m).unwrap().mul(&snf.v).unwrap() == snf.s, "trial {trial}: U·M·V ≠ S");
        ensure!(snf.s.is_diagonal(), "trial {trial}: S not diagonal");
        ensure!(det(&to_rows(&snf.u)).abs().is_one() && det(&to_rows(&snf.v)).abs().is_one(), "trial {trial}: not unimodular");
        let d = snf.diagonal();
        for w in d.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            ensure!(ok && !w[0].is_negative(), "trial {trial}: divisibility chain {d:?}");
        }
    }

    // solve_mod against enumeration of all solutions
    for trial in 0..80 {
        let m: u64 = rng.gen_range(2..10);
        let (r, c) = (rng.gen_range(1..4), rng.gen_range(1..4));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-6..7)).collect()).collect();
        let b: Vec<i64> = (0..r).map(|_| rng.gen_range(0..m as i64)).collect();
        let mut brute = std::collections::BTreeSet::new();
        for code in 0..(m as usize).pow(c as u32) {
            let x: Vec<u64> = (0..c).map(|i| ((code / (m as usize).pow(i as u32)) % m as usize) as u64).collect();
            let ok = rows
                .iter()
                .zip(&b)
                .all(|(row, &bi)| (row.iter().zip(&x).map(|(p, &q)| p * q as i64).sum::<i64>() - bi).rem_euclid(m as i64) == 0);
            if ok {
                brute.insert(x);
            }
        }
        let bb: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
        let got = solve_mod(&IntMatrix::from_rows(&rows).unwrap(), &bb, m).unwrap();
        let span = match got {
            None => std::collections::BTreeSet::new(),
            Some(sol) => {
                let mut span = std::collections::BTreeSet::from([sol.particular.clone()]);
                let mut frontier = vec![sol.particular];
                while let Some(x) = frontier.pop() {
                    for k in &sol.kernel {
                        let y: Vec<u64> = x.iter().zip(k).map(|(p, q)| (p + q) % m).collect();
                        if span.insert(y.clone()) {
                            frontier.push(y);
                        }
                    }
                }
                span
            }
        };
        ensure!(span == brute, "trial {trial}: solution sets differ for {rows:?} x = {b:?} mod {m}");
    }

    // pairing laws and (pairact) on a few groups with random actions
    let mut pairings = 0;
    for n in [4usize, 8] {
        for ab in abelian_of_order(n) {
            let e = ab.exponent();
            let p = |chi: &DualCharacter, x: &AbElement| RootExp::new(ab.pairing_exponent(chi, x) as i64, e);
            for chi in ab.characters() {
                for psi in ab.characters() {
                    for x in ab.elements() {
                        let y = ab.element_at(rng.gen_range(0..ab.order()));
                        ensure!(p(&chi, &ab.add(&x, &y)) == p(&chi, &x) * p(&chi, &y), "pairing not additive in A");
                        ensure!(p(&ab.char_mul(&chi, &psi), &x) == p(&chi, &x) * p(&psi, &x), "pairing not additive in Â");
                        pairings += 1;
                    }
                }
                let trivial = chi == ab.trivial_character();
                ensure!(trivial || ab.elements().iter().any(|x| !p(&chi, x).is_one()), "pairing degenerate");
            }
            for (qname, q) in groups_of_order(n.min(4)) {
                let actions: Vec<Action> = all_actions(&q, &ab);
                for act in actions {
                    for g in 0..q.order() {
                        for chi in ab.characters() {
                            for x in ab.elements() {
                                ensure!(p(&act.dual_act(g, &chi), &act.act(g, &x)) == p(&chi, &x), "(pairact) fails for {qname}");
                            }
                        }
                    }
                }
            }
        }
    }
    let _ = AbelianGroup::trivial();
    Ok(format!("{dd} δ∘δ checks, 60 SNF, 80 solve_mod, {pairings} pairing checks and (pairact) on all actions of order-4 groups"))
}

fn main() {
    let start = Instant::now();
    let suite = build_suite();
    let suite_secs = start.elapsed().as_secs_f64();
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        ("order-64 example end to end", Box::new(criterion1)),
        ("order-64 example has no split abelian normal subgroup", Box::new(criterion2)),
        ("round trips on the small and random suites", Box::new(|| criterion3(&suite))),
        ("non-degeneracy oracles agree", Box::new(|| criterion4(&suite))),
        ("c_π variation battery", Box::new(|| criterion5(&suite))),
        ("idempotent dynamics", Box::new(|| criterion6(&suite))),
        ("regular-module isomorphism", Box::new(criterion7)),
        ("twist axioms", Box::new(criterion8)),
        ("foundations", Box::new(criterion9)),
    ];
    println!("suite: {} cases built in {suite_secs:.2}s", suite.cases.len());
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {title} [{secs:.2}s] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {title} [{secs:.2}s] {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
