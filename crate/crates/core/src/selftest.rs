//! A fixed-seed battery over the whole library, for `central-type selftest`.

use std::collections::HashSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog;
use crate::certificate::{certify, reverify, CertifyOptions};
use crate::cochains::{coboundary, Cochain, Kernel, Roots};
use crate::groups::{AbelianGroup, Action, FiniteGroup, RootExp};
use crate::zmodlin::{smith_normal_form, solve_mod, IntMatrix};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
    let c2 = FiniteGroup::cyclic(2);
    vec![
        ("C1", FiniteGroup::trivial()),
        ("C2", c2.clone()),
        ("C3", FiniteGroup::cyclic(3)),
        ("C4", FiniteGroup::cyclic(4)),
        ("C2xC2", FiniteGroup::direct_product(&c2, &c2)),
        ("S3", FiniteGroup::dihedral(3)),
        ("C8", FiniteGroup::cyclic(8)),
        ("D4", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::quaternion8()),
        ("C2xC4", FiniteGroup::direct_product(&c2, &FiniteGroup::cyclic(4))),
    ]
}

pub fn run(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    out.push(delta_squared(&mut rng));
    out.push(snf_reconstruction(&mut rng));
    out.push(solve_mod_oracle(&mut rng));
    out.push(pairing_laws(&mut rng));
    for name in catalog::NAMES {
        let inst = catalog::by_name(name).expect("catalog name");
        let opts = CertifyOptions {
            twist: true,
            ..Default::default()
        };
        let res = certify(&inst, &opts).and_then(|cert| reverify(&cert).map(|bad| (cert.verdicts.central_type, bad)));
        out.push(match res {
            Ok((ok, bad)) => check(&format!("catalog {name}"), ok && bad.is_empty(), format!("central type {ok}, mismatches {bad:?}")),
            Err(e) => check(&format!("catalog {name}"), false, e.to_string()),
        });
    }
    out
}

fn delta_squared(rng: &mut ChaCha8Rng) -> Check {
    let mut count = 0;
    for (name, g) in small_groups() {
        let n = g.order();
        for degree in 0..=1 {
            let m = 12;
            let f = Cochain::from_fn(degree, n, |_| RootExp::new(rng.gen_range(0..m as i64), m));
            let d1 = coboundary(&g, &Roots(m), &f).expect("supported degree");
            let d2 = coboundary(&g, &Roots(m), &d1).expect("supported degree");
            if !d2.is_trivial() {
                return check("δ∘δ = 1", false, format!("{name}, degree {degree}"));
            }
            count += 1;
        }
        // A-valued cochains
        let a = AbelianGroup::cyclic(3);
        let act = Action::trivial(&g, a.clone());
        let f = Cochain::from_fn(1, n, |_| a.element(&[rng.gen_range(0..3)]).unwrap());
        let d1 = coboundary(&g, &Kernel(&act), &f).expect("degree 1");
        let d2 = coboundary(&g, &Kernel(&act), &d1).expect("degree 2");
        if d2.values().iter().any(|x| *x != a.identity()) {
            return check("δ∘δ = 1", false, format!("{name}, A-valued"));
        }
        count += 1;
    }
    check("δ∘δ = 1", true, format!("{count} random cochains"))
}

fn snf_reconstruction(rng: &mut ChaCha8Rng) -> Check {
    for trial in 0..40 {
        let (r, c) = (rng.gen_range(1..5), rng.gen_range(1..5));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..10)).collect()).collect();
        let m = IntMatrix::from_rows(&rows).expect("rectangular");
        let snf = smith_normal_form(&m);
        let back = snf.u.mul(&m).and_then(|x| x.mul(&snf.v)).expect("shapes");
        let diag = snf.diagonal();
        let chain = diag.windows(2).all(|w| w[0].is_zero_or_divides(&w[1]));
        if back != snf.s || !snf.s.is_diagonal() || !chain {
            return check("Smith normal form", false, format!("trial {trial}: {rows:?}"));
        }
    }
    check("Smith normal form", true, "40 random matrices, U·M·V = S with divisibility chain")
}

trait DividesExt {
    fn is_zero_or_divides(&self, other: &BigInt) -> bool;
}

impl DividesExt for BigInt {
    fn is_zero_or_divides(&self, other: &BigInt) -> bool {
        use num_traits::Zero;
        if self.is_zero() {
            other.is_zero()
        } else {
            (other % self).is_zero()
        }
    }
}

fn solve_mod_oracle(rng: &mut ChaCha8Rng) -> Check {
    for trial in 0..60 {
        let m: u64 = rng.gen_range(2..9);
        let (r, c) = (rng.gen_range(1..4), rng.gen_range(1..4));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-5..6)).collect()).collect();
        let b: Vec<i64> = (0..r).map(|_| rng.gen_range(0..m as i64)).collect();
        let brute = enumerate_solutions(&rows, &b, m);
        let a = IntMatrix::from_rows(&rows).expect("rectangular");
        let bb: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
        let got = solve_mod(&a, &bb, m).expect("valid modulus");
        let ok = match got {
            None => brute.is_empty(),
            Some(sol) => {
                let mut span: HashSet<Vec<u64>> = HashSet::from([sol.particular.clone()]);
                let mut frontier = vec![sol.particular.clone()];
                while let Some(x) = frontier.pop() {
                    for k in &sol.kernel {
                        let y: Vec<u64> = x.iter().zip(k).map(|(a, b)| (a + b) % m).collect();
                        if span.insert(y.clone()) {
                            frontier.push(y);
                        }
                    }
                }
                span == brute
            }
        };
        if !ok {
            return check("solve_mod vs enumeration", false, format!("trial {trial}: {rows:?} x = {b:?} mod {m}"));
        }
    }
    check("solve_mod vs enumeration", true, "60 random systems, full solution sets agree")
}

fn enumerate_solutions(rows: &[Vec<i64>], b: &[i64], m: u64) -> HashSet<Vec<u64>> {
    let c = rows[0].len();
    let total = (m as usize).pow(c as u32);
    (0..total)
        .map(|mut idx| {
            (0..c)
                .map(|_| {
                    let v = (idx % m as usize) as u64;
                    idx /= m as usize;
                    v
                })
                .collect::<Vec<u64>>()
        })
        .filter(|x| {
            rows.iter()
                .zip(b)
                .all(|(row, &bi)| (row.iter().zip(x).map(|(a, &v)| a * v as i64).sum::<i64>() - bi).rem_euclid(m as i64) == 0)
        })
        .collect()
}

fn pairing_laws(rng: &mut ChaCha8Rng) -> Check {
    let inst = catalog::paper64();
    let (a, q, act) = (&inst.a, &inst.q, &inst.action);
    let e = a.exponent();
    for _ in 0..200 {
        let chi = a.character_at(rng.gen_range(0..a.order()));
        let psi = a.character_at(rng.gen_range(0..a.order()));
        let x = a.element_at(rng.gen_range(0..a.order()));
        let y = a.element_at(rng.gen_range(0..a.order()));
        let g = rng.gen_range(0..q.order());
        let p = |c: &crate::groups::DualCharacter, v: &crate::groups::AbElement| RootExp::new(a.pairing_exponent(c, v) as i64, e);
        let bilinear = p(&chi, &a.add(&x, &y)) == p(&chi, &x) * p(&chi, &y) && p(&a.char_mul(&chi, &psi), &x) == p(&chi, &x) * p(&psi, &x);
        let invariant = p(&act.dual_act(g, &chi), &act.act(g, &x)) == p(&chi, &x);
        if !bilinear || !invariant {
            return check("pairing laws", false, format!("χ = {chi:?}, a = {x:?}, g = {g}"));
        }
    }
    let nondeg = a.characters().iter().skip(1).all(|chi| a.elements().iter().any(|x| a.pairing_exponent(chi, x) != 0));
    check("pairing laws", nondeg, "bilinear, Q-invariant, non-degenerate on C₄ × C₂")
}
