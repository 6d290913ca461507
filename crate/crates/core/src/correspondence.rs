//! The maps `π ↦ c_π` and `c ↦ π_c` between bijective 1-cocycles and
//! 2-cocycles on the extension, with the checks that they are mutually
//! inverse up to coboundaries and inflation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cochains::{
    coboundary, cohomologous_1, cup3, default_zeta_modulus, is_cocycle, one_cocycle_check, solve_root_coboundary, solve_zeta, Cochain,
    CochainError, Roots, ZetaOutcome, ZetaSolution,
};
use crate::cyclotomic::CycError;
use crate::extension::{ExtensionError, ExtensionGroup};
use crate::groups::{AbElement, DualCharacter, RootExp};
use crate::twisted_algebra::{AlgebraError, TwistedAlgebra};
use crate::zmodlin::{solve_mod_sparse, LinAlgError, SparseRow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorrespondenceError {
    #[error("π is not a 1-cocycle (fails at ({0}, {1}))")]
    NotACocycle(usize, usize),
    #[error("[β] ∪ [π] is nontrivial at every modulus tried {0:?}: π is not in K_β")]
    NotInKBeta(Vec<(u64, bool)>),
    #[error("c is not a 2-cocycle on G")]
    CNotCocycle,
    #[error("c has the wrong shape for G")]
    Shape,
    #[error("restriction of c to A is not a coboundary at moduli {0:?}: [c] is not in ker res")]
    NotInKerRes(Vec<u64>),
    #[error("no normalizing 1-cochain found at moduli {0:?}")]
    KarpUnsolvable(Vec<u64>),
    #[error("c does not satisfy c(aγ₁,γ₂) = c(γ₁,γ₂); run karp_normalize first")]
    NotKarp,
    #[error("a ↦ c(ḡ⁻¹, a) is not a character of A for g = {0}")]
    NotACharacter(usize),
    #[error("verification failed: {0}")]
    ClaimFailed(&'static str),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

type Result<T> = std::result::Result<T, CorrespondenceError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ConstructedFromPi,
    UserSupplied,
    KarpNormalized,
}

/// A 2-cocycle on `G`, tagged with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCocycleG {
    table: Cochain<RootExp>,
    karp: bool,
    provenance: Provenance,
}

impl TwoCocycleG {
    /// Validates a user-supplied table.
    pub fn user_supplied(ext: &ExtensionGroup, table: Cochain<RootExp>) -> Result<Self> {
        if table.degree() != 2 || table.base() != ext.order() {
            return Err(CorrespondenceError::Shape);
        }
        if !is_cocycle(ext.group(), &Roots(table.ambient()), &table)? {
            return Err(CorrespondenceError::CNotCocycle);
        }
        let karp = satisfies_karp(ext, &table);
        Ok(TwoCocycleG {
            table,
            karp,
            provenance: Provenance::UserSupplied,
        })
    }

    pub fn table(&self) -> &Cochain<RootExp> {
        &self.table
    }

    pub fn is_karp_normalized(&self) -> bool {
        self.karp
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
}

/// `c(aγ₁, γ₂) = c(γ₁, γ₂)` and `c(1,1) = 1`. Translating by generators of
/// `A` is enough.
pub fn satisfies_karp(ext: &ExtensionGroup, c: &Cochain<RootExp>) -> bool {
    let a = ext.kernel();
    let g = ext.group();
    let n = ext.order();
    if !c.at2(0, 0).is_one() {
        return false;
    }
    (0..a.rank()).all(|i| {
        let x = a.index_of(&a.generator(i));
        (0..n).all(|g1| {
            let xg1 = g.mul(x, g1);
            (0..n).all(|g2| c.at2(xg1, g2) == c.at2(g1, g2))
        })
    })
}

/// `φ_π(a₁ḡ₁, a₂ḡ₂) = ⟨π(g₁⁻¹), a₂⟩`, valued in `μ_{exp(A)}`.
pub fn phi_pi(ext: &ExtensionGroup, pi: &Cochain<DualCharacter>) -> Cochain<RootExp> {
    let a = ext.kernel();
    let q = ext.quotient();
    let e = a.exponent();
    let elems = a.elements();
    Cochain::from_fn(2, ext.order(), |x| {
        let (_, g1) = ext.split(x[0]);
        let (a2, _) = ext.split(x[1]);
        RootExp::new(a.pairing_exponent(pi.at1(q.inv(g1)), &elems[a2]) as i64, e)
    })
}

/// `δ²φ_π(a₁ḡ₁, a₂ḡ₂, a₃ḡ₃) = ⟨π(g₁), g₁(β(g₂,g₃))⟩⁻¹` on every triple.
pub fn check_phi_coboundary(ext: &ExtensionGroup, pi: &Cochain<DualCharacter>) -> Result<bool> {
    let phi = phi_pi(ext, pi);
    let w = cup3(ext.quotient(), ext.action(), ext.beta(), pi);
    let d = coboundary(ext.group(), &Roots(phi.ambient()), &phi)?;
    let n = ext.order();
    Ok((0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| *d.get(&[x, y, z]) == w.get(&[ext.project(x), ext.project(y), ext.project(z)]).inv())
        })
    }))
}

/// `c = φ_π · inflate(ζ)` together with the data that certifies it.
#[derive(Clone, Debug)]
pub struct CPi {
    pub c: TwoCocycleG,
    pub zeta: ZetaSolution,
    pub cup: Cochain<RootExp>,
    pub trace: Vec<(u64, bool)>,
    /// 1-cochain on `A` whose coboundary is `c|_{A×A}`.
    pub restriction_witness: Cochain<RootExp>,
}

/// Builds `c_π`, escalating the `ζ` modulus up to `escalations` times.
pub fn build_c_pi(ext: &ExtensionGroup, pi: &Cochain<DualCharacter>, escalations: usize) -> Result<CPi> {
    let q = ext.quotient();
    one_cocycle_check(q, ext.action(), pi).map_err(|(a, b)| CorrespondenceError::NotACocycle(a, b))?;
    let cup = cup3(q, ext.action(), ext.beta(), pi);
    let m = default_zeta_modulus(ext.kernel(), q);
    match solve_zeta(q, &cup, m, escalations)? {
        ZetaOutcome::Obstructed { trace } => Err(CorrespondenceError::NotInKBeta(trace)),
        ZetaOutcome::Solved { solution, trace } => {
            let c = build_c_pi_with_zeta(ext, pi, &solution.zeta)?;
            let restriction_witness =
                restriction_witness(ext, c.table())?.ok_or(CorrespondenceError::ClaimFailed("restriction of c_π is not a coboundary"))?;
            Ok(CPi {
                c,
                zeta: solution,
                cup,
                trace,
                restriction_witness,
            })
        }
    }
}

/// `φ_π · inflate(ζ)` for a caller-chosen `ζ`; checked to be a 2-cocycle.
pub fn build_c_pi_with_zeta(ext: &ExtensionGroup, pi: &Cochain<DualCharacter>, zeta: &Cochain<RootExp>) -> Result<TwoCocycleG> {
    let table = phi_pi(ext, pi).mul(&ext.inflate(zeta));
    if !is_cocycle(ext.group(), &Roots(table.ambient()), &table)? {
        return Err(CorrespondenceError::CNotCocycle);
    }
    let karp = satisfies_karp(ext, &table);
    Ok(TwoCocycleG {
        table,
        karp,
        provenance: Provenance::ConstructedFromPi,
    })
}

/// A 1-cochain `μ` on `A` with `δμ = c|_{A×A}`, searched in `μ_N` and
/// `μ_{N·|A|}`.
pub fn restriction_witness(ext: &ExtensionGroup, c: &Cochain<RootExp>) -> Result<Option<Cochain<RootExp>>> {
    let res = ext.restrict(c);
    let ag = ext.kernel().as_finite_group();
    let n = res.ambient();
    for m in [n, n * ext.kernel().order() as u64] {
        if let Some(sol) = solve_root_coboundary(&ag, &res, m)? {
            return Ok(Some(sol.solution));
        }
    }
    Ok(None)
}

/// `c·δμ` satisfying `c(aγ₁,γ₂) = c(γ₁,γ₂)`, with the `μ` used.
#[derive(Clone, Debug)]
pub struct KarpNormalized {
    pub c: TwoCocycleG,
    pub mu: Cochain<RootExp>,
}

/// Solves for `μ: G → μ_M` with `c·δμ` constant on left `A`-cosets in the
/// first argument and `μ(1) = c(1,1)⁻¹`, so the result is normalized.
pub fn karp_normalize(ext: &ExtensionGroup, c: &TwoCocycleG, escalations: usize) -> Result<KarpNormalized> {
    let table = c.table();
    let n = ext.order();
    if c.karp || satisfies_karp(ext, table) {
        return Ok(KarpNormalized {
            c: TwoCocycleG {
                table: table.clone(),
                karp: true,
                provenance: c.provenance,
            },
            mu: Cochain::constant(1, n, RootExp::one(table.ambient())),
        });
    }
    let base = table.ambient();
    if restriction_witness(ext, table)?.is_none() {
        return Err(CorrespondenceError::NotInKerRes(vec![base, base * ext.kernel().order() as u64]));
    }
    let a = ext.kernel();
    let g = ext.group();
    let gens: Vec<usize> = (0..a.rank()).map(|i| a.index_of(&a.generator(i))).collect();
    let mut tried = Vec::new();
    let mut m = base;
    for step in 0..=escalations {
        if step > 0 {
            m *= n as u64;
        }
        tried.push(m);
        let lifted = table.lift(m);
        let mut rows = Vec::with_capacity(gens.len() * n * n + 1);
        // μ(aγ₁) − μ(aγ₁γ₂) + μ(γ₁γ₂) − μ(γ₁) = c(γ₁,γ₂) − c(aγ₁,γ₂)
        for &x in &gens {
            for g1 in 0..n {
                let xg1 = g.mul(x, g1);
                for g2 in 0..n {
                    let rhs = (*lifted.at2(g1, g2) / *lifted.at2(xg1, g2)).numerator() as i64;
                    let mut row = SparseRow::new(rhs);
                    row.push(xg1, 1).push(g.mul(xg1, g2), -1).push(g.mul(g1, g2), 1).push(g1, -1);
                    rows.push(row);
                }
            }
        }
        let mut r = SparseRow::new(lifted.at2(0, 0).inv().numerator() as i64);
        r.push(0, 1);
        rows.push(r);
        let Some(sol) = solve_mod_sparse(n, &rows, m)? else {
            continue;
        };
        let mu = Cochain::from_values(1, n, sol.particular.iter().map(|&k| RootExp::new(k as i64, m)).collect()).expect("length matches");
        let dmu = coboundary(g, &Roots(m), &mu)?;
        let out = lifted.mul(&dmu);
        if !satisfies_karp(ext, &out) {
            return Err(CorrespondenceError::ClaimFailed("normalizing cochain does not produce (karp)"));
        }
        return Ok(KarpNormalized {
            c: TwoCocycleG {
                table: out,
                karp: true,
                provenance: Provenance::KarpNormalized,
            },
            mu,
        });
    }
    Err(CorrespondenceError::KarpUnsolvable(tried))
}

/// `π_c` together with the certificate that `[β] ∪ [π_c] = 0`.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub pi: Cochain<DualCharacter>,
    /// `c̃(g, g′) = c(ḡ, ḡ′)`, which satisfies `δc̃ = w_{π_c}`.
    pub c_tilde: Cochain<RootExp>,
    pub cup: Cochain<RootExp>,
}

/// `π_c(g)(a) = c(ḡ⁻¹‾, a)`. Refuses representatives without (karp).
pub fn extract_pi(ext: &ExtensionGroup, c: &TwoCocycleG) -> Result<Extraction> {
    if !c.karp || !satisfies_karp(ext, c.table()) {
        return Err(CorrespondenceError::NotKarp);
    }
    let table = c.table();
    let m = table.ambient();
    let a = ext.kernel();
    let q = ext.quotient();
    let e = a.exponent();
    let elems = a.elements();
    let mut values = Vec::with_capacity(q.order());
    for g in 0..q.order() {
        let lift = ext.lift(q.inv(g));
        let mut exps = Vec::with_capacity(a.rank());
        for (i, &d) in a.factors().iter().enumerate() {
            let v = table.at2(lift, a.index_of(&a.generator(i)));
            let k = v.numerator() * d;
            if k % m != 0 {
                return Err(CorrespondenceError::NotACharacter(g));
            }
            exps.push((k / m) as i64);
        }
        let chi = a.character(&exps).expect("rank matches");
        for (ai, x) in elems.iter().enumerate() {
            let expect = RootExp::new(a.pairing_exponent(&chi, x) as i64, e).lift(m);
            if *table.at2(lift, ai) != expect {
                return Err(CorrespondenceError::NotACharacter(g));
            }
        }
        values.push(chi);
    }
    let pi = Cochain::from_values(1, q.order(), values).expect("length matches");
    if one_cocycle_check(q, ext.action(), &pi).is_err() {
        return Err(CorrespondenceError::ClaimFailed("π_c is not a 1-cocycle"));
    }
    let c_tilde = Cochain::from_fn(2, q.order(), |x| *table.at2(ext.lift(x[0]), ext.lift(x[1])));
    let cup = cup3(q, ext.action(), ext.beta(), &pi);
    if coboundary(q, &Roots(m), &c_tilde)? != cup.lift(m) {
        return Err(CorrespondenceError::ClaimFailed("δc̃ ≠ ⟨π_c(g₁), g₁β(g₂,g₃)⟩"));
    }
    Ok(Extraction { pi, c_tilde, cup })
}

/// `φ_{π_c}(γ₁,γ₂) = c(γ₁,γ₂)·c(ḡ₁,ḡ₂)⁻¹` entrywise.
pub fn check_deltaeq(ext: &ExtensionGroup, c: &Cochain<RootExp>, pi_c: &Cochain<DualCharacter>) -> bool {
    let phi = phi_pi(ext, pi_c);
    let m = num_integer::lcm(phi.ambient(), c.ambient());
    let n = ext.order();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let ratio = c.at2(x, y).lift(m) / c.at2(ext.lift(ext.project(x)), ext.lift(ext.project(y))).lift(m);
            phi.at2(x, y).lift(m) == ratio
        })
    })
}

/// If `f` on `G` depends only on the images in `Q`, its table on `Q`.
pub fn descend_to_quotient(ext: &ExtensionGroup, f: &Cochain<RootExp>) -> Option<Cochain<RootExp>> {
    let n = ext.order();
    let inflated = (0..n).all(|x| (0..n).all(|y| f.at2(x, y) == f.at2(ext.lift(ext.project(x)), ext.lift(ext.project(y)))));
    inflated.then(|| Cochain::from_fn(2, ext.quotient().order(), |g| *f.at2(ext.lift(g[0]), ext.lift(g[1]))))
}

/// Outcome of `π ↦ c_π ↦ π_{c_π}`.
#[derive(Clone, Debug)]
pub struct RoundTripFromPi {
    pub construction: CPi,
    pub extracted: Cochain<DualCharacter>,
    pub exact: bool,
    /// `χ` with `π_{c_π}·π⁻¹ = δ⁰χ`.
    pub b1_witness: Option<DualCharacter>,
}

impl RoundTripFromPi {
    pub fn classes_agree(&self) -> bool {
        self.b1_witness.is_some()
    }
}

pub fn roundtrip_c_then_pi(ext: &ExtensionGroup, pi: &Cochain<DualCharacter>, escalations: usize) -> Result<RoundTripFromPi> {
    let construction = build_c_pi(ext, pi, escalations)?;
    let extracted = extract_pi(ext, &construction.c)?.pi;
    let b1_witness = cohomologous_1(ext.quotient(), ext.action(), &extracted, pi)?;
    Ok(RoundTripFromPi {
        exact: extracted == *pi,
        construction,
        extracted,
        b1_witness,
    })
}

/// Outcome of `c ↦ π_c ↦ c_{π_c}`.
#[derive(Clone, Debug)]
pub struct RoundTripFromC {
    pub extraction: Extraction,
    pub rebuilt: CPi,
    /// `c·c_{π_c}⁻¹` as a table on `Q`, if it is inflated.
    pub quotient: Option<Cochain<RootExp>>,
    pub quotient_is_cocycle: bool,
    pub deltaeq: bool,
}

impl RoundTripFromC {
    pub fn differs_by_inflation(&self) -> bool {
        self.quotient.is_some() && self.quotient_is_cocycle
    }
}

pub fn roundtrip_pi_then_c(ext: &ExtensionGroup, c: &TwoCocycleG, escalations: usize) -> Result<RoundTripFromC> {
    let extraction = extract_pi(ext, c)?;
    let rebuilt = build_c_pi(ext, &extraction.pi, escalations)?;
    let ratio = c.table().mul(&rebuilt.c.table().inv());
    let quotient = descend_to_quotient(ext, &ratio);
    let quotient_is_cocycle = match &quotient {
        Some(f) => is_cocycle(ext.quotient(), &Roots(f.ambient()), f)?,
        None => false,
    };
    Ok(RoundTripFromC {
        deltaeq: check_deltaeq(ext, c.table(), &extraction.pi),
        extraction,
        rebuilt,
        quotient,
        quotient_is_cocycle,
    })
}

/// `Σ_γ [γ,τ]_c = 0` for every `τ ≠ 1`; sufficient for non-degeneracy.
pub fn nondeg_sum_test(alg: &TwistedAlgebra) -> bool {
    alg.commutator_sums().iter().skip(1).all(|s| s.is_zero())
}

/// For `c = c_π` built from `(π, ζ)`, compares each `Σ_γ [γ, aḡ]_c` with
/// the factored form `(Σ_{a′} ⟨π(g⁻¹),a′⟩)·(Σ_{g′} ζ(g,g′)⟨π(gg′⁻¹g⁻¹),a⟩⁻¹ζ(gg′g⁻¹,g)⁻¹)`.
pub fn factored_sum_check(ext: &ExtensionGroup, alg: &TwistedAlgebra, pi: &Cochain<DualCharacter>, zeta: &Cochain<RootExp>) -> Result<bool> {
    let f = alg.field();
    let a = ext.kernel();
    let q = ext.quotient();
    let e = a.exponent();
    let order = f.order() as usize;
    let direct = alg.commutator_sums();
    let elems = a.elements();
    for (tau, sum) in direct.iter().enumerate() {
        let (ai, g) = ext.split(tau);
        let mut c1 = vec![0i64; order];
        for x in &elems {
            let k = f.root_index(RootExp::new(a.pairing_exponent(pi.at1(q.inv(g)), x) as i64, e))?;
            c1[k as usize] += 1;
        }
        let mut c2 = vec![0i64; order];
        for g2 in 0..q.order() {
            let chi = pi.at1(q.conj(g, q.inv(g2)));
            let pair = RootExp::new(a.pairing_exponent(chi, &elems[ai]) as i64, e);
            let z1 = f.root_index(*zeta.at2(g, g2))?;
            let z2 = f.root_index(*zeta.at2(q.conj(g, g2), g))?;
            let p = f.root_index(pair)?;
            let k = (z1 + 2 * order as u64 - p - z2) % order as u64;
            c2[k as usize] += 1;
        }
        let factored = f.mul(&f.from_root_counts(&c1), &f.from_root_counts(&c2));
        if factored != *sum {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterReport {
    pub dimension: usize,
    pub regular_classes: usize,
}

impl CenterReport {
    pub fn agree(&self) -> bool {
        self.dimension == self.regular_classes
    }

    pub fn nondegenerate(&self) -> bool {
        self.dimension == 1
    }
}

/// Center dimension by null space, cross-checked by counting c-regular
/// classes.
pub fn nondeg_center_oracle(alg: &TwistedAlgebra) -> CenterReport {
    CenterReport {
        dimension: alg.center_dimension(),
        regular_classes: alg.regular_class_count(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurjectivityReport {
    pub image_size: usize,
    pub surjective: bool,
    pub bijective: bool,
    /// `ḡ(ι₁) = ι_{π_c(g)}` for all `g`.
    pub iot: bool,
    /// `ḡ(ι_χ) = ι_{g(χ)π_c(g)}` for all `g, χ`.
    pub charact: bool,
    pub orbit_of_trivial: usize,
    pub transitive: bool,
}

/// Enumerates the image of `π_c` and compares it with the orbit of `ι₁`
/// under conjugation.
pub fn surjectivity_of_pi_c(ext: &ExtensionGroup, alg: &TwistedAlgebra, pi_c: &Cochain<DualCharacter>) -> Result<SurjectivityReport> {
    let a = ext.kernel();
    let mut hit = vec![false; a.order()];
    for chi in pi_c.values() {
        hit[a.char_index_of(chi)] = true;
    }
    let image_size = hit.iter().filter(|&&h| h).count();
    let dyn_report = alg.idempotent_action(ext, pi_c)?;
    Ok(SurjectivityReport {
        image_size,
        surjective: image_size == a.order(),
        bijective: image_size == a.order() && pi_c.base() == a.order(),
        iot: dyn_report.iot,
        charact: dyn_report.charact,
        orbit_of_trivial: dyn_report.orbit_of_trivial,
        transitive: dyn_report.orbit_of_trivial == a.order(),
    })
}

/// `G′` built from the transversal `g ↦ λ(g)ḡ`, i.e. from
/// `β′(g₁,g₂) = λ(g₁) + g₁λ(g₂) + β(g₁,g₂) − λ(g₁g₂)`, together with the
/// isomorphism `G′ → G`, `(a, g) ↦ (a + λ(g), g)`, as an index table.
pub fn change_transversal(ext: &ExtensionGroup, lambda: &Cochain<AbElement>) -> Result<(ExtensionGroup, Vec<usize>)> {
    let a = ext.kernel();
    let q = ext.quotient();
    let act = ext.action();
    let beta = ext.beta();
    let b2 = Cochain::from_fn(2, q.order(), |x| {
        let (g1, g2) = (x[0], x[1]);
        let s = a.add(&a.add(lambda.at1(g1), &act.act(g1, lambda.at1(g2))), beta.at2(g1, g2));
        a.sub(&s, lambda.at1(q.mul(g1, g2)))
    });
    let other = ExtensionGroup::build(q, act, &b2)?;
    let map = (0..other.order())
        .map(|x| {
            let (ai, g) = other.split(x);
            ext.index(a.index_of(&a.add(&a.element_at(ai), lambda.at1(g))), g)
        })
        .collect::<Vec<_>>();
    let (g1, g2) = (other.group(), ext.group());
    for x in 0..other.order() {
        for y in 0..other.order() {
            if map[g1.mul(x, y)] != g2.mul(map[x], map[y]) {
                return Err(CorrespondenceError::ClaimFailed("transversal change is not an isomorphism"));
            }
        }
    }
    Ok((other, map))
}
