//! The certification pipeline, its JSON certificate, and offline
//! re-verification of a certificate's witness tables.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cochains::{
    coboundary, coboundary0, cohomologous_1, cup3, default_zeta_modulus, is_bijective, is_cocycle, one_cocycle_check, solve_zeta, Cochain,
    Dual, Roots, ZetaOutcome,
};
use crate::correspondence::{
    build_c_pi_with_zeta, check_deltaeq, descend_to_quotient, extract_pi, nondeg_center_oracle, nondeg_sum_test, phi_pi, restriction_witness,
    surjectivity_of_pi_c, CorrespondenceError, Provenance, SurjectivityReport,
};
use crate::cyclotomic::{CycField, CycNumber};
use crate::extension::{abelian_normal_subgroups, find_complement, ExtensionGroup};
use crate::groups::{DualCharacter, RootExp};
use crate::instance::{root_from_pair, root_pair, Instance, InstanceError, InstanceFile};
use crate::twisted_algebra::{is_identity, TwistedAlgebra};
use crate::twists::{build_twist, check_invertible, phi_equivariant, verify_twist_axioms, Invertibility, Orientation, TensorElement};

pub const CERTIFICATE_VERSION: u32 = 1;

/// Pipeline failures, each with a stable exit code.
#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("instance: {0}")]
    Instance(#[from] InstanceError),
    #[error("extension: {0}")]
    Extension(String),
    #[error("the instance has no π")]
    MissingPi,
    #[error("π is not a 1-cocycle: fails at ({0}, {1})")]
    NotACocycle(usize, usize),
    #[error("bijectivity required: {0}")]
    NotBijective(String),
    #[error("[β] ∪ [π] is nontrivial at every modulus tried: {0:?}")]
    CupNontrivial(Vec<(u64, bool)>),
    #[error("construction of c_π failed: {0}")]
    Construction(String),
    #[error("c_π is degenerate: center dimension {0}")]
    Degenerate(usize),
    #[error("round trip failed: {0}")]
    RoundTrip(String),
    #[error("twist check failed: {0}")]
    Twist(String),
    #[error("certificate does not re-verify: {0:?}")]
    Mismatch(Vec<String>),
    #[error("the instance has no c")]
    MissingC,
    #[error("normalization or extraction failed: {0}")]
    Extraction(String),
    #[error("certificate: {0}")]
    Format(String),
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Instance(_) | PipelineError::Format(_) => 10,
            PipelineError::Extension(_) => 11,
            PipelineError::MissingPi | PipelineError::MissingC => 12,
            PipelineError::NotACocycle(..) => 13,
            PipelineError::NotBijective(_) => 14,
            PipelineError::CupNontrivial(_) => 15,
            PipelineError::Construction(_) => 16,
            PipelineError::Degenerate(_) => 17,
            PipelineError::RoundTrip(_) => 18,
            PipelineError::Twist(_) => 19,
            PipelineError::Mismatch(_) => 20,
            PipelineError::Extraction(_) => 21,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub twist: bool,
    pub probe_complements: bool,
    pub escalations: usize,
    pub require_bijective: bool,
    pub timings: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            twist: false,
            probe_complements: false,
            escalations: 1,
            require_bijective: false,
            timings: false,
        }
    }
}

/// A cochain of roots of unity, flattened row-major, entries as `[k, N]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootTable {
    pub degree: usize,
    pub base: usize,
    pub values: Vec<(i64, u64)>,
}

impl RootTable {
    pub fn from_cochain(c: &Cochain<RootExp>) -> Self {
        RootTable {
            degree: c.degree(),
            base: c.base(),
            values: c.values().iter().map(|&r| root_pair(r)).collect(),
        }
    }

    pub fn to_cochain(&self) -> Result<Cochain<RootExp>, PipelineError> {
        let raw = self.values.iter().map(|&p| root_from_pair(p)).collect::<Result<Vec<_>, _>>()?;
        let m = raw.iter().fold(1, |m, r| num_integer::lcm(m, r.ambient()));
        Cochain::from_values(self.degree, self.base, raw.into_iter().map(|r| r.lift(m)).collect())
            .map_err(|e| PipelineError::Format(e.to_string()))
    }
}

/// A tensor over `ℚ(ζ_N)`, each entry a vector of rational coefficients in
/// the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycTable {
    pub field_order: u64,
    pub size: usize,
    pub entries: Vec<Vec<String>>,
}

impl CycTable {
    pub fn from_tensor(f: &CycField, j: &TensorElement) -> Self {
        CycTable {
            field_order: f.order(),
            size: j.n,
            entries: j.coeffs.iter().map(|x| x.coefficients().iter().map(|c| c.to_string()).collect()).collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<(CycField, TensorElement), PipelineError> {
        let f = CycField::new(self.field_order);
        if self.entries.len() != self.size * self.size {
            return Err(PipelineError::Format("twist table has the wrong size".into()));
        }
        let coeffs = self
            .entries
            .iter()
            .map(|e| {
                let rs = e
                    .iter()
                    .map(|s| BigRational::from_str(s).map_err(|_| PipelineError::Format(format!("bad rational {s}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                f.from_coefficients(&rs).map_err(|e| PipelineError::Format(e.to_string()))
            })
            .collect::<Result<Vec<CycNumber>, _>>()?;
        Ok((f, TensorElement { n: self.size, coeffs }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistVerdict {
    pub orbit_rank: usize,
    pub phi_equivariant: bool,
    pub passing_orientations: Vec<Orientation>,
    pub first_violation_standard: Option<(usize, usize, usize)>,
    pub first_violation_mirrored: Option<(usize, usize, usize)>,
    pub counit: bool,
    pub invertibility: Invertibility,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementProbe {
    pub order: usize,
    pub abelian_normal_subgroups: usize,
    pub with_complement: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub pi_is_cocycle: bool,
    pub pi_is_bijective: bool,
    pub cup_trivial: bool,
    pub c_is_cocycle: bool,
    pub c_is_karp_normalized: bool,
    pub restriction_is_coboundary: bool,
    pub nondeg_sum_test: bool,
    pub center_dimension: usize,
    pub regular_classes: usize,
    pub regular_module: bool,
    pub roundtrip_pi_exact: bool,
    pub roundtrip_pi_class: bool,
    pub roundtrip_c_inflated: bool,
    pub deltaeq: bool,
    pub surjectivity: Option<SurjectivityReport>,
    pub twist: Option<TwistVerdict>,
    pub complements: Option<ComplementProbe>,
    pub central_type: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tables {
    pub pi: Vec<Vec<u64>>,
    pub cup: RootTable,
    pub zeta: RootTable,
    pub c_pi: RootTable,
    /// `μ` on `A` with `δμ = c_π|_{A×A}`.
    pub restriction_witness: RootTable,
    /// `χ` with `π_{c_π}·π⁻¹ = δ⁰χ`.
    pub b1_witness: Option<Vec<u64>>,
    /// `c_π·c_{π_{c_π}}⁻¹` descended to `Q`.
    pub inflated_ratio: Option<RootTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<CycTable>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Moduli {
    pub zeta_trace: Vec<(u64, bool)>,
    pub zeta_modulus: u64,
    pub c_ambient: u64,
    pub field_order: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub instance: InstanceFile,
    pub verdicts: Verdicts,
    pub tables: Tables,
    pub provenance: BTreeMap<String, String>,
    pub moduli: Moduli,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, PipelineError> {
        let cert: Certificate = serde_json::from_str(text).map_err(|e| PipelineError::Format(e.to_string()))?;
        if cert.schema_version != CERTIFICATE_VERSION {
            return Err(PipelineError::Format(format!("unsupported certificate version {}", cert.schema_version)));
        }
        Ok(cert)
    }
}

struct Clock {
    start: Instant,
    marks: BTreeMap<String, f64>,
}

impl Clock {
    fn new() -> Self {
        Clock {
            start: Instant::now(),
            marks: BTreeMap::new(),
        }
    }

    fn mark(&mut self, stage: &str) {
        let ms = self.start.elapsed().as_secs_f64() * 1e3;
        self.marks.insert(stage.to_string(), (ms * 1e3).round() / 1e3);
        self.start = Instant::now();
    }
}

fn ext_err(e: impl std::fmt::Display) -> PipelineError {
    PipelineError::Extension(e.to_string())
}

fn construction(e: CorrespondenceError) -> PipelineError {
    PipelineError::Construction(e.to_string())
}

/// Runs the full pipeline. A degenerate `c_π` is reported in the returned
/// certificate with `central_type = false`; hard failures are errors.
pub fn certify(inst: &Instance, opts: &CertifyOptions) -> Result<Certificate, PipelineError> {
    let mut clock = Clock::new();
    let ext = inst.extension().map_err(ext_err)?;
    clock.mark("extension");
    let pi = inst.pi.as_ref().ok_or(PipelineError::MissingPi)?;
    let q = ext.quotient();
    let a = ext.kernel();
    one_cocycle_check(q, ext.action(), pi).map_err(|(x, y)| PipelineError::NotACocycle(x, y))?;
    let bijective = is_bijective(a, pi);
    if opts.require_bijective {
        if a.order() != q.order() {
            return Err(PipelineError::NotBijective(format!("|A| = {} but |Q| = {}", a.order(), q.order())));
        }
        if !bijective {
            return Err(PipelineError::NotBijective("π is not a bijection Q → Â".into()));
        }
    }
    let cup = cup3(q, ext.action(), ext.beta(), pi);
    let m = default_zeta_modulus(a, q);
    let outcome = solve_zeta(q, &cup, m, opts.escalations).map_err(|e| PipelineError::Construction(e.to_string()))?;
    clock.mark("solve_zeta");
    let (zeta, trace) = match outcome {
        ZetaOutcome::Solved { solution, trace } => (solution, trace),
        ZetaOutcome::Obstructed { trace } => return Err(PipelineError::CupNontrivial(trace)),
    };
    let c = build_c_pi_with_zeta(&ext, pi, &zeta.zeta).map_err(construction)?;
    let witness = restriction_witness(&ext, c.table())
        .map_err(construction)?
        .ok_or_else(|| PipelineError::Construction("restriction of c_π is not a coboundary".into()))?;
    clock.mark("build_c_pi");
    let alg = TwistedAlgebra::new(ext.group(), c.table(), a.exponent()).map_err(|e| PipelineError::Construction(e.to_string()))?;
    let f = alg.field();
    let sum = nondeg_sum_test(&alg);
    let center = nondeg_center_oracle(&alg);
    let regular_module = is_identity(f, &alg.psi_matrix().compose(&alg.theta_matrix(), f))
        && is_identity(f, &alg.theta_matrix().compose(&alg.psi_matrix(), f));
    clock.mark("nondegeneracy");
    let extracted = extract_pi(&ext, &c).map_err(|e| PipelineError::RoundTrip(e.to_string()))?;
    let b1 = cohomologous_1(q, ext.action(), &extracted.pi, pi).map_err(|e| PipelineError::RoundTrip(e.to_string()))?;
    // c_{π_c} with the same ζ-normalization; for c = c_π this recovers c
    let rebuilt = build_c_pi_with_zeta(&ext, &extracted.pi, &zeta.zeta).map_err(|e| PipelineError::RoundTrip(e.to_string()))?;
    let ratio = c.table().mul(&rebuilt.table().inv());
    let descended = descend_to_quotient(&ext, &ratio);
    let inflated = match &descended {
        Some(d) => is_cocycle(q, &Roots(d.ambient()), d).map_err(|e| PipelineError::RoundTrip(e.to_string()))?,
        None => false,
    };
    let deltaeq = check_deltaeq(&ext, c.table(), &extracted.pi);
    clock.mark("round_trips");
    let nondegenerate = center.nondegenerate();
    let surjectivity = if nondegenerate {
        Some(surjectivity_of_pi_c(&ext, &alg, &extracted.pi).map_err(|e| PipelineError::RoundTrip(e.to_string()))?)
    } else {
        None
    };
    let (twist, twist_table) = if opts.twist && nondegenerate {
        let tw = build_twist(&alg).map_err(|e| PipelineError::Twist(e.to_string()))?;
        let rep = verify_twist_axioms(ext.group(), f, &tw.j);
        let inv = check_invertible(ext.group(), f, &tw.j, 1024);
        let verdict = TwistVerdict {
            orbit_rank: tw.regular.orbit_rank,
            phi_equivariant: phi_equivariant(&alg, &tw),
            passing_orientations: rep.passing(),
            first_violation_standard: rep.standard,
            first_violation_mirrored: rep.mirrored,
            counit: rep.counit_left && rep.counit_right,
            invertibility: inv,
        };
        clock.mark("twist");
        (Some(verdict), Some(CycTable::from_tensor(f, &tw.j)))
    } else {
        (None, None)
    };
    let complements = if opts.probe_complements {
        let k = ext.order() / a.order().max(1);
        let k = if ext.order() == k * k { k } else { a.order() };
        let subs = abelian_normal_subgroups(ext.group(), k);
        let mut with = 0;
        for s in &subs {
            if find_complement(ext.group(), s).map_err(ext_err)?.is_some() {
                with += 1;
            }
        }
        clock.mark("complements");
        Some(ComplementProbe {
            order: k,
            abelian_normal_subgroups: subs.len(),
            with_complement: with,
        })
    } else {
        None
    };
    let roundtrip_pi_exact = extracted.pi == *pi;
    let verdicts = Verdicts {
        pi_is_cocycle: true,
        pi_is_bijective: bijective,
        cup_trivial: true,
        c_is_cocycle: true,
        c_is_karp_normalized: c.is_karp_normalized(),
        restriction_is_coboundary: true,
        nondeg_sum_test: sum,
        center_dimension: center.dimension,
        regular_classes: center.regular_classes,
        regular_module,
        roundtrip_pi_exact,
        roundtrip_pi_class: b1.is_some(),
        roundtrip_c_inflated: inflated,
        deltaeq,
        central_type: nondegenerate && center.agree(),
        surjectivity,
        twist,
        complements,
    };
    let mut provenance = BTreeMap::new();
    provenance.insert("pi".into(), "instance".into());
    provenance.insert("beta".into(), if inst.beta.values().iter().all(|b| *b == a.identity()) { "instance (trivial)" } else { "instance" }.into());
    provenance.insert("cup".into(), "computed: ⟨π(g₁), g₁β(g₂,g₃)⟩".into());
    provenance.insert("zeta".into(), format!("solved in μ_{} and normalized", zeta.modulus));
    provenance.insert("c_pi".into(), format!("{:?}", Provenance::ConstructedFromPi));
    provenance.insert("restriction_witness".into(), "solved 1-cochain on A".into());
    provenance.insert("b1_witness".into(), "solved in Â".into());
    if twist_table.is_some() {
        provenance.insert("twist".into(), "(φ⁻¹⊗φ⁻¹)Δ′(φ(1))".into());
    }
    let cert = Certificate {
        schema_version: CERTIFICATE_VERSION,
        instance: inst.to_file(),
        tables: Tables {
            pi: pi.values().iter().map(|x| x.exponents().to_vec()).collect(),
            cup: RootTable::from_cochain(&cup),
            zeta: RootTable::from_cochain(&zeta.zeta),
            c_pi: RootTable::from_cochain(c.table()),
            restriction_witness: RootTable::from_cochain(&witness),
            b1_witness: b1.map(|x| x.exponents().to_vec()),
            inflated_ratio: descended.as_ref().map(RootTable::from_cochain),
            twist: twist_table,
        },
        provenance,
        moduli: Moduli {
            zeta_trace: trace,
            zeta_modulus: zeta.modulus,
            c_ambient: c.table().ambient(),
            field_order: f.order(),
        },
        verdicts,
        timings_ms: opts.timings.then_some(clock.marks),
    };
    Ok(cert)
}

/// The exit status for a finished certificate.
pub fn verdict_error(cert: &Certificate) -> Option<PipelineError> {
    let v = &cert.verdicts;
    if !v.roundtrip_pi_class || !v.roundtrip_c_inflated || !v.deltaeq {
        return Some(PipelineError::RoundTrip("a round-trip verdict is false".into()));
    }
    if !v.central_type {
        return Some(PipelineError::Degenerate(v.center_dimension));
    }
    if let Some(t) = &v.twist {
        if t.passing_orientations.is_empty() || !t.counit || !t.invertibility.certified() {
            return Some(PipelineError::Twist("J fails the twist identity, the counit law, or the unit test".into()));
        }
    }
    None
}

/// Checks every witness in `cert` against its claim and recomputes the
/// verdicts; returns the list of disagreements.
pub fn reverify(cert: &Certificate) -> Result<Vec<String>, PipelineError> {
    let inst = cert.instance.validate()?;
    let ext = inst.extension().map_err(ext_err)?;
    let q = ext.quotient();
    let a = ext.kernel();
    let g = ext.group();
    let t = &cert.tables;
    let v = &cert.verdicts;
    let mut bad = Vec::new();
    let mut expect = |name: &str, ok: bool| {
        if !ok {
            bad.push(name.to_string());
        }
    };
    let pi_vals = t.pi.iter().map(|e| a.character(&e.iter().map(|&x| x as i64).collect::<Vec<_>>())).collect::<Result<Vec<_>, _>>();
    let pi = pi_vals
        .ok()
        .and_then(|vals| Cochain::from_values(1, q.order(), vals).ok())
        .ok_or_else(|| PipelineError::Format("π table".into()))?;
    expect("pi matches instance", inst.pi.as_ref() == Some(&pi));
    expect("pi_is_cocycle", one_cocycle_check(q, ext.action(), &pi).is_ok() == v.pi_is_cocycle);
    expect("pi_is_bijective", is_bijective(a, &pi) == v.pi_is_bijective);
    let cup = t.cup.to_cochain()?;
    expect("cup table", cup == cup3(q, ext.action(), ext.beta(), &pi).lift(cup.ambient()));
    let zeta = t.zeta.to_cochain()?;
    let dz = coboundary(q, &Roots(zeta.ambient()), &zeta).map_err(|e| PipelineError::Format(e.to_string()))?;
    let m = num_integer::lcm(zeta.ambient(), cup.ambient());
    expect("cup_trivial (δζ = w)", (dz.lift(m) == cup.lift(m)) == v.cup_trivial);
    let c = t.c_pi.to_cochain()?;
    let built = phi_pi(&ext, &pi).mul(&ext.inflate(&zeta));
    let mc = num_integer::lcm(built.ambient(), c.ambient());
    expect("c_pi = φ_π·inflate(ζ)", built.lift(mc) == c.lift(mc));
    let c_ok = is_cocycle(g, &Roots(c.ambient()), &c).unwrap_or(false);
    expect("c_is_cocycle", c_ok == v.c_is_cocycle);
    let mu = t.restriction_witness.to_cochain()?;
    let ag = a.as_finite_group();
    let dmu = coboundary(&ag, &Roots(mu.ambient()), &mu).map_err(|e| PipelineError::Format(e.to_string()))?;
    let res = ext.restrict(&c);
    let mr = num_integer::lcm(dmu.ambient(), res.ambient());
    expect("restriction_is_coboundary (δμ = res c)", (dmu.lift(mr) == res.lift(mr)) == v.restriction_is_coboundary);
    if !c_ok {
        return Ok(bad);
    }
    let alg = TwistedAlgebra::new(g, &c, a.exponent()).map_err(|e| PipelineError::Format(e.to_string()))?;
    let f = alg.field();
    expect("nondeg_sum_test", nondeg_sum_test(&alg) == v.nondeg_sum_test);
    let center = nondeg_center_oracle(&alg);
    expect("center_dimension", center.dimension == v.center_dimension);
    expect("regular_classes", center.regular_classes == v.regular_classes);
    let rm = is_identity(f, &alg.psi_matrix().compose(&alg.theta_matrix(), f)) && is_identity(f, &alg.theta_matrix().compose(&alg.psi_matrix(), f));
    expect("regular_module", rm == v.regular_module);
    let cg = crate::correspondence::TwoCocycleG::user_supplied(&ext, c.clone()).map_err(|e| PipelineError::Format(e.to_string()))?;
    expect("c_is_karp_normalized", cg.is_karp_normalized() == v.c_is_karp_normalized);
    match extract_pi(&ext, &cg) {
        Ok(ex) => {
            expect("roundtrip_pi_exact", (ex.pi == pi) == v.roundtrip_pi_exact);
            match &t.b1_witness {
                Some(chi) => {
                    let chi: DualCharacter = a
                        .character(&chi.iter().map(|&x| x as i64).collect::<Vec<_>>())
                        .map_err(|e| PipelineError::Format(e.to_string()))?;
                    let d = coboundary0(q, &Dual(ext.action()), &chi);
                    let diff = ex.pi.zip_with(&pi, |x, y| a.char_mul(x, &a.char_inv(y)));
                    expect("b1_witness (π_c·π⁻¹ = δ⁰χ)", diff == d && v.roundtrip_pi_class);
                }
                None => expect("roundtrip_pi_class", !v.roundtrip_pi_class),
            }
            expect("deltaeq", check_deltaeq(&ext, &c, &ex.pi) == v.deltaeq);
            if let Some(ratio) = &t.inflated_ratio {
                let r = ratio.to_cochain()?;
                let rebuilt = phi_pi(&ext, &ex.pi).mul(&ext.inflate(&zeta));
                let lhs = c.mul(&rebuilt.inv());
                let inf = ext.inflate(&r);
                let ml = num_integer::lcm(lhs.ambient(), inf.ambient());
                let cocycle = is_cocycle(q, &Roots(r.ambient()), &r).unwrap_or(false);
                expect("inflated_ratio", (lhs.lift(ml) == inf.lift(ml) && cocycle) == v.roundtrip_c_inflated);
            } else {
                expect("roundtrip_c_inflated", !v.roundtrip_c_inflated);
            }
            if let Some(s) = &v.surjectivity {
                let again = surjectivity_of_pi_c(&ext, &alg, &ex.pi).map_err(|e| PipelineError::Format(e.to_string()))?;
                expect("surjectivity", again == *s);
            }
        }
        Err(_) => expect("extract_pi", false),
    }
    if let (Some(tv), Some(table)) = (&v.twist, &t.twist) {
        let (tf, j) = table.to_tensor()?;
        let rep = verify_twist_axioms(g, &tf, &j);
        expect("twist orientations", rep.passing() == tv.passing_orientations);
        expect("twist counit", (rep.counit_left && rep.counit_right) == tv.counit);
        expect("twist invertibility", check_invertible(g, &tf, &j, 1024).certified() == tv.invertibility.certified());
    } else {
        expect("twist table present iff verdict", v.twist.is_none() && t.twist.is_none());
    }
    expect("central_type", (center.nondegenerate() && center.agree()) == v.central_type);
    Ok(bad)
}

/// Deterministic human-readable summary.
pub fn render_report(cert: &Certificate) -> String {
    let v = &cert.verdicts;
    let name = cert.instance.name.clone().unwrap_or_else(|| "instance".into());
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut out = String::new();
    let mut line = |k: &str, val: String| {
        // combining marks take no column
        let width = k.chars().filter(|c| !('\u{300}'..='\u{36f}').contains(c)).count();
        out.push_str(&format!("{k}{:pad$}{val}\n", "", pad = 34usize.saturating_sub(width)));
    };
    line("instance", name);
    line("|A|, |Q|", format!("{}, {}", cert.instance.a.iter().product::<u64>(), cert.instance.q.order));
    line("π 1-cocycle", yes(v.pi_is_cocycle).into());
    line("π bijective", yes(v.pi_is_bijective).into());
    line("[β] ∪ [π] trivial", format!("{} (trace {:?})", yes(v.cup_trivial), cert.moduli.zeta_trace));
    line("c_π 2-cocycle", yes(v.c_is_cocycle).into());
    line("c_π (karp)", yes(v.c_is_karp_normalized).into());
    line("res c_π coboundary", yes(v.restriction_is_coboundary).into());
    line("commutator sums vanish", yes(v.nondeg_sum_test).into());
    line("center dimension", v.center_dimension.to_string());
    line("c-regular classes", v.regular_classes.to_string());
    line("ψθ = θψ = id", yes(v.regular_module).into());
    line("π_{c_π} = π", yes(v.roundtrip_pi_exact).into());
    line("[π_{c_π}] = [π]", yes(v.roundtrip_pi_class).into());
    line("c·c_{π_c}⁻¹ inflated", yes(v.roundtrip_c_inflated).into());
    line("φ_{π_c} = c/c̃", yes(v.deltaeq).into());
    if let Some(s) = &v.surjectivity {
        line("π_c surjective", format!("{} (image {})", yes(s.surjective), s.image_size));
        line("idempotent action", format!("charact {}, iot {}, orbit {}", yes(s.charact), yes(s.iot), s.orbit_of_trivial));
    }
    if let Some(t) = &v.twist {
        line("twist orientations", format!("{:?}", t.passing_orientations));
        line("twist counit / unit", format!("{} / {}", yes(t.counit), yes(t.invertibility.certified())));
    }
    if let Some(c) = &v.complements {
        line(
            "abelian normal N, |N| = k",
            format!("k = {}: {} found, {} with complement", c.order, c.abelian_normal_subgroups, c.with_complement),
        );
    }
    line("central type", yes(v.central_type).into());
    out
}

/// What `extract` reports for a user-supplied 2-cocycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionReport {
    pub input_was_karp: bool,
    pub provenance: Provenance,
    pub pi_c: Vec<Vec<u64>>,
    pub bijective: bool,
    /// `c̃(g,g′) = c(ḡ,ḡ′)`, whose coboundary is the cup 3-cocycle.
    pub cup_certificate: RootTable,
    pub normalizer: RootTable,
}

pub fn extract(inst: &Instance, escalations: usize) -> Result<(ExtensionGroup, ExtractionReport), PipelineError> {
    let ext = inst.extension().map_err(ext_err)?;
    let c = inst.c.clone().ok_or(PipelineError::MissingC)?;
    let err = |e: CorrespondenceError| PipelineError::Extraction(e.to_string());
    let c = crate::correspondence::TwoCocycleG::user_supplied(&ext, c).map_err(err)?;
    let input_was_karp = c.is_karp_normalized();
    let k = crate::correspondence::karp_normalize(&ext, &c, escalations).map_err(err)?;
    let ex = extract_pi(&ext, &k.c).map_err(err)?;
    let report = ExtractionReport {
        input_was_karp,
        provenance: k.c.provenance(),
        pi_c: ex.pi.values().iter().map(|x| x.exponents().to_vec()).collect(),
        bijective: is_bijective(ext.kernel(), &ex.pi),
        cup_certificate: RootTable::from_cochain(&ex.c_tilde),
        normalizer: RootTable::from_cochain(&k.mu),
    };
    Ok((ext, report))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchEntry {
    pub pi: Vec<Vec<u64>>,
    pub cup_trace: Vec<(u64, bool)>,
    pub cup_trivial: bool,
    pub center_dimension: Option<usize>,
}

/// Bijective classes and, for each, whether `c_π` exists and is non-degenerate.
pub fn search(inst: &Instance, escalations: usize) -> Result<Vec<SearchEntry>, PipelineError> {
    let (a, q) = (&inst.a, &inst.q);
    if a.order() != q.order() {
        return Err(PipelineError::NotBijective(format!("|A| = {} but |Q| = {}", a.order(), q.order())));
    }
    let ext = inst.extension().map_err(ext_err)?;
    let classes = crate::cochains::find_bijective_classes(q, &inst.action).map_err(|e| PipelineError::Construction(e.to_string()))?;
    let m = default_zeta_modulus(a, q);
    let mut out = Vec::new();
    for class in classes {
        let pi = class.representative;
        let cup = cup3(q, &inst.action, &inst.beta, &pi);
        let outcome = solve_zeta(q, &cup, m, escalations).map_err(|e| PipelineError::Construction(e.to_string()))?;
        let center_dimension = match outcome.solution() {
            Some(z) => {
                let c = build_c_pi_with_zeta(&ext, &pi, &z.zeta).map_err(construction)?;
                let alg = TwistedAlgebra::new(ext.group(), c.table(), a.exponent()).map_err(|e| PipelineError::Construction(e.to_string()))?;
                Some(alg.center_dimension())
            }
            None => None,
        };
        out.push(SearchEntry {
            pi: pi.values().iter().map(|x| x.exponents().to_vec()).collect(),
            cup_trivial: outcome.solution().is_some(),
            cup_trace: outcome.trace().to_vec(),
            center_dimension,
        });
    }
    Ok(out)
}
