//! How conjugation by the lifts `ḡ` permutes the idempotents `ι_χ` of `ℂ[A]`
//! inside the twisted group algebra of the order-64 example.

use central_type::catalog;
use central_type::correspondence::{build_c_pi, extract_pi};
use central_type::twisted_algebra::TwistedAlgebra;

fn main() {
    let inst = catalog::paper64();
    let ext = inst.extension().expect("valid extension");
    let c = build_c_pi(&ext, inst.pi.as_ref().unwrap(), 1).expect("π lies in K_β");
    let pi_c = extract_pi(&ext, &c.c).expect("karp-normalized").pi;
    let alg = TwistedAlgebra::new(ext.group(), c.c.table(), 4).expect("normalized cocycle");
    println!("idempotents complete and orthogonal: {}", alg.idempotents_complete(&ext).unwrap());
    let dynamics = alg.idempotent_action(&ext, &pi_c).expect("restriction is trivial");
    for (g, row) in dynamics.perm.iter().enumerate() {
        let images: Vec<String> = row.iter().map(|x| x.map_or("?".into(), |i| i.to_string())).collect();
        println!("g = {g}: χ ↦ {}", images.join(" "));
    }
    println!("(charact) {}, (iot) {}, orbit of ι₁ has {} elements", dynamics.charact, dynamics.iot, dynamics.orbit_of_trivial);
}
