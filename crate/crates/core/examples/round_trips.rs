//! Both round trips on the split sample: `π ↦ c_π ↦ π_{c_π}` and
//! `c ↦ π_c ↦ c_{π_c}`.

use central_type::catalog;
use central_type::correspondence::{roundtrip_c_then_pi, roundtrip_pi_then_c};

fn main() {
    let inst = catalog::split_sample();
    let ext = inst.extension().expect("valid extension");
    let pi = inst.pi.as_ref().expect("search found a class");

    let first = roundtrip_c_then_pi(&ext, pi, 1).expect("π lies in K_β");
    println!("π         = {:?}", pi.values());
    println!("π_(c_π)   = {:?}", first.extracted.values());
    println!("same class: {} (witness {:?}), equal: {}", first.classes_agree(), first.b1_witness, first.exact);

    let second = roundtrip_pi_then_c(&ext, &first.construction.c, 1).expect("c_π is karp-normalized");
    println!("c·c_(π_c)⁻¹ inflated from Q: {}", second.differs_by_inflation());
    println!("δc̃ equals the cup cocycle: {}", second.deltaeq);
}
