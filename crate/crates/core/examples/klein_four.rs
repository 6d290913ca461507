//! The smallest case: `A = Q = C₂` acting trivially, so `G` is the
//! Klein-four group, and the unique bijective `π` gives its non-degenerate
//! class.

use central_type::catalog;
use central_type::correspondence::{build_c_pi, extract_pi, nondeg_center_oracle};
use central_type::twisted_algebra::TwistedAlgebra;

fn main() {
    let inst = catalog::klein4();
    let ext = inst.extension().expect("valid extension");
    let pi = inst.pi.as_ref().expect("catalog entry has π");

    let built = build_c_pi(&ext, pi, 1).expect("π lies in K_β");
    let c = built.c.table();
    println!("ζ solved at modulus {}", built.zeta.modulus);
    for x in 0..ext.order() {
        let row: Vec<String> = (0..ext.order()).map(|y| format!("{:?}", c.at2(x, y))).collect();
        println!("c({x}, ·) = {}", row.join(" "));
    }

    let extracted = extract_pi(&ext, &built.c).expect("c_π is karp-normalized");
    println!("π_c = {:?}", extracted.pi.values());

    let alg = TwistedAlgebra::new(ext.group(), c, ext.kernel().exponent()).expect("normalized cocycle");
    let center = nondeg_center_oracle(&alg);
    println!("center dimension {}, regular classes {}", center.dimension, center.regular_classes);
}
