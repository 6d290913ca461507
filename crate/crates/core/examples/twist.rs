//! Builds the twist `J` on the Klein-four group and checks the twist
//! identity, the counit law and invertibility.

use central_type::catalog;
use central_type::correspondence::build_c_pi;
use central_type::twisted_algebra::TwistedAlgebra;
use central_type::twists::{build_twist, check_invertible, verify_twist_axioms};

fn main() {
    let inst = catalog::klein4();
    let ext = inst.extension().expect("valid extension");
    let c = build_c_pi(&ext, inst.pi.as_ref().unwrap(), 1).expect("π lies in K_β");
    let alg = TwistedAlgebra::new(ext.group(), c.c.table(), 2).expect("normalized cocycle");
    let f = alg.field();
    let tw = build_twist(&alg).expect("c_π is non-degenerate");

    let n = ext.order();
    for x in 0..n {
        let row: Vec<String> = (0..n).map(|y| format!("{:>8.4?}", f.approx(tw.j.get(x, y)))).collect();
        println!("J({x}, ·) = {}", row.join(" "));
    }
    let report = verify_twist_axioms(ext.group(), f, &tw.j);
    println!("passing orientations {:?}, counit {}", report.passing(), report.counit_left && report.counit_right);
    println!("invertibility {:?}", check_invertible(ext.group(), f, &tw.j, 1024));
}
