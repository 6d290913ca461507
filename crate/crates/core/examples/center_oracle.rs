//! Compares the center dimension, the c-regular class count and the
//! commutator sum test for every 1-cocycle of the order-64 action.

use central_type::catalog;
use central_type::cochains::{is_bijective, z1_space};
use central_type::correspondence::{build_c_pi, nondeg_center_oracle, nondeg_sum_test};
use central_type::twisted_algebra::TwistedAlgebra;

fn main() {
    let inst = catalog::paper64();
    let ext = inst.extension().expect("valid extension");
    let z1 = z1_space(&inst.q, &inst.action).expect("orders match");
    let mut tally = std::collections::BTreeMap::new();
    for pi in z1.elements() {
        let bij = is_bijective(&inst.a, &pi);
        let Ok(c) = build_c_pi(&ext, &pi, 1) else {
            *tally.entry((bij, "outside K_β".to_string())).or_insert(0) += 1;
            continue;
        };
        let alg = TwistedAlgebra::new(ext.group(), c.c.table(), 4).expect("normalized cocycle");
        let report = nondeg_center_oracle(&alg);
        assert!(report.agree());
        let key = format!("center {} sum test {}", report.dimension, nondeg_sum_test(&alg));
        *tally.entry((bij, key)).or_insert(0) += 1;
    }
    for ((bij, what), count) in tally {
        println!("bijective {bij:<5} {what:<26} × {count}");
    }
}
