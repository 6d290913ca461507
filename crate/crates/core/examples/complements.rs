//! Lists the abelian normal subgroups of order 8 in the order-64 example and
//! searches each for a complement.

use central_type::catalog;
use central_type::extension::{abelian_normal_subgroups, find_complement};

fn main() {
    let ext = catalog::paper64().extension().expect("valid extension");
    let g = ext.group();
    let subgroups = abelian_normal_subgroups(g, 8);
    println!("{} abelian normal subgroups of order 8", subgroups.len());
    for n in &subgroups {
        let complement = find_complement(g, n).expect("orders divide");
        println!("N = {:?}: complement {:?}", n.elements(), complement.map(|h| h.elements().to_vec()));
    }

    // A split example for contrast: a complement exists.
    let split = catalog::split_sample().extension().expect("valid extension");
    let kernel = split.kernel_subgroup();
    let h = find_complement(split.group(), &kernel).expect("orders divide");
    println!("split sample: complement to A is {:?}", h.map(|h| h.elements().to_vec()));
}
