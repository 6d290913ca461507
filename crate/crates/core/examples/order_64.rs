//! Certifies the order-64 group built from `C₄ × C₂` acting on itself and
//! prints the human-readable report.

use central_type::catalog;
use central_type::certificate::{certify, render_report, CertifyOptions};

fn main() {
    let inst = catalog::paper64();
    let opts = CertifyOptions {
        twist: true,
        probe_complements: true,
        ..Default::default()
    };
    let cert = certify(&inst, &opts).expect("pipeline succeeds");
    print!("{}", render_report(&cert));
}
