//! Writes an instance file, certifies it, and re-verifies the certificate
//! from its JSON form alone.

use central_type::catalog;
use central_type::certificate::{certify, reverify, Certificate, CertifyOptions};
use central_type::instance::InstanceFile;

fn main() {
    let text = catalog::klein4().to_json();
    println!("{text}");
    let inst = InstanceFile::from_json(&text).and_then(|f| f.validate()).expect("round-trips");
    let cert = certify(&inst, &CertifyOptions::default()).expect("pipeline succeeds");
    let json = cert.to_json();
    let back = Certificate::from_json(&json).expect("parses");
    let mismatches = reverify(&back).expect("instance re-validates");
    println!("certificate is {} bytes, mismatches {:?}", json.len(), mismatches);
}
