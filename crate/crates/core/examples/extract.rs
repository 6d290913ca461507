//! Scrambles `c_π` by a random coboundary, restores (karp) by solving for a
//! normalizing 1-cochain, and reads `π_c` back.

use central_type::catalog;
use central_type::cochains::{cohomologous_1, Cochain};
use central_type::correspondence::{build_c_pi, extract_pi, karp_normalize, TwoCocycleG};
use central_type::groups::RootExp;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let inst = catalog::paper64();
    let ext = inst.extension().expect("valid extension");
    let g = ext.group();
    let c = build_c_pi(&ext, inst.pi.as_ref().unwrap(), 1).expect("π lies in K_β").c;

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let m = c.table().ambient();
    let mu: Vec<RootExp> = (0..g.order()).map(|i| RootExp::new(if i == 0 { 0 } else { rng.gen_range(0..m as i64) }, m)).collect();
    let d = Cochain::from_fn(2, g.order(), |v| mu[v[1]] / mu[g.mul(v[0], v[1])] * mu[v[0]]);
    let scrambled = TwoCocycleG::user_supplied(&ext, c.table().mul(&d)).expect("still a cocycle");
    println!("scrambled is karp-normalized: {}", scrambled.is_karp_normalized());
    println!("extraction on it: {:?}", extract_pi(&ext, &scrambled).err());

    let fixed = karp_normalize(&ext, &scrambled, 1).expect("normalizer exists");
    let pi_c = extract_pi(&ext, &fixed.c).expect("karp-normalized").pi;
    println!("π_c  = {:?}", pi_c.values());
    let pi = inst.pi.unwrap();
    println!("π    = {:?}", pi.values());
    // the representatives differ by a coboundary δ⁰χ
    let chi = cohomologous_1(&inst.q, &inst.action, &pi_c, &pi).expect("orders match");
    println!("same class, χ = {chi:?}");
}
