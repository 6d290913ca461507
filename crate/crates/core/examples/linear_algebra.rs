//! Smith normal form, a system over `ℤ/12`, and a little cyclotomic
//! arithmetic.

use central_type::cyclotomic::CycField;
use central_type::zmodlin::{smith_normal_form, solve_mod, IntMatrix};
use num_bigint::BigInt;

fn main() {
    let m = IntMatrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).expect("rectangular");
    let snf = smith_normal_form(&m);
    println!("invariant factors {:?}", snf.diagonal());

    let a = IntMatrix::from_rows(&[vec![3i64, 4], vec![0, 6]]).expect("rectangular");
    let b = [BigInt::from(5), BigInt::from(6)];
    match solve_mod(&a, &b, 12).expect("modulus ≥ 1") {
        Some(sol) => println!("x = {:?} + span {:?} (mod 12)", sol.particular, sol.kernel),
        None => println!("no solution mod 12"),
    }

    let f = CycField::new(8);
    let sqrt2 = f.add(&f.root(1), &f.root(-1));
    println!("(ζ₈ + ζ₈⁻¹)² = {:?}", f.mul(&sqrt2, &sqrt2).as_rational());
}
