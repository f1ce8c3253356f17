//! The symbolic group: roots, membership, independence and orders over a subgroup.

use mendo::symgroup::{order_over, DivSubgroup, SymElement};
use num_bigint::BigInt;

fn main() {
    // x^(1/2) · ζ_6 and y^(-2/3)
    let a = SymElement::from_parts((0, 1), &[("x", 1, 1)]);
    let b = SymElement::from_parts((1, 6), &[("x", 3, 4), ("y", -2, 3)]);
    let c = DivSubgroup::of_symbols(0, &["y"]).unwrap();

    println!("a = {}", serde_json::to_string(&a).unwrap());
    println!("b = {}", serde_json::to_string(&b).unwrap());
    println!("a independent over <y>: {}", c.is_independent(std::slice::from_ref(&a)).unwrap());

    let o = order_over(&c, std::slice::from_ref(&a), &b).unwrap();
    println!("order of b over <C, a>: n = {}, exponents {:?}", o.n, o.l);
    println!("  C-part {}", serde_json::to_string(&o.cpart).unwrap());

    let (root, count) = b.canonical_nth_root(&BigInt::from(4)).unwrap();
    println!("canonical 4th root of b: {} ({count} roots in total)", serde_json::to_string(&root).unwrap());
    assert_eq!(root.pow_i64(4), b);

    let z = SymElement::from_parts((0, 1), &[("z", 1, 1)]);
    println!("z in <y>: {}", c.is_member(&z).unwrap());
}
