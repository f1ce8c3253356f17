//! Extending a homomorphism across a complete system and gluing two extensions.

use mendo::homext::{extend_by_system, extend_trivial, GroupHom};
use mendo::msystems::{compute_system, transport, verify_system};
use mendo::symgroup::{DivSubgroup, SymElement};

fn main() {
    let c = DivSubgroup::torsion_only(0);
    let theta = GroupHom::power(c.clone(), 2);

    let a = vec![SymElement::from_parts((0, 1), &[("x", 1, 1)])];
    let b = vec![SymElement::from_parts((1, 12), &[("x", 1, 2)])];
    let tau = compute_system(&c, &a, &b).unwrap();

    // squaring on torsion, x ↦ x·y
    let a_img = vec![SymElement::from_parts((0, 1), &[("x", 1, 1), ("y", 1, 1)])];
    let good = vec![SymElement::from_parts((1, 6), &[("x", 1, 2), ("y", 1, 2)])];
    let bad = vec![SymElement::from_parts((1, 12), &[("x", 1, 2), ("y", 1, 2)])];

    let moved = transport(&tau, &theta).unwrap();
    for (label, img) in [("good", &good), ("bad", &bad)] {
        let ok = verify_system(&moved, &c, &a_img, img).unwrap();
        match extend_by_system(&theta, &tau, &a, &b, &a_img, img) {
            Ok(h) => println!("{label}: extended (transported system holds: {ok}); b ↦ {}", serde_json::to_string(&h.apply(&b[0]).unwrap()).unwrap()),
            Err(e) => println!("{label}: refused (transported system holds: {ok}): {e}"),
        }
    }

    let ext = extend_trivial(&theta, &["z"]).unwrap();
    let z = SymElement::from_parts((1, 5), &[("z", 2, 1)]);
    println!("trivial extension sends z^2·ζ_5 to {}", serde_json::to_string(&ext.apply(&z).unwrap()).unwrap());
}
