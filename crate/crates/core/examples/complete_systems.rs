//! Complete systems of minimal equations, their presentations and the N, M identities.

use mendo::json::canonical;
use mendo::msystems::{compute_nm, compute_system, minimal_presentation, solve_presentation, verify_system};
use mendo::symgroup::{DivSubgroup, SymElement};
use num_bigint::BigInt;

fn main() {
    let c = DivSubgroup::torsion_only(0);
    let a = vec![SymElement::from_parts((0, 1), &[("x", 1, 1)])];
    let b = vec![
        SymElement::from_parts((0, 1), &[("x", 1, 2)]),
        SymElement::from_parts((1, 3), &[("x", 1, 3)]),
    ];

    let tau = compute_system(&c, &a, &b).unwrap();
    println!("{} equations, orders {:?}", tau.equations().count(), tau.orders());
    for eq in tau.equations().take(4) {
        println!("  k={:?}  N={}  l={:?}", eq.kvec, eq.big_n, eq.lvec);
    }
    assert!(verify_system(&tau, &c, &a, &b).unwrap());

    let pres = minimal_presentation(&tau, &c, &a, &b).unwrap();
    print!("presentation: {}", canonical(&pres).unwrap());
    let rebuilt = solve_presentation(&pres, &a).unwrap();
    assert!(verify_system(&tau, &c, &a, &rebuilt).unwrap());
    println!("the presentation re-solves to a point of the same system");

    let k: Vec<BigInt> = [4, 6].into_iter().map(BigInt::from).collect();
    let l: Vec<BigInt> = [3, -5].into_iter().map(BigInt::from).collect();
    let (n, m) = compute_nm(&k, &l).unwrap();
    println!("k={k:?} l={l:?}  ->  N={n}  M={m:?}");
}
