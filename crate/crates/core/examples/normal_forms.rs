//! Hermite and Smith normal forms, integral solving and saturation.

use mendo::intlinalg::{hnf, snf, solve_integral, IntMatrix, Lattice};
use num_bigint::BigInt;

fn show(label: &str, m: &IntMatrix) {
    println!("{label}:");
    for row in m.row_vecs() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
        println!("  [{}]", cells.join(""));
    }
}

fn main() {
    let a = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    show("A", &a);

    let (h, u) = hnf(&a);
    show("HNF", &h);
    assert_eq!(u.mul(&a).unwrap(), h);

    let (d, u, v) = snf(&a);
    show("SNF", &d);
    assert_eq!(u.mul(&a).unwrap().mul(&v).unwrap(), d);

    // x·A = b over the integers
    let b: Vec<BigInt> = [-4, 10, 16].into_iter().map(BigInt::from).collect();
    match solve_integral(&a, &b).unwrap() {
        Some(x) => println!("x·A = {b:?} has integral solution {x:?}"),
        None => println!("x·A = {b:?} has no integral solution"),
    }

    let lat = Lattice::from_generators(3, &a).unwrap();
    let sat = lat.saturate();
    println!("row lattice: rank {}, index {:?} in Z^3", lat.rank(), lat.index());
    show("saturation basis", sat.basis());
}
