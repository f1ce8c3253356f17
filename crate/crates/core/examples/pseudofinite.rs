//! Pseudofinite-cyclic criterion, classification and witness factors.

use mendo::szmielew::{classify, psfc_check, witness_factors, SzmielewInvariants};

fn main() {
    let cases = [
        ("Q", SzmielewInvariants::rationals()),
        ("Z(3^∞) ⊕ Q", SzmielewInvariants::trivial().with_prufer(3).unwrap().with_epsilon(true)),
        ("Z(12)", SzmielewInvariants::cyclic(12)),
        ("Z(2) ⊕ Z(2)", SzmielewInvariants::finite_abelian(&[(2, 1), (2, 1)]).unwrap()),
        ("Z(3^∞) ⊕ Z_2", SzmielewInvariants::trivial().with_prufer(3).unwrap().with_padic(2).unwrap()),
        ("Z(3^∞) ⊕ Z_3", SzmielewInvariants::trivial().with_prufer(3).unwrap().with_padic(3).unwrap()),
    ];
    for (name, g) in &cases {
        let verdict = psfc_check(g);
        print!("{name:<16} passes: {:<5}", verdict.passes);
        match classify(g) {
            Ok(cl) => {
                let w = witness_factors(g, 3).unwrap();
                println!(" P={:?} Q={:?} finite={} witness n=3: order {} = {:?}", cl.p_set, cl.q_set, cl.finite, w.order, w.factors);
            }
            Err(e) => println!(" ({e})"),
        }
    }
}
