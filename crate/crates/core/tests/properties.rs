use std::collections::BTreeMap;

use mendo::ffworld::{self, ExponentFamily, FieldElem, FiniteFieldCtx, DEFAULT_DLOG_LIMIT};
use mendo::intlinalg::{hnf, snf, solve_integral, IntMatrix};
use mendo::msystems::{compute_nm, compute_system, verify_system, CompleteSystem};
use mendo::numtheory::divisors;
use mendo::symgroup::{order_over, power_product, DivSubgroup, FreePart, SymElement};
use mendo::szmielew::{self, SzmielewInvariants};
use mendo::termlang::{linearise, parse_term, Term};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-9i64..=9, rows * cols)
        .prop_map(move |v| IntMatrix::new(rows, cols, v.into_iter().map(BigInt::from).collect()).unwrap())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=8).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn element() -> impl Strategy<Value = SymElement> {
    (0i64..12, 1i64..=12, prop::collection::btree_map(prop::sample::select(vec!["x", "y", "u"]), rational(), 0..3))
        .prop_map(|(n, d, free)| {
            let free: FreePart = free.into_iter().map(|(k, v)| (k.to_string(), v)).filter(|(_, v)| !v.is_zero()).collect();
            SymElement::new(BigRational::new((n % d).into(), d.into()), free, 0).unwrap()
        })
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["x", "y", "z1", "x'"]).prop_map(Term::var),
        (-3i64..=3).prop_map(Term::int),
        prop::sample::select(vec!["c", "d"]).prop_map(|c| Term::Const(c.to_string())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::mul(a, b)),
            inner.clone().prop_map(Term::neg),
            inner.prop_map(Term::theta),
        ]
    })
}

fn det_abs_one(m: &IntMatrix) -> bool {
    m.det().map(|d| d.abs().is_one()).unwrap_or(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hnf_is_a_unimodular_transform(a in matrix(3, 4)) {
        let (h, u) = hnf(&a);
        prop_assert_eq!(u.mul(&a).unwrap(), h.clone());
        prop_assert!(det_abs_one(&u));
        let (h2, _) = hnf(&h);
        prop_assert_eq!(h2, h);
    }

    #[test]
    fn snf_divisibility_chain(a in matrix(3, 3)) {
        let (d, u, v) = snf(&a);
        prop_assert_eq!(u.mul(&a).unwrap().mul(&v).unwrap(), d.clone());
        prop_assert!(det_abs_one(&u) && det_abs_one(&v));
        for i in 0..2 {
            let (x, y) = (&d[(i, i)], &d[(i + 1, i + 1)]);
            prop_assert!(!x.is_negative());
            let divides = if x.is_zero() { y.is_zero() } else { y.is_multiple_of(x) };
            prop_assert!(divides);
        }
    }

    #[test]
    fn solvable_systems_are_solved(a in matrix(3, 2), x in prop::collection::vec(-5i64..=5, 3)) {
        let x: Vec<BigInt> = x.into_iter().map(BigInt::from).collect();
        let b = a.left_mul_vec(&x).unwrap();
        let y = solve_integral(&a, &b).unwrap().expect("b lies in the row lattice");
        prop_assert_eq!(a.left_mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn group_laws(x in element(), y in element(), z in element(), n in -6i64..=6, m in -6i64..=6) {
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert!(x.mul(&x.inv()).unwrap().is_identity());
        prop_assert_eq!(x.pow_i64(n).mul(&x.pow_i64(m)).unwrap(), x.pow_i64(n + m));
    }

    #[test]
    fn nth_roots(x in element(), n in 1i64..=9) {
        let (r, count) = x.canonical_nth_root(&BigInt::from(n)).unwrap();
        prop_assert_eq!(r.pow_i64(n), x);
        prop_assert_eq!(count, BigInt::from(n));
    }

    #[test]
    fn order_over_relation(b in element(), a in element()) {
        let c = DivSubgroup::of_symbols(0, &["u"]).unwrap();
        prop_assume!(c.is_independent(std::slice::from_ref(&a)).unwrap());
        match order_over(&c, std::slice::from_ref(&a), &b) {
            Ok(o) => {
                let g = o.l.iter().fold(o.n.clone(), |g, l| g.gcd(l));
                prop_assert!(g.is_one());
                prop_assert!(c.is_member(&o.cpart).unwrap());
                let rhs = o.cpart.mul(&power_product(0, std::slice::from_ref(&a), &o.l).unwrap()).unwrap();
                prop_assert_eq!(b.pow(&o.n), rhs);
            }
            Err(_) => {
                let hull = DivSubgroup::spanned_by(0, &[c.basis()[0].clone(), a.free().clone()]).unwrap();
                prop_assert!(!hull.is_member(&b).unwrap());
            }
        }
    }

    #[test]
    fn systems_hold_and_round_trip(q1 in rational(), q2 in rational(), t in 0i64..6) {
        let c = DivSubgroup::torsion_only(0);
        let a = SymElement::from_parts((0, 1), &[("x", 1, 1)]);
        let mk = |q: &BigRational, t: i64| {
            SymElement::new(BigRational::new(t.into(), 6.into()), [("x".to_string(), q.clone())].into_iter().filter(|(_, v)| !v.is_zero()).collect(), 0).unwrap()
        };
        let b = vec![mk(&q1, t), mk(&q2, 0)];
        let tau = compute_system(&c, std::slice::from_ref(&a), &b).unwrap();
        prop_assert!(verify_system(&tau, &c, std::slice::from_ref(&a), &b).unwrap());
        let back: CompleteSystem = serde_json::from_str(&serde_json::to_string(&tau).unwrap()).unwrap();
        prop_assert_eq!(back, tau);
    }

    #[test]
    fn nm_identities(rows in prop::collection::vec((1i64..=30, -30i64..=30), 1..5)) {
        let k: Vec<BigInt> = rows.iter().map(|r| BigInt::from(r.0)).collect();
        let l: Vec<BigInt> = rows.iter().map(|r| BigInt::from(r.1)).collect();
        let (n, m) = compute_nm(&k, &l).unwrap();
        prop_assert!(n.is_positive());
        for i in 0..k.len() {
            prop_assert_eq!(&m[i] * &k[i], &n * &l[i]);
        }
    }

    #[test]
    fn printer_round_trips(t in term()) {
        let printed = t.to_string();
        prop_assert_eq!(parse_term(&printed).unwrap(), t);
    }

    #[test]
    fn linearisation_shape(t in term()) {
        let sys = linearise(&t);
        prop_assert_eq!(sys.pairs.len(), t.theta_count());
        prop_assert_eq!(sys.equations.len(), t.theta_count() + 1);
        prop_assert!(!sys.contains_theta());
        for pair in &sys.pairs {
            prop_assert!(!t.vars().contains(&pair.z));
        }
    }

    #[test]
    fn linearisation_propagates(t in term(), s in 0u64..15, x in 0u32..16, y in 0u32..16, c in 0u32..16) {
        let ctx = FiniteFieldCtx::build(2, 4, DEFAULT_DLOG_LIMIT).unwrap();
        let e = ExponentFamily::power_map(2, &[1, 2, 4], s).unwrap();
        let env: BTreeMap<String, FieldElem> = [("x", x), ("y", y), ("z1", c), ("x'", y ^ c), ("$c", c), ("$d", x ^ 1)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), FieldElem(v)))
            .collect();
        let sys = linearise(&t);
        let full = sys.propagate(&env, &ctx, &e).unwrap();
        let value = mendo::termlang::eval_term(&t, &env, &ctx, &e).unwrap();
        prop_assert_eq!(sys.holds(&full, &ctx, &e).unwrap(), value.is_zero());
    }

    #[test]
    fn random_families_are_compatible(p in prop::sample::select(vec![2u64, 3, 5, 7]), k in 1u32..=6, seed in any::<u64>()) {
        let levels: Vec<u32> = divisors(k as u64).into_iter().map(|d| d as u32).collect();
        let e = ffworld::random_endo(p, &levels, seed).unwrap();
        for &j in &levels {
            for &i in &levels {
                if j % i == 0 {
                    let (si, sj) = (e.residue(i).unwrap(), e.residue(j).unwrap());
                    let m = ffworld::level_modulus(p, i);
                    prop_assert!(m.is_zero() || (sj - si).is_multiple_of(&m));
                }
            }
        }
        let back: ExponentFamily = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn classification_tracks_the_criterion(
        cyc in prop::collection::vec((prop::sample::select(vec![2u64, 3, 5]), 1u32..4, 1u64..3), 0..4),
        prufer in prop::collection::vec(prop::sample::select(vec![2u64, 3, 5]), 0..3),
        padic in prop::collection::vec(prop::sample::select(vec![2u64, 3, 5]), 0..3),
        omega in any::<bool>(),
    ) {
        let mut g = SzmielewInvariants::trivial().with_epsilon(omega);
        for (p, n, c) in cyc {
            g = g.with_cyclic(p, n, c).unwrap();
        }
        for p in prufer {
            g = g.with_prufer(p).unwrap();
        }
        for p in padic {
            g = g.with_padic(p).unwrap();
        }
        let v = szmielew::psfc_check(&g);
        prop_assert_eq!(szmielew::classify(&g).is_ok(), v.passes);
        let back: SzmielewInvariants = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(back, g);
    }
}
