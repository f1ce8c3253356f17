//! Parsing terms with θ, linearising them and evaluating over a finite field.

use std::collections::BTreeMap;

use mendo::ffworld::{ExponentFamily, FiniteFieldCtx, DEFAULT_DLOG_LIMIT};
use mendo::termlang::{eval_term, linearise, parse_term};

fn main() {
    let t = parse_term("theta(x + theta(y)) - x * y + $c").unwrap();
    println!("term: {t}  (depth {}, {} theta)", t.depth(), t.theta_count());

    let sys = linearise(&t);
    for pair in &sys.pairs {
        println!("  fresh pair {} / {}", pair.z, pair.z_prime);
    }
    for eq in &sys.equations {
        println!("  {} = {}", eq.lhs, eq.rhs);
    }

    let ctx = FiniteFieldCtx::build(2, 4, DEFAULT_DLOG_LIMIT).unwrap();
    let frob = ExponentFamily::power_map(2, &[1, 2, 4], 2).unwrap();
    let env: BTreeMap<_, _> = [("x", "g^3"), ("y", "g^7"), ("$c", "1")]
        .into_iter()
        .map(|(k, v)| (k.to_string(), ctx.parse(v).unwrap()))
        .collect();
    let value = eval_term(&t, &env, &ctx, &frob).unwrap();
    let full = sys.propagate(&env, &ctx, &frob).unwrap();
    println!("value in {ctx} under Frobenius: {}", ctx.format(value));
    // the system holds exactly when the term vanishes
    println!("t = 0: {}, system holds: {}", value.is_zero(), sys.holds(&full, &ctx, &frob).unwrap());
}
