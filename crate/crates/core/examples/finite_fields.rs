//! Finite-field kernels of P(θ), kernel sums, torsion witnesses, freeness and product closure.

use mendo::ffworld::{
    freeness_at_level, genericity_audit, kernel_order, kernel_sum_coverage, pi_stabilization, random_endo,
    torsion_witness, AuditConfig, ExponentFamily, FiniteFieldCtx, DEFAULT_DLOG_LIMIT,
};
use mendo::poly::IntPoly;

fn main() {
    let ctx = FiniteFieldCtx::build(2, 4, DEFAULT_DLOG_LIMIT).unwrap();
    println!("{ctx}: modulus {:?}, generator {}", ctx.modulus(), ctx.format(ctx.generator()));

    let cube = ExponentFamily::power_map(2, &[1, 2, 4], 3).unwrap();
    let p: IntPoly = "x - 1".parse().unwrap();
    let q: IntPoly = "x + 1".parse().unwrap();
    for poly in [&p, &q] {
        let d = kernel_order(&cube, poly, 4).unwrap();
        println!("ker ({poly})(θ) at level 4: order {}, surjective {}", d.order, d.surjective);
    }
    let cov = kernel_sum_coverage(&cube, &ctx, &p, &q).unwrap();
    println!("ker P + ker Q covers {}/{}", cov.covered, cov.total);

    let quint = ExponentFamily::power_map(2, &[1, 2, 4], 5).unwrap();
    match torsion_witness(&quint, &ctx, 5).unwrap() {
        Some(w) => println!("torsion witness: ζ={} b={} a={}", ctx.format(w.zeta), ctx.format(w.b), ctx.format(w.a)),
        None => println!("no torsion witness"),
    }

    let pts: Vec<Vec<_>> = [["1", "1"], ["g^1", "g^2"], ["g^3", "g^6"]]
        .iter()
        .map(|row| row.iter().map(|s| ctx.parse(s).unwrap()).collect())
        .collect();
    let f = freeness_at_level(&ctx, &pts).unwrap();
    println!("points free: {}, witness character {:?}", f.free, f.witness);

    let xs: Vec<_> = ["1", "g^5", "g^6"].iter().map(|s| ctx.parse(s).unwrap()).collect();
    let (m, sub) = pi_stabilization(&ctx, &xs).unwrap();
    println!("Π_m stabilises at m={m} on a subgroup of order {}", sub.len());

    let e = random_endo(2, &[1, 2, 4], 7).unwrap();
    let config = AuditConfig { battery: vec![p.clone(), q.clone()], pairs: vec![(p, q)], ..Default::default() };
    let card = genericity_audit(&e, &ctx, &config).unwrap();
    println!("audit of a random endomorphism: {}", mendo::json::canonical(&card).unwrap());
}
