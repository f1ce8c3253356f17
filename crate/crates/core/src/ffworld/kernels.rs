//! Kernels of `P(θ)` at a fixed level: sums, torsion witnesses and probes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::endo::{kernel_order, ExponentFamily};
use super::field::{FieldElem, FiniteFieldCtx};
use super::FfError;
use crate::json;
use crate::poly::IntPoly;

/// Elements of `ker P(θ)` at the context's level, in dlog order.
pub fn kernel_elements(e: &ExponentFamily, ctx: &FiniteFieldCtx, poly: &IntPoly) -> Result<Vec<FieldElem>, FfError> {
    let kd = kernel_order(e, poly, ctx.k())?;
    let d = kd.order.to_u64().expect("bounded by the group order");
    let step = ctx.group_order() / d;
    Ok((0..d).map(|j| ctx.g_pow(j * step)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub covered: u64,
    pub total: u64,
    #[serde(with = "json::rat")]
    pub fraction: BigRational,
}

/// How many field elements (0 included) are `a₁ + a₂` with `a₁ ∈ ker P(θ)`,
/// `a₂ ∈ ker Q(θ)`.
pub fn kernel_sum_coverage(
    e: &ExponentFamily,
    ctx: &FiniteFieldCtx,
    pp: &IntPoly,
    qq: &IntPoly,
) -> Result<Coverage, FfError> {
    let ka = kernel_elements(e, ctx, pp)?;
    let kb = kernel_elements(e, ctx, qq)?;
    let mut hit = vec![false; ctx.size() as usize];
    for &a in &ka {
        for &b in &kb {
            hit[ctx.add(a, b).0 as usize] = true;
        }
    }
    let covered = hit.iter().filter(|&&h| h).count() as u64;
    let total = ctx.size();
    Ok(Coverage { covered, total, fraction: BigRational::new(covered.into(), total.into()) })
}

/// `θ(b) = ζ` generates `μ_n` while `a = bⁿ` lies in `ker θ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorsionWitness {
    pub zeta: FieldElem,
    pub b: FieldElem,
    pub a: FieldElem,
}

pub fn torsion_witness(
    e: &ExponentFamily,
    ctx: &FiniteFieldCtx,
    n: u64,
) -> Result<Option<TorsionWitness>, FfError> {
    let m = ctx.group_order();
    if n == 0 || !m.is_multiple_of(n) {
        return Err(FfError::NotDivisor { n, order: m });
    }
    let s = e.residue(ctx.k())?.to_u64().expect("residue below the group order");
    let big_m = BigInt::from(m);
    for j in (1..=n).filter(|&j| j.gcd(&n) == 1) {
        let target = (m / n) * j % m;
        let zeta = ctx.g_pow(target);
        // least x ≥ 0 with s·x ≡ target (mod m)
        let g = s.gcd(&m);
        if !target.is_multiple_of(g) {
            continue;
        }
        let (_, inv, _) = crate::intlinalg::ext_gcd(&BigInt::from(s / g), &BigInt::from(m / g));
        let x = (inv * BigInt::from(target / g)).mod_floor(&(&big_m / BigInt::from(g)));
        let b = ctx.g_pow(x.to_u64().expect("reduced"));
        let a = ctx.pow(b, &BigInt::from(n));
        if e.eval(ctx, b)? == FieldElem::ONE {
            continue;
        }
        debug_assert_eq!(e.eval(ctx, a)?, FieldElem::ONE);
        return Ok(Some(TorsionWitness { zeta, b, a }));
    }
    Ok(None)
}

/// The points `(a, b − a)` with `a` in dlog order (0 first).
pub fn line_points(ctx: &FiniteFieldCtx, b: FieldElem) -> Vec<Vec<FieldElem>> {
    ctx.elements_by_dlog().map(|a| vec![a, ctx.sub(b, a)]).collect()
}

/// First point of `y_set` with `Pᵢ(θ)(aᵢ) = δᵢ` in every coordinate.
pub fn generic_kernel_probe(
    ctx: &FiniteFieldCtx,
    e: &ExponentFamily,
    y_set: &[Vec<FieldElem>],
    polys: &[IntPoly],
    deltas: &[FieldElem],
) -> Result<Option<Vec<FieldElem>>, FfError> {
    if polys.len() != deltas.len() {
        return Err(FfError::ArityMismatch(format!("{} polynomials, {} targets", polys.len(), deltas.len())));
    }
    if polys.iter().any(IntPoly::is_zero) {
        return Err(FfError::ZeroPolynomial);
    }
    let exps = polys
        .iter()
        .map(|p| super::endo::poly_exponent(e, p, ctx.k()))
        .collect::<Result<Vec<_>, _>>()?;
    for point in y_set {
        if point.len() != polys.len() {
            return Err(FfError::ArityMismatch(format!("point of length {}, expected {}", point.len(), polys.len())));
        }
        let hit = point.iter().zip(&exps).zip(deltas).all(|((&a, ex), &d)| {
            let v = if a.is_zero() { a } else { ctx.pow(a, ex) };
            v == d
        });
        if hit {
            return Ok(Some(point.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffworld::field::DEFAULT_DLOG_LIMIT;

    fn gf16() -> (FiniteFieldCtx, ExponentFamily) {
        (
            FiniteFieldCtx::build(2, 4, DEFAULT_DLOG_LIMIT).unwrap(),
            ExponentFamily::power_map(2, &[1, 2, 4], 3).unwrap(),
        )
    }

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn coverage_examples() {
        let (ctx, e) = gf16();
        let c = kernel_sum_coverage(&e, &ctx, &p("X"), &p("X")).unwrap();
        assert!(c.covered <= 9);
        assert_eq!(c.total, 16);
        // kernels μ₃ = {1, ω, ω²}: sums are 0 and the three elements ω^i + ω^j, i ≠ j
        assert_eq!(c.covered, 4);
        let c = kernel_sum_coverage(&e, &ctx, &p("X - 1"), &p("X")).unwrap();
        assert_eq!(c.covered, 3);
        let ctx4 = FiniteFieldCtx::build(2, 2, DEFAULT_DLOG_LIMIT).unwrap();
        let zero = ExponentFamily::power_map(2, &[1, 2], 0).unwrap();
        assert_eq!(kernel_sum_coverage(&zero, &ctx4, &p("X"), &p("X")).unwrap().fraction, BigRational::from_integer(1.into()));
    }

    #[test]
    fn witness_examples() {
        let (ctx, e) = gf16();
        let w = torsion_witness(&e, &ctx, 5).unwrap().unwrap();
        assert_eq!(w, TorsionWitness { zeta: ctx.g_pow(3), b: ctx.g_pow(1), a: ctx.g_pow(5) });
        assert_eq!(torsion_witness(&e, &ctx, 3).unwrap(), None);
        assert_eq!(torsion_witness(&e, &ctx, 1).unwrap(), None);
        assert!(torsion_witness(&e, &ctx, 7).is_err());
        let bij = ExponentFamily::power_map(2, &[1, 2, 4], 7).unwrap();
        for n in [3, 5, 15] {
            let w = torsion_witness(&bij, &ctx, n).unwrap().unwrap();
            assert_eq!(w.a, FieldElem::ONE);
        }
    }

    #[test]
    fn probe_examples() {
        let (ctx, e) = gf16();
        let b = ctx.add(ctx.g_pow(5), ctx.g_pow(10));
        let pts = line_points(&ctx, b);
        let one = FieldElem::ONE;
        let got = generic_kernel_probe(&ctx, &e, &pts, &[p("X"), p("X")], &[one, one]).unwrap();
        assert_eq!(got, Some(vec![ctx.g_pow(5), ctx.g_pow(10)]));

        let cover = kernel_elements(&e, &ctx, &p("X")).unwrap();
        let sums: Vec<FieldElem> = cover.iter().flat_map(|&x| cover.iter().map(move |&y| (x, y))).map(|(x, y)| ctx.add(x, y)).collect();
        let outside = ctx.elements().find(|x| !sums.contains(x)).unwrap();
        let got = generic_kernel_probe(&ctx, &e, &line_points(&ctx, outside), &[p("X"), p("X")], &[one, one]).unwrap();
        assert_eq!(got, None);

        let got = generic_kernel_probe(&ctx, &e, &line_points(&ctx, FieldElem::ZERO), &[p("X"), p("X")], &[one, one]).unwrap();
        assert_eq!(got, Some(vec![one, one]));
        assert!(generic_kernel_probe(&ctx, &e, &pts, &[p("X")], &[]).is_err());
    }
}
