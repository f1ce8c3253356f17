//! Exhaustive genericity scorecard at one level.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::endo::{kernel_order, ExponentFamily, KernelDesc};
use super::field::{FieldElem, FiniteFieldCtx};
use super::kernels::{kernel_sum_coverage, Coverage};
use super::mult::freeness_at_level;
use super::FfError;
use crate::json;
use crate::poly::IntPoly;
use crate::termlang::{eval_term, Term};

/// Batteries to score. Curves are terms in `x` and `y` read as `f(x, y) = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endo: Option<ExponentFamily>,
    #[serde(default)]
    pub battery: Vec<IntPoly>,
    #[serde(default)]
    pub pairs: Vec<(IntPoly, IntPoly)>,
    #[serde(default)]
    pub curves: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub hits: u64,
    pub total: u64,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_rat")]
    pub fraction: Option<BigRational>,
}

mod opt_rat {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(q) => s.serialize_str(&json::rat_to_string(q)),
            None => s.serialize_none(),
        }
    }
}

impl Tally {
    fn new(hits: u64, total: u64) -> Self {
        let fraction = (total > 0).then(|| BigRational::new(BigInt::from(hits), BigInt::from(total)));
        Tally { hits, total, fraction }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCoverage {
    #[serde(rename = "P")]
    pub pp: IntPoly,
    #[serde(rename = "Q")]
    pub qq: IntPoly,
    #[serde(flatten)]
    pub coverage: Coverage,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveReport {
    pub curve: Term,
    pub projection_size: u64,
    pub projection_free: bool,
    /// First `x ≠ 0` in dlog order with `f(x, θ(x)) = 0`, formatted.
    pub theta_point: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Scorecard {
    pub p: u64,
    pub k: u32,
    pub kernels: Vec<KernelDesc>,
    /// B1: battery polynomials surjective at the level.
    pub surjective: Tally,
    /// B2: kernel-sum coverage per pair.
    pub coverage: Vec<PairCoverage>,
    pub curves: Vec<CurveReport>,
    /// B3: curves with free x-projection that carry a point `(x, θ(x))`.
    pub theta_points: Tally,
}

fn curve_value(
    curve: &Term,
    x: FieldElem,
    y: FieldElem,
    ctx: &FiniteFieldCtx,
    e: &ExponentFamily,
) -> Result<FieldElem, FfError> {
    let env: BTreeMap<String, FieldElem> = [("x".to_string(), x), ("y".to_string(), y)].into();
    eval_term(curve, &env, ctx, e).map_err(|err| FfError::MalformedConfig(format!("curve {curve}: {err}")))
}

pub fn genericity_audit(e: &ExponentFamily, ctx: &FiniteFieldCtx, config: &AuditConfig) -> Result<Scorecard, FfError> {
    let k = ctx.k();
    let kernels =
        config.battery.iter().map(|p| kernel_order(e, p, k)).collect::<Result<Vec<_>, _>>()?;
    let surjective = Tally::new(kernels.iter().filter(|d| d.surjective).count() as u64, kernels.len() as u64);

    let coverage = config
        .pairs
        .iter()
        .map(|(pp, qq)| {
            Ok(PairCoverage { pp: pp.clone(), qq: qq.clone(), coverage: kernel_sum_coverage(e, ctx, pp, qq)? })
        })
        .collect::<Result<Vec<_>, FfError>>()?;

    let mut curves = Vec::new();
    for curve in &config.curves {
        if let Some(bad) = curve.vars().into_iter().find(|v| v != "x" && v != "y") {
            return Err(FfError::MalformedConfig(format!("curve {curve} uses variable {bad}")));
        }
        let mut projection = Vec::new();
        for x in ctx.elements_by_dlog().skip(1) {
            let mut on_curve = false;
            for y in ctx.elements() {
                if curve_value(curve, x, y, ctx, e)?.is_zero() {
                    on_curve = true;
                    break;
                }
            }
            if on_curve {
                projection.push(vec![x]);
            }
        }
        let projection_free = !projection.is_empty() && freeness_at_level(ctx, &projection)?.free;
        let mut theta_point = None;
        for x in ctx.elements_by_dlog().skip(1) {
            if curve_value(curve, x, e.eval(ctx, x)?, ctx, e)?.is_zero() {
                theta_point = Some(ctx.format(x));
                break;
            }
        }
        curves.push(CurveReport {
            curve: curve.clone(),
            projection_size: projection.len() as u64,
            projection_free,
            theta_point,
        });
    }
    let eligible: Vec<&CurveReport> = curves.iter().filter(|c| c.projection_free).collect();
    let theta_points =
        Tally::new(eligible.iter().filter(|c| c.theta_point.is_some()).count() as u64, eligible.len() as u64);
    Ok(Scorecard { p: ctx.p(), k, kernels, surjective, coverage, curves, theta_points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffworld::DEFAULT_DLOG_LIMIT;

    fn gf16() -> FiniteFieldCtx {
        FiniteFieldCtx::build(2, 4, DEFAULT_DLOG_LIMIT).unwrap()
    }

    fn config(src: &str) -> AuditConfig {
        serde_json::from_str(src).unwrap()
    }

    #[test]
    fn identity_endo_full_coverage() {
        let ctx = gf16();
        let e = ExponentFamily::power_map(2, &[1, 2, 4], 1).unwrap();
        let card = genericity_audit(&e, &ctx, &config(r#"{"pairs":[["X - 1","X - 1"]]}"#)).unwrap();
        assert_eq!(card.coverage[0].coverage.covered, 16);
    }

    #[test]
    fn cube_map_flags_low_coverage() {
        let ctx = gf16();
        let e = ExponentFamily::power_map(2, &[1, 2, 4], 3).unwrap();
        let card = genericity_audit(
            &e,
            &ctx,
            &config(r#"{"battery":["X","X - 1","X^4 - 1"],"pairs":[["X","X"]],"curves":["y - x * x","y * x - 1","x * x + x + 1"]}"#),
        )
        .unwrap();
        assert!(card.coverage[0].coverage.covered < 16);
        assert_eq!((card.surjective.hits, card.surjective.total), (1, 3));
        // θ(x) = x³: x·x³ = 1 has x ∈ μ₄ ∩ F₁₆^× = {1}; y = x² needs x³ = x², x = 1
        assert_eq!(card.curves[0].theta_point.as_deref(), Some("g^0"));
        assert_eq!(card.curves[1].theta_point.as_deref(), Some("g^0"));
        assert!(card.curves[0].projection_free);
        // x² + x + 1 = 0 cuts out a proper coset-free pair {g⁵, g¹⁰}
        assert_eq!(card.curves[2].projection_size, 2);
        assert!(!card.curves[2].projection_free);
        assert_eq!(card.theta_points.total, 2);
    }

    #[test]
    fn empty_config() {
        let ctx = gf16();
        let e = ExponentFamily::power_map(2, &[1, 2, 4], 3).unwrap();
        let card = genericity_audit(&e, &ctx, &AuditConfig::default()).unwrap();
        assert!(card.kernels.is_empty() && card.coverage.is_empty() && card.curves.is_empty());
        assert_eq!(card.surjective.fraction, None);
        assert!(serde_json::from_str::<AuditConfig>(r#"{"bogus":1}"#).is_err());
        let bad = config(r#"{"curves":["x * z"]}"#);
        assert!(matches!(genericity_audit(&e, &ctx, &bad), Err(FfError::MalformedConfig(_))));
    }
}
