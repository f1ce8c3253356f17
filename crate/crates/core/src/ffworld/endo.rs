//! Endomorphisms of `⋃ F_{p^k}^×` as compatible exponent families.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::field::{FieldElem, FiniteFieldCtx};
use super::FfError;
use crate::json;
use crate::numtheory::{crt_pair, divisors, is_prime};
use crate::poly::IntPoly;

/// `p^k − 1`.
pub fn level_modulus(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize) - 1
}

/// `x ↦ x^{s_k}` on each `F_{p^k}^×`, for `k` in a divisor-closed set of levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EndoRepr", into = "EndoRepr")]
pub struct ExponentFamily {
    p: u64,
    residues: BTreeMap<u32, BigInt>,
}

#[derive(Serialize, Deserialize)]
struct EndoRepr {
    p: u64,
    levels: Vec<u32>,
    residues: BTreeMap<String, json::Int>,
}

impl TryFrom<EndoRepr> for ExponentFamily {
    type Error = FfError;
    fn try_from(r: EndoRepr) -> Result<Self, FfError> {
        let mut residues = BTreeMap::new();
        for (k, v) in r.residues {
            let k: u32 = k.parse().map_err(|_| FfError::MalformedConfig(format!("bad level key {k:?}")))?;
            residues.insert(k, v.0);
        }
        let listed: BTreeSet<u32> = r.levels.into_iter().collect();
        if listed != residues.keys().copied().collect() {
            return Err(FfError::MalformedConfig("levels and residue keys differ".into()));
        }
        ExponentFamily::new(r.p, residues)
    }
}

impl From<ExponentFamily> for EndoRepr {
    fn from(e: ExponentFamily) -> Self {
        EndoRepr {
            p: e.p,
            levels: e.residues.keys().copied().collect(),
            residues: e.residues.into_iter().map(|(k, v)| (k.to_string(), json::Int(v))).collect(),
        }
    }
}

fn check_levels(levels: &BTreeSet<u32>) -> Result<(), FfError> {
    for &k in levels {
        if k == 0 {
            return Err(FfError::BadDegree);
        }
        if let Some(d) = divisors(k as u64).into_iter().find(|&d| !levels.contains(&(d as u32))) {
            return Err(FfError::NotDivisorClosed(d as u32));
        }
    }
    Ok(())
}

impl ExponentFamily {
    /// Validates range, divisor-closure and compatibility.
    pub fn new(p: u64, residues: BTreeMap<u32, BigInt>) -> Result<Self, FfError> {
        if !is_prime(p) {
            return Err(FfError::NotPrime(p));
        }
        let levels: BTreeSet<u32> = residues.keys().copied().collect();
        check_levels(&levels)?;
        for (&k, s) in &residues {
            let m = level_modulus(p, k);
            if s.is_negative() || (s >= &m && !(m.is_one() && s.is_zero())) {
                return Err(FfError::ResidueOutOfRange { level: k, residue: s.clone() });
            }
        }
        for (&k, sk) in &residues {
            for (&j, sj) in residues.range(..k) {
                if k % j == 0 && !(sk - sj).is_multiple_of(&level_modulus(p, j)) {
                    return Err(FfError::Incompatible { j, k });
                }
            }
        }
        Ok(ExponentFamily { p, residues })
    }

    /// `x ↦ xⁿ` at every level.
    pub fn power_map(p: u64, levels: &[u32], n: impl Into<BigInt>) -> Result<Self, FfError> {
        let n = n.into();
        let residues = levels.iter().map(|&k| (k, n.mod_floor(&level_modulus(p, k)))).collect();
        Self::new(p, residues)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn levels(&self) -> impl Iterator<Item = u32> + '_ {
        self.residues.keys().copied()
    }

    pub fn residues(&self) -> &BTreeMap<u32, BigInt> {
        &self.residues
    }

    pub fn residue(&self, k: u32) -> Result<&BigInt, FfError> {
        self.residues.get(&k).ok_or(FfError::LevelMissing(k))
    }

    fn check_ctx(&self, ctx: &FiniteFieldCtx) -> Result<&BigInt, FfError> {
        if ctx.p() != self.p {
            return Err(FfError::PrimeMismatch { endo: self.p, field: ctx.p() });
        }
        self.residue(ctx.k())
    }

    /// `θ(x)`: `0 ↦ 0`, otherwise `x^{s_k}`.
    pub fn eval(&self, ctx: &FiniteFieldCtx, x: FieldElem) -> Result<FieldElem, FfError> {
        let s = self.check_ctx(ctx)?;
        Ok(if x.is_zero() { x } else { ctx.pow(x, s) })
    }

    /// `P(θ)(x) = x^{P(s_k)}` with `P(θ)(0) = 0`.
    pub fn eval_poly(&self, ctx: &FiniteFieldCtx, poly: &IntPoly, x: FieldElem) -> Result<FieldElem, FfError> {
        let e = poly_exponent(self, poly, ctx.k())?;
        self.check_ctx(ctx)?;
        Ok(if x.is_zero() { x } else { ctx.pow(x, &e) })
    }
}

/// `θ(x)` at the context's level.
pub fn endo_eval(e: &ExponentFamily, ctx: &FiniteFieldCtx, x: FieldElem) -> Result<FieldElem, FfError> {
    e.eval(ctx, x)
}

/// `P(s_k) mod (p^k − 1)`, in `[0, p^k − 1)`.
pub fn poly_exponent(e: &ExponentFamily, poly: &IntPoly, k: u32) -> Result<BigInt, FfError> {
    let s = e.residue(k)?;
    let m = level_modulus(e.p, k);
    Ok(poly.eval_mod(s, &m))
}

/// The kernel of `P(θ)` on `F_{p^k}^×`: the cyclic group `μ_order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelDesc {
    pub level: u32,
    pub poly: IntPoly,
    #[serde(with = "json::num")]
    pub exponent: BigInt,
    #[serde(with = "json::num")]
    pub order: BigInt,
    pub surjective: bool,
}

pub fn kernel_order(e: &ExponentFamily, poly: &IntPoly, k: u32) -> Result<KernelDesc, FfError> {
    if poly.is_zero() {
        return Err(FfError::ZeroPolynomial);
    }
    let exponent = poly_exponent(e, poly, k)?;
    let order = exponent.gcd(&level_modulus(e.p, k));
    // gcd(0, m) = m already; p = 2, k = 1 gives gcd(0, 1) = 1
    Ok(KernelDesc { level: k, poly: poly.clone(), surjective: order.is_one(), exponent, order })
}

/// A random compatible family, lifting level by level through the CRT.
pub fn random_endo(p: u64, levels: &[u32], seed: u64) -> Result<ExponentFamily, FfError> {
    if !is_prime(p) {
        return Err(FfError::NotPrime(p));
    }
    let set: BTreeSet<u32> = levels.iter().copied().collect();
    check_levels(&set)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut residues: BTreeMap<u32, BigInt> = BTreeMap::new();
    for &k in &set {
        let mut r = BigInt::zero();
        let mut m = BigInt::one();
        for (&j, sj) in residues.iter().filter(|(&j, _)| k % j == 0) {
            (r, m) = crt_pair(&r, &m, sj, &level_modulus(p, j)).expect("existing levels are compatible");
        }
        let full = level_modulus(p, k);
        let lifts = &full / &m;
        let pick = if lifts.is_one() { BigInt::zero() } else { rng.gen_bigint_range(&BigInt::zero(), &lifts) };
        let s = if full.is_one() { BigInt::zero() } else { (r + m * pick).mod_floor(&full) };
        residues.insert(k, s);
    }
    ExponentFamily::new(p, residues)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffworld::field::DEFAULT_DLOG_LIMIT;

    fn fam(p: u64, pairs: &[(u32, i64)]) -> Result<ExponentFamily, FfError> {
        ExponentFamily::new(p, pairs.iter().map(|&(k, s)| (k, BigInt::from(s))).collect())
    }

    #[test]
    fn validation() {
        assert!(fam(2, &[(1, 0), (2, 1), (4, 7)]).is_ok());
        assert_eq!(fam(2, &[(1, 0), (2, 1), (4, 6)]), Err(FfError::Incompatible { j: 2, k: 4 }));
        assert_eq!(fam(2, &[(1, 0), (4, 7)]), Err(FfError::NotDivisorClosed(2)));
        assert!(matches!(fam(2, &[(1, 0), (2, 3)]), Err(FfError::ResidueOutOfRange { .. })));
    }

    #[test]
    fn evaluation_examples() {
        let ctx = FiniteFieldCtx::build(2, 4, DEFAULT_DLOG_LIMIT).unwrap();
        let e = ExponentFamily::power_map(2, &[1, 2, 4], 3).unwrap();
        let g = ctx.generator();
        assert_eq!(endo_eval(&e, &ctx, FieldElem::ZERO).unwrap(), FieldElem::ZERO);
        assert_eq!(endo_eval(&e, &ctx, FieldElem::ONE).unwrap(), FieldElem::ONE);
        assert_eq!(endo_eval(&e, &ctx, g).unwrap(), ctx.g_pow(3));
        let other = FiniteFieldCtx::build(2, 3, DEFAULT_DLOG_LIMIT).unwrap();
        assert_eq!(endo_eval(&e, &other, g), Err(FfError::LevelMissing(3)));
    }

    #[test]
    fn exponents_and_kernels() {
        let e = ExponentFamily::power_map(2, &[1, 2, 4], 3).unwrap();
        let p = |s: &str| s.parse::<IntPoly>().unwrap();
        assert_eq!(poly_exponent(&e, &p("X^2 + 1"), 4).unwrap(), BigInt::from(10));
        assert_eq!(poly_exponent(&e, &p("1"), 4).unwrap(), BigInt::from(1));
        assert_eq!(poly_exponent(&e, &p("X^4 - 1"), 4).unwrap(), BigInt::from(5));
        assert_eq!(kernel_order(&e, &p("X"), 4).unwrap().order, BigInt::from(3));
        let fix = kernel_order(&e, &p("X - 1"), 4).unwrap();
        assert_eq!((fix.exponent.clone(), fix.order.clone(), fix.surjective), (BigInt::from(2), BigInt::from(1), true));
        assert_eq!(kernel_order(&e, &p("X^4 - 1"), 4).unwrap().order, BigInt::from(5));
        assert_eq!(kernel_order(&e, &IntPoly::default(), 4), Err(FfError::ZeroPolynomial));
        let zero = ExponentFamily::power_map(2, &[1, 2, 4], 0).unwrap();
        assert_eq!(kernel_order(&zero, &p("X"), 4).unwrap().order, BigInt::from(15));
    }

    #[test]
    fn random_families() {
        for seed in 0..20 {
            let e = random_endo(2, &[1, 2, 3, 4, 6, 12], seed).unwrap();
            assert_eq!(e, random_endo(2, &[1, 2, 3, 4, 6, 12], seed).unwrap());
            assert_eq!(ExponentFamily::new(2, e.residues().clone()).unwrap(), e);
        }
        assert_eq!(random_endo(3, &[1, 4], 0), Err(FfError::NotDivisorClosed(2)));
    }

    #[test]
    fn json_shape() {
        let e = fam(2, &[(1, 0), (2, 1), (4, 7)]).unwrap();
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v, serde_json::json!({"p":2,"levels":[1,2,4],"residues":{"1":"0","2":"1","4":"7"}}));
        assert_eq!(serde_json::from_value::<ExponentFamily>(v).unwrap(), e);
    }
}
