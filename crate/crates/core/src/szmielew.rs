//! Abelian groups up to elementary equivalence, described by Szmielew
//! invariants, and the pseudofinite-cyclic criterion `|G[p]| = |G/pG| ≤ p`.
//!
//! A group is recorded as
//!
//! ```text
//! ⊕_p ( ⊕_n Z(pⁿ)^{κ_{p,n}} ⊕ Z(p^∞)^{λ_p} ⊕ Z_p^{ν_p} ) ⊕ Q^ε
//! ```
//!
//! with cardinals in `{0, 1, …, ω}`. Primes that are not listed carry no
//! summands.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::numtheory::{factorize, is_prime, nth_prime_outside};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SzError {
    #[error("the criterion fails at p = {0}")]
    CriterionFails(u64),
    #[error("{0} is not prime")]
    BadPrime(u64),
    #[error("cyclic summand exponents must be positive")]
    BadExponent,
    #[error("witness index must be positive")]
    ZeroIndex,
    #[error("ε must be 0 or omega")]
    BadEpsilon,
}

/// A cardinal in `{0, 1, 2, …, ω}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Card {
    #[default]
    Zero,
    Finite(u64),
    Omega,
}

impl Card {
    pub fn finite(n: u64) -> Card {
        if n == 0 {
            Card::Zero
        } else {
            Card::Finite(n)
        }
    }

    pub fn value(self) -> Option<u64> {
        match self {
            Card::Zero => Some(0),
            Card::Finite(n) => Some(n),
            Card::Omega => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Card::Zero
    }
}

impl std::ops::Add for Card {
    type Output = Card;
    fn add(self, o: Card) -> Card {
        match (self.value(), o.value()) {
            (Some(a), Some(b)) => a.checked_add(b).map_or(Card::Omega, Card::finite),
            _ => Card::Omega,
        }
    }
}

impl Serialize for Card {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.value() {
            Some(n) => s.serialize_u64(n),
            None => s.serialize_str("omega"),
        }
    }
}

impl<'de> Deserialize<'de> for Card {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Card;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative integer or \"omega\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Card, E> {
                Ok(Card::finite(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Card, E> {
                u64::try_from(v).map(Card::finite).map_err(|_| E::custom("negative cardinal"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Card, E> {
                match v {
                    "omega" | "ω" => Ok(Card::Omega),
                    _ => v.parse().map(Card::finite).map_err(|_| E::custom(format!("bad cardinal {v:?}"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Invariants at one prime.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeData {
    /// `(n, κ_{p,n})`.
    #[serde(default)]
    pub finite: Vec<(u32, Card)>,
    #[serde(default)]
    pub lambda: Card,
    #[serde(default)]
    pub nu: Card,
}

impl PrimeData {
    fn kappa_sum(&self) -> Card {
        self.finite.iter().fold(Card::Zero, |acc, &(_, k)| acc + k)
    }

    fn is_trivial(&self) -> bool {
        self.kappa_sum().is_zero() && self.lambda.is_zero() && self.nu.is_zero()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InvRepr", into = "InvRepr")]
pub struct SzmielewInvariants {
    primes: BTreeMap<u64, PrimeData>,
    /// `Card::Zero` or `Card::Omega`.
    epsilon: Card,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InvRepr {
    #[serde(default)]
    primes: BTreeMap<String, PrimeData>,
    #[serde(default)]
    epsilon: Card,
}

impl TryFrom<InvRepr> for SzmielewInvariants {
    type Error = SzError;
    fn try_from(r: InvRepr) -> Result<Self, SzError> {
        let mut primes = BTreeMap::new();
        for (k, v) in r.primes {
            let p: u64 = k.parse().map_err(|_| SzError::BadPrime(0))?;
            primes.insert(p, v);
        }
        SzmielewInvariants::new(primes, r.epsilon)
    }
}

impl From<SzmielewInvariants> for InvRepr {
    fn from(g: SzmielewInvariants) -> Self {
        InvRepr { primes: g.primes.into_iter().map(|(p, d)| (p.to_string(), d)).collect(), epsilon: g.epsilon }
    }
}

impl SzmielewInvariants {
    pub fn new(primes: BTreeMap<u64, PrimeData>, epsilon: Card) -> Result<Self, SzError> {
        for (&p, d) in &primes {
            if !is_prime(p) {
                return Err(SzError::BadPrime(p));
            }
            if d.finite.iter().any(|&(n, _)| n == 0) {
                return Err(SzError::BadExponent);
            }
        }
        if !matches!(epsilon, Card::Zero | Card::Omega) {
            return Err(SzError::BadEpsilon);
        }
        Ok(SzmielewInvariants { primes, epsilon })
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Self::default()
    }

    /// `Q^ω`.
    pub fn rationals() -> Self {
        SzmielewInvariants { primes: BTreeMap::new(), epsilon: Card::Omega }
    }

    /// `⊕ Z(pⁿ)` over the given `(p, n)` summands.
    pub fn finite_abelian(summands: &[(u64, u32)]) -> Result<Self, SzError> {
        let mut g = Self::trivial();
        for &(p, n) in summands {
            g = g.with_cyclic(p, n, 1)?;
        }
        Ok(g)
    }

    /// `Z(m)` for `m ≥ 1`.
    pub fn cyclic(m: u64) -> Self {
        let f: Vec<(u64, u32)> = factorize(m).into_iter().collect();
        Self::finite_abelian(&f).expect("prime factors")
    }

    fn entry(&mut self, p: u64) -> Result<&mut PrimeData, SzError> {
        if !is_prime(p) {
            return Err(SzError::BadPrime(p));
        }
        Ok(self.primes.entry(p).or_default())
    }

    /// Adds `Z(pⁿ)^{count}`.
    pub fn with_cyclic(mut self, p: u64, n: u32, count: u64) -> Result<Self, SzError> {
        if n == 0 {
            return Err(SzError::BadExponent);
        }
        let d = self.entry(p)?;
        match d.finite.iter_mut().find(|(m, _)| *m == n) {
            Some(slot) => slot.1 = slot.1 + Card::finite(count),
            None => {
                d.finite.push((n, Card::finite(count)));
                d.finite.sort();
            }
        }
        Ok(self)
    }

    /// Adds `Z(p^∞)`.
    pub fn with_prufer(mut self, p: u64) -> Result<Self, SzError> {
        let d = self.entry(p)?;
        d.lambda = d.lambda + Card::Finite(1);
        Ok(self)
    }

    /// Adds the `p`-adic integers `Z_p`.
    pub fn with_padic(mut self, p: u64) -> Result<Self, SzError> {
        let d = self.entry(p)?;
        d.nu = d.nu + Card::Finite(1);
        Ok(self)
    }

    pub fn with_epsilon(mut self, omega: bool) -> Self {
        self.epsilon = if omega { Card::Omega } else { Card::Zero };
        self
    }

    pub fn primes(&self) -> &BTreeMap<u64, PrimeData> {
        &self.primes
    }

    pub fn epsilon(&self) -> Card {
        self.epsilon
    }

    pub fn prime_data(&self, p: u64) -> PrimeData {
        self.primes.get(&p).cloned().unwrap_or_default()
    }
}

/// A group order: `pᵉ` or infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Size {
    Finite(BigInt),
    Infinite,
}

impl Size {
    fn power(p: u64, e: Card) -> Size {
        match e.value() {
            Some(e) => Size::Finite(num_traits::pow(BigInt::from(p), e as usize)),
            None => Size::Infinite,
        }
    }
}

impl Serialize for Size {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Size::Finite(n) => s.serialize_str(&n.to_string()),
            Size::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// `(|G[p]|, |G/pG|)`.
pub fn p_local_sizes(g: &SzmielewInvariants, p: u64) -> (Size, Size) {
    let d = g.prime_data(p);
    let k = d.kappa_sum();
    (Size::power(p, k + d.lambda), Size::power(p, k + d.nu))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSizes {
    pub torsion: Size,
    pub quotient: Size,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsfcVerdict {
    pub passes: bool,
    pub failing_prime: Option<u64>,
    pub sizes: BTreeMap<String, LocalSizes>,
}

fn prime_passes(p: u64, t: &Size, q: &Size) -> bool {
    matches!((t, q), (Size::Finite(a), Size::Finite(b)) if a == b && a <= &BigInt::from(p))
}

/// Checks every listed prime; unlisted primes contribute `(1, 1)` and pass.
pub fn psfc_check(g: &SzmielewInvariants) -> PsfcVerdict {
    let mut sizes = BTreeMap::new();
    let mut failing_prime = None;
    for &p in g.primes.keys() {
        let (t, q) = p_local_sizes(g, p);
        if failing_prime.is_none() && !prime_passes(p, &t, &q) {
            failing_prime = Some(p);
        }
        sizes.insert(p.to_string(), LocalSizes { torsion: t, quotient: q });
    }
    PsfcVerdict { passes: failing_prime.is_none(), failing_prime, sizes }
}

/// Shape of the `p`-primary part of a group passing the criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalType {
    /// `Z(p^α)`, with `α = 0` for the trivial group.
    Cyclic(u32),
    /// `Z(p^∞) ⊕ Z_p`.
    Adic,
}

impl Serialize for LocalType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LocalType::Cyclic(a) => s.serialize_str(&format!("cyclic^{a}")),
            LocalType::Adic => s.serialize_str("adic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub local: BTreeMap<String, LocalType>,
    /// `p ↦ α_p` for `α_p ≥ 1`.
    #[serde(rename = "P")]
    pub p_set: BTreeMap<u64, u32>,
    #[serde(rename = "Q")]
    pub q_set: Vec<u64>,
    /// The given `ε`.
    pub epsilon: Card,
    /// `ε` as adjusted for the ultraproduct witness: `ω` for infinite groups
    /// with `Q = ∅`, otherwise `0`.
    pub epsilon0: Card,
    /// Whether the group itself is finite (then it is cyclic of order `Π p^α`).
    pub finite: bool,
}

pub fn classify(g: &SzmielewInvariants) -> Result<Classification, SzError> {
    let verdict = psfc_check(g);
    if let Some(p) = verdict.failing_prime {
        return Err(SzError::CriterionFails(p));
    }
    let mut local = BTreeMap::new();
    let mut p_set = BTreeMap::new();
    let mut q_set = Vec::new();
    for (&p, d) in &g.primes {
        let ty = if d.is_trivial() {
            LocalType::Cyclic(0)
        } else if d.kappa_sum().is_zero() {
            LocalType::Adic
        } else {
            let &(n, _) = d.finite.iter().find(|(_, k)| !k.is_zero()).expect("nonzero kappa");
            LocalType::Cyclic(n)
        };
        match ty {
            LocalType::Cyclic(0) => {}
            LocalType::Cyclic(a) => {
                p_set.insert(p, a);
            }
            LocalType::Adic => q_set.push(p),
        }
        local.insert(p.to_string(), ty);
    }
    let finite = q_set.is_empty() && g.epsilon.is_zero();
    let epsilon0 = if !finite && q_set.is_empty() { Card::Omega } else { Card::Zero };
    Ok(Classification { local, p_set, q_set, epsilon: g.epsilon, epsilon0, finite })
}

/// Order of the `n`-th finite cyclic factor of an ultraproduct elementarily
/// equivalent to `g`, with its factorisation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessFactor {
    #[serde(serialize_with = "ser_bigint")]
    pub order: BigInt,
    /// `(prime, exponent)` with pairwise distinct primes.
    pub factors: Vec<(u64, u32)>,
}

fn ser_bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// `F_n ⊕ K_n` as one cyclic group:
///
/// * `Q ≠ ∅`: `⊕_{p∈P} Z(p^{α_p}) ⊕ ⊕_{q∈Q} Z(qⁿ)`;
/// * `Q = ∅`, infinite: `⊕_{p∈P} Z(p^{α_p}) ⊕ Z(s₁ⁿ) ⊕ … ⊕ Z(sₙⁿ)`, `sᵢ` the
///   `i`-th prime outside `P`;
/// * finite `g`: `g` itself for every `n`.
pub fn witness_factors(g: &SzmielewInvariants, n: u32) -> Result<WitnessFactor, SzError> {
    if n == 0 {
        return Err(SzError::ZeroIndex);
    }
    let c = classify(g)?;
    let mut factors: Vec<(u64, u32)> = c.p_set.iter().map(|(&p, &a)| (p, a)).collect();
    if !c.q_set.is_empty() {
        factors.extend(c.q_set.iter().map(|&q| (q, n)));
    } else if !c.finite {
        let excluded: Vec<u64> = c.p_set.keys().copied().collect();
        factors.extend((1..=n as usize).map(|i| (nth_prime_outside(i, &excluded), n)));
    }
    factors.sort();
    let order = factors
        .iter()
        .fold(BigInt::from(1), |acc, &(p, e)| acc * num_traits::pow(BigInt::from(p), e as usize));
    debug_assert!(factors.windows(2).all(|w| w[0].0 != w[1].0));
    Ok(WitnessFactor { order, factors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(n: u64) -> Size {
        Size::Finite(BigInt::from(n))
    }

    #[test]
    fn local_sizes() {
        let g = SzmielewInvariants::finite_abelian(&[(2, 1), (2, 2)]).unwrap();
        assert_eq!(p_local_sizes(&g, 2), (fin(4), fin(4)));
        let z7 = SzmielewInvariants::trivial().with_padic(7).unwrap();
        assert_eq!(p_local_sizes(&z7, 7), (fin(1), fin(7)));
        let q = SzmielewInvariants::rationals();
        assert_eq!(p_local_sizes(&q, 3), (fin(1), fin(1)));
        let mut data = PrimeData::default();
        data.lambda = Card::Omega;
        let g = SzmielewInvariants::new([(5, data)].into(), Card::Zero).unwrap();
        assert_eq!(p_local_sizes(&g, 5), (Size::Infinite, fin(1)));
    }

    #[test]
    fn criterion() {
        assert!(psfc_check(&SzmielewInvariants::cyclic(25)).passes);
        let v = psfc_check(&SzmielewInvariants::finite_abelian(&[(2, 1), (2, 1)]).unwrap());
        assert_eq!((v.passes, v.failing_prime), (false, Some(2)));
        let adic = SzmielewInvariants::trivial().with_prufer(3).unwrap().with_padic(3).unwrap();
        assert!(psfc_check(&adic).passes);
        assert!(!psfc_check(&SzmielewInvariants::trivial().with_padic(3).unwrap()).passes);
        assert!(psfc_check(&SzmielewInvariants::rationals()).passes);
    }

    #[test]
    fn classification() {
        let c = classify(&SzmielewInvariants::cyclic(25)).unwrap();
        assert_eq!(c.p_set, [(5, 2)].into());
        assert!(c.q_set.is_empty() && c.finite);
        let adic = SzmielewInvariants::trivial().with_prufer(3).unwrap().with_padic(3).unwrap();
        assert_eq!(classify(&adic).unwrap().q_set, vec![3]);
        let q = classify(&SzmielewInvariants::rationals()).unwrap();
        assert!(q.p_set.is_empty() && q.q_set.is_empty());
        assert_eq!(q.epsilon0, Card::Omega);
        assert_eq!(
            classify(&SzmielewInvariants::finite_abelian(&[(2, 1), (2, 1)]).unwrap()),
            Err(SzError::CriterionFails(2))
        );
    }

    #[test]
    fn witnesses() {
        let z8 = SzmielewInvariants::cyclic(8).with_epsilon(true);
        assert_eq!(witness_factors(&z8, 1).unwrap().order, BigInt::from(24));
        assert_eq!(witness_factors(&z8, 2).unwrap().order, BigInt::from(1800));
        let adic = SzmielewInvariants::trivial().with_prufer(3).unwrap().with_padic(3).unwrap();
        assert_eq!(witness_factors(&adic, 2).unwrap().order, BigInt::from(9));
        assert_eq!(witness_factors(&SzmielewInvariants::cyclic(8), 5).unwrap().order, BigInt::from(8));
        assert_eq!(witness_factors(&z8, 0), Err(SzError::ZeroIndex));
    }

    #[test]
    fn json_shape() {
        let src = r#"{"primes":{"2":{"finite":[[3,1]],"lambda":0,"nu":0}},"epsilon":"omega"}"#;
        let g: SzmielewInvariants = serde_json::from_str(src).unwrap();
        assert_eq!(g, SzmielewInvariants::cyclic(8).with_epsilon(true));
        assert_eq!(serde_json::to_string(&g).unwrap(), src);
        assert!(serde_json::from_str::<SzmielewInvariants>(r#"{"primes":{"4":{}}}"#).is_err());
        assert!(serde_json::from_str::<SzmielewInvariants>(r#"{"epsilon":3}"#).is_err());
    }
}
