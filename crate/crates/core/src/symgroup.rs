//! A computable fragment of a multiplicative group `K^×`.
//!
//! Elements are pairs `(t, v)` where `t ∈ Q/Z` encodes a root of unity
//! additively (`a/b` stands for a power of a primitive `b`-th root) and `v` is a
//! finitely supported rational vector over named symbols, the divisible
//! torsion-free part. The group law is componentwise addition with `t`
//! reduced mod 1.
//!
//! In characteristic `p` there are no nontrivial `p`-power roots of unity, so
//! torsion denominators must be coprime to `p`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intlinalg::{rational, solve_integral, IntMatrix, RatVector};
use crate::json;
use crate::numtheory::is_prime;

/// Free part: symbol name to nonzero rational coefficient.
pub type FreePart = BTreeMap<String, BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u64, u64),
    #[error("characteristic {0} is neither 0 nor a prime")]
    BadCharacteristic(u64),
    #[error("torsion denominator {den} is divisible by the characteristic {p}")]
    TorsionNotCoprime { den: BigInt, p: u64 },
    #[error("no {n}-th roots: characteristic {p} divides {n}")]
    CharacteristicDividesRoot { n: BigInt, p: u64 },
    #[error("root index must be positive, got {0}")]
    NonPositiveRoot(BigInt),
    #[error("invalid symbol name {0:?}")]
    InvalidSymbol(String),
    #[error("element is not in the divisible hull of the subgroup and tuple")]
    NotInDivisibleHull,
    #[error("tuple is not multiplicatively independent over the subgroup")]
    NotIndependent,
}

pub fn is_valid_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_char(p: u64) -> Result<(), SymError> {
    if p == 0 || is_prime(p) {
        Ok(())
    } else {
        Err(SymError::BadCharacteristic(p))
    }
}

fn frac_part(q: &BigRational) -> BigRational {
    q - q.floor()
}

fn add_free(a: &FreePart, b: &FreePart, scale_b: &BigRational) -> FreePart {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.entry(k.clone()).or_insert_with(BigRational::zero);
        *e += v * scale_b;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn scale_free(a: &FreePart, s: &BigRational) -> FreePart {
    if s.is_zero() {
        return FreePart::new();
    }
    a.iter().map(|(k, v)| (k.clone(), v * s)).collect()
}

/// An element `(torsion, free)` of the symbolic group.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SymRepr", into = "SymRepr")]
pub struct SymElement {
    torsion: BigRational,
    free: FreePart,
    characteristic: u64,
}

#[derive(Serialize, Deserialize)]
struct SymRepr {
    torsion: json::Rat,
    #[serde(default)]
    free: BTreeMap<String, json::Rat>,
    #[serde(rename = "char", default)]
    characteristic: u64,
}

impl TryFrom<SymRepr> for SymElement {
    type Error = SymError;
    fn try_from(r: SymRepr) -> Result<Self, SymError> {
        SymElement::new(r.torsion.0, r.free.into_iter().map(|(k, v)| (k, v.0)).collect(), r.characteristic)
    }
}

impl From<SymElement> for SymRepr {
    fn from(x: SymElement) -> Self {
        SymRepr {
            torsion: json::Rat(x.torsion),
            free: x.free.into_iter().map(|(k, v)| (k, json::Rat(v))).collect(),
            characteristic: x.characteristic,
        }
    }
}

impl fmt::Debug for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {{", json::rat_to_string(&self.torsion))?;
        for (i, (k, v)) in self.free.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}", k, json::rat_to_string(v))?;
        }
        f.write_str("})")?;
        if self.characteristic != 0 {
            write!(f, "_char{}", self.characteristic)?;
        }
        Ok(())
    }
}

/// Group operations accepted by [`arith`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupOp {
    Mul,
    Inv,
    IntPow(BigInt),
}

impl SymElement {
    pub fn new(torsion: BigRational, mut free: FreePart, characteristic: u64) -> Result<Self, SymError> {
        check_char(characteristic)?;
        if let Some(bad) = free.keys().find(|k| !is_valid_symbol(k)) {
            return Err(SymError::InvalidSymbol(bad.clone()));
        }
        free.retain(|_, v| !v.is_zero());
        let torsion = frac_part(&torsion);
        if characteristic != 0 && torsion.denom().is_multiple_of(&BigInt::from(characteristic)) {
            return Err(SymError::TorsionNotCoprime { den: torsion.denom().clone(), p: characteristic });
        }
        Ok(SymElement { torsion, free, characteristic })
    }

    pub fn identity(characteristic: u64) -> Self {
        SymElement { torsion: BigRational::zero(), free: FreePart::new(), characteristic }
    }

    /// The root of unity encoded by `num/den`.
    pub fn root_of_unity(num: i64, den: i64, characteristic: u64) -> Result<Self, SymError> {
        Self::new(BigRational::new(num.into(), den.into()), FreePart::new(), characteristic)
    }

    /// The basis element named `name`.
    pub fn symbol(name: &str, characteristic: u64) -> Result<Self, SymError> {
        let mut free = FreePart::new();
        free.insert(name.to_string(), BigRational::one());
        Self::new(BigRational::zero(), free, characteristic)
    }

    /// Literal shorthand in characteristic 0: `from_parts((1, 3), &[("x", 3, 4)])`
    /// is `(1/3, {x: 3/4})`. Panics on invalid input.
    pub fn from_parts(torsion: (i64, i64), free: &[(&str, i64, i64)]) -> Self {
        let free = free
            .iter()
            .map(|&(k, n, d)| (k.to_string(), BigRational::new(n.into(), d.into())))
            .collect();
        Self::new(BigRational::new(torsion.0.into(), torsion.1.into()), free, 0).expect("valid literal")
    }

    pub fn torsion(&self) -> &BigRational {
        &self.torsion
    }

    pub fn free(&self) -> &FreePart {
        &self.free
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_identity(&self) -> bool {
        self.torsion.is_zero() && self.free.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &String> {
        self.free.keys()
    }

    fn same_char(&self, other: &SymElement) -> Result<(), SymError> {
        if self.characteristic == other.characteristic {
            Ok(())
        } else {
            Err(SymError::CharacteristicMismatch(self.characteristic, other.characteristic))
        }
    }

    pub fn mul(&self, other: &SymElement) -> Result<SymElement, SymError> {
        self.same_char(other)?;
        Ok(SymElement {
            torsion: frac_part(&(&self.torsion + &other.torsion)),
            free: add_free(&self.free, &other.free, &BigRational::one()),
            characteristic: self.characteristic,
        })
    }

    pub fn inv(&self) -> SymElement {
        SymElement {
            torsion: frac_part(&-&self.torsion),
            free: scale_free(&self.free, &-BigRational::one()),
            characteristic: self.characteristic,
        }
    }

    pub fn pow(&self, n: &BigInt) -> SymElement {
        let s = BigRational::from_integer(n.clone());
        SymElement {
            torsion: frac_part(&(&self.torsion * &s)),
            free: scale_free(&self.free, &s),
            characteristic: self.characteristic,
        }
    }

    pub fn pow_i64(&self, n: i64) -> SymElement {
        self.pow(&BigInt::from(n))
    }

    pub fn div(&self, other: &SymElement) -> Result<SymElement, SymError> {
        self.mul(&other.inv())
    }

    /// The canonical `n`-th root (torsion shift 0) and the number of roots.
    pub fn canonical_nth_root(&self, n: &BigInt) -> Result<(SymElement, BigInt), SymError> {
        if !n.is_positive() {
            return Err(SymError::NonPositiveRoot(n.clone()));
        }
        if self.characteristic != 0 && n.is_multiple_of(&BigInt::from(self.characteristic)) {
            return Err(SymError::CharacteristicDividesRoot { n: n.clone(), p: self.characteristic });
        }
        let inv = BigRational::new(BigInt::one(), n.clone());
        let root = SymElement {
            torsion: &self.torsion * &inv,
            free: scale_free(&self.free, &inv),
            characteristic: self.characteristic,
        };
        Ok((root, n.clone()))
    }

    /// Rational power `x^q` on the canonical branch: both components scaled by
    /// `q`. Only meaningful where the caller fixes that branch.
    pub(crate) fn rational_scale(&self, q: &BigRational) -> SymElement {
        SymElement {
            torsion: frac_part(&(&self.torsion * q)),
            free: scale_free(&self.free, q),
            characteristic: self.characteristic,
        }
    }
}

/// `x op y` for the three group operations (`y` is ignored by unary ones).
pub fn arith(x: &SymElement, y: &SymElement, op: &GroupOp) -> Result<SymElement, SymError> {
    x.same_char(y)?;
    match op {
        GroupOp::Mul => x.mul(y),
        GroupOp::Inv => Ok(x.inv()),
        GroupOp::IntPow(n) => Ok(x.pow(n)),
    }
}

/// Product `Π xᵢ^{eᵢ}`.
pub fn power_product(
    characteristic: u64,
    factors: &[SymElement],
    exps: &[BigInt],
) -> Result<SymElement, SymError> {
    let mut acc = SymElement::identity(characteristic);
    for (x, e) in factors.iter().zip(exps) {
        acc = acc.mul(&x.pow(e))?;
    }
    Ok(acc)
}

/// A divisibly closed subgroup `C = μ_∞ ⊕ V` where `V` is a finite-dimensional
/// Q-subspace of the free part.
///
/// `V` is kept as a reduced row echelon basis over the sorted symbols, so each
/// basis vector has a pivot symbol with coefficient 1 that is zero in every
/// other basis vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "DivRepr", into = "DivRepr")]
pub struct DivSubgroup {
    characteristic: u64,
    basis: Vec<FreePart>,
    pivots: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct DivRepr {
    #[serde(rename = "char", default)]
    characteristic: u64,
    #[serde(default)]
    span: Vec<BTreeMap<String, json::Rat>>,
}

impl TryFrom<DivRepr> for DivSubgroup {
    type Error = SymError;
    fn try_from(r: DivRepr) -> Result<Self, SymError> {
        let vecs: Vec<FreePart> =
            r.span.into_iter().map(|m| m.into_iter().map(|(k, v)| (k, v.0)).collect()).collect();
        DivSubgroup::spanned_by(r.characteristic, &vecs)
    }
}

impl From<DivSubgroup> for DivRepr {
    fn from(c: DivSubgroup) -> Self {
        DivRepr {
            characteristic: c.characteristic,
            span: c
                .basis
                .into_iter()
                .map(|m| m.into_iter().map(|(k, v)| (k, json::Rat(v))).collect())
                .collect(),
        }
    }
}

pub(crate) fn symbol_universe<'a>(vecs: impl IntoIterator<Item = &'a FreePart>) -> Vec<String> {
    let set: BTreeSet<&String> = vecs.into_iter().flat_map(|v| v.keys()).collect();
    set.into_iter().cloned().collect()
}

pub(crate) fn to_dense(v: &FreePart, symbols: &[String]) -> Vec<BigRational> {
    symbols.iter().map(|s| v.get(s).cloned().unwrap_or_else(BigRational::zero)).collect()
}

fn from_dense(v: &[BigRational], symbols: &[String]) -> FreePart {
    symbols
        .iter()
        .zip(v)
        .filter(|(_, q)| !q.is_zero())
        .map(|(s, q)| (s.clone(), q.clone()))
        .collect()
}

impl DivSubgroup {
    /// `⟨∅⟩^div = μ_∞`.
    pub fn torsion_only(characteristic: u64) -> Self {
        DivSubgroup { characteristic, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by(characteristic: u64, vecs: &[FreePart]) -> Result<Self, SymError> {
        check_char(characteristic)?;
        if let Some(bad) = vecs.iter().flat_map(|v| v.keys()).find(|k| !is_valid_symbol(k)) {
            return Err(SymError::InvalidSymbol(bad.clone()));
        }
        let symbols = symbol_universe(vecs);
        let dense: Vec<Vec<BigRational>> = vecs.iter().map(|v| to_dense(v, &symbols)).collect();
        let (red, piv) = rational::rref(&dense, symbols.len());
        Ok(DivSubgroup {
            characteristic,
            basis: red.iter().map(|r| from_dense(r, &symbols)).collect(),
            pivots: piv.into_iter().map(|i| symbols[i].clone()).collect(),
        })
    }

    /// The divisible hull of the given elements (torsion is always included).
    pub fn generated_by(characteristic: u64, elems: &[SymElement]) -> Result<Self, SymError> {
        for e in elems {
            if e.characteristic != characteristic {
                return Err(SymError::CharacteristicMismatch(characteristic, e.characteristic));
            }
        }
        let vecs: Vec<FreePart> = elems.iter().map(|e| e.free.clone()).collect();
        Self::spanned_by(characteristic, &vecs)
    }

    /// Divisible hull spanned by the named symbols.
    pub fn of_symbols(characteristic: u64, names: &[&str]) -> Result<Self, SymError> {
        let elems = names
            .iter()
            .map(|n| SymElement::symbol(n, characteristic))
            .collect::<Result<Vec<_>, _>>()?;
        Self::generated_by(characteristic, &elems)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FreePart] {
        &self.basis
    }

    /// Pivot symbol of each basis vector; names the vector in hom images.
    pub fn pivots(&self) -> &[String] {
        &self.pivots
    }

    /// The basis vectors as group elements with trivial torsion.
    pub fn basis_elements(&self) -> Vec<SymElement> {
        self.basis
            .iter()
            .map(|v| SymElement { torsion: BigRational::zero(), free: v.clone(), characteristic: self.characteristic })
            .collect()
    }

    fn check_elem(&self, x: &SymElement) -> Result<(), SymError> {
        if x.characteristic == self.characteristic {
            Ok(())
        } else {
            Err(SymError::CharacteristicMismatch(self.characteristic, x.characteristic))
        }
    }

    /// Representative of `v` modulo the span: pivot coordinates eliminated.
    pub fn reduce(&self, v: &FreePart) -> FreePart {
        let mut out = v.clone();
        for (b, p) in self.basis.iter().zip(&self.pivots) {
            if let Some(c) = out.get(p).cloned() {
                out = add_free(&out, b, &-c);
            }
        }
        out
    }

    /// Coordinates of `v` in the basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &FreePart) -> Option<Vec<BigRational>> {
        if !self.reduce(v).is_empty() {
            return None;
        }
        Some(self.pivots.iter().map(|p| v.get(p).cloned().unwrap_or_else(BigRational::zero)).collect())
    }

    pub fn contains_free(&self, v: &FreePart) -> bool {
        self.reduce(v).is_empty()
    }

    /// Membership in `C`; torsion is always absorbed.
    pub fn is_member(&self, x: &SymElement) -> Result<bool, SymError> {
        self.check_elem(x)?;
        Ok(self.contains_free(&x.free))
    }

    /// Whether the free parts of `a` are linearly independent modulo the span.
    pub fn is_independent(&self, a: &[SymElement]) -> Result<bool, SymError> {
        for x in a {
            self.check_elem(x)?;
        }
        let reduced: Vec<FreePart> = a.iter().map(|x| self.reduce(&x.free)).collect();
        let symbols = symbol_universe(&reduced);
        let dense: Vec<Vec<BigRational>> = reduced.iter().map(|v| to_dense(v, &symbols)).collect();
        Ok(rational::rank(&dense, symbols.len()) == a.len())
    }

    /// Rational coordinates `q` with `free(x) ∈ span(C) + Σ qⱼ·free(aⱼ)`.
    ///
    /// `a` must be independent over `C`; returns `None` when `x` is outside the
    /// divisible hull of `C ∪ a`.
    pub fn hull_coordinates(&self, a: &[SymElement], x: &SymElement) -> Result<Option<RatVector>, SymError> {
        self.check_elem(x)?;
        if !self.is_independent(a)? {
            return Err(SymError::NotIndependent);
        }
        let reduced: Vec<FreePart> = a.iter().map(|y| self.reduce(&y.free)).collect();
        let target = self.reduce(&x.free);
        if a.is_empty() {
            return Ok(target.is_empty().then(RatVector::default));
        }
        let symbols = symbol_universe(reduced.iter().chain(std::iter::once(&target)));
        let dense: Vec<Vec<BigRational>> = reduced.iter().map(|v| to_dense(v, &symbols)).collect();
        Ok(rational::solve_independent(&dense, &to_dense(&target, &symbols)).map(RatVector))
    }

    /// Integer exponents `e` with `x ∈ C · Π gⱼ^{eⱼ}`, for arbitrary (possibly
    /// dependent) generators. `None` when `x ∉ ⟨C, g⟩`.
    pub fn decompose(&self, gens: &[SymElement], x: &SymElement) -> Result<Option<Vec<BigInt>>, SymError> {
        self.check_elem(x)?;
        for g in gens {
            self.check_elem(g)?;
        }
        let reduced: Vec<FreePart> = gens.iter().map(|y| self.reduce(&y.free)).collect();
        let target = self.reduce(&x.free);
        let symbols = symbol_universe(reduced.iter().chain(std::iter::once(&target)));
        if symbols.is_empty() {
            return Ok(Some(vec![BigInt::zero(); gens.len()]));
        }
        if gens.is_empty() {
            return Ok(None);
        }
        let rows: Vec<RatVector> = reduced.iter().map(|v| RatVector(to_dense(v, &symbols))).collect();
        let tgt = RatVector(to_dense(&target, &symbols));
        let den = rows.iter().chain(std::iter::once(&tgt)).fold(BigInt::one(), |acc, r| acc.lcm(&r.common_denominator()));
        let scale = |r: &RatVector| -> Vec<BigInt> {
            r.0.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect()
        };
        let m = IntMatrix::from_rows(symbols.len(), rows.iter().map(scale).collect()).expect("consistent widths");
        Ok(solve_integral(&m, &scale(&tgt)).expect("consistent widths"))
    }

    /// The divisible hull of `self` together with extra elements.
    pub(crate) fn span_with(&self, extra: &[SymElement]) -> Result<DivSubgroup, SymError> {
        let mut vecs = self.basis.clone();
        vecs.extend(extra.iter().map(|e| e.free.clone()));
        DivSubgroup::spanned_by(self.characteristic, &vecs)
    }

    /// Dimension of the intersection of two spans.
    pub fn intersection_dim(&self, other: &DivSubgroup) -> usize {
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        let sum = DivSubgroup::spanned_by(self.characteristic, &vecs).expect("valid symbols");
        self.dim() + other.dim() - sum.dim()
    }

    pub fn contains_subgroup(&self, other: &DivSubgroup) -> bool {
        other.basis.iter().all(|v| self.contains_free(v))
    }
}

/// Result of [`order_over`]: `bⁿ = cpart · Π aⱼ^{lⱼ}` with `n` minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderOver {
    pub n: BigInt,
    pub l: Vec<BigInt>,
    pub cpart: SymElement,
}

/// Order of `b` over `⟨C a⟩`: the least `n > 0` with `bⁿ ∈ ⟨C a⟩`, together
/// with the exponents and the `C`-part of the resulting relation.
///
/// Writing `free(b) = v + Σ qⱼ·free(aⱼ)` with `v ∈ span(C)`, the order is the
/// lcm of the denominators of the `qⱼ`, and then `gcd(n, l) = 1`.
pub fn order_over(c: &DivSubgroup, a: &[SymElement], b: &SymElement) -> Result<OrderOver, SymError> {
    let q = c.hull_coordinates(a, b)?.ok_or(SymError::NotInDivisibleHull)?;
    let (n, l) = q.scale_to_integers();
    let cpart = b.pow(&n).mul(&power_product(c.characteristic, a, &l)?.inv())?;
    debug_assert!(c.contains_free(&cpart.free));
    Ok(OrderOver { n, l, cpart })
}

/// Membership in `⟨C⟩^div`; torsion always belongs.
pub fn is_member_div(c: &DivSubgroup, x: &SymElement) -> Result<bool, SymError> {
    c.is_member(x)
}

pub fn is_independent(c: &DivSubgroup, a: &[SymElement]) -> Result<bool, SymError> {
    c.is_independent(a)
}

pub fn canonical_nth_root(x: &SymElement, n: &BigInt) -> Result<(SymElement, BigInt), SymError> {
    x.canonical_nth_root(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(t: (i64, i64), f: &[(&str, i64, i64)]) -> SymElement {
        SymElement::from_parts(t, f)
    }

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn arith_examples() {
        let a = el((1, 3), &[]);
        let x = el((0, 1), &[("x", 1, 1)]);
        assert_eq!(arith(&a, &x, &GroupOp::Mul).unwrap(), el((1, 3), &[("x", 1, 1)]));
        let ax = el((1, 3), &[("x", 1, 1)]);
        assert_eq!(arith(&ax, &ax, &GroupOp::Inv).unwrap(), el((2, 3), &[("x", -1, 1)]));
        assert_eq!(arith(&ax, &ax, &GroupOp::IntPow(bi(3))).unwrap(), el((0, 1), &[("x", 3, 1)]));
        let other = SymElement::identity(5);
        assert!(matches!(arith(&ax, &other, &GroupOp::Mul), Err(SymError::CharacteristicMismatch(0, 5))));
    }

    #[test]
    fn roots() {
        let (r, k) = el((0, 1), &[("u", 1, 1)]).canonical_nth_root(&bi(2)).unwrap();
        assert_eq!(r, el((0, 1), &[("u", 1, 2)]));
        assert_eq!(k, bi(2));
        let (r, k) = el((1, 3), &[]).canonical_nth_root(&bi(2)).unwrap();
        assert_eq!(r, el((1, 6), &[]));
        assert_eq!(k, bi(2));
        let x = SymElement::symbol("u", 2).unwrap();
        assert!(matches!(x.canonical_nth_root(&bi(2)), Err(SymError::CharacteristicDividesRoot { .. })));
        assert!(x.canonical_nth_root(&bi(3)).is_ok());
    }

    #[test]
    fn char_p_rejects_p_torsion() {
        assert!(SymElement::root_of_unity(1, 2, 2).is_err());
        assert!(SymElement::root_of_unity(1, 3, 2).is_ok());
        assert!(matches!(SymElement::identity(0).canonical_nth_root(&bi(0)), Err(SymError::NonPositiveRoot(_))));
        assert!(DivSubgroup::torsion_only(0).is_member(&SymElement::identity(3)).is_err());
        assert!(SymElement::symbol("9x", 0).is_err());
        assert!(SymElement::new(BigRational::zero(), FreePart::new(), 4).is_err());
    }

    #[test]
    fn membership() {
        let c = DivSubgroup::of_symbols(0, &["u"]).unwrap();
        assert!(is_member_div(&c, &el((1, 3), &[("u", 5, 7)])).unwrap());
        assert!(!is_member_div(&c, &el((0, 1), &[("v", 1, 1)])).unwrap());
        assert!(is_member_div(&c, &SymElement::identity(0)).unwrap());
    }

    #[test]
    fn independence() {
        let c = DivSubgroup::of_symbols(0, &["u"]).unwrap();
        assert!(is_independent(&c, &[el((0, 1), &[("x", 1, 1)])]).unwrap());
        assert!(!is_independent(&c, &[el((0, 1), &[("u", 1, 2)])]).unwrap());
        assert!(!is_independent(&c, &[el((0, 1), &[("x", 1, 1)]), el((0, 1), &[("x", 2, 1)])]).unwrap());
        // dependence only modulo C
        let a = [el((0, 1), &[("x", 1, 1), ("u", 1, 1)]), el((0, 1), &[("x", 1, 1)])];
        assert!(!is_independent(&c, &a).unwrap());
        assert!(is_independent(&DivSubgroup::torsion_only(0), &a).unwrap());
    }

    #[test]
    fn order_over_examples() {
        let c0 = DivSubgroup::torsion_only(0);
        let x = el((0, 1), &[("x", 1, 1)]);
        let o = order_over(&c0, std::slice::from_ref(&x), &el((0, 1), &[("x", 3, 4)])).unwrap();
        assert_eq!((o.n, o.l, o.cpart.is_identity()), (bi(4), vec![bi(3)], true));

        let o = order_over(&c0, std::slice::from_ref(&x), &el((1, 3), &[("x", 1, 2)])).unwrap();
        assert_eq!((o.n, o.l), (bi(2), vec![bi(1)]));
        assert_eq!(o.cpart, el((2, 3), &[]));

        let cu = DivSubgroup::of_symbols(0, &["u"]).unwrap();
        let o = order_over(&cu, std::slice::from_ref(&x), &el((0, 1), &[("u", 1, 1), ("x", 1, 1)])).unwrap();
        assert_eq!((o.n, o.l), (bi(1), vec![bi(1)]));
        assert_eq!(o.cpart, el((0, 1), &[("u", 1, 1)]));
    }

    #[test]
    fn order_over_errors() {
        let c0 = DivSubgroup::torsion_only(0);
        let x = el((0, 1), &[("x", 1, 1)]);
        assert_eq!(order_over(&c0, std::slice::from_ref(&x), &el((0, 1), &[("y", 1, 1)])), Err(SymError::NotInDivisibleHull));
        assert_eq!(order_over(&c0, &[x.clone(), x.pow_i64(2)], &x), Err(SymError::NotIndependent));
        // empty tuple: order of b over C itself
        let o = order_over(&c0, &[], &el((1, 5), &[])).unwrap();
        assert_eq!(o.n, bi(1));
    }

    #[test]
    fn decompose_dependent_generators() {
        let c0 = DivSubgroup::torsion_only(0);
        let gens = [el((0, 1), &[("x", 1, 1)]), el((0, 1), &[("x", 1, 2)])];
        let e = c0.decompose(&gens, &el((1, 7), &[("x", 5, 2)])).unwrap().unwrap();
        let back = power_product(0, &gens, &e).unwrap();
        assert_eq!(back.free(), el((0, 1), &[("x", 5, 2)]).free());
        assert_eq!(c0.decompose(&gens, &el((0, 1), &[("x", 1, 3)])).unwrap(), None);
    }

    #[test]
    fn rref_basis_and_json() {
        let c = DivSubgroup::spanned_by(
            0,
            &[el((0, 1), &[("u", 2, 1), ("v", 2, 1)]).free().clone(), el((0, 1), &[("u", 1, 1)]).free().clone()],
        )
        .unwrap();
        assert_eq!(c.pivots(), &["u".to_string(), "v".to_string()]);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"char":0,"span":[{"u":"1"},{"v":"1"}]}"#);
        let x: SymElement = serde_json::from_str(r#"{"torsion":"4/3","free":{"x":"3/4","y":"0"},"char":0}"#).unwrap();
        assert_eq!(x, el((1, 3), &[("x", 3, 4)]));
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"torsion":"1/3","free":{"x":"3/4"},"char":0}"#);
    }
}
