//! Homomorphisms of the symbolic group and their extensions.
//!
//! A [`GroupHom`] is defined on `⟨C, g₁, …, g_m⟩` where `C = μ_∞ ⊕ V` is a
//! divisible subgroup and the `gⱼ` are optional extra generators with chosen
//! images. On `C` the map is
//!
//! ```text
//! (t, Σ qᵢ vᵢ) ↦ (s·t + Σ qᵢ·torsion(imgᵢ) mod 1, Σ qᵢ·free(imgᵢ))
//! ```
//!
//! with `vᵢ` the reduced basis of `V`. On the generators it is whatever was
//! supplied; [`GroupHom::is_well_defined`] checks that every relation among
//! the generators over `C` is respected.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intlinalg::{hnf, rational, IntMatrix, RatVector};
use crate::json;
use crate::msystems::{verify_system, CompleteSystem, MsError};
use crate::symgroup::{power_product, symbol_universe, to_dense, DivSubgroup, FreePart, SymElement, SymError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("element is outside the domain")]
    OutsideDomain,
    #[error("elements are not independent over the domain")]
    NotIndependent,
    #[error("the transported system fails at the proposed images")]
    SystemViolated,
    #[error("the intersection of the two domains is larger than the base")]
    IntersectionTooLarge,
    #[error("the homomorphisms disagree on the base")]
    DisagreeOnBase,
    #[error("the base is not contained in both domains")]
    BaseNotContained,
    #[error("torsion action undefined on roots of unity of order {0}")]
    TorsionUndefined(BigInt),
    #[error("torsion residues {0} and {1} are not CRT-compatible")]
    IncompatibleFamily(BigInt, BigInt),
    #[error("no image given for basis vector with pivot {0}")]
    MissingImage(String),
    #[error("image given for {0}, which is not a pivot of the domain basis")]
    UnexpectedImage(String),
    #[error("images of dependent vectors are inconsistent")]
    InconsistentImages,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("system error: {0}")]
    System(Box<MsError>),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

impl From<MsError> for HomError {
    fn from(e: MsError) -> Self {
        match e {
            MsError::Sym(s) => HomError::Sym(s),
            MsError::Hom(h) => h,
            other => HomError::System(Box::new(other)),
        }
    }
}

/// Action on `μ_∞`, written additively on `Q/Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionAction {
    /// `t ↦ s·t mod 1`.
    Exponent(BigInt),
    /// `t ↦ s_m·t mod 1` for `t` of order dividing `m`; residues must agree
    /// modulo the gcd of their keys.
    Family(BTreeMap<BigInt, BigInt>),
}

fn frac(q: &BigRational) -> BigRational {
    q - q.floor()
}

impl TorsionAction {
    pub fn validate(&self, characteristic: u64) -> Result<(), HomError> {
        let TorsionAction::Family(fam) = self else {
            return Ok(());
        };
        for m in fam.keys() {
            if !m.is_positive() {
                return Err(HomError::TorsionUndefined(m.clone()));
            }
            if characteristic != 0 && m.is_multiple_of(&BigInt::from(characteristic)) {
                return Err(SymError::TorsionNotCoprime { den: m.clone(), p: characteristic }.into());
            }
        }
        for (m1, s1) in fam {
            for (m2, s2) in fam.range(m1..).skip(1) {
                if !(s1 - s2).is_multiple_of(&m1.gcd(m2)) {
                    return Err(HomError::IncompatibleFamily(m1.clone(), m2.clone()));
                }
            }
        }
        Ok(())
    }

    /// Image of the torsion value `t ∈ Q/Z`.
    pub fn act(&self, t: &BigRational) -> Result<BigRational, HomError> {
        match self {
            TorsionAction::Exponent(s) => Ok(frac(&(t * BigRational::from_integer(s.clone())))),
            TorsionAction::Family(fam) => {
                let den = t.denom();
                let (_, s) = fam
                    .iter()
                    .find(|(m, _)| m.is_multiple_of(den))
                    .ok_or_else(|| HomError::TorsionUndefined(den.clone()))?;
                Ok(frac(&(t * BigRational::from_integer(s.clone()))))
            }
        }
    }

    /// Whether the two actions coincide wherever both are defined.
    pub fn agrees_with(&self, other: &TorsionAction) -> bool {
        match (self, other) {
            (TorsionAction::Exponent(a), TorsionAction::Exponent(b)) => a == b,
            _ => {
                let keys: BTreeSet<BigInt> = [self, other]
                    .iter()
                    .filter_map(|a| match a {
                        TorsionAction::Family(f) => Some(f.keys().cloned()),
                        TorsionAction::Exponent(_) => None,
                    })
                    .flatten()
                    .collect();
                keys.iter().all(|m| {
                    let t = BigRational::new(BigInt::one(), m.clone());
                    matches!((self.act(&t), other.act(&t)), (Ok(x), Ok(y)) if x == y)
                })
            }
        }
    }
}

/// An extra generator of the domain together with its image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomGenerator {
    pub element: SymElement,
    pub image: SymElement,
}

/// A multiplicative relation `Π xᵢ^{eᵢ} = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub factors: Vec<(SymElement, json::Num)>,
}

impl Relation {
    pub fn new(factors: impl IntoIterator<Item = (SymElement, BigInt)>) -> Self {
        Relation { factors: factors.into_iter().map(|(x, e)| (x, json::Num(e))).collect() }
    }

    pub fn evaluate(&self, characteristic: u64) -> Result<SymElement, SymError> {
        let (xs, es): (Vec<SymElement>, Vec<BigInt>) = self.factors.iter().map(|(x, e)| (x.clone(), e.0.clone())).unzip();
        power_product(characteristic, &xs, &es)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HomRepr", into = "HomRepr")]
pub struct GroupHom {
    base: DivSubgroup,
    torsion: TorsionAction,
    /// Image of each reduced basis vector of the base, keyed by its pivot.
    free_images: BTreeMap<String, SymElement>,
    generators: Vec<HomGenerator>,
}

#[derive(Serialize, Deserialize)]
struct HomRepr {
    domain: DivSubgroup,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    torsion_exponent: Option<json::Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    torsion_family: Option<BTreeMap<String, json::Int>>,
    #[serde(default)]
    free_images: BTreeMap<String, SymElement>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    generators: Vec<HomGenerator>,
}

impl TryFrom<HomRepr> for GroupHom {
    type Error = HomError;
    fn try_from(r: HomRepr) -> Result<Self, HomError> {
        let torsion = match (r.torsion_exponent, r.torsion_family) {
            (Some(_), Some(_)) => {
                return Err(HomError::Precondition("give either torsion_exponent or torsion_family".into()))
            }
            (Some(s), None) => TorsionAction::Exponent(s.0),
            (None, Some(f)) => {
                let mut fam = BTreeMap::new();
                for (k, v) in f {
                    let m: BigInt =
                        k.parse().map_err(|_| HomError::Precondition(format!("bad torsion family key {k:?}")))?;
                    fam.insert(m, v.0);
                }
                TorsionAction::Family(fam)
            }
            (None, None) => TorsionAction::Exponent(BigInt::one()),
        };
        Ok(GroupHom::new(r.domain, torsion, r.free_images)?.adjoin(r.generators))
    }
}

impl From<GroupHom> for HomRepr {
    fn from(h: GroupHom) -> Self {
        let (torsion_exponent, torsion_family) = match h.torsion {
            TorsionAction::Exponent(s) => (Some(json::Int(s)), None),
            TorsionAction::Family(f) => {
                (None, Some(f.into_iter().map(|(k, v)| (k.to_string(), json::Int(v))).collect()))
            }
        };
        HomRepr { domain: h.base, torsion_exponent, torsion_family, free_images: h.free_images, generators: h.generators }
    }
}

fn product_of_scaled(characteristic: u64, parts: &[(&SymElement, &BigRational)]) -> Result<SymElement, SymError> {
    let mut acc = SymElement::identity(characteristic);
    for (x, q) in parts {
        acc = acc.mul(&x.rational_scale(q))?;
    }
    Ok(acc)
}

impl GroupHom {
    pub fn new(
        base: DivSubgroup,
        torsion: TorsionAction,
        free_images: BTreeMap<String, SymElement>,
    ) -> Result<Self, HomError> {
        let p = base.characteristic();
        torsion.validate(p)?;
        for pivot in base.pivots() {
            if !free_images.contains_key(pivot) {
                return Err(HomError::MissingImage(pivot.clone()));
            }
        }
        for (k, img) in &free_images {
            if !base.pivots().contains(k) {
                return Err(HomError::UnexpectedImage(k.clone()));
            }
            if img.characteristic() != p {
                return Err(SymError::CharacteristicMismatch(p, img.characteristic()).into());
            }
        }
        Ok(GroupHom { base, torsion, free_images, generators: Vec::new() })
    }

    /// `x ↦ x^s` on `C`.
    pub fn power(base: DivSubgroup, s: impl Into<BigInt>) -> Self {
        let s = s.into();
        let free_images = base
            .pivots()
            .iter()
            .cloned()
            .zip(base.basis_elements().into_iter().map(|e| e.pow(&s)))
            .collect();
        GroupHom { base, torsion: TorsionAction::Exponent(s), free_images, generators: Vec::new() }
    }

    pub fn identity(base: DivSubgroup) -> Self {
        Self::power(base, 1)
    }

    /// The unique map on the span of `pairs` sending each free vector to the
    /// paired image, extended Q-linearly on the canonical branch.
    pub fn from_spanning_images(
        characteristic: u64,
        torsion: TorsionAction,
        pairs: &[(FreePart, SymElement)],
    ) -> Result<Self, HomError> {
        let vecs: Vec<FreePart> = pairs.iter().map(|(v, _)| v.clone()).collect();
        let base = DivSubgroup::spanned_by(characteristic, &vecs)?;
        let symbols = symbol_universe(&vecs);
        let dense: Vec<Vec<BigRational>> = vecs.iter().map(|v| to_dense(v, &symbols)).collect();

        let mut chosen: Vec<usize> = Vec::new();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for (i, row) in dense.iter().enumerate() {
            rows.push(row.clone());
            if rational::rank(&rows, symbols.len()) == rows.len() {
                chosen.push(i);
            } else {
                rows.pop();
            }
        }
        let image_of = |target: &[BigRational]| -> Result<SymElement, HomError> {
            let q = rational::solve_independent(&rows, target).ok_or(HomError::InternalInvariant("vector outside span".into()))?;
            let parts: Vec<(&SymElement, &BigRational)> = chosen.iter().map(|&i| &pairs[i].1).zip(q.iter()).collect();
            Ok(product_of_scaled(characteristic, &parts)?)
        };
        for (i, (_, img)) in pairs.iter().enumerate() {
            if !chosen.contains(&i) && &image_of(&dense[i])? != img {
                return Err(HomError::InconsistentImages);
            }
        }
        let mut free_images = BTreeMap::new();
        for (pivot, b) in base.pivots().iter().zip(base.basis()) {
            free_images.insert(pivot.clone(), image_of(&to_dense(b, &symbols))?);
        }
        GroupHom::new(base, torsion, free_images)
    }

    /// Adds generators without checking relations; see [`GroupHom::is_well_defined`].
    pub fn adjoin(mut self, gens: impl IntoIterator<Item = HomGenerator>) -> Self {
        self.generators.extend(gens);
        self
    }

    pub fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    pub fn base(&self) -> &DivSubgroup {
        &self.base
    }

    pub fn torsion(&self) -> &TorsionAction {
        &self.torsion
    }

    pub fn free_images(&self) -> &BTreeMap<String, SymElement> {
        &self.free_images
    }

    pub fn generators(&self) -> &[HomGenerator] {
        &self.generators
    }

    pub fn restrict_to_base(&self) -> GroupHom {
        GroupHom { generators: Vec::new(), ..self.clone() }
    }

    fn generator_elements(&self) -> Vec<SymElement> {
        self.generators.iter().map(|g| g.element.clone()).collect()
    }

    /// Divisible hull of the domain.
    pub fn domain_hull(&self) -> Result<DivSubgroup, HomError> {
        Ok(self.base.span_with(&self.generator_elements())?)
    }

    /// Symbols occurring in the base basis or the generators.
    pub fn domain_symbols(&self) -> BTreeSet<String> {
        let mut out: BTreeSet<String> = self.base.basis().iter().flat_map(|v| v.keys().cloned()).collect();
        out.extend(self.generators.iter().flat_map(|g| g.element.symbols().cloned()));
        out
    }

    pub fn contains(&self, x: &SymElement) -> Result<bool, HomError> {
        Ok(self.base.decompose(&self.generator_elements(), x)?.is_some())
    }

    fn apply_base(&self, c: &SymElement) -> Result<SymElement, HomError> {
        let coords = self.base.coordinates(c.free()).ok_or(HomError::OutsideDomain)?;
        let tor = SymElement::new(self.torsion.act(c.torsion())?, FreePart::new(), self.characteristic())?;
        let parts: Vec<(&SymElement, &BigRational)> =
            self.base.pivots().iter().map(|p| &self.free_images[p]).zip(coords.iter()).collect();
        Ok(tor.mul(&product_of_scaled(self.characteristic(), &parts)?)?)
    }

    pub fn apply(&self, x: &SymElement) -> Result<SymElement, HomError> {
        if x.characteristic() != self.characteristic() {
            return Err(SymError::CharacteristicMismatch(self.characteristic(), x.characteristic()).into());
        }
        if let Some(g) = self.generators.iter().find(|g| &g.element == x) {
            return Ok(g.image.clone());
        }
        if self.generators.is_empty() {
            return self.apply_base(x);
        }
        let gens = self.generator_elements();
        let e = self.base.decompose(&gens, x)?.ok_or(HomError::OutsideDomain)?;
        let p = self.characteristic();
        let rest = x.mul(&power_product(p, &gens, &e)?.inv())?;
        let imgs: Vec<SymElement> = self.generators.iter().map(|g| g.image.clone()).collect();
        Ok(self.apply_base(&rest)?.mul(&power_product(p, &imgs, &e)?)?)
    }

    /// Basis of the integer lattice `{e : Π gⱼ^{eⱼ} ∈ C}`.
    fn relation_lattice(&self, gens: &[SymElement]) -> Vec<Vec<BigInt>> {
        let reduced: Vec<FreePart> = gens.iter().map(|g| self.base.reduce(g.free())).collect();
        let symbols = symbol_universe(&reduced);
        if symbols.is_empty() {
            return IntMatrix::identity(gens.len()).row_vecs();
        }
        let rows: Vec<RatVector> = reduced.iter().map(|v| RatVector(to_dense(v, &symbols))).collect();
        let den = rows.iter().fold(BigInt::one(), |d, r| d.lcm(&r.common_denominator()));
        let ints: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.0.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect())
            .collect();
        let m = IntMatrix::from_rows(symbols.len(), ints).expect("consistent widths");
        let (h, u) = hnf(&m);
        (0..h.rows()).filter(|&i| h.row(i).iter().all(Zero::is_zero)).map(|i| u.row(i).to_vec()).collect()
    }

    /// A generating set of the relations among the generators over the base:
    /// one relation `Π gⱼ^{eⱼ} · c⁻¹ = 1` per basis vector `e` of the integer
    /// lattice `{e : Π gⱼ^{eⱼ} ∈ C}`.
    pub fn relations(&self) -> Result<Vec<Relation>, HomError> {
        let gens = self.generator_elements();
        if gens.is_empty() {
            return Ok(Vec::new());
        }
        let p = self.characteristic();
        let mut out = Vec::new();
        for e in self.relation_lattice(&gens) {
            let c = power_product(p, &gens, &e)?;
            let mut factors: Vec<(SymElement, BigInt)> =
                gens.iter().cloned().zip(e).filter(|(_, x)| !x.is_zero()).collect();
            factors.push((c, BigInt::from(-1)));
            out.push(Relation::new(factors));
        }
        Ok(out)
    }

    /// Whether every relation among the generators is respected: generator
    /// images on one side, the base map on the other. Unlike evaluating
    /// [`GroupHom::relations`] through [`GroupHom::apply`], this also catches
    /// generators lying in the base with a conflicting image.
    pub fn is_well_defined(&self) -> Result<bool, HomError> {
        let gens = self.generator_elements();
        if gens.is_empty() {
            return Ok(true);
        }
        let p = self.characteristic();
        let imgs: Vec<SymElement> = self.generators.iter().map(|g| g.image.clone()).collect();
        for e in self.relation_lattice(&gens) {
            let c = power_product(p, &gens, &e)?;
            if power_product(p, &imgs, &e)? != self.apply_base(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `h(x)`.
pub fn apply(h: &GroupHom, x: &SymElement) -> Result<SymElement, HomError> {
    h.apply(x)
}

/// True iff every relation maps to the identity under `h`.
pub fn verify_hom(h: &GroupHom, relations: &[Relation]) -> Result<bool, HomError> {
    for rel in relations {
        let mut acc = SymElement::identity(h.characteristic());
        for (x, e) in &rel.factors {
            acc = acc.mul(&h.apply(x)?.pow(&e.0))?;
        }
        if !acc.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_lengths(xs: &[SymElement], ys: &[SymElement]) -> Result<(), HomError> {
    if xs.len() != ys.len() {
        return Err(HomError::Precondition(format!("{} elements but {} images", xs.len(), ys.len())));
    }
    Ok(())
}

fn generators(xs: &[SymElement], ys: &[SymElement]) -> Vec<HomGenerator> {
    xs.iter().zip(ys).map(|(e, i)| HomGenerator { element: e.clone(), image: i.clone() }).collect()
}

/// Extends `theta` to `⟨domain, a⟩` by `aᵢ ↦ a_imgᵢ`.
pub fn extend_over_independent(
    theta: &GroupHom,
    a: &[SymElement],
    a_img: &[SymElement],
) -> Result<GroupHom, HomError> {
    check_lengths(a, a_img)?;
    if !theta.domain_hull()?.is_independent(a)? {
        return Err(HomError::NotIndependent);
    }
    for y in a_img {
        if y.characteristic() != theta.characteristic() {
            return Err(SymError::CharacteristicMismatch(theta.characteristic(), y.characteristic()).into());
        }
    }
    Ok(theta.clone().adjoin(generators(a, a_img)))
}

/// Extends `theta : C → K'` to `⟨C a b⟩` by `a ↦ a_img`, `b ↦ b_img`, where
/// `(a; b)` realises `tau` over `C`.
pub fn extend_by_system(
    theta: &GroupHom,
    tau: &CompleteSystem,
    a: &[SymElement],
    b: &[SymElement],
    a_img: &[SymElement],
    b_img: &[SymElement],
) -> Result<GroupHom, HomError> {
    if !theta.generators().is_empty() {
        return Err(HomError::Precondition("expected a homomorphism on a divisible subgroup".into()));
    }
    check_lengths(a, a_img)?;
    check_lengths(b, b_img)?;
    let c = theta.base();
    if !c.is_independent(a)? {
        return Err(HomError::NotIndependent);
    }
    if !verify_system(tau, c, a, b)? {
        return Err(HomError::Precondition("the system does not hold at (a; b)".into()));
    }
    for y in a_img.iter().chain(b_img) {
        if y.characteristic() != theta.characteristic() {
            return Err(SymError::CharacteristicMismatch(theta.characteristic(), y.characteristic()).into());
        }
    }
    let mut gens = generators(a, a_img);
    gens.extend(generators(b, b_img));
    let h = theta.clone().adjoin(gens);
    if !h.is_well_defined()? {
        return Err(HomError::SystemViolated);
    }
    Ok(h)
}

/// `θ_A ⊙_D θ_B` on `⟨A B⟩`.
pub fn product_extension(ta: &GroupHom, tb: &GroupHom, d: &DivSubgroup) -> Result<GroupHom, HomError> {
    let p = d.characteristic();
    for h in [ta, tb] {
        if h.characteristic() != p {
            return Err(SymError::CharacteristicMismatch(p, h.characteristic()).into());
        }
        if !h.base().contains_subgroup(d) {
            return Err(HomError::BaseNotContained);
        }
    }
    if ta.domain_hull()?.intersection_dim(&tb.domain_hull()?) > d.dim() {
        return Err(HomError::IntersectionTooLarge);
    }
    if !ta.torsion().agrees_with(tb.torsion()) {
        return Err(HomError::DisagreeOnBase);
    }
    for e in d.basis_elements() {
        if ta.apply(&e)? != tb.apply(&e)? {
            return Err(HomError::DisagreeOnBase);
        }
    }
    let mut pairs = Vec::new();
    for h in [ta, tb] {
        for (v, pivot) in h.base().basis().iter().zip(h.base().pivots()) {
            pairs.push((v.clone(), h.free_images()[pivot].clone()));
        }
    }
    let torsion = match (ta.torsion(), tb.torsion()) {
        (TorsionAction::Family(fa), TorsionAction::Family(fb)) => {
            let mut f = fa.clone();
            f.extend(fb.iter().map(|(k, v)| (k.clone(), v.clone())));
            TorsionAction::Family(f)
        }
        (t @ TorsionAction::Exponent(_), _) | (_, t @ TorsionAction::Exponent(_)) => t.clone(),
    };
    let combined = GroupHom::from_spanning_images(p, torsion, &pairs)
        .map_err(|e| match e {
            HomError::InconsistentImages => HomError::DisagreeOnBase,
            other => other,
        })?
        .adjoin(ta.generators().iter().chain(tb.generators()).cloned());
    if !combined.is_well_defined()? {
        return Err(HomError::InternalInvariant("product extension is not well defined".into()));
    }
    Ok(combined)
}

/// Extends `theta` by sending every ambient symbol outside its domain to 1.
pub fn extend_trivial<S: AsRef<str>>(theta: &GroupHom, ambient_symbols: &[S]) -> Result<GroupHom, HomError> {
    let known = theta.domain_symbols();
    let fresh: BTreeSet<&str> =
        ambient_symbols.iter().map(|s| s.as_ref()).filter(|s| !known.contains(*s)).collect();
    if fresh.is_empty() {
        return Ok(theta.clone());
    }
    let p = theta.characteristic();
    let mut pairs: Vec<(FreePart, SymElement)> = theta
        .base()
        .basis()
        .iter()
        .zip(theta.base().pivots())
        .map(|(v, pivot)| (v.clone(), theta.free_images()[pivot].clone()))
        .collect();
    for s in fresh {
        let unit = SymElement::symbol(s, p)?;
        pairs.push((unit.free().clone(), SymElement::identity(p)));
    }
    Ok(GroupHom::from_spanning_images(p, theta.torsion().clone(), &pairs)?.adjoin(theta.generators().iter().cloned()))
}
