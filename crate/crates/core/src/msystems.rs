//! Complete systems of minimal equations.
//!
//! For `a = (a₁,…,a_r)` independent over a divisible subgroup `C` and
//! `b = (b₁,…,b_t)` in the divisible hull of `C ∪ a`, the system records, for
//! every exponent tuple `k` in
//!
//! ```text
//! 𝒞 = { k : 0 ≤ kᵢ ≤ nᵢ, gcd(k) = 1 }      (nᵢ = order of bᵢ over ⟨C a⟩)
//! ```
//!
//! the unique relation `(y^k)^N = c · x^l` with `N` minimal and
//! `gcd(N, l) = 1`. Tuples are kept in lexicographic order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homext::{GroupHom, HomError};
use crate::intlinalg::{Lattice, RatVector};
use crate::json;
use crate::poly::IntPoly;
use crate::symgroup::{order_over, power_product, DivSubgroup, SymElement, SymError};

/// Largest admissible `Π (nᵢ + 1)`.
pub const MAX_EXPONENT_BOX: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MsError {
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("malformed system: {0}")]
    MalformedSystem(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("exponent box of size {0} exceeds the limit of {MAX_EXPONENT_BOX}")]
    TooLarge(u128),
    #[error("empty input")]
    EmptyInput,
    #[error("polynomial #{0} is constant")]
    ConstantPolynomial(usize),
    #[error("system is not satisfied by the given tuple")]
    NotSatisfied,
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

/// `(y₁^{k₁}…y_t^{k_t})^N = c · x₁^{l₁}…x_r^{l_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalEquation {
    #[serde(rename = "k")]
    pub kvec: Vec<u64>,
    #[serde(rename = "N", with = "json::num")]
    pub big_n: BigInt,
    #[serde(rename = "l", with = "json::num_vec")]
    pub lvec: Vec<BigInt>,
    #[serde(rename = "c")]
    pub cval: SymElement,
}

impl MinimalEquation {
    /// Whether `(a; b)` satisfies the equation in the symbolic group.
    pub fn holds_at(&self, a: &[SymElement], b: &[SymElement]) -> Result<bool, SymError> {
        let p = self.cval.characteristic();
        let kv: Vec<BigInt> = self.kvec.iter().map(|&k| BigInt::from(k)).collect();
        let lhs = power_product(p, b, &kv)?.pow(&self.big_n);
        let rhs = self.cval.mul(&power_product(p, a, &self.lvec)?)?;
        Ok(lhs == rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SystemRepr", into = "SystemRepr")]
pub struct CompleteSystem {
    r: usize,
    t: usize,
    orders: Vec<u64>,
    equations: BTreeMap<Vec<u64>, MinimalEquation>,
}

#[derive(Serialize, Deserialize)]
struct SystemRepr {
    r: usize,
    t: usize,
    orders: Vec<u64>,
    equations: Vec<MinimalEquation>,
}

impl TryFrom<SystemRepr> for CompleteSystem {
    type Error = MsError;
    fn try_from(s: SystemRepr) -> Result<Self, MsError> {
        let mut equations = BTreeMap::new();
        for e in s.equations {
            if equations.insert(e.kvec.clone(), e).is_some() {
                return Err(MsError::MalformedSystem("duplicate exponent tuple".into()));
            }
        }
        Ok(CompleteSystem { r: s.r, t: s.t, orders: s.orders, equations })
    }
}

impl From<CompleteSystem> for SystemRepr {
    fn from(s: CompleteSystem) -> Self {
        SystemRepr { r: s.r, t: s.t, orders: s.orders, equations: s.equations.into_values().collect() }
    }
}

fn gcd_u64(v: &[u64]) -> u64 {
    v.iter().fold(0, |g, &x| g.gcd(&x))
}

/// Enumerates `𝒞` for the given orders in lexicographic order.
pub fn exponent_tuples(orders: &[u64]) -> Result<Vec<Vec<u64>>, MsError> {
    let size = orders.iter().try_fold(1u128, |acc, &n| acc.checked_mul(n as u128 + 1));
    match size {
        Some(s) if s <= MAX_EXPONENT_BOX => {}
        Some(s) => return Err(MsError::TooLarge(s)),
        None => return Err(MsError::TooLarge(u128::MAX)),
    }
    let mut out = Vec::new();
    if orders.is_empty() {
        return Ok(out);
    }
    let mut k = vec![0u64; orders.len()];
    loop {
        if gcd_u64(&k) == 1 {
            out.push(k.clone());
        }
        let mut i = orders.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if k[i] < orders[i] {
                k[i] += 1;
                break;
            }
            k[i] = 0;
        }
    }
}

fn unit_index(k: &[u64]) -> Option<usize> {
    let mut idx = None;
    for (i, &x) in k.iter().enumerate() {
        match x {
            0 => {}
            1 if idx.is_none() => idx = Some(i),
            _ => return None,
        }
    }
    idx
}

impl CompleteSystem {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn equations(&self) -> impl Iterator<Item = &MinimalEquation> {
        self.equations.values()
    }

    pub fn equation(&self, k: &[u64]) -> Option<&MinimalEquation> {
        self.equations.get(k)
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.iter().all(|&n| n == 1)
    }

    /// Builds a system from parts, checking every structural condition.
    pub fn from_parts(
        r: usize,
        t: usize,
        orders: Vec<u64>,
        equations: Vec<MinimalEquation>,
    ) -> Result<Self, MsError> {
        let s = SystemRepr { r, t, orders, equations }.try_into()?;
        check_structure(&s)?;
        Ok(s)
    }

    /// Replaces an equation; used to build perturbed or damaged systems.
    pub fn with_equation(mut self, eq: MinimalEquation) -> Self {
        self.equations.insert(eq.kvec.clone(), eq);
        self
    }

    pub fn without_equation(mut self, k: &[u64]) -> Self {
        self.equations.remove(k);
        self
    }

    /// Maps every constant through `f`.
    pub fn map_constants<E>(&self, mut f: impl FnMut(&SymElement) -> Result<SymElement, E>) -> Result<Self, E> {
        let mut out = self.clone();
        for eq in out.equations.values_mut() {
            eq.cval = f(&eq.cval)?;
        }
        Ok(out)
    }

    /// Whether `(a; b)` satisfies every equation.
    pub fn holds_at(&self, a: &[SymElement], b: &[SymElement]) -> Result<bool, SymError> {
        for eq in self.equations.values() {
            if !eq.holds_at(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_structure(s: &CompleteSystem) -> Result<(), MsError> {
    let bad = |m: String| Err(MsError::MalformedSystem(m));
    if s.orders.len() != s.t {
        return bad(format!("{} orders for t = {}", s.orders.len(), s.t));
    }
    if s.orders.contains(&0) {
        return bad("orders must be positive".into());
    }
    let tuples = exponent_tuples(&s.orders)?;
    if tuples.len() != s.equations.len() || tuples.iter().any(|k| !s.equations.contains_key(k)) {
        return bad("equations are not indexed by exactly the admissible exponent tuples".into());
    }
    for (k, eq) in &s.equations {
        if &eq.kvec != k {
            return bad(format!("equation stored under {:?} has exponent {:?}", k, eq.kvec));
        }
        if eq.lvec.len() != s.r {
            return bad(format!("equation {:?} has {} x-exponents, expected {}", k, eq.lvec.len(), s.r));
        }
        if !eq.big_n.is_positive() {
            return bad(format!("equation {:?} has non-positive N", k));
        }
        let g = eq.lvec.iter().fold(eq.big_n.clone(), |g, l| g.gcd(l));
        if !g.is_one() {
            return bad(format!("equation {:?} has gcd(N, l) = {}", k, g));
        }
        if let Some(i) = unit_index(k) {
            if eq.big_n != BigInt::from(s.orders[i]) {
                return bad(format!("unit equation for y{} has N = {} but order {}", i + 1, eq.big_n, s.orders[i]));
            }
        }
    }
    Ok(())
}

fn order_to_u64(n: &BigInt) -> Result<u64, MsError> {
    u64::try_from(n).map_err(|_| MsError::TooLarge(u128::MAX))
}

/// The complete system of minimal equations of `b` over `⟨C a⟩`.
pub fn compute_system(c: &DivSubgroup, a: &[SymElement], b: &[SymElement]) -> Result<CompleteSystem, MsError> {
    if !c.is_independent(a)? {
        return Err(SymError::NotIndependent.into());
    }
    let orders = b
        .iter()
        .map(|bi| order_over(c, a, bi).map_err(MsError::from).and_then(|o| order_to_u64(&o.n)))
        .collect::<Result<Vec<u64>, MsError>>()?;
    let mut equations = BTreeMap::new();
    for k in exponent_tuples(&orders)? {
        let kv: Vec<BigInt> = k.iter().map(|&x| BigInt::from(x)).collect();
        let elem = power_product(c.characteristic(), b, &kv)?;
        let o = order_over(c, a, &elem)?;
        equations.insert(k.clone(), MinimalEquation { kvec: k, big_n: o.n, lvec: o.l, cval: o.cpart });
    }
    Ok(CompleteSystem { r: a.len(), t: b.len(), orders, equations })
}

/// Checks the structure of `tau` and whether `(a; b)` realises it over `C`.
///
/// Structural defects are reported as [`MsError::MalformedSystem`]; a
/// well-formed system that is simply not satisfied yields `Ok(false)`.
pub fn verify_system(tau: &CompleteSystem, c: &DivSubgroup, a: &[SymElement], b: &[SymElement]) -> Result<bool, MsError> {
    if a.len() != tau.r || b.len() != tau.t {
        return Err(MsError::ArityMismatch(format!(
            "system has r = {}, t = {}; got {} and {} elements",
            tau.r,
            tau.t,
            a.len(),
            b.len()
        )));
    }
    check_structure(tau)?;
    for eq in tau.equations.values() {
        if eq.cval.characteristic() != c.characteristic() {
            return Err(MsError::MalformedSystem("constant has the wrong characteristic".into()));
        }
        if !c.is_member(&eq.cval)? || !eq.holds_at(a, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `τ^θ`: the same system with every constant `c` replaced by `θ(c)`.
pub fn transport(tau: &CompleteSystem, theta: &GroupHom) -> Result<CompleteSystem, MsError> {
    tau.map_constants(|c| theta.apply(c)).map_err(MsError::from)
}

/// A solution set of a complete system up to a permutation of the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MVariety {
    system: CompleteSystem,
    /// `permutation[j]` is the position in `z` of the j-th variable of `(x; y)`.
    permutation: Vec<usize>,
}

impl MVariety {
    pub fn new(system: CompleteSystem, permutation: Vec<usize>) -> Result<Self, MsError> {
        let n = system.r + system.t;
        let mut seen = vec![false; n];
        if permutation.len() != n {
            return Err(MsError::ArityMismatch(format!("permutation of length {} for {} variables", permutation.len(), n)));
        }
        for &p in &permutation {
            if p >= n || seen[p] {
                return Err(MsError::MalformedSystem("permutation is not a bijection".into()));
            }
            seen[p] = true;
        }
        Ok(MVariety { system, permutation })
    }

    pub fn identity(system: CompleteSystem) -> Self {
        let n = system.r + system.t;
        MVariety { system, permutation: (0..n).collect() }
    }

    pub fn system(&self) -> &CompleteSystem {
        &self.system
    }

    /// Splits `z` into `(x; y)` according to the permutation.
    pub fn split(&self, z: &[SymElement]) -> Result<(Vec<SymElement>, Vec<SymElement>), MsError> {
        if z.len() != self.permutation.len() {
            return Err(MsError::ArityMismatch(format!("{} values for {} variables", z.len(), self.permutation.len())));
        }
        let ordered: Vec<SymElement> = self.permutation.iter().map(|&p| z[p].clone()).collect();
        let (x, y) = ordered.split_at(self.system.r);
        Ok((x.to_vec(), y.to_vec()))
    }

    pub fn contains(&self, z: &[SymElement]) -> Result<bool, MsError> {
        let (x, y) = self.split(z)?;
        Ok(self.system.holds_at(&x, &y)?)
    }

    /// Whether `z` is an m-generic: a realisation with independent x-part.
    pub fn is_m_generic(&self, c: &DivSubgroup, z: &[SymElement]) -> Result<bool, MsError> {
        let (x, y) = self.split(z)?;
        Ok(c.is_independent(&x)? && verify_system(&self.system, c, &x, &y)?)
    }
}

/// `yᵢ^N = c · x^l · Π_{j<i} yⱼ^{mⱼ}` with `0 ≤ mⱼ < nⱼ`: the minimal equation
/// of `bᵢ` over `⟨C a b₁ … b_{i−1}⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationEquation {
    #[serde(rename = "N", with = "json::num")]
    pub big_n: BigInt,
    #[serde(rename = "l", with = "json::num_vec")]
    pub lvec: Vec<BigInt>,
    #[serde(rename = "m", with = "json::num_vec")]
    pub prev: Vec<BigInt>,
    #[serde(rename = "c")]
    pub cval: SymElement,
}

/// Lattice `D·Z^r + Σ Z·D·qⱼ` for the first `upto` coordinate vectors.
fn tower_lattice(r: usize, den: &BigInt, qs: &[Vec<BigInt>], upto: usize) -> Lattice {
    let mut gens: Vec<Vec<BigInt>> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { den.clone() } else { BigInt::zero() }).collect())
        .collect();
    gens.extend(qs[..upto].iter().cloned());
    Lattice::from_vectors(r, &gens).expect("consistent widths")
}

/// The reduced presentation of `tau` by `t` successive minimal equations.
pub fn minimal_presentation(
    tau: &CompleteSystem,
    c: &DivSubgroup,
    a: &[SymElement],
    b: &[SymElement],
) -> Result<Vec<PresentationEquation>, MsError> {
    if !verify_system(tau, c, a, b)? {
        return Err(MsError::NotSatisfied);
    }
    let r = a.len();
    let coords: Vec<RatVector> = b
        .iter()
        .map(|x| c.hull_coordinates(a, x)?.ok_or(SymError::NotInDivisibleHull))
        .collect::<Result<_, _>>()?;
    let den = coords.iter().fold(BigInt::one(), |d, q| d.lcm(&q.common_denominator()));
    let scaled: Vec<Vec<BigInt>> = coords
        .iter()
        .map(|q| q.0.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect())
        .collect();

    let mut orders: Vec<BigInt> = Vec::new();
    let mut out = Vec::new();
    for i in 0..b.len() {
        let lower = tower_lattice(r, &den, &scaled, i);
        let upper = tower_lattice(r, &den, &scaled, i + 1);
        let n = match (lower.index(), upper.index()) {
            (Some(lo), Some(hi)) => lo / hi,
            _ => return Err(MsError::InternalInvariant("tower lattice lost full rank".into())),
        };
        // reduce n·qᵢ down the tower: coefficient of q_j taken mod n_j
        let mut v: Vec<BigInt> = scaled[i].iter().map(|x| x * &n).collect();
        let mut prev = vec![BigInt::zero(); i];
        for j in (0..i).rev() {
            let lat = tower_lattice(r, &den, &scaled, j + 1);
            let gens = {
                let mut g: Vec<Vec<BigInt>> = (0..r)
                    .map(|p| (0..r).map(|q| if p == q { den.clone() } else { BigInt::zero() }).collect())
                    .collect();
                g.extend(scaled[..=j].iter().cloned());
                g
            };
            debug_assert!(lat.contains(&v));
            let m = crate::intlinalg::IntMatrix::from_rows(r, gens).expect("widths");
            let sol = crate::intlinalg::solve_integral(&m, &v)
                .expect("widths")
                .ok_or_else(|| MsError::InternalInvariant("tower reduction left the lattice".into()))?;
            let mj = sol[r + j].mod_floor(&orders[j]);
            for (x, q) in v.iter_mut().zip(&scaled[j]) {
                *x -= &mj * q;
            }
            prev[j] = mj;
        }
        let mut lvec = Vec::with_capacity(r);
        for x in &v {
            let (q, rem) = x.div_rem(&den);
            if !rem.is_zero() {
                return Err(MsError::InternalInvariant("reduced exponent is not integral".into()));
            }
            lvec.push(q);
        }
        let p = c.characteristic();
        let rhs = power_product(p, a, &lvec)?.mul(&power_product(p, &b[..i], &prev)?)?;
        let cval = b[i].pow(&n).mul(&rhs.inv())?;
        if !c.is_member(&cval)? {
            return Err(MsError::InternalInvariant("presentation constant outside C".into()));
        }
        orders.push(n.clone());
        out.push(PresentationEquation { big_n: n, lvec, prev, cval });
    }
    Ok(out)
}

/// A canonical solution `b̃` of a presentation: each `b̃ᵢ` is the canonical
/// `N`-th root of the right-hand side.
pub fn solve_presentation(
    pres: &[PresentationEquation],
    a: &[SymElement],
) -> Result<Vec<SymElement>, MsError> {
    let mut b: Vec<SymElement> = Vec::with_capacity(pres.len());
    for eq in pres {
        let p = eq.cval.characteristic();
        let rhs = eq.cval.mul(&power_product(p, a, &eq.lvec)?)?.mul(&power_product(p, &b, &eq.prev)?)?;
        b.push(rhs.canonical_nth_root(&eq.big_n)?.0);
    }
    Ok(b)
}

/// `(N, M)` with `N = min{x ≥ 1 : kᵢ | x·lᵢ ∀i}` and `Mᵢ = N·lᵢ/kᵢ`.
pub fn compute_nm(k: &[BigInt], l: &[BigInt]) -> Result<(BigInt, Vec<BigInt>), MsError> {
    if k.is_empty() {
        return Err(MsError::EmptyInput);
    }
    if k.len() != l.len() {
        return Err(MsError::ArityMismatch(format!("k has {} entries, l has {}", k.len(), l.len())));
    }
    if let Some(bad) = k.iter().find(|x| !x.is_positive()) {
        return Err(MsError::MalformedSystem(format!("k entries must be positive, got {bad}")));
    }
    let n = k.iter().zip(l).fold(BigInt::one(), |acc, (ki, li)| acc.lcm(&(ki / ki.gcd(li))));
    let m = k.iter().zip(l).map(|(ki, li)| &n * li / ki).collect();
    Ok((n, m))
}

/// The system generated by the equations `z_{i,dᵢ}^{k_{i,dᵢ}} = δᵢ · Π_{j<dᵢ} z_{i,j}^{−k_{i,j}}`
/// attached to `Pᵢ(θ)(z_{i,0}) = δᵢ`, with cross equations for every admissible
/// tuple of leading variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaSystem {
    /// Polynomials after content normalisation (and sign, so leads are positive).
    pub polys: Vec<IntPoly>,
    /// Constants matching the normalised polynomials.
    pub deltas: Vec<SymElement>,
    /// Names of the x-variables `z_{i,j}`, `j < dᵢ`, in order.
    pub x_names: Vec<String>,
    /// Names of the y-variables `z_{i,dᵢ}`.
    pub y_names: Vec<String>,
    pub system: CompleteSystem,
}

impl AlphaSystem {
    /// A realisation with the x-variables as fresh symbols and each leading
    /// variable a canonical root. Returns `(C, a, b)`.
    pub fn generic_point(&self) -> Result<(DivSubgroup, Vec<SymElement>, Vec<SymElement>), MsError> {
        let p = self.deltas.first().map_or(0, |d| d.characteristic());
        let c = DivSubgroup::generated_by(p, &self.deltas)?;
        let a = self
            .x_names
            .iter()
            .map(|n| SymElement::symbol(n, p))
            .collect::<Result<Vec<_>, _>>()?;
        let mut b = Vec::new();
        let mut offset = 0;
        for (poly, delta) in self.polys.iter().zip(&self.deltas) {
            let d = poly.degree().expect("nonconstant");
            let lower: Vec<BigInt> = poly.coeffs()[..d].iter().map(|k| -k).collect();
            let rhs = delta.mul(&power_product(p, &a[offset..offset + d], &lower)?)?;
            b.push(rhs.canonical_nth_root(poly.leading().expect("nonzero"))?.0);
            offset += d;
        }
        Ok((c, a, b))
    }
}

pub fn assemble_alpha_system(polys: &[IntPoly], deltas: &[SymElement]) -> Result<AlphaSystem, MsError> {
    if polys.len() != deltas.len() {
        return Err(MsError::ArityMismatch(format!("{} polynomials, {} constants", polys.len(), deltas.len())));
    }
    if let Some(d) = deltas.first() {
        if let Some(bad) = deltas.iter().find(|x| x.characteristic() != d.characteristic()) {
            return Err(SymError::CharacteristicMismatch(d.characteristic(), bad.characteristic()).into());
        }
    }
    let mut norm_polys = Vec::with_capacity(polys.len());
    let mut norm_deltas = Vec::with_capacity(polys.len());
    for (i, (p, d)) in polys.iter().zip(deltas).enumerate() {
        if p.is_constant() {
            return Err(MsError::ConstantPolynomial(i));
        }
        let (mut p, mut d) = (p.clone(), d.clone());
        // P(θ)(z) = δ  ⇔  (−P)(θ)(z) = δ⁻¹
        if p.leading().expect("nonconstant").is_negative() {
            p = p.neg();
            d = d.inv();
        }
        let g = p.content();
        if !g.is_one() {
            p = p.scale_div(&g);
            d = d.canonical_nth_root(&g)?.0;
        }
        norm_polys.push(p);
        norm_deltas.push(d);
    }

    let used: std::collections::BTreeSet<&String> = norm_deltas.iter().flat_map(|d| d.symbols()).collect();
    let mut prefix = "z".to_string();
    while used.iter().any(|s| s.starts_with(&prefix)) {
        prefix.push('_');
    }
    let mut x_names = Vec::new();
    let mut y_names = Vec::new();
    for (i, p) in norm_polys.iter().enumerate() {
        let d = p.degree().expect("nonconstant");
        for j in 0..d {
            x_names.push(format!("{prefix}{}_{}", i + 1, j));
        }
        y_names.push(format!("{prefix}{}_{}", i + 1, d));
    }

    let leads: Vec<BigInt> = norm_polys.iter().map(|p| p.leading().expect("nonzero").clone()).collect();
    let orders = leads.iter().map(order_to_u64).collect::<Result<Vec<_>, _>>()?;
    let characteristic = norm_deltas.first().map_or(0, |d| d.characteristic());
    let mut equations = BTreeMap::new();
    for k in exponent_tuples(&orders)? {
        let l: Vec<BigInt> = k.iter().map(|&x| BigInt::from(x)).collect();
        let (big_n, m) = compute_nm(&leads, &l)?;
        let mut lvec = Vec::with_capacity(x_names.len());
        for (p, mi) in norm_polys.iter().zip(&m) {
            let d = p.degree().expect("nonconstant");
            lvec.extend(p.coeffs()[..d].iter().map(|kij| -(kij * mi)));
        }
        let cval = power_product(characteristic, &norm_deltas, &m)?;
        let r = lvec.iter().fold(big_n.clone(), |g, x| g.gcd(x));
        if !r.is_one() {
            return Err(MsError::InternalInvariant(format!("gcd(N, l) = {r} for tuple {k:?}")));
        }
        equations.insert(k.clone(), MinimalEquation { kvec: k, big_n, lvec, cval });
    }
    let system = CompleteSystem { r: x_names.len(), t: y_names.len(), orders, equations };
    check_structure(&system)?;
    Ok(AlphaSystem { polys: norm_polys, deltas: norm_deltas, x_names, y_names, system })
}
