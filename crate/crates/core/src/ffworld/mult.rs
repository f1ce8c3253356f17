//! Multiplicative structure of point sets in `(F_q^×)^n`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::field::{FieldElem, FiniteFieldCtx};
use super::FfError;
use crate::intlinalg::Lattice;

/// Degree of the field generated by elements of the given degrees.
pub fn cl_theta_degree(degrees: &[u64]) -> u64 {
    degrees.iter().fold(1, |acc, &d| acc.lcm(&d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Freeness {
    pub free: bool,
    /// A character `k ∉ (q−1)Zⁿ`, entries in `[0, q−1)`, trivial on `c⁻¹·X`.
    pub witness: Option<Vec<BigInt>>,
}

/// The lattice spanned by `dlog(c⁻¹x)` for `x ∈ X` and `(q−1)Zⁿ`, with `c`
/// the first point.
pub fn translated_lattice(ctx: &FiniteFieldCtx, points: &[Vec<FieldElem>]) -> Result<Lattice, FfError> {
    let first = points.first().ok_or(FfError::EmptySet)?;
    let n = first.len();
    let m = ctx.group_order();
    let base: Vec<u64> = first.iter().map(|&x| ctx.dlog(x).ok_or(FfError::ZeroCoordinate)).collect::<Result<_, _>>()?;
    let mut gens: Vec<Vec<BigInt>> = Vec::with_capacity(points.len() + n);
    for pt in points {
        if pt.len() != n {
            return Err(FfError::ArityMismatch(format!("point of length {}, expected {n}", pt.len())));
        }
        let mut v = Vec::with_capacity(n);
        for (&x, &b) in pt.iter().zip(&base) {
            let l = ctx.dlog(x).ok_or(FfError::ZeroCoordinate)?;
            v.push(BigInt::from((l + m - b) % m));
        }
        gens.push(v);
    }
    for i in 0..n {
        gens.push((0..n).map(|j| if i == j { BigInt::from(m) } else { BigInt::zero() }).collect());
    }
    Ok(Lattice::from_vectors(n, &gens)?)
}

pub fn freeness_at_level(ctx: &FiniteFieldCtx, points: &[Vec<FieldElem>]) -> Result<Freeness, FfError> {
    let lat = translated_lattice(ctx, points)?;
    if lat.index().is_some_and(|i| i == BigInt::from(1)) {
        return Ok(Freeness { free: true, witness: None });
    }
    let m = BigInt::from(ctx.group_order());
    let witness = subgroup_characters(&lat, &m)?
        .into_iter()
        .map(|k| k.into_iter().map(|x| x.mod_floor(&m)).collect::<Vec<_>>())
        .find(|k| k.iter().any(|x| !x.is_zero()));
    Ok(Freeness { free: false, witness })
}

/// Generators of `{k : k·v ≡ 0 (mod m) ∀v ∈ l}`.
pub fn subgroup_characters(l: &Lattice, m: &BigInt) -> Result<Vec<Vec<BigInt>>, FfError> {
    Ok(l.dual_mod(m)?.basis().row_vecs())
}

/// `Π_m(X)`: all products of `m` elements of `X`, as sorted dlogs.
fn product_set(group_order: u64, x: &BTreeSet<u64>, m: usize) -> BTreeSet<u64> {
    let mut acc: BTreeSet<u64> = [0].into();
    for _ in 0..m {
        acc = acc.iter().flat_map(|&a| x.iter().map(move |&b| (a + b) % group_order)).collect();
    }
    acc
}

fn dlog_set(ctx: &FiniteFieldCtx, xs: &[FieldElem]) -> Result<BTreeSet<u64>, FfError> {
    let set: BTreeSet<u64> = xs.iter().map(|&x| ctx.dlog(x).ok_or(FfError::ZeroCoordinate)).collect::<Result<_, _>>()?;
    if !set.contains(&0) {
        return Err(FfError::IdentityMissing);
    }
    Ok(set)
}

/// `Π_m(X) = {x₁⋯x_m : xᵢ ∈ X}` for `1 ∈ X ⊆ F_q^×`, in dlog order.
pub fn pi_m_closure(ctx: &FiniteFieldCtx, xs: &[FieldElem], m: usize) -> Result<Vec<FieldElem>, FfError> {
    let set = dlog_set(ctx, xs)?;
    Ok(product_set(ctx.group_order(), &set, m).into_iter().map(|l| ctx.g_pow(l)).collect())
}

/// The least `m` with `Π_m(X) = Π_{m+1}(X)`, and that set (which is `⟨X⟩`).
pub fn pi_stabilization(ctx: &FiniteFieldCtx, xs: &[FieldElem]) -> Result<(usize, Vec<FieldElem>), FfError> {
    let set = dlog_set(ctx, xs)?;
    let order = ctx.group_order();
    let mut m = 1;
    let mut cur = product_set(order, &set, 1);
    loop {
        let next: BTreeSet<u64> = cur.iter().flat_map(|&a| set.iter().map(move |&b| (a + b) % order)).collect();
        if next == cur {
            return Ok((m, cur.into_iter().map(|l| ctx.g_pow(l)).collect()));
        }
        cur = next;
        m += 1;
    }
}

/// `⟨X⟩` as sorted dlogs: multiples of `gcd(dlogs, q−1)`.
pub fn generated_subgroup(ctx: &FiniteFieldCtx, xs: &[FieldElem]) -> Result<Vec<FieldElem>, FfError> {
    let order = ctx.group_order();
    let g = xs
        .iter()
        .map(|&x| ctx.dlog(x).ok_or(FfError::ZeroCoordinate))
        .try_fold(order, |g, l| l.map(|l| g.gcd(&l)))?;
    Ok((0..order / g).map(|i| ctx.g_pow(i * g)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffworld::field::DEFAULT_DLOG_LIMIT;

    fn ctx(p: u64, k: u32) -> FiniteFieldCtx {
        FiniteFieldCtx::build(p, k, DEFAULT_DLOG_LIMIT).unwrap()
    }

    fn bv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cl_theta() {
        assert_eq!(cl_theta_degree(&[4]), 4);
        assert_eq!(cl_theta_degree(&[2, 3]), 6);
        assert_eq!(cl_theta_degree(&[]), 1);
    }

    #[test]
    fn freeness_examples() {
        let f = ctx(5, 1);
        let e = |n: u32| FieldElem(n);
        let free = freeness_at_level(&f, &[vec![e(1), e(1)], vec![e(2), e(1)], vec![e(1), e(2)]]).unwrap();
        assert!(free.free);
        let not = freeness_at_level(&f, &[vec![e(1), e(1)], vec![e(2), e(3)]]).unwrap();
        assert!(!not.free);
        let w = not.witness.unwrap();
        // k·(1, 3) ≡ 0 (mod 4)
        assert!((&w[0] + &w[1] * 3i32) % 4i32 == BigInt::zero());
        let single = freeness_at_level(&f, &[vec![e(3), e(3), e(3)]]).unwrap();
        assert!(!single.free && single.witness.is_some());
        assert_eq!(freeness_at_level(&f, &[]), Err(FfError::EmptySet));
        assert_eq!(freeness_at_level(&f, &[vec![e(0)]]), Err(FfError::ZeroCoordinate));
    }

    #[test]
    fn characters() {
        let m = BigInt::from(4);
        let full = Lattice::full(2);
        let chars = subgroup_characters(&full, &m).unwrap();
        assert_eq!(Lattice::from_vectors(2, &chars).unwrap(), Lattice::scaled_full(2, &m));
        let two = Lattice::from_vectors(1, &[bv(&[2]), bv(&[4])]).unwrap();
        assert_eq!(subgroup_characters(&two, &m).unwrap(), vec![bv(&[2])]);
        let diag = Lattice::from_vectors(2, &[bv(&[1, 1]), bv(&[4, 0]), bv(&[0, 4])]).unwrap();
        let chars = subgroup_characters(&diag, &m).unwrap();
        let lat = Lattice::from_vectors(2, &chars).unwrap();
        assert!(lat.contains(&bv(&[1, -1])));
        assert_eq!(lat, Lattice::from_vectors(2, &[bv(&[1, -1]), bv(&[0, 4])]).unwrap());
        assert!(subgroup_characters(&Lattice::from_vectors(1, &[bv(&[3])]).unwrap(), &m).is_err());
    }

    #[test]
    fn pi_m_examples() {
        let f = ctx(7, 1);
        let got = pi_m_closure(&f, &[FieldElem(1), FieldElem(2)], 2).unwrap();
        let mut vals: Vec<u32> = got.iter().map(|x| x.0).collect();
        vals.sort();
        assert_eq!(vals, vec![1, 2, 4]);
        let (m, sub) = pi_stabilization(&f, &[FieldElem(1), FieldElem(2)]).unwrap();
        assert_eq!(m, 2);
        assert_eq!(sub, generated_subgroup(&f, &[FieldElem(2)]).unwrap());
        assert_eq!(pi_m_closure(&f, &[FieldElem(1)], 5).unwrap(), vec![FieldElem(1)]);
        let f5 = ctx(5, 1);
        assert_eq!(pi_m_closure(&f5, &[FieldElem(1), f5.generator()], 4).unwrap().len(), 4);
        assert_eq!(pi_m_closure(&f5, &[FieldElem(2)], 2), Err(FfError::IdentityMissing));
    }
}
