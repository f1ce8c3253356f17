//! `F_{p^k}` with full discrete-log tables.
//!
//! Elements are encoded as integers `Σ cᵢ pⁱ` where `Σ cᵢ Xⁱ` is the
//! representative modulo the chosen irreducible polynomial. The modulus is the
//! monic irreducible of degree `k` with the least encoding of its lower
//! coefficients; the generator is the primitive element with the least
//! encoding.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::FfError;
use crate::numtheory::{factorize, is_prime};

/// Default bound on `p^k − 1`, overridable through `MENDO_DLOG_LIMIT` in the CLI.
pub const DEFAULT_DLOG_LIMIT: u64 = 1 << 20;

/// A field element, by encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

// polynomials over F_p, coefficient vectors low to high, trimmed

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(prod, f, p)
}

/// Remainder modulo a monic `f`.
fn poly_rem(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    while a.len() > d {
        let lead = a.pop().expect("nonempty");
        if lead == 0 {
            continue;
        }
        let off = a.len() - d;
        for (i, &c) in f[..d].iter().enumerate() {
            a[off + i] = (a[off + i] + (p - c) * lead % p) % p;
        }
    }
    trim(a)
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base.to_vec(), f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    trim(acc)
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (_, x, _) = crate::intlinalg::ext_gcd(&BigInt::from(a), &BigInt::from(p));
    x.mod_floor(&BigInt::from(p)).to_u64().expect("small")
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let lead_inv = inv_mod(*b.last().expect("nonempty"), p);
        let monic: Vec<u64> = b.iter().map(|&c| c * lead_inv % p).collect();
        let r = poly_rem(a, &monic, p);
        a = monic;
        b = r;
    }
    a
}

/// Rabin's test for a monic polynomial of degree `k`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u64;
    let x = vec![0, 1];
    // x^{p^i} mod f for i = 0..=k
    let mut frob = vec![poly_rem(x.clone(), f, p)];
    for _ in 0..k {
        let next = poly_powmod(frob.last().expect("nonempty"), p, f, p);
        frob.push(next);
    }
    if poly_sub(&frob[k as usize], &frob[0], p) != Vec::<u64>::new() {
        return false;
    }
    factorize(k).iter().all(|&(r, _)| {
        let h = poly_sub(&frob[(k / r) as usize], &frob[0], p);
        poly_gcd(f.to_vec(), h, p).len() == 1
    })
}

fn decode(mut e: u64, p: u64, k: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(e % p);
        e /= p;
    }
    trim(out)
}

fn encode(a: &[u64], p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| acc * p + c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFieldCtx {
    p: u64,
    k: u32,
    /// Lower coefficients of the monic modulus, low to high.
    modulus: Vec<u64>,
    generator: FieldElem,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FiniteFieldCtx {
    pub fn build(p: u64, k: u32, dlog_limit: u64) -> Result<Self, FfError> {
        if !is_prime(p) {
            return Err(FfError::NotPrime(p));
        }
        if k == 0 {
            return Err(FfError::BadDegree);
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q - 1 <= dlog_limit && q <= u32::MAX as u64)
            .ok_or(FfError::LimitExceeded { p, k, limit: dlog_limit })?;
        let lower_count = p.pow(k);
        let modulus = (0..lower_count)
            .map(|e| {
                let mut f = decode(e, p, k);
                f.resize(k as usize, 0);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");
        let order = q - 1;
        let primes: Vec<u64> = factorize(order).into_iter().map(|(r, _)| r).collect();
        let generator = (1..q)
            .find(|&e| {
                let a = decode(e, p, k);
                primes.iter().all(|&r| poly_powmod(&a, order / r, &modulus, p) != vec![1])
            })
            .expect("the multiplicative group is cyclic");
        let g = decode(generator, p, k);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = vec![1u64];
        for i in 0..order {
            let enc = encode(&cur, p);
            exp.push(enc as u32);
            log[enc as usize] = i as u32;
            cur = poly_mulmod(&cur, &g, &modulus, p);
        }
        let mut lower = modulus;
        lower.pop();
        Ok(FiniteFieldCtx { p, k, modulus: lower, generator: FieldElem(generator as u32), exp, log })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u64 {
        self.log.len() as u64
    }

    /// `q − 1`.
    pub fn group_order(&self) -> u64 {
        self.exp.len() as u64
    }

    /// Coefficients of the monic modulus, constant term first.
    pub fn modulus(&self) -> Vec<u64> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    /// Every element, by encoding.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.size() as u32).map(FieldElem)
    }

    /// `0`, then `g⁰, g¹, …`.
    pub fn elements_by_dlog(&self) -> impl Iterator<Item = FieldElem> + '_ {
        std::iter::once(FieldElem::ZERO).chain(self.exp.iter().map(|&e| FieldElem(e)))
    }

    pub fn g_pow(&self, i: u64) -> FieldElem {
        FieldElem(self.exp[(i % self.group_order()) as usize])
    }

    /// `log_g(x)` for nonzero `x`.
    pub fn dlog(&self, x: FieldElem) -> Option<u64> {
        match self.log.get(x.0 as usize) {
            Some(&l) if l != u32::MAX => Some(l as u64),
            _ => None,
        }
    }

    pub fn contains(&self, x: FieldElem) -> bool {
        (x.0 as u64) < self.size()
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        let (p, mut x, mut y) = (self.p, a.0 as u64, b.0 as u64);
        let (mut out, mut place) = (0u64, 1u64);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElem(out as u32)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 {
            return a;
        }
        let (p, mut x) = (self.p, a.0 as u64);
        let (mut out, mut place) = (0u64, 1u64);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldElem(out as u32)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match (self.dlog(a), self.dlog(b)) {
            (Some(x), Some(y)) => self.g_pow(x + y),
            _ => FieldElem::ZERO,
        }
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        self.dlog(a).map(|x| self.g_pow(self.group_order() - x))
    }

    /// `aᵉ` with `0⁰ = 1`; negative exponents of 0 give 0.
    pub fn pow(&self, a: FieldElem, e: &BigInt) -> FieldElem {
        match self.dlog(a) {
            Some(x) => {
                let m = BigInt::from(self.group_order());
                let r = (BigInt::from(x) * e).mod_floor(&m);
                self.g_pow(r.to_u64().expect("reduced"))
            }
            None if e.is_zero() => FieldElem::ONE,
            None => FieldElem::ZERO,
        }
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: &BigInt) -> FieldElem {
        FieldElem(n.mod_floor(&BigInt::from(self.p)).to_u32().expect("below p"))
    }

    /// `"0"` or `"g^i"`.
    pub fn format(&self, x: FieldElem) -> String {
        match self.dlog(x) {
            Some(i) => format!("g^{i}"),
            None => "0".to_string(),
        }
    }

    /// Inverse of [`format`](Self::format); also accepts `"1"` and `"g"`.
    pub fn parse(&self, s: &str) -> Result<FieldElem, FfError> {
        let s = s.trim();
        let bad = || FfError::BadElement(s.to_string());
        match s {
            "0" => Ok(FieldElem::ZERO),
            "1" => Ok(FieldElem::ONE),
            "g" => Ok(self.generator),
            _ => {
                let e = s.strip_prefix("g^").ok_or_else(bad)?;
                let i: BigInt = e.trim().parse().map_err(|_| bad())?;
                let m = BigInt::from(self.group_order());
                Ok(self.g_pow(i.mod_floor(&m).to_u64().expect("reduced")))
            }
        }
    }
}

impl fmt::Display for FiniteFieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf16() {
        let f = FiniteFieldCtx::build(2, 4, DEFAULT_DLOG_LIMIT).unwrap();
        assert_eq!(f.size(), 16);
        assert_eq!(f.group_order(), 15);
        assert_eq!(f.modulus(), vec![1, 1, 0, 0, 1]);
        let g = f.generator();
        assert_eq!(g, FieldElem(2));
        let pw = |e: i64| f.pow(g, &BigInt::from(e));
        assert_eq!(pw(15), FieldElem::ONE);
        assert_ne!(pw(5), FieldElem::ONE);
        assert_ne!(pw(3), FieldElem::ONE);
        for x in f.elements() {
            if let Some(i) = f.dlog(x) {
                assert_eq!(f.g_pow(i), x);
            }
            assert_eq!(f.add(x, x), FieldElem::ZERO);
        }
    }

    #[test]
    fn prime_fields() {
        let f = FiniteFieldCtx::build(3, 1, DEFAULT_DLOG_LIMIT).unwrap();
        assert_eq!(f.generator(), FieldElem(2));
        let f = FiniteFieldCtx::build(2, 1, DEFAULT_DLOG_LIMIT).unwrap();
        assert_eq!(f.group_order(), 1);
        assert_eq!(f.generator(), FieldElem::ONE);
        let f = FiniteFieldCtx::build(5, 1, DEFAULT_DLOG_LIMIT).unwrap();
        assert_eq!(f.generator(), FieldElem(2));
        assert_eq!(f.sub(FieldElem(1), FieldElem(3)), FieldElem(3));
        assert_eq!(f.neg(FieldElem(2)), FieldElem(3));
    }

    #[test]
    fn distributivity_gf9() {
        let f = FiniteFieldCtx::build(3, 2, DEFAULT_DLOG_LIMIT).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                for c in [FieldElem(0), FieldElem(4), FieldElem(7)] {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(FiniteFieldCtx::build(4, 1, 100), Err(FfError::NotPrime(4)));
        assert!(matches!(FiniteFieldCtx::build(2, 30, DEFAULT_DLOG_LIMIT), Err(FfError::LimitExceeded { .. })));
        assert_eq!(FiniteFieldCtx::build(2, 0, 100), Err(FfError::BadDegree));
    }

    #[test]
    fn format_round_trip() {
        let f = FiniteFieldCtx::build(2, 4, DEFAULT_DLOG_LIMIT).unwrap();
        for x in f.elements() {
            assert_eq!(f.parse(&f.format(x)).unwrap(), x);
        }
        assert!(f.parse("h^2").is_err());
    }
}
