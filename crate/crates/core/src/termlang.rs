//! Terms in the language of rings with a unary function `θ`.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary ("*" unary)*
//! unary := "-" unary | atom
//! atom  := INT | IDENT | "$" IDENT | "theta" "(" expr ")" | "(" expr ")"
//! ```
//!
//! `$name` denotes a field constant. Identifiers may contain `'`, so the
//! primed variables produced by [`linearise`] parse back.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::ffworld::{ExponentFamily, FfError, FieldElem, FiniteFieldCtx};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("syntax error at offset {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("unassigned variable {0}")]
    Unassigned(String),
    #[error(transparent)]
    Field(#[from] FfError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    /// A named field constant, written `$name`.
    Const(String),
    Int(BigInt),
    Add(Box<Term>, Box<Term>),
    Sub(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Theta(Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn int(n: i64) -> Term {
        Term::Int(BigInt::from(n))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Term, b: Term) -> Term {
        Term::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Term) -> Term {
        Term::Neg(Box::new(a))
    }

    pub fn theta(a: Term) -> Term {
        Term::Theta(Box::new(a))
    }

    fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) | Term::Const(_) | Term::Int(_) => vec![],
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => vec![a, b],
            Term::Neg(a) | Term::Theta(a) => vec![a],
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        if let Term::Var(v) = self {
            out.insert(v.clone());
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    pub fn theta_count(&self) -> usize {
        usize::from(matches!(self, Term::Theta(_))) + self.children().iter().map(|c| c.theta_count()).sum::<usize>()
    }

    pub fn contains_theta(&self) -> bool {
        self.theta_count() > 0
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    fn prec(&self) -> u8 {
        match self {
            Term::Add(..) | Term::Sub(..) => 1,
            Term::Mul(..) => 2,
            Term::Neg(_) => 3,
            Term::Int(n) if n.is_negative() => 0,
            _ => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.prec() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Term::Var(v) => f.write_str(v)?,
            Term::Const(c) => write!(f, "${c}")?,
            Term::Int(n) => write!(f, "{n}")?,
            Term::Add(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(" + ")?;
                b.write_at(f, 2)?;
            }
            Term::Sub(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(" - ")?;
                b.write_at(f, 2)?;
            }
            Term::Mul(a, b) => {
                a.write_at(f, 2)?;
                f.write_str(" * ")?;
                b.write_at(f, 3)?;
            }
            Term::Neg(a) => {
                f.write_str("-")?;
                if matches!(**a, Term::Int(_)) {
                    write!(f, "({a})")?;
                } else {
                    a.write_at(f, 3)?;
                }
            }
            Term::Theta(a) => {
                f.write_str("theta(")?;
                a.write_at(f, 0)?;
                f.write_str(")")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\''
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, msg: impl Into<String>) -> Result<T, TermError> {
        Err(TermError::Syntax { offset, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && is_ident_char(self.src[self.pos]) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn expr(&mut self) -> Result<Term, TermError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { Term::add(acc, rhs) } else { Term::sub(acc, rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Term, TermError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = Term::mul(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Term, TermError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                let Term::Int(n) = self.atom()? else { unreachable!() };
                return Ok(Term::Int(-n));
            }
            return Ok(Term::neg(self.unary()?));
        }
        self.atom()
    }

    fn expect(&mut self, c: u8) -> Result<(), TermError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(self.pos, format!("expected '{}', found '{}'", c as char, x as char)),
            None => self.err(self.pos, format!("expected '{}', found end of input", c as char)),
        }
    }

    fn atom(&mut self) -> Result<Term, TermError> {
        let start = match self.peek() {
            None => return self.err(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        let c = self.src[start];
        if c.is_ascii_digit() {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            return Ok(Term::Int(digits.parse().expect("digits")));
        }
        if c == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            self.expect(b')')?;
            return Ok(inner);
        }
        if c == b'$' {
            self.pos += 1;
            if !self.src.get(self.pos).copied().is_some_and(is_ident_start) {
                return self.err(self.pos, "expected a constant name after '$'");
            }
            return Ok(Term::Const(self.ident()));
        }
        if is_ident_start(c) {
            let name = self.ident();
            if name == "theta" {
                self.expect(b'(')?;
                let inner = self.expr()?;
                self.expect(b')')?;
                return Ok(Term::theta(inner));
            }
            return Ok(Term::Var(name));
        }
        self.err(start, format!("unexpected '{}'", c as char))
    }
}

pub fn parse_term(src: &str) -> Result<Term, TermError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let t = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected '{}'", c as char));
    }
    Ok(t)
}

impl FromStr for Term {
    type Err = TermError;
    fn from_str(s: &str) -> Result<Self, TermError> {
        parse_term(s)
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_term(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

/// A fresh variable and its partner standing for `θ` of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaPair {
    pub z: String,
    pub z_prime: String,
}

/// θ-free equations in the original variables and the pairs `(zᵢ, zᵢ′)`.
/// The last equation is the rewritten `t̃ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSystem {
    pub pairs: Vec<ThetaPair>,
    pub equations: Vec<Equation>,
}

impl LinearSystem {
    /// The equations with every `zᵢ′` replaced by `θ(zᵢ)`.
    pub fn with_theta_substituted(&self) -> Vec<Equation> {
        let map: BTreeMap<&str, &str> = self.pairs.iter().map(|p| (p.z_prime.as_str(), p.z.as_str())).collect();
        fn subst(t: &Term, map: &BTreeMap<&str, &str>) -> Term {
            match t {
                Term::Var(v) => match map.get(v.as_str()) {
                    Some(z) => Term::theta(Term::var(z)),
                    None => t.clone(),
                },
                Term::Const(_) | Term::Int(_) => t.clone(),
                Term::Add(a, b) => Term::add(subst(a, map), subst(b, map)),
                Term::Sub(a, b) => Term::sub(subst(a, map), subst(b, map)),
                Term::Mul(a, b) => Term::mul(subst(a, map), subst(b, map)),
                Term::Neg(a) => Term::neg(subst(a, map)),
                Term::Theta(a) => Term::theta(subst(a, map)),
            }
        }
        self.equations
            .iter()
            .map(|e| Equation { lhs: subst(&e.lhs, &map), rhs: subst(&e.rhs, &map) })
            .collect()
    }

    pub fn contains_theta(&self) -> bool {
        self.equations.iter().any(|e| e.lhs.contains_theta() || e.rhs.contains_theta())
    }

    /// Whether an assignment of the original and fresh variables satisfies
    /// every equation once `zᵢ′ := θ(zᵢ)`.
    pub fn holds(
        &self,
        assignment: &BTreeMap<String, FieldElem>,
        ctx: &FiniteFieldCtx,
        endo: &ExponentFamily,
    ) -> Result<bool, TermError> {
        for eq in self.with_theta_substituted() {
            if eval_term(&eq.lhs, assignment, ctx, endo)? != eval_term(&eq.rhs, assignment, ctx, endo)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Extends an assignment of the original variables by the values of the
    /// `zᵢ` forced by their defining equations.
    pub fn propagate(
        &self,
        assignment: &BTreeMap<String, FieldElem>,
        ctx: &FiniteFieldCtx,
        endo: &ExponentFamily,
    ) -> Result<BTreeMap<String, FieldElem>, TermError> {
        let mut full = assignment.clone();
        for (pair, eq) in self.pairs.iter().zip(&self.equations) {
            let v = eval_term(&eq.rhs, &full, ctx, endo)?;
            full.insert(pair.z_prime.clone(), endo.eval(ctx, v)?);
            full.insert(pair.z.clone(), v);
        }
        Ok(full)
    }
}

/// Innermost-first rewriting of `t = 0` into θ-free equations.
///
/// Each `θ(t′)` with θ-free `t′`, leftmost first, becomes `zᵢ′` together
/// with the equation `zᵢ = t′`.
pub fn linearise(t: &Term) -> LinearSystem {
    let vars = t.vars();
    let mut prefix = "z".to_string();
    while vars.iter().any(|v| v.starts_with(&prefix)) {
        prefix.push('_');
    }
    struct State {
        prefix: String,
        pairs: Vec<ThetaPair>,
        equations: Vec<Equation>,
    }
    fn go(t: &Term, st: &mut State) -> Term {
        match t {
            Term::Var(_) | Term::Const(_) | Term::Int(_) => t.clone(),
            Term::Add(a, b) => Term::add(go(a, st), go(b, st)),
            Term::Sub(a, b) => Term::sub(go(a, st), go(b, st)),
            Term::Mul(a, b) => Term::mul(go(a, st), go(b, st)),
            Term::Neg(a) => Term::neg(go(a, st)),
            Term::Theta(a) => {
                let inner = go(a, st);
                let i = st.pairs.len() + 1;
                let z = format!("{}{i}", st.prefix);
                let z_prime = format!("{z}'");
                st.equations.push(Equation { lhs: Term::Var(z.clone()), rhs: inner });
                st.pairs.push(ThetaPair { z, z_prime: z_prime.clone() });
                Term::Var(z_prime)
            }
        }
    }
    let mut st = State { prefix, pairs: Vec::new(), equations: Vec::new() };
    let last = go(t, &mut st);
    st.equations.push(Equation { lhs: last, rhs: Term::int(0) });
    LinearSystem { pairs: st.pairs, equations: st.equations }
}

/// Evaluates `t` in `F_{p^k}` with `θ` acting as `endo`. Constants `$c` are
/// looked up under the key `"$c"`.
pub fn eval_term(
    t: &Term,
    assignment: &BTreeMap<String, FieldElem>,
    ctx: &FiniteFieldCtx,
    endo: &ExponentFamily,
) -> Result<FieldElem, TermError> {
    Ok(match t {
        Term::Var(v) => *assignment.get(v).ok_or_else(|| TermError::Unassigned(v.clone()))?,
        Term::Const(c) => {
            let key = format!("${c}");
            *assignment.get(&key).ok_or(TermError::Unassigned(key))?
        }
        Term::Int(n) => ctx.from_int(n),
        Term::Add(a, b) => ctx.add(eval_term(a, assignment, ctx, endo)?, eval_term(b, assignment, ctx, endo)?),
        Term::Sub(a, b) => ctx.sub(eval_term(a, assignment, ctx, endo)?, eval_term(b, assignment, ctx, endo)?),
        Term::Mul(a, b) => ctx.mul(eval_term(a, assignment, ctx, endo)?, eval_term(b, assignment, ctx, endo)?),
        Term::Neg(a) => ctx.neg(eval_term(a, assignment, ctx, endo)?),
        Term::Theta(a) => endo.eval(ctx, eval_term(a, assignment, ctx, endo)?)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffworld::DEFAULT_DLOG_LIMIT;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn negative_literals() {
        for term in [Term::neg(Term::int(-1)), Term::neg(Term::int(2)), Term::mul(Term::int(-3), Term::var("x")), Term::sub(Term::var("x"), Term::int(-2))] {
            assert_eq!(t(&term.to_string()), term);
        }
        assert_eq!(t("-1"), Term::int(-1));
        assert_eq!(t("- 1"), Term::neg(Term::int(1)));
    }

    #[test]
    fn parsing() {
        let x = Term::var("x");
        assert_eq!(t("theta(x+1)*x - 1"), Term::sub(Term::mul(Term::theta(Term::add(x.clone(), Term::int(1))), x.clone()), Term::int(1)));
        assert_eq!(t("theta(theta(x))"), Term::theta(Term::theta(x.clone())));
        assert_eq!(parse_term("x + * y"), Err(TermError::Syntax { offset: 4, msg: "unexpected '*'".into() }));
        assert!(matches!(parse_term("theta x"), Err(TermError::Syntax { offset: 6, .. })));
        assert!(matches!(parse_term("(x"), Err(TermError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_term("x y"), Err(TermError::Syntax { offset: 2, .. })));
        assert_eq!(t("$c * x"), Term::mul(Term::Const("c".into()), x));
    }

    #[test]
    fn printing_round_trips() {
        for s in ["theta(x + 1) * x - 1", "-(x * y)", "x - (y - 1)", "-x - 1", "--x", "x * (y + $c)", "theta(theta(x))", "z1' * x"] {
            let term = t(s);
            assert_eq!(term.to_string(), s);
            assert_eq!(t(&term.to_string()), term);
        }
        assert_eq!(Term::mul(Term::var("x"), Term::Int(BigInt::from(-2))).to_string(), "x * (-2)");
        assert_eq!(t("x * (-2)"), Term::mul(Term::var("x"), Term::int(-2)));
    }

    #[test]
    fn linearise_examples() {
        let s = linearise(&t("x - 1"));
        assert!(s.pairs.is_empty());
        assert_eq!(s.equations, vec![Equation { lhs: t("x - 1"), rhs: t("0") }]);

        let s = linearise(&t("theta(x+1)*x - 1"));
        assert_eq!(s.pairs, vec![ThetaPair { z: "z1".into(), z_prime: "z1'".into() }]);
        assert_eq!(s.equations, vec![Equation { lhs: t("z1"), rhs: t("x + 1") }, Equation { lhs: t("z1' * x - 1"), rhs: t("0") }]);

        let s = linearise(&t("theta(x + theta(x)) - x"));
        assert_eq!(
            s.equations,
            vec![
                Equation { lhs: t("z1"), rhs: t("x") },
                Equation { lhs: t("z2"), rhs: t("x + z1'") },
                Equation { lhs: t("z2' - x"), rhs: t("0") },
            ]
        );
        assert!(!s.contains_theta());

        let s = linearise(&t("theta(z1) + z2"));
        assert_eq!(s.pairs[0].z, "z_1");
    }

    #[test]
    fn evaluation() {
        let ctx = FiniteFieldCtx::build(2, 4, DEFAULT_DLOG_LIMIT).unwrap();
        let e = ExponentFamily::power_map(2, &[1, 2, 4], 3).unwrap();
        let g = ctx.generator();
        let env: BTreeMap<String, FieldElem> = [("x".to_string(), g), ("o".to_string(), FieldElem::ZERO)].into();
        assert_eq!(eval_term(&t("theta(o)"), &env, &ctx, &e).unwrap(), FieldElem::ZERO);
        assert_eq!(eval_term(&t("theta(1)"), &env, &ctx, &e).unwrap(), FieldElem::ONE);
        assert_eq!(eval_term(&t("theta(x) * x"), &env, &ctx, &e).unwrap(), ctx.g_pow(4));
        assert_eq!(eval_term(&t("y"), &env, &ctx, &e), Err(TermError::Unassigned("y".into())));
        assert_eq!(eval_term(&t("$c"), &env, &ctx, &e), Err(TermError::Unassigned("$c".into())));
    }

    #[test]
    fn propagation_satisfies_definitions() {
        let ctx = FiniteFieldCtx::build(3, 2, DEFAULT_DLOG_LIMIT).unwrap();
        let e = ExponentFamily::power_map(3, &[1, 2], 5).unwrap();
        let term = t("theta(x * theta(x + 1)) - x * x");
        let sys = linearise(&term);
        for x in ctx.elements() {
            let env: BTreeMap<String, FieldElem> = [("x".to_string(), x)].into();
            let full = sys.propagate(&env, &ctx, &e).unwrap();
            let lhs_zero = eval_term(&term, &env, &ctx, &e).unwrap() == FieldElem::ZERO;
            assert_eq!(sys.holds(&full, &ctx, &e).unwrap(), lhs_zero);
        }
    }
}
