//! Univariate integer polynomials in `X`, used as elements of `Z[θ]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial {src:?} at offset {offset}: {msg}")]
pub struct PolyParseError {
    pub src: String,
    pub offset: usize,
    pub msg: String,
}

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale_div(&self, d: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c / d).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Evaluation reduced into `[0, m)`.
    pub fn eval_mod(&self, x: &BigInt, m: &BigInt) -> BigInt {
        let x = x.mod_floor(m);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * &x + c).mod_floor(m))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            match i {
                0 => {}
                1 => f.write_str("X")?,
                _ => write!(f, "X^{}", i)?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = PolyParseError;

    /// Accepts sums of terms `c`, `cX`, `c*X`, `X^n`, `c*X^n` with `+`/`-`.
    fn from_str(src: &str) -> Result<Self, PolyParseError> {
        let err = |offset: usize, msg: &str| PolyParseError {
            src: src.to_string(),
            offset,
            msg: msg.to_string(),
        };
        let bytes = src.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let read_int = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| BigInt::from_str(&src[start..*pos]).expect("digits"))
        };
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut first = true;
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                if first {
                    return Err(err(pos, "empty polynomial"));
                }
                break;
            }
            let mut sign = BigInt::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err(err(pos, "expected '+' or '-'"));
            }
            first = false;
            let term_start = pos;
            let coeff = read_int(&mut pos);
            skip_ws(&mut pos);
            let mut degree = 0usize;
            let mut has_x = false;
            if pos < bytes.len() && bytes[pos] == b'*' {
                if coeff.is_none() {
                    return Err(err(pos, "unexpected '*'"));
                }
                pos += 1;
                skip_ws(&mut pos);
                if pos >= bytes.len() || !(bytes[pos] == b'X' || bytes[pos] == b'x') {
                    return Err(err(pos, "expected X after '*'"));
                }
            }
            if pos < bytes.len() && (bytes[pos] == b'X' || bytes[pos] == b'x') {
                has_x = true;
                degree = 1;
                pos += 1;
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let e = read_int(&mut pos).ok_or_else(|| err(pos, "expected exponent"))?;
                    degree = usize::try_from(&e).map_err(|_| err(pos, "exponent too large"))?;
                }
            }
            if coeff.is_none() && !has_x {
                return Err(err(term_start, "expected a term"));
            }
            let c = coeff.unwrap_or_else(BigInt::one) * sign;
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, BigInt::zero());
            }
            coeffs[degree] += c;
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p: IntPoly = "X^2+1".parse().unwrap();
        assert_eq!(p, IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(p.to_string(), "X^2 + 1");
        let p: IntPoly = " 3X + 2 ".parse().unwrap();
        assert_eq!(p, IntPoly::from_i64(&[2, 3]));
        let p: IntPoly = "-X^4 - 1 + 2*X".parse().unwrap();
        assert_eq!(p.to_string(), "-X^4 + 2X - 1");
        assert_eq!("X - X".parse::<IntPoly>().unwrap().to_string(), "0");
        assert!("X +".parse::<IntPoly>().is_err());
        assert!("2 3".parse::<IntPoly>().is_err());
        assert!("".parse::<IntPoly>().is_err());
    }

    #[test]
    fn evaluation_and_content() {
        let p = IntPoly::from_i64(&[-1, 0, 0, 0, 1]);
        assert_eq!(p.eval(&BigInt::from(3)), BigInt::from(80));
        assert_eq!(p.eval_mod(&BigInt::from(3), &BigInt::from(15)), BigInt::from(5));
        assert_eq!(IntPoly::from_i64(&[2, 2]).content(), BigInt::from(2));
        assert_eq!(IntPoly::default().content(), BigInt::zero());
    }
}
