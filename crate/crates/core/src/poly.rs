//! Exact Laurent polynomials in `q` with arbitrary-precision integer
//! coefficients.
//!
//! Canonical text form: terms in ascending exponent joined by ` + ` or
//! ` - `; a term is `c*q^e`, where a unit coefficient is dropped, `q^0`
//! prints as the bare coefficient and `q^1` as `q`. Examples: `1`, `q`,
//! `q^-1`, `2*q^3`, `-q + q^3`, `1 - 2*q^2`. The zero polynomial is `0`.
//!
//! JSON form: an array of `[exponent, coefficient]` pairs in ascending
//! exponent order. Coefficients outside the `i64` range are written as
//! decimal strings.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot evaluate at {x}: negative exponent {exponent} needs a unit argument")]
    NonUnitEvaluation { x: i64, exponent: i64 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
    #[error("cannot parse polynomial term `{0}`")]
    Parse(String),
}

/// A finite sum `sum c_e q^e` with `e` any integer. No zero coefficient is
/// ever stored, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// `q`.
    pub fn q() -> Self {
        LaurentPoly::monomial(1, 1)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exponent: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exponent, coeff.into());
        p
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents accumulate.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exponent: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Substitutes `q -> q^k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(&e, c)| (e * k, c.clone())))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }

    /// Exact value at an integer. Negative exponents are only allowed at
    /// `x = 1` and `x = -1`.
    pub fn evaluate(&self, x: i64) -> Result<BigInt, PolyError> {
        let mut acc = BigInt::zero();
        for (&e, c) in &self.terms {
            let value = if e >= 0 {
                num_traits::pow(BigInt::from(x), e as usize)
            } else if x == 1 || x == -1 {
                num_traits::pow(BigInt::from(x), e.unsigned_abs() as usize)
            } else {
                return Err(PolyError::NonUnitEvaluation { x, exponent: e });
            };
            acc += c * value;
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor`; fails if a remainder is left.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        let (Some(d_lo), Some(d_hi)) = (divisor.min_exponent(), divisor.max_exponent()) else {
            return Err(PolyError::DivisionByZero);
        };
        let lead = &divisor.terms[&d_hi];
        let mut rem = self.clone();
        let mut quotient = LaurentPoly::zero();
        while let Some(r_hi) = rem.max_exponent() {
            let r_lo = rem.min_exponent().unwrap();
            if r_hi - r_lo < d_hi - d_lo {
                return Err(PolyError::InexactDivision);
            }
            let c = &rem.terms[&r_hi];
            if !(c % lead).is_zero() {
                return Err(PolyError::InexactDivision);
            }
            let term = LaurentPoly::monomial(c / lead, r_hi - d_hi);
            rem = &rem - &(&term * divisor);
            quotient += &term;
        }
        Ok(quotient)
    }

    /// Coefficients from the lowest to the highest exponent, including
    /// interior zeros.
    pub fn dense_coefficients(&self) -> Vec<BigInt> {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => (lo..=hi).map(|e| self.coeff(e)).collect(),
            _ => Vec::new(),
        }
    }
}

impl<'a> Add<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Sub<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, magnitude: &BigInt, e: i64) -> fmt::Result {
    match (magnitude.is_one(), e) {
        (_, 0) => write!(f, "{magnitude}"),
        (true, 1) => f.write_str("q"),
        (true, _) => write!(f, "q^{e}"),
        (false, 1) => write!(f, "{magnitude}*q"),
        (false, _) => write!(f, "{magnitude}*q^{e}"),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_monomial(f, &c.abs(), e)?;
        }
        Ok(())
    }
}

fn parse_term(term: &str) -> Result<(i64, BigInt), PolyError> {
    let bad = || PolyError::Parse(term.to_string());
    let t = term.trim();
    let (coeff_part, power_part) = match t.find('q') {
        None => (t, None),
        Some(pos) => {
            let coeff = t[..pos].trim_end_matches('*').trim();
            (coeff, Some(t[pos + 1..].trim()))
        }
    };
    let coeff = match coeff_part {
        "" => BigInt::one(),
        "-" => -BigInt::one(),
        s => s.parse::<BigInt>().map_err(|_| bad())?,
    };
    let exponent = match power_part {
        None => 0,
        Some("") => 1,
        Some(p) => p.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?,
    };
    if power_part.is_none() && coeff_part.is_empty() {
        return Err(bad());
    }
    Ok((exponent, coeff))
}

impl FromStr for LaurentPoly {
    type Err = PolyError;

    /// Accepts the canonical grammar, and more loosely any sum of terms of
    /// the form `[c][*]q[^e]` or `c` separated by `+`/`-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PolyError::Parse(String::new()));
        }
        let mut out = LaurentPoly::zero();
        let mut current = String::new();
        let mut prev: Option<char> = None;
        for ch in s.chars() {
            let binary_sign = (ch == '+' || ch == '-') && !current.trim().is_empty() && prev != Some('^');
            if binary_sign {
                let (e, c) = parse_term(&current)?;
                out.add_term(e, c);
                current.clear();
                if ch == '-' {
                    current.push('-');
                }
            } else if !ch.is_whitespace() && (ch != '+' || !current.trim().is_empty()) {
                current.push(ch);
            }
            if !ch.is_whitespace() {
                prev = Some(ch);
            }
        }
        let (e, c) = parse_term(&current)?;
        out.add_term(e, c);
        Ok(out)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&e, c) in &self.terms {
            match c.to_i64() {
                Some(small) => seq.serialize_element(&(e, small))?,
                None => seq.serialize_element(&(e, c.to_string()))?,
            }
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Small(i64),
    Big(String),
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i64, CoeffRepr)> = Vec::deserialize(deserializer)?;
        let mut out = LaurentPoly::zero();
        let mut last = None;
        for (e, c) in pairs {
            if last.is_some_and(|l| l >= e) {
                return Err(de::Error::custom("exponents must be strictly ascending"));
            }
            last = Some(e);
            let c = match c {
                CoeffRepr::Small(v) => BigInt::from(v),
                CoeffRepr::Big(s) => s.parse().map_err(de::Error::custom)?,
            };
            if c.is_zero() {
                return Err(de::Error::custom("zero coefficients are not stored"));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn ring_examples() {
        let a = poly("q + q^3");
        assert_eq!(a.shift(-1), poly("1 + q^2"));
        assert_eq!(&a * &LaurentPoly::monomial(1, -1), poly("1 + q^2"));
        let b = poly("1 + q");
        assert_eq!(&b * &b, poly("1 + 2*q + q^2"));
        assert_eq!(poly("1 + q + q^2").evaluate(-1).unwrap(), BigInt::from(1));
        assert!((&b - &b).is_zero());
        assert_eq!(-poly("q - 1"), poly("1 - q"));
    }

    #[test]
    fn evaluation_rules() {
        let p = poly("q^-1 + 2");
        assert_eq!(p.evaluate(1).unwrap(), BigInt::from(3));
        assert_eq!(p.evaluate(-1).unwrap(), BigInt::from(1));
        assert_eq!(p.evaluate(0), Err(PolyError::NonUnitEvaluation { x: 0, exponent: -1 }));
        assert!(p.evaluate(2).is_err());
        assert_eq!(poly("3*q^2 + 1").evaluate(2).unwrap(), BigInt::from(13));
        assert_eq!(LaurentPoly::zero().evaluate(0).unwrap(), BigInt::zero());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::one().to_string(), "1");
        assert_eq!(LaurentPoly::q().to_string(), "q");
        assert_eq!(LaurentPoly::monomial(1, -1).to_string(), "q^-1");
        assert_eq!(LaurentPoly::monomial(2, 3).to_string(), "2*q^3");
        assert_eq!(LaurentPoly::monomial(-1, 1).to_string(), "-q");
        assert_eq!(LaurentPoly::from_terms([(1, 1), (3, 1)]).to_string(), "q + q^3");
        assert_eq!(LaurentPoly::from_terms([(0, 1), (2, -2)]).to_string(), "1 - 2*q^2");
        assert_eq!(LaurentPoly::from_terms([(-2, -3), (1, 2)]).to_string(), "-3*q^-2 + 2*q");
    }

    #[test]
    fn parse_accepts_loose_forms() {
        assert_eq!(poly("q^-1 - q^2"), LaurentPoly::from_terms([(-1, 1), (2, -1)]));
        assert_eq!(poly("-2q+3"), LaurentPoly::from_terms([(0, 3), (1, -2)]));
        assert_eq!(poly("0"), LaurentPoly::zero());
        assert!("q^x".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn exact_division() {
        let num = poly("1 - q^4");
        let den = poly("1 - q");
        assert_eq!(num.div_exact(&den).unwrap(), poly("1 + q + q^2 + q^3"));
        assert_eq!(poly("1 + q").div_exact(&poly("2")), Err(PolyError::InexactDivision));
        assert_eq!(
            poly("1 + q^2").div_exact(&poly("1 + q")),
            Err(PolyError::InexactDivision)
        );
        assert_eq!(
            poly("q").div_exact(&LaurentPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
        assert_eq!(poly("q^-2 + q^-1").div_exact(&poly("1 + q")).unwrap(), poly("q^-2"));
    }

    #[test]
    fn json_form() {
        let p = LaurentPoly::from_terms([(-1, 1), (2, -3)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[-1,1],[2,-3]]");
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let big = LaurentPoly::monomial(BigInt::from(10).pow(30), 0);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, "[[0,\"1000000000000000000000000000000\"]]");
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), big);
        assert!(serde_json::from_str::<LaurentPoly>("[[2,1],[1,1]]").is_err());
        assert!(serde_json::from_str::<LaurentPoly>("[[1,0]]").is_err());
    }
}
