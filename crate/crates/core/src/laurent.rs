//! Laurent polynomials `K[x, x^-1]` over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::Rational;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    pub fn constant(k: Rational) -> Self {
        Self::monomial(k, 0)
    }

    /// `k x^exp`.
    pub fn monomial(k: Rational, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, k);
        p
    }

    pub fn x_pow(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    pub fn add_term(&mut self, exp: i64, k: Rational) {
        if k.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *slot += k;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, exp: i64) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(e, k)| (*e, k))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, k) in &other.coeffs {
            out.add_term(*e, k.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.coeffs {
            out.add_term(*e, c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, k) in &self.coeffs {
            for (b, l) in &other.coeffs {
                out.add_term(a + b, k * l);
            }
        }
        out
    }

    /// Substitutes `x -> x^-1`.
    pub fn invert_variable(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, k)| (-e, k.clone())).collect() }
    }

    /// The part of `x`-degree `d`.
    pub fn component(&self, d: i64) -> Self {
        Self::monomial(self.coefficient(d), d)
    }

    pub fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs.keys().copied()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words = self.coeffs.iter().map(|(e, k)| {
            let word = match *e {
                0 => String::new(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            };
            (word, k)
        });
        let mut first = true;
        for (word, k) in words {
            let negative = k < &Rational::zero();
            let magnitude = if negative { -k.clone() } else { k.clone() };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if word.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&word)?;
            } else {
                write!(f, "{magnitude} {word}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Serialized as a map from exponent (as a string key) to a `p/q` string.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, k) in &self.coeffs {
            map.serialize_entry(&e.to_string(), &k.to_string())?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn arithmetic() {
        let p = LaurentPoly::x_pow(1).add(&LaurentPoly::x_pow(-1));
        let sq = p.mul(&p);
        assert_eq!(sq.coefficient(2), q(1));
        assert_eq!(sq.coefficient(0), q(2));
        assert_eq!(sq.coefficient(-2), q(1));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.invert_variable(), p);
        assert_eq!(sq.to_string(), "x^-2 + 2 + x^2");
        assert_eq!(LaurentPoly::monomial(q(-3), 1).to_string(), "-3 x");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
