//! Laurent polynomials in one variable `W` with arbitrary-precision integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Canonical form: exponent → coefficient, zero coefficients never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn monomial(coef: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::default();
        p.add_term(exp, coef.into());
        p
    }

    /// The variable `W`.
    pub fn w() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::default();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i64, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `p(1)`, the sum of all coefficients.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes `W -> W^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        Self::constant(1)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl SubAssign for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident, $assign:ident) => {
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(mut self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$assign(rhs);
                self
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(mut self, rhs: LaurentPoly) -> LaurentPoly {
                self.$assign(&rhs);
                self
            }
        }
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &LaurentPoly) -> LaurentPoly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

impl Mul<LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Mul<&LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        &self * rhs
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| acc + p)
    }
}

impl<'a> Sum<&'a LaurentPoly> for LaurentPoly {
    fn sum<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| acc + p)
    }
}

impl Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| acc * p)
    }
}

impl<'a> Product<&'a LaurentPoly> for LaurentPoly {
    fn product<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| acc * p)
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, exp: i64, abs: &BigInt) -> fmt::Result {
    let unit = abs.is_one();
    match (exp, unit) {
        (0, _) => write!(f, "{abs}"),
        (1, true) => write!(f, "W"),
        (1, false) => write!(f, "{abs}W"),
        (_, true) => write!(f, "W^{exp}"),
        (_, false) => write!(f, "{abs}W^{exp}"),
    }
}

/// Highest exponent first: `W^2 + W - W^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            fmt_term(f, *e, &c.abs())?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Accepts sums of terms `[+|-] [coef] [*] [W[^exp]]`, e.g.
    /// `W^2 - W^-1 + W`, `-3W^-2`, `2*W`, `0`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |msg: &str| Error::Polynomial(format!("{msg} in {s:?}"));
        let glued = |c: char| c.is_ascii_alphanumeric() || c == '^' || c == '*';
        let raw: Vec<char> = s.chars().collect();
        for (i, c) in raw.iter().enumerate() {
            if c.is_whitespace() {
                let before = raw[..i].iter().rev().find(|c| !c.is_whitespace());
                let after = raw[i..].iter().find(|c| !c.is_whitespace());
                if let (Some(&b), Some(&a)) = (before, after) {
                    if glued(b) && glued(a) {
                        return Err(bad("missing operator between terms"));
                    }
                }
            }
        }
        let chars: Vec<char> = raw.into_iter().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(bad("empty polynomial"));
        }
        let mut p = LaurentPoly::zero();
        let mut i = 0;
        let read_int = |i: &mut usize| -> Option<BigInt> {
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            (*i > start).then(|| chars[start..*i].iter().collect::<String>().parse().unwrap())
        };
        while i < chars.len() {
            let mut sign = BigInt::one();
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            } else if i > 0 {
                return Err(bad("expected '+' or '-' between terms"));
            }
            let coef = read_int(&mut i);
            if i < chars.len() && chars[i] == '*' {
                if coef.is_none() {
                    return Err(bad("'*' without coefficient"));
                }
                i += 1;
            }
            let mut exp = 0i64;
            let has_var = i < chars.len() && (chars[i] == 'W' || chars[i] == 'w');
            if has_var {
                i += 1;
                exp = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let neg = if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                        i += 1;
                        chars[i - 1] == '-'
                    } else {
                        false
                    };
                    let e = read_int(&mut i).ok_or_else(|| bad("missing exponent"))?;
                    let e: i64 = e.try_into().map_err(|_| bad("exponent out of range"))?;
                    exp = if neg { -e } else { e };
                }
            }
            if coef.is_none() && !has_var {
                return Err(bad("empty term"));
            }
            p.add_term(exp, sign * coef.unwrap_or_else(BigInt::one));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_sorts_descending() {
        let q = LaurentPoly::from_terms([(2, 1), (-1, -1), (1, 1)]);
        assert_eq!(q.to_string(), "W^2 + W - W^-1");
        assert_eq!(p("W^2 - W^-1 + W"), q);
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
        assert_eq!(p("-3W^-2 + 2W").to_string(), "2W - 3W^-2");
        assert_eq!(p("2*W + 0"), LaurentPoly::monomial(2, 1));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let q = p("W + 1") - p("W");
        assert_eq!(q, LaurentPoly::one());
        assert_eq!(q.len(), 1);
        assert!((p("W") - p("W")).is_zero());
    }

    #[test]
    fn parse_errors() {
        for s in ["", "W^", "2 3", "*W", "W W"] {
            assert!(s.parse::<LaurentPoly>().is_err(), "{s:?}");
        }
    }

    #[test]
    fn conway_square() {
        let z = p("W - W^-1");
        assert_eq!(LaurentPoly::one() + z.pow(2), p("W^2 - 1 + W^-2"));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-4i64..=4, -5i64..=5), 0..5).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
            prop_assert_eq!(&a - &a, LaurentPoly::zero());
        }

        #[test]
        fn display_parse_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
