//! Laurent polynomials in one variable with coefficients in any `Ring`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Ring;

/// Dense Laurent polynomial `sum coeffs[k] * X^(low + k)`.
///
/// Always trimmed: the first and last stored coefficients are nonzero, and
/// the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly<C> {
    low: i64,
    coeffs: Vec<C>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse polynomial term `{0}`")]
pub struct ParsePolyError(pub String);

impl<C: Ring> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    pub fn monomial(c: C, exp: i64) -> Self {
        Self::from_coeffs(exp, vec![c])
    }

    /// Coefficients listed from exponent `low` upward.
    pub fn from_coeffs(low: i64, coeffs: Vec<C>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc = acc + Self::monomial(c, e);
        }
        acc
    }

    fn trim(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.low = 0;
            }
            Some(k) => {
                self.coeffs.drain(..k);
                self.low += k as i64;
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> C {
        let k = exp - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            C::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn shift(&self, by: i64) -> Self {
        LaurentPoly { low: self.low + by, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.low, self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Substitute `X -> X^-1`.
    pub fn reflect(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        match self.max_degree() {
            Some(top) => LaurentPoly { low: -top, coeffs },
            None => Self::zero(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.reflect()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at a unit of the coefficient ring, so negative powers make sense.
    /// `inv` must be the inverse of `x`.
    pub fn eval_unit(&self, x: &C, inv: &C) -> C {
        let mut acc = C::zero();
        for (e, c) in self.terms() {
            let base = if e >= 0 { x } else { inv };
            let mut p = C::one();
            for _ in 0..e.unsigned_abs() {
                p = p * base.clone();
            }
            acc = acc + c.clone() * p;
        }
        acc
    }

    pub fn map<D: Ring, F: Fn(&C) -> D>(&self, f: F) -> LaurentPoly<D> {
        LaurentPoly::from_coeffs(self.low, self.coeffs.iter().map(f).collect())
    }

    /// Exact division by a polynomial whose lowest coefficient is a unit (`+-1`).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dl = divisor.min_degree()?;
        let lead = divisor.coeff(dl);
        let unit = if lead == C::one() {
            C::one()
        } else if lead == -C::one() {
            -C::one()
        } else {
            return None;
        };
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let dtop = divisor.max_degree()?;
        while let Some(rl) = rem.min_degree() {
            if rem.max_degree()? - rl < dtop - dl {
                return None;
            }
            let c = rem.coeff(rl) * unit.clone();
            let term = Self::monomial(c, rl - dl);
            rem = rem - &term * divisor;
            quot = quot + term;
        }
        Some(quot)
    }
}

impl<C: Ring> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Ring> One for LaurentPoly<C> {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

fn combine<C: Ring>(a: &LaurentPoly<C>, b: &LaurentPoly<C>, neg: bool) -> LaurentPoly<C> {
    if a.is_zero() {
        return if neg { -b.clone() } else { b.clone() };
    }
    if b.is_zero() {
        return a.clone();
    }
    let low = a.low.min(b.low);
    let high = a.max_degree().unwrap().max(b.max_degree().unwrap());
    let coeffs = (low..=high)
        .map(|e| if neg { a.coeff(e) - b.coeff(e) } else { a.coeff(e) + b.coeff(e) })
        .collect();
    LaurentPoly::from_coeffs(low, coeffs)
}

impl<C: Ring> Add for LaurentPoly<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        combine(&self, &rhs, false)
    }
}

impl<C: Ring> Sub for LaurentPoly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        combine(&self, &rhs, true)
    }
}

impl<C: Ring> Neg for LaurentPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentPoly { low: self.low, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<C: Ring> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        LaurentPoly::from_coeffs(self.low + rhs.low, out)
    }
}

impl<C: Ring> Mul for LaurentPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl LaurentPoly<i64> {
    /// Render with descending powers of `var`, e.g. `T^3 - T^2 + 1 - T^-2 + T^-3`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let terms: Vec<(i64, i64)> = self.terms().map(|(e, c)| (e, *c)).collect();
        for (idx, &(e, c)) in terms.iter().rev().enumerate() {
            let mag = c.unsigned_abs();
            let body = match (e, mag) {
                (0, m) => m.to_string(),
                (1, 1) => var.to_string(),
                (1, m) => format!("{m}*{var}"),
                (e, 1) => format!("{var}^{e}"),
                (e, m) => format!("{m}*{var}^{e}"),
            };
            if idx == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    /// Inverse of [`LaurentPoly::render`]. Accepts `*` or juxtaposition
    /// between coefficient and variable, and any whitespace.
    pub fn parse(text: &str, var: &str) -> Result<Self, ParsePolyError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParsePolyError(text.to_string()));
        }
        let mut pieces = Vec::new();
        let mut cur = String::new();
        let chars: Vec<char> = compact.chars().collect();
        for (i, &ch) in chars.iter().enumerate() {
            let after_caret = i > 0 && chars[i - 1] == '^';
            if (ch == '+' || ch == '-') && !after_caret && !cur.is_empty() {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        let mut acc = Self::zero();
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            let bad = || ParsePolyError(piece.clone());
            let (coef, exp) = match body.find(var) {
                None => (body.parse::<i64>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let head = body[..pos].trim_end_matches('*');
                    let coef = if head.is_empty() { 1 } else { head.parse::<i64>().map_err(|_| bad())? };
                    let tail = &body[pos + var.len()..];
                    let exp = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?
                    };
                    (coef, exp)
                }
            };
            acc = acc + Self::monomial(sign * coef, exp);
        }
        Ok(acc)
    }

    pub fn eval_i64(&self, x: i64) -> Option<i64> {
        if x == 0 && self.low < 0 {
            return None;
        }
        if x.abs() != 1 && self.low < 0 {
            return None;
        }
        let mut acc: i64 = 0;
        for (e, c) in self.terms() {
            acc += c * x.pow(e.unsigned_abs() as u32);
        }
        Some(acc)
    }
}

impl fmt::Display for LaurentPoly<i64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("T"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = LaurentPoly<i64>;

    #[test]
    fn render_descending() {
        let p = P::from_terms([(3, 1), (2, -1), (0, 1), (-2, -1), (-3, 1)]);
        assert_eq!(p.render("T"), "T^3 - T^2 + 1 - T^-2 + T^-3");
        assert_eq!(P::from_terms([(1, -2), (0, 5), (-1, -2)]).render("T"), "-2*T + 5 - 2*T^-1");
        assert_eq!(P::zero().render("T"), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["T^3 - T^2 + 1 - T^-2 + T^-3", "-T + 3 - T^-1", "2*T - 3 + 2*T^-1", "1", "-7*T^-4"] {
            assert_eq!(P::parse(s, "T").unwrap().render("T"), s);
        }
        assert_eq!(P::parse("2T^2+T", "T").unwrap(), P::from_terms([(2, 2), (1, 1)]));
        assert!(P::parse("T^x", "T").is_err());
    }

    #[test]
    fn arithmetic_and_reflection() {
        let a = P::from_terms([(1, 1), (0, -1), (-1, 1)]);
        let sq = &a * &a;
        assert_eq!(sq.render("T"), "T^2 - 2*T + 3 - 2*T^-1 + T^-2");
        assert!(sq.is_symmetric());
        assert_eq!((a.clone() - a.clone()), P::zero());
        assert_eq!(P::from_terms([(2, 1), (0, 3)]).reflect(), P::from_terms([(-2, 1), (0, 3)]));
        assert_eq!(sq.eval_i64(1), Some(1));
        assert_eq!(a.eval_i64(-1), Some(-3));
    }

    #[test]
    fn exact_division() {
        let a = P::from_terms([(2, 1), (1, -1), (0, 1)]);
        let b = P::from_terms([(1, 1), (0, 1)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(P::from_terms([(2, 1), (0, 1)]).div_exact(&b), None);
    }
}
