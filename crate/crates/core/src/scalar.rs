//! Scalar traits shared by the polynomial and matrix code.
//!
//! `Ring` covers anything with exact `+ - *`; `Field` adds exact division.
//! `F2` is the two element field used for mod-2 homology.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, One, Signed, Zero};

pub trait Ring: Clone + Debug + PartialEq + Num + Neg<Output = Self> {}

impl<T> Ring for T where T: Clone + Debug + PartialEq + Num + Neg<Output = T> {}

/// Exact division by any nonzero element.
pub trait Field: Ring {}

impl<I> Field for Ratio<I> where I: Clone + Debug + Integer + Signed {}
impl Field for F2 {}
impl Field for f64 {}
impl Field for f32 {}

/// Integer types usable for determinants and Smith normal form.
pub trait IntegerRing: Ring + Integer + Signed {}

impl IntegerRing for i32 {}
impl IntegerRing for i64 {}
impl IntegerRing for i128 {}
impl IntegerRing for BigInt {}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F2(pub bool);

impl F2 {
    pub fn from_int(v: i64) -> Self {
        F2(v.rem_euclid(2) == 1)
    }
}

impl Debug for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for F2 {
    type Output = F2;
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for F2 {
    type Output = F2;
    fn sub(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for F2 {
    type Output = F2;
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 & rhs.0)
    }
}

impl Div for F2 {
    type Output = F2;
    fn div(self, rhs: F2) -> F2 {
        assert!(rhs.0, "division by zero in F2");
        self
    }
}

impl Rem for F2 {
    type Output = F2;
    fn rem(self, rhs: F2) -> F2 {
        assert!(rhs.0, "division by zero in F2");
        F2(false)
    }
}

impl Neg for F2 {
    type Output = F2;
    fn neg(self) -> F2 {
        self
    }
}

impl Zero for F2 {
    fn zero() -> F2 {
        F2(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for F2 {
    fn one() -> F2 {
        F2(true)
    }
}

impl Num for F2 {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> Result<F2, Self::FromStrRadixErr> {
        i64::from_str_radix(s, radix).map(F2::from_int)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_arithmetic() {
        let one = F2::one();
        assert_eq!(one + one, F2::zero());
        assert_eq!(one * one, one);
        assert_eq!(-one, one);
        assert_eq!(F2::from_int(-3), one);
        assert_eq!(F2::from_int(4), F2::zero());
    }
}
