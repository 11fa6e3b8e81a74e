//! Exact coefficient fields: the prime fields `F_p` and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The field of coefficients of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientField {
    /// `F_p` with residues stored in `[0, p)`.
    Prime(u64),
    /// `Q` with arbitrary-precision numerators and denominators.
    Rationals,
}

/// An element of a [`CoefficientField`]. The variant always matches the
/// field that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl CoefficientField {
    /// `F_p`, rejecting non-primes.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientField::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Builds the field from a characteristic, `0` meaning `Q`.
    pub fn from_characteristic(ch: u64) -> Result<Self> {
        if ch == 0 {
            Ok(CoefficientField::Rationals)
        } else {
            Self::prime(ch)
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Prime(p) => *p,
            CoefficientField::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            CoefficientField::Prime(_) => Scalar::Mod(0),
            CoefficientField::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            CoefficientField::Prime(_) => Scalar::Mod(1),
            CoefficientField::Rationals => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            CoefficientField::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Mod(r.to_u64().expect("residue fits in u64"))
            }
            CoefficientField::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
        }
    }

    /// `num/den`; fails over `F_p` unless `den` is invertible, and always
    /// fails for `den = 0`.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let not_in_field = || Error::CoefficientNotInField {
            coeff: format!("{num}/{den}"),
            field: self.to_string(),
        };
        if den.is_zero() {
            return Err(not_in_field());
        }
        match self {
            CoefficientField::Prime(_) => {
                let d = self.from_bigint(den);
                let inv = self.inv(&d).ok_or_else(not_in_field)?;
                Ok(self.mul(&self.from_bigint(num), &inv))
            }
            CoefficientField::Rationals => {
                Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone())))
            }
        }
    }

    /// Maps a rational number into the field, `None` when its denominator
    /// vanishes mod `p`.
    pub fn from_rational(&self, r: &BigRational) -> Option<Scalar> {
        self.from_ratio(r.numer(), r.denom()).ok()
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (CoefficientField::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (CoefficientField::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (CoefficientField::Prime(p), Scalar::Mod(x)) => {
                Scalar::Mod(if *x == 0 { 0 } else { p - x })
            }
            (CoefficientField::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (CoefficientField::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (CoefficientField::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (CoefficientField::Prime(p), Scalar::Mod(x)) => {
                let e = BigInt::from(*x).extended_gcd(&BigInt::from(*p));
                let r = e.x.mod_floor(&BigInt::from(*p));
                Some(Scalar::Mod(r.to_u64().expect("residue fits in u64")))
            }
            (CoefficientField::Rationals, Scalar::Rat(x)) => Some(Scalar::Rat(x.recip())),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    pub fn pow(&self, a: &Scalar, mut n: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Prime(p) => write!(f, "F_{p}"),
            CoefficientField::Rationals => write!(f, "Q"),
        }
    }
}

impl Scalar {
    /// True if the printed form starts with a minus sign.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Scalar::Mod(_) => false,
            Scalar::Rat(r) => r.is_negative(),
        }
    }

    pub(crate) fn abs_string(&self) -> String {
        match self {
            Scalar::Mod(v) => v.to_string(),
            Scalar::Rat(r) => r.abs().to_string(),
        }
    }

    pub(crate) fn is_abs_one(&self) -> bool {
        match self {
            Scalar::Mod(v) => *v == 1,
            Scalar::Rat(r) => r.abs().is_one(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Rat(r) => write!(f, "{r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(CoefficientField::prime(9), Err(Error::NotPrime(9)));
        assert!(CoefficientField::prime(7).is_ok());
        assert_eq!(
            CoefficientField::from_characteristic(0).unwrap(),
            CoefficientField::Rationals
        );
    }

    #[test]
    fn prime_field_inverses() {
        let f = CoefficientField::prime(101).unwrap();
        for v in 1..101 {
            let a = f.from_i64(v);
            let ia = f.inv(&a).unwrap();
            assert!(f.is_one(&f.mul(&a, &ia)));
            assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        }
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn half_is_not_in_f2() {
        let f = CoefficientField::prime(2).unwrap();
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(2)).is_err());
        let f3 = CoefficientField::prime(3).unwrap();
        assert_eq!(
            f3.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap(),
            Scalar::Mod(2)
        );
    }

    #[test]
    fn negative_integers_reduce_into_range() {
        let f = CoefficientField::prime(5).unwrap();
        assert_eq!(f.from_i64(-3), Scalar::Mod(2));
        assert_eq!(f.pow(&Scalar::Mod(2), 4), Scalar::Mod(1));
    }
}
