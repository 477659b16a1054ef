//! Exact scalars over the rationals and over prime fields GF(p).
//!
//! Rationals are arbitrary-precision, always stored fully reduced with a
//! positive denominator; GF(p) residues are stored in the canonical range
//! `0..p`. No floating point appears anywhere in the crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field of a computation: Q or GF(p) with p prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// GF(p); fails if `p` is not prime.
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::InvalidInput(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.integer(0)
    }

    pub fn one(&self) -> FieldElem {
        self.integer(1)
    }

    pub fn integer(&self, n: i64) -> FieldElem {
        match self {
            FieldSpec::Rationals => FieldElem::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::PrimeField(p) => FieldElem::Mod {
                p: *p,
                val: n.rem_euclid(*p as i64) as u64,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        match self {
            FieldSpec::Rationals => FieldElem::Rat(BigRational::from(n.clone())),
            FieldSpec::PrimeField(p) => {
                let m = n.mod_floor_u64(*p);
                FieldElem::Mod { p: *p, val: m }
            }
        }
    }

    pub fn rational(&self, numer: i64, denom: i64) -> Result<FieldElem> {
        if denom == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        match self {
            FieldSpec::Rationals => Ok(FieldElem::Rat(BigRational::new(
                BigInt::from(numer),
                BigInt::from(denom),
            ))),
            FieldSpec::PrimeField(_) => {
                let d = self.integer(denom);
                let inv = d.inv()?;
                Ok(&self.integer(numer) * &inv)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        let (_, digits) = m.to_u64_digits();
        *digits.first().unwrap_or(&0)
    }
}

/// An exact scalar. Carries enough information to recover its field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(BigRational),
    Mod { p: u64, val: u64 },
}

impl FieldElem {
    pub fn field(&self) -> FieldSpec {
        match self {
            FieldElem::Rat(_) => FieldSpec::Rationals,
            FieldElem::Mod { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::Mod { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_one(),
            FieldElem::Mod { val, .. } => *val == 1,
        }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        Ok(match self {
            FieldElem::Rat(r) => FieldElem::Rat(r.recip()),
            FieldElem::Mod { p, val } => FieldElem::Mod {
                p: *p,
                val: pow_mod(*val, *p - 2, *p),
            },
        })
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> FieldElem {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// For Q: Some(n) iff the value is the integer n. For GF(p): the residue.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    Some(r.numer().clone())
                } else {
                    None
                }
            }
            FieldElem::Mod { val, .. } => Some(BigInt::from(*val)),
        }
    }

    /// Matches the scalar against the integers `0..m` of its field.
    ///
    /// Requires `m <= p` in characteristic p so that distinct integers stay
    /// distinct as field elements; under that assumption the answer is unique.
    pub fn integer_in_range(&self, m: usize) -> Option<usize> {
        match self {
            FieldElem::Rat(r) => {
                if !r.denom().is_one() || r.numer().is_negative() {
                    return None;
                }
                let (_, digits) = r.numer().to_u64_digits();
                let n = *digits.first().unwrap_or(&0);
                if r.numer().bits() <= 63 && (n as usize) < m {
                    Some(n as usize)
                } else {
                    None
                }
            }
            FieldElem::Mod { val, .. } => {
                if (*val as usize) < m {
                    Some(*val as usize)
                } else {
                    None
                }
            }
        }
    }

    pub fn rat(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Rat(r) => Some(r),
            FieldElem::Mod { .. } => None,
        }
    }

    fn check_same_field(&self, other: &FieldElem) {
        if self.field() != other.field() {
            panic!(
                "field mismatch in scalar arithmetic: {} vs {}",
                self.field(),
                other.field()
            );
        }
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.check_same_field(rhs);
        match (self, rhs) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            (FieldElem::Mod { p, val: a }, FieldElem::Mod { val: b, .. }) => FieldElem::Mod {
                p: *p,
                val: add_mod(*a, *b, *p),
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self.check_same_field(rhs);
        match (self, rhs) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a - b),
            (FieldElem::Mod { p, val: a }, FieldElem::Mod { val: b, .. }) => FieldElem::Mod {
                p: *p,
                val: add_mod(*a, *p - *b, *p),
            },
            _ => unreachable!(),
        }
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.check_same_field(rhs);
        match (self, rhs) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            (FieldElem::Mod { p, val: a }, FieldElem::Mod { val: b, .. }) => FieldElem::Mod {
                p: *p,
                val: mul_mod(*a, *b, *p),
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rat(a) => FieldElem::Rat(-a),
            FieldElem::Mod { p, val } => FieldElem::Mod {
                p: *p,
                val: if *val == 0 { 0 } else { *p - *val },
            },
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElem::Mod { val, .. } => write!(f, "{val}"),
        }
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_requires_prime() {
        assert!(FieldSpec::prime_field(5).is_ok());
        assert!(FieldSpec::prime_field(6).is_err());
        assert!(FieldSpec::prime_field(1).is_err());
        assert!(FieldSpec::prime_field(2).is_ok());
    }

    #[test]
    fn rational_arithmetic_reduces() {
        let q = FieldSpec::Rationals;
        let half = q.rational(1, 2).unwrap();
        let third = q.rational(1, 3).unwrap();
        let sum = &half + &third;
        assert_eq!(sum, q.rational(5, 6).unwrap());
        assert_eq!(sum.to_string(), "5/6");
        let two = q.rational(4, 2).unwrap();
        assert_eq!(two.to_string(), "2");
        assert!(two.as_integer().is_some());
    }

    #[test]
    fn gf_arithmetic_canonical_range() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let a = f5.integer(3);
        let b = f5.integer(4);
        assert_eq!(&a * &b, f5.integer(2));
        assert_eq!(&a - &b, f5.integer(4));
        assert_eq!(f5.integer(-1), f5.integer(4));
        assert_eq!(a.inv().unwrap(), f5.integer(2));
        assert!(f5.zero().inv().is_err());
    }

    #[test]
    fn integer_in_range_matching() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.integer(2).integer_in_range(3), Some(2));
        assert_eq!(q.integer(3).integer_in_range(3), None);
        assert_eq!(q.rational(1, 2).unwrap().integer_in_range(3), None);
        assert_eq!(q.integer(-1).integer_in_range(3), None);
        let f5 = FieldSpec::prime_field(5).unwrap();
        assert_eq!(f5.integer(2).integer_in_range(3), Some(2));
        assert_eq!(f5.integer(4).integer_in_range(3), None);
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn cross_field_arithmetic_panics() {
        let a = FieldSpec::Rationals.one();
        let b = FieldSpec::prime_field(5).unwrap().one();
        let _ = &a + &b;
    }
}
