//! Exact scalars: arbitrary-precision rationals and prime fields of odd
//! characteristic.
//!
//! Every scalar type knows which field it lives in through [`Scalar::field`],
//! so constants (zero, one, small integers) can be produced without a global
//! modulus.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Exact rationals, always stored in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Field element with exact arithmetic.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Descriptor of the ambient field, cheap to copy.
    type Field: Copy + Eq + Debug + Send + Sync;

    fn field(&self) -> Self::Field;
    fn zero(field: Self::Field) -> Self;
    fn one(field: Self::Field) -> Self;
    fn from_i64(field: Self::Field, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    /// 0 for the rationals, p for F_p.
    fn characteristic(field: Self::Field) -> u64;

    /// Sign used by the text printer; only ordered fields override it.
    fn is_negative(&self) -> bool {
        false
    }

    fn is_one(&self) -> bool {
        *self == Self::one(self.field())
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// Field descriptor for [`Rational`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Q;

impl Scalar for Rational {
    type Field = Q;

    fn field(&self) -> Q {
        Q
    }
    fn zero(_: Q) -> Self {
        <BigRational as Zero>::zero()
    }
    fn one(_: Q) -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(_: Q, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn characteristic(_: Q) -> u64 {
        0
    }
    fn is_negative(&self) -> bool {
        num_traits::Signed::is_negative(self)
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::BadScalar(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// An odd prime below 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct OddPrime(u32);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if !(3..1 << 31).contains(&p) || p.is_multiple_of(2) || !is_prime(p) {
            return Err(AlgebraError::NotOddPrime(p));
        }
        Ok(OddPrime(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Every element of F_p, in the order 0, 1, ..., p-1.
    pub fn elements(self) -> impl Iterator<Item = Fp> + Clone {
        (0..self.0).map(move |v| Fp { v, p: self.0 })
    }
}

impl TryFrom<u32> for OddPrime {
    type Error = AlgebraError;
    fn try_from(p: u32) -> Result<Self, Self::Error> {
        OddPrime::new(p as u64)
    }
}

impl From<OddPrime> for u32 {
    fn from(p: OddPrime) -> u32 {
        p.0
    }
}

impl Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of F_p, canonical representative in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u32,
    p: u32,
}

impl Fp {
    pub fn new(p: OddPrime, v: i64) -> Self {
        let m = p.0 as i64;
        Fp {
            v: v.rem_euclid(m) as u32,
            p: p.0,
        }
    }

    pub fn value(self) -> u32 {
        self.v
    }

    pub fn prime(self) -> OddPrime {
        OddPrime(self.p)
    }

    /// Reduction of a rational; `None` when p divides the denominator.
    pub fn from_rational(q: &Rational, p: OddPrime) -> Option<Fp> {
        let m = BigInt::from(p.0);
        let den = q.denom().mod_floor(&m).to_i64()?;
        if den == 0 {
            return None;
        }
        let num = q.numer().mod_floor(&m).to_i64()?;
        Fp::new(p, num).div(&Fp::new(p, den))
    }

    /// Legendre symbol: 0, 1 or -1.
    pub fn legendre(self) -> i8 {
        if self.v == 0 {
            return 0;
        }
        if Scalar::pow(&self, ((self.p - 1) / 2) as u64).v == 1 {
            1
        } else {
            -1
        }
    }

    pub fn is_square(self) -> bool {
        self.legendre() >= 0
    }

    /// A square root by Tonelli-Shanks, when one exists.
    pub fn sqrt(self) -> Option<Fp> {
        if self.v == 0 {
            return Some(self);
        }
        if self.legendre() != 1 {
            return None;
        }
        let p = self.p as u64;
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let field = self.prime();
        let z = field
            .elements()
            .skip(2)
            .find(|z| z.legendre() == -1)
            .expect("odd prime has a non-residue");
        let mut m = s;
        let mut c = Scalar::pow(&z, q);
        let mut t = Scalar::pow(&self, q);
        let mut r = Scalar::pow(&self, q.div_ceil(2));
        while t.v != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2.v != 1 {
                t2 = t2 * t2;
                i += 1;
            }
            let b = Scalar::pow(&c, 1u64 << (m - i - 1));
            m = i;
            c = b * b;
            t = t * c;
            r = r * b;
        }
        Some(r)
    }

    /// Signed representative in `(-p/2, p/2]`, handy for reporting.
    pub fn centered(self) -> i64 {
        let v = self.v as i64;
        let p = self.p as i64;
        if v > p / 2 {
            v - p
        } else {
            v
        }
    }
}

impl Serialize for Fp {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_u32(self.v)
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p, "mixed prime fields");
        let s = self.v as u64 + o.v as u64;
        Fp {
            v: (s % self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p, "mixed prime fields");
        let s = self.v as u64 + self.p as u64 - o.v as u64;
        Fp {
            v: (s % self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p, "mixed prime fields");
        let s = self.v as u64 * o.v as u64;
        Fp {
            v: (s % self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.v == 0 {
            self
        } else {
            Fp {
                v: self.p - self.v,
                p: self.p,
            }
        }
    }
}

impl Scalar for Fp {
    type Field = OddPrime;

    fn field(&self) -> OddPrime {
        OddPrime(self.p)
    }
    fn zero(p: OddPrime) -> Self {
        Fp { v: 0, p: p.0 }
    }
    fn one(p: OddPrime) -> Self {
        Fp { v: 1, p: p.0 }
    }
    fn from_i64(p: OddPrime, n: i64) -> Self {
        Fp::new(p, n)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            Some(Scalar::pow(self, (self.p - 2) as u64))
        }
    }
    fn characteristic(p: OddPrime) -> u64 {
        p.0 as u64
    }
}

/// Rational reduction that fails loudly with the offending prime.
pub fn reduce(q: &Rational, p: OddPrime) -> Result<Fp, AlgebraError> {
    Fp::from_rational(q, p).ok_or(AlgebraError::BadPrime(p.get()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> OddPrime {
        OddPrime::new(p).unwrap()
    }

    #[test]
    fn rejects_even_and_composite_moduli() {
        assert!(OddPrime::new(2).is_err());
        assert!(OddPrime::new(9).is_err());
        assert!(OddPrime::new(1 << 31).is_err());
        assert!(OddPrime::new(2147483647).is_ok());
    }

    #[test]
    fn canonical_representatives() {
        let p = f(7);
        assert_eq!(Fp::new(p, -1).value(), 6);
        assert_eq!(Fp::new(p, 15).value(), 1);
        assert_eq!((Fp::new(p, 3) * Fp::new(p, 5)).value(), 1);
        assert_eq!(Fp::new(p, 3).inv().unwrap().value(), 5);
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = rat(6, -4);
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(parse_rational(" 10/4 ").unwrap(), rat(5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn reduction_mod_p() {
        let p = f(5);
        assert_eq!(Fp::from_rational(&rat(1, 2), p).unwrap().value(), 3);
        assert!(Fp::from_rational(&rat(1, 5), p).is_none());
        assert_eq!(Fp::from_rational(&rat(-7, 3), p).unwrap().value(), 1);
    }

    #[test]
    fn square_roots_match_enumeration() {
        for p in [3u64, 5, 7, 11, 13, 17, 97] {
            let p = f(p);
            for a in p.elements() {
                let brute = p.elements().any(|x| x * x == a);
                match a.sqrt() {
                    Some(r) => {
                        assert!(brute);
                        assert_eq!(r * r, a);
                    }
                    None => assert!(!brute),
                }
            }
        }
    }
}
