//! Scalar domains.
//!
//! Arithmetic goes through a small context object (`Ring` / `Field`) rather
//! than through operator traits on the elements, so that the prime-field
//! modulus can be chosen at runtime.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::AlgebraError;

/// A commutative ring with identity.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Format an element in the interchange notation.
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// Parse an element from the interchange notation (or a bare integer).
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, AlgebraError>;
}

pub type Rational = BigRational;

/// The field of rational numbers with arbitrary-precision components.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn from_bigint(&self, n: &BigInt) -> Rational {
        Rational::from_integer(n.clone())
    }
}

impl Field for Rationals {
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn format_elem(&self, a: &Rational) -> String {
        format!("{}/{}", a.numer(), a.denom())
    }

    fn parse_elem(&self, s: &str) -> Result<Rational, AlgebraError> {
        let s = s.trim();
        let bad = || AlgebraError::Parse(format!("invalid rational `{s}`"));
        match s.split_once('/') {
            Some((num, den)) => {
                let num: BigInt = num.trim().parse().map_err(|_| bad())?;
                let den: BigInt = den.trim().parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Rational::new(num, den))
            }
            None => {
                let num: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rational::from_integer(num))
            }
        }
    }
}

/// An element of a prime field. The modulus lives in the [`PrimeField`]
/// context, so this is just the canonical residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp(pub u64);

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> Fp {
        Fp(v.rem_euclid(self.p as i64) as u64)
    }

    /// All field elements in increasing residue order.
    pub fn elements(&self) -> impl Iterator<Item = Fp> {
        (0..self.p).map(Fp)
    }

    fn reduce_u128(&self, v: u128) -> Fp {
        Fp((v % self.p as u128) as u64)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring for PrimeField {
    type Elem = Fp;

    fn zero(&self) -> Fp {
        Fp(0)
    }
    fn one(&self) -> Fp {
        Fp(1 % self.p)
    }
    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        self.reduce_u128(a.0 as u128 + b.0 as u128)
    }
    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        self.reduce_u128(a.0 as u128 * b.0 as u128)
    }
    fn neg(&self, a: &Fp) -> Fp {
        if a.0 == 0 {
            Fp(0)
        } else {
            Fp(self.p - a.0)
        }
    }
    fn is_zero(&self, a: &Fp) -> bool {
        a.0 == 0
    }
    fn from_bigint(&self, n: &BigInt) -> Fp {
        let r = n.mod_floor(&BigInt::from(self.p));
        Fp(r.to_u64().expect("residue fits in u64"))
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &Fp) -> Option<Fp> {
        if a.0 == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        Some(self.pow(a, self.p - 2))
    }

    fn format_elem(&self, a: &Fp) -> String {
        format!("{} mod {}", a.0, self.p)
    }

    fn parse_elem(&self, s: &str) -> Result<Fp, AlgebraError> {
        let s = s.trim();
        let bad = || AlgebraError::Parse(format!("invalid field element `{s}`"));
        let (value, modulus) = match s.split_once("mod") {
            Some((v, m)) => (v.trim(), Some(m.trim())),
            None => (s, None),
        };
        if let Some(m) = modulus {
            let m: u64 = m.parse().map_err(|_| bad())?;
            if m != self.p {
                return Err(AlgebraError::Parse(format!(
                    "element `{s}` is not in F_{}",
                    self.p
                )));
            }
        }
        // Accept rationals like "1/2" as well.
        if let Some((num, den)) = value.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            let d = self.from_bigint(&den);
            return self
                .div(&self.from_bigint(&num), &d)
                .ok_or(AlgebraError::DivisionByZero);
        }
        let v: BigInt = value.parse().map_err(|_| bad())?;
        Ok(self.from_bigint(&v))
    }
}

/// Ring of plain integers; mostly useful for counting and for tests.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
}
