//! Sparse Laurent polynomials with integer coefficients in named variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ring::{Field, Ring};
use super::AlgebraError;

/// The four families of indeterminates: network weights `a_b`, `c_b` and
/// chip parameters `p_b`, `m_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarKind {
    A,
    C,
    P,
    M,
}

impl VarKind {
    pub fn letter(self) -> char {
        match self {
            VarKind::A => 'a',
            VarKind::C => 'c',
            VarKind::P => 'p',
            VarKind::M => 'm',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        match c {
            'a' => Some(VarKind::A),
            'c' => Some(VarKind::C),
            'p' => Some(VarKind::P),
            'm' => Some(VarKind::M),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub kind: VarKind,
    pub index: u32,
}

impl Variable {
    pub fn new(kind: VarKind, index: u32) -> Self {
        Variable { kind, index }
    }
    pub fn a(index: u32) -> Self {
        Self::new(VarKind::A, index)
    }
    pub fn c(index: u32) -> Self {
        Self::new(VarKind::C, index)
    }
    pub fn p(index: u32) -> Self {
        Self::new(VarKind::P, index)
    }
    pub fn m(index: u32) -> Self {
        Self::new(VarKind::M, index)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.index)
    }
}

impl FromStr for Variable {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || AlgebraError::Parse(format!("invalid variable `{s}`"));
        let mut chars = s.chars();
        let kind = chars.next().and_then(VarKind::from_letter).ok_or_else(bad)?;
        let rest = chars.as_str().trim_start_matches('_');
        let index: u32 = rest.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Variable { kind, index })
    }
}

impl Serialize for Variable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Variable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A Laurent monomial: sorted `(variable, exponent)` pairs, no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Variable, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_exponents<I: IntoIterator<Item = (Variable, i32)>>(it: I) -> Self {
        let mut map: BTreeMap<Variable, i32> = BTreeMap::new();
        for (v, e) in it {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn exponents(&self) -> &[(Variable, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent_of(&self, v: Variable) -> i32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    /// The monomial with `v` removed, together with the exponent it had.
    pub fn split_off(&self, v: Variable) -> (Monomial, i32) {
        let e = self.exponent_of(v);
        let rest = self.0.iter().copied().filter(|(w, _)| *w != v).collect();
        (Monomial(rest), e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// An exact sparse Laurent polynomial with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored, so structural equality
/// is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Variable) -> Self {
        Self::term(1, Monomial::var(v))
    }

    pub fn term<C: Into<BigInt>>(c: C, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPolynomial { terms }
    }

    /// `coeff * prod v^e`.
    pub fn monomial<C: Into<BigInt>, I: IntoIterator<Item = (Variable, i32)>>(
        coeff: C,
        exps: I,
    ) -> Self {
        Self::term(coeff, Monomial::from_exponents(exps))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// The single term, if this polynomial has exactly one.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// True if no variable appears with a negative exponent.
    pub fn is_polynomial(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.exponents().iter().all(|&(_, e)| e > 0))
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: Vec<Variable> = self
            .terms
            .keys()
            .flat_map(|m| m.exponents().iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn neg_ref(&self) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = LaurentPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale<C: Into<BigInt>>(&self, c: C) -> Self {
        let c = c.into();
        let mut out = LaurentPolynomial::zero();
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d * &c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = LaurentPolynomial::one();
        for _ in 0..e {
            acc = LaurentPolynomial::mul_ref(&acc, self);
        }
        acc
    }

    /// Inverse of a unit monomial `±x^e`: exponents negated, coefficient kept.
    pub fn monomial_inverse(&self) -> Result<Self, AlgebraError> {
        match self.as_monomial() {
            Some((m, c)) if c.abs().is_one() => Ok(Self::term(c.clone(), m.inverse())),
            _ => Err(AlgebraError::NotAUnitMonomial(self.to_string())),
        }
    }

    /// Apply the ring homomorphism sending each variable in `images` to its
    /// image; variables not in the map are left alone. Variables that occur
    /// with a negative exponent must map to unit monomials.
    pub fn substitute(
        &self,
        images: &BTreeMap<Variable, LaurentPolynomial>,
    ) -> Result<Self, AlgebraError> {
        let mut out = LaurentPolynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = LaurentPolynomial::constant(c.clone());
            let mut kept = Vec::new();
            for &(v, e) in m.exponents() {
                match images.get(&v) {
                    Some(img) => {
                        let base = if e < 0 {
                            img.monomial_inverse()?
                        } else {
                            img.clone()
                        };
                        acc = LaurentPolynomial::mul_ref(&acc, &base.pow(e.unsigned_abs()));
                    }
                    None => kept.push((v, e)),
                }
            }
            acc = LaurentPolynomial::mul_ref(&acc, &LaurentPolynomial::monomial(1, kept));
            out = LaurentPolynomial::add_ref(&out, &acc);
        }
        Ok(out)
    }

    /// Evaluate at a point of `field`. Every variable must be assigned, and
    /// variables with negative exponents must be assigned nonzero values.
    pub fn evaluate<F: Field>(
        &self,
        field: &F,
        assignment: &BTreeMap<Variable, F::Elem>,
    ) -> Result<F::Elem, AlgebraError> {
        let mut total = field.zero();
        for (m, c) in &self.terms {
            let mut t = field.from_bigint(c);
            for &(v, e) in m.exponents() {
                t = field.mul(&t, &power(field, assignment, v, e)?);
            }
            total = field.add(&total, &t);
        }
        Ok(total)
    }

    /// Evaluate every variable except `var`, returning the coefficients of the
    /// resulting Laurent polynomial in `var`, keyed by exponent.
    pub fn evaluate_except<F: Field>(
        &self,
        field: &F,
        assignment: &BTreeMap<Variable, F::Elem>,
        var: Variable,
    ) -> Result<BTreeMap<i32, F::Elem>, AlgebraError> {
        let mut coeffs: BTreeMap<i32, F::Elem> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(var);
            let mut t = field.from_bigint(c);
            for &(v, ev) in rest.exponents() {
                t = field.mul(&t, &power(field, assignment, v, ev)?);
            }
            let slot = coeffs.entry(e).or_insert_with(|| field.zero());
            *slot = field.add(slot, &t);
        }
        coeffs.retain(|_, c| !field.is_zero(c));
        Ok(coeffs)
    }

    /// Serialize as `±c·v^e·…` terms joined with `" + "`; zero is `"0"`.
    pub fn to_wire(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = if c.is_negative() {
                    format!("-{}", c.abs())
                } else {
                    format!("+{c}")
                };
                for (v, e) in m.exponents() {
                    s.push_str(&format!("·{v}^{e}"));
                }
                s
            })
            .collect();
        parts.join(" + ")
    }

    pub fn from_wire(s: &str) -> Result<Self, AlgebraError> {
        let s = s.trim();
        if s == "0" {
            return Ok(LaurentPolynomial::zero());
        }
        let bad = |why: &str| AlgebraError::Parse(format!("invalid polynomial `{s}`: {why}"));
        let mut out = LaurentPolynomial::zero();
        for term in s.split(" + ") {
            let mut factors = term.trim().split('·');
            let coeff_str = factors.next().ok_or_else(|| bad("empty term"))?;
            let coeff: BigInt = coeff_str
                .trim_start_matches('+')
                .parse()
                .map_err(|_| bad("coefficient"))?;
            let mut exps = Vec::new();
            for f in factors {
                let (v, e) = f.split_once('^').ok_or_else(|| bad("missing exponent"))?;
                let v: Variable = v.parse()?;
                let e: i32 = e.parse().map_err(|_| bad("exponent"))?;
                exps.push((v, e));
            }
            out = LaurentPolynomial::add_ref(&out, &LaurentPolynomial::monomial(coeff, exps));
        }
        Ok(out)
    }
}

fn power<F: Field>(
    field: &F,
    assignment: &BTreeMap<Variable, F::Elem>,
    v: Variable,
    e: i32,
) -> Result<F::Elem, AlgebraError> {
    let x = assignment
        .get(&v)
        .ok_or(AlgebraError::UnassignedVariable(v))?;
    let base = if e < 0 {
        field
            .inv(x)
            .ok_or(AlgebraError::ZeroToNegativePower(v))?
    } else {
        x.clone()
    };
    Ok(field.pow(&base, e.unsigned_abs() as u64))
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl From<Variable> for LaurentPolynomial {
    fn from(v: Variable) -> Self {
        LaurentPolynomial::var(v)
    }
}

impl From<i64> for LaurentPolynomial {
    fn from(c: i64) -> Self {
        LaurentPolynomial::constant(c)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                self.$imp(&rhs)
            }
        }
        impl $tr<&LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                self.$imp(rhs)
            }
        }
        impl $tr<LaurentPolynomial> for &LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                self.$imp(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPolynomial> for &'a LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: &'a LaurentPolynomial) -> LaurentPolynomial {
                self.$imp(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.neg_ref()
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.neg_ref()
    }
}

/// Ring context for [`LaurentPolynomial`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LaurentRing;

impl Ring for LaurentRing {
    type Elem = LaurentPolynomial;

    fn zero(&self) -> LaurentPolynomial {
        LaurentPolynomial::zero()
    }
    fn one(&self) -> LaurentPolynomial {
        LaurentPolynomial::one()
    }
    fn add(&self, a: &LaurentPolynomial, b: &LaurentPolynomial) -> LaurentPolynomial {
        a + b
    }
    fn mul(&self, a: &LaurentPolynomial, b: &LaurentPolynomial) -> LaurentPolynomial {
        a * b
    }
    fn neg(&self, a: &LaurentPolynomial) -> LaurentPolynomial {
        -a
    }
    fn is_zero(&self, a: &LaurentPolynomial) -> bool {
        a.is_zero()
    }
    fn from_bigint(&self, n: &BigInt) -> LaurentPolynomial {
        LaurentPolynomial::constant(n.clone())
    }
}
