//! Plücker-coordinate descriptions of Deodhar components: necklaces,
//! Schubert cells, matroids, the box minors that characterize each
//! component, point identification with weight recovery, and point counts
//! over finite fields.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{is_prime, AlgebraError, Field, LaurentPolynomial, LaurentRing, Matrix, Ring, VarKind, Variable};
use crate::godiagram::{reading_numbers, stats, validate, Fill, GoDiagram};
use crate::marshrietsch::{chip_word_in_order, group_element, project, Counterexample, TheoremReport};
use crate::network::{build_network, weight_matrix, NetworkError};
use crate::weyl::{
    box_generator, bruhat_leq, enumerate_distinguished, shape_to_subset, standard_reading_order, subset_to_shape,
    BoxRef, Permutation, ReducedWord, Shape, WeylError,
};

type Poly = LaurentPolynomial;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StrataError {
    #[error("all Plücker coordinates vanish")]
    ZeroVector,
    #[error("matrix has rank below {0}")]
    RankDeficient(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bases violate the exchange axiom at {0:?}, {1:?}")]
    Exchange(Vec<usize>, Vec<usize>),
    #[error("no minor determines {0}")]
    Underdetermined(Variable),
    #[error("not a point of the Grassmannian: {0}")]
    Inconsistent(String),
    #[error("bad Plücker vector: {0}")]
    Parse(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// All `k`-subsets of `[n]` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (1..=n).combinations(k).collect()
}

/// Nonzero Plücker coordinates, keyed by sorted 1-based column sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerVector<T> {
    pub k: usize,
    pub n: usize,
    pub coords: BTreeMap<Vec<usize>, T>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PluckerJson {
    pub k: usize,
    pub n: usize,
    pub coords: BTreeMap<String, String>,
}

impl<T: Clone> PluckerVector<T> {
    /// Drops zero entries; fails if nothing is left.
    pub fn new<R: Ring<Elem = T>>(
        ring: &R,
        k: usize,
        n: usize,
        coords: BTreeMap<Vec<usize>, T>,
    ) -> Result<Self, StrataError> {
        let mut clean = BTreeMap::new();
        for (mut j, v) in coords {
            j.sort_unstable();
            if j.len() != k || j.iter().any(|&x| x == 0 || x > n) || j.windows(2).any(|w| w[0] == w[1]) {
                return Err(StrataError::Parse(format!("{j:?} is not a {k}-subset of [{n}]")));
            }
            if !ring.is_zero(&v) {
                clean.insert(j, v);
            }
        }
        if clean.is_empty() {
            return Err(StrataError::ZeroVector);
        }
        Ok(PluckerVector { k, n, coords: clean })
    }

    pub fn get(&self, j: &[usize]) -> Option<&T> {
        self.coords.get(j)
    }

    pub fn is_nonzero(&self, j: &[usize]) -> bool {
        self.coords.contains_key(j)
    }

    pub fn support(&self) -> Vec<Vec<usize>> {
        self.coords.keys().cloned().collect()
    }

    pub fn lex_min(&self) -> &[usize] {
        self.coords.keys().next().expect("nonempty")
    }

    pub fn lex_max(&self) -> &[usize] {
        self.coords.keys().next_back().expect("nonempty")
    }

    pub fn to_json_with(&self, fmt: impl Fn(&T) -> String) -> PluckerJson {
        PluckerJson {
            k: self.k,
            n: self.n,
            coords: self
                .coords
                .iter()
                .map(|(j, v)| (j.iter().join(","), fmt(v)))
                .collect(),
        }
    }

    pub fn from_json_with<R: Ring<Elem = T>>(
        ring: &R,
        j: &PluckerJson,
        parse: impl Fn(&str) -> Result<T, AlgebraError>,
    ) -> Result<Self, StrataError> {
        let mut coords = BTreeMap::new();
        for (key, val) in &j.coords {
            let set = key
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| StrataError::Parse(format!("bad index set {key:?}")))?;
            coords.insert(set, parse(val)?);
        }
        Self::new(ring, j.k, j.n, coords)
    }
}

/// All maximal minors of a `k × n` matrix.
pub fn plucker_vector<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<PluckerVector<R::Elem>, StrataError> {
    let (k, n) = (a.nrows(), a.ncols());
    let mut coords = BTreeMap::new();
    for j in k_subsets(n, k) {
        let cols: Vec<usize> = j.iter().map(|x| x - 1).collect();
        coords.insert(j, a.columns(&cols).det_division_free(ring)?);
    }
    PluckerVector::new(ring, k, n, coords).map_err(|e| match e {
        StrataError::ZeroVector => StrataError::RankDeficient(k),
        e => e,
    })
}

/// Symbolic Plücker vector of a diagram's weight matrix.
pub fn network_plucker(d: &GoDiagram) -> PluckerVector<Poly> {
    plucker_vector(&LaurentRing, &weight_matrix(&build_network(d))).expect("weight matrices have full rank")
}

/// Sort key of a subset under the shifted order `i <_i i+1 <_i … <_i i−1`.
fn shifted_key(j: &[usize], i: usize, n: usize) -> Vec<usize> {
    let mut key: Vec<usize> = j.iter().map(|&x| (x + n - i) % n).collect();
    key.sort_unstable();
    key
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GrassmannNecklace(pub Vec<Vec<usize>>);

impl fmt::Display for GrassmannNecklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| format!("{{{}}}", s.iter().join(","))).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `I_i` is the `<_i`-minimal subset with nonzero coordinate.
pub fn grassmann_necklace<T: Clone>(p: &PluckerVector<T>) -> GrassmannNecklace {
    GrassmannNecklace(
        (1..=p.n)
            .map(|i| {
                p.coords
                    .keys()
                    .min_by_key(|j| shifted_key(j, i, p.n))
                    .expect("nonempty")
                    .clone()
            })
            .collect(),
    )
}

pub fn validate_necklace(nk: &GrassmannNecklace) -> bool {
    let n = nk.0.len();
    if n == 0 {
        return false;
    }
    let k = nk.0[0].len();
    if nk.0.iter().any(|s| s.len() != k || s.iter().any(|&x| x == 0 || x > n)) {
        return false;
    }
    (1..=n).all(|i| {
        let cur: BTreeSet<usize> = nk.0[i - 1].iter().copied().collect();
        let next: BTreeSet<usize> = nk.0[i % n].iter().copied().collect();
        if cur.contains(&i) {
            let mut rest = cur.clone();
            rest.remove(&i);
            rest.is_subset(&next) && next.len() == k
        } else {
            cur == next
        }
    })
}

/// Shape of the Schubert cell: `λ` with `I(λ)` the lex-minimal support.
pub fn schubert_shape<T: Clone>(p: &PluckerVector<T>) -> Result<Shape, StrataError> {
    Ok(subset_to_shape(p.lex_min(), p.n)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matroid {
    pub k: usize,
    pub n: usize,
    pub bases: BTreeSet<Vec<usize>>,
}

impl Matroid {
    pub fn new(k: usize, n: usize, bases: BTreeSet<Vec<usize>>) -> Result<Self, StrataError> {
        if bases.is_empty() {
            return Err(StrataError::ZeroVector);
        }
        for a in &bases {
            for b in &bases {
                for &x in a.iter().filter(|x| !b.contains(x)) {
                    let ok = b.iter().filter(|y| !a.contains(y)).any(|&y| {
                        let mut c: Vec<usize> = a.iter().copied().filter(|&z| z != x).collect();
                        c.push(y);
                        c.sort_unstable();
                        bases.contains(&c)
                    });
                    if !ok {
                        return Err(StrataError::Exchange(a.clone(), b.clone()));
                    }
                }
            }
        }
        Ok(Matroid { k, n, bases })
    }
}

pub fn matroid<T: Clone>(p: &PluckerVector<T>) -> Result<Matroid, StrataError> {
    Matroid::new(p.k, p.n, p.coords.keys().cloned().collect())
}

/// The in/out splitting of the word at one box and the minor it controls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxFactorization {
    pub box_ref: BoxRef,
    pub fill: Fill,
    /// Boxes weakly southeast of `box_ref`, in standard order.
    pub in_boxes: Vec<BoxRef>,
    pub out_boxes: Vec<BoxRef>,
    pub w_in: Permutation,
    pub v_in: Permutation,
    pub w_out: Permutation,
    pub v_out: Permutation,
    pub minor: Vec<usize>,
}

fn word_product(n: usize, boxes: &[BoxRef], k: usize, keep: impl Fn(BoxRef) -> bool) -> Permutation {
    let letters: Vec<usize> = boxes
        .iter()
        .filter(|&&b| keep(b))
        .map(|&b| box_generator(b, k, n))
        .collect();
    Permutation::from_word(n, &letters).expect("generators in range")
}

/// `I_b` for box `b` given the fills of the boxes weakly southeast of it
/// (the fill of `b` itself is ignored).
fn minor_index(d: &GoDiagram, b: BoxRef) -> Vec<usize> {
    let (k, n) = (d.k(), d.n());
    let in_boxes: Vec<BoxRef> = standard_reading_order(d.shape())
        .into_iter()
        .filter(|x| x.row >= b.row && x.col >= b.col)
        .collect();
    let w_in = word_product(n, &in_boxes, k, |_| true);
    // v_in for a plus, and v_in·s_b for a stone, both equal the in-product
    // with b left out, because b is read last among the in-boxes
    let v_before = word_product(n, &in_boxes, k, |x| x != b && d.get(x) != Fill::Plus);
    let i = shape_to_subset(d.shape());
    let g = v_before.compose(&w_in.inverse()).expect("same n");
    let mut out = g.act_on_set(&i);
    out.sort_unstable();
    out
}

pub fn box_minors(d: &GoDiagram) -> Vec<BoxFactorization> {
    let (k, n) = (d.k(), d.n());
    let order = standard_reading_order(d.shape());
    order
        .iter()
        .map(|&b| {
            let (in_boxes, out_boxes): (Vec<BoxRef>, Vec<BoxRef>) =
                order.iter().partition(|x| x.row >= b.row && x.col >= b.col);
            let taken = |x: BoxRef| d.get(x) != Fill::Plus;
            BoxFactorization {
                box_ref: b,
                fill: d.get(b),
                w_in: word_product(n, &in_boxes, k, |_| true),
                v_in: word_product(n, &in_boxes, k, taken),
                w_out: word_product(n, &out_boxes, k, |_| true),
                v_out: word_product(n, &out_boxes, k, taken),
                in_boxes,
                out_boxes,
                minor: minor_index(d, b),
            }
        })
        .collect()
}

/// The Plücker vector of the chip-parameterized point, with parameters
/// numbered along `order`.
pub fn mr_plucker(d: &GoDiagram, order: &[BoxRef]) -> Result<PluckerVector<Poly>, StrataError> {
    let word = chip_word_in_order(d, order).map_err(|e| StrataError::Parse(e.to_string()))?;
    let g = group_element(&word, d.n()).map_err(|e| StrataError::Parse(e.to_string()))?;
    let m = project(&g, d.k(), &shape_to_subset(d.shape())).map_err(|e| StrataError::Parse(e.to_string()))?;
    plucker_vector(&LaurentRing, &m.matrix)
}

fn signed_p_product(d: &GoDiagram, boxes: &[BoxRef], numbers: &BTreeMap<BoxRef, usize>) -> Poly {
    let blacks = boxes.iter().filter(|&&b| d.get(b) == Fill::Black).count();
    let exps = boxes
        .iter()
        .filter(|&&b| d.get(b) == Fill::Plus)
        .map(|b| (Variable::p(numbers[b] as u32), 1));
    Poly::monomial(if blacks % 2 == 0 { 1 } else { -1 }, exps)
}

fn report(d: &GoDiagram, theorem: &str, set: &[usize], expected: &Poly, actual: Option<&Poly>) -> TheoremReport {
    let actual = actual.cloned().unwrap_or_else(Poly::zero);
    let cx = (*expected != actual).then(|| Counterexample {
        row: 0,
        col: 0,
        expected: format!("Δ_{{{}}} = {expected}", set.iter().join(",")),
        actual: actual.to_string(),
    });
    TheoremReport::new(d, theorem, cx)
}

/// Lex-min and lex-max nonzero coordinates of the chip-parameterized
/// point: `Δ_I = (−1)^{#black} Π p` at `I = w{n,…,n−k+1}` and `Δ_{I'} = 1`
/// at `I' = v{n,…,n−k+1}`.
pub fn check_extremal(d: &GoDiagram, order: &[BoxRef], p: &PluckerVector<Poly>) -> TheoremReport {
    let (k, n) = (d.k(), d.n());
    let numbers: BTreeMap<BoxRef, usize> = reading_numbers(order).into_iter().collect();
    let top: Vec<usize> = (n - k + 1..=n).collect();
    let w = word_product(n, order, k, |_| true);
    let v = word_product(n, order, k, |b| d.get(b) != Fill::Plus);
    let mut i = w.act_on_set(&top);
    i.sort_unstable();
    let mut i2 = v.act_on_set(&top);
    i2.sort_unstable();
    let fail = |msg: String| {
        TheoremReport::new(
            d,
            "extremal",
            Some(Counterexample {
                row: 0,
                col: 0,
                expected: msg,
                actual: format!("support from {:?} to {:?}", p.lex_min(), p.lex_max()),
            }),
        )
    };
    if p.lex_min() != i.as_slice() {
        return fail(format!("lex-min {i:?}"));
    }
    if p.lex_max() != i2.as_slice() {
        return fail(format!("lex-max {i2:?}"));
    }
    let all: Vec<BoxRef> = order.to_vec();
    let r = report(d, "extremal", &i, &signed_p_product(d, &all, &numbers), p.get(&i));
    if !r.passed() {
        return r;
    }
    report(d, "extremal", &i2, &Poly::one(), p.get(&i2))
}

/// The box-minor formulas on the chip-parameterized point: `±Π p` over the
/// out-region for a plus, zero for a white stone, and for a black stone a
/// part linear in `m_b` with coefficient `∓Π p`.
pub fn verify_box_minors(d: &GoDiagram, order: &[BoxRef]) -> TheoremReport {
    let p = match mr_plucker(d, order) {
        Ok(p) => p,
        Err(e) => {
            let cx = Counterexample {
                row: 0,
                col: 0,
                expected: "a Plücker vector".into(),
                actual: e.to_string(),
            };
            return TheoremReport::new(d, "box-minors", Some(cx));
        }
    };
    let numbers: BTreeMap<BoxRef, usize> = reading_numbers(order).into_iter().collect();
    for f in box_minors(d) {
        let coord = p.get(&f.minor).cloned().unwrap_or_else(Poly::zero);
        let out = signed_p_product(d, &f.out_boxes, &numbers);
        let (expected, actual) = match f.fill {
            Fill::Plus => (out, coord),
            Fill::White => (Poly::zero(), coord),
            Fill::Black => {
                let m = Variable::m(numbers[&f.box_ref] as u32);
                let zero: BTreeMap<Variable, Poly> = [(m, Poly::zero())].into();
                let rest = coord.substitute(&zero).expect("polynomial in m");
                (-(out * Poly::var(m)), coord - rest)
            }
        };
        if expected != actual {
            return report(d, "box-minors", &f.minor, &expected, Some(&actual));
        }
    }
    TheoremReport::new(d, "box-minors", None)
}

/// The four minor conditions characterizing the component of `d`.
pub fn membership<T: Clone>(d: &GoDiagram, p: &PluckerVector<T>) -> bool {
    if p.k != d.k() || p.n != d.n() {
        return false;
    }
    let i = shape_to_subset(d.shape());
    if p.lex_min() != i.as_slice() {
        return false;
    }
    box_minors(d).iter().all(|f| match f.fill {
        Fill::White => !p.is_nonzero(&f.minor),
        Fill::Plus => p.is_nonzero(&f.minor),
        Fill::Black => true,
    })
}

/// A diagram together with field values for its network weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification<T> {
    pub diagram: GoDiagram,
    pub weights: BTreeMap<Variable, T>,
}

/// Recover the diagram and network weights of a point.
pub fn identify<F: Field>(field: &F, p: &PluckerVector<F::Elem>) -> Result<Identification<F::Elem>, StrataError> {
    let shape = schubert_shape(p)?;
    let (k, n) = (p.k, p.n);
    let order = standard_reading_order(&shape);
    let mut d = GoDiagram::uniform(shape.clone(), Fill::Plus);
    let mut cur = Permutation::identity(n);
    for &b in &order {
        let i = box_generator(b, k, n);
        let fill = if cur.has_right_descent(i) {
            Fill::Black
        } else if p.is_nonzero(&minor_index(&d, b)) {
            Fill::Plus
        } else {
            Fill::White
        };
        if fill != Fill::Plus {
            cur.mul_simple_right(i)?;
        }
        d.set(b, fill);
    }
    debug_assert!(validate(&d));
    let weights = recover_weights(field, &d, p)?;
    Ok(Identification { diagram: d, weights })
}

/// Solve for the weights one variable at a time in reading order. Once
/// earlier weights are substituted, the box minor `Δ_{I_b}` is affine in
/// the weight of `b` with a unit coefficient.
pub fn recover_weights<F: Field>(
    field: &F,
    d: &GoDiagram,
    p: &PluckerVector<F::Elem>,
) -> Result<BTreeMap<Variable, F::Elem>, StrataError> {
    let sym = network_plucker(d);
    let i = shape_to_subset(d.shape());
    let scale = field
        .inv(p.get(&i).ok_or_else(|| StrataError::Inconsistent("Δ_I(λ) vanishes".into()))?)
        .expect("nonzero");
    let target = |j: &[usize]| p.get(j).map(|x| field.mul(x, &scale)).unwrap_or_else(|| field.zero());
    if sym.get(&i).is_none_or(|x| !x.is_one()) {
        return Err(StrataError::Inconsistent("network minor at I(λ) is not 1".into()));
    }

    let order = standard_reading_order(d.shape());
    let minors: BTreeMap<BoxRef, Vec<usize>> = box_minors(d).into_iter().map(|f| (f.box_ref, f.minor)).collect();
    let mut solved: BTreeMap<Variable, F::Elem> = BTreeMap::new();
    for (pos, &b) in order.iter().enumerate() {
        let idx = (pos + 1) as u32;
        let var = match d.get(b) {
            Fill::Plus => Variable::a(idx),
            Fill::Black => Variable::c(idx),
            Fill::White => continue,
        };
        let j = &minors[&b];
        let coeffs = sym
            .get(j)
            .map(|poly| poly.evaluate_except(field, &solved, var))
            .transpose()
            .map_err(|_| StrataError::Underdetermined(var))?
            .unwrap_or_default();
        let value = match (coeffs.get(&1), coeffs.keys().all(|&e| e == 0 || e == 1)) {
            (Some(c1), true) => {
                let c0 = coeffs.get(&0).cloned().unwrap_or_else(|| field.zero());
                field.div(&field.sub(&target(j), &c0), c1)
            }
            _ => None,
        };
        let x = value.ok_or(StrataError::Underdetermined(var))?;
        if var.kind == VarKind::A && field.is_zero(&x) {
            return Err(StrataError::Inconsistent(format!("{var} would be zero")));
        }
        solved.insert(var, x);
    }

    for j in k_subsets(d.n(), d.k()) {
        let got = match sym.get(&j) {
            Some(poly) => poly.evaluate(field, &solved)?,
            None => field.zero(),
        };
        let want = target(&j);
        if !field.is_zero(&field.sub(&got, &want)) {
            return Err(StrataError::Inconsistent(format!(
                "Δ_{{{}}} is {} but the recovered network gives {}",
                j.iter().join(","),
                field.format_elem(&want),
                field.format_elem(&got)
            )));
        }
    }
    Ok(solved)
}

/// Plücker vector of `[Id_k | M']` with `M'_{i,j} = (−1)^{i+1} M_{k+1−i,j}`.
pub fn embed_matrix<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<PluckerVector<R::Elem>, StrataError> {
    plucker_vector(ring, &embedded_matrix(ring, m))
}

pub fn embedded_matrix<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let (k, nk) = (m.nrows(), m.ncols());
    Matrix::from_fn(k, k + nk, |i, j| {
        if j < k {
            if i == j {
                ring.one()
            } else {
                ring.zero()
            }
        } else {
            let x = m.get(k - 1 - i, j - k).clone();
            if i % 2 == 0 {
                x
            } else {
                ring.neg(&x)
            }
        }
    })
}

/// A polynomial in `q` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPoly(Vec<BigInt>);

impl QPoly {
    pub fn from_coeffs(c: Vec<BigInt>) -> Self {
        let mut p = QPoly(c);
        p.trim();
        p
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn one() -> Self {
        QPoly(vec![BigInt::one()])
    }

    pub fn q() -> Self {
        QPoly(vec![BigInt::zero(), BigInt::one()])
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(QPoly::one(), |acc, _| &acc * self)
    }

    /// `(q − 1)^t q^u`.
    pub fn torus(t: usize, u: usize) -> Self {
        let qm1 = QPoly::from_coeffs(vec![BigInt::from(-1), BigInt::one()]);
        &qm1.pow(t) * &QPoly::q().pow(u)
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let len = self.0.len().max(o.0.len());
        let z = BigInt::zero();
        QPoly::from_coeffs(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return QPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(c)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coeff = if abs.is_one() && e > 0 { String::new() } else { abs.to_string() };
            let star = if coeff.is_empty() || e == 0 { "" } else { "*" };
            match e {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}{star}q")?,
                _ => write!(f, "{coeff}{star}q^{e}")?,
            }
        }
        Ok(())
    }
}

fn check_prime(q: u64) -> Result<(), StrataError> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(StrataError::NotPrime(q))
    }
}

/// `(q−1)^t q^u` for a diagram with `t` pluses and `u` black stones.
pub fn component_point_count(d: &GoDiagram, q: u64) -> Result<BigInt, StrataError> {
    check_prime(q)?;
    let (t, u) = stats(d);
    Ok(QPoly::torus(t, u).eval(&BigInt::from(q)))
}

/// Sum of the component counts over every diagram in the rectangle.
pub fn grassmannian_point_polynomial(k: usize, n: usize) -> QPoly {
    crate::godiagram::enumerate_diagrams(k, n).iter().fold(QPoly::zero(), |acc, d| {
        let (t, u) = stats(d);
        &acc + &QPoly::torus(t, u)
    })
}

pub fn grassmannian_point_count(k: usize, n: usize, q: u64) -> Result<BigInt, StrataError> {
    check_prime(q)?;
    Ok(grassmannian_point_polynomial(k, n).eval(&BigInt::from(q)))
}

/// `Σ (q−1)^{#plus} q^{#black}` over distinguished subexpressions of
/// `word` with product `v`; zero unless `v ≤ w`.
pub fn r_polynomial(v: &Permutation, word: &ReducedWord) -> Result<QPoly, StrataError> {
    if !bruhat_leq(v, &word.product())? {
        return Ok(QPoly::zero());
    }
    Ok(enumerate_distinguished(word)
        .iter()
        .filter(|m| m.product() == *v)
        .fold(QPoly::zero(), |acc, m| {
            let c = m.classify();
            &acc + &QPoly::torus(c.plus_positions.len(), c.black_positions.len())
        }))
}
