//! Symmetric-group combinatorics: permutations, reduced words, Bruhat order,
//! shapes in a k×(n−k) rectangle, reading orders and distinguished
//! subexpressions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("not a permutation of 1..{0}: {1:?}")]
    InvalidPermutation(usize, Vec<usize>),
    #[error("permutations live in different groups (S_{0} vs S_{1})")]
    MismatchedN(usize, usize),
    #[error("generator s_{0} is out of range for S_{1}")]
    GeneratorOutOfRange(usize, usize),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("v is not below w in Bruhat order")]
    NotBelow,
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("order is not a linear extension of the box poset")]
    NotLinearExtension,
    #[error("mask length {0} does not match word length {1}")]
    MaskLength(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A permutation of `{1,…,n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, WeylError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(WeylError::InvalidPermutation(n, images));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The simple transposition `s_i` in `S_n`.
    pub fn simple(n: usize, i: usize) -> Result<Self, WeylError> {
        let mut p = Self::identity(n);
        p.mul_simple_right(i)?;
        Ok(p)
    }

    /// Product `s_{i_1} ∘ ⋯ ∘ s_{i_m}`.
    pub fn from_word(n: usize, letters: &[usize]) -> Result<Self, WeylError> {
        let mut p = Self::identity(n);
        for &i in letters {
            p.mul_simple_right(i)?;
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Coxeter length, i.e. the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// True iff `ℓ(w s_i) < ℓ(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.images[i - 1] > self.images[i]
    }

    /// `w ← w s_i`: swaps positions `i` and `i+1`.
    pub fn mul_simple_right(&mut self, i: usize) -> Result<(), WeylError> {
        if i == 0 || i >= self.n() {
            return Err(WeylError::GeneratorOutOfRange(i, self.n()));
        }
        self.images.swap(i - 1, i);
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, WeylError> {
        if self.n() != other.n() {
            return Err(WeylError::MismatchedN(self.n(), other.n()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Image of a set of 1-based indices, sorted.
    pub fn act_on_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&i| self.apply(i)).collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Permutation {
    type Err = WeylError;

    /// Accepts `3,5,6,7,1,2,4`, with optional surrounding brackets or parens.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let images = parse_index_list(s)?;
        Permutation::new(images)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::new(images).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn parse_index_list(s: &str) -> Result<Vec<usize>, WeylError> {
    let inner = s
        .trim()
        .trim_start_matches(['(', '[', '{'])
        .trim_end_matches([')', ']', '}']);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.trim_start_matches('s')
                .parse::<usize>()
                .map_err(|_| WeylError::Parse(format!("bad index `{t}` in `{s}`")))
        })
        .collect()
}

/// Strong Bruhat order via the tableau criterion: for every `j`, the sorted
/// values `v(1..j)` are componentwise at most the sorted values `w(1..j)`.
pub fn bruhat_leq(v: &Permutation, w: &Permutation) -> Result<bool, WeylError> {
    if v.n() != w.n() {
        return Err(WeylError::MismatchedN(v.n(), w.n()));
    }
    let n = v.n();
    for j in 1..n {
        let mut a: Vec<usize> = v.images[..j].to_vec();
        let mut b: Vec<usize> = w.images[..j].to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a.iter().zip(&b).any(|(x, y)| x > y) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A reduced word `s_{i_1} ⋯ s_{i_m}` in `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    n: usize,
    letters: Vec<usize>,
}

impl ReducedWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self, WeylError> {
        let p = Permutation::from_word(n, &letters)?;
        if p.length() != letters.len() {
            return Err(WeylError::NotReduced(letters));
        }
        Ok(ReducedWord { n, letters })
    }

    pub fn empty(n: usize) -> Self {
        ReducedWord {
            n,
            letters: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn product(&self) -> Permutation {
        Permutation::from_word(self.n, &self.letters).expect("letters validated")
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.letters.serialize(s)
    }
}

/// A subexpression of a reduced word: which letters are kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SubexpressionMask {
    pub word: ReducedWord,
    pub taken: Vec<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskClassification {
    pub white_positions: Vec<usize>,
    pub plus_positions: Vec<usize>,
    pub black_positions: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    White,
    Plus,
    Black,
}

impl SubexpressionMask {
    pub fn new(word: ReducedWord, taken: Vec<bool>) -> Result<Self, WeylError> {
        if word.len() != taken.len() {
            return Err(WeylError::MaskLength(taken.len(), word.len()));
        }
        Ok(SubexpressionMask { word, taken })
    }

    pub fn all_skipped(word: ReducedWord) -> Self {
        let m = word.len();
        SubexpressionMask {
            word,
            taken: vec![false; m],
        }
    }

    pub fn len(&self) -> usize {
        self.taken.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taken.is_empty()
    }

    /// Prefix products `v_(0) = e, v_(1), …, v_(m)`.
    pub fn prefix_products(&self) -> Vec<Permutation> {
        let mut cur = Permutation::identity(self.word.n());
        let mut out = vec![cur.clone()];
        for (&i, &t) in self.word.letters().iter().zip(&self.taken) {
            if t {
                cur.mul_simple_right(i).expect("letters validated");
            }
            out.push(cur.clone());
        }
        out
    }

    pub fn product(&self) -> Permutation {
        self.prefix_products().pop().expect("nonempty")
    }

    /// Per-position classification; skipped positions are always plus.
    pub fn step_kinds(&self) -> Vec<StepKind> {
        let mut cur = Permutation::identity(self.word.n());
        let mut out = Vec::with_capacity(self.len());
        for (&i, &t) in self.word.letters().iter().zip(&self.taken) {
            if !t {
                out.push(StepKind::Plus);
            } else if cur.has_right_descent(i) {
                out.push(StepKind::Black);
                cur.mul_simple_right(i).expect("letters validated");
            } else {
                out.push(StepKind::White);
                cur.mul_simple_right(i).expect("letters validated");
            }
        }
        out
    }

    /// Split `1..=m` into `J°`, `J⁺`, `J•`.
    pub fn classify(&self) -> MaskClassification {
        let mut c = MaskClassification::default();
        for (pos, kind) in self.step_kinds().into_iter().enumerate() {
            match kind {
                StepKind::White => c.white_positions.push(pos + 1),
                StepKind::Plus => c.plus_positions.push(pos + 1),
                StepKind::Black => c.black_positions.push(pos + 1),
            }
        }
        c
    }

    /// Every letter that would shorten the running prefix is taken.
    pub fn is_distinguished(&self) -> bool {
        let mut cur = Permutation::identity(self.word.n());
        for (&i, &t) in self.word.letters().iter().zip(&self.taken) {
            if cur.has_right_descent(i) && !t {
                return false;
            }
            if t {
                cur.mul_simple_right(i).expect("letters validated");
            }
        }
        true
    }

    /// Distinguished with no black positions.
    pub fn is_positive_distinguished(&self) -> bool {
        self.is_distinguished() && !self.step_kinds().contains(&StepKind::Black)
    }
}

impl fmt::Display for SubexpressionMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .word
            .letters()
            .iter()
            .zip(&self.taken)
            .map(|(i, &t)| if t { format!("s{i}") } else { "1".into() })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn classify_mask(m: &SubexpressionMask) -> MaskClassification {
    m.classify()
}

pub fn is_distinguished(m: &SubexpressionMask) -> bool {
    m.is_distinguished()
}

/// The positive distinguished subexpression for `v` in `word`, built
/// greedily from the right: a letter is taken exactly when it shortens the
/// remaining target.
pub fn unique_pds(v: &Permutation, word: &ReducedWord) -> Result<SubexpressionMask, WeylError> {
    if v.n() != word.n() {
        return Err(WeylError::MismatchedN(v.n(), word.n()));
    }
    let mut cur = v.clone();
    let mut taken = vec![false; word.len()];
    for (pos, &i) in word.letters().iter().enumerate().rev() {
        if cur.has_right_descent(i) {
            cur.mul_simple_right(i)?;
            taken[pos] = true;
        }
    }
    if !cur.is_identity() {
        return Err(WeylError::NotBelow);
    }
    Ok(SubexpressionMask {
        word: word.clone(),
        taken,
    })
}

/// All distinguished subexpressions of `word`, lexicographic in the taken
/// vector (skip before take).
pub fn enumerate_distinguished(word: &ReducedWord) -> Vec<SubexpressionMask> {
    fn go(
        word: &ReducedWord,
        pos: usize,
        cur: &mut Permutation,
        taken: &mut Vec<bool>,
        out: &mut Vec<SubexpressionMask>,
    ) {
        if pos == word.len() {
            out.push(SubexpressionMask {
                word: word.clone(),
                taken: taken.clone(),
            });
            return;
        }
        let i = word.letters()[pos];
        if !cur.has_right_descent(i) {
            taken.push(false);
            go(word, pos + 1, cur, taken, out);
            taken.pop();
        }
        cur.images.swap(i - 1, i);
        taken.push(true);
        go(word, pos + 1, cur, taken, out);
        taken.pop();
        cur.images.swap(i - 1, i);
    }
    let mut out = Vec::new();
    let mut cur = Permutation::identity(word.n());
    go(word, 0, &mut cur, &mut Vec::new(), &mut out);
    out
}

/// A box of a Young diagram, 1-based, row 1 on top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxRef {
    pub row: usize,
    pub col: usize,
}

impl BoxRef {
    pub fn new(row: usize, col: usize) -> Self {
        BoxRef { row, col }
    }
}

impl fmt::Display for BoxRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A partition inside a `k × (n−k)` rectangle. `rows` always has length
/// `k` (padded with zeros).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    k: usize,
    n: usize,
    rows: Vec<usize>,
}

impl Shape {
    pub fn new(k: usize, n: usize, rows: Vec<usize>) -> Result<Self, WeylError> {
        if k > n {
            return Err(WeylError::InvalidShape(format!("k = {k} exceeds n = {n}")));
        }
        if rows.len() > k {
            return Err(WeylError::InvalidShape(format!("{} rows but k = {k}", rows.len())));
        }
        if rows.iter().any(|&r| r > n - k) {
            return Err(WeylError::InvalidShape(format!("row longer than n - k = {}", n - k)));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(WeylError::InvalidShape("rows must weakly decrease".into()));
        }
        let mut rows = rows;
        rows.resize(k, 0);
        Ok(Shape { k, n, rows })
    }

    pub fn empty(k: usize, n: usize) -> Self {
        Shape {
            k,
            n,
            rows: vec![0; k],
        }
    }

    pub fn full(k: usize, n: usize) -> Self {
        Shape {
            k,
            n,
            rows: vec![n - k; k],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row lengths, padded to `k`.
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Row lengths without trailing zeros.
    pub fn parts(&self) -> Vec<usize> {
        self.rows.iter().copied().filter(|&r| r > 0).collect()
    }

    pub fn row_len(&self, row: usize) -> usize {
        if row == 0 || row > self.k {
            0
        } else {
            self.rows[row - 1]
        }
    }

    pub fn num_boxes(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn contains(&self, b: BoxRef) -> bool {
        b.row >= 1 && b.col >= 1 && b.col <= self.row_len(b.row)
    }

    /// Boxes in row-major order.
    pub fn boxes(&self) -> Vec<BoxRef> {
        let mut out = Vec::new();
        for r in 1..=self.k {
            for c in 1..=self.row_len(r) {
                out.push(BoxRef::new(r, c));
            }
        }
        out
    }

    /// All shapes in the `k × (n−k)` rectangle.
    pub fn all_in_rectangle(k: usize, n: usize) -> Vec<Shape> {
        fn go(k: usize, n: usize, max: usize, rows: &mut Vec<usize>, out: &mut Vec<Shape>) {
            if rows.len() == k {
                out.push(Shape {
                    k,
                    n,
                    rows: rows.clone(),
                });
                return;
            }
            for r in 0..=max {
                rows.push(r);
                go(k, n, r, rows, out);
                rows.pop();
            }
        }
        let mut out = Vec::new();
        if k <= n {
            go(k, n, n - k, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(usize::to_string).collect();
        write!(f, "({}) in {}x{}", parts.join(","), self.k, self.n - self.k)
    }
}

/// `I(λ)`: labels of the vertical steps of the southeast border, numbering
/// the `n` border steps from northeast to southwest.
pub fn shape_to_subset(s: &Shape) -> Vec<usize> {
    let mut out = Vec::with_capacity(s.k);
    let mut j = s.n - s.k;
    let mut i = 0;
    for t in 1..=s.n {
        if i < s.k && s.rows[i] == j {
            out.push(t);
            i += 1;
        } else {
            j -= 1;
        }
    }
    out
}

/// `λ(I)`, the inverse of [`shape_to_subset`].
pub fn subset_to_shape(subset: &[usize], n: usize) -> Result<Shape, WeylError> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subset.len() || sorted.iter().any(|&x| x == 0 || x > n) {
        return Err(WeylError::InvalidSubset(format!("{subset:?} in [{n}]")));
    }
    let k = sorted.len();
    let mut rows = Vec::with_capacity(k);
    let mut j = n - k;
    for t in 1..=n {
        if sorted.binary_search(&t).is_ok() {
            rows.push(j);
        } else {
            j -= 1;
        }
    }
    Shape::new(k, n, rows)
}

/// The simple generator `s_b` attached to a box.
pub fn box_generator(b: BoxRef, k: usize, n: usize) -> usize {
    n - k + b.row - b.col
}

/// Bottom row first, each row read right to left.
pub fn standard_reading_order(s: &Shape) -> Vec<BoxRef> {
    let mut out = Vec::with_capacity(s.num_boxes());
    for r in (1..=s.k).rev() {
        for c in (1..=s.row_len(r)).rev() {
            out.push(BoxRef::new(r, c));
        }
    }
    out
}

/// Every box must come after its right and lower neighbours.
pub fn is_linear_extension(s: &Shape, order: &[BoxRef]) -> bool {
    if order.len() != s.num_boxes() {
        return false;
    }
    let mut pos = std::collections::HashMap::new();
    for (i, &b) in order.iter().enumerate() {
        if !s.contains(b) || pos.insert(b, i).is_some() {
            return false;
        }
    }
    order.iter().enumerate().all(|(i, b)| {
        let right = BoxRef::new(b.row, b.col + 1);
        let below = BoxRef::new(b.row + 1, b.col);
        [right, below]
            .iter()
            .all(|nb| !s.contains(*nb) || pos[nb] < i)
    })
}

/// All linear extensions of the box poset; only for small shapes.
pub fn linear_extensions(s: &Shape) -> Vec<Vec<BoxRef>> {
    fn go(s: &Shape, placed: &mut Vec<BoxRef>, out: &mut Vec<Vec<BoxRef>>) {
        if placed.len() == s.num_boxes() {
            out.push(placed.clone());
            return;
        }
        for b in s.boxes() {
            if placed.contains(&b) {
                continue;
            }
            let right = BoxRef::new(b.row, b.col + 1);
            let below = BoxRef::new(b.row + 1, b.col);
            let ready = [right, below]
                .iter()
                .all(|nb| !s.contains(*nb) || placed.contains(nb));
            if ready {
                placed.push(b);
                go(s, placed, out);
                placed.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(s, &mut Vec::new(), &mut out);
    out
}

/// The reduced word read off the boxes in `order`.
pub fn word_from_shape(s: &Shape, order: &[BoxRef]) -> Result<ReducedWord, WeylError> {
    if !is_linear_extension(s, order) {
        return Err(WeylError::NotLinearExtension);
    }
    let letters = order.iter().map(|&b| box_generator(b, s.k, s.n)).collect();
    ReducedWord::new(s.n, letters)
}

/// The Grassmannian permutation `w` with `λ_w = s`.
pub fn grassmannian_permutation(s: &Shape) -> Permutation {
    word_from_shape(s, &standard_reading_order(s))
        .expect("standard order is a linear extension")
        .product()
}
