//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

pub mod props;

use std::collections::BTreeMap;

use deodhar::algebra::{Field, Fp, LaurentPolynomial, Matrix, PrimeField, Ring, Variable};
use deodhar::godiagram::{Fill, GoDiagram};
use deodhar::weyl::{BoxRef, Permutation, Shape};

pub type Poly = LaurentPolynomial;

/// Parse a hand-transcribed expression such as `-(a3*a4 + a3*a2)` or
/// `p9*p10^-1 - m7`.
pub fn poly(s: &str) -> Poly {
    let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let p = expr(&toks, &mut pos);
    assert_eq!(pos, toks.len(), "trailing input in `{s}`");
    p
}

fn expr(t: &[char], pos: &mut usize) -> Poly {
    let mut acc = if t.get(*pos) == Some(&'-') {
        *pos += 1;
        -term(t, pos)
    } else {
        term(t, pos)
    };
    while let Some(&c) = t.get(*pos) {
        match c {
            '+' => {
                *pos += 1;
                acc = acc + term(t, pos);
            }
            '-' => {
                *pos += 1;
                acc = acc - term(t, pos);
            }
            _ => break,
        }
    }
    acc
}

fn term(t: &[char], pos: &mut usize) -> Poly {
    let mut acc = factor(t, pos);
    loop {
        match t.get(*pos) {
            Some('*') => {
                *pos += 1;
                acc = acc * factor(t, pos);
            }
            Some(c) if c.is_ascii_alphanumeric() || *c == '(' => acc = acc * factor(t, pos),
            _ => return acc,
        }
    }
}

fn number(t: &[char], pos: &mut usize) -> i64 {
    let neg = t.get(*pos) == Some(&'-');
    if neg {
        *pos += 1;
    }
    let start = *pos;
    while t.get(*pos).is_some_and(char::is_ascii_digit) {
        *pos += 1;
    }
    let v: i64 = t[start..*pos].iter().collect::<String>().parse().expect("number");
    if neg {
        -v
    } else {
        v
    }
}

fn factor(t: &[char], pos: &mut usize) -> Poly {
    let base = match t[*pos] {
        '(' => {
            *pos += 1;
            let e = expr(t, pos);
            assert_eq!(t[*pos], ')');
            *pos += 1;
            e
        }
        c if c.is_ascii_digit() => Poly::constant(number(t, pos)),
        c => {
            *pos += 1;
            let idx = number(t, pos) as u32;
            let v = match c {
                'a' => Variable::a(idx),
                'c' => Variable::c(idx),
                'p' => Variable::p(idx),
                'm' => Variable::m(idx),
                _ => panic!("unknown variable letter `{c}`"),
            };
            Poly::var(v)
        }
    };
    if t.get(*pos) == Some(&'^') {
        *pos += 1;
        let e = number(t, pos);
        if e >= 0 {
            base.pow(e as u32)
        } else {
            base.monomial_inverse().expect("monomial").pow((-e) as u32)
        }
    } else {
        base
    }
}

pub fn poly_matrix(rows: &[&[&str]]) -> Matrix<Poly> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| poly(s)).collect()).collect()).unwrap()
}

pub fn diagram(text: &str, k: usize, n: usize) -> GoDiagram {
    GoDiagram::from_text(text, Some(k), Some(n)).unwrap()
}

/// Every `k × n` matrix of rank `k` in reduced row echelon form over `F_q`.
pub fn rref_points(f: &PrimeField, k: usize, n: usize) -> Vec<Matrix<Fp>> {
    let mut out = Vec::new();
    let elems: Vec<Fp> = f.elements().collect();
    for pivots in combinations(n, k) {
        // free positions: (row, col) with col after the row's pivot and not a pivot column
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let piv = &pivots;
                (piv[r] + 1..n).filter(move |c| !piv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let total = elems.len().pow(free.len() as u32);
        for mut code in 0..total {
            let mut m = Matrix::zeros(f, k, n);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(r, p, f.one());
            }
            for &(r, c) in &free {
                m.set(r, c, elems[code % elems.len()]);
                code /= elems.len();
            }
            out.push(m);
        }
    }
    out
}

/// 0-based `k`-subsets of `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out.sort();
    out
}

/// Coefficients (lowest degree first) of the Gaussian binomial via
/// `Π_{i<k} (q^{n−i} − 1) / (q^{i+1} − 1)`.
pub fn q_binomial(n: usize, k: usize) -> Vec<i64> {
    let qm = |e: usize| {
        let mut v = vec![0i64; e + 1];
        v[0] = -1;
        v[e] += 1;
        v
    };
    let mut num = vec![1i64];
    let mut den = vec![1i64];
    for i in 0..k {
        num = poly_mul(&num, &qm(n - i));
        den = poly_mul(&den, &qm(i + 1));
    }
    poly_div_exact(&num, &den)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let lead = *b.last().unwrap();
    let mut q = vec![0; a.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = rem[i + b.len() - 1] / lead;
        assert_eq!(c * lead, rem[i + b.len() - 1]);
        q[i] = c;
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= c * y;
        }
    }
    assert!(rem.iter().all(|&x| x == 0), "inexact division");
    while q.len() > 1 && *q.last().unwrap() == 0 {
        q.pop();
    }
    q
}

fn rank_of(f: &PrimeField, rows: &[Vec<Fp>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    Matrix::from_rows(rows.to_vec()).unwrap().rank(f)
}

/// `#(B⁺ẇB⁺ ∩ B⁻v̇B⁺)/B⁺` in `GL_3(F_q)` for every pair, keyed by the
/// one-line images of `(v, w)`. Each invertible matrix is placed in its
/// two Bruhat cells by comparing rank profiles with permutation matrices.
pub fn flag_counts(q: u64) -> BTreeMap<(Vec<usize>, Vec<usize>), u64> {
    let n = 3;
    let f = PrimeField::new(q).unwrap();
    let elems: Vec<Fp> = f.elements().collect();
    let perms = all_permutations(n);
    // rank profiles of the permutation matrix with ones at (π(j), j)
    let lower = |p: &Permutation| -> Vec<usize> {
        (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .map(|(i, j)| (1..=j).filter(|&l| p.apply(l) >= i).count())
            .collect()
    };
    let upper = |p: &Permutation| -> Vec<usize> {
        (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .map(|(i, j)| (1..=j).filter(|&l| p.apply(l) <= i).count())
            .collect()
    };
    let lows: Vec<Vec<usize>> = perms.iter().map(lower).collect();
    let ups: Vec<Vec<usize>> = perms.iter().map(upper).collect();
    let mut hits: BTreeMap<(Vec<usize>, Vec<usize>), u64> = BTreeMap::new();
    let total = elems.len().pow(9);
    for mut code in 0..total {
        let mut g = vec![vec![f.zero(); n]; n];
        for row in g.iter_mut() {
            for x in row.iter_mut() {
                *x = elems[code % elems.len()];
                code /= elems.len();
            }
        }
        if rank_of(&f, &g) < n {
            continue;
        }
        let mut bl = Vec::new();
        let mut tl = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let b: Vec<Vec<Fp>> = g[i - 1..].iter().map(|r| r[..j].to_vec()).collect();
                let t: Vec<Vec<Fp>> = g[..i].iter().map(|r| r[..j].to_vec()).collect();
                bl.push(rank_of(&f, &b));
                tl.push(rank_of(&f, &t));
            }
        }
        let w = perms[lows.iter().position(|x| *x == bl).expect("Bruhat cell")].images().to_vec();
        let v = perms[ups.iter().position(|x| *x == tl).expect("opposite cell")].images().to_vec();
        *hits.entry((v, w)).or_default() += 1;
    }
    let borel = (q - 1).pow(3) * q.pow(3);
    hits.into_iter()
        .map(|(key, h)| {
            assert_eq!(h % borel, 0);
            (key, h / borel)
        })
        .collect()
}

/// A reduced word for `w`, peeling right descents.
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    let mut cur = w.clone();
    let mut letters = Vec::new();
    while !cur.is_identity() {
        let i = (1..cur.n()).find(|&i| cur.has_right_descent(i)).unwrap();
        cur.mul_simple_right(i).unwrap();
        letters.insert(0, i);
    }
    letters
}

pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn go(rest: Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if rest.is_empty() {
            out.push(Permutation::new(cur.clone()).unwrap());
            return;
        }
        for (i, &x) in rest.iter().enumerate() {
            let mut r = rest.clone();
            r.remove(i);
            cur.push(x);
            go(r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go((1..=n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Every 0/+ filling of `shape` with the Le property: no 0 has a + above it
/// in its column and a + to its left in its row.
pub fn le_fillings(shape: &Shape) -> Vec<GoDiagram> {
    let boxes = shape.boxes();
    let mut out = Vec::new();
    for code in 0u32..(1 << boxes.len()) {
        let plus: BTreeMap<BoxRef, bool> = boxes.iter().enumerate().map(|(i, &b)| (b, code >> i & 1 == 1)).collect();
        let ok = boxes.iter().all(|b| {
            plus[b]
                || !((1..b.row).any(|r| plus[&BoxRef::new(r, b.col)])
                    && (1..b.col).any(|c| plus[&BoxRef::new(b.row, c)]))
        });
        if ok {
            let mut d = GoDiagram::uniform(shape.clone(), Fill::White);
            for (&b, &p) in &plus {
                if p {
                    d.set(b, Fill::Plus);
                }
            }
            out.push(d);
        }
    }
    out
}

/// Every filling of `shape` by the three symbols.
pub fn all_fillings(shape: &Shape) -> Vec<GoDiagram> {
    let boxes = shape.boxes();
    let fills = [Fill::Plus, Fill::White, Fill::Black];
    (0..3usize.pow(boxes.len() as u32))
        .map(|mut code| {
            let mut d = GoDiagram::uniform(shape.clone(), Fill::Plus);
            for &b in &boxes {
                d.set(b, fills[code % 3]);
                code /= 3;
            }
            d
        })
        .collect()
}

/// Plücker vectors agree up to a common nonzero scalar.
pub fn projectively_equal<F: Field>(
    f: &F,
    a: &deodhar::strata::PluckerVector<F::Elem>,
    b: &deodhar::strata::PluckerVector<F::Elem>,
) -> bool {
    if a.support() != b.support() {
        return false;
    }
    let j = a.lex_min();
    let (x, y) = (a.get(j).unwrap(), b.get(j).unwrap());
    a.coords
        .iter()
        .all(|(k, u)| f.is_zero(&f.sub(&f.mul(u, y), &f.mul(b.get(k).unwrap(), x))))
}
