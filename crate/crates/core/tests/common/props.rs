//! Module invariants as plain functions, shared by the property tests and
//! the acceptance runner. Each returns `Err` with a description of the first
//! violation.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use deodhar::algebra::{
    Field, Fp, Matrix, Monomial, PrimeField, Ring, VarKind, Variable,
};
use deodhar::godiagram::{
    diagram_from_mask, diagrams_of_shape, enumerate_diagrams, is_le_diagram, mask_from_diagram, stats, validate,
    validate_in_order, Fill, GoDiagram,
};
use deodhar::marshrietsch::{
    chip_word, expected_leading_entry, group_element, invert_psi, modified_network, modified_pseudopaths, mr_matrix,
    pseudopaths, psi, rescale, route_matrix, verify_leading_entries, verify_theorem_row, ChipFactor, ChipWord,
};
use deodhar::network::{build_network, enumerate_paths, evaluate_network, path_sum, plucker_det, plucker_lgv, weight_matrix};
use deodhar::strata::{
    check_extremal, grassmann_necklace, grassmannian_point_polynomial, identify, membership, mr_plucker,
    plucker_vector, PluckerVector,
};
use deodhar::weyl::{
    bruhat_leq, enumerate_distinguished, linear_extensions, standard_reading_order, unique_pds, word_from_shape,
    Permutation, ReducedWord, Shape, SubexpressionMask,
};

use super::{all_fillings, all_permutations, combinations, diagram, le_fillings, q_binomial, rref_points, Poly};

pub type Check = Result<(), String>;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    )
}

fn run<S: Strategy>(cases: u32, strat: S, test: impl Fn(S::Value) -> Check) -> Check
where
    S::Value: std::fmt::Debug,
{
    runner(cases)
        .run(&strat, |v| test(v).map_err(TestCaseError::fail))
        .map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn inversions(images: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                c += 1;
            }
        }
    }
    c
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

/// A reduced word of a random permutation of `S_n`.
fn reduced_word_strategy(n: usize) -> impl Strategy<Value = ReducedWord> {
    perm_strategy(n).prop_map(move |w| ReducedWord::new(n, super::reduced_word(&w)).unwrap())
}

// ---------------------------------------------------------------- weyl

/// Distinguished per definition: every length-decreasing letter is taken.
fn distinguished_oracle(word: &ReducedWord, taken: &[bool]) -> bool {
    let mut cur: Vec<usize> = (1..=word.n()).collect();
    for (&i, &t) in word.letters().iter().zip(taken) {
        let mut next = cur.clone();
        next.swap(i - 1, i);
        if inversions(&next) < inversions(&cur) && !t {
            return false;
        }
        if t {
            cur = next;
        }
    }
    true
}

pub fn weyl_enumerate_distinguished() -> Check {
    run(64, (3usize..=5).prop_flat_map(reduced_word_strategy), |word| {
        if word.len() > 8 {
            return Ok(());
        }
        let listed: BTreeSet<Vec<bool>> = enumerate_distinguished(&word).into_iter().map(|m| m.taken).collect();
        let oracle: BTreeSet<Vec<bool>> = (0u32..1 << word.len())
            .map(|c| (0..word.len()).map(|j| c >> j & 1 == 1).collect::<Vec<bool>>())
            .filter(|t| distinguished_oracle(&word, t))
            .collect();
        ensure(listed == oracle, || format!("{word}: {} listed vs {} by definition", listed.len(), oracle.len()))
    })
}

pub fn weyl_unique_pds() -> Check {
    run(64, (3usize..=5).prop_flat_map(reduced_word_strategy), |word| {
        let w = word.product();
        for v in all_permutations(word.n()) {
            if !bruhat_leq(&v, &w).unwrap() {
                continue;
            }
            let m = unique_pds(&v, &word).map_err(|e| e.to_string())?;
            ensure(m.is_distinguished(), || format!("pds of {v} in {word} not distinguished"))?;
            ensure(m.classify().black_positions.is_empty(), || format!("pds of {v} in {word} has black positions"))?;
            ensure(m.product() == v, || format!("pds product differs from {v}"))?;
        }
        Ok(())
    })
}

pub fn weyl_classify() -> Check {
    let strat = (3usize..=5)
        .prop_flat_map(reduced_word_strategy)
        .prop_flat_map(|w| {
            let len = w.len();
            (Just(w), proptest::collection::vec(any::<bool>(), len))
        });
    run(128, strat, |(word, taken)| {
        let m = SubexpressionMask::new(word.clone(), taken).unwrap();
        let c = m.classify();
        let mut all: Vec<usize> = c.white_positions.iter().chain(&c.plus_positions).chain(&c.black_positions).copied().collect();
        all.sort_unstable();
        let expect: Vec<usize> = if all.first() == Some(&0) { (0..m.len()).collect() } else { (1..=m.len()).collect() };
        ensure(all == expect, || format!("classification of {m} is not a partition"))?;
        let lhs = c.white_positions.len() as i64 - c.black_positions.len() as i64;
        ensure(lhs == m.product().length() as i64, || format!("{m}: |white| - |black| = {lhs}"))
    })
}

/// Two words are commutation-equivalent iff for every pair of letters that
/// do not commute (equal or adjacent), the subsequences on that pair agree.
fn commutation_equivalent(a: &[usize], b: &[usize]) -> bool {
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let letters: BTreeSet<usize> = a.iter().copied().collect();
    letters.iter().all(|&x| {
        [x, x + 1].iter().all(|&y| {
            let keep = |w: &[usize]| w.iter().copied().filter(|&l| l == x || l == y).collect::<Vec<_>>();
            keep(a) == keep(b)
        })
    })
}

pub fn weyl_linear_extension_words() -> Check {
    for (k, n) in [(2, 4), (2, 5), (3, 5), (3, 6)] {
        for s in Shape::all_in_rectangle(k, n) {
            let std = word_from_shape(&s, &standard_reading_order(&s)).unwrap();
            for order in linear_extensions(&s) {
                let w = word_from_shape(&s, &order).unwrap();
                ensure(w.product() == std.product(), || format!("{s}: products differ"))?;
                ensure(commutation_equivalent(w.letters(), std.letters()), || {
                    format!("{s}: {w} and {std} not commutation-equivalent")
                })?;
            }
        }
    }
    Ok(())
}

/// Subword property: v ≤ w iff some subword of a reduced word of w is a
/// reduced word of v.
pub fn weyl_bruhat_subword() -> Check {
    let perms = all_permutations(4);
    for w in &perms {
        let word = super::reduced_word(w);
        let below: BTreeSet<Vec<usize>> = (0u32..1 << word.len())
            .filter_map(|c| {
                let sub: Vec<usize> = word.iter().enumerate().filter(|(j, _)| c >> j & 1 == 1).map(|(_, &l)| l).collect();
                let p = Permutation::from_word(4, &sub).unwrap();
                (p.length() == sub.len()).then(|| p.images().to_vec())
            })
            .collect();
        for v in &perms {
            let expect = below.contains(v.images());
            ensure(bruhat_leq(v, w).unwrap() == expect, || format!("bruhat_leq({v}, {w}) != {expect}"))?;
        }
    }
    Ok(())
}

// ----------------------------------------------------------- godiagram

/// Validation agrees across every linear extension for every filling of
/// every shape in the 2×3 rectangle.
pub fn godiagram_order_independence() -> Check {
    for s in Shape::all_in_rectangle(2, 5) {
        let orders = linear_extensions(&s);
        for d in all_fillings(&s) {
            let first = validate_in_order(&d, &orders[0]);
            for o in &orders[1..] {
                ensure(validate_in_order(&d, o) == first, || format!("{} depends on the reading order", d.to_inline()))?;
            }
        }
    }
    Ok(())
}

pub fn godiagram_le_census() -> Check {
    let mut total = 0;
    for s in Shape::all_in_rectangle(2, 4) {
        let ours: BTreeSet<String> = diagrams_of_shape(&s)
            .into_iter()
            .filter(|d| stats(d).1 == 0)
            .map(|d| d.to_inline())
            .collect();
        let oracle: BTreeSet<String> = le_fillings(&s).into_iter().map(|d| d.to_inline()).collect();
        ensure(ours == oracle, || format!("{s}: black-free diagrams differ from Le fillings"))?;
        for d in diagrams_of_shape(&s) {
            ensure(is_le_diagram(&d) == oracle.contains(&d.to_inline()), || format!("is_le_diagram wrong on {}", d.to_inline()))?;
        }
        total += oracle.len();
    }
    ensure(total == 33, || format!("Le census {total}, expected 33"))
}

pub fn godiagram_enumeration_count() -> Check {
    for (k, n) in [(1, 3), (2, 4), (2, 5), (3, 5)] {
        let listed = enumerate_diagrams(k, n);
        let brute: usize = Shape::all_in_rectangle(k, n)
            .iter()
            .map(|s| all_fillings(s).into_iter().filter(validate).count())
            .sum();
        let masks: usize = Shape::all_in_rectangle(k, n)
            .iter()
            .map(|s| enumerate_distinguished(&word_from_shape(s, &standard_reading_order(s)).unwrap()).len())
            .sum();
        ensure(listed.len() == brute && brute == masks, || {
            format!("Gr({k},{n}): {} listed, {brute} valid fillings, {masks} masks", listed.len())
        })?;
        ensure(listed.iter().all(validate), || format!("Gr({k},{n}): invalid diagram listed"))?;
    }
    Ok(())
}

pub fn godiagram_mask_round_trip() -> Check {
    for d in enumerate_diagrams(3, 6) {
        for order in linear_extensions(d.shape()).into_iter().take(4) {
            let m = mask_from_diagram(&d, &order).map_err(|e| e.to_string())?;
            let back = diagram_from_mask(d.shape(), &order, &m).map_err(|e| e.to_string())?;
            ensure(back == d, || format!("{} does not round-trip", d.to_inline()))?;
        }
    }
    Ok(())
}

// ------------------------------------------------------------- algebra

fn var_of(i: u8) -> Variable {
    match i % 4 {
        0 => Variable::a(1 + i as u32 / 4),
        1 => Variable::c(1 + i as u32 / 4),
        2 => Variable::p(1 + i as u32 / 4),
        _ => Variable::m(1 + i as u32 / 4),
    }
}

type RawPoly = Vec<(i64, Vec<(u8, i32)>)>;

fn raw_poly() -> impl Strategy<Value = RawPoly> {
    proptest::collection::vec((-3i64..=3, proptest::collection::vec((0u8..8, -2i32..=2), 0..3)), 0..4)
}

fn build(raw: &RawPoly) -> Poly {
    raw.iter().fold(Poly::zero(), |acc, (c, vs)| {
        acc + Poly::term(*c, Monomial::from_exponents(vs.iter().map(|&(v, e)| (var_of(v), e))))
    })
}

pub fn algebra_ring_axioms() -> Check {
    run(1000, (raw_poly(), raw_poly(), raw_poly()), |(x, y, z)| {
        let (a, b, c) = (build(&x), build(&y), build(&z));
        ensure((a.clone() + b.clone()) + c.clone() == a.clone() + (b.clone() + c.clone()), || "addition not associative".into())?;
        ensure((a.clone() * b.clone()) * c.clone() == a.clone() * (b.clone() * c.clone()), || "multiplication not associative".into())?;
        ensure(a.clone() * b.clone() == b.clone() * a.clone(), || "multiplication not commutative".into())?;
        ensure(a.clone() + b.clone() == b.clone() + a.clone(), || "addition not commutative".into())?;
        ensure(a.clone() * (b.clone() + c.clone()) == a.clone() * b.clone() + a.clone() * c.clone(), || "not distributive".into())?;
        ensure((a.clone() - a.clone()).is_zero(), || "a - a is not zero".into())
    })
}

pub fn algebra_canonical_form() -> Check {
    run(500, raw_poly(), |raw| {
        let mut rev = raw.clone();
        rev.reverse();
        for t in rev.iter_mut() {
            t.1.reverse();
        }
        let (a, b) = (build(&raw), build(&rev));
        ensure(a == b, || format!("{a} != {b}"))?;
        ensure(a.terms().all(|(m, c)| !c.to_string().starts_with('0') && m.exponents().iter().all(|&(_, e)| e != 0)), || {
            format!("{a} stores a zero")
        })?;
        ensure(Poly::from_wire(&a.to_wire()).map_err(|e| e.to_string())? == a, || format!("{a} wire round trip"))
    })
}

fn fp_matrix(f: &PrimeField, n: usize, vals: &[u64]) -> Matrix<Fp> {
    Matrix::from_fn(n, n, |i, j| f.elem(vals[i * n + j] as i64))
}

pub fn algebra_determinant() -> Check {
    let f = PrimeField::new(7).unwrap();
    let strat = (1usize..=4).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(0u64..7, n * n),
            proptest::collection::vec(0u64..7, n * n),
            proptest::collection::vec(0u64..7, n),
            0u64..7,
        )
    });
    run(300, strat, |(n, x, y, row, scalar)| {
        let (a, b) = (fp_matrix(&f, n, &x), fp_matrix(&f, n, &y));
        let det = |m: &Matrix<Fp>| m.det_gauss(&f).unwrap();
        let ab = a.mul(&f, &b).unwrap();
        ensure(det(&ab) == f.mul(&det(&a), &det(&b)), || "det(AB) != det(A)det(B)".into())?;
        ensure(a.det_division_free(&f).unwrap() == det(&a), || "determinant algorithms disagree".into())?;
        if n >= 2 {
            let mut rows = a.to_rows();
            rows.swap(0, 1);
            let swapped = Matrix::from_rows(rows.clone()).unwrap();
            ensure(det(&swapped) == f.neg(&det(&a)), || "row swap does not negate".into())?;
            rows[1] = rows[0].clone();
            ensure(f.is_zero(&det(&Matrix::from_rows(rows).unwrap())), || "repeated row has nonzero det".into())?;
        }
        // linear in row 0
        let mut r1 = a.to_rows();
        let mut r2 = a.to_rows();
        let mut r3 = a.to_rows();
        for j in 0..n {
            let v = f.elem(row[j] as i64);
            r2[0][j] = v;
            r3[0][j] = f.add(&f.mul(&f.elem(scalar as i64), &r1[0][j]), &v);
        }
        r1[0].iter_mut().for_each(|x| *x = f.mul(&f.elem(scalar as i64), x));
        let lhs = det(&Matrix::from_rows(r3).unwrap());
        let rhs = f.add(&det(&Matrix::from_rows(r1).unwrap()), &det(&Matrix::from_rows(r2).unwrap()));
        ensure(lhs == rhs, || "determinant not multilinear".into())
    })
}

pub fn algebra_rref() -> Check {
    let f = PrimeField::new(5).unwrap();
    let strat = (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(0u64..5, r * c)));
    run(300, strat, |(r, c, vals)| {
        let a = Matrix::from_fn(r, c, |i, j| f.elem(vals[i * c + j] as i64));
        let (e, pivots) = a.rref(&f);
        ensure(e.rref(&f).0 == e, || "rref is not idempotent".into())?;
        ensure(pivots.len() == a.rank(&f) && e.rank(&f) == a.rank(&f), || "rank changed".into())?;
        // same row space: stacking does not raise the rank
        let mut stacked = a.to_rows();
        stacked.extend(e.to_rows());
        ensure(Matrix::from_rows(stacked).unwrap().rank(&f) == a.rank(&f), || "row space changed".into())
    })
}

// ------------------------------------------------------------- network

fn small_diagrams() -> Vec<GoDiagram> {
    let mut ds = enumerate_diagrams(2, 4);
    ds.extend(enumerate_diagrams(2, 5));
    ds
}

pub fn figure_diagram() -> GoDiagram {
    diagram("++++/+*+/*+o/+o", 4, 8)
}

pub fn network_lgv(diagrams: &[GoDiagram]) -> Check {
    for d in diagrams {
        let net = build_network(d);
        let w = weight_matrix(&net);
        for j in combinations(d.n(), d.k()) {
            let j: Vec<usize> = j.iter().map(|x| x + 1).collect();
            let lgv = plucker_lgv(&net, &j).map_err(|e| e.to_string())?;
            let det = plucker_det(&w, &j).map_err(|e| e.to_string())?;
            ensure(lgv == det, || format!("{} at {j:?}: LGV {lgv} vs det {det}", d.to_inline()))?;
        }
    }
    Ok(())
}

pub fn network_source_columns() -> Check {
    for d in small_diagrams() {
        let net = build_network(&d);
        let w = weight_matrix(&net);
        for (a, _) in net.sources.iter().enumerate() {
            for (b, &s) in net.sources.iter().enumerate() {
                let expect = if a == b { Poly::one() } else { Poly::zero() };
                ensure(*w.get(a, s - 1) == expect, || format!("{}: entry ({a},{s})", d.to_inline()))?;
            }
        }
    }
    Ok(())
}

pub fn network_single_swap() -> Check {
    for d in small_diagrams() {
        let net = build_network(&d);
        let w = weight_matrix(&net);
        for &r in &net.sources {
            for s in (1..=d.n()).filter(|s| !net.sources.contains(s)) {
                let mut j: Vec<usize> = net.sources.iter().map(|&x| if x == r { s } else { x }).collect();
                j.sort_unstable();
                let minor = plucker_det(&w, &j).map_err(|e| e.to_string())?;
                let paths = path_sum(&net, r, s).map_err(|e| e.to_string())?;
                ensure(minor == paths, || format!("{}: swap {r}->{s}: {minor} vs {paths}", d.to_inline()))?;
            }
        }
    }
    Ok(())
}

pub fn network_entry_shape() -> Check {
    let mut ds = small_diagrams();
    ds.push(figure_diagram());
    for d in &ds {
        let w = weight_matrix(&build_network(d));
        for x in w.entries() {
            ensure(x.is_polynomial(), || format!("{}: {x} has negative exponents", d.to_inline()))?;
            ensure(x.terms().all(|(_, c)| c.magnitude() == &1u32.into()), || format!("{}: {x} has a coefficient other than ±1", d.to_inline()))?;
            ensure(x.variables().iter().all(|v| matches!(v.kind, VarKind::A | VarKind::C)), || format!("{}: {x} uses chip variables", d.to_inline()))?;
        }
    }
    let net = build_network(&figure_diagram());
    let paths = enumerate_paths(&net, 1, 8).map_err(|e| e.to_string())?;
    ensure(paths.len() == 4, || format!("{} paths 1 -> 8 in the figure network", paths.len()))
}

// -------------------------------------------------------- marshrietsch

pub fn mr_chip_word_kinds() -> Check {
    for (k, n) in [(2, 4), (2, 5), (3, 5), (3, 6)] {
        for d in enumerate_diagrams(k, n) {
            let order = standard_reading_order(d.shape());
            let w = chip_word(&d);
            ensure(w.factors.len() == order.len(), || format!("{}: word length", d.to_inline()))?;
            for (pos, (&b, f)) in order.iter().zip(&w.factors).enumerate() {
                let idx = pos as u32 + 1;
                let ok = match (d.get(b), f) {
                    (Fill::White, ChipFactor::S(_)) => true,
                    (Fill::Plus, ChipFactor::Y(_, v)) => *v == Variable::p(idx),
                    (Fill::Black, ChipFactor::X(_, v)) => *v == Variable::m(idx),
                    _ => false,
                };
                ensure(ok, || format!("{}: factor {f} at reading position {idx}", d.to_inline()))?;
            }
        }
    }
    Ok(())
}

pub fn mr_leading_entries() -> Check {
    for (k, n) in [(2, 4), (2, 5), (3, 5), (2, 6), (3, 6)] {
        for d in enumerate_diagrams(k, n).into_iter().filter(|d| d.shape().num_boxes() <= 8) {
            let r = verify_leading_entries(&d);
            ensure(r.passed(), || format!("{:?}", r))?;
        }
    }
    Ok(())
}

pub fn mr_group_element_routes() -> Check {
    let factor = |n: usize| {
        (0u8..3, 1..n).prop_map(|(kind, i)| (kind, i))
    };
    let strat = (3usize..=5).prop_flat_map(move |n| (Just(n), proptest::collection::vec(factor(n), 0..7)));
    run(100, strat, |(n, raw)| {
        let factors = raw
            .iter()
            .enumerate()
            .map(|(pos, &(kind, i))| {
                let idx = pos as u32 + 1;
                match kind {
                    0 => ChipFactor::Y(i, Variable::p(idx)),
                    1 => ChipFactor::S(i),
                    _ => ChipFactor::X(i, Variable::m(idx)),
                }
            })
            .collect();
        let w = ChipWord { factors };
        let g = group_element(&w, n).map_err(|e| e.to_string())?;
        let r = route_matrix(&w, n).map_err(|e| e.to_string())?;
        ensure(g == r, || format!("{w}: product differs from route enumeration"))
    })
}

fn sum_weights(ps: &[deodhar::marshrietsch::Pseudopath]) -> Poly {
    ps.iter().fold(Poly::zero(), |acc, p| acc + p.weight.clone())
}

/// Modified-network sums are the network sums times the row's leading entry.
pub fn mr_modified_vs_plain() -> Check {
    let mut ds = small_diagrams();
    ds.push(figure_diagram());
    for d in &ds {
        let net = build_network(d);
        let mnet = modified_network(&net);
        for (row, &s) in net.sources.iter().enumerate() {
            let lead = expected_leading_entry(d, row + 1);
            for t in 1..=d.n() {
                let plain = sum_weights(&pseudopaths(&net, s, t));
                let modified = sum_weights(&modified_pseudopaths(&mnet, s, t));
                ensure(modified == lead.clone() * plain.clone(), || {
                    format!("{} ({s},{t}): {modified} vs {lead} * ({plain})", d.to_inline())
                })?;
            }
        }
        let m = mr_matrix(d);
        let mt = rescale(&m).map_err(|e| e.to_string())?;
        ensure(mt.sources == m.sources, || "rescale changed the row labels".into())?;
    }
    Ok(())
}

fn nonzero_assignment(f: &PrimeField, vars: &[Variable], rng: &mut ChaCha8Rng, nonzero: impl Fn(&Variable) -> bool) -> BTreeMap<Variable, Fp> {
    let q = f.modulus() as i64;
    vars.iter()
        .map(|&v| {
            let lo = if nonzero(&v) { 1 } else { 0 };
            (v, f.elem(rng.gen_range(lo..q)))
        })
        .collect()
}

pub fn mr_psi() -> Check {
    let f = PrimeField::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in small_diagrams().into_iter().chain(enumerate_diagrams(3, 5)) {
        let map = psi(&d);
        for (v, img) in &map {
            let (mono, c) = img.as_monomial().ok_or_else(|| format!("{}: Ψ({v}) = {img} is not a monomial", d.to_inline()))?;
            ensure(c.magnitude() == &1u32.into(), || format!("Ψ({v}) coefficient {c}"))?;
            if v.kind == VarKind::C {
                ensure(mono.exponent_of(Variable::m(v.index)) == 1, || format!("Ψ({v}) = {img} lacks m{}", v.index))?;
            }
        }
        let chip_vars: Vec<Variable> = map.values().flat_map(|p| p.variables()).collect::<BTreeSet<_>>().into_iter().collect();
        for _ in 0..5 {
            let chips = nonzero_assignment(&f, &chip_vars, &mut rng, |v| v.kind == VarKind::P);
            let weights: BTreeMap<Variable, Fp> = map
                .iter()
                .map(|(v, img)| img.evaluate(&f, &chips).map(|x| (*v, x)).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let back = invert_psi(&d, &f, &weights).map_err(|e| e.to_string())?;
            ensure(back == chips, || format!("{}: Ψ inverse does not round-trip", d.to_inline()))?;
        }
    }
    Ok(())
}

pub fn theorem_row(diagrams: &[GoDiagram]) -> Check {
    for d in diagrams {
        let r = verify_theorem_row(d);
        ensure(r.passed(), || format!("{:?}", r))?;
    }
    Ok(())
}

pub fn mr_theorem_row() -> Check {
    let mut ds = small_diagrams();
    ds.extend(enumerate_diagrams(3, 5));
    theorem_row(&ds)
}

// -------------------------------------------------------------- strata

fn random_point(f: &PrimeField, d: &GoDiagram, rng: &mut ChaCha8Rng) -> (BTreeMap<Variable, Fp>, PluckerVector<Fp>) {
    let net = build_network(d);
    let asg = nonzero_assignment(f, &net.variables(), rng, |v| v.kind == VarKind::A);
    let m = evaluate_network(&net, f, &asg).unwrap();
    (asg, plucker_vector(f, &m).unwrap())
}

/// Every point of Gr(k,n)(F_q) lies in exactly one component, and identify
/// names that component with weights reproducing the point.
pub fn strata_partition(k: usize, n: usize, q: u64) -> Check {
    let f = PrimeField::new(q).unwrap();
    let diagrams = enumerate_diagrams(k, n);
    let points = rref_points(&f, k, n);
    let expected = q_binomial(n, k).iter().rev().fold(0i64, |acc, &c| acc * q as i64 + c);
    ensure(points.len() as i64 == expected, || format!("{} RREF points, expected {expected}", points.len()))?;
    for a in &points {
        let p = plucker_vector(&f, a).map_err(|e| e.to_string())?;
        let hits: Vec<&GoDiagram> = diagrams.iter().filter(|d| membership(d, &p)).collect();
        ensure(hits.len() == 1, || format!("point {:?} in {} components", a.to_rows(), hits.len()))?;
        let id = identify(&f, &p).map_err(|e| e.to_string())?;
        ensure(&id.diagram == hits[0], || format!("identify gave {} not {}", id.diagram.to_inline(), hits[0].to_inline()))?;
        let back = plucker_vector(&f, &evaluate_network(&build_network(&id.diagram), &f, &id.weights).unwrap()).unwrap();
        ensure(super::projectively_equal(&f, &back, &p), || format!("weights of {} do not reproduce the point", id.diagram.to_inline()))?;
    }
    Ok(())
}

pub fn strata_identify_round_trip() -> Check {
    let f = PrimeField::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in small_diagrams() {
        for _ in 0..50 {
            let (asg, p) = random_point(&f, &d, &mut rng);
            let id = identify(&f, &p).map_err(|e| e.to_string())?;
            ensure(id.diagram == d && id.weights == asg, || format!("{} with {asg:?} identified as {}", d.to_inline(), id.diagram.to_inline()))?;
        }
    }
    Ok(())
}

pub fn strata_necklace() -> Check {
    let f = PrimeField::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for d in small_diagrams() {
        let (_, p0) = random_point(&f, &d, &mut rng);
        let nk = grassmann_necklace(&p0);
        for _ in 0..10 {
            let (_, p) = random_point(&f, &d, &mut rng);
            ensure(grassmann_necklace(&p) == nk, || format!("{}: necklace varies", d.to_inline()))?;
        }
    }
    // the positroid cell of the two components of the Gr(2,4) example
    let d1 = diagram("++/++", 2, 4);
    let d2 = diagram("*+/+o", 2, 4);
    for q in [2, 3] {
        let f = PrimeField::new(q).unwrap();
        let target = grassmann_necklace(&network_point(&f, &d1));
        for a in rref_points(&f, 2, 4) {
            let p = plucker_vector(&f, &a).unwrap();
            let in_cell = grassmann_necklace(&p) == target;
            let in_union = membership(&d1, &p) || membership(&d2, &p);
            ensure(in_cell == in_union, || format!("F_{q}: point {:?} cell {in_cell} union {in_union}", a.to_rows()))?;
        }
    }
    Ok(())
}

/// The point with every weight equal to one.
fn network_point(f: &PrimeField, d: &GoDiagram) -> PluckerVector<Fp> {
    let net = build_network(d);
    let asg = net.variables().into_iter().map(|v| (v, f.one())).collect();
    plucker_vector(f, &evaluate_network(&net, f, &asg).unwrap()).unwrap()
}

pub fn strata_matroid_refinement() -> Check {
    let f = PrimeField::new(3).unwrap();
    let mut seen: BTreeMap<Vec<Vec<usize>>, GoDiagram> = BTreeMap::new();
    for a in rref_points(&f, 2, 4) {
        let p = plucker_vector(&f, &a).unwrap();
        let d = identify(&f, &p).map_err(|e| e.to_string())?.diagram;
        if let Some(prev) = seen.insert(p.support(), d.clone()) {
            ensure(prev == d, || format!("support {:?} split between {} and {}", p.support(), prev.to_inline(), d.to_inline()))?;
        }
    }
    Ok(())
}

pub fn strata_point_count() -> Check {
    for (k, n) in [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6)] {
        let ours: Vec<i64> = grassmannian_point_polynomial(k, n).coeffs().iter().map(|c| c.try_into().unwrap()).collect();
        let oracle = q_binomial(n, k);
        ensure(ours == oracle, || format!("Gr({k},{n}): {ours:?} vs {oracle:?}"))?;
    }
    Ok(())
}

pub fn strata_extremal() -> Check {
    for d in enumerate_diagrams(2, 4) {
        let order = standard_reading_order(d.shape());
        let p = mr_plucker(&d, &order).map_err(|e| e.to_string())?;
        let r = check_extremal(&d, &order, &p);
        ensure(r.passed(), || format!("{:?}", r))?;
    }
    Ok(())
}

// ----------------------------------------------------------------- cli

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["deodhar"];
    full.extend_from_slice(args);
    let code = deodhar::cli::main_with_args(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

pub fn cli_json_round_trip() -> Check {
    for d in enumerate_diagrams(2, 5) {
        let s = serde_json::to_string(&d).map_err(|e| e.to_string())?;
        let back: GoDiagram = serde_json::from_str(&s).map_err(|e| e.to_string())?;
        ensure(back == d, || format!("{s} does not round-trip"))?;
    }
    let (code, out) = cli(&["--json", "enumerate", "--k", "2", "--n", "4"]);
    ensure(code == 0, || "enumerate failed".into())?;
    let listed: Vec<GoDiagram> = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(listed == enumerate_diagrams(2, 4), || "enumerate --json does not parse back".into())?;

    let f = PrimeField::new(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for d in enumerate_diagrams(2, 4) {
        let (_, p) = random_point(&f, &d, &mut rng);
        let j = serde_json::to_string(&p.to_json_with(|x| f.format_elem(x))).unwrap();
        let back = PluckerVector::from_json_with(&f, &serde_json::from_str(&j).unwrap(), |s| f.parse_elem(s)).map_err(|e| e.to_string())?;
        ensure(back == p, || format!("{j} does not round-trip"))?;
        let w = weight_matrix(&build_network(&d));
        let mj = w.to_json_with(|x| x.to_wire());
        let back = Matrix::from_json_with(&mj, Poly::from_wire).map_err(|e| e.to_string())?;
        ensure(back == w, || "weight matrix JSON round trip".into())?;
    }
    Ok(())
}

pub fn cli_seed_reproducible() -> Check {
    let args = ["--json", "verify", "--theorem", "identify", "--k", "2", "--n", "5", "--trials", "5", "--seed", "17"];
    let (c1, a) = cli(&args);
    let (c2, b) = cli(&args);
    ensure(c1 == 0 && c2 == 0, || "verify identify failed".into())?;
    ensure(a == b, || "same seed, different output".into())?;
    let (_, c) = cli(&["--json", "verify", "--theorem", "identify", "--k", "2", "--n", "5", "--trials", "5", "--seed", "18"]);
    ensure(c.contains("18"), || "seed not reported".into())
}

/// Every property, in a fixed order, for the acceptance runner.
pub fn all() -> Vec<(&'static str, fn() -> Check)> {
    vec![
        ("weyl: enumerate_distinguished vs definition", weyl_enumerate_distinguished),
        ("weyl: unique_pds", weyl_unique_pds),
        ("weyl: classification", weyl_classify),
        ("weyl: linear extension words", weyl_linear_extension_words),
        ("weyl: bruhat subword criterion", weyl_bruhat_subword),
        ("godiagram: reading order independence", godiagram_order_independence),
        ("godiagram: Le census", godiagram_le_census),
        ("godiagram: enumeration count", godiagram_enumeration_count),
        ("godiagram: mask round trip", godiagram_mask_round_trip),
        ("algebra: ring axioms", algebra_ring_axioms),
        ("algebra: canonical form", algebra_canonical_form),
        ("algebra: determinant", algebra_determinant),
        ("algebra: rref", algebra_rref),
        ("network: LGV", || network_lgv(&small_diagrams())),
        ("network: source columns", network_source_columns),
        ("network: single swap", network_single_swap),
        ("network: entry shape", network_entry_shape),
        ("mr: chip word kinds", mr_chip_word_kinds),
        ("mr: leading entries", mr_leading_entries),
        ("mr: group element vs routes", mr_group_element_routes),
        ("mr: modified vs plain sums", mr_modified_vs_plain),
        ("mr: psi", mr_psi),
        ("mr: row theorem", mr_theorem_row),
        ("strata: partition F_2", || strata_partition(2, 4, 2)),
        ("strata: partition F_3", || strata_partition(2, 4, 3)),
        ("strata: identify round trip", strata_identify_round_trip),
        ("strata: necklace", strata_necklace),
        ("strata: matroid refinement", strata_matroid_refinement),
        ("strata: point count", strata_point_count),
        ("strata: extremal", strata_extremal),
        ("cli: json round trip", cli_json_round_trip),
        ("cli: seed reproducible", cli_seed_reproducible),
    ]
}
