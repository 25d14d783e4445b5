//! Chip factorizations, their projection to `k × n` MR-matrices, pseudopath
//! formulas for the entries, and the change of variables Ψ relating network
//! weights to chip parameters.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, LaurentPolynomial, LaurentRing, Matrix, VarKind, Variable};
use crate::godiagram::{reading_numbers, Fill, GoDiagram};
use crate::network::{build_network, weight_matrix, Direction, Network, Path, VertexKind};
use crate::weyl::{box_generator, is_linear_extension, shape_to_subset, standard_reading_order, BoxRef};

type Poly = LaurentPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MrError {
    #[error("generator s_{0} is out of range for n = {1}")]
    IndexOutOfRange(usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("order is not a linear extension of the shape")]
    BadOrder,
    #[error("row {row} has leading entry in column {found:?}, expected column {row}")]
    LeadingEntry { row: usize, found: Option<usize> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChipFactor {
    /// `y_i(p)`.
    Y(usize, Variable),
    /// `ṡ_i`.
    S(usize),
    /// `x_i(m) ṡ_i⁻¹`.
    X(usize, Variable),
}

impl ChipFactor {
    pub fn generator(&self) -> usize {
        match *self {
            ChipFactor::Y(i, _) | ChipFactor::S(i) | ChipFactor::X(i, _) => i,
        }
    }
}

impl fmt::Display for ChipFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChipFactor::Y(i, p) => write!(f, "y{i}({p})"),
            ChipFactor::S(i) => write!(f, "s{i}"),
            ChipFactor::X(i, m) => write!(f, "x{i}({m})s{i}^-1"),
        }
    }
}

impl Serialize for ChipFactor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ChipWord {
    pub factors: Vec<ChipFactor>,
}

impl fmt::Display for ChipWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// One factor per box in the standard reading order.
pub fn chip_word(d: &GoDiagram) -> ChipWord {
    chip_word_in_order(d, &standard_reading_order(d.shape())).expect("standard order")
}

/// One factor per box along `order`; parameters are indexed by position.
pub fn chip_word_in_order(d: &GoDiagram, order: &[BoxRef]) -> Result<ChipWord, MrError> {
    if !is_linear_extension(d.shape(), order) {
        return Err(MrError::BadOrder);
    }
    let (k, n) = (d.k(), d.n());
    let factors = order
        .iter()
        .enumerate()
        .map(|(pos, &b)| {
            let i = box_generator(b, k, n);
            let idx = (pos + 1) as u32;
            match d.get(b) {
                Fill::White => ChipFactor::S(i),
                Fill::Plus => ChipFactor::Y(i, Variable::p(idx)),
                Fill::Black => ChipFactor::X(i, Variable::m(idx)),
            }
        })
        .collect();
    Ok(ChipWord { factors })
}

/// The `n × n` matrix of a chip. The `2 × 2` block of `φ_i` occupies array
/// rows and columns `n−i, n−i+1` (1-based), since chip matrices label rows
/// from the bottom and columns from the right.
pub fn chip_matrix(f: &ChipFactor, n: usize) -> Result<Matrix<Poly>, MrError> {
    let i = f.generator();
    if i == 0 || i >= n {
        return Err(MrError::IndexOutOfRange(i, n));
    }
    let (one, zero) = (Poly::one(), Poly::zero());
    let block = match *f {
        ChipFactor::Y(_, p) => [[one.clone(), zero.clone()], [Poly::var(p), one]],
        ChipFactor::S(_) => [[zero.clone(), Poly::constant(-1)], [one, zero]],
        ChipFactor::X(_, m) => [
            [-Poly::var(m), one],
            [Poly::constant(-1), zero],
        ],
    };
    let mut g = Matrix::identity(&LaurentRing, n);
    let base = n - i - 1;
    for (a, row) in block.iter().enumerate() {
        for (b, x) in row.iter().enumerate() {
            g.set(base + a, base + b, x.clone());
        }
    }
    Ok(g)
}

/// The ordered product of the chip matrices.
pub fn group_element(w: &ChipWord, n: usize) -> Result<Matrix<Poly>, MrError> {
    let mut g = Matrix::identity(&LaurentRing, n);
    for f in &w.factors {
        g = g.mul(&LaurentRing, &chip_matrix(f, n)?)?;
    }
    debug_assert_eq!(Ok(&g), route_matrix(w, n).as_ref());
    Ok(g)
}

/// The matrix of a chip network computed by enumerating routes level by
/// level, returned in array coordinates.
pub fn route_matrix(w: &ChipWord, n: usize) -> Result<Matrix<Poly>, MrError> {
    // Elementary chips in level coordinates: (from, to, weight).
    let mut layers: Vec<Vec<(usize, usize, Poly)>> = Vec::new();
    for f in &w.factors {
        let i = f.generator();
        if i == 0 || i >= n {
            return Err(MrError::IndexOutOfRange(i, n));
        }
        let pass = |skip: &[usize]| -> Vec<(usize, usize, Poly)> {
            (1..=n)
                .filter(|l| !skip.contains(l))
                .map(|l| (l, l, Poly::one()))
                .collect()
        };
        match *f {
            ChipFactor::Y(_, p) => {
                let mut e = pass(&[]);
                e.push((i, i + 1, Poly::var(p)));
                layers.push(e);
            }
            ChipFactor::S(_) => {
                let mut e = pass(&[i, i + 1]);
                e.push((i, i + 1, Poly::one()));
                e.push((i + 1, i, Poly::constant(-1)));
                layers.push(e);
            }
            ChipFactor::X(_, m) => {
                let mut e = pass(&[]);
                e.push((i + 1, i, Poly::var(m)));
                layers.push(e);
                let mut e = pass(&[i, i + 1]);
                e.push((i, i + 1, Poly::constant(-1)));
                e.push((i + 1, i, Poly::one()));
                layers.push(e);
            }
        }
    }
    fn walk(
        layers: &[Vec<(usize, usize, Poly)>],
        depth: usize,
        level: usize,
        acc: &Poly,
        sums: &mut [Poly],
    ) {
        if depth == layers.len() {
            sums[level - 1] = &sums[level - 1] + acc;
            return;
        }
        for (from, to, wt) in &layers[depth] {
            if *from == level {
                walk(layers, depth + 1, *to, &(acc * wt), sums);
            }
        }
    }
    let mut g = Matrix::zeros(&LaurentRing, n, n);
    for start in 1..=n {
        let mut sums = vec![Poly::zero(); n];
        walk(&layers, 0, start, &Poly::one(), &mut sums);
        for (end, s) in sums.into_iter().enumerate() {
            g.set(n - start, n - 1 - end, s);
        }
    }
    Ok(g)
}

/// A `k × n` MR-matrix with rows labelled by the sources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MRMatrix {
    pub matrix: Matrix<Poly>,
    pub sources: Vec<usize>,
}

impl MRMatrix {
    pub fn entry(&self, s: usize, t: usize) -> &Poly {
        let row = self.sources.iter().position(|&x| x == s).expect("row label");
        self.matrix.get(row, t - 1)
    }
}

/// Read the MR-matrix off `g`: `M[j][t] = g[n+1−t][k+1−j]` (1-based array
/// indices). Rows are labelled by `sources`.
pub fn project(g: &Matrix<Poly>, k: usize, sources: &[usize]) -> Result<MRMatrix, MrError> {
    let n = g.nrows();
    if !g.is_square() || k > n || sources.len() != k {
        return Err(MrError::Dimension(format!(
            "cannot project a {}x{} matrix to Gr({k},{n})",
            g.nrows(),
            g.ncols()
        )));
    }
    let m = Matrix::from_fn(k, n, |j, t| g.get(n - 1 - t, k - 1 - j).clone())
        .with_row_labels(sources.to_vec())?
        .with_col_labels((1..=n).collect())?;
    Ok(MRMatrix {
        matrix: m,
        sources: sources.to_vec(),
    })
}

/// The MR-matrix of a diagram, built with the standard reading order.
pub fn mr_matrix(d: &GoDiagram) -> MRMatrix {
    let g = group_element(&chip_word(d), d.n()).expect("valid word");
    project(&g, d.k(), &shape_to_subset(d.shape())).expect("square")
}

/// Leading (leftmost nonzero) entry of each row: its column and value.
pub fn leading_entries(m: &MRMatrix) -> Vec<Option<(usize, Poly)>> {
    m.matrix
        .rows_iter()
        .map(|row| {
            row.iter()
                .position(|x| !x.is_zero())
                .map(|c| (c + 1, row[c].clone()))
        })
        .collect()
}

/// Divide each row by its leading monomial, which must sit in the column
/// of the row label.
pub fn rescale(m: &MRMatrix) -> Result<MRMatrix, MrError> {
    let mut out = m.matrix.clone();
    for (j, lead) in leading_entries(m).into_iter().enumerate() {
        let s = m.sources[j];
        let Some((col, val)) = lead.filter(|(c, _)| *c == s) else {
            return Err(MrError::LeadingEntry {
                row: s,
                found: leading_entries(m)[j].as_ref().map(|(c, _)| *c),
            });
        };
        debug_assert_eq!(col, s);
        let inv = val.monomial_inverse()?;
        for t in 0..out.ncols() {
            let x = out.get(j, t) * &inv;
            out.set(j, t, x);
        }
    }
    Ok(MRMatrix {
        matrix: out,
        sources: m.sources.clone(),
    })
}

/// Leading entry of row `i_ℓ` is `(−1)^b Π p` over the row's plus boxes,
/// `b` the number of black stones in that row.
pub fn expected_leading_entry(d: &GoDiagram, row: usize) -> Poly {
    let numbers = reading_numbers(&standard_reading_order(d.shape()));
    let mut exps = Vec::new();
    let mut blacks = 0;
    for c in 1..=d.shape().row_len(row) {
        let b = BoxRef::new(row, c);
        match d.get(b) {
            Fill::Plus => exps.push((Variable::p(numbers[&b] as u32), 1)),
            Fill::Black => blacks += 1,
            Fill::White => {}
        }
    }
    Poly::monomial(if blacks % 2 == 0 { 1 } else { -1 }, exps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StepKind {
    W,
    S,
    E,
}

/// One traversal of an edge. `edge` is `None` for the extra edge of a
/// modified network.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub kind: StepKind,
    pub edge: Option<usize>,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pseudopath {
    pub start: usize,
    pub end: usize,
    pub steps: Vec<Step>,
    pub weight: Poly,
}

/// A network with one extra boundary vertex per source, attached by a
/// horizontal edge to the leftmost plus vertex of the source's row (or to
/// the source itself if the row has none).
#[derive(Clone, Debug)]
pub struct ModifiedNetwork {
    pub net: Network,
    /// For each source row `j`: target vertex and the boxes skipped.
    pub prefix: Vec<(usize, Vec<BoxRef>)>,
}

pub fn modified_network(net: &Network) -> ModifiedNetwork {
    let d = &net.diagram;
    let prefix = (1..=net.k)
        .map(|row| {
            let len = d.shape().row_len(row);
            let first_plus = (1..=len).find(|&c| d.get(BoxRef::new(row, c)) == Fill::Plus);
            match first_plus {
                Some(c) => {
                    let v = net.vertex_of_box(BoxRef::new(row, c)).expect("plus vertex");
                    (v, (1..c).map(|cc| BoxRef::new(row, cc)).collect())
                }
                None => (
                    net.boundary(net.sources[row - 1]),
                    (1..=len).map(|cc| BoxRef::new(row, cc)).collect(),
                ),
            }
        })
        .collect();
    ModifiedNetwork {
        net: net.clone(),
        prefix,
    }
}

fn chip_variable(v: Variable) -> Variable {
    match v.kind {
        VarKind::A => Variable::p(v.index),
        VarKind::C => Variable::m(v.index),
        _ => v,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    /// Inside the initial run of west steps.
    West,
    /// Just stepped south; an east step must follow (or the path ends).
    South,
    /// Inside a run of east steps.
    East,
}

struct Search<'a> {
    net: &'a Network,
    start: usize,
    used: HashSet<usize>,
    steps: Vec<Step>,
    out: Vec<(usize, Vec<Step>)>,
}

impl<'a> Search<'a> {
    fn record(&mut self, v: usize, state: State) {
        if state != State::West && self.net.vertices[v].boundary_label().is_some() && v != self.start {
            self.out.push((v, self.steps.clone()));
        }
    }

    fn go(&mut self, v: usize, state: State) {
        self.record(v, state);
        match state {
            State::West => {
                self.west_steps(v, State::West, false);
                self.south_steps(v);
            }
            State::South => self.east_steps(v),
            State::East => {
                self.east_steps(v);
                self.south_steps(v);
            }
        }
    }

    fn take(&mut self, step: Step, next: State) {
        let e = step.edge.expect("network edge");
        self.used.insert(e);
        self.steps.push(step);
        self.go(step.to, next);
        self.steps.pop();
        self.used.remove(&e);
    }

    fn west_steps(&mut self, v: usize, next: State, only_black: bool) {
        for &e in self.net.out_edges(v) {
            let edge = &self.net.edges[e];
            if edge.direction != Direction::Horizontal || self.used.contains(&e) {
                continue;
            }
            if only_black && !matches!(self.net.vertices[edge.to].kind, VertexKind::Black(_)) {
                continue;
            }
            let step = Step {
                kind: StepKind::W,
                edge: Some(e),
                from: v,
                to: edge.to,
            };
            self.take(step, next);
        }
    }

    fn south_steps(&mut self, v: usize) {
        for &e in self.net.out_edges(v) {
            let edge = &self.net.edges[e];
            if edge.direction != Direction::Vertical || self.used.contains(&e) {
                continue;
            }
            let step = Step {
                kind: StepKind::S,
                edge: Some(e),
                from: v,
                to: edge.to,
            };
            self.take(step, State::South);
        }
    }

    fn east_steps(&mut self, v: usize) {
        for &e in self.net.in_edges(v) {
            let edge = &self.net.edges[e];
            if edge.direction != Direction::Horizontal || self.used.contains(&e) {
                continue;
            }
            let step = Step {
                kind: StepKind::E,
                edge: Some(e),
                from: v,
                to: edge.from,
            };
            // a plain east step
            self.take(step, State::East);
            // an east-west combination step ending at a black vertex
            self.used.insert(e);
            self.steps.push(step);
            self.west_steps(edge.from, State::East, true);
            self.steps.pop();
            self.used.remove(&e);
        }
    }
}

/// Weight of a step sequence. `prefix_skipped` are the boxes crossed by the
/// extra edge of a modified network, if the sequence starts with it.
fn pseudopath_weight(net: &Network, steps: &[Step], prefix_skipped: Option<&[BoxRef]>) -> Poly {
    let d = &net.diagram;
    let mut sign = 1i64;
    let mut exps: Vec<(Variable, i32)> = Vec::new();
    let mut prev: Option<StepKind> = None;
    if let Some(skipped) = prefix_skipped {
        if skipped.iter().filter(|&&b| d.get(b) == Fill::Black).count() % 2 == 1 {
            sign = -sign;
        }
    }
    for st in steps {
        let Some(e) = st.edge else {
            prev = Some(StepKind::E);
            continue;
        };
        let edge = &net.edges[e];
        match st.kind {
            StepKind::W => {
                let v = chip_variable(edge.weight.expect("horizontal edges are weighted"));
                exps.push((v, if v.kind == VarKind::P { -1 } else { 1 }));
            }
            StepKind::E => {
                let v = chip_variable(edge.weight.expect("horizontal edges are weighted"));
                // after a combination step we sit on a black vertex, whose
                // incoming edge carries an m, so only plain east steps matter
                if v.kind == VarKind::P && prev == Some(StepKind::E) {
                    exps.push((v, 1));
                }
            }
            StepKind::S => {}
        }
        let flips = match edge.direction {
            Direction::Horizontal => edge.skipped.iter().filter(|&&b| d.get(b) == Fill::Black).count(),
            Direction::Vertical => edge.skipped.iter().filter(|&&b| d.get(b) == Fill::White).count(),
        };
        if flips % 2 == 1 {
            sign = -sign;
        }
        prev = Some(st.kind);
    }
    Poly::monomial(sign, exps)
}

/// All pseudopaths from source `s` to boundary vertex `t` on `N_D`.
pub fn pseudopaths(net: &Network, s: usize, t: usize) -> Vec<Pseudopath> {
    let start = net.boundary(s);
    let target = net.boundary(t);
    if s == t {
        return vec![Pseudopath {
            start,
            end: start,
            steps: Vec::new(),
            weight: Poly::one(),
        }];
    }
    let mut search = Search {
        net,
        start,
        used: HashSet::new(),
        steps: Vec::new(),
        out: Vec::new(),
    };
    search.west_steps(start, State::West, false);
    search
        .out
        .into_iter()
        .filter(|(end, _)| *end == target)
        .map(|(end, steps)| Pseudopath {
            start,
            end,
            weight: pseudopath_weight(net, &steps, None),
            steps,
        })
        .collect()
}

/// All pseudopaths on the modified network from `i'_j` (the extra vertex
/// of source `s`) to boundary vertex `t`.
pub fn modified_pseudopaths(mnet: &ModifiedNetwork, s: usize, t: usize) -> Vec<Pseudopath> {
    let net = &mnet.net;
    let row = net.sources.iter().position(|&x| x == s).expect("source");
    let (first, skipped) = &mnet.prefix[row];
    let target = net.boundary(t);
    let prefix = Step {
        kind: StepKind::E,
        edge: None,
        from: usize::MAX,
        to: *first,
    };
    let mut search = Search {
        net,
        start: usize::MAX,
        used: HashSet::new(),
        steps: vec![prefix],
        out: Vec::new(),
    };
    // the extra edge may itself be the east half of a combination step
    search.go(*first, State::East);
    search.west_steps(*first, State::East, true);
    search
        .out
        .into_iter()
        .filter(|(end, _)| *end == target)
        .map(|(end, steps)| Pseudopath {
            start: usize::MAX,
            end,
            weight: pseudopath_weight(net, &steps, Some(skipped)),
            steps,
        })
        .collect()
}

fn sum_weights(ps: &[Pseudopath]) -> Poly {
    ps.iter().fold(Poly::zero(), |acc, p| acc + &p.weight)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub diagram: String,
    pub theorem: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl TheoremReport {
    pub(crate) fn new(d: &GoDiagram, theorem: &str, cx: Option<Counterexample>) -> Self {
        TheoremReport {
            diagram: d.to_inline(),
            theorem: theorem.to_string(),
            status: if cx.is_none() { "pass" } else { "fail" }.to_string(),
            counterexample: cx,
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn mismatch(row: usize, col: usize, expected: &Poly, actual: &Poly) -> Counterexample {
    Counterexample {
        row,
        col,
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

/// Rescaled MR-matrix entries against network pseudopath sums, and raw
/// MR-matrix entries against modified-network pseudopath sums.
pub fn verify_entry_formulas(d: &GoDiagram) -> TheoremReport {
    let net = build_network(d);
    let m = mr_matrix(d);
    let mt = match rescale(&m) {
        Ok(mt) => mt,
        Err(e) => {
            let cx = Counterexample {
                row: 0,
                col: 0,
                expected: "leading entries in source columns".into(),
                actual: e.to_string(),
            };
            return TheoremReport::new(d, "entries", Some(cx));
        }
    };
    let mnet = modified_network(&net);
    for &s in &net.sources {
        for t in 1..=net.n {
            let lhs = mt.entry(s, t);
            let rhs = sum_weights(&pseudopaths(&net, s, t));
            if *lhs != rhs {
                return TheoremReport::new(d, "entries", Some(mismatch(s, t, lhs, &rhs)));
            }
            let lhs = m.entry(s, t);
            let rhs = sum_weights(&modified_pseudopaths(&mnet, s, t));
            if *lhs != rhs {
                return TheoremReport::new(d, "entries", Some(mismatch(s, t, lhs, &rhs)));
            }
        }
    }
    TheoremReport::new(d, "entries", None)
}

/// Check that every row's leading entry sits in its label column and has
/// the expected signed product of `p`s.
pub fn verify_leading_entries(d: &GoDiagram) -> TheoremReport {
    let m = mr_matrix(d);
    for (j, lead) in leading_entries(&m).into_iter().enumerate() {
        let s = m.sources[j];
        let expected = expected_leading_entry(d, j + 1);
        match lead {
            Some((c, v)) if c == s && v == expected => {}
            Some((c, v)) => return TheoremReport::new(d, "leading", Some(mismatch(s, c, &expected, &v))),
            None => return TheoremReport::new(d, "leading", Some(mismatch(s, 0, &expected, &Poly::zero()))),
        }
    }
    TheoremReport::new(d, "leading", None)
}

/// The boxes `b_1`, `R_t`, `R_ℓ`, `R_r` around `b0`.
fn psi_regions(d: &GoDiagram, b0: BoxRef) -> (Vec<BoxRef>, Vec<BoxRef>, Vec<BoxRef>) {
    let len = d.shape().row_len(b0.row);
    let b1 = (b0.col + 1..=len).find(|&c| d.get(BoxRef::new(b0.row, c)) == Fill::Plus);
    let end = b1.unwrap_or(len + 1);
    let r_t = (b0.col + 1..end).map(|c| BoxRef::new(b0.row, c)).collect();
    let below = |col: usize, from: usize| -> Vec<BoxRef> {
        (from + 1..=d.k())
            .map(|r| BoxRef::new(r, col))
            .take_while(|&b| d.shape().contains(b))
            .collect()
    };
    let r_l = below(b0.col, b0.row);
    let r_r = b1.map(|c| below(c, b0.row)).unwrap_or_default();
    (r_t, r_l, r_r)
}

/// Ψ on the network variables of `d`.
pub fn psi(d: &GoDiagram) -> BTreeMap<Variable, Poly> {
    let numbers = reading_numbers(&standard_reading_order(d.shape()));
    let p_of = |b: &BoxRef| Variable::p(numbers[b] as u32);
    let mut out = BTreeMap::new();
    for b0 in d.shape().boxes() {
        let fill = d.get(b0);
        if fill == Fill::White {
            continue;
        }
        let (r_t, r_l, r_r) = psi_regions(d, b0);
        let blacks = r_t
            .iter()
            .chain(&r_l)
            .chain(&r_r)
            .filter(|&&b| d.get(b) == Fill::Black)
            .count();
        let mut exps: Vec<(Variable, i32)> = Vec::new();
        for b in r_r.iter().filter(|&&b| d.get(b) == Fill::Plus) {
            exps.push((p_of(b), 1));
        }
        for b in r_l.iter().filter(|&&b| d.get(b) == Fill::Plus) {
            exps.push((p_of(b), -1));
        }
        let idx = numbers[&b0] as u32;
        let var = match fill {
            Fill::Plus => {
                exps.push((Variable::p(idx), -1));
                Variable::a(idx)
            }
            _ => {
                exps.push((Variable::m(idx), 1));
                Variable::c(idx)
            }
        };
        let sign = if blacks % 2 == 0 { 1 } else { -1 };
        out.insert(var, Poly::monomial(sign, exps));
    }
    out
}

/// Apply Ψ to a polynomial in the network weights.
pub fn apply_psi(map: &BTreeMap<Variable, Poly>, x: &Poly) -> Poly {
    x.substitute(map).expect("Ψ images are unit monomials or carry m")
}

/// Solve Ψ backwards: chip parameters from network weights. Each image
/// involves only its own parameter and those of boxes in lower rows, so the
/// parameters are recovered in reading order.
pub fn invert_psi<F: crate::algebra::Field>(
    d: &GoDiagram,
    field: &F,
    weights: &BTreeMap<Variable, F::Elem>,
) -> Result<BTreeMap<Variable, F::Elem>, MrError> {
    let map = psi(d);
    let order = standard_reading_order(d.shape());
    let mut out = BTreeMap::new();
    for (pos, &b) in order.iter().enumerate() {
        let idx = (pos + 1) as u32;
        let (net_var, chip_var, exp) = match d.get(b) {
            Fill::Plus => (Variable::a(idx), Variable::p(idx), -1),
            Fill::Black => (Variable::c(idx), Variable::m(idx), 1),
            Fill::White => continue,
        };
        let w = weights
            .get(&net_var)
            .ok_or(AlgebraError::UnassignedVariable(net_var))?;
        let coeffs = map[&net_var].evaluate_except(field, &out, chip_var)?;
        let c = coeffs.get(&exp).ok_or(AlgebraError::DivisionByZero)?;
        // a = c / p  or  c_b = c · m
        let x = if exp == -1 { field.div(c, w) } else { field.div(w, c) };
        out.insert(chip_var, x.ok_or(AlgebraError::DivisionByZero)?);
    }
    Ok(out)
}

/// Closed form of Ψ(w(P)): `(−1)^{|B3|} Π_{B2} m / Π_{B1} p`, with `B1` the
/// plus vertices on the path, `B2` its black vertices and `B3` the black
/// boxes its edges pass over.
pub fn psi_path_weight(net: &Network, path: &Path) -> Poly {
    let d = &net.diagram;
    let mut exps = Vec::new();
    let mut vertices = vec![path.start];
    vertices.extend(path.edges.iter().map(|&e| net.edges[e].to));
    for v in vertices {
        match net.vertices[v].kind {
            VertexKind::Plus(i) => exps.push((Variable::p(i as u32), -1)),
            VertexKind::Black(i) => exps.push((Variable::m(i as u32), 1)),
            VertexKind::Boundary(_) => {}
        }
    }
    let b3: usize = path
        .edges
        .iter()
        .map(|&e| net.edges[e].skipped.iter().filter(|&&b| d.get(b) == Fill::Black).count())
        .sum();
    Poly::monomial(if b3.is_multiple_of(2) { 1 } else { -1 }, exps)
}

/// Row reduction of a rescaled MR-matrix without division: pivot columns
/// become unit vectors and every other entry is the alternating sum over
/// chains of intermediate sources.
pub fn rref_division_free(mt: &MRMatrix) -> Matrix<Poly> {
    let sources = &mt.sources;
    let n = mt.matrix.ncols();
    let is_source = |t: usize| sources.binary_search(&t).is_ok();
    let mut out = Matrix::zeros(&LaurentRing, sources.len(), n);
    for (row, &s) in sources.iter().enumerate() {
        for t in 1..=n {
            let v = if is_source(t) {
                if t == s {
                    Poly::one()
                } else {
                    Poly::zero()
                }
            } else if t < s {
                Poly::zero()
            } else {
                chain_sum(mt, s, t)
            };
            out.set(row, t - 1, v);
        }
    }
    out.with_row_labels(sources.clone())
        .and_then(|m| m.with_col_labels((1..=n).collect()))
        .expect("label counts match")
}

/// `M̃_{st} + Σ_{s<j_1<…<j_r<t} (−1)^r M̃_{s j_1} ⋯ M̃_{j_r t}`, computed by
/// dynamic programming over the last chain element.
fn chain_sum(mt: &MRMatrix, s: usize, t: usize) -> Poly {
    let inner: Vec<usize> = mt.sources.iter().copied().filter(|&j| s < j && j < t).collect();
    // f[j] = Σ over chains s < j_1 < … < j_r = j of (−1)^r M̃_{s j_1}⋯M̃_{j_{r−1} j}
    let mut f: Vec<Poly> = Vec::with_capacity(inner.len());
    for (a, &j) in inner.iter().enumerate() {
        let mut acc = -mt.entry(s, j);
        for (b, &i) in inner[..a].iter().enumerate() {
            acc = acc - &(&f[b] * mt.entry(i, j));
        }
        f.push(acc);
    }
    let mut total = mt.entry(s, t).clone();
    for (b, &j) in inner.iter().enumerate() {
        total = total + &(&f[b] * mt.entry(j, t));
    }
    total
}

/// Ψ applied entrywise to the weight matrix equals the division-free
/// row reduction of the rescaled MR-matrix.
pub fn verify_theorem_row(d: &GoDiagram) -> TheoremReport {
    let net = build_network(d);
    let map = psi(d);
    let lhs = weight_matrix(&net).map(|x| apply_psi(&map, x));
    let mt = match rescale(&mr_matrix(d)) {
        Ok(mt) => mt,
        Err(e) => {
            let cx = Counterexample {
                row: 0,
                col: 0,
                expected: "leading entries in source columns".into(),
                actual: e.to_string(),
            };
            return TheoremReport::new(d, "row", Some(cx));
        }
    };
    let rhs = rref_division_free(&mt);
    for (j, &s) in net.sources.iter().enumerate() {
        for t in 0..net.n {
            if lhs.get(j, t) != rhs.get(j, t) {
                return TheoremReport::new(d, "row", Some(mismatch(s, t + 1, rhs.get(j, t), lhs.get(j, t))));
            }
        }
    }
    TheoremReport::new(d, "row", None)
}

/// Substitute field values into the rescaled MR-matrix (helper for the
/// field-level cross-check of [`rref_division_free`]).
pub fn evaluate_matrix<F: crate::algebra::Field>(
    m: &Matrix<Poly>,
    field: &F,
    assignment: &BTreeMap<Variable, F::Elem>,
) -> Result<Matrix<F::Elem>, MrError> {
    Ok(m.try_map(|x| x.evaluate(field, assignment))?)
}

/// Degree-zero sanity helper: the identity is the group element of the
/// empty word.
pub fn identity(n: usize) -> Matrix<Poly> {
    Matrix::identity(&LaurentRing, n)
}
