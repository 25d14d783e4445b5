//! The weighted network of a diagram: construction, path enumeration, the
//! signed weight matrix and Plücker coordinates by determinant or by
//! non-intersecting path families.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Field, LaurentPolynomial, LaurentRing, Matrix, VarKind, Variable};
use crate::godiagram::{reading_numbers, Fill, GoDiagram};
use crate::weyl::{shape_to_subset, standard_reading_order, BoxRef};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("{0} is not a source")]
    NotSource(usize),
    #[error("invalid column subset {0:?}")]
    BadSubset(Vec<usize>),
    #[error("network weight {0} must be nonzero")]
    ZeroWeight(Variable),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "label", rename_all = "lowercase")]
pub enum VertexKind {
    /// Boundary vertex with its label in `1..=n`.
    Boundary(usize),
    /// Internal vertex of a plus box, keyed by reading number.
    Plus(usize),
    /// Internal vertex of a black-stone box, keyed by reading number.
    Black(usize),
}

/// A vertex with its grid position: internal vertices sit in their box,
/// row boundary vertices just east of the row, column boundary vertices just
/// below the column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Vertex {
    pub kind: VertexKind,
    pub row: usize,
    pub col: usize,
}

impl Vertex {
    pub fn boundary_label(&self) -> Option<usize> {
        match self.kind {
            VertexKind::Boundary(l) => Some(l),
            _ => None,
        }
    }

    pub fn is_internal(&self) -> bool {
        !matches!(self.kind, VertexKind::Boundary(_))
    }

    fn name(&self) -> String {
        match self.kind {
            VertexKind::Boundary(l) => format!("b{l}"),
            VertexKind::Plus(i) | VertexKind::Black(i) => format!("v{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Directed west.
    Horizontal,
    /// Directed south.
    Vertical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub direction: Direction,
    /// `None` for unit weight.
    pub weight: Option<Variable>,
    /// Boxes strictly between the endpoints.
    pub skipped: Vec<BoxRef>,
}

impl Edge {
    pub fn weight_poly(&self) -> LaurentPolynomial {
        self.weight.map_or_else(LaurentPolynomial::one, LaurentPolynomial::var)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Network {
    pub k: usize,
    pub n: usize,
    #[serde(skip)]
    pub diagram: GoDiagram,
    pub order: Vec<BoxRef>,
    pub sources: Vec<usize>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    #[serde(skip)]
    out_edges: Vec<Vec<usize>>,
    #[serde(skip)]
    in_edges: Vec<Vec<usize>>,
    #[serde(skip)]
    boundary_index: Vec<usize>,
    #[serde(skip)]
    box_index: HashMap<BoxRef, usize>,
}

/// A directed path, as a list of edge indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub edges: Vec<usize>,
    pub weight: LaurentPolynomial,
}

/// One path per source, to pairwise distinct boundary vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFamily {
    pub paths: Vec<Path>,
    pub vertex_disjoint: bool,
}

/// Build `N_D` with boxes keyed by their standard reading numbers.
pub fn build_network(d: &GoDiagram) -> Network {
    build_network_with_order(d, &standard_reading_order(d.shape()))
}

pub fn build_network_with_order(d: &GoDiagram, order: &[BoxRef]) -> Network {
    let shape = d.shape();
    let (k, n) = (shape.k(), shape.n());
    let numbers = reading_numbers(order);
    let col_len = |c: usize| (1..=k).take_while(|&r| shape.row_len(r) >= c).count();

    let mut vertices = Vec::new();
    let mut boundary_index = vec![usize::MAX; n + 1];
    let mut row_boundary = vec![usize::MAX; k + 1];
    let mut col_boundary = vec![usize::MAX; n - k + 1];
    let sources = shape_to_subset(shape);
    let (mut i, mut j) = (0usize, n - k);
    for t in 1..=n {
        let v = if i < k && shape.rows()[i] == j {
            i += 1;
            row_boundary[i] = vertices.len();
            Vertex {
                kind: VertexKind::Boundary(t),
                row: i,
                col: shape.row_len(i) + 1,
            }
        } else {
            col_boundary[j] = vertices.len();
            let v = Vertex {
                kind: VertexKind::Boundary(t),
                row: col_len(j) + 1,
                col: j,
            };
            j -= 1;
            v
        };
        boundary_index[t] = vertices.len();
        vertices.push(v);
    }

    let mut box_index = HashMap::new();
    for &b in order {
        let kind = match d.get(b) {
            Fill::Plus => VertexKind::Plus(numbers[&b]),
            Fill::Black => VertexKind::Black(numbers[&b]),
            Fill::White => continue,
        };
        box_index.insert(b, vertices.len());
        vertices.push(Vertex {
            kind,
            row: b.row,
            col: b.col,
        });
    }

    let mut edges = Vec::new();
    for &b in order {
        let Some(&v) = box_index.get(&b) else { continue };
        // nearest plus or boundary to the east; edge points west into v
        let mut skipped = Vec::new();
        let mut c = b.col + 1;
        let east = loop {
            let nb = BoxRef::new(b.row, c);
            if !shape.contains(nb) {
                break row_boundary[b.row];
            }
            if d.get(nb) == Fill::Plus {
                break box_index[&nb];
            }
            skipped.push(nb);
            c += 1;
        };
        let weight = match d.get(b) {
            Fill::Plus => Variable::new(VarKind::A, numbers[&b] as u32),
            _ => Variable::new(VarKind::C, numbers[&b] as u32),
        };
        edges.push(Edge {
            from: east,
            to: v,
            direction: Direction::Horizontal,
            weight: Some(weight),
            skipped,
        });
        // nearest plus or boundary to the south
        let mut skipped = Vec::new();
        let mut r = b.row + 1;
        let south = loop {
            let nb = BoxRef::new(r, b.col);
            if !shape.contains(nb) {
                break col_boundary[b.col];
            }
            if d.get(nb) == Fill::Plus {
                break box_index[&nb];
            }
            skipped.push(nb);
            r += 1;
        };
        edges.push(Edge {
            from: v,
            to: south,
            direction: Direction::Vertical,
            weight: None,
            skipped,
        });
    }

    let mut out_edges = vec![Vec::new(); vertices.len()];
    let mut in_edges = vec![Vec::new(); vertices.len()];
    for (e, edge) in edges.iter().enumerate() {
        out_edges[edge.from].push(e);
        in_edges[edge.to].push(e);
    }

    Network {
        k,
        n,
        diagram: d.clone(),
        order: order.to_vec(),
        sources,
        vertices,
        edges,
        out_edges,
        in_edges,
        boundary_index,
        box_index,
    }
}

impl Network {
    /// Vertex index of boundary label `t`.
    pub fn boundary(&self, t: usize) -> usize {
        self.boundary_index[t]
    }

    /// Vertex index of the internal vertex in box `b`, if any.
    pub fn vertex_of_box(&self, b: BoxRef) -> Option<usize> {
        self.box_index.get(&b).copied()
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn internal_vertex_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.is_internal()).count()
    }

    pub fn is_source(&self, t: usize) -> bool {
        self.sources.binary_search(&t).is_ok()
    }

    /// The network's weight variables, sorted.
    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: Vec<Variable> = self.edges.iter().filter_map(|e| e.weight).collect();
        vs.sort();
        vs
    }

    /// `(−1)^q` with `q` the number of sources strictly between `r` and `s`.
    pub fn sign(&self, r: usize, s: usize) -> i64 {
        let (lo, hi) = (r.min(s), r.max(s));
        let q = self.sources.iter().filter(|&&x| lo < x && x < hi).count();
        if q % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn path_weight(&self, edges: &[usize]) -> LaurentPolynomial {
        let mut exps = Vec::new();
        for &e in edges {
            if let Some(v) = self.edges[e].weight {
                exps.push((v, 1));
            }
        }
        LaurentPolynomial::monomial(1, exps)
    }

    /// DOT rendering: boundary vertices as labelled circles, plus vertices as
    /// small dots and black-stone vertices as large dots.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph network {\n  rankdir=LR;\n");
        for v in &self.vertices {
            let pos = format!("pos=\"{},{}!\"", v.col, self.vertices.len() - v.row);
            let attrs = match v.kind {
                VertexKind::Boundary(l) => format!("shape=circle, label=\"{l}\""),
                VertexKind::Plus(_) => "shape=point, width=0.1".to_string(),
                VertexKind::Black(_) => "shape=point, width=0.25".to_string(),
            };
            let _ = writeln!(s, "  {} [{attrs}, {pos}];", v.name());
        }
        for e in &self.edges {
            let label = e.weight.map(|w| w.to_string()).unwrap_or_default();
            let _ = writeln!(
                s,
                "  {} -> {} [label=\"{label}\"];",
                self.vertices[e.from].name(),
                self.vertices[e.to].name()
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("network serializes");
        v["diagram"] = serde_json::to_value(&self.diagram).expect("diagram serializes");
        v
    }
}

/// All directed paths from source `r` to boundary vertex `s`, in
/// lexicographic order of edge sequences.
pub fn enumerate_paths(net: &Network, r: usize, s: usize) -> Result<Vec<Path>, NetworkError> {
    if !net.is_source(r) {
        return Err(NetworkError::NotSource(r));
    }
    if s == 0 || s > net.n {
        return Err(NetworkError::BadSubset(vec![s]));
    }
    let (start, target) = (net.boundary(r), net.boundary(s));
    Ok(paths_between(net, start, target))
}

pub(crate) fn paths_between(net: &Network, start: usize, target: usize) -> Vec<Path> {
    fn go(net: &Network, v: usize, target: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v == target {
            out.push(stack.clone());
            return;
        }
        for &e in net.out_edges(v) {
            stack.push(e);
            go(net, net.edges[e].to, target, stack, out);
            stack.pop();
        }
    }
    let mut raw = Vec::new();
    go(net, start, target, &mut Vec::new(), &mut raw);
    raw.sort();
    raw.into_iter()
        .map(|edges| Path {
            start,
            end: target,
            weight: net.path_weight(&edges),
            edges,
        })
        .collect()
}

/// `Σ_P w(P)` over all paths from source `r` to boundary vertex `s`.
pub fn path_sum(net: &Network, r: usize, s: usize) -> Result<LaurentPolynomial, NetworkError> {
    let mut acc = LaurentPolynomial::zero();
    for p in enumerate_paths(net, r, s)? {
        acc = acc + p.weight;
    }
    Ok(acc)
}

/// The signed `k × n` weight matrix, rows labelled by the sources and
/// columns by `1..=n`.
pub fn weight_matrix(net: &Network) -> Matrix<LaurentPolynomial> {
    let m = Matrix::from_fn(net.k, net.n, |i, j| {
        let (r, s) = (net.sources[i], j + 1);
        path_sum(net, r, s).expect("r is a source").scale(net.sign(r, s))
    });
    m.with_row_labels(net.sources.clone())
        .and_then(|m| m.with_col_labels((1..=net.n).collect()))
        .expect("label counts match")
}

fn check_subset(subset: &[usize], k: usize, n: usize) -> Result<Vec<usize>, NetworkError> {
    let mut j = subset.to_vec();
    j.sort_unstable();
    j.dedup();
    if j.len() != k || subset.len() != k || j.iter().any(|&x| x == 0 || x > n) {
        return Err(NetworkError::BadSubset(subset.to_vec()));
    }
    Ok(j)
}

/// The maximal minor of `w` on the 1-based column set `subset`.
pub fn plucker_det(
    w: &Matrix<LaurentPolynomial>,
    subset: &[usize],
) -> Result<LaurentPolynomial, NetworkError> {
    let j = check_subset(subset, w.nrows(), w.ncols())?;
    let cols: Vec<usize> = j.iter().map(|x| x - 1).collect();
    Ok(w.columns(&cols).det_division_free(&LaurentRing)?)
}

/// Plücker coordinate as a signed sum over vertex-disjoint path families
/// from the sources onto `subset`.
pub fn plucker_lgv(net: &Network, subset: &[usize]) -> Result<LaurentPolynomial, NetworkError> {
    let targets = check_subset(subset, net.k, net.n)?;
    let families = vertex_disjoint_families(net, &targets);
    let mut acc = LaurentPolynomial::zero();
    for (assignment, family) in families {
        let perm_sign = permutation_sign(&assignment);
        let mut sign = perm_sign;
        let mut weight = LaurentPolynomial::one();
        for (a, p) in family.paths.iter().enumerate() {
            sign *= net.sign(net.sources[a], targets[assignment[a]]);
            weight = weight * &p.weight;
        }
        acc = acc + weight.scale(sign);
    }
    Ok(acc)
}

/// All vertex-disjoint families onto `targets` (sorted), with the target
/// index chosen for each source.
pub fn vertex_disjoint_families(net: &Network, targets: &[usize]) -> Vec<(Vec<usize>, PathFamily)> {
    let paths: Vec<Vec<Vec<Path>>> = net
        .sources
        .iter()
        .map(|&r| {
            targets
                .iter()
                .map(|&t| paths_between(net, net.boundary(r), net.boundary(t)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut used_vertex = vec![false; net.vertices.len()];
    let mut used_target = vec![false; targets.len()];
    let mut chosen: Vec<(usize, Path)> = Vec::new();
    search(net, &paths, 0, &mut used_vertex, &mut used_target, &mut chosen, &mut out);
    out
}

fn path_vertices(net: &Network, p: &Path) -> Vec<usize> {
    let mut vs = vec![p.start];
    vs.extend(p.edges.iter().map(|&e| net.edges[e].to));
    vs
}

fn search(
    net: &Network,
    paths: &[Vec<Vec<Path>>],
    a: usize,
    used_vertex: &mut Vec<bool>,
    used_target: &mut Vec<bool>,
    chosen: &mut Vec<(usize, Path)>,
    out: &mut Vec<(Vec<usize>, PathFamily)>,
) {
    if a == paths.len() {
        out.push((
            chosen.iter().map(|(t, _)| *t).collect(),
            PathFamily {
                paths: chosen.iter().map(|(_, p)| p.clone()).collect(),
                vertex_disjoint: true,
            },
        ));
        return;
    }
    for t in 0..used_target.len() {
        if used_target[t] {
            continue;
        }
        for p in &paths[a][t] {
            let vs = path_vertices(net, p);
            if vs.iter().any(|&v| used_vertex[v]) {
                continue;
            }
            for &v in &vs {
                used_vertex[v] = true;
            }
            used_target[t] = true;
            chosen.push((t, p.clone()));
            search(net, paths, a + 1, used_vertex, used_target, chosen, out);
            chosen.pop();
            used_target[t] = false;
            for &v in &vs {
                used_vertex[v] = false;
            }
        }
    }
}

pub(crate) fn permutation_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Substitute field values for the network weights. Every `a` variable
/// must be nonzero.
pub fn evaluate_network<F: Field>(
    net: &Network,
    field: &F,
    assignment: &BTreeMap<Variable, F::Elem>,
) -> Result<Matrix<F::Elem>, NetworkError> {
    for v in net.variables() {
        if let Some(x) = assignment.get(&v) {
            if v.kind == VarKind::A && field.is_zero(x) {
                return Err(NetworkError::ZeroWeight(v));
            }
        }
    }
    let w = weight_matrix(net);
    Ok(w.try_map(|p| p.evaluate(field, assignment))?)
}
