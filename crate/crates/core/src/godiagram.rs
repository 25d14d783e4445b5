//! Go-diagrams: shapes filled with pluses, white stones and black stones.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weyl::{
    self, enumerate_distinguished, shape_to_subset, standard_reading_order, word_from_shape,
    BoxRef, Shape, StepKind, SubexpressionMask, WeylError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("fill does not match the shape: {0}")]
    FillMismatch(String),
    #[error("mask is not distinguished")]
    NotDistinguished,
    #[error("filling is not a Go-diagram")]
    Invalid,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fill {
    Plus,
    White,
    Black,
}

impl Fill {
    pub fn symbol(self) -> char {
        match self {
            Fill::Plus => '+',
            Fill::White => 'o',
            Fill::Black => '*',
        }
    }

    pub fn from_symbol(c: char) -> Option<Fill> {
        match c {
            '+' => Some(Fill::Plus),
            'o' | 'O' | '0' => Some(Fill::White),
            '*' | '@' => Some(Fill::Black),
            _ => None,
        }
    }

    fn from_step(kind: StepKind) -> Fill {
        match kind {
            StepKind::White => Fill::White,
            StepKind::Plus => Fill::Plus,
            StepKind::Black => Fill::Black,
        }
    }
}

impl Serialize for Fill {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.symbol())
    }
}

/// A filling of a shape. Fills are stored row-major over the shape's boxes,
/// so equality and hashing are structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoDiagram {
    shape: Shape,
    fill: Vec<Fill>,
}

impl GoDiagram {
    /// Build a filling from rows (top to bottom). Does not check the
    /// Go-diagram condition; see [`validate`].
    pub fn new(shape: Shape, rows: Vec<Vec<Fill>>) -> Result<Self, DiagramError> {
        let nonempty = shape.parts().len();
        if rows.iter().skip(nonempty).any(|r| !r.is_empty()) || rows.len() < nonempty {
            return Err(DiagramError::FillMismatch("row count".into()));
        }
        let mut fill = Vec::with_capacity(shape.num_boxes());
        for (i, r) in rows.iter().take(nonempty).enumerate() {
            if r.len() != shape.row_len(i + 1) {
                return Err(DiagramError::FillMismatch(format!("row {} has {} entries", i + 1, r.len())));
            }
            fill.extend_from_slice(r);
        }
        Ok(GoDiagram { shape, fill })
    }

    pub fn uniform(shape: Shape, f: Fill) -> Self {
        let fill = vec![f; shape.num_boxes()];
        GoDiagram { shape, fill }
    }

    pub fn empty(k: usize, n: usize) -> Self {
        GoDiagram {
            shape: Shape::empty(k, n),
            fill: Vec::new(),
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn k(&self) -> usize {
        self.shape.k()
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    fn index(&self, b: BoxRef) -> usize {
        assert!(self.shape.contains(b), "box {b} outside shape");
        (1..b.row).map(|r| self.shape.row_len(r)).sum::<usize>() + b.col - 1
    }

    pub fn get(&self, b: BoxRef) -> Fill {
        self.fill[self.index(b)]
    }

    /// `None` outside the shape.
    pub fn at(&self, row: usize, col: usize) -> Option<Fill> {
        let b = BoxRef::new(row, col);
        self.shape.contains(b).then(|| self.get(b))
    }

    pub fn set(&mut self, b: BoxRef, f: Fill) {
        let i = self.index(b);
        self.fill[i] = f;
    }

    pub fn rows(&self) -> Vec<Vec<Fill>> {
        (1..=self.k())
            .map(|r| (1..=self.shape.row_len(r)).map(|c| self.get(BoxRef::new(r, c))).collect())
            .filter(|r: &Vec<Fill>| !r.is_empty())
            .collect()
    }

    pub fn boxes_with(&self, f: Fill) -> Vec<BoxRef> {
        self.shape.boxes().into_iter().filter(|&b| self.get(b) == f).collect()
    }

    /// Text form: one line per row, `+`, `o`, `*`.
    pub fn to_text(&self) -> String {
        self.rows()
            .iter()
            .map(|r| r.iter().map(|f| f.symbol()).collect::<String>())
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Inline form with `/` between rows.
    pub fn to_inline(&self) -> String {
        self.to_text().replace('\n', "/")
    }

    /// Parse the text or inline form. Without explicit `k` and `n`, `k` is
    /// the number of rows and `n − k` the length of the first row.
    pub fn from_text(text: &str, k: Option<usize>, n: Option<usize>) -> Result<Self, DiagramError> {
        let rows: Vec<Vec<Fill>> = text
            .split(['\n', '/'])
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| {
                        Fill::from_symbol(c)
                            .ok_or_else(|| DiagramError::Parse(format!("unexpected symbol `{c}`")))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let k = k.unwrap_or(rows.len());
        let width = rows.first().map_or(0, Vec::len);
        let n = n.unwrap_or(k + width);
        if n < k {
            return Err(DiagramError::Parse(format!("n = {n} < k = {k}")));
        }
        let shape = Shape::new(k, n, rows.iter().map(Vec::len).collect())?;
        GoDiagram::new(shape, rows)
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            k: self.k(),
            n: self.n(),
            shape: self.shape.parts(),
            fill: self
                .rows()
                .iter()
                .map(|r| r.iter().map(|f| f.symbol().to_string()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &DiagramJson) -> Result<Self, DiagramError> {
        let shape = Shape::new(j.k, j.n, j.shape.clone())?;
        let rows = j
            .fill
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        let mut cs = s.chars();
                        match (cs.next().and_then(Fill::from_symbol), cs.next()) {
                            (Some(f), None) => Ok(f),
                            _ => Err(DiagramError::Parse(format!("bad fill `{s}`"))),
                        }
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        GoDiagram::new(shape, rows)
    }

    /// Fills listed along a reading order.
    pub fn fills_in_order(&self, order: &[BoxRef]) -> Vec<Fill> {
        order.iter().map(|&b| self.get(b)).collect()
    }
}

impl fmt::Display for GoDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.fill.is_empty() {
            return write!(f, "(empty)");
        }
        write!(f, "{}", self.to_text())
    }
}

/// JSON interchange form: `{"k":2,"n":4,"shape":[2,2],"fill":[["*","+"],["+","o"]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub k: usize,
    pub n: usize,
    pub shape: Vec<usize>,
    pub fill: Vec<Vec<String>>,
}

impl Serialize for GoDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GoDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = DiagramJson::deserialize(d)?;
        GoDiagram::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// Fill the boxes of `shape`, taken in `order`, according to the
/// classification of a distinguished mask.
pub fn diagram_from_mask(
    shape: &Shape,
    order: &[BoxRef],
    mask: &SubexpressionMask,
) -> Result<GoDiagram, DiagramError> {
    let word = word_from_shape(shape, order)?;
    if mask.word != word {
        return Err(DiagramError::FillMismatch("mask word does not match the shape".into()));
    }
    if !mask.is_distinguished() {
        return Err(DiagramError::NotDistinguished);
    }
    let mut d = GoDiagram::uniform(shape.clone(), Fill::Plus);
    for (&b, kind) in order.iter().zip(mask.step_kinds()) {
        d.set(b, Fill::from_step(kind));
    }
    Ok(d)
}

/// Stones become taken letters, pluses skipped ones.
pub fn mask_from_diagram(d: &GoDiagram, order: &[BoxRef]) -> Result<SubexpressionMask, DiagramError> {
    let word = word_from_shape(&d.shape, order)?;
    let taken = order.iter().map(|&b| d.get(b) != Fill::Plus).collect();
    Ok(SubexpressionMask::new(word, taken)?)
}

/// A filling is a Go-diagram iff its mask is distinguished and the stone
/// colours agree with the mask's classification.
pub fn validate(d: &GoDiagram) -> bool {
    validate_in_order(d, &standard_reading_order(&d.shape))
}

pub fn validate_in_order(d: &GoDiagram, order: &[BoxRef]) -> bool {
    let Ok(mask) = mask_from_diagram(d, order) else {
        return false;
    };
    mask.is_distinguished()
        && order
            .iter()
            .zip(mask.step_kinds())
            .all(|(&b, kind)| d.get(b) == Fill::from_step(kind))
}

/// No black stones, and no white stone with a plus above it in its column
/// and a plus to its left in its row.
pub fn is_le_diagram(d: &GoDiagram) -> bool {
    d.shape.boxes().into_iter().all(|b| match d.get(b) {
        Fill::Black => false,
        Fill::Plus => true,
        Fill::White => {
            let above = (1..b.row).any(|r| d.get(BoxRef::new(r, b.col)) == Fill::Plus);
            let left = (1..b.col).any(|c| d.get(BoxRef::new(b.row, c)) == Fill::Plus);
            !(above && left)
        }
    })
}

/// All Go-diagrams in the `k × (n−k)` rectangle, shapes ordered by `I(λ)`
/// and diagrams within a shape by mask order.
pub fn enumerate_diagrams(k: usize, n: usize) -> Vec<GoDiagram> {
    let mut shapes = Shape::all_in_rectangle(k, n);
    shapes.sort_by_key(shape_to_subset);
    let mut out = Vec::new();
    for s in shapes {
        out.extend(diagrams_of_shape(&s));
    }
    out
}

pub fn diagrams_of_shape(s: &Shape) -> Vec<GoDiagram> {
    let order = standard_reading_order(s);
    let word = word_from_shape(s, &order).expect("standard order");
    enumerate_distinguished(&word)
        .iter()
        .map(|m| diagram_from_mask(s, &order, m).expect("enumerated masks are distinguished"))
        .collect()
}

/// `(t, u)` = (number of pluses, number of black stones).
pub fn stats(d: &GoDiagram) -> (usize, usize) {
    let t = d.fill.iter().filter(|&&f| f == Fill::Plus).count();
    let u = d.fill.iter().filter(|&&f| f == Fill::Black).count();
    (t, u)
}

/// Reading position (1-based) of every box under `order`.
pub fn reading_numbers(order: &[BoxRef]) -> HashMap<BoxRef, usize> {
    order.iter().enumerate().map(|(i, &b)| (b, i + 1)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoxLabel {
    One,
    P(usize),
    /// `−1` over `m_i`.
    M(usize),
}

impl fmt::Display for BoxLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoxLabel::One => write!(f, "1"),
            BoxLabel::P(i) => write!(f, "p{i}"),
            BoxLabel::M(i) => write!(f, "-1/m{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGoDiagram {
    pub base: GoDiagram,
    pub order: Vec<BoxRef>,
    pub labels: Vec<(BoxRef, BoxLabel)>,
}

impl LabeledGoDiagram {
    pub fn label(&self, b: BoxRef) -> Option<BoxLabel> {
        self.labels.iter().find(|(c, _)| *c == b).map(|&(_, l)| l)
    }
}

impl fmt::Display for LabeledGoDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 1..=self.base.k() {
            let len = self.base.shape.row_len(r);
            if len == 0 {
                continue;
            }
            let cells: Vec<String> = (1..=len)
                .map(|c| self.label(BoxRef::new(r, c)).expect("labelled").to_string())
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn labeled(d: &GoDiagram, order: &[BoxRef]) -> Result<LabeledGoDiagram, DiagramError> {
    if !weyl::is_linear_extension(&d.shape, order) {
        return Err(WeylError::NotLinearExtension.into());
    }
    let labels = order
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let l = match d.get(b) {
                Fill::White => BoxLabel::One,
                Fill::Plus => BoxLabel::P(i + 1),
                Fill::Black => BoxLabel::M(i + 1),
            };
            (b, l)
        })
        .collect();
    Ok(LabeledGoDiagram {
        base: d.clone(),
        order: order.to_vec(),
        labels,
    })
}
