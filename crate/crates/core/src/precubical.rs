//! Finite pre-cubical sets of dimension at most 2.
//!
//! A square `w` carries four edge faces. Direction 1 faces are the left and
//! right sides, direction 2 faces are the bottom and top sides:
//!
//! ```text
//!            d2p
//!     c ----------> d
//!     ^             ^
//! d1m |      w      | d1p
//!     |             |
//!     a ----------> b
//!            d2m
//! ```
//!
//! so that `a = src(d2m) = src(d1m)`, `b = tgt(d2m) = src(d1p)`,
//! `c = tgt(d1m) = src(d2p)` and `d = tgt(d2p) = tgt(d1p)`. The two boundary
//! paths `d2m;d1p` and `d1m;d2p` run from `a` to `d`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::text::{expect_arity, token_lines};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellRef {
    pub dim: u8,
    pub id: String,
}

impl CellRef {
    pub fn vertex(id: impl Into<String>) -> Self {
        CellRef { dim: 0, id: id.into() }
    }

    pub fn edge(id: impl Into<String>) -> Self {
        CellRef { dim: 1, id: id.into() }
    }

    pub fn square(id: impl Into<String>) -> Self {
        CellRef { dim: 2, id: id.into() }
    }
}

impl fmt::Display for CellRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.dim {
            0 => "vertex",
            1 => "edge",
            _ => "square",
        };
        write!(f, "{kind} {}", self.id)
    }
}

/// A cell together with its optional label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub dim: u8,
    pub id: String,
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeFaces {
    pub src: String,
    pub tgt: String,
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFaces {
    pub d1m: String,
    pub d1p: String,
    pub d2m: String,
    pub d2p: String,
    pub label: Option<String>,
}

/// A finite pre-cubical set with cells in dimensions 0, 1 and 2.
///
/// Face references are stored by id, so a value may be ill-formed; use
/// [`PreCubicalSet::validate`] before relying on the face structure.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PreCubicalSet {
    vertices: BTreeMap<String, Option<String>>,
    edges: BTreeMap<String, EdgeFaces>,
    squares: BTreeMap<String, SquareFaces>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub cell: CellRef,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.cell, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The standard combinatorial models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// `0 -> 1`
    Interval,
    /// One vertex `*` with one loop.
    DirectedCircle,
    /// Two vertices with two parallel edges `0 => 1`.
    OrderedCircle,
    /// One vertex with `k` loops.
    WedgeCircles(usize),
    /// `n + 1` vertices in a line.
    Chain(usize),
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("unknown model `{s}`"));
        let arg = |prefix: &str| -> Result<Option<usize>> {
            match s.strip_prefix(prefix) {
                Some(rest) => {
                    let inner = rest
                        .strip_prefix('(')
                        .and_then(|r| r.strip_suffix(')'))
                        .ok_or_else(bad)?;
                    inner.trim().parse().map(Some).map_err(|_| bad())
                }
                None => Ok(None),
            }
        };
        match s {
            "interval" => return Ok(Model::Interval),
            "directed_circle" => return Ok(Model::DirectedCircle),
            "ordered_circle" => return Ok(Model::OrderedCircle),
            _ => {}
        }
        if let Some(k) = arg("wedge_circles")? {
            return Ok(Model::WedgeCircles(k));
        }
        if let Some(n) = arg("chain")? {
            return Ok(Model::Chain(n));
        }
        Err(bad())
    }
}

impl PreCubicalSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<()> {
        let id = id.into();
        if self.vertices.contains_key(&id) {
            return Err(Error::invalid(format!("duplicate vertex `{id}`")));
        }
        self.vertices.insert(id, None);
        Ok(())
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) -> Result<()> {
        let id = id.into();
        if self.edges.contains_key(&id) {
            return Err(Error::invalid(format!("duplicate edge `{id}`")));
        }
        self.edges.insert(
            id,
            EdgeFaces {
                src: src.into(),
                tgt: tgt.into(),
                label: None,
            },
        );
        Ok(())
    }

    /// Adds a square with faces given in the order `d1m d1p d2m d2p`.
    pub fn add_square(
        &mut self,
        id: impl Into<String>,
        d1m: impl Into<String>,
        d1p: impl Into<String>,
        d2m: impl Into<String>,
        d2p: impl Into<String>,
    ) -> Result<()> {
        let id = id.into();
        if self.squares.contains_key(&id) {
            return Err(Error::invalid(format!("duplicate square `{id}`")));
        }
        self.squares.insert(
            id,
            SquareFaces {
                d1m: d1m.into(),
                d1p: d1p.into(),
                d2m: d2m.into(),
                d2p: d2p.into(),
                label: None,
            },
        );
        Ok(())
    }

    pub fn set_label(&mut self, cell: &CellRef, label: impl Into<String>) -> Result<()> {
        let slot = match cell.dim {
            0 => self.vertices.get_mut(&cell.id),
            1 => self.edges.get_mut(&cell.id).map(|e| &mut e.label),
            _ => self.squares.get_mut(&cell.id).map(|s| &mut s.label),
        };
        match slot {
            Some(l) => {
                *l = Some(label.into());
                Ok(())
            }
            None => Err(unknown(cell)),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_squares(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty() && self.squares.is_empty()
    }

    /// Vertex ids in sorted order.
    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.vertices.keys().map(String::as_str)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &EdgeFaces)> {
        self.edges.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn squares(&self) -> impl Iterator<Item = (&str, &SquareFaces)> {
        self.squares.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn has_vertex(&self, id: &str) -> bool {
        self.vertices.contains_key(id)
    }

    pub fn edge(&self, id: &str) -> Option<&EdgeFaces> {
        self.edges.get(id)
    }

    pub fn square(&self, id: &str) -> Option<&SquareFaces> {
        self.squares.get(id)
    }

    pub fn contains(&self, cell: &CellRef) -> bool {
        match cell.dim {
            0 => self.vertices.contains_key(&cell.id),
            1 => self.edges.contains_key(&cell.id),
            2 => self.squares.contains_key(&cell.id),
            _ => false,
        }
    }

    /// Every cell, in dimension order and then id order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (id, label) in &self.vertices {
            out.push(Cell { dim: 0, id: id.clone(), label: label.clone() });
        }
        for (id, e) in &self.edges {
            out.push(Cell { dim: 1, id: id.clone(), label: e.label.clone() });
        }
        for (id, s) in &self.squares {
            out.push(Cell { dim: 2, id: id.clone(), label: s.label.clone() });
        }
        out
    }

    pub fn label(&self, cell: &CellRef) -> Option<&str> {
        match cell.dim {
            0 => self.vertices.get(&cell.id)?.as_deref(),
            1 => self.edges.get(&cell.id)?.label.as_deref(),
            _ => self.squares.get(&cell.id)?.label.as_deref(),
        }
    }

    /// Checks face references and the square corner identities.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (id, e) in &self.edges {
            for (side, v) in [("src", &e.src), ("tgt", &e.tgt)] {
                if !self.vertices.contains_key(v) {
                    violations.push(Violation {
                        cell: CellRef::edge(id.clone()),
                        message: format!("{side} refers to missing vertex `{v}`"),
                    });
                }
            }
        }
        for (id, s) in &self.squares {
            let faces = [("d1m", &s.d1m), ("d1p", &s.d1p), ("d2m", &s.d2m), ("d2p", &s.d2p)];
            let mut resolved = true;
            for (name, e) in faces {
                if !self.edges.contains_key(e) {
                    resolved = false;
                    violations.push(Violation {
                        cell: CellRef::square(id.clone()),
                        message: format!("{name} refers to missing edge `{e}`"),
                    });
                }
            }
            if !resolved {
                continue;
            }
            let [d1m, d1p, d2m, d2p] = [&s.d1m, &s.d1p, &s.d2m, &s.d2p].map(|e| &self.edges[e]);
            let corners = [
                ("src(d2m) = src(d1m)", &d2m.src, &d1m.src),
                ("tgt(d2m) = src(d1p)", &d2m.tgt, &d1p.src),
                ("tgt(d1m) = src(d2p)", &d1m.tgt, &d2p.src),
                ("tgt(d2p) = tgt(d1p)", &d2p.tgt, &d1p.tgt),
            ];
            for (identity, lhs, rhs) in corners {
                if lhs != rhs {
                    violations.push(Violation {
                        cell: CellRef::square(id.clone()),
                        message: format!("corner identity {identity} fails (`{lhs}` != `{rhs}`)"),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::invalid(format!("complex fails validation: {v}"))),
        }
    }

    pub fn model(model: Model) -> Result<Self> {
        let mut k = PreCubicalSet::new();
        match model {
            Model::Interval => {
                k.add_vertex("0")?;
                k.add_vertex("1")?;
                k.add_edge("e", "0", "1")?;
            }
            Model::DirectedCircle => {
                k.add_vertex("*")?;
                k.add_edge("e", "*", "*")?;
            }
            Model::OrderedCircle => {
                k.add_vertex("0")?;
                k.add_vertex("1")?;
                k.add_edge("a", "0", "1")?;
                k.add_edge("b", "0", "1")?;
            }
            Model::WedgeCircles(n) => {
                if n == 0 {
                    return Err(Error::invalid("wedge_circles needs k >= 1"));
                }
                k.add_vertex("*")?;
                for i in 0..n {
                    k.add_edge(format!("a{i}"), "*", "*")?;
                }
            }
            Model::Chain(n) => {
                if n == 0 {
                    return Err(Error::invalid("chain needs n >= 1"));
                }
                for i in 0..=n {
                    k.add_vertex(i.to_string())?;
                }
                for i in 0..n {
                    k.add_edge(format!("e{i}"), i.to_string(), (i + 1).to_string())?;
                }
            }
        }
        Ok(k)
    }

    /// The reflected complex: every edge reversed, square faces exchanged
    /// so the corner identities still hold.
    pub fn opposite(&self) -> Result<Self> {
        self.ensure_valid()?;
        let edges = self
            .edges
            .iter()
            .map(|(id, e)| {
                let flipped = EdgeFaces {
                    src: e.tgt.clone(),
                    tgt: e.src.clone(),
                    label: e.label.clone(),
                };
                (id.clone(), flipped)
            })
            .collect();
        let squares = self
            .squares
            .iter()
            .map(|(id, s)| {
                let flipped = SquareFaces {
                    d1m: s.d1p.clone(),
                    d1p: s.d1m.clone(),
                    d2m: s.d2p.clone(),
                    d2p: s.d2m.clone(),
                    label: s.label.clone(),
                };
                (id.clone(), flipped)
            })
            .collect();
        Ok(PreCubicalSet {
            vertices: self.vertices.clone(),
            edges,
            squares,
        })
    }

    /// The smallest face-closed sub-complex containing `cells`.
    pub fn sub_complex<'a, I>(&self, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a CellRef>,
    {
        let mut sq = BTreeSet::new();
        let mut ed = BTreeSet::new();
        let mut vx = BTreeSet::new();
        for c in cells {
            if !self.contains(c) {
                return Err(unknown(c));
            }
            match c.dim {
                0 => vx.insert(c.id.clone()),
                1 => ed.insert(c.id.clone()),
                _ => sq.insert(c.id.clone()),
            };
        }
        for s in &sq {
            let f = &self.squares[s];
            for e in [&f.d1m, &f.d1p, &f.d2m, &f.d2p] {
                if !self.edges.contains_key(e) {
                    return Err(unknown(&CellRef::edge(e.clone())));
                }
                ed.insert(e.clone());
            }
        }
        for e in &ed {
            let f = &self.edges[e];
            for v in [&f.src, &f.tgt] {
                if !self.vertices.contains_key(v) {
                    return Err(unknown(&CellRef::vertex(v.clone())));
                }
                vx.insert(v.clone());
            }
        }
        Ok(PreCubicalSet {
            vertices: vx.into_iter().map(|v| {
                let l = self.vertices[&v].clone();
                (v, l)
            }).collect(),
            edges: ed.into_iter().map(|e| {
                let f = self.edges[&e].clone();
                (e, f)
            }).collect(),
            squares: sq.into_iter().map(|s| {
                let f = self.squares[&s].clone();
                (s, f)
            }).collect(),
        })
    }

    /// Cellwise union of two sub-complexes of a common ambient complex.
    pub fn union(&self, other: &Self) -> Result<Self> {
        check_compatible(self, other)?;
        let mut out = self.clone();
        for (k, v) in &other.vertices {
            out.vertices.entry(k.clone()).or_insert_with(|| v.clone());
        }
        for (k, v) in &other.edges {
            out.edges.entry(k.clone()).or_insert_with(|| v.clone());
        }
        for (k, v) in &other.squares {
            out.squares.entry(k.clone()).or_insert_with(|| v.clone());
        }
        Ok(out)
    }

    /// Cellwise intersection of two sub-complexes of a common ambient complex.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        check_compatible(self, other)?;
        Ok(PreCubicalSet {
            vertices: self
                .vertices
                .iter()
                .filter(|(k, _)| other.vertices.contains_key(*k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            edges: self
                .edges
                .iter()
                .filter(|(k, _)| other.edges.contains_key(*k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            squares: self
                .squares
                .iter()
                .filter(|(k, _)| other.squares.contains_key(*k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        })
    }

    /// Canonical text form: vertices, then edges, then squares, each sorted by id.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.vertices.keys() {
            out.push_str(&format!("vertex {v}\n"));
        }
        for (id, e) in &self.edges {
            out.push_str(&format!("edge {id} {} {}\n", e.src, e.tgt));
        }
        for (id, s) in &self.squares {
            out.push_str(&format!("square {id} {} {} {} {}\n", s.d1m, s.d1p, s.d2m, s.d2p));
        }
        out
    }

    /// Parses the line-based complex format. The result is not validated.
    pub fn parse(text: &str) -> Result<Self> {
        let mut k = PreCubicalSet::new();
        for (line, toks) in token_lines(text) {
            let res = match toks[0] {
                "vertex" => {
                    expect_arity(line, &toks, 2)?;
                    k.add_vertex(toks[1])
                }
                "edge" => {
                    expect_arity(line, &toks, 4)?;
                    k.add_edge(toks[1], toks[2], toks[3])
                }
                "square" => {
                    expect_arity(line, &toks, 6)?;
                    k.add_square(toks[1], toks[2], toks[3], toks[4], toks[5])
                }
                other => return Err(Error::syntax(line, format!("unknown keyword `{other}`"))),
            };
            res.map_err(|e| Error::syntax(line, e.to_string()))?;
        }
        Ok(k)
    }
}

impl FromStr for PreCubicalSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PreCubicalSet::parse(s)
    }
}

fn unknown(cell: &CellRef) -> Error {
    let kind = match cell.dim {
        0 => "vertex",
        1 => "edge",
        _ => "square",
    };
    Error::Unknown { kind, id: cell.id.clone() }
}

fn check_compatible(a: &PreCubicalSet, b: &PreCubicalSet) -> Result<()> {
    for (k, e) in &a.edges {
        if let Some(f) = b.edges.get(k) {
            if (&e.src, &e.tgt) != (&f.src, &f.tgt) {
                return Err(Error::invalid(format!("edge `{k}` has different faces in the two complexes")));
            }
        }
    }
    for (k, s) in &a.squares {
        if let Some(t) = b.squares.get(k) {
            if (&s.d1m, &s.d1p, &s.d2m, &s.d2p) != (&t.d1m, &t.d1p, &t.d2m, &t.d2p) {
                return Err(Error::invalid(format!("square `{k}` has different faces in the two complexes")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> PreCubicalSet {
        let mut k = PreCubicalSet::new();
        for v in ["a", "b", "c", "d"] {
            k.add_vertex(v).unwrap();
        }
        k.add_edge("bottom", "a", "b").unwrap();
        k.add_edge("left", "a", "c").unwrap();
        k.add_edge("right", "b", "d").unwrap();
        k.add_edge("top", "c", "d").unwrap();
        k.add_square("w", "left", "right", "bottom", "top").unwrap();
        k
    }

    #[test]
    fn models_validate() {
        let interval = PreCubicalSet::model(Model::Interval).unwrap();
        assert!(interval.validate().is_ok());
        assert_eq!((interval.num_vertices(), interval.num_edges()), (2, 1));

        let circle = PreCubicalSet::model(Model::DirectedCircle).unwrap();
        assert!(circle.validate().is_ok());
        let e = circle.edge("e").unwrap();
        assert_eq!(e.src, e.tgt);

        let wedge = PreCubicalSet::model(Model::WedgeCircles(2)).unwrap();
        assert_eq!((wedge.num_vertices(), wedge.num_edges()), (1, 2));
        assert!(wedge.edges().all(|(_, e)| e.src == "*" && e.tgt == "*"));

        let chain = PreCubicalSet::model(Model::Chain(3)).unwrap();
        assert_eq!((chain.num_vertices(), chain.num_edges()), (4, 3));
        assert!(PreCubicalSet::model(Model::Chain(0)).is_err());
        assert!(PreCubicalSet::model(Model::WedgeCircles(0)).is_err());
    }

    #[test]
    fn model_names_parse() {
        assert_eq!("wedge_circles(3)".parse::<Model>().unwrap(), Model::WedgeCircles(3));
        assert_eq!("chain(2)".parse::<Model>().unwrap(), Model::Chain(2));
        assert_eq!("interval".parse::<Model>().unwrap(), Model::Interval);
        assert!("wedge_circles".parse::<Model>().is_err());
        assert!("torus".parse::<Model>().is_err());
    }

    #[test]
    fn broken_corner_is_reported() {
        let mut k = unit_square();
        k.add_vertex("z").unwrap();
        k.edges.get_mut("top").unwrap().tgt = "z".into();
        let report = k.validate();
        assert!(!report.is_ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.cell == CellRef::square("w") && v.message.contains("tgt(d2p) = tgt(d1p)")));
    }

    #[test]
    fn dangling_faces_are_reported() {
        let mut k = PreCubicalSet::new();
        k.add_vertex("0").unwrap();
        k.add_edge("e", "0", "missing").unwrap();
        k.add_square("w", "e", "e", "e", "nope").unwrap();
        let report = k.validate();
        assert_eq!(report.violations.len(), 2);
        assert_eq!(report.violations[0].cell, CellRef::edge("e"));
        assert_eq!(report.violations[1].cell, CellRef::square("w"));
    }

    #[test]
    fn opposite_flips_and_is_involutive() {
        let interval = PreCubicalSet::model(Model::Interval).unwrap();
        let op = interval.opposite().unwrap();
        assert_eq!(op.edge("e").unwrap().src, "1");
        assert_eq!(op.edge("e").unwrap().tgt, "0");

        let o1 = PreCubicalSet::model(Model::OrderedCircle).unwrap();
        assert_eq!(o1.opposite().unwrap().opposite().unwrap(), o1);

        let sq = unit_square();
        let op = sq.opposite().unwrap();
        assert!(op.validate().is_ok());
        assert_eq!(op.opposite().unwrap(), sq);
    }

    #[test]
    fn sub_complex_closure() {
        let sq = unit_square();
        let all: Vec<CellRef> = sq.cells().into_iter().map(|c| CellRef { dim: c.dim, id: c.id }).collect();
        assert_eq!(sq.sub_complex(&all).unwrap(), sq);
        assert_eq!(sq.sub_complex(&[CellRef::square("w")]).unwrap(), sq);
        assert!(sq.sub_complex(&[]).unwrap().is_empty());
        assert!(matches!(
            sq.sub_complex(&[CellRef::edge("nope")]),
            Err(Error::Unknown { kind: "edge", .. })
        ));
    }

    #[test]
    fn union_and_intersection() {
        let sq = unit_square();
        let left = sq.sub_complex(&[CellRef::edge("left")]).unwrap();
        let bottom = sq.sub_complex(&[CellRef::edge("bottom")]).unwrap();
        assert_eq!(sq.union(&left).unwrap(), sq);
        let meet = left.intersect(&bottom).unwrap();
        assert_eq!(meet.vertices().collect::<Vec<_>>(), vec!["a"]);
        assert_eq!(meet.num_edges(), 0);
        let join = left.union(&bottom).unwrap();
        assert!(join.validate().is_ok());
        assert_eq!(join.num_edges(), 2);

        let mut clash = PreCubicalSet::new();
        clash.add_vertex("a").unwrap();
        clash.add_vertex("d").unwrap();
        clash.add_edge("left", "a", "d").unwrap();
        assert!(sq.union(&clash).is_err());
    }

    #[test]
    fn text_round_trip() {
        let sq = unit_square();
        let text = sq.to_text();
        assert_eq!(
            text,
            "vertex a\nvertex b\nvertex c\nvertex d\nedge bottom a b\nedge left a c\n\
             edge right b d\nedge top c d\nsquare w left right bottom top\n"
        );
        let back = PreCubicalSet::parse(&text).unwrap();
        assert_eq!(back, sq);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = PreCubicalSet::parse("vertex a\n# note\nedge e a\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }));
        let err = PreCubicalSet::parse("vertex a\nvertex a\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }));
        let err = PreCubicalSet::parse("cube q\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }));
    }
}
