//! Planar grid scenes with forbidden open boxes.
//!
//! A scene is the rectangle `[0,W] x [0,H]` under the componentwise order,
//! minus a finite union of open axis-aligned boxes. It compiles to the
//! pre-cubical set of unit cells whose closed carriers avoid every box.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::precubical::{CellRef, PreCubicalSet};
use crate::text::{expect_arity, parse_int, token_lines};

pub type Point = (i64, i64);

/// The open box `(x0, x1) x (y0, y1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OpenBox {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

impl OpenBox {
    pub fn new(x0: i64, y0: i64, x1: i64, y1: i64) -> Self {
        OpenBox { x0, y0, x1, y1 }
    }

    /// Does the closed rectangle `[ax, bx] x [ay, by]` meet this open box?
    /// Degenerate rectangles (points, segments) are allowed.
    fn meets_closed(&self, ax: i64, ay: i64, bx: i64, by: i64) -> bool {
        ax < self.x1 && bx > self.x0 && ay < self.y1 && by > self.y0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridScene {
    width: i64,
    height: i64,
    boxes: Vec<OpenBox>,
    source: Point,
    target: Point,
}

/// Maps a point under the light-cone order `|y' - y| <= x' - x` to the
/// product order: `(x, y) -> (x - y, x + y)`.
pub fn cone_to_product_coords(p: Point) -> Point {
    (p.0 - p.1, p.0 + p.1)
}

/// Vertex id used by [`GridScene::to_precubical`] for the lattice point `p`.
pub fn vertex_id(p: Point) -> String {
    format!("{},{}", p.0, p.1)
}

impl GridScene {
    pub fn new(width: i64, height: i64, boxes: Vec<OpenBox>, source: Point, target: Point) -> Result<Self> {
        if width <= 0 || height <= 0 {
            return Err(Error::invalid("grid dimensions must be positive"));
        }
        for b in &boxes {
            if b.x1 <= b.x0 || b.y1 <= b.y0 {
                return Err(Error::invalid("degenerate box"));
            }
            if b.x0 < 0 || b.y0 < 0 || b.x1 > width || b.y1 > height {
                return Err(Error::invalid("box out of bounds"));
            }
        }
        let scene = GridScene { width, height, boxes, source, target };
        for (name, p) in [("source", source), ("target", target)] {
            if !scene.in_bounds(p) {
                return Err(Error::invalid(format!("{name} out of bounds")));
            }
            if !scene.point_allowed(p) {
                return Err(Error::invalid(format!("{name} forbidden")));
            }
        }
        Ok(scene)
    }

    pub fn width(&self) -> i64 {
        self.width
    }

    pub fn height(&self) -> i64 {
        self.height
    }

    pub fn boxes(&self) -> &[OpenBox] {
        &self.boxes
    }

    pub fn source(&self) -> Point {
        self.source
    }

    pub fn target(&self) -> Point {
        self.target
    }

    pub fn source_id(&self) -> String {
        vertex_id(self.source)
    }

    pub fn target_id(&self) -> String {
        vertex_id(self.target)
    }

    fn in_bounds(&self, p: Point) -> bool {
        (0..=self.width).contains(&p.0) && (0..=self.height).contains(&p.1)
    }

    fn allowed(&self, ax: i64, ay: i64, bx: i64, by: i64) -> bool {
        !self.boxes.iter().any(|b| b.meets_closed(ax, ay, bx, by))
    }

    pub fn point_allowed(&self, p: Point) -> bool {
        self.allowed(p.0, p.1, p.0, p.1)
    }

    /// Returns a copy with one more forbidden box.
    pub fn with_box(&self, b: OpenBox) -> Result<Self> {
        let mut boxes = self.boxes.clone();
        boxes.push(b);
        GridScene::new(self.width, self.height, boxes, self.source, self.target)
    }

    /// Compiles the scene to a pre-cubical set. Vertices are named `x,y`,
    /// horizontal edges `h:x,y`, vertical edges `v:x,y` and squares `s:x,y`
    /// after their lower-left corner; labels carry the coordinates.
    pub fn to_precubical(&self) -> PreCubicalSet {
        let mut k = PreCubicalSet::new();
        let (w, h) = (self.width, self.height);
        for x in 0..=w {
            for y in 0..=h {
                if self.allowed(x, y, x, y) {
                    let id = vertex_id((x, y));
                    k.add_vertex(id.clone()).expect("fresh id");
                    k.set_label(&CellRef::vertex(id), format!("({x},{y})")).expect("present");
                }
            }
        }
        for x in 0..=w {
            for y in 0..=h {
                if x < w && self.allowed(x, y, x + 1, y) {
                    let id = format!("h:{x},{y}");
                    k.add_edge(id.clone(), vertex_id((x, y)), vertex_id((x + 1, y))).expect("fresh id");
                    k.set_label(&CellRef::edge(id), format!("({x},{y})-({},{y})", x + 1)).expect("present");
                }
                if y < h && self.allowed(x, y, x, y + 1) {
                    let id = format!("v:{x},{y}");
                    k.add_edge(id.clone(), vertex_id((x, y)), vertex_id((x, y + 1))).expect("fresh id");
                    k.set_label(&CellRef::edge(id), format!("({x},{y})-({x},{})", y + 1)).expect("present");
                }
            }
        }
        for x in 0..w {
            for y in 0..h {
                if self.allowed(x, y, x + 1, y + 1) {
                    let id = format!("s:{x},{y}");
                    k.add_square(
                        id.clone(),
                        format!("v:{x},{y}"),
                        format!("v:{},{y}", x + 1),
                        format!("h:{x},{y}"),
                        format!("h:{x},{}", y + 1),
                    )
                    .expect("fresh id");
                    k.set_label(&CellRef::square(id), format!("[{x},{}]x[{y},{}]", x + 1, y + 1))
                        .expect("present");
                }
            }
        }
        k
    }

    /// Canonical scene text.
    pub fn to_text(&self) -> String {
        let mut out = format!("grid {} {}\n", self.width, self.height);
        for b in &self.boxes {
            out.push_str(&format!("box {} {} {} {}\n", b.x0, b.y0, b.x1, b.y1));
        }
        out.push_str(&format!("source {} {}\n", self.source.0, self.source.1));
        out.push_str(&format!("target {} {}\n", self.target.0, self.target.1));
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut grid = None;
        let mut boxes = Vec::new();
        let mut source = None;
        let mut target = None;
        let mut last_line = 0;
        for (line, toks) in token_lines(text) {
            last_line = line;
            match toks[0] {
                "grid" => {
                    expect_arity(line, &toks, 3)?;
                    if grid.is_some() {
                        return Err(Error::syntax(line, "duplicate `grid` line"));
                    }
                    grid = Some((parse_int(line, toks[1])?, parse_int(line, toks[2])?, line));
                }
                "box" => {
                    expect_arity(line, &toks, 5)?;
                    let v: Vec<i64> = toks[1..].iter().map(|t| parse_int(line, t)).collect::<Result<_>>()?;
                    boxes.push((OpenBox::new(v[0], v[1], v[2], v[3]), line));
                }
                kw @ ("source" | "target") => {
                    expect_arity(line, &toks, 3)?;
                    let p = (parse_int(line, toks[1])?, parse_int(line, toks[2])?);
                    let slot = if kw == "source" { &mut source } else { &mut target };
                    if slot.is_some() {
                        return Err(Error::syntax(line, format!("duplicate `{kw}` line")));
                    }
                    *slot = Some((p, line));
                }
                other => return Err(Error::syntax(line, format!("unknown keyword `{other}`"))),
            }
        }
        let end = last_line.max(1);
        let (w, h, gline) = grid.ok_or_else(|| Error::syntax(end, "missing `grid` line"))?;
        let (src, sline) = source.ok_or_else(|| Error::syntax(end, "missing `source` line"))?;
        let (tgt, tline) = target.ok_or_else(|| Error::syntax(end, "missing `target` line"))?;
        if w <= 0 || h <= 0 {
            return Err(Error::syntax(gline, "grid dimensions must be positive"));
        }
        let mut scene = GridScene { width: w, height: h, boxes: Vec::new(), source: src, target: tgt };
        for (b, line) in boxes {
            if b.x1 <= b.x0 || b.y1 <= b.y0 {
                return Err(Error::syntax(line, "degenerate box"));
            }
            if b.x0 < 0 || b.y0 < 0 || b.x1 > w || b.y1 > h {
                return Err(Error::syntax(line, "box out of bounds"));
            }
            scene.boxes.push(b);
        }
        for (name, p, line) in [("source", src, sline), ("target", tgt, tline)] {
            if !scene.in_bounds(p) {
                return Err(Error::syntax(line, format!("{name} out of bounds")));
            }
            if !scene.point_allowed(p) {
                return Err(Error::syntax(line, format!("{name} forbidden")));
            }
        }
        Ok(scene)
    }
}

impl FromStr for GridScene {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GridScene::parse(s)
    }
}

impl fmt::Display for GridScene {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_central_hole() {
        let s = GridScene::parse("grid 3 3\nbox 1 1 2 2\nsource 0 0\ntarget 3 3\n").unwrap();
        assert_eq!(s.boxes(), &[OpenBox::new(1, 1, 2, 2)]);
        assert_eq!(s.source(), (0, 0));
        assert_eq!(s.target(), (3, 3));
        assert_eq!(GridScene::parse(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn scene_errors() {
        let err = GridScene::parse("grid 3 3\nbox 2 1 2 2\nsource 0 0\ntarget 3 3").unwrap_err();
        assert_eq!(err, Error::syntax(2, "degenerate box"));
        let err = GridScene::parse("grid 4 4\nbox 1 1 3 3\nsource 2 2\ntarget 4 4").unwrap_err();
        assert_eq!(err, Error::syntax(3, "source forbidden"));
        let err = GridScene::parse("grid 3 3\nbox 1 1 4 2\nsource 0 0\ntarget 3 3").unwrap_err();
        assert_eq!(err, Error::syntax(2, "box out of bounds"));
        let err = GridScene::parse("grid 3 3\nsource 0 0\ntarget 3 4").unwrap_err();
        assert_eq!(err, Error::syntax(3, "target out of bounds"));
        let err = GridScene::parse("grid 3 x\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }));
        assert!(GridScene::parse("grid 3 3\nsource 0 0\n").is_err());
    }

    #[test]
    fn boundary_points_are_allowed() {
        let s = GridScene::new(3, 3, vec![OpenBox::new(1, 1, 2, 2)], (1, 1), (2, 2)).unwrap();
        assert!(s.point_allowed((1, 2)));
        assert!(GridScene::new(4, 4, vec![OpenBox::new(1, 1, 3, 3)], (0, 0), (2, 2)).is_err());
    }

    #[test]
    fn cone_coordinates() {
        assert_eq!(cone_to_product_coords((0, 0)), (0, 0));
        assert_eq!(cone_to_product_coords((2, 1)), (1, 3));
    }

    #[test]
    fn small_grids() {
        let one = GridScene::new(1, 1, vec![], (0, 0), (1, 1)).unwrap().to_precubical();
        assert_eq!((one.num_vertices(), one.num_edges(), one.num_squares()), (4, 4, 1));
        let two = GridScene::new(2, 1, vec![], (0, 0), (2, 1)).unwrap().to_precubical();
        assert_eq!((two.num_vertices(), two.num_edges(), two.num_squares()), (6, 7, 2));
        assert!(two.validate().is_ok());
        let sq = one.square("s:0,0").unwrap();
        assert_eq!((sq.d1m.as_str(), sq.d1p.as_str()), ("v:0,0", "v:1,0"));
        assert_eq!((sq.d2m.as_str(), sq.d2p.as_str()), ("h:0,0", "h:0,1"));
        assert_eq!(one.label(&CellRef::vertex("1,0")), Some("(1,0)"));
    }

    #[test]
    fn tall_box_removes_interior_edges() {
        let s = GridScene::new(3, 3, vec![OpenBox::new(1, 0, 2, 3)], (0, 0), (3, 3)).unwrap();
        let k = s.to_precubical();
        assert!(k.validate().is_ok());
        // interior vertical edges of the strip are gone, its sides remain
        assert!(k.edge("v:1,0").is_some());
        assert!(k.edge("h:1,1").is_none());
        assert_eq!(k.num_squares(), 6);
    }
}
