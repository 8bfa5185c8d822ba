//! Fundamental category of a finite pre-cubical set.
//!
//! Objects are vertices and arrows are dipaths modulo the congruence
//! generated by the squares: for every square `w`, the word `d2m;d1p` may be
//! replaced by `d1m;d2p` (and back) anywhere inside a dipath.

mod presentation;
pub(crate) mod words;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

pub use presentation::{CatPresentation, Generator, PresentationMorphism, Relation};

use crate::error::{Error, Result};
use crate::precubical::PreCubicalSet;
use words::{enumerate_words, WordClasses};

/// Default cap on the number of enumerated dipaths.
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

/// A directed path: a composable edge sequence from `start` to `end`.
/// The empty sequence is the constant path at `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DiPath {
    pub start: String,
    pub end: String,
    pub edges: Vec<String>,
}

impl DiPath {
    pub fn constant(at: impl Into<String>) -> Self {
        let at = at.into();
        DiPath { start: at.clone(), end: at, edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `self` followed by `other`, if they meet.
    pub fn concat(&self, other: &DiPath) -> Option<DiPath> {
        (self.end == other.start).then(|| DiPath {
            start: self.start.clone(),
            end: other.end.clone(),
            edges: self.edges.iter().chain(&other.edges).cloned().collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomClass {
    pub rep: DiPath,
    pub size: usize,
}

/// Dihomotopy classes of dipaths between two vertices, ordered by canonical
/// (lexicographically least) representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomClassSet {
    pub from: String,
    pub to: String,
    /// `None` when every dipath was enumerated.
    pub max_len: Option<usize>,
    pub classes: Vec<HomClass>,
}

impl HomClassSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of classes whose representative has each length `0..=max`.
    pub fn counts_by_length(&self, max: usize) -> Vec<usize> {
        let mut counts = vec![0; max + 1];
        for c in &self.classes {
            if c.rep.len() <= max {
                counts[c.rep.len()] += 1;
            }
        }
        counts
    }

    /// Text report: a `classes <n>` header, then `class <k> size <m> rep <edges>`
    /// lines when `with_reps` is set. The constant path is written `-`.
    pub fn report(&self, with_reps: bool) -> String {
        let mut out = format!("classes {}\n", self.classes.len());
        if with_reps {
            for (k, c) in self.classes.iter().enumerate() {
                let rep = if c.rep.edges.is_empty() { "-".to_string() } else { c.rep.edges.join(" ") };
                let _ = writeln!(out, "class {k} size {} rep {rep}", c.size);
            }
        }
        out
    }
}

/// One relation per square: `d2m;d1p = d1m;d2p`.
pub fn presentation_of(k: &PreCubicalSet) -> Result<CatPresentation> {
    k.ensure_valid()?;
    let mut p = CatPresentation::new();
    for v in k.vertices() {
        p.add_object(v)?;
    }
    for (id, e) in k.edges() {
        let s = p.require_object(&e.src)?;
        let t = p.require_object(&e.tgt)?;
        p.add_generator(id, s, t)?;
    }
    for (_, s) in k.squares() {
        let g = |id: &str| p.generator(id).expect("validated face");
        let (d1m, d1p, d2m, d2p) = (g(&s.d1m), g(&s.d1p), g(&s.d2m), g(&s.d2p));
        let src = p.generators()[d2m].src;
        let tgt = p.generators()[d1p].tgt;
        p.add_relation(src, tgt, vec![d2m, d1p], vec![d1m, d2p])?;
    }
    Ok(p)
}

pub fn is_acyclic(k: &PreCubicalSet) -> Result<bool> {
    Ok(presentation_of(k)?.is_acyclic())
}

fn to_dipath(p: &CatPresentation, x: usize, word: &[usize]) -> DiPath {
    let end = word.last().map_or(x, |&g| p.generators()[g].tgt);
    DiPath {
        start: p.objects()[x].clone(),
        end: p.objects()[end].clone(),
        edges: word.iter().map(|&g| p.generators()[g].id.clone()).collect(),
    }
}

fn to_word(p: &CatPresentation, a: &DiPath) -> Result<(usize, Vec<usize>)> {
    let x = p.require_object(&a.start)?;
    let word = a
        .edges
        .iter()
        .map(|e| p.generator(e).ok_or_else(|| Error::Unknown { kind: "edge", id: e.clone() }))
        .collect::<Result<Vec<_>>>()?;
    let end = p.word_endpoints(&word, x)?;
    if p.objects()[end] != a.end {
        return Err(Error::invalid("dipath does not end at its stated end vertex"));
    }
    Ok((x, word))
}

/// Whether two dipaths are dihomotopic. Both must be dipaths of `k`;
/// paths with different endpoints are never dihomotopic.
pub fn dihomotopic(k: &PreCubicalSet, a: &DiPath, b: &DiPath) -> Result<bool> {
    let p = presentation_of(k)?;
    let (x, wa) = to_word(&p, a)?;
    let (_, wb) = to_word(&p, b)?;
    if a.start != b.start || a.end != b.end {
        return Ok(false);
    }
    let y = p.require_object(&a.end)?;
    // square relations preserve length, so a bound at the common length is exact
    if wa.len() != wb.len() {
        return Ok(false);
    }
    let wc = WordClasses::compute(&p, x, y, Some(wa.len()), DEFAULT_PATH_CAP)?;
    Ok(wc.class_of_word(&wa) == wc.class_of_word(&wb))
}

/// Every dipath `x -> y` of length at most `max_len` (all of them when
/// `max_len` is `None`, which requires an acyclic complex), in
/// lexicographic order of edge ids.
pub fn enumerate_dipaths(k: &PreCubicalSet, x: &str, y: &str, max_len: Option<usize>) -> Result<Vec<DiPath>> {
    let p = presentation_of(k)?;
    let (xi, yi) = (p.require_object(x)?, p.require_object(y)?);
    let words = enumerate_words(&p, xi, yi, max_len, DEFAULT_PATH_CAP)?;
    Ok(words.iter().map(|w| to_dipath(&p, xi, w)).collect())
}

pub(crate) fn class_set(p: &CatPresentation, x: usize, y: usize, max_len: Option<usize>, cap: usize) -> Result<HomClassSet> {
    let wc = WordClasses::compute(p, x, y, max_len, cap)?;
    let classes = (0..wc.num_classes())
        .map(|c| HomClass { rep: to_dipath(p, x, wc.rep(c)), size: wc.sizes[c] })
        .collect();
    Ok(HomClassSet {
        from: p.objects()[x].clone(),
        to: p.objects()[y].clone(),
        max_len,
        classes,
    })
}

pub fn hom_classes(k: &PreCubicalSet, x: &str, y: &str, max_len: Option<usize>) -> Result<HomClassSet> {
    hom_classes_capped(k, x, y, max_len, DEFAULT_PATH_CAP)
}

/// As [`hom_classes`] with an explicit cap on the number of enumerated paths.
pub fn hom_classes_capped(k: &PreCubicalSet, x: &str, y: &str, max_len: Option<usize>, cap: usize) -> Result<HomClassSet> {
    let p = presentation_of(k)?;
    let (xi, yi) = (p.require_object(x)?, p.require_object(y)?);
    class_set(&p, xi, yi, max_len, cap)
}

/// Loop classes at one vertex, graded by length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidTable {
    pub at: String,
    pub max_len: usize,
    /// `counts[l]` is the number of loop classes of length `l`.
    pub counts: Vec<usize>,
    pub reps: Vec<DiPath>,
    /// `(p, q, r)`: class `p` followed by class `q` is class `r`, recorded
    /// whenever the concatenation stays within `max_len`.
    pub products: Vec<(usize, usize, usize)>,
}

pub fn fundamental_monoid_classes(k: &PreCubicalSet, x: &str, max_len: usize) -> Result<MonoidTable> {
    let p = presentation_of(k)?;
    let xi = p.require_object(x)?;
    let wc = WordClasses::compute(&p, xi, xi, Some(max_len), DEFAULT_PATH_CAP)?;
    let mut counts = vec![0; max_len + 1];
    let mut reps = Vec::with_capacity(wc.num_classes());
    for c in 0..wc.num_classes() {
        counts[wc.rep(c).len()] += 1;
        reps.push(to_dipath(&p, xi, wc.rep(c)));
    }
    let mut products = Vec::new();
    for a in 0..wc.num_classes() {
        for b in 0..wc.num_classes() {
            let (ra, rb) = (wc.rep(a), wc.rep(b));
            if ra.len() + rb.len() > max_len {
                continue;
            }
            let joined: Vec<usize> = ra.iter().chain(rb).copied().collect();
            let c = wc.class_of_word(&joined).expect("concatenation of loops is a loop");
            products.push((a, b, c));
        }
    }
    Ok(MonoidTable { at: x.to_string(), max_len, counts, reps, products })
}

/// Reachability by dipaths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPreorder {
    vertices: Vec<String>,
    reach: Vec<Vec<bool>>,
}

impl PathPreorder {
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    fn index(&self, v: &str) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_str().cmp(v)).ok()
    }

    /// `x ⪯ y`. Unknown vertices are never related.
    pub fn le(&self, x: &str, y: &str) -> bool {
        match (self.index(x), self.index(y)) {
            (Some(i), Some(j)) => self.reach[i][j],
            _ => false,
        }
    }

    /// All related pairs `(x, y)` with `x ⪯ y`, in vertex order.
    pub fn pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (i, row) in self.reach.iter().enumerate() {
            for (j, &r) in row.iter().enumerate() {
                if r {
                    out.push((self.vertices[i].clone(), self.vertices[j].clone()));
                }
            }
        }
        out
    }

    /// True when every vertex reaches every other.
    pub fn is_chaotic(&self) -> bool {
        self.reach.iter().all(|row| row.iter().all(|&r| r))
    }
}

pub fn path_preorder(k: &PreCubicalSet) -> Result<PathPreorder> {
    let p = presentation_of(k)?;
    let n = p.objects().len();
    let out = words::sorted_out_edges(&p);
    let mut reach = vec![vec![false; n]; n];
    for (s, row) in reach.iter_mut().enumerate() {
        let mut stack = vec![s];
        row[s] = true;
        while let Some(v) = stack.pop() {
            for &g in &out[v] {
                let w = p.generators()[g].tgt;
                if !row[w] {
                    row[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    Ok(PathPreorder { vertices: p.objects().to_vec(), reach })
}

/// Components of the equivalence relation generated by the path preorder,
/// each sorted, ordered by least member.
pub fn pi0(k: &PreCubicalSet) -> Result<Vec<Vec<String>>> {
    let p = presentation_of(k)?;
    let n = p.objects().len();
    let mut uf = UnionFind::<usize>::new(n);
    for g in p.generators() {
        uf.union(g.src, g.tgt);
    }
    let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for v in 0..n {
        groups.entry(uf.find(v)).or_default().push(p.objects()[v].clone());
    }
    let mut parts: Vec<Vec<String>> = groups.into_values().collect();
    parts.sort();
    Ok(parts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OneSimpleVerdict {
    pub simple: bool,
    /// A pair with at least two classes, when not simple.
    pub witness: Option<(String, String)>,
    /// True when the answer only covers dipaths up to a length bound.
    pub bounded: bool,
}

/// Decides whether every hom-set has at most one class.
///
/// Acyclic complexes are decided exactly and `max_len` is ignored. Cyclic
/// complexes need `max_len`, and the verdict then covers only dipaths up to
/// that length. The witness is the first failing pair when sources are
/// scanned in increasing and targets in decreasing vertex order.
pub fn is_one_simple(k: &PreCubicalSet, max_len: Option<usize>) -> Result<OneSimpleVerdict> {
    let p = presentation_of(k)?;
    let acyclic = p.is_acyclic();
    let bound = if acyclic { None } else { Some(max_len.ok_or(Error::Unbounded)?) };
    let pre = path_preorder(k)?;
    let n = p.objects().len();
    for x in 0..n {
        for y in (0..n).rev() {
            if !pre.reach[x][y] {
                continue;
            }
            let wc = WordClasses::compute(&p, x, y, bound, DEFAULT_PATH_CAP)?;
            if wc.num_classes() > 1 {
                return Ok(OneSimpleVerdict {
                    simple: false,
                    witness: Some((p.objects()[x].clone(), p.objects()[y].clone())),
                    bounded: !acyclic,
                });
            }
        }
    }
    Ok(OneSimpleVerdict { simple: true, witness: None, bounded: !acyclic })
}
