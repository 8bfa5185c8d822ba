//! Category presentations: objects, generating arrows and relations between
//! composable generator words. Words are written in diagrammatic order, so
//! `a;b` means "first `a`, then `b`".

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::text::{expect_arity, token_lines};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// `lhs = rhs`, both words running from `src` to `tgt`. Either side may be
/// empty, in which case `src == tgt` and the word is the identity there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub src: usize,
    pub tgt: usize,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

impl Relation {
    pub fn is_length_preserving(&self) -> bool {
        self.lhs.len() == self.rhs.len()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CatPresentation {
    objects: Vec<String>,
    generators: Vec<Generator>,
    relations: Vec<Relation>,
    object_index: HashMap<String, usize>,
    generator_index: HashMap<String, usize>,
}

fn check_id(id: &str) -> Result<()> {
    if id.is_empty() || id.contains(';') || id.contains('@') || id.chars().any(char::is_whitespace) {
        return Err(Error::invalid(format!("`{id}` is not a valid identifier")));
    }
    Ok(())
}

impl CatPresentation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, id: impl Into<String>) -> Result<usize> {
        let id = id.into();
        check_id(&id)?;
        if self.object_index.contains_key(&id) {
            return Err(Error::invalid(format!("duplicate object `{id}`")));
        }
        let idx = self.objects.len();
        self.object_index.insert(id.clone(), idx);
        self.objects.push(id);
        Ok(idx)
    }

    pub fn add_generator(&mut self, id: impl Into<String>, src: usize, tgt: usize) -> Result<usize> {
        let id = id.into();
        check_id(&id)?;
        if self.generator_index.contains_key(&id) {
            return Err(Error::invalid(format!("duplicate generator `{id}`")));
        }
        if src >= self.objects.len() || tgt >= self.objects.len() {
            return Err(Error::invalid(format!("generator `{id}` has an out-of-range endpoint")));
        }
        let idx = self.generators.len();
        self.generator_index.insert(id.clone(), idx);
        self.generators.push(Generator { id, src, tgt });
        Ok(idx)
    }

    /// Adds `lhs = rhs` after checking that both sides are composable words
    /// from `src` to `tgt`.
    pub fn add_relation(&mut self, src: usize, tgt: usize, lhs: Vec<usize>, rhs: Vec<usize>) -> Result<()> {
        for w in [&lhs, &rhs] {
            match self.word_endpoints(w, src)? {
                end if end == tgt => {}
                _ => return Err(Error::invalid("relation sides are not parallel")),
            }
        }
        self.relations.push(Relation { src, tgt, lhs, rhs });
        Ok(())
    }

    /// Endpoint reached by following `word` from `start`; errors if the word
    /// does not compose.
    pub fn word_endpoints(&self, word: &[usize], start: usize) -> Result<usize> {
        let mut at = start;
        for &g in word {
            let gen = self
                .generators
                .get(g)
                .ok_or_else(|| Error::invalid(format!("generator index {g} out of range")))?;
            if gen.src != at {
                return Err(Error::invalid(format!("word is not composable at `{}`", gen.id)));
            }
            at = gen.tgt;
        }
        Ok(at)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn object(&self, id: &str) -> Option<usize> {
        self.object_index.get(id).copied()
    }

    pub fn generator(&self, id: &str) -> Option<usize> {
        self.generator_index.get(id).copied()
    }

    pub(crate) fn require_object(&self, id: &str) -> Result<usize> {
        self.object(id).ok_or_else(|| Error::Unknown { kind: "object", id: id.to_string() })
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.objects.len();
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for g in &self.generators {
            out[g.src].push(g.tgt);
            indeg[g.tgt] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        seen == n
    }

    pub fn is_length_preserving(&self) -> bool {
        self.relations.iter().all(Relation::is_length_preserving)
    }

    /// Re-checks every relation; presentations built through the public API
    /// always pass.
    pub fn validate(&self) -> Result<()> {
        for r in &self.relations {
            for w in [&r.lhs, &r.rhs] {
                if self.word_endpoints(w, r.src)? != r.tgt {
                    return Err(Error::invalid("relation sides are not parallel"));
                }
            }
        }
        Ok(())
    }

    pub fn format_word(&self, word: &[usize], at: usize) -> String {
        if word.is_empty() {
            return format!("1@{}", self.objects[at]);
        }
        word.iter().map(|&g| self.generators[g].id.as_str()).collect::<Vec<_>>().join(";")
    }

    /// Parses a `;`-separated word, or `1@<object>` for an identity.
    /// Returns the word and its source object.
    pub fn parse_word(&self, tok: &str) -> Result<(Vec<usize>, usize)> {
        if let Some(obj) = tok.strip_prefix("1@") {
            return Ok((Vec::new(), self.require_object(obj)?));
        }
        let word = tok
            .split(';')
            .map(|g| self.generator(g).ok_or_else(|| Error::Unknown { kind: "generator", id: g.to_string() }))
            .collect::<Result<Vec<_>>>()?;
        let start = self.generators[word[0]].src;
        self.word_endpoints(&word, start)?;
        Ok((word, start))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for o in &self.objects {
            let _ = writeln!(out, "object {o}");
        }
        for g in &self.generators {
            let _ = writeln!(out, "gen {} {} {}", g.id, self.objects[g.src], self.objects[g.tgt]);
        }
        for r in &self.relations {
            let _ = writeln!(out, "rel {} = {}", self.format_word(&r.lhs, r.src), self.format_word(&r.rhs, r.src));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut p = CatPresentation::new();
        for (line, toks) in token_lines(text) {
            let wrap = |e: Error| match e {
                Error::Syntax { .. } => e,
                other => Error::syntax(line, other.to_string()),
            };
            match toks[0] {
                "object" => {
                    expect_arity(line, &toks, 2)?;
                    p.add_object(toks[1]).map_err(wrap)?;
                }
                "gen" => {
                    expect_arity(line, &toks, 4)?;
                    let s = p.require_object(toks[2]).map_err(wrap)?;
                    let t = p.require_object(toks[3]).map_err(wrap)?;
                    p.add_generator(toks[1], s, t).map_err(wrap)?;
                }
                "rel" => {
                    expect_arity(line, &toks, 4)?;
                    if toks[2] != "=" {
                        return Err(Error::syntax(line, "expected `rel <word> = <word>`"));
                    }
                    let (lhs, ls) = p.parse_word(toks[1]).map_err(wrap)?;
                    let (rhs, rs) = p.parse_word(toks[3]).map_err(wrap)?;
                    if ls != rs {
                        return Err(Error::syntax(line, "relation sides start at different objects"));
                    }
                    let lt = p.word_endpoints(&lhs, ls).map_err(wrap)?;
                    p.add_relation(ls, lt, lhs, rhs).map_err(wrap)?;
                }
                other => return Err(Error::syntax(line, format!("unknown keyword `{other}`"))),
            }
        }
        Ok(p)
    }
}

impl FromStr for CatPresentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CatPresentation::parse(s)
    }
}

/// A morphism of presentations: objects to objects, generators to words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationMorphism {
    pub objects: Vec<usize>,
    pub generators: Vec<Vec<usize>>,
}

impl PresentationMorphism {
    /// The inclusion of `sub` into `ambient`, matching objects and
    /// generators by id.
    pub fn inclusion(sub: &CatPresentation, ambient: &CatPresentation) -> Result<Self> {
        let objects = sub
            .objects()
            .iter()
            .map(|o| ambient.require_object(o))
            .collect::<Result<Vec<_>>>()?;
        let generators = sub
            .generators()
            .iter()
            .map(|g| {
                ambient
                    .generator(&g.id)
                    .map(|i| vec![i])
                    .ok_or_else(|| Error::Unknown { kind: "generator", id: g.id.clone() })
            })
            .collect::<Result<Vec<_>>>()?;
        let m = PresentationMorphism { objects, generators };
        m.check(sub, ambient)?;
        Ok(m)
    }

    pub fn identity(p: &CatPresentation) -> Self {
        PresentationMorphism {
            objects: (0..p.objects().len()).collect(),
            generators: (0..p.generators().len()).map(|g| vec![g]).collect(),
        }
    }

    pub fn apply_word(&self, word: &[usize]) -> Vec<usize> {
        word.iter().flat_map(|&g| self.generators[g].iter().copied()).collect()
    }

    /// Checks that endpoints are preserved and that every generator image
    /// composes. Relation preservation is decided when the codomain is
    /// acyclic or has length-preserving relations; otherwise it is assumed.
    pub fn check(&self, dom: &CatPresentation, cod: &CatPresentation) -> Result<()> {
        if self.objects.len() != dom.objects().len() || self.generators.len() != dom.generators().len() {
            return Err(Error::invalid("morphism does not cover its domain"));
        }
        if let Some(&o) = self.objects.iter().find(|&&o| o >= cod.objects().len()) {
            return Err(Error::invalid(format!("object image {o} out of range")));
        }
        for (g, img) in dom.generators().iter().zip(&self.generators) {
            let s = self.objects[g.src];
            let t = self.objects[g.tgt];
            let end = cod.word_endpoints(img, s).map_err(|_| {
                Error::invalid(format!("image of `{}` does not compose from its source", g.id))
            })?;
            if end != t {
                return Err(Error::invalid(format!("image of `{}` has the wrong endpoints", g.id)));
            }
        }
        let decidable = cod.is_acyclic() || cod.is_length_preserving();
        if decidable {
            for r in dom.relations() {
                let l = self.apply_word(&r.lhs);
                let rr = self.apply_word(&r.rhs);
                if l == rr {
                    continue;
                }
                let (s, t) = (self.objects[r.src], self.objects[r.tgt]);
                let bound = if cod.is_acyclic() { None } else { Some(l.len().max(rr.len())) };
                if l.len() != rr.len() && bound.is_some() {
                    return Err(Error::invalid("morphism does not preserve a relation"));
                }
                let classes = super::words::WordClasses::compute(cod, s, t, bound, super::DEFAULT_PATH_CAP)?;
                if classes.class_of_word(&l) != classes.class_of_word(&rr) {
                    return Err(Error::invalid("morphism does not preserve a relation"));
                }
            }
        }
        Ok(())
    }

    /// Text form: `obj <x> -> <y>` and `gen <a> -> <word>` lines.
    pub fn to_text(&self, dom: &CatPresentation, cod: &CatPresentation) -> String {
        let mut out = String::new();
        for (i, &o) in self.objects.iter().enumerate() {
            let _ = writeln!(out, "obj {} -> {}", dom.objects()[i], cod.objects()[o]);
        }
        for (g, img) in dom.generators().iter().zip(&self.generators) {
            let _ = writeln!(out, "gen {} -> {}", g.id, cod.format_word(img, self.objects[g.src]));
        }
        out
    }

    pub fn parse(text: &str, dom: &CatPresentation, cod: &CatPresentation) -> Result<Self> {
        let mut objects = vec![None; dom.objects().len()];
        let mut generators = vec![None; dom.generators().len()];
        for (line, toks) in token_lines(text) {
            expect_arity(line, &toks, 4)?;
            if toks[2] != "->" {
                return Err(Error::syntax(line, "expected `<kind> <id> -> <image>`"));
            }
            let wrap = |e: Error| Error::syntax(line, e.to_string());
            match toks[0] {
                "obj" => {
                    let x = dom.require_object(toks[1]).map_err(wrap)?;
                    objects[x] = Some(cod.require_object(toks[3]).map_err(wrap)?);
                }
                "gen" => {
                    let g = dom
                        .generator(toks[1])
                        .ok_or_else(|| Error::syntax(line, format!("unknown generator `{}`", toks[1])))?;
                    let (w, _) = cod.parse_word(toks[3]).map_err(wrap)?;
                    generators[g] = Some(w);
                }
                other => return Err(Error::syntax(line, format!("unknown keyword `{other}`"))),
            }
        }
        let objects = objects
            .into_iter()
            .enumerate()
            .map(|(i, o)| o.ok_or_else(|| Error::invalid(format!("object `{}` is not mapped", dom.objects()[i]))))
            .collect::<Result<Vec<_>>>()?;
        let generators = generators
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| Error::invalid(format!("generator `{}` is not mapped", dom.generators()[i].id)))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = PresentationMorphism { objects, generators };
        m.check(dom, cod)?;
        Ok(m)
    }
}
