use std::fmt::Write as _;
use std::sync::Arc;

use super::category::{FinCategory, LawReport};
use crate::error::{Error, Result};
use crate::text::{expect_arity, token_lines};

/// Limits for brute-force searches over functors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchGuard {
    pub max_objects: usize,
    pub max_arrows: usize,
    /// Cap on the number of functors enumerated in one search.
    pub max_functors: usize,
}

impl Default for SearchGuard {
    fn default() -> Self {
        SearchGuard { max_objects: 5, max_arrows: 40, max_functors: 200_000 }
    }
}

impl SearchGuard {
    pub(crate) fn admit(&self, c: &FinCategory) -> Result<()> {
        if c.num_objects() > self.max_objects || c.num_arrows() > self.max_arrows {
            return Err(Error::Guard(format!(
                "category with {} objects and {} arrows exceeds {} objects / {} arrows",
                c.num_objects(),
                c.num_arrows(),
                self.max_objects,
                self.max_arrows
            )));
        }
        Ok(())
    }
}

/// A functor between finite categories, as an object map and an arrow map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorMap {
    pub dom: Arc<FinCategory>,
    pub cod: Arc<FinCategory>,
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

pub(crate) fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FunctorMap {
    pub fn identity(c: Arc<FinCategory>) -> Self {
        FunctorMap {
            objects: (0..c.num_objects()).collect(),
            arrows: (0..c.num_arrows()).collect(),
            dom: c.clone(),
            cod: c,
        }
    }

    /// The constant functor at object `x` of `cod`.
    pub fn constant(dom: Arc<FinCategory>, cod: Arc<FinCategory>, x: usize) -> Self {
        FunctorMap {
            objects: vec![x; dom.num_objects()],
            arrows: vec![cod.identity(x); dom.num_arrows()],
            dom,
            cod,
        }
    }

    /// `self`, then `next`.
    pub fn then(&self, next: &FunctorMap) -> Result<FunctorMap> {
        if !same_category(&self.cod, &next.dom) {
            return Err(Error::invalid("functors are not composable"));
        }
        Ok(FunctorMap {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            objects: self.objects.iter().map(|&o| next.objects[o]).collect(),
            arrows: self.arrows.iter().map(|&a| next.arrows[a]).collect(),
        })
    }

    /// Checks that endpoints, identities and composites are preserved.
    pub fn check(&self) -> LawReport {
        let (c, d) = (&*self.dom, &*self.cod);
        let mut v = Vec::new();
        if self.objects.len() != c.num_objects() || self.arrows.len() != c.num_arrows() {
            v.push("maps do not cover the domain".to_string());
            return LawReport { violations: v };
        }
        if self.objects.iter().any(|&o| o >= d.num_objects()) || self.arrows.iter().any(|&a| a >= d.num_arrows()) {
            v.push("image out of range".to_string());
            return LawReport { violations: v };
        }
        for (i, a) in c.arrows().iter().enumerate() {
            let img = &d.arrows()[self.arrows[i]];
            if img.src != self.objects[a.src] || img.tgt != self.objects[a.tgt] {
                v.push(format!("arrow {} is sent to {} with the wrong endpoints", a.id, img.id));
            }
        }
        for x in 0..c.num_objects() {
            if self.arrows[c.identity(x)] != d.identity(self.objects[x]) {
                v.push(format!("identity of {} is not preserved", c.objects()[x]));
            }
        }
        for f in 0..c.num_arrows() {
            for g in c.hom_from(c.arrows()[f].tgt) {
                if let Some(h) = c.compose(f, g) {
                    if d.compose(self.arrows[f], self.arrows[g]) != Some(self.arrows[h]) {
                        v.push(format!(
                            "composite {};{} is not preserved",
                            c.arrows()[f].id,
                            c.arrows()[g].id
                        ));
                    }
                }
            }
        }
        LawReport { violations: v }
    }

    /// Injective on every hom-set.
    pub fn is_faithful(&self) -> bool {
        let c = &*self.dom;
        (0..c.num_objects()).all(|x| {
            (0..c.num_objects()).all(|y| {
                let hom = c.hom(x, y);
                hom.iter()
                    .enumerate()
                    .all(|(i, &a)| hom[i + 1..].iter().all(|&b| self.arrows[a] != self.arrows[b]))
            })
        })
    }

    /// Surjective on every hom-set.
    pub fn is_full(&self) -> bool {
        let (c, d) = (&*self.dom, &*self.cod);
        (0..c.num_objects()).all(|x| {
            (0..c.num_objects()).all(|y| {
                let image: Vec<usize> = c.hom(x, y).iter().map(|&a| self.arrows[a]).collect();
                d.hom(self.objects[x], self.objects[y]).iter().all(|b| image.contains(b))
            })
        })
    }

    /// Text form: `obj x -> y` and `arr f -> g` lines; identity arrows are
    /// left implicit.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (x, &y) in self.objects.iter().enumerate() {
            let _ = writeln!(out, "obj {} -> {}", self.dom.objects()[x], self.cod.objects()[y]);
        }
        for (a, &b) in self.arrows.iter().enumerate() {
            if !self.dom.is_identity(a) {
                let _ = writeln!(out, "arr {} -> {}", self.dom.arrows()[a].id, self.cod.arrows()[b].id);
            }
        }
        out
    }

    /// Parses a functor file body. `domain` and `codomain` lines are skipped
    /// (see [`functor_file_refs`]); unmapped identities follow their objects.
    pub fn parse(text: &str, dom: Arc<FinCategory>, cod: Arc<FinCategory>) -> Result<Self> {
        let mut objects = vec![None; dom.num_objects()];
        let mut arrows = vec![None; dom.num_arrows()];
        for (line, toks) in token_lines(text) {
            match toks[0] {
                "domain" | "codomain" => continue,
                "obj" | "arr" => {
                    expect_arity(line, &toks, 4)?;
                    if toks[2] != "->" {
                        return Err(Error::syntax(line, "expected `<kind> <id> -> <image>`"));
                    }
                }
                other => return Err(Error::syntax(line, format!("unknown keyword `{other}`"))),
            }
            let miss = |kind: &str, id: &str| Error::syntax(line, format!("unknown {kind} `{id}`"));
            if toks[0] == "obj" {
                let x = dom.object_index(toks[1]).ok_or_else(|| miss("object", toks[1]))?;
                objects[x] = Some(cod.object_index(toks[3]).ok_or_else(|| miss("object", toks[3]))?);
            } else {
                let a = dom.arrow_index(toks[1]).ok_or_else(|| miss("arrow", toks[1]))?;
                arrows[a] = Some(cod.arrow_index(toks[3]).ok_or_else(|| miss("arrow", toks[3]))?);
            }
        }
        let objects = objects
            .into_iter()
            .enumerate()
            .map(|(i, o)| o.ok_or_else(|| Error::invalid(format!("object `{}` is not mapped", dom.objects()[i]))))
            .collect::<Result<Vec<_>>>()?;
        let arrows = arrows
            .into_iter()
            .enumerate()
            .map(|(i, a)| match a {
                Some(a) => Ok(a),
                None if dom.is_identity(i) => Ok(cod.identity(objects[dom.arrows()[i].src])),
                None => Err(Error::invalid(format!("arrow `{}` is not mapped", dom.arrows()[i].id))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FunctorMap { dom, cod, objects, arrows })
    }
}

/// The `domain` and `codomain` paths named in a functor file.
pub fn functor_file_refs(text: &str) -> Result<(String, String)> {
    let mut dom = None;
    let mut cod = None;
    for (line, toks) in token_lines(text) {
        match toks[0] {
            "domain" => {
                expect_arity(line, &toks, 2)?;
                dom = Some(toks[1].to_string());
            }
            "codomain" => {
                expect_arity(line, &toks, 2)?;
                cod = Some(toks[1].to_string());
            }
            _ => {}
        }
    }
    match (dom, cod) {
        (Some(d), Some(c)) => Ok((d, c)),
        _ => Err(Error::syntax(1, "functor file needs `domain` and `codomain` lines")),
    }
}

/// Backtracking enumeration of functors `dom -> cod`, optionally with some
/// object and arrow images fixed in advance.
pub(crate) struct FunctorSearch<'a> {
    dom: &'a FinCategory,
    cod: &'a FinCategory,
    fixed_objects: Vec<Option<usize>>,
    fixed_arrows: Vec<Option<usize>>,
    limit: usize,
    // composites (f, g, h) with f;g = h, grouped by the largest
    // non-identity index among them
    checks: Vec<Vec<(usize, usize, usize)>>,
    order: Vec<usize>,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(dom: &'a FinCategory, cod: &'a FinCategory, limit: usize) -> Self {
        let order: Vec<usize> = (0..dom.num_arrows()).filter(|&a| !dom.is_identity(a)).collect();
        let mut pos = vec![None; dom.num_arrows()];
        for (i, &a) in order.iter().enumerate() {
            pos[a] = Some(i);
        }
        let mut checks = vec![Vec::new(); order.len()];
        for f in 0..dom.num_arrows() {
            for g in dom.hom_from(dom.arrows()[f].tgt) {
                let Some(h) = dom.compose(f, g) else { continue };
                if let Some(last) = [pos[f], pos[g], pos[h]].into_iter().flatten().max() {
                    checks[last].push((f, g, h));
                }
            }
        }
        FunctorSearch {
            dom,
            cod,
            fixed_objects: vec![None; dom.num_objects()],
            fixed_arrows: vec![None; dom.num_arrows()],
            limit,
            checks,
            order,
        }
    }

    pub fn fix_object(&mut self, x: usize, y: usize) {
        self.fixed_objects[x] = Some(y);
    }

    pub fn fix_arrow(&mut self, a: usize, b: usize) {
        self.fixed_arrows[a] = Some(b);
    }

    /// Calls `visit` on each functor as `(object map, arrow map)`; stops
    /// early when `visit` returns `false`.
    pub fn run(&self, mut visit: impl FnMut(&[usize], &[usize]) -> bool) -> Result<()> {
        let mut objects = vec![0usize; self.dom.num_objects()];
        let mut arrows = vec![usize::MAX; self.dom.num_arrows()];
        let mut count = 0usize;
        self.objects_rec(0, &mut objects, &mut arrows, &mut count, &mut visit)?;
        Ok(())
    }

    fn objects_rec(
        &self,
        i: usize,
        objects: &mut Vec<usize>,
        arrows: &mut Vec<usize>,
        count: &mut usize,
        visit: &mut impl FnMut(&[usize], &[usize]) -> bool,
    ) -> Result<bool> {
        if i == objects.len() {
            for x in 0..objects.len() {
                arrows[self.dom.identity(x)] = self.cod.identity(objects[x]);
            }
            return self.arrows_rec(0, objects, arrows, count, visit);
        }
        let choices: Vec<usize> = match self.fixed_objects[i] {
            Some(y) => vec![y],
            None => (0..self.cod.num_objects()).collect(),
        };
        for y in choices {
            objects[i] = y;
            if !self.objects_rec(i + 1, objects, arrows, count, visit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn arrows_rec(
        &self,
        k: usize,
        objects: &[usize],
        arrows: &mut Vec<usize>,
        count: &mut usize,
        visit: &mut impl FnMut(&[usize], &[usize]) -> bool,
    ) -> Result<bool> {
        if k == self.order.len() {
            *count += 1;
            if *count > self.limit {
                return Err(Error::Guard(format!("more than {} functors", self.limit)));
            }
            return Ok(visit(objects, arrows));
        }
        let a = self.order[k];
        let (s, t) = (objects[self.dom.arrows()[a].src], objects[self.dom.arrows()[a].tgt]);
        let candidates: Vec<usize> = match self.fixed_arrows[a] {
            Some(b) => {
                let arr = &self.cod.arrows()[b];
                if arr.src == s && arr.tgt == t {
                    vec![b]
                } else {
                    Vec::new()
                }
            }
            None => self.cod.hom(s, t).to_vec(),
        };
        for b in candidates {
            arrows[a] = b;
            let ok = self.checks[k]
                .iter()
                .all(|&(f, g, h)| self.cod.compose(arrows[f], arrows[g]) == Some(arrows[h]));
            if ok && !self.arrows_rec(k + 1, objects, arrows, count, visit)? {
                arrows[a] = usize::MAX;
                return Ok(false);
            }
        }
        arrows[a] = usize::MAX;
        Ok(true)
    }
}

/// Every functor `dom -> cod`, in a deterministic order.
pub fn all_functors(dom: &Arc<FinCategory>, cod: &Arc<FinCategory>, guard: SearchGuard) -> Result<Vec<FunctorMap>> {
    guard.admit(dom)?;
    guard.admit(cod)?;
    dom.ensure_valid()?;
    cod.ensure_valid()?;
    let mut out = Vec::new();
    FunctorSearch::new(dom, cod, guard.max_functors).run(|o, a| {
        out.push(FunctorMap { dom: dom.clone(), cod: cod.clone(), objects: o.to_vec(), arrows: a.to_vec() });
        true
    })?;
    Ok(out)
}

/// An isomorphism `a -> b`, if one exists.
pub fn find_isomorphism(a: &Arc<FinCategory>, b: &Arc<FinCategory>, guard: SearchGuard) -> Result<Option<FunctorMap>> {
    if a.num_objects() != b.num_objects() || a.num_arrows() != b.num_arrows() {
        return Ok(None);
    }
    guard.admit(a)?;
    let mut found = None;
    FunctorSearch::new(a, b, guard.max_functors).run(|o, arr| {
        let mut seen_o = vec![false; b.num_objects()];
        let mut seen_a = vec![false; b.num_arrows()];
        let bij = o.iter().all(|&x| !std::mem::replace(&mut seen_o[x], true))
            && arr.iter().all(|&x| !std::mem::replace(&mut seen_a[x], true));
        if bij {
            found = Some(FunctorMap { dom: a.clone(), cod: b.clone(), objects: o.to_vec(), arrows: arr.to_vec() });
        }
        !bij
    })?;
    Ok(found)
}

/// Arrows that are both mono and epi.
pub fn cancellable_arrows(c: &FinCategory) -> Vec<usize> {
    (0..c.num_arrows()).filter(|&f| is_mono(c, f) && is_epi(c, f)).collect()
}

pub fn is_mono(c: &FinCategory, f: usize) -> bool {
    let x = c.arrows()[f].src;
    (0..c.num_objects()).all(|w| {
        let hom = c.hom(w, x);
        hom.iter().enumerate().all(|(i, &g)| {
            hom[i + 1..].iter().all(|&h| c.compose(g, f) != c.compose(h, f))
        })
    })
}

pub fn is_epi(c: &FinCategory, f: usize) -> bool {
    let y = c.arrows()[f].tgt;
    (0..c.num_objects()).all(|z| {
        let hom = c.hom(y, z);
        hom.iter().enumerate().all(|(i, &g)| {
            hom[i + 1..].iter().all(|&h| c.compose(f, g) != c.compose(f, h))
        })
    })
}
