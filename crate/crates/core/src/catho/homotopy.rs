use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::category::{CategoryBuilder, FinCategory};
use super::functor::{all_functors, same_category, FunctorMap, FunctorSearch, SearchGuard};
use crate::error::{Error, Result};

/// A natural transformation `f -> g`, one component per domain object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTransf {
    pub components: Vec<usize>,
}

impl NatTransf {
    pub fn is_natural(&self, f: &FunctorMap, g: &FunctorMap) -> bool {
        let (c, d) = (&*f.dom, &*f.cod);
        c.arrows().iter().enumerate().all(|(a, arr)| {
            d.compose(f.arrows[a], self.components[arr.tgt]) == d.compose(self.components[arr.src], g.arrows[a])
        })
    }
}

fn check_parallel(f: &FunctorMap, g: &FunctorMap) -> Result<()> {
    if same_category(&f.dom, &g.dom) && same_category(&f.cod, &g.cod) {
        Ok(())
    } else {
        Err(Error::invalid("functors are not parallel"))
    }
}

// Component search: objects in index order, each arrow checked as soon as
// both of its endpoints have components.
fn search_transformations(
    f: &FunctorMap,
    g: &FunctorMap,
    fixed: &[Option<usize>],
    mut visit: impl FnMut(&[usize]) -> bool,
) {
    let c = &*f.dom;
    let n = c.num_objects();
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, arr) in c.arrows().iter().enumerate() {
        due[arr.src.max(arr.tgt)].push(a);
    }
    fn rec(
        i: usize,
        comps: &mut Vec<usize>,
        f: &FunctorMap,
        g: &FunctorMap,
        fixed: &[Option<usize>],
        due: &[Vec<usize>],
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        let (c, d) = (&*f.dom, &*f.cod);
        if i == comps.len() {
            return visit(comps);
        }
        let cands: Vec<usize> = match fixed[i] {
            Some(a) => vec![a],
            None => d.hom(f.objects[i], g.objects[i]).to_vec(),
        };
        for phi in cands {
            let arr = &d.arrows()[phi];
            if arr.src != f.objects[i] || arr.tgt != g.objects[i] {
                continue;
            }
            comps[i] = phi;
            let ok = due[i].iter().all(|&a| {
                let x = &c.arrows()[a];
                d.compose(f.arrows[a], comps[x.tgt]) == d.compose(comps[x.src], g.arrows[a])
            });
            if ok && !rec(i + 1, comps, f, g, fixed, due, visit) {
                return false;
            }
        }
        true
    }
    let mut comps = vec![0usize; n];
    rec(0, &mut comps, f, g, fixed, &due, &mut visit);
}

/// Every natural transformation `f -> g`, in lexicographic order of
/// component indices.
pub fn nat_transformations(f: &FunctorMap, g: &FunctorMap) -> Result<Vec<NatTransf>> {
    check_parallel(f, g)?;
    let mut out = Vec::new();
    search_transformations(f, g, &vec![None; f.dom.num_objects()], |c| {
        out.push(NatTransf { components: c.to_vec() });
        true
    });
    Ok(out)
}

pub(crate) fn has_transformation(f: &FunctorMap, g: &FunctorMap, fixed: &[Option<usize>]) -> bool {
    let mut found = false;
    search_transformations(f, g, fixed, |_| {
        found = true;
        false
    });
    found
}

// Connected components of the functor graph: nodes are functors, edges join
// pairs related by a transformation in either direction.
fn functor_components(functors: &[FunctorMap]) -> Vec<usize> {
    let n = functors.len();
    let mut uf = UnionFind::<usize>::new(n);
    let none = vec![None; functors.first().map_or(0, |f| f.dom.num_objects())];
    for i in 0..n {
        for j in i + 1..n {
            if uf.equiv(i, j) {
                continue;
            }
            if has_transformation(&functors[i], &functors[j], &none)
                || has_transformation(&functors[j], &functors[i], &none)
            {
                uf.union(i, j);
            }
        }
    }
    (0..n).map(|i| uf.find(i)).collect()
}

/// Whether `f` and `g` are joined by a zig-zag of natural transformations.
pub fn dhomotopic_functors(f: &FunctorMap, g: &FunctorMap, guard: SearchGuard) -> Result<bool> {
    check_parallel(f, g)?;
    if f == g {
        return Ok(true);
    }
    let functors = all_functors(&f.dom, &f.cod, guard)?;
    let index = |h: &FunctorMap| functors.iter().position(|k| k.objects == h.objects && k.arrows == h.arrows);
    let (Some(i), Some(j)) = (index(f), index(g)) else {
        return Err(Error::invalid("argument is not a functor"));
    };
    let comp = functor_components(&functors);
    Ok(comp[i] == comp[j])
}

/// A pair `f: C -> D`, `g: D -> C` with `gf ≃ id` and `fg ≃ id`.
#[derive(Debug, Clone)]
pub struct Equivalence {
    pub there: FunctorMap,
    pub back: FunctorMap,
}

pub fn find_dhomotopy_equivalence(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    guard: SearchGuard,
) -> Result<Option<Equivalence>> {
    let fs = all_functors(c, d, guard)?;
    let gs = all_functors(d, c, guard)?;
    let endo_c = all_functors(c, c, guard)?;
    let endo_d = all_functors(d, d, guard)?;
    let comp_c = functor_components(&endo_c);
    let comp_d = functor_components(&endo_d);
    let key = |h: &FunctorMap| (h.objects.clone(), h.arrows.clone());
    let idx_c: HashMap<_, usize> = endo_c.iter().enumerate().map(|(i, h)| (key(h), comp_c[i])).collect();
    let idx_d: HashMap<_, usize> = endo_d.iter().enumerate().map(|(i, h)| (key(h), comp_d[i])).collect();
    let id_c = idx_c[&key(&FunctorMap::identity(c.clone()))];
    let id_d = idx_d[&key(&FunctorMap::identity(d.clone()))];
    for f in &fs {
        for g in &gs {
            let gf = f.then(g)?;
            if idx_c[&key(&gf)] != id_c {
                continue;
            }
            let fg = g.then(f)?;
            if idx_d[&key(&fg)] == id_d {
                return Ok(Some(Equivalence { there: f.clone(), back: g.clone() }));
            }
        }
    }
    Ok(None)
}

pub fn dhomotopy_equivalent(c: &Arc<FinCategory>, d: &Arc<FinCategory>, guard: SearchGuard) -> Result<bool> {
    Ok(find_dhomotopy_equivalence(c, d, guard)?.is_some())
}

/// An initial object, the witness of (strong) past contractibility.
pub fn is_past_contractible(c: &FinCategory) -> Option<usize> {
    (0..c.num_objects()).find(|&x| (0..c.num_objects()).all(|y| c.hom(x, y).len() == 1))
}

/// A terminal object, the witness of (strong) future contractibility.
pub fn is_future_contractible(c: &FinCategory) -> Option<usize> {
    (0..c.num_objects()).find(|&y| (0..c.num_objects()).all(|x| c.hom(x, y).len() == 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Past,
    Future,
}

/// A retraction `p: C -> C'` onto a full subcategory, with the direction of
/// the deforming transformation (`id -> up` for future, `up -> id` for past).
#[derive(Debug, Clone)]
pub struct Retract {
    pub objects: Vec<usize>,
    /// Endofunctor `up` of the ambient category.
    pub up: FunctorMap,
    pub direction: Direction,
    /// The transformation has identity components on the subcategory.
    pub strong: bool,
}

/// An immediate deformation retraction of `c` onto the full subcategory on
/// `objects`, preferring strong ones. Direction `None` tries both.
pub fn immediate_retract(
    c: &Arc<FinCategory>,
    objects: &[usize],
    direction: Option<Direction>,
    guard: SearchGuard,
) -> Result<Option<Retract>> {
    guard.admit(c)?;
    c.ensure_valid()?;
    if objects.is_empty() || objects.iter().any(|&o| o >= c.num_objects()) {
        return Err(Error::invalid("retract needs a nonempty set of objects"));
    }
    let (sub, embed) = c.full_subcategory(objects);
    let mut search = FunctorSearch::new(c, &sub, guard.max_functors);
    for (i, &o) in objects.iter().enumerate() {
        search.fix_object(o, i);
    }
    for (s, &a) in embed.iter().enumerate() {
        search.fix_arrow(a, s);
    }
    let dirs: &[Direction] = match direction {
        Some(Direction::Past) => &[Direction::Past],
        Some(Direction::Future) => &[Direction::Future],
        None => &[Direction::Past, Direction::Future],
    };
    let id = FunctorMap::identity(c.clone());
    let mut strict: Vec<Option<usize>> = vec![None; c.num_objects()];
    for &o in objects {
        strict[o] = Some(c.identity(o));
    }
    let free = vec![None; c.num_objects()];
    let mut weak: Option<Retract> = None;
    let mut strong: Option<Retract> = None;
    search.run(|po, pa| {
        let up = FunctorMap {
            dom: c.clone(),
            cod: c.clone(),
            objects: po.iter().map(|&x| objects[x]).collect(),
            arrows: pa.iter().map(|&a| embed[a]).collect(),
        };
        for &dir in dirs {
            let (from, to) = match dir {
                Direction::Future => (&id, &up),
                Direction::Past => (&up, &id),
            };
            if has_transformation(from, to, &strict) {
                strong = Some(Retract { objects: objects.to_vec(), up, direction: dir, strong: true });
                return false;
            }
            if weak.is_none() && has_transformation(from, to, &free) {
                weak = Some(Retract { objects: objects.to_vec(), up: up.clone(), direction: dir, strong: false });
            }
        }
        true
    })?;
    Ok(strong.or(weak))
}

/// Least `n` such that `c` contracts to an object through a chain of `n`
/// immediate deformation retracts of full subcategories; `None` if no chain
/// exists.
pub fn contraction_steps(c: &Arc<FinCategory>, guard: SearchGuard) -> Result<Option<usize>> {
    guard.admit(c)?;
    c.ensure_valid()?;
    let n = c.num_objects();
    if n == 0 {
        return Ok(None);
    }
    let full: u32 = (1u32 << n) - 1;
    let mut memo: HashMap<u32, Option<usize>> = HashMap::new();
    steps_from(c, full, guard, &mut memo)
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

fn steps_from(
    c: &Arc<FinCategory>,
    mask: u32,
    guard: SearchGuard,
    memo: &mut HashMap<u32, Option<usize>>,
) -> Result<Option<usize>> {
    if let Some(&r) = memo.get(&mask) {
        return Ok(r);
    }
    let objs = members(mask);
    if objs.len() == 1 {
        memo.insert(mask, Some(0));
        return Ok(Some(0));
    }
    let here = Arc::new(c.full_subcategory(&objs).0);
    let mut best: Option<usize> = None;
    // proper nonempty submasks, smallest first so single objects are tried early
    let mut subs: Vec<u32> = Vec::new();
    let mut s = (mask - 1) & mask;
    while s != 0 {
        subs.push(s);
        s = (s - 1) & mask;
    }
    subs.sort_by_key(|s| (s.count_ones(), *s));
    for sub in subs {
        if best.is_some_and(|b| b <= 1) {
            break;
        }
        let local: Vec<usize> = objs.iter().enumerate().filter(|(_, o)| sub >> **o & 1 == 1).map(|(i, _)| i).collect();
        let Some(rest) = steps_from(c, sub, guard, memo)? else { continue };
        if best.is_some_and(|b| b <= rest + 1) {
            continue;
        }
        if immediate_retract(&here, &local, None, guard)?.is_some() {
            best = Some(rest + 1);
        }
    }
    memo.insert(mask, best);
    Ok(best)
}

pub fn contractible_in_steps(c: &Arc<FinCategory>, n: usize, guard: SearchGuard) -> Result<bool> {
    Ok(contraction_steps(c, guard)?.is_some_and(|k| k <= n))
}

/// The directed cylinder `C x 2`.
pub fn cylinder(c: &FinCategory) -> Result<FinCategory> {
    c.product(&FinCategory::ordinal(2))
}

/// The arrow category `D^2`: objects are the arrows of `D`, morphisms are
/// commutative squares `(u, v)`.
pub fn arrow_category(d: &FinCategory) -> Result<FinCategory> {
    let mut b = CategoryBuilder::new();
    for a in d.arrows() {
        b.object(a.id.clone())?;
    }
    // (f, g, u, v) with f;v = u;g, as a morphism f -> g
    let mut index: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    let mut squares = Vec::new();
    for (f, fa) in d.arrows().iter().enumerate() {
        for (g, ga) in d.arrows().iter().enumerate() {
            for &u in d.hom(fa.src, ga.src) {
                for &v in d.hom(fa.tgt, ga.tgt) {
                    if d.compose(f, v) != d.compose(u, g) {
                        continue;
                    }
                    let idx = if f == g && d.is_identity(u) && d.is_identity(v) {
                        b.identity(f)
                    } else {
                        let mut name = format!("({},{})", d.arrows()[u].id, d.arrows()[v].id);
                        if b.arrow_id(&name).is_some() {
                            name = format!("{name}:{}>{}", fa.id, ga.id);
                        }
                        b.arrow(name, f, g)?
                    };
                    index.insert((f, g, u, v), idx);
                    squares.push((f, g, u, v));
                }
            }
        }
    }
    for &(f, g, u, v) in &squares {
        for &(g2, h, u2, v2) in &squares {
            if g2 != g {
                continue;
            }
            let (Some(uu), Some(vv)) = (d.compose(u, u2), d.compose(v, v2)) else { continue };
            b.compose(index[&(f, g, u, v)], index[&(g, h, u2, v2)], index[&(f, h, uu, vv)])?;
        }
    }
    Ok(b.build())
}
