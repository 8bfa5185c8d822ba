use std::collections::{HashMap, HashSet};

use petgraph::unionfind::UnionFind;

use super::category::{CategoryBuilder, FinCategory};
use crate::error::{Error, Result};
use crate::fundcat::words::WordClasses;
use crate::fundcat::{CatPresentation, PresentationMorphism, DEFAULT_PATH_CAP};

/// The pushout presentation with its two coprojections.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub presentation: CatPresentation,
    pub left: PresentationMorphism,
    pub right: PresentationMorphism,
}

fn fresh(mut name: String, taken: &HashSet<String>) -> String {
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Pushout of `p1 <- p0 -> p2` in presentations.
///
/// Objects of `p1` and `p2` are glued along the images of `p0`; generators
/// are kept apart (a clashing id from `p2` gets a `'` suffix) and the
/// relation `u1(a) = u2(a)` is added for every generator `a` of `p0`.
pub fn pushout(
    p0: &CatPresentation,
    p1: &CatPresentation,
    p2: &CatPresentation,
    u1: &PresentationMorphism,
    u2: &PresentationMorphism,
) -> Result<Pushout> {
    u1.check(p0, p1)?;
    u2.check(p0, p2)?;
    let n1 = p1.objects().len();
    let n2 = p2.objects().len();
    let mut uf = UnionFind::<usize>::new(n1 + n2);
    for x in 0..p0.objects().len() {
        uf.union(u1.objects[x], n1 + u2.objects[x]);
    }

    let mut out = CatPresentation::new();
    let mut taken: HashSet<String> = HashSet::new();
    let mut class_obj: HashMap<usize, usize> = HashMap::new();
    let mut obj_of = vec![0usize; n1 + n2];
    let names = p1.objects().iter().chain(p2.objects());
    for (i, name) in names.enumerate() {
        let root = uf.find(i);
        let o = match class_obj.get(&root) {
            Some(&o) => o,
            None => {
                let name = fresh(name.clone(), &taken);
                taken.insert(name.clone());
                let o = out.add_object(name)?;
                class_obj.insert(root, o);
                o
            }
        };
        obj_of[i] = o;
    }

    let mut gen_names: HashSet<String> = HashSet::new();
    let mut left_gens = Vec::new();
    for g in p1.generators() {
        gen_names.insert(g.id.clone());
        left_gens.push(vec![out.add_generator(g.id.clone(), obj_of[g.src], obj_of[g.tgt])?]);
    }
    let mut right_gens = Vec::new();
    for g in p2.generators() {
        let name = fresh(g.id.clone(), &gen_names);
        gen_names.insert(name.clone());
        right_gens.push(vec![out.add_generator(name, obj_of[n1 + g.src], obj_of[n1 + g.tgt])?]);
    }
    let left = PresentationMorphism { objects: obj_of[..n1].to_vec(), generators: left_gens };
    let right = PresentationMorphism { objects: obj_of[n1..].to_vec(), generators: right_gens };

    for r in p1.relations() {
        out.add_relation(left.objects[r.src], left.objects[r.tgt], left.apply_word(&r.lhs), left.apply_word(&r.rhs))?;
    }
    for r in p2.relations() {
        out.add_relation(
            right.objects[r.src],
            right.objects[r.tgt],
            right.apply_word(&r.lhs),
            right.apply_word(&r.rhs),
        )?;
    }
    for (a, g) in p0.generators().iter().enumerate() {
        let lhs = left.apply_word(&u1.generators[a]);
        let rhs = right.apply_word(&u2.generators[a]);
        out.add_relation(left.objects[u1.objects[g.src]], left.objects[u1.objects[g.tgt]], lhs, rhs)?;
    }
    Ok(Pushout { presentation: out, left, right })
}

/// A finite category presented by `P`, possibly with hom-sets truncated at
/// a word-length bound.
#[derive(Debug, Clone)]
pub struct Realization {
    pub category: FinCategory,
    /// Hom-sets were cut at the bound, so some composites are undefined.
    pub truncated: bool,
    /// Canonical representative word of every arrow.
    pub words: Vec<Vec<usize>>,
    /// The arrow of each one-letter word; `None` when cut by the bound.
    pub generators: Vec<Option<usize>>,
}

impl Realization {
    /// The arrow represented by `word` read from object `start`, or `None`
    /// if the word does not compose or leaves the truncated hom-sets.
    pub fn word_arrow(&self, p: &CatPresentation, word: &[usize], start: usize) -> Option<usize> {
        let mut acc = self.category.identity(start);
        for &g in word {
            let a = (*self.generators.get(g)?)?;
            if p.generators()[g].src != self.category.arrows()[acc].tgt {
                return None;
            }
            acc = self.category.compose(acc, a)?;
        }
        Some(acc)
    }
}

fn longest_path(p: &CatPresentation) -> usize {
    // only called on acyclic presentations
    let n = p.objects().len();
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for g in p.generators() {
        out[g.src].push(g.tgt);
        indeg[g.tgt] += 1;
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                order.push(w);
            }
        }
    }
    let mut depth = vec![0usize; n];
    for &v in &order {
        for &w in &out[v] {
            depth[w] = depth[w].max(depth[v] + 1);
        }
    }
    depth.into_iter().max().unwrap_or(0)
}

/// Realizes `p` as a finite category whose arrows are the congruence
/// classes of words, named by their least representative.
pub fn realize_presentation(p: &CatPresentation, bound: Option<usize>) -> Result<Realization> {
    let acyclic = p.is_acyclic();
    if !acyclic && bound.is_none() {
        return Err(Error::Unbounded);
    }
    let truncated = match bound {
        None => false,
        Some(b) => !acyclic || longest_path(p) > b,
    };
    let n = p.objects().len();
    let mut b = CategoryBuilder::new();
    for o in p.objects() {
        b.object(o.clone())?;
    }
    let mut homs: Vec<Option<WordClasses>> = Vec::with_capacity(n * n);
    let mut arrow_of: Vec<Vec<usize>> = Vec::with_capacity(n * n);
    let mut words: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        for y in 0..n {
            let wc = WordClasses::compute(p, x, y, bound, DEFAULT_PATH_CAP)?;
            let mut ids = Vec::with_capacity(wc.num_classes());
            for c in 0..wc.num_classes() {
                let rep = wc.rep(c);
                if rep.is_empty() {
                    ids.push(b.identity(x));
                } else {
                    ids.push(b.arrow(p.format_word(rep, x), x, y)?);
                    words.push(rep.to_vec());
                }
            }
            homs.push((wc.num_classes() > 0).then_some(wc));
            arrow_of.push(ids);
        }
    }
    for x in 0..n {
        for y in 0..n {
            let Some(f_wc) = &homs[x * n + y] else { continue };
            for z in 0..n {
                let (Some(g_wc), Some(h_wc)) = (&homs[y * n + z], &homs[x * n + z]) else { continue };
                for cf in 0..f_wc.num_classes() {
                    for cg in 0..g_wc.num_classes() {
                        let mut w = f_wc.rep(cf).to_vec();
                        w.extend_from_slice(g_wc.rep(cg));
                        if let Some(ch) = h_wc.class_of_word(&w) {
                            b.compose(arrow_of[x * n + y][cf], arrow_of[y * n + z][cg], arrow_of[x * n + z][ch])?;
                        } else if !truncated {
                            return Err(Error::invalid("composite word is missing from its hom-set"));
                        }
                    }
                }
            }
        }
    }
    let generators = p
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let wc = homs[g.src * n + g.tgt].as_ref()?;
            wc.class_of_word(&[i]).map(|c| arrow_of[g.src * n + g.tgt][c])
        })
        .collect();
    Ok(Realization { category: b.build(), truncated, words, generators })
}
