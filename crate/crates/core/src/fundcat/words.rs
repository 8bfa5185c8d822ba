//! Enumeration of generator words between two objects and their partition
//! under the congruence generated by the relations.

use std::collections::{HashMap, VecDeque};

use petgraph::unionfind::UnionFind;

use super::presentation::CatPresentation;
use crate::error::{Error, Result};

struct Rule<'a> {
    from: &'a [usize],
    to: &'a [usize],
    src: usize,
}

/// All words `x -> y` (up to an optional length bound) partitioned into
/// congruence classes. Words are kept in lexicographic order of generator
/// ids, so the first member of each class is its canonical representative
/// and classes are numbered in the order of their representatives.
#[derive(Debug, Clone)]
pub(crate) struct WordClasses {
    pub words: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    lookup: HashMap<Vec<usize>, usize>,
}

/// Shortest word length from every object to `y` (`usize::MAX` if none).
fn distances_to(p: &CatPresentation, y: usize) -> Vec<usize> {
    let n = p.objects().len();
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); n];
    for g in p.generators() {
        incoming[g.tgt].push(g.src);
    }
    let mut dist = vec![usize::MAX; n];
    dist[y] = 0;
    let mut queue = VecDeque::from([y]);
    while let Some(v) = queue.pop_front() {
        for &u in &incoming[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Outgoing generators per object, sorted by generator id.
pub(crate) fn sorted_out_edges(p: &CatPresentation) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); p.objects().len()];
    for (i, g) in p.generators().iter().enumerate() {
        out[g.src].push(i);
    }
    for list in &mut out {
        list.sort_by(|&a, &b| p.generators()[a].id.cmp(&p.generators()[b].id));
    }
    out
}

/// All composable words `x -> y` of length at most `bound`, in
/// lexicographic order of generator ids.
pub(crate) fn enumerate_words(
    p: &CatPresentation,
    x: usize,
    y: usize,
    bound: Option<usize>,
    cap: usize,
) -> Result<Vec<Vec<usize>>> {
    if bound.is_none() && !p.is_acyclic() {
        return Err(Error::Unbounded);
    }
    let out = sorted_out_edges(p);
    let dist = distances_to(p, y);
    let mut words = Vec::new();
    let mut current = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn walk(
        p: &CatPresentation,
        out: &[Vec<usize>],
        dist: &[usize],
        at: usize,
        y: usize,
        remaining: Option<usize>,
        current: &mut Vec<usize>,
        words: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if at == y {
            if words.len() >= cap {
                return Err(Error::Guard(format!("more than {cap} paths")));
            }
            words.push(current.clone());
        }
        if remaining == Some(0) {
            return Ok(());
        }
        for &g in &out[at] {
            let next = p.generators()[g].tgt;
            let d = dist[next];
            if d == usize::MAX || remaining.is_some_and(|r| d > r - 1) {
                continue;
            }
            current.push(g);
            walk(p, out, dist, next, y, remaining.map(|r| r - 1), current, words, cap)?;
            current.pop();
        }
        Ok(())
    }

    if dist[x] != usize::MAX && bound.is_none_or(|b| dist[x] <= b) {
        walk(p, &out, &dist, x, y, bound, &mut current, &mut words, cap)?;
    }
    Ok(words)
}

impl WordClasses {
    pub fn compute(p: &CatPresentation, x: usize, y: usize, bound: Option<usize>, cap: usize) -> Result<Self> {
        if bound.is_some() && !p.is_length_preserving() {
            return Err(Error::invalid("length-changing relation in truncated mode"));
        }
        let words = enumerate_words(p, x, y, bound, cap)?;
        let lookup: HashMap<Vec<usize>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();

        let mut rules: Vec<Rule> = Vec::new();
        for r in p.relations() {
            if r.lhs == r.rhs {
                continue;
            }
            rules.push(Rule { from: &r.lhs, to: &r.rhs, src: r.src });
            rules.push(Rule { from: &r.rhs, to: &r.lhs, src: r.src });
        }
        let mut by_first: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut empty_rules = Vec::new();
        for (i, rule) in rules.iter().enumerate() {
            match rule.from.first() {
                Some(&g) => by_first.entry(g).or_default().push(i),
                None => empty_rules.push(i),
            }
        }

        let mut uf = UnionFind::<usize>::new(words.len());
        let gens = p.generators();
        for (wi, w) in words.iter().enumerate() {
            let mut at = x;
            for pos in 0..=w.len() {
                for &ri in &empty_rules {
                    let rule = &rules[ri];
                    if rule.src == at {
                        let mut nw = Vec::with_capacity(w.len() + rule.to.len());
                        nw.extend_from_slice(&w[..pos]);
                        nw.extend_from_slice(rule.to);
                        nw.extend_from_slice(&w[pos..]);
                        union_with(&mut uf, &lookup, wi, &nw)?;
                    }
                }
                if pos == w.len() {
                    break;
                }
                if let Some(list) = by_first.get(&w[pos]) {
                    for &ri in list {
                        let rule = &rules[ri];
                        if w[pos..].starts_with(rule.from) {
                            let mut nw = Vec::with_capacity(w.len() - rule.from.len() + rule.to.len());
                            nw.extend_from_slice(&w[..pos]);
                            nw.extend_from_slice(rule.to);
                            nw.extend_from_slice(&w[pos + rule.from.len()..]);
                            union_with(&mut uf, &lookup, wi, &nw)?;
                        }
                    }
                }
                at = gens[w[pos]].tgt;
            }
        }

        let mut root_class: HashMap<usize, usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(words.len());
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for wi in 0..words.len() {
            let root = uf.find(wi);
            let c = *root_class.entry(root).or_insert_with(|| {
                reps.push(wi);
                sizes.push(0);
                reps.len() - 1
            });
            sizes[c] += 1;
            class_of.push(c);
        }
        Ok(WordClasses { words, class_of, reps, sizes, lookup })
    }

    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, class: usize) -> &[usize] {
        &self.words[self.reps[class]]
    }

    pub fn class_of_word(&self, w: &[usize]) -> Option<usize> {
        self.lookup.get(w).map(|&i| self.class_of[i])
    }
}

fn union_with(uf: &mut UnionFind<usize>, lookup: &HashMap<Vec<usize>, usize>, wi: usize, nw: &[usize]) -> Result<()> {
    match lookup.get(nw) {
        Some(&j) => {
            uf.union(wi, j);
            Ok(())
        }
        None => Err(Error::invalid("rewriting left the enumerated word set")),
    }
}
