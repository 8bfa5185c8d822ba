//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's enumeration or class computations.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use dihom::catho::{all_functors, nat_transformations, FinCategory, FunctorMap, SearchGuard};

use dihom::fundcat::{presentation_of, CatPresentation, PresentationMorphism};
use dihom::{CellRef, GridScene, PreCubicalSet};

/// A grid scene as plain integers.
#[derive(Debug, Clone)]
pub struct RawScene {
    pub w: i64,
    pub h: i64,
    pub boxes: Vec<[i64; 4]>,
}

impl RawScene {
    pub fn text(&self) -> String {
        let mut s = format!("grid {} {}\n", self.w, self.h);
        for b in &self.boxes {
            s.push_str(&format!("box {} {} {} {}\n", b[0], b[1], b[2], b[3]));
        }
        s.push_str(&format!("source 0 0\ntarget {} {}\n", self.w, self.h));
        s
    }

    pub fn scene(&self) -> GridScene {
        GridScene::parse(&self.text()).unwrap()
    }

    // closed rectangle [x0,x1]x[y0,y1] meets some open box
    fn blocked(&self, x0: i64, y0: i64, x1: i64, y1: i64) -> bool {
        self.boxes.iter().any(|b| x1 > b[0] && x0 < b[2] && y1 > b[1] && y0 < b[3])
    }

    pub fn vertex_ok(&self, x: i64, y: i64) -> bool {
        !self.blocked(x, y, x, y)
    }

    pub fn right_ok(&self, x: i64, y: i64) -> bool {
        x < self.w && !self.blocked(x, y, x + 1, y)
    }

    pub fn up_ok(&self, x: i64, y: i64) -> bool {
        y < self.h && !self.blocked(x, y, x, y + 1)
    }

    pub fn square_ok(&self, x: i64, y: i64) -> bool {
        x < self.w && y < self.h && !self.blocked(x, y, x + 1, y + 1)
    }

    /// Surviving (vertices, edges, squares).
    pub fn cell_counts(&self) -> (usize, usize, usize) {
        let (mut v, mut e, mut s) = (0, 0, 0);
        for x in 0..=self.w {
            for y in 0..=self.h {
                v += self.vertex_ok(x, y) as usize;
                e += self.right_ok(x, y) as usize + self.up_ok(x, y) as usize;
                s += self.square_ok(x, y) as usize;
            }
        }
        (v, e, s)
    }

    /// All monotone moves strings `a -> b` ('R' or 'U') that stay on
    /// surviving edges.
    pub fn move_strings(&self, a: (i64, i64), b: (i64, i64)) -> Vec<String> {
        let mut out = Vec::new();
        if b.0 < a.0 || b.1 < a.1 || !self.vertex_ok(a.0, a.1) {
            return out;
        }
        let mut cur = String::new();
        self.moves_rec(a, b, &mut cur, &mut out);
        out
    }

    fn moves_rec(&self, p: (i64, i64), b: (i64, i64), cur: &mut String, out: &mut Vec<String>) {
        if p == b {
            out.push(cur.clone());
            return;
        }
        if p.0 < b.0 && self.right_ok(p.0, p.1) {
            cur.push('R');
            self.moves_rec((p.0 + 1, p.1), b, cur, out);
            cur.pop();
        }
        if p.1 < b.1 && self.up_ok(p.0, p.1) {
            cur.push('U');
            self.moves_rec((p.0, p.1 + 1), b, cur, out);
            cur.pop();
        }
    }

    /// Components of the move strings under swapping `RU` and `UR` across
    /// a surviving unit square. Returns a component id per string.
    pub fn swap_components(&self, a: (i64, i64), strings: &[String]) -> Vec<usize> {
        let index: HashMap<&str, usize> = strings.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut comp = vec![usize::MAX; strings.len()];
        let mut next = 0;
        for start in 0..strings.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let s = strings[i].as_bytes();
                let (mut x, mut y) = a;
                for k in 0..s.len() {
                    if k + 1 < s.len() && s[k] != s[k + 1] && self.square_ok(x, y) {
                        let mut t = s.to_vec();
                        t.swap(k, k + 1);
                        let t = String::from_utf8(t).unwrap();
                        if let Some(&j) = index.get(t.as_str()) {
                            if comp[j] == usize::MAX {
                                comp[j] = next;
                                queue.push_back(j);
                            }
                        }
                    }
                    if s[k] == b'R' {
                        x += 1;
                    } else {
                        y += 1;
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn class_count(&self, a: (i64, i64), b: (i64, i64)) -> usize {
        let strings = self.move_strings(a, b);
        let comp = self.swap_components(a, &strings);
        comp.iter().collect::<HashSet<_>>().len()
    }
}

pub fn vid(p: (i64, i64)) -> String {
    format!("{},{}", p.0, p.1)
}

/// Edge ids along a move string.
pub fn edge_ids(a: (i64, i64), moves: &str) -> Vec<String> {
    let (mut x, mut y) = a;
    moves
        .chars()
        .map(|c| {
            if c == 'R' {
                x += 1;
                format!("h:{},{}", x - 1, y)
            } else {
                y += 1;
                format!("v:{},{}", x, y - 1)
            }
        })
        .collect()
}

fn coords(id: &str) -> (i64, i64) {
    let body = id.rsplit(':').next().unwrap();
    let (x, y) = body.split_once(',').unwrap();
    (x.parse().unwrap(), y.parse().unwrap())
}

/// Horizontal extent `[lo, hi]` of a grid cell given by id.
fn x_extent(id: &str) -> (i64, i64) {
    let (x, _) = coords(id);
    if id.starts_with("h:") || id.starts_with("s:") {
        (x, x + 1)
    } else {
        (x, x)
    }
}

/// Splits a grid complex along the vertical line `x = m` into the parts
/// left and right of it, and their intersection.
pub fn split_at(k: &PreCubicalSet, m: i64) -> (PreCubicalSet, PreCubicalSet, PreCubicalSet) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for v in k.vertices() {
        let (lo, hi) = x_extent(v);
        if hi <= m {
            left.push(CellRef::vertex(v));
        }
        if lo >= m {
            right.push(CellRef::vertex(v));
        }
    }
    for (e, _) in k.edges() {
        let (lo, hi) = x_extent(e);
        if hi <= m {
            left.push(CellRef::edge(e));
        }
        if lo >= m {
            right.push(CellRef::edge(e));
        }
    }
    for (s, _) in k.squares() {
        let (lo, hi) = x_extent(s);
        if hi <= m {
            left.push(CellRef::square(s));
        }
        if lo >= m {
            right.push(CellRef::square(s));
        }
    }
    let l = k.sub_complex(left.iter()).unwrap();
    let r = k.sub_complex(right.iter()).unwrap();
    let i = l.intersect(&r).unwrap();
    (l, r, i)
}

/// The presentations of a van Kampen cover and the two inclusions.
pub fn cover_presentations(
    left: &PreCubicalSet,
    right: &PreCubicalSet,
    inter: &PreCubicalSet,
) -> (CatPresentation, CatPresentation, CatPresentation, PresentationMorphism, PresentationMorphism) {
    let p0 = presentation_of(inter).unwrap();
    let p1 = presentation_of(left).unwrap();
    let p2 = presentation_of(right).unwrap();
    let u1 = PresentationMorphism::inclusion(&p0, &p1).unwrap();
    let u2 = PresentationMorphism::inclusion(&p0, &p2).unwrap();
    (p0, p1, p2, u1, u2)
}

/// Least number of immediate retract steps contracting a finite poset to
/// a point, found over monotone retractions with `p(x) ≤ x` for all `x`
/// (past) or `x ≤ p(x)` (future). `le[i][j]` means `i ≤ j`.
pub fn poset_contraction_steps(le: &[Vec<bool>]) -> Option<usize> {
    let n = le.len();
    let full: u32 = (1 << n) - 1;
    // search from singletons upward: dist[S] = steps to contract S
    let mut dist: HashMap<u32, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        dist.insert(1 << i, 0);
        queue.push_back(1u32 << i);
    }
    while let Some(sub) = queue.pop_front() {
        if sub == full {
            return Some(dist[&sub]);
        }
        let d = dist[&sub];
        for sup in 1..=full {
            if sup & sub != sub || sup == sub || dist.contains_key(&sup) {
                continue;
            }
            if poset_retract(le, sup, sub) {
                dist.insert(sup, d + 1);
                queue.push_back(sup);
            }
        }
    }
    None
}

fn poset_retract(le: &[Vec<bool>], sup: u32, sub: u32) -> bool {
    let members: Vec<usize> = (0..le.len()).filter(|i| sup >> i & 1 == 1).collect();
    let targets: Vec<usize> = (0..le.len()).filter(|i| sub >> i & 1 == 1).collect();
    for past in [true, false] {
        // each point outside `sub` goes to some target on the right side of it
        let free: Vec<usize> = members.iter().copied().filter(|i| sub >> i & 1 == 0).collect();
        let mut p: Vec<usize> = (0..le.len()).collect();
        if assign(le, &free, 0, &targets, &members, &mut p, past) {
            return true;
        }
    }
    false
}

fn assign(
    le: &[Vec<bool>],
    free: &[usize],
    k: usize,
    targets: &[usize],
    members: &[usize],
    p: &mut Vec<usize>,
    past: bool,
) -> bool {
    if k == free.len() {
        return members.iter().all(|&a| members.iter().all(|&b| !le[a][b] || le[p[a]][p[b]]));
    }
    let x = free[k];
    for &t in targets {
        let ok = if past { le[t][x] } else { le[x][t] };
        if ok {
            p[x] = t;
            if assign(le, free, k + 1, targets, members, p, past) {
                return true;
            }
        }
    }
    false
}

/// The stairway `x0 ≥ x1 ≤ x2 ≥ x3` as a `≤` matrix.
pub fn stairway_le() -> Vec<Vec<bool>> {
    let mut le = vec![vec![false; 4]; 4];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    le[1][0] = true;
    le[1][2] = true;
    le[3][2] = true;
    le
}

/// `f` is left-cancellable: `g1;f = g2;f` forces `g1 = g2`.
pub fn brute_mono(c: &FinCategory, f: usize) -> bool {
    let n = c.num_arrows();
    (0..n).all(|g1| {
        (0..n).all(|g2| g1 == g2 || c.compose(g1, f).is_none() || c.compose(g1, f) != c.compose(g2, f))
    })
}

/// `f` is right-cancellable: `f;g1 = f;g2` forces `g1 = g2`.
pub fn brute_epi(c: &FinCategory, f: usize) -> bool {
    let n = c.num_arrows();
    (0..n).all(|g1| {
        (0..n).all(|g2| g1 == g2 || c.compose(f, g1).is_none() || c.compose(f, g1) != c.compose(f, g2))
    })
}

/// Injective on every hom-set.
pub fn brute_faithful(h: &FunctorMap) -> bool {
    let arrows = h.dom.arrows();
    (0..arrows.len()).all(|a| {
        (0..arrows.len()).all(|b| {
            a == b
                || arrows[a].src != arrows[b].src
                || arrows[a].tgt != arrows[b].tgt
                || h.arrows[a] != h.arrows[b]
        })
    })
}

/// Object `v` with a transformation from the constant functor at `v` to the
/// identity whose component at `v` is the identity.
pub fn strongly_past_contractible_to(c: &Arc<FinCategory>) -> Option<usize> {
    let id = FunctorMap::identity(c.clone());
    (0..c.num_objects()).find(|&v| {
        let konst = FunctorMap::constant(c.clone(), c.clone(), v);
        nat_transformations(&konst, &id).unwrap().iter().any(|t| t.components[v] == c.identity(v))
    })
}

/// Pairs `(h, k)` of distinct functors `c -> d` joined by a transformation
/// `h -> k` whose components are all cancellable in `d`.
pub fn cancellable_pairs(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Vec<(FunctorMap, FunctorMap)> {
    let fs = all_functors(c, d, SearchGuard::default()).unwrap();
    let ok: Vec<bool> = (0..d.num_arrows()).map(|f| brute_mono(d, f) && brute_epi(d, f)).collect();
    let mut out = Vec::new();
    for h in &fs {
        for k in &fs {
            if h == k {
                continue;
            }
            let ts = nat_transformations(h, k).unwrap();
            if ts.iter().any(|t| t.components.iter().all(|&a| ok[a])) {
                out.push((h.clone(), k.clone()));
            }
        }
    }
    out
}
