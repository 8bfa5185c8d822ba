//! Lawvere directed metric spaces on finite point sets.
//!
//! A d-metric `δ: X × X -> [0, ∞]` satisfies `δ(x, x) = 0` and
//! `δ(x, y) + δ(y, z) ≥ δ(x, z)`. It need not be symmetric, and distinct
//! points may be at distance zero.

mod dist;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_integer::Integer;
use num_rational::Rational64;
use petgraph::unionfind::UnionFind;

pub use dist::{parse_rational, ExtDist, ParseDistError};

use crate::error::{Error, Result};
use crate::text::{expect_arity, parse_int, token_lines};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallDirection {
    /// `{x | δ(x, x0) < ε}`
    Past,
    /// `{x | δ(x0, x) < ε}`
    Future,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MetricReport {
    pub violations: Vec<String>,
}

impl MetricReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A finite point set with a row-major distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DMetricSpace {
    points: Vec<String>,
    dist: Vec<ExtDist>,
}

impl DMetricSpace {
    /// Builds a space from point ids and a distance function. Point ids
    /// must be distinct and free of whitespace; axioms are not checked.
    pub fn new(points: Vec<String>, mut delta: impl FnMut(usize, usize) -> ExtDist) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if p.is_empty() || p.chars().any(char::is_whitespace) {
                return Err(Error::invalid(format!("`{p}` is not a valid point id")));
            }
            if seen.insert(p.as_str(), i).is_some() {
                return Err(Error::invalid(format!("duplicate point `{p}`")));
            }
        }
        let n = points.len();
        let dist = (0..n * n).map(|k| delta(k / n, k % n)).collect();
        Ok(DMetricSpace { points, dist })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_index(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p == id)
    }

    pub fn require_point(&self, id: &str) -> Result<usize> {
        self.point_index(id).ok_or_else(|| Error::Unknown { kind: "point", id: id.to_string() })
    }

    pub fn d(&self, x: usize, y: usize) -> ExtDist {
        self.dist[x * self.len() + y]
    }

    /// Checks zero self-distance and the triangle inequality on all triples.
    pub fn validate(&self) -> MetricReport {
        let n = self.len();
        let mut v = Vec::new();
        for x in 0..n {
            if !self.d(x, x).is_zero() {
                v.push(format!("δ({0},{0}) = {1}, expected 0", self.points[x], self.d(x, x)));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.d(x, y) + self.d(y, z) < self.d(x, z) {
                        v.push(format!(
                            "triangle fails at ({},{},{}): {} + {} < {}",
                            self.points[x],
                            self.points[y],
                            self.points[z],
                            self.d(x, y),
                            self.d(y, z),
                            self.d(x, z)
                        ));
                    }
                }
            }
        }
        MetricReport { violations: v }
    }

    /// `δ^op(x, y) = δ(y, x)`.
    pub fn reflect(&self) -> Self {
        let n = self.len();
        DMetricSpace {
            points: self.points.clone(),
            dist: (0..n * n).map(|k| self.d(k % n, k / n)).collect(),
        }
    }

    /// Strict ball of radius `eps` around `x0`.
    pub fn ball(&self, x0: usize, eps: Rational64, direction: BallDirection) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| match direction {
                BallDirection::Past => self.d(x, x0).lt(eps),
                BallDirection::Future => self.d(x0, x).lt(eps),
            })
            .collect()
    }

    /// Product with the sup (l∞) d-metric. Points are tuples `(a,b,...)`
    /// in lexicographic order of factor indices.
    pub fn product(factors: &[&DMetricSpace]) -> Self {
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for f in factors {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..f.len()).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        let names = tuples
            .iter()
            .map(|t| {
                let parts: Vec<&str> = t.iter().zip(factors).map(|(&i, f)| f.points[i].as_str()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        DMetricSpace::new(names, |a, b| {
            tuples[a]
                .iter()
                .zip(&tuples[b])
                .zip(factors)
                .map(|((&i, &j), f)| f.d(i, j))
                .max()
                .unwrap_or(ExtDist::ZERO)
        })
        .expect("tuple names are distinct")
    }

    /// Disjoint union, infinitely far apart across summands. Point `a` of
    /// summand `i` is named `a@i`.
    pub fn sum(summands: &[&DMetricSpace]) -> Self {
        let mut owner = Vec::new();
        let mut names = Vec::new();
        for (s, x) in summands.iter().enumerate() {
            for (i, p) in x.points.iter().enumerate() {
                owner.push((s, i));
                names.push(format!("{p}@{s}"));
            }
        }
        DMetricSpace::new(names, |a, b| {
            let ((sa, i), (sb, j)) = (owner[a], owner[b]);
            if sa == sb {
                summands[sa].d(i, j)
            } else {
                ExtDist::Infinite
            }
        })
        .expect("summand-tagged names are distinct")
    }

    /// Quotient by the equivalence relation generated by `groups` (each a
    /// list of point indices to identify). The distance between classes is
    /// the infimum over chains alternating δ-steps and free jumps inside a
    /// class. Classes are ordered by their least member and named by
    /// joining member ids with `~`.
    pub fn quotient(&self, groups: &[Vec<usize>]) -> Result<Self> {
        let n = self.len();
        let mut uf = UnionFind::<usize>::new(n);
        for g in groups {
            if let Some(&bad) = g.iter().find(|&&i| i >= n) {
                return Err(Error::invalid(format!("point index {bad} out of range")));
            }
            for w in g.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut d = self.dist.clone();
        for x in 0..n {
            for y in 0..n {
                if uf.equiv(x, y) {
                    d[x * n + y] = ExtDist::ZERO;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                let dik = d[i * n + k];
                if !dik.is_finite() {
                    continue;
                }
                for j in 0..n {
                    let via = dik + d[k * n + j];
                    if via < d[i * n + j] {
                        d[i * n + j] = via;
                    }
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            classes.entry(uf.find(x)).or_default().push(x);
        }
        let mut reps: Vec<Vec<usize>> = classes.into_values().collect();
        reps.sort_by_key(|c| c[0]);
        let names = reps
            .iter()
            .map(|c| c.iter().map(|&i| self.points[i].as_str()).collect::<Vec<_>>().join("~"))
            .collect();
        DMetricSpace::new(names, |a, b| d[reps[a][0] * n + reps[b][0]])
    }

    /// Text form: `points n id...` and then `n` rows of `n` entries.
    pub fn to_text(&self) -> String {
        let n = self.len();
        let mut out = format!("points {n}");
        for p in &self.points {
            let _ = write!(out, " {p}");
        }
        out.push('\n');
        for x in 0..n {
            let row: Vec<String> = (0..n).map(|y| self.d(x, y).to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = token_lines(text);
        let (line, header) = lines.next().ok_or_else(|| Error::syntax(1, "empty metric file"))?;
        if header[0] != "points" || header.len() < 2 {
            return Err(Error::syntax(line, "expected `points n id...`"));
        }
        let n: usize = parse_int(line, header[1])?;
        expect_arity(line, &header, n + 2)?;
        let points: Vec<String> = header[2..].iter().map(|s| s.to_string()).collect();
        let mut dist = Vec::with_capacity(n * n);
        let mut rows = 0;
        for (line, toks) in lines {
            if rows == n {
                return Err(Error::syntax(line, "more rows than points"));
            }
            if toks.len() != n {
                return Err(Error::syntax(line, format!("expected {n} entries, got {}", toks.len())));
            }
            for t in toks {
                dist.push(t.parse::<ExtDist>().map_err(|e| Error::syntax(line, e.to_string()))?);
            }
            rows += 1;
        }
        if rows != n {
            return Err(Error::syntax(line, format!("expected {n} rows, got {rows}")));
        }
        DMetricSpace::new(points, |x, y| dist[x * n + y])
    }

    /// Reads a relation file: each line lists point ids to identify.
    pub fn parse_relation(&self, text: &str) -> Result<Vec<Vec<usize>>> {
        token_lines(text)
            .map(|(line, toks)| {
                toks.iter()
                    .map(|t| self.point_index(t).ok_or_else(|| Error::syntax(line, format!("unknown point `{t}`"))))
                    .collect()
            })
            .collect()
    }
}

fn fraction_name(k: i64, n: i64) -> String {
    let g = k.gcd(&n);
    match (k / g, n / g) {
        (p, 1) => p.to_string(),
        (p, q) => format!("{p}/{q}"),
    }
}

/// The directed interval sampled at `0, 1/n, ..., 1`, with
/// `δ(i/n, j/n) = (j - i)/n` for `j ≥ i` and `∞` otherwise.
pub fn discretized_interval(n: usize) -> Result<DMetricSpace> {
    if n == 0 {
        return Err(Error::invalid("discretization needs n ≥ 1"));
    }
    let m = n as i64;
    let names = (0..=m).map(|k| fraction_name(k, m)).collect();
    DMetricSpace::new(names, |i, j| {
        if j >= i {
            ExtDist::ratio((j - i) as i64, m)
        } else {
            ExtDist::Infinite
        }
    })
}

/// The directed circle of length 1 sampled at `0, 1/n, ..., (n-1)/n`, with
/// `δ(x, y)` the length of the anticlockwise arc from `x` to `y`.
pub fn discretized_directed_circle(n: usize) -> Result<DMetricSpace> {
    if n == 0 {
        return Err(Error::invalid("discretization needs n ≥ 1"));
    }
    let m = n as i64;
    let names = (0..m).map(|k| fraction_name(k, m)).collect();
    DMetricSpace::new(names, |i, j| ExtDist::ratio((j as i64 - i as i64).rem_euclid(m), m))
}

/// A distance-preserving bijection `x -> y`, if any.
pub fn find_isometry(x: &DMetricSpace, y: &DMetricSpace) -> Option<Vec<usize>> {
    if x.len() != y.len() {
        return None;
    }
    fn rec(i: usize, map: &mut Vec<usize>, used: &mut [bool], x: &DMetricSpace, y: &DMetricSpace) -> bool {
        if i == x.len() {
            return true;
        }
        for c in 0..y.len() {
            if used[c] {
                continue;
            }
            let ok = (0..i).all(|j| x.d(i, j) == y.d(c, map[j]) && x.d(j, i) == y.d(map[j], c))
                && x.d(i, i) == y.d(c, c);
            if ok {
                used[c] = true;
                map.push(c);
                if rec(i + 1, map, used, x, y) {
                    return true;
                }
                map.pop();
                used[c] = false;
            }
        }
        false
    }
    let mut map = Vec::with_capacity(x.len());
    let mut used = vec![false; y.len()];
    rec(0, &mut map, &mut used, x, y).then_some(map)
}

pub fn is_isometric(x: &DMetricSpace, y: &DMetricSpace) -> bool {
    find_isometry(x, y).is_some()
}
