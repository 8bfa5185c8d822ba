use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::text::{expect_arity, token_lines};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category given by an explicit composition table.
///
/// Every object `x` owns an identity arrow named `1@x`. Composition is
/// diagrammatic: `compose(f, g)` is "`f`, then `g`" and is defined when
/// `tgt(f) = src(g)`. The table may be partial or violate the category laws;
/// [`FinCategory::validate`] reports such defects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    table: Vec<Option<u32>>,
    homs: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LawReport {
    pub violations: Vec<String>,
}

impl LawReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Incremental construction of a [`FinCategory`].
#[derive(Debug, Clone, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    object_index: HashMap<String, usize>,
    arrows: Vec<Arrow>,
    arrow_index: HashMap<String, usize>,
    compose: HashMap<(usize, usize), usize>,
}

pub fn identity_name(object: &str) -> String {
    format!("1@{object}")
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an object together with its identity arrow.
    pub fn object(&mut self, id: impl Into<String>) -> Result<usize> {
        let id = id.into();
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return Err(Error::invalid(format!("`{id}` is not a valid object id")));
        }
        if self.object_index.contains_key(&id) {
            return Err(Error::invalid(format!("duplicate object `{id}`")));
        }
        let idx = self.objects.len();
        self.object_index.insert(id.clone(), idx);
        self.objects.push(id.clone());
        let ident = identity_name(&id);
        if self.arrow_index.contains_key(&ident) {
            return Err(Error::invalid(format!("arrow id `{ident}` is reserved")));
        }
        self.arrow_index.insert(ident.clone(), self.arrows.len());
        self.arrows.push(Arrow { id: ident, src: idx, tgt: idx });
        Ok(idx)
    }

    pub fn arrow(&mut self, id: impl Into<String>, src: usize, tgt: usize) -> Result<usize> {
        let id = id.into();
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return Err(Error::invalid(format!("`{id}` is not a valid arrow id")));
        }
        if self.arrow_index.contains_key(&id) {
            return Err(Error::invalid(format!("duplicate arrow `{id}`")));
        }
        if src >= self.objects.len() || tgt >= self.objects.len() {
            return Err(Error::invalid(format!("arrow `{id}` has an out-of-range endpoint")));
        }
        let idx = self.arrows.len();
        self.arrow_index.insert(id.clone(), idx);
        self.arrows.push(Arrow { id, src, tgt });
        Ok(idx)
    }

    /// Records `f;g = h`.
    pub fn compose(&mut self, f: usize, g: usize, h: usize) -> Result<()> {
        let n = self.arrows.len();
        if f >= n || g >= n || h >= n {
            return Err(Error::invalid("composition refers to an unknown arrow"));
        }
        if self.arrows[f].tgt != self.arrows[g].src {
            return Err(Error::invalid(format!(
                "`{}` and `{}` are not composable",
                self.arrows[f].id, self.arrows[g].id
            )));
        }
        self.compose.insert((f, g), h);
        Ok(())
    }

    pub fn object_id(&self, id: &str) -> Option<usize> {
        self.object_index.get(id).copied()
    }

    pub fn arrow_id(&self, id: &str) -> Option<usize> {
        self.arrow_index.get(id).copied()
    }

    pub fn identity(&self, object: usize) -> usize {
        self.arrow_index[&identity_name(&self.objects[object])]
    }

    /// Fills in unit-law compositions that were not given explicitly.
    pub fn build(self) -> FinCategory {
        let n = self.arrows.len();
        let identities: Vec<usize> = self
            .objects
            .iter()
            .map(|o| self.arrow_index[&identity_name(o)])
            .collect();
        let mut table = vec![None; n * n];
        for (f, a) in self.arrows.iter().enumerate() {
            table[identities[a.src] * n + f] = Some(f as u32);
            table[f * n + identities[a.tgt]] = Some(f as u32);
        }
        for (&(f, g), &h) in &self.compose {
            table[f * n + g] = Some(h as u32);
        }
        let no = self.objects.len();
        let mut homs = vec![Vec::new(); no * no];
        for (i, a) in self.arrows.iter().enumerate() {
            homs[a.src * no + a.tgt].push(i);
        }
        FinCategory {
            objects: self.objects,
            arrows: self.arrows,
            identities,
            table,
            homs,
        }
    }
}

impl FinCategory {
    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, arrow: usize) -> bool {
        self.identities[self.arrows[arrow].src] == arrow
    }

    /// `f;g` when recorded.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.table[f * self.arrows.len() + g].map(|h| h as usize)
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn require_object(&self, id: &str) -> Result<usize> {
        self.object_index(id).ok_or_else(|| Error::Unknown { kind: "object", id: id.to_string() })
    }

    /// Exhaustive check of totality, endpoints, unit laws and associativity.
    pub fn validate(&self) -> LawReport {
        let mut v = Vec::new();
        let name = |a: usize| self.arrows[a].id.as_str();
        for f in 0..self.arrows.len() {
            for g in 0..self.arrows.len() {
                if self.arrows[f].tgt != self.arrows[g].src {
                    continue;
                }
                match self.compose(f, g) {
                    None => v.push(format!("composite {};{} is undefined", name(f), name(g))),
                    Some(h) => {
                        if self.arrows[h].src != self.arrows[f].src || self.arrows[h].tgt != self.arrows[g].tgt {
                            v.push(format!("composite {};{} = {} has wrong endpoints", name(f), name(g), name(h)));
                        }
                    }
                }
            }
        }
        for (f, a) in self.arrows.iter().enumerate() {
            let (il, ir) = (self.identities[a.src], self.identities[a.tgt]);
            if self.compose(il, f) != Some(f) || self.compose(f, ir) != Some(f) {
                v.push(format!("identity law fails for {}", name(f)));
            }
        }
        if !v.is_empty() {
            return LawReport { violations: v };
        }
        for f in 0..self.arrows.len() {
            for g in self.hom_from(self.arrows[f].tgt) {
                let fg = self.compose(f, g).expect("total");
                for h in self.hom_from(self.arrows[g].tgt) {
                    let left = self.compose(fg, h);
                    let right = self.compose(g, h).and_then(|gh| self.compose(f, gh));
                    if left != right {
                        v.push(format!("associativity fails for {};{};{}", name(f), name(g), name(h)));
                    }
                }
            }
        }
        LawReport { violations: v }
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::invalid(format!("not a category: {v}"))),
        }
    }

    /// Arrows with source `x`.
    pub fn hom_from(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.objects.len()).flat_map(move |y| self.hom(x, y).iter().copied())
    }

    /// Arrows with target `y`.
    pub fn hom_to(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.objects.len()).flat_map(move |x| self.hom(x, y).iter().copied())
    }

    /// The ordinal `n = {0 -> 1 -> ... -> n-1}`; arrows `i<j` are named `i_j`.
    pub fn ordinal(n: usize) -> Self {
        let mut b = CategoryBuilder::new();
        for i in 0..n {
            b.object(i.to_string()).expect("fresh");
        }
        let mut ids = vec![vec![usize::MAX; n]; n];
        for (i, row) in ids.iter_mut().enumerate() {
            row[i] = b.identity(i);
            for (j, slot) in row.iter_mut().enumerate().skip(i + 1) {
                *slot = b.arrow(format!("{i}_{j}"), i, j).expect("fresh");
            }
        }
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    b.compose(ids[i][j], ids[j][k], ids[i][k]).expect("composable");
                }
            }
        }
        b.build()
    }

    /// `n` objects and only identities.
    pub fn discrete(n: usize) -> Self {
        let mut b = CategoryBuilder::new();
        for i in 0..n {
            b.object(i.to_string()).expect("fresh");
        }
        b.build()
    }

    /// Two objects `0, 1` and two parallel arrows `a, b: 0 -> 1`.
    pub fn parallel_pair() -> Self {
        let mut b = CategoryBuilder::new();
        let x = b.object("0").expect("fresh");
        let y = b.object("1").expect("fresh");
        b.arrow("a", x, y).expect("fresh");
        b.arrow("b", x, y).expect("fresh");
        b.build()
    }

    /// The category of a finite preorder given by `le[i][j]` (assumed
    /// reflexive and transitive). Arrows `i -> j` are named `i_j`.
    pub fn from_preorder(names: &[String], le: &[Vec<bool>]) -> Result<Self> {
        let n = names.len();
        let mut b = CategoryBuilder::new();
        for name in names {
            b.object(name.clone())?;
        }
        let mut ids = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    ids[i][j] = Some(b.identity(i));
                } else if le[i][j] {
                    ids[i][j] = Some(b.arrow(format!("{}_{}", names[i], names[j]), i, j)?);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if let (Some(f), Some(g)) = (ids[i][j], ids[j][k]) {
                        let h = ids[i][k].ok_or_else(|| Error::invalid("preorder is not transitive"))?;
                        b.compose(f, g, h)?;
                    }
                }
            }
        }
        Ok(b.build())
    }

    /// One object `*`; element `0` of `table` is the unit and
    /// `table[i][j]` is the product "`i` then `j`". Elements `1..` are named
    /// `m1, m2, ...`.
    pub fn monoid(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(Error::invalid("monoid table must be square with entries in range"));
        }
        let mut b = CategoryBuilder::new();
        let star = b.object("*")?;
        let mut ids = vec![b.identity(star)];
        for i in 1..n {
            ids.push(b.arrow(format!("m{i}"), star, star)?);
        }
        for i in 0..n {
            for j in 0..n {
                b.compose(ids[i], ids[j], ids[table[i][j]])?;
            }
        }
        Ok(b.build())
    }

    pub fn opposite(&self) -> Self {
        let n = self.arrows.len();
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { id: a.id.clone(), src: a.tgt, tgt: a.src })
            .collect::<Vec<_>>();
        let mut table = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                table[f * n + g] = self.table[g * n + f];
            }
        }
        let no = self.objects.len();
        let mut homs = vec![Vec::new(); no * no];
        for (i, a) in arrows.iter().enumerate() {
            homs[a.src * no + a.tgt].push(i);
        }
        FinCategory {
            objects: self.objects.clone(),
            arrows,
            identities: self.identities.clone(),
            table,
            homs,
        }
    }

    /// `C x D`, with objects `(x,y)` and arrows `(f,g)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let n = other.num_objects();
        let mut b = CategoryBuilder::new();
        for x in &self.objects {
            for y in &other.objects {
                b.object(format!("({x},{y})"))?;
            }
        }
        let na2 = other.num_arrows();
        let mut pair = vec![0usize; self.num_arrows() * na2];
        for (f, a) in self.arrows.iter().enumerate() {
            for (g, c) in other.arrows.iter().enumerate() {
                let idx = if self.is_identity(f) && other.is_identity(g) {
                    b.identity(a.src * n + c.src)
                } else {
                    b.arrow(format!("({},{})", a.id, c.id), a.src * n + c.src, a.tgt * n + c.tgt)?
                };
                pair[f * na2 + g] = idx;
            }
        }
        for f1 in 0..self.num_arrows() {
            for f2 in self.hom_from(self.arrows[f1].tgt).collect::<Vec<_>>() {
                let Some(f) = self.compose(f1, f2) else { continue };
                for g1 in 0..na2 {
                    for g2 in other.hom_from(other.arrows[g1].tgt).collect::<Vec<_>>() {
                        let Some(g) = other.compose(g1, g2) else { continue };
                        b.compose(pair[f1 * na2 + g1], pair[f2 * na2 + g2], pair[f * na2 + g])?;
                    }
                }
            }
        }
        Ok(b.build())
    }

    /// The full subcategory on `objects` (indices into `self`), with the
    /// embedding of its arrows into `self`.
    pub fn full_subcategory(&self, objects: &[usize]) -> (FinCategory, Vec<usize>) {
        let mut b = CategoryBuilder::new();
        let mut embed = Vec::new();
        for &o in objects {
            b.object(self.objects[o].clone()).expect("distinct objects");
            embed.push(self.identities[o]);
        }
        for (i, &x) in objects.iter().enumerate() {
            for (j, &y) in objects.iter().enumerate() {
                for &a in self.hom(x, y) {
                    if !self.is_identity(a) {
                        b.arrow(self.arrows[a].id.clone(), i, j).expect("fresh");
                        embed.push(a);
                    }
                }
            }
        }
        let back: HashMap<usize, usize> = embed.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        for (sf, &f) in embed.iter().enumerate() {
            for (sg, &g) in embed.iter().enumerate() {
                if self.arrows[f].tgt != self.arrows[g].src {
                    continue;
                }
                if let Some(h) = self.compose(f, g) {
                    if let Some(&sh) = back.get(&h) {
                        b.compose(sf, sg, sh).expect("composable");
                    }
                }
            }
        }
        (b.build(), embed)
    }

    /// Text form: `object`, `arrow` and `compose f g = h` lines. Unit-law
    /// compositions are left implicit.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for o in &self.objects {
            let _ = writeln!(out, "object {o}");
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if !self.is_identity(i) {
                let _ = writeln!(out, "arrow {} {} {}", a.id, self.objects[a.src], self.objects[a.tgt]);
            }
        }
        let n = self.arrows.len();
        for f in 0..n {
            for g in 0..n {
                let Some(h) = self.compose(f, g) else { continue };
                let implied = (self.is_identity(f) && h == g) || (self.is_identity(g) && h == f);
                if !implied {
                    let _ = writeln!(out, "compose {} {} = {}", self.arrows[f].id, self.arrows[g].id, self.arrows[h].id);
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut b = CategoryBuilder::new();
        for (line, toks) in token_lines(text) {
            let wrap = |e: Error| Error::syntax(line, e.to_string());
            match toks[0] {
                "object" => {
                    expect_arity(line, &toks, 2)?;
                    b.object(toks[1]).map_err(wrap)?;
                }
                "arrow" => {
                    expect_arity(line, &toks, 4)?;
                    let s = b.object_id(toks[2]).ok_or_else(|| wrap(unknown("object", toks[2])))?;
                    let t = b.object_id(toks[3]).ok_or_else(|| wrap(unknown("object", toks[3])))?;
                    b.arrow(toks[1], s, t).map_err(wrap)?;
                }
                "compose" => {
                    expect_arity(line, &toks, 5)?;
                    if toks[3] != "=" {
                        return Err(Error::syntax(line, "expected `compose <f> <g> = <h>`"));
                    }
                    let a = |t: &str| b.arrow_id(t).ok_or_else(|| wrap(unknown("arrow", t)));
                    let (f, g, h) = (a(toks[1])?, a(toks[2])?, a(toks[4])?);
                    b.compose(f, g, h).map_err(wrap)?;
                }
                other => return Err(Error::syntax(line, format!("unknown keyword `{other}`"))),
            }
        }
        Ok(b.build())
    }
}

fn unknown(kind: &'static str, id: &str) -> Error {
    Error::Unknown { kind, id: id.to_string() }
}

impl FromStr for FinCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FinCategory::parse(s)
    }
}

impl fmt::Display for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
