//! Loading input files and telling their kinds apart.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use dihom::catho::{functor_file_refs, FinCategory, FunctorMap};
use dihom::dmetric::DMetricSpace;
use dihom::fundcat::{CatPresentation, PresentationMorphism};
use dihom::{GridScene, Model, PreCubicalSet};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Scene,
    Complex,
    Category,
    Presentation,
}

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn with_file<T>(path: &Path, r: dihom::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::from_core(e).in_file(path))
}

/// Kind of a text input, from its keywords: any `gen`/`rel` line makes a
/// presentation, any `arrow`/`compose` line a category; otherwise the first
/// keyword decides.
pub fn detect(text: &str) -> Option<Kind> {
    let mut first = None;
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("");
        let Some(kw) = body.split_whitespace().next() else { continue };
        match kw {
            "gen" | "rel" => return Some(Kind::Presentation),
            "arrow" | "compose" => return Some(Kind::Category),
            _ => {}
        }
        first.get_or_insert(kw);
    }
    match first? {
        "grid" | "box" | "source" | "target" => Some(Kind::Scene),
        "vertex" | "edge" | "square" => Some(Kind::Complex),
        "object" => Some(Kind::Category),
        _ => None,
    }
}

/// A scene or a complex; a `model:<name>` argument selects a built-in model.
pub enum Space {
    Scene(GridScene),
    Complex(PreCubicalSet),
}

impl Space {
    pub fn complex(&self) -> PreCubicalSet {
        match self {
            Space::Scene(s) => s.to_precubical(),
            Space::Complex(k) => k.clone(),
        }
    }

    pub fn scene(&self) -> Option<&GridScene> {
        match self {
            Space::Scene(s) => Some(s),
            Space::Complex(_) => None,
        }
    }
}

pub fn load_space(arg: &Path) -> Result<Space, Failure> {
    if let Some(name) = arg.to_str().and_then(|s| s.strip_prefix("model:")) {
        let model: Model = name.parse().map_err(|e: dihom::Error| Failure::usage(e.to_string()))?;
        return Ok(Space::Complex(PreCubicalSet::model(model).map_err(Failure::from_core)?));
    }
    let text = read(arg)?;
    match detect(&text) {
        Some(Kind::Scene) => Ok(Space::Scene(with_file(arg, GridScene::parse(&text))?)),
        Some(Kind::Complex) | None => Ok(Space::Complex(with_file(arg, PreCubicalSet::parse(&text))?)),
        Some(_) => Err(Failure::usage(format!("{}: expected a scene or a complex", arg.display()))),
    }
}

pub fn load_category(path: &Path) -> Result<Arc<FinCategory>, Failure> {
    if let Some(arg) = path.to_str().and_then(|s| s.strip_prefix("ordinal:")) {
        let n: usize = arg.parse().map_err(|_| Failure::usage(format!("bad ordinal `{arg}`")))?;
        return Ok(Arc::new(FinCategory::ordinal(n)));
    }
    let text = read(path)?;
    let c = with_file(path, FinCategory::parse(&text))?;
    let report = c.validate();
    if !report.is_ok() {
        return Err(Failure::domain(format!("{}: {}", path.display(), report.violations[0])));
    }
    Ok(Arc::new(c))
}

pub fn load_presentation(path: &Path) -> Result<CatPresentation, Failure> {
    let text = read(path)?;
    match detect(&text) {
        Some(Kind::Complex) => {
            let k = with_file(path, PreCubicalSet::parse(&text))?;
            Ok(with_file(path, dihom::fundcat::presentation_of(&k))?)
        }
        Some(Kind::Scene) => {
            let s = with_file(path, GridScene::parse(&text))?;
            Ok(with_file(path, dihom::fundcat::presentation_of(&s.to_precubical()))?)
        }
        _ => with_file(path, CatPresentation::parse(&text)),
    }
}

pub fn load_morphism(path: &Path, dom: &CatPresentation, cod: &CatPresentation) -> Result<PresentationMorphism, Failure> {
    let text = read(path)?;
    with_file(path, PresentationMorphism::parse(&text, dom, cod))
}

fn relative(base: &Path, rel: &str) -> PathBuf {
    if rel.contains(':') {
        return PathBuf::from(rel);
    }
    base.parent().unwrap_or(Path::new(".")).join(rel)
}

/// A functor file together with the categories it names (paths are taken
/// relative to the functor file).
pub fn load_functor(path: &Path) -> Result<FunctorMap, Failure> {
    let text = read(path)?;
    let (d, c) = with_file(path, functor_file_refs(&text))?;
    let dom = load_category(&relative(path, &d))?;
    let cod = load_category(&relative(path, &c))?;
    let f = with_file(path, FunctorMap::parse(&text, dom, cod))?;
    let report = f.check();
    if !report.is_ok() {
        return Err(Failure::domain(format!("{}: not a functor: {}", path.display(), report.violations[0])));
    }
    Ok(f)
}

pub fn load_metric(path: &Path) -> Result<DMetricSpace, Failure> {
    let text = read(path)?;
    with_file(path, DMetricSpace::parse(&text))
}
