use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use dihom::catho::{self, SearchGuard};
use dihom::dmetric::{parse_rational, BallDirection, DMetricSpace};
use dihom::fundcat;

mod input;

use input::{load_category, load_functor, load_metric, load_morphism, load_presentation, load_space, read, Space};

/// Directed-homotopy invariants of grid scenes, pre-cubical sets, finite
/// categories and directed metric spaces.
#[derive(Parser)]
#[command(name = "dihom", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dihomotopy classes from the source to the target of a scene.
    Classes {
        scene: PathBuf,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        reps: bool,
        #[arg(long)]
        json: bool,
    },
    /// Dihomotopy classes between two vertices.
    Hom {
        input: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        reps: bool,
        #[arg(long)]
        json: bool,
    },
    /// Components of the path preorder.
    Pi0 { input: PathBuf },
    /// The path preorder, one related pair per line.
    Preorder { input: PathBuf },
    /// Whether every hom-set has at most one class.
    OneSimple {
        input: PathBuf,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Loop classes at a vertex, graded by length.
    Monoid {
        input: PathBuf,
        #[arg(long)]
        at: String,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        json: bool,
    },
    /// Finite categories and presentations.
    #[command(subcommand)]
    Cat(CatCommand),
    /// Directed metric spaces.
    #[command(subcommand)]
    Metric(MetricCommand),
    /// Graphviz rendering of a scene, complex or category.
    ExportDot {
        input: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Index of a class whose representative is drawn highlighted.
        #[arg(long)]
        highlight: Option<usize>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        #[arg(long)]
        max_len: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Past,
    Future,
}

#[derive(Subcommand)]
enum CatCommand {
    /// Past (initial object) or future (terminal object) contractibility.
    Contractible {
        category: PathBuf,
        #[arg(long, value_enum)]
        direction: Dir,
    },
    /// Directed homotopy equivalence by exhaustive functor search.
    Equiv { c: PathBuf, d: PathBuf },
    /// Pushout of two presentation morphisms out of a common presentation.
    Pushout { p0: PathBuf, p1: PathBuf, p2: PathBuf, u1: PathBuf, u2: PathBuf },
    /// The finite category presented by a presentation.
    Realize {
        presentation: PathBuf,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Whether a functor is faithful.
    Faithful { functor: PathBuf },
}

#[derive(Subcommand)]
enum MetricCommand {
    /// Check zero self-distance and the triangle inequality.
    Validate { space: PathBuf },
    /// Product with the sup distance.
    Product {
        #[arg(required = true)]
        spaces: Vec<PathBuf>,
    },
    /// Disjoint union.
    Sum {
        #[arg(required = true)]
        spaces: Vec<PathBuf>,
    },
    /// Quotient by the equivalence generated by a relation file.
    Quotient { space: PathBuf, relation: PathBuf },
    /// Strict past or future ball.
    Ball {
        space: PathBuf,
        #[arg(long)]
        at: String,
        #[arg(long)]
        eps: String,
        #[arg(long, value_enum)]
        direction: Dir,
    },
}

/// An error with its exit code: 1 for domain errors, 2 for unreadable input
/// or bad usage.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Failure { code: 1, msg: msg.into() }
    }

    pub fn from_core(e: dihom::Error) -> Self {
        if e.is_syntax() {
            Failure::usage(e.to_string())
        } else {
            Failure::domain(e.to_string())
        }
    }

    pub fn in_file(mut self, path: &Path) -> Self {
        self.msg = format!("{}: {}", path.display(), self.msg);
        self
    }
}

impl From<dihom::Error> for Failure {
    fn from(e: dihom::Error) -> Self {
        Failure::from_core(e)
    }
}

type Out = Result<String, Failure>;

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn require_vertex(k: &dihom::PreCubicalSet, v: &str) -> Result<(), Failure> {
    if k.has_vertex(v) {
        Ok(())
    } else {
        Err(Failure::domain(format!("unknown vertex `{v}`")))
    }
}

fn hom_report(k: &dihom::PreCubicalSet, from: &str, to: &str, max_len: Option<usize>, reps: bool, as_json: bool) -> Out {
    require_vertex(k, from)?;
    require_vertex(k, to)?;
    let set = fundcat::hom_classes(k, from, to, max_len)?;
    Ok(if as_json { json(&set) } else { set.report(reps) })
}

fn run(cli: Cli) -> Out {
    match cli.command {
        Command::Classes { scene, max_len, reps, json: as_json } => {
            let space = load_space(&scene)?;
            let Space::Scene(s) = &space else {
                return Err(Failure::usage("`classes` needs a scene file; use `hom` for complexes"));
            };
            hom_report(&s.to_precubical(), &s.source_id(), &s.target_id(), max_len, reps, as_json)
        }
        Command::Hom { input, from, to, max_len, reps, json: as_json } => {
            let k = load_space(&input)?.complex();
            hom_report(&k, &from, &to, max_len, reps, as_json)
        }
        Command::Pi0 { input } => {
            let parts = fundcat::pi0(&load_space(&input)?.complex())?;
            let mut out = format!("components {}\n", parts.len());
            for p in parts {
                let _ = writeln!(out, "{}", p.join(" "));
            }
            Ok(out)
        }
        Command::Preorder { input } => {
            let pre = fundcat::path_preorder(&load_space(&input)?.complex())?;
            let pairs = pre.pairs();
            let mut out = format!("pairs {}\n", pairs.len());
            for (x, y) in pairs {
                let _ = writeln!(out, "{x} <= {y}");
            }
            Ok(out)
        }
        Command::OneSimple { input, max_len, json: as_json } => {
            let v = fundcat::is_one_simple(&load_space(&input)?.complex(), max_len)?;
            if as_json {
                return Ok(json(&v));
            }
            let mut out = format!("one-simple {}\n", v.simple);
            if let Some((x, y)) = &v.witness {
                let _ = writeln!(out, "witness {x} {y}");
            }
            if v.bounded {
                out.push_str("bounded true\n");
            }
            Ok(out)
        }
        Command::Monoid { input, at, max_len, json: as_json } => {
            let k = load_space(&input)?.complex();
            require_vertex(&k, &at)?;
            let t = fundcat::fundamental_monoid_classes(&k, &at, max_len)?;
            if as_json {
                return Ok(json(&t));
            }
            let counts: Vec<String> = t.counts.iter().map(usize::to_string).collect();
            let mut out = format!("counts {}\n", counts.join(" "));
            for (i, r) in t.reps.iter().enumerate() {
                let rep = if r.edges.is_empty() { "-".to_string() } else { r.edges.join(" ") };
                let _ = writeln!(out, "class {i} rep {rep}");
            }
            for (a, b, c) in &t.products {
                let _ = writeln!(out, "product {a} {b} = {c}");
            }
            Ok(out)
        }
        Command::Cat(c) => run_cat(c),
        Command::Metric(m) => run_metric(m),
        Command::ExportDot { input, output, highlight, from, to, max_len } => {
            let text = if matches!(
                input.to_str().map(|s| s.starts_with("model:")),
                Some(true)
            ) {
                None
            } else {
                Some(read(&input)?)
            };
            let dot = match text.as_deref().and_then(input::detect) {
                Some(input::Kind::Category) => {
                    if highlight.is_some() {
                        return Err(Failure::usage("--highlight applies to scenes and complexes"));
                    }
                    let c = load_category(&input)?;
                    dihom::dot::category_to_dot(&c)
                }
                Some(input::Kind::Presentation) => {
                    return Err(Failure::usage("export-dot takes a scene, complex or category"));
                }
                _ => {
                    let space = load_space(&input)?;
                    let k = space.complex();
                    let marked = match highlight {
                        None => Vec::new(),
                        Some(idx) => {
                            let (x, y) = match (from, to, space.scene()) {
                                (Some(x), Some(y), _) => (x, y),
                                (None, None, Some(s)) => (s.source_id(), s.target_id()),
                                _ => return Err(Failure::usage("--highlight needs --from and --to for complexes")),
                            };
                            require_vertex(&k, &x)?;
                            require_vertex(&k, &y)?;
                            let set = fundcat::hom_classes(&k, &x, &y, max_len)?;
                            let class = set.classes.get(idx).ok_or_else(|| {
                                Failure::domain(format!("class index {idx} out of range ({} classes)", set.len()))
                            })?;
                            class.rep.edges.clone()
                        }
                    };
                    dihom::dot::complex_to_dot(&k, &marked)
                }
            };
            fs::write(&output, dot).map_err(|e| Failure::usage(format!("cannot write {}: {e}", output.display())))?;
            Ok(String::new())
        }
    }
}

fn run_cat(cmd: CatCommand) -> Out {
    let guard = SearchGuard::default();
    match cmd {
        CatCommand::Contractible { category, direction } => {
            let c = load_category(&category)?;
            let (word, found) = match direction {
                Dir::Past => ("past", catho::is_past_contractible(&c)),
                Dir::Future => ("future", catho::is_future_contractible(&c)),
            };
            Ok(match found {
                Some(x) => format!("{word}-contractible at {}\n", c.objects()[x]),
                None => format!("not {word}-contractible\n"),
            })
        }
        CatCommand::Equiv { c, d } => {
            let (c, d) = (load_category(&c)?, load_category(&d)?);
            Ok(match catho::find_dhomotopy_equivalence(&c, &d, guard)? {
                Some(e) => format!("equivalent\n# there\n{}# back\n{}", e.there.to_text(), e.back.to_text()),
                None => "not equivalent\n".to_string(),
            })
        }
        CatCommand::Pushout { p0, p1, p2, u1, u2 } => {
            let (q0, q1, q2) = (load_presentation(&p0)?, load_presentation(&p1)?, load_presentation(&p2)?);
            let m1 = load_morphism(&u1, &q0, &q1)?;
            let m2 = load_morphism(&u2, &q0, &q2)?;
            Ok(catho::pushout(&q0, &q1, &q2, &m1, &m2)?.presentation.to_text())
        }
        CatCommand::Realize { presentation, bound } => {
            let p = load_presentation(&presentation)?;
            let r = catho::realize_presentation(&p, bound)?;
            let mut out = String::new();
            if r.truncated {
                let _ = writeln!(out, "# truncated at length {}", bound.unwrap_or(0));
            }
            out.push_str(&r.category.to_text());
            Ok(out)
        }
        CatCommand::Faithful { functor } => {
            let f = load_functor(&functor)?;
            Ok(if f.is_faithful() { "faithful\n" } else { "not faithful\n" }.to_string())
        }
    }
}

fn load_all(paths: &[PathBuf]) -> Result<Vec<DMetricSpace>, Failure> {
    paths.iter().map(|p| load_metric(p)).collect()
}

fn run_metric(cmd: MetricCommand) -> Out {
    match cmd {
        MetricCommand::Validate { space } => {
            let report = load_metric(&space)?.validate();
            if report.is_ok() {
                return Ok("ok\n".to_string());
            }
            let mut out = format!("violations {}\n", report.violations.len());
            for v in report.violations {
                let _ = writeln!(out, "{v}");
            }
            Ok(out)
        }
        MetricCommand::Product { spaces } => {
            let xs = load_all(&spaces)?;
            Ok(DMetricSpace::product(&xs.iter().collect::<Vec<_>>()).to_text())
        }
        MetricCommand::Sum { spaces } => {
            let xs = load_all(&spaces)?;
            Ok(DMetricSpace::sum(&xs.iter().collect::<Vec<_>>()).to_text())
        }
        MetricCommand::Quotient { space, relation } => {
            let x = load_metric(&space)?;
            let rel = x.parse_relation(&read(&relation)?).map_err(|e| Failure::from_core(e).in_file(&relation))?;
            Ok(x.quotient(&rel)?.to_text())
        }
        MetricCommand::Ball { space, at, eps, direction } => {
            let x = load_metric(&space)?;
            let x0 = x.require_point(&at)?;
            let eps = parse_rational(&eps).map_err(|e| Failure::usage(e.to_string()))?;
            let dir = match direction {
                Dir::Past => BallDirection::Past,
                Dir::Future => BallDirection::Future,
            };
            let ids: Vec<&str> = x.ball(x0, eps, dir).into_iter().map(|i| x.points()[i].as_str()).collect();
            let mut out = format!("ball {}", ids.len());
            for id in ids {
                let _ = write!(out, " {id}");
            }
            out.push('\n');
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or("invalid usage");
            eprintln!("error: {}", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.msg.replace('\n', " "));
            ExitCode::from(f.code)
        }
    }
}
