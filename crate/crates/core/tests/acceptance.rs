//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{cancellable_pairs, poset_contraction_steps, stairway_le, vid, RawScene};
use dihom::catho::random::{random_category, rng};
use dihom::catho::{
    contractible_in_steps, contraction_steps, dhomotopy_equivalent, is_past_contractible, pushout,
    realize_presentation, FinCategory, SearchGuard,
};
use dihom::dmetric::{discretized_directed_circle, discretized_interval, is_isometric, DMetricSpace};
use dihom::fundcat::{fundamental_monoid_classes, hom_classes, is_one_simple};
use dihom::{Model, PreCubicalSet};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn x_scene() -> RawScene {
    RawScene { w: 6, h: 6, boxes: vec![[1, 1, 4, 2], [1, 4, 4, 5]] }
}

fn y_scene() -> RawScene {
    RawScene { w: 6, h: 6, boxes: vec![[1, 1, 2, 2], [4, 4, 5, 5]] }
}

fn hole_scene() -> RawScene {
    RawScene { w: 3, h: 3, boxes: vec![[1, 1, 2, 2]] }
}

fn model(m: Model) -> PreCubicalSet {
    PreCubicalSet::model(m).unwrap()
}

fn intro_scene(raw: &RawScene, want: usize, bound: Duration) -> Outcome {
    let start = Instant::now();
    let k = raw.scene().to_precubical();
    let (s, t) = ((0, 0), (raw.w, raw.h));
    let oracle = raw.class_count(s, t);
    ensure!(oracle == want, "oracle finds {oracle} classes, fixture expects {want}");
    let n = hom_classes(&k, &vid(s), &vid(t), None).map_err(|e| e.to_string())?.len();
    ensure!(n == want, "{n} classes from source to target");
    let back = hom_classes(&k, &vid(t), &vid(s), None).map_err(|e| e.to_string())?.len();
    ensure!(back == 0, "{back} classes from target to source");
    for v in k.vertices() {
        let m = fundamental_monoid_classes(&k, v, 6).map_err(|e| e.to_string())?;
        ensure!(m.counts == [1, 0, 0, 0, 0, 0, 0], "loops at {v}: {:?}", m.counts);
    }
    let took = start.elapsed();
    ensure!(took < bound, "took {took:?}");
    Ok(format!("{want} classes, none backwards, trivial loops ({took:?})"))
}

fn criterion_1() -> Outcome {
    let x = intro_scene(&x_scene(), 3, Duration::from_secs(10))?;
    let y = intro_scene(&y_scene(), 4, Duration::from_secs(10))?;
    Ok(format!("X: {x}; Y: {y}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let m = fundamental_monoid_classes(&model(Model::DirectedCircle), "*", 6).map_err(|e| e.to_string())?;
    ensure!(m.counts == [1; 7], "counts {:?}", m.counts);
    let mut seen = 0;
    for &(p, q, r) in &m.products {
        let (lp, lq, lr) = (m.reps[p].len(), m.reps[q].len(), m.reps[r].len());
        ensure!(lp + lq == lr, "{lp} + {lq} gave length {lr}");
        seen += 1;
    }
    ensure!(seen == 28, "{seen} products recorded");
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(1), "took {took:?}");
    Ok(format!("one class per length 0..6, products add lengths ({took:?})"))
}

fn criterion_3() -> Outcome {
    let k = model(Model::OrderedCircle);
    let count = |x: &str, y: &str| hom_classes(&k, x, y, None).map(|h| h.len()).map_err(|e| e.to_string());
    ensure!(count("0", "1")? == 2, "hom(0,1) is not 2");
    for (x, y) in [("0", "0"), ("1", "1"), ("1", "0")] {
        ensure!(count(x, y)? <= 1, "hom({x},{y}) above 1");
    }
    let v = is_one_simple(&k, None).map_err(|e| e.to_string())?;
    ensure!(!v.simple, "reported 1-simple");
    ensure!(v.witness == Some(("0".into(), "1".into())), "witness {:?}", v.witness);
    Ok("hom(0,1) = 2, not 1-simple, witness (0,1)".into())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let raw = hole_scene();
    let k = raw.scene().to_precubical();
    ensure!(raw.class_count((0, 0), (3, 3)) == 2, "oracle disagrees with fixture");
    let n = hom_classes(&k, "0,0", "3,3", None).map_err(|e| e.to_string())?.len();
    ensure!(n == 2, "{n} classes across the hole");
    let mut pairs = 0;
    for x in k.vertices() {
        for y in k.vertices() {
            let (p, q) = (coords(x), coords(y));
            let straddles = p.0 <= 1 && p.1 <= 1 && q.0 >= 2 && q.1 >= 2;
            let h = hom_classes(&k, x, y, None).map_err(|e| e.to_string())?.len();
            ensure!(h == raw.class_count(p, q), "({x}) -> ({y}): library {h}, oracle disagrees");
            if !straddles {
                ensure!(h <= 1, "({x}) -> ({y}) has {h} classes");
                pairs += 1;
            }
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(1), "took {took:?}");
    Ok(format!("2 classes across the hole, {pairs} other pairs have at most 1 ({took:?})"))
}

fn coords(id: &str) -> (i64, i64) {
    let (x, y) = id.split_once(',').unwrap();
    (x.parse().unwrap(), y.parse().unwrap())
}

fn criterion_5() -> Outcome {
    let l = 5;
    let m = fundamental_monoid_classes(&model(Model::WedgeCircles(2)), "*", l).map_err(|e| e.to_string())?;
    // no squares, so classes are free words over two letters
    let free: Vec<usize> = (0..=l as u32).map(|i| 2usize.pow(i)).collect();
    ensure!(m.counts == free, "counts {:?}", m.counts);
    let total: usize = m.counts.iter().sum();
    ensure!(total == (1 << (l + 1)) - 1, "cumulative {total}");
    Ok(format!("counts {:?}, cumulative {total}", m.counts))
}

fn van_kampen(raw: &RawScene, seed: u64) -> Result<usize, String> {
    let k = raw.scene().to_precubical();
    let (l, r, i) = common::split_at(&k, raw.w / 2);
    ensure!(l.num_vertices() < k.num_vertices() && r.num_vertices() < k.num_vertices(), "split is trivial");
    let (p0, p1, p2, u1, u2) = common::cover_presentations(&l, &r, &i);
    let po = pushout(&p0, &p1, &p2, &u1, &u2).map_err(|e| e.to_string())?;
    let real = realize_presentation(&po.presentation, None).map_err(|e| e.to_string())?;
    let c = &real.category;
    let verts: Vec<&str> = k.vertices().collect();
    let mut r = rng(seed);
    let mut pairs = vec![(vid((0, 0)), vid((raw.w, raw.h)))];
    while pairs.len() < 12 {
        let x = verts[r.random_range(0..verts.len())];
        let y = verts[r.random_range(0..verts.len())];
        pairs.push((x.to_string(), y.to_string()));
    }
    for (x, y) in &pairs {
        let direct = hom_classes(&k, x, y, None).map_err(|e| e.to_string())?.len();
        let (xi, yi) = (c.require_object(x).map_err(|e| e.to_string())?, c.require_object(y).map_err(|e| e.to_string())?);
        let glued = c.hom(xi, yi).len();
        ensure!(direct == glued, "({x}) -> ({y}): direct {direct}, glued {glued}");
    }
    Ok(pairs.len())
}

fn criterion_6() -> Outcome {
    let mut report = Vec::new();
    for (name, raw) in [("X", x_scene()), ("Y", y_scene()), ("hole", hole_scene())] {
        let n = van_kampen(&raw, 6)?;
        report.push(format!("{name} {n} pairs"));
    }
    Ok(format!("glued counts agree: {}", report.join(", ")))
}

fn criterion_7() -> Outcome {
    let fixtures = [
        ("X", x_scene().scene().to_precubical()),
        ("Y", y_scene().scene().to_precubical()),
        ("hole", hole_scene().scene().to_precubical()),
        ("interval", model(Model::Interval)),
        ("ordered circle", model(Model::OrderedCircle)),
        ("directed circle", model(Model::DirectedCircle)),
        ("wedge", model(Model::WedgeCircles(2))),
        ("chain", model(Model::Chain(4))),
    ];
    let bound = Some(6);
    let mut r = rng(7);
    for (name, k) in &fixtures {
        let op = k.opposite().map_err(|e| e.to_string())?;
        let verts: Vec<&str> = k.vertices().collect();
        for _ in 0..20 {
            let x = verts[r.random_range(0..verts.len())];
            let y = verts[r.random_range(0..verts.len())];
            let there = hom_classes(k, x, y, bound).map_err(|e| e.to_string())?.len();
            let back = hom_classes(&op, y, x, bound).map_err(|e| e.to_string())?.len();
            ensure!(there == back, "{name}: hom({x},{y}) = {there} but op gives {back}");
        }
    }
    Ok(format!("{} fixtures x 20 pairs agree", fixtures.len()))
}

fn criterion_8() -> Outcome {
    let interval = discretized_interval(8).map_err(|e| e.to_string())?;
    let circle = discretized_directed_circle(8).map_err(|e| e.to_string())?;
    let rel = interval.parse_relation("0 1\n").map_err(|e| e.to_string())?;
    let q = interval.quotient(&rel).map_err(|e| e.to_string())?;
    ensure!(is_isometric(&q, &circle), "quotient is not the directed circle");
    let product = DMetricSpace::product(&[&interval, &circle]);
    let sum = DMetricSpace::sum(&[&interval, &circle, &q]);
    ensure!(product.validate().is_ok(), "product violates the axioms");
    ensure!(sum.validate().is_ok(), "sum violates the axioms");
    ensure!(q.validate().is_ok(), "quotient violates the axioms");
    Ok(format!("quotient isometric to circle(8); product ({}) and sum ({}) valid", product.len(), sum.len()))
}

fn criterion_9() -> Outcome {
    let guard = SearchGuard::default();
    let ords: Vec<Arc<FinCategory>> = (1..=4).map(|n| Arc::new(FinCategory::ordinal(n))).collect();
    for a in &ords {
        for b in &ords {
            let eq = dhomotopy_equivalent(a, b, guard).map_err(|e| e.to_string())?;
            ensure!(eq, "ordinals {} and {} not equivalent", a.num_objects(), b.num_objects());
        }
    }
    let mut initial = 0;
    for seed in 0..100 {
        let c = Arc::new(random_category(&mut rng(seed)));
        let lib = is_past_contractible(&c).is_some();
        let oracle = common::strongly_past_contractible_to(&c).is_some();
        ensure!(lib == oracle, "seed {seed}: library {lib}, oracle {oracle}");
        initial += lib as usize;
    }
    let (mut instances, mut pairs, mut seed) = (0, 0, 0u64);
    while instances < 100 {
        let mut r = rng(10_000 + seed);
        seed += 1;
        ensure!(seed < 5_000, "only {instances} instances found");
        let c = Arc::new(random_category(&mut r));
        let d = Arc::new(random_category(&mut r));
        let found = cancellable_pairs(&c, &d);
        if found.is_empty() {
            continue;
        }
        instances += 1;
        for (h, k) in found {
            ensure!(h.is_faithful() == k.is_faithful(), "seed {seed}: faithfulness differs");
            pairs += 1;
        }
    }
    Ok(format!(
        "ordinals 1..4 equivalent; {initial}/100 with initial object, oracle agrees; {instances} instances ({pairs} pairs) keep faithfulness"
    ))
}

fn criterion_10() -> Outcome {
    let guard = SearchGuard::default();
    let names: Vec<String> = (0..4).map(|i| format!("x{i}")).collect();
    let le = stairway_le();
    let stairway = Arc::new(FinCategory::from_preorder(&names, &le).map_err(|e| e.to_string())?);
    ensure!(poset_contraction_steps(&le) == Some(2), "oracle disagrees with fixture");
    let steps = contraction_steps(&stairway, guard).map_err(|e| e.to_string())?;
    ensure!(steps == Some(2), "stairway steps {steps:?}");
    ensure!(!contractible_in_steps(&stairway, 1, guard).map_err(|e| e.to_string())?, "stairway in 1 step");
    let two = Arc::new(FinCategory::ordinal(2));
    ensure!(contractible_in_steps(&two, 1, guard).map_err(|e| e.to_string())?, "2 not in 1 step");
    ensure!(is_past_contractible(&two) == Some(0), "2 lacks its initial object");
    Ok("stairway in 2 steps and not 1; 2 in 1 step".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("introduction counts", criterion_1),
        ("directed circle monoid", criterion_2),
        ("ordered circle", criterion_3),
        ("square with a hole", criterion_4),
        ("wedge monoid", criterion_5),
        ("van Kampen consistency", criterion_6),
        ("opposite duality", criterion_7),
        ("d-metric quotient", criterion_8),
        ("category suite", criterion_9),
        ("step contractibility", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:?}]", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{:?}]", i + 1, start.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
