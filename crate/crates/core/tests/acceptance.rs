//! End-to-end acceptance checks. Run with `cargo test --test acceptance`;
//! prints one PASS/FAIL line per criterion and exits nonzero on failure.

use std::collections::{BTreeMap, BTreeSet};
use std::panic;
use std::process::ExitCode;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRng, TestRunner};

use mfsgeo::chow;
use mfsgeo::detcat::{self, CoverSpec};
use mfsgeo::geography::{self, FamilyParams, SigmaPosition};
use mfsgeo::links::{self, StepKind, TerminalKind};
use mfsgeo::newton::{self, DivisibilityProfile, FibreMonomial};
use mfsgeo::{cli, BasisChange, DivClass, StandardScroll, WeightMatrix};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! check {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

macro_rules! check_eq {
    ($left:expr, $right:expr) => {{
        let (l, r) = (&$left, &$right);
        if l != r {
            return Err(format!("{} = {:?}, expected {:?}", stringify!($left), l, r));
        }
    }};
}

fn fam(n: i64, a: i64, b: i64, c: i64) -> FamilyParams {
    FamilyParams::new(n, a, b, c).unwrap()
}

fn cls(s: &str) -> DivClass {
    s.parse().unwrap()
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    TestRunner::new_with_rng(config, rng)
}

// Reference chart, in picture units: markers at (65 + 10n + 0.3, 4 + 10d).
const CHART_BULLETS: [(f64, f64); 11] = [
    (74.3, 4.0),
    (74.3, 14.0),
    (64.3, 14.0),
    (64.3, 24.0),
    (54.3, 34.0),
    (54.3, 44.0),
    (44.3, 44.0),
    (44.3, 54.0),
    (44.3, 64.0),
    (34.3, 64.0),
    (34.3, 74.0),
];

const CHART_CIRCLES: [(f64, f64); 18] = [
    (74.3, 24.0),
    (64.3, 34.0),
    (64.3, 44.0),
    (54.3, 54.0),
    (44.3, 74.0),
    (34.3, 84.0),
    (34.3, 94.0),
    (24.3, 84.0),
    (24.3, 94.0),
    (24.3, 104.0),
    (14.3, 94.0),
    (14.3, 104.0),
    (14.3, 114.0),
    (14.3, 124.0),
    (4.3, 114.0),
    (4.3, 124.0),
    (4.3, 134.0),
    (4.3, 144.0),
];

// Lower-left corners of the 10x5 label boxes.
const CHART_LABELS: [(f64, f64, &str); 27] = [
    (69.0, 10.0, "001"),
    (57.0, 21.0, "011"),
    (49.0, 30.0, "111"),
    (50.0, 40.0, "[112]"),
    (42.0, 47.0, "[113]"),
    (39.0, 40.0, "112"),
    (40.0, 50.0, "122"),
    (28.0, 60.0, "123"),
    (40.0, 60.0, "[123]"),
    (27.0, 71.0, "133"),
    (49.0, 54.0, "(122)"),
    (41.0, 64.0, "(222)"),
    (44.0, 75.0, "(133)"),
    (32.0, 75.0, "(223)"),
    (31.0, 84.0, "(233)"),
    (33.0, 94.0, "(144)"),
    (23.0, 84.0, "(224)"),
    (21.0, 94.0, "(234)"),
    (19.0, 104.0, "(244)"),
    (13.0, 94.0, "(225)"),
    (11.0, 104.0, "(235)"),
    (11.0, 114.0, "(245)"),
    (15.0, 124.0, "(255)"),
    (4.0, 114.0, "(236)"),
    (3.0, 124.0, "(246)"),
    (1.0, 134.0, "(256)"),
    (4.0, 143.0, "(266)"),
];

fn chart_point((x, y): (f64, f64)) -> (i64, i64) {
    (((x - 65.3) / 10.0).round() as i64, ((y - 4.0) / 10.0).round() as i64)
}

/// Each label goes to the nearest marked point whose `d` is its digit sum.
fn chart_label_points() -> BTreeMap<String, (i64, i64)> {
    let marks: Vec<(f64, f64)> = CHART_BULLETS.iter().chain(&CHART_CIRCLES).copied().collect();
    CHART_LABELS
        .iter()
        .map(|&(x, y, text)| {
            let d: i64 = text.chars().filter_map(|c| c.to_digit(10)).map(i64::from).sum();
            let (cx, cy) = (x + 5.0, y + 2.5);
            let best = marks
                .iter()
                .filter(|&&m| chart_point(m).1 == d)
                .min_by(|p, q| {
                    let dp = (p.0 - cx).powi(2) + (p.1 - cy).powi(2);
                    let dq = (q.0 - cx).powi(2) + (q.1 - cy).powi(2);
                    dp.total_cmp(&dq)
                })
                .expect("a marker at the label's degree");
            (text.to_string(), chart_point(*best))
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let tsv = cli::run(["mfsgeo", "geography", "--format", "tsv"]).map_err(|e| e.to_string())?;
    let golden = include_str!("fixtures/geography_default.tsv");
    check!(tsv == golden, "default geography differs from the golden TSV");

    let mut lines = tsv.lines();
    check_eq!(lines.next(), Some(geography::TSV_HEADER));
    let mut markers: BTreeMap<(i64, i64), String> = BTreeMap::new();
    let mut labels: BTreeMap<String, (i64, i64)> = BTreeMap::new();
    for line in lines {
        let f: Vec<&str> = line.split('\t').collect();
        check!(f.len() == 10, "bad TSV row {line:?}");
        let n: i64 = f[0].parse().map_err(|_| format!("bad n in {line:?}"))?;
        let d: i64 = f[1].parse().map_err(|_| format!("bad d in {line:?}"))?;
        let digits = format!("{}{}{}", f[2], f[3], f[4]);
        if let Some(prev) = markers.insert((n, d), f[5].to_string()) {
            check!(prev == f[5], "point ({n},{d}) has two markers");
        }
        if f[6] != "-" {
            check!(f[6].trim_matches(['[', ']', '(', ')']) == digits, "label {} on family {digits}", f[6]);
            check!(labels.insert(f[6].to_string(), (n, d)).is_none(), "label {} repeated", f[6]);
        }
    }
    let with = |m: &str| -> BTreeSet<(i64, i64)> {
        markers.iter().filter(|(_, v)| v.as_str() == m).map(|(k, _)| *k).collect()
    };
    let bullets: BTreeSet<_> = CHART_BULLETS.iter().map(|&p| chart_point(p)).collect();
    let circles: BTreeSet<_> = CHART_CIRCLES.iter().map(|&p| chart_point(p)).collect();
    check_eq!(bullets.len(), 11);
    check_eq!(circles.len(), 18);
    check_eq!(with("bullet"), bullets);
    check_eq!(with("circle"), circles);
    check_eq!(labels, chart_label_points());
    Ok(())
}

/// Polynomials in `M, L` with `L² = 0` imposed on multiplication.
type Poly = BTreeMap<(u32, u32), i64>;

fn lin(m: i64, l: i64) -> Poly {
    let mut p = Poly::new();
    if m != 0 {
        p.insert((1, 0), m);
    }
    if l != 0 {
        p.insert((0, 1), l);
    }
    p
}

fn one() -> Poly {
    Poly::from([((0, 0), 1)])
}

fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(a, b), &x) in p {
        for (&(c, d), &y) in q {
            if b + d < 2 {
                *out.entry((a + c, b + d)).or_default() += x * y;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Reduces a degree-4 polynomial by `M(M - aL)(M - bL)(M - cL)` until only
/// `M³L` survives, and returns its coefficient.
fn brute_degree(p: &Poly, twists: [i64; 4]) -> i64 {
    let rel = twists.iter().fold(one(), |acc, &a| mul(&acc, &lin(1, -a)));
    let mut cur = p.clone();
    while let Some((&(m, l), &c)) = cur.iter().find(|((m, _), _)| *m >= 4) {
        let shift = Poly::from([((m - 4, l), c)]);
        for (k, v) in mul(&shift, &rel) {
            *cur.entry(k).or_default() -= v;
        }
        cur.retain(|_, v| *v != 0);
    }
    check_top(&cur);
    cur.get(&(3, 1)).copied().unwrap_or(0)
}

fn check_top(p: &Poly) {
    assert!(p.keys().all(|&(m, l)| (m, l) == (3, 1)), "unreduced terms {p:?}");
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for d in 0..=12 {
        for n in -12..=12 {
            for a in 0..=d / 3 {
                for b in a..=(d - a) / 2 {
                    let f = fam(n, a, b, d - a - b);
                    if !geography::admissible(&f).is_admissible() {
                        continue;
                    }
                    let tw = f.twists();
                    let gamma = [f.a, f.b, f.c].iter().fold(one(), |acc, &t| mul(&acc, &lin(1, -t)));
                    let mk = lin(1, 2 - d - n);
                    let x = lin(3, n);
                    let kg = brute_degree(&mul(&mk, &gamma), tw);
                    let xg = brute_degree(&mul(&x, &gamma), tw);
                    check!(kg == 2 - d - n, "-K.Γ = {kg} on {f}");
                    check!(xg == n, "X.Γ = {xg} on {f}");
                    // K² = γΓ + μM²L with γ = K²·X·L and μ = K²·X·M.
                    let k2 = mul(&mul(&mk, &mk), &x);
                    let g = brute_degree(&mul(&k2, &lin(0, 1)), tw);
                    let mu = brute_degree(&mul(&k2, &lin(1, 0)), tw);
                    check!((g, mu) == (3, 12 - 3 * d - 5 * n), "K² = {g}Γ + {mu}M²L on {f}");

                    check_eq!(chow::mk_dot_gamma(&f), kg);
                    check_eq!(chow::x_dot_gamma(&f), xg);
                    let lib = chow::k_squared_by_reduction(&f).map_err(|e| e.to_string())?;
                    check!((lib.gamma, lib.m2l) == (g, mu), "library K² {lib} on {f}");
                    let closed = chow::kx_squared(&f).cycle;
                    check!(closed == lib, "closed form {closed} on {f}");
                    checked += 1;
                }
            }
        }
    }
    check!(checked > 500, "only {checked} families checked");
    Ok(())
}

fn criterion_3() -> Outcome {
    let (window, d_max) = geography::default_window();
    let points = geography::enumerate(window, d_max);
    for p in &points {
        for e in &p.families {
            let f = &e.family;
            let k2 = chow::kx_squared(f);
            if f.n < 0 {
                check!(k2.interior == (3 * e.d + 5 * f.n < 12), "K² flag on {f}");
                check!(k2.iff_proven, "criterion not marked proven on {f}");
            }
            check_eq!(p.pukhlikov_strict, 3 * p.d + 5 * p.n < 12);
            if e.sigma_position == SigmaPosition::Interior {
                check!(k2.interior, "σ-interior but K² not interior on {f}");
            }
        }
    }
    Ok(())
}

fn newton_rows(f: &FamilyParams) -> Vec<(i64, String)> {
    newton::newton_table(f).rows.iter().map(|r| (r.degree, r.monomial.to_string())).collect()
}

fn expected_rows(table: &[(i64, &str)]) -> Vec<(i64, String)> {
    table.iter().flat_map(|&(d, ms)| ms.split(", ").map(move |m| (d, m.to_string()))).collect()
}

fn criterion_4() -> Outcome {
    let francia = expected_rows(&[
        (0, "xy^2, x^2z, x^2t"),
        (1, "y^3, xyz, xyt"),
        (2, "y^2z, y^2t, xz^2, xzt, xt^2"),
        (3, "yz^2, yzt, yt^2"),
        (4, "z^3, z^2t, zt^2, t^3"),
    ]);
    let f0112 = expected_rows(&[
        (0, "x^2y, x^2z"),
        (1, "xy^2, xyz, xz^2, x^2t"),
        (2, "y^3, y^2z, yz^2, z^3, xyt, xzt"),
        (3, "y^2t, yzt, z^2t, xt^2"),
        (4, "yt^2, zt^2"),
        (5, "t^3"),
    ]);
    check_eq!(francia.len(), 18);
    check_eq!(f0112.len(), 19);
    check_eq!(newton_rows(&fam(-2, 1, 2, 2)), francia);
    check_eq!(newton_rows(&fam(-1, 1, 1, 2)), f0112);

    let out = cli::run(["mfsgeo", "newton", "-2", "1", "2", "2"]).map_err(|e| e.to_string())?;
    let body: Vec<(i64, String)> = out
        .lines()
        .filter_map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f.len() == 3).then(|| f[0].parse().ok().map(|d| (d, f[1].to_string()))).flatten()
        })
        .collect();
    check_eq!(body, francia);
    check!(out.contains("val(F) = 0"), "val(F) missing from CLI output");
    Ok(())
}

fn criterion_5() -> Outcome {
    let rows = links::table2();
    check_eq!(rows.len(), 11);
    for row in rows {
        let c = links::verify_mu(row).map_err(|e| e.to_string())?;
        let f = row.family();
        let expected = row.mu * DivClass::new(1, 2 - f.d() - f.n) - DivClass::L;
        check!(c.expected == expected, "row {}: -μK - L = {}", row.id, c.expected);
        check!(c.mu_ok, "row {}: -μK - L = {} but mobile edge is {}", row.id, c.expected, c.edge);
        check!(c.passed(), "row {} fails verification", row.id);
        let k = 2 - f.d() - f.n;
        let first = row.link.split([' ', ',']).find(|w| !w.is_empty()).unwrap_or("");
        check!(first.ends_with("flop") == (k == 0), "row {}: opening {first:?} with -K.Γ = {k}", row.id);
        check!(k <= 0, "row {}: -K.Γ = {k} > 0", row.id);
        check_eq!(c.opening, if k == 0 { StepKind::Flop } else { StepKind::Antiflip });
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let tr = links::trace(&fam(-2, 1, 2, 2), &[]).map_err(|e| e.to_string())?;
    check_eq!(tr.k_dot_gamma, -1);
    let walls: Vec<(DivClass, StepKind)> = tr.steps.iter().map(|s| (s.wall, s.kind)).collect();
    check_eq!(walls, vec![(DivClass::M, StepKind::Antiflip), (cls("M-L"), StepKind::Flop)]);
    check_eq!(tr.terminal.ray, cls("M-2L"));
    check_eq!(tr.terminal.on_ray, vec!["z".to_string(), "t".to_string()]);
    check!(tr.terminal.beyond.is_empty(), "columns beyond the terminal wall");
    check_eq!(tr.terminal.heuristic, TerminalKind::Fibration);
    check_eq!(tr.curated, vec!["5"]);
    Ok(())
}

fn spec(d: i64, e: i64, p: &[(i64, i64)]) -> CoverSpec {
    CoverSpec::new(d, e, p.iter().copied().collect()).unwrap()
}

fn criterion_7() -> Outcome {
    let fmt = |s: CoverSpec| detcat::derive_format(&s).map_err(|e| e.to_string());
    let linear = fmt(spec(7, 0, &[(2, 0)]))?;
    check_eq!(linear.entries, vec![vec![1; 7]; 7]);
    let five = fmt(spec(7, 0, &[(2, 1)]))?;
    check_eq!(five.diagonal, vec![3, 1, 1, 1, 1]);
    let three = fmt(spec(7, 0, &[(2, 2)]))?;
    check_eq!(three.entries, vec![vec![3, 3, 2], vec![3, 3, 2], vec![2, 2, 1]]);
    let special = fmt(spec(7, 0, &[(2, 3)]))?;
    check_eq!(special.entries, vec![vec![5, 3, 3], vec![3, 1, 1], vec![3, 1, 1]]);

    let odd = fmt(spec(4, 1, &[(1, 1)]))?;
    check_eq!(odd.diagonal, vec![3, 1]);
    check_eq!(odd.entries, vec![vec![3, 2], vec![2, 1]]);
    let even = fmt(spec(4, 1, &[(1, 0)]))?;
    check_eq!(even.entries, vec![vec![1; 4]; 4]);

    let series = detcat::rr_table(&spec(7, 0, &[(1, 0), (2, 1)]), 5).map_err(|e| e.to_string())?;
    check_eq!(series[1..], [0, 1, 7, 14, 21]);

    let m = detcat::moduli_count(&three);
    check_eq!((m.params, m.gauge, m.family_dim, m.all_curves_dim), (45, 11, 34, 35));
    let m = detcat::moduli_count(&linear);
    check_eq!((m.params, m.gauge, m.family_dim), (84, 49, 35));

    let out = cli::run(["mfsgeo", "theta", "--degree", "7", "--e", "0", "--p", "2=2"]).map_err(|e| e.to_string())?;
    check!(out.contains("[3, 3, 2]\n  [3, 3, 2]\n  [2, 2, 1]"), "theta CLI format");
    check!(out.contains("45 parameters - 11 gauge = 34"), "theta CLI moduli count");
    Ok(())
}

fn criterion_8() -> Outcome {
    let f = StandardScroll::new(1, vec![0, 1, 2, 2]).map_err(|e| e.to_string())?.to_matrix();
    let t = BasisChange::new([[-1, -1], [2, 1]]).map_err(|e| e.to_string())?;
    check_eq!(f.row_operate(t).rows(), [vec![-1, -1, -1, 0, 1, 1], vec![1, 1, 2, 1, 0, 0]]);

    let s = BasisChange::from_subgroups((-1, 0), (1, 1)).map_err(|e| e.to_string())?;
    check_eq!(s.apply(cls("2M+L")), cls("3M-L"));
    let conic = StandardScroll::new(2, vec![1, 1, 0]).map_err(|e| e.to_string())?.to_matrix().row_operate(s);
    let dp3 = StandardScroll::new(1, vec![0, 1, 1, 1]).map_err(|e| e.to_string())?.to_matrix();
    let sorted = |m: &WeightMatrix| {
        let mut c = m.columns().to_vec();
        c.sort();
        c
    };
    check_eq!(sorted(&conic), sorted(&dp3));
    Ok(())
}

fn criterion_9() -> Outcome {
    let f = fam(-4, 2, 2, 4);
    let table = expected_rows(&[
        (0, "xy^2, xyz, xz^2, x^2t"),
        (2, "y^3, y^2z, yz^2, z^3, xyt, xzt"),
        (4, "y^2t, yzt, z^2t, xt^2"),
        (6, "yt^2, zt^2"),
        (8, "t^3"),
    ]);
    check_eq!(newton_rows(&f), table);
    let mut profile = DivisibilityProfile::default();
    for (i, ms) in [(1, "xyt, xzt"), (2, "y^2t, yzt, z^2t"), (3, "xt^2"), (4, "yt^2, zt^2"), (6, "t^3")] {
        for m in ms.split(", ") {
            profile.set(m.parse::<FibreMonomial>().map_err(|e| e.to_string())?, i);
        }
    }
    let sub = newton::weighted_substitution(&f, &profile, [3, 2, 2, 0], 6).map_err(|e| e.to_string())?;
    check_eq!(sub.to, fam(-1, 1, 1, 1));
    check_eq!(sub.to.class(), cls("3M-L"));
    check!(sub.rows.iter().all(|r| r.class == cls("3M-L")), "inconsistent transformed classes");
    check!(sub.to_admissible, "stable model not admissible");
    Ok(())
}

fn criterion_10() -> Outcome {
    let scrolls = (1usize..=2, prop::collection::vec(0i64..=3, 2..=4), 0i64..=3, -3i64..=5);
    runner(64)
        .run(&scrolls, |(k, twists, m, l)| {
            let s = StandardScroll::new(k, twists).unwrap();
            let c = DivClass::new(m, l);
            let brute = s.to_matrix().sections(c).unwrap().len() as u64;
            prop_assert_eq!(s.section_count(c), brute);
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    let elementary = prop::collection::vec((0usize..4, -2i64..=2), 1..=4);
    let changes = (prop::collection::vec(0i64..=3, 2..=4), elementary, 0i64..=3, -3i64..=4);
    runner(64)
        .run(&changes, |(twists, ops, m, l)| {
            let mut t = BasisChange::IDENTITY;
            for (kind, x) in ops {
                let e = match kind {
                    0 => [[1, x], [0, 1]],
                    1 => [[1, 0], [x, 1]],
                    2 => [[0, 1], [1, 0]],
                    _ => [[-1, 0], [0, 1]],
                };
                t = t.compose(BasisChange::new(e).unwrap());
            }
            let mat = StandardScroll::new(1, twists).unwrap().to_matrix();
            let moved = mat.row_operate(t);
            let c = DivClass::new(m, l);
            prop_assert_eq!(mat.sections(c).unwrap(), moved.sections(t.apply(c)).unwrap());
            let rays: Vec<DivClass> = mat.distinct_rays().iter().map(|&r| t.apply(r)).collect();
            let mut moved_rays = moved.distinct_rays();
            if t.det() < 0 {
                moved_rays.reverse();
            }
            prop_assert_eq!(rays, moved_rays);
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    let specs = (1i64..=9, 0i64..=1, prop::collection::btree_map(0i64..=4, 0i64..=6, 0..=2));
    runner(128)
        .run(&specs, |(d, e, p)| {
            let Ok(s) = CoverSpec::new(d, e, p) else { return Ok(()) };
            let Ok(table) = detcat::rr_table(&s, 0) else { return Ok(()) };
            prop_assert_eq!(table.len(), 1);
            for n in -4..=d + 4 {
                let h = detcat::h0(&s, n).unwrap();
                let h_dual = detcat::h0(&s, s.dual_index(n)).unwrap();
                prop_assert_eq!(h - h_dual, s.chi(n));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    for d in [7i64, 9] {
        let mut count = 0;
        for parts in odd_partitions(d, d) {
            let fmt = detcat::format_from_partition(d, 0, &parts).map_err(|e| e.to_string())?;
            let series = detcat::hilbert_series(&fmt, 2 * d);
            let back = detcat::derive_format_from_series(d, 0, &series).map_err(|e| format!("{parts:?}: {e}"))?;
            check!(back.diagonal == parts, "{parts:?} came back as {:?}", back.diagonal);
            count += 1;
        }
        check!(count > 1, "no partitions of {d}");
    }
    Ok(())
}

/// Partitions of `d` into odd parts `<= max`, in decreasing order.
fn odd_partitions(d: i64, max: i64) -> Vec<Vec<i64>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut p = max.min(d);
    while p >= 1 {
        if p % 2 == 1 {
            for mut rest in odd_partitions(d - p, p) {
                rest.insert(0, p);
                out.push(rest);
            }
        }
        p -= 1;
    }
    out
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("geography of the default window", criterion_1),
        ("Chow ring oracle for d <= 12", criterion_2),
        ("Pukhlikov line and sigma strength", criterion_3),
        ("Newton tables of (-2;1,2,2) and (-1;1,1,2)", criterion_4),
        ("curated links: mobile edge and first wall", criterion_5),
        ("2-ray game of (-2;1,2,2)", criterion_6),
        ("determinantal formats and moduli counts", criterion_7),
        ("basis changes", criterion_8),
        ("weighted substitution of (-4;2,2,4)", criterion_9),
        ("property suites", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(f).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".to_string());
            Err(format!("panic: {msg}"))
        });
        match outcome {
            Ok(()) => println!("PASS {:>2}. {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {e}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
