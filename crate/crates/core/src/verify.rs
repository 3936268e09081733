//! Regression and property harness behind the `verify` subcommand.
//!
//! A run is a list of named suites; each suite counts passing and failing
//! assertions and keeps the first counterexample it meets. Suites run in
//! parallel and are reported in a fixed order.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::action::{
    construct_fixed_point_general, find_fixed_point, fixed_point_oracle, separated_offsets, staircase,
    touch_point_components, OrbitOutcome, Point, SolverConfig,
};
use crate::affine::{
    dominant_to_filter, enumerate_sommers, filter_to_dominant, mn_swap_dominant, window_to_tuple, AffinePermutation,
};
use crate::arith::{gcd, rational_catalan};
use crate::error::Result;
use crate::filter::{enumerate_balanced, enumerate_dyck, reachable_balanced, Filter};
use crate::sweep::{dyck_embedding, sweep, sweep_column_word, sweep_inverse};
use crate::tuple::{map_a_inverse, map_b_inverse, qt_table, search_balanced_tuples, zeta, FilterTuple, StatDomain};
use crate::word::{enumerate_words, parking_words, FixClassification, Word, WordKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
    pub elapsed: Duration,
    pub first_counterexample: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> u64 {
        self.suites.iter().map(|s| s.passed).sum()
    }

    pub fn failed(&self) -> u64 {
        self.suites.iter().map(|s| s.failed).sum()
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0
    }

    fn merge(mut self, other: VerifyReport) -> Self {
        self.suites.extend(other.suites);
        self
    }

    /// One line per suite plus a total. Timings are opt-in so that the default
    /// output is identical from run to run.
    pub fn render_text(&self, timings: bool) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let status = if s.failed == 0 { "ok  " } else { "FAIL" };
            out.push_str(&format!("{status} {} ({} passed, {} failed)", s.name, s.passed, s.failed));
            if timings {
                out.push_str(&format!(" in {:.3}s", s.elapsed.as_secs_f64()));
            }
            out.push('\n');
            if let Some(c) = &s.first_counterexample {
                out.push_str(&format!("     first counterexample: {c}\n"));
            }
        }
        out.push_str(&format!(
            "{} suites, {} assertions passed, {} failed\n",
            self.suites.len(),
            self.passed(),
            self.failed()
        ));
        out
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let suites: Vec<Value> = self
            .suites
            .iter()
            .map(|s| {
                let mut v = json!({
                    "name": s.name,
                    "passed": s.passed,
                    "failed": s.failed,
                    "first_counterexample": s.first_counterexample,
                });
                if timings {
                    v["elapsed_seconds"] = json!(s.elapsed.as_secs_f64());
                }
                v
            })
            .collect();
        json!({ "suites": suites, "passed": self.passed(), "failed": self.failed() })
    }
}

struct Suite {
    report: SuiteReport,
    started: Instant,
}

impl Suite {
    fn new(name: impl Into<String>) -> Self {
        Self {
            report: SuiteReport {
                name: name.into(),
                passed: 0,
                failed: 0,
                elapsed: Duration::ZERO,
                first_counterexample: None,
            },
            started: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.report.passed += 1;
        } else {
            self.report.failed += 1;
            if self.report.first_counterexample.is_none() {
                self.report.first_counterexample = Some(detail());
            }
        }
    }

    fn check_eq<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, got: Result<T>, want: T) {
        match got {
            Ok(got) => {
                let ok = got == want;
                self.check(ok, || format!("{label}: got {got:?}, expected {want:?}"));
            }
            Err(e) => self.check(false, || format!("{label}: {e}")),
        }
    }

    fn finish(mut self) -> SuiteReport {
        self.report.elapsed = self.started.elapsed();
        self.report
    }
}

fn word(m: usize, s: &str) -> Word {
    Word::parse(m, s).expect("fixture words are well formed")
}

fn point(coords: &[i64]) -> Point {
    Point::new(coords.to_vec()).expect("fixture points are sorted")
}

fn ints(s: &str) -> Vec<i64> {
    s.split(',').map(|x| x.trim().parse().expect("fixture integers")).collect()
}

/// Balanced removals, A-word, and B-word for every (4,3) parking tuple;
/// the first column doubles as the window of a Sommers element.
pub const ZETA_TABLE_4_3: [(&str, &str, &str); 16] = [
    ("1,2,3", "012", "000"),
    ("1,3,2", "021", "010"),
    ("2,1,3", "102", "100"),
    ("2,3,1", "120", "110"),
    ("3,1,2", "201", "200"),
    ("3,2,1", "210", "210"),
    ("-1,3,4", "001", "011"),
    ("-1,4,3", "010", "021"),
    ("4,-1,3", "100", "201"),
    ("0,2,4", "020", "001"),
    ("0,4,2", "002", "020"),
    ("2,0,4", "200", "101"),
    ("0,1,5", "011", "002"),
    ("1,0,5", "101", "102"),
    ("1,5,0", "110", "120"),
    ("-2,2,6", "000", "012"),
];

/// The same data for (5,3).
pub const ZETA_TABLE_5_3: [(&str, &str, &str); 25] = [
    ("1,2,3", "031", "000"),
    ("1,3,2", "013", "010"),
    ("3,1,2", "103", "200"),
    ("3,2,1", "130", "210"),
    ("2,1,3", "301", "100"),
    ("2,3,1", "310", "110"),
    ("0,2,4", "012", "001"),
    ("0,4,2", "021", "020"),
    ("2,0,4", "102", "101"),
    ("2,4,0", "120", "120"),
    ("4,0,2", "201", "300"),
    ("4,2,0", "210", "310"),
    ("-2,3,5", "001", "012"),
    ("-2,5,3", "010", "031"),
    ("5,-2,3", "100", "301"),
    ("-1,3,4", "020", "011"),
    ("-1,4,3", "002", "021"),
    ("3,-1,4", "200", "201"),
    ("0,1,5", "030", "002"),
    ("0,5,1", "003", "030"),
    ("1,0,5", "300", "102"),
    ("-1,1,6", "011", "003"),
    ("1,-1,6", "101", "103"),
    ("1,6,-1", "110", "130"),
    ("-3,2,7", "000", "013"),
];

pub const PARKING_4_3: [&str; 16] = [
    "000", "001", "010", "100", "002", "020", "200", "011", "101", "110", "012", "021", "102", "120", "201", "210",
];

pub const PARKING_5_3: [&str; 25] = [
    "000", "001", "010", "100", "002", "020", "200", "003", "030", "300", "011", "101", "110", "012", "021", "201",
    "210", "120", "102", "013", "031", "301", "310", "130", "103",
];

/// Replays every stored worked example.
pub fn verify_fixtures() -> VerifyReport {
    let suites: Vec<fn() -> SuiteReport> = vec![
        fixture_words,
        fixture_action,
        fixture_witnesses,
        fixture_filters,
        fixture_tuples,
        fixture_zeta_tables,
        fixture_qt_tables,
        fixture_sweep,
        fixture_affine,
    ];
    VerifyReport { suites: suites.par_iter().map(|f| f()).collect() }
}

fn fixture_words() -> SuiteReport {
    let mut s = Suite::new("fixtures: parking words and classification");
    for (m, list) in [(4, &PARKING_4_3[..]), (5, &PARKING_5_3[..])] {
        let want: BTreeSet<Word> = list.iter().map(|x| word(m, x)).collect();
        let got: BTreeSet<Word> = parking_words(m, 3).into_iter().collect();
        s.check(got == want, || format!("parking words of ({m},3) differ from the listed set"));
    }
    s.check_eq("touch points of 531030678631", word(9, "531030678631").touch_points(), vec![3, 6]);
    s.check_eq("touch points of 020101151", word(6, "020101151").touch_points(), vec![]);
    for (m, w, want) in [
        (4, "012", FixClassification::UniqueFixedPoint),
        (3, "000", FixClassification::InfinitelyManyFixedPoints),
        (4, "022", FixClassification::NoFixedPoint),
    ] {
        s.check_eq(&format!("classify {w}"), Ok(word(m, w).classify()), want);
    }
    s.finish()
}

fn fixture_action() -> SuiteReport {
    let mut s = Suite::new("fixtures: action and solver");
    let chain = [[-1, 3, 4], [-2, 3, 5], [0, 2, 4], [1, 2, 3], [0, 2, 4], [-1, 3, 4]];
    for (i, &l) in word(3, "10011").letters().iter().enumerate() {
        s.check_eq(&format!("step {i} of 10011"), point(&chain[i]).apply_letter(l), point(&chain[i + 1]));
    }
    let report = find_fixed_point(&word(3, "10011"), SolverConfig::default());
    s.check_eq("solver on 10011", report.map(|r| r.fixed_point().cloned()), Some(point(&[-1, 3, 4])));
    let report = find_fixed_point(&word(4, "022"), SolverConfig::default());
    s.check(
        matches!(report.as_ref().map(|r| &r.outcome), Ok(OrbitOutcome::Diverged { .. })),
        || format!("022 should diverge, got {report:?}"),
    );
    s.check_eq("oracle on 10011", fixed_point_oracle(&word(3, "10011")), point(&[-1, 3, 4]));
    s.check_eq("norm of (-1,3,4)", Ok(point(&[-1, 3, 4]).norm()), 42u32.into());

    let nine = word(6, "020101151");
    let vertices = [[-3, 0, 3, 3, 6, 12], [-2, 1, 1, 4, 7, 10], [-4, 2, 2, 5, 5, 11]];
    for v in vertices {
        s.check_eq(&format!("{v:?} fixed by 020101151"), point(&v).apply_word(&nine), point(&v));
    }
    let centroid: Vec<i64> = (0..6).map(|i| vertices.iter().map(|v| v[i]).sum()).collect();
    let centroid = Point::with_denominator(centroid, 3).expect("sorted");
    s.check_eq("centroid of the three vertices", Ok(centroid.clone()), point(&[-3, 1, 2, 4, 6, 11]));
    s.check_eq("centroid fixed", centroid.apply_word(&nine), centroid.clone());
    s.finish()
}

fn fixture_witnesses() -> SuiteReport {
    let mut s = Suite::new("fixtures: touch-point witness");
    let w = word(9, "531030678631");
    let comps = touch_point_components(&w).map(|c| c.into_iter().map(|c| c.word.to_string()).collect::<Vec<_>>());
    s.check_eq("components", comps, vec!["1001".to_string(), "2000".into(), "0120".into()]);
    let (n2, n3) = (22, 44);
    let manual = point(&[-6, 0, 6, n2 - 3, n2, n2 + 3, n3 - 6, n3 - 3, n3 + 9]);
    s.check_eq("assembled witness", manual.apply_word(&w), manual.clone());
    let built = separated_offsets(&w).and_then(|o| construct_fixed_point_general(&w, &o));
    match built {
        Ok(x) => s.check_eq("constructed witness", x.apply_word(&w), x.clone()),
        Err(e) => s.check(false, || format!("construction failed: {e}")),
    }
    s.finish()
}

fn fixture_filters() -> SuiteReport {
    let mut s = Suite::new("fixtures: filters");
    let f = |m, n, v: &[i64]| Filter::new(m, n, v);
    s.check_eq("column minima [-1,1,3]", f(3, 4, &[-1, 1, 3]).map(|x| x.column_minima()), vec![-1, 1, 2, 4]);
    s.check_eq("column minima [2,4,6]", f(3, 5, &[2, 4, 6]).map(|x| x.column_minima()), vec![2, 4, 5, 6, 8]);
    s.check_eq("column minima [-1,3,4]", f(3, 5, &[-1, 3, 4]).map(|x| x.column_minima()), vec![-1, 2, 3, 5, 6]);
    s.check_eq("Dyck rep of [-1,1,3]", f(3, 4, &[-1, 1, 3]).map(|x| x.to_dyck().row_minima()), vec![0, 2, 4]);
    s.check_eq("balanced rep of [-1,1,3]", f(3, 4, &[-1, 1, 3]).and_then(|x| x.to_balanced()).map(|x| x.row_minima()), vec![0, 2, 4]);
    s.check_eq("removable of [-1,3,4]", f(3, 5, &[-1, 3, 4]).map(|x| x.removable_levels()), vec![-1, 3]);
    s.check_eq(
        "two removals",
        f(3, 5, &[-1, 3, 4]).and_then(|x| x.remove(3)).and_then(|x| x.remove(-1)).map(|x| x.row_minima()),
        vec![2, 4, 6],
    );
    s.check_eq("swap of [-1,3,4]", f(3, 5, &[-1, 3, 4]).map(|x| x.mn_swap().row_minima()), vec![-1, 2, 3, 5, 6]);
    let balanced: Result<BTreeSet<Vec<i64>>> =
        enumerate_balanced(3, 4).map(|v| v.iter().map(Filter::row_minima).collect());
    let want: BTreeSet<Vec<i64>> =
        [vec![1, 2, 3], vec![0, 2, 4], vec![-1, 3, 4], vec![0, 1, 5], vec![-2, 2, 6]].into();
    s.check_eq("balanced (3,4) filters", balanced, want);
    s.check_eq("count of balanced (3,5) filters", enumerate_balanced(3, 5).map(|v| v.len()), 7);
    s.check_eq("Dyck word of (3,4) [0,2,4]", f(3, 4, &[0, 2, 4]).map(|x| x.dyck_word().to_string()), "0011".into());
    s.check_eq("Dyck word of (3,5) [0,2,4]", f(3, 5, &[0, 2, 4]).map(|x| x.dyck_word().to_string()), "00012".into());
    s.finish()
}

fn fixture_tuples() -> SuiteReport {
    let mut s = Suite::new("fixtures: tuple maps");
    s.check_eq("A inverse of 10001", map_a_inverse(&word(3, "10001")).map(|t| t.parking_removals()), vec![4, 0, 3, 6, 7]);
    s.check_eq("A inverse of 010", map_a_inverse(&word(5, "010")).map(|t| t.parking_removals()), vec![0, 7, 5]);
    let t = Filter::new(3, 5, &[-1, 3, 4]).and_then(|b| FilterTuple::new(b, vec![3, -1, 2, 5, 6]));
    s.check_eq("B of the (3,5) example", t.clone().map(|t| t.map_b()), word(3, "10011"));
    s.check_eq("A of the (3,5) example", t.clone().map(|t| t.map_a()), word(3, "10001"));
    s.check_eq("area and dinv", t.map(|t| (t.area(), t.dinv())), (2, 1));
    s.check_eq(
        "B inverse of 10011",
        map_b_inverse(&word(3, "10011"), SolverConfig::default()).map(|t| t.removals().to_vec()),
        vec![3, -1, 2, 5, 6],
    );
    s.finish()
}

fn fixture_zeta_tables() -> SuiteReport {
    let mut s = Suite::new("fixtures: zeta tables (4,3) and (5,3)");
    for (m, table) in [(4, &ZETA_TABLE_4_3[..]), (5, &ZETA_TABLE_5_3[..])] {
        for &(window, a, b) in table {
            let (aw, bw) = (word(m, a), word(m, b));
            s.check_eq(&format!("zeta({a})"), zeta(&aw), bw.clone());
            s.check_eq(&format!("zeta inverse({b})"), crate::tuple::zeta_inverse(&bw, SolverConfig::default()), aw.clone());
            s.check_eq(&format!("removals of A inverse({a})"), map_a_inverse(&aw).map(|t| t.removals().to_vec()), ints(window));
            let w = AffinePermutation::new(ints(window));
            s.check_eq(&format!("anderson {window}"), w.clone().and_then(|w| w.anderson(m)), aw);
            s.check_eq(&format!("pak-stanley {window}"), w.and_then(|w| w.pak_stanley(m)), bw);
        }
    }
    s.finish()
}

fn fixture_qt_tables() -> SuiteReport {
    let mut s = Suite::new("fixtures: q,t tables");
    let cases: [(usize, StatDomain, Vec<Vec<u64>>); 4] = [
        (4, StatDomain::ParkingWords, vec![vec![1, 2, 2, 1], vec![2, 3, 1, 0], vec![2, 1, 0, 0], vec![1, 0, 0, 0]]),
        (4, StatDomain::DyckWords, vec![vec![0, 0, 0, 1], vec![0, 1, 1, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 0]]),
        (
            5,
            StatDomain::ParkingWords,
            vec![vec![0, 1, 2, 2, 1], vec![1, 4, 3, 1, 0], vec![2, 3, 1, 0, 0], vec![2, 1, 0, 0, 0], vec![1, 0, 0, 0, 0]],
        ),
        (
            5,
            StatDomain::DyckWords,
            vec![vec![0, 0, 0, 0, 1], vec![0, 0, 1, 1, 0], vec![0, 1, 1, 0, 0], vec![0, 1, 0, 0, 0], vec![1, 0, 0, 0, 0]],
        ),
    ];
    for (m, over, want) in cases {
        s.check_eq(&format!("({m},3) {over:?}"), qt_table(m, 3, over).map(|t| t.counts), want);
    }
    s.finish()
}

fn fixture_sweep() -> SuiteReport {
    let mut s = Suite::new("fixtures: sweep");
    let d = Filter::new(4, 7, &[0, 6, 7, 9]).expect("valid");
    let e = sweep(&d);
    s.check_eq("sweep of (4,7) [0,6,7,9]", e.clone().map(|e| e.row_minima()), vec![0, 5, 7, 14]);
    if let Ok(e) = e {
        match sweep_inverse(&e, SolverConfig::default()) {
            Ok(back) => {
                s.check_eq("preimage", Ok(back.filter.row_minima()), vec![0, 6, 7, 9]);
                s.check_eq("vertical levels", Ok(back.vertical_levels), vec![7, 13, 14, 16]);
                s.check_eq("horizontal levels", Ok(back.horizontal_levels), vec![0, 4, 6, 8, 9, 10, 12]);
            }
            Err(err) => s.check(false, || format!("sweep inverse failed: {err}")),
        }
    }
    for (m, want) in [(4, vec!["000", "001", "002", "011", "012"]), (5, vec!["000", "001", "002", "003", "011", "012", "013"])] {
        let got: Result<BTreeSet<String>> = enumerate_dyck(m, 3)
            .and_then(|ds| ds.iter().map(|d| sweep_column_word(d).map(|w| w.to_string())).collect());
        s.check_eq(&format!("sweep column words ({m},3)"), got, want.into_iter().map(String::from).collect());
    }
    s.finish()
}

fn fixture_affine() -> SuiteReport {
    let mut s = Suite::new("fixtures: affine permutations");
    let aff = |v: &[i64]| AffinePermutation::new(v.to_vec()).expect("valid window");
    s.check_eq("w_mn(4,3)", AffinePermutation::w_mn(4, 3), aff(&[-2, 2, 6]));
    s.check_eq("w_mn(5,3)", AffinePermutation::w_mn(5, 3), aff(&[-3, 2, 7]));
    s.check_eq("w_mn(3,4)", AffinePermutation::w_mn(3, 4), aff(&[-2, 1, 4, 7]));
    s.check_eq("swap [-1,2,3,5,6]", mn_swap_dominant(&aff(&[-1, 2, 3, 5, 6]), 3), aff(&[-1, 3, 4]));
    s.check_eq("swap [-1,3,4]", mn_swap_dominant(&aff(&[-1, 3, 4]), 5), aff(&[-1, 2, 3, 5, 6]));
    let w = aff(&[3, -1, 2, 5, 6]);
    s.check_eq("in Sommers", w.in_sommers(3), true);
    s.check_eq("pak-stanley", w.pak_stanley(3), word(3, "10011"));
    s.check_eq("anderson", w.anderson(3), word(3, "10001"));
    s.check_eq("anderson [5,-2,3]", aff(&[5, -2, 3]).anderson(5), word(5, "100"));
    s.check_eq("pak-stanley [5,-2,3]", aff(&[5, -2, 3]).pak_stanley(5), word(5, "301"));
    s.check_eq("[4,0,2] outside", aff(&[4, 0, 2]).in_sommers(4), false);
    s.check_eq("tuple of [3,-1,2,5,6]", window_to_tuple(&w, 3).map(|t| t.initial().row_minima()), vec![-1, 3, 4]);
    s.finish()
}

/// Property suites for one shape. Non-coprime shapes only get the word and
/// action suites.
pub fn verify_shape(m: usize, n: usize, random_pairs: usize) -> VerifyReport {
    let mut suites: Vec<Box<dyn Fn() -> SuiteReport + Send + Sync>> = vec![
        Box::new(move || suite_words(m, n)),
        Box::new(move || suite_contraction(m, n, random_pairs)),
        Box::new(move || suite_solver(m, n)),
    ];
    if gcd(m, n) == 1 {
        suites.push(Box::new(move || suite_filters(m, n)));
        suites.push(Box::new(move || suite_tuples(m, n)));
        suites.push(Box::new(move || suite_sweep(m, n)));
        suites.push(Box::new(move || suite_affine(m, n)));
    }
    VerifyReport { suites: suites.par_iter().map(|f| f()).collect() }
}

/// Fixtures plus every shape with `m, n <= 5` and the sweep checks at (4,7).
pub fn verify_all(random_pairs: usize) -> VerifyReport {
    let shapes: Vec<(usize, usize)> = (1..=5).flat_map(|m| (1..=5).map(move |n| (m, n))).collect();
    let per_shape: Vec<VerifyReport> =
        shapes.par_iter().map(|&(m, n)| verify_shape(m, n, random_pairs)).collect();
    per_shape
        .into_iter()
        .fold(verify_fixtures(), VerifyReport::merge)
        .merge(VerifyReport { suites: vec![suite_sweep(4, 7)] })
}

fn suite_words(m: usize, n: usize) -> SuiteReport {
    let mut s = Suite::new(format!("({m},{n}) words"));
    let parking = parking_words(m, n);
    if gcd(m, n) == 1 {
        s.check(parking.len() == m.pow(n as u32 - 1), || format!("{} parking words", parking.len()));
        for w in &parking {
            s.check(w.touch_points().is_ok_and(|t| t.is_empty()), || format!("{w} has touch points"));
        }
    }
    for w in &parking {
        let mut rotated = w.letters().to_vec();
        rotated.rotate_left(1);
        let rotated = Word::new(m, rotated).expect("same alphabet");
        s.check(rotated.is_parking(), || format!("rotation of {w} is not parking"));
        s.check(w.sorted().is_dyck(), || format!("sorting {w} is not Dyck"));
        let expected = if gcd(m, n) == 1 {
            FixClassification::UniqueFixedPoint
        } else {
            FixClassification::InfinitelyManyFixedPoints
        };
        s.check(w.classify() == expected, || format!("classify({w})"));
    }
    s.finish()
}

fn random_point(rng: &mut ChaCha8Rng, m: usize, spread: i64) -> Point {
    Point::from_unsorted((0..m).map(|_| rng.gen_range(-spread..=spread)).collect())
}

fn random_word(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Word {
    Word::new(m, (0..n).map(|_| rng.gen_range(0..m)).collect()).expect("in range")
}

fn suite_contraction(m: usize, n: usize, pairs: usize) -> SuiteReport {
    let mut s = Suite::new(format!("({m},{n}) contraction"));
    let mut rng = ChaCha8Rng::seed_from_u64((m * 1000 + n) as u64);
    let spread = (2 * m * n) as i64;
    for _ in 0..pairs {
        let (x, y) = (random_point(&mut rng, m, spread), random_point(&mut rng, m, spread));
        let w = random_word(&mut rng, m, n);
        let (wx, wy) = (x.apply_word(&w).expect("dims"), y.apply_word(&w).expect("dims"));
        s.check(wx.sum() == x.sum() && wx.coords().windows(2).all(|p| p[0] <= p[1]), || {
            format!("{w} on {:?} gave {:?}", x.coords(), wx.coords())
        });
        let shrinks = wx.distance(&wy).expect("dims") <= x.distance(&y).expect("dims");
        s.check(shrinks, || format!("{w} stretches {:?} and {:?}", x.coords(), y.coords()));
    }
    s.finish()
}

/// The solver against the parking test; quiet divergence; residue structure.
fn suite_solver(m: usize, n: usize) -> SuiteReport {
    let mut s = Suite::new(format!("({m},{n}) solver"));
    let coprime = gcd(m, n) == 1;
    let words: Vec<Word> = enumerate_words(m, n, WordKind::All).collect();
    let start = staircase(m, n);
    for w in &words {
        let report = find_fixed_point(w, SolverConfig::default());
        if w.is_parking() && coprime {
            match report.as_ref().map(|r| &r.outcome) {
                Ok(OrbitOutcome::Fixed(x)) => {
                    let residues: BTreeSet<usize> = x.residues(m).into_iter().collect();
                    s.check(residues.len() == m, || format!("fixed point of {w} repeats a residue: {:?}", x.coords()));
                    let shifted: BTreeSet<usize> = x.residues(m).iter().map(|r| (r + n) % m).collect();
                    s.check(shifted == residues, || format!("residues of {w} not invariant"));
                }
                _ => s.check(false, || format!("{w}: {report:?}")),
            }
        } else if !w.is_parking() {
            let found = matches!(report.as_ref().map(|r| &r.outcome), Ok(OrbitOutcome::Fixed(_)));
            s.check(!found, || format!("non-parking {w} reached a fixed point"));
            s.check(
                matches!(report.as_ref().map(|r| &r.outcome), Ok(OrbitOutcome::Diverged { .. })),
                || format!("non-parking {w} did not diverge: {report:?}"),
            );
            let after = (0..50).try_fold(start.clone(), |x, _| x.apply_word(w));
            s.check(after.is_ok_and(|x| x.norm() > start.norm()), || format!("{w} did not grow in 50 passes"));
        } else if let Ok(OrbitOutcome::Fixed(x)) = report.as_ref().map(|r| &r.outcome) {
            let again = x.apply_word(w);
            s.check(again.as_ref() == Ok(x), || format!("{w}: reported fixed point moves"));
        }
    }
    if coprime && m.pow(n as u32 - 1) <= 1024 {
        for w in parking_words(m, n) {
            let solved = find_fixed_point(&w, SolverConfig::default()).ok().and_then(|r| r.fixed_point().cloned());
            let oracle = fixed_point_oracle(&w).ok();
            s.check(solved.is_some() && solved == oracle, || format!("{w}: solver {solved:?} vs oracle {oracle:?}"));
        }
    }
    s.finish()
}

fn suite_filters(m: usize, n: usize) -> SuiteReport {
    let mut s = Suite::new(format!("({m},{n}) filters"));
    let Ok(balanced) = enumerate_balanced(m, n) else {
        s.check(false, || "enumeration failed".into());
        return s.finish();
    };
    s.check(balanced.len() as u128 == rational_catalan(m, n), || format!("{} balanced filters", balanced.len()));
    let reachable = reachable_balanced(m, n).unwrap_or_default();
    s.check(reachable == balanced.iter().cloned().collect(), || "reachable set differs".into());
    for b in &balanced {
        let col_sum: i64 = b.column_minima().iter().sum();
        s.check(col_sum == (n * (n + 1) / 2) as i64, || format!("{:?} has column sum {col_sum}", b.row_minima()));
        s.check(b.mn_swap().is_balanced() && b.mn_swap().mn_swap() == *b, || format!("swap of {:?}", b.row_minima()));
        for v in b.removable_levels() {
            let after = b.remove(v).expect("removable");
            let ok = Filter::new(m, n, &after.row_minima()).is_ok() && after.row_minimum(v) == v + m as i64;
            s.check(ok, || format!("removing {v} from {:?}", b.row_minima()));
        }
        let path = b.to_dyck().to_path();
        s.check(
            path.as_ref().is_ok_and(|p| p.horizontal_levels() == b.to_dyck().column_minima()),
            || format!("path of {:?}", b.row_minima()),
        );
    }
    s.finish()
}

fn suite_tuples(m: usize, n: usize) -> SuiteReport {
    let mut s = Suite::new(format!("({m},{n}) tuples and zeta"));
    let parking = parking_words(m, n);
    let parking_set: BTreeSet<Word> = parking.iter().cloned().collect();
    let mut zeta_image = BTreeSet::new();
    let mut areas = BTreeMap::<usize, u64>::new();
    let mut dinvs = BTreeMap::<usize, u64>::new();
    for w in &parking {
        let result = (|| -> Result<()> {
            let t = map_a_inverse(w)?;
            let again = FilterTuple::new(t.initial().clone(), t.removals().to_vec());
            s.check(again.as_ref() == Ok(&t) && t.map_a() == *w, || format!("A inverse of {w}"));
            let b = map_b_inverse(w, SolverConfig::default())?;
            s.check(b.map_b() == *w, || format!("B inverse of {w}"));
            let x = Point::new(b.initial().row_minima())?;
            s.check(x.apply_word(w)? == x, || format!("initial minima of B inverse({w}) not fixed"));
            let z = t.map_b();
            s.check(crate::tuple::zeta_inverse(&z, SolverConfig::default())? == *w, || format!("zeta round trip at {w}"));
            zeta_image.insert(z);
            *areas.entry(t.area()).or_default() += 1;
            *dinvs.entry(t.dinv()).or_default() += 1;
            Ok(())
        })();
        if let Err(e) = result {
            s.check(false, || format!("{w}: {e}"));
        }
    }
    s.check(zeta_image == parking_set, || "zeta is not onto".into());
    s.check(areas == dinvs, || format!("area {areas:?} vs dinv {dinvs:?}"));
    if m.pow(n as u32 - 1) <= 5000 {
        let found = search_balanced_tuples(m, n);
        s.check(found.len() == parking.len(), || format!("search found {} tuples", found.len()));
    }
    s.finish()
}

fn suite_sweep(m: usize, n: usize) -> SuiteReport {
    let mut s = Suite::new(format!("({m},{n}) sweep"));
    let dycks = enumerate_dyck(m, n).unwrap_or_default();
    let mut images = BTreeSet::new();
    for d in &dycks {
        let result = (|| -> Result<()> {
            let e = sweep(d)?;
            s.check(e.is_dyck(), || format!("sweep of {:?} not Dyck", d.row_minima()));
            let column_word = sweep_column_word(d)?;
            s.check(column_word.is_weakly_increasing() && column_word == e.dyck_word(), || {
                format!("column word of {:?}", d.row_minima())
            });
            let back = sweep_inverse(&e, SolverConfig::default())?;
            s.check(back.filter == *d, || format!("sweep inverse at {:?}", d.row_minima()));
            let embedded = dyck_embedding(d)?;
            s.check(embedded.map_a().sorted() == d.dyck_word(), || format!("A of embedding at {:?}", d.row_minima()));
            images.insert(e);
            Ok(())
        })();
        if let Err(e) = result {
            s.check(false, || format!("{:?}: {e}", d.row_minima()));
        }
    }
    s.check(images.len() == dycks.len(), || "sweep is not injective".into());
    s.finish()
}

fn suite_affine(m: usize, n: usize) -> SuiteReport {
    let mut s = Suite::new(format!("({m},{n}) affine"));
    let Ok(sommers) = enumerate_sommers(m, n) else {
        s.check(false, || "enumeration failed".into());
        return s.finish();
    };
    s.check(sommers.len() == m.pow(n as u32 - 1), || format!("{} Sommers elements", sommers.len()));
    let parking: BTreeSet<Word> = parking_words(m, n).into_iter().collect();
    let (mut anderson, mut pak) = (BTreeSet::new(), BTreeSet::new());
    for w in &sommers {
        let result = (|| -> Result<()> {
            s.check(w.in_sommers(m)?, || format!("{w} fails the membership test"));
            let t = window_to_tuple(w, m)?;
            let ps = w.pak_stanley(m)?;
            s.check(ps == t.map_b(), || format!("pak-stanley vs B at {w}"));
            s.check(w.anderson(m)? == t.map_a(), || format!("anderson vs A at {w}"));
            if w.is_dominant() {
                s.check(ps.is_weakly_increasing(), || format!("dominant {w} has labeling {ps}"));
                let b = dominant_to_filter(w, m)?;
                s.check(filter_to_dominant(&b)? == *w, || format!("dominant round trip at {w}"));
                let swapped = mn_swap_dominant(w, m)?;
                s.check(mn_swap_dominant(&swapped, n)? == *w, || format!("double swap at {w}"));
            }
            anderson.insert(w.anderson(m)?);
            pak.insert(ps);
            Ok(())
        })();
        if let Err(e) = result {
            s.check(false, || format!("{w}: {e}"));
        }
    }
    s.check(anderson == parking, || "anderson is not a bijection".into());
    s.check(pak == parking, || "pak-stanley is not a bijection".into());
    let dominant = sommers.iter().filter(|w| w.is_dominant()).count();
    s.check(dominant as u128 == rational_catalan(m, n), || format!("{dominant} dominant elements"));
    s.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_pass() {
        let report = verify_fixtures();
        assert!(report.ok(), "{}", report.render_text(false));
    }

    #[test]
    fn small_shape_passes() {
        let report = verify_shape(3, 4, 200);
        assert!(report.ok(), "{}", report.render_text(false));
        assert_eq!(report.suites.len(), 7);
    }
}
