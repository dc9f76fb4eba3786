//! The `check` runner: every invariant suite over a corpus, with timings.

use std::fmt::Debug;
use std::time::{Duration, Instant};

use serde_json::json;

use hfk_core::complex::{
    build_complex, exactness_check, flavor_homologies, hat_homology, hat_homology_generators, head_window,
    single_generator_complex, sphere_genus1_complex, sphere_genus2_complex, stable_depth, ArrowSpec, ComplexError,
    GeneratorSpec, Regime, UComplex,
};
use hfk_core::conway::{conway_alexander, ConwayError};
use hfk_core::diagram::{goeritz_signature, signature_with, Color, PlanarDiagram, Side};
use hfk_core::hfk::{
    alternating_hfk, check_conjugation, euler_characteristic, fourball_bounds, genus, kunneth, lspace_staircase,
    mirror_hfk, staircase_to_group, tau, torus_alexander, BigradedGroup, TauRoute,
};
use hfk_core::kauffman::{decorate, outer_edges_of, spanning_tree_count, tait_graph};
use hfk_core::linalg::Matrix;
use hfk_core::obstruction::{
    class_maxima, conjugation_symmetric, definite_form_obstruction, diagonal_form, e8_form, lens_d, lens_plumbing,
    mod2, rho_lens, DefiniteForm, LensSpace, Verdict,
};
use hfk_core::seifert::{braid_seifert_matrix, seifert_alexander, seifert_signature};
use hfk_core::{Polynomial, Rational};

use crate::corpus::{Corpus, CorpusEntry};
use crate::knot::parse_torus_name;

/// Lens spaces `L(p, q)` with `p` up to this bound are checked.
pub const LENS_BOUND: i64 = 25;
/// Plumbing maxima are compared with the recursion up to this `p`.
pub const SHARPNESS_BOUND: i64 = 9;

#[derive(Clone, Debug, Default)]
pub struct Suite {
    pub name: &'static str,
    pub checks: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, ..Default::default() }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn eq<T: PartialEq + Debug>(&mut self, what: impl FnOnce() -> String, got: T, want: T) {
        self.checks += 1;
        if got != want {
            self.failures.push(format!("{}: got {got:?}, expected {want:?}", what()));
        }
    }

    fn fail(&mut self, msg: String) {
        self.checks += 1;
        self.failures.push(msg);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub suites: Vec<Suite>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(Suite::passed)
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        for w in &self.warnings {
            s.push_str(&format!("WARN\t{w}\n"));
        }
        for suite in &self.suites {
            let tag = if suite.passed() { "PASS" } else { "FAIL" };
            s.push_str(&format!(
                "{tag}\t{}\t{} checks\t{} skipped\t{} ms\n",
                suite.name,
                suite.checks,
                suite.skipped,
                suite.elapsed.as_millis()
            ));
            for f in &suite.failures {
                s.push_str(&format!("  {f}\n"));
            }
        }
        s
    }

    pub fn json(&self) -> serde_json::Value {
        json!({
            "passed": self.passed(),
            "warnings": self.warnings,
            "suites": self.suites.iter().map(|s| json!({
                "name": s.name,
                "passed": s.passed(),
                "checks": s.checks,
                "skipped": s.skipped,
                "failures": s.failures,
                "ms": s.elapsed.as_millis() as u64,
            })).collect::<Vec<_>>(),
        })
    }
}

/// A corpus entry with its diagram built.
struct Prepared<'a> {
    entry: &'a CorpusEntry,
    diagram: PlanarDiagram,
}

impl Prepared<'_> {
    fn name(&self) -> &str {
        &self.entry.name
    }
}

type Runner = fn(&mut Suite, &[Prepared]);

pub fn run(corpus: &Corpus) -> Report {
    let mut warnings = Vec::new();
    if corpus.entries.is_empty() {
        warnings.push("corpus is empty; only the fixed suites run".to_string());
    }
    let mut prep_suite = Suite::new("corpus");
    let start = Instant::now();
    let mut prepared = Vec::new();
    for e in &corpus.entries {
        match e.diagram() {
            Ok(d) => {
                prep_suite.checks += 1;
                prepared.push(Prepared { entry: e, diagram: d });
            }
            Err(err) => prep_suite.fail(format!("{}: {err}", e.name)),
        }
    }
    let mut names: Vec<&str> = corpus.entries.iter().map(|e| e.name.as_str()).collect();
    names.sort_unstable();
    for w in names.windows(2).filter(|w| w[0] == w[1]) {
        prep_suite.fail(format!("{}: duplicate entry", w[0]));
    }
    prep_suite.elapsed = start.elapsed();

    let runners: [(&'static str, Runner); 6] = [
        ("diagram", diagram_suite),
        ("kauffman", kauffman_suite),
        ("conway", conway_suite),
        ("hfk", hfk_suite),
        ("complex", |s, _| complex_suite(s)),
        ("obstruction", |s, _| obstruction_suite(s)),
    ];
    let mut suites = vec![prep_suite];
    let prepared = &prepared;
    let results: Vec<Suite> = std::thread::scope(|scope| {
        let handles: Vec<_> = runners
            .iter()
            .map(|&(name, f)| {
                scope.spawn(move || {
                    let mut s = Suite::new(name);
                    let t = Instant::now();
                    f(&mut s, prepared);
                    s.elapsed = t.elapsed();
                    s
                })
            })
            .collect();
        handles
            .into_iter()
            .zip(runners.iter())
            .map(|(h, &(name, _))| {
                h.join().unwrap_or_else(|_| {
                    let mut s = Suite::new(name);
                    s.fail("suite panicked".into());
                    s
                })
            })
            .collect()
    });
    suites.extend(results);
    Report { suites, warnings }
}

fn expected_alexander(s: &mut Suite, p: &Prepared) -> Option<Polynomial> {
    let text = p.entry.expected.alexander.as_ref()?;
    match Polynomial::parse(text, "T") {
        Ok(poly) => Some(poly),
        Err(e) => {
            s.fail(format!("{}: expected alexander {text:?} does not parse: {}", p.name(), e.0));
            None
        }
    }
}

fn state_sum(s: &mut Suite, name: &str, d: &PlanarDiagram, edge: Option<usize>) -> Option<Polynomial> {
    match decorate(d, edge).and_then(|dp| dp.state_sum()) {
        Ok(p) => Some(p),
        Err(e) => {
            s.fail(format!("{name}: state sum failed: {e}"));
            None
        }
    }
}

fn diagram_suite(s: &mut Suite, corpus: &[Prepared]) {
    for p in corpus {
        let d = &p.diagram;
        let n = p.name();
        let faces = d.faces();
        if !d.is_unknot_sentinel() {
            s.eq(|| format!("{n}: face count"), faces.regions.len(), d.crossing_count() + 2);
            let mut incidences = vec![[0usize; 2]; d.edge_count() + 1];
            for r in &faces.regions {
                for &(e, side) in &r.boundary {
                    incidences[e][usize::from(side == Side::Right)] += 1;
                }
            }
            s.check(incidences[1..].iter().all(|c| *c == [1, 1]), || {
                format!("{n}: some edge does not border exactly one region on each side")
            });
            let colors = faces.checkerboard();
            s.check(
                faces.regions.iter().all(|r| {
                    let c = colors[r.id];
                    r.boundary.iter().all(|&(e, side)| {
                        let other = match side {
                            Side::Left => faces.region_right_of(d, e),
                            Side::Right => faces.region_left_of(d, e),
                        };
                        colors[other] != c
                    })
                }),
                || format!("{n}: checkerboard colouring is not proper"),
            );
            match PlanarDiagram::from_tuples(&d.to_tuples()) {
                Ok(back) => s.eq(|| format!("{n}: PD round trip"), back, d.clone()),
                Err(e) => s.fail(format!("{n}: PD round trip failed: {e}")),
            }
        }
        let m = d.mirror();
        s.eq(|| format!("{n}: mirror involution"), m.mirror(), d.clone());
        s.check((0..d.crossing_count()).all(|x| m.sign(x) == d.sign(x).flip()), || {
            format!("{n}: mirror does not negate every crossing sign")
        });
        s.eq(|| format!("{n}: mirror writhe"), m.writhe(), -d.writhe());
        let sigma = goeritz_signature(d);
        s.eq(|| format!("{n}: signature of the mirror"), goeritz_signature(&m), -sigma);
        s.eq(|| format!("{n}: signature from either colouring"), signature_with(d, Color::Black), sigma);
        if let Some(want) = p.entry.expected.signature {
            s.eq(|| format!("{n}: signature"), sigma, want);
        }
        if let Some((w, _)) = p.entry.braid_word() {
            let v = braid_seifert_matrix(&w);
            s.eq(|| format!("{n}: Seifert-matrix signature"), seifert_signature(&v), sigma);
        } else {
            s.skipped += 1;
        }
        if p.entry.expected.alternating == Some(false) && d.is_alternating() {
            s.fail(format!("{n}: diagram alternates but the knot is listed as non-alternating"));
        }
    }
    for (a, b) in small_pairs(corpus) {
        let name = format!("{}#{}", a.name(), b.name());
        match a.diagram.connected_sum(&b.diagram) {
            Ok(sum) => {
                s.eq(|| format!("{name}: writhe additivity"), sum.writhe(), a.diagram.writhe() + b.diagram.writhe());
                s.eq(
                    || format!("{name}: signature additivity"),
                    goeritz_signature(&sum),
                    goeritz_signature(&a.diagram) + goeritz_signature(&b.diagram),
                );
            }
            Err(e) => s.fail(format!("{name}: connected sum failed: {e}")),
        }
    }
}

/// Pairs of nontrivial corpus diagrams with at most five crossings.
fn small_pairs<'a, 'b>(corpus: &'a [Prepared<'b>]) -> Vec<(&'a Prepared<'b>, &'a Prepared<'b>)> {
    let small: Vec<&Prepared> =
        corpus.iter().filter(|p| (1..=5).contains(&p.diagram.crossing_count())).collect();
    let mut out = Vec::new();
    for i in 0..small.len() {
        for j in i..small.len() {
            out.push((small[i], small[j]));
        }
    }
    out
}

fn kauffman_suite(s: &mut Suite, corpus: &[Prepared]) {
    for p in corpus {
        let d = &p.diagram;
        let n = p.name();
        let dp = match decorate(d, None) {
            Ok(dp) => dp,
            Err(e) => {
                s.fail(format!("{n}: decoration failed: {e}"));
                continue;
            }
        };
        let states = dp.states();
        let (bv, be) = tait_graph(d, Color::Black);
        let (wv, we) = tait_graph(d, Color::White);
        let black = spanning_tree_count(bv, &be);
        s.eq(|| format!("{n}: states vs spanning trees"), states.len() as u128, black);
        s.eq(|| format!("{n}: spanning trees of both Tait graphs"), spanning_tree_count(wv, &we), black);
        let Some(delta) = state_sum(s, n, d, None) else { continue };
        let det = delta.eval_i64(-1).map(i64::unsigned_abs);
        if d.is_alternating() && d.is_reduced() {
            s.eq(|| format!("{n}: alternating state count vs determinant"), Some(states.len() as u64), det);
        }
        if let Some(want) = p.entry.expected.determinant {
            s.eq(|| format!("{n}: determinant"), det, Some(want));
        }
        if let Some(want) = expected_alexander(s, p) {
            s.eq(|| format!("{n}: Alexander polynomial"), delta.clone(), want);
        }
        s.eq(|| format!("{n}: Alexander polynomial at 1"), delta.eval_i64(1), Some(1));
        if let Some((w, _)) = p.entry.braid_word() {
            s.eq(|| format!("{n}: Seifert-matrix Alexander polynomial"), seifert_alexander(&braid_seifert_matrix(&w)), delta.clone());
        }
        let faces = d.faces();
        if !d.is_unknot_sentinel() {
            for e in outer_edges_of(d, &faces, faces.unbounded) {
                if let Some(q) = state_sum(s, n, d, Some(e)) {
                    s.eq(|| format!("{n}: state sum with marked edge {e}"), q, delta.clone());
                }
            }
        }
        if let Some(q) = state_sum(s, n, &d.mirror(), None) {
            s.eq(|| format!("{n}: mirror state sum"), q, delta.reflect());
        }
        if d.is_alternating() {
            match dp.gradings() {
                Ok(g) => {
                    let sigma = goeritz_signature(d);
                    s.check(g.iter().all(|(a, m)| a - m == -sigma / 2), || {
                        format!("{n}: A - M is not the constant -sigma/2 = {}", -sigma / 2)
                    });
                }
                Err(e) => s.fail(format!("{n}: gradings failed: {e}")),
            }
        }
    }
    for (a, b) in small_pairs(corpus) {
        let name = format!("{}#{}", a.name(), b.name());
        let Ok(sum) = a.diagram.connected_sum(&b.diagram) else {
            s.fail(format!("{name}: connected sum failed"));
            continue;
        };
        if let (Some(x), Some(y), Some(z)) =
            (state_sum(s, &name, &a.diagram, None), state_sum(s, &name, &b.diagram, None), state_sum(s, &name, &sum, None))
        {
            s.eq(|| format!("{name}: state sum of connected sum"), z, x * y);
        }
    }
}

fn conway_suite(s: &mut Suite, corpus: &[Prepared]) {
    for p in corpus {
        let n = p.name();
        let Some(delta) = state_sum(s, n, &p.diagram, None) else { continue };
        match conway_alexander(&p.diagram) {
            Ok(c) => s.eq(|| format!("{n}: state sum vs skein recursion"), delta, c),
            Err(ConwayError::RecursionBudgetExceeded(_)) => s.skipped += 1,
        }
    }
}

fn group_triples(g: &BigradedGroup) -> Vec<[i64; 3]> {
    let mut v: Vec<[i64; 3]> = g.ranks_descending().into_iter().map(|((a, m), r)| [a, m, r as i64]).collect();
    v.sort();
    v
}

fn hfk_suite(s: &mut Suite, corpus: &[Prepared]) {
    let mut alternating_groups = Vec::new();
    for p in corpus {
        let d = &p.diagram;
        let n = p.name();
        let Some(delta) = state_sum(s, n, d, None) else { continue };
        let sigma = goeritz_signature(d);
        let mut group = None;
        if d.is_alternating() {
            match alternating_hfk(&delta, sigma) {
                Ok(g) => {
                    if let Ok(gr) = decorate(d, None).and_then(|dp| dp.gradings()) {
                        let mut states = gr;
                        states.sort();
                        let mut ms = g.multiset();
                        ms.sort();
                        s.eq(|| format!("{n}: alternating group vs Kauffman states"), ms, states);
                    }
                    s.eq(|| format!("{n}: tau (alternating route)"), tau(&TauRoute::Alternating { sigma }).ok(), Some(-sigma / 2));
                    alternating_groups.push((n.to_string(), g.clone(), sigma));
                    group = Some(g);
                }
                Err(e) => s.fail(format!("{n}: alternating_hfk failed: {e}")),
            }
        } else if p.entry.lspace {
            match lspace_staircase(&delta) {
                Ok(st) => {
                    let g = staircase_to_group(&st);
                    let deg = delta.max_degree().unwrap_or(0);
                    s.eq(|| format!("{n}: staircase genus"), genus(&g).ok(), Some(deg as u64));
                    s.eq(|| format!("{n}: tau (L-space route)"), tau(&TauRoute::LSpace(delta.clone())).ok(), Some(deg));
                    group = Some(g);
                }
                Err(e) => s.fail(format!("{n}: listed as an L-space knot but {e}")),
            }
        } else {
            s.skipped += 1;
        }
        if let Some(g) = &group {
            s.check(check_conjugation(g), || format!("{n}: conjugation symmetry"));
            s.eq(|| format!("{n}: Euler characteristic"), euler_characteristic(g), delta.clone());
            s.eq(|| format!("{n}: mirror involution"), mirror_hfk(&mirror_hfk(g)), g.clone());
            if let Some(want) = &p.entry.expected.hfk {
                let mut want = want.clone();
                want.sort();
                s.eq(|| format!("{n}: knot Floer ranks"), group_triples(g), want);
            }
            if let Some(want) = p.entry.expected.genus {
                s.eq(|| format!("{n}: genus"), genus(g).ok(), Some(want));
            }
        }
        let mut taus = Vec::new();
        if d.is_alternating() {
            taus.push(("alternating", TauRoute::Alternating { sigma }));
        }
        if let Some((tp, tq)) = parse_torus_name(n) {
            taus.push(("torus", TauRoute::Torus { p: tp, q: tq }));
        }
        if let Some((w, strands)) = p.entry.braid_word() {
            if w.iter().all(|&l| l > 0) {
                taus.push(("positive-braid", TauRoute::PositiveBraid { crossings: w.len() as i64, strands: strands as i64 }));
            }
        }
        if p.entry.lspace {
            taus.push(("lspace", TauRoute::LSpace(delta.clone())));
        }
        for (route, r) in &taus {
            match (tau(r), p.entry.expected.tau) {
                (Ok(t), Some(want)) => s.eq(|| format!("{n}: tau by {route} route"), t, want),
                (Ok(_), None) => {}
                (Err(e), _) => s.fail(format!("{n}: {route} tau route failed: {e}")),
            }
        }
        if let (Some(t), Some(g)) = (p.entry.expected.tau, p.entry.expected.genus) {
            s.check(fourball_bounds(t, g as i64).is_ok(), || format!("{n}: |tau| exceeds the genus"));
        }
    }

    // Products of alternating groups: Kunneth laws, and tau additivity.
    let unknot = BigradedGroup::unknot();
    for (i, (na, ga, sa)) in alternating_groups.iter().enumerate().take(6) {
        s.eq(|| format!("{na}: unknot is a Kunneth unit"), kunneth(ga, &unknot).ok(), Some(ga.clone()));
        for (nb, gb, sb) in alternating_groups.iter().skip(i).take(3) {
            let ab = kunneth(ga, gb).ok();
            s.eq(|| format!("{na}#{nb}: Kunneth commutes"), ab.clone(), kunneth(gb, ga).ok());
            if let Some(ab) = &ab {
                let (ta, tb) = (tau(&TauRoute::Alternating { sigma: *sa }), tau(&TauRoute::Alternating { sigma: *sb }));
                let tab = tau(&TauRoute::Alternating { sigma: sa + sb });
                s.eq(|| format!("{na}#{nb}: tau additivity"), tab.ok(), Some(ta.unwrap_or(0) + tb.unwrap_or(0)));
                s.eq(|| format!("{na}#{nb}: Kunneth Euler characteristic"), euler_characteristic(ab), euler_characteristic(ga) * euler_characteristic(gb));
                if let Some((_, gc, _)) = alternating_groups.get(i + 1) {
                    let left = kunneth(ab, gc).ok();
                    let right = kunneth(gb, gc).ok().and_then(|bc| kunneth(ga, &bc).ok());
                    s.eq(|| format!("{na}#{nb}: Kunneth associativity"), left, right);
                }
            }
        }
    }
    for (na, ga, sa) in alternating_groups.iter().filter(|(n, _, _)| n == "3_1") {
        let Some(p) = corpus.iter().find(|p| p.name() == na) else { continue };
        if let Ok(granny) = p.diagram.connected_sum(&p.diagram) {
            let sigma = goeritz_signature(&granny);
            s.eq(|| "granny knot signature".to_string(), sigma, 2 * sa);
            if let Some(delta) = state_sum(s, "granny", &granny, None) {
                let want = alternating_hfk(&delta, sigma).ok();
                s.eq(|| "granny knot Kunneth vs alternating".to_string(), kunneth(ga, ga).ok(), want);
            }
        }
    }

    // Torus knots from the cyclotomic formula.
    for q in 3..=7i64 {
        for p in 2..q {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let want = (p - 1) * (q - 1) / 2;
            let Ok(delta) = torus_alexander(p, q) else {
                s.fail(format!("T({p},{q}): torus Alexander polynomial failed"));
                continue;
            };
            match lspace_staircase(&delta) {
                Ok(st) => {
                    let g = staircase_to_group(&st);
                    s.eq(|| format!("T({p},{q}): staircase genus"), genus(&g).ok(), Some(want as u64));
                    s.check(check_conjugation(&g), || format!("T({p},{q}): staircase conjugation symmetry"));
                    s.eq(|| format!("T({p},{q}): staircase Euler characteristic"), euler_characteristic(&g), delta.clone());
                    let deltas: Vec<i64> = (-st.m()..=st.m()).map(|i| st.delta_at(i)).collect();
                    s.check(deltas.windows(2).all(|w| w[0] < w[1]), || format!("T({p},{q}): staircase gradings not increasing"));
                }
                Err(e) => s.fail(format!("T({p},{q}): {e}")),
            }
            for r in [
                TauRoute::LSpace(delta.clone()),
                TauRoute::Torus { p, q },
                TauRoute::PositiveBraid { crossings: (p - 1) * q, strands: p },
            ] {
                s.eq(|| format!("T({p},{q}): tau by {r:?}"), tau(&r).ok(), Some(want));
            }
        }
    }
    if let Ok(st) = torus_alexander(3, 4).and_then(|d| lspace_staircase(&d)) {
        let support: Vec<[i64; 3]> = group_triples(&staircase_to_group(&st));
        s.eq(
            || "T(3,4) staircase support".to_string(),
            support,
            vec![[-3, -6, 1], [-2, -5, 1], [0, -2, 1], [2, -1, 1], [3, 0, 1]],
        );
    }
}

fn unit_arrows(c: &UComplex) -> Vec<(usize, usize)> {
    c.arrows().filter(|&(_, _, k, coef)| k == 0 && coef.abs() == 1).map(|(x, y, _, _)| (x, y)).collect()
}

fn complex_suite(s: &mut Suite) {
    let fixtures = [
        ("single generator", single_generator_complex()),
        ("sphere genus 1", sphere_genus1_complex()),
        ("sphere genus 2, a < b", sphere_genus2_complex(Regime::ALessB)),
        ("sphere genus 2, a > b", sphere_genus2_complex(Regime::AGreaterB)),
    ];
    for (name, c) in &fixtures {
        s.check(build_complex(&c.spec()).is_ok(), || format!("{name}: d^2 = 0 fails on rebuild"));
        let hat = hat_homology(c);
        s.eq(|| format!("{name}: hat homology rank"), hat.total_rank(), 1);
        let signed: i64 = c.gradings().iter().map(|g| if g.rem_euclid(2) == 0 { 1 } else { -1 }).sum();
        s.eq(|| format!("{name}: hat Euler characteristic"), hat.euler_characteristic(), signed);
        for (x, y) in unit_arrows(c) {
            match c.cancel_arrow(x, y) {
                Ok(r) => s.eq(|| format!("{name}: hat homology after cancelling an arrow"), hat_homology(&r), hat.clone()),
                Err(e) => s.fail(format!("{name}: cancellation failed: {e}")),
            }
        }
        match stable_depth(c, 12) {
            Some(b) => {
                let w = head_window(c);
                let heads = flavor_homologies(c, b).heads(w);
                for b2 in b + 1..b + 4 {
                    s.eq(|| format!("{name}: flavour heads at depth {b2}"), flavor_homologies(c, b2).heads(w), heads.clone());
                }
            }
            None => s.fail(format!("{name}: flavours do not stabilize by depth 12")),
        }
        for b in 1..=4 {
            s.check(exactness_check(c, b), || format!("{name}: exact sequences fail at depth {b}"));
        }
    }
    let g1 = sphere_genus1_complex();
    let gens = hat_homology_generators(&g1);
    s.eq(|| "sphere genus 1: hat generator".to_string(), gens.get(&0).cloned(), Some(vec![vec![1, 0, 1]]));
    let bad = hfk_core::complex::ComplexSpec {
        generators: vec![
            GeneratorSpec { name: "a".into(), grading: 2 },
            GeneratorSpec { name: "b".into(), grading: 1 },
            GeneratorSpec { name: "c".into(), grading: 0 },
        ],
        differential: vec![
            ArrowSpec { from: "a".into(), to: "b".into(), coeff: 1, upower: 0 },
            ArrowSpec { from: "b".into(), to: "c".into(), coeff: 1, upower: 0 },
        ],
        ring: Default::default(),
    };
    s.check(matches!(build_complex(&bad), Err(ComplexError::DSquaredNonzero { .. })), || {
        "a complex with d^2 != 0 was accepted".to_string()
    });
}

fn obstruction_suite(s: &mut Suite) {
    let r = Rational::new;
    s.eq(|| "d(L(2,1))".to_string(), LensSpace::new(2, 1).map(|l| lens_d(l).values).ok(), Some(vec![r(1, 4), r(-1, 4)]));
    s.eq(|| "d(S^3)".to_string(), lens_d(LensSpace::sphere()).values, vec![r(0, 1)]);
    for p in 2..=LENS_BOUND {
        for q in 1..p {
            let Ok(l) = LensSpace::new(p, q) else { continue };
            let table = lens_d(l);
            let rho = rho_lens(l);
            s.check(table.values.iter().all(|d| rho.contains(&mod2(*d))), || {
                format!("L({p},{q}): a correction term lies outside the rho classes")
            });
            s.check(conjugation_symmetric(&table), || format!("L({p},{q}): not conjugation symmetric"));
            if p <= SHARPNESS_BOUND {
                let mut maxima: Vec<Rational> = class_maxima(&lens_plumbing(l)).into_values().collect();
                maxima.sort();
                let mut d = table.values.clone();
                d.sort();
                s.eq(|| format!("L({p},{q}): plumbing maxima vs correction terms"), maxima, d);
            }
        }
    }
    let zero = [Rational::from_integer(0)];
    for n in 1..=8 {
        match DefiniteForm::new(diagonal_form(n)).map(|f| definite_form_obstruction(&f, &zero)) {
            Ok(Ok(v)) => s.eq(|| format!("diagonal rank {n} at d = 0"), v, Verdict::Passes { m: Rational::from_integer(0) }),
            _ => s.fail(format!("diagonal rank {n}: form rejected")),
        }
    }
    let e8 = e8_form();
    let changed = change_basis(&e8);
    for (name, q) in [("E8", e8), ("E8 in another basis", changed)] {
        match DefiniteForm::new(q) {
            Ok(f) => {
                let at0 = definite_form_obstruction(&f, &zero).ok();
                s.check(at0.as_ref().is_some_and(|v| v.is_obstructed()), || format!("{name}: not obstructed at d = 0"));
                let at2 = definite_form_obstruction(&f, &[Rational::from_integer(2)]).ok();
                s.eq(|| format!("{name} at d = 2"), at2, Some(Verdict::Passes { m: Rational::from_integer(8) }));
            }
            Err(e) => s.fail(format!("{name}: {e}")),
        }
    }
}

/// `P^T Q P` for a fixed unimodular `P`.
fn change_basis(q: &Matrix<i64>) -> Matrix<i64> {
    let n = q.rows();
    let mut p = Matrix::<i64>::identity(n);
    for i in 0..n - 1 {
        p[(i, i + 1)] = if i % 2 == 0 { 1 } else { -2 };
    }
    p[(n - 1, 0)] = 0;
    p.transpose().mul(q).mul(&p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_signature_is_named() {
        let mut c = Corpus::bundled();
        c.entries.retain(|e| ["3_1", "4_1"].contains(&e.name.as_str()));
        c.entries[0].expected.signature = Some(2);
        let r = run(&c);
        assert!(!r.passed());
        let diagram = r.suites.iter().find(|s| s.name == "diagram").unwrap();
        assert!(diagram.failures.iter().any(|f| f.starts_with("3_1: signature")), "{:?}", diagram.failures);
    }

    #[test]
    fn empty_corpus_warns_and_passes() {
        let r = run(&Corpus::default());
        assert!(r.passed(), "{}", r.text());
        assert_eq!(r.warnings.len(), 1);
        assert!(r.text().starts_with("WARN\t"));
    }
}
