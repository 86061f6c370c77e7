//! Verification suites. Each suite is deterministic given its seed and
//! reports failures with a small certificate (a diagram, possibly with a
//! sequence of events) that re-runs to the same failure.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cocycle::{evaluate_closed, evaluate_r, Loop};
use crate::error::{Error, Result};
use crate::formula::{p02_formula, v3, v3_formula, bracket};
use crate::gauss::{DiagramJson, EndKind, GaussDiagram};
use crate::identities::{verify_bracket_identity, BracketIdentity};
use crate::loopgen::meridian::{
    trace, cube_meridians, cusp_meridians, listed_cases, mark_distributions, meridian_commutation, parse_marks, CubeScenario,
    QuadrupleScenario, QuadrupleType, Role,
};
use crate::planar::even_interlacement;
use crate::loopgen::random::{gaps, is_realizable, random_move, random_realizable, random_walk};
use crate::loopgen::{knots, push_loop, BraidWord};
use crate::moves::{classify_triple, r3_sites, GlobalType, MoveEvent, MoveKind};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 1729;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    Invariance,
    Commutation,
    Cube,
    Tetrahedron,
    LemmaMarking,
    PushV3,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Identities,
        Suite::Invariance,
        Suite::Commutation,
        Suite::Cube,
        Suite::Tetrahedron,
        Suite::LemmaMarking,
        Suite::PushV3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Invariance => "invariance",
            Suite::Commutation => "commutation",
            Suite::Cube => "cube",
            Suite::Tetrahedron => "tetrahedron",
            Suite::LemmaMarking => "lemma-marking",
            Suite::PushV3 => "push-v3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Number of random cases drawn when no count is given.
    pub fn default_count(self) -> usize {
        match self {
            Suite::Identities => 50,
            Suite::Invariance => 200,
            Suite::Commutation => 50,
            Suite::Cube => 12,
            Suite::Tetrahedron => 0,
            Suite::LemmaMarking => 100,
            Suite::PushV3 => 0,
        }
    }
}

/// What a certificate claims to be broken.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Check {
    /// the formula changes its value across the single event
    Invariant { formula: String },
    /// the two sides of the identity differ on the diagram
    Identity { identity: BracketIdentity },
    /// R is not zero on the closed loop
    Cocycle { n: usize, a: usize },
    /// R on the loop differs from `expected`
    Push { n: usize, a: usize, expected: i64 },
    /// the first endpoint of `arrow` from the base point disagrees with its marking
    LemmaMarking { arrow: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(flatten)]
    pub check: Check,
    pub diagram: DiagramJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub events: Vec<MoveEvent>,
}

impl Certificate {
    fn new(check: Check, g: &GaussDiagram, events: Vec<MoveEvent>) -> Self {
        Certificate { check, diagram: g.to_json(), events }
    }

    fn of_loop(check: Check, l: &Loop) -> Self {
        Certificate::new(check, &l.start, l.events.clone())
    }

    /// Re-runs the check; true if the failure is still there.
    pub fn reproduces(&self) -> Result<bool> {
        let g = GaussDiagram::from_json(&self.diagram)?;
        let l = Loop { start: g.clone(), events: self.events.clone() };
        Ok(match &self.check {
            Check::Invariant { formula } => {
                let f = match formula.as_str() {
                    "v3" => v3_formula(),
                    "p02" => p02_formula(),
                    other => return Err(Error::Other(format!("unknown formula {other}"))),
                };
                bracket(&f, &g) != bracket(&f, &l.end()?)
            }
            Check::Identity { identity } => !verify_bracket_identity(*identity, &g),
            Check::Cocycle { n, a } => cocycle_failure(&l, *n, *a).is_some(),
            Check::Push { n, a, expected } => evaluate_r(&l, *n, *a).map(|e| e.r != *expected).unwrap_or(true),
            Check::LemmaMarking { arrow } => lemma_holds(&g, *arrow).map(|ok| !ok).unwrap_or(true),
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Failure {
    pub case: String,
    pub message: String,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Tally {
    pub passed: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    /// per group of cases, in a fixed order
    pub groups: BTreeMap<String, Tally>,
    pub notes: Vec<String>,
    pub failures: Vec<Failure>,
}

impl Report {
    fn new(suite: Suite, seed: u64) -> Self {
        Report { suite, seed, cases: 0, groups: BTreeMap::new(), notes: Vec::new(), failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, group: &str, case: String, failure: Option<(String, Certificate)>) {
        self.cases += 1;
        let t = self.groups.entry(group.to_string()).or_default();
        t.total += 1;
        match failure {
            None => t.passed += 1,
            Some((message, certificate)) => self.failures.push(Failure { case, message, certificate }),
        }
    }

    /// Plain text, one fact per line.
    pub fn render(&self) -> String {
        let mut s = format!("suite {} seed {}\n", self.suite.name(), self.seed);
        for (g, t) in &self.groups {
            s += &format!("  {g}: {}/{}\n", t.passed, t.total);
        }
        for n in &self.notes {
            s += &format!("  note: {n}\n");
        }
        for f in &self.failures {
            s += &format!("FAIL {}: {}\n", f.case, f.message);
            s += &format!("  certificate: {}\n", serde_json::to_string(&f.certificate).unwrap());
        }
        s += &format!("{} cases, {} failures: {}\n", self.cases, self.failures.len(), if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

pub fn run_suite(suite: Suite, seed: u64, count: Option<usize>) -> Result<Report> {
    let count = count.unwrap_or(suite.default_count());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report::new(suite, seed);
    match suite {
        Suite::Identities => identities(&mut r, &mut rng, count)?,
        Suite::Invariance => invariance(&mut r, &mut rng, count)?,
        Suite::Commutation => commutation(&mut r, &mut rng, count)?,
        Suite::Cube => cube(&mut r, &mut rng, count)?,
        Suite::Tetrahedron => tetrahedron(&mut r)?,
        Suite::LemmaMarking => lemma_marking(&mut r, &mut rng, count)?,
        Suite::PushV3 => push_v3(&mut r)?,
    }
    Ok(r)
}

/// Why R fails to vanish on a loop, if it does.
pub fn cocycle_failure(l: &Loop, n: usize, a: usize) -> Option<String> {
    match evaluate_closed(l, n, a) {
        Ok(e) if e.r == 0 => None,
        Ok(e) => Some(format!("R = {} (contributions {:?})", e.r, e.contributing_events)),
        Err(e) => Some(e.to_string()),
    }
}

fn check_loop(r: &mut Report, group: &str, case: String, l: &Loop, n: usize, a: usize) {
    let failure = cocycle_failure(l, n, a).map(|m| (m, Certificate::of_loop(Check::Cocycle { n, a }, l)));
    r.record(group, case, failure);
}

/// Diagrams met by the push loops of the named knots, with two strands.
pub fn push_pool() -> Result<Vec<GaussDiagram>> {
    let mut pool = Vec::new();
    for name in knots::NAMES {
        let k = knots::get(name).unwrap();
        pool.extend(push_loop(&k, 2, &BraidWord::cyclic(2), 1)?.diagrams()?);
    }
    Ok(pool)
}

fn identities(r: &mut Report, rng: &mut ChaCha8Rng, count: usize) -> Result<()> {
    for i in 0..count {
        let g = random_realizable(rng, 8)?;
        for id in BracketIdentity::ALL {
            let failure = (!verify_bracket_identity(id, &g)).then(|| {
                let small = shrink(&g, |h| is_realizable(h) && !verify_bracket_identity(id, h));
                ("the two sides differ".to_string(), Certificate::new(Check::Identity { identity: id }, &small, vec![]))
            });
            r.record(id.name(), format!("{} #{i} {g}", id.name()), failure);
        }
    }
    Ok(())
}

/// Greedily removes arrows while `bad` still holds.
fn shrink(g: &GaussDiagram, bad: impl Fn(&GaussDiagram) -> bool) -> GaussDiagram {
    let mut cur = g.clone();
    loop {
        let next = cur.arrow_ids().map(|a| cur.without(&[a].into())).find(|h| bad(h));
        match next {
            Some(h) => cur = h,
            None => return cur,
        }
    }
}

/// The random walks of the invariance suite: half from the trefoil, half
/// from the figure-eight knot, each of length at most 20.
pub fn invariance_walks(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Loop>> {
    let starts = [knots::get("right-trefoil").unwrap(), knots::get("figure-eight").unwrap()];
    (0..count)
        .map(|i| {
            let len = rng.gen_range(1..=20);
            random_walk(&starts[i % 2], len, rng, 10)
        })
        .collect()
}

fn invariance(r: &mut Report, rng: &mut ChaCha8Rng, count: usize) -> Result<()> {
    let (fv, fp) = (v3_formula(), p02_formula());
    let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, l) in invariance_walks(rng, count)?.iter().enumerate() {
        let ds = l.diagrams()?;
        for e in &l.events {
            *kinds.entry(e.kind.name()).or_default() += 1;
        }
        for (name, f) in [("v3", &fv), ("p02", &fp)] {
            let values: Vec<i64> = ds.iter().map(|d| bracket(f, d)).collect();
            let failure = values.windows(2).position(|w| w[0] != w[1]).map(|k| {
                let cert = Certificate::new(Check::Invariant { formula: name.into() }, &ds[k], vec![l.events[k].clone()]);
                (format!("{name} goes from {} to {} at event {k}", values[k], values[k + 1]), cert)
            });
            r.record(name, format!("{name} walk #{i} from {}", l.start), failure);
        }
    }
    let kinds: Vec<String> = kinds.iter().map(|(k, v)| format!("{k} {v}")).collect();
    r.notes.push(format!("moves used: {}", kinds.join(", ")));
    Ok(())
}

/// Commutation squares: a Reidemeister III move p and a second move q far
/// from it, on diagrams near the push loops.
pub fn commutation_loops(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Loop>> {
    let pool = push_pool()?;
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 200 * count.max(1) {
        tries += 1;
        let g = pool.choose(rng).unwrap();
        let steps = rng.gen_range(0..4);
        let g = random_walk(g, steps, rng, 30)?.end()?;
        let sites = r3_sites(&g);
        let Some(p) = sites.choose(rng) else { continue };
        let q = if rng.gen_bool(0.5) {
            match sites.choose(rng).map(|t| MoveEvent::r3_in(&g, t.arrows())) {
                Some(Ok(e)) => e,
                _ => continue,
            }
        } else {
            match random_move(&g, rng, 40) {
                Some(e) => e,
                None => continue,
            }
        };
        let Ok(l) = meridian_commutation(&g, p.arrows(), &q) else { continue };
        if l.diagrams()?.iter().all(is_realizable) {
            out.push(l);
        }
    }
    Ok(out)
}

fn commutation(r: &mut Report, rng: &mut ChaCha8Rng, count: usize) -> Result<()> {
    let ls = commutation_loops(rng, count)?;
    for (i, l) in ls.iter().enumerate() {
        let group = format!("R3 with {}", l.events[1].kind.name());
        check_loop(r, &group, format!("square #{i} at {}", l.start), l, 2, 1);
    }
    if ls.len() < count {
        r.notes.push(format!("only {} of {count} squares found", ls.len()));
    }
    Ok(())
}

/// Every local cube scenario for n marks: each role, X above or below Y,
/// every orientation, both circle orders, every distribution of the marks.
pub fn cube_scenarios(n: usize) -> Vec<CubeScenario> {
    let mut out = Vec::new();
    for q in Role::ALL {
        for x_above in [true, false] {
            for rev in 0..8u8 {
                for z_last in [true, false] {
                    for m in mark_distributions(n, 3) {
                        for base in 0..n.max(1) {
                            out.push(CubeScenario {
                                q,
                                x_above,
                                reversed: [rev & 1 != 0, rev & 2 != 0, rev & 4 != 0],
                                z_last,
                                marks: [m[0], m[1], m[2]],
                                base,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

fn role_name(q: Role) -> &'static str {
    match q {
        Role::D => "d",
        Role::Hm => "hm",
        Role::Ml => "ml",
    }
}

/// The role played by the bigon arrows in the first triple point of a cube
/// meridian found in an ambient diagram.
fn ambient_role(l: &Loop) -> Result<&'static str> {
    let ds = l.diagrams()?;
    let (k, e) = l.events.iter().enumerate().find(|(_, e)| e.kind == MoveKind::R3).unwrap();
    let t = classify_triple(&ds[k], [e.arrows[0], e.arrows[1], e.arrows[2]])?;
    let bigon = &l.events[0].arrows;
    Ok(if bigon.contains(&t.triangle.d) {
        "d"
    } else if bigon.contains(&t.triangle.hm) {
        "hm"
    } else {
        "ml"
    })
}

/// Cube meridians found inside `count` diagrams drawn from the push pool.
pub fn ambient_cube_loops(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Loop>> {
    let pool = push_pool()?;
    let mut out = Vec::new();
    for g in pool.choose_multiple(rng, count.min(pool.len())) {
        out.extend(cube_meridians(g)?);
    }
    Ok(out)
}

/// Cusp meridians inside `count` diagrams drawn from the push pool, over
/// every pair of gaps.
pub fn cusp_loops(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Loop>> {
    let mut pool = push_pool()?;
    pool.push(GaussDiagram::unknot());
    let mut out = Vec::new();
    for g in pool.choose_multiple(rng, count.min(pool.len())) {
        let gs = gaps(g);
        for &on in &gs {
            for &from in &gs {
                if on != from {
                    out.extend(cusp_meridians(g, on, from)?);
                }
            }
        }
    }
    Ok(out)
}

fn cube(r: &mut Report, rng: &mut ChaCha8Rng, count: usize) -> Result<()> {
    for s in cube_scenarios(2) {
        let l = s.meridian()?;
        let group = format!("local q={} {}", role_name(s.q), if s.x_above { "above" } else { "below" });
        check_loop(r, &group, format!("{s:?}"), &l, 2, 1);
    }
    for (i, l) in ambient_cube_loops(rng, count)?.iter().enumerate() {
        let group = format!("ambient q={}", ambient_role(l)?);
        check_loop(r, &group, format!("ambient cube #{i} at {}", l.start), l, 2, 1);
    }
    for (i, l) in cusp_loops(rng, count)?.iter().enumerate() {
        check_loop(r, "cusp", format!("cusp #{i} at {}", l.start), l, 2, 1);
    }
    Ok(())
}

/// Every positive quadruple-point scenario with n marks: all types, all
/// distributions of the marks, all positions of the base point.
pub fn tetrahedron_scenarios(n: usize) -> Vec<QuadrupleScenario> {
    let mut out = Vec::new();
    for kind in QuadrupleType::ALL {
        for m in mark_distributions(n, 4) {
            for base in 0..n.max(1) {
                out.push(QuadrupleScenario::positive(kind, [m[0], m[1], m[2], m[3]], base));
            }
        }
    }
    out
}

/// Every quadruple-point scenario with n marks, over all slope orders and
/// orientations of the four branches, whose meridian stays realizable.
pub fn realizable_tetrahedron_loops(n: usize) -> Result<Vec<(QuadrupleScenario, Loop)>> {
    let mut slopes = Vec::new();
    for p in 0..256usize {
        let s = [p & 3, p >> 2 & 3, p >> 4 & 3, p >> 6 & 3];
        if (0..4).all(|k| s.contains(&k)) {
            slopes.push(s);
        }
    }
    let mut out = Vec::new();
    for kind in QuadrupleType::ALL {
        for m in mark_distributions(n, 4) {
            for base in 0..n.max(1) {
                for &sl in &slopes {
                    for rev in 0..16u8 {
                        let s = QuadrupleScenario {
                            kind,
                            marks: [m[0], m[1], m[2], m[3]],
                            base,
                            slopes: sl,
                            reversed: std::array::from_fn(|i| rev >> i & 1 == 1),
                        };
                        let states = s.states()?;
                        // a curve in the annulus is a planar curve
                        if states.iter().all(|d| even_interlacement(d) && is_realizable(d)) {
                            out.push((s, trace(&states)?));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn tetrahedron(r: &mut Report) -> Result<()> {
    for (n, a_values) in [(2, vec![1]), (3, vec![1, 2])] {
        for a in a_values {
            let listed: Vec<(QuadrupleType, [usize; 4])> = QuadrupleType::ALL
                .iter()
                .flat_map(|&k| listed_cases(k).iter().map(move |c| (k, *c)))
                .map(|(k, c)| Ok((k, parse_marks(c, n, a)?)))
                .collect::<Result<_>>()?;
            for s in tetrahedron_scenarios(n) {
                let l = s.meridian()?;
                let tag = if listed.contains(&(s.kind, s.marks)) { "listed" } else { "other" };
                let group = format!("positive n={n} a={a} type {:?} {tag}", s.kind);
                check_loop(r, &group, format!("{s:?} n={n} a={a}"), &l, n, a);
                if s.kind == QuadrupleType::VI {
                    let ds = l.diagrams()?;
                    for (k, e) in l.events.iter().enumerate() {
                        let t = classify_triple(&ds[k], [e.arrows[0], e.arrows[1], e.arrows[2]])?;
                        if t.global != GlobalType::L {
                            return Err(Error::Other(format!("type VI triple point of global type r in {s:?}")));
                        }
                    }
                }
            }
        }
    }
    for (s, l) in realizable_tetrahedron_loops(2)? {
        let tag = if listed_cases(s.kind).iter().any(|c| parse_marks(c, 2, 1).ok() == Some(s.marks)) { "listed" } else { "other" };
        check_loop(r, &format!("realizable type {:?} {tag}", s.kind), format!("{s:?}"), &l, 2, 1);
    }
    r.notes.push("type VI: every triple point is of global type l".into());
    r.notes.push("positive scenarios are closed up without extra crossings and are not realizable".into());
    Ok(())
}

/// For a persistent arrow of a diagram with marks: the foot comes first from
/// the base point exactly when the marking is n.
pub fn lemma_holds(g: &GaussDiagram, arrow: u32) -> Result<bool> {
    let m = g.marking(arrow)?;
    let first = g.first_endpoint_from_infinity(arrow)?;
    Ok((first == EndKind::Foot) == (m == g.n()))
}

/// Checks every persistent arrow of every diagram with marks; returns the
/// number of arrows checked and the failures.
pub fn check_lemma(ds: &[GaussDiagram]) -> Result<(usize, Vec<(GaussDiagram, u32)>)> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for g in ds.iter().filter(|g| g.n() > 0) {
        for a in g.arrow_ids() {
            if g.is_persistent(a)? {
                checked += 1;
                if !lemma_holds(g, a)? {
                    bad.push((g.clone(), a));
                }
            }
        }
    }
    Ok((checked, bad))
}

fn lemma_marking(r: &mut Report, rng: &mut ChaCha8Rng, count: usize) -> Result<()> {
    let mut sources: Vec<(&str, Vec<GaussDiagram>)> = vec![("push", push_pool()?)];
    let mut ds = Vec::new();
    for s in tetrahedron_scenarios(2) {
        ds.extend(s.meridian()?.diagrams()?);
    }
    sources.push(("tetrahedron", ds));
    let mut ds = Vec::new();
    for s in cube_scenarios(2) {
        ds.extend(s.meridian()?.diagrams()?);
    }
    sources.push(("cube", ds));
    let mut ds = Vec::new();
    for l in commutation_loops(rng, count / 4)? {
        ds.extend(l.diagrams()?);
    }
    sources.push(("commutation", ds));
    let pool = push_pool()?;
    let mut ds = Vec::new();
    for _ in 0..count {
        let len = rng.gen_range(1..=20);
        ds.extend(random_walk(pool.choose(rng).unwrap(), len, rng, 30)?.diagrams()?);
    }
    sources.push(("random walks", ds));
    for (name, ds) in sources {
        let mut seen = std::collections::BTreeSet::new();
        for g in ds.iter().filter(|g| g.n() > 0 && is_realizable(g)) {
            if !seen.insert(g.to_string()) {
                continue;
            }
            let (_, bad) = check_lemma(std::slice::from_ref(g))?;
            let failure = bad.first().map(|(h, a)| {
                (format!("arrow {a}: first endpoint disagrees with its marking"), Certificate::new(Check::LemmaMarking { arrow: *a }, h, vec![]))
            });
            r.record(name, format!("{name} {g}"), failure);
        }
    }
    Ok(())
}

fn push_v3(r: &mut Report) -> Result<()> {
    for name in knots::NAMES {
        let k = knots::get(name).unwrap();
        let l = push_loop(&k, 2, &BraidWord::cyclic(2), 1)?;
        let expected = v3(&k);
        let check = Check::Push { n: 2, a: 1, expected };
        let failure = match evaluate_closed(&l, 2, 1) {
            Ok(e) if e.r == expected => None,
            Ok(e) => Some(format!("R = {} but v3 = {expected}", e.r)),
            Err(e) => Some(e.to_string()),
        };
        r.record("push", name.to_string(), failure.map(|m| (m, Certificate::of_loop(check, &l))));
    }
    Ok(())
}
