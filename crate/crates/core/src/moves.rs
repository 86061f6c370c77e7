//! Reidemeister moves as rewrites of Gauss diagrams, classification of
//! Reidemeister III triangles, and passes of a crossing through the disc at
//! infinity.
//!
//! Arrow ids survive every move, so a loop can follow a crossing around.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{enumerate_matches, Formula};
use crate::gauss::{ArrowId, GaussDiagram, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GlobalType {
    #[serde(rename = "r")]
    R,
    #[serde(rename = "l")]
    L,
}

/// One branch of a triangle: two adjacent endpoints on a circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Branch {
    circle: usize,
    /// index of the earlier of the two endpoints; the other one is at `at + 1`
    at: usize,
}

/// The three arrows of a Reidemeister III triangle. `d` joins the highest
/// and lowest branch, `hm` the highest and middle, `ml` the middle and lowest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub d: ArrowId,
    pub hm: ArrowId,
    pub ml: ArrowId,
    /// writhes (w(d), w(hm), w(ml))
    pub signs: (i8, i8, i8),
    /// Order of the endpoints on the top, middle and bottom branch:
    /// hm before d on top, hm before ml in the middle, d before ml at the
    /// bottom.
    pub order: (bool, bool, bool),
    top: Branch,
    middle: Branch,
    bottom: Branch,
}

impl Triangle {
    pub fn arrows(&self) -> [ArrowId; 3] {
        [self.d, self.hm, self.ml]
    }

    /// 1..8; type 1 has three positive crossings.
    pub fn local_type(&self) -> u8 {
        local_type(self.signs)
    }

    /// Which side of the Reidemeister III stratum the diagram lies on:
    /// +1 on the side the coorientation points to.
    pub fn side(&self) -> i8 {
        side(self.signs, self.order)
    }
}

pub fn local_type(signs: (i8, i8, i8)) -> u8 {
    let (d, hm, ml) = signs;
    1 + 4 * (hm < 0) as u8 + 2 * (d < 0) as u8 + (ml < 0) as u8
}

/// The endpoint orders that three straight lines in general position can
/// produce, for given writhes. For each sign triple exactly two patterns
/// occur, and they are exchanged by the move.
pub fn legal_order(signs: (i8, i8, i8), order: (bool, bool, bool)) -> bool {
    let (d, hm, ml) = signs;
    let (t, m, b) = order;
    (t ^ m) == (d != ml) && (t ^ b) == (hm != ml)
}

/// Coorientation of the stratum. Seen in the plane, the positive side is the
/// one where the crossing `ml` lies to the left of the top branch if
/// w(ml) = +1, and to its right if w(ml) = -1.
pub fn side(signs: (i8, i8, i8), order: (bool, bool, bool)) -> i8 {
    let (d, hm, ml) = signs;
    let ml_right_of_top = order.0 ^ (d * hm * ml > 0);
    if ml_right_of_top {
        -ml
    } else {
        ml
    }
}

/// A classified triangle of a one-circle diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePoint {
    pub triangle: Triangle,
    pub global: GlobalType,
    /// ([d], [hm], [ml])
    pub markings: (usize, usize, usize),
    /// whether the base point lies on the arc d+ (from the head of d to its foot)
    pub base_on_d_plus: bool,
}

impl TriplePoint {
    pub fn local_type(&self) -> u8 {
        self.triangle.local_type()
    }
}

/// Finds the branches of a triangle formed by three arrows. Returns every
/// legal reading (there is almost always exactly one).
pub fn find_triangles(g: &GaussDiagram, arrows: [ArrowId; 3]) -> Result<Vec<Triangle>> {
    let set: BTreeSet<ArrowId> = arrows.iter().copied().collect();
    if set.len() != 3 {
        return Err(Error::NotTriangle("three distinct arrows are needed".into()));
    }
    let mut ends: Vec<(usize, usize, Point)> = Vec::new();
    for &a in &arrows {
        let loc = g.locate(a)?;
        ends.push((loc.foot.0, loc.foot.1, Point::Foot(a)));
        ends.push((loc.head.0, loc.head.1, Point::Head(a)));
    }
    ends.sort();
    let mut out = Vec::new();
    let mut pairs = Vec::new();
    pairings(&ends, &mut vec![false; 6], &mut pairs, &mut |ps| {
        if let Some(t) = triangle_of(g, ps) {
            if legal_order(t.signs, t.order) {
                out.push(t);
            }
        }
    });
    Ok(out)
}

type End = (usize, usize, Point);

fn pairings(ends: &[End], used: &mut Vec<bool>, acc: &mut Vec<(End, End)>, f: &mut dyn FnMut(&[(End, End)])) {
    let Some(i) = used.iter().position(|u| !u) else {
        f(acc);
        return;
    };
    used[i] = true;
    for j in i + 1..ends.len() {
        if used[j] {
            continue;
        }
        let (a, b) = (ends[i], ends[j]);
        if a.0 != b.0 || b.1 != a.1 + 1 || a.2.arrow() == b.2.arrow() {
            continue;
        }
        used[j] = true;
        acc.push((a, b));
        pairings(ends, used, acc, f);
        acc.pop();
        used[j] = false;
    }
    used[i] = false;
}

fn triangle_of(g: &GaussDiagram, ps: &[(End, End)]) -> Option<Triangle> {
    let is_head = |p: Point| matches!(p, Point::Head(_));
    let mut top = None;
    let mut bottom = None;
    let mut middle = None;
    for &(a, b) in ps {
        match (is_head(a.2), is_head(b.2)) {
            (true, true) => top = Some((a, b)),
            (false, false) => bottom = Some((a, b)),
            _ => middle = Some((a, b)),
        }
    }
    let (top, bottom, middle) = (top?, bottom?, middle?);
    let tops = [top.0 .2.arrow()?, top.1 .2.arrow()?];
    let bots = [bottom.0 .2.arrow()?, bottom.1 .2.arrow()?];
    let d = *tops.iter().find(|x| bots.contains(x))?;
    let hm = *tops.iter().find(|x| **x != d)?;
    let ml = *bots.iter().find(|x| **x != d)?;
    if middle.0 .2 == Point::Foot(hm) && middle.1 .2 == Point::Head(ml) {
        // hm first on the middle branch
    } else if !(middle.0 .2 == Point::Head(ml) && middle.1 .2 == Point::Foot(hm)) {
        return None;
    }
    let order = (top.0 .2 == Point::Head(hm), middle.0 .2 == Point::Foot(hm), bottom.0 .2 == Point::Foot(d));
    let s = |a| g.signs()[&a];
    let br = |p: (End, End)| Branch { circle: p.0 .0, at: p.0 .1 };
    Some(Triangle {
        d,
        hm,
        ml,
        signs: (s(d), s(hm), s(ml)),
        order,
        top: br(top),
        middle: br(middle),
        bottom: br(bottom),
    })
}

/// The unique legal triangle on three arrows.
pub fn triangle(g: &GaussDiagram, arrows: [ArrowId; 3]) -> Result<Triangle> {
    let mut ts = find_triangles(g, arrows)?;
    match ts.len() {
        0 => Err(Error::NotTriangle(format!("arrows {arrows:?} do not bound a Reidemeister III triangle"))),
        1 => Ok(ts.pop().unwrap()),
        _ => Err(Error::NotTriangle(format!("arrows {arrows:?} bound several triangles"))),
    }
}

/// Classifies a triangle of a diagram whose three branches lie on the base
/// circle. Global type r means the branches are met in the cyclic order
/// top, bottom, middle along the circle.
pub fn classify_triple(g: &GaussDiagram, arrows: [ArrowId; 3]) -> Result<TriplePoint> {
    let t = triangle(g, arrows)?;
    let b = g.base_circle();
    if [t.top, t.middle, t.bottom].iter().any(|x| x.circle != b) {
        return Err(Error::NotTriangle("the branches are not on the base circle".into()));
    }
    let mut pos = [(t.top.at, 'T'), (t.middle.at, 'M'), (t.bottom.at, 'B')];
    pos.sort();
    let k = pos.iter().position(|p| p.1 == 'T').unwrap();
    let global = if pos[(k + 1) % 3].1 == 'B' { GlobalType::R } else { GlobalType::L };
    let markings = (g.marking(t.d)?, g.marking(t.hm)?, g.marking(t.ml)?);
    let loc = g.locate(t.d)?;
    let base_on_d_plus = loc.foot.1 < loc.head.1;
    Ok(TriplePoint { triangle: t, global, markings, base_on_d_plus })
}

/// Sign with which a move out of `g` through the triangle crosses the
/// stratum: +1 when it follows the coorientation.
pub fn r3_sign(t: &Triangle) -> i8 {
    // the move lands on the opposite side
    -t.side()
}

/// Performs the Reidemeister III move on the triangle: each branch has its
/// two endpoints exchanged.
pub fn apply_r3(g: &GaussDiagram, arrows: [ArrowId; 3]) -> Result<GaussDiagram> {
    let t = triangle(g, arrows)?;
    let mut circles = g.circles().to_vec();
    for br in [t.top, t.middle, t.bottom] {
        circles[br.circle].swap(br.at, br.at + 1);
    }
    GaussDiagram::new(circles, g.signs().clone())
}

/// Where to insert: before the point currently at `index` on `circle`. On
/// the base circle `index` runs over 1..=len (never in front of the base).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    pub circle: usize,
    pub index: usize,
}

fn check_gap(g: &GaussDiagram, gap: Gap) -> Result<()> {
    let c = g.circles().get(gap.circle).ok_or_else(|| Error::IllegalMove("no such circle".into()))?;
    let lo = if gap.circle == g.base_circle() { 1 } else { 0 };
    if gap.index < lo || gap.index > c.len() {
        return Err(Error::IllegalMove(format!("gap {} out of range on circle {}", gap.index, gap.circle)));
    }
    if gap.circle == g.base_circle() && gap.index == c.len() && g.n() > 0 {
        return Err(Error::IllegalMove("cannot separate the base point from its mark".into()));
    }
    Ok(())
}

/// Inserts a kink with arrow `id`. With `head_first` the head comes first
/// (marking 0), otherwise the foot (marking n).
pub fn r1_insert(g: &GaussDiagram, id: ArrowId, gap: Gap, sign: i8, head_first: bool) -> Result<GaussDiagram> {
    if g.contains(id) {
        return Err(Error::IllegalMove(format!("arrow {id} already exists")));
    }
    check_gap(g, gap)?;
    let mut circles = g.circles().to_vec();
    let (x, y) = if head_first { (Point::Head(id), Point::Foot(id)) } else { (Point::Foot(id), Point::Head(id)) };
    circles[gap.circle].insert(gap.index, y);
    circles[gap.circle].insert(gap.index, x);
    let mut signs = g.signs().clone();
    signs.insert(id, sign);
    GaussDiagram::new(circles, signs)
}

/// Removes a kink: an arrow whose endpoints are adjacent.
pub fn r1_delete(g: &GaussDiagram, id: ArrowId) -> Result<GaussDiagram> {
    let loc = g.locate(id)?;
    if loc.foot.0 != loc.head.0 || loc.foot.1.abs_diff(loc.head.1) != 1 {
        return Err(Error::IllegalMove(format!("arrow {id} is not a kink")));
    }
    Ok(g.without(&BTreeSet::from([id])))
}

/// Inserts a bigon: arrows `a` (sign `sign`) and `b` (sign `-sign`) with
/// heads at `over` in the order a, b and feet at `under`, in the order a, b
/// when the strands are parallel and b, a otherwise. When both gaps are the
/// same, the heads come first unless `under_first`.
pub fn r2_insert(
    g: &GaussDiagram,
    ids: (ArrowId, ArrowId),
    over: Gap,
    under: Gap,
    sign: i8,
    parallel: bool,
    under_first: bool,
) -> Result<GaussDiagram> {
    let (a, b) = ids;
    if a == b || g.contains(a) || g.contains(b) {
        return Err(Error::IllegalMove("bigon arrows must be new and distinct".into()));
    }
    check_gap(g, over)?;
    check_gap(g, under)?;
    let mut circles = g.circles().to_vec();
    let heads = [Point::Head(a), Point::Head(b)];
    let feet = if parallel { [Point::Foot(a), Point::Foot(b)] } else { [Point::Foot(b), Point::Foot(a)] };
    if over == under {
        let (x, y) = if under_first { (&feet, &heads) } else { (&heads, &feet) };
        for p in x.iter().chain(y.iter()).rev() {
            circles[over.circle].insert(over.index, *p);
        }
    } else {
        // the later gap first, so the earlier index stays valid
        let mut ins = [(over, heads), (under, feet)];
        ins.sort_by_key(|(gp, _)| std::cmp::Reverse((gp.circle, gp.index)));
        for (gp, ps) in ins {
            for p in ps.iter().rev() {
                circles[gp.circle].insert(gp.index, *p);
            }
        }
    }
    let mut signs = g.signs().clone();
    signs.insert(a, sign);
    signs.insert(b, -sign);
    GaussDiagram::new(circles, signs)
}

/// Removes a bigon: two arrows of opposite signs whose heads are adjacent
/// and whose feet are adjacent.
pub fn r2_delete(g: &GaussDiagram, a: ArrowId, b: ArrowId) -> Result<GaussDiagram> {
    if a == b {
        return Err(Error::IllegalMove("a bigon has two arrows".into()));
    }
    let (la, lb) = (g.locate(a)?, g.locate(b)?);
    if g.sign(a)? == g.sign(b)? {
        return Err(Error::IllegalMove("bigon arrows must have opposite signs".into()));
    }
    let adj = |x: (usize, usize), y: (usize, usize)| x.0 == y.0 && x.1.abs_diff(y.1) == 1;
    if !adj(la.head, lb.head) || !adj(la.foot, lb.foot) {
        return Err(Error::IllegalMove(format!("arrows {a}, {b} do not bound a bigon")));
    }
    Ok(g.without(&BTreeSet::from([a, b])))
}

/// Moves both endpoints of `x` across the disc at infinity: forward, each
/// endpoint must be followed by an infinity mark; backward, preceded by one.
/// The base point marks the radially outermost pass through the disc, so if
/// it sat at one of the two marks involved it moves to the other one.
pub fn pass(g: &GaussDiagram, x: ArrowId, forward: bool) -> Result<GaussDiagram> {
    let loc = g.locate(x)?;
    // tag every point with where it started, then take the base point out
    let mut circles: Vec<Vec<(Point, (usize, usize))>> = g
        .circles()
        .iter()
        .enumerate()
        .map(|(ci, c)| c.iter().enumerate().map(|(i, p)| (*p, (ci, i))).collect())
        .collect();
    let bc = g.base_circle();
    let base_mark = circles[bc][circles[bc].len() - 1].1;
    let has_marks = g.n() > 0;
    if has_marks {
        circles[bc].remove(0);
    }
    let mut crossed = Vec::new();
    for end in [loc.foot, loc.head] {
        let c = &mut circles[end.0];
        let len = c.len();
        let k = c.iter().position(|p| p.1 == end).unwrap();
        let j = if forward { (k + 1) % len } else { (k + len - 1) % len };
        if c[j].0 != Point::Mark {
            let w = if forward { "in front of" } else { "behind" };
            return Err(Error::IllegalMove(format!("arrow {x} is not {w} the disc at infinity")));
        }
        crossed.push(c[j].1);
        c.swap(k, j);
    }
    if has_marks {
        let target = if base_mark == crossed[0] {
            crossed[1]
        } else if base_mark == crossed[1] {
            crossed[0]
        } else {
            base_mark
        };
        let c = circles.iter_mut().find(|c| c.iter().any(|p| p.1 == target)).unwrap();
        let k = c.iter().position(|p| p.1 == target).unwrap();
        c.insert(k + 1, (Point::Base, (usize::MAX, 0)));
    }
    let circles = circles.into_iter().map(|c| c.into_iter().map(|p| p.0).collect()).collect();
    GaussDiagram::new(circles, g.signs().clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveKind {
    R1,
    R2,
    R3,
    /// a crossing moving through the disc at infinity
    Pass,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R1 => "R1",
            MoveKind::R2 => "R2",
            MoveKind::R3 => "R3",
            MoveKind::Pass => "pass",
        }
    }
}

/// Insertion data for R1/R2 events.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Site {
    pub gaps: Vec<Gap>,
    pub signs: Vec<i8>,
    /// R1: head first; R2: parallel strands
    pub flag: bool,
    /// R2 with both gaps equal: the feet go in front of the heads
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub under_first: bool,
}

/// One event of a loop. For R1/R2 `direction` is +1 for an insertion and
/// -1 for a deletion; for R3 it is the coorientation sign of the crossing;
/// for a pass it is +1 forward.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveEvent {
    pub kind: MoveKind,
    pub arrows: Vec<ArrowId>,
    pub direction: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub site: Option<Site>,
}

impl MoveEvent {
    pub fn r3(arrows: [ArrowId; 3], direction: i8) -> Self {
        MoveEvent { kind: MoveKind::R3, arrows: arrows.to_vec(), direction, site: None }
    }

    pub fn pass(x: ArrowId, forward: bool) -> Self {
        MoveEvent { kind: MoveKind::Pass, arrows: vec![x], direction: if forward { 1 } else { -1 }, site: None }
    }

    pub fn r1_insert(id: ArrowId, gap: Gap, sign: i8, head_first: bool) -> Self {
        MoveEvent {
            kind: MoveKind::R1,
            arrows: vec![id],
            direction: 1,
            site: Some(Site { gaps: vec![gap], signs: vec![sign], flag: head_first, under_first: false }),
        }
    }

    pub fn r1_delete(id: ArrowId) -> Self {
        MoveEvent { kind: MoveKind::R1, arrows: vec![id], direction: -1, site: None }
    }

    pub fn r2_insert(ids: (ArrowId, ArrowId), over: Gap, under: Gap, sign: i8, parallel: bool, under_first: bool) -> Self {
        MoveEvent {
            kind: MoveKind::R2,
            arrows: vec![ids.0, ids.1],
            direction: 1,
            site: Some(Site { gaps: vec![over, under], signs: vec![sign], flag: parallel, under_first }),
        }
    }

    pub fn r2_delete(a: ArrowId, b: ArrowId) -> Self {
        // the bigon is unordered
        MoveEvent { kind: MoveKind::R2, arrows: vec![a.min(b), a.max(b)], direction: -1, site: None }
    }

    /// Builds the R3 event for `arrows` in `g`, with its coorientation sign.
    pub fn r3_in(g: &GaussDiagram, arrows: [ArrowId; 3]) -> Result<Self> {
        let t = triangle(g, arrows)?;
        Ok(MoveEvent::r3(arrows, r3_sign(&t)))
    }

    fn arity(&self, k: usize) -> Result<()> {
        if self.arrows.len() != k {
            return Err(Error::IllegalMove(format!("{:?} event needs {k} arrows", self.kind)));
        }
        Ok(())
    }

    fn three(&self) -> Result<[ArrowId; 3]> {
        self.arity(3)?;
        Ok([self.arrows[0], self.arrows[1], self.arrows[2]])
    }

    pub fn apply(&self, g: &GaussDiagram) -> Result<GaussDiagram> {
        let site = || self.site.as_ref().ok_or_else(|| Error::IllegalMove("insertion without a site".into()));
        match (self.kind, self.direction) {
            (MoveKind::R1, 1) => {
                self.arity(1)?;
                let s = site()?;
                let (gap, sign) = (*s.gaps.first().ok_or_else(|| Error::IllegalMove("R1 needs a gap".into()))?, s.signs.first().copied().unwrap_or(1));
                r1_insert(g, self.arrows[0], gap, sign, s.flag)
            }
            (MoveKind::R1, -1) => {
                self.arity(1)?;
                r1_delete(g, self.arrows[0])
            }
            (MoveKind::R2, 1) => {
                self.arity(2)?;
                let s = site()?;
                if s.gaps.len() != 2 {
                    return Err(Error::IllegalMove("R2 needs two gaps".into()));
                }
                let sign = s.signs.first().copied().unwrap_or(1);
                r2_insert(g, (self.arrows[0], self.arrows[1]), s.gaps[0], s.gaps[1], sign, s.flag, s.under_first)
            }
            (MoveKind::R2, -1) => {
                self.arity(2)?;
                r2_delete(g, self.arrows[0], self.arrows[1])
            }
            (MoveKind::R3, dir) => {
                let arrows = self.three()?;
                let t = triangle(g, arrows)?;
                if r3_sign(&t) != dir {
                    return Err(Error::IllegalMove(format!(
                        "R3 on {arrows:?} crosses with sign {}, event says {dir}",
                        r3_sign(&t)
                    )));
                }
                apply_r3(g, arrows)
            }
            (MoveKind::Pass, dir) if dir == 1 || dir == -1 => {
                self.arity(1)?;
                pass(g, self.arrows[0], dir == 1)
            }
            (k, d) => Err(Error::IllegalMove(format!("{k:?} event with direction {d}"))),
        }
    }

    /// The event undoing this one, given the diagram it was applied to.
    pub fn inverse(&self, before: &GaussDiagram) -> Result<MoveEvent> {
        Ok(match (self.kind, self.direction) {
            (MoveKind::R1, 1) => MoveEvent::r1_delete(self.arrows[0]),
            (MoveKind::R1, _) => {
                let id = self.arrows[0];
                let loc = before.locate(id)?;
                let first = loc.foot.1.min(loc.head.1);
                let gap = Gap { circle: loc.foot.0, index: first };
                MoveEvent::r1_insert(id, gap, before.sign(id)?, loc.head.1 < loc.foot.1)
            }
            (MoveKind::R2, 1) => MoveEvent::r2_delete(self.arrows[0], self.arrows[1]),
            (MoveKind::R2, _) => r2_site(before, self.arrows[0], self.arrows[1])?,
            (MoveKind::R3, d) => MoveEvent::r3(self.three()?, -d),
            (MoveKind::Pass, d) => MoveEvent { direction: -d, ..self.clone() },
        })
    }
}

/// The insertion event that creates the bigon (a, b) of `g` in the diagram
/// without it.
pub fn r2_site(g: &GaussDiagram, a: ArrowId, b: ArrowId) -> Result<MoveEvent> {
    let (la, lb) = (g.locate(a)?, g.locate(b)?);
    // name the arrows so that `first` has the earlier head
    let (x, y, lx, ly) = if la.head.1 < lb.head.1 { (a, b, la, lb) } else { (b, a, lb, la) };
    let parallel = lx.foot.1 < ly.foot.1;
    let removed_before = |c: usize, i: usize| {
        [lx.head, ly.head, lx.foot, ly.foot].iter().filter(|p| p.0 == c && p.1 < i).count()
    };
    let hc = lx.head.0;
    let fc = lx.foot.0;
    let h0 = lx.head.1;
    let f0 = lx.foot.1.min(ly.foot.1);
    let over = Gap { circle: hc, index: h0 - removed_before(hc, h0) };
    let under = Gap { circle: fc, index: f0 - removed_before(fc, f0) };
    // only meaningful when both pairs go into the same gap
    let under_first = over == under && f0 < h0;
    Ok(MoveEvent::r2_insert((x, y), over, under, g.sign(x)?, parallel, under_first))
}

/// Every legal triangle of `g`, each listed once by its arrows (d, hm, ml).
pub fn r3_sites(g: &GaussDiagram) -> Vec<Triangle> {
    let mut near: BTreeMap<ArrowId, BTreeSet<ArrowId>> = BTreeMap::new();
    for c in g.circles() {
        for w in c.windows(2) {
            if let (Some(x), Some(y)) = (w[0].arrow(), w[1].arrow()) {
                if x != y {
                    near.entry(x).or_default().insert(y);
                    near.entry(y).or_default().insert(x);
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (&x, ns) in &near {
        for &y in ns {
            for &z in ns.iter().chain(near.get(&y).into_iter().flatten()) {
                if z == x || z == y {
                    continue;
                }
                let mut k = [x, y, z];
                k.sort();
                if !seen.insert(k) {
                    continue;
                }
                if let Ok(ts) = find_triangles(g, k) {
                    out.extend(ts);
                }
            }
        }
    }
    out
}

/// Match counts of a formula's configurations split by how many arrows of the
/// triangle the image contains (index 0..=3), summed over the terms.
pub fn match_counts(f: &Formula, g: &GaussDiagram, arrows: [ArrowId; 3]) -> [usize; 4] {
    let tri: BTreeSet<ArrowId> = arrows.iter().copied().collect();
    let mut out = [0; 4];
    for t in &f.terms {
        for m in enumerate_matches(&t.config, g) {
            out[m.image().intersection(&tri).count()] += 1;
        }
    }
    out
}

/// Per-case counts before and after a positive (local type 1) Reidemeister
/// III move, together with the match counts restricted to matches that avoid
/// the triangle and those that meet it in one arrow, arrow by arrow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransportCounts {
    pub before: [usize; 4],
    pub after: [usize; 4],
    pub single_before: BTreeMap<ArrowId, usize>,
    pub single_after: BTreeMap<ArrowId, usize>,
}

impl TransportCounts {
    pub fn preserved(&self) -> bool {
        let total = |c: &[usize; 4]| c.iter().sum::<usize>();
        self.before[3] == 0
            && self.after[3] == 0
            && total(&self.before) == total(&self.after)
            && self.before[0] == self.after[0]
            && self.before[1] == self.after[1]
            && self.single_before == self.single_after
    }
}

pub fn match_transport_counts(f: &Formula, g: &GaussDiagram, arrows: [ArrowId; 3]) -> Result<TransportCounts> {
    let t = triangle(g, arrows)?;
    if t.local_type() != 1 {
        return Err(Error::IllegalMove(format!("triangle {arrows:?} is of local type {}", t.local_type())));
    }
    let h = apply_r3(g, arrows)?;
    let singles = |g: &GaussDiagram| {
        let mut m: BTreeMap<ArrowId, usize> = arrows.iter().map(|a| (*a, 0)).collect();
        for term in &f.terms {
            for x in enumerate_matches(&term.config, g) {
                let hit: Vec<ArrowId> = x.image().into_iter().filter(|a| arrows.contains(a)).collect();
                if hit.len() == 1 {
                    *m.get_mut(&hit[0]).unwrap() += 1;
                }
            }
        }
        m
    };
    Ok(TransportCounts {
        before: match_counts(f, g, arrows),
        after: match_counts(f, &h, arrows),
        single_before: singles(g),
        single_after: singles(&h),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::parse_gauss_code;

    #[test]
    fn each_sign_triple_has_two_complementary_orders() {
        for bits in 0..8u8 {
            let s = |k: u8| if bits >> k & 1 == 1 { -1 } else { 1 };
            let signs = (s(0), s(1), s(2));
            let legal: Vec<u8> = (0..8u8)
                .filter(|o| legal_order(signs, (o & 4 != 0, o & 2 != 0, o & 1 != 0)))
                .collect();
            assert_eq!(legal.len(), 2);
            assert_eq!(legal[0] ^ legal[1], 7);
            let sides: Vec<i8> = legal.iter().map(|o| side(signs, (o & 4 != 0, o & 2 != 0, o & 1 != 0))).collect();
            assert_eq!(sides[0], -sides[1]);
        }
    }

    #[test]
    fn r3_is_an_involution() {
        // positive triangle in a 3-arrow diagram
        let g = parse_gauss_code("@ O1+ O2+ U1+ O3+ U2+ U3+").unwrap();
        let t = triangle(&g, [1, 2, 3]).unwrap();
        assert_eq!(t.local_type(), 1);
        let h = apply_r3(&g, [1, 2, 3]).unwrap();
        assert_ne!(g, h);
        assert_eq!(apply_r3(&h, [1, 2, 3]).unwrap(), g);
        assert_eq!(r3_sign(&triangle(&h, [1, 2, 3]).unwrap()), -r3_sign(&t));
    }

    #[test]
    fn r1_and_r2_round_trip() {
        let g = parse_gauss_code("@ O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let e = MoveEvent::r1_insert(9, Gap { circle: 0, index: 3 }, -1, false);
        let h = e.apply(&g).unwrap();
        assert_eq!(h.num_arrows(), 4);
        let inv = e.inverse(&g).unwrap();
        assert_eq!(inv.apply(&h).unwrap(), g);
        assert_eq!(e, MoveEvent::r1_delete(9).inverse(&h).unwrap());

        let e = MoveEvent::r2_insert((7, 8), Gap { circle: 0, index: 2 }, Gap { circle: 0, index: 5 }, 1, false, false);
        let h = e.apply(&g).unwrap();
        assert_eq!(MoveEvent::r2_delete(7, 8).apply(&h).unwrap(), g);
        assert_eq!(MoveEvent::r2_delete(7, 8).inverse(&h).unwrap(), e);
    }

    #[test]
    fn pass_hands_the_base_to_the_other_mark() {
        let g = parse_gauss_code("@ U2+ U1+ * O2+ O1+ *").unwrap();
        let h = pass(&g, 1, true).unwrap();
        assert_eq!(h.to_string(), "@ U1+ O2+ * O1+ U2+ *");
        assert_eq!(pass(&h, 1, false).unwrap(), g);
        assert_eq!(h.marking(1).unwrap(), g.marking(1).unwrap());
    }
}
