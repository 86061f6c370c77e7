//! Small loops around codimension-2 strata: quadruple points, self-tangencies
//! with a transverse branch, and the commutation squares of two distant moves.
//!
//! Quadruple points and tangencies are traced from explicit plane geometry
//! (four lines, or two parabolas and a line) on a small circle in parameter
//! space; each diagram along the way is read off the picture, so the local
//! moves are checked against the geometry rather than assumed.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::cocycle::Loop;
use crate::error::{Error, Result};
use crate::gauss::{ArrowId, GaussDiagram, Point};
use crate::moves::{apply_r3, r2_site, r3_sites, Gap, MoveEvent};

/// The single move turning `prev` into `next`, if there is one.
pub fn connect(prev: &GaussDiagram, next: &GaussDiagram) -> Result<MoveEvent> {
    let a: BTreeSet<ArrowId> = prev.arrow_ids().collect();
    let b: BTreeSet<ArrowId> = next.arrow_ids().collect();
    let added: Vec<ArrowId> = b.difference(&a).copied().collect();
    let removed: Vec<ArrowId> = a.difference(&b).copied().collect();
    let e = match (added.as_slice(), removed.as_slice()) {
        ([x], []) => MoveEvent::r1_delete(*x).inverse(next)?,
        ([x, y], []) => r2_site(next, *x, *y)?,
        ([], [x]) => MoveEvent::r1_delete(*x),
        ([], [x, y]) => MoveEvent::r2_delete(*x, *y),
        ([], []) => {
            let t = r3_sites(prev)
                .into_iter()
                .find(|t| apply_r3(prev, t.arrows()).map(|h| &h == next).unwrap_or(false))
                .ok_or_else(|| Error::IllegalMove(format!("no Reidemeister III move from {prev} to {next}")))?;
            MoveEvent::r3_in(prev, t.arrows())?
        }
        _ => return Err(Error::IllegalMove(format!("{prev} and {next} differ by more than one move"))),
    };
    if &e.apply(prev)? != next {
        return Err(Error::IllegalMove(format!("no single move from {prev} to {next}")));
    }
    Ok(e)
}

/// The closed loop through `states` (the last one is joined to the first).
pub fn trace(states: &[GaussDiagram]) -> Result<Loop> {
    let mut l = Loop::new(states[0].clone());
    for i in 0..states.len() {
        let (p, q) = (&states[i], &states[(i + 1) % states.len()]);
        if p != q {
            l.events.push(connect(p, q)?);
        }
    }
    Ok(l)
}

/// A local picture: branches given as point sequences along the strand, in
/// the order they are met on the circle, with `marks[k]` infinity marks after
/// branch k and the base point after mark number `base` (counted along the
/// circle from the start of branch 0).
fn close_up(
    branches: &[Vec<Point>],
    signs: &std::collections::BTreeMap<ArrowId, i8>,
    marks: &[usize],
    base: usize,
) -> Result<GaussDiagram> {
    let total: usize = marks.iter().sum();
    let mut seq = Vec::new();
    let mut base_at = None;
    let mut seen = 0;
    for (br, &m) in branches.iter().zip(marks) {
        seq.extend(br.iter().copied());
        for _ in 0..m {
            seq.push(Point::Mark);
            if seen == base {
                base_at = Some(seq.len());
            }
            seen += 1;
        }
    }
    let circle = if total == 0 {
        std::iter::once(Point::Base).chain(seq).collect()
    } else {
        let k = base_at.ok_or_else(|| Error::Semantic(format!("base after mark {base} of {total}")))?;
        seq.rotate_left(k);
        std::iter::once(Point::Base).chain(seq).collect()
    };
    GaussDiagram::new(vec![circle], signs.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QuadrupleType {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl QuadrupleType {
    pub const ALL: [QuadrupleType; 6] =
        [QuadrupleType::I, QuadrupleType::II, QuadrupleType::III, QuadrupleType::IV, QuadrupleType::V, QuadrupleType::VI];

    /// Order in which the branches (numbered by height, 1 highest) are met
    /// along the circle.
    pub fn circle_order(self) -> [usize; 4] {
        match self {
            QuadrupleType::I => [1, 4, 3, 2],
            QuadrupleType::II => [1, 3, 2, 4],
            QuadrupleType::III => [1, 2, 4, 3],
            QuadrupleType::IV => [1, 4, 2, 3],
            QuadrupleType::V => [1, 3, 4, 2],
            QuadrupleType::VI => [1, 2, 3, 4],
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| format!("{t:?}").eq_ignore_ascii_case(s))
    }
}

/// A quadruple point of four straight branches, closed up by arcs that meet
/// no other crossing. Branch k (1..=4) lies at height k (1 on top); the
/// arrow between branches i < j has id 10 i + j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrupleScenario {
    pub kind: QuadrupleType,
    /// marks on the arc after each branch, in circle order
    pub marks: [usize; 4],
    /// the base point follows this mark, counted along the circle from
    /// the first branch
    pub base: usize,
    /// `slopes[k - 1]` ranks the direction of branch k
    pub slopes: [usize; 4],
    /// branches run against their reference direction
    pub reversed: [bool; 4],
}

impl QuadrupleScenario {
    /// All crossings positive: slopes increase with depth and no branch is
    /// reversed.
    pub fn positive(kind: QuadrupleType, marks: [usize; 4], base: usize) -> Self {
        QuadrupleScenario { kind, marks, base, slopes: [0, 1, 2, 3], reversed: [false; 4] }
    }

    fn direction(&self, k: usize) -> (f64, f64) {
        let th = 0.3 + 0.7 * self.slopes[k - 1] as f64 + if self.reversed[k - 1] { PI } else { 0.0 };
        (th.cos(), th.sin())
    }

    /// The diagram for line offsets `c`.
    fn diagram(&self, c: [f64; 4]) -> Result<GaussDiagram> {
        let u: Vec<(f64, f64)> = (1..=4).map(|k| self.direction(k)).collect();
        let nu: Vec<(f64, f64)> = u.iter().map(|&(x, y)| (-y, x)).collect();
        let dot = |a: (f64, f64), b: (f64, f64)| a.0 * b.0 + a.1 * b.1;
        let mut signs = std::collections::BTreeMap::new();
        for i in 1..=4 {
            for j in i + 1..=4 {
                let (o, w) = (u[i - 1], u[j - 1]);
                signs.insert((10 * i + j) as ArrowId, if o.0 * w.1 - o.1 * w.0 > 0.0 { 1 } else { -1 });
            }
        }
        let mut branches = Vec::new();
        for &k in &self.kind.circle_order() {
            let mut pts: Vec<(f64, Point)> = Vec::new();
            for j in (1..=4).filter(|&j| j != k) {
                let t = (c[j - 1] - c[k - 1] * dot(nu[j - 1], nu[k - 1])) / dot(nu[j - 1], u[k - 1]);
                let id = (10 * k.min(j) + k.max(j)) as ArrowId;
                pts.push((t, if k < j { Point::Head(id) } else { Point::Foot(id) }));
            }
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            branches.push(pts.into_iter().map(|p| p.1).collect::<Vec<_>>());
        }
        close_up(&branches, &signs, &self.marks, self.base)
    }

    /// The diagrams between consecutive triple points on the meridian: the
    /// offsets run once around a small circle transverse to the
    /// quadruple-point stratum, starting between the last and first triple
    /// point. Every triple of branches becomes concurrent twice.
    pub fn states(&self) -> Result<Vec<GaussDiagram>> {
        let a = [0.37, -0.81, 0.52, 0.11];
        let b = [0.93, 0.28, -0.64, -1.07];
        let nu: Vec<(f64, f64)> = (1..=4)
            .map(|k| {
                let (x, y) = self.direction(k);
                (-y, x)
            })
            .collect();
        let conc = |c: &[f64; 4], i: usize, j: usize, k: usize| {
            let (p, q, r) = (nu[i - 1], nu[j - 1], nu[k - 1]);
            c[i - 1] * (q.0 * r.1 - q.1 * r.0) - c[j - 1] * (p.0 * r.1 - p.1 * r.0) + c[k - 1] * (p.0 * q.1 - p.1 * q.0)
        };
        let mut events = Vec::new();
        for (i, j, k) in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)] {
            let (da, db) = (conc(&a, i, j, k), conc(&b, i, j, k));
            let phi = (-da).atan2(db).rem_euclid(PI);
            events.extend([phi, phi + PI]);
        }
        states_between(&mut events, |phi| {
            let c = std::array::from_fn(|i| phi.cos() * a[i] + phi.sin() * b[i]);
            self.diagram(c)
        })
    }

    /// The meridian loop, eight Reidemeister III moves.
    pub fn meridian(&self) -> Result<Loop> {
        trace(&self.states()?)
    }
}

/// Samples the diagram once between consecutive event angles.
fn states_between(events: &mut [f64], at: impl Fn(f64) -> Result<GaussDiagram>) -> Result<Vec<GaussDiagram>> {
    events.sort_by(f64::total_cmp);
    let k = events.len();
    let mut states = Vec::new();
    for i in 0..k {
        let (lo, hi) = if i == 0 { (events[k - 1] - TAU, events[0]) } else { (events[i - 1], events[i]) };
        if hi - lo < 1e-9 {
            return Err(Error::Other("degenerate meridian: two events coincide".into()));
        }
        states.push(at((lo + hi) / 2.0)?);
    }
    Ok(states)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    #[serde(rename = "d")]
    D,
    #[serde(rename = "hm")]
    Hm,
    #[serde(rename = "ml")]
    Ml,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::D, Role::Hm, Role::Ml];

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "d" => Some(Role::D),
            "hm" => Some(Role::Hm),
            "ml" => Some(Role::Ml),
            _ => None,
        }
    }
}

/// A self-tangency of two branches X (y = x² - s) and Y (y = s - x²) with a
/// third branch Z (x = t) through the tangency point. The two crossings of
/// X and Y (ids 3 left, 4 right) play the role `q` in the triangles they form
/// with Z; `x_above` puts X over Y. Z meets X in arrow 1 and Y in arrow 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeScenario {
    pub q: Role,
    pub x_above: bool,
    /// branches X, Y, Z run against x, x, y
    pub reversed: [bool; 3],
    /// the circle meets X, Y, Z in this order, or X, Z, Y
    pub z_last: bool,
    /// marks after each branch in circle order
    pub marks: [usize; 3],
    pub base: usize,
}

impl CubeScenario {
    /// heights of X, Y, Z (larger is higher)
    fn heights(&self) -> [i32; 3] {
        let (hi, lo) = if self.x_above { (1, 0) } else { (0, 1) };
        match self.q {
            // Z on top: X and Y are middle and low, their crossings are ml
            Role::Ml => [hi, lo, 2],
            Role::D => [2 * hi, 2 * lo, 1],
            Role::Hm => [hi + 1, lo + 1, 0],
        }
    }

    fn diagram(&self, s: f64, t: f64) -> Result<GaussDiagram> {
        let h = self.heights();
        let dir = |k: usize| if self.reversed[k] { -1.0 } else { 1.0 };
        // (curve, parameter, tangent) for both curves at each crossing
        let mut crossings: Vec<(ArrowId, [(usize, f64, (f64, f64)); 2])> = vec![
            (1, [(2, t * t - s, (0.0, 1.0)), (0, t, (1.0, 2.0 * t))]),
            (2, [(2, s - t * t, (0.0, 1.0)), (1, t, (1.0, -2.0 * t))]),
        ];
        if s > 0.0 {
            for (id, x) in [(3, -s.sqrt()), (4, s.sqrt())] {
                crossings.push((id, [(0, x, (1.0, 2.0 * x)), (1, x, (1.0, -2.0 * x))]));
            }
        }
        let mut signs = std::collections::BTreeMap::new();
        let mut along: [Vec<(f64, Point)>; 3] = Default::default();
        for (id, ends) in crossings {
            let (o, w) = if h[ends[0].0] > h[ends[1].0] { (ends[0], ends[1]) } else { (ends[1], ends[0]) };
            let (uo, uw) = ((o.2 .0 * dir(o.0), o.2 .1 * dir(o.0)), (w.2 .0 * dir(w.0), w.2 .1 * dir(w.0)));
            signs.insert(id, if uo.0 * uw.1 - uo.1 * uw.0 > 0.0 { 1 } else { -1 });
            along[o.0].push((o.1 * dir(o.0), Point::Head(id)));
            along[w.0].push((w.1 * dir(w.0), Point::Foot(id)));
        }
        let order = if self.z_last { [0, 1, 2] } else { [0, 2, 1] };
        let branches: Vec<Vec<Point>> = order
            .iter()
            .map(|&k| {
                let mut v = along[k].clone();
                v.sort_by(|a, b| a.0.total_cmp(&b.0));
                v.into_iter().map(|p| p.1).collect()
            })
            .collect();
        close_up(&branches, &signs, &self.marks, self.base)
    }

    /// Around the tangency point: (s, t) = r (cos φ, sin φ). The loop has the
    /// two tangencies s = 0 and the two triple points s = t².
    pub fn meridian(&self) -> Result<Loop> {
        let r: f64 = 0.5;
        // cos φ = r sin² φ on the side s > 0
        let c = ((1.0 + 4.0 * r * r).sqrt() - 1.0) / (2.0 * r);
        let phi = c.acos();
        let mut events = [PI / 2.0, 3.0 * PI / 2.0, phi, TAU - phi];
        trace(&states_between(&mut events, |p| self.diagram(r * p.cos(), r * p.sin()))?)
    }
}

/// Every distribution of `n` marks over `k` arcs.
pub fn mark_distributions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .flat_map(|first| {
            mark_distributions(n - first, k - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// The square p, q, p⁻¹, q⁻¹ of two moves that do not interact: `p` is a
/// Reidemeister III triangle of `g` and `q` any move applicable to `g` that
/// shares no arrow with it.
pub fn meridian_commutation(g: &GaussDiagram, p: [ArrowId; 3], q: &MoveEvent) -> Result<Loop> {
    if q.arrows.iter().any(|a| p.contains(a)) {
        return Err(Error::IllegalMove("the two moves share an arrow".into()));
    }
    let pg = apply_r3(g, p)?;
    let qg = q.apply(g)?;
    let qpg = apply_r3(&qg, p)?;
    let l = trace(&[g.clone(), pg, qpg, qg])?;
    if l.events.len() != 4 {
        return Err(Error::IllegalMove("the moves do not commute".into()));
    }
    Ok(l)
}

/// Adjusts a gap of `g` for two points inserted at `at` in front of it.
fn shifted(gap: Gap, at: Gap, k: usize) -> Gap {
    if gap.circle == at.circle && gap.index >= at.index {
        Gap { index: gap.index + k, ..gap }
    } else {
        gap
    }
}

/// Meridians around a self-tangency met by a third branch, found in `g`
/// itself: the two arrows `zx`, `zy` have adjacent endpoints on one branch Z;
/// a bigon is pushed between their other endpoints, Z is moved across both
/// of its crossings, and the bigon is removed. Only sequences that stay
/// realizable are returned.
pub fn cube_meridians_at(g: &GaussDiagram, zx: ArrowId, zy: ArrowId) -> Result<Vec<Loop>> {
    let (lx, ly) = (g.locate(zx)?, g.locate(zy)?);
    let ends = |l: crate::gauss::Loc| [(l.foot, l.head), (l.head, l.foot)];
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (zx_on_z, ex) in ends(lx) {
        for (zy_on_z, ey) in ends(ly) {
            if zx_on_z.0 != zy_on_z.0 || zy_on_z.1 != zx_on_z.1 + 1 {
                continue;
            }
            for dx in [0, 1] {
                for dy in [0, 1] {
                    let gx = Gap { circle: ex.0, index: ex.1 + dx };
                    let gy = Gap { circle: ey.0, index: ey.1 + dy };
                    for bits in 0..16u8 {
                        let (o, u) = if bits & 1 == 0 { (gx, gy) } else { (gy, gx) };
                        let (s, par, uf) = (if bits & 2 == 0 { 1 } else { -1 }, bits & 4 != 0, bits & 8 != 0);
                        if uf && o != u {
                            continue;
                        }
                        let a = g.next_free_id();
                        let ins = MoveEvent::r2_insert((a, a + 1), o, u, s, par, uf);
                        if let Some(states) = cube_states(g, &ins, zx, zy, (a, a + 1)) {
                            let key: Vec<String> = states.iter().map(|d| d.to_string()).collect();
                            if seen.insert(key) {
                                out.push(trace(&states)?);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn cube_states(g: &GaussDiagram, ins: &MoveEvent, zx: ArrowId, zy: ArrowId, (a, b): (ArrowId, ArrowId)) -> Option<Vec<GaussDiagram>> {
    let g1 = ins.apply(g).ok()?;
    if !super::random::is_realizable(&g1) {
        return None;
    }
    for (first, second) in [(a, b), (b, a)] {
        let Ok(g2) = apply_r3(&g1, [zx, zy, first]) else { continue };
        let Ok(g3) = apply_r3(&g2, [zx, zy, second]) else { continue };
        let Ok(g4) = crate::moves::r2_delete(&g3, a, b) else { continue };
        if &g4 == g && [&g2, &g3].iter().all(|d| super::random::is_realizable(d)) {
            return Some(vec![g.clone(), g1, g2, g3]);
        }
    }
    None
}

/// Every cube meridian of `g`, over all pairs of arrows with adjacent
/// endpoints.
pub fn cube_meridians(g: &GaussDiagram) -> Result<Vec<Loop>> {
    let mut out = Vec::new();
    for c in g.circles() {
        for w in c.windows(2) {
            if let (Some(x), Some(y)) = (w[0].arrow(), w[1].arrow()) {
                if x != y {
                    out.extend(cube_meridians_at(g, x, y)?);
                }
            }
        }
    }
    Ok(out)
}

/// Meridians around a cusp met by another branch: a kink β appears at `on`,
/// a branch through `from` is pushed into its lobe, across its crossing, and
/// the kink and the bigon disappear again. Only realizable sequences that
/// close up are returned.
pub fn cusp_meridians(g: &GaussDiagram, on: Gap, from: Gap) -> Result<Vec<Loop>> {
    let mut out = Vec::new();
    let beta = g.next_free_id();
    let (z1, z2) = (beta + 1, beta + 2);
    for bits in 0..4u8 {
        let kink = MoveEvent::r1_insert(beta, on, if bits & 1 == 0 { 1 } else { -1 }, bits & 2 != 0);
        let Ok(g1) = kink.apply(g) else { continue };
        let lobe = Gap { circle: on.circle, index: on.index + 1 };
        let other = shifted(from, on, 2);
        if other == lobe || !super::random::is_realizable(&g1) {
            continue;
        }
        for more in 0..8u8 {
            let (o, u) = if more & 1 == 0 { (lobe, other) } else { (other, lobe) };
            let ins = MoveEvent::r2_insert((z1, z2), o, u, if more & 2 == 0 { 1 } else { -1 }, more & 4 != 0, false);
            let Ok(g2) = ins.apply(&g1) else { continue };
            let Ok(g3) = apply_r3(&g2, [beta, z1, z2]) else { continue };
            if !super::random::is_realizable(&g2) || !super::random::is_realizable(&g3) {
                continue;
            }
            let orders = [
                crate::moves::r1_delete(&g3, beta).and_then(|h| Ok((h.clone(), crate::moves::r2_delete(&h, z1, z2)?))),
                crate::moves::r2_delete(&g3, z1, z2).and_then(|h| Ok((h.clone(), crate::moves::r1_delete(&h, beta)?))),
            ];
            for (g4, g5) in orders.into_iter().flatten() {
                if &g5 == g && super::random::is_realizable(&g4) {
                    out.push(trace(&[g.clone(), g1.clone(), g2.clone(), g3.clone(), g4])?);
                }
            }
        }
    }
    Ok(out)
}

/// Evaluates a marking expression such as `n-a`, `0`, `a+1` or `2a`.
pub fn eval_marks(expr: &str, n: usize, a: usize) -> Result<usize> {
    let bad = || Error::Syntax { line: 1, token: expr.to_string() };
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let mut total: i64 = 0;
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let sign = match rest.as_bytes()[0] {
            b'-' => {
                rest = &rest[1..];
                -1
            }
            b'+' => {
                rest = &rest[1..];
                1
            }
            _ => 1,
        };
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        let digits = term.trim_end_matches(['n', 'a']);
        let var = &term[digits.len()..];
        let coef: i64 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| bad())? };
        let value = match var {
            "" if !digits.is_empty() => 1,
            "n" => n as i64,
            "a" => a as i64,
            _ => return Err(bad()),
        };
        total += sign * coef * value;
        rest = tail;
    }
    usize::try_from(total).map_err(|_| Error::Semantic(format!("`{expr}` is negative for n = {n}, a = {a}")))
}

/// The marking cases (marks on the arcs after the first three branches in
/// circle order; the fourth arc takes the rest) worked out by hand for each
/// type. Type VI has none: all its triple points are of global type l.
pub fn listed_cases(kind: QuadrupleType) -> &'static [&'static str] {
    match kind {
        QuadrupleType::I => &["a,n-a,0", "0,n-a,0", "0,a,n-a", "a,0,n-a"],
        QuadrupleType::II => &["a,0,n-a", "a,n-a,0"],
        QuadrupleType::III => &["0,a,n-a", "n-a,a,0", "a,0,n-a"],
        QuadrupleType::IV => &["0,a,0", "a,0,n-a", "a,n-a,0"],
        QuadrupleType::V => &["a,0,n-a", "0,a,n-a"],
        QuadrupleType::VI => &[],
    }
}

/// Marks from a comma separated list of three or four expressions; with
/// three, the last arc gets the remaining marks.
pub fn parse_marks(list: &str, n: usize, a: usize) -> Result<[usize; 4]> {
    let parts = list.split(',').map(|e| eval_marks(e, n, a)).collect::<Result<Vec<_>>>()?;
    let sum: usize = parts.iter().sum();
    let marks = match parts.as_slice() {
        [x, y, z] if sum <= n => [*x, *y, *z, n - sum],
        [_, _, _, _] if sum == n => [parts[0], parts[1], parts[2], parts[3]],
        _ => return Err(Error::Semantic(format!("marks `{list}` do not add up to n = {n}"))),
    };
    Ok(marks)
}

impl QuadrupleScenario {
    /// `tetra:TYPE:MARKS[:BASE]`, e.g. `tetra:I:a,n-a,0` or `tetra:IV:0,a,0:1`.
    pub fn from_selector(sel: &str, n: usize, a: usize) -> Result<Self> {
        let bad = || Error::Syntax { line: 1, token: sel.to_string() };
        let parts: Vec<&str> = sel.split(':').collect();
        let (kind, marks, base) = match parts.as_slice() {
            ["tetra", k, m] => (*k, *m, "0"),
            ["tetra", k, m, b] => (*k, *m, *b),
            _ => return Err(bad()),
        };
        let kind = QuadrupleType::parse(kind).ok_or_else(bad)?;
        let marks = parse_marks(marks, n, a)?;
        let base: usize = base.parse().map_err(|_| bad())?;
        if n > 0 && base >= n {
            return Err(Error::Semantic(format!("base mark {base} out of range for n = {n}")));
        }
        Ok(QuadrupleScenario::positive(kind, marks, base))
    }
}

impl CubeScenario {
    /// `cube:ROLE:above|below[:MARKS[:BASE]]`, e.g. `cube:ml:above:0,n,0`.
    /// Marks default to all n on the arc after X.
    pub fn from_selector(sel: &str, n: usize, a: usize) -> Result<Self> {
        let bad = || Error::Syntax { line: 1, token: sel.to_string() };
        let parts: Vec<&str> = sel.split(':').collect();
        if parts.len() < 3 || parts.len() > 5 || parts[0] != "cube" {
            return Err(bad());
        }
        let q = Role::parse(parts[1]).ok_or_else(bad)?;
        let x_above = match parts[2] {
            "above" => true,
            "below" => false,
            _ => return Err(bad()),
        };
        let marks = match parts.get(3) {
            Some(list) => {
                let m = list.split(',').map(|e| eval_marks(e, n, a)).collect::<Result<Vec<_>>>()?;
                if m.len() != 3 || m.iter().sum::<usize>() != n {
                    return Err(Error::Semantic(format!("marks `{list}` must be three values adding up to n = {n}")));
                }
                [m[0], m[1], m[2]]
            }
            None => [n, 0, 0],
        };
        let base = match parts.get(4) {
            Some(b) => b.parse().map_err(|_| bad())?,
            None => 0,
        };
        if n > 0 && base >= n {
            return Err(Error::Semantic(format!("base mark {base} out of range for n = {n}")));
        }
        Ok(CubeScenario { q, x_above, reversed: [false; 3], z_last: true, marks, base })
    }
}
