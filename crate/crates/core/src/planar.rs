//! Planarity of Gauss diagrams via rotation systems.
//!
//! Each crossing is a 4-valent vertex whose cyclic order of half-edges is
//! fixed by its sign. A diagram is realizable on the sphere iff the traced
//! faces give Euler characteristic 2 per connected component. For the annulus
//! we also draw the ray from the centre through every infinity mark.

use std::collections::{BTreeMap, BTreeSet};

use crate::gauss::{ArrowId, GaussDiagram, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Vx {
    X(ArrowId),
    M(usize),
    Centre,
    Infinity,
}

// half-edge slots
const OIN: u8 = 0;
const OOUT: u8 = 1;
const UIN: u8 = 2;
const UOUT: u8 = 3;
// at a mark: ray in/out and curve in/out
const RIN: u8 = 0;
const ROUT: u8 = 1;
const CIN: u8 = 2;
const COUT: u8 = 3;

type He = (Vx, u8);

struct Graph {
    next: BTreeMap<He, He>,
    other: BTreeMap<He, He>,
    vertices: BTreeSet<Vx>,
}

impl Graph {
    fn new() -> Self {
        Graph { next: BTreeMap::new(), other: BTreeMap::new(), vertices: BTreeSet::new() }
    }

    fn rotation(&mut self, v: Vx, ccw: &[u8]) {
        self.vertices.insert(v);
        for i in 0..ccw.len() {
            self.next.insert((v, ccw[i]), (v, ccw[(i + 1) % ccw.len()]));
        }
    }

    fn edge(&mut self, a: He, b: He) {
        self.other.insert(a, b);
        self.other.insert(b, a);
    }

    fn is_planar(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = BTreeSet::new();
        let mut faces = 0i64;
        for &h in self.other.keys() {
            if seen.contains(&h) {
                continue;
            }
            faces += 1;
            let mut x = h;
            while seen.insert(x) {
                x = self.next[&self.other[&x]];
            }
        }
        // components by union-find over edges
        let vs: Vec<Vx> = self.vertices.iter().copied().collect();
        let idx: BTreeMap<Vx, usize> = vs.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut parent: Vec<usize> = (0..vs.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (a, b) in &self.other {
            let (x, y) = (find(&mut parent, idx[&a.0]), find(&mut parent, idx[&b.0]));
            parent[x] = y;
        }
        let comps = (0..vs.len()).filter(|&i| find(&mut parent, i) == i).count() as i64;
        let v = vs.len() as i64;
        let e = self.other.len() as i64 / 2;
        v - e + faces == 2 * comps
    }
}

fn crossing_rotation(sign: i8) -> [u8; 4] {
    if sign > 0 {
        [OOUT, UOUT, OIN, UIN]
    } else {
        [OOUT, UIN, OIN, UOUT]
    }
}

/// Builds the curve part of the graph. Marks become vertices when `marks` is
/// set; otherwise they are ignored like the base point.
fn curve_graph(circles: &[Vec<Point>], signs: &BTreeMap<ArrowId, i8>, marks: bool) -> (Graph, usize) {
    let mut g = Graph::new();
    for (a, s) in signs {
        g.rotation(Vx::X(*a), &crossing_rotation(*s));
    }
    let mut mark_count = 0;
    for c in circles {
        let mut vs: Vec<(He, He)> = Vec::new(); // (incoming, outgoing) half-edge per vertex passage
        for p in c {
            match *p {
                Point::Foot(a) => vs.push(((Vx::X(a), UIN), (Vx::X(a), UOUT))),
                Point::Head(a) => vs.push(((Vx::X(a), OIN), (Vx::X(a), OOUT))),
                Point::Mark if marks => {
                    let v = Vx::M(mark_count);
                    mark_count += 1;
                    g.rotation(v, &[ROUT, COUT, RIN, CIN]);
                    vs.push(((v, CIN), (v, COUT)));
                }
                _ => {}
            }
        }
        let k = vs.len();
        for i in 0..k {
            g.edge(vs[i].1, vs[(i + 1) % k].0);
        }
    }
    (g, mark_count)
}

/// Sphere realizability of a signed diagram (marks ignored).
pub fn is_planar(g: &GaussDiagram) -> bool {
    curve_graph(g.circles(), g.signs(), false).0.is_planar()
}

/// Realizability in the annulus, with each infinity mark a positive pass
/// through a ray from the hole to the outside. All orders of the marks along
/// the ray are tried.
pub fn is_annulus_realizable(g: &GaussDiagram) -> bool {
    let (base, k) = curve_graph(g.circles(), g.signs(), true);
    if k == 0 {
        return base.is_planar();
    }
    let mut order: Vec<usize> = (0..k).collect();
    loop {
        let mut gr = Graph { next: base.next.clone(), other: base.other.clone(), vertices: base.vertices.clone() };
        gr.rotation(Vx::Centre, &[0]);
        gr.rotation(Vx::Infinity, &[0]);
        gr.edge((Vx::Centre, 0), (Vx::M(order[0]), RIN));
        for w in order.windows(2) {
            gr.edge((Vx::M(w[0]), ROUT), (Vx::M(w[1]), RIN));
        }
        gr.edge((Vx::M(order[k - 1]), ROUT), (Vx::Infinity, 0));
        if gr.is_planar() {
            return true;
        }
        if !next_permutation(&mut order) {
            return false;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realizability {
    Realizable,
    NotRealizable,
    /// More arrows than the exhaustive search handles.
    Undecided,
}

pub const REALIZABILITY_LIMIT: usize = 10;

/// Whether the underlying chord diagram of a one-circle diagram is the Gauss
/// diagram of some closed planar curve. Signs and marks are ignored.
pub fn realizable(g: &GaussDiagram) -> Realizability {
    let ids: Vec<ArrowId> = g.arrow_ids().collect();
    if ids.len() > REALIZABILITY_LIMIT {
        return Realizability::Undecided;
    }
    if !even_interlacement(g) {
        return Realizability::NotRealizable;
    }
    for bits in 0u32..(1 << ids.len()) {
        let signs: BTreeMap<ArrowId, i8> =
            ids.iter().enumerate().map(|(i, a)| (*a, if bits >> i & 1 == 1 { 1 } else { -1 })).collect();
        if curve_graph(g.circles(), &signs, false).0.is_planar() {
            return Realizability::Realizable;
        }
    }
    Realizability::NotRealizable
}

/// Necessary condition for planar curves: every chord meets an even number
/// of other chords.
pub fn even_interlacement(g: &GaussDiagram) -> bool {
    let locs = g.locations();
    let span: Vec<(usize, usize)> = locs
        .values()
        .map(|l| {
            let (a, b) = (l.foot.1, l.head.1);
            (a.min(b), a.max(b))
        })
        .collect();
    span.iter().all(|&(a, b)| {
        let k = span.iter().filter(|&&(c, d)| (a < c && c < b) != (a < d && d < b)).count();
        k % 2 == 0
    })
}
