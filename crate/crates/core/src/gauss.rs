//! Gauss diagrams of knots in the solid torus.
//!
//! A diagram is a list of oriented circles. Each circle is a cyclic sequence of
//! points: arrow feet (under-passes), arrow heads (over-passes), infinity marks
//! (passes through the disc at infinity) and a single base point, which sits
//! right after the lowest infinity mark.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ArrowId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Foot(ArrowId),
    Head(ArrowId),
    Mark,
    Base,
}

impl Point {
    pub fn arrow(self) -> Option<ArrowId> {
        match self {
            Point::Foot(a) | Point::Head(a) => Some(a),
            _ => None,
        }
    }

    pub fn kind(self) -> EndKind {
        match self {
            Point::Foot(_) => EndKind::Foot,
            Point::Head(_) => EndKind::Head,
            Point::Mark => EndKind::InfinityMark,
            Point::Base => EndKind::BasePoint,
        }
    }

    pub fn is_endpoint(self) -> bool {
        self.arrow().is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EndKind {
    Foot,
    Head,
    InfinityMark,
    BasePoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Endpoint {
    pub circle: usize,
    pub position: usize,
    pub kind: EndKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: ArrowId,
    pub foot: Endpoint,
    pub head: Endpoint,
    pub sign: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MarkedArrow {
    pub arrow: Arrow,
    pub marking: usize,
}

/// Where an arrow's endpoints sit; `circle` is the circle of the foot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Loc {
    pub foot: (usize, usize),
    pub head: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    circles: Vec<Vec<Point>>,
    signs: BTreeMap<ArrowId, i8>,
}

impl GaussDiagram {
    /// Validates and normalises: the circle carrying the base point is rotated
    /// so that the base point comes first.
    pub fn new(mut circles: Vec<Vec<Point>>, signs: BTreeMap<ArrowId, i8>) -> Result<Self> {
        let mut feet = BTreeSet::new();
        let mut heads = BTreeSet::new();
        let mut bases = 0;
        for c in &circles {
            for p in c {
                match *p {
                    Point::Foot(a) => {
                        if !feet.insert(a) {
                            return Err(Error::Semantic(format!("arrow {a} has two feet")));
                        }
                    }
                    Point::Head(a) => {
                        if !heads.insert(a) {
                            return Err(Error::Semantic(format!("arrow {a} has two heads")));
                        }
                    }
                    Point::Base => bases += 1,
                    Point::Mark => {}
                }
            }
        }
        if bases != 1 {
            return Err(Error::Semantic(format!("expected exactly one base point, found {bases}")));
        }
        if feet != heads {
            let a = feet.symmetric_difference(&heads).next().unwrap();
            return Err(Error::Semantic(format!("arrow {a} lacks a foot or a head")));
        }
        let ids: BTreeSet<ArrowId> = signs.keys().copied().collect();
        if ids != feet {
            return Err(Error::Semantic("sign table does not match the arrows".into()));
        }
        if let Some((a, s)) = signs.iter().find(|(_, s)| **s != 1 && **s != -1) {
            return Err(Error::Semantic(format!("arrow {a} has sign {s}")));
        }
        for c in circles.iter_mut() {
            if let Some(i) = c.iter().position(|p| *p == Point::Base) {
                c.rotate_left(i);
            }
        }
        let g = GaussDiagram { circles, signs };
        if g.n() > 0 {
            let c = &g.circles[g.base_circle()];
            if c.last() != Some(&Point::Mark) {
                return Err(Error::Semantic(
                    "the base point must follow an infinity mark".into(),
                ));
            }
        }
        Ok(g)
    }

    /// The unknot: a single circle carrying only the base point.
    pub fn unknot() -> Self {
        GaussDiagram { circles: vec![vec![Point::Base]], signs: BTreeMap::new() }
    }

    pub fn circles(&self) -> &[Vec<Point>] {
        &self.circles
    }

    pub fn signs(&self) -> &BTreeMap<ArrowId, i8> {
        &self.signs
    }

    pub fn sign(&self, a: ArrowId) -> Result<i8> {
        self.signs.get(&a).copied().ok_or(Error::NoSuchArrow(a))
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        self.signs.keys().copied()
    }

    pub fn num_arrows(&self) -> usize {
        self.signs.len()
    }

    pub fn contains(&self, a: ArrowId) -> bool {
        self.signs.contains_key(&a)
    }

    /// Homology class: the number of infinity marks.
    pub fn n(&self) -> usize {
        self.circles.iter().flatten().filter(|p| **p == Point::Mark).count()
    }

    pub fn base_circle(&self) -> usize {
        self.circles.iter().position(|c| c.contains(&Point::Base)).unwrap()
    }

    pub fn locations(&self) -> BTreeMap<ArrowId, Loc> {
        let mut feet = BTreeMap::new();
        let mut heads = BTreeMap::new();
        for (ci, c) in self.circles.iter().enumerate() {
            for (i, p) in c.iter().enumerate() {
                match *p {
                    Point::Foot(a) => {
                        feet.insert(a, (ci, i));
                    }
                    Point::Head(a) => {
                        heads.insert(a, (ci, i));
                    }
                    _ => {}
                }
            }
        }
        feet.into_iter().map(|(a, f)| (a, Loc { foot: f, head: heads[&a] })).collect()
    }

    pub fn locate(&self, a: ArrowId) -> Result<Loc> {
        if !self.contains(a) {
            return Err(Error::NoSuchArrow(a));
        }
        let mut foot = None;
        let mut head = None;
        for (ci, c) in self.circles.iter().enumerate() {
            for (i, p) in c.iter().enumerate() {
                if *p == Point::Foot(a) {
                    foot = Some((ci, i));
                } else if *p == Point::Head(a) {
                    head = Some((ci, i));
                }
            }
        }
        Ok(Loc { foot: foot.unwrap(), head: head.unwrap() })
    }

    pub fn arrow(&self, a: ArrowId) -> Result<Arrow> {
        let loc = self.locate(a)?;
        let ep = |(circle, position): (usize, usize), kind| Endpoint { circle, position, kind };
        Ok(Arrow {
            id: a,
            foot: ep(loc.foot, EndKind::Foot),
            head: ep(loc.head, EndKind::Head),
            sign: self.signs[&a],
        })
    }

    pub fn writhe(&self) -> i32 {
        self.signs.values().map(|s| *s as i32).sum()
    }

    pub fn next_free_id(&self) -> ArrowId {
        self.signs.keys().next_back().map_or(1, |a| a + 1)
    }

    /// Number of infinity marks met walking forward from position `from`
    /// (exclusive) to position `to` (exclusive) on circle `c`.
    fn marks_between(&self, c: usize, from: usize, to: usize) -> usize {
        let circ = &self.circles[c];
        let len = circ.len();
        let mut i = (from + 1) % len;
        let mut k = 0;
        while i != to {
            if circ[i] == Point::Mark {
                k += 1;
            }
            i = (i + 1) % len;
        }
        k
    }

    /// Homological marking: the number of infinity marks on the arc leaving
    /// the head of `q` and running forward to its foot (the loop `q+`).
    pub fn marking(&self, q: ArrowId) -> Result<usize> {
        let loc = self.locate(q)?;
        if loc.foot.0 != loc.head.0 {
            return Err(Error::Semantic(format!("arrow {q} joins two circles")));
        }
        Ok(self.marks_between(loc.head.0, loc.head.1, loc.foot.1))
    }

    /// Marks on the complementary arc, from the foot forward to the head.
    pub fn co_marking(&self, q: ArrowId) -> Result<usize> {
        let loc = self.locate(q)?;
        if loc.foot.0 != loc.head.0 {
            return Err(Error::Semantic(format!("arrow {q} joins two circles")));
        }
        Ok(self.marks_between(loc.foot.0, loc.foot.1, loc.head.1))
    }

    pub fn marked_arrows(&self) -> Result<Vec<MarkedArrow>> {
        self.arrow_ids()
            .map(|a| Ok(MarkedArrow { arrow: self.arrow(a)?, marking: self.marking(a)? }))
            .collect()
    }

    pub fn is_persistent(&self, q: ArrowId) -> Result<bool> {
        let m = self.marking(q)?;
        Ok(m == 0 || m == self.n())
    }

    /// Smooths `q`. The result lists the two new circles first: the loop
    /// leaving the head of `q` (q+), then the other one (q-).
    pub fn smooth(&self, q: ArrowId) -> Result<GaussDiagram> {
        let loc = self.locate(q)?;
        let (cf, f) = loc.foot;
        let (ch, h) = loc.head;
        let mut out: Vec<Vec<Point>> = Vec::new();
        if cf == ch {
            let c = &self.circles[cf];
            let len = c.len();
            let arc = |from: usize, to: usize| {
                let mut v = Vec::new();
                let mut i = (from + 1) % len;
                while i != to {
                    v.push(c[i]);
                    i = (i + 1) % len;
                }
                v
            };
            out.push(arc(h, f));
            out.push(arc(f, h));
            for (i, c) in self.circles.iter().enumerate() {
                if i != cf {
                    out.push(c.clone());
                }
            }
        } else {
            // merging two circles: leave along the head's circle, return via the foot's
            let a = &self.circles[ch];
            let b = &self.circles[cf];
            let mut m = Vec::new();
            m.extend_from_slice(&a[h + 1..]);
            m.extend_from_slice(&a[..h]);
            m.extend_from_slice(&b[f + 1..]);
            m.extend_from_slice(&b[..f]);
            out.push(m);
            for (i, c) in self.circles.iter().enumerate() {
                if i != cf && i != ch {
                    out.push(c.clone());
                }
            }
        }
        let mut signs = self.signs.clone();
        signs.remove(&q);
        GaussDiagram::new(out, signs)
    }

    /// Keeps only the arrows whose marking is 0 or n.
    pub fn persistent_subdiagram(&self) -> Result<GaussDiagram> {
        let mut drop = BTreeSet::new();
        for a in self.arrow_ids() {
            if !self.is_persistent(a)? {
                drop.insert(a);
            }
        }
        Ok(self.without(&drop))
    }

    /// Deletes the given arrows with their endpoints.
    pub fn without(&self, drop: &BTreeSet<ArrowId>) -> GaussDiagram {
        let circles = self
            .circles
            .iter()
            .map(|c| c.iter().copied().filter(|p| p.arrow().is_none_or(|a| !drop.contains(&a))).collect())
            .collect();
        let signs = self.signs.iter().filter(|(a, _)| !drop.contains(a)).map(|(a, s)| (*a, *s)).collect();
        GaussDiagram { circles, signs }
    }

    /// Walking from the base point, which endpoint of the persistent arrow `q`
    /// comes first.
    pub fn first_endpoint_from_infinity(&self, q: ArrowId) -> Result<EndKind> {
        let m = self.marking(q)?;
        let n = self.n();
        if m != 0 && m != n {
            return Err(Error::NotPersistent(q, m, n));
        }
        let loc = self.locate(q)?;
        let b = self.base_circle();
        if loc.foot.0 != b {
            return Err(Error::Semantic(format!("arrow {q} is not on the base circle")));
        }
        Ok(if loc.foot.1 < loc.head.1 { EndKind::Foot } else { EndKind::Head })
    }

    /// Relabels arrows 1, 2, ... in order of first appearance (circles in
    /// order, each read from its start).
    pub fn relabeled(&self) -> GaussDiagram {
        let mut map = BTreeMap::new();
        for p in self.circles.iter().flatten() {
            if let Some(a) = p.arrow() {
                let k = map.len() as ArrowId + 1;
                map.entry(a).or_insert(k);
            }
        }
        self.renamed(&map)
    }

    pub fn renamed(&self, map: &BTreeMap<ArrowId, ArrowId>) -> GaussDiagram {
        let r = |p: &Point| match *p {
            Point::Foot(a) => Point::Foot(map[&a]),
            Point::Head(a) => Point::Head(map[&a]),
            x => x,
        };
        GaussDiagram {
            circles: self.circles.iter().map(|c| c.iter().map(r).collect()).collect(),
            signs: self.signs.iter().map(|(a, s)| (map[a], *s)).collect(),
        }
    }

    /// Equality up to renaming arrows. Circles without the base point may be
    /// rotated freely.
    pub fn equivalent(&self, other: &GaussDiagram) -> bool {
        if self.circles.len() != other.circles.len() || self.num_arrows() != other.num_arrows() {
            return false;
        }
        self.canonical() == other.canonical()
    }

    pub fn canonical(&self) -> GaussDiagram {
        let free: Vec<usize> =
            (0..self.circles.len()).filter(|&i| !self.circles[i].contains(&Point::Base)).collect();
        let mut best: Option<GaussDiagram> = None;
        let mut rot = vec![0usize; free.len()];
        loop {
            let mut g = self.clone();
            for (k, &ci) in free.iter().enumerate() {
                g.circles[ci].rotate_left(rot[k]);
            }
            let g = g.relabeled();
            if best.as_ref().is_none_or(|b| key(&g) < key(b)) {
                best = Some(g);
            }
            // odometer over rotations of the unanchored circles
            let mut k = 0;
            loop {
                if k == free.len() {
                    return best.unwrap();
                }
                rot[k] += 1;
                if rot[k] < self.circles[free[k]].len().max(1) {
                    break;
                }
                rot[k] = 0;
                k += 1;
            }
        }
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            n: self.n(),
            circles: self.circles.iter().map(|c| c.iter().map(point_token).collect()).collect(),
            arrows: self.signs.iter().map(|(a, s)| ArrowJson { id: *a, sign: *s }).collect(),
        }
    }

    pub fn from_json(j: &DiagramJson) -> Result<Self> {
        let mut circles = Vec::new();
        for (li, c) in j.circles.iter().enumerate() {
            let mut v = Vec::new();
            for t in c {
                v.push(parse_point(t).ok_or_else(|| Error::Syntax { line: li + 1, token: t.clone() })?);
            }
            circles.push(v);
        }
        let signs = j.arrows.iter().map(|a| (a.id, a.sign)).collect();
        let g = GaussDiagram::new(circles, signs)?;
        if g.n() != j.n {
            return Err(Error::Semantic(format!("n = {} but {} marks", j.n, g.n())));
        }
        Ok(g)
    }
}

fn key(g: &GaussDiagram) -> (Vec<Vec<Point>>, Vec<(ArrowId, i8)>) {
    (g.circles.clone(), g.signs.iter().map(|(a, s)| (*a, *s)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub n: usize,
    pub circles: Vec<Vec<String>>,
    pub arrows: Vec<ArrowJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: ArrowId,
    pub sign: i8,
}

fn point_token(p: &Point) -> String {
    match *p {
        Point::Foot(a) => format!("U{a}"),
        Point::Head(a) => format!("O{a}"),
        Point::Mark => "*".into(),
        Point::Base => "@".into(),
    }
}

fn parse_point(t: &str) -> Option<Point> {
    match t {
        "@" => Some(Point::Base),
        "*" => Some(Point::Mark),
        _ => {
            let (kind, rest) = t.split_at(1);
            let a: ArrowId = rest.parse().ok()?;
            match kind {
                "O" => Some(Point::Head(a)),
                "U" => Some(Point::Foot(a)),
                _ => None,
            }
        }
    }
}

pub(crate) fn sign_char(s: i8) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

/// Splits a crossing token `O12+` into (is_head, label, sign-and-tail).
pub(crate) fn split_crossing_token(t: &str) -> Option<(bool, ArrowId, &str)> {
    let mut chars = t.char_indices();
    let (_, c0) = chars.next()?;
    let head = match c0 {
        'O' => true,
        'U' => false,
        _ => return None,
    };
    let digits_end = t[1..].find(|c: char| !c.is_ascii_digit()).map_or(t.len(), |i| i + 1);
    if digits_end == 1 {
        return None;
    }
    let label = t[1..digits_end].parse().ok()?;
    Some((head, label, &t[digits_end..]))
}

pub(crate) fn parse_sign(s: &str) -> Option<i8> {
    match s {
        "+" => Some(1),
        "-" | "\u{2212}" => Some(-1),
        _ => None,
    }
}

/// Lines (or `;`-separated groups) of a Gauss code, one per circle.
pub(crate) fn circle_lines(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap();
        for part in line.split(';') {
            if !part.trim().is_empty() {
                out.push((i + 1, part));
            }
        }
    }
    out
}

pub fn parse_gauss_code(text: &str) -> Result<GaussDiagram> {
    let mut circles = Vec::new();
    let mut signs: BTreeMap<ArrowId, i8> = BTreeMap::new();
    for (line, part) in circle_lines(text) {
        let mut c = Vec::new();
        for tok in part.split_whitespace() {
            let bad = || Error::Syntax { line, token: tok.to_string() };
            let p = match tok {
                "@" => Point::Base,
                "*" => Point::Mark,
                _ => {
                    let (head, a, rest) = split_crossing_token(tok).ok_or_else(bad)?;
                    let s = parse_sign(rest).ok_or_else(bad)?;
                    if let Some(old) = signs.insert(a, s) {
                        if old != s {
                            return Err(Error::Semantic(format!("arrow {a} has two different signs")));
                        }
                    }
                    if head {
                        Point::Head(a)
                    } else {
                        Point::Foot(a)
                    }
                }
            };
            c.push(p);
        }
        circles.push(c);
    }
    if circles.is_empty() {
        return Err(Error::Semantic("empty code".into()));
    }
    GaussDiagram::new(circles, signs)
}

pub fn serialize(g: &GaussDiagram) -> String {
    g.to_string()
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.circles.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let toks: Vec<String> = c
                .iter()
                .map(|p| match *p {
                    Point::Foot(a) => format!("U{a}{}", sign_char(self.signs[&a])),
                    Point::Head(a) => format!("O{a}{}", sign_char(self.signs[&a])),
                    _ => point_token(p),
                })
                .collect();
            write!(f, "{}", toks.join(" "))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for GaussDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_gauss_code(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_roundtrip() {
        let g = parse_gauss_code("@").unwrap();
        assert_eq!(g.num_arrows(), 0);
        assert_eq!(serialize(&g), "@");
    }

    #[test]
    fn base_circle_is_rotated() {
        let g = parse_gauss_code("O1+ U1+ * @ *").unwrap();
        assert_eq!(g.circles()[0][0], Point::Base);
        assert_eq!(g.n(), 2);
    }

    #[test]
    fn base_must_follow_a_mark() {
        assert!(parse_gauss_code("@ * O1+ U1+").is_err());
        assert!(parse_gauss_code("@ O1+ U1+ *").is_ok());
    }

    #[test]
    fn semantic_errors() {
        assert!(matches!(parse_gauss_code("@ O1+ O1+"), Err(Error::Semantic(_))));
        assert!(matches!(parse_gauss_code("@ O1+ U2+"), Err(Error::Semantic(_))));
        assert!(matches!(parse_gauss_code("@ O1+ U1-"), Err(Error::Semantic(_))));
        assert!(matches!(parse_gauss_code("O1+ U1+"), Err(Error::Semantic(_))));
        assert!(matches!(parse_gauss_code("@ X1+"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_gauss_code("@ O1"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn marking_counts_head_to_foot() {
        // head, mark, foot, mark, base
        let g = parse_gauss_code("@ O1+ * U1+ *").unwrap();
        assert_eq!(g.marking(1).unwrap(), 1);
        assert_eq!(g.co_marking(1).unwrap(), 1);
        let g = parse_gauss_code("@ U1+ O1+ * *").unwrap();
        assert_eq!(g.marking(1).unwrap(), 2);
        assert_eq!(g.first_endpoint_from_infinity(1).unwrap(), EndKind::Foot);
        let g = parse_gauss_code("@ O1+ U1+ * *").unwrap();
        assert_eq!(g.marking(1).unwrap(), 0);
        assert_eq!(g.first_endpoint_from_infinity(1).unwrap(), EndKind::Head);
    }

    #[test]
    fn smoothing_a_kink() {
        let g = parse_gauss_code("@ O1+ U1+").unwrap();
        let s = g.smooth(1).unwrap();
        assert_eq!(s.circles().len(), 2);
        assert_eq!(s.num_arrows(), 0);
    }

    #[test]
    fn smoothing_merges_back() {
        let g = parse_gauss_code("@ O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let s = g.smooth(1).unwrap();
        assert_eq!(s.circles().len(), 2);
        let t = s.smooth(2).unwrap();
        assert_eq!(t.circles().len(), 1);
        assert_eq!(t.num_arrows(), 1);
    }

    #[test]
    fn equivalence_ignores_labels() {
        let a = parse_gauss_code("@ O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let b = parse_gauss_code("@ O7+ U5+ O9+ U7+ O5+ U9+").unwrap();
        assert!(a.equivalent(&b));
        let c = parse_gauss_code("@ O1- U2- O3- U1- O2- U3-").unwrap();
        assert!(!a.equivalent(&c));
    }

    #[test]
    fn json_roundtrip() {
        let g = parse_gauss_code("@ O1+ * U2- O2- U1+ *").unwrap();
        let j = serde_json::to_string(&g.to_json()).unwrap();
        let back: DiagramJson = serde_json::from_str(&j).unwrap();
        assert_eq!(GaussDiagram::from_json(&back).unwrap(), g);
    }
}
