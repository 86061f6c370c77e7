//! Arrow-diagram configurations, Gauss diagram formulas and their evaluation
//! by homomorphism counting.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::gauss::{circle_lines, parse_sign, sign_char, split_crossing_token, ArrowId, GaussDiagram, Point};

/// Marking constraint carried by a configuration arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarkClass {
    Zero,
    N,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tag {
    pub class: Option<MarkClass>,
    /// The arrow must be sent to the distinguished arrow `hm`.
    pub hm: bool,
}

/// An arrow diagram used as a pattern. Signs are `Some(±1)` or `None`
/// (unsigned); a configuration is either fully signed or fully unsigned.
/// A base point on a circle anchors it: its word is then read linearly from
/// the base point, otherwise cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    circles: Vec<Vec<Point>>,
    signs: BTreeMap<ArrowId, Option<i8>>,
    tags: BTreeMap<ArrowId, Tag>,
}

impl Configuration {
    pub fn new(
        mut circles: Vec<Vec<Point>>,
        signs: BTreeMap<ArrowId, Option<i8>>,
        tags: BTreeMap<ArrowId, Tag>,
    ) -> Result<Self> {
        let mut feet = BTreeSet::new();
        let mut heads = BTreeSet::new();
        for c in &circles {
            let mut bases = 0;
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
                    Point::Mark => return Err(Error::Semantic("configurations carry no infinity marks".into())),
                }
            }
            if bases > 1 {
                return Err(Error::Semantic("two base points on one circle".into()));
            }
        }
        if feet != heads || feet != signs.keys().copied().collect::<BTreeSet<_>>() {
            return Err(Error::Semantic("arrow endpoints and sign table disagree".into()));
        }
        let signed = signs.values().filter(|s| s.is_some()).count();
        if signed != 0 && signed != signs.len() {
            return Err(Error::Semantic("signed and unsigned arrows mixed in one configuration".into()));
        }
        if tags.keys().any(|a| !signs.contains_key(a)) {
            return Err(Error::Semantic("tag on a missing arrow".into()));
        }
        if tags.values().filter(|t| t.hm).count() > 1 {
            return Err(Error::Semantic("more than one [hm] arrow".into()));
        }
        for c in circles.iter_mut() {
            if let Some(i) = c.iter().position(|p| *p == Point::Base) {
                c.rotate_left(i);
            }
        }
        Ok(Configuration { circles, signs, tags: tags.into_iter().filter(|(_, t)| *t != Tag::default()).collect() })
    }

    /// The configuration of a whole diagram: marks dropped, signs kept.
    pub fn of_diagram(g: &GaussDiagram) -> Configuration {
        let circles = g.circles().iter().map(|c| c.iter().copied().filter(|p| *p != Point::Mark).collect()).collect();
        let signs = g.signs().iter().map(|(a, s)| (*a, Some(*s))).collect();
        Configuration { circles, signs, tags: BTreeMap::new() }
    }

    pub fn circles(&self) -> &[Vec<Point>] {
        &self.circles
    }

    pub fn num_arrows(&self) -> usize {
        self.signs.len()
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        self.signs.keys().copied()
    }

    pub fn sign(&self, a: ArrowId) -> Option<i8> {
        self.signs[&a]
    }

    pub fn tag(&self, a: ArrowId) -> Tag {
        self.tags.get(&a).copied().unwrap_or_default()
    }

    pub fn is_unsigned(&self) -> bool {
        self.signs.values().all(|s| s.is_none())
    }

    pub fn is_anchored(&self) -> bool {
        self.circles.iter().any(|c| c.first() == Some(&Point::Base))
    }

    pub fn without_tags(&self) -> Configuration {
        Configuration { tags: BTreeMap::new(), ..self.clone() }
    }

    pub fn with_tags(&self, tags: BTreeMap<ArrowId, Tag>) -> Result<Configuration> {
        Configuration::new(self.circles.clone(), self.signs.clone(), tags)
    }

    /// Word of one circle without the base point.
    pub fn word(&self, c: usize) -> Vec<Point> {
        self.circles[c].iter().copied().filter(|p| *p != Point::Base).collect()
    }

    /// Relabel arrows by first appearance and return the rotation-minimal
    /// form; two configurations are equivalent iff their canonical forms agree.
    pub fn canonical(&self) -> Configuration {
        let free: Vec<usize> = (0..self.circles.len()).filter(|&i| !self.circles[i].contains(&Point::Base)).collect();
        let mut best: Option<Configuration> = None;
        let mut rot = vec![0usize; free.len()];
        loop {
            let mut c = self.clone();
            for (k, &ci) in free.iter().enumerate() {
                c.circles[ci].rotate_left(rot[k]);
            }
            let c = c.relabeled();
            if best.as_ref().is_none_or(|b| c.key() < b.key()) {
                best = Some(c);
            }
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

    fn key(&self) -> (Vec<Vec<Point>>, Vec<(ArrowId, Option<i8>)>, Vec<(ArrowId, Tag)>) {
        (
            self.circles.clone(),
            self.signs.iter().map(|(a, s)| (*a, *s)).collect(),
            self.tags.iter().map(|(a, t)| (*a, *t)).collect(),
        )
    }

    fn relabeled(&self) -> Configuration {
        let mut map = BTreeMap::new();
        for p in self.circles.iter().flatten() {
            if let Some(a) = p.arrow() {
                let k = map.len() as ArrowId + 1;
                map.entry(a).or_insert(k);
            }
        }
        self.renamed(&map)
    }

    fn renamed(&self, map: &BTreeMap<ArrowId, ArrowId>) -> Configuration {
        let r = |p: &Point| match *p {
            Point::Foot(a) => Point::Foot(map[&a]),
            Point::Head(a) => Point::Head(map[&a]),
            x => x,
        };
        Configuration {
            circles: self.circles.iter().map(|c| c.iter().map(r).collect()).collect(),
            signs: self.signs.iter().map(|(a, s)| (map[a], *s)).collect(),
            tags: self.tags.iter().map(|(a, t)| (map[a], *t)).collect(),
        }
    }

    /// Sub-configuration on a subset of arrows.
    pub fn restrict(&self, keep: &BTreeSet<ArrowId>) -> Configuration {
        let circles = self
            .circles
            .iter()
            .map(|c| c.iter().copied().filter(|p| p.arrow().is_none_or(|a| keep.contains(&a))).collect())
            .collect();
        Configuration {
            circles,
            signs: self.signs.iter().filter(|(a, _)| keep.contains(a)).map(|(a, s)| (*a, *s)).collect(),
            tags: self.tags.iter().filter(|(a, _)| keep.contains(a)).map(|(a, t)| (*a, *t)).collect(),
        }
    }

    /// The 2^k signed configurations an unsigned one stands for, each with
    /// the product of its signs as coefficient.
    pub fn signed_expansion(&self) -> Vec<(i64, Configuration)> {
        if !self.is_unsigned() {
            return vec![(1, self.clone())];
        }
        let ids: Vec<ArrowId> = self.arrow_ids().collect();
        (0u64..1 << ids.len())
            .map(|bits| {
                let mut c = self.clone();
                let mut coef = 1;
                for (i, a) in ids.iter().enumerate() {
                    let s = if bits >> i & 1 == 1 { -1 } else { 1 };
                    coef *= s as i64;
                    c.signs.insert(*a, Some(s));
                }
                (coef, c)
            })
            .collect()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.circles.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let toks: Vec<String> = c
                .iter()
                .map(|p| match *p {
                    Point::Base => "@".to_string(),
                    Point::Mark => "*".to_string(),
                    Point::Foot(a) | Point::Head(a) => {
                        let s = self.signs[&a].map_or('?', sign_char);
                        let t = self.tag(a);
                        let mut tok = format!("{}{a}{s}", if matches!(p, Point::Head(_)) { 'O' } else { 'U' });
                        match t.class {
                            Some(MarkClass::Zero) => tok.push_str("[0]"),
                            Some(MarkClass::N) => tok.push_str("[n]"),
                            None => {}
                        }
                        if t.hm {
                            tok.push_str("[hm]");
                        }
                        tok
                    }
                })
                .collect();
            write!(f, "{}", toks.join(" "))?;
        }
        Ok(())
    }
}

/// Parses a configuration: the Gauss-code grammar with `?` as the sign of an
/// unsigned arrow and optional tags `[0]`, `[n]`, `[hm]` after the sign.
pub fn parse_configuration(text: &str) -> Result<Configuration> {
    let mut circles = Vec::new();
    let mut signs: BTreeMap<ArrowId, Option<i8>> = BTreeMap::new();
    let mut tags: BTreeMap<ArrowId, Tag> = BTreeMap::new();
    for (line, part) in circle_lines(text) {
        let mut c = Vec::new();
        for tok in part.split_whitespace() {
            let bad = || Error::Syntax { line, token: tok.to_string() };
            if tok == "@" {
                c.push(Point::Base);
                continue;
            }
            let (head, a, rest) = split_crossing_token(tok).ok_or_else(bad)?;
            let (sign_str, mut tail) = match rest.find('[') {
                Some(i) => rest.split_at(i),
                None => (rest, ""),
            };
            let s = if sign_str == "?" { None } else { Some(parse_sign(sign_str).ok_or_else(bad)?) };
            if let Some(old) = signs.insert(a, s) {
                if old != s {
                    return Err(Error::Semantic(format!("arrow {a} has two different signs")));
                }
            }
            let t = tags.entry(a).or_default();
            while !tail.is_empty() {
                let end = tail.find(']').ok_or_else(bad)?;
                match &tail[..=end] {
                    "[0]" => t.class = Some(MarkClass::Zero),
                    "[n]" => t.class = Some(MarkClass::N),
                    "[hm]" => t.hm = true,
                    _ => return Err(bad()),
                }
                tail = &tail[end + 1..];
            }
            c.push(if head { Point::Head(a) } else { Point::Foot(a) });
        }
        circles.push(c);
    }
    Configuration::new(circles, signs, tags)
}

pub fn equivalent(a: &Configuration, b: &Configuration) -> bool {
    a.circles.len() == b.circles.len() && a.num_arrows() == b.num_arrows() && a.canonical() == b.canonical()
}

/// A homomorphism of a configuration into a diagram.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Match {
    /// (configuration arrow, diagram arrow), sorted by configuration arrow.
    pub assignment: Vec<(ArrowId, ArrowId)>,
    pub sign: i8,
}

impl Match {
    pub fn image(&self) -> BTreeSet<ArrowId> {
        self.assignment.iter().map(|(_, b)| *b).collect()
    }

    pub fn image_of(&self, a: ArrowId) -> ArrowId {
        self.assignment.iter().find(|(x, _)| *x == a).unwrap().1
    }
}

/// Optional constraints honoured by tagged configurations.
#[derive(Clone, Copy, Debug, Default)]
pub struct TagContext {
    pub hm: Option<ArrowId>,
}

struct Target {
    /// per circle: the arrow endpoints in order (marks and base dropped)
    words: Vec<Vec<Point>>,
    anchored: Vec<bool>,
    /// arrow -> ((circle, index) of foot, (circle, index) of head)
    pos: BTreeMap<ArrowId, ((usize, usize), (usize, usize))>,
    signs: BTreeMap<ArrowId, i8>,
    markings: BTreeMap<ArrowId, usize>,
    n: usize,
}

impl Target {
    fn new(g: &GaussDiagram) -> Target {
        let words: Vec<Vec<Point>> =
            g.circles().iter().map(|c| c.iter().copied().filter(|p| p.is_endpoint()).collect()).collect();
        let anchored = g.circles().iter().map(|c| c.contains(&Point::Base)).collect();
        let mut feet = BTreeMap::new();
        let mut heads = BTreeMap::new();
        for (ci, w) in words.iter().enumerate() {
            for (i, p) in w.iter().enumerate() {
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
        let pos = feet.into_iter().map(|(a, f)| (a, (f, heads[&a]))).collect();
        let markings = g.arrow_ids().filter_map(|a| g.marking(a).ok().map(|m| (a, m))).collect();
        Target { words, anchored, pos, signs: g.signs().clone(), markings, n: g.n() }
    }
}

/// Enumerates Hom(A, G). Configuration circle i is sent to diagram circle i.
/// Anchored circles must go to the circle of the base point and are read
/// linearly from it; unanchored circles are read cyclically. With
/// `use_tags`, marking classes and the `[hm]` tag are enforced.
pub fn enumerate_matches_with(
    a: &Configuration,
    g: &GaussDiagram,
    use_tags: bool,
    ctx: TagContext,
) -> Vec<Match> {
    let t = Target::new(g);
    if a.circles.len() > t.words.len() {
        return Vec::new();
    }
    for (i, c) in a.circles.iter().enumerate() {
        if c.first() == Some(&Point::Base) && !t.anchored[i] {
            return Vec::new();
        }
    }
    let letters: Vec<(usize, Point)> =
        (0..a.circles.len()).flat_map(|c| a.word(c).into_iter().map(move |p| (c, p))).collect();
    let mut st = Search {
        a,
        t: &t,
        use_tags,
        ctx,
        letters: &letters,
        map: BTreeMap::new(),
        used: BTreeSet::new(),
        out: Vec::new(),
    };
    st.go(0, None, None);
    let mut out = st.out;
    out.sort();
    out
}

pub fn enumerate_matches(a: &Configuration, g: &GaussDiagram) -> Vec<Match> {
    enumerate_matches_with(a, g, false, TagContext::default())
}

struct Search<'a> {
    a: &'a Configuration,
    t: &'a Target,
    use_tags: bool,
    ctx: TagContext,
    letters: &'a [(usize, Point)],
    map: BTreeMap<ArrowId, ArrowId>,
    used: BTreeSet<ArrowId>,
    out: Vec<Match>,
}

impl Search<'_> {
    /// `prev`: index of the previous letter's image on the current circle;
    /// `start`: where a cyclic circle was entered.
    fn go(&mut self, k: usize, prev: Option<usize>, start: Option<usize>) {
        if k == self.letters.len() {
            let mut sign = 1i8;
            if self.a.is_unsigned() {
                for b in self.map.values() {
                    sign *= self.t.signs[b];
                }
            }
            self.out.push(Match { assignment: self.map.iter().map(|(x, y)| (*x, *y)).collect(), sign });
            return;
        }
        let (c, p) = self.letters[k];
        let new_circle = k == 0 || self.letters[k - 1].0 != c;
        let (prev, start) = if new_circle { (None, None) } else { (prev, start) };
        let len = self.t.words[c].len();
        let cyclic = !self.t.anchored[c] || !self.a.circles[c].contains(&Point::Base);
        // rank of a position in the order used for this circle
        let rank = |i: usize, start: Option<usize>| -> usize {
            match (cyclic, start) {
                (true, Some(s)) => (i + len - s) % len,
                _ => i,
            }
        };
        let a_arrow = p.arrow().unwrap();
        let want_head = matches!(p, Point::Head(_));
        if let Some(&b) = self.map.get(&a_arrow) {
            let (f, h) = self.t.pos[&b];
            let (ci, i) = if want_head { h } else { f };
            if ci != c {
                return;
            }
            let ok = match prev {
                None => true,
                Some(pv) => rank(i, start) > rank(pv, start),
            };
            if ok {
                let s = if start.is_none() && cyclic { Some(i) } else { start };
                self.go(k + 1, Some(i), s);
            }
            return;
        }
        let lo = match prev {
            None => 0,
            Some(pv) => rank(pv, start) + 1,
        };
        let candidates: Vec<usize> = match (cyclic, start) {
            (true, Some(s)) => (lo..len).map(|r| (r + s) % len).collect(),
            _ => (lo..len).collect(),
        };
        for i in candidates {
            let q = self.t.words[c][i];
            let b = q.arrow().unwrap();
            if matches!(q, Point::Head(_)) != want_head || self.used.contains(&b) {
                continue;
            }
            if !self.compatible(a_arrow, b) {
                continue;
            }
            self.map.insert(a_arrow, b);
            self.used.insert(b);
            let s = if start.is_none() && cyclic { Some(i) } else { start };
            self.go(k + 1, Some(i), s);
            self.map.remove(&a_arrow);
            self.used.remove(&b);
        }
    }

    fn compatible(&self, a: ArrowId, b: ArrowId) -> bool {
        if let Some(s) = self.a.sign(a) {
            if s != self.t.signs[&b] {
                return false;
            }
        }
        // the other endpoint must lie on the matching circle
        let (f, h) = self.t.pos[&b];
        for (ci, c) in self.a.circles.iter().enumerate() {
            for p in c {
                match *p {
                    Point::Foot(x) if x == a && f.0 != ci => return false,
                    Point::Head(x) if x == a && h.0 != ci => return false,
                    _ => {}
                }
            }
        }
        if self.use_tags {
            let t = self.a.tag(a);
            if t.hm && self.ctx.hm != Some(b) {
                return false;
            }
            if let Some(class) = t.class {
                let m = match self.t.markings.get(&b) {
                    Some(m) => *m,
                    None => return false,
                };
                let want = match class {
                    MarkClass::Zero => 0,
                    MarkClass::N => self.t.n,
                };
                if m != want {
                    return false;
                }
            }
        }
        true
    }
}

/// ⟨A, G⟩ = Σ_φ sign(φ).
pub fn pairing(a: &Configuration, g: &GaussDiagram) -> i64 {
    enumerate_matches(a, g).iter().map(|m| m.sign as i64).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coefficient: i64,
    pub label: Option<String>,
    pub config: Configuration,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Formula {
    pub terms: Vec<Term>,
}

impl Formula {
    pub fn term(&self, label: &str) -> Option<&Term> {
        self.terms.iter().find(|t| t.label.as_deref() == Some(label))
    }

    pub fn max_arrows(&self) -> usize {
        self.terms.iter().map(|t| t.config.num_arrows()).max().unwrap_or(0)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{:+}", t.coefficient)?;
            if let Some(l) = &t.label {
                write!(f, " [{l}]")?;
            }
            writeln!(f)?;
            writeln!(f, "{}", t.config)?;
        }
        Ok(())
    }
}

/// Formula files: blocks separated by blank lines; each block is a
/// coefficient line (`+1`, optionally followed by a label like `[3]`) and one
/// configuration line per circle. `#` starts a comment.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut terms = Vec::new();
    let mut block: Vec<(usize, String)> = Vec::new();
    let flush = |block: &mut Vec<(usize, String)>, terms: &mut Vec<Term>| -> Result<()> {
        if block.is_empty() {
            return Ok(());
        }
        let (line, head) = &block[0];
        let mut it = head.split_whitespace();
        let coef_tok = it.next().unwrap();
        let coefficient: i64 = coef_tok
            .trim_start_matches('+')
            .parse()
            .map_err(|_| Error::Syntax { line: *line, token: coef_tok.to_string() })?;
        let label = it.next().map(|l| l.trim_matches(|c| c == '[' || c == ']' || c == '(' || c == ')').to_string());
        if coefficient == 0 {
            return Err(Error::Semantic(format!("zero coefficient on line {line}")));
        }
        let body: Vec<String> = block[1..].iter().map(|(_, s)| s.clone()).collect();
        let config = parse_configuration(&body.join("\n")).map_err(|e| match e {
            Error::Syntax { line: l, token } => Error::Syntax { line: block[l.min(body.len())].0, token },
            e => e,
        })?;
        terms.push(Term { coefficient, label, config });
        block.clear();
        Ok(())
    };
    for (i, raw) in text.lines().enumerate() {
        let l = raw.split('#').next().unwrap().trim();
        if l.is_empty() {
            flush(&mut block, &mut terms)?;
        } else {
            block.push((i + 1, l.to_string()));
        }
    }
    flush(&mut block, &mut terms)?;
    Ok(Formula { terms })
}

/// Σ_i c_i ⟨A_i, G⟩.
pub fn bracket(f: &Formula, g: &GaussDiagram) -> i64 {
    f.terms.iter().map(|t| t.coefficient * pairing(&t.config, g)).sum()
}

pub const V3_SOURCE: &str = include_str!("../data/v3.formula");
pub const P02_SOURCE: &str = include_str!("../data/p02.formula");

pub fn v3_formula() -> Formula {
    parse_formula(V3_SOURCE).expect("shipped v3 formula parses")
}

pub fn p02_formula() -> Formula {
    parse_formula(P02_SOURCE).expect("shipped p02 formula parses")
}

pub fn v3(g: &GaussDiagram) -> i64 {
    bracket(&v3_formula(), g)
}

pub fn p02(g: &GaussDiagram) -> i64 {
    bracket(&p02_formula(), g)
}

pub type LinComb = Vec<(i64, Configuration)>;

/// Bilinear extension of (A, B) = [A ≡ B]. Unsigned terms are first expanded
/// into signed ones.
pub fn scalar_product(x: &LinComb, y: &LinComb) -> Result<i64> {
    let expand = |v: &LinComb| -> Vec<(i64, Configuration)> {
        v.iter().flat_map(|(c, a)| a.signed_expansion().into_iter().map(move |(s, b)| (c * s, b.canonical()))).collect()
    };
    let (ex, ey) = (expand(x), expand(y));
    let m = ex.first().map(|(_, a)| a.circles.len());
    if ex.iter().chain(ey.iter()).any(|(_, a)| Some(a.circles.len()) != m) {
        return Err(Error::Semantic("circle counts differ".into()));
    }
    let mut table: BTreeMap<String, i64> = BTreeMap::new();
    for (c, a) in &ey {
        *table.entry(a.to_string()).or_default() += c;
    }
    Ok(ex.iter().map(|(c, a)| c * table.get(&a.to_string()).copied().unwrap_or(0)).sum())
}

/// I(A) = Σ over all subsets of arrows of the sub-configuration.
pub fn endomorphism_i(a: &Configuration) -> LinComb {
    let ids: Vec<ArrowId> = a.arrow_ids().collect();
    (0u64..1 << ids.len())
        .map(|bits| {
            let keep = ids.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, x)| *x).collect();
            (1, a.restrict(&keep))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::parse_gauss_code;

    const TREFOIL: &str = "@ O1+ U2+ O3+ U1+ O2+ U3+";

    #[test]
    fn single_unsigned_arrow_in_trefoil() {
        let a = parse_configuration("U1? O1?").unwrap();
        let g = parse_gauss_code(TREFOIL).unwrap();
        let ms = enumerate_matches(&a, &g);
        assert_eq!(ms.len(), 3);
        assert!(ms.iter().all(|m| m.sign == 1));
    }

    #[test]
    fn diagram_matches_itself() {
        let g = parse_gauss_code(TREFOIL).unwrap();
        let a = Configuration::of_diagram(&g);
        assert!(!enumerate_matches(&a, &g).is_empty());
    }

    #[test]
    fn unknot_has_no_matches() {
        let a = parse_configuration("@ U1? O1?").unwrap();
        assert!(enumerate_matches(&a, &GaussDiagram::unknot()).is_empty());
    }

    #[test]
    fn formula_text_roundtrip() {
        let f = v3_formula();
        let again = parse_formula(&f.to_string()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn tags_parse() {
        let a = parse_configuration("@ U1?[n][hm] O2? O1? U2?[0]").unwrap();
        assert_eq!(a.tag(1), Tag { class: Some(MarkClass::N), hm: true });
        assert_eq!(a.tag(2), Tag { class: Some(MarkClass::Zero), hm: false });
        assert!(parse_configuration("@ U1?[x] O1?").is_err());
        assert!(parse_configuration("@ U1? O1+ U2+ O2+").is_err());
    }

    #[test]
    fn scalar_product_basics() {
        let a = parse_configuration("@ U1+ O2+ O1+ U2+").unwrap();
        let b = parse_configuration("@ U1+ O1+").unwrap();
        let b2 = parse_configuration("@ U1+ O2+ O2+").ok();
        assert!(b2.is_none());
        assert_eq!(scalar_product(&vec![(1, a.clone())], &vec![(1, a.clone())]).unwrap(), 1);
        assert_eq!(scalar_product(&vec![(1, a.clone())], &vec![(1, b.clone())]).unwrap(), 0);
        assert_eq!(scalar_product(&vec![(2, a.clone()), (1, b)], &vec![(1, a)]).unwrap(), 2);
    }

    #[test]
    fn endomorphism_term_counts() {
        let g = parse_gauss_code(TREFOIL).unwrap();
        assert_eq!(endomorphism_i(&Configuration::of_diagram(&g)).len(), 8);
        assert_eq!(endomorphism_i(&Configuration::of_diagram(&GaussDiagram::unknot())).len(), 1);
    }
}
