//! Two families of formulas with equal brackets on every realizable diagram.
//!
//! Both come from linking numbers. Take a pattern P of arrows and smooth all
//! of them: in a planar diagram the smoothed curve is a planar link, and for
//! two of its components C1, C2 the crossings with C1 over C2 and those with
//! C2 over C1 have the same signed count. So the sum over all placements of a
//! new arrow with foot on C1 and head on C2 has the same bracket as the sum
//! with the arrow reversed. `id5` uses two parallel chords and their outer
//! arcs, `id1` a Reidemeister III triangle and its two smoothed circles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{bracket, parse_configuration, Configuration, Formula, Term};
use crate::gauss::{ArrowId, GaussDiagram, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BracketIdentity {
    #[serde(rename = "id5")]
    Id5,
    #[serde(rename = "id1")]
    Id1,
}

impl BracketIdentity {
    pub const ALL: [BracketIdentity; 2] = [BracketIdentity::Id5, BracketIdentity::Id1];

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "id5" => Some(BracketIdentity::Id5),
            "id1" => Some(BracketIdentity::Id1),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BracketIdentity::Id5 => "id5",
            BracketIdentity::Id1 => "id1",
        }
    }

    /// The pattern and the two smoothed components the new arrow joins.
    fn pattern(self) -> (&'static str, [usize; 2]) {
        match self {
            // two parallel chords; arcs 0 and 2 are the two outer circles
            BracketIdentity::Id5 => ("O1? U1? U2? O2?", [0, 2]),
            // a triangle of a Reidemeister III move; arc 0 and arc 2 lie on
            // different circles after smoothing
            BracketIdentity::Id1 => ("O1? O2? U1? O3? U2? U3?", [0, 2]),
        }
    }

    /// Both sides: (foot on the first circle, foot on the second).
    pub fn sides(self) -> (Formula, Formula) {
        let (text, [x, y]) = self.pattern();
        let p = parse_configuration(text).expect("identity pattern parses");
        linking_pair(&p, x, y).expect("identity pattern is well formed")
    }
}

/// The circles obtained by smoothing every arrow of a one-circle cyclic
/// word. Arc i runs from point i to point i + 1; each circle is a list of
/// arcs.
pub fn smoothing_circles(word: &[Point]) -> Vec<Vec<usize>> {
    let k = word.len();
    let partner = |i: usize| {
        let a = word[i].arrow();
        (0..k).find(|&j| j != i && word[j].arrow() == a).unwrap()
    };
    let mut seen = vec![false; k];
    let mut out = Vec::new();
    for s in 0..k {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut arc = s;
        while !seen[arc] {
            seen[arc] = true;
            c.push(arc);
            arc = partner((arc + 1) % k);
        }
        out.push(c);
    }
    out
}

/// Sums over every placement of a new unsigned arrow between the circles
/// containing arcs `x` and `y` of the smoothed pattern: first with its foot
/// on the circle of `x`, then reversed.
pub fn linking_pair(pattern: &Configuration, x: usize, y: usize) -> Result<(Formula, Formula)> {
    if pattern.circles().len() != 1 || pattern.is_anchored() {
        return Err(Error::Semantic("pattern must be one unanchored circle".into()));
    }
    let word = pattern.word(0);
    let circles = smoothing_circles(&word);
    let find = |arc: usize| circles.iter().position(|c| c.contains(&arc));
    let (cx, cy) = match (find(x), find(y)) {
        (Some(a), Some(b)) if a != b => (a, b),
        _ => return Err(Error::Semantic(format!("arcs {x} and {y} are not on two different circles"))),
    };
    let h: ArrowId = pattern.arrow_ids().max().unwrap_or(0) + 1;
    let side = |foot_circle: usize, head_circle: usize| -> Result<Formula> {
        let mut terms = Vec::new();
        for &fa in &circles[foot_circle] {
            for &ha in &circles[head_circle] {
                let mut w = Vec::new();
                for (i, p) in word.iter().enumerate() {
                    w.push(token(*p));
                    if i == fa {
                        w.push(format!("U{h}?"));
                    }
                    if i == ha {
                        w.push(format!("O{h}?"));
                    }
                }
                terms.push(Term { coefficient: 1, label: None, config: parse_configuration(&w.join(" "))? });
            }
        }
        Ok(Formula { terms })
    };
    Ok((side(cx, cy)?, side(cy, cx)?))
}

fn token(p: Point) -> String {
    match p {
        Point::Head(a) => format!("O{a}?"),
        Point::Foot(a) => format!("U{a}?"),
        _ => unreachable!("configuration words hold endpoints only"),
    }
}

/// Both sides of the identity on `g`.
pub fn identity_sides(which: BracketIdentity, g: &GaussDiagram) -> (i64, i64) {
    let (a, b) = which.sides();
    (bracket(&a, g), bracket(&b, g))
}

pub fn verify_bracket_identity(which: BracketIdentity, g: &GaussDiagram) -> bool {
    let (x, y) = identity_sides(which, g);
    x == y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothing_parallel_chords_gives_three_circles() {
        let p = parse_configuration("O1? U1? U2? O2?").unwrap();
        let mut c = smoothing_circles(&p.word(0));
        c.sort();
        assert_eq!(c, vec![vec![0], vec![1, 3], vec![2]]);
    }

    #[test]
    fn triangle_smooths_to_two_circles() {
        let p = parse_configuration("O1? O2? U1? O3? U2? U3?").unwrap();
        assert_eq!(smoothing_circles(&p.word(0)).len(), 2);
    }

    #[test]
    fn side_sizes() {
        let (a, b) = BracketIdentity::Id5.sides();
        assert_eq!((a.terms.len(), b.terms.len()), (1, 1));
        let (a, b) = BracketIdentity::Id1.sides();
        assert_eq!((a.terms.len(), b.terms.len()), (8, 8));
    }
}
