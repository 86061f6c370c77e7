//! Loops in the space of diagrams: the push loop of a braid-closed cable and
//! small meridians around codimension-2 strata.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cocycle::Loop;
use crate::error::{Error, Result};
use crate::gauss::{ArrowId, GaussDiagram, Point};
use crate::moves::{triangle, MoveEvent};

pub mod meridian;
pub mod random;

/// A braid on `strands` strands. Letter (i, +1) is σ_i: the strand coming
/// from position i+1 passes over the one coming from i; (i, -1) is its
/// inverse. Positions are numbered 1..=strands, position 1 outermost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Result<Self> {
        for &(i, s) in &letters {
            if i == 0 || i >= strands || (s != 1 && s != -1) {
                return Err(Error::Semantic(format!("bad braid letter ({i}, {s}) on {strands} strands")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// σ_1 σ_2 ... σ_{n-1}
    pub fn cyclic(n: usize) -> Self {
        BraidWord { strands: n, letters: (1..n).map(|i| (i, 1)).collect() }
    }

    /// Final position of the strand entering at each position.
    pub fn permutation(&self) -> Vec<usize> {
        (1..=self.strands)
            .map(|mut p| {
                for &(i, _) in &self.letters {
                    if p == i {
                        p = i + 1;
                    } else if p == i + 1 {
                        p = i;
                    }
                }
                p
            })
            .collect()
    }

    pub fn is_cyclic(&self) -> bool {
        let perm = self.permutation();
        let mut p = 1;
        for k in 1..=self.strands {
            p = perm[p - 1];
            if p == 1 {
                return k == self.strands;
            }
        }
        false
    }
}

/// The blackboard n-cable of a long knot. Copy j runs j steps to the left
/// of copy 1; a crossing `a` of the knot becomes the n² crossings
/// `grid[(a, over copy, under copy)]`, all of the sign of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cable {
    pub n: usize,
    /// the word of each copy, copy 1 first
    pub strands: Vec<Vec<Point>>,
    pub signs: BTreeMap<ArrowId, i8>,
    pub grid: BTreeMap<(ArrowId, usize, usize), ArrowId>,
}

impl Cable {
    pub fn arrows(&self) -> BTreeSet<ArrowId> {
        self.signs.keys().copied().collect()
    }

    pub fn num_crossings(&self) -> usize {
        self.signs.len()
    }

    /// The cable as an n-component diagram, each copy closed up on itself
    /// and the base point at the start of copy 1.
    pub fn to_diagram(&self) -> Result<GaussDiagram> {
        let mut circles = self.strands.clone();
        if circles.is_empty() {
            return Err(Error::Semantic("empty cable".into()));
        }
        circles[0].insert(0, Point::Base);
        GaussDiagram::new(circles, self.signs.clone())
    }
}

/// Cables a long knot, read from its base point, with n parallel copies.
pub fn cable(k: &GaussDiagram, n: usize) -> Result<Cable> {
    if n < 1 {
        return Err(Error::Semantic("a cable needs at least one copy".into()));
    }
    if k.circles().len() != 1 || k.n() != 0 {
        return Err(Error::Semantic("cabling needs a classical long knot".into()));
    }
    let ids: Vec<ArrowId> = k.arrow_ids().collect();
    let mut grid = BTreeMap::new();
    let mut signs = BTreeMap::new();
    for (t, &a) in ids.iter().enumerate() {
        for j in 1..=n {
            for jj in 1..=n {
                let id = (t * n * n + (j - 1) * n + jj) as ArrowId;
                grid.insert((a, j, jj), id);
                signs.insert(id, k.signs()[&a]);
            }
        }
    }
    let up: Vec<usize> = (1..=n).collect();
    let down: Vec<usize> = (1..=n).rev().collect();
    let mut strands = Vec::new();
    for j in 1..=n {
        let mut w = Vec::new();
        for p in &k.circles()[0] {
            match *p {
                Point::Head(a) => {
                    // over copy j meets the under copies outermost-last for a
                    // positive crossing
                    let order = if k.signs()[&a] > 0 { &down } else { &up };
                    w.extend(order.iter().map(|&jj| Point::Head(grid[&(a, j, jj)])));
                }
                Point::Foot(a) => {
                    let order = if k.signs()[&a] > 0 { &up } else { &down };
                    w.extend(order.iter().map(|&jo| Point::Foot(grid[&(a, jo, j)])));
                }
                _ => {}
            }
        }
        strands.push(w);
    }
    Ok(Cable { n, strands, signs, grid })
}

/// σ ∪ nK′ in the solid torus: the cable, then the braid, then the disc at
/// infinity, around the annulus once per strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub diagram: GaussDiagram,
    /// braid letters in the order met along the strands, last = nearest to
    /// the disc at infinity
    pub letters: Vec<ArrowId>,
    pub cable_arrows: BTreeSet<ArrowId>,
}

/// Closes the cable with a cyclic braid. The base point follows the mark of
/// the strand at position `base_position` on the disc at infinity (the
/// lowest one there).
pub fn close_with_braid(c: &Cable, sigma: &BraidWord, base_position: usize) -> Result<Closure> {
    if sigma.strands != c.n {
        return Err(Error::Semantic(format!("{}-braid on a {}-cable", sigma.strands, c.n)));
    }
    if !sigma.is_cyclic() {
        return Err(Error::Semantic("the braid does not permute its strands cyclically".into()));
    }
    if base_position < 1 || base_position > c.n {
        return Err(Error::Semantic(format!("no position {base_position}")));
    }
    let first = c.signs.keys().next_back().copied().unwrap_or(0) + 1;
    let letters: Vec<ArrowId> = (0..sigma.letters.len()).map(|k| first + k as ArrowId).collect();
    let mut signs = c.signs.clone();
    for (k, &(_, s)) in sigma.letters.iter().enumerate() {
        signs.insert(letters[k], s);
    }
    let mut word = Vec::new();
    let mut p = 1;
    for _ in 0..c.n {
        word.extend_from_slice(&c.strands[p - 1]);
        for (k, &(i, s)) in sigma.letters.iter().enumerate() {
            if p != i && p != i + 1 {
                continue;
            }
            let from_upper = p == i + 1;
            let over = if s > 0 { from_upper } else { !from_upper };
            word.push(if over { Point::Head(letters[k]) } else { Point::Foot(letters[k]) });
            p = if from_upper { i } else { i + 1 };
        }
        word.push(Point::Mark);
        if p == base_position {
            word.push(Point::Base);
        }
    }
    let diagram = GaussDiagram::new(vec![word], signs)?;
    Ok(Closure { diagram, letters, cable_arrows: c.arrows() })
}

/// The closure of a braid as a classical knot diagram, read from the bottom
/// of strand `base_position`.
pub fn classical_closure(sigma: &BraidWord, base_position: usize) -> Result<GaussDiagram> {
    let c = cable(&GaussDiagram::unknot(), sigma.strands)?;
    let cl = close_with_braid(&c, sigma, base_position)?;
    let circles = cl.diagram.circles().iter().map(|c| c.iter().copied().filter(|p| *p != Point::Mark).collect()).collect();
    GaussDiagram::new(circles, cl.diagram.signs().clone())
}

/// Next point after position `i` on circle `c`, cyclically.
fn next_after(g: &GaussDiagram, (c, i): (usize, usize)) -> Point {
    let circ = &g.circles()[c];
    circ[(i + 1) % circ.len()]
}

/// The push loop: each braid letter in turn, starting with the one nearest
/// the disc at infinity, is carried through the disc and then along the
/// cable until it is back in the braid region, behind the other letters.
/// After one round per letter the braid is back in place.
///
/// Per letter there is one pass and 2·n·c Reidemeister III moves for a knot
/// with c crossings, so the loop has k·(1 + 2nc) events for a k-letter braid.
pub fn push_loop(k: &GaussDiagram, n: usize, sigma: &BraidWord, base_position: usize) -> Result<Loop> {
    let c = cable(k, n)?;
    let cl = close_with_braid(&c, sigma, base_position)?;
    let mut g = cl.diagram.clone();
    let mut events = Vec::new();
    let mut order = cl.letters.clone();
    for _ in 0..order.len() {
        let x = *order.last().unwrap();
        let mut passed = false;
        loop {
            let loc = g.locate(x)?;
            let (nf, nh) = (next_after(&g, loc.foot), next_after(&g, loc.head));
            let e = match (nf.arrow(), nh.arrow()) {
                (Some(y), Some(z)) if cl.cable_arrows.contains(&y) && cl.cable_arrows.contains(&z) => {
                    triangle(&g, [x, y, z])?;
                    MoveEvent::r3_in(&g, [x, y, z])?
                }
                _ if !passed && nf == Point::Mark && nh == Point::Mark => {
                    passed = true;
                    MoveEvent::pass(x, true)
                }
                _ if passed => break,
                _ => return Err(Error::IllegalMove(format!("letter {x} is stuck before {nf:?}, {nh:?}"))),
            };
            g = e.apply(&g)?;
            events.push(e);
        }
        order.rotate_right(1);
    }
    Ok(Loop { start: cl.diagram, events })
}

/// Classical knots used throughout, as long knots read from the base point.
pub mod knots {
    use crate::gauss::{parse_gauss_code, GaussDiagram};

    pub const UNKNOT: &str = "@";
    pub const RIGHT_TREFOIL: &str = "@ O1+ U2+ O3+ U1+ O2+ U3+";
    pub const LEFT_TREFOIL: &str = "@ O1- U2- O3- U1- O2- U3-";
    pub const FIGURE_EIGHT: &str = "@ O1- U2- O3+ U4+ O2- U1- O4+ U3+";

    pub fn get(name: &str) -> Option<GaussDiagram> {
        let code = match name {
            "unknot" => UNKNOT,
            "right-trefoil" | "trefoil" => RIGHT_TREFOIL,
            "left-trefoil" => LEFT_TREFOIL,
            "figure-eight" => FIGURE_EIGHT,
            _ => return None,
        };
        Some(parse_gauss_code(code).unwrap())
    }

    pub const NAMES: [&str; 4] = ["unknot", "right-trefoil", "left-trefoil", "figure-eight"];
}
