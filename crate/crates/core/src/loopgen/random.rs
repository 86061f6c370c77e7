//! Random legal moves, random walks and random realizable diagrams. Every
//! move is kept only if the result is still realizable: on the sphere for
//! diagrams without infinity marks, in the annulus otherwise.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cocycle::Loop;
use crate::error::Result;
use crate::gauss::{ArrowId, GaussDiagram};
use crate::moves::{r3_sites, Gap, MoveEvent};
use crate::planar::{is_annulus_realizable, is_planar};

use super::{classical_closure, BraidWord};

pub fn is_realizable(g: &GaussDiagram) -> bool {
    if g.n() == 0 {
        is_planar(g)
    } else {
        is_annulus_realizable(g)
    }
}

/// Every place a new endpoint can go.
pub fn gaps(g: &GaussDiagram) -> Vec<Gap> {
    let mut out = Vec::new();
    for (ci, c) in g.circles().iter().enumerate() {
        if ci == g.base_circle() {
            let hi = if g.n() > 0 { c.len() - 1 } else { c.len() };
            out.extend((1..=hi).map(|index| Gap { circle: ci, index }));
        } else {
            out.extend((0..c.len().max(1)).map(|index| Gap { circle: ci, index }));
        }
    }
    out
}

/// Arrows whose endpoints are adjacent.
pub fn kinks(g: &GaussDiagram) -> Vec<ArrowId> {
    g.locations()
        .into_iter()
        .filter(|(_, l)| l.foot.0 == l.head.0 && l.foot.1.abs_diff(l.head.1) == 1)
        .map(|(a, _)| a)
        .collect()
}

/// Pairs of arrows bounding a bigon.
pub fn bigons(g: &GaussDiagram) -> Vec<(ArrowId, ArrowId)> {
    let locs = g.locations();
    let adj = |x: (usize, usize), y: (usize, usize)| x.0 == y.0 && x.1.abs_diff(y.1) == 1;
    let mut out = Vec::new();
    for (&a, la) in &locs {
        for (&b, lb) in locs.range(a + 1..) {
            if g.signs()[&a] != g.signs()[&b] && adj(la.head, lb.head) && adj(la.foot, lb.foot) {
                out.push((a, b));
            }
        }
    }
    out
}

fn sign<R: Rng>(rng: &mut R) -> i8 {
    if rng.gen_bool(0.5) {
        1
    } else {
        -1
    }
}

/// A random legal move keeping the diagram realizable and at most
/// `max_arrows` arrows; None if none was found after a few tries.
pub fn random_move<R: Rng>(g: &GaussDiagram, rng: &mut R, max_arrows: usize) -> Option<MoveEvent> {
    let gs = gaps(g);
    for _ in 0..60 {
        if let Some(e) = attempt(g, &gs, rng, max_arrows) {
            return Some(e);
        }
    }
    None
}

fn attempt<R: Rng>(g: &GaussDiagram, gs: &[Gap], rng: &mut R, max_arrows: usize) -> Option<MoveEvent> {
    // kinks are cheap and dull: draw them less often
    let kind = [0, 1, 1, 2, 2, 2, 3, 3, 4, 4, 4, 4][rng.gen_range(0..12)];
    let e = match kind {
        0 if g.num_arrows() < max_arrows => {
            MoveEvent::r1_insert(g.next_free_id(), *gs.choose(rng)?, sign(rng), rng.gen_bool(0.5))
        }
        1 => MoveEvent::r1_delete(*kinks(g).choose(rng)?),
        2 if g.num_arrows() + 2 <= max_arrows => {
            // most pairs of gaps do not face each other: list the ones that
            // do for a random over gap
            let a = g.next_free_id();
            let o = *gs.choose(rng)?;
            let mut ok = Vec::new();
            for &u in gs {
                for bits in 0..8u8 {
                    if bits & 4 != 0 && o != u {
                        continue;
                    }
                    let s = if bits & 1 == 1 { 1 } else { -1 };
                    let e = MoveEvent::r2_insert((a, a + 1), o, u, s, bits & 2 != 0, bits & 4 != 0);
                    if e.apply(g).map(|h| is_realizable(&h)).unwrap_or(false) {
                        ok.push(e);
                    }
                }
            }
            return ok.choose(rng).cloned();
        }
        3 => {
            let (a, b) = *bigons(g).choose(rng)?;
            MoveEvent::r2_delete(a, b)
        }
        4 => {
            let t = r3_sites(g).choose(rng)?.clone();
            MoveEvent::r3_in(g, t.arrows()).ok()?
        }
        _ => return None,
    };
    let h = e.apply(g).ok()?;
    is_realizable(&h).then_some(e)
}

/// An open path of up to `len` random moves.
pub fn random_walk<R: Rng>(g: &GaussDiagram, len: usize, rng: &mut R, max_arrows: usize) -> Result<Loop> {
    let mut l = Loop::new(g.clone());
    let mut cur = g.clone();
    for _ in 0..len {
        match random_move(&cur, rng, max_arrows) {
            Some(e) => {
                cur = e.apply(&cur)?;
                l.events.push(e);
            }
            None => break,
        }
    }
    Ok(l)
}

/// A random braid on at most `max_strands` strands whose closure is a knot.
pub fn random_cyclic_braid<R: Rng>(rng: &mut R, max_strands: usize, max_len: usize) -> BraidWord {
    loop {
        let m = rng.gen_range(1..=max_strands.max(1));
        if m == 1 {
            return BraidWord { strands: 1, letters: Vec::new() };
        }
        let len = rng.gen_range((max_len / 2).max(m - 1)..=max_len.max(m - 1));
        let letters = (0..len).map(|_| (rng.gen_range(1..m), sign(rng))).collect();
        let b = BraidWord { strands: m, letters };
        if b.is_cyclic() {
            return b;
        }
    }
}

/// A random realizable one-circle diagram with at most `max_arrows` arrows
/// and no infinity marks: a closed braid stirred by random moves.
pub fn random_realizable<R: Rng>(rng: &mut R, max_arrows: usize) -> Result<GaussDiagram> {
    let b = random_cyclic_braid(rng, (max_arrows + 1).min(4), max_arrows);
    let start = classical_closure(&b, 1)?;
    let steps = rng.gen_range(0..=16);
    random_walk(&start, steps, rng, max_arrows)?.end()
}
