//! The weight W of a triple point and the 1-cocycle R along a loop of
//! diagrams.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{enumerate_matches, v3_formula, Formula};
use crate::gauss::{ArrowId, DiagramJson, GaussDiagram};
use crate::moves::{classify_triple, GlobalType, MoveEvent, MoveKind, TriplePoint};

/// Whether a triple point is counted by R: global type r, markings
/// (a, n, a), and the base point on d+.
pub fn contributes(t: &TriplePoint, n: usize, a: usize) -> bool {
    t.global == GlobalType::R && t.markings == (a, n, a) && t.base_on_d_plus
}

/// W: signed count of v3 configurations in the persistent subdiagram whose
/// image contains `hm` as the arrow met first from the base point.
pub fn weight(g: &GaussDiagram, hm: ArrowId) -> Result<i64> {
    weight_with(&v3_formula(), g, hm)
}

pub fn weight_with(f: &Formula, g: &GaussDiagram, hm: ArrowId) -> Result<i64> {
    let gp = g.persistent_subdiagram()?;
    if !gp.contains(hm) {
        let m = g.marking(hm)?;
        return Err(Error::NotPersistent(hm, m, g.n()));
    }
    let order: Vec<ArrowId> = gp.circles()[gp.base_circle()].iter().filter_map(|p| p.arrow()).collect();
    let mut w = 0;
    for t in &f.terms {
        for m in enumerate_matches(&t.config, &gp) {
            let img = m.image();
            if !img.contains(&hm) {
                continue;
            }
            if order.iter().find(|a| img.contains(a)) == Some(&hm) {
                w += t.coefficient * m.sign as i64;
            }
        }
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loop {
    pub start: GaussDiagram,
    pub events: Vec<MoveEvent>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LoopJson {
    pub start: DiagramJson,
    pub events: Vec<MoveEvent>,
}

impl Loop {
    pub fn new(start: GaussDiagram) -> Self {
        Loop { start, events: Vec::new() }
    }

    /// Every diagram along the loop, the start included.
    pub fn diagrams(&self) -> Result<Vec<GaussDiagram>> {
        let mut out = vec![self.start.clone()];
        for (index, e) in self.events.iter().enumerate() {
            let g = e.apply(out.last().unwrap()).map_err(|source| Error::Event { index, source: Box::new(source) })?;
            out.push(g);
        }
        Ok(out)
    }

    pub fn end(&self) -> Result<GaussDiagram> {
        Ok(self.diagrams()?.pop().unwrap())
    }

    /// Closed means the last diagram is the first one up to renaming
    /// arrows: crossings carry no names, and a loop may permute them.
    pub fn is_closed(&self) -> Result<bool> {
        let end = self.end()?;
        Ok(end == self.start || end.equivalent(&self.start))
    }

    /// The loop run backwards.
    pub fn reversed(&self) -> Result<Loop> {
        let ds = self.diagrams()?;
        let mut events = Vec::new();
        for (i, e) in self.events.iter().enumerate().rev() {
            events.push(e.inverse(&ds[i])?);
        }
        Ok(Loop { start: ds.last().unwrap().clone(), events })
    }

    /// This loop followed by `other`, which must start where this one ends.
    pub fn then(&self, other: &Loop) -> Result<Loop> {
        if self.end()? != other.start {
            return Err(Error::OpenLoop("loops do not meet".into()));
        }
        let mut events = self.events.clone();
        events.extend(other.events.iter().cloned());
        Ok(Loop { start: self.start.clone(), events })
    }

    pub fn to_json(&self) -> LoopJson {
        LoopJson { start: self.start.to_json(), events: self.events.clone() }
    }

    pub fn from_json(j: &LoopJson) -> Result<Self> {
        Ok(Loop { start: GaussDiagram::from_json(&j.start)?, events: j.events.clone() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub index: usize,
    pub sign: i8,
    #[serde(rename = "W")]
    pub w: i64,
    pub writhe_hm: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluation {
    #[serde(rename = "R")]
    pub r: i64,
    pub contributing_events: Vec<Contribution>,
}

/// R(γ) = Σ sign(p) W(p) w(hm) over the counted triple points. The loop need
/// not be closed here; `evaluate_closed` insists on it.
pub fn evaluate_r(l: &Loop, n: usize, a: usize) -> Result<Evaluation> {
    if a == 0 || a >= n {
        return Err(Error::Other(format!("parameter a = {a} is not in (0, {n})")));
    }
    let mut g = l.start.clone();
    let mut r = 0;
    let mut contributing = Vec::new();
    for (index, e) in l.events.iter().enumerate() {
        let wrap = |source| Error::Event { index, source: Box::new(source) };
        if e.kind == MoveKind::R3 && e.arrows.len() == 3 {
            let arrows = [e.arrows[0], e.arrows[1], e.arrows[2]];
            let t = classify_triple(&g, arrows).map_err(wrap)?;
            if contributes(&t, n, a) {
                let hm = t.triangle.hm;
                let w = weight(&g, hm).map_err(wrap)?;
                let s = g.signs()[&hm];
                r += e.direction as i64 * w * s as i64;
                contributing.push(Contribution { index, sign: e.direction, w, writhe_hm: s });
            }
        }
        g = e.apply(&g).map_err(wrap)?;
    }
    Ok(Evaluation { r, contributing_events: contributing })
}

pub fn evaluate_closed(l: &Loop, n: usize, a: usize) -> Result<Evaluation> {
    if !l.is_closed()? {
        return Err(Error::OpenLoop("the last diagram differs from the first".into()));
    }
    evaluate_r(l, n, a)
}
