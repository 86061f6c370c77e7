//! Gauss diagrams of knots in the solid torus, Gauss diagram formulas for the
//! degree-3 Vassiliev invariant, Reidemeister moves, and the 1-cocycle `R`
//! weighted by v3 on the persistent subdiagram.

pub mod error;
pub mod gauss;
pub mod formula;
pub mod identities;
pub mod planar;
pub mod moves;
pub mod cocycle;
pub mod loopgen;
pub mod verify;

pub use error::{Error, Result};
pub use gauss::{parse_gauss_code, serialize, ArrowId, EndKind, GaussDiagram, Point};
