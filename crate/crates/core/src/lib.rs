//! Clock states, trails, clock moves and Mock Alexander polynomials of
//! starred 1-linkoid diagrams.

pub mod corpus;
pub mod diagram;
pub mod dynamics;
pub mod error;
pub mod export;
pub mod generate;
pub mod kdf;
pub mod laurent;
pub mod moves;
pub mod polynomial;
pub mod state;
pub mod trail;
pub mod universe;
pub mod weights;

pub use diagram::{Crossing, LinkoidDiagram, Side, Sign, StarPlacement};
pub use error::{Error, Result};
pub use kdf::{parse_kdf, to_kdf};
pub use laurent::LaurentPoly;
pub use moves::{ClockMove, MoveKind, Sense};
pub use state::{ClockState, Marker};
pub use trail::{RootedTree, Smoothed, Trail};
pub use universe::{Corner, DualGraph, Incidence, Region, Smoothing, Universe};
pub use weights::{Monomial, WeightTable};
