//! Closed 3-manifold triangulations and the restricted Pachner graph of the
//! 3-sphere.
//!
//! The crate is organised bottom-up: [`perm`] and [`triangulation`] hold the
//! gluing-table model, [`skeleton`] and [`homology`] derive invariants,
//! [`isosig`] computes isomorphism signatures, [`moves`] implements the four
//! Pachner moves, [`census`] enumerates triangulations and 3-spheres, and
//! [`graph`] runs the level analyses over the Pachner graph.

pub mod census;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod homology;
pub mod io;
pub mod isosig;
pub mod moves;
pub mod perm;
pub mod skeleton;
pub mod triangulation;

pub use census::{CensusSpec, SphereClosure};
pub use error::{Error, Result};
pub use graph::{HeightReport, LengthReport, LevelGraph, UnionFind};
pub use homology::HomologyProfile;
pub use isosig::{CanonicalLabelling, IsoSig};
pub use moves::{MoveKind, MoveSite};
pub use perm::Perm4;
pub use skeleton::Skeleton;
pub use triangulation::{Gluing, Triangulation};
