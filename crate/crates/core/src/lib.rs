//! Graphs cellularly embedded in closed surfaces, with a focus on grids:
//! embeddings in which every facial boundary walk has length four.
//!
//! Embeddings are stored as signed rotation systems ([`EmbeddedMap`]); faces,
//! duality, orientability and isomorphism are computed on the derived flag
//! system ([`FlagSystem`]).
//!
//! * [`transverse`] splits a map into transverse walks and circuits and
//!   extracts the skeleton grid of a grid.
//! * [`synthesis`] rebuilds grids from a skeleton by subdividing and patching.
//! * [`derived`] builds radial, medial and overlay grids and recognizes them.
//! * [`oracle`] enumerates small embeddings and quadrangular immersions.

pub mod derived;
mod error;
pub mod fixtures;
mod graph;
mod map;
pub mod oracle;
pub mod smap;
pub mod synthesis;
pub mod transverse;

pub use error::{Error, Result};
pub use graph::Graph;
pub use map::{CanonicalForm, Dart, EmbeddedMap, FaceWalk, Flag, FlagSystem, MapBuilder, Sign};
