//! Exact-arithmetic weighted balanced tropical curves.

pub mod crossing;
pub mod curve;
pub mod document;
pub mod edge;
pub mod error;
pub mod gallery;
pub mod linalg;
pub mod paths;
pub mod rational;
pub mod region;
pub mod report;
pub mod saturated;
pub mod saturation;
pub mod validate;
pub mod certify;
pub mod weight;

pub use curve::TropicalCurve;
pub use edge::{Edge, EdgeKind, Extent};
pub use error::{Error, Result};
pub use rational::{Point, Rat};
pub use region::{FaceId, Region};
pub use weight::{canonical_weight, QWeight, Weight};
