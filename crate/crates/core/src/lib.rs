//! Non-crossing trees of bipartite graphs on decorated convex polygons, their
//! flip posets, triangulations of products of simplices and tropical
//! hyperplane arrangements.

pub mod edgeset;
pub mod error;
pub mod export;
pub mod forest;
pub mod par;
pub mod polygon;
pub mod poset;
pub mod sample;
pub mod simplicial;
pub mod surd;
pub mod tropical;

pub use edgeset::EdgeSet;
pub use error::{Error, Result};
pub use forest::{Direction, Forest, IndexPair, Instance, Matching, Tree};
pub use polygon::{Edge, Sign, Signature};
pub use poset::{FinitePoset, FlipDigraph};
pub use surd::Surd;
pub use simplicial::{Lift, LiftKind};
pub use tropical::TropicalPoint;
