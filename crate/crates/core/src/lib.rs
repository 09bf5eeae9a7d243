//! Finite medial quandles: abelian-group arithmetic, quandle tables, affine
//! meshes and their sums, congruence lattices, the `siq` construction,
//! isomorphism decision and classification by order.

pub mod abelian;
pub mod classify;
pub mod config;
pub mod congruence;
pub mod construct;
pub mod error;
pub mod iso;
pub mod mesh;
pub mod perm;
pub mod quandle;
pub mod search;

pub use abelian::{FinAbGroup, GroupElem, GroupHom, LaurentModule, Subgroup};
pub use congruence::Congruence;
pub use construct::SiqSpec;
pub use error::{Error, Result};
pub use mesh::{AffineMesh, LabeledSum};
pub use quandle::Quandle;
