//! Sylow 2-subgroups of classical groups in odd characteristic, built as
//! explicit finite groups, with exact 2-rank and normal 2-rank search.

pub mod catalog;
pub mod constructions;
pub mod descriptor;
pub mod error;
pub mod group;
pub mod oracle;
pub mod presentations;
pub mod rank;

pub use descriptor::Descriptor;
pub use error::{Error, Result};
pub use group::{Element, Group, Subgroup, DEFAULT_CAP};
