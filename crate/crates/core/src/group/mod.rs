//! Generic finite-group engine: encodings, multiplication backends,
//! breadth-first closure, and the usual subgroup queries.

mod backend;
mod element;
mod finite;
mod product;
mod semidirect;
mod table;
pub mod word;

pub use backend::Backend;
pub use element::Element;
pub use finite::{Group, Subgroup, DEFAULT_CAP};
pub use product::{direct_product, direct_product_many, project, ProductBackend};
pub use semidirect::{semidirect_from_backend, semidirect_product, ActionSpec, SemidirectBackend};
pub use table::{FastMul, TABLE_LIMIT};
