//! Finite reflection groups: classification data, root systems, Dynkin
//! diagrams, element generation and the Reynolds operator.

mod catalog;
mod diagram;
mod group;
mod reynolds;
mod roots;

pub use catalog::{Family, GroupDescriptor};
pub use diagram::DynkinDiagram;
pub use group::{generate_group, is_orthogonal, FiniteGroup, Matrix, ORDER_CAP};
pub use reynolds::{is_invariant, reynolds, reynolds_over, reynolds_with};
pub use roots::RootSystem;
