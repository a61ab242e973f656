//! The free bigraded-commutative DGA engine.

pub mod basis;
pub mod dga;
pub mod element;
pub mod linsolve;
pub mod morphism;
pub mod table;

pub use basis::{homogeneous_basis, solve_exactness, DegreeCaps};
pub use dga::FreeDga;
pub use element::{Bidegree, Element, Homogeneity, Monomial, Parity};
pub use morphism::{exp_truncated, pushout_along, renaming_isomorphism, substitute, DgaMorphism, MorphismDefect};
pub use table::{DerivationSpec, GeneratorDecl, GeneratorTable};
