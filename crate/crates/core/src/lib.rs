//! Exact computations with Hochschild cohomology of finite-dimensional
//! algebras: cochains, Gerstenhaber operations, bar resolutions, Yoneda
//! extensions and the structural criteria built on them.

pub mod error;
pub mod field;
pub mod algebra;
pub mod linalg;
pub mod budget;
pub mod cochain;
pub mod sampling;
pub mod resolution;
pub mod extension;
pub mod criteria;
pub mod io;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use algebra::{Algebra, Bimodule, BimoduleMap};
pub use linalg::{Matrix, PivotOrder, QuotientSpace, Subspace};
pub use budget::Budget;
pub use cochain::{Cochain, Cohomology, CohomologyClass};
pub use extension::NExtension;
pub use resolution::BarResolution;
