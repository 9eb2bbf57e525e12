//! Computer algebra and numerics for truncated single and double Dirichlet
//! series.

pub mod analyze;
pub mod bohr;
pub mod compose;
pub mod double;
pub mod error;
pub mod factor;
pub mod report;
pub mod selftest;
pub mod series;
pub mod superpose;
pub mod text;

pub use double::{Axis, DoubleDirichletSeries, Index2};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use series::{Coefficient, DirichletSeries};
