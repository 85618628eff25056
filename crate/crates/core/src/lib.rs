//! q,t-Catalan statistics on discrete and continuous Dyck paths.
//!
//! - [`discrete`]: m-Dyck paths as area vectors, with `area`, `dinv` and
//!   `bounce`, the zeta map `phi`, and budgeted enumeration.
//! - [`poly`]: bivariate q,t-Catalan polynomials and their normalized
//!   discrete measures.
//! - [`continuous`]: points of the area polytope `A_n`, the continuous
//!   bounce path, and the measure-preserving map `T`.
//! - [`measure`]: sampling `A_n`, pushforward histograms, the exact density
//!   for `n = 4`, and convergence reports.
//! - [`cli`]: the commands behind the `qtcat` binary.

pub mod cli;
pub mod continuous;
pub mod discrete;
pub mod error;
pub mod measure;
pub mod poly;
pub mod verify;

pub use continuous::{BounceVector, ContinuousPath};
pub use discrete::{catalan_number_m, enumerate_m_dyck, MDyckPath, Step};
pub use error::{Error, Result};
pub use measure::{Histogram2D, MapChoice};
pub use poly::{qt_catalan_area_bounce, qt_catalan_dinv_area, DiscreteMeasure, QtPolynomial};

/// Default cap on the number of paths or lattice points a single call may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
