//! Differential-form machinery over the eight-coordinate chart of 3x3
//! density matrices, with the Bures metric as the underlying geometry.
//!
//! The library is organized bottom-up:
//!
//! * [`exterior`] - graded exterior algebra over an 8-dimensional cotangent
//!   space: wedge products, the metric Hodge star, and induced Gram matrices
//!   on p-forms.
//! * [`chart`] - the Euler-angle chart on nondegenerate 3x3 density
//!   matrices: generators, the calibrated unitary factorization, analytic
//!   coordinate partials, and the two benchmark chart points.
//! * [`metric`] - the Bures metric tensor at a chart point, plus the
//!   polynomial-coefficient fit realizing the inverse left+right
//!   multiplication operator.
//! * [`duality`] - pointwise self-dual and anti-self-dual four-forms under
//!   the pin convention (trailing coefficient block fixed to one).
//! * [`spectral`] - the 28x28 two-form endomorphism built from a four-form,
//!   its spectrum and cluster structure, characteristic-polynomial checks,
//!   and the Euclidean Cayley-calibration benchmark.
//! * [`connection`] - the Uhlmann connection along coordinate directions via
//!   Sylvester solves, and a finite-difference curvature probe.
//! * [`sweeps`] - univariate coefficient sweeps around the second benchmark
//!   point with closed-form comparators, and the fixed cross-point spectrum
//!   experiment.
//! * [`goldens`] - the reference values the regression gate runs against.
//! * [`acceptance`] - the structured acceptance suite shared by the CLI and
//!   the integration tests.

pub mod acceptance;
pub mod chart;
pub mod connection;
pub mod duality;
pub mod error;
pub mod exterior;
pub mod goldens;
pub mod metric;
pub mod reference;
pub mod spectral;
pub mod sweeps;

pub use error::{Error, Result};
