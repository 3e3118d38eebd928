//! Hyperbolic-type metrics on the unit ball.
//!
//! The crate evaluates the triangular ratio metric `s`, the distance ratio
//! metric `j`, the `j*`-metric and the hyperbolic metric `ρ` of the unit
//! ball, traces their circles and spheres, evaluates closed-form
//! ball-inclusion radii between them, and ships brute-force oracles plus a
//! sampling harness that checks those inclusions numerically.
//!
//! Modules:
//!
//! | module | contents |
//! |--------|----------|
//! | [`geometry`] | points of the ball, planar reduction, angles |
//! | [`metrics`] | `s`, `j`, `j*`, `ρ` evaluators and closed forms for `s` |
//! | [`spheres`] | traced metric circles, explicit spheres, 3D revolution |
//! | [`inclusions`] | inclusion radii with sharpness witnesses |
//! | [`verify`] | oracles, inclusion checks, conjecture sweep |

pub mod error;
pub mod geometry;
pub mod inclusions;
pub mod metrics;
pub mod spheres;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{angle_at, reduce_to_plane, PlanarPair, PointB};
pub use metrics::{MetricKind, SValue, SolveOpts};
