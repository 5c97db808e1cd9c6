//! Numerical monodromy of polynomial covers of the sphere.

pub mod hurwitz;
pub mod roots;
pub mod tracking;

use num_complex::Complex64;
use thiserror::Error;

use crate::error::DessinError;

pub use hurwitz::{
    belyi_example, classify_lift, hurwitz_cover, hurwitz_dessin, hurwitz_fiber, hurwitz_fs,
    hurwitz_point, hurwitz_projection, HurwitzPoint, Lift,
};
pub use roots::poly_roots;
pub use tracking::{numerical_monodromy, CoverSpec, TrackOptions};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoverError {
    #[error("leading coefficient is zero")]
    DegenerateLeadingCoefficient,
    #[error("non-finite {0}")]
    NonFinite(String),
    #[error("root finder did not reach the residual bound (relative residual {residual:e})")]
    RootsInaccurate { residual: f64 },
    #[error("path tracking failed on {path} at t = {t} (y = {y})")]
    PathTrackingFailure { path: String, t: f64, y: Complex64 },
    #[error("loop at infinity gives {from_loop}, product constraint gives {from_product}")]
    ProductConstraintViolation { from_product: String, from_loop: String },
    #[error("no point of the fiber over a = {a} lies on lift {lift}")]
    NoSuchLift { a: f64, lift: String },
    #[error("ambiguous lift: {0}")]
    Ambiguous(String),
    #[error("s = 1/2 is a pole of the family")]
    PoleAtHalf,
    #[error("malformed cover: {0}")]
    Malformed(String),
    #[error(transparent)]
    Dessin(#[from] DessinError),
}
