//! Sequential importance sampling of self-avoiding walks on the square
//! lattice, with exact moments from rational generating functions.
//!
//! ```
//! use sawsis::{rng, sample_crossing_saw};
//!
//! let mut r = rng::stream(1, 0);
//! let s = sample_crossing_saw(4, &mut r).unwrap();
//! assert!(s.walk.is_self_avoiding());
//! ```

pub mod asymptotics;
pub mod decimal;
pub mod enumerate;
pub mod error;
pub mod estimator;
pub mod genfunc;
pub mod lattice;
pub mod rng;
pub mod samplers;
pub mod svg;

pub use enumerate::{
    enumerate_crossing, enumerate_directed, enumerate_nes, EnumLimits, EnumReport,
};
pub use error::{Result, SawError};
pub use estimator::{relative_variance_exact, Estimate, MomentAccumulator};
pub use genfunc::{series_coeff, MultiPolynomial, Polynomial, RationalSeries};
pub use lattice::{Direction, Point, Rect, Walk};
pub use samplers::{
    eligible_steps_crossing, is_trapping_step, nes_walk_stats, sample_crossing_saw,
    sample_directed, sample_nes, sample_untrapped, Model, ModelParams, NesStats, ProbTrace, Sample,
};
pub use svg::{render_svg, SvgOptions};
