//! Exact simulation of random vectors whose survival function is a function of an lp-norm,
//! together with the beta-mixture law of the mixing variable `V_p`, outer power Archimedean
//! copulas, max-infinitely divisible vectors and a verification harness.

pub mod error;
pub mod maxid;
pub mod mixture;
pub mod params;
pub mod quadrature;
pub mod radial;
pub mod rng;
pub mod survival;
pub mod verify;
pub mod vp;

pub use error::{Error, Result};
pub use maxid::{maxid_cdf, MaxIdSample, MaxIdSampler, MeasureSpec, RadialRadonMeasure};
pub use mixture::{beta_cdf, coefficient_table, mixture_for_level, BetaMixture, CoefficientTable};
pub use params::{Dimension, PowerParam};
pub use radial::{Generator, QuantileTable, RadialLaw, RadialSpec};
pub use rng::{RngStream, DEFAULT_SEED};
pub use survival::{SurvivalSample, SurvivalSampler};
pub use vp::{VpSample, VpSampler};
