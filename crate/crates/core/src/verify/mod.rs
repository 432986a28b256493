//! Statistical and numerical oracles backing every invariant of the library.

pub mod identities;
pub mod ks;
pub mod stable;
pub mod stats;
pub mod suite;

pub use identities::{check_recur1, check_williamson_vp, IdentityCheck, IDENTITY_TOL, QUAD_TOL};
pub use ks::{ks_one_sample, ks_two_sample, KsResult, KS_COEF_1PCT};
pub use stable::{check_stable_identity, positive_stable};
pub use stats::{kendall_tau, FrequencyCheck};
pub use suite::{run_suite, CheckResult, SuiteConfig, SuiteMode, VerificationReport};
