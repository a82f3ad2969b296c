//! Verification suites, bound evaluation on JSON input documents, and model
//! tables for Clifford tori and geodesic spheres, on top of `hodgebound-core`.

pub mod commands;
pub mod input;
pub mod report;
pub mod sampling;
pub mod suites;

pub use commands::{Format, UsageError};
pub use suites::{Suite, SuiteConfig};

/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "HODGEBOUND_TOL";

/// Parses a tolerance override; it must be finite and positive.
pub fn parse_tolerance(raw: &str) -> Result<f64, UsageError> {
    match raw.trim().parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
        _ => Err(UsageError::Invalid(format!(
            "{TOL_ENV} must be a positive number, got `{raw}`"
        ))),
    }
}
