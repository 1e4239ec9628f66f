//! Error type shared by every module in the crate.

use alloc::string::String;
use core::fmt;

/// All failure modes surfaced by the library.
///
/// Every variant carries a message naming the violated condition, so callers
/// (in particular the CLI) can print it verbatim and exit nonzero.
#[derive(Debug, Clone, PartialEq)]
pub enum XtError {
    /// An argument is outside the mathematical domain of an operation.
    Domain(String),
    /// A configuration value is inconsistent or unsupported.
    Config(String),
    /// The physical model does not apply to the requested parameters
    /// (e.g. the fundamental mode is not guided).
    Model(String),
    /// A statistics operation received unusable input.
    Analysis(String),
    /// A nonlinear fit failed to converge.
    Fit(String),
}

impl XtError {
    pub fn domain(msg: impl Into<String>) -> Self {
        XtError::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        XtError::Config(msg.into())
    }

    pub fn model(msg: impl Into<String>) -> Self {
        XtError::Model(msg.into())
    }

    pub fn analysis(msg: impl Into<String>) -> Self {
        XtError::Analysis(msg.into())
    }

    pub fn fit(msg: impl Into<String>) -> Self {
        XtError::Fit(msg.into())
    }
}

impl fmt::Display for XtError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XtError::Domain(m) => write!(f, "domain error: {m}"),
            XtError::Config(m) => write!(f, "configuration error: {m}"),
            XtError::Model(m) => write!(f, "model error: {m}"),
            XtError::Analysis(m) => write!(f, "analysis error: {m}"),
            XtError::Fit(m) => write!(f, "fit error: {m}"),
        }
    }
}

impl core::error::Error for XtError {}
