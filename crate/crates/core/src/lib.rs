#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod db;
pub mod error;
pub mod fiber;
pub mod special;
pub mod spectrum;

pub use error::XtError;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, XtError>;
