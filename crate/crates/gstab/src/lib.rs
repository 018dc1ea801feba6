//! File formats, scenario runner, independent oracles and the acceptance
//! suite for `gstab-core`.

pub mod acceptance;
pub mod error;
pub mod io;
pub mod oracle;
pub mod reproduce;
pub mod scenario;

pub use error::InputError;
