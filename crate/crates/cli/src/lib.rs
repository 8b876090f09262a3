//! Batch front end over `cubicdom`: bound verification campaigns,
//! reduction runs and structural analysis, each producing a JSON report.

pub mod analyze;
pub mod campaign;
pub mod input;
pub mod reduce;

/// Version stamped into every JSON document this crate writes.
pub const SCHEMA_VERSION: u32 = 1;
