//! The `report/1` document produced by `opengame analyze`.

pub mod report;
