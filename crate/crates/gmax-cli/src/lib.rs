//! Experiment orchestration over the exact-geometry core: configuration,
//! phase-diagram sweeps, verification campaigns, persistence, and SVG
//! rendering. Everything here is deterministic under a fixed config and
//! seed: reports and figures are byte-identical across runs.

pub mod config;
pub mod persist;
pub mod pipeline;
pub mod svg;
pub mod verify;
