//! Front end for the quadric toolkit: presentation DSL, JSON reports, commands, conic atlas.

pub mod atlas;
pub mod commands;
pub mod dsl;
pub mod report;
