//! IO and orchestration around the `textphase-core` analysis kernels:
//! embedding files, corpus layout, sweep reports, synthetic fixtures, and
//! the completion-endpoint generation client. The `textphase` binary wires
//! these into subcommands.

pub mod config;
pub mod corpus;
pub mod embeddings_io;
pub mod fixtures;
pub mod genclient;
pub mod report;
pub mod sweep;

pub use textphase_core;
