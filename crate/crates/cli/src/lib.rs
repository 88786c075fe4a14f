//! Library half of the `tracegenus` command: JSON documents, the analysis
//! cache, corpus parsing and the subcommands.

pub mod cache;
pub mod commands;
pub mod corpus;
pub mod doc;
