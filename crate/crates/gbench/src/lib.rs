//! Benchmark and verification harness for the group codecs.

pub mod bench;
pub mod corpus;
pub mod gen;
pub mod names;
pub mod report;
pub mod store;
pub mod verify;
