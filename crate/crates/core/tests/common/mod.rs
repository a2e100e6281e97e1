//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library except to build and read `Graph` values.
#![allow(dead_code)]

pub mod brute;
pub mod charpoly;
pub mod stats;
