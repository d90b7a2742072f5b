//! Exact combinatorics and numerics for HCMU surfaces described by weighted
//! mixed angulations.

#![allow(clippy::needless_range_loop)]

pub mod angulation;
pub mod balance;
pub mod builder;
pub mod cli;
pub mod constraints;
pub mod dataset;
pub mod deform;
pub mod io;
pub mod metric;
pub mod moduli;
pub mod rational;

pub use rational::Q;
