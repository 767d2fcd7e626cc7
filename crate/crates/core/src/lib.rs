//! Error-probability bounds for lattice constellations over Nakagami-m
//! block-fading channels, with Monte Carlo ML-decoding simulation to check
//! them against.

#![no_std]

extern crate alloc;

pub mod bounds;
pub mod channel;
pub mod complex;
pub mod error;
pub mod exec;
pub mod lattice;
pub mod mp;
pub mod real;
pub mod sfuncs;
pub mod sim;

pub use error::Error;
