//! JSON formats, the shipped witness data, and the `nilcps` command line
//! on top of [`nilcps_core`].

pub mod cli;
pub mod commands;
pub mod json;
pub mod witness_data;
