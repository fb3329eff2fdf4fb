//! Command-line front end: JSON documents for matrix series, normal forms, gauges and
//! Puiseux expansions, and the `gaugeform` subcommands.

pub mod codec;
mod commands;
pub mod document;
pub mod error;
pub mod selftest;

pub use codec::{Codec, Entry, Field, Precision};
pub use commands::{run, LEMMA_TOLERANCE, SLOPE_TOLERANCE};
pub use document::{
    CoefficientInput, GaugeDocument, GaugeFactorDocument, NormalFormDocument, PuiseuxDocument, Series, SeriesDocument,
};
pub use error::CliError;
