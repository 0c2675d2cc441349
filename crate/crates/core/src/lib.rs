//! Surprisal (S-value) tools for statistical inference.
//!
//! The S-value of a P-value `p` is `-log(p)`: the information the data
//! supply against the test model, in bits, nats or dits. This crate
//! converts between the scales, combines S-values across studies,
//! calibrates them against likelihood ratios and Bayes-factor bounds,
//! tabulates P- and S-value functions, and checks by simulation that
//! P-values behave as valid or conservative under their null models.
//!
//! ```
//! use svalue::units::{coin_toss_gauge, surprisal};
//! use svalue::{InfoUnit, PValue};
//!
//! let p = PValue::new(0.05)?;
//! assert_eq!(coin_toss_gauge(p), 4);
//! assert!((surprisal(p, InfoUnit::Nats).value() - 2.9957).abs() < 1e-4);
//! # Ok::<(), svalue::Error>(())
//! ```

// `!(x > 0.0)` is used on purpose: unlike `x <= 0.0` it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod calibrate;
pub mod combine;
pub mod curves;
pub mod error;
pub mod simulate;
pub mod specfun;
pub mod units;

pub use error::{Error, Result};
pub use units::{InfoUnit, PValue, SValue};

// Every chapter of the guide is compiled and run as a doctest.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/units.md")]
    mod units {}
    #[doc = include_str!("../../../book/src/special-functions.md")]
    mod special_functions {}
    #[doc = include_str!("../../../book/src/combining.md")]
    mod combining {}
    #[doc = include_str!("../../../book/src/calibration.md")]
    mod calibration {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
