//! Explicit circuit constructions.

mod calibration;
mod counterexample;
mod fanout;
mod parity;

pub use calibration::{amplitude_calibration, build_c2, toy_approx_cat, AmplitudeCalibration, C2Layout};
pub use counterexample::{appendix_d_counterexample, reduced_state_error, Counterexample, CounterexampleSpec};
pub use fanout::{cat_1d, cat_1d_general, restricted_fanout};
pub use parity::{parity_line, parity_recursive_2d, parity_width2, Width2Parity};
