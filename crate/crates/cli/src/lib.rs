//! Front end for the twistk engine: single computations, the regression
//! table and the consistency suites.

pub mod check;
pub mod compute;
pub mod table;

use twistk::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUSAL: i32 = 3;

/// Exit status for an engine error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_refusal() {
        EXIT_REFUSAL
    } else if matches!(e, Error::CrossCheckFailed(_)) {
        EXIT_FAILURE
    } else {
        EXIT_USAGE
    }
}
