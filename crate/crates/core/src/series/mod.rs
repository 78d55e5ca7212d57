//! Truncated power series, Newton polygons and meromorphic representations.

pub mod mero;
pub mod newton;
pub mod trunc;

pub use mero::{
    compose_ratmap, mero_divisor, ramification_index, Divisor, DivisorEntry, MeroRep, Ramification,
};
pub use newton::{count_zeros_disk, newton_polygon, Boundary, NewtonPolygon};
pub use trunc::{Precision, TailBound, TruncSeries};

use thiserror::Error;

use crate::exactnum::{End, Scalar};

/// Default truncation order for series read from text.
pub const DEFAULT_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("all known coefficients vanish")]
    AllZeroUpToOrder,
    #[error("t = {t} is not below the certified radius {certified}")]
    BeyondCertifiedRadius { t: Scalar, certified: End },
    #[error("reciprocal of a series without constant term")]
    NonUnitReciprocal,
    #[error("coefficient {0} is not a chi-th power")]
    NotAChiPower(usize),
    #[error("numerator and denominator vanish after composition")]
    DegenerateComposition,
    #[error("{0}")]
    Invalid(String),
}
