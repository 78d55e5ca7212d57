//! Condition (M), the local factorizations `P − P(cᵢ) = (x−cᵢ)^sᵢ Aᵢ/S`, the
//! constants Θ, γ, Λ, and the verdict engine for `P(f) = Q(g)`.

mod condm;
mod local;
mod precision;
mod verdict;

use std::fmt;

use serde::Serializer;
use thiserror::Error;

use crate::algebra::{FieldElem, PAdic};

pub use condm::{
    check_condition_m, ConditionMReport, CriticalPoint, DCheck, DZero, Satisfied, DEFAULT_PRECISION,
};
pub use local::{
    gamma, lambda_class, local_factorizations, theta, LambdaClass, LocalFactorization,
};
pub use verdict::{
    all_verdicts, ruled_out_by, verdict_critical_count, verdict_critical_values, verdict_entire,
    verdict_mero, Conclusion, Inequality, Relation, Setting, Trace, Verdict,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("local factorization mismatch at critical point {index}: {msg}")]
    FactorizationMismatch { index: usize, msg: String },
    #[error("Condition (M) is not verified: {0}")]
    ConditionMUnverified(String),
}

/// A field element known exactly, or a p-adic approximation of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Exact(FieldElem),
    Approx(PAdic),
}

impl Value {
    pub fn exact(&self) -> Option<&FieldElem> {
        match self {
            Value::Exact(e) => Some(e),
            Value::Approx(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(e) => write!(f, "{e}"),
            Value::Approx(a) => write!(f, "{a}"),
        }
    }
}

impl serde::Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub(crate) fn ser_display<T: fmt::Display, S: Serializer>(t: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(t)
}

pub(crate) fn ser_display_opt<T: fmt::Display, S: Serializer>(
    t: &Option<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match t {
        Some(t) => s.collect_str(t),
        None => s.serialize_none(),
    }
}

pub(crate) fn ser_display_vec<T: fmt::Display, S: Serializer>(
    ts: &[T],
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(ts.iter().map(|t| t.to_string()))
}
