use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Exact rational scalar. `BigRational` keeps numerator and denominator
/// coprime with a positive denominator after every operation.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"a"`, `"-a"` or `"a/b"` into an exact rational.
pub fn parse_scalar(s: &str) -> Result<Scalar, ExactError> {
    let s = s.trim();
    let bad = || ExactError::BadRational(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(n, d))
}

/// Canonical text form: `"a"` for integers, `"a/b"` otherwise.
pub fn fmt_scalar(q: &Scalar) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn max_scalar(a: &Scalar, b: &Scalar) -> Scalar {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn min_scalar(a: &Scalar, b: &Scalar) -> Scalar {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn abs_scalar(a: &Scalar) -> Scalar {
    a.abs()
}

/// Serde adapter storing a scalar as its canonical string.
pub mod serde_str {
    use super::{fmt_scalar, parse_scalar, Scalar};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_scalar(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}
