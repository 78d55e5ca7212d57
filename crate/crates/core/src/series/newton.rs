use super::trunc::{Precision, TruncSeries};
use super::SeriesError;
use crate::exactnum::hull::{hull_slopes, lower_hull};
use crate::exactnum::scalar::min_scalar;
use crate::exactnum::{End, Scalar};

/// Lower convex hull of `{(i, val(a_i))}` over the known coefficients.
///
/// A hull edge of slope σ and length L stands for L zeros with `log_p|α| = σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i64, Scalar)>,
    pub slopes: Vec<(Scalar, u64)>,
    /// Exclusive bound on the log-radii at which the polygon is certified.
    pub certified_up_to: End,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Closed,
    Open,
}

fn points(a: &TruncSeries) -> Vec<(i64, Scalar)> {
    a.coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation().map(|v| (i as i64, v)))
        .collect()
}

pub fn newton_polygon(a: &TruncSeries) -> Result<NewtonPolygon, SeriesError> {
    let pts = points(a);
    if pts.is_empty() {
        return Err(SeriesError::AllZeroUpToOrder);
    }
    let vertices = lower_hull(&pts);
    let slopes = hull_slopes(&vertices);
    let certified_up_to = match a.precision() {
        Precision::Exact => End::Infinite,
        Precision::Truncated { order, tail } => {
            let n = Scalar::from_integer((*order as i64).into());
            let reach = &tail.intercept + &tail.slope * &n;
            let best = pts
                .iter()
                .map(|(i, v)| (&reach - v) / (&n - Scalar::from_integer((*i).into())))
                .max()
                .unwrap();
            End::Finite(min_scalar(&best, &tail.slope))
        }
    };
    Ok(NewtonPolygon {
        vertices,
        slopes,
        certified_up_to,
    })
}

/// Number of zeros with `log_p|α| ≤ t` (closed) or `< t` (open), counted with
/// multiplicity and including zeros at the origin.
pub fn count_zeros_disk(
    a: &TruncSeries,
    t: &Scalar,
    boundary: Boundary,
) -> Result<u64, SeriesError> {
    let poly = newton_polygon(a)?;
    if !poly.certified_up_to.contains_below(t) {
        return Err(SeriesError::BeyondCertifiedRadius {
            t: t.clone(),
            certified: poly.certified_up_to,
        });
    }
    let pts = points(a);
    let score = |(i, v): &(i64, Scalar)| v - t * Scalar::from_integer((*i).into());
    let best = pts.iter().map(score).min().unwrap();
    let mut hits = pts.iter().filter(|p| score(p) == best).map(|p| p.0);
    let k = match boundary {
        Boundary::Closed => hits.max(),
        Boundary::Open => hits.next(),
    };
    Ok(k.unwrap() as u64)
}
