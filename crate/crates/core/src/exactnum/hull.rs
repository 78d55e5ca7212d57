use super::Scalar;

/// Lower convex hull of points sorted by strictly increasing abscissa.
/// Collinear interior points are dropped; endpoints are always kept.
pub fn lower_hull(points: &[(i64, Scalar)]) -> Vec<(i64, Scalar)> {
    let mut hull: Vec<(i64, Scalar)> = Vec::with_capacity(points.len());
    for pt in points {
        while hull.len() >= 2 {
            let (x1, y1) = &hull[hull.len() - 2];
            let (x2, y2) = &hull[hull.len() - 1];
            // drop the middle point unless it lies strictly below the chord
            let lhs = (y2 - y1) * Scalar::from_integer((pt.0 - x1).into());
            let rhs = (&pt.1 - y1) * Scalar::from_integer((x2 - x1).into());
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt.clone());
    }
    hull
}

/// Slopes and horizontal lengths of consecutive hull edges.
pub fn hull_slopes(hull: &[(i64, Scalar)]) -> Vec<(Scalar, u64)> {
    hull.windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            (
                (&w[1].1 - &w[0].1) / Scalar::from_integer(len.into()),
                len as u64,
            )
        })
        .collect()
}
