use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{fmt_scalar, max_scalar, parse_scalar, Scalar};
use super::ExactError;

/// Right end of a half-open domain `[start, end)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum End {
    Finite(Scalar),
    Infinite,
}

impl End {
    pub fn contains_below(&self, t: &Scalar) -> bool {
        match self {
            End::Finite(e) => t < e,
            End::Infinite => true,
        }
    }

    pub fn min(&self, other: &End) -> End {
        match (self, other) {
            (End::Infinite, e) | (e, End::Infinite) => e.clone(),
            (End::Finite(a), End::Finite(b)) => {
                End::Finite(if a <= b { a.clone() } else { b.clone() })
            }
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, End::Infinite)
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            End::Finite(e) => f.write_str(&fmt_scalar(e)),
            End::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub breakpoint: Scalar,
    pub slope: Scalar,
}

/// Continuous piecewise-linear function of the log-radius `t` on `[start, end)`.
///
/// The first segment always starts at `start`; values are propagated from
/// `anchor` through the slopes, so continuity holds by construction. Adjacent
/// segments with equal slopes are merged, which makes structural equality
/// coincide with functional equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PLFunJson", into = "PLFunJson")]
pub struct PLFun {
    start: Scalar,
    end: End,
    anchor: Scalar,
    segments: Vec<Segment>,
}

/// Outcome of comparing two functions up to an additive constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedDifference {
    /// `sup |a - b|` over the domain (a limit value on bounded domains).
    Bounded { sup: Scalar },
    /// The eventual slopes differ by `slope_gap = slope(a) - slope(b)`.
    Unbounded { slope_gap: Scalar },
}

impl PLFun {
    pub fn new(
        start: Scalar,
        end: End,
        anchor: Scalar,
        segments: Vec<Segment>,
    ) -> Result<Self, ExactError> {
        if let End::Finite(e) = &end {
            if e <= &start {
                return Err(ExactError::EmptyDomain);
            }
        }
        if segments.is_empty() || segments[0].breakpoint != start {
            return Err(ExactError::MalformedSegments(
                "first breakpoint must equal domain start".into(),
            ));
        }
        for w in segments.windows(2) {
            if w[0].breakpoint >= w[1].breakpoint {
                return Err(ExactError::MalformedSegments(
                    "breakpoints must increase strictly".into(),
                ));
            }
        }
        if !end.contains_below(&segments[segments.len() - 1].breakpoint) {
            return Err(ExactError::MalformedSegments(
                "breakpoint outside domain".into(),
            ));
        }
        Ok(Self {
            start,
            end,
            anchor,
            segments,
        }
        .canonical())
    }

    pub fn constant(start: Scalar, end: End, value: Scalar) -> Self {
        Self::linear(start, end, value, Scalar::zero())
    }

    pub fn zero(start: Scalar, end: End) -> Self {
        Self::constant(start, end, Scalar::zero())
    }

    /// The line with the given value at `start` and constant slope.
    pub fn linear(start: Scalar, end: End, value_at_start: Scalar, slope: Scalar) -> Self {
        let segments = vec![Segment {
            breakpoint: start.clone(),
            slope,
        }];
        Self {
            start,
            end,
            anchor: value_at_start,
            segments,
        }
    }

    pub fn start(&self) -> &Scalar {
        &self.start
    }

    pub fn end(&self) -> &End {
        &self.end
    }

    pub fn anchor(&self) -> &Scalar {
        &self.anchor
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn breakpoints(&self) -> Vec<Scalar> {
        self.segments.iter().map(|s| s.breakpoint.clone()).collect()
    }

    pub fn same_domain(&self, other: &PLFun) -> bool {
        self.start == other.start && self.end == other.end
    }

    fn canonical(mut self) -> Self {
        let mut merged: Vec<Segment> = Vec::with_capacity(self.segments.len());
        for seg in self.segments.drain(..) {
            match merged.last() {
                Some(last) if last.slope == seg.slope => {}
                _ => merged.push(seg),
            }
        }
        self.segments = merged;
        self
    }

    /// Values at every breakpoint, in order.
    pub fn breakpoint_values(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.segments.len());
        let mut value = self.anchor.clone();
        out.push(value.clone());
        for w in self.segments.windows(2) {
            value += &w[0].slope * (&w[1].breakpoint - &w[0].breakpoint);
            out.push(value.clone());
        }
        out
    }

    fn eval_unchecked(&self, t: &Scalar) -> Scalar {
        let idx = match self.segments.iter().rposition(|s| &s.breakpoint <= t) {
            Some(i) => i,
            None => 0,
        };
        let values = self.breakpoint_values();
        &values[idx] + &self.segments[idx].slope * (t - &self.segments[idx].breakpoint)
    }

    pub fn eval(&self, t: &Scalar) -> Result<Scalar, ExactError> {
        if t < &self.start || !self.end.contains_below(t) {
            return Err(ExactError::OutOfDomain {
                t: fmt_scalar(t),
                domain: self.domain_string(),
            });
        }
        Ok(self.eval_unchecked(t))
    }

    /// Left limit at a finite domain end; `None` on unbounded domains.
    pub fn limit_at_end(&self) -> Option<Scalar> {
        match &self.end {
            End::Finite(e) => Some(self.eval_unchecked(e)),
            End::Infinite => None,
        }
    }

    pub fn eventual_slope(&self) -> Scalar {
        self.segments[self.segments.len() - 1].slope.clone()
    }

    pub fn is_convex(&self) -> bool {
        self.segments.windows(2).all(|w| w[0].slope <= w[1].slope)
    }

    fn domain_string(&self) -> String {
        format!("[{}, {})", fmt_scalar(&self.start), self.end)
    }

    fn check_domains(fs: &[&PLFun]) -> Result<(), ExactError> {
        if let Some(first) = fs.first() {
            for f in &fs[1..] {
                if !first.same_domain(f) {
                    return Err(ExactError::DomainMismatch {
                        left: first.domain_string(),
                        right: f.domain_string(),
                    });
                }
            }
        }
        Ok(())
    }

    fn merged_breakpoints(fs: &[&PLFun]) -> Vec<Scalar> {
        let mut pts: Vec<Scalar> = fs.iter().flat_map(|f| f.breakpoints()).collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// Slope of `self` on the interval starting at `t`.
    fn slope_at(&self, t: &Scalar) -> Scalar {
        let idx = self
            .segments
            .iter()
            .rposition(|s| &s.breakpoint <= t)
            .unwrap_or(0);
        self.segments[idx].slope.clone()
    }

    /// Pointwise maximum; crossings inside a segment become new breakpoints.
    pub fn max(&self, other: &PLFun) -> Result<PLFun, ExactError> {
        Self::check_domains(&[self, other])?;
        let pts = Self::merged_breakpoints(&[self, other]);
        let mut segments = Vec::new();
        for (i, left) in pts.iter().enumerate() {
            let va = self.eval_unchecked(left);
            let vb = other.eval_unchecked(left);
            let sa = self.slope_at(left);
            let sb = other.slope_at(left);
            let a_first = va > vb || (va == vb && sa >= sb);
            let (lead_slope, trail_slope) = if a_first {
                (sa.clone(), sb.clone())
            } else {
                (sb.clone(), sa.clone())
            };
            segments.push(Segment {
                breakpoint: left.clone(),
                slope: lead_slope.clone(),
            });
            if trail_slope > lead_slope {
                // the trailing line overtakes at left + gap / (slope difference)
                let gap = (&va - &vb).abs();
                let cross = left + gap / (&trail_slope - &lead_slope);
                let inside = match pts.get(i + 1) {
                    Some(next) => &cross < next,
                    None => self.end.contains_below(&cross),
                };
                if inside && &cross > left {
                    segments.push(Segment {
                        breakpoint: cross,
                        slope: trail_slope,
                    });
                }
            }
        }
        let anchor = max_scalar(&self.anchor, &other.anchor);
        Ok(Self {
            start: self.start.clone(),
            end: self.end.clone(),
            anchor,
            segments,
        }
        .canonical())
    }

    /// Exact pointwise linear combination `Σ c_i f_i`.
    pub fn lincomb(terms: &[(Scalar, &PLFun)]) -> Result<PLFun, ExactError> {
        let fs: Vec<&PLFun> = terms.iter().map(|(_, f)| *f).collect();
        let first = fs.first().ok_or(ExactError::EmptyCombination)?;
        Self::check_domains(&fs)?;
        let pts = Self::merged_breakpoints(&fs);
        let segments = pts
            .iter()
            .map(|t| {
                let slope = terms
                    .iter()
                    .fold(Scalar::zero(), |acc, (c, f)| acc + c * f.slope_at(t));
                Segment {
                    breakpoint: t.clone(),
                    slope,
                }
            })
            .collect();
        let anchor = terms
            .iter()
            .fold(Scalar::zero(), |acc, (c, f)| acc + c * &f.anchor);
        Ok(Self {
            start: first.start.clone(),
            end: first.end.clone(),
            anchor,
            segments,
        }
        .canonical())
    }

    pub fn add(&self, other: &PLFun) -> Result<PLFun, ExactError> {
        Self::lincomb(&[(super::scalar::one(), self), (super::scalar::one(), other)])
    }

    pub fn sub(&self, other: &PLFun) -> Result<PLFun, ExactError> {
        Self::lincomb(&[(super::scalar::one(), self), (-super::scalar::one(), other)])
    }

    pub fn scale(&self, c: &Scalar) -> PLFun {
        let segments = self
            .segments
            .iter()
            .map(|s| Segment {
                breakpoint: s.breakpoint.clone(),
                slope: c * &s.slope,
            })
            .collect();
        Self {
            start: self.start.clone(),
            end: self.end.clone(),
            anchor: c * &self.anchor,
            segments,
        }
        .canonical()
    }

    /// Same function on `[start, new_end)`; `new_end` must not exceed the current end.
    pub fn restrict_end(&self, new_end: &End) -> Result<PLFun, ExactError> {
        if let End::Finite(e) = new_end {
            if !self.end.contains_below(e) && &self.end != new_end {
                return Err(ExactError::OutOfDomain {
                    t: fmt_scalar(e),
                    domain: self.domain_string(),
                });
            }
            if e <= &self.start {
                return Err(ExactError::EmptyDomain);
            }
        } else if !self.end.is_infinite() {
            return Err(ExactError::OutOfDomain {
                t: "inf".into(),
                domain: self.domain_string(),
            });
        }
        let segments = self
            .segments
            .iter()
            .filter(|s| new_end.contains_below(&s.breakpoint))
            .cloned()
            .collect();
        Ok(Self {
            start: self.start.clone(),
            end: new_end.clone(),
            anchor: self.anchor.clone(),
            segments,
        })
    }

    /// Decides whether `a - b` stays bounded on the domain.
    ///
    /// On an unbounded domain this is equality of eventual slopes. A bounded
    /// domain always yields `Bounded`, with the supremum taken over the
    /// breakpoints and the left limit at the end.
    pub fn bounded_difference(a: &PLFun, b: &PLFun) -> Result<BoundedDifference, ExactError> {
        let d = a.sub(b)?;
        if d.end.is_infinite() && !d.eventual_slope().is_zero() {
            return Ok(BoundedDifference::Unbounded {
                slope_gap: d.eventual_slope(),
            });
        }
        let mut sup = Scalar::zero();
        for v in d.breakpoint_values() {
            sup = max_scalar(&sup, &v.abs());
        }
        if let Some(v) = d.limit_at_end() {
            sup = max_scalar(&sup, &v.abs());
        }
        Ok(BoundedDifference::Bounded { sup })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct PLFunJson {
    domain: (String, String),
    anchor: String,
    segments: Vec<(String, String)>,
}

impl From<PLFun> for PLFunJson {
    fn from(f: PLFun) -> Self {
        PLFunJson {
            domain: (fmt_scalar(&f.start), f.end.to_string()),
            anchor: fmt_scalar(&f.anchor),
            segments: f
                .segments
                .iter()
                .map(|s| (fmt_scalar(&s.breakpoint), fmt_scalar(&s.slope)))
                .collect(),
        }
    }
}

impl TryFrom<PLFunJson> for PLFun {
    type Error = ExactError;

    fn try_from(j: PLFunJson) -> Result<Self, ExactError> {
        let start = parse_scalar(&j.domain.0)?;
        let end = if j.domain.1 == "inf" {
            End::Infinite
        } else {
            End::Finite(parse_scalar(&j.domain.1)?)
        };
        let anchor = parse_scalar(&j.anchor)?;
        let segments = j
            .segments
            .iter()
            .map(|(b, s)| {
                Ok(Segment {
                    breakpoint: parse_scalar(b)?,
                    slope: parse_scalar(s)?,
                })
            })
            .collect::<Result<Vec<_>, ExactError>>()?;
        PLFun::new(start, end, anchor, segments)
    }
}
