use std::fmt;

use num_traits::Zero;

use super::SeriesError;
use crate::algebra::{Field, FieldElem, Poly};
use crate::exactnum::scalar::{fmt_scalar, min_scalar};
use crate::exactnum::Scalar;

/// Linear lower bound `val(a_j) ≥ intercept + slope·j`, valid for every index `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailBound {
    pub intercept: Scalar,
    pub slope: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Precision {
    /// A polynomial: all coefficients beyond the stored ones are zero.
    Exact,
    /// Coefficients at index `order` and above are unknown except for the tail bound.
    Truncated { order: usize, tail: TailBound },
}

/// Power series over a field, either exact (a polynomial) or truncated with a tail bound.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    field: Field,
    coeffs: Vec<FieldElem>,
    precision: Precision,
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", cs.join(", "))?;
        if let Precision::Truncated { order, tail } = &self.precision {
            write!(
                f,
                " @ {order}, tail({}, {})",
                fmt_scalar(&tail.intercept),
                fmt_scalar(&tail.slope)
            )?;
        }
        Ok(())
    }
}

fn val(c: &FieldElem) -> Option<Scalar> {
    c.valuation()
}

impl TruncSeries {
    pub fn from_poly(p: &Poly) -> TruncSeries {
        TruncSeries {
            field: p.field().clone(),
            coeffs: p.coeffs().to_vec(),
            precision: Precision::Exact,
        }
    }

    /// Truncated series with the default tail: coefficients bounded by the
    /// smallest known valuation (a function on the open unit disk).
    pub fn truncated(
        field: &Field,
        coeffs: Vec<FieldElem>,
        order: usize,
    ) -> Result<TruncSeries, SeriesError> {
        if coeffs.len() > order {
            return Err(SeriesError::Invalid(format!(
                "{} coefficients exceed order {order}",
                coeffs.len()
            )));
        }
        let beta = coeffs
            .iter()
            .filter_map(val)
            .min()
            .unwrap_or_else(Scalar::zero);
        TruncSeries::with_tail(
            field,
            coeffs,
            order,
            TailBound {
                intercept: beta,
                slope: Scalar::zero(),
            },
        )
    }

    pub fn with_tail(
        field: &Field,
        mut coeffs: Vec<FieldElem>,
        order: usize,
        tail: TailBound,
    ) -> Result<TruncSeries, SeriesError> {
        if coeffs.len() > order {
            return Err(SeriesError::Invalid(format!(
                "{} coefficients exceed order {order}",
                coeffs.len()
            )));
        }
        if order == 0 {
            return Err(SeriesError::Invalid("order must be positive".into()));
        }
        coeffs.resize(order, FieldElem::zero(field));
        for (i, c) in coeffs.iter().enumerate() {
            if let Some(v) = val(c) {
                if v < &tail.intercept + &tail.slope * Scalar::from_integer((i as i64).into()) {
                    return Err(SeriesError::Invalid(format!(
                        "coefficient {i} violates the declared tail bound"
                    )));
                }
            }
        }
        Ok(TruncSeries {
            field: field.clone(),
            coeffs,
            precision: Precision::Truncated { order, tail },
        })
    }

    /// An exact series cut to `order` coefficients, with the best tail bound of slope `slope`.
    pub fn truncate(&self, order: usize, slope: Scalar) -> Result<TruncSeries, SeriesError> {
        let tail = match &self.precision {
            Precision::Exact => TailBound {
                intercept: self.best_intercept(&slope).unwrap_or_else(Scalar::zero),
                slope,
            },
            Precision::Truncated { tail, .. } => tail.clone(),
        };
        let n = order.min(self.order().unwrap_or(order));
        let coeffs = self.coeffs.iter().take(n).cloned().collect();
        TruncSeries::with_tail(&self.field, coeffs, n, tail)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn precision(&self) -> &Precision {
        &self.precision
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.precision, Precision::Exact)
    }

    /// Truncation order; `None` for exact series.
    pub fn order(&self) -> Option<usize> {
        match &self.precision {
            Precision::Exact => None,
            Precision::Truncated { order, .. } => Some(*order),
        }
    }

    pub fn tail(&self) -> Option<&TailBound> {
        match &self.precision {
            Precision::Exact => None,
            Precision::Truncated { tail, .. } => Some(tail),
        }
    }

    /// Known coefficients (for truncated series exactly `order` of them).
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient `i`; `None` when it lies beyond the truncation order.
    pub fn coeff(&self, i: usize) -> Option<FieldElem> {
        match self.coeffs.get(i) {
            Some(c) => Some(c.clone()),
            None if self.is_exact() => Some(FieldElem::zero(&self.field)),
            None => None,
        }
    }

    pub fn as_poly(&self) -> Option<Poly> {
        self.is_exact()
            .then(|| Poly::new(&self.field, self.coeffs.clone()))
    }

    /// The known part as a polynomial.
    pub fn known_poly(&self) -> Poly {
        Poly::new(&self.field, self.coeffs.clone())
    }

    pub fn is_zero_known(&self) -> bool {
        self.coeffs.iter().all(FieldElem::is_zero)
    }

    /// `min_i (val(a_i) − slope·i)` over the stored coefficients.
    fn best_intercept(&self, slope: &Scalar) -> Option<Scalar> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| {
                val(c).map(|v| v - slope * Scalar::from_integer((i as i64).into()))
            })
            .min()
    }

    /// A tail bound valid for all indices: the declared one, or for a
    /// polynomial the best bound of the requested slope.
    fn tail_with_slope(&self, slope: &Scalar) -> TailBound {
        match &self.precision {
            Precision::Truncated { tail, .. } => tail.clone(),
            Precision::Exact => TailBound {
                // a zero polynomial satisfies every bound; 0 is as good as any
                intercept: self.best_intercept(slope).unwrap_or_else(Scalar::zero),
                slope: slope.clone(),
            },
        }
    }

    fn build(&self, coeffs: Vec<FieldElem>, precision: Precision) -> TruncSeries {
        let mut coeffs = coeffs;
        match &precision {
            Precision::Exact => {
                while coeffs.last().is_some_and(FieldElem::is_zero) {
                    coeffs.pop();
                }
            }
            Precision::Truncated { order, .. } => {
                coeffs.resize(*order, FieldElem::zero(&self.field))
            }
        }
        TruncSeries {
            field: self.field.clone(),
            coeffs,
            precision,
        }
    }

    fn combined_order(&self, o: &TruncSeries) -> Option<usize> {
        match (self.order(), o.order()) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a),
            (Some(a), Some(b)) => Some(a.min(b)),
        }
    }

    /// Tail slope used to combine `self` with `o`.
    fn common_slope(&self, o: &TruncSeries) -> Scalar {
        match (self.tail(), o.tail()) {
            (Some(a), Some(b)) => min_scalar(&a.slope, &b.slope),
            (Some(a), None) | (None, Some(a)) => a.slope.clone(),
            (None, None) => Scalar::zero(),
        }
    }

    pub fn add(&self, o: &TruncSeries) -> TruncSeries {
        let ord = self.combined_order(o);
        let n = ord.unwrap_or(self.coeffs.len().max(o.coeffs.len()));
        let z = FieldElem::zero(&self.field);
        let coeffs = (0..n)
            .map(|i| {
                &self.coeffs.get(i).cloned().unwrap_or(z.clone())
                    + &o.coeffs.get(i).cloned().unwrap_or(z.clone())
            })
            .collect();
        let precision = match ord {
            None => Precision::Exact,
            Some(order) => {
                let g = self.common_slope(o);
                let (a, b) = (self.tail_with_slope(&g), o.tail_with_slope(&g));
                Precision::Truncated {
                    order,
                    tail: TailBound {
                        intercept: min_scalar(&a.intercept, &b.intercept),
                        slope: min_scalar(&a.slope, &b.slope),
                    },
                }
            }
        };
        self.build(coeffs, precision)
    }

    pub fn neg(&self) -> TruncSeries {
        self.build(
            self.coeffs.iter().map(|c| -c).collect(),
            self.precision.clone(),
        )
    }

    pub fn sub(&self, o: &TruncSeries) -> TruncSeries {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &FieldElem) -> TruncSeries {
        let precision = match &self.precision {
            Precision::Exact => Precision::Exact,
            Precision::Truncated { order, tail } => match val(c) {
                Some(v) => Precision::Truncated {
                    order: *order,
                    tail: TailBound {
                        intercept: &tail.intercept + v,
                        slope: tail.slope.clone(),
                    },
                },
                None => Precision::Exact,
            },
        };
        if val(c).is_none() {
            return TruncSeries {
                field: self.field.clone(),
                coeffs: vec![],
                precision: Precision::Exact,
            };
        }
        self.build(self.coeffs.iter().map(|a| a * c).collect(), precision)
    }

    pub fn mul(&self, o: &TruncSeries) -> TruncSeries {
        let ord = self.combined_order(o);
        let n = ord.unwrap_or((self.coeffs.len() + o.coeffs.len()).saturating_sub(1));
        let mut out = vec![FieldElem::zero(&self.field); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        let precision = match ord {
            None => Precision::Exact,
            Some(order) => {
                let g = self.common_slope(o);
                let (a, b) = (self.tail_with_slope(&g), o.tail_with_slope(&g));
                Precision::Truncated {
                    order,
                    tail: TailBound {
                        intercept: &a.intercept + &b.intercept,
                        slope: min_scalar(&a.slope, &b.slope),
                    },
                }
            }
        };
        self.build(out, precision)
    }

    /// Multiplication by `x^m`.
    pub fn shift(&self, m: usize) -> TruncSeries {
        let mut coeffs = vec![FieldElem::zero(&self.field); m];
        coeffs.extend(self.coeffs.iter().cloned());
        let precision = match &self.precision {
            Precision::Exact => Precision::Exact,
            Precision::Truncated { order, tail } => Precision::Truncated {
                order: order + m,
                tail: TailBound {
                    intercept: &tail.intercept
                        - &tail.slope * Scalar::from_integer((m as i64).into()),
                    slope: tail.slope.clone(),
                },
            },
        };
        self.build(coeffs, precision)
    }

    /// Division by `x^m` when the first `m` known coefficients vanish.
    pub fn unshift(&self, m: usize) -> Result<TruncSeries, SeriesError> {
        if self.coeffs.iter().take(m).any(|c| !c.is_zero()) || self.order().is_some_and(|o| o <= m)
        {
            return Err(SeriesError::Invalid(format!(
                "not divisible by x^{m} within the known coefficients"
            )));
        }
        let coeffs = self.coeffs.iter().skip(m).cloned().collect();
        let precision = match &self.precision {
            Precision::Exact => Precision::Exact,
            Precision::Truncated { order, tail } => Precision::Truncated {
                order: order - m,
                tail: TailBound {
                    intercept: &tail.intercept
                        + &tail.slope * Scalar::from_integer((m as i64).into()),
                    slope: tail.slope.clone(),
                },
            },
        };
        Ok(self.build(coeffs, precision))
    }

    /// `1/self`, truncated at `order`, or at the own order for truncated input.
    pub fn reciprocal(&self, order: usize) -> Result<TruncSeries, SeriesError> {
        let u0 = self
            .coeffs
            .first()
            .filter(|c| !c.is_zero())
            .ok_or(SeriesError::NonUnitReciprocal)?;
        let inv0 = u0.inv().unwrap();
        let v0 = val(u0).unwrap();
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(self.build(vec![inv0], Precision::Exact));
        }
        let (n, tail) = match &self.precision {
            Precision::Truncated { order, tail } => {
                let delta = min_scalar(&(&tail.intercept - &v0), &Scalar::zero());
                (
                    *order,
                    TailBound {
                        intercept: -v0.clone(),
                        slope: &tail.slope + delta,
                    },
                )
            }
            Precision::Exact => {
                let slope = self.coeffs[1..]
                    .iter()
                    .enumerate()
                    .filter_map(|(i, c)| {
                        val(c).map(|v| (v - &v0) / Scalar::from_integer(((i + 1) as i64).into()))
                    })
                    .min()
                    .unwrap();
                (
                    order,
                    TailBound {
                        intercept: -v0.clone(),
                        slope,
                    },
                )
            }
        };
        let mut out: Vec<FieldElem> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for j in 1..n {
            let mut acc = FieldElem::zero(&self.field);
            for i in 1..=j.min(self.coeffs.len() - 1) {
                acc = &acc + &(&self.coeffs[i] * &out[j - i]);
            }
            out.push(-&(&acc * &inv0));
        }
        Ok(self.build(out, Precision::Truncated { order: n, tail }))
    }

    /// `L(self)` for a polynomial `L`.
    pub fn compose_poly(&self, l: &Poly) -> TruncSeries {
        let one = TruncSeries::from_poly(&Poly::one(&self.field));
        let mut acc = TruncSeries::from_poly(&Poly::zero(&self.field));
        for c in l.coeffs().iter().rev() {
            acc = acc.mul(self).add(&one.scale(c));
        }
        if l.is_zero() {
            return acc;
        }
        // keep the input's precision even when L is constant
        if let (Some(order), true) = (self.order(), acc.is_exact()) {
            return acc
                .truncate(order, self.tail().unwrap().slope.clone())
                .unwrap_or(acc);
        }
        acc
    }

    /// Whether all known coefficients at exponents prime to χ vanish.
    pub fn derivative_vanishes(&self) -> bool {
        let chi = self.field.chi() as usize;
        if chi == 1 {
            return self.coeffs.iter().skip(1).all(FieldElem::is_zero);
        }
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % chi == 0 || c.is_zero())
    }

    /// `Σ a_{χj}^{1/χ} x^j`, defined when the derivative vanishes and every coefficient is a χ-th power.
    pub fn chi_root(&self) -> Result<TruncSeries, SeriesError> {
        let chi = self.field.chi() as usize;
        if !self.derivative_vanishes() {
            return Err(SeriesError::Invalid(
                "the derivative does not vanish".into(),
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .step_by(chi)
            .map(|(i, c)| c.chi_root().ok_or(SeriesError::NotAChiPower(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let precision = match &self.precision {
            Precision::Exact => Precision::Exact,
            Precision::Truncated { order, tail } => Precision::Truncated {
                order: order.div_ceil(chi),
                tail: TailBound {
                    intercept: &tail.intercept / Scalar::from_integer((chi as i64).into()),
                    slope: tail.slope.clone(),
                },
            },
        };
        Ok(self.build(coeffs, precision))
    }

    /// `self^χ = Σ a_j^χ x^{χj}` in characteristic χ.
    pub fn frobenius(&self) -> TruncSeries {
        let chi = self.field.chi() as usize;
        let mut coeffs = vec![FieldElem::zero(&self.field); self.coeffs.len() * chi];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j * chi] = c.frobenius();
        }
        let precision = match &self.precision {
            Precision::Exact => Precision::Exact,
            Precision::Truncated { order, tail } => Precision::Truncated {
                order: order * chi,
                tail: TailBound {
                    intercept: &tail.intercept * Scalar::from_integer((chi as i64).into()),
                    slope: tail.slope.clone(),
                },
            },
        };
        self.build(coeffs, precision)
    }

    /// Whether the two series agree on every coefficient both of them know.
    pub fn agrees_with(&self, o: &TruncSeries) -> bool {
        let n = match self.combined_order(o) {
            Some(n) => n,
            None => self.coeffs.len().max(o.coeffs.len()),
        };
        (0..n).all(|i| self.coeff(i) == o.coeff(i))
    }
}
