use std::fmt;

use serde::Serialize;

use super::precision::{eval_poly, resultant, PPoly};
use super::{ser_display, ser_display_opt, ser_display_vec, Value};
use crate::algebra::hensel::roots_hensel;
use crate::algebra::roots::{distinct_zero_count, roots_partial};
use crate::algebra::{FieldElem, PAdic, Poly, RatMap};

/// p-adic digits used when critical points need Hensel lifting.
pub const DEFAULT_PRECISION: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Satisfied {
    Yes,
    /// First failing clause, numbered 1 to 5.
    No(u8),
    /// All clauses hold for p-adic approximations with this many digits.
    YesAtPrecision(u32),
    Inconclusive(String),
}

impl fmt::Display for Satisfied {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Satisfied::Yes => f.write_str("Yes"),
            Satisfied::No(c) => write!(f, "No({c})"),
            Satisfied::YesAtPrecision(d) => write!(f, "YesAtPrecision({d})"),
            Satisfied::Inconclusive(why) => write!(f, "Inconclusive({why})"),
        }
    }
}

impl Serialize for Satisfied {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPoint {
    pub point: Value,
    /// Multiplicity as a zero of P'.
    pub order: u32,
    /// `P(c)`.
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DZero {
    #[serde(serialize_with = "ser_display")]
    pub d: FieldElem,
    /// `None` when `W(d) = 0`.
    #[serde(serialize_with = "ser_display_opt")]
    pub q_of_d: Option<FieldElem>,
    #[serde(serialize_with = "ser_display")]
    pub w_of_d: FieldElem,
}

/// Clause (3) data for one critical point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DCheck {
    pub i: usize,
    /// `V' − P(cᵢ)W'`, when its coefficients are exact.
    #[serde(serialize_with = "ser_display_opt")]
    pub d_poly: Option<Poly>,
    /// The zeros found in the field, for the record; the clause itself is
    /// decided by `gcd(V' − P(cᵢ)W', (V − P(cᵢ)W)·W) = 1`.
    pub zeros: Vec<DZero>,
    /// `None` when precision did not settle the clause.
    pub passed: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionMReport {
    pub satisfied: Satisfied,
    /// Distinct zeros of P'.
    pub k: usize,
    pub critical_points: Vec<CriticalPoint>,
    /// Factors of P' whose zeros could not be located.
    #[serde(serialize_with = "ser_display_vec")]
    pub unresolved: Vec<Poly>,
    pub d_checks: Vec<DCheck>,
    pub notes: Vec<String>,
}

impl ConditionMReport {
    pub fn is_yes(&self) -> bool {
        self.satisfied == Satisfied::Yes
    }

    /// Exact critical points with their P'-multiplicities and critical values.
    pub fn exact_points(&self) -> Option<Vec<(FieldElem, u32, FieldElem)>> {
        self.critical_points
            .iter()
            .map(|c| Some((c.point.exact()?.clone(), c.order, c.value.exact()?.clone())))
            .collect()
    }
}

/// Numerator of P' with the factors it shares with S removed.
pub(crate) fn critical_numerator(p: &RatMap) -> Poly {
    let mut n = p.derivative_numerator();
    if n.is_zero() {
        return n;
    }
    loop {
        let g = n.gcd(p.den());
        if g.is_constant() {
            return n;
        }
        n = n.exact_div(&g).unwrap();
    }
}

/// The value `P(cᵢ)` must avoid when `v = w`: the ratio of leading coefficients of Q.
fn infinity_value(q: &RatMap) -> FieldElem {
    q.lead_ratio()
        .cloned()
        .unwrap_or_else(|| FieldElem::one(q.field()))
}

fn first_failure(checks: [(u8, Option<bool>); 3]) -> Option<Satisfied> {
    for (clause, ok) in checks {
        match ok {
            Some(false) => return Some(Satisfied::No(clause)),
            None => {
                return Some(Satisfied::Inconclusive(format!(
                    "clause ({clause}) not settled at this precision"
                )))
            }
            Some(true) => {}
        }
    }
    None
}

/// Checks clauses (1) to (5) of Condition (M).
///
/// Zeros of P' are found exactly where possible (the hints are tried first);
/// over Q the rest are Hensel-lifted to `precision` digits.
pub fn check_condition_m(
    p: &RatMap,
    q: &RatMap,
    hints: &[FieldElem],
    precision: u32,
) -> ConditionMReport {
    let mut report = ConditionMReport {
        satisfied: Satisfied::Yes,
        k: 0,
        critical_points: vec![],
        unresolved: vec![],
        d_checks: vec![],
        notes: vec![],
    };
    let n = critical_numerator(p);
    if n.is_zero() || q.derivative_numerator().is_zero() {
        report.satisfied = Satisfied::No(1);
        return report;
    }
    if let Some(l) = q.lead_ratio() {
        report.notes.push(format!(
            "V is not monic; clause (5) compares P(c) with the leading ratio {l}"
        ));
    }
    report.k = distinct_zero_count(&n).unwrap();
    if report.k == 0 {
        report.satisfied = Satisfied::No(3);
        return report;
    }
    let (roots, _) = roots_partial(&n, hints).unwrap();
    if roots.complete {
        check_exact(p, q, &roots.exact_roots, &mut report);
        return report;
    }
    report.unresolved = roots.unresolved.iter().map(|(g, _)| g.clone()).collect();
    let field = p.field();
    if field.characteristic() != 0 || field.extension().is_some() {
        report.satisfied = Satisfied::Inconclusive(format!(
            "{} unresolved factor(s) of P'",
            report.unresolved.len()
        ));
        return report;
    }
    let prime = field.prime();
    let prec = precision as i64;
    let mut approx: Vec<(PAdic, u32)> = roots
        .exact_roots
        .iter()
        .map(|(c, m)| {
            (
                PAdic::from_rational(&c.as_rational().unwrap(), prime, prec),
                *m,
            )
        })
        .collect();
    for (g, m) in &roots.unresolved {
        match roots_hensel(g, precision) {
            Ok(set) if set.complete => {
                approx.extend(set.approx_roots.into_iter().map(|r| (r.value, *m)));
                for (c, _) in set.exact_roots {
                    approx.push((
                        PAdic::from_rational(&c.as_rational().unwrap(), prime, prec),
                        *m,
                    ));
                }
            }
            Ok(_) => {
                report.satisfied = Satisfied::Inconclusive(format!(
                    "zeros of {g} lie outside Q_{prime} or its unramified part"
                ));
                return report;
            }
            Err(e) => {
                report.satisfied = Satisfied::Inconclusive(format!("zeros of {g}: {e}"));
                return report;
            }
        }
    }
    check_approx(p, q, &approx, precision, &mut report);
    report
}

fn check_exact(p: &RatMap, q: &RatMap, roots: &[(FieldElem, u32)], report: &mut ConditionMReport) {
    let (v, w) = (q.num(), q.den());
    let (dv, dw) = (v.derivative(), w.derivative());
    let mut clause3 = true;
    let mut values = Vec::new();
    for (i, (c, m)) in roots.iter().enumerate() {
        let pc = p.eval(c).expect("critical points are not poles");
        let d_poly = dv.sub(&dw.scale(&pc));
        let passed = if d_poly.is_zero() {
            false
        } else {
            let g = v.sub(&w.scale(&pc)).mul(w);
            d_poly.gcd(&g).is_constant()
        };
        clause3 &= passed;
        let zeros = match d_poly.is_zero() {
            true => vec![],
            false => roots_partial(&d_poly, &[])
                .map(|(set, _)| {
                    set.exact_roots
                        .into_iter()
                        .map(|(d, _)| {
                            let w_of_d = w.eval(&d);
                            let q_of_d = w_of_d.inv().map(|inv| &v.eval(&d) * &inv);
                            DZero { d, q_of_d, w_of_d }
                        })
                        .collect()
                })
                .unwrap_or_default(),
        };
        report.d_checks.push(DCheck {
            i,
            d_poly: Some(d_poly),
            zeros,
            passed: Some(passed),
        });
        report.critical_points.push(CriticalPoint {
            point: Value::Exact(c.clone()),
            order: *m,
            value: Value::Exact(pc.clone()),
        });
        values.push(pc);
    }
    let distinct = values
        .iter()
        .enumerate()
        .all(|(i, a)| !values[..i].contains(a));
    let lambda = infinity_value(q);
    let avoids_infinity = q.num_degree() != q.den_degree() || values.iter().all(|a| *a != lambda);
    if let Some(s) = first_failure([
        (3, Some(clause3)),
        (4, Some(distinct)),
        (5, Some(avoids_infinity)),
    ]) {
        report.satisfied = s;
    }
}

fn check_approx(
    p: &RatMap,
    q: &RatMap,
    roots: &[(PAdic, u32)],
    precision: u32,
    report: &mut ConditionMReport,
) {
    let prime = p.field().prime();
    let prec = precision as i64;
    let (v, w) = (q.num(), q.den());
    let lift = |a: &Poly| PPoly::from_poly(a, prime, prec);
    let (dv, dw) = (lift(&v.derivative()), lift(&w.derivative()));
    let (pv, pw) = (lift(v), lift(w));
    let mut clause3 = Some(true);
    let mut values = Vec::new();
    for (i, (c, m)) in roots.iter().enumerate() {
        let (r, s) = (eval_poly(p.num(), c), eval_poly(p.den(), c));
        let Some(pc) = r.div(&s) else {
            report.satisfied =
                Satisfied::Inconclusive(format!("S is not provably nonzero at critical point {i}"));
            return;
        };
        let d_poly = dv.sub(&dw.scale(&pc), prime, prec);
        let passed = match d_poly.lead() {
            Some(l) if l.is_provably_nonzero() => {
                let g = pv.sub(&pw.scale(&pc), prime, prec).mul(&pw, prime, prec);
                resultant(&d_poly, &g, prime, prec)
                    .is_provably_nonzero()
                    .then_some(true)
            }
            _ => None,
        };
        clause3 = match (clause3, passed) {
            (Some(true), x) => x,
            (acc, _) => acc,
        };
        report.d_checks.push(DCheck {
            i,
            d_poly: None,
            zeros: vec![],
            passed,
        });
        report.critical_points.push(CriticalPoint {
            point: Value::Approx(c.clone()),
            order: *m,
            value: Value::Approx(pc.clone()),
        });
        values.push(pc);
    }
    let distinct = values
        .iter()
        .enumerate()
        .all(|(i, a)| values[..i].iter().all(|b| a.sub(b).is_provably_nonzero()));
    let lambda = infinity_value(q).as_rational().expect("rational field");
    let avoids_infinity =
        q.num_degree() != q.den_degree() || values.iter().all(|a| !a.agrees_with(&lambda));
    let verdict = first_failure([
        (3, clause3),
        (4, distinct.then_some(true)),
        (5, avoids_infinity.then_some(true)),
    ]);
    report.satisfied = verdict.unwrap_or(Satisfied::YesAtPrecision(precision));
    report.notes.push(format!(
        "critical points are {prime}-adic approximations with {precision} digits"
    ));
}
