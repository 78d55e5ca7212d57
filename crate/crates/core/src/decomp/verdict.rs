use std::fmt;

use serde::Serialize;

use super::condm::{check_condition_m, ConditionMReport};
use super::local::{gamma, lambda_class, local_factorizations, theta, LambdaClass};
use crate::algebra::roots::roots_partial;
use crate::algebra::{FieldElem, RatMap};
use crate::exactnum::scalar::serde_str;
use crate::exactnum::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Setting {
    EntireOnK,
    AnalyticUnboundedDisk,
    MeroOnK,
    MeroUnboundedDisk,
    /// Entire solutions, via distinct critical values of R and a bound on deg V.
    AnalyticOnKCriticalValues,
    /// Entire solutions, via at least deg V critical points of R with distinct values.
    AnalyticOnKCriticalCount,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    RuledOut,
    Inconclusive(String),
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::RuledOut => f.write_str("RuledOut"),
            Conclusion::Inconclusive(why) => write!(f, "Inconclusive({why})"),
        }
    }
}

impl Serialize for Conclusion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = ">")]
    Greater,
}

/// `lhs relation rhs`, as evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    #[serde(with = "serde_str")]
    pub lhs: Scalar,
    #[serde(with = "serde_str")]
    pub rhs: Scalar,
    pub relation: Relation,
}

impl Inequality {
    fn new(lhs: Scalar, rhs: Scalar) -> Inequality {
        let relation = match lhs.cmp(&rhs) {
            std::cmp::Ordering::Less => Relation::Less,
            std::cmp::Ordering::Equal => Relation::Equal,
            std::cmp::Ordering::Greater => Relation::Greater,
        };
        Inequality { lhs, rhs, relation }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub s: Vec<u32>,
    pub theta: Option<u64>,
    #[serde(rename = "gammaW")]
    pub gamma_w: usize,
    #[serde(rename = "gammaR")]
    pub gamma_r: usize,
    #[serde(rename = "gammaS")]
    pub gamma_s: usize,
    pub lambda: Option<LambdaClass>,
    pub inequality: Option<Inequality>,
    /// Whether every hypothesis other than the decisive inequality was verified.
    pub hypotheses_hold: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub setting: Setting,
    pub conclusion: Conclusion,
    pub trace: Trace,
}

/// Whether the evaluated inequality contradicts the existence of solutions in `setting`.
pub fn ruled_out_by(setting: Setting, ineq: &Inequality) -> bool {
    match setting {
        Setting::EntireOnK | Setting::MeroOnK => ineq.relation != Relation::Less,
        Setting::AnalyticUnboundedDisk
        | Setting::MeroUnboundedDisk
        | Setting::AnalyticOnKCriticalCount => ineq.relation == Relation::Greater,
        Setting::AnalyticOnKCriticalValues => ineq.relation != Relation::Greater,
    }
}

fn int(n: usize) -> Scalar {
    Scalar::from_integer((n as i64).into())
}

fn base_trace(p: &RatMap, q: &RatMap) -> Trace {
    Trace {
        p: p.degree(),
        q: q.degree(),
        k: 0,
        s: vec![],
        theta: None,
        gamma_w: gamma(q.den()),
        gamma_r: gamma(p.num()),
        gamma_s: gamma(p.den()),
        lambda: None,
        inequality: None,
        hypotheses_hold: false,
        notes: vec![],
    }
}

fn conclude(setting: Setting, trace: Trace, reason: &str) -> Verdict {
    let conclusion = match &trace.inequality {
        Some(i) if trace.hypotheses_hold && ruled_out_by(setting, i) => Conclusion::RuledOut,
        Some(_) if trace.hypotheses_hold => Conclusion::Inconclusive("InequalityConsistent".into()),
        _ => Conclusion::Inconclusive(reason.into()),
    };
    Verdict {
        setting,
        conclusion,
        trace,
    }
}

fn char_note(p: &RatMap, trace: &mut Trace) {
    if p.field().characteristic() != 0 {
        trace.notes.push("characteristic p: k, p and q are unchanged by passing to chi-roots of the coefficients".into());
    }
}

fn condm_note(report: &ConditionMReport, trace: &mut Trace) {
    trace
        .notes
        .push(format!("Condition (M): {}", report.satisfied));
}

/// Entire solutions on K and unbounded analytic solutions on a disk, from `qk − p`.
pub fn verdict_entire(p: &RatMap, q: &RatMap, hints: &[FieldElem], precision: u32) -> Vec<Verdict> {
    let report = check_condition_m(p, q, hints, precision);
    verdict_entire_with(p, q, &report)
}

fn verdict_entire_with(p: &RatMap, q: &RatMap, report: &ConditionMReport) -> Vec<Verdict> {
    let mut trace = base_trace(p, q);
    trace.k = report.k;
    trace.hypotheses_hold = report.is_yes();
    condm_note(report, &mut trace);
    char_note(p, &mut trace);
    if trace.hypotheses_hold {
        trace.inequality = Some(Inequality::new(int(trace.q * trace.k), int(trace.p)));
    }
    [Setting::EntireOnK, Setting::AnalyticUnboundedDisk]
        .into_iter()
        .map(|s| conclude(s, trace.clone(), "ConditionMUnverified"))
        .collect()
}

/// Meromorphic solutions on K and on a disk, from `qΘ` against `p(kγ(W)+1) + qΛ`.
pub fn verdict_mero(p: &RatMap, q: &RatMap, hints: &[FieldElem], precision: u32) -> Vec<Verdict> {
    let report = check_condition_m(p, q, hints, precision);
    verdict_mero_with(p, q, &report)
}

fn verdict_mero_with(p: &RatMap, q: &RatMap, report: &ConditionMReport) -> Vec<Verdict> {
    let mut trace = base_trace(p, q);
    trace.k = report.k;
    condm_note(report, &mut trace);
    char_note(p, &mut trace);
    let lambda = lambda_class(p, q);
    trace.lambda = Some(lambda.clone());
    let mut reason = "ConditionMUnverified";
    if report.is_yes() {
        match local_factorizations(p, q, report) {
            Ok(facts) => {
                let th = theta(&facts);
                trace.s = facts.iter().map(|f| f.s).collect();
                trace.theta = Some(th);
                let lhs = int(trace.q) * Scalar::from_integer((th as i64).into());
                let rhs =
                    int(trace.p * (trace.k * trace.gamma_w + 1)) + int(trace.q) * &lambda.value;
                trace.inequality = Some(Inequality::new(lhs, rhs));
                trace.hypotheses_hold = th > 0;
                reason = "ThetaNotPositive";
            }
            Err(e) => trace.notes.push(e.to_string()),
        }
    }
    [Setting::MeroOnK, Setting::MeroUnboundedDisk]
        .into_iter()
        .map(|s| conclude(s, trace.clone(), reason))
        .collect()
}

/// Number of distinct values of R over the zeros of R', or `None` if some zero is not in the field.
fn distinct_critical_values(p: &RatMap) -> Option<usize> {
    let r = p.num();
    let dr = r.derivative();
    if dr.is_zero() {
        return Some(0);
    }
    let (set, _) = roots_partial(&dr, &[]).ok()?;
    if !set.complete {
        return None;
    }
    let mut values: Vec<FieldElem> = Vec::new();
    for (c, _) in set.exact_roots {
        let v = r.eval(&c);
        if !values.contains(&v) {
            values.push(v);
        }
    }
    Some(values.len())
}

/// Entire solutions, from `k` distinct critical values of R and `l = k − deg V + 1 > 0`:
/// solutions need `deg V (deg R + 1) > (k + 1) deg R`.
pub fn verdict_critical_values(p: &RatMap, q: &RatMap) -> Verdict {
    let setting = Setting::AnalyticOnKCriticalValues;
    let mut trace = base_trace(p, q);
    let (deg_r, deg_v) = (p.num_degree(), q.num_degree());
    trace.p = deg_r;
    trace.q = deg_v;
    let Some(k) = distinct_critical_values(p) else {
        trace
            .notes
            .push("zeros of R' are not all in the field".into());
        return conclude(setting, trace, "UnresolvedRoots");
    };
    trace.k = k;
    let l = k as i64 - deg_v as i64 + 1;
    trace.notes.push(format!("l = {l}"));
    trace.notes.push(format!(
        "solutions need {}/{} < deg V = {deg_v} < deg R = {deg_r}",
        (k + 1) * deg_r,
        deg_r + 1
    ));
    trace.hypotheses_hold = l > 0 && deg_v > 0;
    trace.inequality = Some(Inequality::new(
        int(deg_v * (deg_r + 1)),
        int((k + 1) * deg_r),
    ));
    conclude(setting, trace, "HypothesisFails")
}

/// Entire solutions when `2 ≤ min(deg R, deg V)`, `deg R/2 < deg V` and R' has
/// `deg V` zeros with distinct values of R.
pub fn verdict_critical_count(p: &RatMap, q: &RatMap) -> Verdict {
    let setting = Setting::AnalyticOnKCriticalCount;
    let mut trace = base_trace(p, q);
    let (deg_r, deg_v) = (p.num_degree(), q.num_degree());
    trace.p = deg_r;
    trace.q = deg_v;
    let Some(k) = distinct_critical_values(p) else {
        trace
            .notes
            .push("zeros of R' are not all in the field".into());
        return conclude(setting, trace, "UnresolvedRoots");
    };
    trace.k = k;
    let nondegenerate = !p.derivative_numerator().is_zero() && !q.derivative_numerator().is_zero();
    trace.hypotheses_hold = nondegenerate && deg_r.min(deg_v) >= 2 && k >= deg_v;
    trace.inequality = Some(Inequality::new(
        int(deg_v),
        Scalar::new((deg_r as i64).into(), 2.into()),
    ));
    conclude(setting, trace, "HypothesisFails")
}

/// Every applicable verdict, reported separately.
pub fn all_verdicts(p: &RatMap, q: &RatMap, hints: &[FieldElem], precision: u32) -> Vec<Verdict> {
    let report = check_condition_m(p, q, hints, precision);
    let mut out = verdict_entire_with(p, q, &report);
    out.extend(verdict_mero_with(p, q, &report));
    out.push(verdict_critical_values(p, q));
    out.push(verdict_critical_count(p, q));
    out
}
