use serde::Serialize;

use super::condm::{ConditionMReport, Satisfied};
use super::{ser_display, ser_display_opt, DecompError};
use crate::algebra::roots::distinct_zero_count;
use crate::algebra::{Poly, RatMap};
use crate::exactnum::scalar::{min_scalar, serde_str};
use crate::exactnum::Scalar;

/// `R − P(cᵢ)S = (x − cᵢ)^sᵢ · Aᵢ` with `Bᵢ = S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalFactorization {
    pub index: usize,
    pub s: u32,
    /// `None` when cᵢ is only known approximately.
    #[serde(serialize_with = "ser_display_opt")]
    pub a: Option<Poly>,
    #[serde(serialize_with = "ser_display")]
    pub b: Poly,
    /// `V − P(cᵢ)W` is squarefree and prime to W.
    pub b_squarefree: Option<bool>,
    /// `Res(V − P(cᵢ)W, V − P(cⱼ)W) ≠ 0` for every later j.
    pub b_disjoint_from_later: Option<bool>,
}

/// Number of distinct zeros in the algebraic closure.
pub fn gamma(a: &Poly) -> usize {
    if a.is_zero() {
        0
    } else {
        distinct_zero_count(a).unwrap()
    }
}

/// Splits off `x − cᵢ` from `R − P(cᵢ)S` as often as it divides, for every critical point.
pub fn local_factorizations(
    p: &RatMap,
    q: &RatMap,
    report: &ConditionMReport,
) -> Result<Vec<LocalFactorization>, DecompError> {
    let s_poly = p.den().clone();
    match &report.satisfied {
        Satisfied::Yes => {}
        Satisfied::YesAtPrecision(_) if p.field().characteristic() == 0 => {
            // a zero of order m of P' is a zero of order m + 1 of P − P(c)
            return Ok(report
                .critical_points
                .iter()
                .enumerate()
                .map(|(index, c)| LocalFactorization {
                    index,
                    s: c.order + 1,
                    a: None,
                    b: s_poly.clone(),
                    b_squarefree: None,
                    b_disjoint_from_later: None,
                })
                .collect());
        }
        other => return Err(DecompError::ConditionMUnverified(other.to_string())),
    }
    let points = report
        .exact_points()
        .expect("a Yes report has exact critical points");
    let deg_p = p.degree();
    let (r, v, w) = (p.num(), q.num(), q.den());
    let b_polys: Vec<Poly> = points
        .iter()
        .map(|(_, _, pc)| v.sub(&w.scale(pc)))
        .collect();
    let mut out = Vec::with_capacity(points.len());
    for (index, (c, _, pc)) in points.iter().enumerate() {
        let mismatch = |msg: String| DecompError::FactorizationMismatch { index, msg };
        let lin = Poly::linear(c);
        let mut a = r.sub(&s_poly.scale(pc));
        let mut s = 0u32;
        while let Some(next) = a.exact_div(&lin) {
            a = next;
            s += 1;
        }
        if s < 2 {
            return Err(mismatch(format!("multiplicity {s} < 2")));
        }
        if lin.pow(s).mul(&a).add(&s_poly.scale(pc)) != *r {
            return Err(mismatch("reconstruction failed".into()));
        }
        if a.degree_or_zero() + s as usize > deg_p {
            return Err(mismatch(format!(
                "deg A = {} exceeds {deg_p} - {s}",
                a.degree_or_zero()
            )));
        }
        let b = &b_polys[index];
        let squarefree = b.gcd(&b.derivative()).is_constant() && b.gcd(w).is_constant();
        let disjoint = b_polys[index + 1..]
            .iter()
            .all(|o| !b.resultant(o).is_zero());
        out.push(LocalFactorization {
            index,
            s,
            a: Some(a),
            b: s_poly.clone(),
            b_squarefree: Some(squarefree),
            b_disjoint_from_later: Some(disjoint),
        });
    }
    Ok(out)
}

/// `Θ(P) = Σ (sᵢ − 2)`.
pub fn theta(facts: &[LocalFactorization]) -> u64 {
    facts.iter().map(|f| (f.s - 2) as u64).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaClass {
    pub case: u8,
    #[serde(with = "serde_str")]
    pub value: Scalar,
}

/// Case number and Λ from the degrees of R, S, V, W.
pub fn lambda_class(p: &RatMap, q: &RatMap) -> LambdaClass {
    let (r, s) = (p.num_degree(), p.den_degree());
    let (v, w) = (q.num_degree(), q.den_degree());
    let ratio = Scalar::new((p.degree() as i64).into(), (q.degree() as i64).into());
    let capped = |g: usize| min_scalar(&Scalar::from_integer((g as i64).into()), &ratio);
    let (case, value) = match (v.cmp(&w), r.cmp(&s)) {
        (std::cmp::Ordering::Equal, _) => (1, ratio.clone()),
        (std::cmp::Ordering::Less, o) if o.is_ge() => (2, capped(gamma(p.num()))),
        (std::cmp::Ordering::Greater, o) if o.is_le() => (3, capped(gamma(p.den()))),
        (std::cmp::Ordering::Greater, _) => (4, capped(gamma(p.den()) + 1)),
        (std::cmp::Ordering::Less, _) => (5, capped(gamma(p.num()) + 1)),
    };
    LambdaClass { case, value }
}
