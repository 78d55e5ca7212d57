//! Counting functions Z, N, T and their multiplicity-free variants, plus the
//! growth comparisons built from them.
//!
//! All functions live on a common window `[t0, end)` of log-radii. `+O(1)`
//! claims are decided by eventual slopes; on a bounded window only slope data
//! is available and the outcome is labelled as such.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{AlgebraError, FieldElem, RatMap};
use crate::decomp::{lambda_class, LambdaClass};
use crate::exactnum::scalar::{min_scalar, serde_str};
use crate::exactnum::{BoundedDifference, End, ExactError, PLFun, Scalar, Segment};
use crate::series::{
    compose_ratmap, mero_divisor, ramification_index, Divisor, MeroRep, SeriesError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NevError {
    #[error("divisor is not certified on any interval: {0}")]
    UncertifiedDivisor(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("window starting at {start} is beyond the certified radius {certified}")]
    BeyondCertifiedRadius { start: Scalar, certified: End },
    #[error("P(f) and Q(g) differ at coefficient {index}")]
    NotASolutionPair { index: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NevBundle {
    pub z: PLFun,
    pub n: PLFun,
    pub t: PLFun,
    pub z_tilde: PLFun,
    pub n_tilde: PLFun,
    pub source: Divisor,
    /// `χ^s` for the ramification index `s` of the underlying function.
    pub chi_power: u64,
}

#[derive(Serialize)]
struct BundleJson<'a> {
    #[serde(rename = "Z")]
    z: &'a PLFun,
    #[serde(rename = "N")]
    n: &'a PLFun,
    #[serde(rename = "T")]
    t: &'a PLFun,
    #[serde(rename = "Zt")]
    z_tilde: &'a PLFun,
    #[serde(rename = "Nt")]
    n_tilde: &'a PLFun,
    chi_power: u64,
}

impl Serialize for NevBundle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BundleJson {
            z: &self.z,
            n: &self.n,
            t: &self.t,
            z_tilde: &self.z_tilde,
            n_tilde: &self.n_tilde,
            chi_power: self.chi_power,
        }
        .serialize(s)
    }
}

/// `Σ w·max(0, t − v)` over `(v, w)` on `[start, end)`.
fn counting(terms: &[(Scalar, Scalar)], start: &Scalar, end: &End) -> PLFun {
    let mut anchor = Scalar::zero();
    let mut slope = Scalar::zero();
    let mut jumps: BTreeMap<Scalar, Scalar> = BTreeMap::new();
    for (v, w) in terms {
        if v <= start {
            anchor += w * (start - v);
            slope += w;
        } else if end.contains_below(v) {
            *jumps.entry(v.clone()).or_insert_with(Scalar::zero) += w;
        }
    }
    let mut segments = vec![Segment {
        breakpoint: start.clone(),
        slope: slope.clone(),
    }];
    for (v, w) in jumps {
        slope += w;
        segments.push(Segment {
            breakpoint: v,
            slope: slope.clone(),
        });
    }
    PLFun::new(start.clone(), end.clone(), anchor, segments)
        .expect("breakpoints are sorted and inside the window")
}

fn weights(d: &Divisor, zeros: bool, tilde: bool) -> Vec<(Scalar, Scalar)> {
    d.entries
        .iter()
        .filter(|e| (e.multiplicity > 0) == zeros)
        .map(|e| {
            let w = if tilde {
                e.points as i64
            } else {
                e.multiplicity.abs() * e.points as i64
            };
            (e.log_abs.clone(), Scalar::from_integer(w.into()))
        })
        .collect()
}

/// `min(0, smallest log_abs)`: the natural left end of a window.
fn natural_start(ds: &[&Divisor]) -> Scalar {
    ds.iter()
        .flat_map(|d| d.entries.iter())
        .fold(Scalar::zero(), |acc, e| min_scalar(&acc, &e.log_abs))
}

fn check_window(start: &Scalar, end: &End) -> Result<(), NevError> {
    if end.contains_below(start) {
        Ok(())
    } else {
        Err(NevError::BeyondCertifiedRadius {
            start: start.clone(),
            certified: end.clone(),
        })
    }
}

fn assemble(
    main: &Divisor,
    tilde: &Divisor,
    chi_power: u64,
    start: &Scalar,
    end: &End,
) -> Result<NevBundle, NevError> {
    for d in [main, tilde] {
        if d.origin_order != 0 {
            return Err(NevError::HypothesisViolated(
                "zero or pole at the origin".into(),
            ));
        }
    }
    check_window(start, end)?;
    let z = counting(&weights(main, true, false), start, end);
    let n = counting(&weights(main, false, false), start, end);
    let t = z.max(&n)?;
    let z_tilde = counting(&weights(tilde, true, true), start, end);
    let n_tilde = counting(&weights(tilde, false, true), start, end);
    Ok(NevBundle {
        z,
        n,
        t,
        z_tilde,
        n_tilde,
        source: main.clone(),
        chi_power,
    })
}

/// Bundle on the natural window `[min(0, entries), certified_t)`.
pub fn nev_from_divisor(d: &Divisor, chi_power: u64) -> Result<NevBundle, NevError> {
    let start = natural_start(&[d]);
    if !d.certified_t.contains_below(&start) {
        return Err(NevError::UncertifiedDivisor(format!(
            "certified radius {} is not above {start}",
            d.certified_t
        )));
    }
    nev_from_divisor_on(d, chi_power, &start, &d.certified_t)
}

/// Bundle on a caller-chosen window, which must lie inside the certified radius.
pub fn nev_from_divisor_on(
    d: &Divisor,
    chi_power: u64,
    start: &Scalar,
    end: &End,
) -> Result<NevBundle, NevError> {
    if d.certified_t.min(end) != *end {
        return Err(NevError::UncertifiedDivisor(format!(
            "window end {end} exceeds {}",
            d.certified_t
        )));
    }
    assemble(d, d, chi_power, start, end)
}

/// Divisor data of a function: its own divisor, the divisor of its χ-root
/// representative (used for the multiplicity-free counts) and `χ^s`.
struct Parts {
    main: Divisor,
    tilde: Divisor,
    chi_power: u64,
}

impl Parts {
    fn of(f: &MeroRep) -> Result<Parts, NevError> {
        let main = mero_divisor(f)?;
        if main.origin_order != 0 {
            return Err(NevError::HypothesisViolated(
                "zero or pole at the origin".into(),
            ));
        }
        let chi = f.field().chi() as u64;
        if chi == 1 || f.is_constant_known() {
            return Ok(Parts {
                tilde: main.clone(),
                main,
                chi_power: 1,
            });
        }
        let r = ramification_index(f)?;
        let chi_power = chi.pow(r.index);
        // Exact divisors already list distinct points; truncated ones count
        // coalesced points separately and need the reduced representative.
        let tilde = if r.index > 0 && !main.multiplicity_certified {
            mero_divisor(&r.reduced)?
        } else {
            main.clone()
        };
        Ok(Parts {
            main,
            tilde,
            chi_power,
        })
    }

    fn start(&self) -> Scalar {
        natural_start(&[&self.main, &self.tilde])
    }

    fn end(&self) -> End {
        self.main.certified_t.min(&self.tilde.certified_t)
    }

    fn bundle(&self, start: &Scalar, end: &End) -> Result<NevBundle, NevError> {
        assemble(&self.main, &self.tilde, self.chi_power, start, end)
    }
}

fn common_window(parts: &[&Parts]) -> (Scalar, End) {
    let mut start = Scalar::zero();
    let mut end = End::Infinite;
    for p in parts {
        start = min_scalar(&start, &p.start());
        end = end.min(&p.end());
    }
    (start, end)
}

/// Bundle of a function on its natural window.
pub fn nev_of(f: &MeroRep) -> Result<NevBundle, NevError> {
    let p = Parts::of(f)?;
    p.bundle(&p.start(), &p.end())
}

/// Eventual-slope outcomes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SlopeVerdict {
    HoldsEventually,
    ViolatedEventually,
    InconclusiveWithinCertifiedRadius,
}

fn slope_verdict(margin: &PLFun) -> SlopeVerdict {
    if !margin.end().is_infinite() {
        SlopeVerdict::InconclusiveWithinCertifiedRadius
    } else if margin.eventual_slope().is_negative() {
        SlopeVerdict::ViolatedEventually
    } else {
        SlopeVerdict::HoldsEventually
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecondMainReport {
    /// `(n−1)·T(f)/χ^s`.
    pub lhs: PLFun,
    /// `Σ Z̃(f−αᵢ) + Ñ(f) − t`.
    pub rhs: PLFun,
    pub margin: PLFun,
    pub verdict: SlopeVerdict,
    #[serde(with = "serde_str")]
    pub slack_slope: Scalar,
    pub ramification_index: u32,
}

fn nonconstant(f: &MeroRep, name: &str) -> Result<(), NevError> {
    if f.is_constant_known() {
        Err(NevError::HypothesisViolated(format!("{name} is constant")))
    } else {
        Ok(())
    }
}

/// Compares both sides of the second main theorem for `f` and targets `alphas`.
///
/// The targets are used as given: in characteristic χ the multiplicity-free
/// counts of `f − α` are taken on its χ-root representative, which is
/// `g − α^(1/χ^s)` whenever α has such a root.
pub fn check_second_main_theorem(
    f: &MeroRep,
    alphas: &[FieldElem],
) -> Result<SecondMainReport, NevError> {
    let n = alphas.len();
    if n < 2 {
        return Err(NevError::HypothesisViolated(format!(
            "needs at least 2 targets, got {n}"
        )));
    }
    for (i, a) in alphas.iter().enumerate() {
        if alphas[..i].contains(a) {
            return Err(NevError::HypothesisViolated(format!(
                "target {a} is repeated"
            )));
        }
    }
    nonconstant(f, "f")?;
    if f.x_power() != 0 {
        return Err(NevError::HypothesisViolated(
            "f has a zero or pole at 0".into(),
        ));
    }
    let pf = Parts::of(f)?;
    let s = match f.field().chi() {
        1 => 0,
        _ => ramification_index(f)?.index,
    };
    let mut shifted = Vec::with_capacity(n);
    for a in alphas {
        let g = f.sub_constant(a)?;
        if g.x_power() != 0 {
            return Err(NevError::HypothesisViolated(format!(
                "f - {a} vanishes at 0"
            )));
        }
        shifted.push(Parts::of(&g)?);
    }
    let mut all: Vec<&Parts> = vec![&pf];
    all.extend(shifted.iter());
    let (start, end) = common_window(&all);
    check_window(&start, &end)?;
    let bf = pf.bundle(&start, &end)?;
    let coef = Scalar::new(((n - 1) as i64).into(), (pf.chi_power as i64).into());
    let lhs = bf.t.scale(&coef);
    let log_r = PLFun::linear(
        start.clone(),
        end.clone(),
        start.clone(),
        Scalar::from_integer(1.into()),
    );
    let mut rhs = bf.n_tilde.sub(&log_r)?;
    for p in &shifted {
        rhs = rhs.add(&p.bundle(&start, &end)?.z_tilde)?;
    }
    let margin = rhs.sub(&lhs)?;
    let verdict = slope_verdict(&margin);
    let slack_slope = margin.eventual_slope();
    Ok(SecondMainReport {
        lhs,
        rhs,
        margin,
        verdict,
        slack_slope,
        ramification_index: s,
    })
}

/// Outcome of comparing two growth functions up to `O(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Growth {
    /// Unbounded window, equal eventual slopes.
    BoundedDiff {
        #[serde(with = "serde_str")]
        sup: Scalar,
    },
    /// Unbounded window, different eventual slopes.
    SlopeMismatch {
        #[serde(with = "serde_str")]
        slope_gap: Scalar,
    },
    /// Bounded window: only the final certified slopes are known.
    InconclusiveOnDisk {
        #[serde(with = "serde_str")]
        slope_gap: Scalar,
    },
}

fn compare(a: &PLFun, b: &PLFun) -> Result<Growth, NevError> {
    if !a.end().is_infinite() {
        let slope_gap = a.eventual_slope() - b.eventual_slope();
        return Ok(Growth::InconclusiveOnDisk { slope_gap });
    }
    Ok(match PLFun::bounded_difference(a, b)? {
        BoundedDifference::Bounded { sup } => Growth::BoundedDiff { sup },
        BoundedDifference::Unbounded { slope_gap } => Growth::SlopeMismatch { slope_gap },
    })
}

fn int_scalar(n: usize) -> Scalar {
    Scalar::from_integer((n as i64).into())
}

/// `T(L(f))` against `deg(L)·T(f)`.
pub fn check_degree_identity(l: &RatMap, f: &MeroRep) -> Result<Growth, NevError> {
    nonconstant(f, "f")?;
    let lf = compose_ratmap(l, f)?;
    let (pf, plf) = (Parts::of(f)?, Parts::of(&lf)?);
    let (start, end) = common_window(&[&pf, &plf]);
    check_window(&start, &end)?;
    let tf = pf.bundle(&start, &end)?.t.scale(&int_scalar(l.degree()));
    compare(&plf.bundle(&start, &end)?.t, &tf)
}

/// First coefficient at which `P(f)` and `Q(g)` provably differ.
fn solution_mismatch(
    p: &RatMap,
    q: &RatMap,
    f: &MeroRep,
    g: &MeroRep,
) -> Result<Option<usize>, NevError> {
    let (a1, b1) = compose_ratmap(p, f)?.fraction();
    let (a2, b2) = compose_ratmap(q, g)?.fraction();
    let diff = a1.mul(&b2).sub(&a2.mul(&b1));
    Ok(diff.coeffs().iter().position(|c| !c.is_zero()))
}

/// Verifies `P(f) = Q(g)` coefficientwise and returns the common window of `f`, `g`.
fn solution_window(
    p: &RatMap,
    q: &RatMap,
    f: &MeroRep,
    g: &MeroRep,
) -> Result<(Parts, Parts, Scalar, End), NevError> {
    nonconstant(f, "f")?;
    nonconstant(g, "g")?;
    if let Some(index) = solution_mismatch(p, q, f, g)? {
        return Err(NevError::NotASolutionPair { index });
    }
    let (pf, pg) = (Parts::of(f)?, Parts::of(g)?);
    let (start, end) = common_window(&[&pf, &pg]);
    check_window(&start, &end)?;
    Ok((pf, pg, start, end))
}

/// `q·T(g)` against `p·T(f)` for a solution pair of `P(f) = Q(g)`.
pub fn check_pq_relation(
    p: &RatMap,
    q: &RatMap,
    f: &MeroRep,
    g: &MeroRep,
) -> Result<Growth, NevError> {
    let (pf, pg, start, end) = solution_window(p, q, f, g)?;
    let tg = pg.bundle(&start, &end)?.t.scale(&int_scalar(q.degree()));
    let tf = pf.bundle(&start, &end)?.t.scale(&int_scalar(p.degree()));
    compare(&tg, &tf)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaBoundReport {
    pub lambda: LambdaClass,
    /// Eventual slope of `Ñ(g)`.
    #[serde(with = "serde_str")]
    pub nt_slope: Scalar,
    /// `Λ` times the eventual slope of `T(f)`.
    #[serde(with = "serde_str")]
    pub bound_slope: Scalar,
    /// `Λ·T(f) − Ñ(g)`.
    pub margin: PLFun,
    pub verdict: SlopeVerdict,
}

/// `Ñ(g)` against `Λ·T(f)` for a solution pair of `P(f) = Q(g)`.
pub fn check_lambda_bound(
    p: &RatMap,
    q: &RatMap,
    f: &MeroRep,
    g: &MeroRep,
) -> Result<LambdaBoundReport, NevError> {
    let (pf, pg, start, end) = solution_window(p, q, f, g)?;
    let lambda = lambda_class(p, q);
    let nt = pg.bundle(&start, &end)?.n_tilde;
    let bound = pf.bundle(&start, &end)?.t.scale(&lambda.value);
    let margin = bound.sub(&nt)?;
    Ok(LambdaBoundReport {
        nt_slope: nt.eventual_slope(),
        bound_slope: bound.eventual_slope(),
        verdict: slope_verdict(&margin),
        margin,
        lambda,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Boundedness {
    BoundedType,
    UnboundedType,
    InconclusiveAtOrder,
}

/// Bounded-type when the divisor is certified on the whole domain; unbounded-type
/// when T still rises at the certified radius and divisor entries crowd
/// towards it with shrinking gaps.
pub fn classify_boundedness(f: &MeroRep) -> Boundedness {
    if f.is_constant_known() && f.is_exact() {
        return Boundedness::BoundedType;
    }
    let Ok(parts) = Parts::of(f) else {
        return Boundedness::InconclusiveAtOrder;
    };
    let cert = parts.end();
    if f.domain_end().is_infinite() {
        return if f.is_exact() {
            Boundedness::UnboundedType
        } else {
            Boundedness::InconclusiveAtOrder
        };
    }
    if cert == *f.domain_end() {
        return Boundedness::BoundedType;
    }
    let End::Finite(c) = &cert else {
        return Boundedness::InconclusiveAtOrder;
    };
    let start = parts.start();
    let Ok(b) = parts.bundle(&start, &cert) else {
        return Boundedness::InconclusiveAtOrder;
    };
    if !b.t.eventual_slope().is_positive() {
        return Boundedness::InconclusiveAtOrder;
    }
    let mid = (&start + c) / Scalar::from_integer(2.into());
    let mut late: Vec<&Scalar> = parts
        .main
        .entries
        .iter()
        .map(|e| &e.log_abs)
        .filter(|v| **v >= mid)
        .collect();
    late.dedup();
    let gaps: Vec<Scalar> = late.windows(2).map(|w| w[1] - w[0]).collect();
    if late.len() >= 3 && gaps.windows(2).all(|g| g[1] < g[0]) {
        Boundedness::UnboundedType
    } else {
        Boundedness::InconclusiveAtOrder
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::algebra::{FieldSpec, Poly};
    use crate::exactnum::scalar::{frac, int, max_scalar};
    use crate::series::{DivisorEntry, TruncSeries};
    use proptest::prelude::*;

    fn arb_divisor() -> impl Strategy<Value = Divisor> {
        prop::collection::vec(
            (
                -6i64..8,
                prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]),
                1u64..3,
            ),
            0..6,
        )
        .prop_map(|es| {
            let entries = es
                .into_iter()
                .map(|(v, m, points)| DivisorEntry {
                    log_abs: frac(v, 2),
                    multiplicity: m,
                    points,
                })
                .collect();
            Divisor::new(entries, End::Infinite).unwrap()
        })
    }

    proptest! {
        #[test]
        fn single_sign_counts_are_convex(d in arb_divisor()) {
            let b = nev_from_divisor(&d, 1).unwrap();
            for f in [&b.z, &b.n, &b.z_tilde, &b.n_tilde] {
                prop_assert!(f.is_convex());
            }
            prop_assert_eq!(b.z.eventual_slope(), int(d.zero_count()));
            prop_assert_eq!(b.n.eventual_slope(), int(d.pole_count()));
        }

        #[test]
        fn t_is_max_at_every_breakpoint(d in arb_divisor()) {
            let b = nev_from_divisor(&d, 1).unwrap();
            let mut pts = b.z.breakpoints();
            pts.extend(b.n.breakpoints());
            pts.extend(b.t.breakpoints());
            pts.push(b.t.start() + int(9));
            for t in pts {
                let want = max_scalar(&b.z.eval(&t).unwrap(), &b.n.eval(&t).unwrap());
                prop_assert_eq!(b.t.eval(&t).unwrap(), want);
            }
        }

        #[test]
        fn multiplicity_free_poles_survive_chi_root(exps in prop::collection::vec(0u64..4, 1..4), twice in any::<bool>()) {
            let k = FieldSpec::function_field(3).unwrap();
            let t = FieldElem::t_var(&k).unwrap();
            let mut cs = vec![FieldElem::one(&k)];
            cs.extend(exps.iter().enumerate().map(|(j, e)| t.pow(j as u64 + 1 + e)));
            let tail = crate::series::TailBound { intercept: int(-4), slope: int(2) };
            let base = TruncSeries::with_tail(&k, cs, 6, tail).unwrap();
            prop_assume!(!base.derivative_vanishes());
            let mut h = base.frobenius();
            if twice {
                h = h.frobenius();
            }
            let one = TruncSeries::from_poly(&Poly::one(&k));
            let end = End::Finite(int(2));
            let g = MeroRep::new(one.clone(), h, end.clone()).unwrap();
            let gt = MeroRep::new(one, base, end).unwrap();
            let (bg, bt) = (nev_of(&g).unwrap(), nev_of(&gt).unwrap());
            prop_assert_eq!(bg.chi_power, if twice { 9 } else { 3 });
            if exps[0] == 0 {
                // a pole with log_abs ≤ 1 lies inside the certified window
                prop_assert!(bt.n_tilde.eventual_slope() > int(0));
            }
            prop_assert_eq!(bg.n_tilde, bt.n_tilde);
        }
    }
}
