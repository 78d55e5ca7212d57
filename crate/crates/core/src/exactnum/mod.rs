//! Exact rationals and the piecewise-linear calculus of log-radius functions.

pub mod hull;
pub mod plfun;
pub mod scalar;

pub use plfun::{BoundedDifference, End, PLFun, Segment};
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("t = {t} lies outside the domain {domain}")]
    OutOfDomain { t: String, domain: String },
    #[error("domains differ: {left} vs {right}")]
    DomainMismatch { left: String, right: String },
    #[error("empty domain")]
    EmptyDomain,
    #[error("malformed segment list: {0}")]
    MalformedSegments(String),
    #[error("linear combination needs at least one term")]
    EmptyCombination,
    #[error("not a rational number: {0:?}")]
    BadRational(String),
}

#[cfg(test)]
mod props {
    use super::scalar::{frac, int};
    use super::*;
    use proptest::prelude::*;

    fn arb_plfun() -> impl Strategy<Value = PLFun> {
        (
            -5i64..5,
            prop::collection::vec((1i64..4, -6i64..6, 1i64..3), 0..5),
            -4i64..4,
        )
            .prop_map(|(anchor, steps, s0)| {
                let mut segs = vec![Segment {
                    breakpoint: int(0),
                    slope: int(s0),
                }];
                let mut at = int(0);
                for (gap, num, den) in steps {
                    at += frac(gap, 2);
                    segs.push(Segment {
                        breakpoint: at.clone(),
                        slope: frac(num, den),
                    });
                }
                PLFun::new(int(0), End::Infinite, int(anchor), segs).unwrap()
            })
    }

    proptest! {
        #[test]
        fn max_is_pointwise(a in arb_plfun(), b in arb_plfun(), t2 in 0i64..24) {
            let t = frac(t2, 3);
            let m = a.max(&b).unwrap();
            let va = a.eval(&t).unwrap();
            let vb = b.eval(&t).unwrap();
            prop_assert_eq!(m.eval(&t).unwrap(), if va > vb { va } else { vb });
        }

        #[test]
        fn max_eventual_slope(a in arb_plfun(), b in arb_plfun()) {
            let m = a.max(&b).unwrap();
            let (sa, sb) = (a.eventual_slope(), b.eventual_slope());
            prop_assert_eq!(m.eventual_slope(), if sa > sb { sa } else { sb });
        }

        #[test]
        fn lincomb_commutes_structurally(a in arb_plfun(), b in arb_plfun(), c in -3i64..3) {
            let l = PLFun::lincomb(&[(int(c), &a), (int(1), &b)]).unwrap();
            let r = PLFun::lincomb(&[(int(1), &b), (int(c), &a)]).unwrap();
            prop_assert_eq!(l, r);
        }
    }
}
