//! Valued coefficient fields, polynomials and rational maps over them, and root finding.

pub mod base;
pub mod field;
pub mod fp;
pub mod hensel;
pub mod padic;
pub mod parse;
pub mod poly;
pub mod ratmap;
pub mod roots;

pub use base::Base;
pub use field::{Field, FieldConfig, FieldElem, FieldSpec};
pub use padic::PAdic;
pub use poly::Poly;
pub use ratmap::{RatMap, Role};
pub use roots::{ApproxRoot, RootSet};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("field error: {0}")]
    Field(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole at {0}")]
    PoleAtPoint(String),
    #[error("the splitting element {0} is not in the field")]
    NeedsExtension(String),
    #[error("root separation is below the requested precision")]
    PrecisionExhausted,
    #[error("coefficient {0} is not a chi-th power")]
    NotAChiPower(usize),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Unsupported(String),
}

#[cfg(test)]
mod props {
    use super::roots::{distinct_zero_count, roots_exact};
    use super::*;
    use crate::exactnum::scalar::{frac, int};
    use proptest::prelude::*;

    fn q5() -> Field {
        FieldSpec::rationals(5).unwrap()
    }

    fn sqrt5() -> Field {
        FieldSpec::rational_extension(5, "s", vec![int(-5), int(0), int(1)], frac(1, 2), false)
            .unwrap()
    }

    fn arb_rat() -> impl Strategy<Value = num_rational::BigRational> {
        (-60i64..60, 1i64..30).prop_map(|(n, d)| frac(n, d))
    }

    fn arb_elem(k: Field) -> impl Strategy<Value = FieldElem> {
        (arb_rat(), arb_rat()).prop_map(move |(a, b)| {
            let s = FieldElem::generator(&k).unwrap();
            &FieldElem::from_base(&k, Base::Q(a)) + &(&s * &FieldElem::from_base(&k, Base::Q(b)))
        })
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-9i64..9, 1..6).prop_map(|cs| Poly::from_ints(&q5(), &cs))
    }

    proptest! {
        #[test]
        fn valuation_axioms(x in arb_elem(sqrt5()), y in arb_elem(sqrt5())) {
            prop_assume!(!x.is_zero() && !y.is_zero());
            let (vx, vy) = (x.valuation().unwrap(), y.valuation().unwrap());
            prop_assert_eq!((&x * &y).valuation().unwrap(), &vx + &vy);
            let sum = &x + &y;
            if let Some(vs) = sum.valuation() {
                let m = if vx < vy { vx.clone() } else { vy.clone() };
                prop_assert!(vs >= m);
                if vx != vy {
                    prop_assert_eq!(vs, m);
                }
            }
        }

        #[test]
        fn gcd_divides_and_euclid_holds(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a.clone());
            let g = a.gcd(&b);
            prop_assert!(a.exact_div(&g).is_some());
            prop_assert!(b.exact_div(&g).is_some());
        }

        #[test]
        fn square_keeps_distinct_count(a in arb_poly()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(distinct_zero_count(&a.mul(&a)).unwrap(), distinct_zero_count(&a).unwrap());
        }

        #[test]
        fn product_of_roots_oracle(
            roots in prop::collection::btree_set(-20i64..20, 1..5),
            mults in prop::collection::vec(1u32..4, 5),
        ) {
            let k = q5();
            let mut p = Poly::one(&k);
            let mut expect = Vec::new();
            for (r, m) in roots.iter().zip(&mults) {
                let e = FieldElem::from_int(&k, *r);
                p = p.mul(&Poly::linear(&e).pow(*m));
                expect.push((e, *m));
            }
            prop_assert_eq!(distinct_zero_count(&p).unwrap(), roots.len());
            let rs = roots_exact(&p, &[]).unwrap();
            prop_assert!(rs.complete);
            // exact reconstruction of the monic input
            let mut rebuilt = Poly::one(&k);
            for (e, m) in &rs.exact_roots {
                rebuilt = rebuilt.mul(&Poly::linear(e).pow(*m));
            }
            prop_assert_eq!(rebuilt, p.monic());
        }

        #[test]
        fn chi_root_inverts_frobenius(cs in prop::collection::vec((0u64..3, 0usize..3), 1..5)) {
            let f = FieldSpec::function_field(3).unwrap();
            let t = FieldElem::t_var(&f).unwrap();
            let coeffs: Vec<FieldElem> =
                cs.iter().map(|(a, e)| &FieldElem::from_int(&f, *a as i64) * &t.pow(*e as u64)).collect();
            let a = Poly::new(&f, coeffs);
            let cubed = a.frobenius_coeffs();
            let back = cubed.chi_root().unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.frobenius_coeffs(), cubed);
        }
    }
}
