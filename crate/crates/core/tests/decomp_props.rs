use num_rational::BigRational;
use proptest::prelude::*;
use ultranev::algebra::{FieldElem, FieldSpec, Poly, RatMap, Role};
use ultranev::decomp::{
    all_verdicts, check_condition_m, local_factorizations, ruled_out_by, Conclusion, Setting,
    Verdict, DEFAULT_PRECISION,
};

fn pair(r: &[i64], v: &[i64], w: &[i64]) -> Option<(RatMap, RatMap)> {
    let k = FieldSpec::rationals(5).unwrap();
    let p = RatMap::polynomial(Poly::from_ints(&k, r), Role::P).ok()?;
    let q = RatMap::normalize(Poly::from_ints(&k, v), Poly::from_ints(&k, w), Role::Q).ok()?;
    if p.is_constant() || q.is_constant() {
        return None;
    }
    Some((p, q))
}

/// `R` with `R' = Π (x − cᵢ)^eᵢ`, so every critical point is rational.
fn integrated(crit: &[(i64, u32)], c0: i64) -> Poly {
    let k = FieldSpec::rationals(5).unwrap();
    let d = crit.iter().fold(Poly::one(&k), |acc, &(c, e)| {
        acc.mul(&Poly::linear(&FieldElem::from_int(&k, c)).pow(e))
    });
    let mut cs = vec![FieldElem::from_int(&k, c0)];
    for (i, a) in d.coeffs().iter().enumerate() {
        let r = a.as_rational().unwrap() / BigRational::from_integer((i as i64 + 1).into());
        cs.push(FieldElem::from_rational(&k, &r).unwrap());
    }
    Poly::new(&k, cs)
}

fn coeffs(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..5, len)
}

fn expected(v: &Verdict) -> bool {
    match &v.trace.inequality {
        Some(i) => v.trace.hypotheses_hold && ruled_out_by(v.setting, i),
        None => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn passing_reports_factor_exactly(
        crit in prop::collection::btree_map(-3i64..4, 1u32..3, 1..4),
        c0 in -3i64..4,
        v in coeffs(2..4),
        w in coeffs(1..3),
    ) {
        let crit: Vec<(i64, u32)> = crit.into_iter().collect();
        let r = integrated(&crit, c0);
        let k = r.field().clone();
        let p = RatMap::polynomial(r, Role::P).unwrap();
        let Ok(q) = RatMap::normalize(Poly::from_ints(&k, &v), Poly::from_ints(&k, &w), Role::Q) else {
            return Ok(());
        };
        prop_assume!(!q.is_constant());
        let report = check_condition_m(&p, &q, &[], DEFAULT_PRECISION);
        prop_assert_eq!(report.k, crit.len());
        prop_assume!(report.is_yes());
        let facts = local_factorizations(&p, &q, &report).unwrap();
        for (f, (c, _, pc)) in facts.iter().zip(report.exact_points().unwrap()) {
            let a = f.a.as_ref().unwrap();
            let rebuilt = Poly::linear(&c).pow(f.s).mul(a).add(&p.den().scale(&pc));
            prop_assert_eq!(&rebuilt, p.num());
            prop_assert!(f.s >= 2);
            prop_assert!(a.degree_or_zero() + f.s as usize <= p.degree());
        }
    }

    #[test]
    fn conclusions_follow_from_traces(r in coeffs(3..6), v in coeffs(2..4), w in coeffs(1..3)) {
        let Some((p, q)) = pair(&r, &v, &w) else { return Ok(()) };
        let verdicts = all_verdicts(&p, &q, &[], DEFAULT_PRECISION);
        for v in &verdicts {
            prop_assert_eq!(v.conclusion == Conclusion::RuledOut, expected(v));
        }
        // the disk comparison is the strict one: ruling out there rules out on K
        for (k, disk) in [(0, 1), (2, 3)] {
            prop_assert_eq!(verdicts[k].trace.clone(), verdicts[disk].trace.clone());
            if verdicts[disk].conclusion == Conclusion::RuledOut {
                prop_assert_eq!(&verdicts[k].conclusion, &Conclusion::RuledOut);
            }
        }
        prop_assert_eq!(verdicts[0].setting, Setting::EntireOnK);
    }
}
