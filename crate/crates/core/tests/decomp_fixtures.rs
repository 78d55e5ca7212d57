mod common;

use common::{fixture, PASSING};
use ultranev::algebra::Poly;
use ultranev::decomp::{
    all_verdicts, check_condition_m, lambda_class, local_factorizations, theta, verdict_entire,
    verdict_mero, Conclusion, Satisfied, Setting, DEFAULT_PRECISION,
};
use ultranev::exactnum::scalar::int;

fn reason(c: &Conclusion) -> String {
    c.to_string()
}

#[test]
fn quadratic_sqrt3_verdicts() {
    let fx = fixture("quadratic_sqrt3");
    let entire = verdict_entire(&fx.p, &fx.q, &[], DEFAULT_PRECISION);
    assert_eq!(entire.len(), 2);
    for v in &entire {
        assert_eq!(v.conclusion, Conclusion::RuledOut);
        let i = v.trace.inequality.as_ref().unwrap();
        // q·k against p
        assert_eq!((i.lhs.clone(), i.rhs.clone()), (int(4), int(2)));
    }
    let mero = verdict_mero(&fx.p, &fx.q, &[], DEFAULT_PRECISION);
    assert_eq!(mero[0].trace.s, vec![2, 2]);
    assert_eq!(mero[0].trace.theta, Some(0));
    assert_eq!(
        reason(&mero[0].conclusion),
        "Inconclusive(ThetaNotPositive)"
    );
    let l = lambda_class(&fx.p, &fx.q);
    assert_eq!((l.case, l.value), (1, int(1)));
}

#[test]
fn cubic_double_critical_point() {
    let fx = fixture("cubic_double_critical");
    let r = check_condition_m(&fx.p, &fx.q, &[], DEFAULT_PRECISION);
    assert_eq!(r.satisfied, Satisfied::Yes);
    assert_eq!(r.k, 1);
    let pts = r.exact_points().unwrap();
    // c = −b with b = 1/(3t), t = 2 + s/3
    assert_eq!(pts[0].0, fx.elem("(s - 6)/3"));
    assert_eq!(pts[0].1, 2);
    let ds: Vec<_> = r
        .d_checks
        .iter()
        .flat_map(|c| c.zeros.iter().map(|z| z.d.clone()))
        .collect();
    // (6t − 1)/(3t) written in the basis 1, s
    assert_eq!(ds, vec![fx.elem("s/3")]);

    let facts = local_factorizations(&fx.p, &fx.q, &r).unwrap();
    assert_eq!(facts.len(), 1);
    assert_eq!(facts[0].s, 3);
    assert_eq!(facts[0].a.as_ref().unwrap().degree(), Some(0));
    assert_eq!(theta(&facts), 1);

    let entire = verdict_entire(&fx.p, &fx.q, &[], DEFAULT_PRECISION);
    assert_eq!(entire[0].setting, Setting::EntireOnK);
    assert_eq!(entire[0].conclusion, Conclusion::RuledOut);
    assert_eq!(entire[1].setting, Setting::AnalyticUnboundedDisk);
    assert_eq!(
        reason(&entire[1].conclusion),
        "Inconclusive(InequalityConsistent)"
    );

    let mero = verdict_mero(&fx.p, &fx.q, &[], DEFAULT_PRECISION);
    let t = &mero[0].trace;
    assert_eq!((t.gamma_w, t.lambda.as_ref().unwrap().case), (3, 5));
    let i = t.inequality.as_ref().unwrap();
    assert_eq!((i.lhs.clone(), i.rhs.clone()), (int(3), int(15)));
    assert!(mero
        .iter()
        .all(|v| reason(&v.conclusion) == "Inconclusive(InequalityConsistent)"));
}

#[test]
fn meromorphic_x9_critical_data() {
    let fx = fixture("meromorphic_x9");
    let r = check_condition_m(&fx.p, &fx.q, &[], DEFAULT_PRECISION);
    assert_eq!(r.satisfied, Satisfied::Yes);
    let mut pts = r.exact_points().unwrap();
    pts.sort_by_key(|p| p.1);
    assert_eq!(pts[0].0, fx.elem("9/8"));
    assert_eq!(pts[0].2, fx.elem("387420489/16777216"));
    assert_eq!((pts[1].0.clone(), pts[1].1), (fx.elem("0"), 8));
}

#[test]
fn local_factorizations_reconstruct_r() {
    for name in PASSING {
        let fx = fixture(name);
        let r = check_condition_m(&fx.p, &fx.q, &[], DEFAULT_PRECISION);
        assert!(r.is_yes(), "{name}");
        let pts = r.exact_points().unwrap();
        let facts = local_factorizations(&fx.p, &fx.q, &r).unwrap();
        for (f, (c, _, pc)) in facts.iter().zip(&pts) {
            let a = f.a.as_ref().unwrap();
            let rebuilt = Poly::linear(c).pow(f.s).mul(a).add(&fx.p.den().scale(pc));
            assert_eq!(&rebuilt, fx.p.num(), "{name}");
            assert!(f.s >= 2);
            assert!(a.degree_or_zero() + f.s as usize <= fx.p.degree(), "{name}");
            assert_eq!(f.b_squarefree, Some(true), "{name}");
            assert_eq!(f.b_disjoint_from_later, Some(true), "{name}");
        }
    }
}

#[test]
fn six_settings_reported_separately() {
    let fx = fixture("meromorphic_x9");
    let v = all_verdicts(&fx.p, &fx.q, &[], DEFAULT_PRECISION);
    let settings: Vec<Setting> = v.iter().map(|v| v.setting).collect();
    assert_eq!(
        settings,
        vec![
            Setting::EntireOnK,
            Setting::AnalyticUnboundedDisk,
            Setting::MeroOnK,
            Setting::MeroUnboundedDisk,
            Setting::AnalyticOnKCriticalValues,
            Setting::AnalyticOnKCriticalCount,
        ]
    );
}
