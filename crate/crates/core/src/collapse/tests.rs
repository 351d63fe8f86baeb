use super::*;
use crate::poly::Field;

fn z() -> Ring {
    Ring::integers()
}

fn ints(r: &Ring, xs: &[i64]) -> Vec<Elem> {
    xs.iter().map(|&x| r.from_i64(x)).collect()
}

#[test]
fn decision_examples() {
    let qx = Ring::poly(Field::Q, &["X"]);
    let x = qx.parse("X").unwrap();
    assert!(!chain_collapses(&qx, &IdealisticChain::elementary(&qx, &[x])).unwrap());
    let z4 = Ring::zmod(4);
    assert!(chain_collapses(&z4, &IdealisticChain::elementary(&z4, &ints(&z4, &[2]))).unwrap());
    for r in [z(), z4.clone(), qx.clone()] {
        assert!(chain_collapses(&r, &IdealisticChain::single(vec![r.one()], vec![r.one()])).unwrap());
    }
}

#[test]
fn certificate_examples() {
    let r = z();
    let seq = ints(&r, &[2, 3]);
    let ps = pseudo_singular(&r, &seq).unwrap().unwrap();
    assert_eq!(ps.m, vec![0, 0]);
    assert_eq!(ps.a, ints(&r, &[-2, 1]));
    let qx = Ring::poly(Field::Q, &["X"]);
    let seq = qx.parse_all(&["X", "X - 1"]).unwrap();
    let c = IdealisticChain::elementary(&qx, &seq);
    let cert = certify_collapse(&qx, &c).unwrap().unwrap();
    assert!(cert.verify(&qx, &c));
    assert_eq!(cert.total_exponent(), 0);
    let ps = PseudoSingularCertificate::from_collapse(&qx, &cert);
    assert_eq!(ps.a, qx.parse_all(&["-1", "1"]).unwrap());
    let c0 = IdealisticChain::single(vec![r.zero()], vec![r.zero()]);
    let cert = certify_collapse(&r, &c0).unwrap().unwrap();
    assert_eq!(cert.levels[0].exp, vec![1]);
    assert_eq!(cert.levels[0].cof, vec![r.zero()]);
    let z4 = Ring::zmod(4);
    let ps = pseudo_singular(&z4, &ints(&z4, &[2])).unwrap().unwrap();
    assert_eq!((ps.m, ps.a), (vec![2], vec![z4.zero()]));
    let qxy = Ring::poly(Field::Q, &["X", "Y"]);
    assert!(pseudo_regular(&qxy, &qxy.parse_all(&["X", "Y"]).unwrap()).unwrap());
    assert!(matches!(certify_collapse(&qxy, &IdealisticChain::elementary(&qxy, &qxy.parse_all(&["X"]).unwrap())), Err(Error::NotACollapse(_))));
}

#[test]
fn back_substitution_verifies() {
    let r = Ring::poly(Field::Q, &["X", "Y"]);
    let seq = r.parse_all(&["X*Y", "X", "Y"]).unwrap();
    let c = IdealisticChain::elementary(&r, &seq);
    let cert = back_substitute(&r, &c).unwrap();
    assert!(cert.verify(&r, &c));
    let z12 = Ring::zmod(12);
    let c = IdealisticChain::elementary(&z12, &ints(&z12, &[2, 3]));
    assert!(back_substitute(&z12, &c).unwrap().verify(&z12, &c));
    let c = IdealisticChain::new(vec![
        IdealisticPrime::new(vec![], ints(&z(), &[6])),
        IdealisticPrime::new(ints(&z(), &[4]), ints(&z(), &[2])),
    ])
    .unwrap();
    assert!(chain_collapses(&z(), &c).unwrap());
    assert!(back_substitute(&z(), &c).unwrap().verify(&z(), &c));
}

#[test]
fn rabinovitch_examples() {
    let r = z();
    let e = |v: i64| r.from_i64(v);
    let (u3, j3) = rabinovitch_identity(&r, &e(3), &e(1), &e(2), &e(-2), &e(5), 1, &e(10)).unwrap();
    assert_eq!((u3, j3), (e(15), e(-15)));
    let (u3, j3) = rabinovitch_identity(&r, &e(3), &e(1), &e(2), &e(-2), &e(5), 0, &e(-5)).unwrap();
    assert_eq!((u3, j3), (e(5), e(-5)));
    let qx = Ring::poly(Field::Q, &["X"]);
    let one = qx.one();
    let bad = rabinovitch_identity(&qx, &one, &qx.zero(), &one, &one, &one, 0, &qx.from_i64(-1));
    assert!(matches!(bad, Err(Error::NotACollapse(_))));
}

#[test]
fn rabinovitch_structured() {
    let r = z();
    let e = |v: i64| r.from_i64(v);
    // (12, 5; 6): 6 + 12·(−3) + 6·5 = 0. (12; 6, 5): 6²·5 + 12·(−15) = 0.
    let p = IdealisticPrime::new(ints(&r, &[12]), ints(&r, &[6]));
    let cin = RabIn { u_exp: vec![1], j_cof: vec![e(-3)], a: e(6) };
    let cout = RabOut { u_exp: vec![2], m: 1, j_cof: vec![e(-15)] };
    let out = rabinovitch_merge(&r, &p, &e(5), &cin, &cout).unwrap();
    assert_eq!(out.u_exp, vec![3]);
    assert_eq!(out.j_cof, vec![e(-18)]);
    assert!(out.verify(&r, &p));
    let bad = RabOut { u_exp: vec![2], m: 1, j_cof: vec![e(-14)] };
    assert!(matches!(rabinovitch_merge(&r, &p, &e(5), &cin, &bad), Err(Error::NotACollapse(_))));
}

#[test]
fn saturated_membership() {
    let qx = Ring::poly(Field::Q, &["X"]);
    let p = IdealisticPrime::new(qx.parse_all(&["X^2"]).unwrap(), vec![qx.one()]);
    assert!(in_saturated_ideal(&qx, &p, &qx.parse("X").unwrap()).unwrap());
    let r = z();
    let p = IdealisticPrime::new(ints(&r, &[0]), ints(&r, &[2]));
    assert!(in_saturated_monoid(&r, &p, &r.from_i64(4)).unwrap());
    assert!(!in_saturated_ideal(&r, &p, &r.from_i64(3)).unwrap());
}

#[test]
fn completion_examples() {
    let r = z();
    let c = IdealisticChain::new(vec![
        IdealisticPrime::new(vec![], ints(&r, &[5])),
        IdealisticPrime::new(ints(&r, &[5]), ints(&r, &[1])),
    ])
    .unwrap();
    let cc = complete_chain(&c);
    assert_eq!(cc.ideals, vec![vec![], ints(&r, &[5])]);
    assert_eq!(cc.closed_forms[0], "u0*u1 + u0*j1 + j0");
    let c = IdealisticChain::single(ints(&r, &[7]), ints(&r, &[3]));
    let cc = complete_chain(&c);
    assert_eq!(cc.ideals, vec![ints(&r, &[7])]);
    assert_eq!(cc.closed_forms, vec!["u0 + j0".to_string()]);
    let c = IdealisticChain::new(vec![
        IdealisticPrime::new(ints(&r, &[0]), vec![]),
        IdealisticPrime::new(ints(&r, &[0]), vec![]),
    ])
    .unwrap();
    assert_eq!(complete_chain(&c).ideals, vec![ints(&r, &[0]), ints(&r, &[0, 0])]);
}

#[test]
fn dimension_reports() {
    let qxy = Ring::poly(Field::Q, &["X", "Y"]);
    let monos = ["1", "X", "Y", "X^2", "X*Y", "Y^2"];
    let mut testset = Vec::new();
    'outer: for a in monos {
        for b in monos {
            for c in monos {
                if testset.len() == 20 {
                    break 'outer;
                }
                testset.push(qxy.parse_all(&[a, b, c]).unwrap());
            }
        }
    }
    let rep = dim_at_most(&qxy, 2, &testset).unwrap();
    assert!(rep.verdict);
    for e in &rep.entries {
        assert!(e.certificate.as_ref().unwrap().verify(&qxy, &e.seq));
    }
    let z12 = Ring::zmod(12);
    let singles: Vec<Vec<Elem>> = [2, 3, 5, 7, 11].iter().map(|&v| vec![z12.from_i64(v)]).collect();
    let rep = dim_at_most(&z12, 0, &singles).unwrap();
    assert!(rep.verdict);
    assert!(rep.entries.iter().all(|e| e.certificate.as_ref().unwrap().verify(&z12, &e.seq)));
    let qx = Ring::poly(Field::Q, &["X"]);
    let rep = dim_at_most(&qx, 0, &[vec![qx.parse("X").unwrap()]]).unwrap();
    assert!(!rep.verdict);
    assert_eq!(rep.header, "dim ≤ 0 refuted by witness (X)");
}

#[test]
fn comaximal_examples() {
    let r = z();
    let picks = ints(&r, &[4, 9, 25]);
    let a = comaximal_check(&r, &picks).unwrap().unwrap();
    assert_eq!(r.dot(&a, &picks), r.one());
    assert_eq!(comaximal_check(&r, &ints(&r, &[2, 4])).unwrap(), None);
    assert_eq!(comaximal_check(&r, &[r.one()]).unwrap(), Some(vec![r.one()]));
}

#[test]
fn s_monoids_are_comaximal() {
    let r = z();
    let us = ints(&r, &[6, 10, 15]);
    let ms = s_monoids(&r, &us);
    let pick_sets: Vec<Vec<Elem>> = ms
        .iter()
        .map(|p| {
            let mut out = Vec::new();
            for e in 0..3 {
                for c in -2..=2 {
                    let cof = vec![r.from_i64(c); p.j.len()];
                    out.push(monoid_pick(&r, p, &vec![e; p.u.len()], &cof));
                }
            }
            out
        })
        .collect();
    assert_eq!(comaximal_for_picks(&r, &pick_sets).unwrap(), None);
}

#[test]
fn cover_examples() {
    let r = z();
    let e = |v: i64| r.from_i64(v);
    let (i, u) = (ints(&r, &[6]), ints(&r, &[5]));
    let xd = XDecomposition { u_exp: vec![1], k: 1, j_cof: vec![e(1)] };
    let yd = YDecomposition { u_exp: vec![1], j_cof: vec![e(0)], z: e(1) };
    let w = cover_witness(&r, &i, &u, &e(2), &e(16), &xd, &e(3), &yd).unwrap();
    assert_eq!((w.x1.clone(), w.y1.clone()), (e(1), e(5)));
    assert_eq!(w.u_exp, vec![2]);
    let xd3 = XDecomposition { u_exp: vec![2], k: 3, j_cof: vec![e(-1)] };
    let x = e(25 * 8 - 6);
    let yd3 = YDecomposition { u_exp: vec![1], j_cof: vec![e(2)], z: e(4) };
    let y = e(5 + 12 - 8);
    let w = cover_witness(&r, &i, &u, &e(2), &x, &xd3, &y, &yd3).unwrap();
    assert_eq!(w.x1, e(64));
    let xd0 = XDecomposition { u_exp: vec![1], k: 0, j_cof: vec![e(1)] };
    let w = cover_witness(&r, &i, &u, &e(0), &e(11), &xd0, &e(5), &yd).unwrap();
    assert_eq!((w.x1, w.y1), (e(1), e(0)));
    assert!(matches!(cover_witness(&r, &i, &u, &e(2), &e(17), &xd, &e(3), &yd), Err(Error::MalformedDecomposition(_))));
}

#[test]
fn gluing_examples() {
    let r = z();
    let e = |v: i64| r.from_i64(v);
    let c = IdealisticChain::single(ints(&r, &[2, 3]), vec![r.one()]);
    let at2 = LocalCollapse {
        monoid: ints(&r, &[2]),
        s_exp: vec![1],
        cert: CollapseCertificate { levels: vec![Level { exp: vec![0], cof: vec![e(-1), e(0)] }] },
    };
    let at3 = LocalCollapse {
        monoid: ints(&r, &[3]),
        s_exp: vec![1],
        cert: CollapseCertificate { levels: vec![Level { exp: vec![0], cof: vec![e(0), e(-1)] }] },
    };
    let g = glue_collapse(&r, &c, &[at2.clone(), at3.clone()], &[e(2), e(-1)]).unwrap();
    assert!(g.verify(&r, &c));
    assert_eq!(g.levels[0].cof, vec![e(-2), e(1)]);
    assert!(matches!(glue_collapse(&r, &c, &[at2.clone(), at3], &[e(1), e(0)]), Err(Error::NotComaximal(_))));
    let c2 = IdealisticChain::elementary(&r, &ints(&r, &[2, 3]));
    let cert = certify_collapse(&r, &c2).unwrap().unwrap();
    let single = LocalCollapse { monoid: vec![r.one()], s_exp: vec![1], cert: cert.clone() };
    assert_eq!(glue_collapse(&r, &c2, &[single], &[e(1)]).unwrap(), cert);
    let broken = LocalCollapse { monoid: ints(&r, &[2]), s_exp: vec![2], ..at2 };
    assert!(matches!(glue_collapse(&r, &c, &[broken], &[e(1)]), Err(Error::NotComaximal(_))));
}

#[test]
fn denominator_examples() {
    let r = z();
    let e = |v: i64| r.from_i64(v);
    let c = IdealisticChain::single(ints(&r, &[4, 2]), vec![r.one()]);
    let lv = FracLevel { exp: vec![0], cof: vec![(e(1), e(2)), (e(-6), e(4))] };
    let (m, local) = collapse_denominator(&r, &c, &[lv]).unwrap();
    assert_eq!(m, e(8));
    assert!(r.is_zero(&local.residual(&r, &c).unwrap()));
    let c1 = IdealisticChain::single(ints(&r, &[1]), vec![r.one()]);
    let lv = FracLevel { exp: vec![0], cof: vec![(e(-1), e(1))] };
    assert_eq!(collapse_denominator(&r, &c1, &[lv]).unwrap().0, e(1));
    let lv = FracLevel { exp: vec![0], cof: vec![(e(-1), e(0))] };
    assert!(matches!(collapse_denominator(&r, &c1, &[lv]), Err(Error::MalformedFraction(_))));
}

#[test]
fn pseudo_singular_json_round_trip() {
    let r = z();
    let ps = pseudo_singular(&r, &ints(&r, &[2, 3])).unwrap().unwrap();
    let back = PseudoSingularCertificate::from_json(&r, &ps.to_json(&r)).unwrap();
    assert_eq!(back, ps);
    assert_eq!(ps.to_collapse(&r), certify_collapse(&r, &IdealisticChain::elementary(&r, &ints(&r, &[2, 3]))).unwrap().unwrap());
}
