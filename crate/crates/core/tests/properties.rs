use proptest::prelude::*;

use epure::conics::{circle_point, conic_from_circle, conic_through_five, line_conic_meet, tangent_at, MeetResult};
use epure::kernel::{Rational, Tolerance};
use epure::moulton::{m_line_through, m_meet, MoultonPoint};
use epure::p2::{
    apply_homography, apply_involution, cross_ratio, incident, involution_from_pairs, join, meet, Homography, LineP2,
    PointP2,
};
use epure::theorems::{check_desargues, check_desargues_converse};

type R = Rational;
type P = PointP2<R>;

fn rat() -> impl Strategy<Value = R> {
    (-30i64..=30, 1i64..=9).prop_map(|(n, d)| Rational::normalize(n, d).unwrap())
}

fn nonzero() -> impl Strategy<Value = R> {
    rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn point() -> impl Strategy<Value = P> {
    (rat(), rat()).prop_map(|(x, y)| PointP2::affine(x, y))
}

fn homography() -> impl Strategy<Value = Homography<R>> {
    proptest::array::uniform3(proptest::array::uniform3(rat()))
        .prop_filter_map("singular", |m| Homography::new(m).ok())
}

fn tol() -> Tolerance {
    Tolerance::default()
}

proptest! {
    #[test]
    fn field_axioms(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.recip().unwrap(), Rational::one());
        }
        prop_assert_eq!(a.clone() - a, Rational::zero());
    }

    #[test]
    fn meet_lies_on_both_lines(p in point(), q in point(), r in point(), s in point()) {
        let (Ok(l), Ok(m)) = (join(&p, &q), join(&r, &s)) else { return Ok(()) };
        if let Ok(x) = meet(&l, &m) {
            prop_assert!(incident(&x, &l, &tol()) && incident(&x, &m, &tol()));
        }
    }

    #[test]
    fn cross_ratio_is_projectively_invariant(
        a in point(), b in point(), t in rat(), u in rat(), h in homography(),
    ) {
        prop_assume!(a != b);
        let on = |k: &R| {
            let (ax, ay) = a.to_affine().unwrap();
            let (bx, by) = b.to_affine().unwrap();
            PointP2::affine(ax.clone() + k.clone() * (bx - ax), ay.clone() + k.clone() * (by - ay))
        };
        let (c, d) = (on(&t), on(&u));
        let Ok(before) = cross_ratio(&a, &b, &c, &d) else { return Ok(()) };
        let img = |x: &P| apply_homography(&h, x);
        prop_assert_eq!(cross_ratio(&img(&a), &img(&b), &img(&c), &img(&d)).unwrap(), before);
    }

    #[test]
    fn involution_is_involutory(a in rat(), b in rat(), c in rat(), d in rat(), x in rat()) {
        let pt = |v: &R| PointP2::affine(v.clone(), Rational::zero());
        let (pa, pb, pc, pd) = (pt(&a), pt(&b), pt(&c), pt(&d));
        let Ok(inv) = involution_from_pairs((&pa, &pb), (&pc, &pd)) else { return Ok(()) };
        let px = pt(&x);
        let once = apply_involution(&inv, &px).unwrap();
        prop_assert_eq!(apply_involution(&inv, &once).unwrap(), px);
    }

    #[test]
    fn desargues_verdict_is_projectively_invariant(pts in proptest::array::uniform6(point()), h in homography()) {
        let [a, b, c, a2, b2, c2] = &pts;
        let Ok(v) = check_desargues(a, b, c, a2, b2, c2) else { return Ok(()) };
        let img: Vec<P> = pts.iter().map(|p| apply_homography(&h, p)).collect();
        let w = check_desargues(&img[0], &img[1], &img[2], &img[3], &img[4], &img[5]).unwrap();
        prop_assert_eq!(v.hypothesis_holds, w.hypothesis_holds);
        prop_assert_eq!(v.conclusion_holds, w.conclusion_holds);
        if let (Some(ax), Some(bx)) = (&v.axis, &w.axis) {
            prop_assert_eq!(&h.apply_line(ax), bx);
        }
    }

    #[test]
    fn converse_is_desargues_on_the_dual(pts in proptest::array::uniform6(point())) {
        let [a, b, c, a2, b2, c2] = &pts;
        let Ok(v) = check_desargues_converse(a, b, c, a2, b2, c2) else { return Ok(()) };
        // Sides become vertices: BC, CA, AB for each triangle.
        let side = |p: &P, q: &P| join(p, q).map(|l| l.dual());
        let dual = [side(b, c), side(c, a), side(a, b), side(b2, c2), side(c2, a2), side(a2, b2)];
        let dual: Vec<P> = dual.into_iter().collect::<Result<_, _>>().unwrap();
        let Ok(w) = check_desargues(&dual[0], &dual[1], &dual[2], &dual[3], &dual[4], &dual[5]) else { return Ok(()) };
        prop_assert_eq!(v.hypothesis_holds, w.hypothesis_holds);
        prop_assert_eq!(v.conclusion_holds, w.conclusion_holds);
    }

    #[test]
    fn five_points_of_a_circle_give_the_circle(
        cx in rat(), cy in rat(), r in nonzero(), ts in proptest::array::uniform5(rat()),
    ) {
        let r = r.abs();
        let pts: Vec<P> = ts.iter().map(|t| circle_point((&cx, &cy), &r, t)).collect();
        for i in 0..5 {
            for j in 0..i {
                prop_assume!(pts[i] != pts[j]);
            }
        }
        let k = conic_through_five([&pts[0], &pts[1], &pts[2], &pts[3], &pts[4]]).unwrap();
        prop_assert_eq!(k, conic_from_circle((cx, cy), r).unwrap());
    }

    #[test]
    fn tangent_meets_only_at_its_point(cx in rat(), cy in rat(), r in nonzero(), t in rat()) {
        let r = r.abs();
        let c = conic_from_circle((cx.clone(), cy.clone()), r.clone()).unwrap();
        let p = circle_point((&cx, &cy), &r, &t);
        let l = tangent_at(&c, &p).unwrap();
        match line_conic_meet(&c, &l) {
            MeetResult::Tangent(x) => prop_assert_eq!(x, p),
            other => prop_assert!(false, "{other:?}"),
        }
    }

    #[test]
    fn moulton_lines_meet_at_most_once(
        p in (rat(), rat()), q in (rat(), rat()), u in (rat(), rat()), v in (rat(), rat()),
    ) {
        let mp = |(x, y): (R, R)| MoultonPoint::new(x, y);
        let (p, q, u, v) = (mp(p), mp(q), mp(u), mp(v));
        prop_assume!(p != q && u != v);
        let l = m_line_through(&p, &q).unwrap();
        let m = m_line_through(&u, &v).unwrap();
        prop_assert!(l.contains(&p) && l.contains(&q));
        if l == m {
            return Ok(());
        }
        if let Ok(Some(x)) = m_meet(&l, &m) {
            prop_assert!(l.contains(&x) && m.contains(&x));
            // Any second common point would give two lines through two points.
            for w in [&p, &q] {
                if w != &x && m.contains(w) {
                    prop_assert!(false, "{l} and {m} share {x} and {w}");
                }
            }
        }
    }

    #[test]
    fn line_duality_round_trips(u in rat(), v in rat(), w in rat()) {
        let Ok(l) = LineP2::new(u, v, w) else { return Ok(()) };
        prop_assert_eq!(l.dual().dual(), l);
    }
}
