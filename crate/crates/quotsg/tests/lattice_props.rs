//! Structural properties of the lattice point sets.

use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;
use quotsg::exactmath::Int;
use quotsg::lattice::{
    in_lattice, max_points_rect_bf, min_points_quadrant, min_points_rect_bf, pf_points, Lattice,
    Pt, QuotientSpec, Rect,
};
use quotsg::oracle::member_ab;

fn is_antichain(pts: &[Pt]) -> bool {
    pts.iter()
        .enumerate()
        .all(|(i, p)| pts.iter().enumerate().all(|(j, q)| i == j || !p.le(q)))
}

fn det(u: &Pt, v: &Pt) -> Int {
    &u.x * &v.y - &u.y * &v.x
}

#[test]
fn quadrant_chain_matches_scan() {
    for d in 2..=40i64 {
        for m in 1..d {
            if m.gcd(&d) != 1 {
                continue;
            }
            let (di, mi) = (Int::from(d), Int::from(m));
            let chain = min_points_quadrant(&di, &mi).unwrap();
            let lat = Lattice::Span { d: di.clone(), m: mi.clone() };
            let bf = min_points_rect_bf(&lat, Rect::new(0, d, 0, d), true).unwrap();
            assert_eq!(chain, bf, "d = {d}, m = {m}");
            assert_eq!(chain.last(), Some(&Pt::new(0, d)));
            for w in chain.windows(2) {
                assert!(w[0].x > w[1].x && w[0].y < w[1].y);
                assert_eq!(det(&w[0], &w[1]).abs(), Int::from(d), "consecutive points form a basis of L");
            }
            for i in 1..chain.len() - 1 {
                let (prev, cur, next) = (&chain[i - 1], &chain[i], &chain[i + 1]);
                // u_{i+1} + u_{i-1} = k_i u_i with k_i the least n such that
                // n u_i >= u_{i-1}, and k_i >= 2.
                let k = (1i64..)
                    .find(|&n| Pt::new(&cur.x * n, &cur.y * n).ge_pt(prev))
                    .unwrap();
                assert!(k >= 2);
                let sum = next.add(prev);
                assert_eq!(sum, Pt::new(&cur.x * k, &cur.y * k));
            }
        }
    }
}

trait GePt {
    fn ge_pt(&self, other: &Pt) -> bool;
}

impl GePt for Pt {
    fn ge_pt(&self, other: &Pt) -> bool {
        other.le(self)
    }
}

fn spec_strategy() -> impl Strategy<Value = (u64, u64, u64)> {
    (2u64..30, 3u64..40, 2u64..60).prop_filter("pairwise coprime, proper", |&(a, b, d)| {
        a < b && a.gcd(&b) == 1 && a.gcd(&d) == 1 && b.gcd(&d) == 1 && !member_ab(d, a, b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn point_sets_are_antichains((a, b, d) in spec_strategy()) {
        let spec = QuotientSpec::from_u64(a, b, d).unwrap();
        let lat = Lattice::Quotient(spec.clone());
        let mins = min_points_rect_bf(&lat, Rect::new(0, d as i64, 0, d as i64), true).unwrap();
        prop_assert!(is_antichain(&mins));
        let pf = pf_points(&spec).unwrap();
        prop_assert!(is_antichain(&pf));
        let delta = d.min(b - 1) as i64;
        let delta_p = d.min(a - 1) as i64;
        let rect = Rect::new(b as i64 - delta, b as i64 - 1, -delta_p, -1);
        prop_assert_eq!(pf, max_points_rect_bf(&lat, rect).unwrap());
    }

    #[test]
    fn w_invariance((a, b, d) in spec_strategy(), x in -200i64..200, y in -200i64..200, k in -5i64..5) {
        let spec = QuotientSpec::from_u64(a, b, d).unwrap();
        let p = Pt::new(x, y);
        let w = spec.w();
        let shifted = Pt::new(&p.x + &w.x * k, &p.y + &w.y * k);
        prop_assert_eq!(in_lattice(&spec, &p), in_lattice(&spec, &shifted));
        // N^2 + wZ and T + wZ split the half plane a x + b y > 0.
        let (ai, bi) = (a as i64, b as i64);
        prop_assume!(ai * x + bi * y > 0);
        let in_cone = (-100i64..100).any(|j| x - j * bi >= 0 && y + j * ai >= 0);
        let in_tri = (-100i64..100).any(|j| {
            let (u, v) = (x - j * bi, y + j * ai);
            (1..bi).contains(&u) && (-(ai - 1)..=-1).contains(&v) && ai * u + bi * v > 0
        });
        prop_assert!(in_cone != in_tri, "({}, {}) in cone {} triangle {}", x, y, in_cone, in_tri);
    }
}
