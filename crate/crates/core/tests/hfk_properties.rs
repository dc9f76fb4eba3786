mod common;

use common::alternating_braid;
use hfk_core::diagram::goeritz_signature;
use hfk_core::hfk::*;
use hfk_core::kauffman::decorate;
use hfk_core::Polynomial;
use proptest::prelude::*;

fn group() -> impl Strategy<Value = BigradedGroup> {
    prop::collection::vec(((-3i64..=3, -4i64..=4), 1u64..=3), 0..6).prop_map(BigradedGroup::from_ranks)
}

/// Symmetric polynomials with value one at `T = 1` whose signs fit the
/// signature `2 * half`, as for alternating knots.
fn alternating_pair() -> impl Strategy<Value = (Polynomial, i64)> {
    (prop::collection::vec(0i64..=3, 0..4), -4i64..=4).prop_filter_map("middle coefficient sign", |(cs, half)| {
        let sign = |e: i64| if (e + half) % 2 == 0 { 1 } else { -1 };
        let mut terms = Vec::new();
        let mut total = 0;
        for (k, &c) in cs.iter().enumerate() {
            let e = k as i64 + 1;
            terms.push((e, sign(e) * c));
            terms.push((-e, sign(e) * c));
            total += 2 * sign(e) * c;
        }
        let middle = 1 - total;
        if middle != 0 && middle.signum() != sign(0) {
            return None;
        }
        terms.push((0, middle));
        Some((Polynomial::from_terms(terms), 2 * half))
    })
}

/// Alexander polynomials of L-space form with top degree `g`.
fn lspace_delta() -> impl Strategy<Value = Polynomial> {
    prop::collection::btree_set(1i64..=8, 0..4).prop_map(|gaps| {
        // Positive exponents n_1 < ... < n_m from cumulative gaps, mirrored.
        let mut pos = Vec::new();
        let mut acc = 0;
        for g in gaps {
            acc += g;
            pos.push(acc);
        }
        let m = pos.len();
        let mut terms = vec![(0, if m % 2 == 0 { 1 } else { -1 })];
        for (k, &e) in pos.iter().enumerate() {
            let sign = if (m - 1 - k) % 2 == 0 { 1 } else { -1 };
            terms.push((e, sign));
            terms.push((-e, sign));
        }
        Polynomial::from_terms(terms)
    })
}

proptest! {
    #[test]
    fn mirror_is_involution(g in group()) {
        prop_assert_eq!(mirror_hfk(&mirror_hfk(&g)), g);
    }

    #[test]
    fn kunneth_laws(a in group(), b in group(), c in group()) {
        prop_assert_eq!(kunneth(&a, &b).unwrap(), kunneth(&b, &a).unwrap());
        let left = kunneth(&kunneth(&a, &b).unwrap(), &c).unwrap();
        let right = kunneth(&a, &kunneth(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(kunneth(&a, &BigradedGroup::unknot()).unwrap(), a.clone());
        prop_assert_eq!(euler_characteristic(&kunneth(&a, &b).unwrap()), &euler_characteristic(&a) * &euler_characteristic(&b));
    }

    #[test]
    fn alternating_round_trip((delta, sigma) in alternating_pair()) {
        let g = alternating_hfk(&delta, sigma).unwrap();
        prop_assert_eq!(euler_characteristic(&g), delta.clone());
        prop_assert!(check_conjugation(&g));
        prop_assert!(g.is_torsion_free());
        prop_assert_eq!(mirror_hfk(&g), alternating_hfk(&delta, -sigma).unwrap());
    }

    #[test]
    fn staircase_laws(delta in lspace_delta()) {
        let s = lspace_staircase(&delta).unwrap();
        let g = staircase_to_group(&s);
        prop_assert_eq!(euler_characteristic(&g), delta.clone());
        prop_assert!(check_conjugation(&g));
        prop_assert!(s.delta.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(s.delta_at(s.m()), 0);
        let top = delta.max_degree().unwrap();
        prop_assert_eq!(genus(&g).unwrap() as i64, top);
        prop_assert_eq!(tau(&TauRoute::LSpace(delta.clone())).unwrap(), top);
        let b = fourball_bounds(top, top).unwrap();
        prop_assert!(b.determined());
    }

    #[test]
    fn alternating_theorem_matches_states((_w, d) in alternating_braid(9)) {
        prop_assume!(d.is_reduced());
        let dp = decorate(&d, None).unwrap();
        let mut states = dp.gradings().unwrap();
        states.sort();
        let g = alternating_hfk(&dp.state_sum().unwrap(), goeritz_signature(&d)).unwrap();
        prop_assert_eq!(g.multiset(), states);
    }

    #[test]
    fn tau_additive_on_alternating_sums((_w1, a) in alternating_braid(7), (_w2, b) in alternating_braid(7)) {
        let sum = a.connected_sum(&b).unwrap();
        let t = |s: i64| tau(&TauRoute::Alternating { sigma: s }).unwrap();
        prop_assert_eq!(t(goeritz_signature(&sum)), t(goeritz_signature(&a)) + t(goeritz_signature(&b)));
    }
}

#[test]
fn torus_routes_agree() {
    for p in 2..=7i64 {
        for q in p + 1..=7 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let delta = torus_alexander(p, q).unwrap();
            let via_torus = tau(&TauRoute::Torus { p, q }).unwrap();
            assert_eq!(tau(&TauRoute::LSpace(delta.clone())).unwrap(), via_torus);
            let braid = tau(&TauRoute::PositiveBraid { crossings: (p - 1) * q, strands: p }).unwrap();
            assert_eq!(braid, via_torus);
        }
    }
}
