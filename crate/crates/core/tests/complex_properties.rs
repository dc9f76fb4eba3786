use std::collections::BTreeMap;

use hfk_core::complex::*;
use proptest::prelude::*;

type UPoly = BTreeMap<u32, i64>;

/// Differential as `d[target][source]`, a polynomial in `U`.
#[derive(Debug)]
struct Model {
    gradings: Vec<i64>,
    d: Vec<Vec<UPoly>>,
}

fn mul(a: &UPoly, b: &UPoly) -> UPoly {
    let mut out = UPoly::new();
    for (&i, &x) in a {
        for (&j, &y) in b {
            *out.entry(i + j).or_insert(0) += x * y;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn matmul(a: &[Vec<UPoly>], b: &[Vec<UPoly>]) -> Vec<Vec<UPoly>> {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let mut acc = UPoly::new();
                    for k in 0..n {
                        for (e, v) in mul(&a[r][k], &b[k][c]) {
                            *acc.entry(e).or_insert(0) += v;
                        }
                    }
                    acc.retain(|_, v| *v != 0);
                    acc
                })
                .collect()
        })
        .collect()
}

impl Model {
    /// Free towers plus cancelling pairs `d x = +-U^k y`.
    fn new(free: &[i64], pairs: &[(i64, u32, bool)]) -> Self {
        let mut gradings = free.to_vec();
        let mut arrows = Vec::new();
        for &(g, k, neg) in pairs {
            let x = gradings.len();
            gradings.push(g);
            gradings.push(g - 1 + 2 * k as i64);
            arrows.push((x, x + 1, k, if neg { -1 } else { 1 }));
        }
        let n = gradings.len();
        let mut d = vec![vec![UPoly::new(); n]; n];
        for (x, y, k, c) in arrows {
            d[y][x].insert(k, c);
        }
        Model { gradings, d }
    }

    /// Change of basis `e_i -> e_i + c U^k e_j`, when it preserves gradings.
    fn change_basis(&mut self, i: usize, j: usize, c: i64, k: u32) {
        let n = self.gradings.len();
        if i == j || c == 0 || self.gradings[i] != self.gradings[j] - 2 * k as i64 {
            return;
        }
        let ident = |sign: i64| {
            let mut m = vec![vec![UPoly::new(); n]; n];
            for (t, row) in m.iter_mut().enumerate() {
                row[t].insert(0, 1);
            }
            m[j][i].insert(k, sign * c);
            m
        };
        self.d = matmul(&ident(-1), &matmul(&self.d, &ident(1)));
    }

    fn spec(&self, ring: Coefficients) -> ComplexSpec {
        let n = self.gradings.len();
        let mut differential = Vec::new();
        for y in 0..n {
            for x in 0..n {
                for (&k, &c) in &self.d[y][x] {
                    differential.push(ArrowSpec { from: format!("g{x}"), to: format!("g{y}"), coeff: c, upower: k });
                }
            }
        }
        ComplexSpec {
            generators: self.gradings.iter().enumerate().map(|(i, &g)| GeneratorSpec { name: format!("g{i}"), grading: g }).collect(),
            differential,
            ring,
        }
    }
}

fn model() -> impl Strategy<Value = (Model, usize)> {
    (
        prop::collection::vec(-2i64..=2, 0..3),
        prop::collection::vec((-2i64..=2, 0u32..=2, any::<bool>()), 0..4),
        prop::collection::vec((0usize..10, 0usize..10, -2i64..=2, 0u32..=1), 0..8),
    )
        .prop_filter("nonempty", |(f, p, _)| !f.is_empty() || !p.is_empty())
        .prop_map(|(free, pairs, ops)| {
            let mut m = Model::new(&free, &pairs);
            let n = m.gradings.len();
            for (i, j, c, k) in ops {
                m.change_basis(i % n, j % n, c, k);
            }
            // Hat rank: free towers, plus both ends of pairs joined by a U power.
            let hat = free.len() + 2 * pairs.iter().filter(|p| p.1 > 0).count();
            (m, hat)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructed_complexes_are_valid((m, hat) in model()) {
        let c = build_complex(&m.spec(Coefficients::Integers)).unwrap();
        let h = hat_homology(&c);
        prop_assert_eq!(h.total_rank() as usize, hat);
        let signed: i64 = c.gradings().iter().map(|g| if g % 2 == 0 { 1 } else { -1 }).sum();
        prop_assert_eq!(h.euler_characteristic(), signed);
        let m2 = build_complex(&m.spec(Coefficients::Mod2)).unwrap();
        prop_assert_eq!(hat_homology(&m2).total_rank() as usize, hat);
    }

    #[test]
    fn cancellation_preserves_hat((m, _hat) in model()) {
        let c = build_complex(&m.spec(Coefficients::Integers)).unwrap();
        let unit = c.arrows().find(|&(x, y, k, v)| k == 0 && v.abs() == 1 && c.cancel_arrow(x, y).is_ok());
        if let Some((x, y, _, _)) = unit {
            let reduced = c.cancel_arrow(x, y).unwrap();
            prop_assert_eq!(hat_homology(&reduced), hat_homology(&c));
            prop_assert_eq!(flavor_homologies(&reduced, 4).plus, flavor_homologies(&c, 4).plus);
        }
    }

    #[test]
    fn flavors_stabilize_and_sequences_are_exact((m, _hat) in model()) {
        let c = build_complex(&m.spec(Coefficients::Integers)).unwrap();
        let b = stable_depth(&c, 8);
        prop_assert!(b.is_some());
        let b = b.unwrap();
        for extra in 0..2 {
            prop_assert!(flavor_homologies(&c, b + extra).stabilized);
        }
        prop_assert!(exactness_check(&c, 3));
        let m2 = build_complex(&m.spec(Coefficients::Mod2)).unwrap();
        prop_assert!(exactness_check(&m2, 3));
    }

    #[test]
    fn direct_sum_adds((m1, h1) in model(), (m2, h2) in model()) {
        let a = build_complex(&m1.spec(Coefficients::Integers)).unwrap();
        let b = build_complex(&m2.spec(Coefficients::Integers)).unwrap();
        prop_assert_eq!(hat_homology(&a.direct_sum(&b)).total_rank() as usize, h1 + h2);
    }
}

#[test]
fn worked_complexes_have_expected_flavors() {
    let single = single_generator_complex();
    for c in [sphere_genus1_complex(), single.clone()] {
        let f = flavor_homologies(&c, 3);
        assert!(f.stabilized);
        assert_eq!(f.plus, GradedGroup::from_ranks(Coefficients::Integers, [(0, 1), (2, 1), (4, 1)]));
        assert!(exactness_check(&c, 3));
    }
    for regime in [Regime::ALessB, Regime::AGreaterB] {
        let c = sphere_genus2_complex(regime);
        let f = flavor_homologies(&c, 3);
        assert!(f.stabilized);
        assert_eq!(f.plus, GradedGroup::from_ranks(Coefficients::Mod2, [(0, 1), (2, 1), (4, 1)]));
    }
}
