use mgbar::arith::rat;
use mgbar::bn::*;
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn rho_serre_duality() {
    for g in 0..25i64 {
        for d in 0..=(2 * g - 2).max(0) {
            for r in 0..=d {
                assert_eq!(rho(g, r, d), rho(g, g - d + r - 1, 2 * g - 2 - d), "g={g} r={r} d={d}");
            }
        }
    }
}

#[test]
fn severi_feasible_exactly_up_to_ten() {
    for g in 3..=30 {
        assert_eq!(severi_analyze(g).unwrap().feasible, g <= 10, "g = {g}");
    }
    assert_eq!(severi_analyze(1).unwrap().d_min, 3);
}

#[test]
fn liaison_is_symmetric() {
    for (g, d, r) in [(14, 18, 6), (11, 14, 4), (8, 14, 6), (9, 13, 4), (5, 10, 3), (6, 20, 6)] {
        let Liaison::Linked { f, d_res, g_res, intersections } = liaison_solve(g, d, r).unwrap() else {
            continue;
        };
        let back = liaison_solve(g_res, d_res, r).unwrap();
        assert_eq!(back, Liaison::Linked { f, d_res: d, g_res: g, intersections });
    }
    assert_eq!(hilbert_dim(7, 2, 3), 28);
}

#[test]
fn two_component_limit_canonical_series() {
    // A genus-(g−1) curve meeting an elliptic tail E at y. The aspect
    // ω_C(2y) vanishes to orders 0, 2, 3, …, g at y; the elliptic aspect
    // (g−2)y + |g y| inside |O_E((2g−2)y)| vanishes to orders
    // g−2, g−1, …, 2g−4, 2g−2.
    for g in 4..12u32 {
        let r = g - 1;
        let d = 2 * g - 2;
        let mut main = vec![0];
        main.extend(2..=g);
        let mut tail: Vec<u32> = (g - 2..=2 * g - 4).collect();
        tail.push(2 * g - 2);
        let curve = TreeCurve::new(vec![g - 1, 1], vec![(0, 1)]).unwrap();
        let series = LimitSeries {
            r,
            d,
            vanishing: vec![
                NodeVanishing { edge: 0, component: 0, sequence: VanishingSequence(main.clone()) },
                NodeVanishing { edge: 0, component: 1, sequence: VanishingSequence(tail.clone()) },
            ],
        };
        assert!(limit_series_compatible(&curve, &series).unwrap(), "g = {g}");

        // lowering the top elliptic vanishing order breaks compatibility
        let mut weak = tail.clone();
        *weak.last_mut().unwrap() = 2 * g - 3;
        let broken = LimitSeries {
            r,
            d,
            vanishing: vec![
                NodeVanishing { edge: 0, component: 0, sequence: VanishingSequence(main) },
                NodeVanishing { edge: 0, component: 1, sequence: VanishingSequence(weak) },
            ],
        };
        assert!(!limit_series_compatible(&curve, &broken).unwrap());
    }
}

#[test]
fn limit_series_input_errors() {
    let curve = TreeCurve::new(vec![1, 1], vec![(0, 1)]).unwrap();
    let only_one = LimitSeries {
        r: 1,
        d: 2,
        vanishing: vec![NodeVanishing { edge: 0, component: 0, sequence: VanishingSequence(vec![0, 2]) }],
    };
    assert!(limit_series_compatible(&curve, &only_one).is_err());
    let off_edge = LimitSeries {
        r: 1,
        d: 2,
        vanishing: vec![NodeVanishing { edge: 3, component: 0, sequence: VanishingSequence(vec![0, 2]) }],
    };
    assert!(limit_series_compatible(&curve, &off_edge).is_err());
}

#[test]
fn koszul_thresholds() {
    assert_eq!(koszul_threshold(7, 1).unwrap(), rat(17, 1));
    assert_eq!(quadric_count(14, 6, 18), 5);
}

/// The syzygy bundle twist ∧^i M_K ⊗ K² has slope 4g − 4 − 2i, above 2g − 1
/// for g = 2i + 3, so its Euler characteristic counts sections.
#[test]
fn syzygy_bundle_is_nonspecial() {
    for i in 0..10u32 {
        let g = 2 * i + 3;
        let gi = g as i64;
        let mk = FormalBundle::new(gi - 1, -(2 * gi - 2), g).unwrap();
        let k = FormalBundle::new(1, 2 * gi - 2, g).unwrap();
        let b = mk.ext(i).unwrap().tensor(&k.tensor(&k).unwrap()).unwrap();
        assert_eq!(b.mu(), rat(4 * gi - 4 - 2 * i as i64, 1));
        assert!(b.mu() > rat(2 * gi - 1, 1));
        assert_eq!(b.euler_char(), syzygy_euler_closed_form(g, i));
    }
}

/// Chern-root oracle: a bundle with integer roots x_1..x_r has ∧^k with roots
/// the k-fold subset sums and Sym^k with the k-fold multiset sums.
fn subset_sums(roots: &[i64], k: usize, multiset: bool) -> Vec<i64> {
    fn rec(roots: &[i64], start: usize, k: usize, multiset: bool, acc: i64, out: &mut Vec<i64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..roots.len() {
            let next = if multiset { i } else { i + 1 };
            rec(roots, next, k - 1, multiset, acc + roots[i], out);
        }
    }
    let mut out = Vec::new();
    rec(roots, 0, k, multiset, 0, &mut out);
    out
}

proptest! {
    #[test]
    fn powers_match_chern_roots(roots in prop::collection::vec(-6i64..7, 1..=4), k in 0usize..=3) {
        let r = roots.len();
        let deg: i64 = roots.iter().sum();
        let e = FormalBundle::new(r as i64, deg, 3).unwrap();
        if k <= r {
            let sums = subset_sums(&roots, k, false);
            let ext = e.ext(k as u32).unwrap();
            prop_assert_eq!(ext.rank.clone(), BigInt::from(sums.len()));
            prop_assert_eq!(ext.degree, BigInt::from(sums.iter().sum::<i64>()));
        }
        let sums = subset_sums(&roots, k, true);
        let sym = e.sym(k as u32).unwrap();
        prop_assert_eq!(sym.rank.clone(), BigInt::from(sums.len()));
        prop_assert_eq!(sym.degree, BigInt::from(sums.iter().sum::<i64>()));
    }

    #[test]
    fn tensor_matches_chern_roots(a in prop::collection::vec(-6i64..7, 1..=3), b in prop::collection::vec(-6i64..7, 1..=3)) {
        let ea = FormalBundle::new(a.len() as i64, a.iter().sum(), 2).unwrap();
        let eb = FormalBundle::new(b.len() as i64, b.iter().sum(), 2).unwrap();
        let t = ea.tensor(&eb).unwrap();
        let deg: i64 = a.iter().flat_map(|x| b.iter().map(move |y| x + y)).sum();
        prop_assert_eq!(t.degree.clone(), BigInt::from(deg));
        prop_assert_eq!(t.dual().degree, BigInt::from(-deg));
    }
}
