use mgbar::arith::{big, factorial, int, rat, Rational};
use mgbar::psi::*;
use proptest::prelude::*;

fn val(g: u32, a: &[u32]) -> Rational {
    correlator_value(&Correlator::new(g, a.to_vec()).unwrap()).unwrap()
}

#[test]
fn one_point_values() {
    for g in 1..=6 {
        assert_eq!(val(g, &[3 * g - 2]), psi_one_point(g).unwrap());
    }
}

/// All exponent vectors of length n summing to n − 3, each up to reordering.
fn genus_zero_partitions(n: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, slots: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for a in (0..=left.min(max)).rev() {
            cur.push(a);
            rec(left - a, slots - 1, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32 - 3, n, n as u32, &mut Vec::new(), &mut out);
    out
}

#[test]
fn genus_zero_multinomial() {
    for n in 3..=8 {
        for a in genus_zero_partitions(n) {
            let denom = a.iter().fold(num_bigint::BigInt::from(1), |acc, &x| acc * factorial(x as u64));
            let expected = big(factorial(n as u64 - 3)) / big(denom);
            assert_eq!(val(0, &a), expected, "a = {a:?}");
        }
    }
}

#[test]
fn genus_one_tau_one_powers() {
    // ⟨τ1^n⟩_1 = (n−1)!/24
    for n in 1..=7u64 {
        assert_eq!(val(1, &vec![1; n as usize]), big(factorial(n - 1)) / int(24));
    }
}

#[test]
fn small_genus_two_table() {
    assert_eq!(val(2, &[4]), rat(1, 1152));
    assert_eq!(val(2, &[3, 2]), rat(29, 5760));
    assert_eq!(val(2, &[4, 1]), rat(1, 384));
    assert_eq!(val(2, &[2, 2, 2]), rat(7, 240));
}

#[test]
fn pand_bound_sweep() {
    assert_eq!(pand_numerator(2).unwrap(), rat(1, 48));
    assert_eq!(pand_denominator(2).unwrap(), rat(1, 480));
    for g in 2..=8u32 {
        assert_eq!(pand_bound(g).unwrap(), rat(60, g as i64 + 4));
    }
}

#[test]
fn pand_numerator_is_a_one_point_integral() {
    for g in 2..=7 {
        assert_eq!(pand_numerator(g).unwrap(), psi_one_point(g - 1).unwrap() * rat(1, 2));
    }
}

fn arb_dimensional() -> impl Strategy<Value = (u32, Vec<u32>)> {
    // distribute 3g − 3 + n among n points
    (0u32..4, 1usize..5).prop_flat_map(|(g, n)| {
        let n = if g == 0 { n.max(3) } else { n };
        let total = 3 * g + n as u32 - 3;
        prop::collection::vec(0u32..=total, n - 1).prop_map(move |mut cuts| {
            cuts.sort_unstable();
            let mut a = Vec::with_capacity(n);
            let mut prev = 0;
            for c in cuts {
                a.push(c - prev);
                prev = c;
            }
            a.push(total - prev);
            (g, a)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn string_equation((g, a) in arb_dimensional()) {
        // ⟨τ0 ∏τ_a⟩ = Σ_j ⟨… τ_{a_j − 1} …⟩
        let mut with0 = a.clone();
        with0.push(0);
        let lhs = val(g, &with0);
        let c = Correlator::new(g, with0).unwrap();
        let rhs: Rational = string_reduce(&c).unwrap().iter().map(|t| correlator_value(t).unwrap()).sum();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dilaton_equation((g, a) in arb_dimensional()) {
        // ⟨τ1 ∏τ_a⟩_g = (2g − 2 + n) ⟨∏τ_a⟩_g
        let n = a.len() as i64;
        let mut with1 = a.clone();
        with1.push(1);
        prop_assert_eq!(val(g, &with1), int(2 * g as i64 - 2 + n) * val(g, &a));
    }

    #[test]
    fn order_does_not_matter((g, a) in arb_dimensional()) {
        let mut rev = a.clone();
        rev.reverse();
        prop_assert_eq!(val(g, &rev), val(g, &a));
    }
}

#[test]
fn off_dimension_is_zero() {
    assert_eq!(val(2, &[1, 1]), int(0));
    assert!(cache_len() > 0);
}
