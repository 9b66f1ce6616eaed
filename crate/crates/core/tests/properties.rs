//! Property tests: ring laws, text round trips and the binomial identities.

use deals_core::closed_forms::{binomial_row, prop2_double_sum};
use deals_core::laurent::base_power;
use deals_core::{
    binomial, central_binomial_sum, ct_sequence_term, enumerate_deals, franel, lhs_sum, rhs_sum,
    stat2_count, vandermonde_inner, vandermonde_outer, Count, Deal, DeckSpec, IdentityPolys,
    LaurentPoly, Limits,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-9i64..=9, -3i64..=3, -3i64..=3), 0..6).prop_map(LaurentPoly::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(p in small_poly(), q in small_poly(), r in small_poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &LaurentPoly::one(), p.clone());
        for (_, c) in (&p * &q).terms() {
            prop_assert!(*c != BigInt::from(0));
        }
    }

    #[test]
    fn pow_matches_repeated_multiplication(p in small_poly(), m in 0u64..5) {
        let mut acc = LaurentPoly::one();
        for _ in 0..m {
            acc = &acc * &p;
        }
        prop_assert_eq!(p.pow(m), acc);
    }

    #[test]
    fn deal_text_round_trip(n in 0u32..=4, index in any::<prop::sample::Index>()) {
        let spec = DeckSpec::new(n);
        let deals: Vec<Deal> = enumerate_deals(spec, Limits::default()).unwrap().collect();
        let deal = &deals[index.index(deals.len())];
        let back = Deal::parse(spec, &deal.to_string()).unwrap();
        prop_assert_eq!(&back, deal);
    }

    #[test]
    fn pascal_and_symmetry(n in 1u64..=30, k in 0i64..=30) {
        prop_assume!(k as u64 <= n);
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        prop_assert_eq!(binomial(n, k), binomial(n, n as i64 - k));
    }
}

#[test]
fn identity_holds_to_sixty() {
    for n in 0..=60 {
        assert_eq!(lhs_sum(n), rhs_sum(n), "n={n}");
    }
    // Frozen with an independent big-integer script.
    let a60: Count = "12332911885791387526590133347743154123579704036608331025"
        .parse()
        .unwrap();
    assert_eq!(rhs_sum(60), a60);
    assert_eq!(rhs_sum(20), Count::from(248256043372999089u64));
}

#[test]
fn constant_term_agrees_to_twenty_five() {
    for n in 0..=25 {
        assert_eq!(ct_sequence_term(n).unwrap(), lhs_sum(n), "n={n}");
    }
    let a25: Count = "11756409817108040588403".parse().unwrap();
    assert_eq!(ct_sequence_term(25).unwrap(), a25);
}

#[test]
fn powers_stay_in_box_and_factor() {
    let polys = IdentityPolys::new();
    for n in 0..=12u64 {
        let p = base_power(n).unwrap();
        if let Some(((lx, hx), (ly, hy))) = p.exponent_box() {
            let n = n as i64;
            assert!(-n <= lx && hx <= n && -n <= ly && hy <= n);
        }
        let factored = &polys.factor1.pow(n) * &polys.factor2.pow(n);
        assert_eq!(factored, p);
    }
}

#[test]
fn vandermonde_collapses() {
    for k in 0..=12u64 {
        for a in 0..=k as i64 {
            assert_eq!(vandermonde_inner(k, a).unwrap(), binomial(2 * k, k as i64));
        }
    }
    for n in 0..=12u64 {
        for k in 0..=n as i64 {
            assert_eq!(vandermonde_outer(n, k).unwrap(), binomial(n, k));
            assert_eq!(
                prop2_double_sum(n, k).unwrap(),
                binomial(n, k) * binomial(2 * k as u64, k)
            );
        }
    }
}

#[test]
fn bucket_sums() {
    for n in 0..=20u64 {
        let by_red: Count = (0..=n as i64).map(|k| stat2_count(n, k).unwrap()).sum();
        assert_eq!(by_red, rhs_sum(n));
        let by_s: Count = binomial_row(n)
            .iter()
            .zip(0..)
            .map(|(c, k)| c * franel(k))
            .sum();
        assert_eq!(by_s, lhs_sum(n));
    }
    assert_eq!(central_binomial_sum(2), Count::from(11u32));
}
