use num_bigint::BigInt;
use proptest::prelude::*;
use qschubert::algebra::{Monomial, Polynomial, Variable};
use qschubert::quantization::{reconstruct_standard, standard_decompose, theta, theta_inverse};

fn x_polynomial() -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0..3u32, 4), -9i64..=9);
    prop::collection::vec(term, 1..5).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(exps, c)| {
                let pairs = exps.iter().enumerate().map(|(i, &e)| (Variable::x(i as u32 + 1), e));
                Polynomial::term(BigInt::from(c), Monomial::from_pairs(pairs.collect::<Vec<_>>()))
            })
            .sum()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]
    #[test]
    fn standard_decomposition_reconstructs(f in x_polynomial()) {
        prop_assert_eq!(reconstruct_standard(&standard_decompose(&f).unwrap()), f);
    }

    #[test]
    fn theta_is_invertible(f in x_polynomial(), g in x_polynomial()) {
        let mixed = &f + &(&g * &Polynomial::a(2));
        prop_assert_eq!(theta_inverse(&theta(&mixed)), mixed.clone());
        // injective on q-free input: distinct inputs give distinct images
        if f != g {
            prop_assert_ne!(theta(&f), theta(&g));
        }
    }
}
