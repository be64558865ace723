use num_bigint::BigInt;
use proptest::prelude::*;
use qschubert::algebra::{
    elementary_symmetric, format_json, format_text, full_flag_q_degree, parse_json, parse_text, variables, Family,
    Monomial, Polynomial, SymbolicMatrix, Variable,
};

fn variable() -> impl Strategy<Value = Variable> {
    (0..3u8, 1..5u32).prop_map(|(f, i)| match f {
        0 => Variable::x(i),
        1 => Variable::a(i),
        _ => Variable::q(i),
    })
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec((variable(), 1..4u32), 0..4), -20i64..20);
    prop::collection::vec(term, 0..6).prop_map(|terms| {
        terms.into_iter().map(|(pairs, c)| Polynomial::term(BigInt::from(c), Monomial::from_pairs(pairs))).sum()
    })
}

proptest! {
    #[test]
    fn ring_axioms(f in polynomial(), g in polynomial(), h in polynomial()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &Polynomial::one(), f.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]
    #[test]
    fn text_and_json_round_trip(f in polynomial()) {
        prop_assert_eq!(parse_text(&format_text(&f)).unwrap(), f.clone());
        prop_assert_eq!(parse_json(&format_json(&f)).unwrap(), f);
    }
}

#[test]
fn quantum_elementary_degrees_and_classical_limit() {
    for n in 1..=6 {
        let coeffs = SymbolicMatrix::quantum_tridiagonal(n).char_poly_coeffs();
        assert_eq!(coeffs.len(), n + 1);
        let xs = variables(Family::X, n as u32);
        for (j, e) in coeffs.iter().enumerate() {
            assert!(e.graded_degree(full_flag_q_degree).is(j as u32), "n={n} j={j}");
            assert_eq!(e.set_zero(|v| v.family == Family::Q), elementary_symmetric(j, &xs));
        }
    }
}

#[test]
fn display_order_examples() {
    assert_eq!(format_text(&Polynomial::one()), "1");
    let f = Polynomial::x(1).pow(2) - Polynomial::q(1);
    assert_eq!(format_text(&f), "x1^2 - q1");
    assert_eq!(format_text(&(Polynomial::x(1) + Polynomial::x(2))), "x2 + x1");
    assert!(parse_text("x1 +").is_err());
}
