use qschubert::algebra::Family;
use qschubert::parabolic::{parabolic_cauchy_rhs, parabolic_q_double_schubert, theta_p};
use qschubert::schubert::{schubert_polynomial, SchubertFamily};
use qschubert::weyl::{ParabolicContext, Permutation};

fn cases() -> Vec<(ParabolicContext, Permutation)> {
    (1..=4)
        .flat_map(ParabolicContext::all_compositions)
        .flat_map(|ctx| ctx.minimal_elements().into_iter().map(move |w| (ctx.clone(), w)))
        .collect()
}

#[test]
fn homogeneous_of_length_degree() {
    for (ctx, w) in cases() {
        let f = parabolic_q_double_schubert(&ctx, &w).unwrap();
        assert!(f.graded_degree(|j| ctx.q_degree(j)).is(w.length() as u32), "{ctx} {w}");
    }
}

#[test]
fn all_ones_is_the_full_flag_family() {
    let ctx = ParabolicContext::full_flag(4);
    for w in Permutation::all(4) {
        assert_eq!(
            parabolic_q_double_schubert(&ctx, &w).unwrap(),
            schubert_polynomial(&w, SchubertFamily::QuantumDouble)
        );
    }
}

#[test]
fn specializations() {
    for (ctx, w) in cases() {
        let f = parabolic_q_double_schubert(&ctx, &w).unwrap();
        let no_q = f.set_zero(|v| v.family == Family::Q);
        assert_eq!(no_q, schubert_polynomial(&w, SchubertFamily::Double), "{ctx} {w}");
        assert_eq!(no_q.set_zero(|v| v.family == Family::A), schubert_polynomial(&w, SchubertFamily::Classical));
    }
}

#[test]
fn cauchy_formula() {
    for (ctx, w) in cases() {
        assert_eq!(parabolic_cauchy_rhs(&ctx, &w).unwrap(), parabolic_q_double_schubert(&ctx, &w).unwrap(), "{ctx} {w}");
    }
}

#[test]
fn quantization_of_double_schubert_polynomials() {
    for (ctx, w) in cases() {
        let quantized = theta_p(&ctx, &schubert_polynomial(&w, SchubertFamily::Double)).unwrap();
        assert_eq!(quantized, parabolic_q_double_schubert(&ctx, &w).unwrap(), "{ctx} {w}");
    }
}
