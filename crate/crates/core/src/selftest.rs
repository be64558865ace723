//! The acceptance checks, runnable from the command line.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{fundamental_weight, Family, Monomial, Polynomial, Variable};
use crate::parabolic::{
    descending_chain_on_monomial, parabolic_cauchy_rhs, parabolic_q_double_schubert, parabolic_stable,
};
use crate::quantization::{classical_relation_defect, quantum_relation_defect, theta};
use crate::quantum_ring::{bijection_check, chevalley_row, structure_constants, verify_chevalley, Flavor, StructureTable};
use crate::schubert::{
    cauchy_rhs, divided_difference, divided_difference_word, expand_in_schubert_basis, schubert_polynomial,
    SchubertFamily,
};
use crate::weyl::{ParabolicContext, Permutation};

type Check = Result<(), String>;

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub bound: Duration,
    run: fn() -> Check,
}

pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub failure: Option<String>,
    pub elapsed: Duration,
    pub bound: Duration,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.elapsed <= self.bound
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:>2} {} ({:.2}s, bound {}s)",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.bound.as_secs()
        )?;
        if let Some(reason) = &self.failure {
            write!(f, ": {reason}")?;
        }
        Ok(())
    }
}

impl Criterion {
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let failure = (self.run)().err();
        Outcome { id: self.id, title: self.title, failure, elapsed: start.elapsed(), bound: self.bound }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion { id: 1, title: "parabolic worked example", bound: secs(1), run: parabolic_example },
        Criterion { id: 2, title: "reflection formulas", bound: secs(1), run: reflection_formulas },
        Criterion { id: 3, title: "quantization of Schubert polynomials", bound: secs(10), run: quantization },
        Criterion { id: 4, title: "Cauchy formulas", bound: secs(30), run: cauchy },
        Criterion { id: 5, title: "Chevalley-Monk rules, all flavors", bound: secs(120), run: chevalley },
        Criterion { id: 6, title: "leading terms on S_5", bound: secs(60), run: leading_terms },
        Criterion { id: 7, title: "structure constants of Fl_3", bound: secs(120), run: table_fl3 },
        Criterion { id: 8, title: "parabolic structure constants", bound: secs(120), run: parabolic_tables },
        Criterion { id: 9, title: "operator algebra", bound: secs(60), run: operator_algebra },
        Criterion { id: 10, title: "root bijections", bound: secs(60), run: bijections },
    ]
}

pub fn run_all() -> Vec<Outcome> {
    criteria().iter().map(Criterion::run).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn x_minus_a(i: u32, j: u32) -> Polynomial {
    Polynomial::x(i) - Polynomial::a(j)
}

fn parabolic_example() -> Check {
    let ctx: ParabolicContext = "2,1,3".parse().expect("valid composition");
    let w: Permutation = "[5,6,4,1,2,3]".parse().expect("valid permutation");
    let got = parabolic_q_double_schubert(&ctx, &w).map_err(|e| e.to_string())?;
    let mut expected = x_minus_a(1, 4) * x_minus_a(2, 4);
    for i in 1..=3 {
        expected *= &(x_minus_a(1, i) * x_minus_a(2, i) * x_minus_a(3, i) + Polynomial::q(1));
    }
    ensure(got == expected, || format!("difference {}", got - expected))
}

fn reflection_formulas() -> Check {
    for i in 1..=5 {
        let s = Permutation::simple(i);
        let wx = fundamental_weight(Family::X, i);
        let qd = schubert_polynomial(&s, SchubertFamily::QuantumDouble);
        ensure(qd == &wx - &fundamental_weight(Family::A, i), || format!("quantum double s_{i}"))?;
        let q = schubert_polynomial(&s, SchubertFamily::Quantum);
        ensure(q == schubert_polynomial(&s, SchubertFamily::Classical) && q == wx, || format!("quantum s_{i}"))?;
    }
    Ok(())
}

fn quantization() -> Check {
    for w in Permutation::all(4) {
        for (from, to) in [
            (SchubertFamily::Classical, SchubertFamily::Quantum),
            (SchubertFamily::Double, SchubertFamily::QuantumDouble),
        ] {
            let got = theta(&schubert_polynomial(&w, from));
            ensure(got == schubert_polynomial(&w, to), || format!("theta of {from} {w}"))?;
        }
    }
    Ok(())
}

fn cauchy() -> Check {
    for w in Permutation::all(4) {
        ensure(schubert_polynomial(&w, SchubertFamily::Double) == cauchy_rhs(&w, false), || format!("double {w}"))?;
        ensure(schubert_polynomial(&w, SchubertFamily::QuantumDouble) == cauchy_rhs(&w, true), || {
            format!("quantum double {w}")
        })?;
    }
    for ctx in ParabolicContext::all_compositions(4) {
        for w in ctx.minimal_elements() {
            let rhs = parabolic_cauchy_rhs(&ctx, &w).map_err(|e| e.to_string())?;
            ensure(parabolic_stable(&ctx, &w) == rhs, || format!("parabolic {ctx} {w}"))?;
        }
    }
    Ok(())
}

fn chevalley() -> Check {
    for w in Permutation::all(4) {
        for i in 1..=4 {
            for flavor in Flavor::FULL_FLAG {
                let check = verify_chevalley(i, &w, flavor, None).map_err(|e| e.to_string())?;
                ensure(check.holds(), || format!("{flavor} i={i} w={w}: {}", check.difference))?;
            }
        }
    }
    for n in 1..=4 {
        for ctx in ParabolicContext::all_compositions(n) {
            for w in ctx.minimal_elements() {
                for i in ctx.nodes() {
                    let check = verify_chevalley(i, &w, Flavor::Parabolic, Some(&ctx)).map_err(|e| e.to_string())?;
                    ensure(check.holds(), || format!("{ctx} i={i} w={w}: {}", check.difference))?;
                }
            }
        }
    }
    Ok(())
}

fn leading_terms() -> Check {
    for w in Permutation::all(5) {
        let expected = Monomial::from_x_exponents(&w.code());
        for family in SchubertFamily::ALL {
            let lead = schubert_polynomial(&w, family).x_leading();
            ensure(matches!(&lead, Some((m, c)) if *m == expected && c.is_one()), || format!("{family} {w}"))?;
        }
    }
    Ok(())
}

fn a_to_zero(p: &Polynomial) -> Polynomial {
    p.set_zero(|v| v.family == Family::A)
}

fn table_fl3() -> Check {
    let s1 = Permutation::simple(1);
    let fl2 = structure_constants(2, &s1, &s1).map_err(|e| e.to_string())?;
    let expected = [
        (s1.clone(), Polynomial::a(2) - Polynomial::a(1)),
        (Permutation::identity(), Polynomial::q(1)),
    ];
    ensure(fl2 == expected.into_iter().collect(), || "n=2 square of the divisor".into())?;

    let table = StructureTable::compute(3, None).map_err(|e| e.to_string())?;
    ensure(table.entries.len() == 36, || "table is not 6x6".into())?;
    ensure(table.is_commutative(), || "not commutative".into())?;
    let basis = table.basis();
    for u in &basis {
        for v in &basis {
            for w in &basis {
                ensure(table.associates(u, v, w), || format!("associativity fails at {u} {v} {w}"))?;
            }
        }
    }
    for i in 1..=2 {
        let s = Permutation::simple(i);
        for w in &basis {
            let row = table.get(&s, w).expect("complete table");
            let predicted = chevalley_row(3, i, w, None);
            ensure(row == &predicted, || format!("divisor row s_{i} * {w}"))?;
            // non-equivariant rule: the weight term disappears at a = 0
            let plain: Vec<_> = row.iter().map(|(x, c)| (x.clone(), a_to_zero(c))).filter(|(_, c)| !c.is_zero()).collect();
            let quantum = quantum_product_row(3, &s, w)?;
            ensure(plain.into_iter().collect::<BTreeMap<_, _>>() == quantum, || {
                format!("a = 0 row s_{i} * {w}")
            })?;
        }
    }
    Ok(())
}

/// `sigma^u sigma^w` in `QH(Fl_n)` from the quantum (non-equivariant) basis.
fn quantum_product_row(
    n: usize,
    u: &Permutation,
    w: &Permutation,
) -> Result<BTreeMap<Permutation, Polynomial>, String> {
    let fam = SchubertFamily::Quantum;
    let product = schubert_polynomial(u, fam) * schubert_polynomial(w, fam);
    let expansion = expand_in_schubert_basis(&product, fam).map_err(|e| e.to_string())?;
    Ok(expansion
        .iter()
        .filter(|(x, _)| x.in_s_n(n))
        .map(|(x, c)| (x.clone(), c.set_zero(|v| v.family == Family::Q && v.index as usize >= n)))
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

fn parabolic_tables() -> Check {
    for comp in ["2,2", "2,1"] {
        let ctx: ParabolicContext = comp.parse().expect("valid composition");
        let table = StructureTable::compute(0, Some(ctx.clone())).map_err(|e| e.to_string())?;
        let basis = table.basis();
        let factorial = |m: u32| (1..=m as u64).product::<u64>();
        let rank = factorial(ctx.n() as u32) / ctx.composition().iter().map(|&c| factorial(c)).product::<u64>();
        ensure(basis.len() as u64 == rank, || format!("{ctx}: rank {} instead of {rank}", basis.len()))?;
        for v in &basis {
            let row = table.get(&Permutation::identity(), v).expect("complete table");
            ensure(row.len() == 1 && row.get(v).is_some_and(Polynomial::is_one), || format!("{ctx}: unit on {v}"))?;
        }
        ensure(table.is_commutative(), || format!("{ctx}: not commutative"))?;
        for i in ctx.nodes() {
            let s = Permutation::simple(i);
            for w in &basis {
                let predicted = chevalley_row(ctx.n(), i, w, Some(&ctx));
                ensure(table.get(&s, w) == Some(&predicted), || format!("{ctx}: divisor row s_{i} * {w}"))?;
            }
        }
    }
    Ok(())
}

pub(crate) fn random_polynomial<R: Rng>(rng: &mut R, family: Family, vars: u32, max_exp: u32) -> Polynomial {
    let terms = rng.gen_range(1..=6);
    (0..terms)
        .map(|_| {
            let m = Monomial::from_pairs(
                (1..=vars).map(|i| (Variable::new(family, i), rng.gen_range(0..=max_exp))),
            );
            Polynomial::term(BigInt::from(rng.gen_range(-5i64..=5)), m)
        })
        .sum()
}

/// A reduced word for `w` built by peeling random right descents.
pub(crate) fn random_reduced_word<R: Rng>(rng: &mut R, w: &Permutation) -> Vec<u32> {
    let mut word = Vec::new();
    let mut v = w.clone();
    while !v.is_identity() {
        let descents = v.right_descents();
        let i = descents[rng.gen_range(0..descents.len())];
        word.push(i);
        v = v.mul_simple_right(i);
    }
    word.reverse();
    word
}

fn operator_algebra() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    let perms = Permutation::all(4);
    let d = |i: u32, f: &Polynomial| divided_difference(i, f);
    for _ in 0..200 {
        let f = random_polynomial(&mut rng, Family::A, 5, 3);
        for i in 1..=4 {
            ensure(d(i, &d(i, &f)).is_zero(), || format!("d_{i}^2 on {f}"))?;
        }
        for i in 1..=3 {
            let l = divided_difference_word(&[i, i + 1, i], &f);
            let r = divided_difference_word(&[i + 1, i, i + 1], &f);
            ensure(l == r, || format!("braid at {i} on {f}"))?;
        }
        ensure(d(1, &d(3, &f)) == d(3, &d(1, &f)), || format!("commutation on {f}"))?;
        let w = &perms[rng.gen_range(0..perms.len())];
        let a = divided_difference_word(&w.reduced_word(), &f);
        let b = divided_difference_word(&random_reduced_word(&mut rng, w), &f);
        ensure(a == b, || format!("reduced words of {w} on {f}"))?;
    }
    for n in 1..=4u32 {
        for beta in staircase_exponents(n) {
            let got = descending_chain_on_monomial(&beta);
            let expected = if beta[0] + 1 < n {
                Polynomial::zero()
            } else {
                Polynomial::monomial(Monomial::from_pairs(
                    beta[1..].iter().enumerate().map(|(i, &e)| (Variable::a(i as u32 + 1), e)),
                ))
            };
            ensure(got == expected, || format!("descending chain at {beta:?}"))?;
        }
    }
    for p in 1..=4u32 {
        for i in 1..=p {
            let vars_x = crate::algebra::variables(Family::X, p);
            let vars_a = crate::algebra::variables(Family::A, p);
            let f = crate::algebra::elementary_symmetric(i as usize, &vars_x)
                - crate::algebra::elementary_symmetric(i as usize, &vars_a);
            let expansion = expand_in_schubert_basis(&f, SchubertFamily::Double).map_err(|e| e.to_string())?;
            let cycles: Vec<Permutation> = (1..=p).map(|j| Permutation::cycle(j, p)).collect();
            ensure(expansion.iter().all(|(w, _)| cycles.contains(w)), || format!("support of e_{i}^{p}"))?;
            ensure(expansion.get(&Permutation::cycle(i, p)).is_one(), || format!("diagonal of e_{i}^{p}"))?;
        }
    }
    for p in 0..=4i64 {
        for i in 0..=p {
            for j in 0..=i {
                ensure(classical_relation_defect(i, j, p).is_zero(), || format!("classical relation {i} {j} {p}"))?;
                ensure(quantum_relation_defect(i, j, p).is_zero(), || format!("quantum relation {i} {j} {p}"))?;
            }
        }
    }
    Ok(())
}

/// Exponent vectors with `beta_1 <= n - 1` and `beta_i <= n - i` for `i >= 2`.
pub(crate) fn staircase_exponents(n: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for i in 1..=n {
        let cap = if i == 1 { n - 1 } else { n - i };
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=cap).map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out
}

fn bijections() -> Check {
    for w in Permutation::all(4) {
        let reports = bijection_check(&w, None).map_err(|e| e.to_string())?;
        ensure(reports.iter().all(|r| r.ok), || format!("{w}"))?;
    }
    for ctx in ParabolicContext::all_compositions(4) {
        for w in ctx.minimal_elements() {
            let reports = bijection_check(&w, Some(&ctx)).map_err(|e| e.to_string())?;
            ensure(reports.iter().all(|r| r.ok), || format!("{ctx} {w}"))?;
        }
    }
    Ok(())
}
