use qschubert::quantum_ring::{
    bijection_check, chevalley_root_sets, chevalley_root_sets_in_window, chevalley_row, verify_chevalley, Flavor,
    RootWindow, StructureTable,
};
use qschubert::weyl::{ParabolicContext, Permutation};

#[test]
fn chevalley_full_flag_all_flavors_s4() {
    for w in Permutation::all(4) {
        for i in 1..=4 {
            for flavor in Flavor::FULL_FLAG {
                let check = verify_chevalley(i, &w, flavor, None).unwrap();
                assert!(check.holds(), "{flavor} i={i} w={w}: {}", check.difference);
            }
        }
    }
}

#[test]
fn chevalley_parabolic_small_compositions() {
    for n in 1..=4 {
        for ctx in ParabolicContext::all_compositions(n) {
            for w in ctx.minimal_elements() {
                let n = ctx.n() as u32;
                for i in ctx.nodes().into_iter().chain([n, n + 1]) {
                    let check = verify_chevalley(i, &w, Flavor::Parabolic, Some(&ctx)).unwrap();
                    assert!(check.holds(), "{ctx} i={i} w={w}: {}", check.difference);
                }
            }
        }
    }
}

#[test]
fn parabolic_rejects_bad_input() {
    let ctx: ParabolicContext = "2,2".parse().unwrap();
    assert!(verify_chevalley(2, &Permutation::simple(1), Flavor::Parabolic, Some(&ctx)).is_err());
    assert!(verify_chevalley(1, &Permutation::simple(2), Flavor::Parabolic, Some(&ctx)).is_err());
}

#[test]
fn root_bounds_match_wide_window() {
    for w in Permutation::all(4) {
        let n = w.min_n().max(1) as u32;
        for i in 1..=4 {
            let wide = RootWindow { a: n.max(i) + 4, b: n.max(i) + 4 };
            assert_eq!(
                chevalley_root_sets(&w, i, None).unwrap(),
                chevalley_root_sets_in_window(&w, i, None, wide).unwrap(),
                "w={w} i={i}"
            );
        }
    }
    for n in 1..=4 {
        for ctx in ParabolicContext::all_compositions(n) {
            for w in ctx.minimal_elements() {
                for i in ctx.nodes() {
                    let wide = RootWindow { a: n as u32 + 8, b: n as u32 + 8 };
                    assert_eq!(
                        chevalley_root_sets(&w, i, Some(&ctx)).unwrap(),
                        chevalley_root_sets_in_window(&w, i, Some(&ctx), wide).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn parabolic_quantum_roots_drop_full_length() {
    for n in 1..=4 {
        for ctx in ParabolicContext::all_compositions(n) {
            for w in ctx.minimal_elements() {
                for i in ctx.nodes() {
                    for alpha in chevalley_root_sets(&w, i, Some(&ctx)).unwrap().b {
                        let drop = w.length() as i64 + 1 - alpha.pair_two_rho();
                        assert_eq!(w.reflect(alpha).length() as i64, drop, "{ctx} w={w} alpha={alpha:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn bijections_s4_and_compositions_of_4() {
    for w in Permutation::all(4) {
        assert!(bijection_check(&w, None).unwrap().iter().all(|r| r.ok), "w={w}");
    }
    for ctx in ParabolicContext::all_compositions(4) {
        for w in ctx.minimal_elements() {
            assert!(bijection_check(&w, Some(&ctx)).unwrap().iter().all(|r| r.ok), "{ctx} w={w}");
        }
    }
}

#[test]
fn table_n3_is_a_commutative_associative_ring() {
    let table = StructureTable::compute(3, None).unwrap();
    assert_eq!(table.entries.len(), 36);
    assert!(table.is_commutative());
    let basis = table.basis();
    for u in &basis {
        for v in &basis {
            for w in &basis {
                assert!(table.associates(u, v, w), "{u} {v} {w}");
            }
        }
    }
    for i in 1..=2 {
        let s = Permutation::simple(i);
        for w in &basis {
            assert_eq!(table.get(&s, w).unwrap(), &chevalley_row(3, i, w, None), "i={i} w={w}");
        }
    }
}

#[test]
fn parabolic_tables_match_divisor_rule() {
    for comp in ["2,2", "2,1", "1,2", "1,1,1", "3,1", "2,1,1", "1,2,1", "1,1,2"] {
        let ctx: ParabolicContext = comp.parse().unwrap();
        let table = StructureTable::compute(0, Some(ctx.clone())).unwrap();
        assert!(table.is_commutative());
        let basis = table.basis();
        for i in ctx.nodes() {
            let s = Permutation::simple(i);
            for w in &basis {
                assert_eq!(table.get(&s, w).unwrap(), &chevalley_row(ctx.n(), i, w, Some(&ctx)), "{ctx} i={i} w={w}");
            }
        }
    }
}

#[test]
fn table_json_round_trip() {
    let table = StructureTable::compute(3, None).unwrap();
    let json = table.to_json();
    assert_eq!(json["n"], 3);
    assert!(json["parabolic"].is_null());
    assert_eq!(StructureTable::from_json(&json).unwrap(), table);
    let ctx: ParabolicContext = "2,1".parse().unwrap();
    let table = StructureTable::compute(0, Some(ctx)).unwrap();
    assert_eq!(StructureTable::from_json(&table.to_json()).unwrap(), table);
}

#[test]
fn table_n4_matches_independent_routes() {
    use qschubert::algebra::Family;
    use qschubert::schubert::{expand_in_schubert_basis, schubert_polynomial, SchubertFamily};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    let table = StructureTable::compute(4, None).unwrap();
    assert_eq!(table.entries.len(), 576);
    assert!(table.is_commutative());
    let basis = table.basis();
    for i in 1..=3 {
        let s = Permutation::simple(i);
        for w in &basis {
            assert_eq!(table.get(&s, w).unwrap(), &chevalley_row(4, i, w, None), "i={i} w={w}");
        }
    }
    // at q = a = 0 the constants are the classical ones
    let fam = SchubertFamily::Classical;
    for u in &basis {
        for v in &basis {
            let product = &schubert_polynomial(u, fam) * &schubert_polynomial(v, fam);
            let classical: Vec<_> = expand_in_schubert_basis(&product, fam)
                .unwrap()
                .iter()
                .filter(|(w, _)| w.in_s_n(4))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect();
            let specialized: Vec<_> = table
                .get(u, v)
                .unwrap()
                .iter()
                .map(|(w, c)| (w.clone(), c.set_zero(|x| x.family != Family::X)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            assert_eq!(specialized, classical, "{u} * {v}");
        }
    }
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..200 {
        let pick = |rng: &mut StdRng| basis[rng.gen_range(0..basis.len())].clone();
        let (u, v, w) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        assert!(table.associates(&u, &v, &w), "{u} {v} {w}");
    }
}

#[test]
fn all_ones_parabolic_table_is_the_full_flag_table() {
    for n in 2..=4 {
        let full = StructureTable::compute(n, None).unwrap();
        let parabolic = StructureTable::compute(0, Some(ParabolicContext::full_flag(n))).unwrap();
        assert_eq!(parabolic.entries, full.entries, "n={n}");
    }
}
