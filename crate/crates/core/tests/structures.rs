mod common;

use std::sync::Arc;

use ainf_core::bar::{first_disagreement, ViewKind};
use ainf_core::fixtures::{self, example, MUTANTS, SHIPPED};
use ainf_core::format::{Bundle, StructureFile};
use ainf_core::multimap::Direction;
use ainf_core::random::{random_inner_product, random_view, Density};
use ainf_core::structures::{
    dual_bimodule, dual_self_bimodule, from_dg_bimodule, from_dga, hochschild_differential, identity_morphism,
    pushforward, self_bimodule, Coefficients,
};
use ainf_core::{
    check_ainfinity, check_bimodule, check_bimodule_map, check_inner_product, AInfinityAlgebra, AInfinityBimodule,
    Field, Formulation, InfinityInnerProduct, MultiMap, Vector,
};
use common::tables;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn shipped_examples_round_trip_and_check() {
    for name in SHIPPED {
        let file = example(name).unwrap();
        let json = file.to_json();
        let again = StructureFile::parse(&json).unwrap();
        assert_eq!(again.to_json(), json, "{name}");
        let mutant = MUTANTS.contains(name);
        for b in &again.bundles {
            let r = b.check(None);
            assert_eq!(r.agreement, Some(true), "{name}/{}\n{r}", b.name());
            let rel = r.formulation_passed(Formulation::UnsuspendedRelations);
            let bar = r.formulation_passed(Formulation::SuspendedBar);
            assert_eq!(rel, bar, "{name}/{}", b.name());
            let top = matches!(b, Bundle::InnerProduct(_) | Bundle::Morphism(_))
                || matches!(b, Bundle::Algebra(_)) && name.starts_with("dga");
            if mutant && top {
                assert!(!r.passed(), "{name}/{} should fail", b.name());
                assert!(r.checks.iter().any(|c| c.counterexample.is_some()));
            } else if !mutant {
                assert!(r.passed(), "{name}/{}\n{r}", b.name());
            }
        }
    }
}

#[test]
fn mutant_pairing_fails_at_the_same_arity_both_ways() {
    let (_, ip) = fixtures::frobenius_1t_mutant(Field::Rational);
    let r = check_inner_product(&ip, None);
    let direct = r.check("pairing relations").unwrap();
    let via_map: Vec<_> = r
        .checks
        .iter()
        .filter(|c| c.formulation == Formulation::UnsuspendedRelations && c.name != "pairing relations")
        .collect();
    assert!(!direct.passed);
    assert!(via_map.iter().any(|c| !c.passed && c.failing_arities == direct.failing_arities));
}

#[test]
fn dga_structures_have_no_higher_equations() {
    let alg = Arc::new(fixtures::exterior_1gen(Field::Rational));
    let r = check_ainfinity(&alg, None);
    assert!(r.passed());
    let rel = r.check("Stasheff relations").unwrap();
    assert!(rel.active_arities.iter().all(|&n| n <= 3), "{:?}", rel.active_arities);
    let m = Arc::new(fixtures::exterior_free_module(&alg));
    let r = check_bimodule(&m, None);
    assert!(r.passed());
    let rel = r.check("bimodule relations").unwrap();
    assert!(rel.active_arities.iter().all(|&n| n <= 3), "{:?}", rel.active_arities);
    let f = identity_morphism(&m);
    let r = check_bimodule_map(&f, None);
    assert!(r.passed());
    let rel = r.check("morphism relations").unwrap();
    assert!(rel.active_arities.iter().all(|&n| n <= 2), "{:?}", rel.active_arities);
}

#[test]
fn nonassociative_product_fails_at_arity_three() {
    let r = check_ainfinity(&fixtures::dga_nonassoc_mutant(Field::Rational), None);
    let rel = r.check("Stasheff relations").unwrap();
    assert_eq!(rel.failing_arities, vec![3]);
    assert_eq!(r.agreement, Some(true));
}

#[test]
fn non_chain_map_fails_only_the_differential_axiom() {
    let alg = Arc::new(fixtures::exterior_1gen(Field::Rational));
    let m = Arc::new(fixtures::augmentation_module(&alg));
    let r = check_bimodule_map(&fixtures::non_chain_map(&m), None);
    assert!(!r.passed());
    assert_eq!(r.check("morphism relations").unwrap().failing_arities, vec![1]);
}

/// Self bimodule of a DGA equals the DG-bimodule built from its product.
#[test]
fn dg_bimodule_of_product_is_self_bimodule() {
    let alg = Arc::new(fixtures::dual_numbers(Field::Rational));
    let m2 = alg.operation(2).unwrap();
    let d = AInfinityBimodule::empty_operation(&alg, alg.basis(), 0, 0);
    let relabel = |k, l| {
        let mut b = AInfinityBimodule::empty_operation(&alg, alg.basis(), k, l);
        for (x, v) in m2.entries() {
            b.insert(x.to_vec(), v.clone()).unwrap();
        }
        b
    };
    let dg = from_dg_bimodule("dg", alg.clone(), alg.basis().clone(), d, relabel(1, 0), relabel(0, 1)).unwrap();
    let canon = self_bimodule(&alg);
    let t = |b: &AInfinityBimodule| {
        b.operations()
            .filter(|m| !m.is_zero())
            .map(|m| (m.signature().to_string(), m.entries().map(|(x, v)| (x.to_vec(), v.clone())).collect::<Vec<_>>()))
            .collect::<Vec<_>>()
    };
    assert_eq!(t(&dg), t(&canon));
}

#[test]
fn self_bimodule_reuses_higher_operations() {
    let alg = Arc::new(fixtures::small_m3(Field::ModTwo));
    let b = self_bimodule(&alg);
    let m3 = alg.operation(3).unwrap();
    for (k, l) in [(2, 0), (1, 1), (0, 2)] {
        let bkl = b.operation(k, l).unwrap();
        assert!(m3.entries().eq(bkl.entries()));
    }
    assert!(check_bimodule(&b, None).passed());
}

/// Over the dual numbers, `b′_{1,0}(a, b*)(c) = b*(c·a)`.
#[test]
fn dual_self_bimodule_swaps_actions() {
    let alg = Arc::new(fixtures::dual_numbers(Field::Rational));
    let dual = dual_self_bimodule(&alg);
    let a = alg.basis();
    let m2 = alg.operation(2).unwrap();
    let left = dual.operation(1, 0).unwrap();
    for x in a.letters() {
        for y in a.letters() {
            for z in a.letters() {
                let expected = m2.apply(&[z, x]).and_then(|v| v.coefficient(y).cloned());
                let got = left.apply(&[x, y]).and_then(|v| v.coefficient(z).cloned());
                assert_eq!(got, expected, "({}, {}*)({})", a.label(x), a.label(y), a.label(z));
            }
        }
    }
    assert!(check_bimodule(&dual, None).passed());
}

/// The double dual matches the original under `m ↦ (−1)^{|m|} m**`, which
/// rescales `b_{k,l}(a, m, a′)` by `(−1)^{Σ|a| + k + l + 1}`.
#[test]
fn double_dual_is_the_original() {
    let alg = Arc::new(fixtures::exterior_1gen(Field::Rational));
    for m in [fixtures::exterior_free_module(&alg), fixtures::augmentation_module(&alg), self_bimodule(&alg)] {
        let dd = dual_bimodule(&dual_bimodule(&m));
        assert_eq!(**dd.basis(), **m.basis());
        for b in m.operations() {
            let Some((k, l)) = b.signature().mark_position().map(|k| (k, b.arity() - 1 - k)) else {
                unreachable!()
            };
            let twin = dd.operation(k, l).unwrap();
            assert_eq!(twin.len(), b.len());
            for (x, v) in b.entries() {
                let sa: i64 = x.iter().enumerate().filter(|&(p, _)| p != k).map(|(_, &a)| alg.basis().degree(a)).sum();
                let sign = Field::Rational.sign(sa + (k + l + 1) as i64);
                assert_eq!(twin.apply(x), Some(&v.scaled(&sign)));
            }
        }
    }
    let alg2 = Arc::new(fixtures::exterior_1gen(Field::ModTwo));
    let m2 = fixtures::exterior_free_module(&alg2);
    let dd = dual_bimodule(&dual_bimodule(&m2));
    for b in m2.operations() {
        let twin = dd.operations().find(|t| t.signature() == b.signature()).unwrap();
        assert!(b.entries().eq(twin.entries()), "{}", b.name());
    }
}

#[test]
fn duals_of_valid_fixtures_stay_valid() {
    for field in [Field::Rational, Field::ModTwo] {
        let alg = Arc::new(fixtures::exterior_1gen(field));
        for m in [fixtures::exterior_free_module(&alg), fixtures::augmentation_module(&alg), self_bimodule(&alg)] {
            assert!(check_bimodule(&m, None).passed());
            assert!(check_bimodule(&dual_bimodule(&m), None).passed(), "{} over {field}", m.name());
        }
        let (alg, _) = fixtures::frobenius_exterior2(field);
        assert!(check_bimodule(&dual_self_bimodule(&alg), None).passed());
    }
}

#[test]
fn pairing_and_map_forms_convert_both_ways() {
    let (alg, ip) = fixtures::frobenius_1t(Field::Rational);
    let f = ip.to_morphism();
    let one = alg.basis().index_of("1").unwrap();
    let t = alg.basis().index_of("t").unwrap();
    assert!(ip.value(0, 0, &[one, t]).is_one());
    assert!(ip.value(0, 0, &[one, one]).is_zero());
    let back = InfinityInnerProduct::from_morphism("back", &f).unwrap();
    assert_eq!(back.pairings().collect::<Vec<_>>(), ip.pairings().collect::<Vec<_>>());
    assert!(check_bimodule_map(&f, None).passed());
    assert!(ip.is_graded_symmetric() && ip.is_nondegenerate());

    let zero = InfinityInnerProduct::new("zero", alg.clone(), []).unwrap();
    assert!(zero.to_morphism().components().all(MultiMap::is_zero));

    let basis = ainf_core::GradedBasis::from_pairs("B", &[("e", 0), ("x", 1), ("y", -1)]).unwrap();
    for seed in 0..10 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = Arc::new(ainf_core::random::random_algebra(&mut rng, Field::Rational, &basis, &[2], Density::default()));
        let ip = random_inner_product(&mut rng, &alg, &[(0, 0), (1, 0), (0, 1)], Density::default());
        let back = InfinityInnerProduct::from_morphism("back", &ip.to_morphism()).unwrap();
        assert_eq!(back.pairings().collect::<Vec<_>>(), ip.pairings().collect::<Vec<_>>(), "seed {seed}");
    }
}

#[test]
fn vanishing_structure_pairs_vacuously() {
    let basis = ainf_core::GradedBasis::from_pairs("A", &[("1", 0), ("t", 0)]).unwrap();
    let alg = Arc::new(AInfinityAlgebra::new("zero", Field::Rational, basis, []).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ip = random_inner_product(&mut rng, &alg, &[(0, 0)], Density { fill: 1.0, bound: 3 });
    let r = check_inner_product(&ip, None);
    assert!(r.passed());
    assert!(r.check("pairing relations").unwrap().active_arities.is_empty());
}

#[test]
fn hochschild_of_the_differential_vanishes() {
    let (alg, _) = fixtures::frobenius_exterior2(Field::Rational);
    let d = alg.bar_differential();
    let dd = hochschild_differential(Coefficients::Algebra(&alg), &d, 4).unwrap();
    assert!(dd.is_zero());
}

#[test]
fn hochschild_squares_to_zero() {
    let (alg, ip) = fixtures::frobenius_1t(Field::Rational);
    let space = alg.bar_space();
    let dens = Density { fill: 0.7, bound: 3 };
    let map = ip.to_morphism();
    let m = map.source().clone();
    let n = map.target().clone();
    let mut nontrivial = 0;
    for seed in 0..6u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let degree = [0, -1, 1][seed as usize % 3];
        let f = random_view(&mut rng, ViewKind::OnTv, &space, None, degree, Field::Rational, &[1, 2], &[], dens);
        let df = hochschild_differential(Coefficients::Algebra(&alg), &f, 4).unwrap();
        let ddf = hochschild_differential(Coefficients::Algebra(&alg), &df, 4).unwrap();
        nontrivial += usize::from(!df.is_zero());
        assert!(ddf.is_zero(), "seed {seed}");

        let g = random_view(&mut rng, ViewKind::IntoMarked, &m.bar_space(), None, degree, Field::Rational, &[1, 2], &[], dens);
        let dg = hochschild_differential(Coefficients::Bimodule(&m), &g, 4).unwrap();
        let ddg = hochschild_differential(Coefficients::Bimodule(&m), &dg, 4).unwrap();
        assert!(ddg.is_zero(), "seed {seed}");

        // F♯ commutes with the differentials.
        let lhs = pushforward(&map, &dg, 4).unwrap();
        let pushed = pushforward(&map, &g, 4).unwrap();
        let rhs = hochschild_differential(Coefficients::Bimodule(&n), &pushed, 4).unwrap();
        assert_eq!(tables(&lhs), tables(&rhs), "seed {seed}");
        assert!(first_disagreement(&lhs, &rhs, &lhs.test_words(4)).is_none());
        nontrivial += usize::from(!dg.is_zero() && !lhs.is_zero());
    }
    assert!(nontrivial >= 6);
}

#[test]
fn pushforward_along_identity_is_identity() {
    let alg = Arc::new(fixtures::exterior_1gen(Field::Rational));
    let m = Arc::new(fixtures::exterior_free_module(&alg));
    let id = identity_morphism(&m);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = random_view(&mut rng, ViewKind::IntoMarked, &m.bar_space(), None, 0, Field::Rational, &[1, 2], &[], Density::default());
    let pushed = pushforward(&id, &g, 3).unwrap();
    assert_eq!(tables(&pushed), tables(&g));
    let zero = random_view(&mut rng, ViewKind::IntoMarked, &m.bar_space(), None, 0, Field::Rational, &[1], &[], Density { fill: 0.0, bound: 1 });
    assert!(pushforward(&id, &zero, 3).unwrap().is_zero());
}

#[test]
fn pushforward_refuses_invalid_maps() {
    let alg = Arc::new(fixtures::exterior_1gen(Field::Rational));
    let m = Arc::new(fixtures::augmentation_module(&alg));
    let bad = fixtures::non_chain_map(&m);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let g = random_view(&mut rng, ViewKind::IntoMarked, &m.bar_space(), None, 0, Field::Rational, &[1], &[], Density::default());
    assert!(pushforward(&bad, &g, 2).is_err());
}

/// For an ungraded algebra and an arity-one cochain `φ: A → M`, the
/// arity-two part of `δφ` is `±(a·φ(b) − φ(ab) + φ(a)·b)`.
#[test]
fn hochschild_matches_classical_formula() {
    let alg = Arc::new(fixtures::dual_numbers(Field::Rational));
    let m = Arc::new(self_bimodule(&alg));
    let a = alg.basis();
    let m2 = alg.operation(2).unwrap();
    let mut compared = 0;
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_view(&mut rng, ViewKind::IntoMarked, &m.bar_space(), None, 0, Field::Rational, &[1], &[], Density { fill: 0.8, bound: 4 });
        let dg = hochschild_differential(Coefficients::Bimodule(&m), &g, 3).unwrap();
        let phi = g.plain_components()[0].suspend_conjugate(Direction::ToUnsuspended).unwrap();
        let find = |n: usize| dg.plain_components().iter().find(|c| c.arity() == n);
        assert!(find(1).is_none() && find(3).is_none());
        let Some(d2) = find(2) else {
            continue;
        };
        let d2 = d2.suspend_conjugate(Direction::ToUnsuspended).unwrap();
        let apply = |map: &MultiMap, x: &[u32]| map.apply(x).cloned().unwrap_or_else(Vector::zero);
        let mut signs = std::collections::BTreeSet::new();
        for x in a.letters() {
            for y in a.letters() {
                let mut classical = Vector::zero();
                let one = Field::Rational.one();
                for (z, c) in apply(&phi, &[y]).iter() {
                    classical.add_scaled(&apply(m2, &[x, z]), c);
                }
                for (z, c) in apply(m2, &[x, y]).iter() {
                    classical.add_scaled(&apply(&phi, &[z]), &(-c.clone()));
                }
                for (z, c) in apply(&phi, &[x]).iter() {
                    classical.add_scaled(&apply(m2, &[z, y]), c);
                }
                let got = apply(&d2, &[x, y]);
                compared += usize::from(!got.is_zero());
                if got == classical && !got.is_zero() {
                    signs.insert(1);
                } else if got == classical.scaled(&-one) && !got.is_zero() {
                    signs.insert(-1);
                } else {
                    assert_eq!(got, classical, "seed {seed}");
                }
            }
        }
        assert!(signs.len() <= 1, "sign is not global");
    }
    assert!(compared > 0);
}

/// Exhaustive search over all degree-compatible `m_2`, `m_3` on
/// `{x (0), y (1)}` over the two-element field: the smallest valid
/// structure with `m_3 ≠ 0` is the single entry `m_3(x,x,x) = y`.
#[test]
fn smallest_m3_structure_by_search() {
    let field = Field::ModTwo;
    let basis = ainf_core::GradedBasis::from_pairs("A", &[("x", 0), ("y", 1)]).unwrap();
    let m2_slots = [(["x", "x"], "x"), (["x", "y"], "y"), (["y", "x"], "y")];
    let mut best: Option<(usize, AInfinityAlgebra)> = None;
    for bits in 0u32..16 {
        let mut m2 = AInfinityAlgebra::empty_operation(field, &basis, 2);
        for (i, (inputs, out)) in m2_slots.iter().enumerate() {
            if bits & (1 << i) != 0 {
                m2.set(inputs, &[(out, field.one())]).unwrap();
            }
        }
        let mut m3 = AInfinityAlgebra::empty_operation(field, &basis, 3);
        if bits & 8 != 0 {
            m3.set(&["x", "x", "x"], &[("y", field.one())]).unwrap();
        }
        let size = bits.count_ones() as usize;
        let alg = AInfinityAlgebra::new("candidate", field, basis.clone(), [m2, m3]).unwrap();
        let r = check_ainfinity(&alg, None);
        assert_eq!(r.agreement, Some(true));
        if bits & 8 != 0 && r.passed() && best.as_ref().is_none_or(|(s, _)| size < *s) {
            best = Some((size, alg));
        }
    }
    let (size, found) = best.expect("some m3 structure is valid");
    assert_eq!(size, 1);
    let shipped = fixtures::small_m3(field);
    assert!(found.operation(3).unwrap().entries().eq(shipped.operation(3).unwrap().entries()));
    assert!(found.operation(2).is_none_or(MultiMap::is_zero));
    assert!(check_ainfinity(&shipped, None).passed());
}

#[test]
fn dga_constructor_rejects_wrong_degrees() {
    let basis = ainf_core::GradedBasis::from_pairs("A", &[("x", 0)]).unwrap();
    let d = AInfinityAlgebra::empty_operation(Field::Rational, &basis, 2);
    let m = AInfinityAlgebra::empty_operation(Field::Rational, &basis, 2);
    assert!(from_dga("bad", basis, d, m).is_err());
}
