//! For arbitrary (invalid) components the relation systems and the bar-side
//! identities must agree tuple by tuple: this pins every sign convention.

use std::sync::Arc;

use ainf_core::bar::TruncationPolicy;
use ainf_core::random::{random_algebra, random_bimodule, random_inner_product, random_morphism, Density};
use ainf_core::structures::{check_ainfinity, check_bimodule, check_bimodule_map, check_inner_product};
use ainf_core::{Field, GradedBasis};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn algebra_basis() -> Arc<GradedBasis> {
    GradedBasis::from_pairs("A", &[("e", 0), ("x", 1), ("y", -1), ("z", 2)]).unwrap()
}

fn module_basis() -> Arc<GradedBasis> {
    GradedBasis::from_pairs("M", &[("u", 0), ("v", 1), ("w", -1)]).unwrap()
}

#[test]
fn algebra_relations_match_bar_square() {
    for seed in 0..6 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for field in [Field::Rational, Field::ModTwo] {
            let alg = random_algebra(&mut rng, field, &algebra_basis(), &[1, 2, 3], Density::default());
            let r = check_ainfinity(&alg, Some(TruncationPolicy::new(4)));
            assert_eq!(r.agreement, Some(true), "seed {seed}\n{r}");
        }
    }
}

#[test]
fn bimodule_relations_match_bar_square() {
    for seed in 0..6 {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
        let alg = Arc::new(random_algebra(&mut rng, Field::Rational, &algebra_basis(), &[1, 2, 3], Density::default()));
        let shapes = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)];
        let bim = random_bimodule(&mut rng, &alg, &module_basis(), &shapes, Density::default());
        let r = check_bimodule(&bim, Some(TruncationPolicy::new(4)));
        assert_eq!(r.agreement, Some(true), "seed {seed}\n{r}");
    }
}

#[test]
fn morphism_relations_match_bar_identity() {
    for seed in 0..6 {
        let mut rng = ChaCha8Rng::seed_from_u64(200 + seed);
        let d = Density::default();
        let alg = Arc::new(random_algebra(&mut rng, Field::Rational, &algebra_basis(), &[1, 2, 3], d));
        let shapes = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)];
        let m = Arc::new(random_bimodule(&mut rng, &alg, &module_basis(), &shapes, d));
        let n_basis = GradedBasis::from_pairs("N", &[("p", 0), ("q", 1), ("r", 2)]).unwrap();
        let n = Arc::new(random_bimodule(&mut rng, &alg, &n_basis, &shapes, d));
        let f = random_morphism(&mut rng, &m, &n, &shapes, d);
        let r = check_bimodule_map(&f, Some(TruncationPolicy::new(4)));
        assert_eq!(r.agreement, Some(true), "seed {seed}\n{r}");
    }
}

#[test]
fn pairing_relations_match_morphism_relations() {
    for seed in 0..6 {
        let mut rng = ChaCha8Rng::seed_from_u64(300 + seed);
        let d = Density::default();
        let alg = Arc::new(random_algebra(&mut rng, Field::Rational, &algebra_basis(), &[1, 2, 3], d));
        let ip = random_inner_product(&mut rng, &alg, &[(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)], d);
        let r = check_inner_product(&ip, Some(TruncationPolicy::new(4)));
        assert_eq!(r.agreement, Some(true), "seed {seed}\n{r}");
    }
}

#[test]
fn random_structures_are_mostly_invalid() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let alg = random_algebra(&mut rng, Field::Rational, &algebra_basis(), &[1, 2, 3], Density::default());
    let r = check_ainfinity(&alg, Some(TruncationPolicy::new(4)));
    println!("{r}");
    assert!(!r.passed());
    let alg = Arc::new(alg);
    let ip = random_inner_product(&mut rng, &alg, &[(0, 0), (1, 0), (0, 1)], Density::default());
    let r = check_inner_product(&ip, Some(TruncationPolicy::new(3)));
    println!("{r}");
    assert!(!r.passed());
}
