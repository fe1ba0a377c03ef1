use std::sync::Arc;

use ainf_core::multimap::{Direction, Factor};
use ainf_core::random::{fill_map, Density};
use ainf_core::{tensor_apply, BarSpace, Field, FormalSum, GradedBasis, MultiMap, Scalar, Signature, Vector, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn basis() -> Arc<GradedBasis> {
    GradedBasis::from_pairs("V", &[("a", 0), ("b", 1), ("c", -1), ("d", 2)]).unwrap()
}

fn random_map(seed: u64, arity: usize, degree: i64, field: Field) -> MultiMap {
    let b = basis();
    let mut m = MultiMap::new(format!("g{arity}"), Signature::plain(arity), degree, false, field, b.clone(), None, b)
        .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    fill_map(&mut rng, &mut m, Density { fill: 0.6, bound: 3 });
    m
}

fn layout<'a>(len: usize, at: &[(usize, &'a MultiMap)]) -> Vec<Factor<'a>> {
    let mut out = Vec::new();
    let mut pos = 0;
    for &(start, m) in at {
        while pos < start {
            out.push(Factor::Id);
            pos += 1;
        }
        out.push(Factor::Map(m));
        pos += m.arity();
    }
    while pos < len {
        out.push(Factor::Id);
        pos += 1;
    }
    out
}

fn apply(field: Field, space: &BarSpace, factors: &[Factor<'_>], sum: &FormalSum) -> FormalSum {
    sum.map_linear(|w| tensor_apply(field, factors, space, w).unwrap())
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..20).prop_map(|(p, q)| Scalar::Q(BigRational::new(BigInt::from(p), BigInt::from(q))))
}

fn vector() -> impl Strategy<Value = Vector> {
    prop::collection::vec((0u32..6, rational()), 0..6).prop_map(|terms| {
        let mut v = Vector::zero();
        for (i, c) in terms {
            v.add_term(i, &c);
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vector_arithmetic_is_exact(x in vector(), y in vector()) {
        prop_assert_eq!(x.add(&y).sub(&y), x.clone());
        prop_assert!(x.sub(&x).is_zero());
        prop_assert!(x.iter().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn mod_two_arithmetic(a in any::<bool>(), b in any::<bool>()) {
        let (x, y) = (Scalar::F2(a), Scalar::F2(b));
        prop_assert_eq!(&(&x + &y) + &y, x.clone());
        prop_assert!((&Scalar::F2(true) + &Scalar::F2(true)).is_zero());
    }

    /// `(φ ⊗ ψ) = (φ ⊗ id)(id ⊗ ψ) = (−1)^{|φ||ψ|} (id ⊗ ψ)(φ ⊗ id)` on
    /// every basis word up to length 4.
    #[test]
    fn interchange_rule(
        seed in any::<u64>(),
        a in 1usize..3,
        b in 1usize..3,
        da in -2i64..3,
        db in -2i64..3,
        rational in any::<bool>(),
    ) {
        let field = if rational { Field::Rational } else { Field::ModTwo };
        let phi = random_map(seed, a, da, field);
        let psi = random_map(seed.wrapping_add(1), b, db, field);
        let space = BarSpace::unsuspended(basis(), None);
        for len in a + b..=4 {
            for i in 0..=len - a - b {
                for j in i + a..=len - b {
                    let both = layout(len, &[(i, &phi), (j, &psi)]);
                    let psi_first = layout(len, &[(j, &psi)]);
                    let phi_after = layout(len - b + 1, &[(i, &phi)]);
                    let phi_first = layout(len, &[(i, &phi)]);
                    let psi_after = layout(len - a + 1, &[(j - a + 1, &psi)]);
                    let sign = field.sign(da * db);
                    for w in space.words_of_length(len, false) {
                        let unit = FormalSum::single(w.clone(), field.one());
                        let direct = apply(field, &space, &both, &unit);
                        let composed = apply(field, &space, &phi_after, &apply(field, &space, &psi_first, &unit));
                        let swapped = apply(field, &space, &psi_after, &apply(field, &space, &phi_first, &unit));
                        prop_assert_eq!(&direct, &composed);
                        prop_assert_eq!(direct, swapped.scaled(&sign));
                    }
                }
            }
        }
    }

    #[test]
    fn suspension_round_trip(seed in any::<u64>(), arity in 1usize..4, degree in -2i64..3, rational in any::<bool>()) {
        let field = if rational { Field::Rational } else { Field::ModTwo };
        let m = random_map(seed, arity, degree, field);
        let up = m.suspend_conjugate(Direction::ToSuspended).unwrap();
        prop_assert_eq!(up.degree(), degree + 1 - arity as i64);
        prop_assert!(up.audit_degrees().is_ok());
        let back = up.suspend_conjugate(Direction::ToUnsuspended).unwrap();
        prop_assert_eq!(back, m.clone());
        prop_assert!(m.suspend_conjugate(Direction::ToUnsuspended).is_err());
    }
}

#[test]
fn identity_factors_fix_words() {
    let space = BarSpace::unsuspended(basis(), None);
    let w = Word::plain(vec![1, 2, 3]);
    let out = tensor_apply(Field::Rational, &[Factor::Id; 3], &space, &w).unwrap();
    assert_eq!(out, FormalSum::single(w, Field::Rational.one()));
    assert!(tensor_apply(Field::Rational, &[Factor::Id; 2], &space, &Word::plain(vec![0])).is_err());
}
