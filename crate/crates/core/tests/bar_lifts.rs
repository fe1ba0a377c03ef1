//! Hand-enumerated values of the four lifting constructions on short words.

use std::sync::Arc;

use ainf_core::bar::{
    comultiply, comultiply_marked, lift_coderivation, lift_comodule_morphism, lift_marked_coderivation,
    lift_module_differential,
};
use ainf_core::{BarSpace, Field, FormalSum, GradedBasis, MultiMap, Signature, Word};

const Q: Field = Field::Rational;

// Suspended degrees: p 1, q 0; w 1, n 2; y 1, y2 2.
fn a() -> Arc<GradedBasis> {
    GradedBasis::from_pairs("A", &[("p", 0), ("q", -1)]).unwrap()
}

fn m() -> Arc<GradedBasis> {
    GradedBasis::from_pairs("M", &[("w", 0), ("n", 1)]).unwrap()
}

fn n() -> Arc<GradedBasis> {
    GradedBasis::from_pairs("N", &[("y", 0), ("y2", 1)]).unwrap()
}

fn space() -> BarSpace {
    BarSpace::suspended(a(), Some(m()))
}

fn map(sig: Signature, degree: i64, target: Arc<GradedBasis>, entries: &[(&[&str], &str)]) -> MultiMap {
    let mut f = MultiMap::new("f", sig, degree, true, Q, a(), Some(m()), target).unwrap();
    for (inputs, out) in entries {
        f.set(inputs, &[(out, Q.one())]).unwrap();
    }
    f
}

fn sum(terms: &[(Word, i64)]) -> FormalSum {
    let mut s = FormalSum::zero();
    for (w, c) in terms {
        s.add_term(w.clone(), &Q.from_int(*c));
    }
    s
}

const P: u32 = 0;
const QQ: u32 = 1;
const W: u32 = 0;
const NN: u32 = 1;

#[test]
fn comultiplication_counts() {
    assert_eq!(comultiply(&Word::unit()).unwrap().len(), 1);
    assert_eq!(comultiply(&Word::plain(vec![P, P, QQ])).unwrap().len(), 4);
    // (v1, w): three splittings, the full word appearing once on each side
    // collapses to one term each.
    assert_eq!(comultiply_marked(&Word::marked(vec![P, W], 1)).unwrap().len(), 3);
    assert_eq!(comultiply_marked(&Word::marked(vec![W, P], 0)).unwrap().len(), 3);
    assert!(comultiply(&Word::marked(vec![W], 0)).is_err());
    assert!(comultiply_marked(&Word::plain(vec![P])).is_err());
}

#[test]
fn unary_coderivation_on_four_letters() {
    let d = map(Signature::plain(1), -1, a(), &[(&["p"], "q")]);
    let w = Word::plain(vec![P; 4]);
    let expected = sum(&[
        (Word::plain(vec![QQ, P, P, P]), 1),
        (Word::plain(vec![P, QQ, P, P]), -1),
        (Word::plain(vec![P, P, QQ, P]), 1),
        (Word::plain(vec![P, P, P, QQ]), -1),
    ]);
    assert_eq!(lift_coderivation(&d, &space(), &w), expected);
}

#[test]
fn coderivation_into_module() {
    let s = space();
    let r1 = map(Signature::into_marked(1), 0, m(), &[(&["p"], "w")]);
    assert_eq!(
        lift_marked_coderivation(&r1, &s, &Word::plain(vec![P])),
        sum(&[(Word::marked(vec![W], 0), 1)])
    );
    let r2 = map(Signature::into_marked(2), -1, m(), &[(&["p", "p"], "w")]);
    assert_eq!(
        lift_marked_coderivation(&r2, &s, &Word::plain(vec![P, P, P])),
        sum(&[(Word::marked(vec![W, P], 0), 1), (Word::marked(vec![P, W], 1), -1)])
    );
    assert!(lift_marked_coderivation(&r2, &s, &Word::plain(vec![P])).is_zero());
}

#[test]
fn module_differential_terms() {
    let s = space();
    let psi1 = map(Signature::plain(1), -1, a(), &[(&["p"], "q")]);
    let rho00 = map(Signature::marked(0, 0), -1, m(), &[(&["n"], "w")]);
    let rho10 = map(Signature::marked(1, 0), -1, m(), &[(&["p", "n"], "n")]);
    let got = lift_module_differential(&[psi1], &[rho00.clone(), rho10], &s, &Word::marked(vec![P, NN], 1));
    let expected = sum(&[
        (Word::marked(vec![NN], 0), 1),
        (Word::marked(vec![QQ, NN], 1), 1),
        (Word::marked(vec![P, W], 1), -1),
    ]);
    assert_eq!(got, expected);

    // Only ρ_{0,0} fits around the mark; ψ_2 has no room on either side.
    let psi2 = map(Signature::plain(2), -1, a(), &[(&["p", "p"], "p")]);
    let got = lift_module_differential(&[psi2], std::slice::from_ref(&rho00), &s, &Word::marked(vec![P, NN, P], 1));
    assert_eq!(got, sum(&[(Word::marked(vec![P, W, P], 1), -1)]));

    let got = lift_module_differential(&[], &[rho00], &s, &Word::marked(vec![NN], 0));
    assert_eq!(got, sum(&[(Word::marked(vec![W], 0), 1)]));
}

#[test]
fn comodule_map_terms() {
    let s = space();
    let f00 = map(Signature::marked(0, 0), 1, n(), &[(&["w"], "y2")]);
    let got = lift_comodule_morphism(std::slice::from_ref(&f00), &s, &Word::marked(vec![P, W, P], 1));
    assert_eq!(got, sum(&[(Word::marked(vec![P, 1, P], 1), -1)]));
    assert_eq!(
        lift_comodule_morphism(&[f00], &s, &Word::marked(vec![W], 0)),
        sum(&[(Word::marked(vec![1], 0), 1)])
    );
    let f11 = map(Signature::marked(1, 1), -1, n(), &[(&["p", "w", "p"], "y2")]);
    assert_eq!(
        lift_comodule_morphism(std::slice::from_ref(&f11), &s, &Word::marked(vec![P, W, P], 1)),
        sum(&[(Word::marked(vec![1], 0), 1)])
    );
    assert!(lift_comodule_morphism(&[f11], &s, &Word::marked(vec![W, P], 0)).is_zero());
}
