use ainf_core::diagram::{
    associahedron_oracle, check_d_squared, enumerate_faces, naturality_check, poset_isomorphic, Diagram,
    DEFAULT_BOUND,
};
use ainf_core::fixtures;
use ainf_core::{check_inner_product, Field};

fn shapes(max: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=max).flat_map(move |n| (0..=n).map(move |k| (k, n - k)))
}

#[test]
fn d_squared_vanishes_up_to_four() {
    for (k, l) in shapes(4) {
        let r = check_d_squared(k, l, DEFAULT_BOUND).unwrap();
        assert!(r.passed(), "({k},{l}): {:?}", r.failures);
        assert_eq!(r.expanded_terms, 2 * (r.different_outputs + r.same_output));
        if k + l >= 2 {
            assert!(r.different_outputs > 0 && r.same_output > 0, "({k},{l})");
        }
    }
}

#[test]
fn euler_characteristic_is_one() {
    for (k, l) in shapes(4) {
        let fc = enumerate_faces(k, l, DEFAULT_BOUND).unwrap();
        assert_eq!(fc.euler(), 1, "({k},{l})");
        assert_eq!(*fc.f_vector().last().unwrap(), 1);
    }
}

#[test]
fn mirror_shapes_are_isomorphic() {
    for (k, l) in shapes(4) {
        let a = enumerate_faces(k, l, DEFAULT_BOUND).unwrap().poset();
        let b = enumerate_faces(l, k, DEFAULT_BOUND).unwrap().poset();
        let map = poset_isomorphic(&a, &b).unwrap_or_else(|| panic!("({k},{l})"));
        assert!(a.is_isomorphism(&b, &map));
    }
}

#[test]
fn pentagon_and_hexagon_differ() {
    let a = enumerate_faces(2, 0, DEFAULT_BOUND).unwrap().poset();
    let b = enumerate_faces(1, 1, DEFAULT_BOUND).unwrap().poset();
    assert!(poset_isomorphic(&a, &b).is_none());
}

#[test]
fn left_shapes_are_associahedra() {
    for n in 1..=4 {
        let a = enumerate_faces(n, 0, DEFAULT_BOUND).unwrap().poset();
        let b = associahedron_oracle(n);
        let map = poset_isomorphic(&a, &b).unwrap_or_else(|| panic!("n = {n}"));
        assert!(a.is_isomorphism(&b, &map));
    }
}

#[test]
fn naturality_on_frobenius_fixtures() {
    for (alg, ip) in [fixtures::frobenius_1t(Field::ModTwo), fixtures::frobenius_exterior2(Field::ModTwo)] {
        assert!(check_inner_product(&ip, None).passed());
        for (k, l) in shapes(3) {
            let r = naturality_check(k, l, &alg, &ip).unwrap();
            assert!(r.passed(), "{}", r);
        }
    }
}

#[test]
fn naturality_detects_invalid_pairing() {
    let (alg, ip) = fixtures::frobenius_1t_mutant(Field::ModTwo);
    let failed = shapes(2).any(|(k, l)| !naturality_check(k, l, &alg, &ip).unwrap().passed());
    assert!(failed);
}

#[test]
fn zero_pairing_is_natural() {
    let (alg, _) = fixtures::frobenius_1t(Field::ModTwo);
    let zero = ainf_core::InfinityInnerProduct::new("zero", alg.clone(), []).unwrap();
    assert!(naturality_check(2, 1, &alg, &zero).unwrap().passed());
}

#[test]
fn bare_boundaries_match_hand_lists() {
    let sum = |s: &str| -> Vec<String> {
        let (d, _) = Diagram::parse(s).unwrap();
        d.differential().keys().map(|t| t.to_string()).collect()
    };
    assert_eq!(sum("<a,b,c>_{1,0}"), ["<b,m_2(c,a)>_{0,0}", "<m_2(a,b),c>_{0,0}"]);
    assert_eq!(sum("<a,b,c>_{0,1}"), ["<a,m_2(b,c)>_{0,0}", "<m_2(a,b),c>_{0,0}"]);
    assert!(sum("<a,b>_{0,0}").is_empty());
}
