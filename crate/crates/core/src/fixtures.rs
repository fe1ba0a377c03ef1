//! Small hand-made structures used as examples and test fixtures.

use std::sync::Arc;

use crate::basis::GradedBasis;
use crate::error::Result;
use crate::format::{Bundle, StructureFile};
use crate::multimap::MultiMap;
use crate::scalar::Field;
use crate::structures::{
    from_dg_bimodule, from_dg_bimodule_map, from_dga, identity_morphism, AInfinityAlgebra, AInfinityBimodule, BimoduleMorphism,
    InfinityInnerProduct, Pairing,
};

/// Products given as `(a, b, [(c, coeff)])`.
type ProductTable<'a> = &'a [(&'a str, &'a str, &'a [(&'a str, i64)])];

fn product(field: Field, basis: &Arc<GradedBasis>, table: ProductTable<'_>) -> Result<MultiMap> {
    let mut m = AInfinityAlgebra::empty_operation(field, basis, 2);
    for (a, b, out) in table {
        let out: Vec<_> = out.iter().map(|(c, k)| (*c, field.from_int(*k))).collect();
        m.set(&[a, b], &out)?;
    }
    Ok(m)
}

fn dga(name: &str, field: Field, basis: Arc<GradedBasis>, table: ProductTable<'_>) -> Result<AInfinityAlgebra> {
    let d = AInfinityAlgebra::empty_operation(field, &basis, 1);
    let m = product(field, &basis, table)?;
    from_dga(name, basis, d, m)
}

/// `Λ(x)` with `|x| = −1`: unital, `x·x = 0`, zero differential.
pub fn exterior_1gen(field: Field) -> AInfinityAlgebra {
    let basis = GradedBasis::from_pairs("A", &[("1", 0), ("x", -1)]).expect("static");
    dga(
        "exterior-1gen",
        field,
        basis,
        &[("1", "1", &[("1", 1)]), ("1", "x", &[("x", 1)]), ("x", "1", &[("x", 1)])],
    )
    .expect("static")
}

/// The dual numbers `{1, t}`, `t·t = 0`, all in degree 0.
pub fn dual_numbers(field: Field) -> AInfinityAlgebra {
    let basis = GradedBasis::from_pairs("A", &[("1", 0), ("t", 0)]).expect("static");
    dga(
        "dual-numbers",
        field,
        basis,
        &[("1", "1", &[("1", 1)]), ("1", "t", &[("t", 1)]), ("t", "1", &[("t", 1)])],
    )
    .expect("static")
}

fn pairing_00(field: Field, basis: &GradedBasis, values: &[(&str, &str, i64)]) -> Pairing {
    let mut p = Pairing::new(0, 0);
    for (a, b, c) in values {
        let x = vec![basis.index_of(a).expect("static"), basis.index_of(b).expect("static")];
        p.insert(basis, x, field.from_int(*c)).expect("static");
    }
    p
}

/// The dual numbers with the Frobenius pairing `⟨1,t⟩ = ⟨t,1⟩ = 1` and no
/// higher pairings.
pub fn frobenius_1t(field: Field) -> (Arc<AInfinityAlgebra>, InfinityInnerProduct) {
    let alg = Arc::new(dual_numbers(field));
    let p = pairing_00(field, alg.basis(), &[("1", "t", 1), ("t", "1", 1)]);
    let ip = InfinityInnerProduct::new("frobenius-1t", alg.clone(), [p]).expect("static");
    (alg, ip)
}

/// The dual numbers with the pairing `⟨1,t⟩ = 1, ⟨t,1⟩ = 0`, which is not
/// invariant.
pub fn frobenius_1t_mutant(field: Field) -> (Arc<AInfinityAlgebra>, InfinityInnerProduct) {
    let alg = Arc::new(dual_numbers(field));
    let p = pairing_00(field, alg.basis(), &[("1", "t", 1)]);
    let ip = InfinityInnerProduct::new("frobenius-1t-mutant", alg.clone(), [p]).expect("static");
    (alg, ip)
}

/// `Λ(x, y)` with `|x| = 1`, `|y| = −1`, graded commutative, with an
/// invariant pairing on the top class `xy`.
pub fn frobenius_exterior2(field: Field) -> (Arc<AInfinityAlgebra>, InfinityInnerProduct) {
    let basis = GradedBasis::from_pairs("A", &[("1", 0), ("x", 1), ("y", -1), ("xy", 0)]).expect("static");
    let alg = Arc::new(
        dga(
            "exterior2",
            field,
            basis,
            &[
                ("1", "1", &[("1", 1)]),
                ("1", "x", &[("x", 1)]),
                ("1", "y", &[("y", 1)]),
                ("1", "xy", &[("xy", 1)]),
                ("x", "1", &[("x", 1)]),
                ("y", "1", &[("y", 1)]),
                ("xy", "1", &[("xy", 1)]),
                ("x", "y", &[("xy", 1)]),
                ("y", "x", &[("xy", -1)]),
            ],
        )
        .expect("static"),
    );
    let p = pairing_00(
        field,
        alg.basis(),
        &[("1", "xy", 1), ("xy", "1", 1), ("x", "y", -1), ("y", "x", 1)],
    );
    let ip = InfinityInnerProduct::new("frobenius-exterior2", alg.clone(), [p]).expect("static");
    (alg, ip)
}

/// A non-associative product on `{x, y}` (degree 0): `x·x = y`, `x·y = x`.
pub fn dga_nonassoc_mutant(field: Field) -> AInfinityAlgebra {
    let basis = GradedBasis::from_pairs("A", &[("x", 0), ("y", 0)]).expect("static");
    dga(
        "dga-nonassoc-mutant",
        field,
        basis,
        &[("x", "x", &[("y", 1)]), ("x", "y", &[("x", 1)])],
    )
    .expect("static")
}

/// `{x, y}` with `|x| = 0`, `|y| = 1` and the single operation
/// `m_3(x, x, x) = y`.
pub fn small_m3(field: Field) -> AInfinityAlgebra {
    let basis = GradedBasis::from_pairs("A", &[("x", 0), ("y", 1)]).expect("static");
    let mut m3 = AInfinityAlgebra::empty_operation(field, &basis, 3);
    m3.set(&["x", "x", "x"], &[("y", field.one())]).expect("static");
    AInfinityAlgebra::new("small-m3", field, basis, [m3]).expect("static")
}

/// The free rank-one module `Λ(x)·g` with `|g| = 1`, acted on from both
/// sides by multiplication.
pub fn exterior_free_module(alg: &Arc<AInfinityAlgebra>) -> AInfinityBimodule {
    let field = alg.field();
    let basis = GradedBasis::from_pairs("M", &[("g", 1), ("xg", 0)]).expect("static");
    let d = AInfinityBimodule::empty_operation(alg, &basis, 0, 0);
    let mut left = AInfinityBimodule::empty_operation(alg, &basis, 1, 0);
    let mut right = AInfinityBimodule::empty_operation(alg, &basis, 0, 1);
    let one = field.one();
    for (a, m, out) in [("1", "g", "g"), ("1", "xg", "xg"), ("x", "g", "xg")] {
        left.set(&[a, m], &[(out, one.clone())]).expect("static");
    }
    for (m, a, out) in [("g", "1", "g"), ("xg", "1", "xg"), ("g", "x", "xg")] {
        right.set(&[m, a], &[(out, one.clone())]).expect("static");
    }
    from_dg_bimodule("exterior-free-module", alg.clone(), basis, d, left, right).expect("static")
}

/// `{g, h}` (degrees 1, 0) with `∂g = h`, the unit acting as identity and
/// `x` acting by zero.
pub fn augmentation_module(alg: &Arc<AInfinityAlgebra>) -> AInfinityBimodule {
    let field = alg.field();
    let basis = GradedBasis::from_pairs("M", &[("g", 1), ("h", 0)]).expect("static");
    let mut d = AInfinityBimodule::empty_operation(alg, &basis, 0, 0);
    d.set(&["g"], &[("h", field.one())]).expect("static");
    let mut left = AInfinityBimodule::empty_operation(alg, &basis, 1, 0);
    let mut right = AInfinityBimodule::empty_operation(alg, &basis, 0, 1);
    for m in ["g", "h"] {
        left.set(&["1", m], &[(m, field.one())]).expect("static");
        right.set(&[m, "1"], &[(m, field.one())]).expect("static");
    }
    from_dg_bimodule("augmentation-module", alg.clone(), basis, d, left, right).expect("static")
}

/// The degree-0 map `g ↦ g, h ↦ 0` on the augmentation module, which does
/// not commute with `∂`.
pub fn non_chain_map(module: &Arc<AInfinityBimodule>) -> BimoduleMorphism {
    let mut f = BimoduleMorphism::empty_component(module, module.basis(), 0, 0);
    f.set(&["g"], &[("g", module.field().one())]).expect("static");
    from_dg_bimodule_map("non-chain-map", module.clone(), module.clone(), f).expect("static")
}

/// Names of the examples shipped on the command line.
pub const SHIPPED: &[&str] = &[
    "exterior-1gen",
    "frobenius-1t",
    "dga-nonassoc-mutant",
    "small-m3-mod2",
    "frobenius-exterior2",
    "frobenius-1t-mutant",
    "exterior-free-module",
    "non-chain-map",
];

/// Shipped examples that are deliberately invalid.
pub const MUTANTS: &[&str] = &["dga-nonassoc-mutant", "frobenius-1t-mutant", "non-chain-map"];

/// An inner product together with everything its bimodule-map form refers
/// to: the algebra, `A` and `A*` as bimodules, and the map `A → A*`.
fn pairing_bundles(alg: Arc<AInfinityAlgebra>, ip: InfinityInnerProduct) -> Vec<Bundle> {
    let map = ip.to_morphism();
    vec![
        Bundle::Algebra(alg),
        Bundle::Bimodule(map.source().clone()),
        Bundle::Bimodule(map.target().clone()),
        Bundle::Morphism(Arc::new(map)),
        Bundle::InnerProduct(Arc::new(ip)),
    ]
}

/// The shipped example called `name`, as a structure file over the
/// rationals.
pub fn example(name: &str) -> Option<StructureFile> {
    example_over(name, Field::Rational)
}

/// The shipped example called `name` with coefficients in `q`. The `m_3`
/// example is only defined mod 2 and ignores `q`.
pub fn example_over(name: &str, q: Field) -> Option<StructureFile> {
    let bundles = match name {
        "exterior-1gen" => vec![Bundle::Algebra(Arc::new(exterior_1gen(q)))],
        "frobenius-1t" => {
            let (alg, ip) = frobenius_1t(q);
            pairing_bundles(alg, ip)
        }
        "dga-nonassoc-mutant" => vec![Bundle::Algebra(Arc::new(dga_nonassoc_mutant(q)))],
        "small-m3-mod2" => vec![Bundle::Algebra(Arc::new(small_m3(Field::ModTwo)))],
        "frobenius-exterior2" => {
            let (alg, ip) = frobenius_exterior2(q);
            pairing_bundles(alg, ip)
        }
        "frobenius-1t-mutant" => {
            let (alg, ip) = frobenius_1t_mutant(q);
            pairing_bundles(alg, ip)
        }
        "exterior-free-module" => {
            let alg = Arc::new(exterior_1gen(q));
            let m = Arc::new(exterior_free_module(&alg));
            let id = identity_morphism(&m);
            vec![Bundle::Algebra(alg), Bundle::Bimodule(m), Bundle::Morphism(Arc::new(id))]
        }
        "non-chain-map" => {
            let alg = Arc::new(exterior_1gen(q));
            let m = Arc::new(augmentation_module(&alg));
            let f = non_chain_map(&m);
            vec![Bundle::Algebra(alg), Bundle::Bimodule(m), Bundle::Morphism(Arc::new(f))]
        }
        _ => return None,
    };
    Some(StructureFile::new(bundles).expect("nonempty"))
}
