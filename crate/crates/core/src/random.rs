//! Seeded random component families, homogeneous by construction. They are
//! generally *not* valid structures; they exercise identities that hold for
//! arbitrary components (lift/project round trips, sign agreement between
//! formulations, `δ² = 0`).

use std::sync::Arc;

use rand::Rng;

use crate::bar::{CoderivationView, ViewKind};
use crate::basis::{GradedBasis, Vector};
use crate::multimap::{MultiMap, Signature};
use crate::scalar::{Field, Scalar};
use crate::structures::{AInfinityAlgebra, AInfinityBimodule, BimoduleMorphism, InfinityInnerProduct, Pairing};
use crate::word::{BarSpace, for_each_tuple};

/// Shape of random tables.
#[derive(Debug, Clone, Copy)]
pub struct Density {
    /// Probability that a degree-compatible (input, output) pair is nonzero.
    pub fill: f64,
    /// Coefficients are drawn from `-bound..=bound` without zero.
    pub bound: i64,
}

impl Default for Density {
    fn default() -> Self {
        Density { fill: 0.5, bound: 2 }
    }
}

fn coefficient<R: Rng>(rng: &mut R, field: Field, d: Density) -> Scalar {
    match field {
        Field::ModTwo => field.one(),
        Field::Rational => {
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-d.bound..=d.bound);
            }
            field.from_int(c)
        }
    }
}

/// Fills an empty map with random homogeneous entries.
pub fn fill_map<R: Rng>(rng: &mut R, map: &mut MultiMap, d: Density) {
    let sizes: Vec<usize> = (0..map.arity()).map(|p| map.input_basis(p).len()).collect();
    let mut tuples = Vec::new();
    for_each_tuple(&sizes, |t| tuples.push(t.to_vec()));
    let shift = i64::from(map.is_suspended());
    for t in tuples {
        let want = map.input_degree(&t) + map.degree() - shift;
        let mut v = Vector::zero();
        for y in map.target().of_degree(want) {
            if rng.gen_bool(d.fill) {
                v.add_term(y, &coefficient(rng, map.field(), d));
            }
        }
        if !v.is_zero() {
            map.insert(t, v).expect("homogeneous by construction");
        }
    }
}

/// Random operations `m_1, …, m_max_arity` (arities listed in `arities`).
pub fn random_algebra<R: Rng>(
    rng: &mut R,
    field: Field,
    basis: &Arc<GradedBasis>,
    arities: &[usize],
    d: Density,
) -> AInfinityAlgebra {
    let comps = arities.iter().map(|&i| {
        let mut m = AInfinityAlgebra::empty_operation(field, basis, i);
        fill_map(rng, &mut m, d);
        m
    });
    AInfinityAlgebra::new("random", field, basis.clone(), comps.collect::<Vec<_>>()).expect("valid grading")
}

/// Random operations `b_{k,l}` for the listed shapes.
pub fn random_bimodule<R: Rng>(
    rng: &mut R,
    algebra: &Arc<AInfinityAlgebra>,
    basis: &Arc<GradedBasis>,
    shapes: &[(usize, usize)],
    d: Density,
) -> AInfinityBimodule {
    let comps: Vec<_> = shapes
        .iter()
        .map(|&(k, l)| {
            let mut b = AInfinityBimodule::empty_operation(algebra, basis, k, l);
            fill_map(rng, &mut b, d);
            b
        })
        .collect();
    AInfinityBimodule::new("random", algebra.clone(), basis.clone(), comps).expect("valid grading")
}

/// Random components `f_{k,l}` for the listed shapes.
pub fn random_morphism<R: Rng>(
    rng: &mut R,
    source: &Arc<AInfinityBimodule>,
    target: &Arc<AInfinityBimodule>,
    shapes: &[(usize, usize)],
    d: Density,
) -> BimoduleMorphism {
    let comps: Vec<_> = shapes
        .iter()
        .map(|&(k, l)| {
            let mut f = BimoduleMorphism::empty_component(source, target.basis(), k, l);
            fill_map(rng, &mut f, d);
            f
        })
        .collect();
    BimoduleMorphism::new("random", source.clone(), target.clone(), comps).expect("valid grading")
}

/// Random pairings for the listed shapes, supported in total degree
/// `−(k+l)`.
pub fn random_inner_product<R: Rng>(
    rng: &mut R,
    algebra: &Arc<AInfinityAlgebra>,
    shapes: &[(usize, usize)],
    d: Density,
) -> InfinityInnerProduct {
    let basis = algebra.basis();
    let pairings: Vec<_> = shapes
        .iter()
        .map(|&(k, l)| {
            let mut p = Pairing::new(k, l);
            let mut tuples = Vec::new();
            for_each_tuple(&vec![basis.len(); k + l + 2], |t| tuples.push(t.to_vec()));
            for t in tuples {
                let total: i64 = t.iter().map(|&x| basis.degree(x)).sum();
                if total == -((k + l) as i64) && rng.gen_bool(d.fill) {
                    let c = coefficient(rng, algebra.field(), d);
                    p.insert(basis, t, c).expect("degree checked");
                }
            }
            p
        })
        .collect();
    InfinityInnerProduct::new("random", algebra.clone(), pairings).expect("valid shapes")
}

/// A random coderivation view of the given kind on `space` with plain
/// arities `plain` and marked shapes `marked`.
#[allow(clippy::too_many_arguments)]
pub fn random_view<R: Rng>(
    rng: &mut R,
    kind: ViewKind,
    space: &BarSpace,
    target: Option<Arc<GradedBasis>>,
    degree: i64,
    field: Field,
    plain: &[usize],
    marked: &[(usize, usize)],
    d: Density,
) -> CoderivationView {
    let suspended = space.shift == 1;
    let into_marked = kind == ViewKind::IntoMarked;
    let plain_maps = plain
        .iter()
        .map(|&n| {
            let sig = if into_marked {
                Signature::into_marked(n)
            } else {
                Signature::plain(n)
            };
            let tgt = if into_marked {
                space.marked.clone().expect("module basis")
            } else {
                space.base.clone()
            };
            let mut m = MultiMap::new(
                format!("sigma{n}"),
                sig,
                degree,
                suspended,
                field,
                space.base.clone(),
                space.marked.clone(),
                tgt,
            )
            .expect("positive arity");
            fill_map(rng, &mut m, d);
            m
        })
        .collect();
    let marked_maps = marked
        .iter()
        .map(|&(k, l)| {
            let tgt = match kind {
                ViewKind::ComoduleMorphism => target.clone().expect("target module"),
                _ => space.marked.clone().expect("module basis"),
            };
            let mut m = MultiMap::new(
                format!("rho_{k}_{l}"),
                Signature::marked(k, l),
                degree,
                suspended,
                field,
                space.base.clone(),
                space.marked.clone(),
                tgt,
            )
            .expect("positive arity");
            fill_map(rng, &mut m, d);
            m
        })
        .collect();
    CoderivationView::new(kind, space.clone(), target, degree, field, plain_maps, marked_maps)
        .expect("random view is well formed")
}
