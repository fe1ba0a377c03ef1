#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use ainf_core::bar::{check_coderivation_identity, first_disagreement, project_components, CoderivationView, ViewKind};
use ainf_core::random::{random_view, Density};
use ainf_core::{BarSpace, Field, GradedBasis, Letter, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const KINDS: [ViewKind; 4] = [
    ViewKind::OnTv,
    ViewKind::IntoMarked,
    ViewKind::ModuleDifferential,
    ViewKind::ComoduleMorphism,
];

pub fn base() -> Arc<GradedBasis> {
    GradedBasis::from_pairs("A", &[("e", 0), ("x", 1)]).unwrap()
}

pub fn module() -> Arc<GradedBasis> {
    GradedBasis::from_pairs("M", &[("u", 0), ("v", 1)]).unwrap()
}

pub fn other_module() -> Arc<GradedBasis> {
    GradedBasis::from_pairs("N", &[("p", 0), ("q", -1)]).unwrap()
}

/// A random component family of the given kind on suspended gradings.
pub fn random_family(seed: u64, field: Field, kind: ViewKind) -> CoderivationView {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degree = rng.gen_range(-1..=1);
    let space = match kind {
        ViewKind::OnTv => BarSpace::suspended(base(), None),
        _ => BarSpace::suspended(base(), Some(module())),
    };
    let d = Density { fill: 0.6, bound: 3 };
    match kind {
        ViewKind::OnTv => random_view(&mut rng, kind, &space, None, degree, field, &[1, 2, 3], &[], d),
        ViewKind::IntoMarked => random_view(&mut rng, kind, &space, None, degree, field, &[1, 2], &[], d),
        ViewKind::ModuleDifferential => random_view(
            &mut rng,
            kind,
            &space,
            None,
            degree,
            field,
            &[1, 2],
            &[(0, 0), (1, 0), (0, 1), (1, 1)],
            d,
        ),
        ViewKind::ComoduleMorphism => random_view(
            &mut rng,
            kind,
            &space,
            Some(other_module()),
            degree,
            field,
            &[],
            &[(0, 0), (1, 0), (0, 1), (2, 0)],
            d,
        ),
    }
}

/// Nonzero component tables keyed by signature.
pub fn tables(view: &CoderivationView) -> BTreeMap<String, Vec<(Vec<Letter>, Vector)>> {
    view.components()
        .filter(|m| !m.is_zero())
        .map(|m| {
            let entries = m.entries().map(|(x, v)| (x.to_vec(), v.clone())).collect();
            (m.signature().to_string(), entries)
        })
        .collect()
}

/// Projecting the lift recovers the components, lifting the projection
/// recovers the map, and the co-Leibniz (or comodule) square holds.
pub fn round_trip(view: &CoderivationView, max_len: usize) -> Result<(), String> {
    let projected = project_components(view, view, view.max_arity().max(1)).map_err(|e| e.to_string())?;
    if tables(&projected) != tables(view) {
        return Err(format!("projection differs for a {:?} family", view.kind()));
    }
    let words = view.test_words(max_len);
    if let Some(w) = first_disagreement(view, &projected, &words) {
        return Err(format!("lift of the projection differs at {w:?}"));
    }
    let check = check_coderivation_identity(view, &words);
    if !check.passed {
        return Err(format!("{} failed: {:?}", check.name, check.counterexample));
    }
    Ok(())
}
